//! Single-variable exponential series `sum c * exp(a t^2 + b t)`.
//!
//! These are the coordinate functions of relative vectors and the
//! restrictions of lattice series to a ray `t -> t*A`.

use std::collections::BTreeMap;
use std::cmp::Reverse;
use std::fmt;

use num_traits::Zero;

use crate::number::{factorial, fmt_rational, GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayTerm {
    /// Coefficient of `t^2` in the exponent.
    pub quad: Rational,
    /// Coefficient of `t` in the exponent.
    pub lin: GaussianRational,
    pub coeff: GaussianRational,
}

/// Canonical: sorted by `quad` descending then `lin` ascending, merged,
/// zero-free.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RaySeries {
    terms: Vec<RayTerm>,
}

impl RaySeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_terms([RayTerm { quad: Rational::zero(), lin: GaussianRational::zero(), coeff: c }])
    }

    pub fn exp(quad: Rational, lin: GaussianRational, coeff: GaussianRational) -> Self {
        Self::from_terms([RayTerm { quad, lin, coeff }])
    }

    pub fn from_terms<I: IntoIterator<Item = RayTerm>>(terms: I) -> Self {
        let mut merged: BTreeMap<(Reverse<Rational>, GaussianRational), GaussianRational> =
            BTreeMap::new();
        for t in terms {
            *merged.entry((Reverse(t.quad), t.lin)).or_insert_with(GaussianRational::zero) += &t.coeff;
        }
        Self {
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((Reverse(quad), lin), coeff)| RayTerm { quad, lin, coeff })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[RayTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_terms(self.terms.iter().map(|t| RayTerm { coeff: &t.coeff * c, ..t.clone() }))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().flat_map(|a| {
            other.terms.iter().map(move |b| RayTerm {
                quad: &a.quad + &b.quad,
                lin: &a.lin + &b.lin,
                coeff: &a.coeff * &b.coeff,
            })
        }))
    }

    /// `f(t) -> f(k t)`.
    pub fn rescale(&self, k: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|t| RayTerm {
            quad: &t.quad * k * k,
            lin: t.lin.scale(k),
            coeff: t.coeff.clone(),
        }))
    }

    /// Taylor coefficient of `t^d`.
    pub fn taylor(&self, d: u32) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for t in &self.terms {
            let a = GaussianRational::real(t.quad.clone());
            for k in 0..=d / 2 {
                let m = d - 2 * k;
                let inv = factorial(0) / (factorial(k) * factorial(m));
                acc += &(&(&a.pow(k) * &t.lin.pow(m)) * &t.coeff).scale(&inv);
            }
        }
        acc
    }

    /// `d!` times the Taylor coefficient: the value on the monomial `t^d`.
    pub fn monomial(&self, d: u32) -> GaussianRational {
        self.taylor(d).scale(&factorial(d))
    }
}

impl fmt::Display for RaySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) * exp(({})*t^2 + ({})*t)", t.coeff, fmt_rational(&t.quad), t.lin)?;
        }
        Ok(())
    }
}
