//! Truncated multivariate polynomials with Gaussian-rational coefficients.

use std::collections::BTreeMap;

use crate::number::{factorial, GaussianRational};

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

fn total(m: &[u32]) -> u32 {
    m.iter().sum()
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    #[cfg(test)]
    pub fn terms(&self) -> &BTreeMap<Monomial, GaussianRational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, GaussianRational> {
        self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    #[cfg(test)]
    pub fn from_table(table: &crate::series::ExpansionTable) -> Self {
        Self { nvars: table.variables.len(), terms: table.coefficients.clone() }
    }

    pub fn mul_trunc(&self, other: &Self, degree: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            let da = total(ma);
            for (mb, cb) in &other.terms {
                if da + total(mb) > degree {
                    continue;
                }
                let m = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// `exp(self)` through total degree `degree`; `self` must have no
    /// constant term.
    pub fn exp_trunc(&self, degree: u32) -> Self {
        debug_assert!(!self.terms.contains_key(&vec![0; self.nvars]));
        let mut out = Self::constant(self.nvars, GaussianRational::one());
        let mut power = out.clone();
        for k in 1..=degree {
            power = power.mul_trunc(self, degree);
            if power.terms.is_empty() {
                break;
            }
            let inv = GaussianRational::real(factorial(0) / factorial(k));
            out = out.add(&power.scale(&inv));
        }
        out
    }
}
