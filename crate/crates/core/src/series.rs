//! Finite exponential-quadratic series over Gaussian rationals.
//!
//! A [`DSeries`] on a lattice is a finite sum of terms
//! `c * exp(q * Q(a)/2 + lambda(a))` where `lambda(a) = freq^T gram a`.
//! Series are always kept in canonical form: terms sorted by `q`
//! descending and then by frequency (lexicographic over `(re, im)`
//! coordinate pairs), with equal exponents merged and zero terms dropped.
//! Equality of series is structural equality of canonical forms.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{ensure_same, pair, IntersectionLattice, LatticeClass};
use crate::number::{factorial, fmt_rational, rat, GaussianRational, Rational};
use crate::poly::{Monomial, Poly};
use crate::ray::{RaySeries, RayTerm};

/// Expansion degree used when none is given.
pub const DEFAULT_DEGREE: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpTerm {
    /// Multiplier of `Q(a)/2`.
    pub q: Rational,
    /// Frequency as (complex) class coordinates.
    pub freq: Vec<GaussianRational>,
    pub coeff: GaussianRational,
}

impl ExpTerm {
    pub fn new(q: Rational, freq: Vec<GaussianRational>, coeff: GaussianRational) -> Self {
        Self { q, freq, coeff }
    }

    /// Term with a real frequency class.
    pub fn real(q: Rational, freq: &LatticeClass, coeff: GaussianRational) -> Self {
        Self::new(q, freq.coords().iter().cloned().map(GaussianRational::real).collect(), coeff)
    }

    pub fn freq_is_real(&self) -> bool {
        self.freq.iter().all(GaussianRational::is_real)
    }

    pub fn freq_is_imaginary(&self) -> bool {
        self.freq.iter().all(GaussianRational::is_imaginary)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSeries {
    lattice: Arc<IntersectionLattice>,
    terms: Vec<ExpTerm>,
}

type TermKey = (Reverse<Rational>, Vec<GaussianRational>);

impl DSeries {
    pub fn new<I>(lattice: &Arc<IntersectionLattice>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ExpTerm>,
    {
        let terms: Vec<ExpTerm> = terms.into_iter().collect();
        if let Some(bad) = terms.iter().find(|t| t.freq.len() != lattice.rank()) {
            return Err(Error::InvalidLattice(format!(
                "term frequency has {} coordinates, lattice {} has rank {}",
                bad.freq.len(),
                lattice.label(),
                lattice.rank()
            )));
        }
        Ok(Self::canonical(lattice, terms))
    }

    fn canonical<I: IntoIterator<Item = ExpTerm>>(lattice: &Arc<IntersectionLattice>, terms: I) -> Self {
        let mut merged: BTreeMap<TermKey, GaussianRational> = BTreeMap::new();
        for t in terms {
            *merged.entry((Reverse(t.q), t.freq)).or_insert_with(GaussianRational::zero) += &t.coeff;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((Reverse(q), freq), coeff)| ExpTerm { q, freq, coeff })
            .collect();
        Self { lattice: lattice.clone(), terms }
    }

    pub fn zero(lattice: &Arc<IntersectionLattice>) -> Self {
        Self { lattice: lattice.clone(), terms: Vec::new() }
    }

    pub fn constant(lattice: &Arc<IntersectionLattice>, c: GaussianRational) -> Self {
        Self::canonical(
            lattice,
            [ExpTerm::new(Rational::zero(), vec![GaussianRational::zero(); lattice.rank()], c)],
        )
    }

    /// `c * exp(q Q/2 + K.a)` for a real class `K`.
    pub fn exp_class(q: Rational, k: &LatticeClass, c: GaussianRational) -> Self {
        Self::canonical(k.lattice(), [ExpTerm::real(q, k, c)])
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Re-sorts and merges; a no-op on values built through this module.
    pub fn canonicalize(&self) -> Self {
        Self::canonical(&self.lattice, self.terms.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.lattice, &other.lattice)?;
        Ok(Self::canonical(&self.lattice, self.terms.iter().chain(&other.terms).cloned()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&GaussianRational::from(-1)))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::canonical(
            &self.lattice,
            self.terms.iter().map(|t| ExpTerm { coeff: &t.coeff * c, ..t.clone() }),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.lattice, &other.lattice)?;
        let terms = self.terms.iter().flat_map(|a| {
            other.terms.iter().map(move |b| ExpTerm {
                q: &a.q + &b.q,
                freq: a.freq.iter().zip(&b.freq).map(|(x, y)| x + y).collect(),
                coeff: &a.coeff * &b.coeff,
            })
        });
        Ok(Self::canonical(&self.lattice, terms))
    }

    /// `lambda(A)` for a term.
    pub fn freq_on(&self, term: &ExpTerm, a: &LatticeClass) -> Result<GaussianRational> {
        ensure_same(&self.lattice, a.lattice())?;
        Ok(self.lattice.bilinear_complex(&term.freq, a.coords()))
    }

    /// `t -> s(t A)` as a single-variable series.
    pub fn restrict_to_ray(&self, a: &LatticeClass) -> Result<RaySeries> {
        let a2 = pair(a, a)?;
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            out.push(RayTerm {
                quad: &t.q * &a2 / Rational::from_integer(2.into()),
                lin: self.freq_on(t, a)?,
                coeff: t.coeff.clone(),
            });
        }
        Ok(RaySeries::from_terms(out))
    }

    /// Taylor coefficients of `s(t_1 A_1 + ... + t_n A_n)` through total
    /// degree `degree`.
    pub fn expand(&self, directions: &[(String, LatticeClass)], degree: u32) -> Result<ExpansionTable> {
        let n = directions.len();
        for (_, a) in directions {
            ensure_same(&self.lattice, a.lattice())?;
        }
        // Q(sum t_i A_i)/2 = sum_i A_i^2/2 t_i^2 + sum_{i<j} A_i.A_j t_i t_j
        let mut quad = Poly::zero(n);
        for i in 0..n {
            for j in i..n {
                let mut v = pair(&directions[i].1, &directions[j].1)?;
                if i == j {
                    v /= Rational::from_integer(2.into());
                }
                let mut m = vec![0; n];
                m[i] += 1;
                m[j] += 1;
                quad.add_term(m, GaussianRational::real(v));
            }
        }
        let mut total = Poly::zero(n);
        for t in &self.terms {
            let mut exponent = quad.scale(&GaussianRational::real(t.q.clone()));
            for (i, (_, a)) in directions.iter().enumerate() {
                let mut m = vec![0; n];
                m[i] = 1;
                exponent.add_term(m, self.freq_on(t, a)?);
            }
            total = total.add(&exponent.exp_trunc(degree).scale(&t.coeff));
        }
        Ok(ExpansionTable {
            variables: directions.iter().map(|(v, _)| v.clone()).collect(),
            degree,
            coefficients: total.into_terms(),
        })
    }

    /// `D(A^d)`: `d!` times the coefficient of `u^d` in `s(u A)`.
    pub fn evaluate_monomial(&self, a: &LatticeClass, d: u32) -> Result<GaussianRational> {
        Ok(self.restrict_to_ray(a)?.monomial(d))
    }

    /// Projects onto degrees `= d0 (mod 4)` via
    /// `1/2 (s(a) + sign * i^{-d0} s(i a))`, termwise.
    pub fn project_parity(&self, d0: i64, sign: i8) -> Self {
        let half = GaussianRational::real(rat(1, 2));
        let twist = GaussianRational::i_pow(-d0).scale(&Rational::from_integer(i64::from(sign).into()));
        let terms = self.terms.iter().flat_map(|t| {
            [
                ExpTerm { q: t.q.clone(), freq: t.freq.clone(), coeff: &t.coeff * &half },
                ExpTerm {
                    q: -t.q.clone(),
                    freq: t.freq.iter().map(GaussianRational::times_i).collect(),
                    coeff: &(&t.coeff * &twist) * &half,
                },
            ]
        });
        Self::canonical(&self.lattice, terms)
    }

    /// Every term has a partner with conjugate frequency and coefficient.
    pub fn is_conjugation_symmetric(&self) -> bool {
        self.terms.iter().all(|t| {
            let freq: Vec<_> = t.freq.iter().map(GaussianRational::conj).collect();
            self.terms.iter().any(|u| u.q == t.q && u.freq == freq && u.coeff == t.coeff.conj())
        })
    }
}

impl fmt::Display for DSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) * exp(({})*Q/2", t.coeff, fmt_rational(&t.q))?;
            for (name, c) in self.lattice.names().iter().zip(&t.freq) {
                if !c.is_zero() {
                    write!(f, " + ({c})*{name}")?;
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Finite jet of a series along named directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionTable {
    pub variables: Vec<String>,
    pub degree: u32,
    pub coefficients: BTreeMap<Monomial, GaussianRational>,
}

impl ExpansionTable {
    pub fn coefficient(&self, exponents: &[u32]) -> GaussianRational {
        self.coefficients.get(exponents).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Coefficient multiplied by the product of factorials: the value on
    /// the monomial `A_1^{k_1} ... A_n^{k_n}`.
    pub fn monomial_value(&self, exponents: &[u32]) -> GaussianRational {
        let f = exponents.iter().fold(factorial(0), |acc, &k| acc * factorial(k));
        self.coefficient(exponents).scale(&f)
    }

    pub fn is_real(&self) -> bool {
        self.coefficients.values().all(GaussianRational::is_real)
    }

    /// Total degrees carrying a non-zero coefficient.
    pub fn support_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.coefficients.keys().map(|m| m.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    fn ordered(&self) -> Vec<(&Monomial, &GaussianRational)> {
        let mut v: Vec<_> = self.coefficients.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            da.cmp(&db).then_with(|| b.0.cmp(a.0))
        });
        v
    }
}

impl fmt::Display for ExpansionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, c) in self.ordered() {
            let mono: Vec<String> = self
                .variables
                .iter()
                .zip(m)
                .filter(|(_, &k)| k > 0)
                .map(|(v, k)| format!("{v}^{k}"))
                .collect();
            let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
            writeln!(f, "{mono}: {c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::int;
    use proptest::prelude::*;

    fn hyperbolic() -> Arc<IntersectionLattice> {
        IntersectionLattice::from_ints(&["D", "Sigma"], &[&[0, 1], &[1, 0]]).unwrap()
    }

    fn b_lattice() -> Arc<IntersectionLattice> {
        IntersectionLattice::from_ints(
            &["S", "E1", "E2", "F"],
            &[&[2, 0, 0, 1], &[0, -1, 0, 0], &[0, 0, -1, 0], &[1, 0, 0, 0]],
        )
        .unwrap()
    }

    fn g(n: i64, d: i64) -> GaussianRational {
        GaussianRational::real(rat(n, d))
    }

    fn class(l: &Arc<IntersectionLattice>, e: &[(&str, i64)]) -> LatticeClass {
        LatticeClass::from_ints(l, e).unwrap()
    }

    #[test]
    fn canonicalize_cancels_and_merges() {
        let l = b_lattice();
        let k = class(&l, &[("E1", 1)]);
        let s = DSeries::new(&l, [ExpTerm::real(int(1), &k, g(1, 1)), ExpTerm::real(int(1), &k, g(-1, 1))]).unwrap();
        assert!(s.is_zero());
        let s = DSeries::new(&l, [ExpTerm::real(int(1), &k, g(1, 4)), ExpTerm::real(int(1), &k, g(1, 4))]).unwrap();
        assert_eq!(s, DSeries::exp_class(int(1), &k, g(1, 2)));
        assert_eq!(s.canonicalize(), s);
    }

    #[test]
    fn canonical_order_is_q_descending() {
        let l = hyperbolic();
        let d = class(&l, &[("D", 1)]);
        let s = DSeries::exp_class(int(-1), &d, g(1, 1))
            .add(&DSeries::exp_class(int(1), &d.neg(), g(1, 1)))
            .unwrap()
            .add(&DSeries::exp_class(int(1), &d, g(1, 1)))
            .unwrap();
        let qs: Vec<_> = s.terms().iter().map(|t| t.q.clone()).collect();
        assert_eq!(qs, vec![int(1), int(1), int(-1)]);
        assert_eq!(s.terms()[0].freq[0], GaussianRational::from(-1));
    }

    #[test]
    fn mul_of_inverse_exponents_is_one() {
        let l = b_lattice();
        let k = class(&l, &[("E1", 1), ("E2", 1)]);
        let a = DSeries::exp_class(int(1), &k, g(1, 1));
        let b = DSeries::exp_class(int(-1), &k.neg(), g(1, 1));
        assert_eq!(a.mul(&b).unwrap(), DSeries::constant(&l, g(1, 1)));
        assert_eq!(a.add(&DSeries::zero(&l)).unwrap(), a);
    }

    #[test]
    fn sinh_times_cosh_is_half_sinh_double() {
        let l = b_lattice();
        let e1 = class(&l, &[("E1", 1)]);
        let two_e1 = e1.scale(&int(2));
        // e^{Q/2} sinh(E1.a)
        let sinh = DSeries::exp_class(int(1), &e1, g(1, 2))
            .add(&DSeries::exp_class(int(1), &e1.neg(), g(-1, 2)))
            .unwrap();
        // 2 cosh(E1.a)
        let cosh = DSeries::exp_class(int(0), &e1, g(1, 1))
            .add(&DSeries::exp_class(int(0), &e1.neg(), g(1, 1)))
            .unwrap();
        // e^{Q/2} sinh(2 E1.a): the cross terms land on frequency 0 and cancel
        let expect = DSeries::exp_class(int(1), &two_e1, g(1, 2))
            .add(&DSeries::exp_class(int(1), &two_e1.neg(), g(-1, 2)))
            .unwrap();
        assert_eq!(sinh.mul(&cosh).unwrap(), expect);
    }

    #[test]
    fn polarization_coefficient() {
        let l = hyperbolic();
        let s = DSeries::constant(&l, g(1, 1)).mul(&DSeries::exp_class(int(1), &LatticeClass::zero(&l), g(1, 1))).unwrap();
        let dirs = vec![("t".to_string(), class(&l, &[("D", 1)])), ("s".to_string(), class(&l, &[("Sigma", 1)]))];
        let table = s.expand(&dirs, 2).unwrap();
        assert_eq!(table.coefficient(&[1, 1]), g(1, 1));
        assert_eq!(table.coefficient(&[2, 0]), g(0, 1));
    }

    #[test]
    fn monomials_of_half_cosh_along_sigma() {
        let l = hyperbolic();
        let two_d = class(&l, &[("D", 2)]);
        // freq 2D pairs to 2 on Sigma
        let s = DSeries::exp_class(int(0), &two_d, g(1, 4))
            .add(&DSeries::exp_class(int(0), &two_d.neg(), g(1, 4)))
            .unwrap();
        let sigma = class(&l, &[("Sigma", 1)]);
        assert_eq!(s.evaluate_monomial(&sigma, 2).unwrap(), g(2, 1));
        assert_eq!(s.evaluate_monomial(&sigma, 4).unwrap(), g(8, 1));
        assert_eq!(s.evaluate_monomial(&sigma, 0).unwrap(), g(1, 2));
        let dirs = vec![("s".to_string(), sigma)];
        assert_eq!(s.expand(&dirs, 2).unwrap().coefficient(&[2]), g(1, 1));
    }

    #[test]
    fn project_parity_on_gaussian() {
        let l = hyperbolic();
        let s = DSeries::exp_class(int(1), &LatticeClass::zero(&l), g(1, 1));
        let p = s.project_parity(4, 1);
        let expect = DSeries::exp_class(int(1), &LatticeClass::zero(&l), g(1, 2))
            .add(&DSeries::exp_class(int(-1), &LatticeClass::zero(&l), g(1, 2)))
            .unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn renders_canonical_text() {
        let l = b_lattice();
        let k = class(&l, &[("E1", 1), ("E2", -1)]);
        let s = DSeries::new(
            &l,
            [ExpTerm::new(
                rat(-1, 2),
                k.coords().iter().map(|c| GaussianRational::real(c.clone()).times_i()).collect(),
                g(1, 4),
            )],
        )
        .unwrap();
        assert_eq!(s.to_string(), "(1/4) * exp((-1/2)*Q/2 + (0/1+1/1i)*E1 + (0/1-1/1i)*E2)");
        assert_eq!(DSeries::zero(&l).to_string(), "0");
    }

    #[test]
    fn lattice_mismatch_on_add() {
        let a = DSeries::zero(&hyperbolic());
        let b = DSeries::zero(&b_lattice());
        assert!(matches!(a.add(&b), Err(Error::LatticeMismatch { .. })));
    }

    fn arb_series() -> impl Strategy<Value = DSeries> {
        let term = (-2i64..=2, -2i64..=2, -2i64..=2, -3i64..=3, -3i64..=3);
        proptest::collection::vec(term, 0..4).prop_map(|ts| {
            let l = hyperbolic();
            let terms = ts.into_iter().map(|(q, a, b, cr, ci)| {
                ExpTerm::new(
                    rat(q, 2),
                    vec![GaussianRational::real(int(a)), GaussianRational::new(int(0), int(b))],
                    GaussianRational::new(int(cr), int(ci)),
                )
            });
            DSeries::new(&l, terms).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_laws(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.canonicalize().canonicalize(), a.canonicalize());
        }

        #[test]
        fn expansion_is_a_ring_map(a in arb_series(), b in arb_series()) {
            let l = hyperbolic();
            let dirs = vec![
                ("t".to_string(), LatticeClass::from_ints(&l, &[("D", 1)]).unwrap()),
                ("s".to_string(), LatticeClass::from_ints(&l, &[("Sigma", 1), ("D", 1)]).unwrap()),
            ];
            let lhs = a.mul(&b).unwrap().expand(&dirs, 3).unwrap();
            let ea = Poly::from_table(&a.expand(&dirs, 3).unwrap());
            let eb = Poly::from_table(&b.expand(&dirs, 3).unwrap());
            prop_assert_eq!(lhs.coefficients, ea.mul_trunc(&eb, 3).into_terms());
        }
    }
}
