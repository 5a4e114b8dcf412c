//! Finite-dimensional model of relative invariants across `Sigma x S^1`.
//!
//! Vectors are stored by their pairings against `e_i = phi(A, Sigma^i)`,
//! so the pairing of two vectors is `u^T N^-1 v`.

use num_traits::Zero;

use crate::donaldson::{d_zero, w_sign, ManifoldRecord};
use crate::error::{Error, Result};
use crate::lattice::{ensure_same, pair, LatticeClass};
use crate::linalg::{inverse, Matrix};
use crate::number::{fmt_rational, int, rat, to_i64, GaussianRational, Rational};
use crate::ray::{RaySeries, RayTerm};
use crate::series::DSeries;

/// The universal constant in the diagonal pairing matrix.
pub const L: i64 = -32;

/// Gram matrix of `e_0..e_3`.
pub fn gram_n() -> Matrix {
    let h = rat(-1, 2);
    let z = || Rational::zero();
    vec![
        vec![z(), z(), z(), h.clone()],
        vec![z(), z(), h.clone(), z()],
        vec![z(), h.clone(), z(), int(-2)],
        vec![h, z(), int(-2), z()],
    ]
}

pub fn gram_n_inverse() -> Matrix {
    inverse(&gram_n()).expect("N is invertible")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    V4,
    V2,
}

impl Space {
    pub fn dim(self) -> usize {
        match self {
            Space::V4 => 4,
            Space::V2 => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeVector {
    pub space: Space,
    pub coords: Vec<RaySeries>,
}

impl RelativeVector {
    pub fn constant(space: Space, values: &[Rational]) -> Result<Self> {
        Self::new(space, values.iter().map(|v| RaySeries::constant(GaussianRational::real(v.clone()))).collect())
    }

    pub fn new(space: Space, coords: Vec<RaySeries>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(Error::Parse(format!("{:?} needs {} coordinates, got {}", space, space.dim(), coords.len())));
        }
        Ok(Self { space, coords })
    }
}

/// Wraps four (or two) coordinate functions.
pub fn relvec_from_monomials(values: Vec<RaySeries>) -> Result<RelativeVector> {
    match values.len() {
        4 => RelativeVector::new(Space::V4, values),
        2 => RelativeVector::new(Space::V2, values),
        n => Err(Error::Parse(format!("a relative vector has 4 or 2 coordinates, got {n}"))),
    }
}

/// Coordinates `D(z A^(i+shift))` for `i = 0..4` as constants.
pub fn relvec_from_series(s: &DSeries, a: &LatticeClass, shift: u32) -> Result<RelativeVector> {
    let coords = (0..4)
        .map(|i| Ok(RaySeries::constant(s.evaluate_monomial(a, i + shift)?)))
        .collect::<Result<Vec<_>>>()?;
    relvec_from_monomials(coords)
}

/// `u^T N^-1 v`.
pub fn pair_v4(u: &RelativeVector, v: &RelativeVector) -> Result<RaySeries> {
    if u.space != Space::V4 || v.space != Space::V4 {
        return Err(Error::Parse("pair_v4 needs two V4 vectors".into()));
    }
    let n_inv = gram_n_inverse();
    let mut acc = RaySeries::zero();
    for (i, row) in n_inv.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            acc = acc.add(&u.coords[i].mul(&v.coords[j]).scale(&GaussianRational::real(x.clone())));
        }
    }
    Ok(acc)
}

/// The three coefficient functions of `X` along `t -> tD1`; the fourth
/// vanishes for simple type.
pub fn coefficients_from_structure(x: &ManifoldRecord, w: &LatticeClass, d1: &LatticeClass) -> Result<[RaySeries; 3]> {
    if !x.simple_type || x.b1 != 0 || x.b_plus <= 1 {
        return Err(Error::InvalidRecord(vec![format!("{} needs simple type, b1 = 0, b+ > 1", x.name)]));
    }
    ensure_same(&x.lattice, d1.lattice())?;
    let d0 = d_zero(x, w)?;
    let half_sq = d1.square() / int(2);
    let twist = GaussianRational::i_pow(-d0);
    let mut c = [Vec::new(), Vec::new(), Vec::new()];
    for b in x.structure.entries() {
        let a = GaussianRational::real(w_sign(&b.class, w)? * &b.coeff);
        let kd = pair(&b.class, d1)?;
        match to_i64(&pair(&b.class, &x.sigma)?) {
            Some(2) => c[0].push(RayTerm { quad: half_sq.clone(), lin: GaussianRational::real(kd), coeff: a }),
            Some(-2) => c[1].push(RayTerm { quad: half_sq.clone(), lin: GaussianRational::real(kd), coeff: a }),
            Some(0) => c[2].push(RayTerm {
                quad: -half_sq.clone(),
                lin: GaussianRational::new(Rational::zero(), kd),
                coeff: &a * &twist,
            }),
            _ => {
                return Err(Error::InvalidRecord(vec![format!(
                    "{}: basic class {} has K.Sigma outside {{-2, 0, 2}}",
                    x.name, b.class
                )]))
            }
        }
    }
    let [c1, c2, c3] = c;
    Ok([RaySeries::from_terms(c1), RaySeries::from_terms(c2), RaySeries::from_terms(c3)])
}

/// Diagonal of the universal pairing matrix `M(t)`.
pub fn pairing_matrix_m() -> [RaySeries; 3] {
    let l = GaussianRational::from(L);
    [
        RaySeries::exp(int(0), GaussianRational::from(2), l.clone()),
        RaySeries::exp(int(0), GaussianRational::from(-2), -l),
        RaySeries::zero(),
    ]
}

/// Diagonal of `M~(t)`.
pub fn pairing_matrix_mtilde() -> [RaySeries; 2] {
    [
        RaySeries::constant(GaussianRational::real(rat(-1, 2))),
        RaySeries::constant(GaussianRational::real(rat(1, 2))),
    ]
}

/// `sum c_i M_ii(t (Sigma.D)) c'_i`.
pub fn pair_via_m(left: &[RaySeries; 3], right: &[RaySeries; 3], sigma_dot_d: &Rational) -> RaySeries {
    let m = pairing_matrix_m();
    let mut acc = RaySeries::zero();
    for i in 0..3 {
        acc = acc.add(&left[i].mul(&m[i].rescale(sigma_dot_d)).mul(&right[i]));
    }
    acc
}

/// `e^{corr t^2} sum c~_i M~_ii c~'_i` over the two `K.Sigma = +-2` slots.
pub fn pair_via_mtilde(left: &[RaySeries; 3], right: &[RaySeries; 3], quad_correction: &Rational) -> RaySeries {
    let m = pairing_matrix_mtilde();
    let mut acc = RaySeries::zero();
    for i in 0..2 {
        acc = acc.add(&left[i].mul(&m[i]).mul(&right[i]));
    }
    acc.mul(&RaySeries::exp(quad_correction.clone(), GaussianRational::zero(), GaussianRational::one()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LVerification {
    pub u: Vec<GaussianRational>,
    pub v: Vec<GaussianRational>,
    /// `D_C(Sigma)`.
    pub pairing: GaussianRational,
    pub l: Rational,
}

/// Recomputes `l` from the two-sector series of `x` along its Sigma.
pub fn verify_l_from(x: &ManifoldRecord, w: &LatticeClass) -> Result<LVerification> {
    let s = crate::donaldson::to_dws(x, w)?;
    let u = relvec_from_series(&s, &x.sigma, 0)?;
    let v = relvec_from_series(&s, &x.sigma, 1)?;
    let p = pair_v4(&u, &v)?;
    let pairing = p.taylor(0);
    if p.terms().iter().any(|t| !t.quad.is_zero() || !t.lin.is_zero()) {
        return Err(Error::Regression("pairing of constant vectors is not constant".into()));
    }
    if !pairing.is_real() {
        return Err(Error::Regression(format!("D_C(Sigma) = {pairing} is not real")));
    }
    let l = int(4) * &pairing.re;
    if l != int(L) {
        return Err(Error::Regression(format!("l = {} differs from the stored {}", fmt_rational(&l), L)));
    }
    let constant = |r: &RelativeVector| r.coords.iter().map(|c| c.taylor(0)).collect();
    Ok(LVerification { u: constant(&u), v: constant(&v), pairing, l })
}

/// `l` from the catalog record of `B` with `w = F`.
pub fn verify_l() -> Result<LVerification> {
    let b = crate::catalog::get("B")?;
    verify_l_from(&b.record, b.w())
}
