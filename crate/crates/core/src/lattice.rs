//! Finite-rank lattices with a symmetric pairing, and classes in them.
//!
//! Classes and covectors share one representation: a coordinate vector over
//! the generators, evaluated on other classes through the Gram matrix.
//! Coordinates are rational; integrality is only checked where an
//! operation demands it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::number::{fmt_rational, int, is_integral, GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    names: Vec<String>,
    gram: Matrix,
}

impl IntersectionLattice {
    pub fn new(names: Vec<String>, gram: Matrix) -> Result<Arc<Self>> {
        if names.is_empty() {
            return Err(Error::InvalidLattice("rank must be positive".into()));
        }
        if gram.len() != names.len() || gram.iter().any(|r| r.len() != names.len()) {
            return Err(Error::InvalidLattice(format!(
                "gram must be {0}x{0} for {0} generators",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidLattice(format!("duplicate generator `{n}`")));
            }
            if n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidLattice(format!("bad generator name `{n}`")));
            }
            if n.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(Error::InvalidLattice(format!("generator `{n}` starts with a digit")));
            }
        }
        if !linalg::is_symmetric(&gram) {
            return Err(Error::InvalidLattice("gram not symmetric".into()));
        }
        Ok(Arc::new(Self { names, gram }))
    }

    /// Convenience constructor from integer entries.
    pub fn from_ints(names: &[&str], gram: &[&[i64]]) -> Result<Arc<Self>> {
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            gram.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_integral(&self) -> bool {
        self.gram.iter().flatten().all(is_integral)
    }

    pub fn label(&self) -> String {
        format!("{{{}}}", self.names.join(","))
    }

    /// Values of the functional `gram * coords` on each generator.
    pub fn functional(&self, coords: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.gram, coords)
    }

    /// Class coordinates whose pairing with each generator is `values`.
    pub fn represent(&self, values: &[Rational]) -> Result<Vec<Rational>> {
        linalg::solve(&self.gram, values).ok_or_else(|| {
            Error::Singular(format!(
                "gram of {} is degenerate; functional has no unique class",
                self.label()
            ))
        })
    }

    /// Gaussian-rational version of [`Self::represent`].
    pub fn represent_complex(&self, values: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        let re: Vec<_> = values.iter().map(|v| v.re.clone()).collect();
        let im: Vec<_> = values.iter().map(|v| v.im.clone()).collect();
        let re = self.represent(&re)?;
        let im = self.represent(&im)?;
        Ok(re.into_iter().zip(im).map(|(a, b)| GaussianRational::new(a, b)).collect())
    }

    /// `x^T gram y` with Gaussian-rational `x` and rational `y`.
    pub fn bilinear_complex(&self, x: &[GaussianRational], y: &[Rational]) -> GaussianRational {
        let gy = self.functional(y);
        x.iter().zip(&gy).fold(GaussianRational::zero(), |acc, (a, b)| acc + a.scale(b))
    }
}

pub fn same_lattice(a: &Arc<IntersectionLattice>, b: &Arc<IntersectionLattice>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub fn ensure_same(a: &Arc<IntersectionLattice>, b: &Arc<IntersectionLattice>) -> Result<()> {
    if same_lattice(a, b) {
        Ok(())
    } else {
        Err(Error::LatticeMismatch { left: a.label(), right: b.label() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeClass {
    lattice: Arc<IntersectionLattice>,
    coords: Vec<Rational>,
}

impl LatticeClass {
    pub fn new(lattice: &Arc<IntersectionLattice>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::InvalidLattice(format!(
                "class has {} coordinates, lattice {} has rank {}",
                coords.len(),
                lattice.label(),
                lattice.rank()
            )));
        }
        Ok(Self { lattice: lattice.clone(), coords })
    }

    pub fn zero(lattice: &Arc<IntersectionLattice>) -> Self {
        Self { lattice: lattice.clone(), coords: vec![Rational::zero(); lattice.rank()] }
    }

    pub fn generator(lattice: &Arc<IntersectionLattice>, name: &str) -> Result<Self> {
        let idx = lattice
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{name}` in {}", lattice.label())))?;
        let mut c = Self::zero(lattice);
        c.coords[idx] = Rational::one();
        Ok(c)
    }

    /// Builds a class from a sparse `generator -> coefficient` map.
    pub fn from_sparse<'a, I>(lattice: &Arc<IntersectionLattice>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, Rational)>,
    {
        let mut c = Self::zero(lattice);
        for (name, coef) in entries {
            let idx = lattice.index_of(name).ok_or_else(|| {
                Error::Parse(format!("unknown generator `{name}` in {}", lattice.label()))
            })?;
            c.coords[idx] += coef;
        }
        Ok(c)
    }

    pub fn from_ints(lattice: &Arc<IntersectionLattice>, entries: &[(&str, i64)]) -> Result<Self> {
        Self::from_sparse(lattice, entries.iter().map(|&(n, k)| (n, int(k))))
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn to_sparse(&self) -> BTreeMap<String, Rational> {
        self.lattice
            .names()
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| (n.clone(), c.clone()))
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(is_integral)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Reduction mod 2 of the coordinate vector is non-zero.
    pub fn is_odd(&self) -> bool {
        self.is_integral() && self.coords.iter().any(|c| !(c / int(2)).is_integer())
    }

    pub fn square(&self) -> Rational {
        pair(self, self).expect("same lattice")
    }

    /// Values on each generator.
    pub fn functional(&self) -> Vec<Rational> {
        self.lattice.functional(&self.coords)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { lattice: self.lattice.clone(), coords: self.coords.iter().map(|c| c * r).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.lattice, &other.lattice)?;
        Ok(Self {
            lattice: self.lattice.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&int(-1)))
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    /// The same coordinates, reinterpreted in another lattice of equal rank.
    pub fn with_lattice(&self, lattice: &Arc<IntersectionLattice>) -> Result<Self> {
        Self::new(lattice, self.coords.clone())
    }

    fn require_integral(&self, what: &str) -> Result<()> {
        if self.is_integral() {
            Ok(())
        } else {
            Err(Error::NotIntegral(format!("{what} = {self}")))
        }
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, c) in self.lattice.names().iter().zip(&self.coords) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if mag.is_one() {
                write!(f, "{name}")?;
            } else if mag.is_integer() {
                write!(f, "{}*{name}", mag.numer())?;
            } else {
                write!(f, "{}*{name}", fmt_rational(&mag))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `u^T gram v`.
pub fn pair(u: &LatticeClass, v: &LatticeClass) -> Result<Rational> {
    ensure_same(&u.lattice, &v.lattice)?;
    let gv = v.functional();
    Ok(u.coords.iter().zip(&gv).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
}

/// `w . sigma` odd and `sigma^2 = 0`.
pub fn validate_allowable(w: &LatticeClass, sigma: &LatticeClass) -> Result<bool> {
    ensure_same(&w.lattice, &sigma.lattice)?;
    w.require_integral("w")?;
    sigma.require_integral("sigma")?;
    let ws = pair(w, sigma)?;
    let odd = !(ws / int(2)).is_integer();
    Ok(odd && sigma.square().is_zero())
}

/// Adjunction bound `2g - 2 >= S^2 + |K.S|`, meaningful only for `S^2 >= 0`.
pub fn adjunction_check(k: &LatticeClass, s: &LatticeClass, genus: u32) -> Result<bool> {
    ensure_same(&k.lattice, &s.lattice)?;
    k.require_integral("K")?;
    s.require_integral("S")?;
    let s2 = s.square();
    if s2.is_negative() {
        return Err(Error::BoundNotApplicable(fmt_rational(&s2)));
    }
    let bound = int(2 * i64::from(genus) - 2);
    Ok(bound >= s2 + pair(k, s)?.abs())
}
