//! Manifold records, simple-type structures and the transform between the
//! Donaldson series and the two-sector series `D^(w,Sigma)`.
//!
//! Basic-class coefficients are stored independently of `w`; every
//! `w`-dependence enters through the sign `(-1)^((K.w + w^2)/2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{adjunction_check, ensure_same, pair, validate_allowable, IntersectionLattice, LatticeClass};
use crate::number::{fmt_rational, int, rat, sign_pow, to_i64, GaussianRational, Rational};
use crate::series::{DSeries, ExpTerm};

/// How invariants are fixed when `b+ = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Chamber {
    /// `b+ > 1`: metric independent.
    #[default]
    Standard,
    /// `b+ = 1`: the chamber containing Sigma in its closure.
    Sigma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicClass {
    pub class: LatticeClass,
    pub coeff: Rational,
}

/// Basic classes with their `w`-independent rational coefficients, kept
/// sorted by class coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimpleTypeStructure {
    entries: Vec<BasicClass>,
}

impl SimpleTypeStructure {
    pub fn new<I: IntoIterator<Item = (LatticeClass, Rational)>>(entries: I) -> Result<Self> {
        let mut out: Vec<BasicClass> = Vec::new();
        for (class, coeff) in entries {
            if coeff.is_zero() {
                return Err(Error::InvalidRecord(vec![format!("zero coefficient for basic class {class}")]));
            }
            if let Some(first) = out.first() {
                ensure_same(first.class.lattice(), class.lattice())?;
            }
            if out.iter().any(|b| b.class == class) {
                return Err(Error::InvalidRecord(vec![format!("duplicate basic class {class}")]));
            }
            out.push(BasicClass { class, coeff });
        }
        out.sort_by(|a, b| a.class.coords().cmp(b.class.coords()));
        Ok(Self { entries: out })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[BasicClass] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coefficient_of(&self, k: &LatticeClass) -> Option<&Rational> {
        self.entries.iter().find(|b| &b.class == k).map(|b| &b.coeff)
    }

    /// Sums coefficients over classes with equal pairings against `probes`.
    pub fn signature(&self, probes: &[LatticeClass]) -> Result<BTreeMap<Vec<Rational>, Rational>> {
        let mut out: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
        for b in &self.entries {
            let key = probes.iter().map(|p| pair(&b.class, p)).collect::<Result<Vec<_>>>()?;
            *out.entry(key).or_insert_with(Rational::zero) += &b.coeff;
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldRecord {
    pub name: String,
    pub b1: u32,
    pub b_plus: u32,
    pub lattice: Arc<IntersectionLattice>,
    pub sigma: LatticeClass,
    pub simple_type: bool,
    pub finite_type_order: Option<u32>,
    pub chamber: Chamber,
    pub structure: SimpleTypeStructure,
    /// Stored values `D^(w,Sigma)(Sigma^d)` for chamber records.
    pub monomials: BTreeMap<u32, Rational>,
}

impl ManifoldRecord {
    /// Checks the record-level invariants; structure violations are left
    /// to [`validate_structure`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        b1: u32,
        b_plus: u32,
        sigma: LatticeClass,
        simple_type: bool,
        finite_type_order: Option<u32>,
        chamber: Chamber,
        structure: SimpleTypeStructure,
        monomials: BTreeMap<u32, Rational>,
    ) -> Result<Self> {
        let name = name.into();
        let mut problems = Vec::new();
        if b_plus == 0 {
            problems.push("b_plus must be positive".to_string());
        }
        if (i64::from(b_plus) - i64::from(b1)).rem_euclid(2) != 1 {
            problems.push(format!("b_plus - b1 = {} is not odd", i64::from(b_plus) - i64::from(b1)));
        }
        if !sigma.is_integral() || !sigma.is_odd() {
            problems.push(format!("sigma = {sigma} is not an odd integral class"));
        }
        if !sigma.square().is_zero() {
            problems.push(format!("sigma^2 = {} is not zero", fmt_rational(&sigma.square())));
        }
        match chamber {
            Chamber::Standard if b_plus == 1 => problems.push("b_plus = 1 requires chamber `sigma`".into()),
            Chamber::Sigma if b_plus != 1 => problems.push("chamber `sigma` requires b_plus = 1".into()),
            _ => {}
        }
        for b in structure.entries() {
            if ensure_same(b.class.lattice(), sigma.lattice()).is_err() {
                problems.push(format!("basic class {} lives in another lattice", b.class));
            }
        }
        if !problems.is_empty() {
            return Err(Error::InvalidRecord(problems));
        }
        Ok(Self {
            name,
            b1,
            b_plus,
            lattice: sigma.lattice().clone(),
            sigma,
            simple_type,
            finite_type_order,
            chamber,
            structure,
            monomials,
        })
    }

    /// `(3/2)(1 - b1 + b+)`, an integer by the parity invariant.
    fn euler_term(&self) -> i64 {
        3 * (1 - i64::from(self.b1) + i64::from(self.b_plus)) / 2
    }

    /// Sign relating the coefficients of `K` and `-K`:
    /// `a(-K) = (-1)^(d0 + w^2) a(K)`, independent of `w`.
    pub fn symmetry_sign(&self) -> Rational {
        sign_pow(self.euler_term())
    }

    pub fn class(&self, coords: &[(&str, i64)]) -> Result<LatticeClass> {
        LatticeClass::from_ints(&self.lattice, coords)
    }
}

/// `d0 = -w^2 - (3/2)(1 - b1 + b+)`.
pub fn d_zero(x: &ManifoldRecord, w: &LatticeClass) -> Result<i64> {
    ensure_same(&x.lattice, w.lattice())?;
    if !w.is_integral() {
        return Err(Error::NotIntegral(format!("w = {w}")));
    }
    let d0 = -w.square() - rat(3, 2) * int(1 - i64::from(x.b1) + i64::from(x.b_plus));
    to_i64(&d0).ok_or_else(|| Error::InvalidRecord(vec![format!("d0 = {} is not an integer", fmt_rational(&d0))]))
}

/// `(-1)^((K.w + w^2)/2)`.
pub fn w_sign(k: &LatticeClass, w: &LatticeClass) -> Result<Rational> {
    let e = pair(k, w)? + w.square();
    let half = e.clone() / int(2);
    match to_i64(&half) {
        Some(h) => Ok(sign_pow(h)),
        None => Err(Error::NotCharacteristic(format!(
            "K = {k}: K.w + w^2 = {} is not even",
            fmt_rational(&e)
        ))),
    }
}

fn require_series_record(x: &ManifoldRecord) -> Result<()> {
    if !x.simple_type {
        return Err(Error::InvalidRecord(vec![format!("{} is not of simple type", x.name)]));
    }
    if x.chamber != Chamber::Standard {
        return Err(Error::InvalidRecord(vec![format!(
            "{} is a b+ = 1 record; only its monomial table is stored",
            x.name
        )]));
    }
    Ok(())
}

/// `e^{Q/2} sum (-1)^((K.w+w^2)/2) a_K e^{K.a}`.
pub fn build_dseries(x: &ManifoldRecord, w: &LatticeClass) -> Result<DSeries> {
    require_series_record(x)?;
    ensure_same(&x.lattice, w.lattice())?;
    let mut terms = Vec::with_capacity(x.structure.len());
    for b in x.structure.entries() {
        let sign = w_sign(&b.class, w)?;
        terms.push(ExpTerm::real(int(1), &b.class, GaussianRational::real(sign * &b.coeff)));
    }
    DSeries::new(&x.lattice, terms)
}

fn residue_mod4(v: &GaussianRational) -> Option<i64> {
    if !v.is_real() {
        return None;
    }
    to_i64(&v.re).map(|n| n.rem_euclid(4))
}

/// Splits a Donaldson series (all terms `q = 1/2`, real frequency) into the
/// two sectors of `D^(w,Sigma)`: classes with `K.Sigma = 2 (mod 4)` are kept,
/// classes with `K.Sigma = 0 (mod 4)` become `i^{-d0} e^{-Q/2 + iK.a}`.
pub fn dws_from_dseries(s: &DSeries, sigma: &LatticeClass, d0: i64) -> Result<DSeries> {
    ensure_same(s.lattice(), sigma.lattice())?;
    let twist = GaussianRational::i_pow(-d0);
    let mut bad = Vec::new();
    let mut terms = Vec::with_capacity(s.terms().len());
    for t in s.terms() {
        if t.q != int(1) || !t.freq_is_real() {
            bad.push(format!("term {} is not in Donaldson-series form", single(s, t)));
            continue;
        }
        match residue_mod4(&s.freq_on(t, sigma)?) {
            Some(2) => terms.push(t.clone()),
            Some(0) => terms.push(ExpTerm::new(
                int(-1),
                t.freq.iter().map(GaussianRational::times_i).collect(),
                &t.coeff * &twist,
            )),
            _ => bad.push(format!("term {}: K.Sigma is not an even integer", single(s, t))),
        }
    }
    if !bad.is_empty() {
        return Err(Error::MalformedSectors(bad));
    }
    DSeries::new(s.lattice(), terms)
}

fn single(s: &DSeries, t: &ExpTerm) -> String {
    DSeries::new(s.lattice(), [t.clone()]).map(|x| x.to_string()).unwrap_or_default()
}

/// `D^(w,Sigma)_X` for an allowable pair.
pub fn to_dws(x: &ManifoldRecord, w: &LatticeClass) -> Result<DSeries> {
    if !validate_allowable(w, &x.sigma)? {
        return Err(Error::NotAllowable(format!("w = {w}, sigma = {}", x.sigma)));
    }
    let d0 = d_zero(x, w)?;
    dws_from_dseries(&build_dseries(x, w)?, &x.sigma, d0)
}

/// Recovers the basic classes and `w`-independent coefficients from a
/// two-sector series.
pub fn from_dws(s: &DSeries, sigma: &LatticeClass, d0: i64, w: &LatticeClass) -> Result<SimpleTypeStructure> {
    ensure_same(s.lattice(), sigma.lattice())?;
    ensure_same(s.lattice(), w.lattice())?;
    let lattice = s.lattice();
    let untwist = GaussianRational::i_pow(d0);
    let mut bad = Vec::new();
    let mut entries = Vec::new();
    for t in s.terms() {
        let (class_coords, coeff, want) = if t.q == int(1) && t.freq_is_real() {
            (t.freq.iter().map(|c| c.re.clone()).collect::<Vec<_>>(), t.coeff.clone(), 2)
        } else if t.q == int(-1) && t.freq_is_imaginary() {
            (t.freq.iter().map(|c| c.im.clone()).collect(), &t.coeff * &untwist, 0)
        } else {
            bad.push(format!("term {} fits neither sector", single(s, t)));
            continue;
        };
        let k = LatticeClass::new(lattice, class_coords)?;
        let ks = pair(&k, sigma)?;
        if to_i64(&ks).map(|n| n.rem_euclid(4)) != Some(want) {
            bad.push(format!("term {}: K.Sigma = {} outside its sector", single(s, t), fmt_rational(&ks)));
            continue;
        }
        if !k.is_integral() {
            bad.push(format!("term {}: class {k} is not integral", single(s, t)));
            continue;
        }
        if !coeff.is_real() {
            bad.push(format!("term {}: coefficient is not real after untwisting", single(s, t)));
            continue;
        }
        let sign = w_sign(&k, w)?;
        entries.push((k, sign * coeff.re));
    }
    if !bad.is_empty() {
        return Err(Error::MalformedSectors(bad));
    }
    SimpleTypeStructure::new(entries)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub class: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K = {}: {}", self.class, self.message)
    }
}

/// Checks `+-K` symmetry with the `d0`-parity sign, `K.Sigma` even, and the
/// genus-2 adjunction bound against Sigma.
pub fn validate_structure(x: &ManifoldRecord) -> Vec<Violation> {
    let mut out = Vec::new();
    let sym = x.symmetry_sign();
    for b in x.structure.entries() {
        let v = |m: String| Violation { class: b.class.to_string(), message: m };
        if !b.class.is_integral() {
            out.push(v("class is not integral".into()));
            continue;
        }
        let ks = match pair(&b.class, &x.sigma) {
            Ok(ks) => ks,
            Err(e) => {
                out.push(v(e.to_string()));
                continue;
            }
        };
        if !(ks.clone() / int(2)).is_integer() {
            out.push(v(format!("K.Sigma odd ({})", fmt_rational(&ks))));
        }
        match adjunction_check(&b.class, &x.sigma, 2) {
            Ok(true) => {}
            Ok(false) => out.push(v(format!("adjunction bound violated: |K.Sigma| = {} > 2", fmt_rational(&ks.abs())))),
            Err(e) => out.push(v(e.to_string())),
        }
        let partner = b.class.neg();
        let want = &sym * &b.coeff;
        match x.structure.coefficient_of(&partner) {
            None => out.push(v(format!("missing partner -K = {partner}"))),
            Some(a) if *a != want => out.push(v(format!(
                "partner -K has coefficient {}, expected {}",
                fmt_rational(a),
                fmt_rational(&want)
            ))),
            Some(_) => {}
        }
    }
    out
}
