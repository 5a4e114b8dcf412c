//! Fiber sums along a genus-2 surface: the glued intersection form, the
//! two gluing formulas and their corollaries.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::donaldson::{build_dseries, w_sign, Chamber, ManifoldRecord, SimpleTypeStructure};
use crate::error::{Error, Result};
use crate::lattice::{ensure_same, pair, validate_allowable, IntersectionLattice, LatticeClass};
use crate::number::{fmt_rational, int, rat, GaussianRational, Rational};
use crate::series::{DSeries, ExpTerm};

/// Name of the glued surface class in every glued lattice.
pub const SIGMA: &str = "Sigma";

/// How a matched class meets the gluing region `Sigma x S^1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Restricts to `k [S^1]`.
    Circle(Rational),
    /// Restricts to `multiple` times a fixed curve of Sigma, named by `label`.
    Curve { label: String, multiple: Rational },
}

impl Boundary {
    pub fn circle(k: i64) -> Self {
        Boundary::Circle(int(k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedClass {
    pub name: String,
    pub d1: LatticeClass,
    pub d2: LatticeClass,
    pub boundary: Boundary,
}

impl MatchedClass {
    pub fn new(name: impl Into<String>, d1: LatticeClass, d2: LatticeClass, boundary: Boundary) -> Self {
        Self { name: name.into(), d1, d2, boundary }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Direct,
    /// Factors are the capped manifolds `X_i #_Sigma B`.
    ViaB,
}

#[derive(Clone, Debug)]
pub struct GluingConfig {
    pub x1: ManifoldRecord,
    pub x2: ManifoldRecord,
    pub matched: Vec<MatchedClass>,
    pub mode: Mode,
}

impl GluingConfig {
    pub fn new(x1: ManifoldRecord, x2: ManifoldRecord, matched: Vec<MatchedClass>, mode: Mode) -> Result<Self> {
        let cfg = Self { x1, x2, matched, mode };
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<()> {
        let mut problems = Vec::new();
        for x in [&self.x1, &self.x2] {
            if !x.simple_type || x.chamber != Chamber::Standard || x.b1 != 0 || x.b_plus <= 1 {
                problems.push(format!("{} must be of simple type with b1 = 0 and b+ > 1", x.name));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for m in &self.matched {
            if m.name == SIGMA || !seen.insert(m.name.as_str()) {
                problems.push(format!("matched class name `{}` is reserved or repeated", m.name));
            }
            ensure_same(&self.x1.lattice, m.d1.lattice())?;
            ensure_same(&self.x2.lattice, m.d2.lattice())?;
            let s1 = pair(&self.x1.sigma, &m.d1)?;
            let s2 = pair(&self.x2.sigma, &m.d2)?;
            if s1 != s2 {
                problems.push(format!(
                    "{}: Sigma.d1 = {} but Sigma.d2 = {}",
                    m.name,
                    fmt_rational(&s1),
                    fmt_rational(&s2)
                ));
            }
            match (&m.boundary, self.mode) {
                (Boundary::Curve { .. }, Mode::Direct) => {
                    problems.push(format!("{}: direct gluing needs circle boundaries", m.name))
                }
                (Boundary::Circle(k), _) if *k != s1 => problems.push(format!(
                    "{}: boundary multiple {} differs from Sigma.D = {}",
                    m.name,
                    fmt_rational(k),
                    fmt_rational(&s1)
                )),
                (Boundary::Curve { .. }, _) if !s1.is_zero() => {
                    problems.push(format!("{}: a curve boundary needs Sigma.D = 0", m.name))
                }
                _ => {}
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Gluing(problems.join("; ")))
        }
    }

    /// Swaps the two factors.
    pub fn swapped(&self) -> Self {
        Self {
            x1: self.x2.clone(),
            x2: self.x1.clone(),
            matched: self
                .matched
                .iter()
                .map(|m| MatchedClass { name: m.name.clone(), d1: m.d2.clone(), d2: m.d1.clone(), boundary: m.boundary.clone() })
                .collect(),
            mode: self.mode,
        }
    }

    fn sigma_dot(&self, m: &MatchedClass) -> Result<Rational> {
        pair(&self.x1.sigma, &m.d1)
    }

    /// Correction to `d1.d1' + d2.d2'` from the two caps.
    fn cap_correction(&self, a: &MatchedClass, b: &MatchedClass) -> Rational {
        if self.mode == Mode::Direct {
            return Rational::zero();
        }
        match (&a.boundary, &b.boundary) {
            (Boundary::Circle(ka), Boundary::Circle(kb)) => int(2) * ka * kb,
            (Boundary::Curve { label: la, multiple: ma }, Boundary::Curve { label: lb, multiple: mb }) if la == lb => {
                int(2) * ma * mb
            }
            _ => Rational::zero(),
        }
    }

    /// Half the difference between `Q(tD_a)` and the two pieces, as a
    /// coefficient of `t^2`.
    pub fn quad_correction(&self, index: usize) -> Rational {
        let m = &self.matched[index];
        self.cap_correction(m, m) / int(2)
    }
}

/// Intersection form of the glued manifold on the matched classes and Sigma.
pub fn glued_form(cfg: &GluingConfig) -> Result<Arc<IntersectionLattice>> {
    let n = cfg.matched.len();
    let mut gram = vec![vec![Rational::zero(); n + 1]; n + 1];
    for (i, a) in cfg.matched.iter().enumerate() {
        for (j, b) in cfg.matched.iter().enumerate() {
            gram[i][j] = pair(&a.d1, &b.d1)? + pair(&a.d2, &b.d2)? + cfg.cap_correction(a, b);
        }
        let s = cfg.sigma_dot(a)?;
        gram[i][n] = s.clone();
        gram[n][i] = s;
    }
    let mut names: Vec<String> = cfg.matched.iter().map(|m| m.name.clone()).collect();
    names.push(SIGMA.to_string());
    IntersectionLattice::new(names, gram)
}

fn check_w(x: &ManifoldRecord, w: &LatticeClass) -> Result<Rational> {
    ensure_same(&x.lattice, w.lattice())?;
    if !validate_allowable(w, &x.sigma)? {
        return Err(Error::NotAllowable(format!("{}: w = {w}", x.name)));
    }
    pair(w, &x.sigma)
}

fn check_ws(cfg: &GluingConfig, w1: &LatticeClass, w2: &LatticeClass) -> Result<()> {
    let a = check_w(&cfg.x1, w1)?;
    let b = check_w(&cfg.x2, w2)?;
    if a != b {
        return Err(Error::Gluing(format!(
            "w1.Sigma = {} and w2.Sigma = {} do not agree",
            fmt_rational(&a),
            fmt_rational(&b)
        )));
    }
    Ok(())
}

struct Signed {
    class: LatticeClass,
    coeff: Rational,
    sigma_dot: Rational,
}

fn signed_classes(x: &ManifoldRecord, w: &LatticeClass) -> Result<Vec<Signed>> {
    build_dseries(x, w)?;
    x.structure
        .entries()
        .iter()
        .map(|b| {
            let sigma_dot = pair(&b.class, &x.sigma)?;
            if !(sigma_dot.clone() / int(2)).is_integer() {
                return Err(Error::Gluing(format!("{}: basic class {} has odd K.Sigma", x.name, b.class)));
            }
            Ok(Signed { coeff: w_sign(&b.class, w)? * &b.coeff, class: b.class.clone(), sigma_dot })
        })
        .collect()
}

/// Shared double sum: pairs with `K.Sigma = L.Sigma = +-2`, frequency
/// `K.d1 + L.d2 + shift * (Sigma.D)` on each matched class and `+-2` on Sigma.
fn double_sum(
    cfg: &GluingConfig,
    w1: &LatticeClass,
    w2: &LatticeClass,
    weight: Rational,
    shift: Rational,
) -> Result<DSeries> {
    check_ws(cfg, w1, w2)?;
    let lattice = glued_form(cfg)?;
    let left = signed_classes(&cfg.x1, w1)?;
    let right = signed_classes(&cfg.x2, w2)?;
    let mut terms = Vec::new();
    for side in [2i64, -2] {
        let side_r = int(side);
        // +2 pairs carry `-weight`, -2 pairs `+weight`
        let c = if side > 0 { -weight.clone() } else { weight.clone() };
        for k in left.iter().filter(|k| k.sigma_dot == side_r) {
            for l in right.iter().filter(|l| l.sigma_dot == side_r) {
                let mut functional = Vec::with_capacity(cfg.matched.len() + 1);
                for m in &cfg.matched {
                    let s = cfg.sigma_dot(m)?;
                    functional.push(pair(&k.class, &m.d1)? + pair(&l.class, &m.d2)? + &shift * &side_r / int(2) * s);
                }
                functional.push(side_r.clone());
                let coords = lattice.represent(&functional)?;
                let freq = coords.into_iter().map(GaussianRational::real).collect();
                terms.push(ExpTerm::new(int(1), freq, GaussianRational::real(&c * &k.coeff * &l.coeff)));
            }
        }
    }
    DSeries::new(&lattice, terms)
}

/// `D^w` of the fiber sum from the factors' basic classes.
pub fn glue_direct(cfg: &GluingConfig, w1: &LatticeClass, w2: &LatticeClass) -> Result<DSeries> {
    if cfg.mode != Mode::Direct {
        return Err(Error::Gluing("glue_direct needs a direct-mode configuration".into()));
    }
    double_sum(cfg, w1, w2, int(32), int(2))
}

/// `D^w` of the fiber sum from the capped factors `X_i #_Sigma B`.
pub fn glue_via_b(cfg: &GluingConfig, w1: &LatticeClass, w2: &LatticeClass) -> Result<DSeries> {
    if cfg.mode != Mode::ViaB {
        return Err(Error::Gluing("glue_via_b needs a via-B configuration".into()));
    }
    double_sum(cfg, w1, w2, rat(1, 2), int(0))
}

pub fn glue(cfg: &GluingConfig, w1: &LatticeClass, w2: &LatticeClass) -> Result<DSeries> {
    match cfg.mode {
        Mode::Direct => glue_direct(cfg, w1, w2),
        Mode::ViaB => glue_via_b(cfg, w1, w2),
    }
}

/// The class of the glued manifold pairing like `w1` on the first pieces
/// and on Sigma.
pub fn glued_w(cfg: &GluingConfig, w1: &LatticeClass, w2: &LatticeClass) -> Result<LatticeClass> {
    if cfg.mode != Mode::Direct {
        return Err(Error::Gluing("w is only derived for direct gluing; pass it explicitly".into()));
    }
    check_ws(cfg, w1, w2)?;
    let lattice = glued_form(cfg)?;
    let mut functional = Vec::with_capacity(cfg.matched.len() + 1);
    for m in &cfg.matched {
        functional.push(pair(w1, &m.d1)? + pair(w2, &m.d2)?);
    }
    functional.push(pair(w1, &cfg.x1.sigma)?);
    let w = LatticeClass::new(&lattice, lattice.represent(&functional)?)?;
    if !w.is_integral() {
        return Err(Error::NotIntegral(format!("glued w = {w}")));
    }
    Ok(w)
}

/// `b+` of the fiber sum.
pub fn glued_b_plus(cfg: &GluingConfig) -> u32 {
    let sum = cfg.x1.b_plus + cfg.x2.b_plus;
    match cfg.mode {
        Mode::Direct => sum + 3,
        // each cap adds the 3 of B plus the 3 of a genus-2 sum
        Mode::ViaB => sum - 9,
    }
}

/// Record of the fiber sum carrying the structure read off a glued series.
pub fn glued_record(cfg: &GluingConfig, series: &DSeries, w: &LatticeClass) -> Result<ManifoldRecord> {
    ensure_same(series.lattice(), w.lattice())?;
    let lattice = series.lattice();
    let sigma = LatticeClass::generator(lattice, SIGMA)?;
    let mut entries = Vec::new();
    for t in series.terms() {
        if t.q != int(1) || !t.freq_is_real() || !t.coeff.is_real() {
            return Err(Error::Gluing("glued series is not in D-form".into()));
        }
        let k = LatticeClass::new(lattice, t.freq.iter().map(|c| c.re.clone()).collect())?;
        entries.push((k.clone(), w_sign(&k, w)? * &t.coeff.re));
    }
    ManifoldRecord::new(
        format!("{}#{}", cfg.x1.name, cfg.x2.name),
        0,
        glued_b_plus(cfg),
        sigma,
        true,
        Some(2),
        Chamber::Standard,
        SimpleTypeStructure::new(entries)?,
        BTreeMap::new(),
    )
}

fn restriction_signature(x: &ManifoldRecord, k: &LatticeClass, pieces: &[&LatticeClass]) -> Result<Vec<Rational>> {
    let mut sig = pieces.iter().map(|d| pair(k, d)).collect::<Result<Vec<_>>>()?;
    sig.push(pair(k, &x.sigma)?);
    Ok(sig)
}

fn grouped_sum(x: &ManifoldRecord, k: &LatticeClass, w: &LatticeClass, pieces: &[&LatticeClass]) -> Result<Rational> {
    let target = restriction_signature(x, k, pieces)?;
    let mut acc = Rational::zero();
    for b in x.structure.entries() {
        if restriction_signature(x, &b.class, pieces)? == target {
            acc += w_sign(&b.class, w)? * &b.coeff;
        }
    }
    Ok(acc)
}

/// Coefficient of the glued basic class restricting to `K` and `L`, with
/// classes grouped by their pairings against the matched pieces and Sigma.
pub fn pair_coefficient_sum(
    cfg: &GluingConfig,
    k: &LatticeClass,
    l: &LatticeClass,
    w1: &LatticeClass,
    w2: &LatticeClass,
) -> Result<GaussianRational> {
    let ks = pair(k, &cfg.x1.sigma)?;
    let ls = pair(l, &cfg.x2.sigma)?;
    if ks != ls || (ks != int(2) && ks != int(-2)) {
        return Ok(GaussianRational::zero());
    }
    let p1: Vec<&LatticeClass> = cfg.matched.iter().map(|m| &m.d1).collect();
    let p2: Vec<&LatticeClass> = cfg.matched.iter().map(|m| &m.d2).collect();
    let a = grouped_sum(&cfg.x1, k, w1, &p1)?;
    let b = grouped_sum(&cfg.x2, l, w2, &p2)?;
    let sign = if ks == int(2) { int(-32) } else { int(32) };
    Ok(GaussianRational::real(sign * a * b))
}

/// True when no frequency of `s` pairs to zero with `sigma`.
pub fn sigma_zero_check(s: &DSeries, sigma: &LatticeClass) -> Result<bool> {
    for t in s.terms() {
        if s.freq_on(t, sigma)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn profile(s: &DSeries, sigma: &LatticeClass) -> Result<Vec<(Rational, GaussianRational, GaussianRational)>> {
    let mut out = s
        .terms()
        .iter()
        .map(|t| Ok((t.q.clone(), t.coeff.clone(), s.freq_on(t, sigma)?)))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// True when some bijection of frequencies preserves coefficients and
/// pairings with Sigma.
pub fn invariant_profile_compare(a: &DSeries, sigma_a: &LatticeClass, b: &DSeries, sigma_b: &LatticeClass) -> Result<bool> {
    Ok(profile(a, sigma_a)? == profile(b, sigma_b)?)
}

/// Replaces each splitting `(d1, d2)` by `(d1 - r Sigma_1, d2 + r Sigma_2)`.
pub fn shift_splitting(cfg: &GluingConfig, r: &Rational) -> Result<GluingConfig> {
    let matched = cfg
        .matched
        .iter()
        .map(|m| {
            Ok(MatchedClass {
                name: m.name.clone(),
                d1: m.d1.checked_sub(&cfg.x1.sigma.scale(r))?,
                d2: m.d2.checked_add(&cfg.x2.sigma.scale(r))?,
                boundary: m.boundary.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    GluingConfig::new(cfg.x1.clone(), cfg.x2.clone(), matched, cfg.mode)
}
