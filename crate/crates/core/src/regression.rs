//! The fixed list of worked values and invariants behind `verify-paper`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::catalog::{self, standard_gluing};
use crate::donaldson::{build_dseries, d_zero, from_dws, to_dws, validate_structure, Chamber, ManifoldRecord};
use crate::error::Result;
use crate::floer::{coefficients_from_structure, gram_n, pair_v4, pair_via_m, verify_l, RelativeVector, Space, L};
use crate::gluing::{glue_direct, glue_via_b, glued_record, glued_w, shift_splitting, sigma_zero_check, Mode, SIGMA};
use crate::lattice::{adjunction_check, pair, IntersectionLattice, LatticeClass};
use crate::number::{int, rat, GaussianRational, Rational};
use crate::series::{DSeries, ExpTerm, ExpansionTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} [{}] {}", self.id, self.title)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

fn check(id: &'static str, title: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check { id, title, passed, detail },
        Err(e) => Check { id, title, passed: false, detail: format!("error[{}]: {e}", e.code()) },
    }
}

/// Hyperbolic plane `<T, S>` with `Q(tT + sS) = 2ts`.
fn plane() -> Arc<IntersectionLattice> {
    IntersectionLattice::from_ints(&["T", "S"], &[&[0, 1], &[1, 0]]).expect("plane")
}

/// `sum c e^{q ts + a t + b s}` for entries `(q, a, b, c)`; `a`, `b` may be
/// imaginary.
pub fn plane_series(terms: &[(i64, GaussianRational, GaussianRational, GaussianRational)]) -> DSeries {
    let l = plane();
    DSeries::new(
        &l,
        terms.iter().map(|(q, a, b, c)| ExpTerm::new(int(*q), vec![b.clone(), a.clone()], c.clone())),
    )
    .expect("plane series")
}

fn g(n: i64) -> GaussianRational {
    GaussianRational::from(n)
}

fn gq(n: i64, d: i64) -> GaussianRational {
    GaussianRational::real(rat(n, d))
}

fn plane_table(s: &DSeries, degree: u32) -> ExpansionTable {
    let l = s.lattice();
    let dirs = [
        ("t".to_string(), LatticeClass::generator(l, "T").expect("T")),
        ("s".to_string(), LatticeClass::generator(l, "S").expect("S")),
    ];
    s.expand(&dirs, degree).expect("plane expansion")
}

fn ts_table(s: &DSeries, d: &LatticeClass, sigma: &LatticeClass, degree: u32) -> Result<ExpansionTable> {
    s.expand(&[("t".into(), d.clone()), ("s".into(), sigma.clone())], degree)
}

fn compare_tables(actual: &ExpansionTable, expected: &ExpansionTable) -> (bool, String) {
    if actual.coefficients == expected.coefficients {
        return (true, format!("{} coefficients agree", expected.coefficients.len()));
    }
    let mut keys: Vec<_> = actual.coefficients.keys().chain(expected.coefficients.keys()).cloned().collect();
    keys.sort();
    keys.dedup();
    let first = keys
        .into_iter()
        .find(|k| actual.coefficient(k) != expected.coefficient(k))
        .expect("some coefficient differs");
    (
        false,
        format!(
            "t^{} s^{}: got {}, expected {}",
            first[0],
            first[1],
            actual.coefficient(&first),
            expected.coefficient(&first)
        ),
    )
}

fn glued_dws(a: &str, b: &str) -> Result<(DSeries, LatticeClass, LatticeClass)> {
    let g = standard_gluing(a, b, Mode::Direct)?;
    let s = glue_direct(&g.config, &g.w1, &g.w2)?;
    let w = glued_w(&g.config, &g.w1, &g.w2)?;
    let x = glued_record(&g.config, &s, &w)?;
    let l = s.lattice();
    Ok((to_dws(&x, &w)?, LatticeClass::generator(l, "D")?, LatticeClass::generator(l, SIGMA)?))
}

fn b_extended() -> Result<ManifoldRecord> {
    let b = catalog::get("B")?.record;
    let l = IntersectionLattice::from_ints(
        &["S", "E1", "E2", "F", "G"],
        &[
            &[2, 0, 0, 1, 0],
            &[0, -1, 0, 0, 0],
            &[0, 0, -1, 0, 0],
            &[1, 0, 0, 0, 1],
            &[0, 0, 0, 1, 0],
        ],
    )?;
    let lift = |c: &LatticeClass| -> Result<LatticeClass> {
        let mut coords = c.coords().to_vec();
        coords.push(Rational::zero());
        LatticeClass::new(&l, coords)
    };
    let structure = crate::donaldson::SimpleTypeStructure::new(
        b.structure.entries().iter().map(|e| Ok((lift(&e.class)?, e.coeff.clone()))).collect::<Result<Vec<_>>>()?,
    )?;
    ManifoldRecord::new("B", 0, 3, lift(&b.sigma)?, true, Some(1), Chamber::Standard, structure, Default::default())
}

fn c1_gram() -> Check {
    check("1", "Gram matrix from the Sigma x CP1 monomials", || {
        let e = catalog::get("SigmaCP1")?;
        let m = &e.record.monomials;
        let built: Vec<Vec<Rational>> = (0..4u32)
            .map(|i| (0..4u32).map(|j| m.get(&(i + j)).cloned().unwrap_or_else(Rational::zero)).collect())
            .collect();
        let diff = (0..16).filter(|k| built[k / 4][k % 4] != gram_n()[k / 4][k % 4]).count();
        Ok((diff == 0, format!("{} of 16 entries agree", 16 - diff)))
    })
}

fn c2_l() -> Check {
    check("2", "pairing (1/2,0,2,0).(0,2,0,8) = -8 and l = -32", || {
        let u = RelativeVector::constant(Space::V4, &[rat(1, 2), int(0), int(2), int(0)])?;
        let v = RelativeVector::constant(Space::V4, &[int(0), int(2), int(0), int(8)])?;
        let p = pair_v4(&u, &v)?;
        let r = verify_l()?;
        let ok = p.taylor(0) == g(-8) && p.terms().len() == 1 && r.l == int(L);
        Ok((ok, format!("pairing {}, l = {}", p.taylor(0), crate::number::fmt_rational(&r.l))))
    })
}

fn c3_eq_cosh_cos() -> Check {
    check("3", "two-sector series of B with w.E1 = w.E2 = 0, w^2 = 0", || {
        let e = catalog::get("B")?;
        let b = &e.record;
        let w = e.w();
        let s = to_dws(b, w)?;
        let k1 = b.class(&[("E1", 1), ("E2", 1)])?;
        let k2 = b.class(&[("E1", 1), ("E2", -1)])?;
        let quarter = gq(1, 4);
        let imag = |k: &LatticeClass| k.coords().iter().map(|c| GaussianRational::new(Rational::zero(), c.clone())).collect();
        let expected = DSeries::new(
            &b.lattice,
            [
                ExpTerm::real(int(1), &k1, quarter.clone()),
                ExpTerm::real(int(1), &k1.neg(), quarter.clone()),
                ExpTerm::new(int(-1), imag(&k2), quarter.clone()),
                ExpTerm::new(int(-1), imag(&k2.neg()), quarter),
            ],
        )?;
        Ok((s == expected, format!("got {s}")))
    })
}

fn c4_bullets() -> Vec<Check> {
    let b1 = check("4.1", "B with w = E1 along (tD, sSigma)", || {
        let e = catalog::get("B")?;
        let b = &e.record;
        let s = to_dws(b, &b.class(&[("E1", 1)])?)?;
        let actual = ts_table(&s, e.named("D").expect("D"), &b.sigma, 6)?;
        let expected = plane_table(&plane_series(&[(1, g(0), g(2), gq(-1, 4)), (1, g(0), g(-2), gq(1, 4))]), 6);
        Ok(compare_tables(&actual, &expected))
    });
    let b2 = check("4.2", "B with w from the K3 part, w.S = 1, both residues of w^2", || {
        let b = b_extended()?;
        let d = b.class(&[("F", 1)])?;
        let mut details = Vec::new();
        let mut ok = true;
        for (w, sign) in [(b.class(&[("F", 1)])?, 1), (b.class(&[("F", 1), ("G", 1)])?, -1)] {
            let s = to_dws(&b, &w)?;
            let actual = ts_table(&s, &d, &b.sigma, 6)?;
            let printed = plane_series(&[
                (1, g(0), g(2), gq(sign, 4)),
                (1, g(0), g(-2), gq(sign, 4)),
                (-1, g(0), g(0), gq(-1, 2)),
            ]);
            let (pass, detail) = compare_tables(&actual, &plane_table(&printed, 6));
            ok &= pass;
            details.push(format!("w^2 = {}: {detail}", crate::number::fmt_rational(&w.square())));
        }
        Ok((ok, details.join("; ")))
    });
    let b3 = check("4.3", "K3 along (tD, sSigma)", || {
        let e = catalog::get("K3")?;
        let s = to_dws(&e.record, e.w())?;
        let actual = ts_table(&s, e.named("D").expect("D"), &e.record.sigma, 6)?;
        let expected = plane_table(&plane_series(&[(-1, g(0), g(0), g(-1))]), 6);
        Ok(compare_tables(&actual, &expected))
    });
    vec![b1, b2, b3]
}

fn c5_doubling() -> Check {
    check("5", "doubling B #_Sigma B along (tD, sSigma), symmetric in t and s", || {
        let (s, d, sigma) = glued_dws("B", "B")?;
        let actual = ts_table(&s, &d, &sigma, 8)?;
        let expected = plane_table(&plane_series(&[(1, g(2), g(2), g(-2)), (1, g(-2), g(-2), g(2))]), 8);
        let (eq, detail) = compare_tables(&actual, &expected);
        let sym = actual.coefficients.iter().all(|(k, v)| &actual.coefficient(&[k[1], k[0]]) == v);
        Ok((eq && sym, format!("{detail}; t<->s symmetric: {sym}")))
    })
}

fn c6_c2() -> Check {
    check("6", "C #_Sigma B along (tD, sSigma)", || {
        let (s, d, sigma) = glued_dws("C", "B")?;
        let actual = ts_table(&s, &d, &sigma, 8)?;
        let expected = plane_table(&plane_series(&[(1, g(2), g(2), g(16)), (1, g(-2), g(-2), g(16))]), 8);
        let (ok, detail) = compare_tables(&actual, &expected);
        Ok((ok, format!("{detail}; series {s}")))
    })
}

fn c7_cross() -> Check {
    check("7", "via-B gluing equals direct gluing for (B,B) and (B,C)", || {
        let mut notes = Vec::new();
        let mut ok = true;
        for (a, b) in [("B", "B"), ("B", "C")] {
            let d = standard_gluing(a, b, Mode::Direct)?;
            let v = standard_gluing(a, b, Mode::ViaB)?;
            let x = glue_direct(&d.config, &d.w1, &d.w2)?;
            let y = glue_via_b(&v.config, &v.w1, &v.w2)?;
            let same = x.lattice().gram() == y.lattice().gram() && x.terms() == y.terms();
            ok &= same;
            notes.push(format!("({a},{b}): {}", if same { "equal" } else { "differ" }));
        }
        Ok((ok, notes.join(", ")))
    })
}

fn c8_sigma_zero() -> Check {
    check("8", "no glued basic class is orthogonal to Sigma", || {
        let mut n = 0;
        for a in ["B", "C"] {
            for b in ["B", "C"] {
                let v = standard_gluing(a, b, Mode::ViaB)?;
                let s = glue_via_b(&v.config, &v.w1, &v.w2)?;
                if !sigma_zero_check(&s, &LatticeClass::generator(s.lattice(), SIGMA)?)? {
                    return Ok((false, format!("({a},{b}) has a class with K.Sigma = 0")));
                }
                n += 1;
            }
        }
        Ok((true, format!("{n} glued series checked")))
    })
}

fn simple_entries() -> Vec<catalog::CatalogEntry> {
    catalog::all().into_iter().filter(|e| e.record.chamber == Chamber::Standard).collect()
}

fn ws_for(e: &catalog::CatalogEntry) -> Result<Vec<LatticeClass>> {
    let w = e.w().clone();
    let s = &e.record.sigma;
    Ok(vec![w.clone(), w.checked_add(s)?, w.checked_sub(&s.scale(&int(3)))?])
}

fn c9_properties() -> Vec<Check> {
    let round_trip = check("9.1", "recovering the structure from the two-sector series", || {
        let mut n = 0;
        for e in simple_entries() {
            for w in ws_for(&e)? {
                let s = to_dws(&e.record, &w)?;
                if from_dws(&s, &e.record.sigma, d_zero(&e.record, &w)?, &w)? != e.record.structure {
                    return Ok((false, format!("{} with w = {w}", e.record.name)));
                }
                n += 1;
            }
        }
        Ok((true, format!("{n} (entry, w) pairs")))
    });
    let splitting = check("9.2", "splitting shifts (d1 - r Sigma, d2 + r Sigma)", || {
        let mut n = 0;
        for (a, b, mode) in [("B", "B", Mode::Direct), ("C", "B", Mode::Direct), ("B", "B", Mode::ViaB), ("B", "C", Mode::ViaB)] {
            let sg = standard_gluing(a, b, mode)?;
            let base = crate::gluing::glue(&sg.config, &sg.w1, &sg.w2)?;
            for r in [int(1), int(-1), rat(1, 2), rat(-1, 2), int(3)] {
                let shifted = shift_splitting(&sg.config, &r)?;
                let s = crate::gluing::glue(&shifted, &sg.w1, &sg.w2)?;
                if s != base {
                    return Ok((false, format!("({a},{b}) {mode:?} changes at r = {r}")));
                }
                n += 1;
            }
        }
        Ok((true, format!("{n} shifted gluings")))
    });
    let periodic = check("9.3", "w -> w + 2 Sigma leaves the two-sector series fixed", || {
        for e in simple_entries() {
            for w in ws_for(&e)? {
                let w2 = w.checked_add(&e.record.sigma.scale(&int(2)))?;
                if to_dws(&e.record, &w)? != to_dws(&e.record, &w2)? {
                    return Ok((false, format!("{} with w = {w}", e.record.name)));
                }
            }
        }
        Ok((true, String::new()))
    });
    let parity = check("9.4", "degree support of D^w is d0 mod 4 up to degree 9", || {
        let mut n = 0;
        for e in simple_entries() {
            let x = &e.record;
            for w in ws_for(&e)? {
                let d0 = d_zero(x, &w)?;
                let dw = build_dseries(x, &w)?.project_parity(d0, 1);
                let mut dirs: Vec<LatticeClass> = x
                    .lattice
                    .names()
                    .iter()
                    .map(|n| LatticeClass::generator(&x.lattice, n))
                    .collect::<Result<_>>()?;
                dirs.push(x.sigma.clone());
                dirs.push(dirs.iter().try_fold(LatticeClass::zero(&x.lattice), |acc, c| acc.checked_add(c))?);
                for a in dirs {
                    let t = dw.expand(&[("u".into(), a.clone())], 9)?;
                    if let Some(d) = t.support_degrees().into_iter().find(|d| (i64::from(*d) - d0).rem_euclid(4) != 0) {
                        return Ok((false, format!("{} w = {w} along {a}: degree {d}, d0 = {d0}", x.name)));
                    }
                    n += 1;
                }
            }
        }
        Ok((true, format!("{n} expansions")))
    });
    let symmetry = check("9.5", "+-K symmetry with the d0-parity sign", || {
        let mut all: Vec<ManifoldRecord> = simple_entries().into_iter().map(|e| e.record).collect();
        for (a, b) in [("B", "B"), ("C", "B")] {
            let sg = standard_gluing(a, b, Mode::Direct)?;
            let s = glue_direct(&sg.config, &sg.w1, &sg.w2)?;
            all.push(glued_record(&sg.config, &s, &glued_w(&sg.config, &sg.w1, &sg.w2)?)?);
        }
        for x in &all {
            let v = validate_structure(x);
            if let Some(first) = v.first() {
                return Ok((false, format!("{}: {first}", x.name)));
            }
        }
        Ok((true, format!("{} structures", all.len())))
    });
    let adjunction = check("9.6", "adjunction |K.Sigma| <= 2 on every entry", || {
        for e in simple_entries() {
            for b in e.record.structure.entries() {
                if !adjunction_check(&b.class, &e.record.sigma, 2)? {
                    return Ok((false, format!("{}: K = {}", e.record.name, b.class)));
                }
            }
        }
        Ok((true, String::new()))
    });
    vec![round_trip, splitting, periodic, parity, symmetry, adjunction]
}

fn c10_paths() -> Check {
    check("10", "pairing-matrix path equals the glued series on the t-ray", || {
        let mut notes = Vec::new();
        let mut ok = true;
        for (a, b) in [("B", "B"), ("C", "B")] {
            let sg = standard_gluing(a, b, Mode::Direct)?;
            let m = &sg.config.matched[0];
            let left = coefficients_from_structure(&sg.config.x1, &sg.w1, &m.d1)?;
            let right = coefficients_from_structure(&sg.config.x2, &sg.w2, &m.d2)?;
            let sd = pair(&sg.config.x1.sigma, &m.d1)?;
            let via_m = pair_via_m(&left, &right, &sd);
            let (s, d, _) = glued_dws(a, b)?;
            let ray = s.restrict_to_ray(&d)?;
            ok &= via_m == ray;
            notes.push(format!("({a},{b}): {via_m}"));
        }
        let k3 = catalog::get("K3")?;
        let c = coefficients_from_structure(&k3.record, k3.w(), k3.named("D").expect("D"))?;
        let zero = pair_via_m(&c, &c, &int(1)).is_zero();
        ok &= zero;
        notes.push(format!("K3 factor gives zero: {zero}"));
        Ok((ok, notes.join("; ")))
    })
}

/// All checks in a fixed order.
pub fn run_all() -> Vec<Check> {
    let mut out = vec![c1_gram(), c2_l(), c3_eq_cosh_cos()];
    out.extend(c4_bullets());
    out.extend([c5_doubling(), c6_c2(), c7_cross(), c8_sigma_zero()]);
    out.extend(c9_properties());
    out.push(c10_paths());
    out
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
