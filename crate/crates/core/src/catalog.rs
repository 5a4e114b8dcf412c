//! Built-in manifold records.
//!
//! Lattices are the smallest sublattices that carry every class the
//! computations pair against.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::donaldson::{Chamber, ManifoldRecord, SimpleTypeStructure};
use crate::error::{Error, Result};
use crate::gluing::{Boundary, GluingConfig, MatchedClass, Mode};
use crate::lattice::{IntersectionLattice, LatticeClass};
use crate::number::{int, rat, Rational};

pub const NAMES: [&str; 5] = ["K3", "B", "C", "C2", "SigmaCP1"];

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub record: ManifoldRecord,
    pub notes: &'static str,
    pub constants: Vec<(String, Rational)>,
    /// Classes referred to by name on the command line (`w`, `D`, ...).
    pub named: Vec<(String, LatticeClass)>,
}

impl CatalogEntry {
    pub fn named(&self, name: &str) -> Option<&LatticeClass> {
        self.named.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn constant(&self, name: &str) -> Option<&Rational> {
        self.constants.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    /// The default `w` of the entry.
    pub fn w(&self) -> &LatticeClass {
        self.named("w").expect("every catalog entry names a w")
    }
}

fn class(l: &Arc<IntersectionLattice>, e: &[(&str, i64)]) -> LatticeClass {
    LatticeClass::from_ints(l, e).expect("catalog class")
}

fn named(l: &Arc<IntersectionLattice>, items: &[(&str, &[(&str, i64)])]) -> Vec<(String, LatticeClass)> {
    items.iter().map(|(n, e)| (n.to_string(), class(l, e))).collect()
}

fn standard(name: &str, b_plus: u32, sigma: LatticeClass, structure: Vec<(LatticeClass, Rational)>) -> ManifoldRecord {
    ManifoldRecord::new(
        name,
        0,
        b_plus,
        sigma,
        true,
        Some(1),
        Chamber::Standard,
        SimpleTypeStructure::new(structure).expect("catalog structure"),
        BTreeMap::new(),
    )
    .expect("catalog record")
}

fn k3() -> CatalogEntry {
    let l = IntersectionLattice::from_ints(&["S", "D"], &[&[2, 1], &[1, 0]]).expect("K3 lattice");
    let sigma = class(&l, &[("S", 1), ("D", -1)]);
    let record = standard("K3", 3, sigma, vec![(LatticeClass::zero(&l), int(1))]);
    CatalogEntry {
        record,
        notes: "K3 surface. S is a tight genus-2 surface class (S^2 = 2), D a fiber meeting it once. \
                Sigma = S - D has square 0 and D.Sigma = 1. The single basic class 0 with a = 1 is \
                read back from D^(w,Sigma)(e^{sSigma+tD}) = -e^{-ts}.",
        constants: vec![],
        named: named(&l, &[("w", &[("D", 1)]), ("D", &[("D", 1)]), ("Sigma", &[("S", 1), ("D", -1)])]),
    }
}

fn b() -> CatalogEntry {
    let l = IntersectionLattice::from_ints(
        &["S", "E1", "E2", "F"],
        &[&[2, 0, 0, 1], &[0, -1, 0, 0], &[0, 0, -1, 0], &[1, 0, 0, 0]],
    )
    .expect("B lattice");
    let sigma = class(&l, &[("S", 1), ("E1", -1), ("E2", -1)]);
    let q = rat(1, 4);
    let record = standard(
        "B",
        3,
        sigma,
        vec![
            (class(&l, &[("E1", 1), ("E2", 1)]), q.clone()),
            (class(&l, &[("E1", -1), ("E2", -1)]), q.clone()),
            (class(&l, &[("E1", 1), ("E2", -1)]), -q.clone()),
            (class(&l, &[("E1", -1), ("E2", 1)]), -q),
        ],
    );
    CatalogEntry {
        record,
        notes: "K3 blown up in two points, D_B = e^{Q/2} sinh(E1.a) sinh(E2.a). Sigma = S - E1 - E2 \
                is the proper transform of a genus-2 surface through both points. F is a fiber class \
                with F.Sigma = 1; w = F has w.E1 = w.E2 = 0 and w^2 = 0.",
        constants: vec![],
        named: named(
            &l,
            &[
                ("w", &[("F", 1)]),
                ("D", &[("F", 1)]),
                ("Sigma", &[("S", 1), ("E1", -1), ("E2", -1)]),
            ],
        ),
    }
}

fn c() -> CatalogEntry {
    let l = IntersectionLattice::from_ints(&["D", "Sigma", "K"], &[&[0, 1, 2], &[1, 0, 2], &[2, 2, 4]])
        .expect("C lattice");
    let k = class(&l, &[("K", 1)]);
    let sigma = class(&l, &[("Sigma", 1)]);
    let record = standard("C", 9, sigma, vec![(k.clone(), int(2)), (k.neg(), int(-2))]);
    CatalogEntry {
        record,
        notes: "C = B #_Sigma B. D is the sum of the two fibers, K the glued basic class with \
                K.Sigma = K.D = 2 and K^2 = 4. D^(w,Sigma)_C(e^a) = -4 e^{Q/2} sinh(K.a) for w = D.",
        constants: vec![("l".into(), int(-32))],
        named: named(&l, &[("w", &[("D", 1)]), ("D", &[("D", 1)]), ("Sigma", &[("Sigma", 1)]), ("K", &[("K", 1)])]),
    }
}

fn c2() -> CatalogEntry {
    let l = IntersectionLattice::from_ints(&["D", "Sigma", "K"], &[&[0, 1, 4], &[1, 0, 2], &[4, 2, 10]])
        .expect("C2 lattice");
    let k = class(&l, &[("K", 1)]);
    let sigma = class(&l, &[("Sigma", 1)]);
    let record = standard("C2", 15, sigma, vec![(k.clone(), int(16)), (k.neg(), int(16))]);
    CatalogEntry {
        record,
        notes: "C2 = C #_Sigma B. K is the glued basic class with K.Sigma = 2 and K.D = 4, \
                D the sum of the fibers. D^(w,Sigma)_C2(e^a) = 32 e^{Q/2} cosh(K.a) for w = D.",
        constants: vec![],
        named: named(&l, &[("w", &[("D", 1)]), ("D", &[("D", 1)]), ("Sigma", &[("Sigma", 1)]), ("K", &[("K", 1)])]),
    }
}

fn sigma_cp1() -> CatalogEntry {
    let l = IntersectionLattice::from_ints(&["Sigma", "CP1"], &[&[0, 1], &[1, 0]]).expect("SigmaCP1 lattice");
    let sigma = class(&l, &[("Sigma", 1)]);
    let monomials: BTreeMap<u32, Rational> = [
        (0, int(0)),
        (1, int(0)),
        (2, int(0)),
        (3, rat(-1, 2)),
        (4, int(0)),
        (5, int(-2)),
        (6, int(0)),
    ]
    .into_iter()
    .collect();
    let record = ManifoldRecord::new(
        "SigmaCP1",
        4,
        1,
        sigma,
        false,
        None,
        Chamber::Sigma,
        SimpleTypeStructure::empty(),
        monomials,
    )
    .expect("SigmaCP1 record");
    CatalogEntry {
        record,
        notes: "Sigma x CP1 with w = CP1, invariants in the chamber of Sigma. D(Sigma^3) = -1/2 is \
                mu(Sigma)^3 = 1/2 on the six-dimensional moduli space times the orientation factor \
                epsilon_S(w) = -1. D(Sigma^5) = -2 comes from one good wall. Even powers vanish by \
                degree. D(gamma1 gamma2) = epsilon_S(w) gamma1.gamma2.",
        constants: vec![("epsilon_S".into(), int(-1)), ("mu_sigma_cubed".into(), rat(1, 2))],
        named: named(&l, &[("w", &[("CP1", 1)]), ("Sigma", &[("Sigma", 1)])]),
    }
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    match name {
        "K3" => Ok(k3()),
        "B" => Ok(b()),
        "C" => Ok(c()),
        "C2" => Ok(c2()),
        "SigmaCP1" => Ok(sigma_cp1()),
        _ => Err(Error::UnknownEntry(format!("{name} (known: {})", NAMES.join(", ")))),
    }
}

pub fn all() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| get(n).expect("known entry")).collect()
}

/// The catalog record of `X #_Sigma B`, if stored.
pub fn capped(name: &str) -> Result<CatalogEntry> {
    match name {
        "B" => get("C"),
        "C" => get("C2"),
        _ => Err(Error::UnknownEntry(format!("no stored capping of {name}"))),
    }
}

/// A glued pair together with the `w` of each factor.
pub struct StandardGluing {
    pub config: GluingConfig,
    pub w1: LatticeClass,
    pub w2: LatticeClass,
}

/// Glues two entries along their fiber classes `D` (direct) or along the
/// cappings `D - 1/2 Sigma` of the stored `X #_Sigma B` (via B).
pub fn standard_gluing(a: &str, b: &str, mode: Mode) -> Result<StandardGluing> {
    let (x1, x2) = match mode {
        Mode::Direct => (get(a)?, get(b)?),
        Mode::ViaB => (capped(a)?, capped(b)?),
    };
    let piece = |e: &CatalogEntry| -> Result<LatticeClass> {
        let d = e.named("D").ok_or_else(|| Error::UnknownEntry(format!("{} names no D", e.record.name)))?;
        match mode {
            Mode::Direct => Ok(d.clone()),
            Mode::ViaB => d.checked_sub(&e.record.sigma.scale(&rat(1, 2))),
        }
    };
    let m = MatchedClass::new("D", piece(&x1)?, piece(&x2)?, Boundary::circle(1));
    let (w1, w2) = (x1.w().clone(), x2.w().clone());
    Ok(StandardGluing { config: GluingConfig::new(x1.record, x2.record, vec![m], mode)?, w1, w2 })
}
