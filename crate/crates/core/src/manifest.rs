//! JSON manifests for manifold records and matched-class lists, and the
//! class-expression syntax used on the command line (`S-E1-E2`, `D-1/2*Sigma`).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogEntry;
use crate::donaldson::{validate_structure, Chamber, ManifoldRecord, SimpleTypeStructure};
use crate::error::{Error, Result};
use crate::gluing::{Boundary, MatchedClass};
use crate::lattice::{IntersectionLattice, LatticeClass};
use crate::number::{parse_rational, Rational};

/// A rational written as a JSON string (`"p"` or `"p/q"`) or integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    fn parse(&self, field: &str) -> Result<Rational> {
        match self {
            RationalText::Int(n) => Ok(crate::number::int(*n)),
            RationalText::Text(s) => parse_rational(s).map_err(|_| Error::Parse(format!("{field}: invalid rational `{s}`"))),
        }
    }

    fn from_rational(r: &Rational) -> Self {
        if r.is_integer() {
            RationalText::Text(r.numer().to_string())
        } else {
            RationalText::Text(format!("{}/{}", r.numer(), r.denom()))
        }
    }
}

pub type SparseClass = BTreeMap<String, RationalText>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasicClassDoc {
    pub k: SparseClass,
    pub a: RationalText,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChamberDoc {
    Standard,
    Sigma,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestDoc {
    pub name: String,
    pub b1: u32,
    pub b_plus: u32,
    pub simple_type: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_type_order: Option<u32>,
    #[serde(default = "standard_chamber")]
    pub chamber: ChamberDoc,
    pub generators: Vec<String>,
    pub gram: Vec<Vec<RationalText>>,
    pub sigma: SparseClass,
    #[serde(default)]
    pub basic_classes: Vec<BasicClassDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub named_classes: BTreeMap<String, SparseClass>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub monomials: BTreeMap<u32, RationalText>,
}

fn standard_chamber() -> ChamberDoc {
    ChamberDoc::Standard
}

/// A parsed record together with its named classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub record: ManifoldRecord,
    pub named: Vec<(String, LatticeClass)>,
}

impl Manifest {
    pub fn named(&self, name: &str) -> Option<&LatticeClass> {
        self.named.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    /// Resolves a class expression against the generators and named classes.
    pub fn class(&self, expr: &str) -> Result<LatticeClass> {
        parse_class(&self.record.lattice, &self.named, expr)
    }
}

impl From<CatalogEntry> for Manifest {
    fn from(e: CatalogEntry) -> Self {
        let mut named = e.named;
        named.sort_by(|a, b| a.0.cmp(&b.0));
        Manifest { record: e.record, named }
    }
}

fn sparse(lattice: &Arc<IntersectionLattice>, map: &SparseClass, field: &str) -> Result<LatticeClass> {
    let entries = map
        .iter()
        .map(|(n, v)| Ok((n.as_str(), v.parse(&format!("{field}.{n}"))?)))
        .collect::<Result<Vec<_>>>()?;
    LatticeClass::from_sparse(lattice, entries).map_err(|e| Error::Parse(format!("{field}: {e}")))
}

fn to_sparse(c: &LatticeClass) -> SparseClass {
    c.to_sparse().iter().map(|(n, v)| (n.clone(), RationalText::from_rational(v))).collect()
}

impl ManifestDoc {
    /// Builds the record without checking the structure invariants.
    pub fn to_manifest_unchecked(&self) -> Result<Manifest> {
        let gram = self
            .gram
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| v.parse(&format!("gram[{i}][{j}]")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let lattice = IntersectionLattice::new(self.generators.clone(), gram)?;
        let sigma = sparse(&lattice, &self.sigma, "sigma")?;
        let entries = self
            .basic_classes
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let field = format!("basic_classes[{i}]");
                Ok((sparse(&lattice, &b.k, &format!("{field}.k"))?, b.a.parse(&format!("{field}.a"))?))
            })
            .collect::<Result<Vec<_>>>()?;
        let structure = SimpleTypeStructure::new(entries)?;
        let monomials = self
            .monomials
            .iter()
            .map(|(d, v)| Ok((*d, v.parse(&format!("monomials.{d}"))?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let chamber = match self.chamber {
            ChamberDoc::Standard => Chamber::Standard,
            ChamberDoc::Sigma => Chamber::Sigma,
        };
        let record = ManifoldRecord::new(
            self.name.clone(),
            self.b1,
            self.b_plus,
            sigma,
            self.simple_type,
            self.finite_type_order,
            chamber,
            structure,
            monomials,
        )?;
        let named = self
            .named_classes
            .iter()
            .map(|(n, m)| Ok((n.clone(), sparse(&lattice, m, &format!("named_classes.{n}"))?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Manifest { record, named })
    }

    pub fn from_manifest(m: &Manifest) -> Self {
        let r = &m.record;
        ManifestDoc {
            name: r.name.clone(),
            b1: r.b1,
            b_plus: r.b_plus,
            simple_type: r.simple_type,
            finite_type_order: r.finite_type_order,
            chamber: match r.chamber {
                Chamber::Standard => ChamberDoc::Standard,
                Chamber::Sigma => ChamberDoc::Sigma,
            },
            generators: r.lattice.names().to_vec(),
            gram: r.lattice.gram().iter().map(|row| row.iter().map(RationalText::from_rational).collect()).collect(),
            sigma: to_sparse(&r.sigma),
            basic_classes: r
                .structure
                .entries()
                .iter()
                .map(|b| BasicClassDoc { k: to_sparse(&b.class), a: RationalText::from_rational(&b.coeff) })
                .collect(),
            named_classes: m.named.iter().map(|(n, c)| (n.clone(), to_sparse(c))).collect(),
            monomials: r.monomials.iter().map(|(d, v)| (*d, RationalText::from_rational(v))).collect(),
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
}

/// Parses a manifest without rejecting structure violations.
pub fn parse_manifest_unchecked(text: &str) -> Result<Manifest> {
    let doc: ManifestDoc = serde_json::from_str(text).map_err(json_error)?;
    doc.to_manifest_unchecked()
}

/// Parses and validates a manifest; structure violations are errors.
pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let m = parse_manifest_unchecked(text)?;
    let v = validate_structure(&m.record);
    if !v.is_empty() {
        return Err(Error::InvalidRecord(v.iter().map(ToString::to_string).collect()));
    }
    Ok(m)
}

pub fn manifest_to_json(m: &Manifest) -> String {
    let mut s = serde_json::to_string_pretty(&ManifestDoc::from_manifest(m)).expect("manifest serializes");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchedDoc {
    pub name: String,
    pub d1: SparseClass,
    pub d2: SparseClass,
    pub boundary: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchManifest {
    pub matched: Vec<MatchedDoc>,
}

/// `circle:<k>`, `curve`, `curve:<label>` or `curve:<label>:<multiple>`.
pub fn parse_boundary(s: &str) -> Result<Boundary> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    match parts.as_slice() {
        ["circle", k] => Ok(Boundary::Circle(parse_rational(k)?)),
        ["curve"] => Ok(Boundary::Curve { label: "gamma".into(), multiple: crate::number::int(1) }),
        ["curve", label] => Ok(Boundary::Curve { label: label.to_string(), multiple: crate::number::int(1) }),
        ["curve", label, m] => Ok(Boundary::Curve { label: label.to_string(), multiple: parse_rational(m)? }),
        _ => Err(Error::Parse(format!("invalid boundary `{s}` (expected circle:<k> or curve[:<label>[:<m>]])"))),
    }
}

pub fn parse_match(text: &str, x1: &ManifoldRecord, x2: &ManifoldRecord) -> Result<Vec<MatchedClass>> {
    let doc: MatchManifest = serde_json::from_str(text).map_err(json_error)?;
    doc.matched
        .iter()
        .enumerate()
        .map(|(i, m)| {
            Ok(MatchedClass::new(
                m.name.clone(),
                sparse(&x1.lattice, &m.d1, &format!("matched[{i}].d1"))?,
                sparse(&x2.lattice, &m.d2, &format!("matched[{i}].d2"))?,
                parse_boundary(&m.boundary)?,
            ))
        })
        .collect()
}

/// Parses `c1*N1 + c2*N2 - ...`; a name may be a generator or a named class,
/// and a coefficient may be omitted.
pub fn parse_class(lattice: &Arc<IntersectionLattice>, named: &[(String, LatticeClass)], expr: &str) -> Result<LatticeClass> {
    let src: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |why: &str| Error::Parse(format!("class expression `{expr}`: {why}"));
    if src.is_empty() {
        return Err(bad("empty"));
    }
    if src == "0" {
        return Ok(LatticeClass::zero(lattice));
    }
    let mut acc = LatticeClass::zero(lattice);
    let mut rest = src.as_str();
    while !rest.is_empty() {
        let (negative, body) = match rest.as_bytes()[0] {
            b'+' => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ if rest.len() == src.len() => (false, rest),
            _ => return Err(bad("expected + or -")),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let (term, tail) = body.split_at(end);
        rest = tail;
        let (coef, name) = match term.split_once('*') {
            Some((c, n)) => (parse_rational(c).map_err(|_| bad(&format!("bad coefficient `{c}`")))?, n),
            None => (crate::number::int(1), term),
        };
        if name.is_empty() {
            return Err(bad("missing class name"));
        }
        let unit = match lattice.index_of(name) {
            Some(_) => LatticeClass::generator(lattice, name)?,
            None => named
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, c)| c.clone())
                .ok_or_else(|| bad(&format!("unknown name `{name}` in {}", lattice.label())))?,
        };
        let coef = if negative { -coef } else { coef };
        acc = acc.checked_add(&unit.scale(&coef))?;
    }
    Ok(acc)
}
