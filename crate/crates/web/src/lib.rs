//! Browser bindings: expand catalog series, glue catalog pairs, recompute `l`.
//!
//! Every export returns plain text in the same format as the command line.

use wasm_bindgen::prelude::*;

use donaldson_core::catalog::{self, standard_gluing};
use donaldson_core::donaldson::{build_dseries, to_dws};
use donaldson_core::floer;
use donaldson_core::gluing::{glue, glued_record, glued_w, Mode};
use donaldson_core::manifest::parse_class;
use donaldson_core::{DSeries, LatticeClass};

fn err(e: donaldson_core::Error) -> String {
    format!("error[{}]: {e}", e.code())
}

fn directions(s: &DSeries, named: &[(String, LatticeClass)], along: &str) -> Result<Vec<(String, LatticeClass)>, String> {
    along
        .split(',')
        .map(|item| {
            let (var, expr) = item.split_once(':').ok_or_else(|| format!("direction `{item}` is not var:<class>"))?;
            Ok((var.trim().to_string(), parse_class(s.lattice(), named, expr).map_err(err)?))
        })
        .collect()
}

fn render(s: &DSeries, named: &[(String, LatticeClass)], along: &str, degree: u32) -> Result<String, String> {
    let table = s.expand(&directions(s, named, along)?, degree).map_err(err)?;
    Ok(format!("{s}\n\n{table}"))
}

/// Newline-separated catalog names.
#[wasm_bindgen]
pub fn catalog_names() -> String {
    catalog::NAMES.iter().filter(|n| **n != "SigmaCP1").copied().collect::<Vec<_>>().join("\n")
}

/// The series of a catalog entry followed by its expansion along `along`
/// (e.g. `t:D,s:Sigma`). With `two_sector` the transformed series is used.
#[wasm_bindgen]
pub fn expand_entry(name: &str, w: &str, two_sector: bool, along: &str, degree: u32) -> Result<String, String> {
    let e = catalog::get(name).map_err(err)?;
    let w = parse_class(&e.record.lattice, &e.named, w).map_err(err)?;
    let s = if two_sector { to_dws(&e.record, &w) } else { build_dseries(&e.record, &w) }.map_err(err)?;
    render(&s, &e.named, along, degree)
}

/// Glues two catalog entries along their fibers (`direct`) or along the
/// cappings of their stored `X #_Sigma B` (`via-b`), then expands the
/// two-sector series of the result along `along`.
#[wasm_bindgen]
pub fn glue_entries(a: &str, b: &str, mode: &str, along: &str, degree: u32) -> Result<String, String> {
    let mode = match mode {
        "direct" => Mode::Direct,
        "via-b" => Mode::ViaB,
        other => return Err(format!("unknown mode `{other}`")),
    };
    let g = standard_gluing(a, b, mode).map_err(err)?;
    let s = glue(&g.config, &g.w1, &g.w2).map_err(err)?;
    // the via-B lattice is the same hyperbolic plane, so w is D there as well
    let w = match mode {
        Mode::Direct => glued_w(&g.config, &g.w1, &g.w2).map_err(err)?,
        Mode::ViaB => parse_class(s.lattice(), &[], "D").map_err(err)?,
    };
    let dws = to_dws(&glued_record(&g.config, &s, &w).map_err(err)?, &w).map_err(err)?;
    Ok(format!("{s}\n\ntwo-sector, w = {w}:\n{}", render(&dws, &[], along, degree)?))
}

/// The vectors, their pairing and `l`.
#[wasm_bindgen]
pub fn verify_l() -> Result<String, String> {
    let r = floer::verify_l().map_err(err)?;
    let show = |x: &[donaldson_core::GaussianRational]| x.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    Ok(format!("u = ({})\nv = ({})\npairing = {}\nl = {}", show(&r.u), show(&r.v), r.pairing, r.l))
}
