use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use donaldson_core::catalog;
use donaldson_core::donaldson::{build_dseries, d_zero, from_dws, to_dws, validate_structure};
use donaldson_core::floer::{pair_v4, relvec_from_series, verify_l, RelativeVector, Space};
use donaldson_core::gluing::{glue, glued_record, glued_w, GluingConfig, Mode};
use donaldson_core::manifest::{manifest_to_json, parse_class, parse_manifest, parse_manifest_unchecked, parse_match, Manifest};
use donaldson_core::number::parse_rational;
use donaldson_core::{DSeries, Error, LatticeClass};

/// Exact Donaldson series, transforms and genus-2 fiber-sum gluing.
///
/// A manifest argument is a JSON file or `catalog:<name>` for a built-in entry.
#[derive(Parser)]
#[command(name = "donaldson", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GlueMode {
    Direct,
    ViaB,
}

#[derive(Subcommand)]
enum Command {
    /// Print structure violations; exit 1 if there are any.
    Validate { manifest: String },
    /// Print the canonical Donaldson series for a choice of w.
    Series {
        manifest: String,
        #[arg(long)]
        w: String,
    },
    /// Two-sector transform along Sigma, or its inverse with --invert.
    Transform {
        manifest: String,
        #[arg(long)]
        w: String,
        /// Recover the basic classes from the two-sector series.
        #[arg(long)]
        invert: bool,
    },
    /// Glue two manifolds along their Sigma and print the glued series.
    Glue {
        #[arg(long, value_enum)]
        mode: GlueMode,
        m1: String,
        m2: String,
        #[arg(long = "match")]
        matching: String,
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
        /// w on the glued manifold; derived from w1, w2 in direct mode.
        #[arg(long)]
        w: Option<String>,
        /// Print the two-sector series of the glued manifold instead.
        #[arg(long)]
        dws: bool,
        /// Expand along `t:<class>,s:<class>` in the glued lattice.
        #[arg(long)]
        along: Option<String>,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Taylor-expand a series along named directions.
    Expand {
        manifest: String,
        #[arg(long)]
        w: String,
        /// Expand the two-sector series instead of the plain one.
        #[arg(long)]
        dws: bool,
        /// Comma-separated `var:<class>` list, e.g. `t:D,s:Sigma`.
        #[arg(long)]
        along: String,
        #[arg(long)]
        degree: u32,
    },
    /// Pair two vectors of the four-dimensional relative space.
    PairV4 {
        /// Four comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        /// Read u, v as D(z A^i), D(z A^(i+1)) from the two-sector series of this manifest.
        #[arg(long, conflicts_with_all = ["u", "v"], requires_all = ["w", "along"])]
        from: Option<String>,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        along: Option<String>,
    },
    /// Recompute the constant l from the blown-up K3 entry.
    VerifyL {
        /// Also print the two vectors and their pairing.
        #[arg(long)]
        verbose: bool,
    },
    /// Run the worked-value checks and print PASS/FAIL for each.
    VerifyPaper,
    /// Print a catalog entry as a manifest, or list the entries.
    Catalog { name: Option<String> },
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    tag: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 3,
            _ => 1,
        };
        Failure { code, tag: e.code().to_string(), message: e.to_string() }
    }
}

fn io_failure(path: &str, e: std::io::Error) -> Failure {
    Failure { code: 3, tag: "io".into(), message: format!("{path}: {e}") }
}

type Outcome = Result<(String, u8), Failure>;

fn load(src: &str, checked: bool) -> Result<Manifest, Failure> {
    if let Some(name) = src.strip_prefix("catalog:") {
        return Ok(catalog::get(name)?.into());
    }
    let text = fs::read_to_string(Path::new(src)).map_err(|e| io_failure(src, e))?;
    let parsed = if checked { parse_manifest(&text) } else { parse_manifest_unchecked(&text) };
    parsed.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{src}: {}", f.message);
        f
    })
}

fn directions(m: &Manifest, along: &str) -> Result<Vec<(String, LatticeClass)>, Failure> {
    directions_in(&m.record.lattice, &m.named, along)
}

fn directions_in(
    lattice: &std::sync::Arc<donaldson_core::IntersectionLattice>,
    named: &[(String, LatticeClass)],
    along: &str,
) -> Result<Vec<(String, LatticeClass)>, Failure> {
    along
        .split(',')
        .map(|item| {
            let (var, expr) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("direction `{item}` is not var:<class>")))?;
            Ok((var.trim().to_string(), parse_class(lattice, named, expr)?))
        })
        .collect()
}

fn rationals(src: &str) -> Result<Vec<donaldson_core::Rational>, Failure> {
    Ok(src.split(',').map(|s| parse_rational(s.trim())).collect::<Result<Vec<_>, _>>()?)
}

fn lines<T: std::fmt::Display>(x: T) -> String {
    let s = x.to_string();
    if s.ends_with('\n') {
        s
    } else {
        s + "\n"
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Validate { manifest } => {
            let m = load(&manifest, false)?;
            let v = validate_structure(&m.record);
            if v.is_empty() {
                Ok((format!("{}: ok\n", m.record.name), 0))
            } else {
                Ok((v.iter().map(|x| format!("{x}\n")).collect(), 1))
            }
        }
        Command::Series { manifest, w } => {
            let m = load(&manifest, true)?;
            Ok((lines(build_dseries(&m.record, &m.class(&w)?)?), 0))
        }
        Command::Transform { manifest, w, invert } => {
            let m = load(&manifest, true)?;
            let w = m.class(&w)?;
            let s = to_dws(&m.record, &w)?;
            if !invert {
                return Ok((lines(s), 0));
            }
            let d0 = d_zero(&m.record, &w)?;
            let back = from_dws(&s, &m.record.sigma, d0, &w)?;
            let out = back.entries().iter().map(|b| format!("{}: {}\n", b.class, b.coeff)).collect();
            Ok((out, 0))
        }
        Command::Glue { mode, m1, m2, matching, w1, w2, w, dws, along, degree } => {
            let (a, b) = (load(&m1, true)?, load(&m2, true)?);
            let text = fs::read_to_string(&matching).map_err(|e| io_failure(&matching, e))?;
            let matched = parse_match(&text, &a.record, &b.record)?;
            let mode = match mode {
                GlueMode::Direct => Mode::Direct,
                GlueMode::ViaB => Mode::ViaB,
            };
            let (w1, w2) = (a.class(&w1)?, b.class(&w2)?);
            let cfg = GluingConfig::new(a.record, b.record, matched, mode)?;
            let s = glue(&cfg, &w1, &w2)?;
            let named: Vec<(String, LatticeClass)> = Vec::new();
            let shown = if dws {
                let w = match w {
                    Some(e) => parse_class(s.lattice(), &named, &e)?,
                    None => glued_w(&cfg, &w1, &w2)?,
                };
                to_dws(&glued_record(&cfg, &s, &w)?, &w)?
            } else {
                s
            };
            match along {
                Some(dirs) => {
                    let dirs = directions_in(shown.lattice(), &named, &dirs)?;
                    Ok((lines(shown.expand(&dirs, degree)?), 0))
                }
                None => Ok((lines(shown), 0)),
            }
        }
        Command::Expand { manifest, w, dws, along, degree } => {
            let m = load(&manifest, true)?;
            let w = m.class(&w)?;
            let s: DSeries = if dws { to_dws(&m.record, &w)? } else { build_dseries(&m.record, &w)? };
            Ok((lines(s.expand(&directions(&m, &along)?, degree)?), 0))
        }
        Command::PairV4 { u, v, from, w, along } => {
            let (u, v) = match from {
                Some(src) => {
                    let m = load(&src, true)?;
                    let w = m.class(w.as_deref().unwrap_or_default())?;
                    let a = m.class(along.as_deref().unwrap_or_default())?;
                    let s = to_dws(&m.record, &w)?;
                    (relvec_from_series(&s, &a, 0)?, relvec_from_series(&s, &a, 1)?)
                }
                None => {
                    let (Some(u), Some(v)) = (u, v) else {
                        return Err(Failure {
                            code: 2,
                            tag: "usage".into(),
                            message: "pair-v4 needs --u and --v, or --from".into(),
                        });
                    };
                    (
                        RelativeVector::constant(Space::V4, &rationals(&u)?)?,
                        RelativeVector::constant(Space::V4, &rationals(&v)?)?,
                    )
                }
            };
            Ok((lines(pair_v4(&u, &v)?), 0))
        }
        Command::VerifyL { verbose } => {
            let r = verify_l()?;
            let mut out = String::new();
            if verbose {
                let show = |x: &[donaldson_core::GaussianRational]| x.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                out.push_str(&format!("u = ({})\nv = ({})\npairing = {}\n", show(&r.u), show(&r.v), r.pairing));
            }
            out.push_str(&format!("{}\n", r.l));
            Ok((out, 0))
        }
        Command::VerifyPaper => {
            let checks = donaldson_core::regression::run_all();
            let out: String = checks.iter().map(|c| format!("{c}\n")).collect();
            let passed = checks.iter().filter(|c| c.passed).count();
            let summary = format!("{passed} of {} checks passed\n", checks.len());
            let code = if passed == checks.len() { 0 } else { 1 };
            Ok((out + &summary, code))
        }
        Command::Catalog { name } => match name {
            Some(n) => Ok((manifest_to_json(&catalog::get(&n)?.into()), 0)),
            None => Ok((catalog::NAMES.iter().map(|n| format!("{n}\n")).collect(), 0)),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error[{}]: {}", f.tag, f.message);
            ExitCode::from(f.code)
        }
    }
}
