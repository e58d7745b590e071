use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::json;

use arbor_core::dynamics::{
    analyze, detect_twisted_chebyshev, post_critical_orbit, validate_recursion_against_polynomial, PointDesignation,
};
use arbor_core::group::WreathPresentation;
use arbor_core::numeric::format_rational;
use arbor_core::Error;

use crate::inputs::{parse_designation, PolyInput};
use crate::output::Report;
use crate::Resolved;

#[derive(Subcommand, Debug)]
pub enum DynCommand {
    /// Critical data, post-critical set, exceptional sets and orbifold.
    Analyze(PolyArgs),
    /// Zero FPP or Chebyshev-like, with the predicted FPP.
    Classify(PolyArgs),
    /// Find an affine conjugacy to a twisted Chebyshev polynomial.
    Chebyshev(PolyArgs),
    /// Check a wreath recursion against a polynomial.
    Validate(ValidateArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct PolyArgs {
    #[command(flatten)]
    poly: PolyInput,
}

#[derive(Args, Debug, Serialize)]
pub struct ValidateArgs {
    #[command(flatten)]
    poly: PolyInput,
    /// Wreath presentation JSON; defaults to the catalog entry's.
    #[arg(long)]
    pres: Option<PathBuf>,
    /// Generator word for a point of P_f ∪ {∞}, as POINT=WORD; repeatable.
    #[arg(long = "designate", value_parser = parse_designation, allow_hyphen_values = true)]
    designations: Vec<PointDesignation>,
    /// Quotient depth for the monodromy comparison.
    #[arg(long, default_value_t = 3)]
    depth: usize,
}

/// The engine ran and a mathematical check failed: report it, exit 2.
fn check_failure(command: &'static str, args: &impl Serialize, cfg: &Resolved, e: &Error) -> anyhow::Result<Report> {
    let result = match e {
        Error::ValidationFailure { clause, detail } => json!({"failure": e.to_string(), "clause": clause.to_string(), "detail": detail}),
        _ => json!({"failure": e.to_string()}),
    };
    Ok(Report::new(command, args, cfg, result)?.passed(false))
}

fn is_check_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::NotPcf { .. } | Error::ValidationFailure { .. } | Error::PreconditionNotChebyshevLike
    )
}

pub fn run(cmd: DynCommand, cfg: &Resolved) -> anyhow::Result<Report> {
    match cmd {
        DynCommand::Analyze(a) => {
            let p = a.poly.load()?;
            match analyze(&p.f, &p.crit, a.poly.pcf_bound) {
                Ok(r) => Report::new("dyn analyze", &a, cfg, &r),
                Err(e @ Error::NotPcf { .. }) => {
                    let orbit = post_critical_orbit(&p.f, &p.crit, a.poly.pcf_bound)?;
                    let mut rep = check_failure("dyn analyze", &a, cfg, &e)?;
                    rep.result["orbit"] = serde_json::to_value(&orbit)?;
                    Ok(rep)
                }
                Err(e) => Err(e.into()),
            }
        }
        DynCommand::Classify(a) => {
            let p = a.poly.load()?;
            match analyze(&p.f, &p.crit, a.poly.pcf_bound) {
                Ok(r) => {
                    let result = json!({
                        "polynomial": r.polynomial,
                        "verdict": r.verdict,
                        "upsilon_count": r.upsilon.len(),
                        "orbifold_type": r.orbifold_type,
                        "chi": format_rational(&r.chi),
                        "scope": r.scope,
                    });
                    Report::new("dyn classify", &a, cfg, result)
                }
                Err(e) if is_check_failure(&e) => check_failure("dyn classify", &a, cfg, &e),
                Err(e) => Err(e.into()),
            }
        }
        DynCommand::Chebyshev(a) => {
            let p = a.poly.load()?;
            match detect_twisted_chebyshev(&p.f, &p.crit, a.poly.pcf_bound) {
                Ok(r) => {
                    let matched = r.matched.is_some();
                    Ok(Report::new("dyn chebyshev", &a, cfg, &r)?.passed(matched))
                }
                Err(e) if is_check_failure(&e) => check_failure("dyn chebyshev", &a, cfg, &e),
                Err(e) => Err(e.into()),
            }
        }
        DynCommand::Validate(a) => {
            let p = a.poly.load()?;
            let pres = match (&a.pres, &p.entry) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("--pres {}", path.display()))?;
                    WreathPresentation::parse_json(&text).with_context(|| format!("--pres {}", path.display()))?
                }
                (None, Some(entry)) => entry
                    .presentation()
                    .ok_or_else(|| anyhow!("--catalog {}: entry has no presentation", entry.name))?,
                (None, None) => bail!("--pres is required with --poly"),
            };
            let designations = match (a.designations.is_empty(), &p.entry) {
                (false, _) => a.designations.clone(),
                (true, Some(entry)) => entry.designation(),
                (true, None) => bail!("--designate POINT=WORD is required with --poly"),
            };
            let post = match post_critical_orbit(&p.f, &p.crit, a.poly.pcf_bound)?.into_result(a.poly.pcf_bound) {
                Ok(post) => post,
                Err(e) => return check_failure("dyn validate", &a, cfg, &e),
            };
            match validate_recursion_against_polynomial(&pres, &p.f, &p.crit, &post, &designations, a.depth) {
                Ok(r) => Report::new("dyn validate", &a, cfg, &r),
                Err(e) if is_check_failure(&e) => check_failure("dyn validate", &a, cfg, &e),
                Err(e) => Err(e.into()),
            }
        }
    }
}
