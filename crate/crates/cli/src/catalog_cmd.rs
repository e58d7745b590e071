use anyhow::Context;
use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use arbor_core::catalog::{self, CatalogEntry};

use crate::output::Report;
use crate::Resolved;

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    /// Names and one-line descriptions.
    List(ListArgs),
    /// Full entry: presentation, polynomial, designations and expected facts.
    Show(ShowArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct ListArgs {}

#[derive(Args, Debug, Serialize)]
pub struct ShowArgs {
    name: String,
}

fn parsed(doc: Option<&str>) -> anyhow::Result<Value> {
    doc.map(serde_json::from_str).transpose().map(Option::unwrap_or_default).context("catalog JSON")
}

fn show(e: &CatalogEntry) -> anyhow::Result<Value> {
    Ok(json!({
        "name": e.name,
        "description": e.description,
        "degree": e.shape().degree(),
        "presentation": parsed(e.presentation_json())?,
        "polynomial": parsed(e.polynomial_json())?,
        "designation": e.designation(),
        "facts": e.facts,
    }))
}

pub fn run(cmd: CatalogCommand, cfg: &Resolved) -> anyhow::Result<Report> {
    match cmd {
        CatalogCommand::List(a) => {
            let entries: Vec<Value> = catalog::list()
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "description": e.description,
                        "degree": e.shape().degree(),
                        "has_polynomial": e.polynomial_json().is_some(),
                    })
                })
                .collect();
            Report::new("catalog list", &a, cfg, entries)
        }
        CatalogCommand::Show(a) => {
            let e = catalog::get(&a.name).context("catalog show")?;
            Report::new("catalog show", &a, cfg, show(&e)?)
        }
    }
}
