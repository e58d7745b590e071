use anyhow::bail;
use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use arbor_core::fpp::{
    aut_tree_fpp, dihedral_fpp_closed_form, fixed_point_table, martingale_fiber_check, monte_carlo_fpp,
    random_word_fpp_heuristic, SampleSource,
};
use arbor_core::group::FiniteQuotient;
use arbor_core::numeric::{format_rational, rational_to_f64};
use arbor_core::tree::TreeShape;

use crate::inputs::{GroupInput, LoadedGroup};
use crate::output::{CsvTable, Report};
use crate::Resolved;

#[derive(Subcommand, Debug)]
pub enum FppCommand {
    /// Exact fixer proportions μ(X_n ≥ 1) on enumerated quotients.
    Table(TableArgs),
    /// Exact check that X_n is a martingale between levels n and n+1.
    Martingale(MartingaleArgs),
    /// Exact fixer proportions for Haar measure on Aut(T).
    AutTree(AutTreeArgs),
    /// Closed form for the dihedral quotients.
    Dihedral(DihedralArgs),
    /// Monte-Carlo estimate with a 99% Wilson interval.
    Sample(SampleArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct TableArgs {
    #[command(flatten)]
    group: GroupInput,
    #[arg(long, default_value_t = 6)]
    levels: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct MartingaleArgs {
    #[command(flatten)]
    group: GroupInput,
    #[arg(long)]
    level: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct AutTreeArgs {
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long, default_value_t = 10)]
    levels: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct DihedralArgs {
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long)]
    level: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    /// Haar measure on Aut(T) of the given degree.
    Haar,
    /// Uniform over an enumerated quotient.
    Quotient,
    /// Random words in the generators (not Haar; needs --heuristic).
    Words,
}

#[derive(Args, Debug, Serialize)]
pub struct SampleArgs {
    /// Catalog entry name.
    #[arg(long, conflicts_with = "pres")]
    catalog: Option<String>,
    /// Wreath presentation JSON file.
    #[arg(long)]
    pres: Option<std::path::PathBuf>,
    /// Tree degree for the Haar sampler.
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long)]
    level: usize,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Defaults to `haar` without a group, else `quotient`.
    #[arg(long, value_enum)]
    sampler: Option<Sampler>,
    /// Acknowledge that `--sampler words` is biased.
    #[arg(long)]
    heuristic: bool,
    #[arg(long, default_value_t = 32)]
    word_length: usize,
}

fn table_csv(t: &arbor_core::fpp::FixedPointTable) -> CsvTable {
    CsvTable {
        header: vec!["level", "group_order", "fixers", "proportion_num", "proportion_den", "proportion_float"],
        rows: t
            .levels
            .iter()
            .map(|l| {
                vec![
                    l.level.to_string(),
                    l.group_order.to_string(),
                    l.fixers.to_string(),
                    l.proportion.numer().to_string(),
                    l.proportion.denom().to_string(),
                    l.proportion_float.to_string(),
                ]
            })
            .collect(),
    }
}

fn sample(a: &SampleArgs, cfg: &Resolved) -> anyhow::Result<arbor_core::fpp::FppEstimate> {
    let group = GroupInput {
        catalog: a.catalog.clone(),
        pres: a.pres.clone(),
    };
    let has_group = a.catalog.is_some() || a.pres.is_some();
    let virtual_aut = matches!(a.catalog.as_deref(), Some("full_aut_d2"));
    let sampler = a.sampler.unwrap_or(if !has_group || virtual_aut { Sampler::Haar } else { Sampler::Quotient });
    match sampler {
        Sampler::Haar => {
            if has_group && !virtual_aut {
                bail!("--sampler haar samples Aut(T); drop --catalog/--pres or choose --sampler quotient");
            }
            let degree = if virtual_aut { 2 } else { a.degree };
            Ok(monte_carlo_fpp(&SampleSource::FullAut(TreeShape::new(degree)?), a.level, a.trials, a.seed)?)
        }
        Sampler::Quotient => {
            if !has_group {
                bail!("--sampler quotient needs --catalog or --pres");
            }
            let src = group.source()?;
            let q = FiniteQuotient::enumerate(src.as_ref(), a.level, cfg.budget)?;
            Ok(monte_carlo_fpp(&SampleSource::Quotient(&q), a.level, a.trials, a.seed)?)
        }
        Sampler::Words => {
            if !has_group {
                bail!("--sampler words needs --catalog or --pres");
            }
            let pres = match group.load()? {
                LoadedGroup::Presentation(p) => p,
                LoadedGroup::Virtual(e) => bail!("--catalog {}: no generators to form words from", e.name),
            };
            if !a.heuristic {
                // refused exactly as the library refuses non-uniform sources
                return monte_carlo_fpp(&SampleSource::Presentation(&pres), a.level, a.trials, a.seed)
                    .map_err(|e| anyhow::anyhow!("{e}; pass --heuristic to sample random words anyway"));
            }
            Ok(random_word_fpp_heuristic(&pres, a.level, a.word_length, a.trials, a.seed)?)
        }
    }
}

pub fn run(cmd: FppCommand, cfg: &Resolved) -> anyhow::Result<Report> {
    match cmd {
        FppCommand::Table(a) => {
            let t = fixed_point_table(a.group.source()?.as_ref(), a.levels, cfg.budget)?;
            let csv = table_csv(&t);
            let last = t.last();
            let result = json!({
                "table": &t,
                "upper_bound": format_rational(&last.proportion),
                "upper_bound_level": last.level,
                "note": "each level is an upper bound for FPP(G); only the limit equals it",
            });
            Ok(Report::new("fpp table", &a, cfg, result)?.with_csv(csv))
        }
        FppCommand::Martingale(a) => {
            let r = martingale_fiber_check(a.group.source()?.as_ref(), a.level, cfg.budget)?;
            Ok(Report::new("fpp martingale", &a, cfg, &r)?.passed(r.pass))
        }
        FppCommand::AutTree(a) => {
            let s = aut_tree_fpp(a.degree, a.levels)?;
            let mut rows = Vec::new();
            for (n, p) in s.exact.iter().enumerate() {
                rows.push(vec![
                    n.to_string(),
                    p.numer().to_string(),
                    p.denom().to_string(),
                    rational_to_f64(p).to_string(),
                    "true".into(),
                ]);
            }
            for (i, p) in s.approx.iter().enumerate() {
                rows.push(vec![(s.exact.len() + i).to_string(), String::new(), String::new(), p.to_string(), "false".into()]);
            }
            let csv = CsvTable {
                header: vec!["level", "proportion_num", "proportion_den", "proportion_float", "exact"],
                rows,
            };
            Ok(Report::new("fpp aut-tree", &a, cfg, &s)?.with_csv(csv))
        }
        FppCommand::Dihedral(a) => {
            let p = dihedral_fpp_closed_form(a.degree, a.level)?;
            let limit = if a.degree % 2 == 1 { "1/2" } else { "1/4" };
            let result = json!({
                "degree": a.degree,
                "level": a.level,
                "proportion": format_rational(&p),
                "limit": limit,
            });
            Report::new("fpp dihedral", &a, cfg, result)
        }
        FppCommand::Sample(a) => {
            let e = sample(&a, cfg)?;
            Report::new("fpp sample", &a, cfg, &e)
        }
    }
}
