use anyhow::Context;
use clap::{Args, Subcommand};
use serde::Serialize;

use arbor_core::group::{
    check_fractal, check_mixing_certificate, check_super_strongly_fractal, commutator_search, kg_depth,
    validate_witness, verify_pseudomixing, CommutatorOutcome, FiniteQuotient,
};
use arbor_core::tree::Vertex;

use crate::inputs::GroupInput;
use crate::output::Report;
use crate::Resolved;

#[derive(Subcommand, Debug)]
pub enum GroupCommand {
    /// Enumerate the level-n quotient π_n(G).
    Enumerate(EnumerateArgs),
    /// Certify fractality up to a level bound.
    CheckFractal(ProjectionArgs),
    /// Certify super strong fractality up to a level bound.
    CheckSsf(ProjectionArgs),
    /// Finite mixing certificate with parameters (n, m, N).
    CheckMixing(MixingArgs),
    /// Search for a commutator-trick witness for a generator.
    CommutatorSearch(CommutatorArgs),
    /// Intersection of stabilizer projections along the ray 1^j, j ≤ L.
    Kg(KgArgs),
    /// Exact cone-pair counts against the pseudomixing product formula.
    Pseudomixing(PseudomixingArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[command(flatten)]
    group: GroupInput,
    #[arg(long)]
    level: usize,
    /// Include every element's portrait.
    #[arg(long)]
    portraits: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct ProjectionArgs {
    #[command(flatten)]
    group: GroupInput,
    /// Check vertices on levels 1..=levels.
    #[arg(long, default_value_t = 2)]
    levels: usize,
    /// Depth m of the projected quotients.
    #[arg(long, default_value_t = 1)]
    m: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct MixingArgs {
    #[command(flatten)]
    group: GroupInput,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Delay constant N.
    #[arg(long, default_value_t = 0)]
    delay: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct CommutatorArgs {
    #[command(flatten)]
    group: GroupInput,
    /// Generator name.
    #[arg(long)]
    generator: String,
    /// Deepest vertex level N searched.
    #[arg(long, default_value_t = 4)]
    max_level: usize,
    /// Longest conjugator word.
    #[arg(long, default_value_t = 2)]
    conj_len: usize,
    /// Maximum number of word problems solved.
    #[arg(long, default_value_t = 1_000_000)]
    word_budget: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct KgArgs {
    #[command(flatten)]
    group: GroupInput,
    /// Number of levels L along the ray.
    #[arg(long, default_value_t = 3)]
    levels: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct PseudomixingArgs {
    #[command(flatten)]
    group: GroupInput,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Vertex u on level n, e.g. `12`.
    #[arg(long)]
    u: String,
    /// Vertex w below u, e.g. `1`.
    #[arg(long)]
    w: String,
}

pub fn run(cmd: GroupCommand, cfg: &Resolved) -> anyhow::Result<Report> {
    match cmd {
        GroupCommand::Enumerate(a) => {
            let src = a.group.source()?;
            let q = FiniteQuotient::enumerate(src.as_ref(), a.level, cfg.budget)?;
            Report::new("group enumerate", &a, cfg, q.export(a.portraits))
        }
        GroupCommand::CheckFractal(a) => {
            let r = check_fractal(a.group.source()?.as_ref(), a.levels, a.m)?;
            Ok(Report::new("group check-fractal", &a, cfg, &r)?.passed(r.pass))
        }
        GroupCommand::CheckSsf(a) => {
            let r = check_super_strongly_fractal(a.group.source()?.as_ref(), a.levels, a.m)?;
            Ok(Report::new("group check-ssf", &a, cfg, &r)?.passed(r.pass))
        }
        GroupCommand::CheckMixing(a) => {
            let r = check_mixing_certificate(a.group.source()?.as_ref(), a.n, a.m, a.delay)?;
            Ok(Report::new("group check-mixing", &a, cfg, &r)?.passed(r.pass))
        }
        GroupCommand::CommutatorSearch(a) => {
            let pres = a.group.presentation()?;
            let s = pres.parse_word(&a.generator).context("--generator")?;
            let out = commutator_search(&pres, &s, a.max_level, a.conj_len, a.word_budget)?;
            if let CommutatorOutcome::Found(w) = &out {
                validate_witness(&pres, &s, w)?;
            }
            let found = matches!(out, CommutatorOutcome::Found(_));
            Ok(Report::new("group commutator-search", &a, cfg, &out)?.passed(found))
        }
        GroupCommand::Kg(a) => {
            let r = kg_depth(a.group.source()?.as_ref(), a.levels, a.m, cfg.budget)?;
            Report::new("group kg", &a, cfg, &r)
        }
        GroupCommand::Pseudomixing(a) => {
            let src = a.group.source()?;
            let u = Vertex::parse(src.shape(), &a.u).context("--u")?;
            let w = Vertex::parse(src.shape(), &a.w).context("--w")?;
            let r = verify_pseudomixing(src.as_ref(), a.n, a.m, &u, &w, cfg.budget)?;
            Ok(Report::new("group pseudomixing", &a, cfg, &r)?.passed(r.pass))
        }
    }
}
