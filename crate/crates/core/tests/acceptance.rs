//! Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if
//! any criterion fails. Expected values are recomputed here from
//! independent closed forms or brute force, not read back from the library.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use arbor_core::catalog;
use arbor_core::dynamics::{analyze, critical_data, DynOrbifoldReport, Verdict, DEFAULT_PCF_BOUND};
use arbor_core::fpp::{aut_tree_fpp, fixed_point_table, martingale_fiber_check, monte_carlo_fpp, SampleSource};
use arbor_core::group::{
    check_mixing_certificate, commutator_search, kg_depth, subtree_transitivity, validate_witness,
    verify_pseudomixing, CommutatorOutcome, FiniteQuotient, GroupSource,
};
use arbor_core::numeric::{format_rational, rational_to_f64};
use arbor_core::tree::{Portrait, TreeShape, Vertex};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

type Outcome = Result<String, String>;

const BUDGET: usize = 2_000_000;

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn q(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn source(name: &str) -> Box<dyn GroupSource> {
    catalog::get(name).unwrap().source()
}

fn report(name: &str) -> DynOrbifoldReport {
    let (f, doc) = catalog::get(name).unwrap().polynomial().unwrap();
    let claimed = doc.claimed_critical_points(f.field()).unwrap();
    let crit = critical_data(&f, claimed.as_deref()).unwrap();
    analyze(&f, &crit, DEFAULT_PCF_BOUND).unwrap()
}

/// Checks exact fixer proportions of `name` at levels `1..=levels`
/// against `closed(n)` and the last one against `limit`.
fn chebyshev_levels(name: &str, levels: usize, closed: fn(u32) -> BigRational, limit: f64) -> Outcome {
    let t = fixed_point_table(source(name).as_ref(), levels, BUDGET).map_err(|e| e.to_string())?;
    ensure(t.levels.len() == levels, format!("only {} levels enumerated", t.levels.len()))?;
    for l in &t.levels {
        let expect = closed(l.level as u32);
        ensure(
            l.proportion == expect,
            format!("level {}: {} != {}", l.level, format_rational(&l.proportion), format_rational(&expect)),
        )?;
    }
    let last = &t.last().proportion;
    let gap = (rational_to_f64(last) - limit).abs();
    ensure(gap < 0.001, format!("level {levels} is {gap} from {limit}"))?;
    Ok(format!(
        "levels 1..{levels} exact, last = {} ({:.6}), |last - {limit}| = {gap:.2e}",
        format_rational(last),
        rational_to_f64(last)
    ))
}

fn criterion_1() -> Outcome {
    let out = chebyshev_levels("chebyshev_d2", 10, |n| q(1 + (BigInt::from(2)).pow(n - 1), BigInt::from(2).pow(n + 1)), 0.25)?;
    let t = fixed_point_table(source("chebyshev_d2").as_ref(), 3, BUDGET).map_err(|e| e.to_string())?;
    ensure(t.proportions() == [q(1, 2), q(3, 8), q(5, 16)], "first three levels")?;
    let t10 = fixed_point_table(source("chebyshev_d2").as_ref(), 10, BUDGET).map_err(|e| e.to_string())?;
    ensure(t10.last().proportion == q(513, 2048), "level 10 is not 513/2048")?;
    Ok(out)
}

fn criterion_2() -> Outcome {
    let out = chebyshev_levels("chebyshev_d3", 7, |n| q(1 + BigInt::from(3).pow(n), 2 * BigInt::from(3).pow(n)), 0.5)?;
    let t = fixed_point_table(source("chebyshev_d3").as_ref(), 2, BUDGET).map_err(|e| e.to_string())?;
    ensure(t.last().proportion == q(5, 9), "level 2 is not 5/9")?;
    Ok(out)
}

fn criterion_3() -> Outcome {
    let seq = aut_tree_fpp(2, 200).map_err(|e| e.to_string())?;
    // q_{n+1} = (1 + q_n^2) / 2, p_n = 1 - q_n
    let mut qn = BigRational::zero();
    for n in 0..=3 {
        ensure(seq.exact[n] == BigRational::one() - &qn, format!("p_{n} disagrees with the binary recursion"))?;
        qn = (BigRational::one() + &qn * &qn) / BigInt::from(2);
    }
    ensure(seq.exact[1..4] == [q(1, 2), q(3, 8), q(39, 128)], "p_1..p_3")?;

    let shape = TreeShape::new(2).unwrap();
    let perms = [vec![0u8, 1], vec![1u8, 0]];
    let mut fixers = 0;
    for mask in 0u32..128 {
        let labels: Vec<Vec<u8>> = (0..7).map(|i| perms[((mask >> i) & 1) as usize].clone()).collect();
        let p = Portrait::from_labels(shape, 3, &labels).unwrap();
        if p.fixed_count(3).unwrap() > 0 {
            fixers += 1;
        }
    }
    ensure(fixers == 39, format!("exhaustive enumeration found {fixers}/128"))?;

    let mc = monte_carlo_fpp(&SampleSource::FullAut(shape), 3, 100_000, 20_240_601).map_err(|e| e.to_string())?;
    ensure(
        mc.contains(39.0 / 128.0),
        format!("Monte Carlo CI [{}, {}] misses 39/128", mc.ci_low, mc.ci_high),
    )?;

    ensure(seq.len() == 201, "sequence length")?;
    ensure(seq.exact.windows(2).all(|w| w[1] < w[0]), "exact prefix not strictly decreasing")?;
    let floats: Vec<f64> = (0..=200).map(|n| seq.float(n).unwrap()).collect();
    ensure(floats.windows(2).all(|w| w[1] < w[0]), "p_n not strictly decreasing through 200")?;
    Ok(format!(
        "p_1..p_3 = 1/2, 3/8, 39/128; brute force 39/128; MC {:.4} in [{:.4}, {:.4}]; p_200 = {:.5} ({} exact terms)",
        mc.estimate,
        mc.ci_low,
        mc.ci_high,
        floats[200],
        seq.exact.len()
    ))
}

fn criterion_4() -> Outcome {
    let r = report("basilica");
    ensure(matches!(r.verdict, Verdict::ZeroFpp { .. }), format!("verdict {}", r.verdict.name()))?;
    ensure(r.upsilon.is_empty(), "Υ ∩ K is not empty")?;
    let src = source("basilica");
    let t = fixed_point_table(src.as_ref(), 8, BUDGET).map_err(|e| e.to_string())?;
    ensure(t.levels.len() >= 4, format!("only {} levels enumerable", t.levels.len()))?;
    let props = t.proportions();
    ensure(props.windows(2).all(|w| w[1] < w[0]), "fixer proportions not strictly decreasing")?;
    // the fiber check at level n needs level n + 1
    for n in 1..t.levels.len() {
        let m = martingale_fiber_check(src.as_ref(), n, BUDGET).map_err(|e| e.to_string())?;
        ensure(m.pass, format!("martingale fails at level {n}"))?;
    }
    let mix = check_mixing_certificate(src.as_ref(), 1, 1, 4).map_err(|e| e.to_string())?;
    ensure(mix.pass, format!("mixing (1,1,4): {:?}", mix.first_failure))?;
    let shown: Vec<String> = props.iter().map(format_rational).collect();
    Ok(format!(
        "ZeroFpp, Υ empty; proportions {} over {} levels; martingale levels 1..{}; mixing (1,1,4) certified",
        shown.join(", "),
        t.levels.len(),
        t.levels.len() - 1
    ))
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    for (name, expect_two) in [
        ("chebyshev_d2", true),
        ("chebyshev_d3", true),
        ("power_map_d2", false),
        ("basilica", false),
    ] {
        let r = report(name);
        if expect_two {
            ensure(r.upsilon.len() == 2, format!("{name}: #Υ = {}", r.upsilon.len()))?;
            ensure(r.orbifold_type == "(2,2,∞)", format!("{name}: type {}", r.orbifold_type))?;
            ensure(r.chi.is_zero(), format!("{name}: χ = {}", format_rational(&r.chi)))?;
        } else {
            ensure(r.upsilon.len() <= 1, format!("{name}: #Υ = {}", r.upsilon.len()))?;
        }
        notes.push(format!("{name} #Υ={}", r.upsilon.len()));
    }
    for entry in catalog::list() {
        if entry.polynomial_json().is_none() {
            continue;
        }
        let r = report(entry.name);
        ensure(r.delta.len() <= 2, format!("{}: #Δ = {}", entry.name, r.delta.len()))?;
        ensure(r.sigma.iter().all(|z| r.upsilon.contains(z)), format!("{}: Σ ⊄ Υ", entry.name))?;
        ensure(r.upsilon.iter().all(|z| r.delta.contains(z)), format!("{}: Υ ⊄ Δ", entry.name))?;
    }
    Ok(notes.join(", ") + "; Σ ⊆ Υ ⊆ Δ, #Δ ≤ 2 on all fixtures")
}

fn criterion_6() -> Outcome {
    let g = source("grigorchuk");
    let shape = g.shape();
    let order = |n| FiniteQuotient::enumerate(g.as_ref(), n, BUDGET).unwrap().order();
    let expected = q(order(3), order(1) * order(1) * 2);
    let mut cells = 0;
    for u in shape.level(1) {
        for w in shape.level(1) {
            let r = verify_pseudomixing(g.as_ref(), 1, 1, &u, &w, BUDGET).map_err(|e| e.to_string())?;
            ensure(r.expected_count == expected, format!("product formula gives {}", format_rational(&r.expected_count)))?;
            ensure(
                r.max_deviation.is_zero() && r.exact_cells == r.cells,
                format!("u={u} w={w}: deviation {}", format_rational(&r.max_deviation)),
            )?;
            cells += r.cells;
        }
    }
    let c = source("chebyshev_d2");
    let v = |s: &str| Vertex::parse(c.shape(), s).unwrap();
    let r = verify_pseudomixing(c.as_ref(), 2, 2, &v("11"), &v("1"), BUDGET).map_err(|e| e.to_string())?;
    ensure(!r.max_deviation.is_zero(), "Chebyshev-d2 deviation is zero")?;
    Ok(format!(
        "Grigorchuk: {cells} cells all equal {}; Chebyshev-d2 max deviation {}",
        format_rational(&expected),
        format_rational(&r.max_deviation)
    ))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    let mut transitive = 0;
    for entry in catalog::list() {
        let src = entry.source();
        for n in 1..=3 {
            let m = martingale_fiber_check(src.as_ref(), n, BUDGET).map_err(|e| format!("{} n={n}: {e}", entry.name))?;
            let t = subtree_transitivity(src.as_ref(), n, 1).map_err(|e| e.to_string())?;
            ensure(
                m.pass == t,
                format!("{} n={n}: martingale {} vs transitivity {t}", entry.name, m.pass),
            )?;
            checked += 1;
            transitive += t as usize;
        }
    }
    Ok(format!("{checked} (entry, n) pairs agree, {transitive} transitive"))
}

fn criterion_8() -> Outcome {
    let mut found = Vec::new();
    let mut missing = Vec::new();
    for name in ["basilica", "power_map_d2"] {
        let pres = catalog::get(name).unwrap().presentation().unwrap();
        for gen in pres.names().to_vec() {
            let s = pres.parse_word(&gen).unwrap();
            match commutator_search(&pres, &s, 4, 2, 1_000_000) {
                Ok(CommutatorOutcome::Found(w)) => {
                    validate_witness(&pres, &s, &w).map_err(|e| format!("{name}/{gen}: {e}"))?;
                    ensure(w.w.level() <= 4, "witness deeper than N = 4")?;
                    found.push(format!("{name}/{gen} (|u|={}, |w|={})", w.u.level(), w.w.level()));
                }
                Ok(CommutatorOutcome::NotFound { word_problems }) => {
                    missing.push(format!("{name}/{gen}: none after {word_problems} word problems"))
                }
                Err(e) => missing.push(format!("{name}/{gen}: {e}")),
            }
        }
    }
    if missing.is_empty() {
        Ok(format!("validated: {}", found.join(", ")))
    } else {
        Err(format!("validated: {}; missing: {}", found.join(", "), missing.join("; ")))
    }
}

type Suite = fn(u32) -> Result<(), String>;

fn criterion_9() -> Outcome {
    const CASES: u32 = 10_000;
    let suites: [(&str, Suite); 6] = [
        ("group laws", common::group_laws),
        ("section cocycle", common::section_cocycle),
        ("fixer subtree", common::fixer_subtree),
        ("E[X_n] = 1", common::mean_fixed_points),
        ("Riemann-Hurwitz", common::riemann_hurwitz),
        ("chain rule", common::chain_rule),
    ];
    for (name, suite) in suites {
        suite(CASES).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("6 suites x {CASES} cases, zero failures"))
}

fn criterion_10() -> Outcome {
    let pi2 = |name: &str| BigUint::from(FiniteQuotient::enumerate(source(name).as_ref(), 2, BUDGET).unwrap().order());
    let c = kg_depth(source("chebyshev_d2").as_ref(), 3, 2, BUDGET).map_err(|e| e.to_string())?;
    ensure(c.full_order == pi2("chebyshev_d2"), "Chebyshev-d2 |π_2| mismatch")?;
    ensure(
        c.index == BigUint::from(2u32) && BigUint::from(c.order) * 2u32 == c.full_order,
        format!("Chebyshev-d2 index {}", c.index),
    )?;
    let g = kg_depth(source("grigorchuk").as_ref(), 3, 2, BUDGET).map_err(|e| e.to_string())?;
    ensure(g.full_order == pi2("grigorchuk"), "Grigorchuk |π_2| mismatch")?;
    ensure(BigUint::from(g.order) == g.full_order, format!("Grigorchuk index {}", g.index))?;
    Ok(format!(
        "Chebyshev-d2: order {} of {} (index 2); Grigorchuk: full quotient of order {}",
        c.order, c.full_order, g.order
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "Chebyshev d=2 fixer proportions", limit: Some(Duration::from_secs(5)), run: criterion_1 },
        Criterion { id: 2, title: "Chebyshev d=3 fixer proportions", limit: Some(Duration::from_secs(10)), run: criterion_2 },
        Criterion { id: 3, title: "Aut(T) d=2 recursion, enumeration, sampling", limit: Some(Duration::from_secs(10)), run: criterion_3 },
        Criterion { id: 4, title: "Basilica zero FPP", limit: Some(Duration::from_secs(60)), run: criterion_4 },
        Criterion { id: 5, title: "exceptional-set dichotomy", limit: Some(Duration::from_secs(1)), run: criterion_5 },
        Criterion { id: 6, title: "pseudomixing counting identity", limit: Some(Duration::from_secs(30)), run: criterion_6 },
        Criterion { id: 7, title: "martingale vs subtree transitivity", limit: None, run: criterion_7 },
        Criterion { id: 8, title: "commutator-trick witnesses", limit: None, run: criterion_8 },
        Criterion { id: 9, title: "property suites", limit: None, run: criterion_9 },
        Criterion { id: 10, title: "projection-invariance diagnostic", limit: None, run: criterion_10 },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())))));
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} [{:>2}] {} ({elapsed:.2?}): {detail}", c.id, c.title);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
