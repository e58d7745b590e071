use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteQuotient, GroupSource};
use crate::numeric::{rational_str, rational_to_f64};

#[derive(Debug, Clone, Serialize)]
pub struct HistogramBin {
    pub fixed: u64,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointLevel {
    pub level: usize,
    pub group_order: usize,
    /// Distribution of `X_n` over `π_n(G)`.
    pub histogram: Vec<HistogramBin>,
    /// `#{a : X_n(a) ≥ 1}`.
    pub fixers: u64,
    #[serde(with = "rational_str")]
    pub proportion: BigRational,
    pub proportion_float: f64,
    /// `E[X_n]`; equal to 1 whenever `π_n(G)` is transitive on level `n`.
    #[serde(with = "rational_str")]
    pub mean_fixed: BigRational,
}

/// Exact fixer proportions `μ(X_n ≥ 1)` for `n = 1, 2, ...`. Each value
/// is an upper bound for `FPP(G)`; only the limit is the proportion itself.
#[derive(Debug, Clone, Serialize)]
pub struct FixedPointTable {
    pub requested_levels: usize,
    pub levels: Vec<FixedPointLevel>,
    /// Why the table stops early, if it does.
    pub truncated: Option<String>,
}

impl FixedPointTable {
    pub fn last(&self) -> &FixedPointLevel {
        self.levels.last().expect("tables have at least one level")
    }

    pub fn proportions(&self) -> Vec<BigRational> {
        self.levels.iter().map(|l| l.proportion.clone()).collect()
    }
}

fn level_row(q: &FiniteQuotient) -> Result<FixedPointLevel> {
    let n = q.level();
    let counts: Vec<u64> = q
        .elements()
        .par_iter()
        .map(|g| g.fixed_count(n))
        .collect::<Result<_>>()?;
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for &c in &counts {
        *hist.entry(c).or_default() += 1;
    }
    let order = q.order();
    let fixers: u64 = hist.iter().filter(|(&k, _)| k > 0).map(|(_, &c)| c).sum();
    let total: u64 = counts.iter().sum();
    let proportion = BigRational::new(BigInt::from(fixers), BigInt::from(order));
    Ok(FixedPointLevel {
        level: n,
        group_order: order,
        histogram: hist
            .into_iter()
            .map(|(fixed, count)| HistogramBin { fixed, count })
            .collect(),
        fixers,
        proportion_float: rational_to_f64(&proportion),
        proportion,
        mean_fixed: BigRational::new(BigInt::from(total), BigInt::from(order)),
    })
}

/// Enumerates `π_1(G), ..., π_{n_max}(G)` and tabulates `X_n`. If a level
/// does not fit in `budget`, the table stops at the last full level and
/// records why; an empty table is an error.
pub fn fixed_point_table(source: &dyn GroupSource, n_max: usize, budget: usize) -> Result<FixedPointTable> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("need at least one level".into()));
    }
    let mut levels = Vec::new();
    let mut truncated = None;
    for n in 1..=n_max {
        match FiniteQuotient::enumerate(source, n, budget) {
            Ok(q) => levels.push(level_row(&q)?),
            Err(e @ Error::BudgetExceeded { .. }) if n > 1 => {
                truncated = Some(format!("stopped before level {n}: {e}"));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(FixedPointTable {
        requested_levels: n_max,
        levels,
        truncated,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberMean {
    /// Id of `a` in `π_n(G)`.
    pub element: u32,
    pub fixed: u64,
    /// `E[X_{n+1} | π_n = a]`.
    #[serde(with = "rational_str")]
    pub mean_next: BigRational,
}

#[derive(Debug, Clone, Serialize)]
pub struct MartingaleReport {
    pub level: usize,
    pub fibers: Vec<FiberMean>,
    #[serde(with = "rational_str")]
    pub max_deviation: BigRational,
    pub pass: bool,
}

/// Compares `E[X_{n+1} | a]` with `X_n(a)` for every `a ∈ π_n(G)`.
pub fn martingale_fiber_check(source: &dyn GroupSource, n: usize, budget: usize) -> Result<MartingaleReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    let lower = FiniteQuotient::enumerate(source, n, budget)?;
    let upper = FiniteQuotient::enumerate(source, n + 1, budget)?;
    let proj = upper.projection_to(&lower)?;
    let mut sums = vec![0u64; lower.order()];
    let mut sizes = vec![0u64; lower.order()];
    for (id, g) in upper.elements().iter().enumerate() {
        let a = proj[id] as usize;
        sums[a] += g.fixed_count(n + 1)?;
        sizes[a] += 1;
    }
    let mut max_dev = BigRational::zero();
    let mut fibers = Vec::with_capacity(lower.order());
    for (a, g) in lower.elements().iter().enumerate() {
        let fixed = g.fixed_count(n)?;
        let mean = BigRational::new(BigInt::from(sums[a]), BigInt::from(sizes[a]));
        let dev = (&mean - BigRational::from_integer(BigInt::from(fixed))).abs();
        if dev > max_dev {
            max_dev = dev;
        }
        fibers.push(FiberMean {
            element: a as u32,
            fixed,
            mean_next: mean,
        });
    }
    Ok(MartingaleReport {
        level: n,
        fibers,
        pass: max_dev.is_zero(),
        max_deviation: max_dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::numeric::ratio;

    fn src(name: &str) -> Box<dyn GroupSource> {
        catalog::get(name).unwrap().source()
    }

    #[test]
    fn chebyshev_table() {
        let t = fixed_point_table(src("chebyshev_d2").as_ref(), 3, 1000).unwrap();
        assert_eq!(t.proportions(), [ratio(1, 2), ratio(3, 8), ratio(5, 16)]);
        assert!(t.levels.iter().all(|l| l.mean_fixed == ratio(1, 1)));
        let h: u64 = t.last().histogram.iter().map(|b| b.count).sum();
        assert_eq!(h as usize, t.last().group_order);
        let t3 = fixed_point_table(src("chebyshev_d3").as_ref(), 2, 1000).unwrap();
        assert_eq!(t3.last().proportion, ratio(5, 9));
    }

    #[test]
    fn trivial_group_table() {
        let t = fixed_point_table(src("trivial").as_ref(), 4, 10).unwrap();
        assert!(t.levels.iter().all(|l| l.proportion == ratio(1, 1)));
    }

    #[test]
    fn truncation_is_flagged() {
        let t = fixed_point_table(src("grigorchuk").as_ref(), 6, 5000).unwrap();
        assert_eq!(t.levels.len(), 4);
        assert!(t.truncated.is_some());
        assert!(fixed_point_table(src("grigorchuk").as_ref(), 2, 1).is_err());
    }

    #[test]
    fn martingale_examples() {
        assert!(martingale_fiber_check(src("chebyshev_d2").as_ref(), 2, 1000).unwrap().pass);
        assert!(martingale_fiber_check(src("basilica").as_ref(), 3, 10_000).unwrap().pass);
        let swap = crate::group::WreathPresentation::parse_json(
            r#"{"degree":2,"generators":[{"name":"s","perm":[2,1],"sections":[[],[]]}]}"#,
        )
        .unwrap();
        let r = martingale_fiber_check(&swap, 1, 10).unwrap();
        assert!(!r.pass);
        // the identity fiber has X_2 = 4 against X_1 = 2
        assert_eq!(r.max_deviation, ratio(2, 1));
    }
}
