use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteQuotient, GroupWord, Letter, WreathPresentation};
use crate::tree::{uniform_aut_sample, TreeShape};

/// Two-sided 99% standard normal quantile.
pub const Z_99: f64 = 2.5758293035489;

pub const HEURISTIC_WARNING: &str =
    "random words are not Haar-uniform; this estimate may be biased and is not an FPP bound";

/// Trials per worker substream. Fixed so results do not depend on the
/// thread count.
const CHUNK: u64 = 4096;

pub enum SampleSource<'a> {
    /// Haar measure on `Aut(T)` via independent uniform labels.
    FullAut(TreeShape),
    /// Uniform draw over the element ids of an enumerated quotient.
    Quotient(&'a FiniteQuotient),
    /// A presentation whose quotient has not been enumerated; refused.
    Presentation(&'a WreathPresentation),
}

impl SampleSource<'_> {
    fn describe(&self) -> String {
        match self {
            SampleSource::FullAut(s) => format!("Aut(T), d = {}", s.degree()),
            SampleSource::Quotient(q) => format!("enumerated quotient of order {} at level {}", q.order(), q.level()),
            SampleSource::Presentation(_) => "random words in a presentation".into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FppEstimate {
    pub source: String,
    pub level: usize,
    pub trials: u64,
    pub hits: u64,
    pub seed: u64,
    pub estimate: f64,
    pub confidence: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl FppEstimate {
    pub fn contains(&self, p: f64) -> bool {
        self.ci_low <= p && p <= self.ci_high
    }
}

/// Wilson score interval for `hits` successes in `trials`.
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Counts hits over `trials` draws split into fixed-size chunks; chunk `i`
/// draws from ChaCha8 stream `i` of `seed`.
fn run_chunks<F>(trials: u64, seed: u64, draw: F) -> u64
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    let chunks = trials.div_ceil(CHUNK);
    let per_chunk: Vec<u64> = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let len = CHUNK.min(trials - i * CHUNK);
            (0..len).filter(|_| draw(&mut rng)).count() as u64
        })
        .collect();
    per_chunk.iter().sum()
}

fn estimate(source: String, level: usize, trials: u64, hits: u64, seed: u64) -> FppEstimate {
    let (ci_low, ci_high) = wilson_interval(hits, trials, Z_99);
    FppEstimate {
        source,
        level,
        trials,
        hits,
        seed,
        estimate: hits as f64 / trials as f64,
        confidence: 0.99,
        ci_low,
        ci_high,
        warning: None,
    }
}

/// Estimates `μ(X_n ≥ 1)` from Haar-uniform samples. Deterministic given
/// `seed`.
pub fn monte_carlo_fpp(source: &SampleSource, n: usize, trials: u64, seed: u64) -> Result<FppEstimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    let hits = match source {
        SampleSource::FullAut(shape) => run_chunks(trials, seed, |rng| {
            !uniform_aut_sample(*shape, n, rng).fixed_positions(n).is_empty()
        }),
        SampleSource::Quotient(q) => {
            if n > q.level() {
                return Err(Error::InvalidArgument(format!(
                    "level {n} is deeper than the quotient (level {})",
                    q.level()
                )));
            }
            let order = q.order();
            run_chunks(trials, seed, |rng| {
                !q.element(rng.gen_range(0..order) as u32).fixed_positions(n).is_empty()
            })
        }
        SampleSource::Presentation(_) => {
            return Err(Error::SourceNotUniform(
                "enumerate the quotient first, or use the random-word heuristic".into(),
            ))
        }
    };
    Ok(estimate(source.describe(), n, trials, hits, seed))
}

/// Samples products of `word_length` uniformly chosen generators and
/// inverses. Not Haar: the result carries `HEURISTIC_WARNING`.
pub fn random_word_fpp_heuristic(
    pres: &WreathPresentation,
    n: usize,
    word_length: usize,
    trials: u64,
    seed: u64,
) -> Result<FppEstimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    let gens = pres.generators().len();
    if gens == 0 {
        return Err(Error::InvalidArgument("presentation has no generators".into()));
    }
    let hits = run_chunks(trials, seed, |rng| {
        let letters = (0..word_length)
            .map(|_| Letter::new(rng.gen_range(0..gens), rng.gen()))
            .collect();
        let p = pres.word_portrait(&GroupWord::from_letters(letters), n);
        !p.fixed_positions(n).is_empty()
    });
    let mut e = estimate(SampleSource::Presentation(pres).describe(), n, trials, hits, seed);
    e.warning = Some(HEURISTIC_WARNING.into());
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(50, 100, Z_99);
        assert!(lo < 0.5 && hi > 0.5 && hi - lo < 0.27);
        assert_eq!(wilson_interval(0, 10, Z_99).0, 0.0);
    }

    #[test]
    fn full_aut_matches_recursion() {
        let shape = TreeShape::new(2).unwrap();
        let e = monte_carlo_fpp(&SampleSource::FullAut(shape), 3, 20_000, 5).unwrap();
        assert!(e.contains(39.0 / 128.0), "{e:?}");
        let again = monte_carlo_fpp(&SampleSource::FullAut(shape), 3, 20_000, 5).unwrap();
        assert_eq!(e.hits, again.hits);
    }

    #[test]
    fn quotient_sampling() {
        let pres = catalog::get("chebyshev_d2").unwrap().presentation().unwrap();
        let q = FiniteQuotient::enumerate(&pres, 3, 1000).unwrap();
        let e = monte_carlo_fpp(&SampleSource::Quotient(&q), 3, 20_000, 11).unwrap();
        assert!(e.contains(5.0 / 16.0), "{e:?}");
        assert!(monte_carlo_fpp(&SampleSource::Quotient(&q), 4, 10, 1).is_err());
    }

    #[test]
    fn refusals() {
        let pres = catalog::get("basilica").unwrap().presentation().unwrap();
        assert!(matches!(
            monte_carlo_fpp(&SampleSource::Presentation(&pres), 3, 100, 1),
            Err(Error::SourceNotUniform(_))
        ));
        let shape = TreeShape::new(2).unwrap();
        assert!(monte_carlo_fpp(&SampleSource::FullAut(shape), 3, 0, 1).is_err());
        let h = random_word_fpp_heuristic(&pres, 3, 20, 500, 1).unwrap();
        assert!(h.warning.is_some());
    }
}
