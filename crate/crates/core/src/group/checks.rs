//! Structural certificates computed on finite truncations: fractality,
//! super strong fractality, transitivity of level stabilizers below their
//! level, the mixing condition, the `K_G` diagnostic and the pseudomixing
//! counting identity.
//!
//! Vertex and level stabilizers come from stabilizer chains on the action
//! on vertices, so none of these checks needs to list `π_L(G)` itself
//! (except the pseudomixing counts, which are per element by nature).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::action::{portrait_group_order, VertexAction};
use super::quotient::FiniteQuotient;
use super::schreier::{orbit_labels, Perm, StabilizerChain};
use super::source::{names_at_depth, GroupSource};
use crate::error::{Error, Result};
use crate::numeric::{biguint_str, rational_str};
use crate::tree::{Portrait, Vertex};

#[derive(Debug, Clone, Serialize)]
pub struct LevelVerdict {
    pub level: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectionVerdict {
    pub vertex: Vertex,
    /// Order of the projection of the relevant stabilizer at `vertex`.
    #[serde(with = "biguint_str")]
    pub projection_order: BigUint,
    pub pass: bool,
}

/// Outcome of [`check_fractal`] or [`check_super_strongly_fractal`].
#[derive(Debug, Clone, Serialize)]
pub struct ProjectionReport {
    pub property: &'static str,
    pub level_bound: usize,
    pub m: usize,
    /// `|π_m(G)|`, the order every projection has to reach.
    #[serde(with = "biguint_str")]
    pub target_order: BigUint,
    pub transitivity: Vec<LevelVerdict>,
    pub vertices: Vec<ProjectionVerdict>,
    pub first_failure: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MixingCertificate {
    pub n: usize,
    pub m: usize,
    pub delay: usize,
    /// The only level whose vertices were checked.
    pub certified_level: usize,
    #[serde(with = "biguint_str")]
    pub target_order: BigUint,
    /// `St(k)` transitive below every level-`k` vertex, down to level `n + N + m`.
    pub subtree_transitivity: Vec<LevelVerdict>,
    pub vertices: Vec<ProjectionVerdict>,
    pub scope: String,
    pub first_failure: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct KgReport {
    pub levels: usize,
    pub m: usize,
    #[serde(with = "biguint_str")]
    pub full_order: BigUint,
    /// Order of `{g|_{1^j} : g ∈ St(j)}` in `π_m(G)` for `j = 1..=L`.
    pub per_level_orders: Vec<usize>,
    pub order: usize,
    #[serde(with = "biguint_str")]
    pub index: BigUint,
    pub elements: Vec<Portrait>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PseudomixingReport {
    pub n: usize,
    pub m: usize,
    pub u: Vertex,
    pub w: Vertex,
    pub quotient_order: usize,
    pub pi_n_order: usize,
    pub pi_m_order: usize,
    /// `|π_{|v|+m}| / (|π_n| |π_m| d^{|w|})`, the count every cell should have.
    #[serde(with = "rational_str")]
    pub expected_count: BigRational,
    #[serde(with = "rational_str")]
    pub max_deviation: BigRational,
    pub cells: usize,
    pub exact_cells: usize,
    pub hypothesis_level_transitive: bool,
    pub pass: bool,
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg.to_string()))
    }
}

fn pi_order(source: &dyn GroupSource, m: usize) -> BigUint {
    VertexAction::new(source, m).order()
}

/// Order of `{g|_v^m : g ∈ ⟨gens⟩}` (the gens are assumed to fix `v`).
fn projection_order(act: &VertexAction, gens: &[Perm], v: &Vertex, m: usize) -> BigUint {
    let images: Vec<Portrait> = gens
        .iter()
        .map(|g| {
            act.portrait_of(g)
                .section(v)
                .and_then(|s| s.truncate(m))
                .expect("depth covers the section")
        })
        .collect();
    portrait_group_order(act.shape(), m, &images)
}

/// True iff for every level-`k` vertex `u`, the descendants of `u` on the
/// last level of `act` lie in a single orbit of `gens`.
fn transitive_below(act: &VertexAction, gens: &[Perm], k: usize) -> bool {
    let labels = orbit_labels(act.npoints(), gens);
    act.shape().level(k).all(|u| {
        let mut pts = act.descendant_points(&u, act.depth());
        let first = labels[pts.next().unwrap() as usize];
        pts.all(|p| labels[p as usize] == first)
    })
}

fn is_level_transitive(act: &VertexAction, k: usize) -> bool {
    let labels = orbit_labels(act.npoints(), act.generators());
    let mut pts = act.level_points(k);
    let first = labels[pts.next().unwrap() as usize];
    pts.all(|p| labels[p as usize] == first)
}

fn transitivity_verdicts(act: &VertexAction) -> Vec<LevelVerdict> {
    (1..=act.depth())
        .map(|level| LevelVerdict {
            level,
            pass: is_level_transitive(act, level),
        })
        .collect()
}

fn first_failure(transitivity: &[LevelVerdict], vertices: &[ProjectionVerdict]) -> Option<String> {
    if let Some(t) = transitivity.iter().find(|t| !t.pass) {
        return Some(format!("not transitive at level {}", t.level));
    }
    vertices
        .iter()
        .find(|v| !v.pass)
        .map(|v| format!("projection at vertex {} has order {}", v.vertex, v.projection_order))
}

/// For every vertex `v` with `1 ≤ |v| ≤ level_bound`, compares
/// `{g|_v^m : g ∈ st_G(v)}` with `π_m(G)`, plus level-transitivity down to
/// level `level_bound + m`.
pub fn check_fractal(source: &dyn GroupSource, level_bound: usize, m: usize) -> Result<ProjectionReport> {
    require(level_bound >= 1 && m >= 1, "level_bound and m must be at least 1")?;
    let act = VertexAction::new(source, level_bound + m);
    let target = pi_order(source, m);
    let transitivity = transitivity_verdicts(&act);
    let mut vertices = Vec::new();
    for k in 1..=level_bound {
        for v in act.shape().level(k) {
            let chain = act.chain(&[act.point(&v)]);
            let gens = chain.stabilizer_generators(1);
            let order = projection_order(&act, &gens, &v, m);
            vertices.push(ProjectionVerdict {
                pass: order == target,
                vertex: v,
                projection_order: order,
            });
        }
    }
    let first_failure = first_failure(&transitivity, &vertices);
    Ok(ProjectionReport {
        property: "fractal",
        level_bound,
        m,
        target_order: target,
        pass: first_failure.is_none(),
        transitivity,
        vertices,
        first_failure,
    })
}

/// For every `n ≤ level_bound` and level-`n` vertex `v`, compares
/// `St_G(n)_v^m` with `π_m(G)`, plus level-transitivity.
pub fn check_super_strongly_fractal(
    source: &dyn GroupSource,
    level_bound: usize,
    m: usize,
) -> Result<ProjectionReport> {
    require(level_bound >= 1 && m >= 1, "level_bound and m must be at least 1")?;
    let act = VertexAction::new(source, level_bound + m);
    let target = pi_order(source, m);
    let transitivity = transitivity_verdicts(&act);
    let chain = act.chain(&act.prefix_through(level_bound));
    let mut vertices = Vec::new();
    for n in 1..=level_bound {
        let gens = chain.stabilizer_generators(act.points_through(n));
        for v in act.shape().level(n) {
            let order = projection_order(&act, &gens, &v, m);
            vertices.push(ProjectionVerdict {
                pass: order == target,
                vertex: v,
                projection_order: order,
            });
        }
    }
    let first_failure = first_failure(&transitivity, &vertices);
    Ok(ProjectionReport {
        property: "super strongly fractal",
        level_bound,
        m,
        target_order: target,
        pass: first_failure.is_none(),
        transitivity,
        vertices,
        first_failure,
    })
}

/// True iff the kernel of `π_{n+depth}(G) → π_n(G)` acts transitively on
/// the level-`depth` descendants of every level-`n` vertex.
pub fn subtree_transitivity(source: &dyn GroupSource, n: usize, depth: usize) -> Result<bool> {
    require(depth >= 1, "depth must be at least 1")?;
    let act = VertexAction::new(source, n + depth);
    let chain = act.chain(&act.prefix_through(n));
    let gens = chain.stabilizer_generators(act.points_through(n));
    Ok(transitive_below(&act, &gens, n))
}

/// Finite certificate of the mixing condition at `|v| = n + N`: every
/// `St_G(n)_v^m` equals `π_m(G)`, and `St_G(k)` is transitive below level
/// `k` for `k ≤ n + N`. Larger `|v|` are not covered.
pub fn check_mixing_certificate(
    source: &dyn GroupSource,
    n: usize,
    m: usize,
    delay: usize,
) -> Result<MixingCertificate> {
    require(n >= 1 && m >= 1, "n and m must be at least 1")?;
    let level = n + delay;
    let act = VertexAction::new(source, level + m);
    let target = pi_order(source, m);
    let chain = act.chain(&act.prefix_through(level));

    let subtree: Vec<LevelVerdict> = (1..=level)
        .map(|k| LevelVerdict {
            level: k,
            pass: transitive_below(&act, &chain.stabilizer_generators(act.points_through(k)), k),
        })
        .collect();

    let st_n = chain.stabilizer_generators(act.points_through(n));
    let mut vertices = Vec::new();
    for v in act.shape().level(level) {
        let sub = StabilizerChain::new(act.npoints(), &st_n, &[act.point(&v)]);
        let gens = sub.stabilizer_generators(1);
        let order = projection_order(&act, &gens, &v, m);
        vertices.push(ProjectionVerdict {
            pass: order == target,
            vertex: v,
            projection_order: order,
        });
    }
    let first_failure = match subtree.iter().find(|t| !t.pass) {
        Some(t) => Some(format!("St({}) not transitive below level {}", t.level, t.level)),
        None => first_failure(&[], &vertices),
    };
    Ok(MixingCertificate {
        n,
        m,
        delay,
        certified_level: level,
        target_order: target,
        subtree_transitivity: subtree,
        vertices,
        scope: format!(
            "vertices of level exactly {level} checked; levels above {level} are not certified"
        ),
        pass: first_failure.is_none(),
        first_failure,
    })
}

/// `∩_{j=1..L} {g|_{1^j}^m : g ∈ St_G(j)}` as a subgroup of `π_m(G)`.
pub fn kg_depth(source: &dyn GroupSource, levels: usize, m: usize, budget: usize) -> Result<KgReport> {
    require(levels >= 1 && m >= 1, "L and m must be at least 1")?;
    let shape = source.shape();
    let act = VertexAction::new(source, levels + m);
    let full = pi_order(source, m);
    let chain = act.chain(&act.prefix_through(levels));
    let mut current: Option<Vec<Portrait>> = None;
    let mut per_level = Vec::new();
    for j in 1..=levels {
        let ray = Vertex::repeated(0, j);
        let images: Vec<Portrait> = chain
            .stabilizer_generators(act.points_through(j))
            .iter()
            .map(|g| act.portrait_of(g).section(&ray).and_then(|s| s.truncate(m)))
            .collect::<Result<_>>()?;
        let names = names_at_depth(source, images.len());
        let sub = FiniteQuotient::from_generators(shape, m, names, images, budget)?;
        per_level.push(sub.order());
        let elems = sub.elements().to_vec();
        current = Some(match current {
            None => elems,
            Some(prev) => intersect_sorted(&prev, &elems),
        });
    }
    let elements = current.unwrap_or_default();
    let order = elements.len();
    Ok(KgReport {
        levels,
        m,
        index: &full / BigUint::from(order),
        full_order: full,
        per_level_orders: per_level,
        order,
        elements,
    })
}

fn intersect_sorted(a: &[Portrait], b: &[Portrait]) -> Vec<Portrait> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Counts, for every `a ∈ π_n(G)` and `b ∈ π_m(G)`, the elements
/// `g ∈ π_{|v|+m}(G)` with `π_n(g) = a`, `w^{g|_u} = w` and `g|_v^m = b`,
/// `v = uw`, and compares each count with the product formula.
pub fn verify_pseudomixing(
    source: &dyn GroupSource,
    n: usize,
    m: usize,
    u: &Vertex,
    w: &Vertex,
    budget: usize,
) -> Result<PseudomixingReport> {
    require(n >= 1 && m >= 1, "n and m must be at least 1")?;
    require(u.level() == n, "u must lie on level n")?;
    let v = u.concat(w);
    let top = FiniteQuotient::enumerate(source, v.level() + m, budget)?;
    let qn = FiniteQuotient::enumerate(source, n, budget)?;
    let qm = FiniteQuotient::enumerate(source, m, budget)?;
    let mut counts = vec![0u64; qn.order() * qm.order()];
    for g in top.elements() {
        if g.section(u)?.apply(w)? != *w {
            continue;
        }
        let a = qn.id_of(&g.truncate(n)?).expect("projection lies in π_n");
        let b = qm
            .id_of(&g.section(&v)?.truncate(m)?)
            .ok_or_else(|| Error::InternalInconsistency("section outside π_m(G); not self-similar?".into()))?;
        counts[a as usize * qm.order() + b as usize] += 1;
    }
    let d = BigInt::from(source.shape().degree());
    let expected = BigRational::new(
        BigInt::from(top.order()),
        BigInt::from(qn.order() * qm.order()) * num_traits::pow(d, w.level()),
    );
    let mut max_dev = BigRational::zero();
    let mut exact = 0;
    for &c in &counts {
        let dev = (BigRational::from_integer(BigInt::from(c)) - &expected).abs();
        if dev.is_zero() {
            exact += 1;
        }
        if dev > max_dev {
            max_dev = dev;
        }
    }
    let transitive = top.is_level_transitive();
    Ok(PseudomixingReport {
        n,
        m,
        u: u.clone(),
        w: w.clone(),
        quotient_order: top.order(),
        pi_n_order: qn.order(),
        pi_m_order: qm.order(),
        expected_count: expected,
        pass: transitive && max_dev.is_zero(),
        max_deviation: max_dev,
        cells: counts.len(),
        exact_cells: exact,
        hypothesis_level_transitive: transitive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn src(name: &str) -> Box<dyn GroupSource> {
        catalog::get(name).unwrap().source()
    }

    fn v(s: &str) -> Vertex {
        Vertex::parse(crate::tree::TreeShape::new(2).unwrap(), s).unwrap()
    }

    #[test]
    fn fractal_examples() {
        assert!(check_fractal(src("chebyshev_d2").as_ref(), 2, 2).unwrap().pass);
        assert!(check_fractal(src("projection_invariant_example").as_ref(), 1, 1).unwrap().pass);
        let t = check_fractal(src("trivial").as_ref(), 1, 1).unwrap();
        assert!(!t.pass);
        assert_eq!(t.first_failure.as_deref(), Some("not transitive at level 1"));
        assert!(check_fractal(src("odometer_d2").as_ref(), 2, 2).unwrap().pass);
    }

    #[test]
    fn super_strong_fractality_examples() {
        assert!(check_super_strongly_fractal(src("grigorchuk").as_ref(), 2, 2).unwrap().pass);
        assert!(!check_super_strongly_fractal(src("chebyshev_d2").as_ref(), 2, 2).unwrap().pass);
        assert!(check_super_strongly_fractal(src("chebyshev_d2").as_ref(), 1, 1).unwrap().pass);
        assert!(!check_super_strongly_fractal(src("trivial").as_ref(), 1, 1).unwrap().pass);
    }

    #[test]
    fn subtree_transitivity_examples() {
        assert!(subtree_transitivity(src("chebyshev_d2").as_ref(), 1, 2).unwrap());
        assert!(!subtree_transitivity(src("trivial").as_ref(), 1, 1).unwrap());
        assert!(subtree_transitivity(src("basilica").as_ref(), 2, 2).unwrap());
    }

    #[test]
    fn mixing_examples() {
        assert!(check_mixing_certificate(src("grigorchuk").as_ref(), 1, 1, 0).unwrap().pass);
        for delay in 0..=2 {
            assert!(check_mixing_certificate(src("basilica").as_ref(), 1, 1, delay).unwrap().pass);
            let c = check_mixing_certificate(src("chebyshev_d2").as_ref(), 2, 2, delay).unwrap();
            assert!(!c.pass, "delay {delay}");
            assert!(c.subtree_transitivity.iter().all(|t| t.pass));
        }
        let c = check_mixing_certificate(src("chebyshev_d2").as_ref(), 1, 1, 2).unwrap();
        assert!(c.pass);
        assert_eq!(c.certified_level, 3);
    }

    #[test]
    fn kg_examples() {
        let k = kg_depth(src("chebyshev_d2").as_ref(), 3, 2, 1000).unwrap();
        assert_eq!((k.order, k.index.clone()), (4, BigUint::from(2u32)));
        let g = kg_depth(src("grigorchuk").as_ref(), 2, 1, 1000).unwrap();
        assert_eq!(g.index, BigUint::from(1u32));
        let t = kg_depth(src("trivial").as_ref(), 2, 1, 1000).unwrap();
        assert_eq!(t.order, 1);
    }

    #[test]
    fn pseudomixing_examples() {
        let g = verify_pseudomixing(src("grigorchuk").as_ref(), 1, 1, &v("1"), &v("1"), 10_000).unwrap();
        assert_eq!(g.quotient_order, 128);
        assert_eq!(g.expected_count, BigRational::from_integer(16.into()));
        assert!(g.pass);
        let c = verify_pseudomixing(src("chebyshev_d2").as_ref(), 2, 2, &v("11"), &v("1"), 10_000).unwrap();
        assert!(!c.max_deviation.is_zero());
        let t = verify_pseudomixing(src("trivial").as_ref(), 1, 1, &v("1"), &v("1"), 10).unwrap();
        assert!(!t.hypothesis_level_transitive && !t.pass);
    }
}
