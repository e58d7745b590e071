//! Necessary conditions for a wreath recursion to be the iterated
//! monodromy recursion of a post-critically finite polynomial:
//!
//! - (a) the generators multiply to 1 in some order;
//! - (b) `g_p` has one level-1 cycle of length `e_f(q)` per preimage
//!   `q ∈ f⁻¹(p)`;
//! - (c) `g_∞` is a `d`-cycle at the root and `g_∞^{d^n}` acts as a
//!   `d`-cycle below every level-`n` vertex;
//! - (d) the cycles can be matched with the preimages so that
//!   `(g_p^{e})|_x` is conjugate to `g_q` when `q ∈ P_f`, and trivial otherwise.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::Serialize;

use super::critical::CriticalData;
use super::document::{parse_point, PointDesignation};
use super::exceptional::{listed_points, preimages};
use super::orbit::PostCriticalSet;
use super::poly::{PolynomialMap, ProjectivePoint};
use crate::error::{Error, Result};
use crate::group::{GroupWord, WreathPresentation, DEFAULT_WORD_BUDGET};
use crate::perm;
use crate::tree::{Portrait, Vertex};

/// Largest number of designated points for which all product orders are tried.
const MAX_ORDERED_POINTS: usize = 8;

#[derive(Debug, Clone, Serialize)]
pub struct ClauseReport {
    pub clause: char,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub depth: usize,
    /// The points in the order whose product of generators is trivial.
    pub product_order: Vec<String>,
    pub clauses: Vec<ClauseReport>,
}

struct Designated {
    point: ProjectivePoint,
    word: GroupWord,
}

fn fail(clause: char, detail: String) -> Error {
    Error::ValidationFailure { clause, detail }
}

fn portrait_pow(p: &Portrait, mut e: u64) -> Portrait {
    let mut base = p.clone();
    let mut acc = Portrait::identity(p.shape(), p.depth());
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.compose(&base).expect("same shape");
        }
        base = base.compose(&base).expect("same shape");
        e >>= 1;
    }
    acc
}

/// The conjugacy class of `x` in the group generated by `gens` (all of one
/// depth), by closing under conjugation by the generators.
fn conjugacy_class(x: &Portrait, gens: &[Portrait], budget: usize) -> Result<HashSet<Portrait>> {
    let inverses: Vec<Portrait> = gens.iter().map(Portrait::inverse).collect();
    let mut seen = HashSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(y) = queue.pop_front() {
        for (g, gi) in gens.iter().zip(&inverses) {
            let z = gi.compose(&y)?.compose(g)?;
            if seen.insert(z.clone()) {
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded {
                        what: "conjugacy class",
                        limit: budget as u64,
                        reached: seen.len() as u64,
                    });
                }
                queue.push_back(z);
            }
        }
    }
    Ok(seen)
}

/// Perfect matching in a bipartite graph given by adjacency lists (left to
/// right), via augmenting paths.
fn perfect_matching(adj: &[Vec<usize>], right: usize) -> bool {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    if adj.len() != right {
        return false;
    }
    let mut owner = vec![None; right];
    (0..adj.len()).all(|u| augment(u, adj, &mut vec![false; right], &mut owner))
}

/// Runs clauses (a)-(d) in order; the first violated clause is returned as
/// `ValidationFailure`. Conjugacy in (d) is decided in `π_depth(G)`.
pub fn validate_recursion_against_polynomial(
    pres: &WreathPresentation,
    f: &PolynomialMap,
    crit: &CriticalData,
    post: &PostCriticalSet,
    designation: &[PointDesignation],
    depth: usize,
) -> Result<ValidationReport> {
    let d = f.degree();
    if pres.shape().degree() != d {
        return Err(Error::DegreeMismatch(pres.shape().degree(), d));
    }
    if depth == 0 {
        return Err(Error::InvalidArgument("validation depth must be at least 1".into()));
    }
    let k = f.field();
    let mut points: Vec<Designated> = Vec::new();
    for pd in designation {
        let point = parse_point(k, &pd.point)?;
        if points.iter().any(|q| q.point == point) {
            return Err(Error::InvalidArgument(format!("point {point} designated twice")));
        }
        points.push(Designated {
            point,
            word: pres.parse_word(&pd.word)?,
        });
    }
    let expected: Vec<ProjectivePoint> = post
        .elements()
        .cloned()
        .map(ProjectivePoint::Affine)
        .chain([ProjectivePoint::Infinity])
        .collect();
    for p in &expected {
        if !points.iter().any(|q| &q.point == p) {
            return Err(Error::InvalidArgument(format!("no generator designated for {p}")));
        }
    }
    if let Some(q) = points.iter().find(|q| !expected.contains(&q.point)) {
        return Err(Error::InvalidArgument(format!("{} is not post-critical", q.point)));
    }
    let mut clauses = Vec::new();

    // (a) product relation
    let n = points.len();
    if n > MAX_ORDERED_POINTS {
        return Err(Error::InvalidArgument(format!(
            "at most {MAX_ORDERED_POINTS} designated points are supported"
        )));
    }
    let mut product_order = None;
    for rest in perm::all(n - 1) {
        let order: Vec<usize> = std::iter::once(0).chain(rest.iter().map(|&i| i as usize + 1)).collect();
        let w = order
            .iter()
            .fold(GroupWord::identity(), |acc, &i| acc.concat(&points[i].word));
        if pres.is_trivial(&w, DEFAULT_WORD_BUDGET)? {
            product_order = Some(order);
            break;
        }
    }
    let Some(order) = product_order else {
        return Err(fail('a', "no ordering of the designated generators multiplies to 1".into()));
    };
    let product_order: Vec<String> = order.iter().map(|&i| points[i].point.to_string()).collect();
    clauses.push(ClauseReport {
        clause: 'a',
        detail: format!("product in order {} is trivial", product_order.join(", ")),
    });

    // preimage data: (point, local degree) per preimage, unlisted as e = 1
    let listed = listed_points(crit, post);
    let mut fibres: BTreeMap<ProjectivePoint, Vec<(Option<ProjectivePoint>, usize)>> = BTreeMap::new();
    for p in post.elements() {
        let pre = preimages(f, &listed, p)?;
        let mut fibre: Vec<(Option<ProjectivePoint>, usize)> = pre
            .listed
            .into_iter()
            .map(|(s, e)| (Some(ProjectivePoint::Affine(s)), e))
            .collect();
        fibre.extend((0..pre.unlisted_degree).map(|_| (None, 1)));
        fibres.insert(ProjectivePoint::Affine(p.clone()), fibre);
    }
    fibres.insert(ProjectivePoint::Infinity, vec![(Some(ProjectivePoint::Infinity), d)]);

    // (b) level-1 cycle types
    for q in &points {
        let cyc = perm::cycle_type(&pres.root_permutation(&q.word));
        let mut want: Vec<usize> = fibres[&q.point].iter().map(|&(_, e)| e).collect();
        want.sort_unstable();
        if cyc != want {
            return Err(fail(
                'b',
                format!("g at {} has cycle type {cyc:?}, preimage degrees are {want:?}", q.point),
            ));
        }
    }
    clauses.push(ClauseReport {
        clause: 'b',
        detail: "level-1 cycle types match the local degrees of the preimages".into(),
    });

    // (c) monodromy at infinity
    let g_inf = &points
        .iter()
        .find(|q| q.point == ProjectivePoint::Infinity)
        .unwrap()
        .word;
    for level in 0..depth {
        let p = portrait_pow(&pres.word_portrait(g_inf, level + 1), (d as u64).pow(level as u32));
        if !p.fixes_level(level) {
            return Err(fail('c', format!("g_inf^(d^{level}) does not fix level {level}")));
        }
        for v in pres.shape().level(level) {
            if perm::cycle_type(p.label_at(&v)?) != [d] {
                return Err(fail('c', format!("g_inf^(d^{level}) is not a {d}-cycle below vertex {v}")));
            }
        }
    }
    clauses.push(ClauseReport {
        clause: 'c',
        detail: format!("g_inf^(d^n) acts as a {d}-cycle below every level-n vertex, n < {depth}"),
    });

    // (d) sections of cycle powers
    let gens = pres.generator_portraits(depth);
    let active: Vec<Portrait> = pres.active_generators().into_iter().map(|i| gens[i].clone()).collect();
    let mut classes: BTreeMap<ProjectivePoint, HashSet<Portrait>> = BTreeMap::new();
    for q in &points {
        let x = pres.word_portrait(&q.word, depth);
        classes.insert(q.point.clone(), conjugacy_class(&x, &active, crate::group::DEFAULT_ELEMENT_BUDGET)?);
    }
    for q in &points {
        let root = pres.root_permutation(&q.word);
        let fibre = &fibres[&q.point];
        let cycles = perm::cycles(&root);
        let mut adj: Vec<Vec<usize>> = Vec::new();
        for cyc in &cycles {
            let e = cyc.len();
            let x = Vertex::from_position(pres.shape(), 1, cyc[0]);
            let section = pres.word_section(&q.word.pow(e), &x)?;
            let mut trivial: Option<bool> = None;
            let section_portrait = pres.word_portrait(&section, depth);
            let mut edges = Vec::new();
            for (j, (pre, ej)) in fibre.iter().enumerate() {
                if *ej != e {
                    continue;
                }
                let ok = match pre.as_ref().filter(|p| classes.contains_key(p)) {
                    Some(target) => classes[target].contains(&section_portrait),
                    None => *trivial.get_or_insert(pres.is_trivial(&section, DEFAULT_WORD_BUDGET)?),
                };
                if ok {
                    edges.push(j);
                }
            }
            adj.push(edges);
        }
        if !perfect_matching(&adj, fibre.len()) {
            return Err(fail(
                'd',
                format!(
                    "sections of the level-1 cycle powers of g at {} do not match the preimages of {} (depth {depth})",
                    q.point, q.point
                ),
            ));
        }
    }
    clauses.push(ClauseReport {
        clause: 'd',
        detail: format!("cycle sections match preimages up to conjugacy in the depth-{depth} quotient"),
    });

    Ok(ValidationReport {
        depth,
        product_order,
        clauses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dynamics::critical::critical_data;
    use crate::dynamics::orbit::{post_critical_orbit, DEFAULT_PCF_BOUND};

    fn run(entry: &str, pres_json: Option<&str>, depth: usize) -> Result<ValidationReport> {
        let e = catalog::get(entry).unwrap();
        let pres = match pres_json {
            Some(s) => WreathPresentation::parse_json(s).unwrap(),
            None => e.presentation().unwrap(),
        };
        let (f, _) = e.polynomial().unwrap();
        let crit = critical_data(&f, None).unwrap();
        let post = post_critical_orbit(&f, &crit, DEFAULT_PCF_BOUND)
            .unwrap()
            .into_result(DEFAULT_PCF_BOUND)
            .unwrap();
        validate_recursion_against_polynomial(&pres, &f, &crit, &post, &e.designation(), depth)
    }

    #[test]
    fn catalog_pairs_pass() {
        for name in ["chebyshev_d2", "chebyshev_d3", "basilica", "power_map_d2"] {
            let r = run(name, None, 3).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(r.clauses.len(), 4);
        }
    }

    #[test]
    fn swapped_sections_fail_clause_d() {
        let corrupted = r#"{"degree":2,"generators":[
          {"name":"a","perm":[2,1],"sections":[["a"],[]]},
          {"name":"b","perm":[1,2],"sections":[["b"],[]]}]}"#;
        match run("basilica", Some(corrupted), 3) {
            Err(Error::ValidationFailure { clause: 'd', .. }) => {}
            other => panic!("expected clause (d) failure, got {other:?}"),
        }
    }

    #[test]
    fn wrong_cycle_type_fails_clause_b() {
        // designate the root-active generator at a point whose preimages are unramified
        let swapped = r#"{"degree":2,"generators":[
          {"name":"b","perm":[2,1],"sections":[["a"],[]]},
          {"name":"a","perm":[1,2],"sections":[["b"],[]]}]}"#;
        assert!(matches!(
            run("basilica", Some(swapped), 3),
            Err(Error::ValidationFailure { clause: 'b', .. })
        ));
    }

    #[test]
    fn matching() {
        assert!(perfect_matching(&[vec![0, 1], vec![0]], 2));
        assert!(!perfect_matching(&[vec![0], vec![0]], 2));
        assert!(!perfect_matching(&[vec![0]], 2));
    }
}
