use serde::Serialize;

use super::presentation::{WreathPresentation, DEFAULT_WORD_BUDGET};
use super::word::{GroupWord, Letter};
use crate::error::{Error, Result};
use crate::perm;
use crate::tree::Vertex;

/// Depth below `w` to which a witness is re-checked on portraits.
pub const WITNESS_CHECK_DEPTH: usize = 6;

/// An element `g` fixing `u` and `w` with `g|_u = 1` and `g|_w = s`.
#[derive(Debug, Clone, Serialize)]
pub struct CommutatorWitness {
    pub g: String,
    #[serde(skip)]
    pub word: GroupWord,
    pub u: Vertex,
    pub w: Vertex,
    pub validated_depth: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CommutatorOutcome {
    Found(CommutatorWitness),
    NotFound { word_problems: u64 },
}

/// Searches conjugates `c⁻¹ x^k c` (generator powers up to the lcm of the
/// root-permutation orders, conjugators of length `≤ conj_len`) and vertex
/// pairs `|u| ≤ |w| ≤ max_level` for a witness of the commutator trick.
///
/// `budget` caps the number of word problems solved; running out is
/// reported as `BudgetExceeded`, distinct from `NotFound`.
pub fn commutator_search(
    pres: &WreathPresentation,
    s: &GroupWord,
    max_level: usize,
    conj_len: usize,
    budget: u64,
) -> Result<CommutatorOutcome> {
    if max_level == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let shape = pres.shape();
    let gens = pres.active_generators();
    let max_power = gens
        .iter()
        .map(|&i| perm::order(&pres.generators()[i].perm))
        .fold(1u64, num_integer::lcm);
    let s_inv = s.inverse();
    let mut spent = 0u64;
    let mut solve = |w: &GroupWord| -> Result<bool> {
        if spent >= budget {
            return Err(Error::BudgetExceeded {
                what: "commutator search word problems",
                limit: budget,
                reached: spent,
            });
        }
        spent += 1;
        pres.is_trivial(w, DEFAULT_WORD_BUDGET)
    };

    for c in conjugators(&gens, conj_len) {
        for &x in &gens {
            for k in 1..=max_power {
                let g = c
                    .inverse()
                    .concat(&GroupWord::generator(x).pow(k as usize))
                    .concat(&c)
                    .reduced();
                if g.is_empty() {
                    continue;
                }
                let portrait = pres.word_portrait(&g, max_level);
                let fixed: Vec<Vertex> = (1..=max_level)
                    .flat_map(|n| {
                        portrait
                            .fixed_positions(n)
                            .into_iter()
                            .map(move |pos| Vertex::from_position(shape, n, pos))
                    })
                    .collect();
                let mut trivial_at: Vec<Option<bool>> = vec![None; fixed.len()];
                for (iu, u) in fixed.iter().enumerate() {
                    let triv = match trivial_at[iu] {
                        Some(t) => t,
                        None => {
                            let t = solve(&pres.word_section(&g, u)?)?;
                            trivial_at[iu] = Some(t);
                            t
                        }
                    };
                    if !triv {
                        continue;
                    }
                    for w in fixed.iter().filter(|w| w.level() >= u.level() && *w != u) {
                        let gw = pres.word_section(&g, w)?;
                        if solve(&gw.concat(&s_inv))? {
                            let witness = CommutatorWitness {
                                g: pres.format_word(&g),
                                word: g.clone(),
                                u: u.clone(),
                                w: w.clone(),
                                validated_depth: WITNESS_CHECK_DEPTH,
                            };
                            validate_witness(pres, s, &witness)?;
                            return Ok(CommutatorOutcome::Found(witness));
                        }
                    }
                }
            }
        }
    }
    Ok(CommutatorOutcome::NotFound {
        word_problems: spent,
    })
}

/// Re-checks a witness on portraits, independently of the word calculus.
pub fn validate_witness(pres: &WreathPresentation, s: &GroupWord, wit: &CommutatorWitness) -> Result<()> {
    let depth = wit.w.level() + WITNESS_CHECK_DEPTH;
    let p = pres.word_portrait(&wit.word, depth);
    let fail = |detail: String| Error::InternalInconsistency(format!("commutator witness: {detail}"));
    if p.apply(&wit.u)? != wit.u || p.apply(&wit.w)? != wit.w {
        return Err(fail("g does not fix u and w".into()));
    }
    if !p.section(&wit.u)?.truncate(WITNESS_CHECK_DEPTH)?.is_identity() {
        return Err(fail("g|_u is not trivial".into()));
    }
    let target = pres.word_portrait(s, WITNESS_CHECK_DEPTH);
    if p.section(&wit.w)?.truncate(WITNESS_CHECK_DEPTH)? != target {
        return Err(fail("g|_w differs from s".into()));
    }
    Ok(())
}

/// Freely reduced words of length `0..=len`, shortest first, lexicographic.
fn conjugators(gens: &[usize], len: usize) -> Vec<GroupWord> {
    let letters: Vec<Letter> = gens
        .iter()
        .flat_map(|&g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    let mut out = vec![GroupWord::identity()];
    let mut frontier = vec![GroupWord::identity()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.letters().last() == Some(&l.inv()) {
                    continue;
                }
                let mut e = w.clone();
                e.push(l);
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn basilica_witnesses() {
        let p = catalog::get("basilica").unwrap().presentation().unwrap();
        for name in ["a", "b"] {
            let s = p.parse_word(name).unwrap();
            match commutator_search(&p, &s, 2, 1, 10_000).unwrap() {
                CommutatorOutcome::Found(w) => {
                    validate_witness(&p, &s, &w).unwrap();
                    assert!(w.u.level() <= w.w.level() && w.w.level() <= 2);
                }
                other => panic!("no witness for {name}: {other:?}"),
            }
        }
    }

    #[test]
    fn trivial_group_has_none() {
        let p = catalog::get("trivial").unwrap().presentation().unwrap();
        let out = commutator_search(&p, &GroupWord::identity(), 3, 2, 100).unwrap();
        assert!(matches!(out, CommutatorOutcome::NotFound { .. }));
    }

    #[test]
    fn budget_is_distinct_from_not_found() {
        let p = catalog::get("power_map_d2").unwrap().presentation().unwrap();
        let s = p.parse_word("a").unwrap();
        assert!(matches!(
            commutator_search(&p, &s, 3, 2, 1),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn conjugator_enumeration() {
        let c = conjugators(&[0, 1], 2);
        // 1 + 4 + 4·3
        assert_eq!(c.len(), 17);
        assert!(c.iter().all(|w| w.reduced() == *w));
    }
}
