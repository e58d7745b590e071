use indexmap::IndexMap;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::action::VertexAction;
use super::schreier::orbit_labels;
use super::source::{names_at_depth, GroupSource};
use super::word::{GroupWord, Letter};
use crate::error::{Error, Result};
use crate::tree::{Portrait, TreeShape};

pub const DEFAULT_ELEMENT_BUDGET: usize = 2_000_000;

/// Refuse enumerations whose portraits alone would need more than this.
const MAX_PORTRAIT_BYTES: u128 = 8 << 30;

/// The finite group `π_n(G)`, fully listed.
///
/// Element ids follow the canonical portrait-key order. Every element keeps
/// a shortest representative word (ties broken lexicographically with the
/// alphabet `g1, g1', g2, g2', ...`), stored as a parent pointer.
#[derive(Debug, Clone)]
pub struct FiniteQuotient {
    shape: TreeShape,
    level: usize,
    names: Vec<String>,
    generators: Vec<Portrait>,
    elements: Vec<Portrait>,
    parent: Vec<u32>,
    last: Vec<Option<Letter>>,
    action: Vec<Vec<u32>>,
    identity: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientExport {
    pub degree: usize,
    pub level: usize,
    pub order: usize,
    pub generators: Vec<String>,
    /// `action[g][id]` is the id of `element(id) · generator(g)`.
    pub action: Vec<Vec<u32>>,
    pub words: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub portraits: Option<Vec<Portrait>>,
}

impl FiniteQuotient {
    pub fn enumerate(source: &dyn GroupSource, n: usize, budget: usize) -> Result<Self> {
        let gens = source.generator_portraits(n);
        let names = names_at_depth(source, gens.len());
        Self::from_generators(source.shape(), n, names, gens, budget)
    }

    /// Breadth-first closure of the given depth-`n` generators.
    ///
    /// The exact order is computed first with a stabilizer chain; an order
    /// above `budget` is refused before any element is listed.
    pub fn from_generators(
        shape: TreeShape,
        n: usize,
        names: Vec<String>,
        generators: Vec<Portrait>,
        budget: usize,
    ) -> Result<Self> {
        let order = VertexAction::from_portraits(shape, n, &generators).order();
        let order = order.to_u64().unwrap_or(u64::MAX);
        if order > budget as u64 {
            return Err(Error::BudgetExceeded {
                what: "quotient enumeration",
                limit: budget as u64,
                reached: order,
            });
        }
        let bytes = order as u128 * (shape.internal_count(n) * shape.degree()) as u128;
        if bytes > MAX_PORTRAIT_BYTES {
            return Err(Error::BudgetExceeded {
                what: "quotient portrait memory (bytes)",
                limit: MAX_PORTRAIT_BYTES as u64,
                reached: bytes.min(u64::MAX as u128) as u64,
            });
        }

        let mut alphabet: Vec<(Letter, Portrait)> = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            alphabet.push((Letter::new(i, false), g.clone()));
            let inv = g.inverse();
            if &inv != g {
                alphabet.push((Letter::new(i, true), inv));
            }
        }

        let mut seen: IndexMap<Portrait, ()> = IndexMap::with_capacity(order as usize);
        let mut parent: Vec<u32> = vec![0];
        let mut last: Vec<Option<Letter>> = vec![None];
        let mut action: Vec<Vec<u32>> = vec![vec![0; order as usize]; generators.len()];
        seen.insert(Portrait::identity(shape, n), ());
        let mut i = 0;
        while i < seen.len() {
            let elem = seen.get_index(i).unwrap().0.clone();
            for (letter, p) in &alphabet {
                let prod = elem.compose(p)?;
                let id = match seen.get_index_of(&prod) {
                    Some(id) => id,
                    None => {
                        if seen.len() as u64 >= order {
                            return Err(Error::InternalInconsistency(format!(
                                "closure exceeded the computed order {order}"
                            )));
                        }
                        seen.insert(prod, ());
                        parent.push(i as u32);
                        last.push(Some(*letter));
                        seen.len() - 1
                    }
                };
                if !letter.inverse {
                    action[letter.generator][i] = id as u32;
                }
            }
            i += 1;
        }
        if seen.len() as u64 != order {
            return Err(Error::InternalInconsistency(format!(
                "closure found {} elements, stabilizer chain says {order}",
                seen.len()
            )));
        }

        // relabel in canonical key order
        let bfs: Vec<Portrait> = seen.into_keys().collect();
        let mut by_key: Vec<u32> = (0..bfs.len() as u32).collect();
        by_key.sort_by(|&a, &b| bfs[a as usize].cmp(&bfs[b as usize]));
        let mut new_id = vec![0u32; bfs.len()];
        for (nid, &old) in by_key.iter().enumerate() {
            new_id[old as usize] = nid as u32;
        }
        let mut slots: Vec<Option<Portrait>> = bfs.into_iter().map(Some).collect();
        let elements: Vec<Portrait> = by_key
            .iter()
            .map(|&old| slots[old as usize].take().unwrap())
            .collect();
        let parent = by_key
            .iter()
            .map(|&old| new_id[parent[old as usize] as usize])
            .collect();
        let last = by_key.iter().map(|&old| last[old as usize]).collect();
        let action = action
            .into_iter()
            .map(|row| {
                by_key
                    .iter()
                    .map(|&old| new_id[row[old as usize] as usize])
                    .collect()
            })
            .collect();
        Ok(Self {
            shape,
            level: n,
            names,
            generators,
            elements,
            parent,
            last,
            action,
            identity: new_id[0],
        })
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[Portrait] {
        &self.generators
    }

    pub fn elements(&self) -> &[Portrait] {
        &self.elements
    }

    pub fn element(&self, id: u32) -> &Portrait {
        &self.elements[id as usize]
    }

    pub fn identity_id(&self) -> u32 {
        self.identity
    }

    pub fn id_of(&self, p: &Portrait) -> Option<u32> {
        self.elements.binary_search(p).ok().map(|i| i as u32)
    }

    /// `action()[g][id]` is the id of `element(id) · generator(g)`.
    pub fn action(&self) -> &[Vec<u32>] {
        &self.action
    }

    /// The stored shortest representative word of an element.
    pub fn word(&self, id: u32) -> GroupWord {
        let mut letters = Vec::new();
        let mut cur = id;
        while let Some(l) = self.last[cur as usize] {
            letters.push(l);
            cur = self.parent[cur as usize];
        }
        letters.reverse();
        GroupWord::from_letters(letters)
    }

    /// Ids of `π_k` images, `k ≤ level`, as indices into `lower`.
    pub fn projection_to(&self, lower: &FiniteQuotient) -> Result<Vec<u32>> {
        self.elements
            .iter()
            .map(|e| {
                let t = e.truncate(lower.level)?;
                lower.id_of(&t).ok_or_else(|| {
                    Error::InternalInconsistency("truncation missing from lower quotient".into())
                })
            })
            .collect()
    }

    /// True iff the generators act on level `level` with a single orbit.
    pub fn is_level_transitive(&self) -> bool {
        self.orbit_count(self.level) == 1
    }

    /// Number of orbits on level `k ≤ level`.
    pub fn orbit_count(&self, k: usize) -> usize {
        let perms: Vec<Vec<u32>> = self.generators.iter().map(|g| g.level_action(k)).collect();
        let labels = orbit_labels(self.shape.level_size(k), &perms);
        labels
            .iter()
            .enumerate()
            .filter(|(i, &l)| *i as u32 == l)
            .count()
    }

    pub fn export(&self, with_portraits: bool) -> QuotientExport {
        QuotientExport {
            degree: self.shape.degree(),
            level: self.level,
            order: self.order(),
            generators: self.names.clone(),
            action: self.action.clone(),
            words: (0..self.order() as u32)
                .map(|id| self.word(id).display(&self.names).to_string())
                .collect(),
            portraits: with_portraits.then(|| self.elements.clone()),
        }
    }
}

/// Quotients `π_0(G), ..., π_n(G)` with the projection maps between
/// consecutive levels.
#[derive(Debug, Clone)]
pub struct QuotientTower {
    levels: Vec<FiniteQuotient>,
    projections: Vec<Vec<u32>>,
}

impl QuotientTower {
    pub fn build(source: &dyn GroupSource, n: usize, budget: usize) -> Result<Self> {
        let mut levels = Vec::with_capacity(n + 1);
        for k in 0..=n {
            levels.push(FiniteQuotient::enumerate(source, k, budget)?);
        }
        Self::from_levels(levels)
    }

    /// Enumerates as many levels `1..=n_max` as fit in `budget`; returns the
    /// tower and the error that stopped it, if any.
    pub fn build_partial(
        source: &dyn GroupSource,
        n_max: usize,
        budget: usize,
    ) -> Result<(Self, Option<Error>)> {
        let mut levels = vec![FiniteQuotient::enumerate(source, 0, budget)?];
        let mut stop = None;
        for k in 1..=n_max {
            match FiniteQuotient::enumerate(source, k, budget) {
                Ok(q) => levels.push(q),
                Err(e @ Error::BudgetExceeded { .. }) => {
                    stop = Some(e);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        Ok((Self::from_levels(levels)?, stop))
    }

    pub fn from_levels(levels: Vec<FiniteQuotient>) -> Result<Self> {
        let mut projections = vec![Vec::new()];
        for k in 1..levels.len() {
            projections.push(levels[k].projection_to(&levels[k - 1])?);
        }
        Ok(Self {
            levels,
            projections,
        })
    }

    /// Highest enumerated level.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &FiniteQuotient {
        &self.levels[k]
    }

    /// Map from level-`k` ids to level-`(k-1)` ids.
    pub fn projection(&self, k: usize) -> &[u32] {
        &self.projections[k]
    }
}
