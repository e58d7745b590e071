use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::word::{GroupWord, Letter};
use crate::error::{Error, Result};
use crate::perm;
use crate::tree::{Portrait, TreeShape, Vertex};

/// Default cap on distinct section words visited by [`WreathPresentation::is_trivial`].
pub const DEFAULT_WORD_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Root permutation, 0-based.
    pub perm: Vec<u8>,
    /// `sections[x]` is the section at the (0-based) first-level vertex `x`.
    pub sections: Vec<GroupWord>,
    /// Auxiliary generators may appear in section words but are not part of
    /// the generating set of the group itself.
    pub auxiliary: bool,
}

/// A self-similar group given by a wreath recursion
/// `g = (g|_1, ..., g|_d) π_1(g)` for each generator.
#[derive(Debug, Clone)]
pub struct WreathPresentation {
    shape: TreeShape,
    generators: Vec<Generator>,
    names: Vec<String>,
    index: HashMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub degree: usize,
    pub generators: Vec<GeneratorJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub perm: Vec<usize>,
    pub sections: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub auxiliary: bool,
}

impl WreathPresentation {
    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: PresentationJson =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn from_document(doc: &PresentationJson) -> Result<Self> {
        let shape = TreeShape::new(doc.degree)?;
        let d = shape.degree();
        let mut index = HashMap::new();
        for (i, g) in doc.generators.iter().enumerate() {
            if g.name.is_empty() || g.name.ends_with('\'') || g.name.contains(char::is_whitespace) {
                return Err(Error::Schema(format!("invalid generator name `{}`", g.name)));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::Schema(format!("duplicate generator `{}`", g.name)));
            }
        }
        let mut generators = Vec::with_capacity(doc.generators.len());
        for g in &doc.generators {
            let perm = perm::from_one_based(&g.perm, d)?;
            if g.sections.len() != d {
                return Err(Error::Schema(format!(
                    "generator `{}` needs {d} sections, got {}",
                    g.name,
                    g.sections.len()
                )));
            }
            let sections = g
                .sections
                .iter()
                .map(|toks| parse_tokens(&index, toks))
                .collect::<Result<_>>()?;
            generators.push(Generator {
                name: g.name.clone(),
                perm,
                sections,
                auxiliary: g.auxiliary,
            });
        }
        let names = generators.iter().map(|g| g.name.clone()).collect();
        Ok(Self {
            shape,
            generators,
            names,
            index,
        })
    }

    pub fn to_document(&self) -> PresentationJson {
        PresentationJson {
            degree: self.shape.degree(),
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorJson {
                    name: g.name.clone(),
                    perm: perm::to_one_based(&g.perm),
                    sections: g.sections.iter().map(|w| w.tokens(&self.names)).collect(),
                    auxiliary: g.auxiliary,
                })
                .collect(),
        }
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Indices of the generators that generate the group (non-auxiliary).
    pub fn active_generators(&self) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&i| !self.generators[i].auxiliary)
            .collect()
    }

    /// Parses a whitespace-separated word such as `"b a' a"`.
    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        let toks: Vec<String> = text
            .split_whitespace()
            .filter(|t| *t != "1")
            .map(str::to_string)
            .collect();
        parse_tokens(&self.index, &toks)
    }

    pub fn parse_word_tokens(&self, toks: &[String]) -> Result<GroupWord> {
        parse_tokens(&self.index, toks)
    }

    pub fn format_word(&self, w: &GroupWord) -> String {
        w.display(&self.names).to_string()
    }

    /// Root permutation of the element a word represents.
    pub fn root_permutation(&self, w: &GroupWord) -> Vec<u8> {
        let d = self.shape.degree();
        let mut p = perm::identity(d);
        for l in w.letters() {
            let g = &self.generators[l.generator].perm;
            p = if l.inverse {
                perm::compose(&p, &perm::inverse(g))
            } else {
                perm::compose(&p, g)
            };
        }
        p
    }

    /// Depth-`m` portraits of every generator (auxiliary ones included).
    pub fn generator_portraits(&self, m: usize) -> Vec<Portrait> {
        let mut table: Vec<Portrait> = self
            .generators
            .iter()
            .map(|_| Portrait::identity(self.shape, 0))
            .collect();
        for _ in 0..m {
            let inverses: Vec<Portrait> = table.iter().map(Portrait::inverse).collect();
            let next = self
                .generators
                .iter()
                .map(|g| {
                    let children: Vec<Portrait> = g
                        .sections
                        .iter()
                        .map(|w| product(self.shape, &table, &inverses, w))
                        .collect();
                    Portrait::from_recursion(&g.perm, &children)
                })
                .collect();
            table = next;
        }
        table
    }

    /// The depth-`m` truncation of the automorphism `w` represents.
    pub fn word_portrait(&self, w: &GroupWord, m: usize) -> Portrait {
        let table = self.generator_portraits(m);
        let inverses: Vec<Portrait> = table.iter().map(Portrait::inverse).collect();
        product(self.shape, &table, &inverses, w)
    }

    /// A word for `w|_v`, computed letter by letter via
    /// `(gh)|_x = g|_x h|_{x^g}`; freely reduced.
    pub fn word_section(&self, w: &GroupWord, v: &Vertex) -> Result<GroupWord> {
        v.check(self.shape)?;
        let mut cur = w.clone();
        for &x in v.digits() {
            cur = self.first_level_section(&cur, x as usize);
        }
        Ok(cur.reduced())
    }

    fn first_level_section(&self, w: &GroupWord, x0: usize) -> GroupWord {
        let mut x = x0;
        let mut out = GroupWord::identity();
        for l in w.letters() {
            let g = &self.generators[l.generator];
            if l.inverse {
                // (g^{-1})|_x = (g|_y)^{-1} where y^g = x
                let y = g.perm.iter().position(|&t| t as usize == x).unwrap();
                for &m in g.sections[y].inverse().letters() {
                    out.push(m);
                }
                x = y;
            } else {
                for &m in g.sections[x].letters() {
                    out.push(m);
                }
                x = g.perm[x] as usize;
            }
        }
        out
    }

    /// Decides whether `w` represents the identity by closing `{w}` under
    /// first-level sections: trivial iff every visited word has identity
    /// root permutation. Never guesses; a blown budget is an error.
    pub fn is_trivial(&self, w: &GroupWord, budget: usize) -> Result<bool> {
        let d = self.shape.degree();
        let start = w.reduced();
        let mut seen: HashSet<GroupWord> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            if !perm::is_identity(&self.root_permutation(&u)) {
                return Ok(false);
            }
            for x in 0..d {
                let s = self.first_level_section(&u, x).reduced();
                if !seen.contains(&s) {
                    if seen.len() >= budget {
                        return Err(Error::BudgetExceeded {
                            what: "word problem",
                            limit: budget as u64,
                            reached: seen.len() as u64,
                        });
                    }
                    seen.insert(s.clone());
                    queue.push_back(s);
                }
            }
        }
        Ok(true)
    }
}

fn parse_tokens(index: &HashMap<String, usize>, toks: &[String]) -> Result<GroupWord> {
    let mut w = GroupWord::identity();
    for t in toks {
        let (name, inverse) = match t.strip_suffix('\'') {
            Some(n) => (n, true),
            None => (t.as_str(), false),
        };
        let g = *index
            .get(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        w.push(Letter::new(g, inverse));
    }
    Ok(w)
}

pub(crate) fn product(
    shape: TreeShape,
    table: &[Portrait],
    inverses: &[Portrait],
    w: &GroupWord,
) -> Portrait {
    let depth = table.first().map_or(0, Portrait::depth);
    let mut acc = Portrait::identity(shape, depth);
    for l in w.letters() {
        let g = if l.inverse {
            &inverses[l.generator]
        } else {
            &table[l.generator]
        };
        acc = acc.compose(g).expect("same degree");
    }
    acc
}
