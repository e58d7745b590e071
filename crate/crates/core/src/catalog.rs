//! Vetted fixtures: wreath recursions, the polynomials they are paired
//! with, and facts the engines are expected to re-derive.

use serde::Serialize;

use crate::dynamics::{PointDesignation, PolynomialDocument, PolynomialMap};
use crate::error::{Error, Result};
use crate::group::{FullAut, GroupSource, WreathPresentation};
use crate::tree::TreeShape;

/// Expected structural facts. `None` means "not asserted".
#[derive(Debug, Clone, Default, Serialize)]
pub struct ExpectedFacts {
    pub level_transitive: Option<bool>,
    /// `(level_bound, m, passes)`
    pub fractal: Option<(usize, usize, bool)>,
    /// `(level_bound, m, passes)`
    pub super_strongly_fractal: Option<(usize, usize, bool)>,
    /// `((n, m, N), passes)`
    pub mixing: Vec<((usize, usize, usize), bool)>,
    /// Exact fixer proportions `"p/q"` at levels `1, 2, ...`.
    pub fixer_proportions: Vec<&'static str>,
    /// `"ChebyshevLike"` or `"ZeroFpp"`.
    pub verdict: Option<&'static str>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    degree: usize,
    presentation: Option<&'static str>,
    polynomial: Option<&'static str>,
    /// `(point, word)` pairs; the point is `"inf"` or a rational/field element.
    designation: &'static [(&'static str, &'static str)],
    pub facts: ExpectedFacts,
}

impl CatalogEntry {
    pub fn shape(&self) -> TreeShape {
        TreeShape::new(self.degree).expect("catalog degrees are valid")
    }

    /// The wreath presentation; `None` for the virtual `Aut(T)` entry.
    pub fn presentation(&self) -> Option<WreathPresentation> {
        self.presentation
            .map(|s| WreathPresentation::parse_json(s).expect("catalog presentations parse"))
    }

    pub fn presentation_json(&self) -> Option<&'static str> {
        self.presentation
    }

    /// A generator source for the group (full `Aut(T)` for the virtual entry).
    pub fn source(&self) -> Box<dyn GroupSource> {
        match self.presentation() {
            Some(p) => Box::new(p),
            None => Box::new(FullAut::new(self.shape())),
        }
    }

    pub fn polynomial_json(&self) -> Option<&'static str> {
        self.polynomial
    }

    pub fn polynomial(&self) -> Option<(PolynomialMap, PolynomialDocument)> {
        self.polynomial.map(|s| {
            let doc = PolynomialDocument::parse(s).expect("catalog polynomials parse");
            let f = doc.polynomial().expect("catalog polynomials are valid");
            (f, doc)
        })
    }

    /// Generator words attached to the post-critical points and `∞`.
    pub fn designation(&self) -> Vec<PointDesignation> {
        self.designation
            .iter()
            .map(|(p, w)| PointDesignation {
                point: p.to_string(),
                word: w.to_string(),
            })
            .collect()
    }
}

const TRIVIAL: &str = r#"{"degree":2,"generators":[]}"#;

const ODOMETER: &str = r#"{"degree":2,"generators":[
  {"name":"a","perm":[2,1],"sections":[["a"],[]]}]}"#;

const CHEBYSHEV_D2: &str = r#"{"degree":2,"generators":[
  {"name":"a","perm":[2,1],"sections":[[],[]]},
  {"name":"b","perm":[1,2],"sections":[["a"],["b"]]}]}"#;

const CHEBYSHEV_D3: &str = r#"{"degree":3,"generators":[
  {"name":"a","perm":[2,1,3],"sections":[[],[],["a"]]},
  {"name":"b","perm":[1,3,2],"sections":[["b"],[],[]]}]}"#;

const BASILICA: &str = r#"{"degree":2,"generators":[
  {"name":"a","perm":[2,1],"sections":[["b"],[]]},
  {"name":"b","perm":[1,2],"sections":[["a"],[]]}]}"#;

const GRIGORCHUK: &str = r#"{"degree":2,"generators":[
  {"name":"a","perm":[2,1],"sections":[[],[]]},
  {"name":"b","perm":[1,2],"sections":[["a"],["c"]]},
  {"name":"c","perm":[1,2],"sections":[["a"],["d"]]},
  {"name":"d","perm":[1,2],"sections":[[],["b"]]}]}"#;

const PROJECTION_INVARIANT: &str = r#"{"degree":2,"generators":[
  {"name":"a","perm":[2,1],"sections":[[],[]],"auxiliary":true},
  {"name":"b","perm":[1,2],"sections":[["a"],["b"]],"auxiliary":true},
  {"name":"r","perm":[2,1],"sections":[["a"],["b"]]}]}"#;

const X2M2: &str = r#"{"coeffs":[["-2"],["0"],["1"]]}"#;
const X3M3X: &str = r#"{"coeffs":[["0"],["-3"],["0"],["1"]]}"#;
const X2M1: &str = r#"{"coeffs":[["-1"],["0"],["1"]]}"#;
const X2: &str = r#"{"coeffs":[["0"],["0"],["1"]]}"#;

pub const NAMES: [&str; 9] = [
    "trivial",
    "full_aut_d2",
    "odometer_d2",
    "chebyshev_d2",
    "chebyshev_d3",
    "basilica",
    "power_map_d2",
    "grigorchuk",
    "projection_invariant_example",
];

pub fn list() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| get(n).unwrap()).collect()
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    let base = |name, description, degree, presentation| CatalogEntry {
        name,
        description,
        degree,
        presentation,
        polynomial: None,
        designation: &[],
        facts: ExpectedFacts::default(),
    };
    let entry = match name {
        "trivial" => CatalogEntry {
            facts: ExpectedFacts {
                level_transitive: Some(false),
                fractal: Some((1, 1, false)),
                super_strongly_fractal: Some((1, 1, false)),
                fixer_proportions: vec!["1/1", "1/1", "1/1"],
                ..Default::default()
            },
            ..base("trivial", "the trivial group", 2, Some(TRIVIAL))
        },
        "full_aut_d2" => CatalogEntry {
            facts: ExpectedFacts {
                level_transitive: Some(true),
                fixer_proportions: vec!["1/2", "3/8", "39/128"],
                ..Default::default()
            },
            ..base(
                "full_aut_d2",
                "Aut(T) for the binary tree (virtual: elementary portraits at each depth)",
                2,
                None,
            )
        },
        "odometer_d2" => CatalogEntry {
            facts: ExpectedFacts {
                level_transitive: Some(true),
                fractal: Some((2, 2, false)),
                fixer_proportions: vec!["1/2", "1/4", "1/8", "1/16"],
                ..Default::default()
            },
            ..base("odometer_d2", "binary adding machine a = (a,1)σ", 2, Some(ODOMETER))
        },
        "chebyshev_d2" => CatalogEntry {
            polynomial: Some(X2M2),
            designation: &[("-2", "a"), ("2", "b"), ("inf", "b' a'")],
            facts: ExpectedFacts {
                level_transitive: Some(true),
                fractal: Some((2, 2, true)),
                super_strongly_fractal: Some((2, 2, false)),
                mixing: vec![((1, 1, 0), true), ((2, 2, 0), false), ((2, 2, 2), false)],
                fixer_proportions: vec!["1/2", "3/8", "5/16", "9/32", "17/64"],
                verdict: Some("ChebyshevLike"),
            },
            ..base(
                "chebyshev_d2",
                "a = (1,1)σ, b = (a,b); iterated monodromy group of x^2 - 2",
                2,
                Some(CHEBYSHEV_D2),
            )
        },
        "chebyshev_d3" => CatalogEntry {
            polynomial: Some(X3M3X),
            designation: &[("2", "a"), ("-2", "b"), ("inf", "b' a'")],
            facts: ExpectedFacts {
                level_transitive: Some(true),
                fixer_proportions: vec!["2/3", "5/9", "14/27", "41/81"],
                verdict: Some("ChebyshevLike"),
                ..Default::default()
            },
            ..base(
                "chebyshev_d3",
                "a = (1,1,a)(1 2), b = (b,1,1)(2 3); iterated monodromy group of x^3 - 3x",
                3,
                Some(CHEBYSHEV_D3),
            )
        },
        "basilica" => CatalogEntry {
            polynomial: Some(X2M1),
            designation: &[("-1", "a"), ("0", "b"), ("inf", "b' a'")],
            facts: ExpectedFacts {
                level_transitive: Some(true),
                mixing: vec![((1, 1, 0), true), ((1, 1, 4), true)],
                fixer_proportions: vec!["1/2", "3/8", "19/64", "1023/4096"],
                verdict: Some("ZeroFpp"),
                ..Default::default()
            },
            ..base(
                "basilica",
                "a = (b,1)σ, b = (a,1); iterated monodromy group of x^2 - 1",
                2,
                Some(BASILICA),
            )
        },
        "power_map_d2" => CatalogEntry {
            polynomial: Some(X2),
            designation: &[("0", "a"), ("inf", "a'")],
            facts: ExpectedFacts {
                level_transitive: Some(true),
                fixer_proportions: vec!["1/2", "1/4", "1/8", "1/16"],
                verdict: Some("ZeroFpp"),
                ..Default::default()
            },
            ..base(
                "power_map_d2",
                "a = (a,1)σ; iterated monodromy group of x^2 (the odometer)",
                2,
                Some(ODOMETER),
            )
        },
        "grigorchuk" => CatalogEntry {
            facts: ExpectedFacts {
                level_transitive: Some(true),
                fractal: Some((2, 2, true)),
                super_strongly_fractal: Some((2, 2, true)),
                mixing: vec![((1, 1, 0), true)],
                fixer_proportions: vec!["1/2", "3/8", "39/128", "1063/4096"],
                ..Default::default()
            },
            ..base(
                "grigorchuk",
                "first Grigorchuk group a = (1,1)σ, b = (a,c), c = (a,d), d = (1,b)",
                2,
                Some(GRIGORCHUK),
            )
        },
        "projection_invariant_example" => CatalogEntry {
            facts: ExpectedFacts {
                level_transitive: Some(true),
                fractal: Some((1, 1, true)),
                ..Default::default()
            },
            ..base(
                "projection_invariant_example",
                "H = <ba> inside <a = (1,1)σ, b = (a,b)>: r = ba = (a,b)σ with a, b auxiliary",
                2,
                Some(PROJECTION_INVARIANT),
            )
        },
        other => return Err(Error::UnknownEntry(other.to_string())),
    };
    Ok(entry)
}
