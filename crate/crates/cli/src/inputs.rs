use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::Args;
use serde::Serialize;

use arbor_core::catalog::{self, CatalogEntry};
use arbor_core::dynamics::{critical_data, CriticalData, PointDesignation, PolynomialDocument, PolynomialMap};
use arbor_core::group::{GroupSource, WreathPresentation};

fn read(path: &Path, flag: &str) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("{flag} {}", path.display()))
}

/// A group given by catalog name or presentation file.
#[derive(Args, Debug, Clone, Serialize)]
pub struct GroupInput {
    /// Catalog entry name (see `catalog list`).
    #[arg(long, conflicts_with = "pres", required_unless_present = "pres")]
    pub catalog: Option<String>,
    /// Wreath presentation JSON file.
    #[arg(long)]
    pub pres: Option<PathBuf>,
}

pub enum LoadedGroup {
    Presentation(WreathPresentation),
    Virtual(CatalogEntry),
}

impl GroupInput {
    pub fn load(&self) -> anyhow::Result<LoadedGroup> {
        if let Some(path) = &self.pres {
            let text = read(path, "--pres")?;
            let p = WreathPresentation::parse_json(&text).with_context(|| format!("--pres {}", path.display()))?;
            return Ok(LoadedGroup::Presentation(p));
        }
        let name = self.catalog.as_deref().ok_or_else(|| anyhow!("one of --catalog or --pres is required"))?;
        let entry = catalog::get(name).context("--catalog")?;
        Ok(match entry.presentation() {
            Some(p) => LoadedGroup::Presentation(p),
            None => LoadedGroup::Virtual(entry),
        })
    }

    pub fn source(&self) -> anyhow::Result<Box<dyn GroupSource>> {
        Ok(match self.load()? {
            LoadedGroup::Presentation(p) => Box::new(p),
            LoadedGroup::Virtual(e) => e.source(),
        })
    }

    pub fn presentation(&self) -> anyhow::Result<WreathPresentation> {
        match self.load()? {
            LoadedGroup::Presentation(p) => Ok(p),
            LoadedGroup::Virtual(e) => bail!("--catalog {}: not finitely presented; this command needs a wreath recursion", e.name),
        }
    }
}

/// A polynomial given by catalog name or polynomial file.
#[derive(Args, Debug, Clone, Serialize)]
pub struct PolyInput {
    /// Polynomial JSON file.
    #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
    pub poly: Option<PathBuf>,
    /// Catalog entry whose polynomial to use.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Maximum orbit steps per critical point before giving up on PCF.
    #[arg(long, default_value_t = arbor_core::dynamics::DEFAULT_PCF_BOUND)]
    pub pcf_bound: usize,
}

pub struct LoadedPoly {
    pub f: PolynomialMap,
    pub crit: CriticalData,
    pub entry: Option<CatalogEntry>,
}

impl PolyInput {
    pub fn load(&self) -> anyhow::Result<LoadedPoly> {
        let (doc, entry) = match (&self.poly, &self.catalog) {
            (Some(path), _) => {
                let text = read(path, "--poly")?;
                let doc = PolynomialDocument::parse(&text).with_context(|| format!("--poly {}", path.display()))?;
                (doc, None)
            }
            (None, Some(name)) => {
                let entry = catalog::get(name).context("--catalog")?;
                let text = entry
                    .polynomial_json()
                    .ok_or_else(|| anyhow!("--catalog {name}: entry has no polynomial"))?;
                (PolynomialDocument::parse(text)?, Some(entry))
            }
            (None, None) => bail!("one of --poly or --catalog is required"),
        };
        let f = doc.polynomial()?;
        let claimed = doc.claimed_critical_points(f.field())?;
        let crit = critical_data(&f, claimed.as_deref())?;
        Ok(LoadedPoly { f, crit, entry })
    }
}

/// Parses `POINT=WORD`.
pub fn parse_designation(s: &str) -> Result<PointDesignation, String> {
    let (point, word) = s
        .split_once('=')
        .ok_or_else(|| format!("expected POINT=WORD, got `{s}`"))?;
    Ok(PointDesignation {
        point: point.trim().to_string(),
        word: word.trim().to_string(),
    })
}
