//! Shipped code assets: generator matrices, the Nordstrom-Robinson word
//! list, their weight enumerators, and independent verification of every
//! claim made about them.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::enumerator::{EnumeratorFile, WeightEnumerator};
use crate::error::{Error, Result};
use crate::word::{parse_generator_rows, Code};

pub const ASSETS_ENV: &str = "BWC_ASSETS";

/// `$BWC_ASSETS` if set, otherwise the assets shipped with this crate.
pub fn asset_dir() -> PathBuf {
    std::env::var_os(ASSETS_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/assets")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssetKind {
    /// Generator matrix rows; the code is their span.
    Generator,
    /// Explicit word list in the code text format.
    Words,
}

/// Claims about a shipped code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeAsset {
    pub name: String,
    pub file: String,
    pub kind: AssetKind,
    pub n: usize,
    pub size: usize,
    pub d: u32,
    pub enumerator: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub codes: Vec<CodeAsset>,
}

impl Manifest {
    pub fn load(dir: &Path) -> Result<Self> {
        let path = dir.join("codes").join("manifest.json");
        Ok(serde_json::from_str(&std::fs::read_to_string(&path)?)?)
    }

    pub fn get(&self, name: &str) -> Result<&CodeAsset> {
        self.codes
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::InvalidParameters(format!("no code asset named {name}")))
    }
}

/// Reads the code behind an asset entry.
pub fn load_code(dir: &Path, asset: &CodeAsset) -> Result<Code> {
    let text = std::fs::read_to_string(dir.join("codes").join(&asset.file))?;
    match asset.kind {
        AssetKind::Generator => {
            let (n, rows) = parse_generator_rows(&text)?;
            Code::span(n, &rows)
        }
        AssetKind::Words => Code::parse_text(&text),
    }
}

/// Reads `enumerators/<name>.json`.
pub fn load_enumerator(dir: &Path, name: &str) -> Result<WeightEnumerator> {
    EnumeratorFile::load(dir.join("enumerators").join(format!("{name}.json")))?.enumerator()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssetReport {
    pub name: String,
    pub n: usize,
    pub size: usize,
    pub d: u32,
    pub enumerator: Vec<u64>,
}

/// Recomputes length, size, minimum distance and weight distribution of the
/// code from its file and compares them with the claims.
pub fn verify_code_asset(dir: &Path, asset: &CodeAsset) -> Result<AssetReport> {
    let code = load_code(dir, asset)?;
    let enumerator = code.weight_enumerator().coeffs().to_vec();
    let d = match asset.kind {
        // linear: minimum distance is the minimum nonzero weight
        AssetKind::Generator => enumerator.iter().enumerate().skip(1).find(|(_, &a)| a > 0).map_or(code.length() as u32 + 1, |(i, _)| i as u32),
        AssetKind::Words => code.min_distance(),
    };
    let report = AssetReport { name: asset.name.clone(), n: code.length(), size: code.size(), d, enumerator };
    let mut problems = Vec::new();
    if report.n != asset.n {
        problems.push(format!("length {} != claimed {}", report.n, asset.n));
    }
    if report.size != asset.size {
        problems.push(format!("size {} != claimed {}", report.size, asset.size));
    }
    if report.d != asset.d {
        problems.push(format!("minimum distance {} != claimed {}", report.d, asset.d));
    }
    if report.enumerator != asset.enumerator {
        problems.push(format!("weight distribution {:?} != claimed {:?}", report.enumerator, asset.enumerator));
    }
    let enum_path = dir.join("enumerators").join(format!("{}.json", asset.name));
    if enum_path.exists() {
        let shipped = load_enumerator(dir, &asset.name)?;
        if shipped.coeffs() != report.enumerator.as_slice() {
            problems.push(format!("enumerator file {:?} disagrees with the code", shipped.coeffs()));
        }
    }
    if problems.is_empty() {
        Ok(report)
    } else {
        Err(Error::AssetMismatch { name: asset.name.clone(), reason: problems.join("; ") })
    }
}

/// Verifies every code in the manifest.
pub fn verify_all(dir: &Path) -> Result<Vec<AssetReport>> {
    let manifest = Manifest::load(dir)?;
    manifest.codes.iter().map(|a| verify_code_asset(dir, a)).collect()
}

/// Loads a code asset by name after verifying it.
pub fn verified_code(dir: &Path, name: &str) -> Result<(Code, AssetReport)> {
    let manifest = Manifest::load(dir)?;
    let asset = manifest.get(name)?;
    let report = verify_code_asset(dir, asset)?;
    Ok((load_code(dir, asset)?, report))
}
