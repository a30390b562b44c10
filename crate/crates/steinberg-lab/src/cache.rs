//! Optional on-disk cache of Steinberg bases.
//!
//! When `STEINBERG_LAB_CACHE` names a directory, [`load_steinberg`] looks
//! for a stored basis there. The cache is never written implicitly; use
//! [`export_steinberg`] to fill it. Stored rows are re-verified on load and
//! silently ignored when they fail.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;
use crate::steinberg::SteinbergModule;
use crate::subspace::Subspace;

pub const CACHE_ENV: &str = "STEINBERG_LAB_CACHE";

#[derive(Serialize, Deserialize)]
struct Stored {
    lo: Subspace,
    hi: Subspace,
    cycles: Vec<String>,
}

fn file_name(lo: &Subspace, hi: &Subspace) -> String {
    let join = |s: &Subspace| s.rows().iter().map(u32::to_string).collect::<Vec<_>>().join("_");
    format!("st-n{}-lo{}-hi{}.json", lo.ambient(), join(lo), join(hi))
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).filter(|p| p.is_dir())
}

/// Loads the module of `lo ⊆ hi` from the cache directory, if present and
/// valid.
#[must_use]
pub fn load_steinberg(lo: &Subspace, hi: &Subspace) -> Option<SteinbergModule> {
    let path = cache_dir()?.join(file_name(lo, hi));
    let text = std::fs::read_to_string(path).ok()?;
    let stored: Stored = serde_json::from_str(&text).ok()?;
    if &stored.lo != lo || &stored.hi != hi {
        return None;
    }
    let width = stored.cycles.first().map_or(0, String::len);
    let rows: Vec<Vec<u8>> = stored
        .cycles
        .iter()
        .map(|r| r.bytes().map(|b| u8::from(b == b'1')).collect())
        .collect();
    let m = GF2Matrix::from_bits(&rows, width).ok()?;
    SteinbergModule::from_cycles(lo, hi, &m).ok()
}

/// Writes `module` into `dir` in the format read by [`load_steinberg`].
///
/// # Errors
/// I/O or serialization failure.
pub fn export_steinberg(dir: &Path, module: &SteinbergModule) -> Result<PathBuf> {
    if !dir.is_dir() {
        return Err(Error::Invalid(format!("{} is not a directory", dir.display())));
    }
    let cycles = module
        .cycle_basis()
        .to_bits()
        .into_iter()
        .map(|r| r.into_iter().map(|b| if b == 1 { '1' } else { '0' }).collect())
        .collect();
    let stored = Stored {
        lo: module.lo().clone(),
        hi: module.hi().clone(),
        cycles,
    };
    let path = dir.join(file_name(module.lo(), module.hi()));
    std::fs::write(&path, serde_json::to_string(&stored)?)?;
    Ok(path)
}
