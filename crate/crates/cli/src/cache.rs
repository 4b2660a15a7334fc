//! On-disk cache of fitted coefficients, keyed by system and library version.

use std::fs;
use std::path::{Path, PathBuf};

use bruhat_core::geocoeff::{fit_mu, GeometricCoefficients};
use bruhat_core::{Budget, RootSystemData};
use serde_json::Value;

use crate::codec;
use crate::error::{CliError, CliResult};

pub const CACHE_ENV: &str = "BRUHAT_CACHE_DIR";

/// The flag wins over the environment variable.
pub fn cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()).map(PathBuf::from))
}

pub fn cache_file(dir: &Path, data: &RootSystemData) -> PathBuf {
    dir.join(format!("{}-v{}.json", data.id(), bruhat_core::VERSION))
}

pub fn read_coefficients(path: &Path) -> CliResult<GeometricCoefficients> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    let bad = |reason: String| CliError::BadFile {
        path: path.into(),
        reason,
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    codec::parse_coefficients(&v).map_err(bad)
}

pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let io = |source| CliError::Io {
        path: path.into(),
        source,
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(io)?;
    }
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

/// Coefficients from an explicit file, else the cache, else a fresh fit
/// (stored in the cache when one is configured).
pub fn coefficients(
    data: &RootSystemData,
    file: Option<&Path>,
    dir: Option<&Path>,
    budget: &Budget,
) -> CliResult<GeometricCoefficients> {
    let check = |c: GeometricCoefficients| {
        if c.system == data.id() {
            Ok(c)
        } else {
            Err(CliError::Core(bruhat_core::Error::SystemMismatch {
                expected: data.id().to_string(),
                got: c.system.to_string(),
            }))
        }
    };
    if let Some(f) = file {
        return check(read_coefficients(f)?);
    }
    if let Some(d) = dir {
        let path = cache_file(d, data);
        if path.exists() {
            return check(read_coefficients(&path)?);
        }
        let c = fit_mu(data, budget)?;
        write_atomic(&path, &codec::to_pretty(&codec::coefficients(data, &c)))?;
        return Ok(c);
    }
    Ok(fit_mu(data, budget)?)
}
