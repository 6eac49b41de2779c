//! On-disk cache of basis graphs, keyed by type and reflection order.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use log::{info, warn};
use oscox::matroid::{BasisGraph, ReflectionOrder};
use sha2::{Digest, Sha256};

pub const ENV_VAR: &str = "OSCOX_CACHE_DIR";

/// Flag, then `OSCOX_CACHE_DIR`, then `$XDG_CACHE_HOME/oscox`, then
/// `$HOME/.cache/oscox`.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    let env = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    env(ENV_VAR)
        .or_else(|| env("XDG_CACHE_HOME").map(|p| p.join("oscox")))
        .or_else(|| env("HOME").map(|p| p.join(".cache").join("oscox")))
}

pub fn key(type_name: &str, order: &ReflectionOrder) -> String {
    let mut h = Sha256::new();
    h.update(format!("{type_name}|{order}").as_bytes());
    hex::encode(h.finalize())
}

pub fn path_in(dir: &Path, type_name: &str, order: &ReflectionOrder) -> PathBuf {
    dir.join(format!("gamma-{}.bin", &key(type_name, order)[..32]))
}

/// A cached graph, if one exists and passes validation. Corrupt files are
/// reported and ignored.
pub fn load(path: &Path, type_name: &str, order: &ReflectionOrder) -> Option<BasisGraph> {
    let file = File::open(path).ok()?;
    match BasisGraph::read_from(BufReader::new(file)) {
        Ok(g) if g.type_name() == type_name && g.order() == order.as_permutation().as_slice() => {
            info!("loaded basis graph from {}", path.display());
            Some(g)
        }
        Ok(_) => {
            warn!("ignoring {}: built for a different type or order", path.display());
            None
        }
        Err(e) => {
            warn!("ignoring {}: {e}", path.display());
            None
        }
    }
}

/// Writes through a temporary file so readers never see a partial graph.
pub fn store(path: &Path, graph: &BasisGraph) -> oscox::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    {
        let mut out = BufWriter::new(File::create(&tmp)?);
        graph.write_to(&mut out)?;
        std::io::Write::flush(&mut out)?;
    }
    fs::rename(&tmp, path)?;
    info!("wrote basis graph to {}", path.display());
    Ok(())
}
