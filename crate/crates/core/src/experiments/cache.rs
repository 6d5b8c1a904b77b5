//! On-disk cache of generated graphs, one file per `(params, kind, k)`.
//!
//! A file holds a JSON header line followed by the little-endian vertex keys; the header
//! records the key count and the SHA-256 of the key bytes. Anything that fails to
//! verify is treated as a miss and rebuilt.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::GraphKind;
use crate::error::{Error, Result};
use crate::fractal::{build_complete_lines_subgraph, build_level_graph, FractalParams, GraphBudget, LevelGraph};

pub const CACHE_DIR_ENV: &str = "FRACTALSEP_CACHE_DIR";

const FORMAT: u32 = 1;

#[derive(Serialize)]
struct CacheKey<'a> {
    format: u32,
    params: &'a FractalParams,
    kind: GraphKind,
    k: u32,
}

#[derive(Serialize, Deserialize)]
struct CacheHeader {
    n: usize,
    sha256: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphCache {
    dir: Option<PathBuf>,
}

impl GraphCache {
    pub fn disabled() -> Self {
        GraphCache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        GraphCache { dir: Some(dir.into()) }
    }

    /// Uses `$FRACTALSEP_CACHE_DIR` when set and non-empty.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Self::at(dir),
            _ => Self::disabled(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Content hash naming the cache entry.
    pub fn key(params: &FractalParams, kind: GraphKind, k: u32) -> String {
        let key = CacheKey {
            format: FORMAT,
            params,
            kind,
            k,
        };
        let json = serde_json::to_vec(&key).expect("cache keys serialize");
        hex::encode(Sha256::digest(json))
    }

    pub fn load_or_build(
        &self,
        params: &FractalParams,
        kind: GraphKind,
        k: u32,
        budget: GraphBudget,
    ) -> Result<LevelGraph> {
        let Some(dir) = &self.dir else {
            return build(params, kind, k, budget);
        };
        let path = dir.join(format!("{}.graph", Self::key(params, kind, k)));
        if let Some(g) = read_entry(&path, params, k) {
            if BigUint::from(g.n()) <= BigUint::from(budget.max_vertices) {
                return Ok(g);
            }
            return Err(Error::budget("cached graph vertices", g.n(), budget.max_vertices));
        }
        let g = build(params, kind, k, budget)?;
        write_entry(dir, &path, &g)?;
        Ok(g)
    }
}

pub(crate) fn build(params: &FractalParams, kind: GraphKind, k: u32, budget: GraphBudget) -> Result<LevelGraph> {
    match kind {
        GraphKind::Level => build_level_graph(params, k, budget),
        GraphKind::CompleteLines => build_complete_lines_subgraph(params, k, budget),
    }
}

fn read_entry(path: &Path, params: &FractalParams, k: u32) -> Option<LevelGraph> {
    let bytes = fs::read(path).ok()?;
    let split = bytes.iter().position(|&c| c == b'\n')?;
    let header: CacheHeader = serde_json::from_slice(&bytes[..split]).ok()?;
    let body = &bytes[split + 1..];
    if body.len() != header.n * 8 || hex::encode(Sha256::digest(body)) != header.sha256 {
        return None;
    }
    let keys = body
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().expect("chunks are 8 bytes")))
        .collect();
    LevelGraph::from_keys(params.clone(), k, keys).ok()
}

fn write_entry(dir: &Path, path: &Path, g: &LevelGraph) -> Result<()> {
    fs::create_dir_all(dir)?;
    let body: Vec<u8> = g.keys().iter().flat_map(|k| k.to_le_bytes()).collect();
    let header = CacheHeader {
        n: g.n(),
        sha256: hex::encode(Sha256::digest(&body)),
    };
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp)?;
    serde_json::to_writer(&mut f, &header)?;
    f.write_all(b"\n")?;
    f.write_all(&body)?;
    f.sync_all()?;
    fs::rename(&tmp, path)?;
    Ok(())
}
