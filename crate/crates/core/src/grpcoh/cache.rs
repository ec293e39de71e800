use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::resolution::ALGORITHM_VERSION;
use super::{FiniteGroup, FreeResolution, GrpcohError, SelectionOrder};
use crate::exactla::IntMatrix;

const FORMAT: &str = "ecomu3-resolution";
const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct ResolutionFile {
    format: String,
    version: u32,
    algorithm: String,
    group_hash: String,
    group_order: usize,
    length: usize,
    selection: SelectionOrder,
    ranks: Vec<usize>,
    augmentation: IntMatrix,
    boundaries: Vec<IntMatrix>,
}

/// How a resolution request was served.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheInfo {
    pub key: String,
    pub path: Option<PathBuf>,
    pub hit: bool,
    /// SHA-256 of the serialized resolution content.
    pub content_hash: String,
}

/// Content-addressed on-disk store of resolutions. `dir = None` disables persistence.
#[derive(Clone, Debug, Default)]
pub struct ResolutionCache {
    dir: Option<PathBuf>,
}

pub fn cache_key(group: &FiniteGroup, length: usize, order: SelectionOrder) -> String {
    let mut h = Sha256::new();
    h.update(format!("{}|{}|{}|{:?}", group.content_hash(), length, ALGORITHM_VERSION, order));
    hex::encode(h.finalize())
}

impl ResolutionCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        ResolutionCache { dir }
    }

    pub fn disabled() -> Self {
        Self::default()
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// Loads a verified resolution from disk, or computes and stores it.
    pub fn resolve(
        &self,
        group: &Arc<FiniteGroup>,
        length: usize,
        order: SelectionOrder,
    ) -> Result<(FreeResolution, CacheInfo), GrpcohError> {
        let key = cache_key(group, length, order);
        let path = self.path_for(&key);
        if let Some(p) = &path {
            if p.exists() {
                let text = fs::read_to_string(p).map_err(|e| GrpcohError::Cache(e.to_string()))?;
                let res = decode(group, &text, length)?;
                let info = CacheInfo { key, path: path.clone(), hit: true, content_hash: sha256_hex(&text) };
                return Ok((res, info));
            }
        }
        let res = FreeResolution::compute(group.clone(), length, order)?;
        let text = encode(&res);
        if let Some(p) = &path {
            write_atomic(p, &text)?;
        }
        let info = CacheInfo { key, path, hit: false, content_hash: sha256_hex(&text) };
        Ok((res, info))
    }
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn encode(res: &FreeResolution) -> String {
    let file = ResolutionFile {
        format: FORMAT.into(),
        version: FORMAT_VERSION,
        algorithm: ALGORITHM_VERSION.into(),
        group_hash: res.group.content_hash(),
        group_order: res.group.order(),
        length: res.length(),
        selection: res.order,
        ranks: res.ranks.clone(),
        augmentation: res.augmentation.clone(),
        boundaries: res.boundaries.clone(),
    };
    serde_json::to_string(&file).expect("resolution serializes")
}

/// Parses and re-verifies a stored resolution.
pub fn decode(group: &Arc<FiniteGroup>, text: &str, length: usize) -> Result<FreeResolution, GrpcohError> {
    let f: ResolutionFile = serde_json::from_str(text).map_err(|e| GrpcohError::Cache(e.to_string()))?;
    if f.format != FORMAT || f.version != FORMAT_VERSION || f.algorithm != ALGORITHM_VERSION {
        return Err(GrpcohError::Cache(format!("unsupported cache format {} v{} ({})", f.format, f.version, f.algorithm)));
    }
    if f.group_hash != group.content_hash() || f.length != length {
        return Err(GrpcohError::Cache("cache entry does not match the requested group or length".into()));
    }
    let n = group.order();
    // nested arrays lose the column count of row-less matrices
    let boundaries = f
        .boundaries
        .into_iter()
        .enumerate()
        .map(|(i, b)| if b.rows() == 0 { IntMatrix::zeros(0, n * f.ranks[i + 1]) } else { b })
        .collect();
    let res = FreeResolution {
        group: group.clone(),
        ranks: f.ranks,
        boundaries,
        augmentation: f.augmentation,
        order: f.selection,
    };
    res.verify()?;
    Ok(res)
}

fn write_atomic(path: &Path, text: &str) -> Result<(), GrpcohError> {
    let err = |e: std::io::Error| GrpcohError::Cache(format!("{}: {e}", path.display()));
    let dir = path.parent().expect("cache path has a parent");
    fs::create_dir_all(dir).map_err(err)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(text.as_bytes()).map_err(err)?;
    tmp.as_file().sync_all().map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpcoh::symmetric_group;

    #[test]
    fn roundtrip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResolutionCache::new(Some(dir.path().to_path_buf()));
        let g = Arc::new(symmetric_group(3));
        let (a, ia) = cache.resolve(&g, 4, SelectionOrder::Forward).unwrap();
        assert!(!ia.hit);
        let (b, ib) = cache.resolve(&g, 4, SelectionOrder::Forward).unwrap();
        assert!(ib.hit);
        assert_eq!(ia.content_hash, ib.content_hash);
        assert_eq!(a.boundaries, b.boundaries);
        assert_eq!(a.ranks, b.ranks);
    }

    #[test]
    fn corrupted_entry_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResolutionCache::new(Some(dir.path().to_path_buf()));
        let g = Arc::new(symmetric_group(2));
        let (_, info) = cache.resolve(&g, 3, SelectionOrder::Forward).unwrap();
        let path = info.path.unwrap();
        let text = fs::read_to_string(&path).unwrap().replacen("[[1,1]]", "[[1,2]]", 1);
        fs::write(&path, text).unwrap();
        assert!(cache.resolve(&g, 3, SelectionOrder::Forward).is_err());
    }
}
