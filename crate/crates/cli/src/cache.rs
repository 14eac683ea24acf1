//! Persistent cache of dense count tables.
//!
//! File layout (all integers big-endian):
//!
//! ```text
//! magic "ALDRCNT\0" | version u32 | entry count u64
//! per entry: frame length u64 | body | crc32(body) u32
//! body: kind u8 | a u64 | d u64 | variant u8 | len u64 | len x (byte length u32 | magnitude bytes)
//! ```
//!
//! Entries failing the checksum or the body parse are skipped with a warning.
//! On load a few entries are recomputed; a mismatch is a hard error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use alderlab_core::partition::{self, CongruenceSpec, GapSpec};
use alderlab_core::verifier::{CountProvider, VerifyError};
use alderlab_core::Variant;
use num_bigint::BigUint;
use thiserror::Error;

pub const MAGIC: &[u8; 8] = b"ALDRCNT\0";
pub const VERSION: u32 = 1;
/// Environment variable naming the cache file.
pub const CACHE_ENV: &str = "ALDERLAB_CACHE";
/// Audits recompute stored tables up to this `n`.
const AUDIT_LIMIT: usize = 1500;
const AUDIT_SAMPLES: usize = 3;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cache audit failed: stored {key} differs from a fresh computation at n = {n}")]
    AuditFailed { key: CacheKey, n: usize },
    #[error("cache audit could not recompute {key}: {message}")]
    AuditUnavailable { key: CacheKey, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CountKind {
    Gap,
    Congruence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CacheKey {
    pub kind: CountKind,
    pub a: u64,
    pub d: u64,
    pub variant: Variant,
}

impl std::fmt::Display for CacheKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            CountKind::Gap => write!(f, "q(a={}, d={})", self.a, self.d),
            CountKind::Congruence => write!(f, "Q(a={}, d={}, {})", self.a, self.d, self.variant),
        }
    }
}

impl CacheKey {
    pub fn gap(spec: &GapSpec) -> Self {
        Self {
            kind: CountKind::Gap,
            a: spec.a,
            d: spec.d,
            variant: Variant::Full,
        }
    }

    pub fn congruence(spec: &CongruenceSpec) -> Self {
        Self {
            kind: CountKind::Congruence,
            a: spec.a,
            d: spec.d,
            variant: spec.variant,
        }
    }

    fn compute(&self, n_max: u64) -> Result<Vec<BigUint>, String> {
        match self.kind {
            CountKind::Gap => {
                let spec = GapSpec::new(self.a, self.d).map_err(|e| e.to_string())?;
                Ok(partition::gap_counts(&spec, n_max))
            }
            CountKind::Congruence => {
                let spec = CongruenceSpec::new(self.a, self.d, self.variant).map_err(|e| e.to_string())?;
                Ok(partition::congruence_counts(&spec, n_max))
            }
        }
    }
}

/// Default location: `$ALDERLAB_CACHE`, else `$XDG_CACHE_HOME/alderlab/counts.bin`,
/// else `$HOME/.cache/alderlab/counts.bin`.
pub fn default_path() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os(CACHE_ENV) {
        return Some(PathBuf::from(p));
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("alderlab").join("counts.bin"))
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct CountCache {
    pub entries: BTreeMap<CacheKey, Vec<BigUint>>,
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Option<&'a [u8]> {
        let end = self.pos.checked_add(k)?;
        let out = self.buf.get(self.pos..end)?;
        self.pos = end;
        Some(out)
    }

    fn u8(&mut self) -> Option<u8> {
        self.take(1).map(|b| b[0])
    }

    fn u32(&mut self) -> Option<u32> {
        self.take(4).map(|b| u32::from_be_bytes(b.try_into().unwrap()))
    }

    fn u64(&mut self) -> Option<u64> {
        self.take(8).map(|b| u64::from_be_bytes(b.try_into().unwrap()))
    }

    fn done(&self) -> bool {
        self.pos == self.buf.len()
    }
}

fn parse_body(body: &[u8]) -> Option<(CacheKey, Vec<BigUint>)> {
    let mut r = Reader { buf: body, pos: 0 };
    let kind = match r.u8()? {
        0 => CountKind::Gap,
        1 => CountKind::Congruence,
        _ => return None,
    };
    let a = r.u64()?;
    let d = r.u64()?;
    let variant = match r.u8()? {
        0 => Variant::Full,
        1 => Variant::ExcludeCoResidue,
        _ => return None,
    };
    let len = r.u64()? as usize;
    // Each value takes at least four bytes, which bounds a corrupt length.
    if len > body.len() / 4 {
        return None;
    }
    let mut values = Vec::with_capacity(len);
    for _ in 0..len {
        let k = r.u32()? as usize;
        values.push(BigUint::from_bytes_be(r.take(k)?));
    }
    r.done().then_some((CacheKey { kind, a, d, variant }, values))
}

fn encode_body(key: &CacheKey, values: &[BigUint]) -> Vec<u8> {
    let mut out = Vec::new();
    out.push(match key.kind {
        CountKind::Gap => 0,
        CountKind::Congruence => 1,
    });
    out.extend_from_slice(&key.a.to_be_bytes());
    out.extend_from_slice(&key.d.to_be_bytes());
    out.push(match key.variant {
        Variant::Full => 0,
        Variant::ExcludeCoResidue => 1,
    });
    out.extend_from_slice(&(values.len() as u64).to_be_bytes());
    for v in values {
        let bytes = if v.bits() == 0 { Vec::new() } else { v.to_bytes_be() };
        out.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
        out.extend_from_slice(&bytes);
    }
    out
}

impl CountCache {
    /// Decodes a cache image. Returns the cache and one warning per skipped
    /// entry or unreadable header.
    pub fn decode(bytes: &[u8]) -> (Self, Vec<String>) {
        let mut cache = CountCache::default();
        let mut warnings = Vec::new();
        let mut r = Reader { buf: bytes, pos: 0 };
        if r.take(8) != Some(&MAGIC[..]) {
            warnings.push("cache header not recognised; ignoring file".into());
            return (cache, warnings);
        }
        match r.u32() {
            Some(VERSION) => {}
            other => {
                warnings.push(format!("cache version {other:?} not supported; ignoring file"));
                return (cache, warnings);
            }
        }
        let Some(count) = r.u64() else {
            warnings.push("cache header truncated; ignoring file".into());
            return (cache, warnings);
        };
        for i in 0..count {
            let Some(frame) = r.u64().and_then(|len| r.take(len as usize)) else {
                warnings.push(format!("cache entry {i} truncated; ignoring the rest of the file"));
                break;
            };
            if frame.len() < 4 {
                warnings.push(format!("cache entry {i} too short; skipped"));
                continue;
            }
            let (body, crc) = frame.split_at(frame.len() - 4);
            if crc32fast::hash(body).to_be_bytes() != crc {
                warnings.push(format!("cache entry {i} fails its checksum; skipped"));
                continue;
            }
            match parse_body(body) {
                Some((key, values)) => {
                    cache.entries.insert(key, values);
                }
                None => warnings.push(format!("cache entry {i} malformed; skipped")),
            }
        }
        (cache, warnings)
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_be_bytes());
        out.extend_from_slice(&(self.entries.len() as u64).to_be_bytes());
        for (key, values) in &self.entries {
            let body = encode_body(key, values);
            out.extend_from_slice(&(body.len() as u64 + 4).to_be_bytes());
            out.extend_from_slice(&body);
            out.extend_from_slice(&crc32fast::hash(&body).to_be_bytes());
        }
        out
    }

    /// Recomputes the first, middle and last entries (in key order) up to
    /// `AUDIT_LIMIT` and compares them with the stored values.
    pub fn audit(&self) -> Result<(), CacheError> {
        let keys: Vec<&CacheKey> = self.entries.keys().collect();
        let mut picks: Vec<usize> = match keys.len() {
            0 => vec![],
            k => vec![0, k / 2, k - 1],
        };
        picks.dedup();
        for &i in picks.iter().take(AUDIT_SAMPLES) {
            let key = keys[i];
            let stored = &self.entries[key];
            let upto = stored.len().min(AUDIT_LIMIT + 1);
            if upto == 0 {
                continue;
            }
            let fresh = key
                .compute(upto as u64 - 1)
                .map_err(|message| CacheError::AuditUnavailable { key: *key, message })?;
            if let Some(n) = (0..upto).find(|&n| stored[n] != fresh[n]) {
                return Err(CacheError::AuditFailed { key: *key, n });
            }
        }
        Ok(())
    }

    /// Reads and audits the cache at `path`. A missing file gives an empty cache.
    pub fn load(path: &Path) -> Result<(Self, Vec<String>), CacheError> {
        let bytes = match fs::read(path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok((Self::default(), Vec::new())),
            Err(source) => {
                return Err(CacheError::Io {
                    path: path.to_path_buf(),
                    source,
                })
            }
        };
        let (cache, warnings) = Self::decode(&bytes);
        cache.audit()?;
        Ok((cache, warnings))
    }

    /// Writes to a temporary file next to `path`, then renames it into place.
    pub fn save(&self, path: &Path) -> Result<(), CacheError> {
        let io = |source| CacheError::Io {
            path: path.to_path_buf(),
            source,
        };
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        fs::create_dir_all(dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        tmp.write_all(&self.encode()).map_err(io)?;
        tmp.persist(path).map_err(|e| io(e.error))?;
        Ok(())
    }
}

/// [`CountProvider`] backed by a [`CountCache`]; missing or short tables are
/// computed directly and stored.
#[derive(Debug, Default)]
pub struct CachedCounts {
    inner: Mutex<CountCache>,
    dirty: Mutex<bool>,
}

impl CachedCounts {
    pub fn new(cache: CountCache) -> Self {
        Self {
            inner: Mutex::new(cache),
            dirty: Mutex::new(false),
        }
    }

    pub fn is_dirty(&self) -> bool {
        *self.dirty.lock().unwrap()
    }

    pub fn into_cache(self) -> CountCache {
        self.inner.into_inner().unwrap()
    }

    fn get(&self, key: CacheKey, n_max: u64) -> Result<Vec<BigUint>, VerifyError> {
        let want = n_max as usize + 1;
        if let Some(v) = self.inner.lock().unwrap().entries.get(&key) {
            if v.len() >= want {
                return Ok(v[..want].to_vec());
            }
        }
        let fresh = key.compute(n_max).map_err(VerifyError::Source)?;
        let mut inner = self.inner.lock().unwrap();
        let slot = inner.entries.entry(key).or_default();
        if slot.len() < fresh.len() {
            *slot = fresh.clone();
            *self.dirty.lock().unwrap() = true;
        }
        Ok(fresh)
    }
}

impl CountProvider for CachedCounts {
    fn gap_counts(&self, spec: &GapSpec, n_max: u64) -> Result<Vec<BigUint>, VerifyError> {
        self.get(CacheKey::gap(spec), n_max)
    }

    fn congruence_counts(&self, spec: &CongruenceSpec, n_max: u64) -> Result<Vec<BigUint>, VerifyError> {
        self.get(CacheKey::congruence(spec), n_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CountCache {
        let provider = CachedCounts::default();
        provider.gap_counts(&GapSpec::new(2, 10).unwrap(), 80).unwrap();
        provider.congruence_counts(&CongruenceSpec::full(1, 7).unwrap(), 300).unwrap();
        provider
            .congruence_counts(&CongruenceSpec::new(2, 9, Variant::ExcludeCoResidue).unwrap(), 50)
            .unwrap();
        provider.into_cache()
    }

    #[test]
    fn round_trip() {
        let cache = sample();
        let (back, warnings) = CountCache::decode(&cache.encode());
        assert!(warnings.is_empty());
        assert_eq!(back, cache);
        back.audit().unwrap();
    }

    #[test]
    fn corrupt_entry_is_skipped() {
        let cache = sample();
        let mut bytes = cache.encode();
        // Flip a byte inside the first entry body.
        bytes[8 + 4 + 8 + 8 + 3] ^= 0xff;
        let (back, warnings) = CountCache::decode(&bytes);
        assert_eq!(warnings.len(), 1);
        assert_eq!(back.entries.len(), cache.entries.len() - 1);
    }

    #[test]
    fn truncated_file_keeps_earlier_entries() {
        let cache = sample();
        let bytes = cache.encode();
        let (back, warnings) = CountCache::decode(&bytes[..bytes.len() - 10]);
        assert_eq!(warnings.len(), 1);
        assert_eq!(back.entries.len(), cache.entries.len() - 1);
    }

    #[test]
    fn audit_catches_wrong_values() {
        let mut cache = sample();
        let first = cache.entries.values_mut().next().unwrap();
        first[5] += 1u8;
        assert!(matches!(cache.audit(), Err(CacheError::AuditFailed { n: 5, .. })));
    }

    #[test]
    fn provider_extends_short_tables() {
        let provider = CachedCounts::default();
        let spec = GapSpec::new(1, 5).unwrap();
        let short = provider.gap_counts(&spec, 10).unwrap();
        let long = provider.gap_counts(&spec, 40).unwrap();
        assert_eq!(&long[..11], &short[..]);
        assert_eq!(provider.gap_counts(&spec, 20).unwrap(), long[..21].to_vec());
        assert!(provider.is_dirty());
    }
}
