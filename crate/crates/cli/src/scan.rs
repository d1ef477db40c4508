//! Brill-Noether scans backed by the on-disk cache.

use std::sync::Arc;

use bincurve_core::algebra::{Field, PrimeField};
use bincurve_core::brill_noether::{bn_enumerate_with, BnQuery, ScanOptions};
use bincurve_core::curve::BinaryCurve;
use bincurve_core::json::curve_to_json;
use serde::Serialize;

use crate::cache::{cache_key, Cache, CacheEntry};
use crate::cli::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanSource {
    Cache,
    Computed,
}

/// Result of re-running a scan that was requested with `--audit`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub p: u64,
    pub key: String,
    pub cache_hit: bool,
    pub cached_count: Option<u64>,
    pub recomputed_count: u64,
    pub mismatch: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    pub count: u64,
    pub witnesses: Vec<Vec<u64>>,
    pub source: ScanSource,
    pub audit: Option<Audit>,
}

/// Serve `q` from the cache when possible. With `audit`, every scan is
/// recomputed; a disagreeing entry is flagged and superseded by a fresh line.
pub fn cached_scan(
    x: &Arc<BinaryCurve<PrimeField>>,
    q: BnQuery,
    opts: ScanOptions,
    mut cache: Option<&mut Cache>,
    audit: bool,
) -> Result<ScanResult, UsageError> {
    let key = cache_key(&curve_to_json(x), &x.field().ctx(), q);
    let cap = opts.witness_cap;
    let hit = cache.as_deref().and_then(|c| c.get(&key)).filter(|e| e.serves(cap)).cloned();
    let store = |cache: Option<&mut Cache>, count: u64, witnesses: &[Vec<u64>]| -> Result<(), UsageError> {
        if let Some(c) = cache {
            let entry = CacheEntry {
                key: key.clone(),
                count,
                witnesses: witnesses.to_vec(),
                witness_cap: cap,
                version: bincurve_core::VERSION.into(),
            };
            c.append(entry).map_err(|e| UsageError(format!("writing cache: {e}")))?;
        }
        Ok(())
    };
    let short = &key[..12];
    match hit {
        Some(e) if !audit => {
            eprintln!("bincurve: cache hit {short}");
            let witnesses = e.witnesses.into_iter().take(cap).collect();
            Ok(ScanResult { count: e.count, witnesses, source: ScanSource::Cache, audit: None })
        }
        hit => {
            let rep = bn_enumerate_with(x, q, opts);
            let audit = audit.then(|| {
                let mismatch = hit.as_ref().is_some_and(|e| {
                    let cached: Vec<_> = e.witnesses.iter().take(cap).cloned().collect();
                    e.count != rep.count || cached != rep.witnesses
                });
                Audit {
                    p: x.field().p(),
                    key: key.clone(),
                    cache_hit: hit.is_some(),
                    cached_count: hit.as_ref().map(|e| e.count),
                    recomputed_count: rep.count,
                    mismatch,
                }
            });
            if audit.as_ref().is_some_and(|a| a.mismatch) {
                eprintln!("bincurve: cache entry {short} disagrees with recomputation");
            }
            if hit.is_none() || audit.as_ref().is_some_and(|a| a.mismatch) {
                store(cache.as_deref_mut(), rep.count, &rep.witnesses)?;
            }
            eprintln!("bincurve: computed {short}");
            Ok(ScanResult { count: rep.count, witnesses: rep.witnesses, source: ScanSource::Computed, audit })
        }
    }
}
