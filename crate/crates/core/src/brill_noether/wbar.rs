//! `W̄^r` in the compactified Picard scheme, stratum by stratum.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{bn_enumerate_with, BnQuery, ScanOptions};
use crate::algebra::PrimeField;
use crate::bundle::Multidegree;
use crate::curve::BinaryCurve;
use crate::error::{Error, Result};
use crate::picard::{closure_leq, enumerate_strata, StratumEntry, StratumKey};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRow {
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub md: Multidegree,
    pub dim: i64,
    pub total: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ell0Row {
    pub h0: usize,
    pub in_wbar: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WbarReport {
    pub d: i64,
    pub r: u32,
    pub p: u64,
    pub strata: Vec<StratumRow>,
    pub ell0: Option<Ell0Row>,
    /// `closure_leq` restricted to the emitted keys is a partial order.
    pub order_consistent: bool,
}

impl WbarReport {
    pub fn is_empty(&self) -> bool {
        self.strata.iter().all(|s| s.count == 0) && !self.ell0.as_ref().is_some_and(|e| e.in_wbar)
    }
}

fn is_partial_order(keys: &[StratumKey]) -> bool {
    for a in keys {
        if !closure_leq(a, a) {
            return false;
        }
        for b in keys {
            if a != b && closure_leq(a, b) && closure_leq(b, a) {
                return false;
            }
            if closure_leq(a, b) && keys.iter().any(|c| closure_leq(b, c) && !closure_leq(a, c)) {
                return false;
            }
        }
    }
    true
}

/// Count `W^r` on every stratum `Y_S`; only valid for `d <= r + g − 1`,
/// where the closure of `W^r_d` is the union of these loci.
pub fn assemble_wbar(x: &Arc<BinaryCurve<PrimeField>>, d: i64, r: u32, opts: ScanOptions) -> Result<WbarReport> {
    let g = x.genus();
    if d > r as i64 + g - 1 {
        return Err(Error::Precondition(format!(
            "stratified description needs d <= r + g - 1, got d = {d}, r = {r}, g = {g}"
        )));
    }
    let entries = enumerate_strata(x.as_ref(), d)?;
    let mut strata = Vec::new();
    let mut keys = Vec::new();
    let mut ell0 = None;
    for entry in entries {
        match entry {
            StratumEntry::Stratum(key) => {
                let (y, _) = x.normalize_at(&key.s)?;
                let rep = bn_enumerate_with(&Arc::new(y), BnQuery::new(key.md, r), opts);
                strata.push(StratumRow {
                    s: key.s.indices().to_vec(),
                    md: key.md,
                    dim: key.dim(g),
                    total: rep.total,
                    count: rep.count,
                });
                keys.push(key);
            }
            StratumEntry::Ell0(l) => {
                let h0 = l.h0();
                ell0 = Some(Ell0Row { h0, in_wbar: h0 > r as usize });
            }
        }
    }
    Ok(WbarReport { d, r, p: x.field().p(), strata, ell0, order_consistent: is_partial_order(&keys) })
}
