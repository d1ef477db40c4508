//! Brill-Noether loci `W^r_md(X) = {L : h0(L) >= r + 1}` over prime
//! fields, found by scanning the whole torus of gluing vectors.

mod clifford;
mod estimate;
mod suite;
mod very_ample;
mod wbar;

pub use clifford::{clifford_index, clifford_zero_classification, has_cliff_zero_witness, CliffordReport, CliffordWitness, ZeroClassification};
pub use estimate::{abel_sample, estimate_dim, fit_exponent, AbelStats, DimEstimate, DimValue};
pub use suite::{bn_suite, SuiteConfig, SuiteReport, SuiteRow, Verdict};
pub use very_ample::{verify_canonical_very_ample, CheckKind, VeryAmpleCheck, VeryAmpleReport};
pub use wbar::{assemble_wbar, Ell0Row, StratumRow, WbarReport};

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::PrimeField;
use crate::bundle::{BundleTorus, Multidegree};
use crate::cohomology::SectionSystem;
use crate::curve::BinaryCurve;
use crate::error::{Error, Result};

pub const DEFAULT_WITNESS_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BnQuery {
    pub md: Multidegree,
    pub r: u32,
}

impl BnQuery {
    pub fn new(md: Multidegree, r: u32) -> Self {
        Self { md, r }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    /// Worker threads; 1 scans on the calling thread.
    pub jobs: usize,
    pub witness_cap: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { jobs: 1, witness_cap: DEFAULT_WITNESS_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnReport {
    pub query: BnQuery,
    pub p: u64,
    /// Number of classes in the torus.
    pub total: u64,
    pub count: u64,
    /// Gluing vectors of the first `witness_cap` members in scan order.
    pub witnesses: Vec<Vec<u64>>,
    pub witness_cap: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Below this many classes a scan stays on one thread.
const PARALLEL_THRESHOLD: u64 = 4096;

struct Shard {
    count: u64,
    witnesses: Vec<Vec<u64>>,
}

fn scan_range(torus: &BundleTorus, sys: &SectionSystem<PrimeField>, need: usize, cap: usize, range: std::ops::Range<u64>) -> Shard {
    let mut scratch = Vec::new();
    let mut shard = Shard { count: 0, witnesses: Vec::new() };
    for i in range {
        let c = torus.gluing_at(i);
        if sys.h0_with(&c, &mut scratch) >= need {
            shard.count += 1;
            if shard.witnesses.len() < cap {
                shard.witnesses.push(c);
            }
        }
    }
    shard
}

pub fn bn_enumerate(x: &Arc<BinaryCurve<PrimeField>>, q: BnQuery) -> BnReport {
    bn_enumerate_with(x, q, ScanOptions::default())
}

/// Exhaustive scan of `W^r_md`. Shards are merged in index order, so the
/// report does not depend on `jobs`.
pub fn bn_enumerate_with(x: &Arc<BinaryCurve<PrimeField>>, q: BnQuery, opts: ScanOptions) -> BnReport {
    let start = Instant::now();
    let torus = BundleTorus::new(x.clone(), q.md);
    let sys = SectionSystem::new(x, q.md);
    let need = q.r as usize + 1;
    let total = torus.count();
    let cap = opts.witness_cap;
    let shards: Vec<Shard> = if opts.jobs <= 1 || total < PARALLEL_THRESHOLD {
        vec![scan_range(&torus, &sys, need, cap, 0..total)]
    } else {
        let pieces = (opts.jobs as u64 * 8).min(total);
        let bounds: Vec<_> = (0..pieces).map(|k| (total * k / pieces, total * (k + 1) / pieces)).collect();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().expect("thread pool");
        pool.install(|| bounds.par_iter().map(|&(a, b)| scan_range(&torus, &sys, need, cap, a..b)).collect())
    };
    let mut count = 0;
    let mut witnesses = Vec::new();
    for s in shards {
        count += s.count;
        witnesses.extend(s.witnesses);
    }
    witnesses.truncate(cap);
    BnReport { query: q, p: x.field().p(), total, count, witnesses, witness_cap: cap, elapsed: start.elapsed() }
}

/// `ρ^r_d(g) = (r + 1) d − r g − (r + 1) r`.
pub fn rho(g: i64, d: i64, r: i64) -> i64 {
    (r + 1) * d - r * g - (r + 1) * r
}

/// The two emptiness criteria for balanced multidegrees, with `d1 <= d2`:
/// `d1 < 0, d <= g + r` or `0 <= d1 <= r − 1, d <= g + r − 1`.
pub fn predicted_empty(md: Multidegree, r: i64, g: i64) -> bool {
    let (d1, _) = md.sorted();
    let d = md.total();
    (d1 < 0 && d <= g + r) || (0 <= d1 && d1 <= r - 1 && d <= g + r - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum MartensBound {
    Empty,
    /// Dimension equal to the value.
    Exact(i64),
    /// Dimension at most the value.
    AtMost(i64),
}

/// Dimension of `W^r_md` for `2 <= d <= g − 1`, `0 < 2r <= d`: exactly
/// `d − 2r` on hyperelliptic curves, at most `d − 2r − 1` otherwise, and
/// empty when `r` exceeds a component degree.
pub fn martens_bound(g: i64, md: Multidegree, r: i64, hyperelliptic: bool) -> Result<MartensBound> {
    let d = md.total();
    if !(2 <= d && d <= g - 1) {
        return Err(Error::Precondition(format!("needs 2 <= d <= g - 1, got d = {d}, g = {g}")));
    }
    if !(0 < 2 * r && 2 * r <= d) {
        return Err(Error::Precondition(format!("needs 0 < 2r <= d, got r = {r}, d = {d}")));
    }
    Ok(if md.sorted().0 < r {
        MartensBound::Empty
    } else if hyperelliptic {
        MartensBound::Exact(d - 2 * r)
    } else {
        MartensBound::AtMost(d - 2 * r - 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rng;
    use crate::bundle::LineBundle;
    use crate::cohomology::h0;
    use crate::curve::{random_curve, random_curve_unmarked, random_hyperelliptic_curve};
    use crate::picard::balanced_set;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn md(a: i64, b: i64) -> Multidegree {
        Multidegree::new(a, b)
    }

    #[test]
    fn hyperelliptic_pencil_is_unique() {
        let mut rng = Rng::new(40);
        for g in [3, 4] {
            let x = Arc::new(random_hyperelliptic_curve(g, &fp(7), &mut rng).unwrap());
            let rep = bn_enumerate(&x, BnQuery::new(md(1, 1), 1));
            assert_eq!(rep.count, 1);
            let h = LineBundle::hyperelliptic_class(x.clone()).unwrap();
            assert_eq!(rep.witnesses, vec![h.gluing().to_vec()]);
        }
    }

    #[test]
    fn canonical_is_the_only_net_on_genus_three() {
        let mut rng = Rng::new(41);
        let x = Arc::new(random_curve(3, &fp(7), &mut rng).unwrap());
        let rep = bn_enumerate(&x, BnQuery::new(md(2, 2), 2));
        assert_eq!(rep.count, 1);
        assert_eq!(rep.witnesses[0], LineBundle::canonical(x).unwrap().gluing());
    }

    #[test]
    fn emptiness_examples() {
        assert!(predicted_empty(md(0, 3), 1, 3));
        assert!(predicted_empty(md(-1, 4), 1, 3));
        assert!(!predicted_empty(md(1, 2), 1, 3));
        assert!(predicted_empty(md(3, 0), 1, 3));
        let mut rng = Rng::new(42);
        let x = Arc::new(random_curve(3, &fp(7), &mut rng).unwrap());
        for r in 0..=2 {
            for d in -2..=6 {
                for m in balanced_set(d, 3) {
                    if predicted_empty(m, r, 3) {
                        assert_eq!(bn_enumerate(&x, BnQuery::new(m, r as u32)).count, 0, "{m} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn rho_values() {
        for g in 0..8 {
            for d in -2..12 {
                assert_eq!(rho(g, d, 0), d);
                assert_eq!(rho(g, d, 1), 2 * d - g - 2);
                assert_eq!(rho(g, d, 2), 3 * d - 2 * g - 6);
                for r in 0..4 {
                    assert_eq!(rho(g, d, r), g - (r + 1) * (g - d + r));
                }
            }
        }
    }

    #[test]
    fn parallel_scan_matches_serial() {
        let mut rng = Rng::new(43);
        let x = Arc::new(random_curve(4, &fp(11), &mut rng).unwrap());
        for (q, cap) in [(BnQuery::new(md(2, 2), 1), 64), (BnQuery::new(md(1, 2), 0), 5), (BnQuery::new(md(3, 3), 2), 0)] {
            let serial = bn_enumerate_with(&x, q, ScanOptions { jobs: 1, witness_cap: cap });
            for jobs in [2, 3, 8] {
                let par = bn_enumerate_with(&x, q, ScanOptions { jobs, witness_cap: cap });
                assert_eq!(par, BnReport { elapsed: par.elapsed, ..serial.clone() });
            }
            assert!(serial.witnesses.len() <= cap);
        }
    }

    #[test]
    fn counts_are_nested_and_match_duality() {
        let f = fp(7);
        let mut rng = Rng::new(44);
        for g in 1..=3 {
            let x = Arc::new(random_curve_unmarked(g, &f, &mut rng).unwrap());
            for d in 0..=2 * g - 2 {
                for m in balanced_set(d, g) {
                    let mut prev = u64::MAX;
                    for r in 0..4u32 {
                        let c = bn_enumerate(&x, BnQuery::new(m, r)).count;
                        assert!(c <= prev);
                        prev = c;
                        let dual_r = r as i64 + g - 1 - d;
                        if dual_r >= 0 {
                            let dual = bn_enumerate(&x, BnQuery::new(Multidegree::canonical(g) - m, dual_r as u32));
                            assert_eq!(c, dual.count, "g={g} {m} r={r}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn half_degree_sections_vanish_below_center() {
        let f = fp(7);
        let mut rng = Rng::new(45);
        for g in 2..=4 {
            let x = Arc::new(random_curve(g, &f, &mut rng).unwrap());
            for d in 0..=2 * g - 2 {
                for m in balanced_set(d, g) {
                    if 2 * m.d1 <= d - 2 {
                        let r = (d / 2) as u32;
                        assert_eq!(bn_enumerate(&x, BnQuery::new(m, r)).count, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn martens_values() {
        assert_eq!(martens_bound(5, md(2, 2), 1, true).unwrap(), MartensBound::Exact(2));
        assert_eq!(martens_bound(5, md(2, 2), 1, false).unwrap(), MartensBound::AtMost(1));
        assert_eq!(martens_bound(5, md(0, 3), 1, true).unwrap(), MartensBound::Empty);
        assert!(martens_bound(4, md(2, 2), 1, true).is_err());
        assert!(martens_bound(5, md(1, 1), 2, true).is_err());
        assert!(martens_bound(5, md(1, 0), 0, true).is_err());
    }

    #[test]
    fn genus_minus_one_has_one_class() {
        let f = fp(5);
        let x = Arc::new(random_curve_unmarked(-1, &f, &mut Rng::new(1)).unwrap());
        let rep = bn_enumerate(&x, BnQuery::new(md(1, 0), 1));
        assert_eq!((rep.total, rep.count), (1, 1));
        assert_eq!(h0(&LineBundle::new(x, md(1, 0), vec![]).unwrap()), 3);
    }
}
