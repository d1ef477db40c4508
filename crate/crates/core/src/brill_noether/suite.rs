//! Sampling test of the Brill-Noether emptiness and existence statements
//! for `r <= 2` on random curves.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{bn_enumerate_with, rho, BnQuery, ScanOptions};
use crate::algebra::{PrimeField, Rng};
use crate::bundle::Multidegree;
use crate::curve::{random_curve, random_curve_unmarked, BinaryCurve};
use crate::error::{Error, Result};
use crate::picard::balanced_set;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub g: i64,
    pub r: u32,
    pub primes: Vec<u64>,
    pub n_curves: usize,
    pub seed: u64,
    pub d_min: i64,
    pub d_max: i64,
    /// Required fraction of curves with empty locus when `ρ < 0`.
    pub empty_threshold: f64,
    /// Required fraction of curves with a nonempty locus when `ρ >= 1`.
    pub nonempty_threshold: f64,
}

impl SuiteConfig {
    pub fn new(g: i64, r: u32, primes: Vec<u64>, n_curves: usize, seed: u64) -> Self {
        Self {
            g,
            r,
            primes,
            n_curves,
            seed,
            d_min: 0,
            d_max: 2 * g - 2,
            empty_threshold: 0.9,
            nonempty_threshold: 0.8,
        }
    }

    /// The curves sampled at prime `p`, reproducible from the seed.
    pub fn curves(&self, p: u64) -> Result<Vec<Arc<BinaryCurve<PrimeField>>>> {
        let f = PrimeField::new(p)?;
        let mut rng = Rng::new(self.seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        (0..self.n_curves)
            .map(|_| {
                let x = if p >= self.g as u64 + 3 && self.g >= 2 {
                    random_curve(self.g, &f, &mut rng)?
                } else {
                    random_curve_unmarked(self.g, &f, &mut rng)?
                };
                Ok(Arc::new(x))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// `ρ = 0`: rational points need not exist, so no verdict is drawn.
    Report,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub p: u64,
    pub d: i64,
    /// `None` for rows aggregating all balanced multidegrees of degree `d`.
    pub md: Option<Multidegree>,
    pub rho: i64,
    /// Curves behaving as predicted (empty for `ρ < 0`, nonempty for `ρ >= 1`).
    pub hits: usize,
    pub curves: usize,
    pub fraction: f64,
    pub counts: Vec<u64>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub rows: Vec<SuiteRow>,
    pub pass: bool,
}

pub fn bn_suite(config: &SuiteConfig, opts: ScanOptions) -> Result<SuiteReport> {
    if config.r > 2 {
        return Err(Error::Precondition("verdicts are only defined for r <= 2".into()));
    }
    if config.n_curves == 0 {
        return Err(Error::Precondition("needs at least one curve".into()));
    }
    let (g, r) = (config.g, config.r);
    let mut rows = Vec::new();
    for &p in &config.primes {
        let curves = config.curves(p)?;
        for d in config.d_min..=config.d_max {
            let rho = rho(g, d, r as i64);
            let mds = balanced_set(d, g);
            let counts: Vec<Vec<u64>> = mds
                .iter()
                .map(|md| curves.iter().map(|x| bn_enumerate_with(x, BnQuery::new(*md, r), opts).count).collect())
                .collect();
            let n = curves.len();
            if rho >= 1 {
                let hits = (0..n).filter(|&i| counts.iter().any(|c| c[i] > 0)).count();
                let fraction = hits as f64 / n as f64;
                let per_curve = (0..n).map(|i| counts.iter().map(|c| c[i]).sum()).collect();
                let verdict = if fraction >= config.nonempty_threshold { Verdict::Pass } else { Verdict::Fail };
                rows.push(SuiteRow { p, d, md: None, rho, hits, curves: n, fraction, counts: per_curve, verdict });
                continue;
            }
            for (md, c) in mds.iter().zip(counts) {
                let hits = c.iter().filter(|&&k| k == 0).count();
                let fraction = hits as f64 / n as f64;
                let verdict = if rho == 0 {
                    Verdict::Report
                } else if fraction >= config.empty_threshold {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                };
                rows.push(SuiteRow { p, d, md: Some(*md), rho, hits, curves: n, fraction, counts: c, verdict });
            }
        }
    }
    let pass = rows.iter().all(|row| row.verdict != Verdict::Fail);
    Ok(SuiteReport { config: config.clone(), rows, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_three_pencils() {
        let mut cfg = SuiteConfig::new(3, 1, vec![7], 10, 5);
        cfg.d_min = 2;
        cfg.d_max = 3;
        let rep = bn_suite(&cfg, ScanOptions::default()).unwrap();
        let d3: Vec<_> = rep.rows.iter().filter(|r| r.d == 3).collect();
        assert_eq!(d3.len(), 1);
        assert_eq!(d3[0].rho, 1);
        assert!(rep.rows.iter().filter(|r| r.d == 2).all(|r| r.rho == -1 && r.md.is_some()));
        assert_eq!(d3[0].verdict, Verdict::Pass, "{rep:?}");
        for row in rep.rows.iter().filter(|r| r.md.is_some_and(|m| m.d1 != m.d2)) {
            assert_eq!(row.fraction, 1.0);
        }
    }

    #[test]
    fn canonical_net_reported_not_judged() {
        let mut cfg = SuiteConfig::new(3, 2, vec![7], 5, 9);
        cfg.d_min = 4;
        cfg.d_max = 4;
        let rep = bn_suite(&cfg, ScanOptions::default()).unwrap();
        let row = rep.rows.iter().find(|r| r.md == Some(Multidegree::new(2, 2))).unwrap();
        assert_eq!(row.verdict, Verdict::Report);
        assert_eq!(row.counts, vec![1; 5]);
    }

    #[test]
    fn curves_are_reproducible() {
        let cfg = SuiteConfig::new(4, 1, vec![11], 3, 77);
        let a: Vec<_> = cfg.curves(11).unwrap().iter().map(|x| (**x).clone()).collect();
        let b: Vec<_> = cfg.curves(11).unwrap().iter().map(|x| (**x).clone()).collect();
        assert_eq!(a, b);
        assert!(bn_suite(&SuiteConfig::new(4, 3, vec![11], 3, 1), ScanOptions::default()).is_err());
    }
}
