//! Dimension estimates from point counts, and sampling of the Abel map.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{bn_enumerate_with, BnQuery, ScanOptions};
use crate::algebra::{PrimeField, Rationals, Rng};
use crate::bundle::{EffectiveDivisor, LineBundle, Multidegree};
use crate::cohomology::h0;
use crate::curve::{BinaryCurve, Component, CurvePoint};
use crate::error::{Error, Result};

/// Fits above this distance from an integer are inconclusive.
pub const RESIDUAL_TOLERANCE: f64 = 0.35;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DimValue {
    /// No rational point at any prime.
    Empty,
    /// Growth exponent of the counts.
    Fit { slope: f64, rounded: i64, residual: f64, inconclusive: bool },
    /// Fewer than two primes with a nonzero count: no exponent can be fitted.
    Sparse,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimEstimate {
    pub query: BnQuery,
    pub primes: Vec<u64>,
    pub counts: Vec<u64>,
    pub estimate: DimValue,
}

impl DimEstimate {
    /// The rounded dimension when the fit is conclusive; `Some(-1)` for empty.
    pub fn dimension(&self) -> Option<i64> {
        match self.estimate {
            DimValue::Empty => Some(-1),
            DimValue::Fit { rounded, inconclusive: false, .. } => Some(rounded),
            _ => None,
        }
    }
}

/// Least-squares slope of `log N` against `log p` over the nonzero counts.
pub fn fit_exponent(primes: &[u64], counts: &[u64]) -> DimValue {
    if counts.iter().all(|&n| n == 0) {
        return DimValue::Empty;
    }
    let pts: Vec<(f64, f64)> = primes
        .iter()
        .zip(counts)
        .filter(|(_, &n)| n > 0)
        .map(|(&p, &n)| ((p as f64).ln(), (n as f64).ln()))
        .collect();
    if pts.len() < 2 {
        return DimValue::Sparse;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let rounded = slope.round() as i64;
    let residual = (slope - rounded as f64).abs();
    DimValue::Fit { slope, rounded, residual, inconclusive: residual > RESIDUAL_TOLERANCE }
}

/// Reduce an integral curve modulo each prime and fit the growth of
/// `#W^r_md(F_p)`.
pub fn estimate_dim(x: &BinaryCurve<Rationals>, q: BnQuery, primes: &[u64], opts: ScanOptions) -> Result<DimEstimate> {
    if primes.len() < 2 {
        return Err(Error::Precondition("a dimension estimate needs at least two primes".into()));
    }
    let mut counts = Vec::with_capacity(primes.len());
    for &p in primes {
        let y = Arc::new(x.reduce_mod(&PrimeField::new(p)?)?);
        counts.push(bn_enumerate_with(&y, q, opts).count);
    }
    let estimate = fit_exponent(primes, &counts);
    Ok(DimEstimate { query: q, primes: primes.to_vec(), counts, estimate })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbelStats {
    pub md: Multidegree,
    pub trials: usize,
    pub h0_one: usize,
    pub fraction: f64,
}

/// Bundles `O(D)` for random effective divisors `D` of multidegree `md`,
/// tallying how often `h0 = 1`.
pub fn abel_sample(x: &Arc<BinaryCurve<PrimeField>>, md: Multidegree, rng: &mut Rng, trials: usize) -> Result<AbelStats> {
    let g = x.genus();
    if md.d1 < 0 || md.d2 < 0 || md.total() > g {
        return Err(Error::Precondition(format!("needs md >= 0 and degree <= g, got {md} on genus {g}")));
    }
    if trials == 0 {
        return Err(Error::Precondition("needs at least one trial".into()));
    }
    let smooth = [x.smooth_points(Component::C1).unwrap(), x.smooth_points(Component::C2).unwrap()];
    let mut h0_one = 0;
    for _ in 0..trials {
        let mut pts = Vec::new();
        for (side, n) in [(Component::C1, md.d1), (Component::C2, md.d2)] {
            let choices = &smooth[side as usize];
            for _ in 0..n {
                let pt = choices[rng.below(choices.len() as u64) as usize].clone();
                pts.push((CurvePoint { component: side, point: pt }, 1));
            }
        }
        let l = LineBundle::from_divisor(x.clone(), &EffectiveDivisor::new(pts))?;
        if h0(&l) == 1 {
            h0_one += 1;
        }
    }
    Ok(AbelStats { md, trials, h0_one, fraction: h0_one as f64 / trials as f64 })
}
