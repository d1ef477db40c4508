//! Very-ampleness of the dualizing sheaf, checked point by point.
//!
//! `ω` separates smooth points `p, q` iff `h0(ω(−p−q)) = g − 2`. At a node
//! the checks run on its one-node normalization `Y` with branches `r, s`,
//! where `ν*ω` has sections `h0(ν*ω(−r−s)) = g − 1`, and separating tangent
//! directions means `h0(ν*ω(−2r−s)) = h0(ν*ω(−r−2s)) = g − 2` and
//! `h0(ν*ω(−2r−2s)) = g − 3`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{PrimeField, Rng};
use crate::bundle::{EffectiveDivisor, LineBundle};
use crate::cohomology::h0_vanishing;
use crate::curve::{BinaryCurve, Component, CurvePoint, NodeSubset};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Two smooth points.
    Pair,
    /// Both branches of a node.
    Node,
    /// Double point on the `C1` branch of a node.
    TangentC1,
    /// Double point on the `C2` branch of a node.
    TangentC2,
    /// Double points on both branches.
    Tangent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VeryAmpleCheck {
    pub kind: CheckKind,
    pub detail: String,
    pub value: usize,
    pub expected: usize,
}

impl VeryAmpleCheck {
    pub fn ok(&self) -> bool {
        self.value == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VeryAmpleReport {
    pub g: i64,
    pub p: u64,
    pub hyperelliptic: bool,
    pub checks: Vec<VeryAmpleCheck>,
    pub failures: usize,
    /// All checks hold on a non-hyperelliptic curve, or some check fails on
    /// a hyperelliptic one.
    pub pass: bool,
}

fn random_smooth_point(x: &BinaryCurve<PrimeField>, rng: &mut Rng) -> CurvePoint<u64> {
    let side = if rng.below(2) == 0 { Component::C1 } else { Component::C2 };
    let pts = x.smooth_points(side).unwrap();
    CurvePoint { component: side, point: pts[rng.below(pts.len() as u64) as usize].clone() }
}

pub fn verify_canonical_very_ample(x: &Arc<BinaryCurve<PrimeField>>, rng: &mut Rng, trials: usize) -> Result<VeryAmpleReport> {
    let g = x.genus();
    if g < 3 {
        return Err(Error::Precondition(format!("needs genus >= 3, got {g}")));
    }
    let p = x.field().p();
    if p <= 2 * g as u64 {
        return Err(Error::FieldTooSmall(format!("tangent checks need p > 2g = {}, got p = {p}", 2 * g)));
    }
    let gu = g as usize;
    let hyperelliptic = x.is_hyperelliptic()?;
    let omega = LineBundle::canonical(x.clone())?;
    let mut checks = Vec::new();
    for _ in 0..trials {
        let a = random_smooth_point(x, rng);
        let b = loop {
            let b = random_smooth_point(x, rng);
            if b != a {
                break b;
            }
        };
        let value = h0_vanishing(&omega, &EffectiveDivisor::new([(a.clone(), 1), (b.clone(), 1)]))?;
        let detail = format!("{} {:?} + {} {:?}", a.component, a.point, b.component, b.point);
        checks.push(VeryAmpleCheck { kind: CheckKind::Pair, detail, value, expected: gu - 2 });
    }
    for j in 0..x.num_nodes() {
        let s = NodeSubset::single(j);
        let pulled = omega.restrict_to_normalization(&s)?;
        let n = &x.nodes()[j];
        let (r, t) = (CurvePoint::c1(n.p.clone()), CurvePoint::c2(n.q.clone()));
        for (kind, mr, mt, expected) in [
            (CheckKind::Node, 1, 1, gu - 1),
            (CheckKind::TangentC1, 2, 1, gu - 2),
            (CheckKind::TangentC2, 1, 2, gu - 2),
            (CheckKind::Tangent, 2, 2, gu - 3),
        ] {
            let d = EffectiveDivisor::new([(r.clone(), mr), (t.clone(), mt)]);
            let value = h0_vanishing(&pulled, &d)?;
            checks.push(VeryAmpleCheck { kind, detail: format!("node {j}"), value, expected });
        }
    }
    let failures = checks.iter().filter(|c| !c.ok()).count();
    let pass = if hyperelliptic { failures > 0 } else { failures == 0 };
    Ok(VeryAmpleReport { g, p, hyperelliptic, checks, failures, pass })
}
