//! JSON formats for curves, bundles and strata.
//!
//! Field elements are decimal strings (`"n/d"` for non-integral
//! rationals). A point is a homogeneous pair `[a, b]`, written `[a, "1"]`
//! for finite points and `["1", "0"]` at infinity; a node is
//! `[[a, b], [a, b]]` with the `C1` branch first.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, FieldCtx, PrimeField, Rationals};
use crate::bundle::{LineBundle, Multidegree};
use crate::curve::{BinaryCurve, Node, ProjPoint};
use crate::error::{Error, Result};
use crate::picard::{enumerate_strata, is_strictly_balanced, StratumEntry};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CurveJson {
    field: FieldCtx,
    nodes: Vec<[[String; 2]; 2]>,
}

/// A curve over whichever field its JSON names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyCurve {
    Fp(BinaryCurve<PrimeField>),
    Q(BinaryCurve<Rationals>),
}

impl AnyCurve {
    pub fn field(&self) -> FieldCtx {
        match self {
            AnyCurve::Fp(x) => x.field().ctx(),
            AnyCurve::Q(x) => x.field().ctx(),
        }
    }

    pub fn genus(&self) -> i64 {
        match self {
            AnyCurve::Fp(x) => x.genus(),
            AnyCurve::Q(x) => x.genus(),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            AnyCurve::Fp(x) => curve_to_json(x),
            AnyCurve::Q(x) => curve_to_json(x),
        }
    }
}

fn point_to_json<F: Field>(f: &F, pt: &ProjPoint<F::Elem>) -> [String; 2] {
    let (a, b) = pt.rep(f);
    [f.format_elem(&a), f.format_elem(&b)]
}

fn point_from_json<F: Field>(f: &F, pair: &[String; 2]) -> Result<ProjPoint<F::Elem>> {
    let a = f.parse_elem(&pair[0])?;
    let b = f.parse_elem(&pair[1])?;
    ProjPoint::from_homogeneous(f, &a, &b).ok_or_else(|| Error::Parse(format!("[{}, {}] is not a point", pair[0], pair[1])))
}

pub fn curve_to_json<F: Field>(x: &BinaryCurve<F>) -> String {
    let f = x.field();
    let doc = CurveJson {
        field: f.ctx(),
        nodes: x.nodes().iter().map(|n| [point_to_json(f, &n.p), point_to_json(f, &n.q)]).collect(),
    };
    serde_json::to_string(&doc).expect("curve JSON")
}

fn curve_from_doc<F: Field>(f: F, doc: &CurveJson) -> Result<BinaryCurve<F>> {
    let nodes = doc
        .nodes
        .iter()
        .map(|[p, q]| Ok(Node { p: point_from_json(&f, p)?, q: point_from_json(&f, q)? }))
        .collect::<Result<Vec<_>>>()?;
    BinaryCurve::new(f, nodes)
}

pub fn parse_curve(s: &str) -> Result<AnyCurve> {
    let doc: CurveJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    match doc.field {
        FieldCtx::PrimeField { p } => Ok(AnyCurve::Fp(curve_from_doc(PrimeField::new(p)?, &doc)?)),
        FieldCtx::Rationals => Ok(AnyCurve::Q(curve_from_doc(Rationals, &doc)?)),
    }
}

/// Parse a curve that must live over `F_p`.
pub fn parse_curve_fp(s: &str) -> Result<BinaryCurve<PrimeField>> {
    match parse_curve(s)? {
        AnyCurve::Fp(x) => Ok(x),
        AnyCurve::Q(_) => Err(Error::NotPrimeField),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Plain(String),
    /// `[a, b]` meaning `a / b`.
    Ratio([String; 2]),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct BundleJson {
    md: [i64; 2],
    c: Vec<Scalar>,
}

pub fn bundle_to_json<F: Field>(l: &LineBundle<F>) -> String {
    let f = l.field();
    let doc = BundleJson {
        md: [l.md().d1, l.md().d2],
        c: l.gluing().iter().map(|c| Scalar::Plain(f.format_elem(c))).collect(),
    };
    serde_json::to_string(&doc).expect("bundle JSON")
}

pub fn parse_bundle<F: Field>(curve: Arc<BinaryCurve<F>>, s: &str) -> Result<LineBundle<F>> {
    let doc: BundleJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let f = curve.field().clone();
    let gluing = doc
        .c
        .iter()
        .map(|c| match c {
            Scalar::Plain(a) => f.parse_elem(a),
            Scalar::Ratio([a, b]) => {
                f.div(&f.parse_elem(a)?, &f.parse_elem(b)?).ok_or_else(|| Error::Parse(format!("{a}/{b}: zero denominator")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    LineBundle::new(curve, Multidegree::new(doc.md[0], doc.md[1]), gluing).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StratumJson {
    Stratum {
        #[serde(rename = "S")]
        s: Vec<usize>,
        md: [i64; 2],
        dim: i64,
        strict: bool,
    },
    Ell0 {
        ell0: bool,
    },
}

pub fn strata_json<F: Field>(x: &BinaryCurve<F>, d: i64) -> Result<Vec<StratumJson>> {
    let g = x.genus();
    Ok(enumerate_strata(x, d)?
        .into_iter()
        .map(|entry| match entry {
            StratumEntry::Stratum(k) => StratumJson::Stratum {
                s: k.s.indices().to_vec(),
                md: [k.md.d1, k.md.d2],
                dim: k.dim(g),
                strict: is_strictly_balanced(k.md, g - k.e() as i64),
            },
            StratumEntry::Ell0(_) => StratumJson::Ell0 { ell0: true },
        })
        .collect())
}
