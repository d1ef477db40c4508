//! Balanced multidegrees and the stratification of the compactified
//! Picard scheme of a binary curve.
//!
//! A boundary point is a pair `[M, S]`: a node subset `S` and a bundle `M`
//! on the normalization `Y_S` at `S` of total degree `d − #S`. Sections on
//! the blow-up agree with sections of `M` on `Y_S`, so everything is
//! computed on `Y_S`.

use num_integer::Integer;
use num_rational::Rational64;

use crate::algebra::Field;
use crate::bundle::{LineBundle, Multidegree};
use crate::cohomology;
use crate::curve::{BinaryCurve, NodeSubset};
use crate::error::{Error, Result};

/// Bounds `m = (d − g − 1)/2 <= d_i <= M = (d + g + 1)/2` for balanced
/// multidegrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BalancedBounds {
    pub m: Rational64,
    pub big_m: Rational64,
}

impl BalancedBounds {
    pub fn new(d: i64, g: i64) -> Self {
        Self { m: Rational64::new(d - g - 1, 2), big_m: Rational64::new(d + g + 1, 2) }
    }

    /// Smallest and largest integer degrees allowed (`None` if none fit).
    pub fn integer_range(&self) -> Option<(i64, i64)> {
        let lo = self.m.ceil().to_integer();
        let hi = self.big_m.floor().to_integer();
        (lo <= hi).then_some((lo, hi))
    }
}

pub fn bounds(d: i64, g: i64) -> BalancedBounds {
    BalancedBounds::new(d, g)
}

pub fn is_balanced(md: Multidegree, g: i64) -> bool {
    let b = bounds(md.total(), g);
    let (d1, d2) = (Rational64::from(md.d1), Rational64::from(md.d2));
    b.m <= d1 && b.m <= d2 && d1 <= b.big_m && d2 <= b.big_m
}

pub fn is_strictly_balanced(md: Multidegree, g: i64) -> bool {
    let b = bounds(md.total(), g);
    let (d1, d2) = (Rational64::from(md.d1), Rational64::from(md.d2));
    b.m < d1 && b.m < d2 && d1 < b.big_m && d2 < b.big_m
}

/// `B_d(g)` in ascending `d1`.
pub fn balanced_set(d: i64, g: i64) -> Vec<Multidegree> {
    match bounds(d, g).integer_range() {
        None => Vec::new(),
        Some((lo, hi)) => (lo..=hi).map(|d1| Multidegree::new(d1, d - d1)).filter(|md| is_balanced(*md, g)).collect(),
    }
}

/// `B*_d(g)` in ascending `d1`.
pub fn strict_set(d: i64, g: i64) -> Vec<Multidegree> {
    balanced_set(d, g).into_iter().filter(|md| is_strictly_balanced(*md, g)).collect()
}

/// Balancedness on the blow-up at `e` nodes of a genus-`g` curve: `dhat`
/// lists `d1, d2` followed by the `e` degrees on the exceptional lines.
pub fn is_balanced_blowup(dhat: &[i64], g: i64) -> bool {
    let [d1, d2, exceptional @ ..] = dhat else {
        return false;
    };
    let e = exceptional.len() as i64;
    e <= g + 1 && exceptional.iter().all(|&x| x == 1) && is_balanced(Multidegree::new(*d1, *d2), g - e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PicardType {
    /// `m(d, g)` is not an integer: every orbit is separated.
    Neron,
    /// `m(d, g)` is an integer: the non-strict orbits collapse to `ℓ₀`.
    Degeneration,
}

pub fn picard_type(d: i64, g: i64) -> PicardType {
    if (d - g - 1).is_even() {
        PicardType::Degeneration
    } else {
        PicardType::Neron
    }
}

/// Index of a torus stratum: node subset and multidegree on `Y_S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StratumKey {
    pub s: NodeSubset,
    pub md: Multidegree,
}

impl StratumKey {
    pub fn e(&self) -> usize {
        self.s.len()
    }

    /// Dimension `g − e` of the stratum on a genus-`g` curve.
    pub fn dim(&self, g: i64) -> i64 {
        g - self.e() as i64
    }
}

/// The point `ℓ₀` into which all non-strict orbits are identified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ell0 {
    pub d: i64,
    pub g: i64,
}

impl Ell0 {
    pub fn new(d: i64, g: i64) -> Result<Self> {
        match picard_type(d, g) {
            PicardType::Degeneration => Ok(Self { d, g }),
            PicardType::Neron => Err(Error::Precondition(format!("no special point for d = {d}, g = {g}"))),
        }
    }

    pub fn m(&self) -> i64 {
        (self.d - self.g - 1) / 2
    }

    /// Its sections: those of `O(m)` on each component.
    pub fn h0(&self) -> usize {
        2 * (self.m() + 1).max(0) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StratumEntry {
    Stratum(StratumKey),
    Ell0(Ell0),
}

/// All strata of the degree-`d` compactified Picard scheme, by increasing
/// `e`, node subsets in lexicographic order, multidegrees ascending; `ℓ₀`
/// last for the degeneration type.
pub fn enumerate_strata<F: Field>(x: &BinaryCurve<F>, d: i64) -> Result<Vec<StratumEntry>> {
    let g = x.genus();
    if g < 2 {
        return Err(Error::Precondition(format!("strata need genus >= 2, got {g}")));
    }
    let ty = picard_type(d, g);
    let max_e = match ty {
        PicardType::Neron => g,
        PicardType::Degeneration => g - 1,
    };
    let mut out = Vec::new();
    for e in 0..=max_e {
        let (de, ge) = (d - e, g - e);
        let mds = match ty {
            PicardType::Neron => balanced_set(de, ge),
            PicardType::Degeneration => strict_set(de, ge),
        };
        for s in NodeSubset::all_of_size(x.num_nodes(), e as usize) {
            for md in &mds {
                out.push(StratumEntry::Stratum(StratumKey { s: s.clone(), md: *md }));
            }
        }
    }
    if ty == PicardType::Degeneration {
        out.push(StratumEntry::Ell0(Ell0 { d, g }));
    }
    Ok(out)
}

/// Whether stratum `b` lies in the closure of stratum `a`.
pub fn closure_leq(a: &StratumKey, b: &StratumKey) -> bool {
    a.s.is_subset(&b.s) && a.md.dominates(&b.md)
}

/// A point of the compactified Picard scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PicardPoint<F: Field> {
    /// `[M, S]` with `M` living on `Y_S`.
    Boundary { s: NodeSubset, bundle: LineBundle<F> },
    Ell0(Ell0),
}

impl<F: Field> PicardPoint<F> {
    pub fn h0(&self) -> usize {
        h0_bar(self)
    }
}

pub fn h0_bar<F: Field>(pt: &PicardPoint<F>) -> usize {
    match pt {
        PicardPoint::Boundary { bundle, .. } => cohomology::h0(bundle),
        PicardPoint::Ell0(l) => l.h0(),
    }
}
