//! Line bundles on a binary curve.
//!
//! A bundle of multidegree `(d1, d2)` is the pair `(O(d1), O(d2))` on the
//! two components glued at each node by a nonzero scalar: a global section
//! is a pair of homogeneous forms `(f, h)` of degrees `d1, d2` with
//! `f(p_j) = c_j · h(q_j)`, evaluated at the fixed representatives `(a, 1)`
//! and `(1, 0)`. Rescaling either form rescales every `c_j` by one common
//! factor, so classes are gluing vectors modulo a global scalar; the
//! canonical representative has its last coordinate equal to 1.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, PrimeField};
use crate::cohomology;
use crate::curve::{BinaryCurve, Component, CurvePoint, MoebiusMap, NodeSubset, ProjPoint};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Multidegree {
    pub d1: i64,
    pub d2: i64,
}

impl Multidegree {
    pub const fn new(d1: i64, d2: i64) -> Self {
        Self { d1, d2 }
    }

    pub fn total(&self) -> i64 {
        self.d1 + self.d2
    }

    pub fn on(&self, side: Component) -> i64 {
        match side {
            Component::C1 => self.d1,
            Component::C2 => self.d2,
        }
    }

    /// `(min, max)` of the two degrees.
    pub fn sorted(&self) -> (i64, i64) {
        (self.d1.min(self.d2), self.d1.max(self.d2))
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.d2, self.d1)
    }

    pub fn scale(&self, n: i64) -> Self {
        Self::new(self.d1 * n, self.d2 * n)
    }

    /// Componentwise `>=`.
    pub fn dominates(&self, other: &Self) -> bool {
        self.d1 >= other.d1 && self.d2 >= other.d2
    }

    /// Multidegree of the dualizing sheaf on a genus-`g` binary curve.
    pub fn canonical(g: i64) -> Self {
        Self::new(g - 1, g - 1)
    }
}

impl Add for Multidegree {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Multidegree {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Neg for Multidegree {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.d1, -self.d2)
    }
}

impl std::fmt::Display for Multidegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

/// Effective divisor: points with positive multiplicities, kept sorted
/// with repeated points merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EffectiveDivisor<E: Ord> {
    points: Vec<(CurvePoint<E>, u32)>,
}

impl<E: Ord + Clone> EffectiveDivisor<E> {
    pub fn new(points: impl IntoIterator<Item = (CurvePoint<E>, u32)>) -> Self {
        let mut merged: BTreeMap<CurvePoint<E>, u32> = BTreeMap::new();
        for (pt, m) in points {
            if m > 0 {
                *merged.entry(pt).or_default() += m;
            }
        }
        Self { points: merged.into_iter().collect() }
    }

    pub fn zero() -> Self {
        Self { points: Vec::new() }
    }

    pub fn point(pt: CurvePoint<E>) -> Self {
        Self::new([(pt, 1)])
    }

    pub fn points(&self) -> &[(CurvePoint<E>, u32)] {
        &self.points
    }

    pub fn is_zero(&self) -> bool {
        self.points.is_empty()
    }

    pub fn multidegree(&self) -> Multidegree {
        let mut md = Multidegree::new(0, 0);
        for (pt, m) in &self.points {
            match pt.component {
                Component::C1 => md.d1 += *m as i64,
                Component::C2 => md.d2 += *m as i64,
            }
        }
        md
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self::new(self.points.iter().chain(&other.points).cloned())
    }
}

/// The linear form `b·x − a·y` vanishing at `(a : b)`, evaluated at the
/// representative of `at`.
pub(crate) fn linear_form<F: Field>(f: &F, root: &ProjPoint<F::Elem>, at: &ProjPoint<F::Elem>) -> F::Elem {
    let (a, b) = root.rep(f);
    let (x, y) = at.rep(f);
    f.sub(&f.mul(&b, &x), &f.mul(&a, &y))
}

#[derive(Debug, Clone)]
pub struct LineBundle<F: Field> {
    curve: Arc<BinaryCurve<F>>,
    md: Multidegree,
    gluing: Vec<F::Elem>,
}

impl<F: Field> PartialEq for LineBundle<F> {
    fn eq(&self, other: &Self) -> bool {
        same_curve(&self.curve, &other.curve) && self.md == other.md && self.gluing == other.gluing
    }
}

impl<F: Field> Eq for LineBundle<F> {}

fn same_curve<F: Field>(a: &Arc<BinaryCurve<F>>, b: &Arc<BinaryCurve<F>>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<F: Field> LineBundle<F> {
    /// Bundle with the given gluing, brought to canonical form.
    pub fn new(curve: Arc<BinaryCurve<F>>, md: Multidegree, gluing: Vec<F::Elem>) -> Result<Self> {
        if gluing.len() != curve.num_nodes() {
            return Err(Error::Precondition(format!(
                "gluing vector has {} entries for {} nodes",
                gluing.len(),
                curve.num_nodes()
            )));
        }
        let f = curve.field();
        if gluing.iter().any(|c| f.is_zero(c)) {
            return Err(Error::Precondition("gluing scalars must be nonzero".into()));
        }
        let gluing = canonical_gluing(f, gluing);
        Ok(Self { curve, md, gluing })
    }

    pub fn trivial(curve: Arc<BinaryCurve<F>>) -> Self {
        let gluing = vec![curve.field().one(); curve.num_nodes()];
        Self { curve, md: Multidegree::new(0, 0), gluing }
    }

    pub fn curve(&self) -> &Arc<BinaryCurve<F>> {
        &self.curve
    }

    pub fn field(&self) -> &F {
        self.curve.field()
    }

    pub fn md(&self) -> Multidegree {
        self.md
    }

    pub fn degree(&self) -> i64 {
        self.md.total()
    }

    /// Canonical gluing vector (last coordinate 1).
    pub fn gluing(&self) -> &[F::Elem] {
        &self.gluing
    }

    fn check_same_curve(&self, other: &Self) -> Result<()> {
        if same_curve(&self.curve, &other.curve) {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_same_curve(other)?;
        let f = self.field();
        let gluing = self.gluing.iter().zip(&other.gluing).map(|(a, b)| f.mul(a, b)).collect();
        Self::new(self.curve.clone(), self.md + other.md, gluing)
    }

    pub fn dual(&self) -> Self {
        let f = self.field();
        let gluing = self.gluing.iter().map(|c| f.inv(c).unwrap()).collect();
        Self::new(self.curve.clone(), -self.md, gluing).unwrap()
    }

    /// `L^{⊗n}`, negative `n` allowed.
    pub fn power(&self, n: i64) -> Self {
        let f = self.field();
        let gluing = self.gluing.iter().map(|c| f.powi(c, n).unwrap()).collect();
        Self::new(self.curve.clone(), self.md.scale(n), gluing).unwrap()
    }

    /// Multiply every gluing scalar by a unit; the class does not change.
    pub fn scale(&self, lambda: &F::Elem) -> Result<Self> {
        let f = self.field();
        if f.is_zero(lambda) {
            return Err(Error::Precondition("scale factor must be a unit".into()));
        }
        // canonicalization happens in `new`; keep the raw product here
        let gluing: Vec<_> = self.gluing.iter().map(|c| f.mul(c, lambda)).collect();
        Ok(Self { curve: self.curve.clone(), md: self.md, gluing })
            .map(|raw| Self::new(raw.curve, raw.md, raw.gluing).unwrap())
    }

    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        self.check_same_curve(other)?;
        Ok(self.md == other.md && self.gluing == other.gluing)
    }

    /// `O_X(D)` for an effective divisor supported away from the nodes.
    pub fn from_divisor(curve: Arc<BinaryCurve<F>>, d: &EffectiveDivisor<F::Elem>) -> Result<Self> {
        let f = curve.field().clone();
        for (pt, _) in d.points() {
            if curve.node_at(pt).is_some() {
                return Err(Error::PointOnNode(format!("{} {:?}", pt.component, pt.point)));
            }
        }
        // the section (A, B) with A, B the products of linear forms over D
        let eval = |side: Component, at: &ProjPoint<F::Elem>| {
            d.points()
                .iter()
                .filter(|(pt, _)| pt.component == side)
                .fold(f.one(), |acc, (pt, m)| f.mul(&acc, &f.pow(&linear_form(&f, &pt.point, at), *m as u64)))
        };
        let gluing = curve
            .nodes()
            .iter()
            .map(|n| f.div(&eval(Component::C1, &n.p), &eval(Component::C2, &n.q)).unwrap())
            .collect();
        Self::new(curve.clone(), d.multidegree(), gluing)
    }

    /// The dualizing sheaf. Sections on `C_i` are the forms
    /// `F (x dy − y dx) / ∏ ℓ_k` with residues summing to zero at each node;
    /// the residue at `p_j` is `−F(p_j) / ∏_{k≠j} ℓ_k(p_j)`, giving the
    /// gluing `c_j = −∏_{k≠j} ℓ_{p_k}(p_j) / ∏_{k≠j} ℓ_{q_k}(q_j)`.
    pub fn canonical(curve: Arc<BinaryCurve<F>>) -> Result<Self> {
        let g = curve.genus();
        if g < 0 {
            return Err(Error::Precondition("the dualizing sheaf needs a connected curve".into()));
        }
        let f = curve.field().clone();
        let nodes = curve.nodes();
        let prod_except = |j: usize, side: Component| {
            (0..nodes.len()).filter(|&k| k != j).fold(f.one(), |acc, k| {
                f.mul(&acc, &linear_form(&f, curve.branch(k, side), curve.branch(j, side)))
            })
        };
        let gluing = (0..nodes.len())
            .map(|j| f.neg(&f.div(&prod_except(j, Component::C1), &prod_except(j, Component::C2)).unwrap()))
            .collect();
        let omega = Self::new(curve.clone(), Multidegree::canonical(g), gluing)?;
        let h0 = cohomology::h0(&omega);
        if h0 as i64 != g {
            return Err(Error::Postcondition(format!("h0(omega) = {h0}, expected {g}")));
        }
        Ok(omega)
    }

    /// The hyperelliptic class `H_X`: pullback of `O(1)` under the double
    /// cover equal to the identity on `C1` and `ψ^{-1}` on `C2`.
    pub fn hyperelliptic_class(curve: Arc<BinaryCurve<F>>) -> Result<Self> {
        let psi = curve.hyperelliptic_involution()?.ok_or(Error::NotHyperelliptic)?;
        let back = psi.inverse();
        let f = curve.field();
        let gluing = curve.nodes().iter().map(|n| f.inv(&back.rep_scale(&n.q)).unwrap()).collect();
        let h = Self::new(curve.clone(), Multidegree::new(1, 1), gluing)?;
        let h0 = cohomology::h0(&h);
        if h0 != 2 {
            return Err(Error::Postcondition(format!("h0(H_X) = {h0}, expected 2")));
        }
        Ok(h)
    }

    /// Pullback to the normalization at `s`.
    pub fn restrict_to_normalization(&self, s: &NodeSubset) -> Result<Self> {
        let (y, _) = self.curve.normalize_at(s)?;
        let gluing = self
            .gluing
            .iter()
            .enumerate()
            .filter(|(j, _)| !s.contains(*j))
            .map(|(_, c)| c.clone())
            .collect();
        Self::new(Arc::new(y), self.md, gluing)
    }

    /// The same bundle after re-coordinatizing one component by `phi`.
    pub fn transform_component(&self, side: Component, phi: &MoebiusMap<F>) -> Self {
        let f = self.field();
        let y = Arc::new(self.curve.transform_component(side, phi));
        let gluing = self
            .curve
            .nodes()
            .iter()
            .zip(&self.gluing)
            .map(|(n, c)| match side {
                Component::C1 => f.mul(c, &f.powi(&phi.rep_scale(&n.p), -self.md.d1).unwrap()),
                Component::C2 => f.mul(c, &f.powi(&phi.rep_scale(&n.q), self.md.d2).unwrap()),
            })
            .collect();
        Self::new(y, self.md, gluing).unwrap()
    }
}

fn canonical_gluing<F: Field>(f: &F, mut gluing: Vec<F::Elem>) -> Vec<F::Elem> {
    if let Some(last) = gluing.last() {
        let li = f.inv(last).expect("gluing scalars are units");
        for c in gluing.iter_mut() {
            *c = f.mul(c, &li);
        }
    }
    gluing
}

/// The torus `Pic^{md}(X) ≅ (F_p^*)^g`, indexed so that index order is
/// lexicographic order of canonical gluing vectors.
#[derive(Debug, Clone)]
pub struct BundleTorus {
    curve: Arc<BinaryCurve<PrimeField>>,
    md: Multidegree,
    free: usize,
    count: u64,
}

impl BundleTorus {
    pub fn new(curve: Arc<BinaryCurve<PrimeField>>, md: Multidegree) -> Self {
        let free = curve.num_nodes().saturating_sub(1);
        let count = (curve.field().p() - 1).pow(free as u32);
        Self { curve, md, free, count }
    }

    pub fn curve(&self) -> &Arc<BinaryCurve<PrimeField>> {
        &self.curve
    }

    pub fn md(&self) -> Multidegree {
        self.md
    }

    /// Number of isomorphism classes, `(p − 1)^g` (1 for `g <= 0`).
    pub fn count(&self) -> u64 {
        self.count
    }

    /// Canonical gluing vector of the class with the given index.
    pub fn gluing_at(&self, index: u64) -> Vec<u64> {
        let base = self.curve.field().p() - 1;
        let mut out = vec![1u64; self.curve.num_nodes()];
        let mut rest = index;
        for j in (0..self.free).rev() {
            out[j] = rest % base + 1;
            rest /= base;
        }
        out
    }

    pub fn bundle_at(&self, index: u64) -> LineBundle<PrimeField> {
        LineBundle { curve: self.curve.clone(), md: self.md, gluing: self.gluing_at(index) }
    }

    /// Index of a canonical gluing vector.
    pub fn index_of(&self, gluing: &[u64]) -> u64 {
        let base = self.curve.field().p() - 1;
        gluing[..self.free].iter().fold(0, |acc, c| acc * base + (c - 1))
    }

    pub fn iter(&self) -> impl Iterator<Item = LineBundle<PrimeField>> + '_ {
        (0..self.count).map(|i| self.bundle_at(i))
    }
}

/// Every class of the given multidegree, each exactly once.
pub fn enumerate_bundles(curve: Arc<BinaryCurve<PrimeField>>, md: Multidegree) -> BundleTorus {
    BundleTorus::new(curve, md)
}
