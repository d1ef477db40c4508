//! Global sections of line bundles on binary curves.
//!
//! `h0` is the nullity of the gluing matrix: row `j` is
//! `[E_{d1}(p_j) | −c_j E_{d2}(q_j)]` where `E_d(pt)` lists the monomials
//! `x^i y^{d−i}` at the representative of `pt`. Vanishing to order `m` at a
//! smooth point adds the first `m` Hasse derivatives at that point.

use std::sync::Arc;

use crate::algebra::{poly, rank_in_place, Field, Matrix};
use crate::bundle::{EffectiveDivisor, LineBundle, Multidegree};
use crate::curve::{BinaryCurve, Component, CurvePoint, Node, NodeSubset, ProjPoint};
use crate::error::{Error, Result};

/// Number of coefficients of a degree-`d` binary form (0 for `d < 0`).
pub fn form_len(d: i64) -> usize {
    (d + 1).max(0) as usize
}

/// Monomials `x^i y^{d−i}`, `i = 0..=d`, at the representative of `pt`.
pub fn monomials<F: Field>(f: &F, d: i64, pt: &ProjPoint<F::Elem>) -> Vec<F::Elem> {
    let n = form_len(d);
    match pt {
        ProjPoint::Infinity => {
            let mut v = vec![f.zero(); n];
            if n > 0 {
                v[n - 1] = f.one();
            }
            v
        }
        ProjPoint::Finite(a) => {
            let mut v = Vec::with_capacity(n);
            let mut acc = f.one();
            for _ in 0..n {
                v.push(acc.clone());
                acc = f.mul(&acc, a);
            }
            v
        }
    }
}

/// Value of a form (coefficient of `x^i y^{d−i}` at index `i`) at `pt`.
pub fn eval_form<F: Field>(f: &F, coeffs: &[F::Elem], pt: &ProjPoint<F::Elem>) -> F::Elem {
    match pt {
        ProjPoint::Infinity => coeffs.last().cloned().unwrap_or_else(|| f.zero()),
        ProjPoint::Finite(a) => poly::eval(f, coeffs, a),
    }
}

/// Row expressing the `k`-th Hasse derivative of a degree-`d` form at `pt`
/// in the local chart (`y = 1` for finite points, `x = 1` at infinity).
fn hasse_row<F: Field>(f: &F, d: i64, k: usize, pt: &ProjPoint<F::Elem>) -> Vec<F::Elem> {
    let n = form_len(d);
    let mut row = vec![f.zero(); n];
    match pt {
        ProjPoint::Infinity => {
            if k < n {
                row[n - 1 - k] = f.one();
            }
        }
        ProjPoint::Finite(a) => {
            // binomial(i, k) a^{i−k}, built from Pascal's rule inside the field
            let mut binom = vec![f.zero(); n];
            let mut pascal = vec![f.one(); 1];
            for i in 0..n {
                if i > 0 {
                    let mut next = vec![f.one(); i + 1];
                    for j in 1..i {
                        next[j] = f.add(&pascal[j - 1], &pascal[j]);
                    }
                    pascal = next;
                }
                if k <= i {
                    binom[i] = pascal[k].clone();
                }
            }
            for i in k..n {
                row[i] = f.mul(&binom[i], &f.pow(a, (i - k) as u64));
            }
        }
    }
    row
}

/// Precomputed linear system for sections of a fixed multidegree on a
/// fixed curve; only the gluing scalars change between evaluations.
#[derive(Debug, Clone)]
pub struct SectionSystem<F: Field> {
    field: F,
    md: Multidegree,
    k1: usize,
    k2: usize,
    left: Vec<Vec<F::Elem>>,
    right: Vec<Vec<F::Elem>>,
    extra: Vec<Vec<F::Elem>>,
}

impl<F: Field> SectionSystem<F> {
    pub fn new(curve: &BinaryCurve<F>, md: Multidegree) -> Self {
        let f = curve.field().clone();
        let left = curve.nodes().iter().map(|n| monomials(&f, md.d1, &n.p)).collect();
        let right = curve
            .nodes()
            .iter()
            .map(|n| monomials(&f, md.d2, &n.q).iter().map(|x| f.neg(x)).collect())
            .collect();
        Self { k1: form_len(md.d1), k2: form_len(md.d2), field: f, md, left, right, extra: Vec::new() }
    }

    /// System for the sections vanishing on `d`.
    pub fn with_vanishing(curve: &BinaryCurve<F>, md: Multidegree, d: &EffectiveDivisor<F::Elem>) -> Result<Self> {
        let mut sys = Self::new(curve, md);
        let f = curve.field();
        for (pt, m) in d.points() {
            if let Some(j) = curve.node_at(pt) {
                return Err(Error::PointOnNode(format!("{} {:?} is a branch of node {j}", pt.component, pt.point)));
            }
            if *m >= 2 {
                if let Some(q) = f.order() {
                    if q as i64 <= md.total() + 1 {
                        return Err(Error::FieldTooSmall(format!(
                            "vanishing to order {m} in degree {} needs characteristic > {}",
                            md.total(),
                            md.total() + 1
                        )));
                    }
                }
            }
            for k in 0..*m as usize {
                let mut row = vec![f.zero(); sys.k1 + sys.k2];
                match pt.component {
                    Component::C1 => row[..sys.k1].clone_from_slice(&hasse_row(f, md.d1, k, &pt.point)),
                    Component::C2 => row[sys.k1..].clone_from_slice(&hasse_row(f, md.d2, k, &pt.point)),
                }
                sys.extra.push(row);
            }
        }
        Ok(sys)
    }

    pub fn md(&self) -> Multidegree {
        self.md
    }

    pub fn cols(&self) -> usize {
        self.k1 + self.k2
    }

    pub fn rows(&self) -> usize {
        self.left.len() + self.extra.len()
    }

    fn fill(&self, gluing: &[F::Elem], out: &mut Vec<F::Elem>) {
        let f = &self.field;
        out.clear();
        for ((l, r), c) in self.left.iter().zip(&self.right).zip(gluing) {
            out.extend(l.iter().cloned());
            out.extend(r.iter().map(|x| f.mul(x, c)));
        }
        for row in &self.extra {
            out.extend(row.iter().cloned());
        }
    }

    pub fn matrix(&self, gluing: &[F::Elem]) -> Matrix<F> {
        let mut entries = Vec::with_capacity(self.rows() * self.cols());
        self.fill(gluing, &mut entries);
        Matrix::new(self.field.clone(), self.rows(), self.cols(), entries)
    }

    /// Dimension of the solution space, reusing `scratch` as the buffer.
    pub fn h0_with(&self, gluing: &[F::Elem], scratch: &mut Vec<F::Elem>) -> usize {
        self.fill(gluing, scratch);
        self.cols() - rank_in_place(&self.field, self.rows(), self.cols(), scratch)
    }

    pub fn h0(&self, gluing: &[F::Elem]) -> usize {
        self.h0_with(gluing, &mut Vec::new())
    }

    /// Kernel basis split into the two component forms.
    pub fn sections(&self, gluing: &[F::Elem]) -> Vec<Section<F::Elem>> {
        self.matrix(gluing)
            .kernel()
            .into_iter()
            .map(|mut v| {
                let h = v.split_off(self.k1);
                Section { f: v, h }
            })
            .collect()
    }
}

/// A global section: forms of degree `d1` on `C1` and `d2` on `C2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section<E> {
    pub f: Vec<E>,
    pub h: Vec<E>,
}

impl<E: Clone> Section<E> {
    pub fn form(&self, side: Component) -> &[E] {
        match side {
            Component::C1 => &self.f,
            Component::C2 => &self.h,
        }
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, pt: &CurvePoint<E>) -> E {
        eval_form(field, self.form(pt.component), &pt.point)
    }
}

pub fn h0<F: Field>(l: &LineBundle<F>) -> usize {
    SectionSystem::new(l.curve(), l.md()).h0(l.gluing())
}

/// `h0(L(−D))` for an effective divisor `D` supported on smooth points.
pub fn h0_vanishing<F: Field>(l: &LineBundle<F>, d: &EffectiveDivisor<F::Elem>) -> Result<usize> {
    Ok(SectionSystem::with_vanishing(l.curve(), l.md(), d)?.h0(l.gluing()))
}

/// `h1` from Riemann-Roch.
pub fn h1<F: Field>(l: &LineBundle<F>) -> i64 {
    h0(l) as i64 - l.degree() + l.curve().genus() - 1
}

/// A basis of `H^0(L)` in kernel order.
pub fn sections<F: Field>(l: &LineBundle<F>) -> Vec<Section<F::Elem>> {
    SectionSystem::new(l.curve(), l.md()).sections(l.gluing())
}

/// Whether every section of `M` takes proportional values at `p` and `q`
/// with a common nonzero ratio (or vanishes at both), i.e. whether `M`
/// descends to the curve obtained by gluing `p` to `q`.
pub fn neutral_pair<F: Field>(m: &LineBundle<F>, p: &CurvePoint<F::Elem>, q: &CurvePoint<F::Elem>) -> Result<bool> {
    if p == q {
        return Err(Error::Precondition("a neutral pair needs two distinct points".into()));
    }
    let a = h0_vanishing(m, &EffectiveDivisor::point(p.clone()))?;
    let b = h0_vanishing(m, &EffectiveDivisor::point(q.clone()))?;
    let ab = h0_vanishing(m, &EffectiveDivisor::new([(p.clone(), 1), (q.clone(), 1)]))?;
    Ok(a == b && b == ab)
}

/// Outcome of trying to push a bundle down along a gluing map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent<F: Field> {
    /// The bundle on the glued curve with the same sections, if it exists.
    pub bundle: Option<LineBundle<F>>,
    /// False when some glued pair is a common base point, so any gluing
    /// scalar works there and the choice of 1 is arbitrary.
    pub unique: bool,
}

impl<F: Field> Descent<F> {
    pub fn exists(&self) -> bool {
        self.bundle.is_some()
    }
}

/// Glue the branch pairs `pairs` (appended as new nodes, `p` on `C1`, `q`
/// on `C2`) and find a gluing for which every section of `M` survives.
pub fn descend<F: Field>(m: &LineBundle<F>, pairs: &[Node<F::Elem>]) -> Result<Descent<F>> {
    let f = m.field().clone();
    let basis = sections(m);
    if basis.is_empty() {
        return Err(Error::Precondition("descent needs h0(M) > 0".into()));
    }
    let x = Arc::new(m.curve().reglue(pairs)?);
    let mut gluing = m.gluing().to_vec();
    let mut unique = true;
    for pair in pairs {
        let ev_p: Vec<_> = basis.iter().map(|s| eval_form(&f, &s.f, &pair.p)).collect();
        let ev_q: Vec<_> = basis.iter().map(|s| eval_form(&f, &s.h, &pair.q)).collect();
        let c = match ev_q.iter().position(|v| !f.is_zero(v)) {
            None => {
                if ev_p.iter().any(|v| !f.is_zero(v)) {
                    return Ok(Descent { bundle: None, unique: true });
                }
                unique = false;
                f.one()
            }
            Some(i) => {
                let c = f.div(&ev_p[i], &ev_q[i]).unwrap();
                if f.is_zero(&c) {
                    return Ok(Descent { bundle: None, unique: true });
                }
                c
            }
        };
        if ev_p.iter().zip(&ev_q).any(|(a, b)| *a != f.mul(&c, b)) {
            return Ok(Descent { bundle: None, unique: true });
        }
        gluing.push(c);
    }
    let l = LineBundle::new(x, m.md(), gluing)?;
    let (hl, hm) = (h0(&l), basis.len());
    if hl != hm {
        return Err(Error::Postcondition(format!("descended bundle has h0 = {hl}, expected {hm}")));
    }
    Ok(Descent { bundle: Some(l), unique })
}

/// Descent from the normalization of `x` at `s` back to `x`, keeping the
/// node order of `x`. `m` must live on that normalization.
pub fn descend_at<F: Field>(x: &Arc<BinaryCurve<F>>, s: &NodeSubset, m: &LineBundle<F>) -> Result<Descent<F>> {
    let (y, removed) = x.normalize_at(s)?;
    if y != **m.curve() {
        return Err(Error::CurveMismatch);
    }
    let down = descend(m, &removed)?;
    let Some(l) = down.bundle else {
        return Ok(down);
    };
    let kept = y.num_nodes();
    let (mut ki, mut si) = (0, kept);
    let mut gluing = Vec::with_capacity(x.num_nodes());
    for j in 0..x.num_nodes() {
        if s.contains(j) {
            gluing.push(l.gluing()[si].clone());
            si += 1;
        } else {
            gluing.push(l.gluing()[ki].clone());
            ki += 1;
        }
    }
    Ok(Descent { bundle: Some(LineBundle::new(x.clone(), m.md(), gluing)?), unique: down.unique })
}

/// Common zeros of all sections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseLocus<E> {
    /// Components on which every section vanishes identically.
    pub components: Vec<Component>,
    /// Isolated base points that are not node branches, field-rational only.
    pub smooth: Vec<CurvePoint<E>>,
    /// Nodes where every section vanishes.
    pub nodes: Vec<usize>,
}

impl<E> BaseLocus<E> {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty() && self.smooth.is_empty() && self.nodes.is_empty()
    }
}

pub fn base_locus<F: Field>(l: &LineBundle<F>) -> Result<BaseLocus<F::Elem>> {
    let f = l.field().clone();
    let basis = sections(l);
    if basis.is_empty() {
        return Err(Error::Precondition("base locus of a bundle without sections".into()));
    }
    let x = l.curve();
    let nodes = (0..x.num_nodes())
        .filter(|&j| basis.iter().all(|s| f.is_zero(&eval_form(&f, &s.f, x.branch(j, Component::C1)))))
        .filter(|&j| basis.iter().all(|s| f.is_zero(&eval_form(&f, &s.h, x.branch(j, Component::C2)))))
        .collect();
    let mut components = Vec::new();
    let mut smooth = Vec::new();
    for side in [Component::C1, Component::C2] {
        let forms: Vec<&[F::Elem]> = basis.iter().map(|s| s.form(side)).collect();
        let g = forms.iter().fold(Vec::new(), |acc, c| poly::gcd(&f, &acc, c));
        if g.is_empty() {
            components.push(side);
            continue;
        }
        let mut pts: Vec<ProjPoint<F::Elem>> = f.roots(&g).into_iter().map(ProjPoint::Finite).collect();
        if forms.iter().all(|c| f.is_zero(c.last().unwrap())) {
            pts.push(ProjPoint::Infinity);
        }
        for pt in pts {
            let cp = CurvePoint { component: side, point: pt };
            if x.node_at(&cp).is_none() {
                smooth.push(cp);
            }
        }
    }
    Ok(BaseLocus { components, smooth, nodes })
}
