//! Binary curves: `C1 ∪ C2`, two copies of the projective line glued at
//! `g + 1` pairs of points.

use std::fmt;

use crate::algebra::{Field, PrimeField, Rationals, Rng};
use crate::error::{Error, Result};

/// A point of the projective line in normal form: `(a : 1)` or `(1 : 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjPoint<E> {
    Finite(E),
    Infinity,
}

impl<E: Clone> ProjPoint<E> {
    /// The fixed representative every evaluation uses.
    pub fn rep<F: Field<Elem = E>>(&self, f: &F) -> (E, E) {
        match self {
            ProjPoint::Finite(a) => (a.clone(), f.one()),
            ProjPoint::Infinity => (f.one(), f.zero()),
        }
    }

    /// Normal form of a homogeneous pair; `None` for `(0, 0)`.
    pub fn from_homogeneous<F: Field<Elem = E>>(f: &F, x: &E, y: &E) -> Option<Self> {
        if f.is_zero(y) {
            if f.is_zero(x) {
                None
            } else {
                Some(ProjPoint::Infinity)
            }
        } else {
            Some(ProjPoint::Finite(f.div(x, y).unwrap()))
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }
}

/// Sends each point of `P^1(F_p)` to an index in `0..=p`, infinity last.
fn point_from_index(f: &PrimeField, i: u64) -> ProjPoint<u64> {
    if i == f.p() {
        ProjPoint::Infinity
    } else {
        ProjPoint::Finite(i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    C1,
    C2,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::C1 => write!(f, "C1"),
            Component::C2 => write!(f, "C2"),
        }
    }
}

/// A point on one of the two components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurvePoint<E> {
    pub component: Component,
    pub point: ProjPoint<E>,
}

impl<E> CurvePoint<E> {
    pub fn c1(point: ProjPoint<E>) -> Self {
        Self { component: Component::C1, point }
    }

    pub fn c2(point: ProjPoint<E>) -> Self {
        Self { component: Component::C2, point }
    }
}

/// The two branches of a node: `p` on `C1` glued to `q` on `C2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Node<E> {
    pub p: ProjPoint<E>,
    pub q: ProjPoint<E>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCurve<F: Field> {
    field: F,
    nodes: Vec<Node<F::Elem>>,
}

impl<F: Field> BinaryCurve<F> {
    pub fn new(field: F, nodes: Vec<Node<F::Elem>>) -> Result<Self> {
        for side in [Component::C1, Component::C2] {
            let pts: Vec<_> = nodes
                .iter()
                .map(|n| if side == Component::C1 { &n.p } else { &n.q })
                .collect();
            for i in 0..pts.len() {
                if pts[i + 1..].contains(&pts[i]) {
                    return Err(Error::Degenerate(format!(
                        "repeated branch point on {side}: {:?}",
                        pts[i]
                    )));
                }
            }
        }
        Ok(Self { field, nodes })
    }

    /// Convenience constructor from `(p, q)` pairs.
    pub fn from_pairs(field: F, pairs: Vec<(ProjPoint<F::Elem>, ProjPoint<F::Elem>)>) -> Result<Self> {
        Self::new(field, pairs.into_iter().map(|(p, q)| Node { p, q }).collect())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nodes(&self) -> &[Node<F::Elem>] {
        &self.nodes
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Arithmetic genus, `#nodes - 1`.
    pub fn genus(&self) -> i64 {
        self.nodes.len() as i64 - 1
    }

    pub fn is_connected(&self) -> bool {
        !self.nodes.is_empty()
    }

    /// The branch of node `j` on the given component.
    pub fn branch(&self, j: usize, side: Component) -> &ProjPoint<F::Elem> {
        match side {
            Component::C1 => &self.nodes[j].p,
            Component::C2 => &self.nodes[j].q,
        }
    }

    /// Index of the node having `pt` as a branch, if any.
    pub fn node_at(&self, pt: &CurvePoint<F::Elem>) -> Option<usize> {
        (0..self.nodes.len()).find(|&j| *self.branch(j, pt.component) == pt.point)
    }

    /// Normalization at the nodes of `s`, together with the separated
    /// branch pairs in the order of `s`.
    pub fn normalize_at(&self, s: &NodeSubset) -> Result<(Self, Vec<Node<F::Elem>>)> {
        s.check(self.nodes.len())?;
        let mut kept = Vec::with_capacity(self.nodes.len() - s.len());
        for (j, n) in self.nodes.iter().enumerate() {
            if !s.contains(j) {
                kept.push(n.clone());
            }
        }
        let removed = s.indices().iter().map(|&j| self.nodes[j].clone()).collect();
        Ok((Self { field: self.field.clone(), nodes: kept }, removed))
    }

    /// The curve obtained by gluing extra branch pairs, appended at the end.
    pub fn reglue(&self, pairs: &[Node<F::Elem>]) -> Result<Self> {
        let mut nodes = self.nodes.clone();
        nodes.extend_from_slice(pairs);
        Self::new(self.field.clone(), nodes)
    }

    /// Apply a projective transformation to one component.
    pub fn transform_component(&self, side: Component, phi: &MoebiusMap<F>) -> Self {
        let nodes = self
            .nodes
            .iter()
            .map(|n| match side {
                Component::C1 => Node { p: phi.apply(&n.p), q: n.q.clone() },
                Component::C2 => Node { p: n.p.clone(), q: phi.apply(&n.q) },
            })
            .collect();
        Self { field: self.field.clone(), nodes }
    }

    /// All `F`-rational points of one component that are not node branches
    /// (finite fields only).
    pub fn smooth_points(&self, side: Component) -> Option<Vec<ProjPoint<F::Elem>>> {
        let mut pts: Vec<_> = self.field.elements()?.into_iter().map(ProjPoint::Finite).collect();
        pts.push(ProjPoint::Infinity);
        pts.retain(|pt| (0..self.nodes.len()).all(|j| self.branch(j, side) != pt));
        Some(pts)
    }

    /// The degree-2 hyperelliptic test: the Möbius map through the first
    /// three node pairs must carry every `p_j` to `q_j`. Returns that map
    /// when the curve is hyperelliptic.
    pub fn hyperelliptic_involution(&self) -> Result<Option<MoebiusMap<F>>> {
        if self.genus() < 2 {
            return Err(Error::Precondition(format!(
                "hyperelliptic test needs genus >= 2, got {}",
                self.genus()
            )));
        }
        let n = &self.nodes;
        let psi = MoebiusMap::through(
            &self.field,
            [&n[0].p, &n[1].p, &n[2].p],
            [&n[0].q, &n[1].q, &n[2].q],
        )?;
        Ok(n.iter().all(|nd| psi.apply(&nd.p) == nd.q).then_some(psi))
    }

    pub fn is_hyperelliptic(&self) -> Result<bool> {
        Ok(self.hyperelliptic_involution()?.is_some())
    }

    /// A node whose one-node normalization is not hyperelliptic, scanning
    /// in ascending order. Such a node exists for every non-hyperelliptic
    /// curve of genus at least 4, so `Ok(None)` signals a broken invariant.
    pub fn non_hyperelliptic_node(&self) -> Result<Option<usize>> {
        if self.genus() < 4 {
            return Err(Error::Precondition("needs genus >= 4".into()));
        }
        if self.is_hyperelliptic()? {
            return Err(Error::Precondition("curve is hyperelliptic".into()));
        }
        for j in 0..self.nodes.len() {
            let (y, _) = self.normalize_at(&NodeSubset::single(j))?;
            if !y.is_hyperelliptic()? {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }
}

impl BinaryCurve<Rationals> {
    /// Reduction modulo `p`; fails when a denominator vanishes or two
    /// branch points on one component collide.
    pub fn reduce_mod(&self, field: &PrimeField) -> Result<BinaryCurve<PrimeField>> {
        let p = field.p();
        let red = |pt: &ProjPoint<_>| -> Result<ProjPoint<u64>> {
            match pt {
                ProjPoint::Infinity => Ok(ProjPoint::Infinity),
                ProjPoint::Finite(a) => field.reduce(a).map(ProjPoint::Finite).ok_or_else(|| {
                    Error::BadReduction { p, reason: format!("denominator of {a} vanishes") }
                }),
            }
        };
        let nodes = self
            .nodes
            .iter()
            .map(|n| Ok(Node { p: red(&n.p)?, q: red(&n.q)? }))
            .collect::<Result<Vec<_>>>()?;
        BinaryCurve::new(*field, nodes)
            .map_err(|e| Error::BadReduction { p, reason: e.to_string() })
    }
}

/// Sorted set of node indices (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NodeSubset(Vec<usize>);

impl NodeSubset {
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidNodeSubset(format!("repeated index in {indices:?}")));
        }
        Ok(Self(indices))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn single(j: usize) -> Self {
        Self(vec![j])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().all(|&j| other.contains(j))
    }

    fn check(&self, num_nodes: usize) -> Result<()> {
        match self.0.last() {
            Some(&j) if j >= num_nodes => Err(Error::InvalidNodeSubset(format!(
                "index {j} out of range for {num_nodes} nodes"
            ))),
            _ => Ok(()),
        }
    }

    /// All subsets of `{0..n}` of size `e`, in lexicographic order.
    pub fn all_of_size(n: usize, e: usize) -> Vec<Self> {
        fn rec(start: usize, n: usize, e: usize, cur: &mut Vec<usize>, out: &mut Vec<NodeSubset>) {
            if cur.len() == e {
                out.push(NodeSubset(cur.clone()));
                return;
            }
            for j in start..n {
                if n - j < e - cur.len() {
                    break;
                }
                cur.push(j);
                rec(j + 1, n, e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if e <= n {
            rec(0, n, e, &mut Vec::new(), &mut out);
        }
        out
    }
}

/// A fractional linear transformation `t ↦ (a t + b)/(c t + d)`, stored as
/// the row-major matrix `[a, b, c, d]` scaled so its first nonzero entry is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoebiusMap<F: Field> {
    field: F,
    m: [F::Elem; 4],
}

impl<F: Field> MoebiusMap<F> {
    pub fn new(field: F, m: [F::Elem; 4]) -> Result<Self> {
        let det = field.sub(&field.mul(&m[0], &m[3]), &field.mul(&m[1], &m[2]));
        if field.is_zero(&det) {
            return Err(Error::Degenerate("singular Möbius matrix".into()));
        }
        let lead = m.iter().find(|x| !field.is_zero(x)).unwrap();
        let li = field.inv(lead).unwrap();
        let m = m.map(|x| field.mul(&x, &li));
        Ok(Self { field, m })
    }

    pub fn identity(field: F) -> Self {
        let (o, z) = (field.one(), field.zero());
        Self { m: [o.clone(), z.clone(), z, o], field }
    }

    pub fn matrix(&self) -> &[F::Elem; 4] {
        &self.m
    }

    /// Image of a homogeneous vector, not normalized.
    pub fn apply_vec(&self, x: &F::Elem, y: &F::Elem) -> (F::Elem, F::Elem) {
        let f = &self.field;
        let m = &self.m;
        (
            f.add(&f.mul(&m[0], x), &f.mul(&m[1], y)),
            f.add(&f.mul(&m[2], x), &f.mul(&m[3], y)),
        )
    }

    pub fn apply(&self, pt: &ProjPoint<F::Elem>) -> ProjPoint<F::Elem> {
        let (x, y) = pt.rep(&self.field);
        let (u, v) = self.apply_vec(&x, &y);
        ProjPoint::from_homogeneous(&self.field, &u, &v).unwrap()
    }

    /// The scalar `λ` with `M · rep(pt) = λ · rep(M(pt))`.
    pub fn rep_scale(&self, pt: &ProjPoint<F::Elem>) -> F::Elem {
        let (x, y) = pt.rep(&self.field);
        let (u, v) = self.apply_vec(&x, &y);
        if self.field.is_zero(&v) {
            u
        } else {
            v
        }
    }

    pub fn compose(&self, inner: &Self) -> Self {
        let f = &self.field;
        let (a, b) = (&self.m, &inner.m);
        let e = |i: usize, j: usize| f.add(&f.mul(&a[2 * i], &b[j]), &f.mul(&a[2 * i + 1], &b[2 + j]));
        Self::new(f.clone(), [e(0, 0), e(0, 1), e(1, 0), e(1, 1)]).unwrap()
    }

    pub fn inverse(&self) -> Self {
        let f = &self.field;
        let m = &self.m;
        Self::new(f.clone(), [m[3].clone(), f.neg(&m[1]), f.neg(&m[2]), m[0].clone()]).unwrap()
    }

    /// The unique map with `a_i ↦ b_i`; both triples must be distinct.
    pub fn through(field: &F, a: [&ProjPoint<F::Elem>; 3], b: [&ProjPoint<F::Elem>; 3]) -> Result<Self> {
        let from = Self::from_standard(field, a)?;
        let to = Self::from_standard(field, b)?;
        Ok(to.compose(&from.inverse()))
    }

    /// The map sending `∞, 0, 1` to `a_1, a_2, a_3`.
    fn from_standard(f: &F, a: [&ProjPoint<F::Elem>; 3]) -> Result<Self> {
        if a[0] == a[1] || a[1] == a[2] || a[0] == a[2] {
            return Err(Error::Degenerate(format!("points not distinct: {a:?}")));
        }
        let (x1, y1) = a[0].rep(f);
        let (x2, y2) = a[1].rep(f);
        let (x3, y3) = a[2].rep(f);
        // solve v3 = l1 v1 + l2 v2 by Cramer
        let det = f.sub(&f.mul(&x1, &y2), &f.mul(&x2, &y1));
        let l1 = f.div(&f.sub(&f.mul(&x3, &y2), &f.mul(&x2, &y3)), &det).unwrap();
        let l2 = f.div(&f.sub(&f.mul(&x1, &y3), &f.mul(&x3, &y1)), &det).unwrap();
        Self::new(
            f.clone(),
            [f.mul(&l1, &x1), f.mul(&l2, &x2), f.mul(&l1, &y1), f.mul(&l2, &y2)],
        )
    }

    /// A uniformly random invertible map.
    pub fn random(field: &F, rng: &mut Rng) -> Self {
        loop {
            let m = [(); 4].map(|_| field.random_elem(rng));
            if let Ok(phi) = Self::new(field.clone(), m) {
                return phi;
            }
        }
    }
}

/// Draw `count` distinct points, each by `draw`, in draw order.
fn distinct_points<E: PartialEq>(count: usize, mut draw: impl FnMut() -> E) -> Vec<E> {
    let mut out: Vec<E> = Vec::with_capacity(count);
    while out.len() < count {
        let x = draw();
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn check_sample_size<F: Field>(field: &F, needed: u64, what: &str) -> Result<()> {
    match field.order() {
        Some(q) if q < needed => Err(Error::FieldTooSmall(format!(
            "{what} needs at least {needed} field elements, field has {q}"
        ))),
        _ => Ok(()),
    }
}

/// A random curve with branch markings `(x_1, …, x_{g-2}, 0, 1, ∞)` on each
/// component, the free points finite and away from `0, 1`.
pub fn random_curve<F: Field>(g: i64, field: &F, rng: &mut Rng) -> Result<BinaryCurve<F>> {
    if g < 2 {
        return Err(Error::Precondition(format!("random curves need genus >= 2, got {g}")));
    }
    check_sample_size(field, g as u64 + 3, &format!("a random genus-{g} curve"))?;
    let (zero, one) = (field.zero(), field.one());
    let free = |rng: &mut Rng| {
        distinct_points(g as usize - 2, || loop {
            let x = field.random_elem(rng);
            if x != zero && x != one {
                break x;
            }
        })
    };
    let ps = free(rng);
    let qs = free(rng);
    let mut nodes: Vec<Node<F::Elem>> = ps
        .into_iter()
        .zip(qs)
        .map(|(p, q)| Node { p: ProjPoint::Finite(p), q: ProjPoint::Finite(q) })
        .collect();
    for fixed in [ProjPoint::Finite(zero.clone()), ProjPoint::Finite(one.clone()), ProjPoint::Infinity] {
        nodes.push(Node { p: fixed.clone(), q: fixed });
    }
    BinaryCurve::new(field.clone(), nodes)
}

/// `g + 1` uniformly random distinct branch points on each component of a
/// finite field curve, infinity included. Works for every `g >= -1`.
pub fn random_curve_unmarked(g: i64, field: &PrimeField, rng: &mut Rng) -> Result<BinaryCurve<PrimeField>> {
    if g < -1 {
        return Err(Error::Precondition(format!("genus must be >= -1, got {g}")));
    }
    let n = (g + 1) as usize;
    if n as u64 > field.p() + 1 {
        return Err(Error::FieldTooSmall(format!(
            "{n} distinct points do not fit on P^1(F_{})",
            field.p()
        )));
    }
    let ps = distinct_points(n, || point_from_index(field, rng.below(field.p() + 1)));
    let qs = distinct_points(n, || point_from_index(field, rng.below(field.p() + 1)));
    BinaryCurve::from_pairs(*field, ps.into_iter().zip(qs).collect())
}

/// A random hyperelliptic curve: random distinct `p_j` and `q_j = ψ(p_j)`
/// for a random Möbius map `ψ`.
pub fn random_hyperelliptic_curve(g: i64, field: &PrimeField, rng: &mut Rng) -> Result<BinaryCurve<PrimeField>> {
    if g < 2 {
        return Err(Error::Precondition(format!("genus must be >= 2, got {g}")));
    }
    let base = random_curve_unmarked(g, field, rng)?;
    let psi = MoebiusMap::random(field, rng);
    let pairs = base.nodes().iter().map(|n| (n.p.clone(), psi.apply(&n.p))).collect();
    BinaryCurve::from_pairs(*field, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn fin(a: u64) -> ProjPoint<u64> {
        ProjPoint::Finite(a)
    }

    fn curve(f: PrimeField, pairs: &[(ProjPoint<u64>, ProjPoint<u64>)]) -> BinaryCurve<PrimeField> {
        BinaryCurve::from_pairs(f, pairs.to_vec()).unwrap()
    }

    #[test]
    fn normalize_genus_drop() {
        let f = fp(7);
        let x = curve(f, &[(fin(0), fin(0)), (fin(1), fin(1)), (ProjPoint::Infinity, ProjPoint::Infinity)]);
        let (y, removed) = x.normalize_at(&NodeSubset::empty()).unwrap();
        assert_eq!(y, x);
        assert!(removed.is_empty());
        let (y, removed) = x.normalize_at(&NodeSubset::single(1)).unwrap();
        assert_eq!(y.genus(), 1);
        assert_eq!(y.num_nodes(), 2);
        assert_eq!(removed, vec![Node { p: fin(1), q: fin(1) }]);
    }

    #[test]
    fn normalize_everything_disconnects() {
        let x = curve(fp(7), &[(fin(0), fin(0)), (fin(1), fin(2))]);
        let (y, _) = x.normalize_at(&NodeSubset::new(vec![0, 1]).unwrap()).unwrap();
        assert_eq!(y.genus(), -1);
        assert!(!y.is_connected());
    }

    #[test]
    fn rejects_bad_subsets_and_nodes() {
        let x = curve(fp(7), &[(fin(0), fin(0)), (fin(1), fin(2))]);
        assert!(x.normalize_at(&NodeSubset::single(2)).is_err());
        assert!(NodeSubset::new(vec![1, 1]).is_err());
        assert!(BinaryCurve::from_pairs(fp(7), vec![(fin(0), fin(0)), (fin(0), fin(1))]).is_err());
    }

    #[test]
    fn random_genus_two_is_the_fixed_triple() {
        let f = fp(7);
        let x = random_curve(2, &f, &mut Rng::new(3)).unwrap();
        assert_eq!(
            x.nodes(),
            &[
                Node { p: fin(0), q: fin(0) },
                Node { p: fin(1), q: fin(1) },
                Node { p: ProjPoint::Infinity, q: ProjPoint::Infinity },
            ]
        );
    }

    #[test]
    fn random_genus_three_pinned() {
        let f = fp(7);
        let x = random_curve(3, &f, &mut Rng::new(2024)).unwrap();
        assert_eq!(x.num_nodes(), 4);
        assert_eq!(x.nodes()[0], Node { p: fin(3), q: fin(3) });
        // matching free points on top of 0, 1, ∞: the identity swaps the branches
        assert!(x.is_hyperelliptic().unwrap());
        assert_eq!(x, random_curve(3, &f, &mut Rng::new(2024)).unwrap());
    }

    #[test]
    fn random_curve_field_too_small() {
        assert!(matches!(random_curve(3, &fp(5), &mut Rng::new(1)), Err(Error::FieldTooSmall(_))));
        assert!(random_curve(1, &fp(7), &mut Rng::new(1)).is_err());
    }

    #[test]
    fn moebius_examples() {
        let f = fp(7);
        let inf = ProjPoint::Infinity;
        let std = [&fin(0), &fin(1), &inf];
        assert_eq!(MoebiusMap::through(&f, std, std).unwrap(), MoebiusMap::identity(f));
        // t -> 1 - t
        let phi = MoebiusMap::through(&f, std, [&fin(1), &fin(0), &inf]).unwrap();
        assert_eq!(phi.matrix(), &[1, 6, 0, 6]);
        for t in 0..7 {
            assert_eq!(phi.apply(&fin(t)), fin((8 - t) % 7));
        }
        // t -> 1/t
        let phi = MoebiusMap::through(&f, std, [&inf, &fin(1), &fin(0)]).unwrap();
        assert_eq!(phi.matrix(), &[0, 1, 1, 0]);
        assert!(MoebiusMap::through(&f, [&fin(0), &fin(0), &inf], std).is_err());
    }

    #[test]
    fn moebius_inverse_and_compose() {
        let f = fp(11);
        let mut rng = Rng::new(5);
        for _ in 0..20 {
            let a = MoebiusMap::random(&f, &mut rng);
            let b = MoebiusMap::random(&f, &mut rng);
            assert_eq!(a.compose(&a.inverse()), MoebiusMap::identity(f));
            for t in 0..11 {
                assert_eq!(a.compose(&b).apply(&fin(t)), a.apply(&b.apply(&fin(t))));
            }
        }
    }

    #[test]
    fn hyperelliptic_examples() {
        let f = fp(7);
        let inf = ProjPoint::Infinity;
        let g2 = curve(f, &[(fin(2), fin(5)), (fin(3), inf.clone()), (fin(4), fin(0))]);
        assert!(g2.is_hyperelliptic().unwrap());
        let sym = curve(f, &[(fin(0), fin(0)), (fin(1), fin(1)), (inf.clone(), inf.clone()), (fin(4), fin(4))]);
        assert_eq!(sym.hyperelliptic_involution().unwrap(), Some(MoebiusMap::identity(f)));
        let non = curve(f, &[(fin(0), fin(0)), (fin(1), fin(1)), (inf.clone(), inf.clone()), (fin(2), fin(3))]);
        assert!(!non.is_hyperelliptic().unwrap());
    }

    #[test]
    fn witness_node_preconditions() {
        let f = fp(11);
        let mut rng = Rng::new(9);
        let hyp = random_hyperelliptic_curve(4, &f, &mut rng).unwrap();
        assert!(hyp.non_hyperelliptic_node().is_err());
        let g3 = random_curve(3, &f, &mut rng).unwrap();
        assert!(g3.non_hyperelliptic_node().is_err());
    }

    #[test]
    fn witness_node_exists_for_non_hyperelliptic_genus_four() {
        let f = fp(11);
        let mut rng = Rng::new(77);
        let mut seen = 0;
        for _ in 0..50 {
            let x = random_curve(4, &f, &mut rng).unwrap();
            if x.is_hyperelliptic().unwrap() {
                continue;
            }
            seen += 1;
            let n = x.non_hyperelliptic_node().unwrap().expect("a non-hyperelliptic normalization");
            let (y, _) = x.normalize_at(&NodeSubset::single(n)).unwrap();
            assert!(!y.is_hyperelliptic().unwrap());
        }
        assert!(seen > 40);
    }

    #[test]
    fn normalizations_of_hyperelliptic_stay_hyperelliptic() {
        let f = fp(13);
        let mut rng = Rng::new(11);
        for g in 3..=5 {
            let x = random_hyperelliptic_curve(g, &f, &mut rng).unwrap();
            assert!(x.is_hyperelliptic().unwrap());
            for j in 0..x.num_nodes() {
                let (y, _) = x.normalize_at(&NodeSubset::single(j)).unwrap();
                assert!(y.is_hyperelliptic().unwrap());
            }
        }
    }

    #[test]
    fn normalization_composes() {
        let f = fp(13);
        let x = random_curve_unmarked(5, &f, &mut Rng::new(4)).unwrap();
        let s = NodeSubset::new(vec![1, 4]).unwrap();
        let (y1, _) = x.normalize_at(&s).unwrap();
        // nodes 2 and 5 of x are at positions 1 and 3 of y1
        let (y2, _) = y1.normalize_at(&NodeSubset::new(vec![1, 3]).unwrap()).unwrap();
        let (direct, _) = x.normalize_at(&NodeSubset::new(vec![1, 2, 4, 5]).unwrap()).unwrap();
        assert_eq!(y2, direct);
    }

    #[test]
    fn reduction_mod_p() {
        let q = Rationals;
        let pt = |n: i64| ProjPoint::Finite(q.from_i64(n));
        let x = BinaryCurve::from_pairs(q, vec![(pt(0), pt(0)), (pt(1), pt(8)), (ProjPoint::Infinity, pt(2))]).unwrap();
        let x7 = x.reduce_mod(&fp(7)).unwrap();
        assert_eq!(x7.nodes()[1], Node { p: fin(1), q: fin(1) });
        // 8 = 2 mod 3 is not allowed (p < 5) but mod 5: 8 = 3, fine; mod 2 n/a.
        assert!(x.reduce_mod(&fp(5)).is_ok());
        let y = BinaryCurve::from_pairs(q, vec![(pt(0), pt(0)), (pt(7), pt(1))]).unwrap();
        assert!(matches!(y.reduce_mod(&fp(7)), Err(Error::BadReduction { p: 7, .. })));
    }

    #[test]
    fn smooth_points_exclude_branches() {
        let x = curve(fp(5), &[(fin(0), fin(1)), (ProjPoint::Infinity, fin(2))]);
        let pts = x.smooth_points(Component::C1).unwrap();
        assert_eq!(pts, vec![fin(1), fin(2), fin(3), fin(4)]);
        assert_eq!(x.smooth_points(Component::C2).unwrap().len(), 4);
    }
}
