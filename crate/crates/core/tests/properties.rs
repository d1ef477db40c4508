use std::sync::Arc;

use bincurve_core::algebra::{Field, Matrix, PrimeField, Rationals, Rng};
use bincurve_core::bundle::{EffectiveDivisor, LineBundle, Multidegree};
use bincurve_core::cohomology::{descend, h0, h0_vanishing, h1, neutral_pair};
use bincurve_core::curve::{random_curve_unmarked, BinaryCurve, Component, CurvePoint, MoebiusMap, NodeSubset};
use bincurve_core::picard::{balanced_set, is_balanced};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const PRIMES: [u64; 4] = [5, 7, 11, 13];

fn field(i: usize) -> PrimeField {
    PrimeField::new(PRIMES[i % PRIMES.len()]).unwrap()
}

fn random_bundle(x: &Arc<BinaryCurve<PrimeField>>, md: Multidegree, rng: &mut Rng) -> LineBundle<PrimeField> {
    let p = x.field().p();
    let c = (0..x.num_nodes()).map(|_| 1 + rng.below(p - 1)).collect();
    LineBundle::new(x.clone(), md, c).unwrap()
}

fn random_smooth(x: &BinaryCurve<PrimeField>, side: Component, rng: &mut Rng) -> CurvePoint<u64> {
    let pts = x.smooth_points(side).unwrap();
    CurvePoint { component: side, point: pts[rng.below(pts.len() as u64) as usize].clone() }
}

fn random_md(rng: &mut Rng, lo: i64, hi: i64) -> Multidegree {
    let span = (hi - lo + 1) as u64;
    Multidegree::new(lo + rng.below(span) as i64, lo + rng.below(span) as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_equals_rank_of_transpose(seed: u64, fi in 0usize..4, rows in 0usize..7, cols in 0usize..7) {
        let f = field(fi);
        let mut rng = Rng::new(seed);
        let entries = (0..rows * cols).map(|_| f.random_elem(&mut rng)).collect();
        let m = Matrix::new(f, rows, cols, entries);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn rank_mod_p_never_exceeds_rank_over_q(seed: u64, fi in 0usize..4, rows in 1usize..6, cols in 1usize..6) {
        let f = field(fi);
        let q = Rationals;
        let mut rng = Rng::new(seed);
        let ints: Vec<i64> = (0..rows * cols).map(|_| rng.below(9) as i64 - 4).collect();
        let mq = Matrix::new(q, rows, cols, ints.iter().map(|&n| BigRational::from_integer(BigInt::from(n))).collect());
        let mp = Matrix::from_i64(f, rows, cols, &ints);
        prop_assert!(mp.rank() <= mq.rank());
    }

    #[test]
    fn class_invariants(seed: u64, fi in 0usize..4, g in 0i64..4) {
        let f = field(fi);
        let mut rng = Rng::new(seed);
        let x = Arc::new(random_curve_unmarked(g, &f, &mut rng).unwrap());
        let l = random_bundle(&x, random_md(&mut rng, -1, 2 * g + 1), &mut rng);
        let lambda = 1 + rng.below(f.p() - 1);
        let scaled = l.scale(&lambda).unwrap();
        prop_assert!(l.is_isomorphic(&scaled).unwrap());
        prop_assert_eq!(h0(&l), h0(&scaled));

        let w = LineBundle::canonical(x.clone()).unwrap();
        let dual = w.tensor(&l.dual()).unwrap();
        prop_assert_eq!(h0(&dual) as i64, h1(&l));
        prop_assert_eq!(dual.degree(), 2 * g - 2 - l.degree());
        prop_assert_eq!(dual.md(), Multidegree::canonical(g) - l.md());
        prop_assert_eq!(is_balanced(l.md(), g), is_balanced(dual.md(), g));
    }

    #[test]
    fn one_point_costs_at_most_one_section(seed: u64, fi in 0usize..4, g in 1i64..4) {
        let f = field(fi);
        let mut rng = Rng::new(seed);
        let x = Arc::new(random_curve_unmarked(g, &f, &mut rng).unwrap());
        let l = random_bundle(&x, random_md(&mut rng, 0, g + 2), &mut rng);
        let side = if rng.below(2) == 0 { Component::C1 } else { Component::C2 };
        let p = random_smooth(&x, side, &mut rng);
        let base = h0(&l);
        let v = h0_vanishing(&l, &EffectiveDivisor::point(p)).unwrap();
        prop_assert!(v <= base && v + 1 >= base);
    }

    #[test]
    fn abel_map_is_additive(seed: u64, fi in 0usize..4, g in 1i64..5) {
        let f = field(fi);
        let mut rng = Rng::new(seed);
        let x = Arc::new(random_curve_unmarked(g, &f, &mut rng).unwrap());
        let pick = |rng: &mut Rng, n: u64| {
            EffectiveDivisor::new((0..n).map(|_| {
                let side = if rng.below(2) == 0 { Component::C1 } else { Component::C2 };
                (random_smooth(&x, side, rng), 1 + rng.below(2) as u32)
            }))
        };
        let d = pick(&mut rng, 3);
        let e = pick(&mut rng, 2);
        let ld = LineBundle::from_divisor(x.clone(), &d).unwrap();
        let le = LineBundle::from_divisor(x.clone(), &e).unwrap();
        let lde = LineBundle::from_divisor(x.clone(), &d.plus(&e)).unwrap();
        prop_assert!(lde.is_isomorphic(&ld.tensor(&le).unwrap()).unwrap());
        prop_assert!(h0(&ld) >= 1);
    }

    #[test]
    fn coordinate_changes_preserve_sections(seed: u64, fi in 0usize..4, g in 0i64..4) {
        let f = field(fi);
        let mut rng = Rng::new(seed);
        let x = Arc::new(random_curve_unmarked(g, &f, &mut rng).unwrap());
        let l = random_bundle(&x, random_md(&mut rng, -1, g + 2), &mut rng);
        let phi = MoebiusMap::random(&f, &mut rng);
        for side in [Component::C1, Component::C2] {
            let moved = l.transform_component(side, &phi);
            prop_assert_eq!(h0(&moved), h0(&l));
            let back = moved.transform_component(side, &phi.inverse());
            prop_assert_eq!(back.gluing(), l.gluing());
        }
    }

    #[test]
    fn riemann_and_clifford_bounds(seed: u64, fi in 0usize..4, g in 1i64..4) {
        let f = field(fi);
        let mut rng = Rng::new(seed);
        let x = Arc::new(random_curve_unmarked(g, &f, &mut rng).unwrap());
        for d in 0..=2 * g + 2 {
            for md in balanced_set(d, g) {
                let l = random_bundle(&x, md, &mut rng);
                let h = h0(&l) as i64;
                if d >= 2 * g - 1 {
                    prop_assert_eq!(h, d - g + 1);
                }
                if d <= 2 * g {
                    prop_assert!(2 * h <= d + 2);
                }
                let (d1, d2) = md.sorted();
                if d1 >= -1 {
                    prop_assert!(h <= d1 + d2 + 1 - d2.min(g));
                }
            }
        }
    }

    #[test]
    fn descent_matches_neutrality(seed: u64, fi in 0usize..4, g in 1i64..4) {
        let f = field(fi);
        let mut rng = Rng::new(seed);
        let x = Arc::new(random_curve_unmarked(g, &f, &mut rng).unwrap());
        let j = rng.below(x.num_nodes() as u64) as usize;
        let (y, removed) = x.normalize_at(&NodeSubset::single(j)).unwrap();
        let y = Arc::new(y);
        let m = random_bundle(&y, random_md(&mut rng, 0, g + 1), &mut rng);
        prop_assume!(h0(&m) > 0);
        let pair = &removed[0];
        let neutral = neutral_pair(&m, &CurvePoint::c1(pair.p.clone()), &CurvePoint::c2(pair.q.clone())).unwrap();
        let down = descend(&m, std::slice::from_ref(pair)).unwrap();
        prop_assert_eq!(neutral, down.exists());
        if let Some(l) = down.bundle {
            prop_assert_eq!(h0(&l), h0(&m));
            prop_assert!(h0(&m) >= h0(&l.restrict_to_normalization(&NodeSubset::single(l.curve().num_nodes() - 1)).unwrap()));
        }
    }

    #[test]
    fn pullback_never_loses_sections(seed: u64, fi in 0usize..4, g in 1i64..4) {
        let f = field(fi);
        let mut rng = Rng::new(seed);
        let x = Arc::new(random_curve_unmarked(g, &f, &mut rng).unwrap());
        let l = random_bundle(&x, random_md(&mut rng, -1, g + 1), &mut rng);
        let e = 1 + rng.below(x.num_nodes() as u64) as usize;
        let subsets = NodeSubset::all_of_size(x.num_nodes(), e);
        let s = &subsets[rng.below(subsets.len() as u64) as usize];
        prop_assert!(h0(&l.restrict_to_normalization(s).unwrap()) >= h0(&l));
    }
}
