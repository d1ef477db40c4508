//! Clifford index by exhaustive scan.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{bn_enumerate, BnQuery};
use crate::algebra::PrimeField;
use crate::bundle::{BundleTorus, LineBundle, Multidegree};
use crate::cohomology::SectionSystem;
use crate::curve::BinaryCurve;
use crate::error::{Error, Result};
use crate::picard::balanced_set;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordWitness {
    pub d: i64,
    pub md: Multidegree,
    pub gluing: Vec<u64>,
    pub h0: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordReport {
    /// `None` when no balanced class has `h0 >= 2` and `h1 >= 2`.
    pub cliff: Option<i64>,
    pub achiever: Option<CliffordWitness>,
    /// Minimizers are searched among `F_p`-rational classes only.
    pub over: String,
}

/// `min(d − 2 h0 + 2)` over balanced classes with `h0 >= 2` and `h1 >= 2`.
/// Genus at most 2 reports 0 without scanning.
pub fn clifford_index(x: &Arc<BinaryCurve<PrimeField>>) -> CliffordReport {
    let g = x.genus();
    let over = format!("F_{}", x.field().p());
    if g <= 2 {
        return CliffordReport { cliff: Some(0), achiever: None, over };
    }
    let mut best: Option<CliffordWitness> = None;
    let mut scratch = Vec::new();
    'scan: for d in 0..=2 * g - 2 {
        for md in balanced_set(d, g) {
            let sys = SectionSystem::new(x, md);
            let torus = BundleTorus::new(x.clone(), md);
            for i in 0..torus.count() {
                let c = torus.gluing_at(i);
                let h0 = sys.h0_with(&c, &mut scratch);
                let h1 = h0 as i64 - d + g - 1;
                if h0 < 2 || h1 < 2 {
                    continue;
                }
                let cliff = d - 2 * h0 as i64 + 2;
                if best.as_ref().map_or(true, |b| cliff < b.d - 2 * b.h0 as i64 + 2) {
                    best = Some(CliffordWitness { d, md, gluing: c, h0 });
                    if cliff == 0 {
                        break 'scan;
                    }
                }
            }
        }
    }
    CliffordReport { cliff: best.as_ref().map(|b| b.d - 2 * b.h0 as i64 + 2), achiever: best, over }
}

/// Whether some `W^h_{(h,h)}`, `1 <= h <= g − 2`, has a rational point;
/// an independent test for Clifford index zero.
pub fn has_cliff_zero_witness(x: &Arc<BinaryCurve<PrimeField>>) -> bool {
    (1..=x.genus() - 2).any(|h| bn_enumerate(x, BnQuery::new(Multidegree::new(h, h), h as u32)).count > 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroClassification {
    pub d: i64,
    pub pass: bool,
    /// `(md, gluing)` of every balanced class with `h0 = d/2 + 1`.
    pub found: Vec<(Multidegree, Vec<u64>)>,
    pub expected: (Multidegree, Vec<u64>),
    pub counterexample: Option<(Multidegree, Vec<u64>)>,
}

/// On a hyperelliptic curve, the balanced classes of even degree `d` with
/// `d − 2 h0 + 2 = 0` should be exactly `H^{d/2}`.
pub fn clifford_zero_classification(x: &Arc<BinaryCurve<PrimeField>>, d: i64) -> Result<ZeroClassification> {
    let g = x.genus();
    if d % 2 != 0 || d < 0 || d > 2 * g - 2 {
        return Err(Error::Precondition(format!("needs even 0 <= d <= 2g - 2, got d = {d}")));
    }
    let h = LineBundle::hyperelliptic_class(x.clone())?.power(d / 2);
    let expected = (h.md(), h.gluing().to_vec());
    let target = (d / 2 + 1) as usize;
    let mut found = Vec::new();
    let mut scratch = Vec::new();
    for md in balanced_set(d, g) {
        let sys = SectionSystem::new(x, md);
        let torus = BundleTorus::new(x.clone(), md);
        for i in 0..torus.count() {
            let c = torus.gluing_at(i);
            if sys.h0_with(&c, &mut scratch) == target {
                found.push((md, c));
            }
        }
    }
    let counterexample = found.iter().find(|f| **f != expected).cloned();
    let pass = found == [expected.clone()];
    Ok(ZeroClassification { d, pass, found, expected, counterexample })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rng;
    use crate::curve::{random_curve, random_hyperelliptic_curve};

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn hyperelliptic_curves_have_index_zero() {
        let mut rng = Rng::new(50);
        for g in [3, 4] {
            let x = Arc::new(random_hyperelliptic_curve(g, &fp(7), &mut rng).unwrap());
            let rep = clifford_index(&x);
            assert_eq!(rep.cliff, Some(0));
            assert_eq!(rep.achiever.unwrap().md, Multidegree::new(1, 1));
            assert!(has_cliff_zero_witness(&x));
        }
    }

    #[test]
    fn general_curves_have_positive_index() {
        let mut rng = Rng::new(51);
        let mut seen = [0; 2];
        for _ in 0..6 {
            for g in [3, 4] {
                let x = Arc::new(random_curve(g, &fp(7), &mut rng).unwrap());
                if x.is_hyperelliptic().unwrap() {
                    continue;
                }
                let rep = clifford_index(&x);
                if g == 3 {
                    // h0 >= 2 and h1 >= 2 force a g^1_2 in genus 3
                    assert_eq!(rep.cliff, None);
                } else {
                    // the two trigonal pencils may be conjugate over F_{p^2}
                    assert!(rep.cliff.map_or(true, |c| c >= 1), "{rep:?}");
                }
                assert!(!has_cliff_zero_witness(&x));
                seen[(g - 3) as usize] += 1;
            }
        }
        assert!(seen[0] > 0 && seen[1] > 0);
    }

    #[test]
    fn genus_two_convention() {
        let x = Arc::new(random_curve(2, &fp(7), &mut Rng::new(1)).unwrap());
        assert_eq!(clifford_index(&x).cliff, Some(0));
        assert_eq!(clifford_index(&x).over, "F_7");
    }

    #[test]
    fn index_zero_classes_are_powers_of_the_pencil() {
        let mut rng = Rng::new(52);
        let x = Arc::new(random_hyperelliptic_curve(3, &fp(7), &mut rng).unwrap());
        for d in [0, 2, 4] {
            let v = clifford_zero_classification(&x, d).unwrap();
            assert!(v.pass, "{v:?}");
        }
        let v = clifford_zero_classification(&x, 0).unwrap();
        assert_eq!(v.found, vec![(Multidegree::new(0, 0), vec![1, 1, 1, 1])]);
        let w = LineBundle::canonical(x.clone()).unwrap();
        let v = clifford_zero_classification(&x, 4).unwrap();
        assert_eq!(v.found, vec![(w.md(), w.gluing().to_vec())]);
        assert!(clifford_zero_classification(&x, 3).is_err());
    }
}
