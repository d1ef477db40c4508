//! Dense univariate polynomials over a [`Field`], coefficients low-to-high.

use super::field::Field;

/// Drop trailing zero coefficients.
pub fn trimmed<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let len = a.iter().rposition(|c| !f.is_zero(c)).map_or(0, |i| i + 1);
    a[..len].to_vec()
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Remainder of `a` by nonzero `b`.
pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let b = trimmed(f, b);
    assert!(!b.is_empty(), "division by the zero polynomial");
    let lead_inv = f.inv(b.last().unwrap()).unwrap();
    let mut r = trimmed(f, a);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = f.mul(r.last().unwrap(), &lead_inv);
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = f.sub(&r[shift + i], &f.mul(&factor, bc));
        }
        r = trimmed(f, &r);
    }
    r
}

/// Monic gcd; the zero polynomial is returned as an empty vector.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = trimmed(f, a);
    let mut y = trimmed(f, b);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let a = trimmed(f, a);
    match a.last() {
        None => a,
        Some(lead) => {
            let li = f.inv(lead).unwrap();
            a.iter().map(|c| f.mul(c, &li)).collect()
        }
    }
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    #[test]
    fn gcd_of_products() {
        let f = PrimeField::new(7).unwrap();
        // (t-1)(t-2) and (t-2)(t-3)
        let a = mul(&f, &[6, 1], &[5, 1]);
        let b = mul(&f, &[5, 1], &[4, 1]);
        assert_eq!(gcd(&f, &a, &b), vec![5, 1]);
        assert_eq!(gcd(&f, &a, &[]), monic(&f, &a));
        assert!(gcd(&f, &[], &[]).is_empty());
    }

    #[test]
    fn horner_eval() {
        let f = PrimeField::new(11).unwrap();
        assert_eq!(eval(&f, &[1, 2, 3], &2), (1 + 4 + 12) % 11);
    }
}
