//! Arithmetic in ℚ(ζ_n) = ℚ[z]/(Φ_n).
//!
//! Elements are stored as coefficient vectors of length deg Φ_n, lowest degree first.
//! Reduction is the polynomial remainder modulo the monic Φ_n, so the representation
//! is canonical and equality is structural.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicField {
    n: u32,
    /// Φ_n, lowest degree first, monic.
    modulus: Vec<BigInt>,
}

impl CyclotomicField {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1, "cyclotomic order must be positive");
        CyclotomicField { n, modulus: cyclotomic_polynomial(n) }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Reduce an arbitrary polynomial modulo Φ_n into a vector of length `degree()`.
    pub fn reduce(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        while poly.len() > d {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            // x^k = -(Φ_n - x^d) x^(k-d)
            let shift = poly.len() - d;
            for (i, c) in self.modulus[..d].iter().enumerate() {
                if !c.is_zero() {
                    let sub = &top * BigRational::from_integer(c.clone());
                    poly[shift + i] -= sub;
                }
            }
        }
        poly.resize(d, BigRational::zero());
        poly
    }

    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.iter().all(Zero::is_zero) || b.iter().all(Zero::is_zero) {
            return vec![BigRational::zero(); self.degree()];
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        self.reduce(out)
    }

    /// Inverse modulo Φ_n via the extended Euclidean algorithm over ℚ.
    pub fn inverse(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        let a = trim(a.to_vec());
        if a.is_empty() {
            return None;
        }
        let m: Vec<BigRational> =
            self.modulus.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        // invariant: s_i * a ≡ r_i (mod m)
        let (mut r0, mut r1) = (m, a);
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
            (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul_plain(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is the gcd; Φ_n irreducible so it is a nonzero constant
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].recip();
        Some(self.reduce(s0.into_iter().map(|x| x * &c).collect()))
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
    p
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

fn mul_plain(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead = b.last().expect("division by zero polynomial").clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

/// Φ_n with integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = exact_int_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_int_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // b is monic
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + b.len() - 1].clone();
        if c.is_zero() {
            continue;
        }
        for (i, y) in b.iter().enumerate() {
            r[k + i] -= &c * y;
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn zeta_has_exact_order() {
        for n in [3u32, 5, 8, 12] {
            let f = CyclotomicField::new(n);
            let z = f.reduce(vec![BigRational::zero(), BigRational::one()]);
            let mut acc = f.reduce(vec![BigRational::one()]);
            for k in 1..=n {
                acc = f.mul(&acc, &z);
                let is_one = acc[0].is_one() && acc[1..].iter().all(Zero::is_zero);
                assert_eq!(is_one, k == n, "n={n} k={k}");
            }
        }
    }
}
