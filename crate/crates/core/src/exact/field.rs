use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclotomic::CyclotomicField;
use crate::error::{Error, Result};

/// A computable ground field.
#[derive(Clone, Debug)]
pub enum Field {
    Rationals,
    Prime(u64),
    Cyclotomic(Arc<CyclotomicField>),
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Field::Rationals, Field::Rationals) => true,
            (Field::Prime(p), Field::Prime(q)) => p == q,
            (Field::Cyclotomic(a), Field::Cyclotomic(b)) => a.order() == b.order(),
            _ => false,
        }
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.to_string().hash(state)
    }
}

/// An element of a [`Field`] in canonical form.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, p: u64 },
    Cyc { coeffs: Vec<BigRational>, field: Arc<CyclotomicField> },
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::InvalidField(format!("Fp {p}: modulus must be a prime below 2^32")));
        }
        Ok(Field::Prime(p))
    }

    pub fn cyclotomic(n: u32) -> Result<Field> {
        if n == 0 || n > 512 {
            return Err(Error::InvalidField(format!("Cyclotomic {n}: order must be in 1..=512")));
        }
        Ok(Field::Cyclotomic(Arc::new(CyclotomicField::new(n))))
    }

    /// Parse `Q`, `Fp 5` or `Cyclotomic 8` (a leading `field` keyword is accepted).
    pub fn parse(spec: &str) -> Result<Field> {
        let words: Vec<&str> = spec
            .split(|c: char| c.is_whitespace() || c == ':')
            .filter(|w| !w.is_empty())
            .collect();
        let words = match words.first() {
            Some(&"field") => &words[1..],
            _ => &words[..],
        };
        let bad = || Error::InvalidField(spec.trim().to_string());
        match words {
            ["Q"] | ["QQ"] => Ok(Field::Rationals),
            ["Fp", p] | ["F", p] | ["GF", p] => Field::prime(p.parse().map_err(|_| bad())?),
            ["Cyclotomic", n] | ["Cyc", n] => Field::cyclotomic(n.parse().map_err(|_| bad())?),
            [w] if w.starts_with("Fp") && w.len() > 2 => {
                Field::prime(w[2..].parse().map_err(|_| bad())?)
            }
            [w] if w.starts_with('F') && w.len() > 1 => Field::prime(w[1..].parse().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(BigInt::from(v))).expect("integers embed")
    }

    /// Image of a rational number; fails in 𝔽_p when p divides the denominator.
    pub fn from_rational(&self, r: BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rat(r)),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let num = r.numer().mod_floor(&pb).to_u64().unwrap();
                let den = r.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let value = mulmod(num, powmod(den, p - 2, *p), *p);
                Ok(Scalar::Mod { value, p: *p })
            }
            Field::Cyclotomic(c) => {
                let mut coeffs = vec![BigRational::zero(); c.degree()];
                coeffs[0] = r;
                Ok(Scalar::Cyc { coeffs, field: c.clone() })
            }
        }
    }

    /// The distinguished primitive root ζ_n of a cyclotomic field.
    pub fn zeta(&self) -> Option<Scalar> {
        match self {
            Field::Cyclotomic(c) => {
                let coeffs = c.reduce(vec![BigRational::zero(), BigRational::one()]);
                Some(Scalar::Cyc { coeffs, field: c.clone() })
            }
            _ => None,
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match (self, x) {
            (Field::Rationals, Scalar::Rat(_)) => true,
            (Field::Prime(p), Scalar::Mod { p: q, .. }) => p == q,
            (Field::Cyclotomic(a), Scalar::Cyc { field, .. }) => a.order() == field.order(),
            _ => false,
        }
    }

    /// The group of n-th roots of unity in this field, listed as powers w⁰, w¹, … of a generator.
    pub fn roots_of_unity(&self, n: u64) -> Vec<Scalar> {
        let one = self.one();
        let mut candidates: Vec<Scalar> = match self {
            Field::Rationals => vec![self.from_i64(1), self.from_i64(-1)],
            Field::Prime(p) => (1..*p).map(|v| Scalar::Mod { value: v, p: *p }).collect(),
            Field::Cyclotomic(c) => {
                let z = self.zeta().unwrap();
                let m = c.order() as u64;
                let mut v = Vec::new();
                let mut acc = one.clone();
                for _ in 0..m {
                    v.push(acc.clone());
                    v.push(-&acc);
                    acc = &acc * &z;
                }
                v
            }
        };
        candidates.retain(|x| x.pow(n) == one);
        let mut uniq: Vec<Scalar> = Vec::new();
        for c in candidates {
            if !uniq.contains(&c) {
                uniq.push(c);
            }
        }
        let r = uniq.len() as u64;
        let generator = uniq
            .iter()
            .find(|w| (1..r).all(|k| w.pow(k) != one))
            .cloned()
            .unwrap_or_else(|| one.clone());
        let mut out = Vec::with_capacity(r as usize);
        let mut acc = one;
        for _ in 0..r {
            out.push(acc.clone());
            acc = &acc * &generator;
        }
        out
    }

    /// Parse an exact literal: `-3/4` over ℚ or 𝔽_p, `1+2*z-1/2*z^3` over ℚ(ζ_n).
    pub fn parse_literal(&self, text: &str) -> Result<Scalar> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| Error::Literal { literal: text.to_string(), reason: reason.into() };
        if s.is_empty() {
            return Err(err("empty literal"));
        }
        let s = s.trim_matches('"');
        match self {
            Field::Cyclotomic(c) => {
                let mut poly: Vec<BigRational> = Vec::new();
                for (sign, term) in split_terms(s).map_err(|e| err(&e))? {
                    let (coef, deg) = parse_monomial(term).map_err(|e| err(&e))?;
                    if poly.len() <= deg {
                        poly.resize(deg + 1, BigRational::zero());
                    }
                    if sign {
                        poly[deg] -= coef;
                    } else {
                        poly[deg] += coef;
                    }
                }
                Ok(Scalar::Cyc { coeffs: c.reduce(poly), field: c.clone() })
            }
            _ => {
                if s.contains('z') {
                    return Err(err("z is only available in cyclotomic fields"));
                }
                let r = parse_rational(s).map_err(|e| err(&e))?;
                self.from_rational(r)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
            Field::Cyclotomic(c) => write!(f, "Cyclotomic {}", c.order()),
        }
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad numerator {n:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad denominator {d:?}"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(n, d))
}

/// Split `a+b-c` into signed terms; the bool is true for a minus sign.
fn split_terms(s: &str) -> std::result::Result<Vec<(bool, &str)>, String> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut neg = false;
    if let Some(&b) = bytes.first() {
        if b == b'-' || b == b'+' {
            neg = b == b'-';
            start = 1;
        }
    }
    let mut i = start;
    while i <= bytes.len() {
        // a sign after '^' belongs to nothing useful, but after '/' or '*' it is malformed anyway
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start) {
            let term = &s[start..i];
            if term.is_empty() {
                return Err("empty term".into());
            }
            out.push((neg, term));
            if i < bytes.len() {
                neg = bytes[i] == b'-';
            }
            start = i + 1;
        }
        i += 1;
    }
    Ok(out)
}

fn parse_monomial(term: &str) -> std::result::Result<(BigRational, usize), String> {
    let Some(zpos) = term.find('z') else {
        return Ok((parse_rational(term)?, 0));
    };
    let coef = term[..zpos].trim_end_matches('*');
    let coef = if coef.is_empty() { BigRational::one() } else { parse_rational(coef)? };
    let rest = &term[zpos + 1..];
    let deg = if rest.is_empty() {
        1
    } else if let Some(e) = rest.strip_prefix('^') {
        e.parse::<usize>().map_err(|_| format!("bad exponent {e:?}"))?
    } else {
        return Err(format!("unexpected {rest:?} after z"));
    };
    if deg > 4096 {
        return Err("exponent too large".into());
    }
    Ok((coef, deg))
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Cyc { coeffs, .. } => coeffs.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Cyc { coeffs, .. } => {
                coeffs[0].is_one() && coeffs[1..].iter().all(Zero::is_zero)
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::Prime(*p),
            Scalar::Cyc { field, .. } => Field::Cyclotomic(field.clone()),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { value, p } => Scalar::Mod { value: powmod(*value, p - 2, *p), p: *p },
            Scalar::Cyc { coeffs, field } => {
                Scalar::Cyc { coeffs: field.inverse(coeffs)?, field: field.clone() }
            }
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv().ok_or(Error::DivisionByZero)?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut acc = self.field().one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// The rational value, when the element lies in the prime subfield ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Cyc { coeffs, .. } if coeffs[1..].iter().all(Zero::is_zero) => {
                Some(coeffs[0].clone())
            }
            _ => None,
        }
    }
}

fn same_kind_panic(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $modp:expr, $cyc:expr) => {
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat($rat(a, b)),
                    (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                        Scalar::Mod { value: $modp(*a, *b, *p), p: *p }
                    }
                    (Scalar::Cyc { coeffs: a, field }, Scalar::Cyc { coeffs: b, field: g })
                        if field.order() == g.order() =>
                    {
                        Scalar::Cyc { coeffs: $cyc(field, a, b), field: field.clone() }
                    }
                    _ => same_kind_panic(self, rhs),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $trait<&'b Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(
    Add,
    add,
    |a: &BigRational, b: &BigRational| a + b,
    |a: u64, b: u64, p: u64| (a + b) % p,
    |_f: &Arc<CyclotomicField>, a: &[BigRational], b: &[BigRational]| a
        .iter()
        .zip(b)
        .map(|(x, y)| x + y)
        .collect::<Vec<_>>()
);
binop!(
    Sub,
    sub,
    |a: &BigRational, b: &BigRational| a - b,
    |a: u64, b: u64, p: u64| (a + p - b) % p,
    |_f: &Arc<CyclotomicField>, a: &[BigRational], b: &[BigRational]| a
        .iter()
        .zip(b)
        .map(|(x, y)| x - y)
        .collect::<Vec<_>>()
);
binop!(
    Mul,
    mul,
    |a: &BigRational, b: &BigRational| a * b,
    mulmod,
    |f: &Arc<CyclotomicField>, a: &[BigRational], b: &[BigRational]| f.mul(a, b)
);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, p } => Scalar::Mod { value: (p - value) % p, p: *p },
            Scalar::Cyc { coeffs, field } => {
                Scalar::Cyc { coeffs: coeffs.iter().map(|x| -x).collect(), field: field.clone() }
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) => a == b && p == q,
            (Scalar::Cyc { coeffs: a, field: f }, Scalar::Cyc { coeffs: b, field: g }) => {
                f.order() == g.order() && a == b
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Rat(a) => a.hash(state),
            Scalar::Mod { value, p } => (value, p).hash(state),
            Scalar::Cyc { coeffs, field } => {
                field.order().hash(state);
                coeffs.hash(state);
            }
        }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Cyc { coeffs, .. } => {
                let mut out = String::new();
                for (k, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c.is_negative();
                    let a = c.abs();
                    let body = match (k, a.is_one()) {
                        (0, _) => fmt_rational(&a),
                        (1, true) => "z".to_string(),
                        (1, false) => format!("{}*z", fmt_rational(&a)),
                        (_, true) => format!("z^{k}"),
                        (_, false) => format!("{}*z^{k}", fmt_rational(&a)),
                    };
                    if neg {
                        out.push('-');
                    } else if !out.is_empty() {
                        out.push('+');
                    }
                    out.push_str(&body);
                }
                if out.is_empty() {
                    out.push('0');
                }
                write!(f, "{out}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_field_specs() {
        assert_eq!(Field::parse("field Q").unwrap(), Field::Rationals);
        assert_eq!(Field::parse("Fp 5").unwrap(), Field::Prime(5));
        assert_eq!(Field::parse("Fp5").unwrap(), Field::Prime(5));
        assert_eq!(Field::parse("field Cyclotomic 8").unwrap().to_string(), "Cyclotomic 8");
        assert!(Field::parse("Fp 6").is_err());
        assert!(Field::parse("R").is_err());
    }

    #[test]
    fn literals_round_trip() {
        let q = Field::Rationals;
        assert_eq!(q.parse_literal("-6/4").unwrap().to_string(), "-3/2");
        let f5 = Field::Prime(5);
        assert_eq!(f5.parse_literal("1/2").unwrap().to_string(), "3");
        assert_eq!(f5.parse_literal("-1").unwrap().to_string(), "4");
        assert!(f5.parse_literal("1/5").is_err());
        let c8 = Field::parse("Cyclotomic 8").unwrap();
        let x = c8.parse_literal("1+2*z-1/2*z^3").unwrap();
        assert_eq!(x.to_string(), "1+2*z-1/2*z^3");
        assert_eq!(c8.parse_literal(&x.to_string()).unwrap(), x);
        // z^4 = -1 in ℚ(ζ_8)
        assert_eq!(c8.parse_literal("z^4").unwrap(), c8.from_i64(-1));
        assert_eq!(c8.parse_literal("-z^5").unwrap().to_string(), "z");
    }

    #[test]
    fn cyclotomic_inverse() {
        let c3 = Field::parse("Cyclotomic 3").unwrap();
        let z = c3.zeta().unwrap();
        let zi = z.inv().unwrap();
        assert_eq!(&z * &zi, c3.one());
        assert_eq!(zi, &z * &z);
        let w = c3.parse_literal("2-3*z").unwrap();
        assert_eq!(&w * &w.inv().unwrap(), c3.one());
    }

    #[test]
    fn roots_of_unity_are_generated_in_order() {
        let c3 = Field::parse("Cyclotomic 3").unwrap();
        let r = c3.roots_of_unity(3);
        assert_eq!(r.len(), 3);
        assert!(r[0].is_one());
        assert_eq!(&r[1] * &r[1], r[2]);
        assert_eq!(Field::Prime(2).roots_of_unity(2).len(), 1);
        assert_eq!(Field::Prime(5).roots_of_unity(4).len(), 4);
        assert_eq!(Field::Rationals.roots_of_unity(2).len(), 2);
        assert_eq!(Field::Rationals.roots_of_unity(3).len(), 1);
    }
}
