//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! An element is stored as its coefficient vector in the power basis
//! `1, ζ, …, ζ^{φ(m)-1}`, i.e. as the remainder of a rational polynomial
//! modulo the `m`-th cyclotomic polynomial. That remainder is unique, so the
//! representation is canonical and `PartialEq` on equal conductors is plain
//! vector equality.

use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num::integer::{gcd, lcm};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Coefficients of `Φ_m`, lowest degree first, obtained by exact division of
/// `x^m - 1` by `Φ_d` for every proper divisor `d` of `m`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic polynomials are indexed from 1");
    let mut num = vec![0i128; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let div: Vec<i128> = cyclotomic_polynomial(d).into_iter().map(i128::from).collect();
        num = exact_div_monic(&num, &div);
    }
    num.into_iter().map(|c| c as i64).collect()
}

fn exact_div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i128; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0), "division by a cyclotomic factor must be exact");
    quot
}

pub fn euler_phi(m: u32) -> u32 {
    (1..=m).filter(|k| gcd(*k, m) == 1).count() as u32
}

fn mobius(mut m: u32) -> i64 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

struct Ring {
    phi: usize,
    /// `powers[k]` is `ζ^k` in the power basis, for `0 <= k < m`.
    powers: Vec<Vec<i64>>,
    /// `Tr(ζ^k)` down to `Q` (a Ramanujan sum).
    traces: Vec<i64>,
}

impl Ring {
    fn build(m: u32) -> Ring {
        let poly = cyclotomic_polynomial(m);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic relation
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] -= top * poly[i];
                }
            }
        }
        let phi_m = euler_phi(m) as i64;
        let traces = (0..m)
            .map(|k| {
                let g = gcd(k, m);
                let q = m / g;
                mobius(q) * phi_m / euler_phi(q) as i64
            })
            .collect();
        Ring {
            phi,
            powers,
            traces,
        }
    }
}

fn ring(m: u32) -> Arc<Ring> {
    static RINGS: OnceLock<Mutex<HashMap<u32, Arc<Ring>>>> = OnceLock::new();
    let cache = RINGS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cyclotomic ring cache poisoned");
    guard.entry(m).or_insert_with(|| Arc::new(Ring::build(m))).clone()
}

/// Exact element of `Q(ζ_m)`.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    m: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(m: u32) -> Self {
        let phi = ring(m).phi;
        CyclotomicNumber {
            m,
            coeffs: vec![Rational::zero(); phi],
        }
    }

    pub fn from_rational(m: u32, r: Rational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(m: u32, n: i64) -> Self {
        Self::from_rational(m, rational_int(n))
    }

    pub fn one(m: u32) -> Self {
        Self::from_int(m, 1)
    }

    /// `ζ_m^k`, with `k` taken modulo `m`.
    pub fn zeta_power(m: u32, k: i64) -> Self {
        let r = ring(m);
        let k = k.rem_euclid(m as i64) as usize;
        CyclotomicNumber {
            m,
            coeffs: r.powers[k].iter().map(|&c| rational_int(c)).collect(),
        }
    }

    /// `Σ_k counts[k] ζ_m^k`. Used to turn integer tallies of root-of-unity
    /// exponents into a value without intermediate rational arithmetic.
    pub fn from_exponent_counts(m: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), m as usize);
        let r = ring(m);
        let mut acc = vec![0i64; r.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, p) in acc.iter_mut().zip(&r.powers[k]) {
                    *a += c * p;
                }
            }
        }
        CyclotomicNumber {
            m,
            coeffs: acc.into_iter().map(rational_int).collect(),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Image under `Q(ζ_m) → Q(ζ_target)`, `m | target`.
    pub fn lift(&self, target: u32) -> Self {
        assert!(target.is_multiple_of(self.m), "conductor {} does not divide {}", self.m, target);
        if target == self.m {
            return self.clone();
        }
        let r = ring(target);
        let step = (target / self.m) as usize;
        let mut out = vec![Rational::zero(); r.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&r.powers[(i * step) % target as usize]) {
                if *p != 0 {
                    *o += c * rational_int(*p);
                }
            }
        }
        CyclotomicNumber {
            m: target,
            coeffs: out,
        }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.m, b.m);
        (a.lift(m), b.lift(m))
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let r = ring(self.m);
        let m = self.m as usize;
        let mut out = vec![Rational::zero(); r.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&r.powers[(m - i) % m]) {
                if *p != 0 {
                    *o += c * rational_int(*p);
                }
            }
        }
        CyclotomicNumber { m: self.m, coeffs: out }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CyclotomicNumber {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Field trace down to `Q`.
    pub fn trace(&self) -> Rational {
        let r = ring(self.m);
        self.coeffs
            .iter()
            .zip(&r.traces)
            .fold(Rational::zero(), |acc, (c, t)| acc + c * rational_int(*t))
    }

    fn mul_same(&self, other: &Self) -> Self {
        let r = ring(self.m);
        let phi = r.phi;
        if phi == 1 {
            return CyclotomicNumber {
                m: self.m,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut acc = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Rational> = acc[..phi].to_vec();
        for (k, c) in acc.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&r.powers[k]) {
                if *p != 0 {
                    *o += c * rational_int(*p);
                }
            }
        }
        CyclotomicNumber {
            m: self.m,
            coeffs: out,
        }
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::aligned(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CyclotomicNumber {}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, other: &CyclotomicNumber) -> CyclotomicNumber {
        if self.m != other.m {
            let (a, b) = CyclotomicNumber::aligned(self, other);
            return &a + &b;
        }
        CyclotomicNumber {
            m: self.m,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, other: &CyclotomicNumber) -> CyclotomicNumber {
        self + &(-other)
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, other: &CyclotomicNumber) -> CyclotomicNumber {
        if self.m != other.m {
            let (a, b) = CyclotomicNumber::aligned(self, other);
            return a.mul_same(&b);
        }
        self.mul_same(other)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, other: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&other)
            }
        }
        impl $tr<&CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, other: &CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, other: &CyclotomicNumber) {
        if self.m == other.m {
            for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + other;
        }
    }
}

impl<'a> Sum<&'a CyclotomicNumber> for Option<CyclotomicNumber> {
    fn sum<I: Iterator<Item = &'a CyclotomicNumber>>(iter: I) -> Self {
        let mut acc: Option<CyclotomicNumber> = None;
        for x in iter {
            match acc.as_mut() {
                Some(a) => *a += x,
                None => acc = Some(x.clone()),
            }
        }
        acc
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            let body = match i {
                0 => fmt_rational(&mag),
                _ => {
                    let unit = if i == 1 {
                        format!("E({})", self.m)
                    } else {
                        format!("E({})^{}", self.m, i)
                    };
                    if mag.is_one() {
                        unit
                    } else {
                        format!("{}*{}", fmt_rational(&mag), unit)
                    }
                }
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { "-" } else { "+" });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

fn json_int(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<[serde_json::Value; 2]> = self
            .coeffs
            .iter()
            .map(|c| [json_int(c.numer()), json_int(c.denom())])
            .collect();
        let mut st = serializer.serialize_struct("CyclotomicNumber", 3)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("text", &self.to_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for m in 1..40 {
            assert_eq!(cyclotomic_polynomial(m).len() as u32 - 1, euler_phi(m));
        }
    }

    #[test]
    fn roots_of_unity() {
        let z3 = CyclotomicNumber::zeta_power(3, 1);
        assert_eq!(&(&z3 * &z3) * &z3, CyclotomicNumber::one(3));
        assert_eq!(z3.conj(), CyclotomicNumber::zeta_power(3, 2));
        let s = (0..3).map(|k| CyclotomicNumber::zeta_power(3, k)).fold(CyclotomicNumber::zero(3), |a, b| a + b);
        assert!(s.is_zero());
        assert_eq!(CyclotomicNumber::zeta_power(2, 1), CyclotomicNumber::from_int(2, -1));
        assert_eq!(CyclotomicNumber::zeta_power(4, 2), CyclotomicNumber::from_int(4, -1));
    }

    #[test]
    fn mixed_conductors_lift() {
        let z3 = CyclotomicNumber::zeta_power(3, 1);
        let z6_2 = CyclotomicNumber::zeta_power(6, 2);
        assert_eq!(z3, z6_2);
        let i = CyclotomicNumber::zeta_power(4, 1);
        let prod = &i * &z3;
        assert_eq!(prod.conductor(), 12);
        assert_eq!(prod, CyclotomicNumber::zeta_power(12, 7));
    }

    #[test]
    fn traces() {
        assert_eq!(CyclotomicNumber::one(6).trace(), rational_int(2));
        assert_eq!(CyclotomicNumber::zeta_power(3, 1).trace(), rational_int(-1));
        assert_eq!(CyclotomicNumber::zeta_power(4, 1).trace(), rational_int(0));
        assert_eq!(CyclotomicNumber::zeta_power(5, 2).trace(), rational_int(-1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(CyclotomicNumber::from_rational(6, rational(7, 2)).to_string(), "7/2");
        assert_eq!(CyclotomicNumber::zero(3).to_string(), "0");
        let x = &CyclotomicNumber::from_int(6, -1) + &CyclotomicNumber::zeta_power(6, 1).scale(&rational_int(-2));
        assert_eq!(x.to_string(), "-1-2*E(6)");
        assert_eq!(CyclotomicNumber::zeta_power(5, 3).to_string(), "E(5)^3");
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(CyclotomicNumber::from_rational(3, rational(7, 2))).unwrap();
        assert_eq!(v["m"], 3);
        assert_eq!(v["coeffs"][0], serde_json::json!([7, 2]));
        assert_eq!(v["text"], "7/2");
    }
}
