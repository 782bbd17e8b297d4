//! Prime fields `F_p` for small primes.
//!
//! [`FieldElement`] is the checked, self-describing value type. Hot loops
//! (matrix products, orbit searches) go through [`PrimeField`], which works on
//! bare residues and keeps log/antilog tables for the multiplicative group.

use std::fmt;

use crate::error::{Error, Result};

/// A residue modulo a prime `p < 256`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u32,
    modulus: u32,
}

impl FieldElement {
    pub fn new(value: u64, modulus: u32) -> Result<Self> {
        if !is_small_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        Ok(FieldElement {
            value: (value % modulus as u64) as u32,
            modulus,
        })
    }

    pub fn from_i64(value: i64, modulus: u32) -> Result<Self> {
        let m = modulus as i64;
        FieldElement::new(value.rem_euclid(m.max(1)) as u64, modulus)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn add(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(FieldElement {
            value: (self.value + other.value) % self.modulus,
            modulus: self.modulus,
        })
    }

    pub fn sub(self, other: Self) -> Result<Self> {
        self.add(other.neg())
    }

    pub fn mul(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(FieldElement {
            value: self.value * other.value % self.modulus,
            modulus: self.modulus,
        })
    }

    pub fn neg(self) -> Self {
        FieldElement {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::ZeroInverse(self.modulus));
        }
        Ok(FieldElement {
            value: pow_mod(self.value, self.modulus - 2, self.modulus),
            modulus: self.modulus,
        })
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub(crate) fn is_small_prime(p: u32) -> bool {
    if !(2..256).contains(&p) {
        return false;
    }
    (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn pow_mod(mut base: u32, mut exp: u32, m: u32) -> u32 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Smallest primitive root modulo the prime `p`.
pub fn smallest_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let order = p - 1;
    let factors: Vec<u32> = (2..=order).filter(|d| order.is_multiple_of(*d) && is_small_prime(*d)).collect();
    (2..p)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, order / f, p) != 1))
        .expect("every prime field has a primitive root")
}

/// Arithmetic context for `F_p` over bare `u8` residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
    generator: u32,
    /// `log[u]` is the discrete log of `u` to the base `generator`; `log[0]` is unused.
    log: Vec<u32>,
    exp: Vec<u8>,
    inv: Vec<u8>,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_small_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let generator = smallest_primitive_root(p);
        let mut log = vec![0u32; p as usize];
        let mut exp = Vec::with_capacity((p - 1) as usize);
        let mut acc = 1u32;
        for k in 0..p - 1 {
            exp.push(acc as u8);
            log[acc as usize] = k;
            acc = acc * generator % p;
        }
        let mut inv = vec![0u8; p as usize];
        for u in 1..p {
            inv[u as usize] = pow_mod(u, p - 2, p) as u8;
        }
        Ok(PrimeField {
            p,
            generator,
            log,
            exp,
            inv,
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.p) as u8
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.p - b as u32) % self.p) as u8
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        (a as u32 * b as u32 % self.p) as u8
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        ((self.p - a as u32) % self.p) as u8
    }

    /// Inverse of a nonzero residue; callers guarantee `a != 0`.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn checked_inv(&self, a: u8) -> Result<u8> {
        if (a as u32).is_multiple_of(self.p) {
            return Err(Error::ZeroInverse(self.p));
        }
        Ok(self.inv[a as usize])
    }

    /// Discrete logarithm of a nonzero residue to the fixed generator.
    #[inline]
    pub fn log(&self, a: u8) -> u32 {
        debug_assert!(a != 0);
        self.log[a as usize]
    }

    #[inline]
    pub fn exp(&self, k: u32) -> u8 {
        self.exp[(k % (self.p - 1)) as usize]
    }

    pub fn element(&self, value: u32) -> FieldElement {
        FieldElement {
            value: value % self.p,
            modulus: self.p,
        }
    }

    /// Nonzero residues in increasing order.
    pub fn units(&self) -> impl Iterator<Item = u8> {
        (1..self.p).map(|u| u as u8)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_identities() {
        let two = FieldElement::new(2, 3).unwrap();
        assert_eq!(two.add(two).unwrap().value(), 1);
        let two5 = FieldElement::new(2, 5).unwrap();
        assert_eq!(two5.inv().unwrap().value(), 3);
        assert_eq!(FieldElement::new(0, 2).unwrap().inv(), Err(Error::ZeroInverse(2)));
        assert_eq!(two.add(two5), Err(Error::ModulusMismatch(3, 5)));
        assert_eq!(FieldElement::new(1, 4), Err(Error::NotPrime(4)));
        assert_eq!(FieldElement::from_i64(-1, 5).unwrap().value(), 4);
        assert_eq!(two.neg().value(), 1);
        assert_eq!(two.sub(two).unwrap().value(), 0);
        assert_eq!(two5.mul(two5).unwrap().value(), 4);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(smallest_primitive_root(2), 1);
        assert_eq!(smallest_primitive_root(3), 2);
        assert_eq!(smallest_primitive_root(5), 2);
        assert_eq!(smallest_primitive_root(7), 3);
        assert_eq!(smallest_primitive_root(23), 5);
    }

    #[test]
    fn tables_are_consistent() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            let f = PrimeField::new(p).unwrap();
            for u in f.units() {
                assert_eq!(f.mul(u, f.inv(u)), 1);
                assert_eq!(f.exp(f.log(u)), u);
            }
            assert_eq!(f.checked_inv(0), Err(Error::ZeroInverse(p)));
        }
    }
}
