//! Exact arithmetic: prime fields, cyclotomic numbers, and the additive and
//! multiplicative characters of `F_p` that all character values are built from.

pub mod cyclotomic;
pub mod field;

pub use cyclotomic::{cyclotomic_polynomial, rational, rational_int, CyclotomicNumber, Rational};
pub use field::{FieldElement, PrimeField};

use num::integer::lcm;

use crate::error::{Error, Result};

/// The value ring shared by every character of `UT_n(F_p)` and `T_n(F_p)`.
///
/// Values live in `Q(ζ_m)` with `m = lcm(p, p-1)`, so additive characters
/// (`p`-th roots of unity) and torus characters (`(p-1)`-th roots) multiply
/// without conductor changes. The additive character is `t ↦ ζ_p^t` and
/// torus characters are indexed against the smallest primitive root.
#[derive(Clone, Debug)]
pub struct CharacterContext {
    field: PrimeField,
    m: u32,
}

impl CharacterContext {
    pub fn new(p: u32) -> Result<Self> {
        let field = PrimeField::new(p)?;
        Ok(CharacterContext {
            m: lcm(p, p - 1),
            field,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// Exponent `k` with `ε^t = ζ_m^k`.
    #[inline]
    pub fn additive_exponent(&self, t: u8) -> usize {
        (t as usize * (self.m / self.field.p()) as usize) % self.m as usize
    }

    /// Exponent `k` with `θ_index(u) = ζ_m^k`.
    #[inline]
    pub fn multiplicative_exponent(&self, index: u32, u: u8) -> usize {
        let step = (self.m / (self.field.p() - 1)) as u64;
        (step * index as u64 * self.field.log(u) as u64 % self.m as u64) as usize
    }

    pub fn additive_character(&self, t: FieldElement) -> Result<CyclotomicNumber> {
        if t.modulus() != self.p() {
            return Err(Error::ModulusMismatch(t.modulus(), self.p()));
        }
        Ok(CyclotomicNumber::zeta_power(self.m, self.additive_exponent(t.value() as u8) as i64))
    }

    pub fn multiplicative_character(&self, index: u32, u: FieldElement) -> Result<CyclotomicNumber> {
        if u.modulus() != self.p() {
            return Err(Error::ModulusMismatch(u.modulus(), self.p()));
        }
        if u.is_zero() {
            return Err(Error::ZeroInverse(self.p()));
        }
        if index >= self.p() - 1 {
            return Err(Error::Invalid(format!(
                "character index {index} out of range for F_{}^*",
                self.p()
            )));
        }
        Ok(CyclotomicNumber::zeta_power(
            self.m,
            self.multiplicative_exponent(index, u.value() as u8) as i64,
        ))
    }

    pub fn zeta(&self, k: usize) -> CyclotomicNumber {
        CyclotomicNumber::zeta_power(self.m, k as i64)
    }

    pub fn int(&self, n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_int(self.m, n)
    }

    pub fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber::zero(self.m)
    }

    pub fn from_counts(&self, counts: &[i64]) -> CyclotomicNumber {
        CyclotomicNumber::from_exponent_counts(self.m, counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fe(v: u64, p: u32) -> FieldElement {
        FieldElement::new(v, p).unwrap()
    }

    #[test]
    fn additive_character_examples() {
        let c2 = CharacterContext::new(2).unwrap();
        assert_eq!(c2.additive_character(fe(1, 2)).unwrap(), c2.int(-1));
        let c3 = CharacterContext::new(3).unwrap();
        assert_eq!(c3.additive_character(fe(1, 3)).unwrap(), CyclotomicNumber::zeta_power(3, 1));
        let total = (0..3)
            .map(|t| c3.additive_character(fe(t, 3)).unwrap())
            .fold(c3.zero(), |a, b| a + b);
        assert!(total.is_zero());
    }

    #[test]
    fn multiplicative_character_examples() {
        let c3 = CharacterContext::new(3).unwrap();
        assert_eq!(c3.multiplicative_character(1, fe(2, 3)).unwrap(), c3.int(-1));
        assert_eq!(c3.multiplicative_character(0, fe(2, 3)).unwrap(), c3.int(1));
        let c5 = CharacterContext::new(5).unwrap();
        assert_eq!(c5.multiplicative_character(1, fe(4, 5)).unwrap(), c5.int(-1));
        assert_eq!(
            c5.multiplicative_character(1, fe(2, 5)).unwrap(),
            CyclotomicNumber::zeta_power(4, 1)
        );
        assert!(c5.multiplicative_character(1, fe(0, 5)).is_err());
        assert!(c5.multiplicative_character(4, fe(1, 5)).is_err());
    }

    #[test]
    fn character_sums_vanish_off_zero() {
        for p in [2u32, 3, 5, 7] {
            let ctx = CharacterContext::new(p).unwrap();
            for c in 0..p {
                let s = (0..p)
                    .map(|t| ctx.additive_character(fe((c * t) as u64, p)).unwrap())
                    .fold(ctx.zero(), |a, b| a + b);
                let expected = if c == 0 { ctx.int(p as i64) } else { ctx.zero() };
                assert_eq!(s, expected);
            }
        }
    }

    fn arb_element(m: u32) -> impl Strategy<Value = CyclotomicNumber> {
        let phi = cyclotomic_polynomial(m).len() - 1;
        prop::collection::vec((-20i64..20, 1i64..6), phi).prop_map(move |cs| {
            cs.into_iter()
                .enumerate()
                .map(|(k, (a, b))| CyclotomicNumber::zeta_power(m, k as i64).scale(&rational(a, b)))
                .fold(CyclotomicNumber::zero(m), |acc, x| acc + x)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_element(12), b in arb_element(12), c in arb_element(12)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert!((&a - &a).coeffs().iter().all(num::Zero::is_zero));
        }

        #[test]
        fn conjugation_is_an_involutive_automorphism(a in arb_element(6), b in arb_element(6)) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
            prop_assert!((&a * &a.conj()).trace() >= rational_int(0));
        }

        #[test]
        fn additive_character_is_a_homomorphism(s in 0u64..7, t in 0u64..7) {
            let ctx = CharacterContext::new(7).unwrap();
            let lhs = ctx.additive_character(fe(s + t, 7)).unwrap();
            let rhs = &ctx.additive_character(fe(s, 7)).unwrap() * &ctx.additive_character(fe(t, 7)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
