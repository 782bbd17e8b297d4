//! Brute-force model of `NS` and `NPS` as actual noncommutative polynomials
//! over a finite alphabet. Products are word concatenation, coproducts come
//! from substituting the sum of two commuting copies of the alphabet; both
//! are read back in the monomial basis from the letter patterns of words.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::Rational;
use crate::combinatorics::{RiggedPartition, SetPartition};
use crate::error::{Error, Result};
use crate::hopf::{GradedElement, NpsElement, NsElement, Tensor};

/// A letter `x_i` of the symmetric alphabet or `y_c` of the fixed one, on
/// side 0 or 1 of `X' ⊔ X''`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Letter {
    X(u8, usize),
    Y(u8, u32),
}

impl Letter {
    fn side(self) -> u8 {
        match self {
            Letter::X(s, _) | Letter::Y(s, _) => s,
        }
    }
}

type Word = Vec<Letter>;
type Polynomial = BTreeMap<Word, i64>;

/// `m_𝒫` over `letters` symmetric letters per side; rigged point `c` becomes
/// `y_c` on any of the `sides`.
fn expand(p: &RiggedPartition, letters: usize, sides: u8) -> Polynomial {
    let blocks = p.blocks().blocks();
    let n = p.n();
    let mut out = Polynomial::new();
    // injective choices of (side, letter) per block
    let pool: Vec<(u8, usize)> = (0..sides).flat_map(|s| (0..letters).map(move |i| (s, i))).collect();
    let mut choice: Vec<(u8, usize)> = Vec::new();
    fn assign(
        depth: usize,
        pool: &[(u8, usize)],
        choice: &mut Vec<(u8, usize)>,
        f: &mut dyn FnMut(&[(u8, usize)]),
        total: usize,
    ) {
        if depth == total {
            f(choice);
            return;
        }
        for &c in pool {
            if !choice.contains(&c) {
                choice.push(c);
                assign(depth + 1, pool, choice, f, total);
                choice.pop();
            }
        }
    }
    let rigged: Vec<(usize, u32)> = p.rigging().iter().map(|(&i, &c)| (i, c)).collect();
    assign(0, &pool, &mut choice, &mut |ch| {
        for mask in 0u64..(sides as u64).pow(rigged.len() as u32) {
            let mut word = vec![Letter::X(0, 0); n];
            for (b, block) in blocks.iter().enumerate() {
                for &i in block {
                    word[i - 1] = Letter::X(ch[b].0, ch[b].1);
                }
            }
            let mut m = mask;
            for &(i, c) in &rigged {
                word[i - 1] = Letter::Y((m % sides as u64) as u8, c);
                m /= sides as u64;
            }
            *out.entry(word).or_insert(0) += 1;
        }
    }, blocks.len());
    out
}

/// The rigged partition recording which positions of `word` share a
/// symmetric letter, and the fixed letters.
fn pattern(word: &[Letter]) -> RiggedPartition {
    let mut blocks: BTreeMap<Letter, Vec<usize>> = BTreeMap::new();
    let mut rigging = BTreeMap::new();
    for (i, &l) in word.iter().enumerate() {
        match l {
            Letter::X(..) => blocks.entry(l).or_default().push(i + 1),
            Letter::Y(_, c) => {
                rigging.insert(i + 1, c);
            }
        }
    }
    let blocks = SetPartition::new(blocks.into_values().collect()).expect("positions are distinct");
    RiggedPartition::new(word.len(), blocks, rigging).expect("every position is covered")
}

/// Reads `Σ_w c_w w` back as `Σ c_R m_R`, requiring every word of a pattern
/// to carry the same coefficient and every such word to be present.
fn read_back(poly: &Polynomial, letters: usize) -> Result<NpsElement> {
    let mut by_pattern: BTreeMap<RiggedPartition, BTreeSet<i64>> = BTreeMap::new();
    let mut counts: BTreeMap<RiggedPartition, usize> = BTreeMap::new();
    for (w, &c) in poly {
        let r = pattern(w);
        by_pattern.entry(r.clone()).or_default().insert(c);
        *counts.entry(r).or_insert(0) += 1;
    }
    let mut out = NpsElement::zero();
    for (r, coeffs) in by_pattern {
        let full = falling(letters, r.blocks().num_blocks());
        if coeffs.len() != 1 || counts[&r] != full {
            return Err(Error::Verification(format!("the polynomial is not symmetric at pattern {r}")));
        }
        let c = *coeffs.iter().next().unwrap();
        out.add_term(r, Rational::from_integer(c.into()));
    }
    Ok(out)
}

fn falling(n: usize, k: usize) -> usize {
    (0..k).map(|i| n.saturating_sub(i)).product()
}

fn multiply(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut out = Polynomial::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            *out.entry(w).or_insert(0) += x * y;
        }
    }
    out
}

/// `m_𝒫 m_𝒬` computed from polynomials over `blocks(𝒫) + blocks(𝒬)` letters.
pub fn product_oracle_rigged(p: &RiggedPartition, q: &RiggedPartition) -> Result<NpsElement> {
    let letters = p.blocks().num_blocks() + q.blocks().num_blocks();
    read_back(&multiply(&expand(p, letters, 1), &expand(q, letters, 1)), letters)
}

/// `Δ(m_𝒫)` from `m_𝒫(X' + X'', Y' + Y'')`.
pub fn coproduct_oracle_rigged(p: &RiggedPartition) -> Result<Tensor<RiggedPartition>> {
    let letters = p.blocks().num_blocks();
    let poly = expand(p, letters, 2);
    // commuting copies: w ↦ (w restricted to side 0, w restricted to side 1)
    let mut split: BTreeMap<(Word, Word), i64> = BTreeMap::new();
    for (w, &c) in &poly {
        let left: Word = w.iter().copied().filter(|l| l.side() == 0).collect();
        let right: Word = w.iter().copied().filter(|l| l.side() == 1).collect();
        *split.entry((left, right)).or_insert(0) += c;
    }
    let mut by_pattern: BTreeMap<(RiggedPartition, RiggedPartition), BTreeSet<i64>> = BTreeMap::new();
    let mut counts: BTreeMap<(RiggedPartition, RiggedPartition), usize> = BTreeMap::new();
    for ((l, r), c) in &split {
        let key = (pattern(l), pattern(r));
        by_pattern.entry(key.clone()).or_default().insert(*c);
        *counts.entry(key).or_insert(0) += 1;
    }
    let mut out = Tensor::zero();
    for ((a, b), coeffs) in by_pattern {
        let full = falling(letters, a.blocks().num_blocks()) * falling(letters, b.blocks().num_blocks());
        if coeffs.len() != 1 || counts[&(a.clone(), b.clone())] != full {
            return Err(Error::Verification(format!("Δ is not symmetric at {a} ⊗ {b}")));
        }
        let c = *coeffs.iter().next().unwrap();
        out.add_term(a, b, Rational::from_integer(c.into()));
    }
    Ok(out)
}

fn unrigged(p: &SetPartition) -> RiggedPartition {
    RiggedPartition::unrigged(p.clone())
}

fn to_ns(e: &NpsElement) -> NsElement {
    let mut out = NsElement::zero();
    for (r, c) in e.terms() {
        out.add_term(r.blocks().clone(), c.clone());
    }
    out
}

pub fn product_oracle(p: &SetPartition, q: &SetPartition) -> Result<NsElement> {
    product_oracle_rigged(&unrigged(p), &unrigged(q)).map(|e| to_ns(&e))
}

pub fn coproduct_oracle(p: &SetPartition) -> Result<Tensor<SetPartition>> {
    let t = coproduct_oracle_rigged(&unrigged(p))?;
    let mut out = Tensor::zero();
    for ((a, b), c) in t.terms() {
        out.add_term(a.blocks().clone(), b.blocks().clone(), c.clone());
    }
    Ok(out)
}

/// Labels where the combinatorial rules and the polynomial model disagree,
/// over all products of total grade and coproducts of grade at most `n_max`.
pub fn oracle_mismatches<L, F, G>(basis: &[Vec<L>], product: F, coproduct: G) -> Result<Vec<String>>
where
    L: crate::hopf::MonomialLabel,
    F: Fn(&L, &L) -> Result<GradedElement<L>>,
    G: Fn(&L) -> Result<Tensor<L>>,
{
    let n_max = basis.len().saturating_sub(1);
    let all: Vec<&L> = basis.iter().flatten().collect();
    let mut bad = Vec::new();
    for &a in &all {
        let ma = GradedElement::basis(a.clone());
        if coproduct(a)? != ma.coproduct() {
            bad.push(format!("Δ(m[{a}])"));
        }
        for &b in all.iter().filter(|b| a.grade() + b.grade() <= n_max) {
            if product(a, b)? != ma.mul(&GradedElement::basis(b.clone())) {
                bad.push(format!("m[{a}]·m[{b}]"));
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{ns_basis, nps_basis};

    #[test]
    fn m13_2_4_expansion_shape() {
        // m_{13|2|4} over 3 letters: x_a x_b x_a x_c with a, b, c distinct
        let p: RiggedPartition = "13|2|4".parse().unwrap();
        let poly = expand(&p, 3, 1);
        assert_eq!(poly.len(), 6);
        assert!(poly.keys().all(|w| w[0] == w[2] && w[0] != w[1] && w[1] != w[3]));
    }

    #[test]
    fn product_and_coproduct_match_rules() {
        let ns = ns_basis(4);
        let bad = oracle_mismatches(&ns, product_oracle, coproduct_oracle).unwrap();
        assert!(bad.is_empty(), "{bad:?}");
        let nps = nps_basis(3, 1);
        let bad = oracle_mismatches(&nps, product_oracle_rigged, coproduct_oracle_rigged).unwrap();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn oracle_coproduct_of_14_2_3() {
        let t = coproduct_oracle(&"14|2|3".parse().unwrap()).unwrap();
        assert_eq!(t.terms().len(), 6);
        let two = Rational::from_integer(2.into());
        assert_eq!(t.coefficient(&"13|2".parse().unwrap(), &"1".parse().unwrap()), two);
    }
}
