//! The Hopf algebras `NS` (set partitions) and `NPS` (rigged partitions) in
//! their monomial bases, a brute-force monomial oracle for both, and the
//! superclass-function algebras of `UT_n(F_2)` and `T_n(F_p)` they model.

pub mod monomial;
pub mod superclass;

pub use superclass::{dual_check, iso_check, DualCheck, IsoCheck, SuperclassTower, TowerKind};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::arith::Rational;
use crate::combinatorics::{
    direct_consequences, enumerate_rigged_partitions, enumerate_set_partitions, merge_blocks, rigged_splits,
    standardized_splits, RiggedPartition, SetPartition,
};
use crate::error::{Error, Result};
use crate::sct::Report;

/// A label of a monomial basis element `m_L` of a graded connected Hopf
/// algebra, with the combinatorial product and coproduct rules.
pub trait MonomialLabel: Clone + Ord + fmt::Display + FromStr<Err = Error> + Send + Sync {
    fn grade(&self) -> usize;
    /// The label of the unit `m_∅`.
    fn unit() -> Self;
    /// `m_self m_other = Σ m_R` over the returned labels.
    fn product_terms(&self, other: &Self) -> Vec<Self>;
    /// `Δ(m_self) = Σ m_A ⊗ m_B` over the returned pairs.
    fn coproduct_terms(&self) -> Vec<(Self, Self)>;
}

impl MonomialLabel for SetPartition {
    fn grade(&self) -> usize {
        self.size()
    }

    fn unit() -> Self {
        SetPartition::empty()
    }

    /// All `R ⊢ [k+m]` with `R ∧ ([k]|[m]) = (P|Q)`.
    fn product_terms(&self, other: &Self) -> Vec<Self> {
        let shifted = other.shift(self.size());
        merge_blocks(self.blocks(), shifted.blocks())
    }

    fn coproduct_terms(&self) -> Vec<(Self, Self)> {
        standardized_splits(self)
    }
}

impl MonomialLabel for RiggedPartition {
    fn grade(&self) -> usize {
        self.n()
    }

    fn unit() -> Self {
        RiggedPartition::empty()
    }

    fn product_terms(&self, other: &Self) -> Vec<Self> {
        direct_consequences(self, other)
    }

    fn coproduct_terms(&self) -> Vec<(Self, Self)> {
        rigged_splits(self)
    }
}

/// A finite linear combination `Σ c_L m_L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement<L: MonomialLabel> {
    terms: BTreeMap<L, Rational>,
}

impl<L: MonomialLabel> GradedElement<L> {
    pub fn zero() -> Self {
        GradedElement { terms: BTreeMap::new() }
    }

    pub fn basis(label: L) -> Self {
        Self::term(label, Rational::one())
    }

    pub fn one() -> Self {
        Self::basis(L::unit())
    }

    pub fn term(label: L, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(label, c);
        e
    }

    pub fn add_term(&mut self, label: L, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(label.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&label);
        }
    }

    pub fn terms(&self) -> &BTreeMap<L, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, label: &L) -> Rational {
        self.terms.get(label).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (l, v) in &self.terms {
            out.add_term(l.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                for r in a.product_terms(b) {
                    out.add_term(r, x * y);
                }
            }
        }
        out
    }

    pub fn coproduct(&self) -> Tensor<L> {
        let mut out = Tensor::zero();
        for (a, x) in &self.terms {
            for (l, r) in a.coproduct_terms() {
                out.add_term(l, r, x.clone());
            }
        }
        out
    }

    /// The constant term.
    pub fn counit(&self) -> Rational {
        self.coefficient(&L::unit())
    }

    /// Grades of the terms, each once.
    pub fn grades(&self) -> Vec<usize> {
        let g: std::collections::BTreeSet<usize> = self.terms.keys().map(MonomialLabel::grade).collect();
        g.into_iter().collect()
    }
}

impl<L: MonomialLabel> fmt::Display for GradedElement<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| if c.is_one() { format!("m[{l}]") } else { format!("{c}·m[{l}]") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn serialize_coefficient<S: SerializeMap>(map: &mut S, key: &str, c: &Rational) -> std::result::Result<(), S::Error> {
    match c.is_integer().then(|| c.to_integer().to_i64()).flatten() {
        Some(v) => map.serialize_entry(key, &v),
        None => map.serialize_entry(key, &c.to_string()),
    }
}

/// `{label: coefficient}`; integers as JSON numbers, fractions as `"a/b"`.
impl<L: MonomialLabel> Serialize for GradedElement<L> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (l, c) in &self.terms {
            serialize_coefficient(&mut map, &l.to_string(), c)?;
        }
        map.end()
    }
}

/// A finite linear combination `Σ c m_A ⊗ m_B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<L: MonomialLabel> {
    terms: BTreeMap<(L, L), Rational>,
}

impl<L: MonomialLabel> Tensor<L> {
    pub fn zero() -> Self {
        Tensor { terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, a: L, b: L, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(L, L), Rational> {
        &self.terms
    }

    pub fn coefficient(&self, a: &L, b: &L) -> Rational {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let left = GradedElement::basis(a.clone()).mul(&GradedElement::basis(c.clone()));
                let right = GradedElement::basis(b.clone()).mul(&GradedElement::basis(d.clone()));
                for (l, u) in left.terms() {
                    for (r, v) in right.terms() {
                        out.add_term(l.clone(), r.clone(), x * y * u * v);
                    }
                }
            }
        }
        out
    }

    /// `(ε ⊗ id)` and `(id ⊗ ε)`.
    pub fn counit_left(&self) -> GradedElement<L> {
        let mut out = GradedElement::zero();
        for ((a, b), c) in &self.terms {
            if a.grade() == 0 {
                out.add_term(b.clone(), c.clone());
            }
        }
        out
    }

    pub fn counit_right(&self) -> GradedElement<L> {
        let mut out = GradedElement::zero();
        for ((a, b), c) in &self.terms {
            if b.grade() == 0 {
                out.add_term(a.clone(), c.clone());
            }
        }
        out
    }

    /// `(Δ ⊗ id)` and `(id ⊗ Δ)` as triple tensors.
    pub fn coproduct_left(&self) -> BTreeMap<(L, L, L), Rational> {
        let mut out = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            for (x, y) in a.coproduct_terms() {
                add_triple(&mut out, (x, y, b.clone()), c.clone());
            }
        }
        out
    }

    pub fn coproduct_right(&self) -> BTreeMap<(L, L, L), Rational> {
        let mut out = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            for (x, y) in b.coproduct_terms() {
                add_triple(&mut out, (a.clone(), x, y), c.clone());
            }
        }
        out
    }
}

fn add_triple<L: MonomialLabel>(map: &mut BTreeMap<(L, L, L), Rational>, key: (L, L, L), c: Rational) {
    let slot = map.entry(key.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        map.remove(&key);
    }
}

impl<L: MonomialLabel> fmt::Display for Tensor<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                if c.is_one() {
                    format!("m[{a}]⊗m[{b}]")
                } else {
                    format!("{c}·m[{a}]⊗m[{b}]")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `{"A ⊗ B": coefficient}`.
impl<L: MonomialLabel> Serialize for Tensor<L> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for ((a, b), c) in &self.terms {
            serialize_coefficient(&mut map, &format!("{a} ⊗ {b}"), c)?;
        }
        map.end()
    }
}

pub type NsElement = GradedElement<SetPartition>;
pub type NpsElement = GradedElement<RiggedPartition>;

pub fn ns_product(a: &NsElement, b: &NsElement) -> NsElement {
    a.mul(b)
}

pub fn ns_coproduct(a: &NsElement) -> Tensor<SetPartition> {
    a.coproduct()
}

/// Fails when a rigging label lies outside the alphabet `[y]`.
pub fn check_alphabet(a: &NpsElement, y: u32) -> Result<()> {
    match a.terms().keys().find(|l| l.max_label() > y) {
        Some(l) => Err(Error::Invalid(format!("{l} uses a rigging label outside [{y}]"))),
        None => Ok(()),
    }
}

pub fn nps_product(a: &NpsElement, b: &NpsElement, y: u32) -> Result<NpsElement> {
    check_alphabet(a, y)?;
    check_alphabet(b, y)?;
    Ok(a.mul(b))
}

pub fn nps_coproduct(a: &NpsElement, y: u32) -> Result<Tensor<RiggedPartition>> {
    check_alphabet(a, y)?;
    Ok(a.coproduct())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HopfAxiom {
    Grading,
    Associativity,
    Unit,
    Counit,
    Coassociativity,
    /// `Δ(ab) = Δ(a)Δ(b)`
    Compatibility,
    /// `ε(ab) = ε(a)ε(b)`
    CounitMultiplicative,
    /// product coefficients in `{0,1}` (NS) or nonnegative integers
    Coefficients,
}

/// Checks the bialgebra axioms on every basis element, pair and triple of
/// total grade at most `basis.len() - 1`; `basis[n]` lists the labels of
/// grade `n`.
pub fn hopf_axiom_suite<L: MonomialLabel>(basis: &[Vec<L>], zero_one_products: bool) -> Report<HopfAxiom> {
    let mut report = Report::new();
    let n_max = basis.len().saturating_sub(1);
    let all: Vec<&L> = basis.iter().flatten().collect();
    let one = GradedElement::<L>::one();
    for &a in &all {
        let ma = GradedElement::basis(a.clone());
        if ma.mul(&one) != ma || one.mul(&ma) != ma {
            report.fail(HopfAxiom::Unit, format!("m[{a}]·1"));
        }
        let d = ma.coproduct();
        if d.counit_left() != ma || d.counit_right() != ma {
            report.fail(HopfAxiom::Counit, format!("Δ(m[{a}])"));
        }
        if d.terms().keys().any(|(x, y)| x.grade() + y.grade() != a.grade()) {
            report.fail(HopfAxiom::Grading, format!("Δ(m[{a}]) leaves grade {}", a.grade()));
        }
        if d.terms().values().any(|c| !c.is_integer() || c.is_negative()) {
            report.fail(HopfAxiom::Coefficients, format!("Δ(m[{a}]) = {d}"));
        }
        if d.coproduct_left() != d.coproduct_right() {
            report.fail(HopfAxiom::Coassociativity, format!("m[{a}]"));
        }
    }
    for &a in &all {
        for &b in all.iter().filter(|b| a.grade() + b.grade() <= n_max) {
            let (ma, mb) = (GradedElement::basis(a.clone()), GradedElement::basis(b.clone()));
            let ab = ma.mul(&mb);
            if ab.terms().keys().any(|r| r.grade() != a.grade() + b.grade()) {
                report.fail(HopfAxiom::Grading, format!("m[{a}]·m[{b}]"));
            }
            let bad = ab
                .terms()
                .values()
                .any(|c| !c.is_integer() || c.is_negative() || (zero_one_products && !c.is_one()));
            if bad {
                report.fail(HopfAxiom::Coefficients, format!("m[{a}]·m[{b}] = {ab}"));
            }
            if ab.coproduct() != ma.coproduct().mul(&mb.coproduct()) {
                report.fail(HopfAxiom::Compatibility, format!("Δ(m[{a}]·m[{b}])"));
            }
            if ab.counit() != ma.counit() * mb.counit() {
                report.fail(HopfAxiom::CounitMultiplicative, format!("ε(m[{a}]·m[{b}])"));
            }
            for &c in all.iter().filter(|c| a.grade() + b.grade() + c.grade() <= n_max) {
                let mc = GradedElement::basis(c.clone());
                if ab.mul(&mc) != ma.mul(&mb.mul(&mc)) {
                    report.fail(HopfAxiom::Associativity, format!("m[{a}], m[{b}], m[{c}]"));
                }
            }
        }
    }
    report
}

/// Set partitions of `[n]` for `n = 0..=n_max`.
pub fn ns_basis(n_max: usize) -> Vec<Vec<SetPartition>> {
    (0..=n_max).map(enumerate_set_partitions).collect()
}

/// Rigged partitions of `[n]` with labels in `[y]`, `n = 0..=n_max`.
pub fn nps_basis(n_max: usize, y: u32) -> Vec<Vec<RiggedPartition>> {
    (0..=n_max).map(|n| enumerate_rigged_partitions(n, y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational_int;

    fn ns(s: &str) -> NsElement {
        GradedElement::basis(s.parse().unwrap())
    }

    fn nps(s: &str) -> NpsElement {
        GradedElement::basis(s.parse().unwrap())
    }

    fn sum(labels: &[&str]) -> NsElement {
        labels.iter().fold(NsElement::zero(), |acc, l| acc.add(&ns(l)))
    }

    #[test]
    fn small_products() {
        assert_eq!(ns_product(&ns("1"), &ns("1")), sum(&["12", "1|2"]));
        assert_eq!(ns_product(&ns("12"), &ns("1")), sum(&["123", "12|3"]));
        assert_eq!(ns_product(&NsElement::one(), &ns("13|2")), ns("13|2"));
    }

    #[test]
    fn coproduct_of_14_2_3() {
        let d = ns_coproduct(&ns("14|2|3"));
        let p = |s: &str| s.parse::<SetPartition>().unwrap();
        let e = SetPartition::empty();
        let want = [
            (p("14|2|3"), e.clone(), 1),
            (p("13|2"), p("1"), 2),
            (p("12"), p("1|2"), 1),
            (p("1|2"), p("12"), 1),
            (p("1"), p("13|2"), 2),
            (e.clone(), p("14|2|3"), 1),
        ];
        assert_eq!(d.terms().len(), 6);
        for (a, b, c) in want {
            assert_eq!(d.coefficient(&a, &b), rational_int(c), "{a} ⊗ {b}");
        }
        assert_eq!(ns_coproduct(&NsElement::one()).terms().len(), 1);
        assert_eq!(ns_coproduct(&ns("12")).terms().len(), 2);
    }

    #[test]
    fn nps_examples() {
        // riggings only: a single concatenated term
        let p = nps_product(&nps(";1:1"), &nps(";1:1,2:1"), 1).unwrap();
        assert_eq!(p, nps(";1:1,2:1,3:1"));
        // a block next to a rigged point cannot merge with it
        let p = nps_product(&nps("1"), &nps(";1:1"), 1).unwrap();
        assert_eq!(p, nps("1;2:1"));
        let d = nps_coproduct(&nps("13;2:1"), 1).unwrap();
        assert_eq!(d.terms().len(), 4);
        assert!(nps_product(&nps(";1:2"), &nps("1"), 1).is_err());
    }

    #[test]
    fn axiom_suites() {
        assert!(hopf_axiom_suite(&ns_basis(4), true).passed());
        assert!(hopf_axiom_suite(&nps_basis(3, 1), false).passed());
    }

    #[test]
    fn counit_on_m1() {
        let d = ns_coproduct(&ns("1"));
        assert_eq!(d.counit_left(), ns("1"));
    }

    #[test]
    fn json_terms() {
        let v = serde_json::to_value(sum(&["12", "1|2"]).scale(&crate::arith::rational(1, 2))).unwrap();
        assert_eq!(v, serde_json::json!({"12": "1/2", "1|2": "1/2"}));
        let v = serde_json::to_value(ns_coproduct(&ns("1"))).unwrap();
        assert_eq!(v, serde_json::json!({"1 ⊗ ∅": 1, "∅ ⊗ 1": 1}));
    }
}
