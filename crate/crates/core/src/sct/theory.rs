use std::collections::HashMap;
use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use crate::arith::{rational_int, CyclotomicNumber, Rational};
use crate::error::{Error, Result};

/// A complex-valued function on a finite group, one value per element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    values: Vec<CyclotomicNumber>,
}

impl ClassFunction {
    pub fn new(values: Vec<CyclotomicNumber>) -> ClassFunction {
        ClassFunction { values }
    }

    /// Spread per-part values over the elements of a partition.
    pub fn from_parts(partition: &Partition, part_values: &[CyclotomicNumber]) -> ClassFunction {
        assert_eq!(partition.len(), part_values.len());
        ClassFunction {
            values: (0..partition.order())
                .map(|g| part_values[partition.part_of(g)].clone())
                .collect(),
        }
    }

    pub fn from_ints(m: u32, values: &[i64]) -> ClassFunction {
        ClassFunction {
            values: values.iter().map(|&v| CyclotomicNumber::from_int(m, v)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[CyclotomicNumber] {
        &self.values
    }

    pub fn at(&self, g: usize) -> &CyclotomicNumber {
        &self.values[g]
    }

    pub fn scale(&self, r: &Rational) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    pub fn scale_by(&self, c: &CyclotomicNumber) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if self.order() != other.order() {
            return Err(Error::Invalid("class functions on different groups".into()));
        }
        Ok(ClassFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    /// Values on a partition's parts, provided the function is constant on
    /// each; otherwise the first offending part.
    pub fn part_values(&self, partition: &Partition) -> std::result::Result<Vec<CyclotomicNumber>, usize> {
        partition
            .parts()
            .iter()
            .enumerate()
            .map(|(k, part)| {
                let v = &self.values[part[0]];
                if part.iter().all(|&g| &self.values[g] == v) {
                    Ok(v.clone())
                } else {
                    Err(k)
                }
            })
            .collect()
    }
}

/// `(f1, f2) = (1/|G|) Σ_g f1(g) conj(f2(g))`.
pub fn scalar_product(f1: &ClassFunction, f2: &ClassFunction) -> Result<CyclotomicNumber> {
    if f1.order() != f2.order() {
        return Err(Error::Invalid(format!(
            "class functions on groups of orders {} and {}",
            f1.order(),
            f2.order()
        )));
    }
    let mut acc = CyclotomicNumber::zero(1);
    for (a, b) in f1.values.iter().zip(&f2.values) {
        acc += &(a * &b.conj());
    }
    Ok(acc.scale(&Rational::new(One::one(), (f1.order() as i64).into())))
}

/// The same scalar product computed from values on parts of a partition.
pub fn scalar_product_on_parts(partition: &Partition, a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> CyclotomicNumber {
    let mut acc = CyclotomicNumber::zero(1);
    for (k, part) in partition.parts().iter().enumerate() {
        let term = (&a[k] * &b[k].conj()).scale(&rational_int(part.len() as i64));
        acc += &term;
    }
    acc.scale(&Rational::new(One::one(), (partition.order() as i64).into()))
}

/// A partition of the element indices `0..order` of a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<Vec<usize>>,
    part_of: Vec<usize>,
}

impl Partition {
    /// Parts are kept in the given order; each part is sorted.
    pub fn new(order: usize, parts: Vec<Vec<usize>>) -> Result<Partition> {
        let mut part_of = vec![usize::MAX; order];
        let mut parts = parts;
        for (k, part) in parts.iter_mut().enumerate() {
            part.sort_unstable();
            if part.is_empty() {
                return Err(Error::Invalid(format!("part {k} is empty")));
            }
            for &g in part.iter() {
                if g >= order || part_of[g] != usize::MAX {
                    return Err(Error::Invalid(format!("element {g} is out of range or in two parts")));
                }
                part_of[g] = k;
            }
        }
        if let Some(g) = part_of.iter().position(|&k| k == usize::MAX) {
            return Err(Error::Invalid(format!("element {g} lies in no part")));
        }
        Ok(Partition { parts, part_of })
    }

    pub fn order(&self) -> usize {
        self.part_of.len()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part_of(&self, g: usize) -> usize {
        self.part_of[g]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    /// The same partition with parts listed by least element.
    pub fn canonical(&self) -> Partition {
        let mut parts = self.parts.clone();
        parts.sort();
        Partition::new(self.order(), parts).expect("reordering keeps a partition valid")
    }
}

/// A partition of the group together with candidate supercharacters.
#[derive(Clone, Debug)]
pub struct SuperTheory {
    pub partition: Partition,
    pub characters: Vec<ClassFunction>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    /// (a) every character is constant on every part
    ConstantOnParts,
    /// (b) distinct characters are orthogonal
    Orthogonality,
    /// (c) as many characters as parts
    CountsEqual,
    /// (d) `{1}` is a part
    IdentityPart,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure<K> {
    pub check: K,
    pub detail: String,
}

/// Outcome of a list of named checks; empty `failures` means pass.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report<K> {
    pub failures: Vec<Failure<K>>,
}

impl<K: fmt::Debug> Report<K> {
    pub fn new() -> Self {
        Report { failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, check: K, detail: impl Into<String>) {
        self.failures.push(Failure {
            check,
            detail: detail.into(),
        });
    }

    pub fn first_failure(&self) -> Option<&Failure<K>> {
        self.failures.first()
    }

    pub fn into_result(self) -> Result<()> {
        match self.failures.first() {
            None => Ok(()),
            Some(f) => Err(Error::Verification(format!("{:?}: {}", f.check, f.detail))),
        }
    }
}

impl<K: fmt::Debug> Default for Report<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl SuperTheory {
    pub fn new(partition: Partition, characters: Vec<ClassFunction>) -> Result<SuperTheory> {
        if characters.iter().any(|c| c.order() != partition.order()) {
            return Err(Error::Invalid("characters and partition on different groups".into()));
        }
        Ok(SuperTheory { partition, characters })
    }

    /// Character values per part, or `None` for characters that are not
    /// constant on some part.
    pub fn part_values(&self) -> Vec<Option<Vec<CyclotomicNumber>>> {
        self.characters
            .iter()
            .map(|c| c.part_values(&self.partition).ok())
            .collect()
    }

    /// The Gram matrix of the characters (requires constancy on parts).
    pub fn gram(&self) -> Result<Vec<Vec<CyclotomicNumber>>> {
        let vals: Vec<Vec<CyclotomicNumber>> = self
            .part_values()
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Verification(format!("character {i} is not constant on parts"))))
            .collect::<Result<_>>()?;
        let rows: Vec<usize> = (0..vals.len()).collect();
        Ok(crate::par::map(&rows, |&i| {
            (0..vals.len())
                .map(|j| scalar_product_on_parts(&self.partition, &vals[i], &vals[j]))
                .collect()
        }))
    }

    /// Checks axioms (a)-(d) of a supercharacter theory.
    pub fn verify(&self, identity: usize) -> Report<Axiom> {
        let mut report = Report::new();
        let vals = self.part_values();
        for (i, v) in vals.iter().enumerate() {
            if v.is_none() {
                let part = self.characters[i].part_values(&self.partition).unwrap_err();
                report.fail(Axiom::ConstantOnParts, format!("character {i} varies on part {part}"));
            }
        }
        if report.passed() {
            let vals: Vec<Vec<CyclotomicNumber>> = vals.into_iter().map(Option::unwrap).collect();
            let pairs: Vec<(usize, usize)> = (0..vals.len())
                .flat_map(|i| (i + 1..vals.len()).map(move |j| (i, j)))
                .collect();
            let bad: Vec<Option<(usize, usize)>> = crate::par::map(&pairs, |&(i, j)| {
                (!scalar_product_on_parts(&self.partition, &vals[i], &vals[j]).is_zero()).then_some((i, j))
            });
            for (i, j) in bad.into_iter().flatten() {
                report.fail(Axiom::Orthogonality, format!("characters {i} and {j} are not orthogonal"));
            }
            for (i, v) in vals.iter().enumerate() {
                if scalar_product_on_parts(&self.partition, v, v).is_zero() {
                    report.fail(Axiom::Orthogonality, format!("character {i} is zero"));
                }
            }
        }
        if self.characters.len() != self.partition.len() {
            report.fail(
                Axiom::CountsEqual,
                format!("{} characters for {} parts", self.characters.len(), self.partition.len()),
            );
        }
        if self.partition.parts()[self.partition.part_of(identity)].len() != 1 {
            report.fail(Axiom::IdentityPart, "the identity shares its part with other elements");
        }
        report
    }

    /// Exactly one character is constant (a multiple of the principal one).
    pub fn constant_characters(&self) -> usize {
        self.characters
            .iter()
            .filter(|c| c.values().iter().all(|v| v == c.at(0)))
            .count()
    }

    /// `σ_i = (χ_i(1) / (χ_i, χ_i)) χ_i`, the character summing `ψ(1) ψ`
    /// over the irreducible constituents of `χ_i`.
    pub fn default_normalizers(&self, identity: usize) -> Result<Vec<Rational>> {
        let gram = self.gram()?;
        self.characters
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let deg = c.at(identity).to_rational().ok_or_else(|| Error::Verification(format!("character {i} has irrational degree")))?;
                let norm = gram[i][i].to_rational().ok_or_else(|| Error::Verification(format!("character {i} has irrational norm")))?;
                if norm.is_zero() {
                    return Err(Error::Verification(format!("character {i} has zero norm")));
                }
                Ok(deg / norm)
            })
            .collect()
    }

    /// Whether `Σ n_i χ_i` is the regular character: `|G|` at the identity,
    /// zero elsewhere. Returns the offending elements.
    pub fn regular_decomposition(&self, normalizers: &[Rational], identity: usize) -> Vec<usize> {
        let order = self.partition.order();
        let mut bad = Vec::new();
        for g in 0..order {
            let mut acc = CyclotomicNumber::zero(1);
            for (c, n) in self.characters.iter().zip(normalizers) {
                acc += &c.at(g).scale(n);
            }
            let expected = if g == identity { order as i64 } else { 0 };
            if acc != CyclotomicNumber::from_int(1, expected) {
                bad.push(g);
            }
        }
        bad
    }

    /// Every `χ(g)|K|/χ(1)` has integer coefficients in the power basis of
    /// `Z[ζ_m]`. Returns offending (character, part) pairs.
    pub fn integrality(&self, identity: usize) -> Result<Vec<(usize, usize)>> {
        let mut bad = Vec::new();
        for (i, c) in self.characters.iter().enumerate() {
            let vals = c
                .part_values(&self.partition)
                .map_err(|k| Error::Verification(format!("character {i} varies on part {k}")))?;
            for (k, v) in vals.iter().enumerate() {
                if !integrality_check(v, c.at(identity), self.partition.parts()[k].len())? {
                    bad.push((i, k));
                }
            }
        }
        Ok(bad)
    }

    /// Parts recovered as fibres of `g ↦ (χ_1(g), …, χ_m(g))`, listed by least
    /// element.
    pub fn parts_from_fibers(&self) -> Partition {
        let order = self.partition.order();
        let m = self
            .characters
            .iter()
            .flat_map(|c| c.values().iter().map(CyclotomicNumber::conductor))
            .fold(1u32, num::integer::lcm);
        let mut fibers: HashMap<Vec<Rational>, Vec<usize>> = HashMap::new();
        for g in 0..order {
            let key: Vec<Rational> = self
                .characters
                .iter()
                .flat_map(|c| c.at(g).lift(m).coeffs().to_vec())
                .collect();
            fibers.entry(key).or_default().push(g);
        }
        let mut parts: Vec<Vec<usize>> = fibers.into_values().collect();
        parts.sort();
        Partition::new(order, parts).expect("fibres partition the group")
    }
}

/// `χ(g)|K|/χ(1)` has integer coordinates.
pub fn integrality_check(value: &CyclotomicNumber, degree: &CyclotomicNumber, class_size: usize) -> Result<bool> {
    let d = degree
        .to_rational()
        .filter(|d| !d.is_zero())
        .ok_or_else(|| Error::Invalid("degree must be a nonzero rational".into()))?;
    let x = value.scale(&(rational_int(class_size as i64) / d));
    Ok(x.has_integer_coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_products() {
        let one = ClassFunction::from_ints(1, &[1, 1, 1, 1]);
        assert_eq!(scalar_product(&one, &one).unwrap(), CyclotomicNumber::one(1));
        let sign = ClassFunction::from_ints(1, &[1, -1, 1, -1]);
        assert!(scalar_product(&one, &sign).unwrap().is_zero());
        let short = ClassFunction::from_ints(1, &[1]);
        assert!(scalar_product(&one, &short).is_err());
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0], vec![1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        let p = Partition::new(3, vec![vec![2, 1], vec![0]]).unwrap();
        assert_eq!(p.part_of(1), 0);
        assert_eq!(p.canonical().parts(), &[vec![0], vec![1, 2]]);
    }
}
