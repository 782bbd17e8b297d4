use num::{Signed, Zero};
use serde::Serialize;

use crate::arith::{rational, CyclotomicNumber, Rational};
use crate::error::{Error, Result};
use crate::sct::theory::{scalar_product, ClassFunction, Partition, Report, SuperTheory};

/// `Res ψ` along an inclusion given as `sub element → group element`.
pub fn restrict(psi: &ClassFunction, inclusion: &[usize]) -> ClassFunction {
    ClassFunction::new(inclusion.iter().map(|&g| psi.at(g).clone()).collect())
}

/// Superinduction of a superclass function `φ` of the subgroup:
/// `SInd φ(K) = |G| / (|G'| |K|) Σ_{y ∈ G' ∩ K} φ(y)` on each superclass `K`
/// of the group. This is the two-sided average `Σ_{τ} φ̇(τ·g)` with every
/// point of `K` reached `|G̃|/|K|` times.
pub fn superinduce(phi: &ClassFunction, inclusion: &[usize], partition: &Partition) -> ClassFunction {
    let k = partition.len();
    let mut sums = vec![CyclotomicNumber::zero(1); k];
    for (y, &g) in inclusion.iter().enumerate() {
        sums[partition.part_of(g)] += phi.at(y);
    }
    let big = partition.order() as i64;
    let small = inclusion.len() as i64;
    let parts: Vec<CyclotomicNumber> = sums
        .iter()
        .zip(partition.parts())
        .map(|(s, part)| s.scale(&rational(big, small * part.len() as i64)))
        .collect();
    ClassFunction::from_parts(partition, &parts)
}

/// Coordinates of `f` in the (orthogonal) basis of supercharacters, checked
/// by rebuilding `f` from them.
pub fn decompose(f: &ClassFunction, basis: &SuperTheory) -> Result<Vec<CyclotomicNumber>> {
    let mut coeffs = Vec::with_capacity(basis.characters.len());
    let mut rebuilt = ClassFunction::new(vec![CyclotomicNumber::zero(1); f.order()]);
    for (i, chi) in basis.characters.iter().enumerate() {
        let norm = scalar_product(chi, chi)?
            .to_rational()
            .filter(|r| r.is_positive())
            .ok_or_else(|| Error::Verification(format!("supercharacter {i} has no positive rational norm")))?;
        let c = scalar_product(f, chi)?.scale(&(Rational::from_integer(1.into()) / norm));
        rebuilt = rebuilt.add(&chi.scale_by(&c))?;
        coeffs.push(c);
    }
    if rebuilt != *f {
        return Err(Error::Verification("function is not in the span of the supercharacters".into()));
    }
    Ok(coeffs)
}

pub fn is_nonnegative_integer(c: &CyclotomicNumber) -> bool {
    c.to_rational().is_some_and(|r| r.is_integer() && !r.is_negative())
}

pub fn is_nonnegative_rational(c: &CyclotomicNumber) -> bool {
    c.to_rational().is_some_and(|r| !r.is_negative())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InductionCheck {
    /// `Res χ_α = Σ m_{α,η} φ_η` with `m_{α,η} ∈ Z_{≥0}`
    RestrictionCoefficients,
    /// `SInd φ_η = Σ a_{η,α} χ_α` with `a_{η,α} ∈ Q_{≥0}`
    InductionCoefficients,
    /// `(SInd φ, ψ) = (φ, Res ψ)`
    Reciprocity,
    /// `a_{η,α} = m_{α,η} (φ_η, φ_η) / (χ_α, χ_α)`
    CoefficientFormula,
}

/// Restriction and superinduction between a subgroup theory and a group
/// theory: `restriction[α][η] = m_{α,η}`, `induction[η][α] = a_{η,α}`.
#[derive(Clone, Debug, Serialize)]
pub struct InductionReport {
    pub restriction: Vec<Vec<CyclotomicNumber>>,
    pub induction: Vec<Vec<CyclotomicNumber>>,
    pub report: Report<InductionCheck>,
}

/// Runs every check between the theories for the given inclusion.
pub fn check_restriction_induction(sub: &SuperTheory, group: &SuperTheory, inclusion: &[usize]) -> Result<InductionReport> {
    if inclusion.len() != sub.partition.order() {
        return Err(Error::Invalid("inclusion does not cover the subgroup".into()));
    }
    let mut report = Report::new();
    let restricted: Vec<ClassFunction> = group.characters.iter().map(|c| restrict(c, inclusion)).collect();
    let restriction: Vec<Vec<CyclotomicNumber>> = restricted
        .iter()
        .map(|r| decompose(r, sub))
        .collect::<Result<_>>()?;
    for (a, row) in restriction.iter().enumerate() {
        for (e, m) in row.iter().enumerate() {
            if !is_nonnegative_integer(m) {
                report.fail(
                    InductionCheck::RestrictionCoefficients,
                    format!("m[{a}][{e}] = {m} is not a nonnegative integer"),
                );
            }
        }
    }
    let induced: Vec<ClassFunction> = sub
        .characters
        .iter()
        .map(|phi| superinduce(phi, inclusion, &group.partition))
        .collect();
    let induction: Vec<Vec<CyclotomicNumber>> = induced
        .iter()
        .map(|s| decompose(s, group))
        .collect::<Result<_>>()?;
    let sub_norms: Vec<CyclotomicNumber> = sub
        .characters
        .iter()
        .map(|c| scalar_product(c, c))
        .collect::<Result<_>>()?;
    let norms: Vec<CyclotomicNumber> = group
        .characters
        .iter()
        .map(|c| scalar_product(c, c))
        .collect::<Result<_>>()?;
    for (e, row) in induction.iter().enumerate() {
        for (a, coeff) in row.iter().enumerate() {
            if !is_nonnegative_rational(coeff) {
                report.fail(
                    InductionCheck::InductionCoefficients,
                    format!("a[{e}][{a}] = {coeff} is not a nonnegative rational"),
                );
            }
            let lhs = scalar_product(&induced[e], &group.characters[a])?;
            let rhs = scalar_product(&sub.characters[e], &restricted[a])?;
            if lhs != rhs {
                report.fail(
                    InductionCheck::Reciprocity,
                    format!("(SInd φ_{e}, χ_{a}) = {lhs} but (φ_{e}, Res χ_{a}) = {rhs}"),
                );
            }
            let ratio = norms[a].to_rational().filter(|r| !r.is_zero());
            let expected = ratio.map(|r| (&restriction[a][e] * &sub_norms[e]).scale(&(Rational::from_integer(1.into()) / r)));
            if expected.as_ref() != Some(coeff) {
                report.fail(
                    InductionCheck::CoefficientFormula,
                    format!("a[{e}][{a}] = {coeff} differs from m (φ,φ)/(χ,χ)"),
                );
            }
        }
    }
    Ok(InductionReport {
        restriction,
        induction,
        report,
    })
}
