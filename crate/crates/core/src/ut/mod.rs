//! Supercharacters of `UT_n(F_p)` indexed by admissible pairs `(D, φ)`:
//! closed-form values, the induced-character oracle, Kirillov sums, norms,
//! restriction to algebra subgroups and the crossing algebras of `D`.

pub mod crossing;
pub mod oracle;
pub mod subgroup;

pub use crossing::{CrossingAlgebra, CrossingCheck};
pub use oracle::{kirillov_forms, norm_identity, AlgebraGroupOracle, KirillovData, NormReport};
pub use subgroup::{algebra_group_theory, inclusion_indices, AlgebraGroupTheory};

use serde::Serialize;

use crate::arith::{CharacterContext, CyclotomicNumber};
use crate::combinatorics::{enumerate_admissible_pairs, AdmissiblePair, Root};
use crate::error::Result;
use crate::groups::{superclasses_ut, LinearForm, Limits, MatrixGroup, OrbitDecomposition};
use crate::sct::{scalar_product_on_parts, ClassFunction, Partition, Report, SuperTheory};
use crate::table::{CharacterRow, ClassColumn, SupercharacterTable, SCHEMA_VERSION};

/// `χ_{α,c}` on the superclass `K_{D',φ'}`:
/// `q^{d'(α)}` when `D'` misses `Sing(α)` and `α ∉ D'`,
/// `q^{d'(α)} ε^{c φ'(α)}` when `D'` misses `Sing(α)` and `α ∈ D'`, else 0.
pub fn elementary_value(alpha: Root, c: u8, class: &AdmissiblePair, ctx: &CharacterContext) -> CyclotomicNumber {
    debug_assert!(c != 0, "elementary characters have nonzero labels");
    let d = class.d();
    if d.meets_singular(alpha) {
        return ctx.zero();
    }
    let (_, dp) = d.d_prime(alpha);
    let power = ctx.int((ctx.p() as i64).pow(dp as u32));
    match class.label(alpha) {
        None => power,
        Some(phi) => {
            let t = ctx.field().mul(c, phi);
            &power * &ctx.zeta(ctx.additive_exponent(t))
        }
    }
}

/// `χ_{D,φ}(K_{D',φ'}) = Π_{α∈D} χ_{α,φ(α)}(K_{D',φ'})`.
pub fn supercharacter_value(character: &AdmissiblePair, class: &AdmissiblePair, ctx: &CharacterContext) -> CyclotomicNumber {
    let mut acc = ctx.int(1);
    for (alpha, c) in character.iter() {
        let v = elementary_value(alpha, c, class, ctx);
        if v.is_zero() {
            return v;
        }
        acc = &acc * &v;
    }
    acc
}

/// `χ_{D,φ}` with its values on the superclasses (in the theory's order).
#[derive(Clone, Debug, Serialize)]
pub struct UtSupercharacter {
    pub pair: AdmissiblePair,
    pub values: Vec<CyclotomicNumber>,
    /// `q^{d(D)}`
    pub degree: u64,
    /// `q^{c(D)}`
    pub norm: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UtCheck {
    Degree,
    Norm,
}

/// The closed-form supercharacter table of `UT_n(F_p)`.
#[derive(Clone, Debug)]
pub struct UtTheory {
    group: MatrixGroup,
    ctx: CharacterContext,
    superclasses: OrbitDecomposition<AdmissiblePair>,
    characters: Vec<UtSupercharacter>,
}

impl UtTheory {
    pub fn new(n: usize, p: u32, limits: Limits) -> Result<UtTheory> {
        let group = MatrixGroup::unitriangular(n, p, limits)?;
        let ctx = CharacterContext::new(p)?;
        let superclasses = superclasses_ut(&group)?;
        let pairs = enumerate_admissible_pairs(n, p);
        let q = p as u64;
        let characters = crate::par::map(&pairs, |pair| UtSupercharacter {
            pair: pair.clone(),
            values: superclasses
                .orbits()
                .iter()
                .map(|o| supercharacter_value(pair, &o.label, &ctx))
                .collect(),
            degree: q.pow(pair.d().dimension_weight() as u32),
            norm: q.pow(pair.d().crossings() as u32),
        });
        Ok(UtTheory {
            group,
            ctx,
            superclasses,
            characters,
        })
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn ctx(&self) -> &CharacterContext {
        &self.ctx
    }

    pub fn superclasses(&self) -> &OrbitDecomposition<AdmissiblePair> {
        &self.superclasses
    }

    pub fn characters(&self) -> &[UtSupercharacter] {
        &self.characters
    }

    /// Index of the superclass `{1}`.
    pub fn identity_class(&self) -> usize {
        self.superclasses.part_of(self.group.identity_index())
    }

    /// Index of the superclass labelled `pair`.
    pub fn class_index(&self, pair: &AdmissiblePair) -> Option<usize> {
        self.superclasses.orbits().iter().position(|o| &o.label == pair)
    }

    pub fn character_index(&self, pair: &AdmissiblePair) -> Option<usize> {
        self.characters.iter().position(|c| &c.pair == pair)
    }

    pub fn partition(&self) -> Partition {
        let parts = self.superclasses.orbits().iter().map(|o| o.members.clone()).collect();
        Partition::new(self.group.order(), parts).expect("superclasses partition the group")
    }

    pub fn class_function(&self, i: usize) -> ClassFunction {
        ClassFunction::new(
            (0..self.group.order())
                .map(|g| self.characters[i].values[self.superclasses.part_of(g)].clone())
                .collect(),
        )
    }

    pub fn super_theory(&self) -> SuperTheory {
        let chars = (0..self.characters.len()).map(|i| self.class_function(i)).collect();
        SuperTheory::new(self.partition(), chars).expect("characters live on the group")
    }

    /// Checks the cached degree and norm of every supercharacter against the
    /// table itself.
    pub fn check_invariants(&self) -> Report<UtCheck> {
        let mut report = Report::new();
        let partition = self.partition();
        let e = self.identity_class();
        for ch in &self.characters {
            if ch.values[e] != self.ctx.int(ch.degree as i64) {
                report.fail(UtCheck::Degree, format!("χ_{}(1) = {} ≠ {}", ch.pair, ch.values[e], ch.degree));
            }
            let norm = scalar_product_on_parts(&partition, &ch.values, &ch.values);
            if norm != self.ctx.int(ch.norm as i64) {
                report.fail(UtCheck::Norm, format!("(χ_{0}, χ_{0}) = {norm} ≠ {1}", ch.pair, ch.norm));
            }
        }
        report
    }

    /// Cells `(character, superclass)` where the closed form differs from
    /// the induced character at some element of the superclass.
    pub fn oracle_mismatches(&self, oracle: &AlgebraGroupOracle) -> Vec<(usize, usize)> {
        let n = self.group.n();
        let rows = crate::par::map(&self.characters, |ch| oracle.induced(&LinearForm::from_pair(n, &ch.pair)));
        let mut bad = Vec::new();
        for (i, chi) in rows.iter().enumerate() {
            for (k, o) in self.superclasses.orbits().iter().enumerate() {
                if o.members.iter().any(|&g| *chi.at(g) != self.characters[i].values[k]) {
                    bad.push((i, k));
                }
            }
        }
        bad
    }

    pub fn table(&self) -> SupercharacterTable {
        let partition = self.partition();
        SupercharacterTable {
            schema_version: SCHEMA_VERSION,
            group: self.group.to_string(),
            n: self.group.n(),
            p: self.group.p(),
            order: self.group.order(),
            classes: self
                .superclasses
                .orbits()
                .iter()
                .map(|o| ClassColumn {
                    label: o.label.to_string(),
                    size: o.size(),
                })
                .collect(),
            characters: self
                .characters
                .iter()
                .map(|ch| CharacterRow {
                    label: ch.pair.to_string(),
                    degree: self.ctx.int(ch.degree as i64),
                    norm: scalar_product_on_parts(&partition, &ch.values, &ch.values),
                    values: ch.values.clone(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::BasicSubset;

    fn pair(roots: &[(usize, usize)], phi: &[u8]) -> AdmissiblePair {
        AdmissiblePair::new(BasicSubset::from_pairs(roots).unwrap(), phi.to_vec()).unwrap()
    }

    #[test]
    fn elementary_examples() {
        let ctx = CharacterContext::new(2).unwrap();
        let a = Root::new(1, 3).unwrap();
        assert_eq!(elementary_value(a, 1, &pair(&[(1, 2)], &[1]), &ctx), ctx.int(0));
        assert_eq!(elementary_value(a, 1, &pair(&[(1, 3)], &[1]), &ctx), ctx.int(-2));
        assert_eq!(elementary_value(a, 1, &pair(&[], &[]), &ctx), ctx.int(2));
    }

    #[test]
    fn product_example() {
        let ctx = CharacterContext::new(2).unwrap();
        let ch = pair(&[(1, 2), (2, 3)], &[1, 1]);
        assert_eq!(supercharacter_value(&ch, &pair(&[(1, 2)], &[1]), &ctx), ctx.int(-1));
        assert_eq!(supercharacter_value(&ch, &pair(&[], &[]), &ctx), ctx.int(1));
    }

    #[test]
    fn ut3_table_shape_and_invariants() {
        let t = UtTheory::new(3, 2, Limits::default()).unwrap();
        assert_eq!(t.characters().len(), 5);
        assert_eq!(t.superclasses().len(), 5);
        assert!(t.check_invariants().passed());
        let th = t.super_theory();
        assert!(th.verify(t.group().identity_index()).passed());
        let table = t.table();
        assert_eq!(table.schema_version, SCHEMA_VERSION);
        assert_eq!(table.text_rows().len(), 7);
    }

    #[test]
    fn closed_form_matches_oracle_small() {
        for (n, p) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let t = UtTheory::new(n, p, Limits::default()).unwrap();
            let o = AlgebraGroupOracle::new(t.group()).unwrap();
            assert!(t.oracle_mismatches(&o).is_empty(), "UT_{n}(F_{p})");
        }
    }

    #[test]
    fn degrees_at_identity() {
        for (n, p) in [(3, 3), (4, 2)] {
            let t = UtTheory::new(n, p, Limits::default()).unwrap();
            let e = t.identity_class();
            for ch in t.characters() {
                let q = p as i64;
                assert_eq!(ch.values[e], t.ctx().int(q.pow(ch.pair.d().dimension_weight() as u32)));
            }
        }
    }
}
