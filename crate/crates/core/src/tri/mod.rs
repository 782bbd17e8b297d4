//! Supercharacters of the triangular group `T_n(F_p) = H + J`: triples,
//! the closed value formula, induced characters, Kirillov forms, norms and
//! restriction to upper-left blocks.

pub mod oracle;
pub mod subgroup;

pub use oracle::{tri_kirillov, tri_norm, xi_character, TriNormReport, TriOracle};
pub use subgroup::{block_subgroup, tri_restrict_superinduce, BlockSubgroup};

use std::fmt;

use serde::Serialize;

use crate::arith::{CharacterContext, CyclotomicNumber};
use crate::combinatorics::{enumerate_basic_subsets, BasicSubset};
use crate::error::Result;
use crate::groups::{
    superclasses_triangular, triangular_class_labels, Idempotent, LinearForm, Limits, Matrix, MatrixGroup,
    OrbitDecomposition, TriClassLabel,
};
use crate::sct::{scalar_product_on_parts, ClassFunction, Partition, SuperTheory};
use crate::table::{CharacterRow, ClassColumn, SupercharacterTable, SCHEMA_VERSION};

/// A superclass label `(e, h, ω)`: `e = e_{D'}`, `h ∈ H(e)` and `ω` the orbit
/// of `x_{D'}`; the representative is `h + x_{D'}`.
pub type ClassTriple = TriClassLabel;

/// A supercharacter label `(e, θ, ω*)` with `e = e_D`, `ω*` the orbit of
/// `λ_D`, and `θ` a character of `H(e) ≅ Π_{i∉supp D} F_p^*` given by one
/// exponent per diagonal position against the fixed primitive root (zero on
/// `supp D`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CharTriple {
    #[serde(rename = "D")]
    pub d: BasicSubset,
    pub theta: Vec<u32>,
}

impl CharTriple {
    pub fn n(&self) -> usize {
        self.theta.len()
    }

    pub fn idempotent(&self) -> Idempotent {
        Idempotent::of_basic(self.n(), &self.d)
    }

    /// `λ_D = Σ_{(i,j)∈D} E*_ij`.
    pub fn lambda(&self) -> LinearForm {
        LinearForm::new(Matrix::from_basic(self.n(), &self.d))
    }

    /// The exponent `k` with `θ̇(h) = ζ_m^k`, or `None` when `h ∉ H(e)`.
    pub fn theta_exponent(&self, h: &[u8], ctx: &CharacterContext) -> Option<usize> {
        if !self.idempotent().fixes(h) {
            return None;
        }
        let m = ctx.conductor() as usize;
        Some(
            self.theta
                .iter()
                .zip(h)
                .map(|(&t, &hi)| ctx.multiplicative_exponent(t, hi))
                .sum::<usize>()
                % m,
        )
    }

    /// `θ̇(h)`.
    pub fn theta_value(&self, h: &[u8], ctx: &CharacterContext) -> CyclotomicNumber {
        match self.theta_exponent(h, ctx) {
            Some(k) => ctx.zeta(k),
            None => ctx.zero(),
        }
    }
}

impl fmt::Display for CharTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.theta.iter().map(u32::to_string).collect();
        write!(f, "{} θ=({})", self.d, t.join(","))
    }
}

/// All supercharacter triples and superclass triples of `T_n(F_p)`, each
/// ordered by `D` then by `θ` (resp. `h`).
pub fn enumerate_triples(n: usize, p: u32) -> (Vec<CharTriple>, Vec<ClassTriple>) {
    let mut chars = Vec::new();
    for d in enumerate_basic_subsets(n) {
        let supp: Vec<usize> = d.support().into_iter().map(|i| i - 1).collect();
        let mut thetas = vec![vec![0u32; n]];
        for i in (0..n).filter(|i| !supp.contains(i)) {
            thetas = thetas
                .into_iter()
                .flat_map(|t| {
                    (0..p - 1).map(move |k| {
                        let mut u = t.clone();
                        u[i] = k;
                        u
                    })
                })
                .collect();
        }
        thetas.sort();
        chars.extend(thetas.into_iter().map(|theta| CharTriple { d: d.clone(), theta }));
    }
    let group = MatrixGroup::new(n, p, (0..n).collect(), Vec::new(), Limits::default())
        .expect("the torus of a small triangular group");
    let classes = triangular_class_labels(&group);
    (chars, classes)
}

/// The ingredients of the closed value formula for `χ_{θ,D}` on `K_{h,D'}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueFormulaInputs {
    /// `δ'(D, D')`: no `γ' ∈ D'` lies in `Δ'(γ)` for any `γ ∈ D`
    pub delta_row: bool,
    /// `δ''(D, D')`: no `γ' ∈ D'` lies in `Δ''(γ)` for any `γ ∈ D`
    pub delta_col: bool,
    /// `δ_0(D, h)`: `h ∈ H(e_D)`
    pub delta_torus: bool,
    /// `m(D, h, D') = Σ_{γ∈D} corank P(γ)`
    pub corank: usize,
    /// `s(D, D') = |D| + |D \ D'|`
    pub s: usize,
    /// indices that are both a row and a column of `D`, `2|D| - |supp D|`
    pub shared: usize,
    /// `|D ∩ D'|`
    pub common: usize,
}

impl ValueFormulaInputs {
    pub fn new(d: &BasicSubset, h: &[u8], d2: &BasicSubset, ctx: &CharacterContext) -> ValueFormulaInputs {
        let n = h.len();
        let delta_row = !d
            .roots()
            .iter()
            .any(|g| d2.roots().iter().any(|r| r.i == g.i && r.j < g.j));
        let delta_col = !d
            .roots()
            .iter()
            .any(|g| d2.roots().iter().any(|r| r.j == g.j && r.i > g.i));
        let delta_torus = Idempotent::of_basic(n, d).fixes(h);
        let f = ctx.field();
        // h - 1 + x_{D'}
        let mut m = Matrix::from_basic(n, d2);
        for (i, &hi) in h.iter().enumerate() {
            m.set(i, i, f.sub(hi, 1));
        }
        let corank = d
            .roots()
            .iter()
            // rows and columns i+1..j-1 (1-based) are 0-based i..j-1
            .map(|g| corank(&m.submatrix(g.i, g.j - 1), ctx))
            .sum();
        ValueFormulaInputs {
            delta_row,
            delta_col,
            delta_torus,
            corank,
            s: d.len() + d.difference_len(d2),
            shared: 2 * d.len() - Idempotent::of_basic(n, d).support().len(),
            common: d.intersection_len(d2),
        }
    }

    pub fn delta(&self) -> bool {
        self.delta_row && self.delta_col && self.delta_torus
    }

    /// The exponent of `q - 1` in the value: `s(D, D')` less the shared
    /// indices, i.e. `|supp D| - |D ∩ D'|`. Without the correction a chain
    /// such as `{(1,2),(2,3)}` gets degree `(q-1)^4` instead of
    /// `|G|/|G_α| = (q-1)^3`.
    pub fn unit_exponent(&self) -> usize {
        self.s - self.shared
    }
}

/// Corank of a square matrix: its zero rows when every row and column holds
/// at most one nonzero entry, otherwise by elimination.
fn corank(m: &Matrix, ctx: &CharacterContext) -> usize {
    let k = m.n();
    let rows = m.rows();
    let monomial = rows.iter().all(|r| r.iter().filter(|&&v| v != 0).count() <= 1)
        && (0..k).all(|c| rows.iter().filter(|r| r[c] != 0).count() <= 1);
    if monomial {
        rows.iter().filter(|r| r.iter().all(|&v| v == 0)).count()
    } else {
        k - m.rank(ctx.field())
    }
}

/// `χ_{θ,D}(K_{h,D'}) = δ (-1)^{|D∩D'|} q^{m(D,h,D')} (q-1)^{|supp D| - |D∩D'|} θ(h)`.
pub fn closed_value(triple: &CharTriple, class: &ClassTriple, ctx: &CharacterContext) -> CyclotomicNumber {
    let inputs = ValueFormulaInputs::new(&triple.d, &class.h, &class.d, ctx);
    value_with_exponent(triple, class, ctx, &inputs, inputs.unit_exponent())
}

/// The value with the uncorrected exponent `s(D, D') = |D| + |D \ D'|`;
/// agrees with [`closed_value`] unless `D` has an index that is both a row
/// and a column.
pub fn closed_value_uncorrected(triple: &CharTriple, class: &ClassTriple, ctx: &CharacterContext) -> CyclotomicNumber {
    let inputs = ValueFormulaInputs::new(&triple.d, &class.h, &class.d, ctx);
    value_with_exponent(triple, class, ctx, &inputs, inputs.s)
}

fn value_with_exponent(
    triple: &CharTriple,
    class: &ClassTriple,
    ctx: &CharacterContext,
    inputs: &ValueFormulaInputs,
    exponent: usize,
) -> CyclotomicNumber {
    if !inputs.delta() {
        return ctx.zero();
    }
    let q = ctx.p() as i64;
    let sign = if inputs.common.is_multiple_of(2) { 1 } else { -1 };
    let scalar = sign * q.pow(inputs.corank as u32) * (q - 1).pow(exponent as u32);
    &ctx.int(scalar) * &triple.theta_value(&class.h, ctx)
}

/// The closed-form supercharacter table of `T_n(F_p)`.
#[derive(Clone, Debug)]
pub struct TriTheory {
    group: MatrixGroup,
    ctx: CharacterContext,
    superclasses: OrbitDecomposition<ClassTriple>,
    triples: Vec<CharTriple>,
    values: Vec<Vec<CyclotomicNumber>>,
}

impl TriTheory {
    pub fn new(n: usize, p: u32, limits: Limits) -> Result<TriTheory> {
        let group = MatrixGroup::triangular(n, p, limits)?;
        let ctx = CharacterContext::new(p)?;
        let superclasses = superclasses_triangular(&group)?;
        let (triples, _) = enumerate_triples(n, p);
        let values = crate::par::map(&triples, |t| {
            superclasses
                .orbits()
                .iter()
                .map(|o| closed_value(t, &o.label, &ctx))
                .collect()
        });
        Ok(TriTheory {
            group,
            ctx,
            superclasses,
            triples,
            values,
        })
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn ctx(&self) -> &CharacterContext {
        &self.ctx
    }

    pub fn superclasses(&self) -> &OrbitDecomposition<ClassTriple> {
        &self.superclasses
    }

    pub fn triples(&self) -> &[CharTriple] {
        &self.triples
    }

    /// `values[α][K]`.
    pub fn values(&self) -> &[Vec<CyclotomicNumber>] {
        &self.values
    }

    pub fn identity_class(&self) -> usize {
        self.superclasses.part_of(self.group.identity_index())
    }

    pub fn partition(&self) -> Partition {
        let parts = self.superclasses.orbits().iter().map(|o| o.members.clone()).collect();
        Partition::new(self.group.order(), parts).expect("superclasses partition the group")
    }

    pub fn class_function(&self, i: usize) -> ClassFunction {
        ClassFunction::new(
            (0..self.group.order())
                .map(|g| self.values[i][self.superclasses.part_of(g)].clone())
                .collect(),
        )
    }

    pub fn super_theory(&self) -> SuperTheory {
        let chars = (0..self.triples.len()).map(|i| self.class_function(i)).collect();
        SuperTheory::new(self.partition(), chars).expect("characters live on the group")
    }

    /// Cells `(triple, superclass)` where the closed form differs from the
    /// induced character at some element of the superclass.
    pub fn oracle_mismatches(&self, oracle: &TriOracle) -> Vec<(usize, usize)> {
        let rows = crate::par::map(&self.triples, |t| oracle.induced(t));
        let mut bad = Vec::new();
        for (i, chi) in rows.iter().enumerate() {
            for (k, o) in self.superclasses.orbits().iter().enumerate() {
                if o.members.iter().any(|&g| *chi.at(g) != self.values[i][k]) {
                    bad.push((i, k));
                }
            }
        }
        bad
    }

    /// Cells `(triple, superclass)` where either Kirillov form at the class
    /// representative `h + x_{D'}` differs from the induced character.
    pub fn kirillov_mismatches(&self, oracle: &TriOracle) -> Result<Vec<(usize, usize)>> {
        let rows = crate::par::map(&self.triples, |t| -> Result<Vec<bool>> {
            let chi = oracle.induced(t);
            self.superclasses
                .orbits()
                .iter()
                .map(|o| {
                    let g = o.label.representative();
                    let (a, b) = tri_kirillov(&self.group, &self.ctx, t, &g)?;
                    let want = chi.at(self.group.index(&g));
                    Ok(a != *want || b != *want)
                })
                .collect()
        });
        let mut bad = Vec::new();
        for (i, row) in rows.into_iter().enumerate() {
            for (k, wrong) in row?.into_iter().enumerate() {
                if wrong {
                    bad.push((i, k));
                }
            }
        }
        Ok(bad)
    }

    /// Triples whose direct norm differs from the orbit formula.
    pub fn norm_mismatches(&self, oracle: &TriOracle) -> Result<Vec<usize>> {
        let reports = crate::par::map(&self.triples, |t| tri_norm(oracle, t));
        let mut bad = Vec::new();
        for (i, r) in reports.into_iter().enumerate() {
            if !r?.agrees() {
                bad.push(i);
            }
        }
        Ok(bad)
    }

    pub fn table(&self) -> SupercharacterTable {
        let partition = self.partition();
        let e = self.identity_class();
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
                .triples
                .iter()
                .zip(&self.values)
                .map(|(t, v)| CharacterRow {
                    label: t.to_string(),
                    degree: v[e].clone(),
                    norm: scalar_product_on_parts(&partition, v, v),
                    values: v.clone(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(roots: &[(usize, usize)], h: &[u8]) -> ClassTriple {
        TriClassLabel {
            d: BasicSubset::from_pairs(roots).unwrap(),
            h: h.to_vec(),
        }
    }

    #[test]
    fn triple_counts() {
        for (n, p, want) in [(2, 3, 5), (1, 5, 4), (3, 2, 5), (3, 3, 15)] {
            let (a, b) = enumerate_triples(n, p);
            assert_eq!(a.len(), want, "T_{n}(F_{p})");
            assert_eq!(b.len(), want, "T_{n}(F_{p})");
        }
    }

    #[test]
    fn closed_value_examples() {
        let ctx = CharacterContext::new(3).unwrap();
        let t = CharTriple {
            d: BasicSubset::from_pairs(&[(1, 2)]).unwrap(),
            theta: vec![0, 0],
        };
        assert_eq!(closed_value(&t, &label(&[(1, 2)], &[1, 1]), &ctx), ctx.int(-2));
        for q in [2u32, 3] {
            let ctx = CharacterContext::new(q).unwrap();
            let t = CharTriple {
                d: BasicSubset::from_pairs(&[(1, 3)]).unwrap(),
                theta: vec![0, 0, 0],
            };
            let q = q as i64;
            assert_eq!(closed_value(&t, &label(&[], &[1, 1, 1]), &ctx), ctx.int(q * (q - 1) * (q - 1)));
        }
        // h outside H(e_D)
        let t = CharTriple {
            d: BasicSubset::from_pairs(&[(1, 2)]).unwrap(),
            theta: vec![0, 0],
        };
        assert!(closed_value(&t, &label(&[], &[2, 1]), &ctx).is_zero());
    }

    #[test]
    fn t23_is_a_theory() {
        let t = TriTheory::new(2, 3, Limits::default()).unwrap();
        let th = t.super_theory();
        assert!(th.verify(t.group().identity_index()).passed());
        let mut sizes = t.superclasses().sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3, 3, 3]);
    }

    #[test]
    fn kirillov_norms_and_schur_on_small_groups() {
        for (n, p) in [(2, 3), (3, 2), (3, 3)] {
            let t = TriTheory::new(n, p, Limits::default()).unwrap();
            let o = TriOracle::new(t.group()).unwrap();
            assert!(t.kirillov_mismatches(&o).unwrap().is_empty(), "T_{n}(F_{p})");
            assert!(t.norm_mismatches(&o).unwrap().is_empty(), "T_{n}(F_{p})");
            assert!(t.super_theory().verify(t.group().identity_index()).passed());
            let table = crate::sct::FiniteGroupTable::from_matrix_group(t.group()).unwrap();
            assert!(crate::sct::schur_check(&table, &t.partition()).passed());
        }
    }

    #[test]
    fn degree_is_index_of_stabilizer() {
        let t = TriTheory::new(3, 3, Limits::default()).unwrap();
        let o = TriOracle::new(t.group()).unwrap();
        let e = t.identity_class();
        for (tr, v) in t.triples().iter().zip(t.values()) {
            let index = t.group().order() / o.subgroup_order(tr, &tr.lambda());
            assert_eq!(v[e], t.ctx().int(index as i64), "{tr}");
        }
    }
}
