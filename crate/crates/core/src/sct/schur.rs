use num::{One, Zero};
use serde::Serialize;

use crate::arith::{rational_int, CyclotomicNumber, Rational};
use crate::error::{Error, Result};
use crate::sct::table::FiniteGroupTable;
use crate::sct::theory::{Partition, Report, SuperTheory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SchurCondition {
    IdentityPart,
    InverseClosed,
    /// `K̂_a K̂_b` lies in the span of the part sums
    Closure,
    /// every `K̂_j` is central in the group algebra
    Central,
}

/// Structure constants of the span of part sums: `K̂_a K̂_b = Σ_c c[a][b][c] K̂_c`.
#[derive(Clone, Debug)]
pub struct SchurAlgebra {
    partition: Partition,
    constants: Vec<Vec<Vec<u64>>>,
}

impl SchurAlgebra {
    /// Computes the constants, failing with the first pair `(a, b)` whose
    /// product is not constant on some part.
    pub fn new(table: &FiniteGroupTable, partition: &Partition) -> std::result::Result<SchurAlgebra, (usize, usize, usize)> {
        let k = partition.len();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect();
        let rows = crate::par::map(&pairs, |&(a, b)| {
            let mut count = vec![0u64; table.order()];
            for &x in &partition.parts()[a] {
                for &y in &partition.parts()[b] {
                    count[table.mul(x, y)] += 1;
                }
            }
            let mut out = vec![0u64; k];
            for (c, part) in partition.parts().iter().enumerate() {
                let v = count[part[0]];
                if part.iter().any(|&z| count[z] != v) {
                    return Err((a, b, c));
                }
                out[c] = v;
            }
            Ok(out)
        });
        let mut constants = vec![vec![Vec::new(); k]; k];
        for ((a, b), row) in pairs.into_iter().zip(rows) {
            constants[a][b] = row?;
        }
        Ok(SchurAlgebra {
            partition: partition.clone(),
            constants,
        })
    }

    pub fn constant(&self, a: usize, b: usize, c: usize) -> u64 {
        self.constants[a][b][c]
    }

    pub fn dim(&self) -> usize {
        self.partition.len()
    }

    /// Product of two elements written in the basis of part sums.
    pub fn multiply(&self, x: &[CyclotomicNumber], y: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
        let k = self.dim();
        let mut out = vec![CyclotomicNumber::zero(1); k];
        for a in 0..k {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..k {
                if y[b].is_zero() {
                    continue;
                }
                let xy = &x[a] * &y[b];
                for (c, o) in out.iter_mut().enumerate() {
                    let s = self.constants[a][b][c];
                    if s != 0 {
                        *o += &xy.scale(&rational_int(s as i64));
                    }
                }
            }
        }
        out
    }
}

/// Checks that the partition spans a central Schur subalgebra of the group
/// algebra: `{1}` is a part, parts are closed under inversion, the span of
/// part sums is closed under multiplication, and each part is a union of
/// conjugacy classes.
pub fn schur_check(table: &FiniteGroupTable, partition: &Partition) -> Report<SchurCondition> {
    let mut report = Report::new();
    let e = table.identity();
    if partition.parts()[partition.part_of(e)].len() != 1 {
        report.fail(SchurCondition::IdentityPart, "{1} is not a part");
    }
    for (k, part) in partition.parts().iter().enumerate() {
        let inv_part = partition.part_of(table.inv(part[0]));
        let mut inv: Vec<usize> = part.iter().map(|&g| table.inv(g)).collect();
        inv.sort_unstable();
        if inv != partition.parts()[inv_part] {
            report.fail(SchurCondition::InverseClosed, format!("inverse of part {k} is not a part"));
        }
    }
    if let Err((a, b, c)) = SchurAlgebra::new(table, partition) {
        report.fail(
            SchurCondition::Closure,
            format!("product of parts {a} and {b} is not constant on part {c}"),
        );
    }
    let parts: Vec<usize> = (0..partition.len()).collect();
    let noncentral: Vec<Option<usize>> = crate::par::map(&parts, |&k| {
        let part = &partition.parts()[k];
        let central = part
            .iter()
            .all(|&x| (0..table.order()).all(|t| partition.part_of(table.conjugate(t, x)) == k));
        (!central).then_some(k)
    });
    for k in noncentral.into_iter().flatten() {
        report.fail(SchurCondition::Central, format!("part {k} is not closed under conjugation"));
    }
    report
}

/// `f_i = (1/|G|) Σ_j conj(σ_i(K_j)) K̂_j` with `σ_i = n_i χ_i`, written in
/// the basis of part sums.
pub fn idempotents(theory: &SuperTheory, normalizers: &[Rational]) -> Result<Vec<Vec<CyclotomicNumber>>> {
    let order = theory.partition.order();
    let inv_order = Rational::new(One::one(), (order as i64).into());
    theory
        .characters
        .iter()
        .zip(normalizers)
        .enumerate()
        .map(|(i, (c, n))| {
            let vals = c
                .part_values(&theory.partition)
                .map_err(|k| Error::Verification(format!("character {i} varies on part {k}")))?;
            Ok(vals.iter().map(|v| v.conj().scale(&(n * &inv_order))).collect())
        })
        .collect()
}

/// Checks `f_i f_j = δ_ij f_i` and `Σ f_i = 1`; returns the offending pairs
/// (with `(usize::MAX, usize::MAX)` standing for the sum).
pub fn check_idempotents(algebra: &SchurAlgebra, fs: &[Vec<CyclotomicNumber>], identity_part: usize) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for (i, fi) in fs.iter().enumerate() {
        for (j, fj) in fs.iter().enumerate() {
            let prod = algebra.multiply(fi, fj);
            let ok = if i == j {
                prod.iter().zip(fi).all(|(a, b)| a == b)
            } else {
                prod.iter().all(CyclotomicNumber::is_zero)
            };
            if !ok {
                bad.push((i, j));
            }
        }
    }
    let k = algebra.dim();
    let total_ok = (0..k).all(|c| {
        let mut s = CyclotomicNumber::zero(1);
        for f in fs {
            s += &f[c];
        }
        let expected = if c == identity_part { Rational::one() } else { Rational::zero() };
        s == CyclotomicNumber::from_rational(1, expected)
    });
    if !total_ok {
        bad.push((usize::MAX, usize::MAX));
    }
    bad
}
