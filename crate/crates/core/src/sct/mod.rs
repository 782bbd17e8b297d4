//! Group-agnostic checks for supercharacter theories: class functions and
//! scalar products, the defining axioms, Schur-subalgebra closure, central
//! idempotents and averaging over automorphism groups.

pub mod gamma;
pub mod restriction;
pub mod schur;
pub mod table;
pub mod theory;

pub use gamma::gamma_average;
pub use restriction::{
    check_restriction_induction, decompose, is_nonnegative_integer, is_nonnegative_rational, restrict, superinduce,
    InductionCheck, InductionReport,
};
pub use schur::{check_idempotents, idempotents, schur_check, SchurAlgebra, SchurCondition};
pub use table::{FiniteGroupTable, CAYLEY_TABLE_CAP};
pub use theory::{
    integrality_check, scalar_product, scalar_product_on_parts, Axiom, ClassFunction, Failure, Partition, Report,
    SuperTheory,
};

use crate::arith::CyclotomicNumber;

/// Theories shipped for checking the checker.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `C_4 = <g>` with parts `{1}, {g, g³}, {g²}`
    C4,
    /// conjugacy classes and irreducible characters of `S_3`
    S3,
    /// conjugacy classes and the four linear characters of `C_4`
    C4Classical,
}

impl std::str::FromStr for Builtin {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Builtin> {
        match s.to_ascii_lowercase().as_str() {
            "c4" => Ok(Builtin::C4),
            "s3" => Ok(Builtin::S3),
            "c4-classical" => Ok(Builtin::C4Classical),
            other => Err(crate::Error::Invalid(format!("unknown builtin theory {other:?} (c4, s3, c4-classical)"))),
        }
    }
}

/// The group table and theory of a builtin.
pub fn builtin(which: Builtin) -> (FiniteGroupTable, SuperTheory) {
    match which {
        Builtin::C4 => {
            let t = FiniteGroupTable::cyclic(4);
            let partition = Partition::new(4, vec![vec![0], vec![1, 3], vec![2]]).unwrap();
            let chars = [[1, 1, 1], [2, 0, -2], [1, -1, 1]]
                .iter()
                .map(|row| {
                    let vals: Vec<CyclotomicNumber> = row.iter().map(|&v| CyclotomicNumber::from_int(1, v)).collect();
                    ClassFunction::from_parts(&partition, &vals)
                })
                .collect();
            (t, SuperTheory::new(partition, chars).unwrap())
        }
        Builtin::S3 => {
            let t = FiniteGroupTable::symmetric3();
            let partition = Partition::new(6, vec![vec![0], vec![1, 2, 3], vec![4, 5]]).unwrap();
            let chars = [[1, 1, 1], [1, -1, 1], [2, 0, -1]]
                .iter()
                .map(|row| {
                    let vals: Vec<CyclotomicNumber> = row.iter().map(|&v| CyclotomicNumber::from_int(1, v)).collect();
                    ClassFunction::from_parts(&partition, &vals)
                })
                .collect();
            (t, SuperTheory::new(partition, chars).unwrap())
        }
        Builtin::C4Classical => {
            let t = FiniteGroupTable::cyclic(4);
            let partition = Partition::new(4, (0..4).map(|g| vec![g]).collect()).unwrap();
            let chars = (0..4)
                .map(|k| ClassFunction::new((0..4).map(|g| CyclotomicNumber::zeta_power(4, (k * g) as i64)).collect()))
                .collect();
            (t, SuperTheory::new(partition, chars).unwrap())
        }
    }
}

/// The coarsest theory `{1}, G \ {1}` with characters `1` and `ρ - 1`.
pub fn trivial_theory(table: &FiniteGroupTable) -> SuperTheory {
    let order = table.order();
    let e = table.identity();
    let rest: Vec<usize> = (0..order).filter(|&g| g != e).collect();
    let mut parts = vec![vec![e]];
    if !rest.is_empty() {
        parts.push(rest);
    }
    let partition = Partition::new(order, parts).unwrap();
    let one = ClassFunction::from_ints(1, &vec![1; order]);
    let mut chars = vec![one];
    if order > 1 {
        let vals: Vec<i64> = (0..order).map(|g| if g == e { order as i64 - 1 } else { -1 }).collect();
        chars.push(ClassFunction::from_ints(1, &vals));
    }
    SuperTheory::new(partition, chars).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational_int;

    #[test]
    fn c4_table_passes() {
        let (t, th) = builtin(Builtin::C4);
        assert!(th.verify(t.identity()).passed());
        assert!(schur_check(&t, &th.partition).passed());
        assert_eq!(th.constant_characters(), 1);
        assert_eq!(th.parts_from_fibers(), th.partition.canonical());
    }

    #[test]
    fn s3_table_passes() {
        let (t, th) = builtin(Builtin::S3);
        assert!(th.verify(t.identity()).passed());
        assert!(schur_check(&t, &th.partition).passed());
        let ns = th.default_normalizers(t.identity()).unwrap();
        assert!(th.regular_decomposition(&ns, t.identity()).is_empty());
    }

    #[test]
    fn merged_identity_fails_axiom_d() {
        let (t, th) = builtin(Builtin::C4);
        let partition = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let chars = th.characters[..2].to_vec();
        let bad = SuperTheory::new(partition.clone(), chars).unwrap();
        let report = bad.verify(t.identity());
        assert!(report.failures.iter().any(|f| f.check == Axiom::IdentityPart));
        assert!(schur_check(&t, &partition).failures.iter().any(|f| f.check == SchurCondition::IdentityPart));
    }

    #[test]
    fn non_central_partition_fails() {
        let t = FiniteGroupTable::symmetric3();
        let p = Partition::new(6, vec![vec![0], vec![1], vec![2, 3], vec![4, 5]]).unwrap();
        let r = schur_check(&t, &p);
        assert!(r.failures.iter().any(|f| f.check == SchurCondition::Central));
    }

    #[test]
    fn c4_idempotents() {
        let (t, th) = builtin(Builtin::C4);
        let alg = SchurAlgebra::new(&t, &th.partition).unwrap();
        let ns = vec![rational_int(1); 3];
        let fs = idempotents(&th, &ns).unwrap();
        assert_eq!(fs.len(), 3);
        assert!(check_idempotents(&alg, &fs, 0).is_empty());
    }

    #[test]
    fn trivial_theory_idempotents() {
        let t = FiniteGroupTable::cyclic(2);
        let th = trivial_theory(&t);
        assert!(th.verify(t.identity()).passed());
        let alg = SchurAlgebra::new(&t, &th.partition).unwrap();
        let ns = th.default_normalizers(t.identity()).unwrap();
        let fs = idempotents(&th, &ns).unwrap();
        assert!(check_idempotents(&alg, &fs, 0).is_empty());
    }

    #[test]
    fn gamma_average_reproduces_c4_table() {
        let (t, base) = builtin(Builtin::C4Classical);
        assert!(base.verify(t.identity()).passed());
        let identity: Vec<usize> = (0..4).collect();
        let cube: Vec<usize> = (0..4).map(|g| (3 * g) % 4).collect();
        let avg = gamma_average(&base, &[identity.clone(), cube]).unwrap();
        let (_, expected) = builtin(Builtin::C4);
        assert_eq!(avg.partition, expected.partition);
        let mut got = avg.characters.clone();
        let mut want = expected.characters.clone();
        got.sort_by_key(|c| format!("{:?}", c.values().iter().map(|v| v.to_string()).collect::<Vec<_>>()));
        want.sort_by_key(|c| format!("{:?}", c.values().iter().map(|v| v.to_string()).collect::<Vec<_>>()));
        assert_eq!(got, want);
        let same = gamma_average(&base, &[identity]).unwrap();
        assert_eq!(same.characters, base.characters);
    }
}
