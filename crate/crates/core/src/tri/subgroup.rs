use crate::error::{Error, Result};
use crate::groups::{Limits, MatrixGroup};
use crate::sct::{check_restriction_induction, ClassFunction, InductionReport, Partition, SuperTheory};
use crate::tri::TriTheory;
use crate::ut::inclusion_indices;

/// `T_k(F_p)` sitting in the upper-left block of `T_n(F_p)` as
/// `[[A, 0], [0, 1]]`.
#[derive(Clone, Debug)]
pub struct BlockSubgroup {
    /// the block matrices as a subgroup of `n × n` matrices
    pub group: MatrixGroup,
    /// for each element of `group`, its index in `T_k(F_p)`
    pub small_index: Vec<usize>,
    /// for each element of `group`, its index in `T_n(F_p)`
    pub inclusion: Vec<usize>,
}

pub fn block_subgroup(small: &MatrixGroup, big: &MatrixGroup) -> Result<BlockSubgroup> {
    let (k, n) = (small.n(), big.n());
    if k > n || small.p() != big.p() {
        return Err(Error::Invalid(format!("{small} does not embed in {big}")));
    }
    let torus: Vec<usize> = small.torus().to_vec();
    let pattern: Vec<(usize, usize)> = small.pattern().to_vec();
    let group = MatrixGroup::new(n, big.p(), torus, pattern, Limits::default())?;
    let small_index = group
        .elements()
        .map(|m| small.index(&m.submatrix(0, k)))
        .collect();
    let inclusion = inclusion_indices(&group, big)?;
    Ok(BlockSubgroup {
        group,
        small_index,
        inclusion,
    })
}

/// Transports a theory of `T_k(F_p)` to the block subgroup.
fn transport(theory: &SuperTheory, block: &BlockSubgroup) -> Result<SuperTheory> {
    let parts = theory
        .partition
        .parts()
        .iter()
        .map(|part| {
            (0..block.small_index.len())
                .filter(|&g| part.binary_search(&block.small_index[g]).is_ok())
                .collect()
        })
        .collect();
    let characters = theory
        .characters
        .iter()
        .map(|chi| ClassFunction::new(block.small_index.iter().map(|&g| chi.at(g).clone()).collect()))
        .collect();
    SuperTheory::new(Partition::new(block.small_index.len(), parts)?, characters)
}

/// Restriction from `T_n` to the block `T_k` and superinduction back, with
/// integrality, positivity, reciprocity and the coefficient formula checked.
pub fn tri_restrict_superinduce(small: &TriTheory, big: &TriTheory) -> Result<InductionReport> {
    let block = block_subgroup(small.group(), big.group())?;
    let sub = transport(&small.super_theory(), &block)?;
    check_restriction_induction(&sub, &big.super_theory(), &block.inclusion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rational, CyclotomicNumber};
    use crate::sct::superinduce;

    #[test]
    fn block_of_full_size_is_the_group() {
        let t = TriTheory::new(2, 3, Limits::default()).unwrap();
        let rep = tri_restrict_superinduce(&t, &t).unwrap();
        assert!(rep.report.passed(), "{:?}", rep.report);
        for (a, row) in rep.restriction.iter().enumerate() {
            for (e, m) in row.iter().enumerate() {
                assert_eq!(*m, t.ctx().int((a == e) as i64));
            }
        }
    }

    #[test]
    fn t2_in_t3() {
        for p in [2, 3] {
            let small = TriTheory::new(2, p, Limits::default()).unwrap();
            let big = TriTheory::new(3, p, Limits::default()).unwrap();
            let rep = tri_restrict_superinduce(&small, &big).unwrap();
            assert!(rep.report.passed(), "p = {p}: {:?}", rep.report);
        }
    }

    #[test]
    fn superinduction_matches_literal_sum() {
        // SInd φ(g) = |G| / (|G'| |Γ|) Σ_τ φ̇(τ·g), with Γ = H × U × U acting by
        // τ·g = 1 + t a (g-1) b t^{-1}, summed literally for T_3(F_3)
        let small = TriTheory::new(2, 3, Limits::default()).unwrap();
        let big = TriTheory::new(3, 3, Limits::default()).unwrap();
        let block = block_subgroup(small.group(), big.group()).unwrap();
        let sub = transport(&small.super_theory(), &block).unwrap();
        let g = big.group();
        let f = g.field();
        let unit = MatrixGroup::unitriangular(3, 3, Limits::default()).unwrap();
        let units: Vec<_> = unit.elements().collect();
        let torus = g.torus_elements();
        let partition = big.partition();
        for phi in &sub.characters {
            let fast = superinduce(phi, &block.inclusion, &partition);
            for part in partition.parts() {
                let k = part[0];
                let x = g.element(k);
                let x0 = x.sub(&g.identity(), f);
                let mut acc = CyclotomicNumber::zero(1);
                let mut count = 0i64;
                for t in &torus {
                    let tm = crate::groups::Matrix::diagonal(t);
                    let tinv = g.inv(&tm);
                    for a in &units {
                        for b in &units {
                            let y = tm.mul(&a.mul(&x0, f).mul(b, f), f).mul(&tinv, f).add(&g.identity(), f);
                            count += 1;
                            if block.group.contains(&y) {
                                acc += phi.at(block.group.index(&y));
                            }
                        }
                    }
                }
                let want = acc.scale(&rational(g.order() as i64, count * block.group.order() as i64));
                assert_eq!(*fast.at(k), want);
            }
        }
    }
}
