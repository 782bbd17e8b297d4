use crate::error::{Error, Result};
use crate::groups::{Action, Ambient, LinearForm, MatrixGroup};
use crate::sct::{Partition, SuperTheory};
use crate::ut::oracle::AlgebraGroupOracle;

/// The supercharacter theory of an algebra group computed without closed
/// forms: superclasses are the orbits of `g ↦ 1 + a(g-1)b`, supercharacters
/// are induced from one form in each two-sided orbit of `J*`.
#[derive(Clone, Debug)]
pub struct AlgebraGroupTheory {
    pub theory: SuperTheory,
    /// the orbit representative each supercharacter was induced from
    pub forms: Vec<LinearForm>,
}

pub fn algebra_group_theory(oracle: &AlgebraGroupOracle) -> Result<AlgebraGroupTheory> {
    let g = oracle.group();
    if !g.torus().is_empty() {
        return Err(Error::Invalid(format!("{g} is not an algebra group")));
    }
    let classes = Action::new(g, Ambient::Group).decompose();
    let parts = classes.orbits().iter().map(|o| o.members.clone()).collect();
    let partition = Partition::new(g.order(), parts)?;
    let dual = Action::new(g, Ambient::Dual);
    let forms: Vec<LinearForm> = dual
        .decompose()
        .orbits()
        .iter()
        .map(|o| LinearForm::new(dual.matrix_at(o.representative)))
        .collect();
    let characters = forms.iter().map(|l| oracle.induced(l)).collect();
    Ok(AlgebraGroupTheory {
        theory: SuperTheory::new(partition, characters)?,
        forms,
    })
}

/// Element indices in `group` of the elements of `sub`, in `sub`'s order.
pub fn inclusion_indices(sub: &MatrixGroup, group: &MatrixGroup) -> Result<Vec<usize>> {
    if sub.n() != group.n() || sub.p() != group.p() {
        return Err(Error::Invalid(format!("{sub} does not sit inside {group}")));
    }
    sub.elements()
        .map(|m| {
            if group.contains(&m) {
                Ok(group.index(&m))
            } else {
                Err(Error::Invalid(format!("{m} lies in {sub} but not in {group}")))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Limits;
    use crate::sct::{check_restriction_induction, decompose, restrict, superinduce, ClassFunction};

    fn pattern_group(n: usize, p: u32, pattern: Vec<(usize, usize)>) -> MatrixGroup {
        MatrixGroup::new(n, p, Vec::new(), pattern, Limits::default()).unwrap()
    }

    #[test]
    fn generic_theory_of_ut3_is_a_theory() {
        let g = MatrixGroup::unitriangular(3, 3, Limits::default()).unwrap();
        let o = AlgebraGroupOracle::new(&g).unwrap();
        let t = algebra_group_theory(&o).unwrap();
        assert!(t.theory.verify(g.identity_index()).passed());
        assert_eq!(t.theory.characters.len(), 11);
    }

    #[test]
    fn restriction_to_whole_group_is_identity() {
        let g = MatrixGroup::unitriangular(3, 2, Limits::default()).unwrap();
        let o = AlgebraGroupOracle::new(&g).unwrap();
        let t = algebra_group_theory(&o).unwrap();
        let inc = inclusion_indices(&g, &g).unwrap();
        let rep = check_restriction_induction(&t.theory, &t.theory, &inc).unwrap();
        assert!(rep.report.passed(), "{:?}", rep.report);
        for (a, row) in rep.restriction.iter().enumerate() {
            for (e, m) in row.iter().enumerate() {
                assert_eq!(*m, o.ctx().int((a == e) as i64));
            }
        }
    }

    #[test]
    fn restriction_of_e13_character() {
        let g = MatrixGroup::unitriangular(3, 2, Limits::default()).unwrap();
        let o = AlgebraGroupOracle::new(&g).unwrap();
        let sub = pattern_group(3, 2, vec![(0, 1), (0, 2)]);
        let so = AlgebraGroupOracle::new(&sub).unwrap();
        let st = algebra_group_theory(&so).unwrap();
        let inc = inclusion_indices(&sub, &g).unwrap();
        let mut c = crate::groups::Matrix::zero(3);
        c.set(0, 2, 1);
        let chi = o.induced(&LinearForm::new(c));
        let coeffs = decompose(&restrict(&chi, &inc), &st.theory).unwrap();
        assert!(coeffs.iter().all(crate::sct::is_nonnegative_integer));
        // the trivial character restricts to the trivial character
        let triv = o.induced(&LinearForm::zero(3));
        let coeffs = decompose(&restrict(&triv, &inc), &st.theory).unwrap();
        assert_eq!(coeffs.iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn superinduction_matches_two_sided_average() {
        // SInd φ(1+x) = (1/(|G||G'|)) Σ_{a,b∈G} φ̇(1+axb), summed literally
        let g = MatrixGroup::unitriangular(3, 2, Limits::default()).unwrap();
        let o = AlgebraGroupOracle::new(&g).unwrap();
        let t = algebra_group_theory(&o).unwrap();
        let sub = pattern_group(3, 2, vec![(0, 1)]);
        let so = AlgebraGroupOracle::new(&sub).unwrap();
        let st = algebra_group_theory(&so).unwrap();
        let inc = inclusion_indices(&sub, &g).unwrap();
        let f = g.field();
        let one = g.identity();
        let elems: Vec<_> = g.elements().collect();
        for phi in &st.theory.characters {
            let fast = superinduce(phi, &inc, &t.theory.partition);
            for (k, x) in elems.iter().enumerate() {
                let x0 = x.sub(&one, f);
                let mut acc = crate::arith::CyclotomicNumber::zero(1);
                for a in &elems {
                    for b in &elems {
                        let y = a.mul(&x0, f).mul(b, f).add(&one, f);
                        if sub.contains(&y) {
                            acc += phi.at(sub.index(&y));
                        }
                    }
                }
                let want = acc.scale(&crate::arith::rational(1, (g.order() * sub.order()) as i64));
                assert_eq!(*fast.at(k), want);
            }
        }
        let zero = ClassFunction::new(vec![crate::arith::CyclotomicNumber::zero(1); sub.order()]);
        assert!(superinduce(&zero, &inc, &t.theory.partition).values().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn ut2_in_ut3_reciprocity() {
        let g = MatrixGroup::unitriangular(3, 3, Limits::default()).unwrap();
        let o = AlgebraGroupOracle::new(&g).unwrap();
        let t = algebra_group_theory(&o).unwrap();
        let sub = pattern_group(3, 3, vec![(0, 1)]);
        let so = AlgebraGroupOracle::new(&sub).unwrap();
        let st = algebra_group_theory(&so).unwrap();
        let inc = inclusion_indices(&sub, &g).unwrap();
        let rep = check_restriction_induction(&st.theory, &t.theory, &inc).unwrap();
        assert!(rep.report.passed(), "{:?}", rep.report);
    }
}
