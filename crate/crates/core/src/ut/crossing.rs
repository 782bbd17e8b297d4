use std::collections::HashSet;

use serde::Serialize;

use crate::arith::PrimeField;
use crate::combinatorics::{BasicSubset, Root};
use crate::error::Result;
use crate::groups::Limits;
use crate::sct::Report;

/// The algebra `Cx_D(q)` on generators `e_ij`, `(i,j) ∈ Cr(D)`, and its
/// central extension `tCx_D(q) = Cx_D(q) ⊕ F_q z_D`.
///
/// Every product of basis elements is zero or a basis element, so both
/// algebras are stored as tables of basis indices; in the extension the
/// last index is `z_D`.
#[derive(Clone, Debug, Serialize)]
pub struct CrossingAlgebra {
    pub d: BasicSubset,
    pub p: u32,
    /// `Cr(D) = {(i,j) : (i,k), (j,l) ∈ D, i < j < k < l}`
    pub generators: Vec<Root>,
    cx: Vec<Vec<Option<usize>>>,
    tcx: Vec<Vec<Option<usize>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CrossingCheck {
    Associative,
    Nilpotent,
    UnitGroup,
}

impl CrossingAlgebra {
    pub fn new(d: &BasicSubset, p: u32) -> CrossingAlgebra {
        let mut generators = Vec::new();
        for x in d.roots() {
            for y in d.roots() {
                if x.i < y.i && y.i < x.j && x.j < y.j {
                    generators.push(Root { i: x.i, j: y.i });
                }
            }
        }
        generators.sort();
        generators.dedup();
        let k = generators.len();
        let pos = |r: Root| generators.iter().position(|&g| g == r);
        let mut cx = vec![vec![None; k]; k];
        let mut tcx = vec![vec![None; k + 1]; k + 1];
        for (a, x) in generators.iter().enumerate() {
            for (b, y) in generators.iter().enumerate() {
                if x.j != y.i {
                    continue;
                }
                let target = Root { i: x.i, j: y.j };
                if let Some(c) = pos(target) {
                    cx[a][b] = Some(c);
                    tcx[a][b] = Some(c);
                } else if d.contains(target) {
                    tcx[a][b] = Some(k);
                }
            }
        }
        CrossingAlgebra {
            d: d.clone(),
            p,
            generators,
            cx,
            tcx,
        }
    }

    /// `dim Cx_D(q)`; the extension has one more dimension.
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    fn table(&self, extended: bool) -> &[Vec<Option<usize>>] {
        if extended {
            &self.tcx
        } else {
            &self.cx
        }
    }

    /// Product of basis elements `a * b`.
    pub fn basis_product(&self, extended: bool, a: usize, b: usize) -> Option<usize> {
        self.table(extended)[a][b]
    }

    pub fn is_associative(&self, extended: bool) -> bool {
        let t = self.table(extended);
        let k = t.len();
        (0..k).all(|a| {
            (0..k).all(|b| {
                (0..k).all(|c| {
                    let left = t[a][b].and_then(|ab| t[ab][c]);
                    let right = t[b][c].and_then(|bc| t[a][bc]);
                    left == right
                })
            })
        })
    }

    /// The least `r` with `A^r = 0` (`A^1 = A`), or `None` if the powers
    /// stabilize at a nonzero ideal.
    pub fn nilpotency_index(&self, extended: bool) -> Option<usize> {
        let t = self.table(extended);
        let k = t.len();
        let mut power: HashSet<usize> = (0..k).collect();
        let mut r = 1;
        while !power.is_empty() {
            let next: HashSet<usize> = power
                .iter()
                .flat_map(|&a| (0..k).filter_map(move |b| t[a][b]))
                .collect();
            if next == power {
                return None;
            }
            power = next;
            r += 1;
        }
        Some(r)
    }

    /// Product in the algebra of coordinate vectors over `F_p`.
    pub fn multiply(&self, extended: bool, x: &[u8], y: &[u8], f: &PrimeField) -> Vec<u8> {
        let t = self.table(extended);
        let mut out = vec![0u8; t.len()];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if let Some(c) = t[a][b] {
                    out[c] = f.add(out[c], f.mul(xa, yb));
                }
            }
        }
        out
    }

    /// Enumerates `1 + A` and checks it is a group of order `q^{dim A}`:
    /// every `1 + u` has the two-sided inverse `Σ_k (-u)^k` under
    /// `(1+u)(1+v) = 1 + u + v + uv`. Returns the order.
    pub fn unit_group_order(&self, extended: bool, limits: Limits) -> Result<usize> {
        let k = self.table(extended).len();
        let q = self.p as usize;
        limits.check((q as u128).pow(k as u32))?;
        let f = PrimeField::new(self.p)?;
        let size = q.pow(k as u32);
        let compose = |u: &[u8], v: &[u8]| -> Vec<u8> {
            let uv = self.multiply(extended, u, v, &f);
            (0..k).map(|i| f.add(f.add(u[i], v[i]), uv[i])).collect()
        };
        let zero = vec![0u8; k];
        for mut idx in 0..size {
            let mut u = vec![0u8; k];
            for slot in u.iter_mut().rev() {
                *slot = (idx % q) as u8;
                idx /= q;
            }
            let w: Vec<u8> = u.iter().map(|&x| f.neg(x)).collect();
            let mut v = w.clone();
            let mut power = w.clone();
            for _ in 0..=k {
                power = self.multiply(extended, &power, &w, &f);
                if power == zero {
                    break;
                }
                v = v.iter().zip(&power).map(|(&a, &b)| f.add(a, b)).collect();
            }
            if compose(&u, &v) != zero || compose(&v, &u) != zero {
                return Err(crate::Error::Verification(format!("1 + {u:?} has no inverse in 1 + A")));
            }
        }
        Ok(size)
    }

    /// Associativity and nilpotency of both algebras, and the unit groups.
    pub fn verify(&self, limits: Limits) -> Report<CrossingCheck> {
        let mut report = Report::new();
        for extended in [false, true] {
            let name = if extended { "tCx" } else { "Cx" };
            if !self.is_associative(extended) {
                report.fail(CrossingCheck::Associative, format!("{name}_{} is not associative", self.d));
            }
            if self.nilpotency_index(extended).is_none() {
                report.fail(CrossingCheck::Nilpotent, format!("{name}_{} is not nilpotent", self.d));
            }
            match self.unit_group_order(extended, limits) {
                Ok(_) | Err(crate::Error::SizeCap { .. }) => {}
                Err(e) => report.fail(CrossingCheck::UnitGroup, format!("{name}_{}: {e}", self.d)),
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_basic_subsets;

    #[test]
    fn two_crossing_roots() {
        let d = BasicSubset::from_pairs(&[(1, 3), (2, 4)]).unwrap();
        let a = CrossingAlgebra::new(&d, 2);
        assert_eq!(a.generators, vec![Root { i: 1, j: 2 }]);
        assert_eq!(a.basis_product(false, 0, 0), None);
        assert_eq!(a.basis_product(true, 0, 0), None);
        assert_eq!(a.unit_group_order(true, Limits::default()).unwrap(), 4);
        assert!(a.verify(Limits::default()).passed());
    }

    #[test]
    fn noncrossing_sets_give_the_zero_algebra() {
        let d = BasicSubset::from_pairs(&[(1, 4), (2, 3)]).unwrap();
        let a = CrossingAlgebra::new(&d, 3);
        assert_eq!(d.crossings(), 0);
        assert_eq!(a.dim(), 0);
        assert_eq!(a.nilpotency_index(false), Some(1));
    }

    #[test]
    fn chain_produces_z() {
        let d = BasicSubset::from_pairs(&[(1, 3), (2, 4), (3, 5), (4, 6)]).unwrap();
        let a = CrossingAlgebra::new(&d, 2);
        assert!(a.generators.contains(&Root { i: 1, j: 2 }));
        assert!(a.generators.contains(&Root { i: 2, j: 3 }));
        // (1,3) lies in D, not in Cr(D), so e_12 * e_23 is z_D in the extension
        let e12 = a.generators.iter().position(|&r| r == Root { i: 1, j: 2 }).unwrap();
        let e23 = a.generators.iter().position(|&r| r == Root { i: 2, j: 3 }).unwrap();
        assert_eq!(a.basis_product(false, e12, e23), None);
        assert_eq!(a.basis_product(true, e12, e23), Some(a.dim()));
        assert!(a.verify(Limits::default()).passed());
    }

    #[test]
    fn all_small_sets_are_associative_and_nilpotent() {
        for n in 1..=6 {
            for d in enumerate_basic_subsets(n) {
                let a = CrossingAlgebra::new(&d, 2);
                for ext in [false, true] {
                    assert!(a.is_associative(ext), "{d}");
                    assert!(a.nilpotency_index(ext).is_some(), "{d}");
                }
            }
        }
    }
}
