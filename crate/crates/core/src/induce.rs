//! Induced characters of matrix groups, evaluated class by class from the
//! standard formula `χ(g) = |G| / (|cl(g)| |H|) Σ_{y ∈ cl(g) ∩ H} ξ(y)`.

use crate::arith::{rational, CharacterContext};
use crate::error::Result;
use crate::groups::{Matrix, MatrixGroup};
use crate::sct::ClassFunction;

/// The conjugacy classes of an enumerated matrix group.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    elements: Vec<Matrix>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn new(g: &MatrixGroup) -> Result<ConjugacyClasses> {
        let order = g.order();
        let elements: Vec<Matrix> = g.elements().collect();
        let mut class_of = vec![u32::MAX; order];
        let mut classes = Vec::new();
        for x in 0..order {
            if class_of[x] != u32::MAX {
                continue;
            }
            let cl = g.conjugacy_class(x);
            for &y in &cl {
                class_of[y] = classes.len() as u32;
            }
            classes.push(cl);
        }
        Ok(ConjugacyClasses {
            elements,
            classes,
            class_of,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g] as usize
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `Ind(ξ, H, G)` for a linear character `ξ` of a subgroup `H` of order
    /// `sub_order`. `xi(g)` returns the exponent `k` with `ξ(g) = ζ_m^k` for
    /// `g ∈ H` and `None` outside `H`.
    pub fn induce<F>(&self, ctx: &CharacterContext, sub_order: usize, xi: F) -> ClassFunction
    where
        F: Fn(&Matrix) -> Option<usize> + Sync + Send,
    {
        let m = ctx.conductor() as usize;
        let class_values = crate::par::map(&self.classes, |cl| {
            let mut counts = vec![0i64; m];
            let mut hit = false;
            for &y in cl {
                if let Some(k) = xi(&self.elements[y]) {
                    counts[k % m] += 1;
                    hit = true;
                }
            }
            if !hit {
                return ctx.zero();
            }
            let factor = rational(self.order() as i64, (cl.len() * sub_order) as i64);
            ctx.from_counts(&counts).scale(&factor)
        });
        ClassFunction::new((0..self.order()).map(|g| class_values[self.class_of(g)].clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Limits;

    #[test]
    fn class_sizes_of_ut3() {
        let g = MatrixGroup::unitriangular(3, 2, Limits::default()).unwrap();
        let cc = ConjugacyClasses::new(&g).unwrap();
        // Heisenberg group of order 8 (dihedral): five classes
        assert_eq!(cc.len(), 5);
        let mut sizes: Vec<usize> = cc.classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn inducing_trivial_from_trivial_is_regular() {
        let g = MatrixGroup::triangular(2, 3, Limits::default()).unwrap();
        let cc = ConjugacyClasses::new(&g).unwrap();
        let ctx = CharacterContext::new(3).unwrap();
        let id = g.identity();
        let reg = cc.induce(&ctx, 1, |y| (*y == id).then_some(0));
        for x in 0..g.order() {
            let want = if x == g.identity_index() { 12 } else { 0 };
            assert_eq!(*reg.at(x), ctx.int(want));
        }
    }
}
