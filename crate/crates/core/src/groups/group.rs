use std::collections::HashSet;
use std::fmt;

use crate::arith::PrimeField;
use crate::error::{Error, Result};
use crate::groups::matrix::{upper_positions, Coordinates, Matrix};

/// Default bound on the number of elements any enumeration may visit.
pub const DEFAULT_SIZE_CAP: u64 = 1_000_000;

/// Size caps for enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_order: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: DEFAULT_SIZE_CAP,
        }
    }
}

impl Limits {
    pub fn check(&self, order: u128) -> Result<()> {
        if order > self.max_order as u128 {
            return Err(Error::SizeCap {
                order,
                cap: self.max_order,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// `1 + J` for a pattern algebra `J`.
    Unitriangular,
    /// `H + J` with `H` a group of diagonal matrices.
    Triangular,
}

/// A group of upper triangular matrices over `F_p` of the form `H + J`: a
/// subgroup `H` of the diagonal torus (free diagonal positions take any unit,
/// the others are fixed at 1) and a pattern algebra `J` of strictly upper
/// matrices supported on a multiplicatively closed set of positions.
///
/// `UT_n` is the full pattern with trivial torus, `T_n` the full pattern with
/// the full torus. Elements are numbered by [`Coordinates`], diagonal first.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    n: usize,
    field: PrimeField,
    torus: Vec<usize>,
    pattern: Vec<(usize, usize)>,
    coords: Coordinates,
    order: usize,
}

impl MatrixGroup {
    /// General constructor; `torus` lists free diagonal indices and `pattern`
    /// the free strictly upper positions (both 0-based).
    pub fn new(n: usize, p: u32, torus: Vec<usize>, pattern: Vec<(usize, usize)>, limits: Limits) -> Result<MatrixGroup> {
        let field = PrimeField::new(p)?;
        let mut torus = torus;
        torus.sort_unstable();
        torus.dedup();
        let mut pattern = pattern;
        pattern.sort_unstable();
        pattern.dedup();
        if torus.iter().any(|&i| i >= n) || pattern.iter().any(|&(i, j)| i >= j || j >= n) {
            return Err(Error::Invalid("torus or pattern position out of range".into()));
        }
        for &(i, k) in &pattern {
            for &(k2, j) in &pattern {
                if k == k2 && !pattern.contains(&(i, j)) {
                    return Err(Error::Invalid(format!(
                        "pattern is not closed under multiplication: E_{}{} E_{}{} leaves it",
                        i + 1,
                        k + 1,
                        k + 1,
                        j + 1
                    )));
                }
            }
        }
        let mut positions: Vec<(usize, usize)> = torus.iter().map(|&i| (i, i)).collect();
        let mut units = vec![true; torus.len()];
        positions.extend(pattern.iter().copied());
        units.extend(std::iter::repeat_n(false, pattern.len()));
        let coords = Coordinates::new(n, p, positions, units, Matrix::identity(n));
        limits.check(coords.size())?;
        let order = coords.size() as usize;
        Ok(MatrixGroup {
            n,
            field,
            torus,
            pattern,
            coords,
            order,
        })
    }

    /// `UT_n(F_p)`.
    pub fn unitriangular(n: usize, p: u32, limits: Limits) -> Result<MatrixGroup> {
        MatrixGroup::new(n, p, Vec::new(), upper_positions(n), limits)
    }

    /// `T_n(F_p)`.
    pub fn triangular(n: usize, p: u32, limits: Limits) -> Result<MatrixGroup> {
        MatrixGroup::new(n, p, (0..n).collect(), upper_positions(n), limits)
    }

    pub fn kind(&self) -> GroupKind {
        if self.torus.is_empty() {
            GroupKind::Unitriangular
        } else {
            GroupKind::Triangular
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn torus(&self) -> &[usize] {
        &self.torus
    }

    pub fn pattern(&self) -> &[(usize, usize)] {
        &self.pattern
    }

    pub fn is_full_pattern(&self) -> bool {
        self.pattern.len() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `|H|`, the order of the diagonal part.
    pub fn torus_order(&self) -> usize {
        (self.p() as usize - 1).pow(self.torus.len() as u32)
    }

    /// Coordinates of the pattern algebra `J`.
    pub fn algebra_coords(&self) -> Coordinates {
        Coordinates::nilpotent(self.n, self.p(), self.pattern.clone())
    }

    pub fn element(&self, index: usize) -> Matrix {
        self.coords.decode(index)
    }

    pub fn index(&self, g: &Matrix) -> usize {
        self.coords.encode(g)
    }

    pub fn contains(&self, g: &Matrix) -> bool {
        self.coords.contains(g)
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.n)
    }

    pub fn identity_index(&self) -> usize {
        self.index(&self.identity())
    }

    pub fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.mul(b, &self.field)
    }

    pub fn inv(&self, a: &Matrix) -> Matrix {
        a.upper_inverse(&self.field)
    }

    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.index(&self.mul(&self.element(a), &self.element(b)))
    }

    pub fn inv_index(&self, a: usize) -> usize {
        self.index(&self.inv(&self.element(a)))
    }

    /// `a b a^{-1}`.
    pub fn conjugate(&self, a: &Matrix, b: &Matrix) -> Matrix {
        self.mul(&self.mul(a, b), &self.inv(a))
    }

    pub fn elements(&self) -> impl Iterator<Item = Matrix> + '_ {
        (0..self.order).map(|k| self.element(k))
    }

    /// Transvections `1 + E_ab` over the pattern and, for each free diagonal
    /// position, the torus element with the field's generator there.
    pub fn generators(&self) -> Vec<Matrix> {
        let mut gens = Vec::new();
        for &i in &self.torus {
            let mut t = self.identity();
            t.set(i, i, self.field.generator() as u8);
            gens.push(t);
        }
        for &(a, b) in &self.pattern {
            let mut t = self.identity();
            t.set(a, b, 1);
            gens.push(t);
        }
        gens
    }

    /// Diagonal matrices of the torus, in coordinate order.
    pub fn torus_elements(&self) -> Vec<Vec<u8>> {
        let mut out = vec![vec![1u8; self.n]];
        for &i in &self.torus {
            out = out
                .into_iter()
                .flat_map(|d| {
                    self.field.units().map(move |u| {
                        let mut e = d.clone();
                        e[i] = u;
                        e
                    })
                })
                .collect();
        }
        out.sort();
        out
    }

    /// The conjugacy class of `g` as sorted element indices.
    pub fn conjugacy_class(&self, g: usize) -> Vec<usize> {
        let gens: Vec<(Matrix, Matrix)> = self.generators().into_iter().map(|t| {
            let ti = self.inv(&t);
            (t, ti)
        }).collect();
        let mut seen = HashSet::new();
        seen.insert(g);
        let mut stack = vec![g];
        while let Some(x) = stack.pop() {
            let m = self.element(x);
            for (t, ti) in &gens {
                let y = self.index(&self.mul(&self.mul(t, &m), ti));
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        let mut out: Vec<usize> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind() {
            GroupKind::Unitriangular => "UT",
            GroupKind::Triangular => "T",
        };
        if self.is_full_pattern() && (self.torus.is_empty() || self.torus.len() == self.n) {
            write!(f, "{name}_{}(F_{})", self.n, self.p())
        } else {
            write!(f, "{name}-pattern subgroup of degree {} over F_{}", self.n, self.p())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let l = Limits::default();
        assert_eq!(MatrixGroup::unitriangular(3, 2, l).unwrap().order(), 8);
        assert_eq!(MatrixGroup::triangular(2, 3, l).unwrap().order(), 12);
        assert_eq!(MatrixGroup::unitriangular(0, 2, l).unwrap().order(), 1);
        assert_eq!(MatrixGroup::triangular(1, 5, l).unwrap().order(), 4);
    }

    #[test]
    fn size_cap_is_enforced() {
        let err = MatrixGroup::unitriangular(9, 7, Limits::default()).unwrap_err();
        assert!(matches!(err, Error::SizeCap { .. }));
        assert!(MatrixGroup::unitriangular(3, 3, Limits { max_order: 10 }).is_err());
    }

    #[test]
    fn pattern_must_be_closed() {
        assert!(MatrixGroup::new(3, 2, vec![], vec![(0, 1), (1, 2)], Limits::default()).is_err());
        assert!(MatrixGroup::new(3, 2, vec![], vec![(0, 1), (0, 2)], Limits::default()).is_ok());
    }

    #[test]
    fn group_axioms_small() {
        for g in [
            MatrixGroup::unitriangular(3, 2, Limits::default()).unwrap(),
            MatrixGroup::triangular(2, 3, Limits::default()).unwrap(),
        ] {
            let e = g.identity_index();
            for a in 0..g.order() {
                assert_eq!(g.mul_index(a, g.inv_index(a)), e);
                assert!(g.contains(&g.element(a)));
                for b in 0..g.order() {
                    assert!(g.contains(&g.mul(&g.element(a), &g.element(b))));
                }
            }
        }
    }

    #[test]
    fn conjugacy_classes_partition_the_group() {
        let g = MatrixGroup::unitriangular(3, 2, Limits::default()).unwrap();
        let mut seen = vec![false; g.order()];
        let mut classes = 0;
        for x in 0..g.order() {
            if !seen[x] {
                classes += 1;
                for y in g.conjugacy_class(x) {
                    seen[y] = true;
                }
            }
        }
        // UT_3(F_2) is dihedral of order 8
        assert_eq!(classes, 5);
    }
}
