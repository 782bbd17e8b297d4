use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::group::MatrixGroup;
use crate::groups::matrix::{Coordinates, Matrix};
use crate::par;

/// What the matrices an [`Action`] moves represent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// Elements `x` of the pattern algebra `J`.
    Algebra,
    /// Linear forms on `J`, stored as coefficient matrices.
    Dual,
    /// Group elements `g`, moved through `g - 1`.
    Group,
}

/// The action of `N × N` (and optionally the torus `H`) on `J`, `J*` or `G`:
/// on the algebra `x ↦ t a x b^{-1} t^{-1}`, on group elements
/// `g ↦ 1 + t a (g-1) b^{-1} t^{-1}`, and on forms `λ ↦ aλb` with
/// `(aλ)(x) = λ(xa)` and `(λb)(x) = λ(bx)`.
///
/// Orbits are closed under the generator moves below; for a finite group the
/// monoid they generate is the whole group, so no inverses are needed.
#[derive(Clone, Copy, Debug)]
pub struct Action<'a> {
    group: &'a MatrixGroup,
    ambient: Ambient,
    left: bool,
    right: bool,
    torus: bool,
}

impl<'a> Action<'a> {
    pub fn new(group: &'a MatrixGroup, ambient: Ambient) -> Action<'a> {
        Action {
            group,
            ambient,
            left: true,
            right: true,
            torus: true,
        }
    }

    pub fn left_only(mut self) -> Self {
        self.right = false;
        self.torus = false;
        self
    }

    pub fn right_only(mut self) -> Self {
        self.left = false;
        self.torus = false;
        self
    }

    pub fn without_torus(mut self) -> Self {
        self.torus = false;
        self
    }

    pub fn group(&self) -> &MatrixGroup {
        self.group
    }

    pub fn coords(&self) -> Coordinates {
        match self.ambient {
            Ambient::Algebra | Ambient::Dual => self.group.algebra_coords(),
            Ambient::Group => Coordinates::new(
                self.group.n(),
                self.group.p(),
                Vec::new(),
                Vec::new(),
                Matrix::identity(self.group.n()),
            ),
        }
    }

    pub fn universe(&self) -> usize {
        match self.ambient {
            Ambient::Group => self.group.order(),
            _ => self.group.algebra_coords().size() as usize,
        }
    }

    fn encode(&self, coords: &Coordinates, m: &Matrix) -> usize {
        match self.ambient {
            Ambient::Group => self.group.index(m),
            _ => coords.encode(m),
        }
    }

    fn decode(&self, coords: &Coordinates, k: usize) -> Matrix {
        match self.ambient {
            Ambient::Group => self.group.element(k),
            _ => coords.decode(k),
        }
    }

    /// Images of `m` under every generator move.
    pub fn moves(&self, m: &Matrix) -> Vec<Matrix> {
        let f = self.group.field();
        let n = self.group.n();
        let mut out = Vec::new();
        let base = match self.ambient {
            Ambient::Group => m.sub(&Matrix::identity(n), f),
            _ => m.clone(),
        };
        let finish = |y: Matrix| -> Matrix {
            match self.ambient {
                Ambient::Group => y.add(&Matrix::identity(n), f),
                Ambient::Dual => mask(&y, self.group.pattern()),
                Ambient::Algebra => y,
            }
        };
        for &(a, b) in self.group.pattern() {
            if self.left {
                let mut y = base.clone();
                match self.ambient {
                    // (1 + E_ab) y: row a += row b
                    Ambient::Algebra | Ambient::Group => {
                        for l in 0..n {
                            y.set(a, l, f.add(y.get(a, l), base.get(b, l)));
                        }
                    }
                    // λ(x(1 + E_ab)): C_{i,a} += C_{i,b}
                    Ambient::Dual => {
                        for i in 0..a {
                            y.set(i, a, f.add(y.get(i, a), base.get(i, b)));
                        }
                    }
                }
                out.push(finish(y));
            }
            if self.right {
                let mut y = base.clone();
                match self.ambient {
                    // y (1 + E_ab): col b += col a
                    Ambient::Algebra | Ambient::Group => {
                        for i in 0..n {
                            y.set(i, b, f.add(y.get(i, b), base.get(i, a)));
                        }
                    }
                    // λ((1 + E_ab) x): C_{b,l} += C_{a,l}
                    Ambient::Dual => {
                        for l in b + 1..n {
                            y.set(b, l, f.add(y.get(b, l), base.get(a, l)));
                        }
                    }
                }
                out.push(finish(y));
            }
        }
        if self.torus {
            let g = f.generator() as u8;
            let gi = f.inv(g);
            for &i in self.group.torus() {
                let mut y = base.clone();
                for j in 0..n {
                    if j != i {
                        y.set(i, j, f.mul(y.get(i, j), g));
                        y.set(j, i, f.mul(y.get(j, i), gi));
                    }
                }
                out.push(finish(y));
            }
        }
        out
    }

    /// The orbit of `start`, as sorted indices in the ambient coordinates.
    pub fn orbit(&self, start: &Matrix) -> Vec<usize> {
        let coords = self.coords();
        let s = self.encode(&coords, start);
        let mut seen = HashSet::new();
        seen.insert(s);
        let mut stack = vec![start.clone()];
        while let Some(m) = stack.pop() {
            for y in self.moves(&m) {
                if seen.insert(self.encode(&coords, &y)) {
                    stack.push(y);
                }
            }
        }
        let mut out: Vec<usize> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    pub fn orbit_matrices(&self, start: &Matrix) -> Vec<Matrix> {
        let coords = self.coords();
        self.orbit(start).into_iter().map(|k| self.decode(&coords, k)).collect()
    }

    pub fn index_of(&self, m: &Matrix) -> usize {
        self.encode(&self.coords(), m)
    }

    pub fn matrix_at(&self, k: usize) -> Matrix {
        self.decode(&self.coords(), k)
    }

    /// Orbits of the given seeds; fails unless they are pairwise distinct and
    /// together cover the whole ambient set.
    pub fn decompose_seeded<L: Clone + Send + Sync>(&self, seeds: Vec<(L, Matrix)>) -> Result<OrbitDecomposition<L>> {
        let universe = self.universe();
        let coords = self.coords();
        let orbits: Vec<Orbit<L>> = par::map(&seeds, |(label, m)| Orbit {
            label: label.clone(),
            representative: self.encode(&coords, m),
            members: self.orbit(m),
        });
        let mut part = vec![u32::MAX; universe];
        for (k, o) in orbits.iter().enumerate() {
            for &x in &o.members {
                if part[x] != u32::MAX {
                    let other = part[x] as usize;
                    return Err(Error::Verification(format!(
                        "orbit seeds {} and {} lie in the same orbit",
                        orbits[other].representative, o.representative
                    )));
                }
                part[x] = k as u32;
            }
        }
        if let Some(missing) = part.iter().position(|&x| x == u32::MAX) {
            return Err(Error::Verification(format!(
                "point {missing} lies in no seeded orbit"
            )));
        }
        Ok(OrbitDecomposition { orbits, part })
    }

    /// All orbits, each represented by its least index, listed in order of
    /// their representatives.
    pub fn decompose(&self) -> OrbitDecomposition<()> {
        let universe = self.universe();
        let coords = self.coords();
        let mut part = vec![u32::MAX; universe];
        let mut orbits = Vec::new();
        for k in 0..universe {
            if part[k] != u32::MAX {
                continue;
            }
            let members = self.orbit(&self.decode(&coords, k));
            for &x in &members {
                part[x] = orbits.len() as u32;
            }
            orbits.push(Orbit {
                label: (),
                representative: k,
                members,
            });
        }
        OrbitDecomposition { orbits, part }
    }

    /// Number of orbits of this action inside the invariant set `members`.
    pub fn count_suborbits(&self, members: &[usize]) -> usize {
        let coords = self.coords();
        let mut remaining: HashSet<usize> = members.iter().copied().collect();
        let mut count = 0;
        for &k in members {
            if !remaining.contains(&k) {
                continue;
            }
            count += 1;
            for x in self.orbit(&self.decode(&coords, k)) {
                remaining.remove(&x);
            }
        }
        count
    }
}

/// Zero every entry outside `pattern`.
pub fn mask(m: &Matrix, pattern: &[(usize, usize)]) -> Matrix {
    let mut out = Matrix::zero(m.n());
    for &(i, j) in pattern {
        out.set(i, j, m.get(i, j));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Orbit<L> {
    pub label: L,
    pub representative: usize,
    pub members: Vec<usize>,
}

impl<L> Orbit<L> {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A partition of an indexed set into orbits, with O(1) point lookup.
#[derive(Clone, Debug)]
pub struct OrbitDecomposition<L> {
    orbits: Vec<Orbit<L>>,
    part: Vec<u32>,
}

impl<L> OrbitDecomposition<L> {
    pub fn orbits(&self) -> &[Orbit<L>] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn part_of(&self, point: usize) -> usize {
        self.part[point] as usize
    }

    pub fn universe(&self) -> usize {
        self.part.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Orbit::size).collect()
    }

    /// Replace the labels, keeping orbits and order.
    pub fn relabel<M>(self, labels: Vec<M>) -> OrbitDecomposition<M> {
        assert_eq!(labels.len(), self.orbits.len());
        OrbitDecomposition {
            orbits: self
                .orbits
                .into_iter()
                .zip(labels)
                .map(|(o, label)| Orbit {
                    label,
                    representative: o.representative,
                    members: o.members,
                })
                .collect(),
            part: self.part,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group::Limits;

    #[test]
    fn two_sided_orbits_of_ut3_f2() {
        let g = MatrixGroup::unitriangular(3, 2, Limits::default()).unwrap();
        let dec = Action::new(&g, Ambient::Algebra).decompose();
        assert_eq!(dec.len(), 5);
        assert_eq!(dec.sizes().iter().sum::<usize>(), 8);
        let dual = Action::new(&g, Ambient::Dual).decompose();
        assert_eq!(dual.len(), 5);
    }

    #[test]
    fn rho_orbits_of_t2_f3() {
        let g = MatrixGroup::triangular(2, 3, Limits::default()).unwrap();
        let dec = Action::new(&g, Ambient::Algebra).decompose();
        assert_eq!(dec.sizes(), vec![1, 2]);
        let classes = Action::new(&g, Ambient::Group).decompose();
        let mut sizes = classes.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3, 3, 3]);
    }

    #[test]
    fn dual_right_orbit_count() {
        // λ = E*_13 in ut_3(F_2): two-sided orbit of size 4, two right orbits
        let g = MatrixGroup::unitriangular(3, 2, Limits::default()).unwrap();
        let mut c = Matrix::zero(3);
        c.set(0, 2, 1);
        let act = Action::new(&g, Ambient::Dual);
        let orbit = act.orbit(&c);
        assert_eq!(orbit.len(), 4);
        assert_eq!(act.right_only().count_suborbits(&orbit), 2);
        assert_eq!(act.left_only().count_suborbits(&orbit), 2);
    }
}
