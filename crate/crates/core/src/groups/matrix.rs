use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::PrimeField;
use crate::combinatorics::{AdmissiblePair, BasicSubset};

/// A square matrix over `F_p`, stored row-major as bare residues.
/// Indices are 0-based; roots are 1-based, so root `(i, j)` is entry `(i-1, j-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: usize,
    entries: Vec<u8>,
}

impl Matrix {
    pub fn zero(n: usize) -> Matrix {
        Matrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[&[u8]]) -> Matrix {
        let n = rows.len();
        let mut m = Matrix::zero(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n, "matrix rows must be square");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// `Σ φ(α) E_α` over an admissible pair.
    pub fn from_pair(n: usize, pair: &AdmissiblePair) -> Matrix {
        let mut m = Matrix::zero(n);
        for (r, c) in pair.iter() {
            m.set(r.i - 1, r.j - 1, c);
        }
        m
    }

    /// `x_D = Σ_{α∈D} E_α`.
    pub fn from_basic(n: usize, d: &BasicSubset) -> Matrix {
        Matrix::from_pair(n, &AdmissiblePair::unit(d.clone()))
    }

    pub fn diagonal(diag: &[u8]) -> Matrix {
        let mut m = Matrix::zero(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn diag(&self) -> Vec<u8> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &Matrix, f: &PrimeField) -> Matrix {
        let n = self.n;
        let p = f.p();
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u32;
                for k in 0..n {
                    acc += self.get(i, k) as u32 * other.get(k, j) as u32;
                }
                out.set(i, j, (acc % p) as u8);
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix, f: &PrimeField) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix, f: &PrimeField) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    /// The strictly upper triangular part.
    pub fn strict_upper(&self) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.n {
            for j in 0..=i {
                m.set(i, j, 0);
            }
        }
        m
    }

    pub fn is_upper(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == 0))
    }

    /// Inverse of an upper triangular matrix with nonzero diagonal, by back
    /// substitution.
    pub fn upper_inverse(&self, f: &PrimeField) -> Matrix {
        let n = self.n;
        let mut inv = Matrix::zero(n);
        for i in 0..n {
            inv.set(i, i, f.inv(self.get(i, i)));
        }
        for d in 1..n {
            for i in 0..n - d {
                let j = i + d;
                // inv[i][j] = -(1/a_ii) Σ_{i<k<=j} a_ik inv[k][j]
                let mut acc = 0u32;
                for k in i + 1..=j {
                    acc += self.get(i, k) as u32 * inv.get(k, j) as u32;
                }
                let s = (acc % f.p()) as u8;
                inv.set(i, j, f.neg(f.mul(inv.get(i, i), s)));
            }
        }
        inv
    }

    /// `Σ_{i<j} a_ij b_ij`: the pairing of a linear form's coefficient matrix
    /// with an element of the nilpotent algebra.
    pub fn pair_upper(&self, other: &Matrix, f: &PrimeField) -> u8 {
        let mut acc = 0u32;
        for i in 0..self.n {
            for j in i + 1..self.n {
                acc += self.get(i, j) as u32 * other.get(i, j) as u32;
            }
        }
        (acc % f.p()) as u8
    }

    /// Rank over `F_p`, by Gaussian elimination.
    pub fn rank(&self, f: &PrimeField) -> usize {
        let n = self.n;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            for j in 0..n {
                let (a, b) = (m.get(rank, j), m.get(pivot, j));
                m.set(rank, j, b);
                m.set(pivot, j, a);
            }
            let inv = f.inv(m.get(rank, col));
            for r in 0..n {
                if r != rank && m.get(r, col) != 0 {
                    let factor = f.mul(m.get(r, col), inv);
                    for j in 0..n {
                        let v = f.sub(m.get(r, j), f.mul(factor, m.get(rank, j)));
                        m.set(r, j, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// The square submatrix on the 0-based index range `lo..hi`.
    pub fn submatrix(&self, lo: usize, hi: usize) -> Matrix {
        let k = hi.saturating_sub(lo);
        let mut m = Matrix::zero(k);
        for a in 0..k {
            for b in 0..k {
                m.set(a, b, self.get(lo + a, lo + b));
            }
        }
        m
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.entries.chunks(self.n.max(1)).map(<[u8]>::to_vec).take(self.n).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(u8::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// A coordinate system on a set of matrices: the listed positions are free
/// (with `p` values, or `p - 1` unit values), every other entry is taken from
/// a fixed base matrix. Points are numbered in mixed radix with the first
/// position most significant, which is also the canonical enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinates {
    n: usize,
    p: u32,
    positions: Vec<(usize, usize)>,
    units: Vec<bool>,
    base: Matrix,
    size: u128,
}

impl Coordinates {
    pub fn new(n: usize, p: u32, positions: Vec<(usize, usize)>, units: Vec<bool>, base: Matrix) -> Coordinates {
        assert_eq!(positions.len(), units.len());
        let size = units
            .iter()
            .map(|&u| if u { (p - 1) as u128 } else { p as u128 })
            .try_fold(1u128, |acc, r| acc.checked_mul(r))
            .unwrap_or(u128::MAX);
        Coordinates {
            n,
            p,
            positions,
            units,
            base,
            size,
        }
    }

    /// Strictly upper triangular matrices supported on `pattern` (0-based positions).
    pub fn nilpotent(n: usize, p: u32, pattern: Vec<(usize, usize)>) -> Coordinates {
        let k = pattern.len();
        Coordinates::new(n, p, pattern, vec![false; k], Matrix::zero(n))
    }

    /// All strictly upper triangular `n × n` matrices.
    pub fn strictly_upper(n: usize, p: u32) -> Coordinates {
        Coordinates::nilpotent(n, p, upper_positions(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    /// Number of points, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn contains_position(&self, i: usize, j: usize) -> bool {
        self.positions.contains(&(i, j))
    }

    pub fn decode(&self, mut index: usize) -> Matrix {
        let mut m = self.base.clone();
        for k in (0..self.positions.len()).rev() {
            let (i, j) = self.positions[k];
            if self.units[k] {
                let r = (self.p - 1) as usize;
                m.set(i, j, (index % r + 1) as u8);
                index /= r;
            } else {
                let r = self.p as usize;
                m.set(i, j, (index % r) as u8);
                index /= r;
            }
        }
        m
    }

    pub fn encode(&self, m: &Matrix) -> usize {
        let mut index = 0usize;
        for (k, &(i, j)) in self.positions.iter().enumerate() {
            let v = m.get(i, j) as usize;
            if self.units[k] {
                index = index * (self.p as usize - 1) + (v - 1);
            } else {
                index = index * self.p as usize + v;
            }
        }
        index
    }

    /// Whether every entry outside the free positions agrees with the base.
    pub fn contains(&self, m: &Matrix) -> bool {
        if m.n() != self.n {
            return false;
        }
        for i in 0..self.n {
            for j in 0..self.n {
                let free = self.positions.iter().position(|&x| x == (i, j));
                match free {
                    Some(k) => {
                        if self.units[k] && m.get(i, j) == 0 {
                            return false;
                        }
                    }
                    None => {
                        if m.get(i, j) != self.base.get(i, j) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// 0-based positions `(i, j)`, `i < j`, in row-major order.
pub fn upper_positions(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_round_trip() {
        let c = Coordinates::strictly_upper(3, 3);
        assert_eq!(c.size(), 27);
        for k in 0..27 {
            assert_eq!(c.encode(&c.decode(k)), k);
        }
        let pos = upper_positions(2);
        let mut all = vec![(0, 0), (1, 1)];
        all.extend(pos);
        let t = Coordinates::new(2, 3, all, vec![true, true, false], Matrix::zero(2));
        assert_eq!(t.size(), 12);
        for k in 0..12 {
            let m = t.decode(k);
            assert!(t.contains(&m));
            assert_eq!(t.encode(&m), k);
        }
    }

    #[test]
    fn upper_inverse_is_inverse() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_rows(&[&[2, 1, 4], &[0, 3, 2], &[0, 0, 4]]);
        assert_eq!(m.mul(&m.upper_inverse(&f), &f), Matrix::identity(3));
    }

    #[test]
    fn rank_examples() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(Matrix::zero(3).rank(&f), 0);
        assert_eq!(Matrix::identity(3).rank(&f), 3);
        let m = Matrix::from_rows(&[&[1, 2, 0], &[2, 1, 0], &[0, 0, 0]]);
        assert_eq!(m.rank(&f), 1);
    }
}
