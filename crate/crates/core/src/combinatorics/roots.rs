use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A positive root `(i, j)`, `1 <= i < j`, i.e. the position of a matrix unit
/// strictly above the diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Result<Root> {
        if i == 0 || i >= j {
            return Err(Error::Invalid(format!("({i},{j}) is not a positive root")));
        }
        Ok(Root { i, j })
    }

    /// Constructor for literals known to be valid.
    pub const fn of(i: usize, j: usize) -> Root {
        Root { i, j }
    }

    pub fn row(self) -> usize {
        self.i
    }

    pub fn col(self) -> usize {
        self.j
    }

    /// `j - i - 1`: the number of indices strictly between the endpoints.
    pub fn gap(self) -> usize {
        self.j - self.i - 1
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.i, self.j].serialize(s)
    }
}

/// All positive roots of `[n]` in lexicographic order.
pub fn positive_roots(n: usize) -> Vec<Root> {
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| Root::of(i, j)))
        .collect()
}

/// Roots summing to `α = (i, j)` under `(i, j) = (i, l) + (l, j)`.
pub fn singular_roots(alpha: Root) -> Vec<Root> {
    let mut out: Vec<Root> = (alpha.i + 1..alpha.j)
        .flat_map(|l| [Root::of(alpha.i, l), Root::of(l, alpha.j)])
        .collect();
    out.sort();
    out
}

/// A set of positive roots with at most one root in each row and column.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicSubset {
    roots: Vec<Root>,
}

impl BasicSubset {
    pub fn new(mut roots: Vec<Root>) -> Result<BasicSubset> {
        roots.sort();
        roots.dedup();
        for r in &roots {
            Root::new(r.i, r.j)?;
        }
        for (a, x) in roots.iter().enumerate() {
            for y in &roots[a + 1..] {
                if x.i == y.i || x.j == y.j {
                    return Err(Error::Invalid(format!(
                        "roots {x} and {y} share a row or column"
                    )));
                }
            }
        }
        Ok(BasicSubset { roots })
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<BasicSubset> {
        BasicSubset::new(pairs.iter().map(|&(i, j)| Root { i, j }).collect())
    }

    pub fn empty() -> BasicSubset {
        BasicSubset::default()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: Root) -> bool {
        self.roots.binary_search(&r).is_ok()
    }

    /// Largest index touched, or 0 for the empty set.
    pub fn max_index(&self) -> usize {
        self.roots.iter().map(|r| r.j).max().unwrap_or(0)
    }

    /// Column of the root in row `i`, if any.
    pub fn col_of_row(&self, i: usize) -> Option<usize> {
        self.roots.iter().find(|r| r.i == i).map(|r| r.j)
    }

    /// Row of the root in column `j`, if any.
    pub fn row_of_col(&self, j: usize) -> Option<usize> {
        self.roots.iter().find(|r| r.j == j).map(|r| r.i)
    }

    /// `row(D) ∪ col(D)`, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.roots.iter().flat_map(|r| [r.i, r.j]).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn intersection_len(&self, other: &BasicSubset) -> usize {
        self.roots.iter().filter(|r| other.contains(**r)).count()
    }

    pub fn difference_len(&self, other: &BasicSubset) -> usize {
        self.roots.len() - self.intersection_len(other)
    }

    /// `c(D)`: unordered pairs `(i,j), (k,l)` with `i < k < j < l`.
    pub fn crossings(&self) -> usize {
        let mut c = 0;
        for (a, x) in self.roots.iter().enumerate() {
            for y in &self.roots[a + 1..] {
                if crosses(*x, *y) || crosses(*y, *x) {
                    c += 1;
                }
            }
        }
        c
    }

    /// `d(D) = Σ (j - i - 1)`.
    pub fn dimension_weight(&self) -> usize {
        self.roots.iter().map(|r| r.gap()).sum()
    }

    /// For `α = (i, j)`: the number of roots `β` with `row(β) > i` and
    /// `col(β) < j`, and `d'(i, j) = j - i - 1 - that count`.
    pub fn d_prime(&self, alpha: Root) -> (usize, usize) {
        let inside = self
            .roots
            .iter()
            .filter(|b| b.i > alpha.i && b.j < alpha.j)
            .count();
        (inside, alpha.gap() - inside)
    }

    pub fn meets_singular(&self, alpha: Root) -> bool {
        self.roots
            .iter()
            .any(|b| (b.i == alpha.i && b.j < alpha.j) || (b.j == alpha.j && b.i > alpha.i))
    }

    /// Maximal k-crossings, each returned as its index chain
    /// `i_0 < i_1 < … < i_{k+2}` with every `(i_s, i_{s+2}) ∈ D`. The length
    /// `k` of a chain is `chain.len() - 3`.
    ///
    /// A chain is fixed by its first two roots: going right, the next root is
    /// the one in row `i_{k+1}`; going left, the one in column `i_1`. Every
    /// crossing pair therefore extends to exactly one maximal chain.
    pub fn maximal_crossings(&self) -> Vec<Vec<usize>> {
        let mut chains: Vec<Vec<usize>> = Vec::new();
        for x in &self.roots {
            for y in &self.roots {
                if !crosses(*x, *y) {
                    continue;
                }
                let mut chain = vec![x.i, y.i, x.j, y.j];
                // extend left: a root (i_{-1}, i_1) with i_{-1} < i_0
                while let Some(prev) = self.row_of_col(chain[1]) {
                    if prev < chain[0] {
                        chain.insert(0, prev);
                    } else {
                        break;
                    }
                }
                // extend right: a root (i_{k+1}, i_{k+3}) with i_{k+3} > i_{k+2}
                loop {
                    let len = chain.len();
                    match self.col_of_row(chain[len - 2]) {
                        Some(next) if next > chain[len - 1] => chain.push(next),
                        _ => break,
                    }
                }
                if !chains.contains(&chain) {
                    chains.push(chain);
                }
            }
        }
        chains.sort();
        chains
    }

    /// The supercharacter indexed by `D` is irreducible iff `c(D) = 0`.
    pub fn is_irreducible(&self) -> bool {
        self.crossings() == 0
    }

    pub fn is_multiple_irreducible(&self) -> bool {
        self.maximal_crossings().iter().all(|c| (c.len() - 3) % 2 == 0)
    }

    /// `e = d(D) - c(D)/2`, the degree exponent of the unique irreducible
    /// constituent, when the supercharacter is a multiple of an irreducible.
    pub fn irreducible_degree_exponent(&self) -> Option<usize> {
        let c = self.crossings();
        if !self.is_multiple_irreducible() || !c.is_multiple_of(2) {
            return None;
        }
        Some(self.dimension_weight() - c / 2)
    }
}

fn crosses(x: Root, y: Root) -> bool {
    x.i < y.i && y.i < x.j && x.j < y.j
}

impl fmt::Display for BasicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.roots.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.roots.iter().map(Root::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for BasicSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.roots.serialize(s)
    }
}

/// Every basic subset of the positive roots of `[n]`, in lexicographic order
/// of their sorted root lists.
pub fn enumerate_basic_subsets(n: usize) -> Vec<BasicSubset> {
    fn go(row: usize, n: usize, used_cols: &mut Vec<bool>, cur: &mut Vec<Root>, out: &mut Vec<BasicSubset>) {
        if row > n {
            out.push(BasicSubset { roots: cur.clone() });
            return;
        }
        go(row + 1, n, used_cols, cur, out);
        for j in row + 1..=n {
            if !used_cols[j] {
                used_cols[j] = true;
                cur.push(Root::of(row, j));
                go(row + 1, n, used_cols, cur, out);
                cur.pop();
                used_cols[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(1, n, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(pairs: &[(usize, usize)]) -> BasicSubset {
        BasicSubset::from_pairs(pairs).unwrap()
    }

    #[test]
    fn rook_condition_is_enforced() {
        assert!(BasicSubset::from_pairs(&[(1, 2), (1, 3)]).is_err());
        assert!(BasicSubset::from_pairs(&[(1, 3), (2, 3)]).is_err());
        assert!(BasicSubset::from_pairs(&[(2, 2)]).is_err());
        assert!(BasicSubset::from_pairs(&[(1, 2), (2, 3)]).is_ok());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_basic_subsets(2), vec![d(&[]), d(&[(1, 2)])]);
        assert_eq!(enumerate_basic_subsets(3).len(), 5);
        assert_eq!(enumerate_basic_subsets(4).len(), 15);
        let all = enumerate_basic_subsets(4);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn crossing_counts() {
        let seven = d(&[(1, 3), (3, 6), (2, 4), (4, 5), (5, 7)]);
        assert_eq!(seven.crossings(), 3);
        assert_eq!(seven.dimension_weight(), 5);
        assert_eq!(d(&[(1, 3), (2, 4)]).crossings(), 1);
        assert_eq!(d(&[(1, 2), (2, 3)]).crossings(), 0);
        assert_eq!(d(&[(1, 3)]).dimension_weight(), 1);
        assert_eq!(d(&[]).dimension_weight(), 0);
    }

    #[test]
    fn singular_roots_examples() {
        assert!(singular_roots(Root::of(1, 2)).is_empty());
        assert_eq!(singular_roots(Root::of(1, 3)), vec![Root::of(1, 2), Root::of(2, 3)]);
        assert_eq!(
            singular_roots(Root::of(1, 4)),
            vec![Root::of(1, 2), Root::of(1, 3), Root::of(2, 4), Root::of(3, 4)]
        );
    }

    #[test]
    fn d_prime_examples() {
        assert_eq!(d(&[]).d_prime(Root::of(1, 3)), (0, 1));
        assert_eq!(d(&[(1, 2)]).d_prime(Root::of(1, 2)), (0, 0));
        assert_eq!(d(&[(2, 3)]).d_prime(Root::of(1, 4)), (1, 1));
    }

    #[test]
    fn maximal_crossing_examples() {
        let a = d(&[(1, 2), (2, 3)]);
        assert!(a.maximal_crossings().is_empty());
        assert!(a.is_irreducible());

        let b = d(&[(1, 3), (2, 4)]);
        assert_eq!(b.maximal_crossings(), vec![vec![1, 2, 3, 4]]);
        assert!(!b.is_multiple_irreducible());
        assert_eq!(b.irreducible_degree_exponent(), None);

        let c = d(&[(1, 3), (2, 4), (3, 5)]);
        assert_eq!(c.maximal_crossings(), vec![vec![1, 2, 3, 4, 5]]);
        assert!(c.is_multiple_irreducible());
        assert_eq!(c.crossings(), 2);
        assert_eq!(c.irreducible_degree_exponent(), Some(2));
    }

    #[test]
    fn no_crossings_iff_no_maximal_crossings() {
        for n in 1..=6 {
            for b in enumerate_basic_subsets(n) {
                assert_eq!(b.crossings() == 0, b.maximal_crossings().is_empty(), "{b}");
            }
        }
    }
}
