use crate::error::{Error, Result};
use crate::groups::MatrixGroup;

/// Largest group for which a full Cayley table is built.
pub const CAYLEY_TABLE_CAP: usize = 4096;

/// A finite group given by its multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    mul: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
}

impl FiniteGroupTable {
    /// Builds the table from a closure; checks identity and inverse laws
    /// exactly and associativity on a deterministic sample of triples
    /// (all triples when the order is at most 64).
    pub fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<FiniteGroupTable> {
        if order == 0 {
            return Err(Error::Invalid("a group has at least one element".into()));
        }
        if order > CAYLEY_TABLE_CAP {
            return Err(Error::SizeCap {
                order: order as u128,
                cap: CAYLEY_TABLE_CAP as u64,
            });
        }
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let c = mul(a, b);
                if c >= order {
                    return Err(Error::Invalid(format!("product {a}*{b} = {c} out of range")));
                }
                table[a * order + b] = c as u32;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::Verification("no identity element".into()))?;
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| table[a * order + b] as usize == identity && table[b * order + a] as usize == identity)
                .ok_or_else(|| Error::Verification(format!("element {a} has no inverse")))?;
            inverse[a] = inv as u32;
        }
        let t = FiniteGroupTable {
            order,
            mul: table,
            identity,
            inverse,
        };
        t.check_associativity()?;
        Ok(t)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if n <= 64 {
            Box::new((0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))))
        } else {
            // a fixed linear-congruential walk, so the check is reproducible
            let mut state = 0x2545_f491_4f6c_dd1du64;
            let mut v = Vec::with_capacity(4096);
            for _ in 0..4096 {
                let mut next = || {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    (state >> 33) as usize % n
                };
                v.push((next(), next(), next()));
            }
            Box::new(v.into_iter())
        };
        for (a, b, c) in triples {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::Verification(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
            }
        }
        Ok(())
    }

    pub fn from_matrix_group(g: &MatrixGroup) -> Result<FiniteGroupTable> {
        if g.order() > CAYLEY_TABLE_CAP {
            return Err(Error::SizeCap {
                order: g.order() as u128,
                cap: CAYLEY_TABLE_CAP as u64,
            });
        }
        let elems: Vec<_> = g.elements().collect();
        FiniteGroupTable::from_fn(g.order(), |a, b| g.index(&g.mul(&elems[a], &elems[b])))
    }

    /// The cyclic group `Z/n` with `k` standing for `g^k`.
    pub fn cyclic(n: usize) -> FiniteGroupTable {
        FiniteGroupTable::from_fn(n, |a, b| (a + b) % n).expect("cyclic groups are groups")
    }

    /// `S_3` on `{0,1,2}`, elements in the order
    /// `e, (12), (02), (01), (012), (021)` (0-based points).
    pub fn symmetric3() -> FiniteGroupTable {
        let perms = s3_permutations();
        FiniteGroupTable::from_fn(6, |a, b| {
            // (a*b)(x) = a(b(x))
            let c: [usize; 3] = std::array::from_fn(|x| perms[a][perms[b][x]]);
            perms.iter().position(|q| *q == c).unwrap()
        })
        .expect("S_3 is a group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn conjugate(&self, t: usize, x: usize) -> usize {
        self.mul(self.mul(t, x), self.inv(t))
    }
}

pub(crate) fn s3_permutations() -> [[usize; 3]; 6] {
    [[0, 1, 2], [0, 2, 1], [2, 1, 0], [1, 0, 2], [1, 2, 0], [2, 0, 1]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Limits;

    #[test]
    fn builtin_tables() {
        let c4 = FiniteGroupTable::cyclic(4);
        assert_eq!(c4.identity(), 0);
        assert_eq!(c4.inv(1), 3);
        let s3 = FiniteGroupTable::symmetric3();
        assert_eq!(s3.identity(), 0);
        assert_ne!(s3.mul(1, 2), s3.mul(2, 1));
        for a in 0..6 {
            assert_eq!(s3.mul(a, s3.inv(a)), 0);
        }
    }

    #[test]
    fn matrix_group_table() {
        let g = MatrixGroup::unitriangular(3, 2, Limits::default()).unwrap();
        let t = FiniteGroupTable::from_matrix_group(&g).unwrap();
        assert_eq!(t.order(), 8);
        assert_eq!(t.identity(), g.identity_index());
    }

    #[test]
    fn non_groups_are_rejected() {
        assert!(FiniteGroupTable::from_fn(3, |a, b| a.max(b)).is_err());
        assert!(FiniteGroupTable::from_fn(3, |a, _| a).is_err());
    }
}
