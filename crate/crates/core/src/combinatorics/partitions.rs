use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::roots::{BasicSubset, Root};
use crate::error::{Error, Result};

/// A set partition of a finite set of positive integers.
///
/// Blocks are sorted internally and ordered by their least element, so equal
/// partitions compare equal and the derived order is a total order on them.
/// Most partitions cover `[n]`; partial ones (used by rigged partitions) cover
/// an arbitrary subset.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<SetPartition> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::Invalid("empty block in set partition".into()));
        }
        let mut seen: Vec<usize> = blocks.iter().flatten().copied().collect();
        let total = seen.len();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != total {
            return Err(Error::Invalid("blocks of a set partition must be disjoint".into()));
        }
        if seen.first() == Some(&0) {
            return Err(Error::Invalid("set partition elements start at 1".into()));
        }
        blocks.sort();
        Ok(SetPartition { blocks })
    }

    pub fn empty() -> SetPartition {
        SetPartition::default()
    }

    /// The partition of `[n]` into singletons.
    pub fn singletons(n: usize) -> SetPartition {
        SetPartition {
            blocks: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Union of the blocks, sorted.
    pub fn ground(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        g.sort_unstable();
        g
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Whether the ground set is exactly `[n]`.
    pub fn covers(&self, n: usize) -> bool {
        self.ground() == (1..=n).collect::<Vec<_>>()
    }

    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&x))
    }

    /// Apply an injective relabelling of the ground set.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> SetPartition {
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut nb: Vec<usize> = b.iter().map(|&x| f(x)).collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        blocks.sort();
        SetPartition { blocks }
    }

    pub fn shift(&self, k: usize) -> SetPartition {
        self.relabel(|x| x + k)
    }

    /// Relabel the ground set order-preservingly onto `[size]`.
    pub fn standardize(&self) -> SetPartition {
        let map = standardization(&self.ground());
        self.relabel(|x| map[&x])
    }

    /// Blocks intersected with `subset`, empty intersections dropped.
    pub fn restrict(&self, subset: &[usize]) -> SetPartition {
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| b.iter().copied().filter(|x| subset.contains(x)).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        blocks.sort();
        SetPartition { blocks }
    }

    /// Disjoint union of two partitions on disjoint ground sets.
    pub fn disjoint_union(&self, other: &SetPartition) -> SetPartition {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        blocks.sort();
        SetPartition { blocks }
    }

    /// Arcs `(a, b)` joining consecutive elements of each block.
    pub fn arcs(&self) -> BasicSubset {
        let roots = self
            .blocks
            .iter()
            .flat_map(|b| b.windows(2).map(|w| Root::of(w[0], w[1])))
            .collect();
        BasicSubset::new(roots).expect("arcs of a set partition form a basic subset")
    }

    /// The comma-separated form used whenever an element exceeds 9.
    fn needs_commas(&self) -> bool {
        self.blocks.iter().flatten().any(|&x| x > 9)
    }
}

/// Order-preserving bijection from `set` onto `[|set|]`.
pub fn standardization(set: &[usize]) -> BTreeMap<usize, usize> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.into_iter().enumerate().map(|(k, x)| (x, k + 1)).collect()
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("∅");
        }
        let sep = if self.needs_commas() { "," } else { "" };
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(sep))
            .collect();
        f.write_str(&parts.join("|"))
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Parses `"14|2|3"`, or `"1,10|2"` when elements have several digits.
    fn from_str(s: &str) -> Result<SetPartition> {
        let s = s.trim();
        if s.is_empty() || s == "∅" || s == "{}" {
            return Ok(SetPartition::empty());
        }
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let part = part.trim();
            let block: Vec<usize> = if part.contains(',') {
                part.split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad element {t:?} in {s:?}"))))
                    .collect::<Result<_>>()?
            } else {
                part.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::Parse(format!("bad character {c:?} in {s:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            if block.is_empty() {
                return Err(Error::Parse(format!("empty block in {s:?}")));
            }
            blocks.push(block);
        }
        SetPartition::new(blocks).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

/// All set partitions of an arbitrary finite ground set.
pub fn partitions_of(ground: &[usize]) -> Vec<SetPartition> {
    fn go(rest: &[usize], cur: &mut Vec<Vec<usize>>, out: &mut Vec<SetPartition>) {
        let Some((&x, tail)) = rest.split_first() else {
            let mut blocks = cur.clone();
            blocks.sort();
            out.push(SetPartition { blocks });
            return;
        };
        for b in 0..cur.len() {
            cur[b].push(x);
            go(tail, cur, out);
            cur[b].pop();
        }
        cur.push(vec![x]);
        go(tail, cur, out);
        cur.pop();
    }
    let mut sorted = ground.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    go(&sorted, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All set partitions of `[n]` in the crate's canonical order.
pub fn enumerate_set_partitions(n: usize) -> Vec<SetPartition> {
    partitions_of(&(1..=n).collect::<Vec<_>>())
}

/// Bell number `B_n`, by the Bell triangle.
pub fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

/// `P ↦ D_P`: the arcs between consecutive elements of each block.
pub fn partition_to_basic(p: &SetPartition) -> BasicSubset {
    p.arcs()
}

/// Inverse of [`partition_to_basic`]: joins `i` and `j` whenever `(i,j)` is in
/// the set, on the ground set `[n]`. Non-basic input is rejected.
pub fn basic_to_partition(roots: &[Root], n: usize) -> Result<SetPartition> {
    let d = BasicSubset::new(roots.to_vec())?;
    if d.max_index() > n {
        return Err(Error::Invalid(format!("{d} does not fit in [{n}]")));
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for start in 1..=n {
        if d.row_of_col(start).is_some() {
            continue;
        }
        let mut block = vec![start];
        let mut cur = start;
        while let Some(next) = d.col_of_row(cur) {
            block.push(next);
            cur = next;
        }
        blocks.push(block);
    }
    SetPartition::new(blocks)
}

/// Every split of the blocks of `p` into an ordered pair `(P1, P2)` of
/// sub-partitions, without standardizing. The `2^{#blocks}` pairs are listed
/// by the bitmask choosing `P1`.
pub fn split_subpartitions(p: &SetPartition) -> Vec<(SetPartition, SetPartition)> {
    let k = p.blocks.len();
    (0u64..1 << k)
        .map(|mask| {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (t, block) in p.blocks.iter().enumerate() {
                if mask >> t & 1 == 1 {
                    a.push(block.clone());
                } else {
                    b.push(block.clone());
                }
            }
            (SetPartition { blocks: a }, SetPartition { blocks: b })
        })
        .collect()
}

/// The terms of the coproduct of `m_P`: every ordered split of the blocks,
/// with both halves standardized.
pub fn standardized_splits(p: &SetPartition) -> Vec<(SetPartition, SetPartition)> {
    split_subpartitions(p)
        .into_iter()
        .map(|(a, b)| (a.standardize(), b.standardize()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn counts_are_bell_numbers() {
        for n in 0..=6 {
            assert_eq!(enumerate_set_partitions(n).len() as u64, bell(n));
        }
        assert_eq!(bell(5), 52);
    }

    #[test]
    fn display_and_parse_round_trip() {
        assert_eq!(sp("3|14|2").to_string(), "14|2|3");
        assert_eq!(sp("∅"), SetPartition::empty());
        assert_eq!(SetPartition::empty().to_string(), "∅");
        let big = SetPartition::new(vec![vec![1, 10], vec![2]]).unwrap();
        assert_eq!(big.to_string(), "1,10|2");
        assert_eq!(sp("1,10|2"), big);
        assert!("1|1".parse::<SetPartition>().is_err());
        assert!("1a".parse::<SetPartition>().is_err());
    }

    #[test]
    fn basic_subset_correspondence() {
        for n in 0..=6 {
            for p in enumerate_set_partitions(n) {
                let d = partition_to_basic(&p);
                assert_eq!(basic_to_partition(d.roots(), n).unwrap(), p);
            }
        }
        assert_eq!(partition_to_basic(&sp("134|2")).to_string(), "{(1,3),(3,4)}");
        assert!(basic_to_partition(&[Root::of(1, 2), Root::of(1, 3)], 3).is_err());
    }

    #[test]
    fn splits_of_three_blocks() {
        let p = sp("14|2|3");
        let splits = standardized_splits(&p);
        assert_eq!(splits.len(), 8);
        let mut distinct = splits.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 6);
        assert!(splits.contains(&(sp("13|2"), sp("1"))));
        assert!(splits.contains(&(sp("1"), sp("13|2"))));
    }

    #[test]
    fn standardize_and_restrict() {
        assert_eq!(sp("25|7").standardize(), sp("12|3"));
        assert_eq!(sp("27|5").standardize(), sp("13|2"));
        assert_eq!(sp("14|2|3").restrict(&[1, 2]), sp("1|2"));
        assert_eq!(sp("1|2").shift(2), sp("3|4"));
    }
}
