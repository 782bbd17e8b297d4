use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::partitions::{partitions_of, standardization, SetPartition};
use crate::error::{Error, Result};

/// A partition of part of `[n]`, with every leftover point carrying a label
/// from the alphabet `[y]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RiggedPartition {
    n: usize,
    blocks: SetPartition,
    rigging: BTreeMap<usize, u32>,
}

impl RiggedPartition {
    pub fn new(n: usize, blocks: SetPartition, rigging: BTreeMap<usize, u32>) -> Result<RiggedPartition> {
        let mut all = blocks.ground();
        all.extend(rigging.keys().copied());
        all.sort_unstable();
        if all != (1..=n).collect::<Vec<_>>() {
            return Err(Error::Invalid(format!(
                "blocks and rigged points of a rigged partition must tile [{n}]"
            )));
        }
        if rigging.values().any(|&c| c == 0) {
            return Err(Error::Invalid("rigging labels start at 1".into()));
        }
        Ok(RiggedPartition { n, blocks, rigging })
    }

    /// A set partition of `[n]` viewed as a rigged partition with no rigged points.
    pub fn unrigged(p: SetPartition) -> RiggedPartition {
        RiggedPartition {
            n: p.size(),
            blocks: p,
            rigging: BTreeMap::new(),
        }
    }

    pub fn empty() -> RiggedPartition {
        RiggedPartition::default()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &SetPartition {
        &self.blocks
    }

    pub fn rigging(&self) -> &BTreeMap<usize, u32> {
        &self.rigging
    }

    pub fn max_label(&self) -> u32 {
        self.rigging.values().copied().max().unwrap_or(0)
    }

    /// Relabel positions by an order-preserving map onto a new ground size.
    fn relabel(&self, n: usize, f: impl Fn(usize) -> usize) -> RiggedPartition {
        RiggedPartition {
            n,
            blocks: self.blocks.relabel(&f),
            rigging: self.rigging.iter().map(|(&i, &c)| (f(i), c)).collect(),
        }
    }

    /// Restriction to the positions in `subset`, standardized onto `[|subset|]`.
    /// Blocks are intersected with `subset`; rigged points keep their labels.
    pub fn restrict_standardized(&self, subset: &[usize]) -> RiggedPartition {
        let map = standardization(subset);
        let blocks = self.blocks.restrict(subset).relabel(|x| map[&x]);
        let rigging = self
            .rigging
            .iter()
            .filter(|(i, _)| map.contains_key(i))
            .map(|(i, &c)| (map[i], c))
            .collect();
        RiggedPartition {
            n: subset.len(),
            blocks,
            rigging,
        }
    }

    /// Place `self` on the positions `targets` (sorted, `|targets| = n`) of a
    /// larger ground set.
    pub fn spread(&self, total: usize, targets: &[usize]) -> RiggedPartition {
        self.relabel(total, |x| targets[x - 1])
    }

    /// Disjoint union of two rigged partitions living on complementary
    /// positions of `[n]`.
    pub fn union(&self, other: &RiggedPartition) -> RiggedPartition {
        let n = self.n.max(other.n);
        let mut rigging = self.rigging.clone();
        rigging.extend(other.rigging.iter().map(|(&i, &c)| (i, c)));
        RiggedPartition {
            n,
            blocks: self.blocks.disjoint_union(&other.blocks),
            rigging,
        }
    }
}

impl fmt::Display for RiggedPartition {
    /// `"13|4;2:1"`: the blocks, then the rigged points as `position:label`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rigging.is_empty() {
            return write!(f, "{}", self.blocks);
        }
        let blocks = if self.blocks.is_empty() { String::new() } else { self.blocks.to_string() };
        let rig: Vec<String> = self.rigging.iter().map(|(i, c)| format!("{i}:{c}")).collect();
        write!(f, "{blocks};{}", rig.join(","))
    }
}

impl FromStr for RiggedPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<RiggedPartition> {
        let (blocks, rig) = match s.split_once(';') {
            Some((b, r)) => (b, r),
            None => (s, ""),
        };
        let blocks: SetPartition = blocks.parse()?;
        let mut rigging = BTreeMap::new();
        for item in rig.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (i, c) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("rigged point {item:?} is not position:label")))?;
            let i: usize = i.trim().parse().map_err(|_| Error::Parse(format!("bad position in {item:?}")))?;
            let c: u32 = c.trim().parse().map_err(|_| Error::Parse(format!("bad label in {item:?}")))?;
            if rigging.insert(i, c).is_some() {
                return Err(Error::Parse(format!("position {i} rigged twice")));
            }
        }
        let n = blocks.size() + rigging.len();
        RiggedPartition::new(n, blocks, rigging).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for RiggedPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RiggedPartition", 2)?;
        st.serialize_field("blocks", &self.blocks)?;
        let rig: BTreeMap<String, u32> = self.rigging.iter().map(|(i, c)| (i.to_string(), *c)).collect();
        st.serialize_field("rigging", &rig)?;
        st.end()
    }
}

/// All rigged partitions of `[n]` with labels in `[y]`, sorted.
pub fn enumerate_rigged_partitions(n: usize, y: u32) -> Vec<RiggedPartition> {
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        let support: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let rest: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 0).collect();
        if !rest.is_empty() && y == 0 {
            continue;
        }
        let labelings = labelings(rest.len(), y);
        for p in partitions_of(&support) {
            for lab in &labelings {
                out.push(RiggedPartition {
                    n,
                    blocks: p.clone(),
                    rigging: rest.iter().copied().zip(lab.iter().copied()).collect(),
                });
            }
        }
    }
    out.sort();
    out
}

fn labelings(len: usize, y: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=y).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// The rigged partitions `R` of `[k+m]` that are direct consequences of
/// `(P|Q)`: blocks of `P` and of `Q` shifted by `k` may be merged in pairs
/// (at most one partner each), and the riggings are concatenated.
pub fn direct_consequences(p: &RiggedPartition, q: &RiggedPartition) -> Vec<RiggedPartition> {
    let k = p.n;
    let n = p.n + q.n;
    let q_shift = q.relabel(n, |x| x + k);
    let mut rigging = p.rigging.clone();
    rigging.extend(q_shift.rigging.iter().map(|(&i, &c)| (i, c)));
    let mut out: Vec<RiggedPartition> = merge_blocks(p.blocks.blocks(), q_shift.blocks.blocks())
        .into_iter()
        .map(|blocks| RiggedPartition {
            n,
            blocks,
            rigging: rigging.clone(),
        })
        .collect();
    out.sort();
    out
}

/// Every set partition obtained from the blocks of `left ⊔ right` by merging
/// some left blocks with distinct right blocks.
pub fn merge_blocks(left: &[Vec<usize>], right: &[Vec<usize>]) -> Vec<SetPartition> {
    fn go(
        t: usize,
        left: &[Vec<usize>],
        right: &[Vec<usize>],
        used: &mut Vec<bool>,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<SetPartition>,
    ) {
        if t == left.len() {
            let mut blocks = cur.clone();
            for (r, b) in right.iter().enumerate() {
                if !used[r] {
                    blocks.push(b.clone());
                }
            }
            out.push(SetPartition::new(blocks).expect("merged blocks stay disjoint"));
            return;
        }
        cur.push(left[t].clone());
        go(t + 1, left, right, used, cur, out);
        cur.pop();
        for r in 0..right.len() {
            if used[r] {
                continue;
            }
            used[r] = true;
            let mut b = left[t].clone();
            b.extend(&right[r]);
            cur.push(b);
            go(t + 1, left, right, used, cur, out);
            cur.pop();
            used[r] = false;
        }
    }
    let mut out = Vec::new();
    go(0, left, right, &mut vec![false; right.len()], &mut Vec::new(), &mut out);
    out
}

/// Every ordered split `𝒫 = 𝒫_1 + 𝒫_2`: each block and each rigged point
/// goes to one side; both sides come back standardized.
pub fn rigged_splits(p: &RiggedPartition) -> Vec<(RiggedPartition, RiggedPartition)> {
    let blocks = p.blocks.blocks();
    let points: Vec<usize> = p.rigging.keys().copied().collect();
    let parts = blocks.len() + points.len();
    let mut out = Vec::with_capacity(1 << parts);
    for mask in 0u64..1 << parts {
        let mut a = Vec::new();
        for (t, b) in blocks.iter().enumerate() {
            if mask >> t & 1 == 1 {
                a.extend(b.iter().copied());
            }
        }
        for (t, &i) in points.iter().enumerate() {
            if mask >> (blocks.len() + t) & 1 == 1 {
                a.push(i);
            }
        }
        a.sort_unstable();
        let b: Vec<usize> = (1..=p.n).filter(|i| !a.contains(i)).collect();
        out.push((p.restrict_standardized(&a), p.restrict_standardized(&b)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(s: &str) -> RiggedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_rigged_partitions(1, 0).len(), 1);
        assert_eq!(enumerate_rigged_partitions(1, 1).len(), 2);
        assert_eq!(enumerate_rigged_partitions(2, 1).len(), 5);
        assert_eq!(enumerate_rigged_partitions(0, 3).len(), 1);
        for n in 0..=5 {
            assert_eq!(
                enumerate_rigged_partitions(n, 0).len() as u64,
                crate::combinatorics::bell(n)
            );
        }
    }

    #[test]
    fn display_parse_round_trip() {
        for n in 0..=3 {
            for r in enumerate_rigged_partitions(n, 2) {
                assert_eq!(rp(&r.to_string()), r, "{r}");
            }
        }
        assert_eq!(rp("13;2:1").to_string(), "13;2:1");
        assert_eq!(rp(";1:1,2:2").blocks().num_blocks(), 0);
        assert!("1;1:1".parse::<RiggedPartition>().is_err());
        assert!("1;2:0".parse::<RiggedPartition>().is_err());
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(rp("13;2:1")).unwrap();
        assert_eq!(v, serde_json::json!({"blocks": "13", "rigging": {"2": 1}}));
    }

    #[test]
    fn direct_consequence_examples() {
        let r = direct_consequences(&rp(";1:1"), &rp(";1:2"));
        assert_eq!(r, vec![rp(";1:1,2:2")]);
        let r = direct_consequences(&rp("1"), &rp("1"));
        assert_eq!(r, vec![rp("1|2"), rp("12")]);
        let r = direct_consequences(&rp(";1:1"), &rp("1"));
        assert_eq!(r, vec![rp("2;1:1")]);
    }

    #[test]
    fn split_examples() {
        let splits = rigged_splits(&rp("13;2:1"));
        assert_eq!(splits.len(), 4);
        assert!(splits.contains(&(rp("12"), rp(";1:1"))));
        assert!(splits.contains(&(rp("13;2:1"), RiggedPartition::empty())));
    }
}
