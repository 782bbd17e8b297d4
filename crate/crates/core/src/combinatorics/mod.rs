//! Roots, basic subsets, crossings, set partitions and rigged partitions.

pub mod partitions;
pub mod rigged;
pub mod roots;

pub use partitions::{
    basic_to_partition, bell, enumerate_set_partitions, partition_to_basic, partitions_of, split_subpartitions,
    standardization, standardized_splits, SetPartition,
};
pub use rigged::{direct_consequences, enumerate_rigged_partitions, merge_blocks, rigged_splits, RiggedPartition};
pub use roots::{enumerate_basic_subsets, positive_roots, singular_roots, BasicSubset, Root};

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A basic subset `D` with a nonzero label `φ(α) ∈ F_p^*` on every root.
///
/// Labels are stored as residues in the same order as `D.roots()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    d: BasicSubset,
    phi: Vec<u8>,
}

impl AdmissiblePair {
    pub fn new(d: BasicSubset, phi: Vec<u8>) -> Result<AdmissiblePair> {
        if phi.len() != d.len() {
            return Err(Error::Invalid(format!(
                "{} labels supplied for {} roots",
                phi.len(),
                d.len()
            )));
        }
        if phi.contains(&0) {
            return Err(Error::Invalid("labels of an admissible pair are nonzero".into()));
        }
        Ok(AdmissiblePair { d, phi })
    }

    /// All labels equal to 1.
    pub fn unit(d: BasicSubset) -> AdmissiblePair {
        let phi = vec![1; d.len()];
        AdmissiblePair { d, phi }
    }

    pub fn d(&self) -> &BasicSubset {
        &self.d
    }

    pub fn phi(&self) -> &[u8] {
        &self.phi
    }

    pub fn label(&self, r: Root) -> Option<u8> {
        self.d.roots().iter().position(|&x| x == r).map(|k| self.phi[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Root, u8)> + '_ {
        self.d.roots().iter().copied().zip(self.phi.iter().copied())
    }
}

impl fmt::Display for AdmissiblePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.iter().map(|(r, c)| format!("{r}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for AdmissiblePair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AdmissiblePair", 2)?;
        st.serialize_field("D", &self.d)?;
        st.serialize_field("phi", &self.phi)?;
        st.end()
    }
}

/// Every admissible pair over `F_p` on `[n]`: basic subsets in canonical order,
/// and for each, labels in lexicographic order.
pub fn enumerate_admissible_pairs(n: usize, p: u32) -> Vec<AdmissiblePair> {
    let mut out = Vec::new();
    for d in enumerate_basic_subsets(n) {
        let k = d.len();
        let mut phi = vec![1u8; k];
        loop {
            out.push(AdmissiblePair { d: d.clone(), phi: phi.clone() });
            let mut t = k;
            loop {
                if t == 0 {
                    break;
                }
                t -= 1;
                if (phi[t] as u32) + 1 < p {
                    phi[t] += 1;
                    for x in &mut phi[t + 1..] {
                        *x = 1;
                    }
                    t = usize::MAX;
                    break;
                }
            }
            if t != usize::MAX {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_pair_counts() {
        assert_eq!(enumerate_admissible_pairs(3, 2).len(), 5);
        assert_eq!(enumerate_admissible_pairs(3, 3).len(), 11);
        assert_eq!(enumerate_admissible_pairs(1, 5).len(), 1);
    }

    #[test]
    fn admissible_pair_validation() {
        let d = BasicSubset::from_pairs(&[(1, 3)]).unwrap();
        assert!(AdmissiblePair::new(d.clone(), vec![]).is_err());
        assert!(AdmissiblePair::new(d.clone(), vec![0]).is_err());
        let a = AdmissiblePair::new(d, vec![2]).unwrap();
        assert_eq!(a.label(Root::of(1, 3)), Some(2));
        assert_eq!(a.to_string(), "{(1,3):2}");
    }

    #[test]
    fn basic_subsets_match_bell_numbers() {
        for n in 0..=6 {
            assert_eq!(enumerate_basic_subsets(n).len() as u64, bell(n));
        }
    }
}
