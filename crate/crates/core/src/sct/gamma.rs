use crate::arith::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::sct::theory::{ClassFunction, Partition, SuperTheory};

/// Averages a theory over a group `Γ` of automorphisms, each given as a
/// permutation of element indices (`Γ` listed in full, identity included).
///
/// Parts are replaced by their `Γ`-orbit unions and each `Γ`-orbit of
/// characters `{χ∘a}` by the sum of its distinct members. Fails if some
/// `a ∈ Γ` does not permute the parts and the characters.
pub fn gamma_average(base: &SuperTheory, gamma: &[Vec<usize>]) -> Result<SuperTheory> {
    let order = base.partition.order();
    for a in gamma {
        if a.len() != order {
            return Err(Error::Invalid("automorphism has the wrong length".into()));
        }
    }
    // parts
    let nparts = base.partition.len();
    let mut part_image = vec![vec![0usize; gamma.len()]; nparts];
    for (k, part) in base.partition.parts().iter().enumerate() {
        for (t, a) in gamma.iter().enumerate() {
            let mut img: Vec<usize> = part.iter().map(|&g| a[g]).collect();
            img.sort_unstable();
            let target = base.partition.part_of(img[0]);
            if base.partition.parts()[target] != img {
                return Err(Error::Invalid(format!("Γ does not map part {k} onto a part")));
            }
            part_image[k][t] = target;
        }
    }
    let mut part_orbit = vec![usize::MAX; nparts];
    let mut new_parts: Vec<Vec<usize>> = Vec::new();
    for k in 0..nparts {
        if part_orbit[k] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = part_image[k].clone();
        members.sort_unstable();
        members.dedup();
        let mut union = Vec::new();
        for &j in &members {
            part_orbit[j] = new_parts.len();
            union.extend(base.partition.parts()[j].iter().copied());
        }
        new_parts.push(union);
    }
    let partition = Partition::new(order, new_parts)?;

    // characters
    let nchars = base.characters.len();
    let mut seen = vec![false; nchars];
    let mut characters = Vec::new();
    for i in 0..nchars {
        if seen[i] {
            continue;
        }
        let mut orbit: Vec<usize> = Vec::new();
        for a in gamma {
            let moved: Vec<CyclotomicNumber> = (0..order).map(|g| base.characters[i].at(a[g]).clone()).collect();
            let moved = ClassFunction::new(moved);
            let j = base
                .characters
                .iter()
                .position(|c| *c == moved)
                .ok_or_else(|| Error::Invalid(format!("Γ does not map character {i} onto a character")))?;
            if !orbit.contains(&j) {
                orbit.push(j);
            }
        }
        let mut sum = base.characters[orbit[0]].clone();
        seen[orbit[0]] = true;
        for &j in &orbit[1..] {
            sum = sum.add(&base.characters[j])?;
            seen[j] = true;
        }
        characters.push(sum);
    }
    SuperTheory::new(partition, characters)
}
