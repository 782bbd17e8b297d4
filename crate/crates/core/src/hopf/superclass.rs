//! Superclass functions on the towers `UT_n(F_2)` and `T_n(F_p)`: inflation
//! and restriction to block subgroups against the `NS`/`NPS` rules, and the
//! dual operations (superinduction, deflation) in the basis `κ*_L = z_L κ_L`.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde::Serialize;

use crate::arith::{rational_int, CyclotomicNumber, Rational};
use crate::combinatorics::{basic_to_partition, RiggedPartition, SetPartition};
use crate::error::{Error, Result};
use crate::groups::{superclasses_triangular, superclasses_ut, Limits, Matrix, MatrixGroup};
use crate::hopf::{MonomialLabel, Tensor};
use crate::sct::{superinduce, ClassFunction, Partition, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TowerKind {
    /// `UT_n(F_2)`, modelled by `NS`
    Unitriangular,
    /// `T_n(F_p)`, modelled by `NPS` with `p - 2` rigging labels
    Triangular { p: u32 },
}

impl TowerKind {
    pub fn p(self) -> u32 {
        match self {
            TowerKind::Unitriangular => 2,
            TowerKind::Triangular { p } => p,
        }
    }

    /// Size of the rigging alphabet.
    pub fn y(self) -> u32 {
        match self {
            TowerKind::Unitriangular => 0,
            TowerKind::Triangular { p } => p - 2,
        }
    }

    fn group(self, n: usize) -> Result<MatrixGroup> {
        match self {
            TowerKind::Unitriangular => MatrixGroup::unitriangular(n, 2, Limits::default()),
            TowerKind::Triangular { p } => MatrixGroup::triangular(n, p, Limits::default()),
        }
    }

    /// The subgroup of matrices supported on `A × A` and `A^c × A^c`.
    fn block_group(self, n: usize, side: &[bool]) -> Result<MatrixGroup> {
        let pattern = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| side[i] == side[j])
            .collect();
        let torus = match self {
            TowerKind::Unitriangular => Vec::new(),
            TowerKind::Triangular { .. } => (0..n).collect(),
        };
        MatrixGroup::new(n, self.p(), torus, pattern, Limits::default())
    }

    /// `m_a m_b` by the combinatorial rule of the modelling algebra.
    fn product(self, a: &RiggedPartition, b: &RiggedPartition) -> Vec<RiggedPartition> {
        match self {
            TowerKind::Unitriangular => a
                .blocks()
                .product_terms(b.blocks())
                .into_iter()
                .map(RiggedPartition::unrigged)
                .collect(),
            TowerKind::Triangular { .. } => a.product_terms(b),
        }
    }

    fn coproduct(self, a: &RiggedPartition) -> Vec<(RiggedPartition, RiggedPartition)> {
        match self {
            TowerKind::Unitriangular => a
                .blocks()
                .coproduct_terms()
                .into_iter()
                .map(|(l, r)| (RiggedPartition::unrigged(l), RiggedPartition::unrigged(r)))
                .collect(),
            TowerKind::Triangular { .. } => a.coproduct_terms(),
        }
    }
}

/// One group of the tower with its superclasses labelled by (rigged)
/// partitions.
#[derive(Clone, Debug)]
pub struct Level {
    pub group: MatrixGroup,
    pub labels: Vec<RiggedPartition>,
    pub class_of: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl Level {
    fn new(kind: TowerKind, n: usize) -> Result<Level> {
        let group = kind.group(n)?;
        let (labels, parts): (Vec<RiggedPartition>, Vec<Vec<usize>>) = match kind {
            TowerKind::Unitriangular => {
                let dec = superclasses_ut(&group)?;
                let mut labels = Vec::new();
                for o in dec.orbits() {
                    labels.push(RiggedPartition::unrigged(basic_to_partition(o.label.d().roots(), n)?));
                }
                (labels, dec.orbits().iter().map(|o| o.members.clone()).collect())
            }
            TowerKind::Triangular { .. } => {
                let dec = superclasses_triangular(&group)?;
                let mut labels = Vec::new();
                for o in dec.orbits() {
                    labels.push(rigged_label(&o.label.d, &o.label.h)?);
                }
                (labels, dec.orbits().iter().map(|o| o.members.clone()).collect())
            }
        };
        let mut class_of = vec![0; group.order()];
        for (k, part) in parts.iter().enumerate() {
            for &g in part {
                class_of[g] = k;
            }
        }
        Ok(Level {
            group,
            labels,
            class_of,
            sizes: parts.iter().map(Vec::len).collect(),
        })
    }

    pub fn class_index(&self, label: &RiggedPartition) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn class_of_matrix(&self, m: &Matrix) -> usize {
        self.class_of[self.group.index(m)]
    }

    /// `z_L = |G| / |K_L|`.
    pub fn z(&self, k: usize) -> Rational {
        Rational::new(self.group.order().into(), self.sizes[k].into())
    }

    pub fn partition(&self) -> Partition {
        let mut parts = vec![Vec::new(); self.labels.len()];
        for (g, &k) in self.class_of.iter().enumerate() {
            parts[k].push(g);
        }
        Partition::new(self.group.order(), parts).expect("superclasses partition the group")
    }
}

/// The rigged partition of the superclass of `h + x_D`: points with
/// `h_i ≠ 1` are rigged by `h_i - 1` (so `u_c = c + 1`), the rest are
/// partitioned by the chains of `D`.
pub fn rigged_label(d: &crate::combinatorics::BasicSubset, h: &[u8]) -> Result<RiggedPartition> {
    let n = h.len();
    let rigging: BTreeMap<usize, u32> = h
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 1)
        .map(|(i, &v)| (i + 1, v as u32 - 1))
        .collect();
    let free: Vec<usize> = (1..=n).filter(|i| !rigging.contains_key(i)).collect();
    let blocks = basic_to_partition(d.roots(), n)?.restrict(&free);
    RiggedPartition::new(n, blocks, rigging)
}

/// The groups of a tower for `n = 1..=n_max`.
#[derive(Clone, Debug)]
pub struct SuperclassTower {
    pub kind: TowerKind,
    levels: Vec<Level>,
}

impl SuperclassTower {
    pub fn new(kind: TowerKind, n_max: usize) -> Result<SuperclassTower> {
        let levels = (1..=n_max).map(|n| Level::new(kind, n)).collect::<Result<_>>()?;
        Ok(SuperclassTower { kind, levels })
    }

    pub fn n_max(&self) -> usize {
        self.levels.len()
    }

    /// The group `G_n`, `1 ≤ n ≤ n_max`.
    pub fn level(&self, n: usize) -> &Level {
        &self.levels[n - 1]
    }

    /// `κ_a κ_b = Inf(κ_a × κ_b)` in the basis `κ_R` of `G_{k+m}`.
    pub fn product(&self, k: usize, a: usize, m: usize, b: usize) -> Result<Vec<(RiggedPartition, Rational)>> {
        let (lk, lm, ln) = (self.level(k), self.level(m), self.level(k + m));
        let n = k + m;
        // hits[r] = members of K_r projecting into K_a × K_b
        let mut hits = vec![0usize; ln.labels.len()];
        for (g, x) in ln.group.elements().enumerate() {
            if lk.class_of_matrix(&x.submatrix(0, k)) == a && lm.class_of_matrix(&x.submatrix(k, n)) == b {
                hits[ln.class_of[g]] += 1;
            }
        }
        let mut out = Vec::new();
        for (r, &h) in hits.iter().enumerate() {
            if h == ln.sizes[r] {
                out.push((ln.labels[r].clone(), Rational::one()));
            } else if h != 0 {
                return Err(Error::Verification(format!(
                    "Inf(κ_{} × κ_{}) is not constant on K_{}",
                    lk.labels[a], lm.labels[b], ln.labels[r]
                )));
            }
        }
        Ok(out)
    }

    /// `Δ(κ_P) = Σ_T ^T Res κ_P` over ordered pairs `T = (A_1|A_2)`.
    pub fn coproduct(&self, n: usize, p: usize) -> Result<Tensor<RiggedPartition>> {
        let ln = self.level(n);
        let label = ln.labels[p].clone();
        let mut out = Tensor::zero();
        // A_1 = ∅ or [n]: the restriction is κ_P itself
        out.add_term(RiggedPartition::empty(), label.clone(), Rational::one());
        out.add_term(label.clone(), RiggedPartition::empty(), Rational::one());
        for mask in 1u64..(1 << n) - 1 {
            let a1: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let a2: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
            let (l1, l2) = (self.level(a1.len()), self.level(a2.len()));
            // hits[(c1, c2)] = pairs in K_c1 × K_c2 landing in K_P
            let mut hits: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for (i1, g1) in l1.group.elements().enumerate() {
                for (i2, g2) in l2.group.elements().enumerate() {
                    if ln.class_of_matrix(&embed(n, &a1, &g1, &a2, &g2)) == p {
                        *hits.entry((l1.class_of[i1], l2.class_of[i2])).or_insert(0) += 1;
                    }
                }
            }
            for ((c1, c2), h) in hits {
                if h != l1.sizes[c1] * l2.sizes[c2] {
                    return Err(Error::Verification(format!(
                        "the restriction of κ_{label} to {a1:?}|{a2:?} is not constant on K_{} × K_{}",
                        l1.labels[c1], l2.labels[c2]
                    )));
                }
                out.add_term(l1.labels[c1].clone(), l2.labels[c2].clone(), Rational::one());
            }
        }
        Ok(out)
    }

    /// `κ*_a · κ*_b = Σ_{|A_1| = k} ^T SInd (κ*_a × κ*_b)`, in the basis `κ*_R`.
    pub fn dual_product(&self, k: usize, a: usize, m: usize, b: usize) -> Result<BTreeMap<RiggedPartition, Rational>> {
        let n = k + m;
        let (lk, lm, ln) = (self.level(k), self.level(m), self.level(n));
        let partition = ln.partition();
        let mut total = vec![Rational::zero(); ln.labels.len()];
        for mask in 0u64..1 << n {
            if mask.count_ones() as usize != k {
                continue;
            }
            let side: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            let a1: Vec<usize> = (0..n).filter(|&i| side[i]).collect();
            let a2: Vec<usize> = (0..n).filter(|&i| !side[i]).collect();
            let sub = self.kind.block_group(n, &side)?;
            let inclusion = crate::ut::inclusion_indices(&sub, &ln.group)?;
            let phi = ClassFunction::new(
                sub.elements()
                    .map(|y| {
                        let (u, v) = (principal(&y, &a1), principal(&y, &a2));
                        let (cu, cv) = (lk.class_of_matrix(&u), lm.class_of_matrix(&v));
                        let val = if cu == a && cv == b { lk.z(a) * lm.z(b) } else { Rational::zero() };
                        CyclotomicNumber::from_rational(1, val)
                    })
                    .collect(),
            );
            let induced = superinduce(&phi, &inclusion, &partition);
            for (r, part) in partition.parts().iter().enumerate() {
                let v = induced.at(part[0]).to_rational().ok_or_else(|| {
                    Error::Verification("superinduced κ* has an irrational value".into())
                })?;
                total[r] += v;
            }
        }
        Ok(total
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(r, v)| (ln.labels[r].clone(), v / ln.z(r)))
            .collect())
    }

    /// The grade `(k, n-k)` part of `Defl(κ*_P)` in the basis `κ*_a ⊗ κ*_b`,
    /// `1 ≤ k < n`.
    pub fn deflation(&self, n: usize, p: usize, k: usize) -> Result<BTreeMap<(RiggedPartition, RiggedPartition), Rational>> {
        let m = n - k;
        let (lk, lm, ln) = (self.level(k), self.level(m), self.level(n));
        let mut sums: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        let mut kernel = 0i64;
        for (g, x) in ln.group.elements().enumerate() {
            let (u, v) = (x.submatrix(0, k), x.submatrix(k, n));
            let (iu, iv) = (lk.group.index(&u), lm.group.index(&v));
            if iu == lk.group.identity_index() && iv == lm.group.identity_index() {
                kernel += 1;
            }
            if ln.class_of[g] == p {
                *sums.entry((iu, iv)).or_insert_with(Rational::zero) += ln.z(p);
            }
        }
        let kernel = rational_int(kernel);
        let mut out = BTreeMap::new();
        for (c1, l1) in lk.labels.iter().enumerate() {
            for (c2, l2) in lm.labels.iter().enumerate() {
                let mut values = Vec::new();
                for (iu, _) in lk.class_of.iter().enumerate().filter(|(_, &c)| c == c1) {
                    for (iv, _) in lm.class_of.iter().enumerate().filter(|(_, &c)| c == c2) {
                        values.push(sums.get(&(iu, iv)).cloned().unwrap_or_else(Rational::zero) / &kernel);
                    }
                }
                if values.iter().any(|v| *v != values[0]) {
                    return Err(Error::Verification(format!(
                        "Defl(κ*_{}) is not constant on K_{l1} × K_{l2}",
                        ln.labels[p]
                    )));
                }
                if !values[0].is_zero() {
                    out.insert((l1.clone(), l2.clone()), &values[0] / (lk.z(c1) * lm.z(c2)));
                }
            }
        }
        Ok(out)
    }
}

/// The matrix with `g1` on the rows and columns `a1` and `g2` on `a2`.
fn embed(n: usize, a1: &[usize], g1: &Matrix, a2: &[usize], g2: &Matrix) -> Matrix {
    let mut x = Matrix::zero(n);
    for (idx, g) in [(a1, g1), (a2, g2)] {
        for (s, &i) in idx.iter().enumerate() {
            for (t, &j) in idx.iter().enumerate() {
                x.set(i, j, g.get(s, t));
            }
        }
    }
    x
}

/// The principal submatrix on the rows and columns `idx`.
fn principal(m: &Matrix, idx: &[usize]) -> Matrix {
    let mut out = Matrix::zero(idx.len());
    for (s, &i) in idx.iter().enumerate() {
        for (t, &j) in idx.iter().enumerate() {
            out.set(s, t, m.get(i, j));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsoCheck {
    Labels,
    Product,
    Coproduct,
}

/// Compares the structure constants of `κ`-products and coproducts on the
/// tower with the `m`-basis rules under `κ_L ↔ m_L`, up to grade `n_max`.
pub fn iso_check(tower: &SuperclassTower) -> Result<Report<IsoCheck>> {
    let kind = tower.kind;
    let mut report = Report::new();
    for n in 1..=tower.n_max() {
        let mut labels = tower.level(n).labels.clone();
        labels.sort();
        let want = crate::combinatorics::enumerate_rigged_partitions(n, kind.y());
        if labels != want {
            report.fail(IsoCheck::Labels, format!("superclasses of G_{n} are not the rigged partitions of [{n}]"));
        }
    }
    for n in 2..=tower.n_max() {
        for k in 1..n {
            let m = n - k;
            for (a, la) in tower.level(k).labels.iter().enumerate() {
                for (b, lb) in tower.level(m).labels.iter().enumerate() {
                    let mut got: Vec<RiggedPartition> = tower.product(k, a, m, b)?.into_iter().map(|(r, _)| r).collect();
                    let mut want = kind.product(la, lb);
                    got.sort();
                    want.sort();
                    if got != want {
                        report.fail(IsoCheck::Product, format!("κ_{la}·κ_{lb}"));
                    }
                }
            }
        }
    }
    for n in 1..=tower.n_max() {
        for (p, lp) in tower.level(n).labels.iter().enumerate() {
            let got = tower.coproduct(n, p)?;
            let mut want = Tensor::zero();
            for (l, r) in kind.coproduct(lp) {
                want.add_term(l, r, Rational::one());
            }
            if got != want {
                report.fail(IsoCheck::Coproduct, format!("Δ(κ_{lp}): {got} vs {want}"));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DualCheck {
    /// `(κ*_P, κ_Q) = δ_{P,Q}`
    Pairing,
    /// superinduction against the shuffle of `st^{-1}_{A_1}(P)` and `st^{-1}_{A_2}(Q)`
    Product,
    /// deflation against `κ*_{P∩[k]} ⊗ κ*_{P∩[k]^c}`
    Coproduct,
}

/// The dual operations on the tower against their combinatorial formulas.
pub fn dual_check(tower: &SuperclassTower) -> Result<Report<DualCheck>> {
    let mut report = Report::new();
    for n in 1..=tower.n_max() {
        let l = tower.level(n);
        let order = rational_int(l.group.order() as i64);
        for p in 0..l.labels.len() {
            for q in 0..l.labels.len() {
                // (1/|G|) Σ_g κ*_P(g) κ_Q(g)
                let pairing = if p == q { l.z(p) * rational_int(l.sizes[p] as i64) / &order } else { Rational::zero() };
                let want = if p == q { Rational::one() } else { Rational::zero() };
                if pairing != want {
                    report.fail(DualCheck::Pairing, format!("(κ*_{}, κ_{})", l.labels[p], l.labels[q]));
                }
            }
        }
    }
    for n in 2..=tower.n_max() {
        for k in 1..n {
            let m = n - k;
            for (a, la) in tower.level(k).labels.iter().enumerate() {
                for (b, lb) in tower.level(m).labels.iter().enumerate() {
                    let got = tower.dual_product(k, a, m, b)?;
                    let mut want: BTreeMap<RiggedPartition, Rational> = BTreeMap::new();
                    for mask in 0u64..1 << n {
                        if mask.count_ones() as usize != k {
                            continue;
                        }
                        let a1: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                        let a2: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 0).collect();
                        let r = la.spread(n, &a1).union(&lb.spread(n, &a2));
                        *want.entry(r).or_insert_with(Rational::zero) += Rational::one();
                    }
                    if got != want {
                        report.fail(DualCheck::Product, format!("κ*_{la}·κ*_{lb}"));
                    }
                }
            }
        }
    }
    for n in 2..=tower.n_max() {
        for (p, lp) in tower.level(n).labels.iter().enumerate() {
            for k in 1..n {
                let got = tower.deflation(n, p, k)?;
                let left: Vec<usize> = (1..=k).collect();
                let right: Vec<usize> = (k + 1..=n).collect();
                let want = BTreeMap::from([(
                    (lp.restrict_standardized(&left), lp.restrict_standardized(&right)),
                    Rational::one(),
                )]);
                if got != want {
                    report.fail(DualCheck::Coproduct, format!("Defl(κ*_{lp}) at k = {k}"));
                }
            }
        }
    }
    Ok(report)
}

/// Labels of `UT_n(F_2)` superclasses as plain set partitions.
pub fn set_partition_labels(level: &Level) -> Vec<SetPartition> {
    level.labels.iter().map(|l| l.blocks().clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scu_small() {
        let t = SuperclassTower::new(TowerKind::Unitriangular, 2).unwrap();
        let one: RiggedPartition = "1".parse().unwrap();
        let prod = t.product(1, 0, 1, 0).unwrap();
        let labels: Vec<String> = prod.iter().map(|(r, _)| r.to_string()).collect();
        assert_eq!(labels.len(), 2);
        assert!(labels.contains(&"12".to_string()) && labels.contains(&"1|2".to_string()));
        assert_eq!(t.level(1).labels, vec![one]);
        // z_{1|2} = |UT_2| / |{1}| = 2
        let l2 = t.level(2);
        let k = l2.class_index(&"1|2".parse().unwrap()).unwrap();
        assert_eq!(l2.z(k), rational_int(2));
    }

    #[test]
    fn scb_labels_for_t2_f3() {
        let t = SuperclassTower::new(TowerKind::Triangular { p: 3 }, 2).unwrap();
        let mut labels: Vec<String> = t.level(2).labels.iter().map(|l| l.to_string()).collect();
        labels.sort();
        assert_eq!(labels, vec!["12", "1;2:1", "1|2", "2;1:1", ";1:1,2:1"]);
    }

    #[test]
    fn scu_and_scb_are_isomorphic_to_ns_and_nps() {
        let t = SuperclassTower::new(TowerKind::Unitriangular, 4).unwrap();
        let r = iso_check(&t).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
        let t = SuperclassTower::new(TowerKind::Triangular { p: 3 }, 3).unwrap();
        let r = iso_check(&t).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
    }

    #[test]
    fn dual_operations() {
        for kind in [TowerKind::Unitriangular, TowerKind::Triangular { p: 3 }] {
            let t = SuperclassTower::new(kind, 3).unwrap();
            let r = dual_check(&t).unwrap();
            assert!(r.passed(), "{kind:?}: {:?}", r.failures);
        }
    }
}
