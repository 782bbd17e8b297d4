use std::fmt;

use serde::Serialize;

use crate::combinatorics::{enumerate_admissible_pairs, enumerate_basic_subsets, AdmissiblePair, BasicSubset};
use crate::error::{Error, Result};
use crate::groups::group::{GroupKind, MatrixGroup};
use crate::groups::matrix::Matrix;
use crate::groups::orbits::{Action, Ambient, OrbitDecomposition};

fn require_full_ut(g: &MatrixGroup) -> Result<()> {
    if g.kind() != GroupKind::Unitriangular || !g.is_full_pattern() {
        return Err(Error::Invalid(format!("{g} is not a full unitriangular group")));
    }
    Ok(())
}

fn require_full_t(g: &MatrixGroup) -> Result<()> {
    if g.torus().len() != g.n() || !g.is_full_pattern() {
        return Err(Error::Invalid(format!("{g} is not a full triangular group")));
    }
    Ok(())
}

/// Two-sided orbits `GxG` in `J = ut_n`, each labelled by the unique
/// `X_{D,φ}` it contains. Fails if some orbit lacks a canonical form or
/// contains two.
pub fn two_sided_orbits(g: &MatrixGroup) -> Result<OrbitDecomposition<AdmissiblePair>> {
    require_full_ut(g)?;
    let seeds = enumerate_admissible_pairs(g.n(), g.p())
        .into_iter()
        .map(|a| {
            let m = Matrix::from_pair(g.n(), &a);
            (a, m)
        })
        .collect();
    Action::new(g, Ambient::Algebra).decompose_seeded(seeds)
}

/// Superclasses `1 + GxG` of `UT_n(F_p)` over group element indices.
pub fn superclasses_ut(g: &MatrixGroup) -> Result<OrbitDecomposition<AdmissiblePair>> {
    require_full_ut(g)?;
    let n = g.n();
    let seeds = enumerate_admissible_pairs(n, g.p())
        .into_iter()
        .map(|a| {
            let m = Matrix::from_pair(n, &a).add(&Matrix::identity(n), g.field());
            (a, m)
        })
        .collect();
    Action::new(g, Ambient::Group).decompose_seeded(seeds)
}

/// A two-sided orbit `GλG` in `J*` with its number of right orbits `n(λ)`.
#[derive(Clone, Debug, Serialize)]
pub struct DualOrbit {
    pub pair: AdmissiblePair,
    pub n_right: usize,
    pub n_left: usize,
}

/// Two-sided orbits in `J*` labelled by their canonical `λ_{D,φ}`, with the
/// right- and left-orbit counts inside each.
pub fn dual_two_sided_orbits(g: &MatrixGroup) -> Result<OrbitDecomposition<DualOrbit>> {
    require_full_ut(g)?;
    let n = g.n();
    let act = Action::new(g, Ambient::Dual);
    let seeds: Vec<(AdmissiblePair, Matrix)> = enumerate_admissible_pairs(n, g.p())
        .into_iter()
        .map(|a| {
            let m = Matrix::from_pair(n, &a);
            (a, m)
        })
        .collect();
    let dec = act.decompose_seeded(seeds)?;
    let labels: Vec<DualOrbit> = crate::par::map(dec.orbits(), |o| DualOrbit {
        pair: o.label.clone(),
        n_right: act.right_only().count_suborbits(&o.members),
        n_left: act.left_only().count_suborbits(&o.members),
    });
    Ok(dec.relabel(labels))
}

/// The label `(D', h)` of a superclass of `T_n`: representative `h + x_{D'}`
/// with `h_i = 1` on `supp(D')`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TriClassLabel {
    #[serde(rename = "D")]
    pub d: BasicSubset,
    pub h: Vec<u8>,
}

impl TriClassLabel {
    pub fn representative(&self) -> Matrix {
        let n = self.h.len();
        let mut m = Matrix::from_basic(n, &self.d);
        for (i, &v) in self.h.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }
}

impl fmt::Display for TriClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h: Vec<String> = self.h.iter().map(u8::to_string).collect();
        write!(f, "{} h=diag({})", self.d, h.join(","))
    }
}

/// Every label `(D', h)` with `h ∈ H(e_{D'})`, ordered by `D'` then `h`.
pub fn triangular_class_labels(g: &MatrixGroup) -> Vec<TriClassLabel> {
    let mut out = Vec::new();
    for d in enumerate_basic_subsets(g.n()) {
        let e = Idempotent::of_basic(g.n(), &d);
        for h in g.torus_elements() {
            if e.fixes(&h) {
                out.push(TriClassLabel { d: d.clone(), h });
            }
        }
    }
    out
}

/// Superclasses of `T_n(F_p)`: orbits of `g ↦ 1 + t a (g-1) b^{-1} t^{-1}`.
pub fn superclasses_triangular(g: &MatrixGroup) -> Result<OrbitDecomposition<TriClassLabel>> {
    require_full_t(g)?;
    let seeds = triangular_class_labels(g)
        .into_iter()
        .map(|l| {
            let m = l.representative();
            (l, m)
        })
        .collect();
    Action::new(g, Ambient::Group).decompose_seeded(seeds)
}

/// Orbits of `x ↦ t a x b^{-1} t^{-1}` on `J` (or the dual action on `J*`),
/// each labelled by the unique `x_D` (resp. `λ_D`) with unit labels it contains.
pub fn rho_orbits(g: &MatrixGroup, ambient: Ambient) -> Result<OrbitDecomposition<BasicSubset>> {
    require_full_t(g)?;
    if ambient == Ambient::Group {
        return Err(Error::Invalid("ρ-orbits live in J or J*".into()));
    }
    let seeds = enumerate_basic_subsets(g.n())
        .into_iter()
        .map(|d| {
            let m = Matrix::from_basic(g.n(), &d);
            (d, m)
        })
        .collect();
    Action::new(g, ambient).decompose_seeded(seeds)
}

/// A diagonal idempotent `e = Σ_{i∈S} E_ii`, stored by its 0-based support.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Idempotent {
    n: usize,
    support: Vec<usize>,
}

impl Idempotent {
    pub fn new(n: usize, mut support: Vec<usize>) -> Idempotent {
        support.sort_unstable();
        support.dedup();
        Idempotent { n, support }
    }

    /// `e_D = Σ_{i∈supp(D)} E_ii`.
    pub fn of_basic(n: usize, d: &BasicSubset) -> Idempotent {
        Idempotent::new(n, d.support().into_iter().map(|i| i - 1).collect())
    }

    /// The idempotent `f'` associated with `h - 1`: the positions where `h ≠ 1`.
    pub fn of_torus_element(h: &[u8]) -> Idempotent {
        Idempotent::new(h.len(), (0..h.len()).filter(|&i| h[i] != 1).collect())
    }

    pub fn complement(&self) -> Idempotent {
        Idempotent::new(self.n, (0..self.n).filter(|i| !self.support.contains(i)).collect())
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn contains(&self, i: usize) -> bool {
        self.support.binary_search(&i).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.support.len() == self.n
    }

    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::zero(self.n);
        for &i in &self.support {
            m.set(i, i, 1);
        }
        m
    }

    /// `he = e`, i.e. `h ∈ H(e)`: `h_i = 1` on the support.
    pub fn fixes(&self, h: &[u8]) -> bool {
        self.support.iter().all(|&i| h[i] == 1)
    }

    /// `|H_e| = (p-1)^{|S|}` where `H_e = eHe`.
    pub fn corner_torus_order(&self, p: u32) -> usize {
        (p as usize - 1).pow(self.support.len() as u32)
    }

    /// `|H(e)| = (p-1)^{n-|S|}`.
    pub fn fixer_order(&self, p: u32) -> usize {
        (p as usize - 1).pow((self.n - self.support.len()) as u32)
    }

    /// Strictly upper positions inside `S × S`.
    pub fn corner_pattern(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, &i) in self.support.iter().enumerate() {
            for &j in &self.support[a + 1..] {
                out.push((i, j));
            }
        }
        out
    }

    /// Whether `x` lies in the corner algebra `J_e = eJe`.
    pub fn holds(&self, x: &Matrix) -> bool {
        (0..self.n).all(|i| {
            (i + 1..self.n).all(|j| x.get(i, j) == 0 || (self.contains(i) && self.contains(j)))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regularity {
    Regular,
    Singular,
}

/// An orbit inside `J_e` is regular when no member lies in a smaller corner
/// `J_{e'}`, `e' < e`, i.e. no member has an all-zero row and column at an
/// index of the support. For `e = 0` the zero orbit is regular.
pub fn classify_regular(members: &[Matrix], e: &Idempotent) -> Regularity {
    let n = e.n;
    let meets_smaller = members.iter().any(|x| {
        e.support()
            .iter()
            .any(|&i| (0..n).all(|j| x.get(i, j) == 0 && x.get(j, i) == 0))
    });
    if meets_smaller {
        Regularity::Singular
    } else {
        Regularity::Regular
    }
}
