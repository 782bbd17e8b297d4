use serde::Serialize;

use crate::arith::{rational, CharacterContext, CyclotomicNumber};
use crate::error::Result;
use crate::groups::{Action, Ambient, LinearForm, Matrix, MatrixGroup, RightStabilizer};
use crate::induce::ConjugacyClasses;
use crate::sct::{scalar_product, ClassFunction};

/// Brute-force supercharacters `χ_λ = Ind(ξ_λ, G_{λ,rt}, G)` of an algebra
/// group `G = 1 + J` (any pattern group with trivial torus), with
/// `ξ_λ(g) = ε^{λ(g-1)}`.
#[derive(Clone, Debug)]
pub struct AlgebraGroupOracle {
    group: MatrixGroup,
    ctx: CharacterContext,
    classes: ConjugacyClasses,
}

impl AlgebraGroupOracle {
    pub fn new(group: &MatrixGroup) -> Result<AlgebraGroupOracle> {
        Ok(AlgebraGroupOracle {
            group: group.clone(),
            ctx: CharacterContext::new(group.p())?,
            classes: ConjugacyClasses::new(group)?,
        })
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn ctx(&self) -> &CharacterContext {
        &self.ctx
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    /// `|G_{λ,rt}| = q^{dim J_{λ,rt}}`.
    pub fn stabilizer_order(&self, lambda: &LinearForm) -> usize {
        (self.group.p() as usize).pow(RightStabilizer::new(&self.group, lambda).dim() as u32)
    }

    pub fn induced(&self, lambda: &LinearForm) -> ClassFunction {
        let stab = RightStabilizer::new(&self.group, lambda);
        let f = self.group.field();
        let one = self.group.identity();
        let sub_order = (self.group.p() as usize).pow(stab.dim() as u32);
        self.classes.induce(&self.ctx, sub_order, |g| {
            let y = g.sub(&one, f);
            stab.contains(&y, f).then(|| self.ctx.additive_exponent(lambda.eval(&y, f)))
        })
    }
}

/// The orbit data of `λ` that both Kirillov sums need.
#[derive(Clone, Debug)]
pub struct KirillovData {
    lambda: LinearForm,
    /// `GλG`
    two_sided: Vec<Matrix>,
    /// `n(λ)`, the number of right orbits in `GλG`
    n_right: usize,
    /// `|λG|`
    right_orbit: usize,
}

impl KirillovData {
    pub fn new(group: &MatrixGroup, lambda: &LinearForm) -> KirillovData {
        let act = Action::new(group, Ambient::Dual).without_torus();
        let members = act.orbit(lambda.coeffs());
        let n_right = act.right_only().count_suborbits(&members);
        let right_orbit = act.right_only().orbit(lambda.coeffs()).len();
        KirillovData {
            lambda: lambda.clone(),
            two_sided: members.into_iter().map(|k| act.matrix_at(k)).collect(),
            n_right,
            right_orbit,
        }
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn orbit_size(&self) -> usize {
        self.two_sided.len()
    }

    /// `(1/n(λ)) Σ_{μ∈GλG} ε^{μ(x)}`.
    pub fn first(&self, x: &Matrix, ctx: &CharacterContext) -> CyclotomicNumber {
        let mut counts = vec![0i64; ctx.conductor() as usize];
        for mu in &self.two_sided {
            counts[ctx.additive_exponent(mu.pair_upper(x, ctx.field()))] += 1;
        }
        ctx.from_counts(&counts).scale(&rational(1, self.n_right as i64))
    }

    /// `(|λG|/|GxG|) Σ_{y∈GxG} ε^{λ(y)}`.
    pub fn second(&self, group: &MatrixGroup, x: &Matrix, ctx: &CharacterContext) -> CyclotomicNumber {
        let act = Action::new(group, Ambient::Algebra).without_torus();
        let orbit = act.orbit_matrices(x);
        let mut counts = vec![0i64; ctx.conductor() as usize];
        for y in &orbit {
            counts[ctx.additive_exponent(self.lambda.eval(y, ctx.field()))] += 1;
        }
        ctx.from_counts(&counts)
            .scale(&rational(self.right_orbit as i64, orbit.len() as i64))
    }
}

/// Both Kirillov sums for `χ_λ` at `1 + x`.
pub fn kirillov_forms(group: &MatrixGroup, ctx: &CharacterContext, lambda: &LinearForm, x: &Matrix) -> (CyclotomicNumber, CyclotomicNumber) {
    let data = KirillovData::new(group, lambda);
    (data.first(x, ctx), data.second(group, x, ctx))
}

/// The three expressions for `(χ_λ, χ_λ)`.
#[derive(Clone, Debug, Serialize)]
pub struct NormReport {
    /// the scalar product of the oracle character with itself
    pub direct: CyclotomicNumber,
    /// `|Gλ ∩ λG|`
    pub orbit_intersection: usize,
    /// `q^{c(D)}` when `λ = λ_{D,φ}`
    pub crossing_power: Option<u64>,
}

impl NormReport {
    pub fn agrees(&self) -> bool {
        let m = self.direct.conductor();
        let ok = self.direct == CyclotomicNumber::from_int(m, self.orbit_intersection as i64);
        ok && self.crossing_power.is_none_or(|c| c as usize == self.orbit_intersection)
    }
}

pub fn norm_identity(oracle: &AlgebraGroupOracle, lambda: &LinearForm, crossings: Option<usize>) -> Result<NormReport> {
    let chi = oracle.induced(lambda);
    let direct = scalar_product(&chi, &chi)?;
    let act = Action::new(oracle.group(), Ambient::Dual).without_torus();
    let left = act.left_only().orbit(lambda.coeffs());
    let right = act.right_only().orbit(lambda.coeffs());
    let orbit_intersection = left.iter().filter(|k| right.binary_search(k).is_ok()).count();
    Ok(NormReport {
        direct,
        orbit_intersection,
        crossing_power: crossings.map(|c| (oracle.group().p() as u64).pow(c as u32)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{AdmissiblePair, BasicSubset};
    use crate::groups::Limits;

    fn form(n: usize, roots: &[(usize, usize)]) -> LinearForm {
        let pair = AdmissiblePair::unit(BasicSubset::from_pairs(roots).unwrap());
        LinearForm::from_pair(n, &pair)
    }

    fn unit(n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zero(n);
        m.set(i, j, 1);
        m
    }

    #[test]
    fn linear_character_of_ut2() {
        let g = MatrixGroup::unitriangular(2, 2, Limits::default()).unwrap();
        let o = AlgebraGroupOracle::new(&g).unwrap();
        let chi = o.induced(&form(2, &[(1, 2)]));
        let ctx = o.ctx();
        // elements in coordinate order: 1, 1 + E_12
        assert_eq!(chi.values(), &[ctx.int(1), ctx.int(-1)]);
        assert_eq!(o.stabilizer_order(&form(2, &[(1, 2)])), 2);
    }

    #[test]
    fn kirillov_examples() {
        let g = MatrixGroup::unitriangular(3, 2, Limits::default()).unwrap();
        let ctx = CharacterContext::new(2).unwrap();
        let lam = form(3, &[(1, 3)]);
        let data = KirillovData::new(&g, &lam);
        assert_eq!(data.orbit_size(), 4);
        assert_eq!(data.n_right(), 2);
        let zero = Matrix::zero(3);
        assert_eq!(kirillov_forms(&g, &ctx, &lam, &zero), (ctx.int(2), ctx.int(2)));
        assert_eq!(kirillov_forms(&g, &ctx, &lam, &unit(3, 0, 2)), (ctx.int(-2), ctx.int(-2)));
        assert_eq!(kirillov_forms(&g, &ctx, &lam, &unit(3, 0, 1)), (ctx.int(0), ctx.int(0)));
    }

    #[test]
    fn norm_examples() {
        let g3 = MatrixGroup::unitriangular(3, 2, Limits::default()).unwrap();
        let o3 = AlgebraGroupOracle::new(&g3).unwrap();
        let r = norm_identity(&o3, &form(3, &[(1, 3)]), Some(0)).unwrap();
        assert!(r.agrees());
        assert_eq!(r.orbit_intersection, 1);
        let z = norm_identity(&o3, &LinearForm::zero(3), Some(0)).unwrap();
        assert!(z.agrees());
        let g4 = MatrixGroup::unitriangular(4, 2, Limits::default()).unwrap();
        let o4 = AlgebraGroupOracle::new(&g4).unwrap();
        let r = norm_identity(&o4, &form(4, &[(1, 3), (2, 4)]), Some(1)).unwrap();
        assert!(r.agrees());
        assert_eq!(r.orbit_intersection, 2);
    }
}
