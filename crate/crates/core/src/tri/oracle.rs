use serde::Serialize;

use crate::arith::{rational, CharacterContext, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::groups::{kernel_basis, Action, Ambient, Idempotent, LinearForm, Limits, Matrix, MatrixGroup, RightStabilizer};
use crate::induce::ConjugacyClasses;
use crate::sct::{scalar_product, ClassFunction};
use crate::tri::CharTriple;

/// `ξ_{θ,λ}(g)` as an exponent of `ζ_m`, for `g = h + x` with `h ∈ H(e)` and
/// `x ∈ J_{λ,rt}`; `None` outside `G_α = H(e) + J_{λ,rt}`.
fn xi_exponent(
    triple: &CharTriple,
    lambda: &LinearForm,
    stab: &RightStabilizer,
    g: &Matrix,
    ctx: &CharacterContext,
) -> Option<usize> {
    let th = triple.theta_exponent(&g.diag(), ctx)?;
    let x = g.strict_upper();
    if !stab.contains(&x, ctx.field()) {
        return None;
    }
    Some((th + ctx.additive_exponent(lambda.eval(&x, ctx.field()))) % ctx.conductor() as usize)
}

/// `ξ_{θ,λ}(g) = θ(h) ε^{λ(x)}` on `G_α`; fails for `g ∉ G_α`.
pub fn xi_character(group: &MatrixGroup, ctx: &CharacterContext, triple: &CharTriple, lambda: &LinearForm, g: &Matrix) -> Result<CyclotomicNumber> {
    let stab = RightStabilizer::new(group, lambda);
    xi_exponent(triple, lambda, &stab, g, ctx)
        .map(|k| ctx.zeta(k))
        .ok_or_else(|| Error::Invalid(format!("{g} lies outside H(e) + J_λ,rt")))
}

/// Induced supercharacters `χ_α = Ind(ξ_{θ,λ}, G_α, G)` of `T_n(F_p)`.
#[derive(Clone, Debug)]
pub struct TriOracle {
    group: MatrixGroup,
    ctx: CharacterContext,
    classes: ConjugacyClasses,
}

impl TriOracle {
    pub fn new(group: &MatrixGroup) -> Result<TriOracle> {
        Ok(TriOracle {
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

    /// `|G_α| = |H(e)| q^{dim J_{λ,rt}}`.
    pub fn subgroup_order(&self, triple: &CharTriple, lambda: &LinearForm) -> usize {
        let dim = RightStabilizer::new(&self.group, lambda).dim();
        triple.idempotent().fixer_order(self.group.p()) * (self.group.p() as usize).pow(dim as u32)
    }

    /// `χ_α` induced from the representative `λ_D` of `ω*`.
    pub fn induced(&self, triple: &CharTriple) -> ClassFunction {
        self.induced_from(triple, &triple.lambda())
    }

    /// `χ_α` induced from an arbitrary `λ ∈ ω*`.
    pub fn induced_from(&self, triple: &CharTriple, lambda: &LinearForm) -> ClassFunction {
        let stab = RightStabilizer::new(&self.group, lambda);
        let order = self.subgroup_order(triple, lambda);
        self.classes
            .induce(&self.ctx, order, |g| xi_exponent(triple, lambda, &stab, g, &self.ctx))
    }

    /// The orbit `ω*` of `λ_D` under `G̃_e` inside `J_e*`.
    pub fn omega_star(&self, triple: &CharTriple) -> Result<Vec<Matrix>> {
        let e = triple.idempotent();
        let ge = corner_group(&self.group, &e)?;
        Ok(Action::new(&ge, Ambient::Dual).orbit_matrices(triple.lambda().coeffs()))
    }
}

/// `G_e = H_e + J_e` inside the ambient `n × n` matrices.
fn corner_group(group: &MatrixGroup, e: &Idempotent) -> Result<MatrixGroup> {
    MatrixGroup::new(group.n(), group.p(), e.support().to_vec(), e.corner_pattern(), Limits::default())
}

/// Both Kirillov forms for `χ_α` at `g = h + x` with `hx = xh = x`:
/// `|H_e| θ̇(h) / n(Ω*) Σ_{μ∈Ω*} ε^{μ(x)}` and
/// `|H_e| |λN_f| θ̇(h) / |ρ(G̃_f)(x)| Σ_{y∈ρ(G̃_f)(x)} ε^{λ(y)}`.
pub fn tri_kirillov(group: &MatrixGroup, ctx: &CharacterContext, triple: &CharTriple, g: &Matrix) -> Result<(CyclotomicNumber, CyclotomicNumber)> {
    let f_field = ctx.field();
    let n = group.n();
    let h_diag = g.diag();
    let h = Matrix::diagonal(&h_diag);
    let x = g.strict_upper();
    if h.mul(&x, f_field) != x || x.mul(&h, f_field) != x {
        return Err(Error::Invalid(format!("{g} is not of the form h + x with hx = xh = x")));
    }
    let theta = triple.theta_value(&h_diag, ctx);
    if theta.is_zero() {
        return Ok((ctx.zero(), ctx.zero()));
    }
    let e = triple.idempotent();
    let f = Idempotent::of_torus_element(&h_diag).complement();
    let gf = corner_group(group, &f)?;
    let lambda = triple.lambda();
    let dual = Action::new(&gf, Ambient::Dual);
    let omega = dual.orbit(lambda.coeffs());
    // Ω* ∩ J_e* must be the orbit ω*
    let ge = corner_group(group, &e)?;
    let mut meet: Vec<Matrix> = omega
        .iter()
        .map(|&k| dual.matrix_at(k))
        .filter(|mu| e.holds(mu))
        .collect();
    let mut small = Action::new(&ge, Ambient::Dual).orbit_matrices(lambda.coeffs());
    meet.sort();
    small.sort();
    if meet != small {
        return Err(Error::Verification(format!("the orbit over {lambda:?} in J_f* does not meet J_e* in ω*")));
    }
    let h_e = e.corner_torus_order(group.p()) as i64;
    let n_right = dual.right_only().count_suborbits(&omega);
    let mut counts = vec![0i64; ctx.conductor() as usize];
    for &k in &omega {
        counts[ctx.additive_exponent(dual.matrix_at(k).pair_upper(&x, f_field))] += 1;
    }
    let first = (&ctx.from_counts(&counts) * &theta).scale(&rational(h_e, n_right as i64));

    let right_orbit = dual.right_only().orbit(lambda.coeffs()).len() as i64;
    let x_orbit = Action::new(&gf, Ambient::Algebra).orbit_matrices(&x);
    let mut counts = vec![0i64; ctx.conductor() as usize];
    for y in &x_orbit {
        counts[ctx.additive_exponent(lambda.eval(y, f_field))] += 1;
    }
    let second = (&ctx.from_counts(&counts) * &theta).scale(&rational(h_e * right_orbit, x_orbit.len() as i64));
    debug_assert_eq!(lambda.coeffs().n(), n);
    Ok((first, second))
}

/// The direct norm of `χ_α` next to `(|H_{NλN}| / |H(e)|) |Jλ ∩ λJ|`.
#[derive(Clone, Debug, Serialize)]
pub struct TriNormReport {
    pub direct: CyclotomicNumber,
    pub formula: CyclotomicNumber,
    /// `|H_{NλN}|`, the torus elements mapping `NλN` to itself
    pub stabilizer: usize,
    /// `|H(e)|`
    pub fixer: usize,
    /// `dim (Jλ ∩ λJ)`
    pub intersection_dim: usize,
}

impl TriNormReport {
    pub fn agrees(&self) -> bool {
        self.direct == self.formula
    }
}

pub fn tri_norm(oracle: &TriOracle, triple: &CharTriple) -> Result<TriNormReport> {
    let group = oracle.group();
    let f = group.field();
    let p = group.p();
    let lambda = triple.lambda();
    let c = lambda.coeffs();
    let chi = oracle.induced(triple);
    let direct = scalar_product(&chi, &chi)?;

    let two_sided = Action::new(group, Ambient::Dual).without_torus();
    let orbit = two_sided.orbit(c);
    let stabilizer = group
        .torus_elements()
        .iter()
        .filter(|h| {
            // (Ad*_h λ)(x) = λ(h^{-1} x h): coefficients C_ij h_i^{-1} h_j
            let mut moved = Matrix::zero(group.n());
            for &(i, j) in group.pattern() {
                moved.set(i, j, f.mul(f.mul(c.get(i, j), f.inv(h[i])), h[j]));
            }
            orbit.binary_search(&two_sided.index_of(&moved)).is_ok()
        })
        .count();
    let fixer = triple.idempotent().fixer_order(p);

    // Jλ = span{x ↦ λ(x E_ab)}, λJ = span{x ↦ λ(E_ab x)} as vectors on the pattern
    let pattern = group.pattern();
    let coordinate = |i: usize, j: usize| pattern.iter().position(|&q| q == (i, j));
    let mut left_rows = Vec::new();
    let mut right_rows = Vec::new();
    for &(a, b) in pattern {
        let mut v = vec![0u8; pattern.len()];
        for i in 0..a {
            if let Some(k) = coordinate(i, a) {
                v[k] = c.get(i, b);
            }
        }
        left_rows.push(v);
        let mut w = vec![0u8; pattern.len()];
        for l in b + 1..group.n() {
            if let Some(k) = coordinate(b, l) {
                w[k] = c.get(a, l);
            }
        }
        right_rows.push(w);
    }
    let rank = |rows: &[Vec<u8>]| pattern.len() - kernel_basis(rows, pattern.len(), f).len();
    let both: Vec<Vec<u8>> = left_rows.iter().chain(&right_rows).cloned().collect();
    let intersection_dim = rank(&left_rows) + rank(&right_rows) - rank(&both);
    let formula = oracle
        .ctx()
        .int(1)
        .scale(&rational((stabilizer * (p as usize).pow(intersection_dim as u32)) as i64, fixer as i64));
    Ok(TriNormReport {
        direct,
        formula,
        stabilizer,
        fixer,
        intersection_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::BasicSubset;
    use crate::tri::{enumerate_triples, TriTheory};

    fn triple(roots: &[(usize, usize)], theta: &[u32]) -> CharTriple {
        CharTriple {
            d: BasicSubset::from_pairs(roots).unwrap(),
            theta: theta.to_vec(),
        }
    }

    #[test]
    fn xi_is_multiplicative() {
        let g = MatrixGroup::triangular(2, 3, Limits::default()).unwrap();
        let ctx = CharacterContext::new(3).unwrap();
        let t = triple(&[(1, 2)], &[0, 0]);
        let lam = t.lambda();
        let members: Vec<Matrix> = g
            .elements()
            .filter(|m| xi_character(&g, &ctx, &t, &lam, m).is_ok())
            .collect();
        assert_eq!(members.len(), 3);
        for a in &members {
            for b in &members {
                let ab = g.mul(a, b);
                let lhs = xi_character(&g, &ctx, &t, &lam, &ab).unwrap();
                let rhs = &xi_character(&g, &ctx, &t, &lam, a).unwrap() * &xi_character(&g, &ctx, &t, &lam, b).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(xi_character(&g, &ctx, &t, &lam, &g.identity()).unwrap(), ctx.int(1));
        // on the torus ξ is θ
        let lin = triple(&[], &[1, 0]);
        let h = Matrix::diagonal(&[2, 1]);
        assert_eq!(xi_character(&g, &ctx, &lin, &LinearForm::zero(2), &h).unwrap(), ctx.int(-1));
    }

    #[test]
    fn t23_degrees_and_linear_characters() {
        let g = MatrixGroup::triangular(2, 3, Limits::default()).unwrap();
        let o = TriOracle::new(&g).unwrap();
        let ctx = o.ctx();
        let chi = o.induced(&triple(&[(1, 2)], &[0, 0]));
        assert_eq!(*chi.at(g.identity_index()), ctx.int(4));
        for th in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let t = triple(&[], &th);
            let chi = o.induced(&t);
            for (k, m) in g.elements().enumerate() {
                assert_eq!(*chi.at(k), t.theta_value(&m.diag(), ctx));
            }
        }
    }

    #[test]
    fn closed_form_matches_oracle() {
        for (n, p) in [(2, 3), (3, 2), (3, 3)] {
            let t = TriTheory::new(n, p, Limits::default()).unwrap();
            let o = TriOracle::new(t.group()).unwrap();
            assert!(t.oracle_mismatches(&o).is_empty(), "T_{n}(F_{p})");
        }
    }

    #[test]
    fn uncorrected_exponent_fails_on_chains() {
        let t = TriTheory::new(3, 3, Limits::default()).unwrap();
        let o = TriOracle::new(t.group()).unwrap();
        let chain = triple(&[(1, 2), (2, 3)], &[0, 0, 0]);
        let chi = o.induced(&chain);
        let e = t.identity_class();
        let label = &t.superclasses().orbits()[e].label;
        assert_eq!(*chi.at(t.group().identity_index()), o.ctx().int(8));
        assert_eq!(crate::tri::closed_value_uncorrected(&chain, label, o.ctx()), o.ctx().int(16));
        assert_eq!(crate::tri::closed_value(&chain, label, o.ctx()), o.ctx().int(8));
    }

    #[test]
    fn induced_character_does_not_depend_on_lambda() {
        for (n, p) in [(2, 3), (3, 3)] {
            let g = MatrixGroup::triangular(n, p, Limits::default()).unwrap();
            let o = TriOracle::new(&g).unwrap();
            let (triples, _) = enumerate_triples(n, p);
            for t in &triples {
                let base = o.induced(t);
                for mu in o.omega_star(t).unwrap() {
                    assert_eq!(o.induced_from(t, &LinearForm::new(mu)), base, "{t}");
                }
            }
        }
    }

    #[test]
    fn kirillov_examples() {
        let g = MatrixGroup::triangular(2, 3, Limits::default()).unwrap();
        let ctx = CharacterContext::new(3).unwrap();
        let t = triple(&[(1, 2)], &[0, 0]);
        let (a, b) = tri_kirillov(&g, &ctx, &t, &g.identity()).unwrap();
        assert_eq!((a, b), (ctx.int(4), ctx.int(4)));
        let off = Matrix::diagonal(&[2, 1]);
        assert_eq!(tri_kirillov(&g, &ctx, &t, &off).unwrap(), (ctx.zero(), ctx.zero()));
        let bad = Matrix::from_rows(&[&[2, 1], &[0, 1]]);
        assert!(tri_kirillov(&g, &ctx, &t, &bad).is_err());
    }

    #[test]
    fn norm_examples() {
        let g = MatrixGroup::triangular(2, 3, Limits::default()).unwrap();
        let o = TriOracle::new(&g).unwrap();
        let r = tri_norm(&o, &triple(&[(1, 2)], &[0, 0])).unwrap();
        assert_eq!(r.stabilizer, 2);
        assert_eq!(r.intersection_dim, 0);
        assert!(r.agrees());
        assert_eq!(r.formula, o.ctx().int(2));
        let (triples, _) = enumerate_triples(2, 3);
        for t in triples.iter().filter(|t| t.d.is_empty()) {
            let r = tri_norm(&o, t).unwrap();
            assert!(r.agrees());
            assert_eq!(r.formula, o.ctx().int(1));
        }
    }
}
