//! The end-to-end acceptance checks, one function per criterion. Each
//! returns a [`Criterion`] instead of panicking so the CLI and the test
//! target can both print a summary line.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::combinatorics::{bell, enumerate_admissible_pairs, enumerate_basic_subsets, BasicSubset, SetPartition};
use crate::error::Result;
use crate::groups::{Limits, LinearForm, MatrixGroup};
use crate::hopf::{
    dual_check, hopf_axiom_suite, iso_check, ns_basis, ns_coproduct, nps_basis, GradedElement, SuperclassTower,
    TowerKind,
};
use crate::sct::{builtin, check_restriction_induction, schur_check, Builtin, FiniteGroupTable};
use crate::tri::{closed_value_uncorrected, tri_restrict_superinduce, TriOracle, TriTheory};
use crate::ut::{algebra_group_theory, inclusion_indices, norm_identity, AlgebraGroupOracle, KirillovData, UtTheory};

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub seconds: f64,
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2}. {} ({:.2}s): {}", self.id, self.name, self.seconds, self.detail)
    }
}

/// Runs `body`, which returns `(passed, detail)`, and turns errors into
/// failures. A `budget` turns an overrun into a failure as well.
fn timed(id: u8, name: &'static str, budget: Option<Duration>, body: impl FnOnce() -> Result<(bool, String)>) -> Criterion {
    let start = Instant::now();
    let (mut passed, mut detail) = match body() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    if let Some(b) = budget {
        if elapsed > b {
            passed = false;
            detail = format!("{detail}; over the {}s budget", b.as_secs());
        }
    }
    Criterion {
        id,
        name,
        passed,
        detail,
        seconds: elapsed.as_secs_f64(),
    }
}

const UT_RANGE: [(usize, u32); 6] = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)];
const TRI_RANGE: [(usize, u32); 3] = [(2, 3), (3, 2), (3, 3)];

fn ut(n: usize, p: u32) -> Result<MatrixGroup> {
    MatrixGroup::unitriangular(n, p, Limits::default())
}

pub fn ut_oracle_equivalence() -> Criterion {
    timed(1, "UT closed form = induced oracle", Some(Duration::from_secs(60)), || {
        let mut cells = 0;
        let mut bad = Vec::new();
        for (n, p) in UT_RANGE {
            let t = UtTheory::new(n, p, Limits::default())?;
            let o = AlgebraGroupOracle::new(t.group())?;
            let m = t.oracle_mismatches(&o);
            cells += t.characters().len() * t.superclasses().len();
            if !m.is_empty() {
                bad.push(format!("UT_{n}(F_{p}): {} cells", m.len()));
            }
        }
        Ok((bad.is_empty(), format!("{cells} cells, mismatches: {bad:?}")))
    })
}

pub fn ut_norms() -> Criterion {
    timed(2, "UT norms and degrees", None, || {
        let mut pairs = 0;
        let mut bad = Vec::new();
        for (n, p) in UT_RANGE {
            let g = ut(n, p)?;
            let o = AlgebraGroupOracle::new(&g)?;
            let e = g.identity_index();
            for pair in enumerate_admissible_pairs(n, p) {
                pairs += 1;
                let lambda = LinearForm::from_pair(n, &pair);
                let r = norm_identity(&o, &lambda, Some(pair.d().crossings()))?;
                let degree = (p as i64).pow(pair.d().dimension_weight() as u32);
                if !r.agrees() || *o.induced(&lambda).at(e) != o.ctx().int(degree) {
                    bad.push(format!("UT_{n}(F_{p}) {pair}"));
                }
            }
        }
        Ok((bad.is_empty(), format!("{pairs} admissible pairs, failures: {bad:?}")))
    })
}

/// Both Kirillov sums against the oracle for every `λ ∈ J*` and `x ∈ J`.
pub fn ut_kirillov() -> Criterion {
    timed(3, "UT Kirillov forms", None, || {
        let mut checked = 0;
        let mut bad = 0;
        for p in [2, 3] {
            let g = ut(3, p)?;
            let o = AlgebraGroupOracle::new(&g)?;
            let f = g.field();
            let one = g.identity();
            let algebra: Vec<_> = g.elements().map(|x| x.sub(&one, f)).collect();
            for l in &algebra {
                let lambda = LinearForm::new(l.clone());
                let chi = o.induced(&lambda);
                let data = KirillovData::new(&g, &lambda);
                for (k, x) in algebra.iter().enumerate() {
                    checked += 1;
                    let want = chi.at(k);
                    if data.first(x, o.ctx()) != *want || data.second(&g, x, o.ctx()) != *want {
                        bad += 1;
                    }
                }
            }
        }
        Ok((bad == 0, format!("{checked} (λ, x) pairs over UT_3(F_2), UT_3(F_3), {bad} mismatches")))
    })
}

pub fn ut_regular_character() -> Criterion {
    timed(4, "UT regular character", None, || {
        let mut bad = Vec::new();
        for n in 1..=4 {
            let t = UtTheory::new(n, 2, Limits::default())?;
            let weights: Vec<_> = t
                .characters()
                .iter()
                .map(|ch| {
                    let n_right = KirillovData::new(t.group(), &LinearForm::from_pair(n, &ch.pair)).n_right();
                    crate::arith::rational_int(n_right as i64)
                })
                .collect();
            let off = t.super_theory().regular_decomposition(&weights, t.group().identity_index());
            if !off.is_empty() {
                bad.push(format!("UT_{n}(F_2) at {} elements", off.len()));
            }
        }
        Ok((bad.is_empty(), format!("Σ n(λ)χ_λ = ρ for n ≤ 4, failures: {bad:?}")))
    })
}

pub fn tri_oracle_equivalence() -> Criterion {
    timed(5, "T value formula, norms, theory axioms", Some(Duration::from_secs(120)), || {
        let mut cells = 0;
        let mut literal = 0;
        let mut bad = Vec::new();
        for (n, p) in TRI_RANGE {
            let t = TriTheory::new(n, p, Limits::default())?;
            let o = TriOracle::new(t.group())?;
            let tag = format!("T_{n}(F_{p})");
            cells += t.triples().len() * t.superclasses().len();
            if !t.oracle_mismatches(&o).is_empty() {
                bad.push(format!("{tag} values"));
            }
            if !t.norm_mismatches(&o)?.is_empty() {
                bad.push(format!("{tag} norms"));
            }
            if !t.super_theory().verify(t.group().identity_index()).passed() {
                bad.push(format!("{tag} axioms"));
            }
            let table = FiniteGroupTable::from_matrix_group(t.group())?;
            if !schur_check(&table, &t.partition()).passed() {
                bad.push(format!("{tag} Schur"));
            }
            for (tr, row) in t.triples().iter().zip(t.values()) {
                for (o, v) in t.superclasses().orbits().iter().zip(row) {
                    if closed_value_uncorrected(tr, &o.label, t.ctx()) != *v {
                        literal += 1;
                    }
                }
            }
        }
        Ok((
            bad.is_empty(),
            format!(
                "{cells} cells with exponent |supp D| - |D ∩ D'|, failures: {bad:?}; \
                 exponent |D| + |D \\ D'| differs on {literal} cells"
            ),
        ))
    })
}

pub fn tri_kirillov() -> Criterion {
    timed(6, "T Kirillov forms", None, || {
        let mut bad = Vec::new();
        let mut cells = 0;
        for (n, p) in TRI_RANGE {
            let t = TriTheory::new(n, p, Limits::default())?;
            let o = TriOracle::new(t.group())?;
            cells += t.triples().len() * t.superclasses().len();
            let m = t.kirillov_mismatches(&o)?;
            if !m.is_empty() {
                bad.push(format!("T_{n}(F_{p}): {} cells", m.len()));
            }
        }
        Ok((bad.is_empty(), format!("{cells} (triple, representative) pairs, failures: {bad:?}")))
    })
}

pub fn reciprocity() -> Criterion {
    timed(7, "Frobenius reciprocity", None, || {
        let mut bad = Vec::new();
        for p in [2, 3] {
            let g = ut(3, p)?;
            let t = algebra_group_theory(&AlgebraGroupOracle::new(&g)?)?;
            let sub = MatrixGroup::new(3, p, Vec::new(), vec![(0, 1)], Limits::default())?;
            let st = algebra_group_theory(&AlgebraGroupOracle::new(&sub)?)?;
            let rep = check_restriction_induction(&st.theory, &t.theory, &inclusion_indices(&sub, &g)?)?;
            if !rep.report.passed() {
                bad.push(format!("UT_2 ⊂ UT_3 over F_{p}"));
            }
            let small = TriTheory::new(2, p, Limits::default())?;
            let big = TriTheory::new(3, p, Limits::default())?;
            if !tri_restrict_superinduce(&small, &big)?.report.passed() {
                bad.push(format!("T_2 ⊂ T_3 over F_{p}"));
            }
        }
        Ok((bad.is_empty(), format!("UT_2 ⊂ UT_3 and T_2 ⊂ T_3 for p = 2, 3, failures: {bad:?}")))
    })
}

pub fn hopf_structure() -> Criterion {
    timed(8, "NS / NPS Hopf structure", None, || {
        let p = |s: &str| s.parse::<SetPartition>();
        let e = SetPartition::empty();
        let want = [
            (p("14|2|3")?, e.clone(), 1),
            (p("13|2")?, p("1")?, 2),
            (p("12")?, p("1|2")?, 1),
            (p("1|2")?, p("12")?, 1),
            (p("1")?, p("13|2")?, 2),
            (e, p("14|2|3")?, 1),
        ];
        let d = ns_coproduct(&GradedElement::basis(p("14|2|3")?));
        let expansion = d.terms().len() == want.len()
            && want.iter().all(|(a, b, c)| d.coefficient(a, b) == crate::arith::rational_int(*c));
        let ns = hopf_axiom_suite(&ns_basis(4), true);
        let nps = hopf_axiom_suite(&nps_basis(3, 1), false);
        Ok((
            expansion && ns.passed() && nps.passed(),
            format!(
                "Δ(m_14|2|3) = {d}; NS ≤ 4 axioms {}, NPS(y=1) ≤ 3 axioms {}",
                verdict(ns.passed()),
                verdict(nps.passed())
            ),
        ))
    })
}

pub fn isomorphisms() -> Criterion {
    timed(9, "SCU ≅ NS, SCB ≅ NPS, dual bases", None, || {
        let mut bad = Vec::new();
        let scu = SuperclassTower::new(TowerKind::Unitriangular, 4)?;
        let scb = SuperclassTower::new(TowerKind::Triangular { p: 3 }, 3)?;
        for (tag, tower) in [("SCU", &scu), ("SCB", &scb)] {
            if let Some(f) = iso_check(tower)?.first_failure() {
                bad.push(format!("{tag} {:?}: {}", f.check, f.detail));
            }
        }
        for (tag, kind) in [("SCU*", TowerKind::Unitriangular), ("SCB*", TowerKind::Triangular { p: 3 })] {
            let tower = SuperclassTower::new(kind, 3)?;
            if let Some(f) = dual_check(&tower)?.first_failure() {
                bad.push(format!("{tag} {:?}: {}", f.check, f.detail));
            }
        }
        Ok((bad.is_empty(), format!("q = 2, n ≤ 4; p = 3, n ≤ 3; duals n ≤ 3; failures: {bad:?}")))
    })
}

pub fn combinatorial_anchors() -> Criterion {
    timed(10, "combinatorial anchors", None, || {
        let mut bad = Vec::new();
        let seven = BasicSubset::from_pairs(&[(1, 3), (3, 6), (2, 4), (4, 5), (5, 7)])?;
        if seven.crossings() != 3 {
            bad.push(format!("c(D) = {}", seven.crossings()));
        }
        for n in 0..=6 {
            if enumerate_basic_subsets(n).len() as u64 != bell(n) {
                bad.push(format!("basic subsets of [{n}]"));
            }
        }
        let (t, th) = builtin(Builtin::C4);
        if !th.verify(t.identity()).passed() || !schur_check(&t, &th.partition).passed() {
            bad.push("C4 table".into());
        }
        let u4 = UtTheory::new(4, 2, Limits::default())?;
        let cells = u4.super_theory().integrality(u4.group().identity_index())?;
        if !cells.is_empty() {
            bad.push(format!("UT_4(F_2) integrality at {} cells", cells.len()));
        }
        Ok((bad.is_empty(), format!("failures: {bad:?}")))
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

pub fn run_all() -> Vec<Criterion> {
    vec![
        ut_oracle_equivalence(),
        ut_norms(),
        ut_kirillov(),
        ut_regular_character(),
        tri_oracle_equivalence(),
        tri_kirillov(),
        reciprocity(),
        hopf_structure(),
        isomorphisms(),
        combinatorial_anchors(),
    ]
}
