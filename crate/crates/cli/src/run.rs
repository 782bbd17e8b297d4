use serde::Serialize;
use superchar::acceptance::{run_all, Criterion};
use superchar::combinatorics::{RiggedPartition, SetPartition};
use superchar::groups::{
    dual_two_sided_orbits, rho_orbits, superclasses_triangular, superclasses_ut, two_sided_orbits, Limits, LinearForm,
    MatrixGroup, DEFAULT_SIZE_CAP,
};
use superchar::hopf::monomial::{coproduct_oracle, coproduct_oracle_rigged, oracle_mismatches, product_oracle, product_oracle_rigged};
use superchar::hopf::{
    dual_check, hopf_axiom_suite, iso_check, ns_basis, nps_basis, nps_coproduct, nps_product, DualCheck, GradedElement,
    HopfAxiom, IsoCheck, MonomialLabel, SuperclassTower, Tensor, TowerKind,
};
use superchar::sct::{builtin, schur_check, Axiom, Builtin, FiniteGroupTable, Report, SchurCondition, SuperTheory};
use superchar::table::SCHEMA_VERSION;
use superchar::tri::{TriOracle, TriTheory};
use superchar::ut::{AlgebraGroupOracle, KirillovData, UtTheory};

use crate::config::{Algebra, Ambient, Command, GroupFamily, RunConfig};
use crate::output::emit;
use crate::theory_file::TheoryFile;
use crate::CliError;

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    if let Some(jobs) = cfg.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    if cfg.max_order == Some(0) {
        return Err(CliError::Usage("--max-order must be positive".into()));
    }
    let command = cfg
        .command
        .clone()
        .ok_or_else(|| CliError::Usage("no subcommand given (see --help)".into()))?;
    match command {
        Command::UtTable => ut_table(cfg),
        Command::TTable => t_table(cfg),
        Command::VerifyTheory => verify_theory(cfg),
        Command::Orbits => orbits(cfg),
        Command::HopfMult => hopf_mult(cfg),
        Command::HopfCoprod => hopf_coprod(cfg),
        Command::HopfVerify => hopf_verify(cfg),
        Command::HopfTower => hopf_tower(cfg),
        Command::Acceptance => acceptance(cfg),
    }
}

fn limits(cfg: &RunConfig) -> Limits {
    Limits {
        max_order: cfg.max_order.unwrap_or(DEFAULT_SIZE_CAP),
    }
}

fn fail_if(failures: Vec<String>) -> Result<(), CliError> {
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(failures.join("; ")))
    }
}

fn ut_table(cfg: &RunConfig) -> Result<(), CliError> {
    let (n, p) = (cfg.require_n()?, cfg.require_p()?);
    let t = UtTheory::new(n, p, limits(cfg))?;
    let table = t.table();
    emit(cfg, &table, || table.text_rows())?;
    let mut failures = Vec::new();
    if cfg.verify_oracle {
        let bad = t.oracle_mismatches(&AlgebraGroupOracle::new(t.group())?);
        eprintln!("oracle: {} of {} cells differ", bad.len(), t.characters().len() * t.superclasses().len());
        if !bad.is_empty() {
            failures.push(format!("{} cells differ from the induced character", bad.len()));
        }
    }
    if cfg.verify_kirillov {
        let bad = ut_kirillov_mismatches(&t);
        eprintln!("kirillov: {bad} mismatches");
        if bad > 0 {
            failures.push(format!("{bad} Kirillov sums differ from the table"));
        }
    }
    fail_if(failures)
}

/// Both Kirillov sums for `λ_{D,φ}` at each class representative.
fn ut_kirillov_mismatches(t: &UtTheory) -> usize {
    let g = t.group();
    let one = g.identity();
    let mut bad = 0;
    for ch in t.characters() {
        let data = KirillovData::new(g, &LinearForm::from_pair(g.n(), &ch.pair));
        for (k, o) in t.superclasses().orbits().iter().enumerate() {
            let x = g.element(o.representative).sub(&one, g.field());
            let want = &ch.values[k];
            if data.first(&x, t.ctx()) != *want || data.second(g, &x, t.ctx()) != *want {
                bad += 1;
            }
        }
    }
    bad
}

fn t_table(cfg: &RunConfig) -> Result<(), CliError> {
    let (n, p) = (cfg.require_n()?, cfg.require_p()?);
    let t = TriTheory::new(n, p, limits(cfg))?;
    let table = t.table();
    emit(cfg, &table, || table.text_rows())?;
    let mut failures = Vec::new();
    if cfg.verify_oracle || cfg.verify_kirillov {
        let oracle = TriOracle::new(t.group())?;
        if cfg.verify_oracle {
            let bad = t.oracle_mismatches(&oracle);
            eprintln!("oracle: {} of {} cells differ", bad.len(), t.triples().len() * t.superclasses().len());
            if !bad.is_empty() {
                failures.push(format!("{} cells differ from the induced character", bad.len()));
            }
        }
        if cfg.verify_kirillov {
            let bad = t.kirillov_mismatches(&oracle)?;
            eprintln!("kirillov: {} mismatches", bad.len());
            if !bad.is_empty() {
                failures.push(format!("{} Kirillov sums differ from the oracle", bad.len()));
            }
        }
    }
    fail_if(failures)
}

#[derive(Serialize)]
struct TheoryReport {
    schema_version: u32,
    theory: String,
    order: usize,
    parts: usize,
    axioms: Report<Axiom>,
    schur: Report<SchurCondition>,
    passed: bool,
}

fn verify_theory(cfg: &RunConfig) -> Result<(), CliError> {
    let (name, table, theory): (String, FiniteGroupTable, SuperTheory) = match (&cfg.builtin, &cfg.theory, cfg.group) {
        (Some(b), None, None) => {
            let which: Builtin = b.parse()?;
            let (t, th) = builtin(which);
            (b.to_ascii_lowercase(), t, th)
        }
        (None, Some(path), None) => {
            let (t, th) = TheoryFile::read(path)?.build()?;
            (path.display().to_string(), t, th)
        }
        (None, None, Some(family)) => {
            let (n, p) = (cfg.require_n()?, cfg.require_p()?);
            let (group, th): (MatrixGroup, SuperTheory) = match family {
                GroupFamily::Ut => {
                    let t = UtTheory::new(n, p, limits(cfg))?;
                    (t.group().clone(), t.super_theory())
                }
                GroupFamily::T => {
                    let t = TriTheory::new(n, p, limits(cfg))?;
                    (t.group().clone(), t.super_theory())
                }
            };
            (group.to_string(), FiniteGroupTable::from_matrix_group(&group)?, th)
        }
        _ => return Err(CliError::Usage("give exactly one of --builtin, --theory or --group".into())),
    };
    let axioms = theory.verify(table.identity());
    let schur = schur_check(&table, &theory.partition);
    let passed = axioms.passed() && schur.passed();
    let report = TheoryReport {
        schema_version: SCHEMA_VERSION,
        theory: name,
        order: table.order(),
        parts: theory.partition.len(),
        axioms,
        schur,
        passed,
    };
    emit(cfg, &report, || {
        let mut rows = vec![vec!["check".into(), "status".into(), "detail".into()]];
        for f in &report.axioms.failures {
            rows.push(vec![format!("{:?}", f.check), "fail".into(), f.detail.clone()]);
        }
        for f in &report.schur.failures {
            rows.push(vec![format!("{:?}", f.check), "fail".into(), f.detail.clone()]);
        }
        rows.push(vec!["all".into(), if passed { "pass" } else { "fail" }.into(), String::new()]);
        rows
    })?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{} does not pass", report.theory)))
    }
}

#[derive(Serialize)]
struct OrbitRow {
    label: String,
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_right: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_left: Option<usize>,
}

#[derive(Serialize)]
struct OrbitListing {
    schema_version: u32,
    group: String,
    ambient: Ambient,
    orbits: Vec<OrbitRow>,
}

fn orbits(cfg: &RunConfig) -> Result<(), CliError> {
    let (n, p) = (cfg.require_n()?, cfg.require_p()?);
    let family = cfg.group.unwrap_or(GroupFamily::Ut);
    let ambient = cfg.ambient.unwrap_or(Ambient::Group);
    let group = match family {
        GroupFamily::Ut => MatrixGroup::unitriangular(n, p, limits(cfg))?,
        GroupFamily::T => MatrixGroup::triangular(n, p, limits(cfg))?,
    };
    let row = |label: String, size: usize| OrbitRow {
        label,
        size,
        n_right: None,
        n_left: None,
    };
    let orbits: Vec<OrbitRow> = match (family, ambient) {
        (GroupFamily::Ut, Ambient::Group) => superclasses_ut(&group)?.orbits().iter().map(|o| row(o.label.to_string(), o.size())).collect(),
        (GroupFamily::Ut, Ambient::Algebra) => two_sided_orbits(&group)?.orbits().iter().map(|o| row(o.label.to_string(), o.size())).collect(),
        (GroupFamily::Ut, Ambient::Dual) => dual_two_sided_orbits(&group)?
            .orbits()
            .iter()
            .map(|o| OrbitRow {
                label: o.label.pair.to_string(),
                size: o.size(),
                n_right: Some(o.label.n_right),
                n_left: Some(o.label.n_left),
            })
            .collect(),
        (GroupFamily::T, Ambient::Group) => {
            superclasses_triangular(&group)?.orbits().iter().map(|o| row(o.label.to_string(), o.size())).collect()
        }
        (GroupFamily::T, a) => {
            let which = if a == Ambient::Algebra { superchar::groups::Ambient::Algebra } else { superchar::groups::Ambient::Dual };
            rho_orbits(&group, which)?.orbits().iter().map(|o| row(o.label.to_string(), o.size())).collect()
        }
    };
    let listing = OrbitListing {
        schema_version: SCHEMA_VERSION,
        group: group.to_string(),
        ambient,
        orbits,
    };
    emit(cfg, &listing, || {
        let mut rows = vec![vec!["label".into(), "size".into(), "n_right".into(), "n_left".into()]];
        for o in &listing.orbits {
            let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
            rows.push(vec![o.label.clone(), o.size.to_string(), opt(o.n_right), opt(o.n_left)]);
        }
        rows
    })
}

#[derive(Serialize)]
struct HopfResult<T: Serialize> {
    schema_version: u32,
    algebra: Algebra,
    operation: &'static str,
    inputs: Vec<String>,
    terms: T,
}

fn algebra(cfg: &RunConfig) -> (Algebra, u32) {
    (cfg.algebra.unwrap_or(Algebra::Ns), cfg.y.unwrap_or(1))
}

fn parse_all<L: std::str::FromStr<Err = superchar::Error>>(labels: &[String]) -> Result<Vec<L>, CliError> {
    labels.iter().map(|s| s.parse::<L>().map_err(CliError::from)).collect()
}

fn element_rows<L: MonomialLabel>(e: &GradedElement<L>) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["label".into(), "coefficient".into()]];
    rows.extend(e.terms().iter().map(|(l, c)| vec![l.to_string(), c.to_string()]));
    rows
}

fn tensor_rows<L: MonomialLabel>(t: &Tensor<L>) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["left".into(), "right".into(), "coefficient".into()]];
    rows.extend(t.terms().iter().map(|((a, b), c)| vec![a.to_string(), b.to_string(), c.to_string()]));
    rows
}

fn hopf_mult(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.basis.is_empty() {
        return Err(CliError::Usage("hopf mult needs at least one --basis".into()));
    }
    let (alg, y) = algebra(cfg);
    let inputs = cfg.basis.clone();
    match alg {
        Algebra::Ns => {
            let product = parse_all::<SetPartition>(&cfg.basis)?
                .into_iter()
                .fold(GradedElement::one(), |acc, l| acc.mul(&GradedElement::basis(l)));
            let r = HopfResult { schema_version: SCHEMA_VERSION, algebra: alg, operation: "mult", inputs, terms: product };
            emit(cfg, &r, || element_rows(&r.terms))
        }
        Algebra::Nps => {
            let mut product = GradedElement::one();
            for l in parse_all::<RiggedPartition>(&cfg.basis)? {
                product = nps_product(&product, &GradedElement::basis(l), y)?;
            }
            let r = HopfResult { schema_version: SCHEMA_VERSION, algebra: alg, operation: "mult", inputs, terms: product };
            emit(cfg, &r, || element_rows(&r.terms))
        }
    }
}

fn hopf_coprod(cfg: &RunConfig) -> Result<(), CliError> {
    let [label] = cfg.basis.as_slice() else {
        return Err(CliError::Usage("hopf coprod needs exactly one --basis".into()));
    };
    let (alg, y) = algebra(cfg);
    let inputs = vec![label.clone()];
    match alg {
        Algebra::Ns => {
            let d = GradedElement::basis(label.parse::<SetPartition>()?).coproduct();
            let r = HopfResult { schema_version: SCHEMA_VERSION, algebra: alg, operation: "coprod", inputs, terms: d };
            emit(cfg, &r, || tensor_rows(&r.terms))
        }
        Algebra::Nps => {
            let d = nps_coproduct(&GradedElement::basis(label.parse::<RiggedPartition>()?), y)?;
            let r = HopfResult { schema_version: SCHEMA_VERSION, algebra: alg, operation: "coprod", inputs, terms: d };
            emit(cfg, &r, || tensor_rows(&r.terms))
        }
    }
}

#[derive(Serialize)]
struct HopfVerification {
    schema_version: u32,
    algebra: Algebra,
    nmax: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    y: Option<u32>,
    axioms: Report<HopfAxiom>,
    /// products and coproducts where the rules disagree with the polynomial model
    oracle_mismatches: Vec<String>,
    passed: bool,
}

fn hopf_verify(cfg: &RunConfig) -> Result<(), CliError> {
    let (alg, y) = algebra(cfg);
    let (axioms, mismatches, nmax) = match alg {
        Algebra::Ns => {
            let nmax = cfg.nmax.unwrap_or(4);
            let basis = ns_basis(nmax);
            let m = oracle_mismatches(&basis, product_oracle, coproduct_oracle)?;
            (hopf_axiom_suite(&basis, true), m, nmax)
        }
        Algebra::Nps => {
            let nmax = cfg.nmax.unwrap_or(3);
            let basis = nps_basis(nmax, y);
            let m = oracle_mismatches(&basis, product_oracle_rigged, coproduct_oracle_rigged)?;
            (hopf_axiom_suite(&basis, false), m, nmax)
        }
    };
    let passed = axioms.passed() && mismatches.is_empty();
    let r = HopfVerification {
        schema_version: SCHEMA_VERSION,
        algebra: alg,
        nmax,
        y: (alg == Algebra::Nps).then_some(y),
        axioms,
        oracle_mismatches: mismatches,
        passed,
    };
    emit(cfg, &r, || {
        let mut rows = vec![vec!["check".into(), "status".into(), "detail".into()]];
        rows.extend(r.axioms.failures.iter().map(|f| vec![format!("{:?}", f.check), "fail".into(), f.detail.clone()]));
        rows.extend(r.oracle_mismatches.iter().map(|m| vec!["Oracle".into(), "fail".into(), m.clone()]));
        rows.push(vec!["all".into(), if passed { "pass" } else { "fail" }.into(), String::new()]);
        rows
    })?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Failed("Hopf checks".into()))
    }
}

#[derive(Serialize)]
struct TowerReport {
    schema_version: u32,
    tower: TowerKind,
    nmax: usize,
    isomorphism: Report<IsoCheck>,
    dual: Report<DualCheck>,
    passed: bool,
}

fn hopf_tower(cfg: &RunConfig) -> Result<(), CliError> {
    let kind = match (cfg.group.unwrap_or(GroupFamily::Ut), cfg.p) {
        (GroupFamily::Ut, None | Some(2)) => TowerKind::Unitriangular,
        (GroupFamily::Ut, Some(p)) => {
            return Err(CliError::Usage(format!("the unitriangular tower is modelled by NS only over F_2, not F_{p}")))
        }
        (GroupFamily::T, p) => TowerKind::Triangular { p: p.unwrap_or(3) },
    };
    let nmax = cfg.nmax.unwrap_or(3);
    let tower = SuperclassTower::new(kind, nmax)?;
    let isomorphism = iso_check(&tower)?;
    let dual = dual_check(&tower)?;
    let passed = isomorphism.passed() && dual.passed();
    let r = TowerReport { schema_version: SCHEMA_VERSION, tower: kind, nmax, isomorphism, dual, passed };
    emit(cfg, &r, || {
        let mut rows = vec![vec!["check".into(), "status".into(), "detail".into()]];
        rows.extend(r.isomorphism.failures.iter().map(|f| vec![format!("{:?}", f.check), "fail".into(), f.detail.clone()]));
        rows.extend(r.dual.failures.iter().map(|f| vec![format!("Dual{:?}", f.check), "fail".into(), f.detail.clone()]));
        rows.push(vec!["all".into(), if passed { "pass" } else { "fail" }.into(), String::new()]);
        rows
    })?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Failed("superclass tower checks".into()))
    }
}

#[derive(Serialize)]
struct AcceptanceReport {
    schema_version: u32,
    criteria: Vec<Criterion>,
    passed: bool,
}

fn acceptance(cfg: &RunConfig) -> Result<(), CliError> {
    let criteria = run_all();
    for c in &criteria {
        eprintln!("{c}");
    }
    let failed: Vec<String> = criteria.iter().filter(|c| !c.passed).map(|c| c.id.to_string()).collect();
    let r = AcceptanceReport { schema_version: SCHEMA_VERSION, passed: failed.is_empty(), criteria };
    emit(cfg, &r, || {
        let mut rows = vec![vec!["id".into(), "name".into(), "status".into(), "detail".into()]];
        rows.extend(r.criteria.iter().map(|c| {
            vec![c.id.to_string(), c.name.to_string(), if c.passed { "pass" } else { "fail" }.into(), c.detail.clone()]
        }));
        rows
    })?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("criteria {}", failed.join(", "))))
    }
}
