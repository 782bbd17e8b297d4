use proptest::prelude::*;
use superchar::combinatorics::enumerate_admissible_pairs;
use superchar::groups::Limits;
use superchar::sct::{schur_check, FiniteGroupTable};
use superchar::tri::TriTheory;
use superchar::ut::UtTheory;

#[test]
fn small_ut_and_t_theories_pass_all_axioms() {
    for (n, p) in [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2)] {
        let u = UtTheory::new(n, p, Limits::default()).unwrap();
        assert!(u.check_invariants().passed(), "UT_{n}(F_{p})");
        let th = u.super_theory();
        assert!(th.verify(u.group().identity_index()).passed(), "UT_{n}(F_{p})");
        assert_eq!(th.parts_from_fibers(), th.partition.canonical(), "UT_{n}(F_{p})");
        assert_eq!(u.characters().len(), enumerate_admissible_pairs(n, p).len());
    }
    for (n, p) in [(2, 2), (2, 3), (3, 2)] {
        let t = TriTheory::new(n, p, Limits::default()).unwrap();
        let table = FiniteGroupTable::from_matrix_group(t.group()).unwrap();
        assert!(schur_check(&table, &t.partition()).passed(), "T_{n}(F_{p})");
        assert!(t.super_theory().verify(t.group().identity_index()).passed(), "T_{n}(F_{p})");
    }
}

#[test]
fn table_json_has_schema_and_shape() {
    let t = TriTheory::new(2, 3, Limits::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&t.table().to_json()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["order"], 12);
    let sizes: usize = v["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap() as usize).sum();
    assert_eq!(sizes, 12);
}

#[test]
fn size_cap_is_reported() {
    let err = UtTheory::new(5, 3, Limits { max_order: 1000 }).unwrap_err();
    assert!(matches!(err, superchar::Error::SizeCap { .. }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Degrees are powers of q, and Σ χ(1)²/(χ,χ) = |G| for the UT tables.
    #[test]
    fn ut_degrees_account_for_the_group(n in 1usize..=4, p in prop::sample::select(vec![2u32, 3])) {
        prop_assume!(!(n == 4 && p == 3));
        let u = UtTheory::new(n, p, Limits::default()).unwrap();
        let mut total = num::BigRational::from_integer(0.into());
        for ch in u.characters() {
            prop_assert!(ch.degree.is_power_of_two() || p != 2);
            total += num::BigRational::new((ch.degree * ch.degree).into(), ch.norm.into());
        }
        prop_assert_eq!(total, num::BigRational::from_integer(u.group().order().into()));
    }
}
