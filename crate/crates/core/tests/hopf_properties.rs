use proptest::prelude::*;
use superchar::combinatorics::{RiggedPartition, SetPartition};
use superchar::hopf::monomial::{coproduct_oracle, coproduct_oracle_rigged, product_oracle, product_oracle_rigged};
use superchar::hopf::{GradedElement, NpsElement, NsElement};

/// A set partition of `[n]` from a restricted growth string.
fn arb_partition(max_n: usize) -> impl Strategy<Value = SetPartition> {
    (0..=max_n)
        .prop_flat_map(|n| proptest::collection::vec(0usize..n.max(1), n))
        .prop_map(|raw| {
            let mut next = 0;
            let mut blocks: Vec<Vec<usize>> = Vec::new();
            for (i, r) in raw.iter().enumerate() {
                let b = (*r).min(next);
                if b == next {
                    blocks.push(Vec::new());
                    next += 1;
                }
                blocks[b].push(i + 1);
            }
            SetPartition::new(blocks).unwrap()
        })
}

/// A rigged partition over labels `1..=y`: a set partition whose singleton
/// blocks may be turned into rigged points.
fn arb_rigged(max_n: usize, y: u32) -> impl Strategy<Value = RiggedPartition> {
    arb_partition(max_n)
        .prop_flat_map(move |p| (Just(p), proptest::collection::vec(0..=y, max_n)))
        .prop_map(|(p, labels)| {
            let n = p.size();
            let mut blocks = Vec::new();
            let mut rigging = std::collections::BTreeMap::new();
            for b in p.blocks() {
                match (b.as_slice(), labels[b[0] - 1]) {
                    ([i], c) if c > 0 => {
                        rigging.insert(*i, c);
                    }
                    _ => blocks.push(b.clone()),
                }
            }
            let free: Vec<usize> = blocks.iter().flatten().copied().collect();
            let blocks = SetPartition::new(blocks).unwrap().restrict(&free);
            RiggedPartition::new(n, blocks, rigging).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_text_round_trips(p in arb_partition(7)) {
        let back: SetPartition = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn rigged_text_round_trips(p in arb_rigged(6, 2)) {
        let back: RiggedPartition = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn ns_rules_match_polynomials(a in arb_partition(3), b in arb_partition(3)) {
        let ma = NsElement::basis(a.clone());
        prop_assert_eq!(ma.mul(&GradedElement::basis(b.clone())), product_oracle(&a, &b).unwrap());
        prop_assert_eq!(ma.coproduct(), coproduct_oracle(&a).unwrap());
    }

    #[test]
    fn nps_rules_match_polynomials(a in arb_rigged(3, 2), b in arb_rigged(2, 2)) {
        let ma = NpsElement::basis(a.clone());
        prop_assert_eq!(ma.mul(&GradedElement::basis(b.clone())), product_oracle_rigged(&a, &b).unwrap());
        prop_assert_eq!(ma.coproduct(), coproduct_oracle_rigged(&a).unwrap());
    }

    #[test]
    fn coproduct_is_multiplicative(a in arb_partition(3), b in arb_partition(3)) {
        let (ma, mb) = (NsElement::basis(a), NsElement::basis(b));
        prop_assert_eq!(ma.mul(&mb).coproduct(), ma.coproduct().mul(&mb.coproduct()));
    }

    #[test]
    fn counit_recovers_the_element(a in arb_rigged(5, 1)) {
        let ma = NpsElement::basis(a);
        let d = ma.coproduct();
        prop_assert_eq!(d.counit_left(), ma.clone());
        prop_assert_eq!(d.counit_right(), ma);
    }
}
