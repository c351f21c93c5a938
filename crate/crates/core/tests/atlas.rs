use std::collections::BTreeSet;

use braidcov_core::atlas::*;
use braidcov_core::presentations::FiniteFamily::{self, *};
use braidcov_core::rewriting::Budget;
use proptest::prelude::*;

fn set(v: Vec<FiniteFamily>) -> BTreeSet<String> {
    v.into_iter().map(|g| g.to_string()).collect()
}

#[test]
fn theorem_examples() {
    assert_eq!(classify_groups(SurfaceKind::Rp2, 7).unwrap(), vec![Dic(14), Dic(12), OStar]);
    assert_eq!(classify_groups(SurfaceKind::Rp2, 6).unwrap(), vec![Dic(12), Dic(10), OStar, IStar]);
    assert_eq!(classify_groups(SurfaceKind::S2, 6).unwrap(), vec![Cyclic(10), Dic(6), OStar]);
    assert_eq!(classify_groups(SurfaceKind::Rp2, 2).unwrap(), vec![Dic(4)]);
    assert!(classify(SurfaceKind::S2, 2).is_err());
    assert!(classify(SurfaceKind::Rp2, 1).is_err());
    let names: Vec<String> = classify(SurfaceKind::Rp2, 7).unwrap().iter().map(|e| e.formula()).collect();
    assert_eq!(names, ["Dic(8n)", "Dic(8(n-1))", "O*", "I*"][..3]);
}

#[test]
fn elimination_examples() {
    let t = eliminate_candidates(5).unwrap();
    assert_eq!(t.result, vec![Dic(10), Dic(8)]);
    assert!(t.steps.iter().any(|s| s.group == TStar && s.action == StepAction::Removed));
    assert!(t.steps.iter().any(|s| s.group == Cyclic(18) && s.facts.iter().all(|f| f.holds)));
    let t = eliminate_candidates(4).unwrap();
    assert!(t.result.contains(&OStar) && !t.result.contains(&IStar));
    let t = eliminate_candidates(3).unwrap();
    assert!(t.steps.iter().any(|s| s.group == Dic(4) && s.action == StepAction::Restored));
    assert!(eliminate_candidates(2).is_err());
}

#[test]
fn elimination_matches_classification() {
    for n in 3..=1000 {
        let t = eliminate_candidates(n).unwrap();
        assert_eq!(set(t.result), set(classify_groups(SurfaceKind::Rp2, n).unwrap()), "n={n}");
    }
}

#[test]
fn mapping_class_list_is_the_center_quotient() {
    for n in 2..=1000 {
        let quotient: Vec<FiniteFamily> = classify_groups(SurfaceKind::Rp2, n).unwrap().into_iter().map(center_quotient).collect();
        assert_eq!(quotient, classify_groups(SurfaceKind::McgRp2, n).unwrap(), "n={n}");
    }
}

#[test]
fn residue_translation() {
    let rp2 = classification_rules(SurfaceKind::Rp2);
    let s2 = classification_rules(SurfaceKind::S2);
    for (r, s) in [(&rp2[2], &s2[4]), (&rp2[3], &s2[5])] {
        let halved = s.condition.halved();
        for n in 3..=1000 {
            assert_eq!(r.condition.holds(n), s.condition.holds(2 * n), "n={n} {}", r.formula());
            assert_eq!(halved.holds(n), s.condition.holds(2 * n), "n={n}");
        }
    }
    assert_eq!(s2[3].condition.halved(), Condition::residues(3, &[2]));
}

#[test]
fn gcd_facts() {
    assert_eq!(gcd_scan(3..=10_000), None);
}

#[test]
fn order_ledgers() {
    for n in 2..=8 {
        let l = order_ledger(n).unwrap();
        assert_eq!(l.a_permutation_order, n as usize);
        assert!(l.a_pow_n_pure && l.delta_moves_points);
        if n == 2 {
            assert_eq!(l.a_order, Some(8));
            assert_eq!(l.a_delta_generate, Some(true));
            assert_eq!(l.status, Status::Verified);
        } else {
            assert!(matches!(l.status, Status::PartiallyVerified { .. }));
        }
    }
}

#[test]
fn suite_at_two_and_three() {
    let r = verify_suite(2, &Budget::default()).unwrap();
    assert!(r.claims.iter().all(|c| c.status == Status::Verified && c.table_check == Some(true)));
    assert_eq!(r.exit_code(), 0, "{:#?}", r.checks);
    let r = verify_suite(3, &Budget::default()).unwrap();
    assert!(r.claims.iter().all(|c| c.status == Status::Verified));
    assert_eq!(r.hard_failures(), 0);
    assert_eq!(r.exit_code(), 2);
}

proptest! {
    #[test]
    fn halving_is_exact(modulus in 1u32..40, mask in any::<u64>(), from in 0u32..20, also in 0u32..20) {
        let residues: Vec<u32> = (0..modulus).filter(|r| mask >> r & 1 == 1).collect();
        let c = Condition { modulus, residues, from, also: vec![also] };
        let h = c.halved();
        for n in 0..200 {
            prop_assert_eq!(h.holds(n), c.holds(2 * n));
        }
    }
}
