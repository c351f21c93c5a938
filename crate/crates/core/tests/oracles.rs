use braidcov_core::oracles::{disc_action, sphere_action, sphere_word_problem, SphereVerdict};
use braidcov_core::presentations::{named_element, sphere_presentation, NamedElement};
use braidcov_core::rewriting::{search_identity, trace, Budget};
use braidcov_core::words::{BraidWord, Generator, Letter};
use proptest::prelude::*;

fn sigma_word(m: u32, len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..m, any::<bool>()), 0..len).prop_map(|v| {
        BraidWord::from_letters(v.into_iter().map(|(i, pos)| Letter::new(Generator::sigma(i), if pos { 1 } else { -1 })).collect())
    })
}

fn s(i: u32) -> BraidWord {
    BraidWord::single(Generator::sigma(i), 1)
}

fn artin_relators(m: u32) -> Vec<BraidWord> {
    let mut out = Vec::new();
    for i in 1..m {
        for j in i + 1..m {
            let lhs = if j == i + 1 { s(i).concat(&s(j)).concat(&s(i)) } else { s(i).concat(&s(j)) };
            let rhs = if j == i + 1 { s(j).concat(&s(i)).concat(&s(j)) } else { s(j).concat(&s(i)) };
            out.push(lhs.concat(&rhs.invert()));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn disc_action_is_a_homomorphism(u in sigma_word(6, 20), v in sigma_word(6, 20)) {
        let m = 6;
        let uv = disc_action(m, &u.concat(&v)).unwrap();
        prop_assert_eq!(uv, disc_action(m, &v).unwrap().compose(&disc_action(m, &u).unwrap()));
    }
}

#[test]
fn artin_relators_act_trivially() {
    for m in 2..=7 {
        for r in artin_relators(m) {
            assert!(disc_action(m, &r).unwrap().is_identity(), "m = {m}, {r}");
        }
    }
}

#[test]
fn full_twist_is_inner_but_not_trivial_on_the_disc() {
    for m in 3..=6 {
        let t = named_element(NamedElement::FullTwist, m).unwrap();
        assert!(!disc_action(m, &t).unwrap().is_identity());
        assert!(sphere_action(m, &t).unwrap().is_inner());
    }
}

/// Every word along a certificate over the sphere presentation has the same action class.
#[test]
fn sphere_action_is_constant_along_certificates() {
    let budget = Budget { max_expansions: 50_000, ..Budget::default() };
    let mut found = 0;
    for m in 3..=4 {
        let p = sphere_presentation(m).unwrap();
        let words = ["s1 s2 s1 s2^-1 s1^-1 s2^-1", "s1 s2 s2 s1", "s2 s1 s1 s2"];
        for text in words {
            let w: BraidWord = text.parse().unwrap();
            let w = if m == 3 { w } else { w.concat(&"s3 s2 s1 s1 s2 s3".parse().unwrap()) };
            let Some(d) = search_identity(&p, &w, &budget).found() else { continue };
            found += 1;
            let start = d.from.clone();
            for step in trace(&p, &d).unwrap() {
                let a = sphere_action(m, &step.concat(&start.invert())).unwrap();
                assert!(a.is_inner(), "m = {m}, {step}");
            }
        }
    }
    assert!(found >= 3, "only {found} certificates");
}

#[test]
fn verdicts_never_flip_with_budget() {
    let small = Budget { max_expansions: 200, ..Budget::default() };
    let large = Budget { max_expansions: 100_000, ..Budget::default() };
    for (m, text) in [(3, "s1 s2 s1 s2 s1 s2"), (3, "s1 s2 s2 s1"), (4, "s1 s2 s3 s3 s2 s1"), (4, "s1 s2 s3 s1 s2 s3 s1 s2 s3 s1 s2 s3")] {
        let w: BraidWord = text.parse().unwrap();
        let a = sphere_word_problem(m, &w, &small).unwrap().verdict;
        let b = sphere_word_problem(m, &w, &large).unwrap().verdict;
        let flip = matches!((&a, &b), (SphereVerdict::Trivial { .. }, SphereVerdict::FullTwist { .. }) | (SphereVerdict::FullTwist { .. }, SphereVerdict::Trivial { .. }));
        assert!(!flip, "{text}: {a} vs {b}");
        if a != SphereVerdict::TrivialOrFullTwist {
            assert_eq!(a, b, "{text}");
        }
    }
}
