use braidcov_core::presentations::*;
use braidcov_core::rewriting::*;
use braidcov_core::enumeration::materialize;
use braidcov_core::words::*;
use proptest::prelude::*;

fn w(s: &str) -> BraidWord {
    parse_word(s).unwrap()
}

#[test]
fn small_searches() {
    let p = van_buskirk(2).unwrap();
    for word in ["s1^-1 r1 s1 r2", "s1^-1 r1 s1^-1 r1 r1^-1 r2^-1", "r1 r1 s1^-1 s1^-1"] {
        let out = search_identity(&p, &w(word), &Budget::default());
        let stats = out.stats();
        let d = out.found().unwrap_or_else(|| panic!("{word}: {stats:?}"));
        assert_eq!(verify_derivation(&p, &d), Ok(true), "{word}");
    }
}

#[test]
fn claim_set_shape() {
    for n in 2..=6u32 {
        let claims = paper_claims(n);
        let cycles = 4 * n + if n >= 3 { 2 * (n - 1) } else { 0 };
        assert_eq!(claims.len() as u32, n + 1 + 2 + n + cycles + 3, "n={n}");
        for c in &claims {
            c.from.check(n).unwrap();
            c.to.check(n).unwrap();
        }
    }
}

#[test]
fn seeded_claims_replay() {
    for n in 2..=5u32 {
        let p = van_buskirk(n).unwrap();
        let certs = certify_claims(n, SearchMode::Seeded, &Budget::default());
        assert_eq!(certs.len(), paper_claims(n).len());
        for c in &certs {
            let d = c.derivation.as_ref().unwrap_or_else(|| panic!("n={n} {} uncertified", c.claim.label));
            assert_eq!((&d.from, &d.to), (&c.claim.from, &c.claim.to), "{}", c.claim.label);
            assert_eq!(verify_derivation(&p, d), Ok(true), "n={n} {}", c.claim.label);
        }
    }
}

#[test]
fn lemma_plan_complete() {
    for n in 2..=5u32 {
        let plan = lemma_plan(n, &Budget::default());
        let failed: Vec<&str> = plan.iter().filter(|r| !r.proven).map(|r| r.label.as_str()).collect();
        assert!(failed.is_empty(), "n={n}: {failed:?}");
    }
}

#[test]
fn unseeded_small_claims() {
    let certs = certify_claims(2, SearchMode::Unseeded, &Budget::default());
    let p = van_buskirk(2).unwrap();
    for c in &certs {
        if let Some(d) = &c.derivation {
            assert_eq!(verify_derivation(&p, d), Ok(true), "{}", c.claim.label);
        }
    }
    assert!(certs.iter().filter(|c| c.is_certified()).count() >= certs.len() / 2);
}

fn n2_word(len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((0..3u8, any::<bool>()), 0..len).prop_map(|v| {
        BraidWord::from_letters(
            v.into_iter()
                .map(|(k, pos)| {
                    let g = if k == 0 { Generator::sigma(1) } else { Generator::rho(u32::from(k)) };
                    Letter::new(g, if pos { 1 } else { -1 })
                })
                .collect(),
        )
    })
}

/// Product of conjugates of relators: trivial by construction.
fn n2_trivial() -> impl Strategy<Value = BraidWord> {
    let p = van_buskirk(2).unwrap();
    prop::collection::vec((0..p.relators.len(), any::<bool>(), n2_word(3)), 1..3).prop_map(move |parts| {
        let mut w = BraidWord::empty();
        for (i, inv, c) in parts {
            let r = if inv { p.relators[i].invert() } else { p.relators[i].clone() };
            w.extend(&c.concat(&r).concat(&c.invert()));
        }
        w
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn search_results_replay(w in prop_oneof![n2_trivial(), n2_word(10)]) {
        let p = van_buskirk(2).unwrap();
        let table = materialize(&p, 100).unwrap();
        let budget = Budget { max_expansions: 20_000, ..Budget::default() };
        if let Some(d) = search_identity(&p, &w, &budget).found() {
            prop_assert_eq!(verify_derivation(&p, &d), Ok(true));
            prop_assert_eq!(trace(&p, &d).unwrap(), trace(&p, &d).unwrap());
            // Soundness in the exhaustive table.
            prop_assert_eq!(table.element_of(&w), Some(0));
        }
    }
}
