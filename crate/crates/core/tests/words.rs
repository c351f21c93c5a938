use braidcov_core::words::{parse_word, BraidWord, Generator, Letter, Permutation};
use proptest::prelude::*;

fn letter(max: u32) -> impl Strategy<Value = Letter> {
    (0..3u8, 1..=max, any::<bool>()).prop_map(|(k, i, pos)| {
        let g = match k {
            0 => Generator::sigma(i),
            1 => Generator::rho(i),
            _ => Generator::tau(),
        };
        Letter::new(g, if pos { 1 } else { -1 })
    })
}

fn word(max: u32, len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(letter(max), 0..len).prop_map(BraidWord::from_letters)
}

/// Words valid on `n` strands: σ_1..σ_{n-1} and ρ_1..ρ_n.
fn strand_word(n: u32, len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((0..2 * n - 1, any::<bool>()), 0..len).prop_map(move |v| {
        BraidWord::from_letters(
            v.into_iter()
                .map(|(k, pos)| {
                    let g = if k < n - 1 { Generator::sigma(k + 1) } else { Generator::rho(k + 2 - n) };
                    Letter::new(g, if pos { 1 } else { -1 })
                })
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn free_reduce_is_idempotent(w in word(6, 40)) {
        let once = w.free_reduce();
        prop_assert!(once.is_freely_reduced());
        prop_assert_eq!(once.free_reduce(), once);
    }

    #[test]
    fn permutation_is_a_homomorphism((n, u, v) in (2u32..8).prop_flat_map(|n| (Just(n), strand_word(n, 30), strand_word(n, 30)))) {
        let pu = u.permutation_image(n).unwrap();
        let pv = v.permutation_image(n).unwrap();
        prop_assert_eq!(u.concat(&v).permutation_image(n).unwrap(), pv.compose(&pu));
    }

    #[test]
    fn exponent_sums_add(u in word(5, 30), v in word(5, 30)) {
        prop_assert_eq!(u.concat(&v).exponent_sums(), u.exponent_sums() + v.exponent_sums());
    }

    #[test]
    fn parse_round_trip(w in word(12, 30)) {
        prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn inverse_cancels(w in word(6, 30)) {
        prop_assert!(w.concat(&w.invert()).free_reduce().is_empty());
    }

    #[test]
    fn pure_closure_is_pure((n, w) in (2u32..7).prop_flat_map(|n| (Just(n), strand_word(n, 30)))) {
        let p = w.pure_closure(n).unwrap();
        prop_assert!(p.permutation_image(n).unwrap().is_identity());
        prop_assert_eq!(&p.letters[..w.len()], &w.letters[..]);
    }
}

#[test]
fn grammar_examples() {
    assert_eq!(parse_word("s1 s2^-1 r1").unwrap().to_string(), "s1 s2^-1 r1");
    assert!(parse_word("").unwrap().is_empty());
    assert!(parse_word("s0").is_err());
    assert!(parse_word("q1").is_err());
    assert_eq!(parse_word("r1").unwrap().permutation_image(3).unwrap(), Permutation::identity(3));
}
