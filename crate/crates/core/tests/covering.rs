use braidcov_core::covering::{lift_motion, psi, word_motion, Cover, GeometryConfig, LiftTable, Surface};
use braidcov_core::oracles::SphereVerdict;
use braidcov_core::presentations::{annulus_presentation, named_element, NamedElement};
use braidcov_core::rewriting::Budget;
use braidcov_core::oracles::{annulus_to_disc, disc_action, sphere_word_problem};
use braidcov_core::words::{BraidWord, Generator, Letter};
use proptest::prelude::*;

fn rp2_word(n: u32, len: usize) -> impl Strategy<Value = BraidWord> {
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

fn sigma_word(n: u32, len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..n, any::<bool>()), 0..len).prop_map(|v| {
        BraidWord::from_letters(v.into_iter().map(|(i, pos)| Letter::new(Generator::sigma(i), if pos { 1 } else { -1 })).collect())
    })
}

fn blocks_preserved(image: &BraidWord, n: u32) -> bool {
    let p = image.permutation_image(2 * n).unwrap();
    (0..2 * n as usize).all(|i| p.apply(i) / n as usize == i / n as usize)
}

fn pairs_preserved(image: &BraidWord, n: u32) -> bool {
    let p = image.permutation_image(2 * n).unwrap();
    (0..2 * n as usize).all(|i| p.apply(i) % n as usize == i % n as usize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sigma_words_keep_the_sheets(w in (2u32..=5).prop_flat_map(|n| (Just(n), sigma_word(n.max(2), 20)))) {
        let (n, w) = w;
        prop_assert!(blocks_preserved(&psi(n, &w).unwrap(), n));
    }

    #[test]
    fn pure_words_keep_the_fibres(w in (2u32..=5).prop_flat_map(|n| (Just(n), rp2_word(n, 16)))) {
        let (n, w) = w;
        let pure = w.pure_closure(n).unwrap();
        prop_assert!(pairs_preserved(&psi(n, &pure).unwrap(), n));
    }

    #[test]
    fn psi_is_a_homomorphism_on_words(n in 2u32..=4, seed in any::<u64>()) {
        let t = LiftTable::antipodal(n, &GeometryConfig::default()).unwrap();
        let mut x = seed;
        let mut next = |k: u32| { x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); ((x >> 33) % u64::from(k)) as u32 };
        let mut word = |len: usize| {
            let mut w = BraidWord::empty();
            for _ in 0..len {
                let k = next(2 * n - 1);
                let g = if k < n - 1 { Generator::sigma(k + 1) } else { Generator::rho(k + 2 - n) };
                w.push(g, if next(2) == 0 { 1 } else { -1 });
            }
            w
        };
        let (u, v) = (word(8), word(8));
        prop_assert_eq!(t.apply(&u.concat(&v)).unwrap(), t.apply(&u).unwrap().concat(&t.apply(&v).unwrap()));
    }
}

fn close(a: [f64; 3], b: [f64; 3]) -> bool {
    (0..3).all(|i| (a[i] - b[i]).abs() < 1e-9)
}

#[test]
fn lifts_project_to_the_source() {
    let cfg = GeometryConfig::default();
    for (n, text) in [(2, "r1 s1"), (3, "s1 r2^-1 s2 r3"), (4, "r4 s3 s2^-1 r1")] {
        let w: BraidWord = text.parse().unwrap();
        let m = word_motion(Surface::ProjectivePlane, n, &w, &cfg).unwrap();
        let scene = lift_motion(&m, Cover::AntipodalSphere).unwrap();
        for (frame, lifted) in m.samples.iter().zip(&scene.paths) {
            for (k, &v) in frame.iter().enumerate() {
                let neg = [-v[0], -v[1], -v[2]];
                let (a, b) = (lifted[k], lifted[k + n as usize]);
                assert!((close(a, v) && close(b, neg)) || (close(a, neg) && close(b, v)), "{text}");
            }
        }
    }
    for (d, n, text) in [(2, 2, "t1 s1"), (3, 2, "s1 t1^-1 s1"), (3, 3, "t1 s2 s1 t1")] {
        let w: BraidWord = text.parse().unwrap();
        let m = word_motion(Surface::Annulus, n, &w, &cfg).unwrap();
        let scene = lift_motion(&m, Cover::Annulus { d }).unwrap();
        for (frame, lifted) in m.samples.iter().zip(&scene.paths) {
            for (k, &z) in frame.iter().enumerate() {
                for j in 0..d as usize {
                    let l = lifted[k + j * n as usize];
                    // l^d in the complex plane.
                    let (mut re, mut im) = (1.0f64, 0.0f64);
                    for _ in 0..d {
                        (re, im) = (re * l[0] - im * l[1], re * l[1] + im * l[0]);
                    }
                    assert!((re - z[0]).abs() < 1e-9 && (im - z[1]).abs() < 1e-9, "{text}");
                }
            }
        }
    }
}

#[test]
fn full_twist_image_is_never_certified_trivial() {
    let budget = Budget::default();
    for n in 2..=3 {
        let t = named_element(NamedElement::FullTwist, n).unwrap();
        let image = psi(n, &t).unwrap().free_reduce();
        let v = sphere_word_problem(2 * n, &image, &budget).unwrap().verdict;
        assert!(!matches!(v, SphereVerdict::Trivial { .. }), "n = {n}: {v}");
    }
}

#[test]
fn annulus_lifts_respect_relators() {
    let cfg = GeometryConfig::default();
    // The one-sheeted lift reads back the oracle's algebraic embedding.
    for n in 2..=4 {
        let t = LiftTable::annulus(1, n, &cfg).unwrap();
        for g in annulus_presentation(n).unwrap().generators {
            for e in [1, -1] {
                let w = BraidWord::single(g, e);
                assert_eq!(t.apply(&w).unwrap().free_reduce(), annulus_to_disc(&w), "n = {n}, {w}");
            }
        }
    }
    for d in [2, 3] {
        for n in 2..=4 {
            let t = LiftTable::annulus(d, n, &cfg).unwrap();
            for r in &annulus_presentation(n).unwrap().relators {
                let image = t.apply(r).unwrap();
                assert!(disc_action(d * n + 1, &image).unwrap().is_identity(), "d = {d}, n = {n}, {r}");
            }
            let tau = t.apply(&"t1".parse().unwrap()).unwrap();
            assert!(!disc_action(d * n + 1, &tau).unwrap().is_identity());
        }
    }
}
