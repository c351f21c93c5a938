//! Seeded random words.

use braidcov_core::words::{BraidWord, Generator, Letter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform letters over `alphabet` and both exponents, freely reduced as drawn.
pub fn random_word(rng: &mut impl Rng, alphabet: &[Generator], len: usize) -> BraidWord {
    let mut w = BraidWord::empty();
    while w.len() < len {
        let g = alphabet[rng.gen_range(0..alphabet.len())];
        let l = Letter::new(g, if rng.gen_bool(0.5) { 1 } else { -1 });
        if w.letters.last().is_some_and(|&last| last.cancels(l)) {
            continue;
        }
        w.letters.push(l);
    }
    w
}

pub fn sigmas(n: u32) -> Vec<Generator> {
    (1..n).map(Generator::sigma).collect()
}

/// σ_1..σ_{n−1}, ρ_1..ρ_n.
pub fn rp2_alphabet(n: u32) -> Vec<Generator> {
    let mut a = sigmas(n);
    a.extend((1..=n).map(Generator::rho));
    a
}

/// τ, σ_1..σ_{n−1}.
pub fn annulus_alphabet(n: u32) -> Vec<Generator> {
    let mut a = vec![Generator::tau()];
    a.extend(sigmas(n));
    a
}
