#![allow(dead_code)]

use braid3::braid_words::{BraidWord, Letter};
use braid3::murasugi::MurasugiForm;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const LETTERS: [Letter; 4] = [Letter::X, Letter::Y, Letter::X_INV, Letter::Y_INV];

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Uniform random word of length `0..=max_len`.
pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    BraidWord::new((0..len).map(|_| LETTERS[rng.gen_range(0..4)]).collect())
}

/// All tuples of length `1..=max_n` with entries in `0..=max_a`, some entry
/// positive, kept only in canonical rotation.
pub fn family1_tuples(max_n: usize, max_a: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut t = vec![0u64; n];
        loop {
            if t.iter().any(|&a| a > 0)
                && MurasugiForm::family1(0, t.clone())
                    .map(|f| f == MurasugiForm::Family1 { d: 0, a: t.clone() })
                    .unwrap_or(false)
            {
                out.push(t.clone());
            }
            let mut i = 0;
            while i < n && t[i] == max_a {
                t[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            t[i] += 1;
        }
    }
    out
}

/// Every normal form with `d` in `ds`, Family1 tuples up to `(max_n, max_a)`,
/// Family2 `|m| <= max_m`, and all Family3 forms.
pub fn forms(
    ds: std::ops::RangeInclusive<i64>,
    max_n: usize,
    max_a: u64,
    max_m: i64,
) -> Vec<MurasugiForm> {
    let tuples = family1_tuples(max_n, max_a);
    let mut out = Vec::new();
    for d in ds {
        out.extend(
            tuples
                .iter()
                .map(|a| MurasugiForm::Family1 { d, a: a.clone() }),
        );
        out.extend((-max_m..=max_m).map(|m| MurasugiForm::Family2 { d, m }));
        out.extend((-3..=-1).map(|m| MurasugiForm::Family3 { d, m }));
    }
    out
}
