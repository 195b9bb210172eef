//! Conjugacy classification of 3-braids into the three Murasugi families
//!
//! ```text
//! Family1  h^d · x y^-a₁ · x y^-a₂ ⋯ x y^-aₙ   (aᵢ ≥ 0, some aⱼ ≥ 1)
//! Family2  h^d · y^m
//! Family3  h^d · x^m y^-1                      (m ∈ {-1,-2,-3})
//! ```
//!
//! The route goes through `PSL(2,Z) ≅ Z/2 * Z/3`. The centre of `B₃` is
//! generated by `h` and `B₃/⟨h⟩ ≅ PSL(2,Z)`, so the cyclically reduced
//! free-product word of the image together with the exponent sum is a complete
//! conjugacy invariant. The cyclic word decides the family and its tail
//! parameters; the exponent sum then pins down `d`.
//!
//! With `S = [[0,-1],[1,0]]` and `U = S·image(x) = [[0,-1],[1,1]]` the
//! dictionary is `x ↦ S U`, `y ↦ U S` (up to sign). The two alternating
//! syllables are `R = S U ≡ image(x)` and `L = S U² ≡ image(y)^-1`, so a
//! positive cyclic word in `R`, `L` is read off directly as Family1 blocks:
//! every `R` opens a block and the run of `L`s after it is that block's `aᵢ`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid_words::{BraidWord, Generator, Letter};
use crate::homology_rep::{self, trace_class, TraceKind};

/// A generator of `Z/2 * Z/3`: `S` of order 2, `U` of order 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Syllable {
    S,
    U,
    U2,
}

impl Syllable {
    fn u_power(self) -> Option<u8> {
        match self {
            Syllable::S => None,
            Syllable::U => Some(1),
            Syllable::U2 => Some(2),
        }
    }

    fn from_u_power(k: u8) -> Option<Syllable> {
        match k % 3 {
            0 => None,
            1 => Some(Syllable::U),
            _ => Some(Syllable::U2),
        }
    }
}

/// Letter-level dictionary into `Z/2 * Z/3`.
pub fn dictionary(letter: Letter) -> [Syllable; 2] {
    match (letter.generator, letter.is_positive()) {
        (Generator::X, true) => [Syllable::S, Syllable::U],
        (Generator::X, false) => [Syllable::U2, Syllable::S],
        (Generator::Y, true) => [Syllable::U, Syllable::S],
        (Generator::Y, false) => [Syllable::S, Syllable::U2],
    }
}

/// A cyclically reduced alternating word in `S` and `U^{±1}`.
///
/// Either empty, a single syllable, or of even length alternating between
/// `S` and a power of `U`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeProductWord {
    syllables: Vec<Syllable>,
}

/// Positive letters of the `SL(2,Z)` monoid generated by `image(x)` and `image(y)^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RL {
    R,
    L,
}

impl FreeProductWord {
    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Lexicographically least rotation, the representative of the cyclic class.
    pub fn cyclic_class(&self) -> Vec<Syllable> {
        least_rotation(&self.syllables)
    }

    pub fn is_cyclically_conjugate(&self, other: &FreeProductWord) -> bool {
        self.cyclic_class() == other.cyclic_class()
    }

    /// Read an alternating word of length ≥ 2 as a cyclic word in `R = S U`
    /// and `L = S U²`, rotated to start at an `S`.
    pub fn rl_word(&self) -> Option<Vec<RL>> {
        if self.syllables.len() < 2 {
            return None;
        }
        let start = self.syllables.iter().position(|&s| s == Syllable::S)?;
        let mut rotated = self.syllables.clone();
        rotated.rotate_left(start);
        rotated
            .chunks(2)
            .map(|pair| match pair {
                [Syllable::S, Syllable::U] => Some(RL::R),
                [Syllable::S, Syllable::U2] => Some(RL::L),
                _ => None,
            })
            .collect()
    }

    fn push(out: &mut Vec<Syllable>, s: Syllable) {
        match (out.last().copied(), s) {
            (Some(Syllable::S), Syllable::S) => {
                out.pop();
            }
            (Some(last), s) if last != Syllable::S && s != Syllable::S => {
                out.pop();
                let k = last.u_power().unwrap() + s.u_power().unwrap();
                if let Some(merged) = Syllable::from_u_power(k) {
                    out.push(merged);
                }
            }
            _ => out.push(s),
        }
    }

    fn cyclically_reduce(mut v: Vec<Syllable>) -> Vec<Syllable> {
        while v.len() >= 2 {
            let first = v[0];
            let last = *v.last().unwrap();
            match (first, last) {
                (Syllable::S, Syllable::S) => {
                    v.pop();
                    v.remove(0);
                }
                (a, b) if a != Syllable::S && b != Syllable::S => {
                    // Conjugate the last syllable over to the front.
                    v.pop();
                    let k = a.u_power().unwrap() + b.u_power().unwrap();
                    match Syllable::from_u_power(k) {
                        Some(merged) => v[0] = merged,
                        None => {
                            v.remove(0);
                        }
                    }
                }
                _ => break,
            }
        }
        v
    }
}

impl fmt::Display for FreeProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<&str> = self
            .syllables
            .iter()
            .map(|s| match s {
                Syllable::S => "S",
                Syllable::U => "U",
                Syllable::U2 => "U^2",
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Image of `w` in `PSL(2,Z)` as a cyclically reduced free-product word.
pub fn psl2_normal_form(w: &BraidWord) -> FreeProductWord {
    let mut out = Vec::with_capacity(2 * w.len());
    for &l in w.letters() {
        for s in dictionary(l) {
            FreeProductWord::push(&mut out, s);
        }
    }
    FreeProductWord {
        syllables: FreeProductWord::cyclically_reduce(out),
    }
}

fn least_rotation<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let n = v.len();
    let mut best = 0;
    for k in 1..n {
        let cand = v[k..].iter().chain(&v[..k]);
        let cur = v[best..].iter().chain(&v[..best]);
        if cand.cmp(cur) == std::cmp::Ordering::Less {
            best = k;
        }
    }
    let mut out = v.to_vec();
    out.rotate_left(best);
    out
}

/// Murasugi normal form of a conjugacy class in `B₃`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum MurasugiForm {
    /// `h^d · x y^-a₁ ⋯ x y^-aₙ`, tuple stored as its least cyclic rotation.
    #[serde(rename = "1")]
    Family1 { d: i64, a: Vec<u64> },
    /// `h^d · y^m`.
    #[serde(rename = "2")]
    Family2 { d: i64, m: i64 },
    /// `h^d · x^m y^-1`, `m ∈ {-1,-2,-3}`.
    #[serde(rename = "3")]
    Family3 { d: i64, m: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("internal inconsistency while classifying `{word}`: {reason}")]
    InternalInconsistency { word: String, reason: String },
    #[error("invalid normal form {form}: {reason}")]
    InvalidForm { form: String, reason: String },
}

impl MurasugiForm {
    /// Family1 form with the tuple rotated into canonical position.
    pub fn family1(d: i64, a: Vec<u64>) -> Result<Self, FormError> {
        let f = MurasugiForm::Family1 {
            d,
            a: least_rotation(&a),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn family2(d: i64, m: i64) -> Self {
        MurasugiForm::Family2 { d, m }
    }

    pub fn family3(d: i64, m: i64) -> Result<Self, FormError> {
        let f = MurasugiForm::Family3 { d, m };
        f.validate()?;
        Ok(f)
    }

    pub fn d(&self) -> i64 {
        match self {
            MurasugiForm::Family1 { d, .. }
            | MurasugiForm::Family2 { d, .. }
            | MurasugiForm::Family3 { d, .. } => *d,
        }
    }

    pub fn family(&self) -> u8 {
        match self {
            MurasugiForm::Family1 { .. } => 1,
            MurasugiForm::Family2 { .. } => 2,
            MurasugiForm::Family3 { .. } => 3,
        }
    }

    pub fn validate(&self) -> Result<(), FormError> {
        let invalid = |reason: &str| {
            Err(FormError::InvalidForm {
                form: self.to_string(),
                reason: reason.into(),
            })
        };
        match self {
            MurasugiForm::Family1 { a, .. } => {
                if a.is_empty() {
                    return invalid("Family1 needs at least one block");
                }
                if a.iter().all(|&ai| ai == 0) {
                    return invalid("Family1 needs some a_j >= 1");
                }
                if *a != least_rotation(a) {
                    return invalid("Family1 tuple is not its least cyclic rotation");
                }
                Ok(())
            }
            MurasugiForm::Family2 { .. } => Ok(()),
            MurasugiForm::Family3 { m, .. } => {
                if !(-3..=-1).contains(m) {
                    return invalid("Family3 needs m in {-1,-2,-3}");
                }
                Ok(())
            }
        }
    }

    /// Exponent sum of the representative word.
    pub fn exponent_sum(&self) -> i64 {
        match self {
            MurasugiForm::Family1 { d, a } => 6 * d + a.len() as i64 - a.iter().sum::<u64>() as i64,
            MurasugiForm::Family2 { d, m } => 6 * d + m,
            MurasugiForm::Family3 { d, m } => 6 * d + m - 1,
        }
    }
}

impl fmt::Display for MurasugiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MurasugiForm::Family1 { d, a } => {
                let a: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                write!(f, "Family1{{d={d}, a=({})}}", a.join(","))
            }
            MurasugiForm::Family2 { d, m } => write!(f, "Family2{{d={d}, m={m}}}"),
            MurasugiForm::Family3 { d, m } => write!(f, "Family3{{d={d}, m={m}}}"),
        }
    }
}

fn exact_d(word: &BraidWord, numerator: i64) -> Result<i64, FormError> {
    if numerator.rem_euclid(6) != 0 {
        return Err(FormError::InternalInconsistency {
            word: word.to_string(),
            reason: format!("exponent sum leaves non-integral d = {numerator}/6"),
        });
    }
    Ok(numerator / 6)
}

fn parity_sign(d: i64) -> i8 {
    if d.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Decide the Murasugi family and parameters of `w`.
pub fn classify(w: &BraidWord) -> Result<MurasugiForm, FormError> {
    let fp = psl2_normal_form(w);
    let matrix = homology_rep::image(w);
    let class = trace_class(&matrix);
    let e = w.exponent_sum();
    let inconsistent = |reason: String| FormError::InternalInconsistency {
        word: w.to_string(),
        reason,
    };
    let expect_kind = |kind: TraceKind| {
        if class.kind == kind {
            Ok(())
        } else {
            Err(inconsistent(format!(
                "free-product word {fp} but trace class {:?}",
                class.kind
            )))
        }
    };
    let check_sign = |d: i64, model_sign: i8| {
        if class.epsilon == parity_sign(d) * model_sign {
            Ok(())
        } else {
            Err(inconsistent(format!(
                "sign {} disagrees with (-1)^{d}",
                class.epsilon
            )))
        }
    };

    let form = match fp.syllables() {
        [] => {
            expect_kind(TraceKind::Central)?;
            let d = exact_d(w, e)?;
            check_sign(d, 1)?;
            MurasugiForm::Family2 { d, m: 0 }
        }
        [single] => {
            expect_kind(TraceKind::Elliptic)?;
            // e = 6d + m - 1, and m - 1 ∈ {-2,-3,-4} are distinct mod 6.
            let m = match e.rem_euclid(6) {
                4 => -1,
                3 => -2,
                2 => -3,
                r => {
                    return Err(inconsistent(format!(
                        "elliptic class with exponent sum ≡ {r} mod 6"
                    )))
                }
            };
            let expected = match m {
                -1 => Syllable::U,
                -2 => Syllable::S,
                _ => Syllable::U2,
            };
            if *single != expected {
                return Err(inconsistent(format!(
                    "syllable {single:?} does not match m = {m}"
                )));
            }
            let d = exact_d(w, e - m + 1)?;
            // Model matrix h^d x^m y^-1 has trace (-1)^d (2+m) and lower-left (-1)^d.
            check_sign(d, if m == -3 { -1 } else { 1 })?;
            MurasugiForm::Family3 { d, m }
        }
        _ => {
            let rl = fp
                .rl_word()
                .ok_or_else(|| inconsistent(format!("non-alternating word {fp}")))?;
            let r_count = rl.iter().filter(|&&c| c == RL::R).count();
            if r_count == 0 || r_count == rl.len() {
                expect_kind(TraceKind::Parabolic)?;
                let (eps, m) = homology_rep::parabolic_invariant(&matrix)
                    .map_err(|err| inconsistent(format!("parabolic invariant failed: {err}")))?;
                let m = m
                    .to_i64()
                    .ok_or_else(|| inconsistent("parabolic invariant out of range".into()))?;
                let expected = if r_count == 0 {
                    -(rl.len() as i64)
                } else {
                    rl.len() as i64
                };
                if m != expected {
                    return Err(inconsistent(format!(
                        "parabolic invariant {m} but free-product word {fp}"
                    )));
                }
                let d = exact_d(w, e - m)?;
                if eps != parity_sign(d) {
                    return Err(inconsistent(format!("sign {eps} disagrees with (-1)^{d}")));
                }
                MurasugiForm::Family2 { d, m }
            } else {
                expect_kind(TraceKind::Hyperbolic)?;
                let start = rl.iter().position(|&c| c == RL::R).unwrap();
                let mut blocks: Vec<u64> = Vec::new();
                for c in rl[start..].iter().chain(&rl[..start]) {
                    match c {
                        RL::R => blocks.push(0),
                        RL::L => *blocks.last_mut().unwrap() += 1,
                    }
                }
                let n = blocks.len() as i64;
                let total: u64 = blocks.iter().sum();
                let d = exact_d(w, e - n + total as i64)?;
                check_sign(d, 1)?;
                MurasugiForm::Family1 {
                    d,
                    a: least_rotation(&blocks),
                }
            }
        }
    };
    debug_assert_eq!(form.exponent_sum(), e);
    Ok(form)
}

/// Representative word: `h^d` as `(x y)^{3d}` followed by the family tail.
pub fn canonical_word(f: &MurasugiForm) -> Result<BraidWord, FormError> {
    f.validate()?;
    let xy = BraidWord::new(vec![Letter::X, Letter::Y]);
    let mut letters = xy.pow(3 * f.d()).letters().to_vec();
    match f {
        MurasugiForm::Family1 { a, .. } => {
            for &ai in a {
                letters.push(Letter::X);
                letters.extend(std::iter::repeat_n(Letter::Y_INV, ai as usize));
            }
        }
        MurasugiForm::Family2 { m, .. } => {
            let l = if *m >= 0 { Letter::Y } else { Letter::Y_INV };
            letters.extend(std::iter::repeat_n(l, m.unsigned_abs() as usize));
        }
        MurasugiForm::Family3 { m, .. } => {
            letters.extend(std::iter::repeat_n(
                Letter::X_INV,
                m.unsigned_abs() as usize,
            ));
            letters.push(Letter::Y_INV);
        }
    }
    Ok(BraidWord::new(letters))
}

/// Whether two words are conjugate in `B₃`.
pub fn is_conjugate(w1: &BraidWord, w2: &BraidWord) -> Result<bool, FormError> {
    Ok(classify(w1)? == classify(w2)?)
}

/// Normal form of the inverse class, `classify(canonical_word(f)⁻¹)`.
pub fn inverse_form(f: &MurasugiForm) -> Result<MurasugiForm, FormError> {
    classify(&canonical_word(f)?.inverse())
}

/// `|2 - trace|` of the model matrix, i.e. the closure determinant.
pub fn form_determinant(f: &MurasugiForm) -> Result<BigInt, FormError> {
    Ok(homology_rep::determinant(&canonical_word(f)?))
}

/// True when the branched double cover has `b₁ > 0`.
pub fn has_positive_b1(f: &MurasugiForm) -> bool {
    // Only h^{2k} y^m has trace 2.
    matches!(f, MurasugiForm::Family2 { d, .. } if d.rem_euclid(2) == 0)
}

impl FreeProductWord {
    #[cfg(test)]
    fn from_syllables(syllables: Vec<Syllable>) -> Self {
        FreeProductWord { syllables }
    }
}
