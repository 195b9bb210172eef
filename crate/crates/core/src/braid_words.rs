//! Words in the generators `x = σ₁` and `y = σ₂` of the three-strand braid
//! group, which is also the mapping class group of the once-punctured torus
//! (Dehn twists about two dual curves).
//!
//! Words are plain sequences of signed letters. Nothing here knows about the
//! braid relation; that lives in the homological representation and the
//! normal-form classifier.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the two standard generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    /// `x`, also spelled `s1`.
    X,
    /// `y`, also spelled `s2`.
    Y,
}

impl Generator {
    /// Braid column: 1 for `x` (strands 1,2), 2 for `y` (strands 2,3).
    pub fn column(self) -> usize {
        match self {
            Generator::X => 1,
            Generator::Y => 2,
        }
    }
}

/// A generator with an exponent of `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: Generator,
    positive: bool,
}

impl Letter {
    pub const X: Letter = Letter {
        generator: Generator::X,
        positive: true,
    };
    pub const Y: Letter = Letter {
        generator: Generator::Y,
        positive: true,
    };
    pub const X_INV: Letter = Letter {
        generator: Generator::X,
        positive: false,
    };
    pub const Y_INV: Letter = Letter {
        generator: Generator::Y,
        positive: false,
    };

    pub fn new(generator: Generator, sign: i8) -> Self {
        assert!(
            sign == 1 || sign == -1,
            "letter sign must be +1 or -1, got {sign}"
        );
        Letter {
            generator,
            positive: sign > 0,
        }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.generator {
            Generator::X => "x",
            Generator::Y => "y",
        };
        if self.positive {
            f.write_str(g)
        } else {
            write!(f, "{g}^-1")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown token `{token}` at token {position}")]
    UnknownToken { token: String, position: usize },
    #[error("malformed exponent in `{token}` at token {position}")]
    MalformedExponent { token: String, position: usize },
}

impl ParseError {
    /// 1-based index of the offending whitespace-separated token.
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnknownToken { position, .. }
            | ParseError::MalformedExponent { position, .. } => *position,
        }
    }
}

// Exponents are expanded letter by letter, so anything beyond this is refused
// rather than allocated.
const MAX_EXPONENT: u64 = 1 << 24;

/// A finite word in `x^{±1}`, `y^{±1}`; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BraidWord { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Parse the whitespace-separated token grammar
    /// `base ('^' int)?` with `base ∈ {x, y, s1, s2, h}`.
    ///
    /// `h` expands to the full twist `x y x y x y`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut letters = Vec::new();
        for (idx, token) in text.split_whitespace().enumerate() {
            let position = idx + 1;
            let (base, exponent) = match token.split_once('^') {
                Some((base, exp)) => (base, Some(exp)),
                None => (token, None),
            };
            let unit: &[Letter] = match base {
                "x" | "s1" => &[Letter::X],
                "y" | "s2" => &[Letter::Y],
                "h" => &[
                    Letter::X,
                    Letter::Y,
                    Letter::X,
                    Letter::Y,
                    Letter::X,
                    Letter::Y,
                ],
                _ => {
                    return Err(ParseError::UnknownToken {
                        token: token.to_string(),
                        position,
                    });
                }
            };
            let k = match exponent {
                None => 1i64,
                Some(exp) => parse_exponent(exp).ok_or_else(|| ParseError::MalformedExponent {
                    token: token.to_string(),
                    position,
                })?,
            };
            let reps = k.unsigned_abs() as usize;
            if k >= 0 {
                for _ in 0..reps {
                    letters.extend_from_slice(unit);
                }
            } else {
                for _ in 0..reps {
                    letters.extend(unit.iter().rev().map(|l| l.inverse()));
                }
            }
        }
        Ok(BraidWord { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of the letter signs.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    /// `self · w · self⁻¹`.
    pub fn conjugate(&self, w: &BraidWord) -> Self {
        self.concat(w).concat(&self.inverse())
    }

    /// `self` repeated `k` times; negative `k` repeats the inverse.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { letters }
    }

    /// Cancel adjacent `g g⁻¹` pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { letters: out }
    }

    /// Cyclic rotation moving the first `k mod len` letters to the end.
    pub fn rotate(&self, k: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let mut letters = self.letters.clone();
        letters.rotate_left(k % self.letters.len());
        BraidWord { letters }
    }

    /// Image in the symmetric group, `x ↦ (1 2)`, `y ↦ (2 3)`.
    pub fn permutation(&self) -> Perm3 {
        self.letters.iter().fold(Perm3::identity(), |acc, l| {
            acc.compose(&Perm3::of_generator(l.generator))
        })
    }

    /// Number of components of the closure.
    pub fn components(&self) -> usize {
        self.permutation().cycle_count()
    }
}

fn parse_exponent(s: &str) -> Option<i64> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let magnitude: u64 = digits.parse().ok()?;
    if magnitude > MAX_EXPONENT {
        return None;
    }
    let k = magnitude as i64;
    Some(if s.starts_with('-') { -k } else { k })
}

impl fmt::Display for BraidWord {
    /// Run-length form in the input grammar, e.g. `x y^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64 * l.sign();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let g = match l.generator {
                Generator::X => "x",
                Generator::Y => "y",
            };
            if run == 1 {
                f.write_str(g)?;
            } else {
                write!(f, "{g}^{run}")?;
            }
            i = j;
        }
        Ok(())
    }
}

impl std::str::FromStr for BraidWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BraidWord::parse(s)
    }
}

/// A permutation of the three strands, stored as the images of `0, 1, 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm3([u8; 3]);

impl Perm3 {
    pub fn identity() -> Self {
        Perm3([0, 1, 2])
    }

    /// Build from 0-based images; `None` unless it is a bijection.
    pub fn from_images(images: [u8; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &i in &images {
            if i > 2 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm3(images))
    }

    pub fn of_generator(g: Generator) -> Self {
        match g {
            Generator::X => Perm3([1, 0, 2]),
            Generator::Y => Perm3([0, 2, 1]),
        }
    }

    pub fn images(&self) -> [u8; 3] {
        self.0
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm3) -> Self {
        Perm3([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
        ])
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = [false; 3];
        let mut cycles = 0;
        for start in 0..3 {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
            }
        }
        cycles
    }
}


#[cfg(test)]
pub(crate) mod strategies {
    use super::*;
    use proptest::prelude::*;

    pub fn letter() -> impl Strategy<Value = Letter> {
        prop_oneof![
            Just(Letter::X),
            Just(Letter::Y),
            Just(Letter::X_INV),
            Just(Letter::Y_INV)
        ]
    }

    pub fn word(max_len: usize) -> impl Strategy<Value = BraidWord> {
        proptest::collection::vec(letter(), 0..=max_len).prop_map(BraidWord::new)
    }
}

#[cfg(test)]
mod properties {
    use super::strategies::word;
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn free_reduce_is_idempotent(w in word(40)) {
            let r = w.free_reduce();
            prop_assert_eq!(r.free_reduce(), r.clone());
            prop_assert_eq!(r.exponent_sum(), w.exponent_sum());
        }

        #[test]
        fn conjugation_preserves_exponent_sum_and_components(u in word(20), w in word(20)) {
            let c = u.conjugate(&w);
            prop_assert_eq!(c.exponent_sum(), w.exponent_sum());
            prop_assert_eq!(c.components(), w.components());
            prop_assert_eq!(w.inverse().exponent_sum(), -w.exponent_sum());
        }

        #[test]
        fn permutation_is_a_homomorphism(u in word(20), w in word(20)) {
            prop_assert_eq!(u.concat(&w).permutation(), u.permutation().compose(&w.permutation()));
        }

        #[test]
        fn display_parses_back(w in word(30)) {
            prop_assert_eq!(BraidWord::parse(&w.to_string()).unwrap(), w);
        }
    }
}
