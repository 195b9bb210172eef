//! The homological representation `B₃ → SL(2,Z)` (the action of a mapping
//! class on `H₁` of the punctured torus) and what can be read off from it:
//! the first homology of the branched double cover, the link determinant and
//! the elliptic/parabolic/hyperbolic trichotomy.
//!
//! Convention: `x ↦ [[1,1],[0,1]]`, `y ↦ [[1,0],[-1,1]]`. Every other sign in
//! the crate is calibrated against this choice.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid_words::{BraidWord, Generator, Letter};
use crate::json::{bigint_number, bigint_numbers};

/// An integer matrix `[[p, q], [r, s]]` with `ps - qr = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SL2Matrix {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    s: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("matrix {0} does not have determinant 1")]
    NotUnimodular(String),
    #[error("matrix is not parabolic (trace class {0:?})")]
    NotParabolic(TraceKind),
}

impl SL2Matrix {
    pub fn new(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Result<Self, HomologyError> {
        if &p * &s - &q * &r != BigInt::one() {
            return Err(HomologyError::NotUnimodular(format!(
                "[[{p}, {q}], [{r}, {s}]]"
            )));
        }
        Ok(SL2Matrix { p, q, r, s })
    }

    pub fn from_i64(p: i64, q: i64, r: i64, s: i64) -> Result<Self, HomologyError> {
        Self::new(p.into(), q.into(), r.into(), s.into())
    }

    pub fn identity() -> Self {
        SL2Matrix {
            p: BigInt::one(),
            q: BigInt::zero(),
            r: BigInt::zero(),
            s: BigInt::one(),
        }
    }

    /// Image of a single letter.
    pub fn of_letter(letter: Letter) -> Self {
        let (p, q, r, s) = match (letter.generator, letter.is_positive()) {
            (Generator::X, true) => (1, 1, 0, 1),
            (Generator::X, false) => (1, -1, 0, 1),
            (Generator::Y, true) => (1, 0, -1, 1),
            (Generator::Y, false) => (1, 0, 1, 1),
        };
        SL2Matrix {
            p: p.into(),
            q: q.into(),
            r: r.into(),
            s: s.into(),
        }
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }

    pub fn trace(&self) -> BigInt {
        &self.p + &self.s
    }

    pub fn mul(&self, o: &SL2Matrix) -> SL2Matrix {
        SL2Matrix {
            p: &self.p * &o.p + &self.q * &o.r,
            q: &self.p * &o.q + &self.q * &o.s,
            r: &self.r * &o.p + &self.s * &o.r,
            s: &self.r * &o.q + &self.s * &o.s,
        }
    }

    pub fn inverse(&self) -> SL2Matrix {
        SL2Matrix {
            p: self.s.clone(),
            q: -&self.q,
            r: -&self.r,
            s: self.p.clone(),
        }
    }

    pub fn neg(&self) -> SL2Matrix {
        SL2Matrix {
            p: -&self.p,
            q: -&self.q,
            r: -&self.r,
            s: -&self.s,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn is_central(&self) -> bool {
        self.q.is_zero() && self.r.is_zero() && self.p == self.s
    }

    /// `self - I` as a plain integer matrix.
    pub fn minus_identity(&self) -> [[BigInt; 2]; 2] {
        [[&self.p - 1, self.q.clone()], [self.r.clone(), &self.s - 1]]
    }
}

impl fmt::Display for SL2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.p, self.q, self.r, self.s)
    }
}

/// Product of the per-letter matrices, in reading order.
pub fn image(w: &BraidWord) -> SL2Matrix {
    w.letters().iter().fold(SL2Matrix::identity(), |acc, &l| {
        acc.mul(&SL2Matrix::of_letter(l))
    })
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k`
/// with `d₁ | d₂ | …` and every `dᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "bigint_numbers")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product())
        }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    fn from_diagonal(diag: impl IntoIterator<Item = BigInt>, ncols: usize) -> Self {
        let mut torsion = Vec::new();
        let mut rank = 0;
        for d in diag {
            let d = d.abs();
            if d.is_zero() {
                continue;
            }
            rank += 1;
            if d > BigInt::one() {
                torsion.push(d);
            }
        }
        AbelianGroup {
            free_rank: ncols - rank,
            torsion,
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Cokernel of a 2×2 integer matrix, by row and column elimination.
pub fn smith_normal_form(m: &[[BigInt; 2]; 2]) -> AbelianGroup {
    let mut a = m.clone();
    // Move a nonzero entry of least absolute value to (0,0) and clear its
    // row and column; repeat until it divides everything.
    loop {
        let Some((i, j)) = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        else {
            return AbelianGroup {
                free_rank: 2,
                torsion: Vec::new(),
            };
        };
        a.swap(0, i);
        for row in a.iter_mut() {
            row.swap(0, j);
        }
        let pivot = a[0][0].clone();
        let f = a[1][0].div_floor(&pivot);
        let (r0, r1) = (a[0].clone(), &mut a[1]);
        r1[0] -= &f * &r0[0];
        r1[1] -= &f * &r0[1];
        let f = a[0][1].div_floor(&pivot);
        let c0 = [a[0][0].clone(), a[1][0].clone()];
        a[0][1] -= &f * &c0[0];
        a[1][1] -= &f * &c0[1];
        if !a[1][0].is_zero() || !a[0][1].is_zero() {
            continue;
        }
        if !a[1][1].is_zero() && !a[1][1].is_multiple_of(&a[0][0]) {
            // Fold the second diagonal entry into the first row.
            let t = a[1][1].clone();
            a[0][1] += t;
            continue;
        }
        return AbelianGroup::from_diagonal([a[0][0].clone(), a[1][1].clone()], 2);
    }
}

/// `H₁` of the branched double cover of the closure, `coker(image(w) - I)`.
pub fn h1_branched_cover(w: &BraidWord) -> AbelianGroup {
    smith_normal_form(&image(w).minus_identity())
}

/// `|det(image(w) - I)| = |2 - trace|`; zero exactly when `H₁` is infinite.
pub fn determinant(w: &BraidWord) -> BigInt {
    matrix_determinant(&image(w))
}

pub fn matrix_determinant(m: &SL2Matrix) -> BigInt {
    (BigInt::from(2) - m.trace()).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TraceKind {
    Central,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Conjugacy type together with the sign `ε` normalising the matrix.
///
/// For `|trace| ≥ 2` (including `±I`) `ε` is the sign of the trace. For
/// elliptic matrices `ε·M` has nonnegative trace; at trace 0, where that
/// does not decide, `ε` is the sign of the lower-left entry, which is an
/// `SL(2,Z)`-conjugacy invariant of elliptic elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TraceClass {
    pub kind: TraceKind,
    pub epsilon: i8,
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_negative() {
        -1
    } else {
        1
    }
}

pub fn trace_class(m: &SL2Matrix) -> TraceClass {
    let t = m.trace();
    let at = t.abs();
    let two = BigInt::from(2);
    if m.is_central() {
        return TraceClass {
            kind: TraceKind::Central,
            epsilon: sign_of(&t),
        };
    }
    if at > two {
        TraceClass {
            kind: TraceKind::Hyperbolic,
            epsilon: sign_of(&t),
        }
    } else if at == two {
        TraceClass {
            kind: TraceKind::Parabolic,
            epsilon: sign_of(&t),
        }
    } else {
        let epsilon = if t.is_zero() {
            sign_of(&m.r)
        } else {
            sign_of(&t)
        };
        TraceClass {
            kind: TraceKind::Elliptic,
            epsilon,
        }
    }
}

/// The complete `SL(2,Z)` conjugacy invariant `(ε, m)` of a parabolic
/// matrix: `ε·M` is conjugate to `image(y)^m = [[1,0],[-m,1]]`.
pub fn parabolic_invariant(m: &SL2Matrix) -> Result<(i8, BigInt), HomologyError> {
    let class = trace_class(m);
    if class.kind != TraceKind::Parabolic {
        return Err(HomologyError::NotParabolic(class.kind));
    }
    let n = if class.epsilon < 0 {
        m.neg()
    } else {
        m.clone()
    };
    // Primitive fixed vector of n from a nonzero row of n - I.
    let [[a, b], [c, d]] = n.minus_identity();
    let (v1, v2) = if !a.is_zero() || !b.is_zero() {
        (b, -a)
    } else {
        (d, -c)
    };
    let g = v1.gcd(&v2);
    let (v1, v2) = (v1 / &g, v2 / &g);
    // Complete (v, u) to a basis with det [v u] = v1*u2 - v2*u1 = 1.
    let e = v1.extended_gcd(&v2);
    let (u1, u2) = (-e.y, e.x);
    debug_assert!(e.gcd.is_one());
    let basis = SL2Matrix {
        p: v1,
        q: u1,
        r: v2,
        s: u2,
    };
    let conj = basis.inverse().mul(&n).mul(&basis);
    debug_assert!(conj.p.is_one() && conj.r.is_zero() && conj.s.is_one());
    // [[1,t],[0,1]] = image(x)^t, and x^t is conjugate to y^t.
    Ok((class.epsilon, conj.q))
}

#[derive(Serialize, Deserialize)]
struct SL2Json {
    #[serde(with = "bigint_number")]
    p: BigInt,
    #[serde(with = "bigint_number")]
    q: BigInt,
    #[serde(with = "bigint_number")]
    r: BigInt,
    #[serde(with = "bigint_number")]
    s: BigInt,
}

impl Serialize for SL2Matrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        SL2Json {
            p: self.p.clone(),
            q: self.q.clone(),
            r: self.r.clone(),
            s: self.s.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SL2Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let j = SL2Json::deserialize(de)?;
        SL2Matrix::new(j.p, j.q, j.r, j.s).map_err(serde::de::Error::custom)
    }
}


#[cfg(test)]
mod properties {
    use super::*;
    use crate::braid_words::strategies::word;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn image_is_unimodular(w in word(60)) {
            let m = image(&w);
            let [p, q, r, s] = m.entries();
            prop_assert_eq!(p * s - q * r, BigInt::one());
        }

        #[test]
        fn cover_homology_is_conjugation_invariant(u in word(20), w in word(20)) {
            prop_assert_eq!(h1_branched_cover(&u.conjugate(&w)), h1_branched_cover(&w));
        }

        #[test]
        fn determinant_is_mirror_symmetric(w in word(40)) {
            prop_assert_eq!(determinant(&w.inverse()), determinant(&w));
        }

        #[test]
        fn homology_order_is_determinant(w in word(40)) {
            let h = h1_branched_cover(&w);
            prop_assert_eq!(h.order().unwrap_or_default(), determinant(&w));
        }

        #[test]
        fn smith_form_matches_determinant(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let g = smith_normal_form(&[[a.into(), b.into()], [c.into(), d.into()]]);
            let det = BigInt::from(a * d - b * c).abs();
            prop_assert_eq!(g.order().unwrap_or_default(), det);
            for pair in g.torsion.windows(2) {
                prop_assert!(pair[1].is_multiple_of(&pair[0]));
            }
        }
    }

    #[test]
    fn parabolic_invariant_of_powers_of_y() {
        for m in (-20i64..=20).filter(|&m| m != 0) {
            let w = BraidWord::parse(&format!("y^{m}")).unwrap();
            assert_eq!(
                parabolic_invariant(&image(&w)).unwrap(),
                (1, BigInt::from(m))
            );
        }
    }
}
