//! Seifert matrix of a closed 3-braid, built from the diagram alone.
//!
//! The surface is three stacked disks joined by one half-twisted band per
//! crossing. In each column, consecutive bands `p < q` bound a loop running
//! up one band and down the next; a column with `k` bands contributes
//! `k - 1` loops, giving `c - 2` generators for a reduced word of length `c`.
//! This is independent of the `SL(2,Z)` route and is used to cross-check it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid_words::BraidWord;
use crate::json::opt_bigint_number;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("closure is split: column {column} has no crossings after free reduction")]
    SplitClosure { column: usize },
}

/// One homology generator: the loop through bands `start` and `end` of a column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Loop {
    pub column: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeifertMatrix {
    pub generators: Vec<Loop>,
    /// `V[i][j] = lk(γᵢ, γⱼ⁺)`.
    pub entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn size(&self) -> usize {
        self.generators.len()
    }

    /// `V + Vᵀ`.
    pub fn symmetrized(&self) -> Vec<Vec<BigInt>> {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigInt::from(self.entries[i][j] + self.entries[j][i]))
                    .collect()
            })
            .collect()
    }

    /// `V - Vᵀ`, the intersection form on the surface.
    pub fn antisymmetrized(&self) -> Vec<Vec<BigInt>> {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigInt::from(self.entries[i][j] - self.entries[j][i]))
                    .collect()
            })
            .collect()
    }
}

pub fn seifert_matrix(w: &BraidWord) -> Result<SeifertMatrix, OracleError> {
    let word = w.free_reduce();
    let letters = word.letters();
    let mut bands: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (pos, l) in letters.iter().enumerate() {
        bands[l.generator.column() - 1].push(pos);
    }
    for (i, b) in bands.iter().enumerate() {
        if b.is_empty() {
            return Err(OracleError::SplitClosure { column: i + 1 });
        }
    }
    let generators: Vec<Loop> = bands
        .iter()
        .enumerate()
        .flat_map(|(i, b)| {
            b.windows(2).map(move |p| Loop {
                column: i + 1,
                start: p[0],
                end: p[1],
            })
        })
        .collect();
    let sign = |pos: usize| letters[pos].sign();
    let n = generators.len();
    let mut v = vec![vec![0i64; n]; n];
    for (i, g) in generators.iter().enumerate() {
        v[i][i] = -(sign(g.start) + sign(g.end)) / 2;
        for (j, h) in generators.iter().enumerate() {
            if i == j {
                continue;
            }
            if g.column == h.column {
                // Neighbouring loops share a band; only one push-off direction links.
                if g.end == h.start {
                    let s = sign(g.end);
                    if s > 0 {
                        v[i][j] = 1;
                    } else {
                        v[j][i] = -1;
                    }
                }
            } else if g.column == 1 {
                // Loops in adjacent columns cross on the middle disk exactly
                // when their band positions interleave.
                if g.start < h.start && h.start < g.end && g.end < h.end {
                    v[i][j] = -1;
                } else if h.start < g.start && g.start < h.end && h.end < g.end {
                    // The other interleaving crosses with the opposite orientation.
                    v[i][j] = 1;
                }
            }
        }
    }
    Ok(SeifertMatrix {
        generators,
        entries: v,
    })
}

/// Signature of `V + Vᵀ`.
pub fn sym_signature(v: &SeifertMatrix) -> i64 {
    symmetric_signature(&v.symmetrized())
}

/// Signature of a symmetric integer matrix by exact congruence diagonalization.
pub fn symmetric_signature(m: &[Vec<BigInt>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut sig = 0i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&p| !a[p][p].is_zero()) {
                a.swap(k, p);
                for row in a.iter_mut() {
                    row.swap(k, p);
                }
            } else if let Some(p) = (k + 1..n).find(|&p| !a[k][p].is_zero()) {
                // Diagonal block vanishes: replace e_k by e_k + e_p, giving 2 a[k][p] on the diagonal.
                let src = a[p].clone();
                for (dst, t) in a[k].iter_mut().zip(src) {
                    *dst += t;
                }
                for row in a.iter_mut() {
                    let t = row[p].clone();
                    row[k] += t;
                }
            } else {
                continue;
            }
        }
        let pivot = a[k][k].clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        // Replace the trailing block by its Schur complement, a congruence.
        let col: Vec<BigRational> = (0..n).map(|r| &a[r][k] / &pivot).collect();
        let row = a[k].clone();
        for r in k + 1..n {
            if col[r].is_zero() {
                continue;
            }
            for c in k + 1..n {
                let t = &col[r] * &row[c];
                a[r][c] -= t;
            }
        }
        for row in a.iter_mut().skip(k + 1) {
            row[k] = BigRational::zero();
        }
        for x in a[k].iter_mut().skip(k + 1) {
            *x = BigRational::zero();
        }
    }
    sig
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn bareiss_determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut prev = BigInt::from(1);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `|det(V + Vᵀ)|` for the closure of `w`.
pub fn oracle_determinant(w: &BraidWord) -> Result<BigInt, OracleError> {
    Ok(bareiss_determinant(&seifert_matrix(w)?.symmetrized()).abs())
}

/// Signature of the closure of `w`.
pub fn oracle_signature(w: &BraidWord) -> Result<i64, OracleError> {
    Ok(sym_signature(&seifert_matrix(w)?))
}

/// Oracle values for a closure next to the representation-side answers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    /// Set when the diagram is split and no Seifert matrix was formed.
    pub split: bool,
    #[serde(
        with = "opt_bigint_number",
        skip_serializing_if = "Option::is_none",
        default
    )]
    pub determinant: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub signature: Option<i64>,
    pub agrees: bool,
}

/// Compare the oracle against a determinant and, when known, a signature.
///
/// A split diagram agrees exactly when the determinant is zero.
pub fn cross_check(w: &BraidWord, determinant: &BigInt, signature: Option<i64>) -> OracleCheck {
    match seifert_matrix(w) {
        Err(OracleError::SplitClosure { .. }) => OracleCheck {
            split: true,
            determinant: None,
            signature: None,
            agrees: determinant.is_zero(),
        },
        Ok(v) => {
            let det = bareiss_determinant(&v.symmetrized()).abs();
            let sig = sym_signature(&v);
            let agrees = det == *determinant && signature.is_none_or(|s| s == sig);
            OracleCheck {
                split: false,
                determinant: Some(det),
                signature: Some(sig),
                agrees,
            }
        }
    }
}
