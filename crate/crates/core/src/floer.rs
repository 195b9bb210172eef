//! Absolutely graded `HF⁺` of the branched double cover and of the associated
//! torus bundle, assembled from the surgery tables of the three genus-one
//! fibred knots in `S³` (right trefoil, left trefoil, figure eight).

use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology_rep;
use crate::json::bigint_number;
use crate::murasugi::{self, FormError, MurasugiForm};

/// An exact rational grading, serialized as `{"num":..,"den":..}` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grading(pub Rational64);

impl Grading {
    pub fn new(num: i64, den: i64) -> Self {
        Grading(Rational64::new(num, den))
    }

    pub fn integer(n: i64) -> Self {
        Grading(Rational64::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl std::ops::Add for Grading {
    type Output = Grading;
    fn add(self, o: Grading) -> Grading {
        Grading(self.0 + o.0)
    }
}

impl std::ops::Neg for Grading {
    type Output = Grading;
    fn neg(self) -> Grading {
        Grading(-self.0)
    }
}

impl std::ops::Mul<i64> for Grading {
    type Output = Grading;
    fn mul(self, k: i64) -> Grading {
        Grading(self.0 * k)
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalJson {
    num: i64,
    den: i64,
}

impl Serialize for Grading {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        RationalJson {
            num: self.numer(),
            den: self.denom(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Grading {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let RationalJson { num, den } = RationalJson::deserialize(de)?;
        canonical_grading(num, den).map_err(serde::de::Error::custom)
    }
}

// Only lowest-terms pairs are accepted, so parsing and re-serializing is lossless.
fn canonical_grading(num: i64, den: i64) -> Result<Grading, String> {
    if den <= 0 {
        return Err("denominator must be positive".into());
    }
    let g = Grading::new(num, den);
    if g.numer() != num || g.denom() != den {
        return Err(format!("{num}/{den} is not in lowest terms"));
    }
    Ok(g)
}

/// A summand `Z^rank` supported in a single grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FreeSummand {
    pub rank: u64,
    pub grading: Grading,
}

#[derive(Serialize, Deserialize)]
struct FreeJson {
    rank: u64,
    num: i64,
    den: i64,
}

impl Serialize for FreeSummand {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        FreeJson {
            rank: self.rank,
            num: self.grading.numer(),
            den: self.grading.denom(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FreeSummand {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let FreeJson { rank, num, den } = FreeJson::deserialize(de)?;
        let grading = canonical_grading(num, den).map_err(serde::de::Error::custom)?;
        Ok(FreeSummand { rank, grading })
    }
}

/// `⊕ T⁺_{dᵢ} ⊕ ⊕ Z^{kⱼ}_{gⱼ}`.
///
/// Towers are kept sorted in ascending order of bottom grading, frees
/// ascending by grading with equal gradings merged and zero ranks dropped,
/// so derived equality is multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GradedModule {
    towers: Vec<Grading>,
    frees: Vec<FreeSummand>,
    absolute: bool,
}

impl GradedModule {
    pub fn new(towers: Vec<Grading>, frees: Vec<FreeSummand>, absolute: bool) -> Self {
        let mut towers = towers;
        towers.sort();
        let mut sorted: Vec<FreeSummand> = frees.into_iter().filter(|f| f.rank > 0).collect();
        sorted.sort_by_key(|f| f.grading);
        let mut merged: Vec<FreeSummand> = Vec::with_capacity(sorted.len());
        for f in sorted {
            match merged.last_mut() {
                Some(last) if last.grading == f.grading => last.rank += f.rank,
                _ => merged.push(f),
            }
        }
        GradedModule {
            towers,
            frees: merged,
            absolute,
        }
    }

    /// A single tower `T⁺_d`.
    pub fn tower(d: Grading) -> Self {
        Self::new(vec![d], Vec::new(), true)
    }

    pub fn towers(&self) -> &[Grading] {
        &self.towers
    }

    pub fn frees(&self) -> &[FreeSummand] {
        &self.frees
    }

    pub fn is_absolute(&self) -> bool {
        self.absolute
    }

    pub fn shift(&self, q: Grading) -> Self {
        GradedModule {
            towers: self.towers.iter().map(|&t| t + q).collect(),
            frees: self
                .frees
                .iter()
                .map(|f| FreeSummand {
                    rank: f.rank,
                    grading: f.grading + q,
                })
                .collect(),
            absolute: self.absolute,
        }
    }

    /// Exactly one tower and nothing else.
    pub fn is_bare_tower(&self) -> bool {
        self.towers.len() == 1 && self.frees.is_empty()
    }

    /// Lowest tower bottom.
    pub fn tower_bottom(&self) -> Option<Grading> {
        self.towers.first().copied()
    }

    pub fn free_rank(&self) -> u64 {
        self.frees.iter().map(|f| f.rank).sum()
    }
}

impl<'de> Deserialize<'de> for GradedModule {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            towers: Vec<Grading>,
            frees: Vec<FreeSummand>,
            absolute: bool,
        }
        let raw = Raw::deserialize(de)?;
        Ok(GradedModule::new(raw.towers, raw.frees, raw.absolute))
    }
}

impl fmt::Display for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.towers.iter().map(|t| format!("T+({t})")).collect();
        parts.extend(self.frees.iter().map(|fr| {
            if fr.rank == 1 {
                format!("Z({})", fr.grading)
            } else {
                format!("Z^{}({})", fr.rank, fr.grading)
            }
        }));
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))?;
        if !self.absolute {
            f.write_str(" [relative]")?;
        }
        Ok(())
    }
}

/// Which genus-one fibred knot in `S³` governs the surgery description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KnotTypeTag {
    RightTrefoilLike,
    LeftTrefoilLike,
    FigureEightLike,
}

fn free(rank: i64, grading: i64) -> Vec<FreeSummand> {
    if rank <= 0 {
        Vec::new()
    } else {
        vec![FreeSummand {
            rank: rank as u64,
            grading: Grading::integer(grading),
        }]
    }
}

fn table_module(tower: i64, rank: i64, grading: i64) -> GradedModule {
    GradedModule::new(vec![Grading::integer(tower)], free(rank, grading), true)
}

// The two rows of each 1/n-surgery table as formulas, without the domain
// restriction, so the boundary case n = 0 can be compared across rows.
fn lower_row(tag: KnotTypeTag, n: i64) -> GradedModule {
    match tag {
        KnotTypeTag::RightTrefoilLike => table_module(0, -n, -1),
        KnotTypeTag::LeftTrefoilLike => table_module(2, -n - 1, 1),
        KnotTypeTag::FigureEightLike => table_module(0, -n, 0),
    }
}

fn upper_row(tag: KnotTypeTag, n: i64) -> GradedModule {
    match tag {
        KnotTypeTag::RightTrefoilLike => table_module(-2, n - 1, -2),
        KnotTypeTag::LeftTrefoilLike => table_module(0, n, 0),
        KnotTypeTag::FigureEightLike => table_module(0, n, -1),
    }
}

/// `HF⁺` of `1/n` surgery on the tagged knot; `n = 0` is `S³`.
pub fn surgery_table(tag: KnotTypeTag, n: i64) -> GradedModule {
    let upper = match tag {
        KnotTypeTag::RightTrefoilLike => n > 0,
        KnotTypeTag::LeftTrefoilLike | KnotTypeTag::FigureEightLike => n >= 0,
    };
    if upper {
        upper_row(tag, n)
    } else {
        lower_row(tag, n)
    }
}

/// `HF⁺` of 0-surgery on the tagged knot, torsion `Spin^c` structure.
pub fn zero_surgery_table(tag: KnotTypeTag) -> GradedModule {
    let (towers, frees) = match tag {
        KnotTypeTag::RightTrefoilLike => {
            (vec![Grading::new(-1, 2), Grading::new(-3, 2)], Vec::new())
        }
        KnotTypeTag::LeftTrefoilLike => (vec![Grading::new(3, 2), Grading::new(1, 2)], Vec::new()),
        KnotTypeTag::FigureEightLike => (
            vec![Grading::new(1, 2), Grading::new(-1, 2)],
            vec![FreeSummand {
                rank: 1,
                grading: Grading::new(-1, 2),
            }],
        ),
    };
    GradedModule::new(towers, frees, true)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloerError {
    #[error("{form} has b1 > 0 (determinant 0); HF+ in s0 is not a rational homology sphere invariant here")]
    PositiveB1 { form: String },
    #[error("{form}: the torus bundle does not have b1 = 1")]
    B1NotOne { form: String },
    #[error("{form} is not an L-space")]
    NotLSpace { form: String },
    #[error(transparent)]
    Form(#[from] FormError),
}

pub fn is_l_space(f: &MurasugiForm) -> bool {
    match f {
        MurasugiForm::Family1 { d, .. } => (-1..=1).contains(d),
        MurasugiForm::Family2 { d, .. } => d.abs() == 1,
        MurasugiForm::Family3 { d, .. } => (-1..=2).contains(d),
    }
}

/// Non-vanishing of the contact invariant of the open book.
pub fn is_tight(f: &MurasugiForm) -> bool {
    match f {
        MurasugiForm::Family1 { d, .. } | MurasugiForm::Family3 { d, .. } => *d > 0,
        MurasugiForm::Family2 { d, m } => *d > 0 || (*d == 0 && *m >= 0),
    }
}

/// Tightness of the open book with inverse monodromy.
pub fn is_tight_inverse(f: &MurasugiForm) -> Result<bool, FormError> {
    Ok(is_tight(&murasugi::inverse_form(f)?))
}

pub fn knot_type(f: &MurasugiForm) -> Result<KnotTypeTag, FormError> {
    Ok(if is_tight(f) {
        KnotTypeTag::RightTrefoilLike
    } else if is_tight_inverse(f)? {
        KnotTypeTag::LeftTrefoilLike
    } else {
        KnotTypeTag::FigureEightLike
    })
}

// Table, half-twist count and grading shift for the s₀ summand.
fn surgery_data(f: &MurasugiForm) -> Result<(KnotTypeTag, i64, Grading), FloerError> {
    let d = f.d();
    let k = d.div_euclid(2);
    let odd = d.rem_euclid(2) == 1;
    Ok(match f {
        MurasugiForm::Family1 { a, .. } => {
            let n = a.len() as i64;
            let sum = a.iter().sum::<u64>() as i64;
            if odd {
                (
                    KnotTypeTag::RightTrefoilLike,
                    k,
                    Grading::new(n + 4 - sum, 4),
                )
            } else {
                (KnotTypeTag::FigureEightLike, k, Grading::new(n - sum, 4))
            }
        }
        MurasugiForm::Family2 { m, .. } => {
            if !odd {
                return Err(FloerError::PositiveB1 {
                    form: f.to_string(),
                });
            }
            (KnotTypeTag::RightTrefoilLike, k, Grading::new(m + 4, 4))
        }
        MurasugiForm::Family3 { m, .. } => {
            if odd {
                (KnotTypeTag::RightTrefoilLike, k, Grading::new(m + 3, 4))
            } else {
                (KnotTypeTag::LeftTrefoilLike, k, Grading::new(m + 1, 4))
            }
        }
    })
}

/// `HF⁺(M, s₀)` with absolute gradings.
pub fn hf_plus_s0(f: &MurasugiForm) -> Result<GradedModule, FloerError> {
    f.validate()?;
    let (tag, k, shift) = surgery_data(f)?;
    Ok(surgery_table(tag, -k).shift(shift))
}

/// `d(M, s₀)`, the bottom of the tower in `HF⁺(M, s₀)`.
pub fn correction_term(f: &MurasugiForm) -> Result<Grading, FloerError> {
    let module = hf_plus_s0(f)?;
    Ok(module
        .tower_bottom()
        .expect("surgery tables always contain a tower"))
}

/// `HF⁺` of the torus bundle obtained by zero surgery on the binding.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusBundleHf {
    /// Summand in the torsion structure `s₀`, absolutely graded.
    pub s0: GradedModule,
    /// Number of torsion `Spin^c` structures, `|H₁(M)|`.
    #[serde(with = "bigint_number")]
    pub torsion_spin_c_count: BigInt,
    /// Shape of every other torsion structure: two towers half a unit apart
    /// on either side of an unknown absolute level.
    pub other_torsion: GradedModule,
    /// Non-torsion structures have vanishing `HF⁺`.
    pub non_torsion_vanish: bool,
}

pub fn torus_bundle_hf(f: &MurasugiForm) -> Result<TorusBundleHf, FloerError> {
    f.validate()?;
    let (tag, _, shift) = surgery_data(f).map_err(|e| match e {
        FloerError::PositiveB1 { form } => FloerError::B1NotOne { form },
        other => other,
    })?;
    let count = murasugi::form_determinant(f)?;
    if count.is_zero() {
        return Err(FloerError::B1NotOne {
            form: f.to_string(),
        });
    }
    Ok(TorusBundleHf {
        s0: zero_surgery_table(tag).shift(shift),
        torsion_spin_c_count: count,
        other_torsion: GradedModule::new(
            vec![Grading::new(1, 2), Grading::new(-1, 2)],
            Vec::new(),
            false,
        ),
        non_torsion_vanish: true,
    })
}

/// Knot Floer homology of the binding in `s₀`, with the `d¹` pattern of the
/// spectral sequence to `HF-hat`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HfkBindingProfile {
    /// Ranks at Alexander gradings `+1, 0, -1`.
    pub ranks: [u32; 3],
    /// Nontrivial differentials as `(source, target)` Alexander gradings.
    pub arrows: Vec<(i8, i8)>,
    /// Number of other `Spin^c` structures, each of rank 1 in Alexander grading 0.
    #[serde(with = "bigint_number")]
    pub other_structures: BigInt,
    pub collapses_at_e2: bool,
}

pub fn hfk_binding(f: &MurasugiForm) -> Result<HfkBindingProfile, FloerError> {
    if !is_l_space(f) {
        return Err(FloerError::NotLSpace {
            form: f.to_string(),
        });
    }
    let (ranks, arrows) = match knot_type(f)? {
        KnotTypeTag::RightTrefoilLike => ([1, 1, 1], vec![(0, -1)]),
        KnotTypeTag::LeftTrefoilLike => ([1, 1, 1], vec![(1, 0)]),
        KnotTypeTag::FigureEightLike => ([1, 3, 1], vec![(1, 0), (0, -1)]),
    };
    let order = murasugi::form_determinant(f)?;
    Ok(HfkBindingProfile {
        ranks,
        arrows,
        other_structures: order - BigInt::one(),
        collapses_at_e2: true,
    })
}

/// Order of `H₁` of the branched double cover, `None` when infinite.
pub fn spin_c_count(f: &MurasugiForm) -> Result<Option<BigInt>, FormError> {
    let word = murasugi::canonical_word(f)?;
    Ok(homology_rep::h1_branched_cover(&word).order())
}
