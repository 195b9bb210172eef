//! Invariants of the closed braid: the concordance invariant δ, the
//! signature, a finite-concordance-order screen, quasi-alternating status and
//! what the correction term says about Stein fillings. [`analyze`] gathers
//! everything into one [`InvariantReport`].

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid_words::BraidWord;
use crate::floer::{self, FloerError, GradedModule, Grading, KnotTypeTag, TorusBundleHf};
use crate::homology_rep::{self, AbelianGroup};
use crate::json::{bigint_number, opt_bigint_number};
use crate::murasugi::{self, FormError, MurasugiForm};
use crate::seifert_oracle::OracleCheck;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("the closure has {components} components, not a knot")]
    NotAKnot { components: usize },
    #[error("no closed formula covers {form}")]
    FamilyNotCovered { form: String },
}

fn require_knot(components: usize) -> Result<(), InvariantError> {
    if components == 1 {
        Ok(())
    } else {
        Err(InvariantError::NotAKnot { components })
    }
}

fn not_covered(f: &MurasugiForm) -> InvariantError {
    InvariantError::FamilyNotCovered {
        form: f.to_string(),
    }
}

/// `δ = 2 d(Σ(K), s₀)` from the closed formulas for 3-braid knots.
pub fn delta(f: &MurasugiForm, components: usize) -> Result<Grading, InvariantError> {
    require_knot(components)?;
    let d = f.d();
    let odd = d.rem_euclid(2) == 1;
    let num = match f {
        MurasugiForm::Family1 { a, .. } => {
            let n = a.len() as i64;
            let s = a.iter().sum::<u64>() as i64;
            match (odd, d > 0) {
                (true, true) => n + 4 - s,
                (true, false) => n - 4 - s,
                (false, _) => n - s,
            }
        }
        MurasugiForm::Family3 { m, .. } if *m == -1 || *m == -3 => match (odd, d > 0) {
            (true, true) => m + 3,
            (true, false) => m - 5,
            (false, true) => m + 9,
            (false, false) => m + 1,
        },
        _ => return Err(not_covered(f)),
    };
    Ok(Grading::new(num, 2))
}

/// `σ = -n - 4d + Σaᵢ` for Family1 knots.
pub fn signature(f: &MurasugiForm, components: usize) -> Result<i64, InvariantError> {
    require_knot(components)?;
    match f {
        MurasugiForm::Family1 { d, a } => {
            Ok(-(a.len() as i64) - 4 * d + a.iter().sum::<u64>() as i64)
        }
        _ => Err(not_covered(f)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Screen {
    Pass,
    Fail,
    NotAKnot,
}

/// Forms whose closure is the unknot.
pub fn is_unknot_closure(f: &MurasugiForm) -> bool {
    match f {
        MurasugiForm::Family1 { d: 0, a } => a.as_slice() == [1],
        MurasugiForm::Family3 { d: 0, m: -1 } | MurasugiForm::Family3 { d: 1, m: -3 } => true,
        _ => false,
    }
}

/// Necessary condition for finite order in the smooth concordance group.
pub fn finite_order_screen(f: &MurasugiForm, components: usize) -> Screen {
    if components != 1 {
        return Screen::NotAKnot;
    }
    if is_unknot_closure(f) {
        return Screen::Pass;
    }
    match f {
        MurasugiForm::Family1 { d, a }
            if (-1..=1).contains(d) && a.len() as i64 + 4 * d == a.iter().sum::<u64>() as i64 =>
        {
            Screen::Pass
        }
        _ => Screen::Fail,
    }
}

pub fn quasi_alternating(f: &MurasugiForm) -> bool {
    match *f {
        MurasugiForm::Family1 { d, .. } => (-1..=1).contains(&d),
        MurasugiForm::Family2 { d, m } => {
            (d == 1 && (-3..=-1).contains(&m)) || (d == -1 && (1..=3).contains(&m))
        }
        MurasugiForm::Family3 { d, .. } => d == 0 || d == 1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Fillable {
    No,
    Constrained,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SteinReport {
    pub l_space: bool,
    pub tight: bool,
    pub fillable: Fillable,
    /// Euler characteristic forced on any Stein filling.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub euler_char: Option<i64>,
    /// Exponent sum; the number of right-handed twists if the monodromy is a positive product.
    pub dehn_twist_count_bound: i64,
}

pub fn stein_report(f: &MurasugiForm) -> Result<SteinReport, FloerError> {
    let l_space = floer::is_l_space(f);
    let tight = floer::is_tight(f);
    let (fillable, euler_char) = if !tight {
        (Fillable::No, None)
    } else if l_space {
        let d = floer::correction_term(f)?;
        let chi = d * 4 + Grading::integer(1);
        if d.is_negative() || chi.denom() != 1 || chi.numer() < 1 {
            (Fillable::No, None)
        } else {
            (Fillable::Constrained, Some(chi.numer()))
        }
    } else {
        (Fillable::Unknown, None)
    };
    Ok(SteinReport {
        l_space,
        tight,
        fillable,
        euler_char,
        dehn_twist_count_bound: f.exponent_sum(),
    })
}

/// Everything known about the closure of a word and its branched double cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub word: String,
    pub normal_form: MurasugiForm,
    pub components: usize,
    #[serde(with = "bigint_number")]
    pub determinant: BigInt,
    pub h1: AbelianGroup,
    pub b1: usize,
    pub l_space: bool,
    pub tight: bool,
    pub tight_inverse: bool,
    pub knot_type_tag: KnotTypeTag,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hf_plus_s0: Option<GradedModule>,
    #[serde(
        with = "opt_bigint_number",
        skip_serializing_if = "Option::is_none",
        default
    )]
    pub spin_c_count: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub correction_term: Option<Grading>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<Grading>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub signature: Option<i64>,
    pub qa: bool,
    pub finite_order_screen: Screen,
    pub stein: SteinReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub torus_bundle: Option<TorusBundleHf>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleCheck>,
}

/// Build the full report. Only an internal inconsistency of the classifier
/// can fail; every partial invariant is simply omitted where undefined.
pub fn analyze(w: &BraidWord, with_torus_bundle: bool) -> Result<InvariantReport, FormError> {
    let form = murasugi::classify(w)?;
    let components = w.components();
    let h1 = homology_rep::h1_branched_cover(w);
    let determinant = homology_rep::determinant(w);
    let hf = floer::hf_plus_s0(&form).ok();
    let correction_term = hf.as_ref().and_then(GradedModule::tower_bottom);
    let stein = stein_report(&form).map_err(|e| match e {
        FloerError::Form(e) => e,
        other => FormError::InternalInconsistency {
            word: w.to_string(),
            reason: other.to_string(),
        },
    })?;
    let torus_bundle = if with_torus_bundle {
        floer::torus_bundle_hf(&form).ok()
    } else {
        None
    };
    Ok(InvariantReport {
        word: w.to_string(),
        components,
        b1: h1.free_rank,
        spin_c_count: h1.order(),
        h1,
        determinant,
        l_space: floer::is_l_space(&form),
        tight: floer::is_tight(&form),
        tight_inverse: floer::is_tight_inverse(&form)?,
        knot_type_tag: floer::knot_type(&form)?,
        hf_plus_s0: hf,
        correction_term,
        delta: delta(&form, components).ok(),
        signature: signature(&form, components).ok(),
        qa: quasi_alternating(&form),
        finite_order_screen: finite_order_screen(&form, components),
        stein,
        torus_bundle,
        oracle: None,
        normal_form: form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f1(d: i64, a: &[u64]) -> MurasugiForm {
        MurasugiForm::Family1 { d, a: a.to_vec() }
    }

    #[test]
    fn delta_fixtures() {
        assert_eq!(delta(&f1(1, &[5]), 1).unwrap(), Grading::integer(0));
        assert_eq!(
            delta(&MurasugiForm::Family3 { d: 2, m: -3 }, 1).unwrap(),
            Grading::integer(3)
        );
        assert_eq!(delta(&f1(0, &[1, 1]), 1).unwrap(), Grading::integer(0));
        assert_eq!(
            delta(&f1(0, &[1, 1]), 2),
            Err(InvariantError::NotAKnot { components: 2 })
        );
        assert!(matches!(
            delta(&MurasugiForm::Family2 { d: 1, m: 1 }, 1),
            Err(InvariantError::FamilyNotCovered { .. })
        ));
    }

    #[test]
    fn signature_fixtures() {
        assert_eq!(signature(&f1(1, &[1]), 1).unwrap(), -4);
        assert_eq!(signature(&f1(1, &[5]), 1).unwrap(), 0);
        assert_eq!(signature(&f1(0, &[1, 1]), 1).unwrap(), 0);
        assert!(matches!(
            signature(&MurasugiForm::Family3 { d: 1, m: -1 }, 1),
            Err(InvariantError::FamilyNotCovered { .. })
        ));
    }

    #[test]
    fn screen_fixtures() {
        assert_eq!(finite_order_screen(&f1(1, &[5]), 1), Screen::Pass);
        assert_eq!(
            finite_order_screen(&MurasugiForm::Family3 { d: 2, m: -1 }, 1),
            Screen::Fail
        );
        assert_eq!(
            finite_order_screen(&MurasugiForm::Family3 { d: 1, m: -3 }, 1),
            Screen::Pass
        );
        assert_eq!(finite_order_screen(&f1(1, &[5]), 3), Screen::NotAKnot);
    }

    #[test]
    fn qa_fixtures() {
        assert!(quasi_alternating(&f1(1, &[5])));
        assert!(!quasi_alternating(&MurasugiForm::Family2 { d: 1, m: 0 }));
        assert!(!quasi_alternating(&MurasugiForm::Family3 { d: 2, m: -1 }));
        assert!(quasi_alternating(&MurasugiForm::Family2 { d: -1, m: 3 }));
    }

    #[test]
    fn stein_fixtures() {
        let r = stein_report(&f1(1, &[7])).unwrap();
        assert!(r.tight && r.l_space);
        assert_eq!(r.fillable, Fillable::No);
        let r = stein_report(&MurasugiForm::Family2 { d: 1, m: -1 }).unwrap();
        assert_eq!((r.fillable, r.euler_char), (Fillable::Constrained, Some(4)));
        assert_eq!(r.dehn_twist_count_bound, 5);
        let r = stein_report(&f1(0, &[1, 1])).unwrap();
        assert_eq!(r.fillable, Fillable::No);
        let r = stein_report(&f1(3, &[1])).unwrap();
        assert_eq!(r.fillable, Fillable::Unknown);
    }

    #[test]
    fn report_for_minus_8_20() {
        let r = analyze(&BraidWord::parse("h x y^-5").unwrap(), false).unwrap();
        assert_eq!(r.normal_form, f1(1, &[5]));
        assert_eq!(r.determinant, BigInt::from(9));
        assert!(r.qa);
        assert_eq!(r.delta, Some(Grading::integer(0)));
        assert_eq!(r.signature, Some(0));
        assert_eq!(r.finite_order_screen, Screen::Pass);
    }

    #[test]
    fn report_for_empty_word() {
        let r = analyze(&BraidWord::empty(), true).unwrap();
        assert_eq!(r.normal_form, MurasugiForm::Family2 { d: 0, m: 0 });
        assert_eq!(r.components, 3);
        assert_eq!(r.determinant, BigInt::from(0));
        assert_eq!(r.b1, 2);
        assert!(r.hf_plus_s0.is_none() && r.correction_term.is_none() && r.torus_bundle.is_none());
        let json = serde_json::to_value(&r).unwrap();
        assert!(json.get("spin_c_count").is_none());
    }
}
