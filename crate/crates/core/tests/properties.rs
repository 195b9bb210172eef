mod common;

use braid3::braid_words::{BraidWord, Letter};
use braid3::floer;
use braid3::link_invariants::{self, Screen};
use braid3::murasugi::{self, MurasugiForm};
use braid3::seifert_oracle;
use num_bigint::BigInt;
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = BraidWord> {
    proptest::collection::vec(
        proptest::sample::select(common::LETTERS.to_vec()),
        0..=max_len,
    )
    .prop_map(BraidWord::new)
}

fn mirror(f: &MurasugiForm) -> MurasugiForm {
    murasugi::inverse_form(f).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn oracle_is_conjugation_invariant(u in word(8), w in word(14)) {
        let c = u.conjugate(&w);
        if let (Ok(a), Ok(b)) = (seifert_oracle::oracle_determinant(&w), seifert_oracle::oracle_determinant(&c)) {
            prop_assert_eq!(a, b);
        }
        if let (Ok(a), Ok(b)) = (seifert_oracle::oracle_signature(&w), seifert_oracle::oracle_signature(&c)) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn oracle_signature_is_bounded_and_odd_under_mirror(w in word(16)) {
        if let Ok(v) = seifert_oracle::seifert_matrix(&w) {
            let s = seifert_oracle::sym_signature(&v);
            prop_assert!(s.unsigned_abs() as usize <= v.size());
            if w.components() == 1 {
                prop_assert_eq!(seifert_oracle::oracle_signature(&w.inverse()).unwrap(), -s);
            }
        }
    }

    #[test]
    fn intersection_form_detects_knots(w in word(16)) {
        if let Ok(v) = seifert_oracle::seifert_matrix(&w) {
            let det = seifert_oracle::bareiss_determinant(&v.antisymmetrized());
            if w.components() == 1 {
                prop_assert!(det == BigInt::from(1) || det == BigInt::from(-1));
            } else {
                prop_assert_eq!(det, BigInt::from(0));
            }
        }
    }

    #[test]
    fn cli_json_round_trips(w in word(20)) {
        let r = link_invariants::analyze(&w, true).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: link_invariants::InvariantReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert_eq!(back, r);
    }
}

#[test]
fn screen_pass_forces_vanishing_delta_and_signature() {
    for f in common::forms(-1..=1, 6, 6, 0) {
        if murasugi::canonical_word(&f).unwrap().components() != 1 {
            continue;
        }
        if link_invariants::finite_order_screen(&f, 1) == Screen::Pass {
            if let Ok(delta) = link_invariants::delta(&f, 1) {
                assert_eq!(delta.numer(), 0, "{f}");
            }
            if let Ok(sigma) = link_invariants::signature(&f, 1) {
                assert_eq!(sigma, 0, "{f}");
            }
        }
    }
}

#[test]
fn mirror_negates_delta_and_signature() {
    for f in common::forms(-3..=3, 4, 5, 0) {
        if murasugi::canonical_word(&f).unwrap().components() != 1 {
            continue;
        }
        let g = mirror(&f);
        if let (Ok(a), Ok(b)) = (link_invariants::delta(&f, 1), link_invariants::delta(&g, 1)) {
            assert_eq!(a, -b, "{f} vs {g}");
        }
        if let (Ok(a), Ok(b)) = (
            link_invariants::signature(&f, 1),
            link_invariants::signature(&g, 1),
        ) {
            assert_eq!(a, -b, "{f} vs {g}");
        }
    }
}

#[test]
fn quasi_alternating_knots_are_sigma_thin() {
    for f in common::forms(-1..=1, 5, 5, 0) {
        if !matches!(f, MurasugiForm::Family1 { .. })
            || murasugi::canonical_word(&f).unwrap().components() != 1
        {
            continue;
        }
        assert!(link_invariants::quasi_alternating(&f));
        let delta = link_invariants::delta(&f, 1).unwrap();
        let sigma = link_invariants::signature(&f, 1).unwrap();
        assert_eq!(delta * 2, floer::Grading::integer(-sigma), "{f}");
    }
}

#[test]
fn binding_profiles_have_odd_symmetric_ranks() {
    for f in common::forms(-2..=2, 3, 4, 4)
        .into_iter()
        .filter(floer::is_l_space)
    {
        let p = floer::hfk_binding(&f).unwrap();
        assert_eq!(p.ranks[0], p.ranks[2]);
        assert_eq!(p.ranks[1] % 2, 1);
        assert_eq!(p.arrows.len(), if p.ranks[1] == 3 { 2 } else { 1 });
    }
}

#[test]
fn lens_space_word_family_matches_h_x_power() {
    // h x^n y^-1 is conjugate to y x^(n+4)
    for n in 0..8 {
        let a = BraidWord::parse(&format!("h x^{n} y^-1")).unwrap();
        let b = BraidWord::new([vec![Letter::Y], vec![Letter::X; n + 4]].concat());
        assert!(murasugi::is_conjugate(&a, &b).unwrap(), "n = {n}");
    }
}
