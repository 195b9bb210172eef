//! Conjugacy normal forms and Heegaard Floer invariants for 3-braids and the
//! genus-one open books they describe.
//!
//! A word in `x`, `y` is classified into one of three Murasugi families via
//! `B₃ → SL(2,Z)`; the family parameters then determine the branched double
//! cover's `HF⁺`, correction term, L-space and tightness status, and the
//! closure's δ, signature and quasi-alternating status. A Seifert-matrix
//! computation on the braid diagram serves as an independent check.

pub mod braid_words;
pub mod cli;
pub mod floer;
pub mod homology_rep;
pub mod json;
pub mod link_invariants;
pub mod murasugi;
pub mod seifert_oracle;

pub use braid_words::{BraidWord, Letter, ParseError};
pub use floer::{GradedModule, Grading, KnotTypeTag};
pub use homology_rep::{AbelianGroup, SL2Matrix};
pub use link_invariants::InvariantReport;
pub use murasugi::{classify, FormError, MurasugiForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Parse `text` and build its full report.
pub fn analyze_text(text: &str, torus_bundle: bool) -> Result<InvariantReport, Error> {
    let word = BraidWord::parse(text)?;
    Ok(link_invariants::analyze(&word, torus_bundle)?)
}
