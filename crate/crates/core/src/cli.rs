//! Command-line front end.
//!
//! Exit codes: 0 success, 1 not conjugate, 2 parse error, 3 internal
//! inconsistency (classifier or oracle disagreement), 4 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::braid_words::{BraidWord, ParseError};
use crate::link_invariants::{self, InvariantReport};
use crate::murasugi::{self, FormError, MurasugiForm};
use crate::seifert_oracle;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_CONJUGATE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_INCONSISTENT: u8 = 3;
pub const EXIT_IO: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "braid3",
    version,
    about = "Murasugi normal forms and Floer invariants of closed 3-braids"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub mode: Mode,
    /// Emit JSON (ND-JSON in batch mode).
    #[arg(long, global = true)]
    pub json: bool,
    /// Cross-check determinant and signature against the Seifert-matrix oracle.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Include HF+ of the associated torus bundle.
    #[arg(long = "torus-bundle", global = true)]
    pub torus_bundle: bool,
}

#[derive(Debug, Subcommand)]
pub enum Mode {
    /// Analyze a single word, e.g. "h x y^-5".
    Analyze {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Analyze one word per line of a file; `#` starts a comment line.
    Batch { path: PathBuf },
    /// Decide whether two words are conjugate in B3.
    Conjugate {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
}

/// Why a single word could not be reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ItemError {
    Parse(ParseError),
    Inconsistent(String),
}

impl ItemError {
    fn exit_code(&self) -> u8 {
        match self {
            ItemError::Parse(_) => EXIT_PARSE,
            ItemError::Inconsistent(_) => EXIT_INCONSISTENT,
        }
    }
}

impl std::fmt::Display for ItemError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ItemError::Parse(e) => write!(f, "parse error: {e}"),
            ItemError::Inconsistent(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

impl From<FormError> for ItemError {
    fn from(e: FormError) -> Self {
        ItemError::Inconsistent(e.to_string())
    }
}

/// Parse and analyze one word according to the flags.
pub fn report_for(
    text: &str,
    oracle: bool,
    torus_bundle: bool,
) -> Result<InvariantReport, ItemError> {
    let word = BraidWord::parse(text).map_err(ItemError::Parse)?;
    let mut report = link_invariants::analyze(&word, torus_bundle)?;
    report.word = text.trim().to_string();
    if oracle {
        let check = seifert_oracle::cross_check(&word, &report.determinant, report.signature);
        if !check.agrees {
            return Err(ItemError::Inconsistent(format!(
                "oracle disagrees on `{}`: representation det {}, oracle {:?}",
                report.word, report.determinant, check
            )));
        }
        report.oracle = Some(check);
    }
    Ok(report)
}

/// Run the CLI on `args`, writing to `out` and `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match &config.mode {
        Mode::Analyze { word } => analyze(&config, word, out, err),
        Mode::Batch { path } => batch(&config, path, out, err),
        Mode::Conjugate { first, second } => conjugate(&config, first, second, out, err),
    };
    match result {
        Ok(code) => code,
        Err(io) => {
            let _ = writeln!(err, "i/o error: {io}");
            EXIT_IO
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize to JSON")
}

fn analyze(
    config: &CliConfig,
    word: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<u8> {
    match report_for(word, config.oracle, config.torus_bundle) {
        Ok(report) => {
            if config.json {
                writeln!(out, "{}", to_json(&report))?;
            } else {
                write!(out, "{}", render(&report))?;
            }
            Ok(EXIT_OK)
        }
        Err(e) => {
            writeln!(err, "{e}")?;
            Ok(e.exit_code())
        }
    }
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    line: usize,
    input: &'a str,
    error: String,
}

#[derive(Serialize)]
struct Summary {
    summary: String,
    ok: usize,
    failed: usize,
}

fn batch(
    config: &CliConfig,
    path: &PathBuf,
    out: &mut dyn Write,
    _err: &mut dyn Write,
) -> std::io::Result<u8> {
    let text = std::fs::read_to_string(path)?;
    let items: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    // Ordered collect keeps input order regardless of scheduling.
    let results: Vec<Result<InvariantReport, ItemError>> = items
        .par_iter()
        .map(|&(_, l)| report_for(l, config.oracle, config.torus_bundle))
        .collect();
    let mut ok = 0;
    let mut failed = 0;
    let mut code = EXIT_OK;
    for (&(line, input), result) in items.iter().zip(&results) {
        match result {
            Ok(report) => {
                ok += 1;
                if config.json {
                    writeln!(out, "{}", to_json(report))?;
                } else {
                    writeln!(out, "== line {line}: {input}")?;
                    write!(out, "{}", render(report))?;
                }
            }
            Err(e) => {
                failed += 1;
                if matches!(e, ItemError::Inconsistent(_)) {
                    code = EXIT_INCONSISTENT;
                }
                if config.json {
                    writeln!(
                        out,
                        "{}",
                        to_json(&ErrorRecord {
                            line,
                            input,
                            error: e.to_string()
                        })
                    )?;
                } else {
                    writeln!(out, "== line {line}: {input}\nerror: {e}")?;
                }
            }
        }
    }
    let summary = format!("{ok} ok, {failed} failed");
    if config.json {
        writeln!(
            out,
            "{}",
            to_json(&Summary {
                summary,
                ok,
                failed
            })
        )?;
    } else {
        writeln!(out, "{summary}")?;
    }
    Ok(code)
}

#[derive(Serialize)]
struct ConjugacyVerdict {
    conjugate: bool,
    normal_forms: [MurasugiForm; 2],
}

fn conjugate(
    config: &CliConfig,
    first: &str,
    second: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<u8> {
    let classify = |text: &str| -> Result<MurasugiForm, ItemError> {
        let w = BraidWord::parse(text).map_err(ItemError::Parse)?;
        Ok(murasugi::classify(&w)?)
    };
    let (f1, f2) = match (classify(first), classify(second)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            writeln!(err, "{e}")?;
            return Ok(e.exit_code());
        }
    };
    let same = f1 == f2;
    if config.json {
        writeln!(
            out,
            "{}",
            to_json(&ConjugacyVerdict {
                conjugate: same,
                normal_forms: [f1, f2]
            })
        )?;
    } else if same {
        writeln!(out, "conjugate: {f1}")?;
    } else {
        writeln!(out, "not conjugate: {f1} vs {f2}")?;
    }
    Ok(if same { EXIT_OK } else { EXIT_NOT_CONJUGATE })
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "n/a".to_string(), |x| x.to_string())
}

/// Human-readable multi-line rendering of a report.
pub fn render(r: &InvariantReport) -> String {
    let mut s = String::new();
    let mut line = |k: &str, v: String| s.push_str(&format!("{k:<22}{v}\n"));
    line(
        "word",
        if r.word.is_empty() {
            "(empty)".into()
        } else {
            r.word.clone()
        },
    );
    line("normal form", r.normal_form.to_string());
    line("components", r.components.to_string());
    line("determinant", r.determinant.to_string());
    line("H1(double cover)", r.h1.to_string());
    if r.b1 > 0 {
        line(
            "b1",
            format!("{} (double cover is not a rational homology sphere)", r.b1),
        );
    }
    line("spin^c structures", opt(&r.spin_c_count));
    line("L-space", r.l_space.to_string());
    line("tight", r.tight.to_string());
    line("tight (inverse)", r.tight_inverse.to_string());
    line("knot type", format!("{:?}", r.knot_type_tag));
    line("HF+(s0)", opt(&r.hf_plus_s0));
    line("correction term", opt(&r.correction_term));
    line("delta", opt(&r.delta));
    line("signature", opt(&r.signature));
    line("quasi-alternating", r.qa.to_string());
    line(
        "finite-order screen",
        format!("{:?}", r.finite_order_screen),
    );
    let chi = r
        .stein
        .euler_char
        .map(|c| format!(", chi = {c}"))
        .unwrap_or_default();
    line(
        "Stein filling",
        format!(
            "{:?}{chi} (twist bound {})",
            r.stein.fillable, r.stein.dehn_twist_count_bound
        ),
    );
    if let Some(tb) = &r.torus_bundle {
        line("torus bundle HF+(s0)", tb.s0.to_string());
        line(
            "torus bundle torsion",
            format!(
                "{} structures, others {}",
                tb.torsion_spin_c_count, tb.other_torsion
            ),
        );
    }
    if let Some(o) = &r.oracle {
        let v = if o.split {
            "split diagram".to_string()
        } else {
            format!(
                "det {}, signature {}",
                opt(&o.determinant),
                opt(&o.signature)
            )
        };
        line(
            "oracle",
            format!("{v} ({})", if o.agrees { "agrees" } else { "DISAGREES" }),
        );
    }
    s
}
