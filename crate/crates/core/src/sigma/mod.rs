//! Characters of `PSAut_n` / `PSOut_n` and the Σ-criteria around them.

mod character;
mod criteria;
mod meinert;
mod raag;

use serde::Serialize;
use thiserror::Error;

use crate::complexes::ComplexError;
use crate::freegroup::FreeGroupError;
use crate::stabilizers::StabilizerError;
use crate::whitehead::WhiteheadError;

pub use character::{parse_rational, Character, MAX_GENERIC_N};
pub use criteria::{
    dense_bound, density_certificate, emptiness_verdict, euler_characteristic, orlandi_korner_sigma1,
    DensityCertificate, Evidence, Hypothesis, CERTIFICATE_MAX_LABELS,
};
pub use meinert::{
    build_meinert_graph, mccool_presentation, meinert_quotient_check, sigma2_sufficient, standard_s, Presentation,
};
pub use raag::{raag_sigma1, raag_sigma2, ChordalityReport, CommutationGraph};

#[derive(Debug, Error)]
pub enum SigmaError {
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("character is not generic: it vanishes on {0}")]
    NotGeneric(String),
    #[error(transparent)]
    Symbol(#[from] FreeGroupError),
    #[error(transparent)]
    Whitehead(#[from] WhiteheadError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SigmaStatus {
    In,
    Out,
    Unknown,
    Dense,
    Empty,
}

impl std::fmt::Display for SigmaStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SigmaStatus::In => "IN",
            SigmaStatus::Out => "OUT",
            SigmaStatus::Unknown => "UNKNOWN",
            SigmaStatus::Dense => "DENSE",
            SigmaStatus::Empty => "EMPTY",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaVerdict {
    pub status: SigmaStatus,
    pub reasons: Vec<String>,
}

impl SigmaVerdict {
    pub fn new(status: SigmaStatus, reasons: Vec<String>) -> Self {
        SigmaVerdict { status, reasons }
    }
}
