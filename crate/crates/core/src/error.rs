use thiserror::Error;

use crate::model::Move;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("illegal move {mv} in state {state}")]
    IllegalMove { state: String, mv: Move },

    #[error("disc {disc} may not rest on peg {peg}")]
    InfeasibleState { disc: u32, peg: u8 },

    #[error("{n} discs exceeds the supported maximum of {max}")]
    TooManyDiscs { n: u32, max: u32 },

    #[error("invalid state word {0:?}")]
    ParseState(String),

    #[error("invalid peg {0}")]
    InvalidPeg(u8),

    #[error("n = {n} is outside the exact-arithmetic range (max {max})")]
    Overflow { n: u32, max: u32 },

    #[error("closed form for {sequence} at n = {n} ({parity}) is not an integer: {value}")]
    NonIntegralClosedForm {
        sequence: char,
        parity: &'static str,
        n: u32,
        value: String,
    },

    #[error("closed form for {sequence} at n = {n} ({parity}) is negative: {value}")]
    NegativeClosedForm {
        sequence: char,
        parity: &'static str,
        n: u32,
        value: String,
    },

    #[error("state space of {states} vertices exceeds the cap of {cap}")]
    CapExceeded { states: u64, cap: u64 },

    #[error("coloring failed: {0}")]
    ColoringFailed(String),

    #[error("invalid certificate: {0}")]
    CertificateInvalid(String),

    #[error("nonplanarity witness failed: {0}")]
    WitnessFailed(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
