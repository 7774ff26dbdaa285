//! Tower of Hanoi with parity-restricted pegs.
//!
//! Four pegs: two neutral pegs that accept any disc, one that accepts only
//! even-numbered discs and one that accepts only odd-numbered discs. The crate
//! computes exact optimal move counts, generates optimal move sequences, and
//! builds the state graph to check its structural properties.

pub mod analysis;
pub mod error;
pub mod model;
pub mod sequences;
pub mod solver;
pub mod stategraph;
pub mod verify;

pub use error::{Error, Result};
pub use model::{Move, Peg, State, StateIndex, Task};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/solver.md")]
    mod solver {}
    #[doc = include_str!("../../../book/src/graph.md")]
    mod graph {}
    #[doc = include_str!("../../../book/src/analysis.md")]
    mod analysis {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
