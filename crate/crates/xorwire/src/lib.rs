//! Exact tools for switch-and-bulb wiring problems over GF(2).
//!
//! A wiring of n switches to n bulbs is an n x n matrix over the
//! two-element field with a unit diagonal; pressing a set of switches x
//! from an initial configuration c lights the bulbs `Wx + c`. This crate
//! computes the exact maximum lit count `M(W,c)` with witnesses, builds the
//! wiring families that minimize it within the bounded-degree classes,
//! rewrites wirings by pivoting, lights degree-2 wirings constructively,
//! and verifies the closed-form extremal values by exhaustive search at
//! small sizes.

pub mod bits;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod lighting;
pub mod pivot;
pub mod solver;
pub mod wiring;
pub mod xnf;

pub use bits::BitVector;
pub use construct::{Construction, ExtremalKind};
pub use enumerate::{ExtremalReport, SearchOptions, Verdict, VerifyLimits, VerifyReport};
pub use error::{ConstructError, Gf2Error, LightingError, ParseError, SearchError, SolveError};
pub use solver::{FeasibilityCaps, SolveResult};
pub use wiring::{apply, read_wiring, write_wiring, ClassSpec, ParsedWiring, WiringMatrix};
