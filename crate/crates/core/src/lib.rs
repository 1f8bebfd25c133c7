//! Finite left skew braces: construction from tables, 1-cocycles and regular
//! subgroups of the holomorph; substructure lattices; ideal commutators;
//! central, derived, chief and relative series; Fitting and Frattini ideals;
//! subideals; and the associated set-theoretic solutions of the Yang–Baxter
//! equation.

pub mod bitset;
pub mod brace;
mod canon;
pub mod commutator;
pub mod construct;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod polynomial;
pub mod radicals;
pub mod series;
pub mod subideal;
pub mod substructure;
pub mod verify;
pub mod ybe;

pub use bitset::ElemSet;
pub use brace::{validate_brace, BraceJson, FiniteBrace};
pub use error::{Error, Result};
pub use substructure::{Kind, SubSet};
