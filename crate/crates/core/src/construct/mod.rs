//! Building braces from higher-level data.

mod cocycle;
mod holomorph;
mod iso;
pub mod presentation;
mod product;

pub use cocycle::{from_cocycle, CocycleSpec, CocycleSpecJson};
pub use holomorph::{
    braces_over, enumerate_braces, enumerate_braces_bounded, enumeration_bound,
    from_regular_subgroup, ENUM_BOUND_ENV,
};
pub use iso::{canonical_form, is_isomorphic, IsoCertificate};
pub use product::{direct_product, quotient, trivial_brace};
