//! Exact model checking for first-order kinematics: a constructible-number
//! field, geometric predicates, intensional observer models, axiom checkers
//! and the twin-paradox characterization.

pub mod axioms;
pub mod constructions;
pub mod efield;
pub mod error;
pub mod geom;
pub mod linalg;
pub mod sampling;
pub mod spec_file;
pub mod twin;
pub mod worldview;
pub mod xforms;

pub use error::{Error, Result};
