//! Truncated deformed Fock spaces.

pub mod boolean_fock;
pub mod checks;
pub mod gram;
pub mod model;
pub mod monotone;
pub mod operator;
pub mod tensor;

pub use boolean_fock::{specialized_boolean_fock, BooleanFock};
pub use checks::*;
pub use gram::{build_fock, build_fock_with, DeformedFock, FockOptions, LevelGram};
pub use model::{ExplicitBasis, FockModel};
pub use monotone::{specialized_monotone_fock, MonotoneFock};
pub use operator::FockOperator;
pub use tensor::{build_p, build_r, check_psquare, hecke_factorial, PsquareReport};
