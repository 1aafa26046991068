//! Exact calculus of the monotone word algebra.

pub mod coefficient;
pub mod normal_form;
pub mod oracle;
pub mod polynomial;

pub use coefficient::{Coefficient, Exact};
pub use normal_form::{reduce, NormalForm};
pub use oracle::{
    infinity_witness, norm_lower_bound_check, numeric_matrix, numeric_matrix_on,
    polynomials_equal, s_generator_identity_check, vacuum_expectation,
};
pub use polynomial::{infinity_state, invariant_state, vacuum_state, MonotonePolynomial};
