//! Normal forms of monotone words, checked against their matrices.

use deformed_fock::cli::expr::{parse_polynomial, parse_word};
use deformed_fock::symbolic::normal_form::reduce;
use deformed_fock::symbolic::oracle::{numeric_difference, s_generator_identity_check};
use deformed_fock::symbolic::polynomial::MonotonePolynomial;
use deformed_fock::symbolic::coefficient::{Coefficient, Exact};

fn main() -> deformed_fock::error::Result<()> {
    for text in ["a(1)c(1)a(3)", "c(2)c(1)", "c(1)a(2)c(2)", "a(2)a(0)c(0)c(2)", "c(0)c(2)a(3)a(1)"] {
        let word = parse_word(text)?;
        let form = reduce(&word);
        let x = MonotonePolynomial::from_form(form.clone(), Exact::from_decimal("1").unwrap());
        let y = parse_polynomial(text)?;
        println!("{text:<20} -> {form:<16} oracle {:.1e}", numeric_difference(&x, &y)?);
    }
    let s = s_generator_identity_check(0)?;
    println!("s_0 s_1² expands to {}", s.expansion);
    println!("after number pairs: {} (oracle {:.1e})", s.rewritten, s.oracle_residual);
    Ok(())
}
