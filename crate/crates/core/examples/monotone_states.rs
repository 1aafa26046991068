//! The segment of shift invariant states on a monotone polynomial.

use deformed_fock::catalog::ModeWindow;
use deformed_fock::cli::expr::parse_polynomial;
use deformed_fock::symbolic::coefficient::{Coefficient, Exact};
use deformed_fock::symbolic::oracle::{infinity_witness, norm_lower_bound_check, vacuum_expectation};
use deformed_fock::symbolic::polynomial::{infinity_state, invariant_state, vacuum_state};

fn main() -> deformed_fock::error::Result<()> {
    let p = parse_polynomial("2 + 3*a(5)c(5) + c(1)a(0) - 0.5*a(2)c(2)a(3)")?;
    println!("p = {p}");
    println!("ω(p) = {}   numeric {:.6}", vacuum_state(&p).render(), vacuum_expectation(&p)?.re);
    let w = ModeWindow::new(-1, 6)?;
    println!("ω_∞(p) = {}   numeric {:.6}", infinity_state(&p).render(), infinity_witness(&p, w)?.re);
    for g in ["0", "0.25", "0.5", "1"] {
        let gamma = Exact::from_decimal(g).unwrap();
        println!("φ_{g}(p) = {}", invariant_state(&gamma, &p)?.render());
    }
    let c = norm_lower_bound_check(&p, w)?;
    println!("‖p‖ ≈ {:.4} ≥ |α| = {}", c.norm_estimate, c.alpha_abs);
    Ok(())
}
