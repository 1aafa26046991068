//! Boolean averages converge in norm to the conditional expectation.

use deformed_fock::boolean::{
    boolean_invariant_state, conditional_expectation, e_mixing_curve, permutation_average, BooleanOp, Site,
};
use deformed_fock::catalog::ModeWindow;

fn main() -> deformed_fock::error::Result<()> {
    let window = ModeWindow::new(0, 100)?;
    let x = BooleanOp::rank_one(window, Site::Mode(0), Site::Vacuum)?;
    let l: Vec<i64> = (1..=100).collect();
    print!("{}", e_mixing_curve(&x, &l, &[1, 4, 25, 100])?.to_csv());

    let small = ModeWindow::new(0, 4)?;
    let y = BooleanOp::rank_one(small, Site::Mode(0), Site::Mode(1))?;
    let e = conditional_expectation(&y);
    for m in 2..=5 {
        let j: Vec<i64> = (0..m).collect();
        println!("|J|={m}: ‖avg − E‖ = {:.6}", (&permutation_average(&y, &j)? - &e).norm());
    }
    let p = BooleanOp::vacuum_projection(small);
    println!("φ_0.3(P_#) = {}", boolean_invariant_state(0.3, &p)?.re);
    Ok(())
}
