//! Builds every standard Yang-Baxter operator on three modes and prints its residuals.

use deformed_fock::catalog::{
    build_standard, commutant_residual, transposition, verify_braid, verify_bounded_below,
    verify_hecke, Kind, ModeWindow,
};

fn main() -> deformed_fock::error::Result<()> {
    let window = ModeWindow::new(0, 2)?;
    println!("{:<13} {:>4} {:>10} {:>10} {:>10} {:>10}", "kind", "q", "braid", "hecke", "T>=-I", "(0 1)");
    for kind in Kind::ALL {
        let t = build_standard(kind, window);
        let u = transposition(window, 0, 1)?;
        println!(
            "{:<13} {:>4} {:>10.2e} {:>10.2e} {:>10.2e} {:>10.2e}",
            kind.name(),
            t.hecke_q,
            verify_braid(&t),
            verify_hecke(&t, t.hecke_q),
            verify_bounded_below(&t)?,
            commutant_residual(&t, &u)?,
        );
    }
    Ok(())
}
