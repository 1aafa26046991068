//! Level dimensions of the truncated Fock spaces and the Wick commutation residual.

use deformed_fock::catalog::{build_standard, Kind, ModeWindow};
use deformed_fock::fock::{build_fock, wick_residual, FockModel};

fn main() -> deformed_fock::error::Result<()> {
    let window = ModeWindow::new(0, 2)?;
    for kind in Kind::ALL {
        let t = build_standard(kind, window);
        let fock = build_fock(&t, 3)?;
        let mut worst: f64 = 0.0;
        for i in window.modes() {
            for j in window.modes() {
                worst = worst.max(wick_residual(&fock, &t, i, j)?);
            }
        }
        println!(
            "{:<13} dims={:?} M_T={:.3} wick={worst:.1e}",
            kind.name(),
            fock.level_dims(),
            fock.m_t_estimate()
        );
    }
    Ok(())
}
