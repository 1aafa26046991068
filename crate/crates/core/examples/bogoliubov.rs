//! Second quantization of a mode permutation and its covariance residual.

use deformed_fock::catalog::{build_standard, permutation_unitary, translation_covariance_residual, Kind, ModeWindow};
use deformed_fock::fock::{bogoliubov_covariance_check, build_fock};

fn main() -> deformed_fock::error::Result<()> {
    let window = ModeWindow::new(0, 2)?;
    let cycle = permutation_unitary(&[1, 2, 0])?;
    for kind in [Kind::Free, Kind::Bose, Kind::Fermi, Kind::Boolean] {
        let fock = build_fock(&build_standard(kind, window), 3)?;
        println!("{:<8} covariance residual {:.1e}", kind.name(), bogoliubov_covariance_check(&fock, &cycle)?);
    }
    let fock = build_fock(&build_standard(Kind::Monotone, window), 3)?;
    match bogoliubov_covariance_check(&fock, &cycle) {
        Ok(r) => println!("monotone residual {r:.3}"),
        Err(e) => println!("monotone: {e}"),
    }
    let t = build_standard(Kind::Monotone, window);
    println!("monotone translation covariance {:.1e}", translation_covariance_residual(&t)?);
    Ok(())
}
