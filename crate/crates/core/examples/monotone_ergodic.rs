//! Cesàro averages of `a_0 a†_0` stay at norm distance one from the vacuum projection.

use deformed_fock::catalog::ModeWindow;
use deformed_fock::ergodic::{cesaro_distance, nilpotence_witness, vector_cesaro_residual};
use deformed_fock::fock::{specialized_monotone_fock, FockOperator, FockModel};
use deformed_fock::word::ObservableWord;

fn main() -> deformed_fock::error::Result<()> {
    let fock = specialized_monotone_fock(ModeWindow::new(0, 30)?, Some(2))?;
    let w: ObservableWord = "a(0)c(0)".parse()?;
    let p = FockOperator::vacuum_projection(fock.level_dims());
    print!("{}", cesaro_distance(&fock, &w, &p, &[1, 5, 10, 25])?.to_csv());
    for j in [1, 3, 7] {
        let e = fock.basis_vector(&[j])?;
        let r = vector_cesaro_residual(&fock, &w, &p, &e, 10)?;
        println!("vector e_({j}), n=10: {r:.4}");
    }
    for text in ["c(0)a(1)", "a(2)a(0)", "a(0)", "a(0)c(0)"] {
        let w: ObservableWord = text.parse()?;
        match nilpotence_witness(&w) {
            Ok(k) => println!("{text}: α^{k}(W)W = 0"),
            Err(e) => println!("{text}: {e}"),
        }
    }
    Ok(())
}
