//! Unique mixing of a free and a Bose observable against the sum bound.

use deformed_fock::catalog::{build_standard, Kind, ModeWindow};
use deformed_fock::ergodic::{compressed_mixing, sum_bound_check, unique_mixing_curve};
use deformed_fock::fock::build_fock;
use deformed_fock::word::ObservableWord;

fn main() -> deformed_fock::error::Result<()> {
    let w: ObservableWord = "c(0)a(1)".parse()?;
    let free = build_fock(&build_standard(Kind::Free, ModeWindow::new(0, 16)?), 2)?;
    print!("{}", unique_mixing_curve(&free, &w, &[1, 2, 4, 8, 16])?.to_csv());
    let c = sum_bound_check(&free, &w, &[0, 3, 7, 11])?;
    println!("‖Σ α^k(W)‖ = {:.4} ≤ {:.4}", c.lhs, c.bound);
    let bose = build_fock(&build_standard(Kind::Bose, ModeWindow::new(0, 12)?), 2)?;
    print!("{}", compressed_mixing(&bose, 1, &w, 1, &[1, 3, 6, 12])?.to_csv());
    Ok(())
}
