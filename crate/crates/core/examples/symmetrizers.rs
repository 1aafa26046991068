//! Norms of the symmetrizers `P^(n)` against the Hecke factorials.

use deformed_fock::catalog::{build_standard, Kind, ModeWindow};
use deformed_fock::fock::check_psquare;

fn main() -> deformed_fock::error::Result<()> {
    for (kind, d, top) in [(Kind::Bose, 2, 5), (Kind::Fermi, 2, 3), (Kind::Fermi, 5, 5), (Kind::Monotone, 3, 4), (Kind::Boolean, 3, 3)] {
        let t = build_standard(kind, ModeWindow::new(0, d - 1)?);
        for n in 1..=top {
            let r = check_psquare(&t, n)?;
            println!(
                "{:<9} d={d} n={n}  ‖P‖={:<10.6} n!_q={:<6} ‖P²−n!_q P‖={:.1e}",
                kind.name(), r.norm, r.factorial, r.idempotency
            );
        }
    }
    Ok(())
}
