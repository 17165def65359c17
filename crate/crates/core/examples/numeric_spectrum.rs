//! Floating-point eigensolve compared with the exact prediction.
//!
//! `cargo run --release --example numeric_spectrum -- 12`

use pseudomoment_spectra::spectrum::{max_relative_deviation, numeric_eigensolve, predicted_spectrum};

fn main() -> pseudomoment_spectra::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let numeric = numeric_eigensolve(n, 1e-12)?;
    let predicted = predicted_spectrum(n)?;
    let dev = max_relative_deviation(&numeric, &predicted)?;
    println!("n = {n}: {} eigenvalues, largest {:.12}, max relative deviation {dev:.2e}", numeric.len(), numeric[0]);
    assert!(dev <= 1e-9);
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
