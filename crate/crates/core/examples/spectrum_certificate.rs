//! Exact eigenvalues, multiplicities and the positivity certificate.
//!
//! `cargo run --release --example spectrum_certificate -- 9`

use pseudomoment_spectra::spectrum::{psd_certificate, spectrum_report};

fn main() -> pseudomoment_spectra::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let report = spectrum_report(n, true)?;
    for e in &report.eigenvalues {
        println!("λ_{{{n},{}}} = {:>12}  multiplicity {}", e.d, e.lambda, e.multiplicity);
    }
    println!("zero multiplicity {}", report.zero_multiplicity);
    for d in &report.discrepancies {
        println!("note: {d}");
    }
    let cert = psd_certificate(n)?;
    println!("{cert}");
    assert!(cert.passed());
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
