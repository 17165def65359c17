//! Runs the verification catalogue over a small range of `n`.

use pseudomoment_spectra::verify::{run, VerifyOptions};

fn main() -> pseudomoment_spectra::Result<()> {
    let opts = VerifyOptions { n_min: 2, n_max: 5, ..VerifyOptions::default() };
    let report = run(&opts)?;
    print!("{report}");
    assert!(report.ok);
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
