//! Eigenvalues through the frame constants, against the closed form.

use pseudomoment_spectra::apolar::sigma_sq;
use pseudomoment_spectra::pseudomoments::d_max;
use pseudomoment_spectra::spectrum::{eta_sq_sum, lambda_closed, lambda_via_frames, tight_frame_check, FrameTable};

fn main() -> pseudomoment_spectra::Result<()> {
    let n = 6;
    let table = FrameTable::new(n)?;
    for d in 0..=d_max(n) {
        println!("d = {d}: σ² = {}", sigma_sq(n, d)?);
        for dp in (d..=d_max(n)).step_by(2) {
            println!("  η²({dp},{d}) = {}  (summed {})  f = {}", table.eta_sq(dp, d), eta_sq_sum(n, dp, d)?, table.frame_const(dp, d));
        }
        let via = lambda_via_frames(n, d)?;
        println!("  λ via frames {via}, closed {}", lambda_closed(n, d)?);
        assert_eq!(via, lambda_closed(n, d)?);
        assert!(tight_frame_check(n, d)?.passed());
    }
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
