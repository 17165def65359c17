//! Schur complements: the seeded Gram checks and elimination down `Y^(n)`.

use pseudomoment_spectra::schur::{gram_schur_property_check, iterated_schur_on_y, volume_identity_check, GramDims};

fn main() -> pseudomoment_spectra::Result<()> {
    println!("{}", gram_schur_property_check(42, 100, GramDims::default())?);
    println!("{}", volume_identity_check(42, 50)?);
    let it = iterated_schur_on_y(6, 3)?;
    for (k, vals) in it.johnson_values.iter().enumerate() {
        let vals: Vec<String> = vals.iter().map(ToString::to_string).collect();
        println!("after {k} eliminations: values by |S ∩ T| = [{}]", vals.join(", "));
    }
    println!("{}", it.outcome);
    assert!(it.outcome.passed());
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
