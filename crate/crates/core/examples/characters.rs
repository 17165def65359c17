//! Two-row characters of `S_n` and a restricted character sum.

use pseudomoment_spectra::characters::{character, restricted_char_sum_bruteforce, restricted_char_sum_closed};
use pseudomoment_spectra::combinatorics::SubsetIndex;

fn main() -> pseudomoment_spectra::Result<()> {
    let n = 5;
    for d in 0..=n / 2 {
        let chi = character(n, d)?;
        let row: Vec<String> = chi.iter().map(|(_, _, v)| v.to_string()).collect();
        println!("χ_({},{d}) = [{}]", n - d, row.join(", "));
    }
    let classes: Vec<String> = character(n, 0)?.iter().map(|(ct, size, _)| format!("{ct}×{size}")).collect();
    println!("classes: {}", classes.join(" "));

    let a = SubsetIndex::from_elements(n, &[1, 2])?;
    let b = SubsetIndex::from_elements(n, &[2, 3])?;
    for k in 0..=2 {
        let closed = restricted_char_sum_closed(n, 2, 2, 2, 1, k)?;
        let brute = restricted_char_sum_bruteforce(n, 2, &a, &b, k)?;
        println!("(1/n!) Σ_{{|π(A)∩B|={k}}} χ_(3,2)(π) = {closed} (enumerated {brute})");
        assert_eq!(closed, brute);
    }
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
