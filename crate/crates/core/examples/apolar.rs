//! Harmonic polynomials in the simplex frame and the apolar inner product.

use pseudomoment_spectra::apolar::{apolar_gram, harmonicity_check, hs_span, specht_basis, SimplexGram};
use pseudomoment_spectra::combinatorics::SubsetIndex;
use pseudomoment_spectra::pseudomoments::{isotypic_h, pseudo_expect};

fn main() -> pseudomoment_spectra::Result<()> {
    let n = 5;
    println!("simplex frame Gram:\n{:?}", SimplexGram::new(n)?.matrix());
    let s = SubsetIndex::from_elements(n, &[1, 2])?;
    println!("h_{{1,2}} = {:?}", isotypic_h(n, &s)?.terms().map(|(t, c)| format!("{c}·x{t}")).collect::<Vec<_>>());
    println!("Ẽ[h_S²] = {}", pseudo_expect(n, &isotypic_h(n, &s)?.pow(2))?);
    println!("h_S in the frame has {} terms", hs_span(n, &s)?.num_terms());
    for d in 0..=2 {
        let basis = specht_basis(n, d)?;
        let gram = apolar_gram(&basis)?;
        println!("d = {d}: {} Specht polynomials, Gram rank {}", basis.len(), gram.rank());
        assert!(harmonicity_check(n, d)?.passed());
    }
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
