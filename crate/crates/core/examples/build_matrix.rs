//! Builds `Y^(n)`, prints a few entries, and writes it as CSV.
//!
//! `cargo run --example build_matrix -- 4`

use std::io::Write;

use pseudomoment_spectra::export::write_csv;
use pseudomoment_spectra::pseudomoments::{a_table, build_y, rank_certificate};

fn main() -> pseudomoment_spectra::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let y = build_y(n)?;
    println!("n = {n}, d_max = {}, dimension = {}", y.d_max(), y.dim());
    for (k, a) in a_table(n).iter().enumerate() {
        println!("a_{k} = {a}");
    }
    let (rank, cert) = rank_certificate(&y)?;
    println!("rank {rank} ({})", if cert.passed() { "certified" } else { "NOT certified" });

    let mut buf = Vec::new();
    write_csv(&y, &mut buf)?;
    let text = String::from_utf8(buf).expect("utf-8");
    let mut out = std::io::stdout().lock();
    for line in text.lines().take(8) {
        writeln!(out, "{line}")?;
    }
    writeln!(out, "... {} rows", text.lines().count() - 1)?;
    Ok(())
}

#[test]
fn runs() {
    main().unwrap();
}
