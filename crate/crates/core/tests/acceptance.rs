//! Acceptance run: one line per criterion, exit status nonzero if any fails.
//! Oracles for derived values are computed here, independently of the library
//! routine under test wherever that is practical.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use pseudomoment_spectra::apolar::{apolar_gram, apolar_ip, harmonicity_check, hs_span, sigma_sq, specht_basis};
use pseudomoment_spectra::characters::{
    char_g_inner, class_fn_f, euler_transform_check, g_to_f_expand, restricted_char_sum_closed,
};
use pseudomoment_spectra::combinatorics::{
    binomial, conjugacy_classes, factorial, int, permutations_iter, ratio, subsets_of_size,
    Permutation, Scalar, SubsetIndex,
};
use pseudomoment_spectra::linalg::QMatrix;
use pseudomoment_spectra::pseudomoments::{
    a_coeff, balanced_measure_moment, build_y, d_max, e_hs_squared_closed, e_hs_squared_direct,
    hypercube_decomposition_check, isotypic_h, pseudo_expect,
};
use pseudomoment_spectra::schur::{gram_schur_property_check, iterated_schur_on_y, volume_identity_check, GramDims};
use pseudomoment_spectra::spectrum::{
    distinctness_and_order_report, gram_reconstruction_check, lambda_closed, lambda_recursion_check,
    lambda_via_frames, multiplicity, numeric_eigensolve, psd_certificate, trace_moment_check, zero_multiplicity,
};
use pseudomoment_spectra::{Error, Result};

/// Relative tolerance of the floating eigenvalue comparison (criterion 4).
const FLOAT_REL_TOL: f64 = 1e-9;
/// Jacobi convergence threshold passed to the numeric solver.
const JACOBI_TOL: f64 = 1e-12;
/// Runtime budgets taken from the criteria.
const RECURSION_BUDGET: Duration = Duration::from_secs(1);
const NUMERIC_N14_BUDGET: Duration = Duration::from_secs(300);
const POSITIVITY_N9_BUDGET: Duration = Duration::from_secs(120);
const CHARACTER_BUDGET: Duration = Duration::from_secs(60);
const APPENDIX_BUDGET: Duration = Duration::from_secs(60);
const SEED: u64 = 42;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict { ok, detail: detail.into() })
}

// ---- oracles ----

/// Characteristic polynomial coefficients (constant term first) by Faddeev–LeVerrier.
fn char_poly(a: &QMatrix) -> Vec<Scalar> {
    let k = a.rows();
    let mut c = vec![Scalar::zero(); k + 1];
    c[k] = Scalar::one();
    let id = QMatrix::identity(k);
    let mut m = QMatrix::zeros(k, k);
    for i in 1..=k {
        m = a.mul(&m).unwrap().add(&id.scale(&c[k - i + 1])).unwrap();
        c[k - i] = -a.mul(&m).unwrap().trace() / int(i as i64);
    }
    c
}

/// `∏ (x - r)^m` with constant term first.
fn poly_from_roots(roots: &[(Scalar, usize)]) -> Vec<Scalar> {
    let mut p = vec![Scalar::one()];
    for (r, m) in roots {
        for _ in 0..*m {
            let mut next = vec![Scalar::zero(); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            p = next;
        }
    }
    p
}

fn mask_image(p: &Permutation, mask: u64, n: usize) -> u64 {
    let s = SubsetIndex::new(n, mask).unwrap();
    p.image_of_set(&s).mask()
}

/// `χ_{(n-d,d)}(π)` as (#fixed d-subsets) − (#fixed (d−1)-subsets), counted on masks.
fn chi_by_fixed_sets(p: &Permutation, n: usize) -> Vec<i64> {
    let mut fixed = vec![0i64; n + 1];
    for mask in 0u64..(1 << n) {
        if mask_image(p, mask, n) == mask {
            fixed[mask.count_ones() as usize] += 1;
        }
    }
    (0..=n / 2).map(|d| fixed[d] - if d == 0 { 0 } else { fixed[d - 1] }).collect()
}

/// `g_{a,b,k,ℓ}(π)` counted over masks.
fn g_count(p: &Permutation, n: usize, a: usize, b: usize, k: usize, l: usize) -> i64 {
    let masks = |s: usize| (0u64..(1 << n)).filter(move |m| m.count_ones() as usize == s);
    let mut count = 0;
    for ma in masks(a) {
        let ia = mask_image(p, ma, n);
        for mb in masks(b) {
            if (ma & mb).count_ones() as usize == k && (ia & mb).count_ones() as usize == l {
                count += 1;
            }
        }
    }
    count
}

fn prefix(n: usize, k: usize) -> SubsetIndex {
    SubsetIndex::from_elements(n, &(1..=k).collect::<Vec<_>>()).unwrap()
}

// ---- criteria ----

fn c01_positivity() -> Result<Verdict> {
    let mut t9 = Duration::ZERO;
    for n in 2..=9 {
        let t = Instant::now();
        let cert = psd_certificate(n)?;
        if n == 9 {
            t9 = t.elapsed();
        }
        if !cert.passed() {
            return verdict(false, format!("n={n}: {cert}"));
        }
    }
    verdict(t9 <= POSITIVITY_N9_BUDGET, format!("annihilation ∧ traces(m ≤ d_max+3) ∧ λ > 0 for 2 ≤ n ≤ 9; n=9 in {t9:.2?}"))
}

fn c02_small_spectra() -> Result<Verdict> {
    let expected: [(usize, Vec<(Scalar, usize)>); 2] =
        [(2, vec![(int(2), 1), (int(1), 1), (int(0), 1)]), (3, vec![(ratio(3, 2), 2), (int(1), 1), (int(0), 1)])];
    for (n, spec) in expected {
        let y = build_y(n)?.to_dense()?;
        if char_poly(&y) != poly_from_roots(&spec) {
            return verdict(false, format!("n={n}: characteristic polynomial differs from the expected spectrum"));
        }
        let mut lib: Vec<(Scalar, usize)> = (0..=d_max(n))
            .map(|d| Ok((lambda_closed(n, d)?, multiplicity(n, d)?.try_into().unwrap())))
            .collect::<Result<_>>()?;
        lib.push((int(0), zero_multiplicity(n).try_into().unwrap()));
        lib.sort_by(|a, b| b.0.cmp(&a.0));
        if lib != spec {
            return verdict(false, format!("n={n}: closed form and multiplicities {lib:?}"));
        }
    }
    verdict(true, "n=2: {2×1, 1×1, 0×1}; n=3: {3/2×2, 1×1, 0×1}; characteristic polynomial oracle")
}

fn c03_recursion() -> Result<Verdict> {
    let t = Instant::now();
    let out = lambda_recursion_check(40)?;
    let el = t.elapsed();
    // independent spot values
    let spot = lambda_closed(5, 2)? == ratio(15, 8) && lambda_closed(3, 1)? == ratio(3, 2) * lambda_closed(1, 0)?;
    verdict(out.passed() && spot && el < RECURSION_BUDGET, format!("{} exact cases for 3 ≤ n ≤ 40 in {el:.2?}", out.cases))
}

fn c04_three_routes() -> Result<Verdict> {
    for n in 2..=12 {
        for d in 0..=d_max(n) {
            if lambda_via_frames(n, d)? != lambda_closed(n, d)? {
                return verdict(false, format!("frames disagree at n={n}, d={d}"));
            }
        }
    }
    let mut worst = 0.0f64;
    let mut t14 = Duration::ZERO;
    for n in 2..=14 {
        let t = Instant::now();
        let numeric = numeric_eigensolve(n, JACOBI_TOL)?;
        if n == 14 {
            t14 = t.elapsed();
        }
        let mut predicted = Vec::new();
        for d in 0..=d_max(n) {
            let l = lambda_closed(n, d)?;
            let v = l.numer().to_string().parse::<f64>().unwrap() / l.denom().to_string().parse::<f64>().unwrap();
            let m: usize = multiplicity(n, d)?.try_into().unwrap();
            predicted.extend(std::iter::repeat(v).take(m));
        }
        predicted.extend(std::iter::repeat(0.0).take(zero_multiplicity(n).try_into().unwrap()));
        predicted.sort_by(|a, b| b.total_cmp(a));
        if predicted.len() != numeric.len() {
            return verdict(false, format!("n={n}: {} numeric vs {} predicted values", numeric.len(), predicted.len()));
        }
        for (x, e) in numeric.iter().zip(&predicted) {
            worst = worst.max((x - e).abs() / e.abs().max(1.0));
        }
    }
    verdict(
        worst <= FLOAT_REL_TOL && t14 <= NUMERIC_N14_BUDGET,
        format!("closed = frames exactly for n ≤ 12; float max rel. deviation {worst:.2e} for n ≤ 14 (n=14 in {t14:.1?})"),
    )
}

fn c05_restricted_sums() -> Result<Verdict> {
    let t = Instant::now();
    let mut compared = 0usize;
    for n in 1..=7 {
        let perms: Vec<Permutation> = permutations_iter(n)?.collect();
        let chis: Vec<Vec<i64>> = perms.iter().map(|p| chi_by_fixed_sets(p, n)).collect();
        let nf = factorial(n as u64);
        for a in 0..=n {
            for b in 0..=n {
                for o in (a + b).saturating_sub(n)..=a.min(b) {
                    let sa = prefix(n, a);
                    let sb = SubsetIndex::from_elements(n, &(1..=o).chain(a + 1..=a + b - o).collect::<Vec<_>>())?;
                    let lo = a.min(b);
                    let mut sums = vec![vec![0i64; lo + 1]; n / 2 + 1];
                    for (p, chi) in perms.iter().zip(&chis) {
                        let k = (mask_image(p, sa.mask(), n) & sb.mask()).count_ones() as usize;
                        for (d, c) in chi.iter().enumerate() {
                            sums[d][k] += c;
                        }
                    }
                    for d in 0..=n / 2 {
                        for k in 0..=lo {
                            match restricted_char_sum_closed(n, d, a, b, o, k) {
                                Ok(v) => {
                                    compared += 1;
                                    if v != Scalar::new(BigInt::from(sums[d][k]), nf.clone()) {
                                        return verdict(false, format!("n={n}, d={d}, a={a}, b={b}, overlap={o}, k={k}"));
                                    }
                                }
                                Err(Error::Unsupported(_)) if lo > d => {}
                                Err(e) => return verdict(false, format!("unexpected error {e}")),
                            }
                        }
                    }
                }
            }
        }
    }
    let el = t.elapsed();
    verdict(el < CHARACTER_BUDGET, format!("{compared} supported tuples for n ≤ 7 match S_n enumeration in {el:.1?}"))
}

fn c06_appendix() -> Result<Verdict> {
    let t = Instant::now();
    let mut cases = 0usize;
    for n in 1..=6 {
        let classes = conjugacy_classes(n)?;
        let reps: Vec<Permutation> = classes.iter().map(|(c, _)| c.representative()).collect();
        let nf = factorial(n as u64);
        for a in 0..=n {
            // class_fn_f against a mask count
            for k in 0..=a {
                let f = class_fn_f(n, a, k)?;
                for ((ct, _, v), p) in f.iter().zip(&reps) {
                    let want = (0u64..(1 << n))
                        .filter(|m| m.count_ones() as usize == a && (mask_image(p, *m, n) & m).count_ones() as usize == k)
                        .count();
                    cases += 1;
                    if *v != int(want as i64) {
                        return verdict(false, format!("f_{{{a},{k}}}({ct})"));
                    }
                }
            }
            let e = euler_transform_check(n, a)?;
            cases += e.cases;
            if !e.passed() {
                return verdict(false, format!("{e}"));
            }
            for b in 0..=n {
                for k in 0..=a.min(b) {
                    for l in 0..=a.min(b) {
                        let g = g_to_f_expand(n, a, b, k, l)?;
                        let counts: Vec<i64> = reps.iter().map(|p| g_count(p, n, a, b, k, l)).collect();
                        for ((ct, _, v), c) in g.iter().zip(&counts) {
                            cases += 1;
                            if *v != int(*c) {
                                return verdict(false, format!("g_{{{a},{b},{k},{l}}}({ct}) = {v}, counted {c}"));
                            }
                        }
                        for d in a..=n / 2 {
                            if a > b {
                                continue;
                            }
                            let mut s = BigInt::zero();
                            for ((ct, size), c) in classes.iter().zip(&counts) {
                                s += size * chi_by_fixed_sets(&ct.representative(), n)[d] * c;
                            }
                            cases += 1;
                            if char_g_inner(n, d, a, b, k, l)? != Scalar::new(s, nf.clone()) {
                                return verdict(false, format!("⟨χ_{d}, g_{{{a},{b},{k},{l}}}⟩"));
                            }
                        }
                    }
                }
            }
        }
    }
    let el = t.elapsed();
    verdict(el < APPENDIX_BUDGET, format!("{cases} class values and inner products for n ≤ 6 in {el:.1?}"))
}

fn c07_hs_squared() -> Result<Verdict> {
    for n in 2..=12 {
        for d in 0..=d_max(n) {
            let closed = e_hs_squared_closed(n, d)?;
            if closed != e_hs_squared_direct(n, d)? {
                return verdict(false, format!("library contraction differs at n={n}, d={d}"));
            }
            // Ẽ[h_S²] = Σ_{B,C} h_B h_C a_{|B △ C|}
            let h: Vec<(SubsetIndex, Scalar)> = isotypic_h(n, &prefix(n, d))?.terms().map(|(s, c)| (*s, c.clone())).collect();
            let a: Vec<Scalar> = (0..=n).map(|k| a_coeff(n, k)).collect::<Result<_>>()?;
            let mut total = Scalar::zero();
            for (b, cb) in &h {
                let mut row = Scalar::zero();
                for (c, cc) in &h {
                    row += cc * &a[b.symmetric_difference(c).len()];
                }
                total += cb * row;
            }
            if total != closed {
                return verdict(false, format!("double sum differs at n={n}, d={d}"));
            }
        }
    }
    verdict(true, "closed form = contraction = double sum for all d ≤ d_max, n ≤ 12")
}

fn c08_block_diagonalization() -> Result<Verdict> {
    let mut pairs = 0usize;
    for n in 2..=7 {
        let hs: Vec<Vec<_>> = (0..=d_max(n))
            .map(|d| subsets_of_size(n, d).map(|s| isotypic_h(n, &s).map(|h| (s, h))).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        for (d, block) in hs.iter().enumerate() {
            let sig = sigma_sq(n, d)?;
            let spans = block.iter().map(|(s, _)| hs_span(n, s)).collect::<Result<Vec<_>>>()?;
            for (i, (_, hi)) in block.iter().enumerate() {
                for (j, (_, hj)) in block.iter().enumerate() {
                    pairs += 1;
                    if pseudo_expect(n, &hi.mul(hj))? != &sig * apolar_ip(&spans[i], &spans[j])? {
                        return verdict(false, format!("n={n}, d={d}, pair ({i}, {j})"));
                    }
                }
            }
            for other in hs.iter().skip(d + 1) {
                for (s, hi) in block {
                    for (t, hj) in other {
                        pairs += 1;
                        if !pseudo_expect(n, &hi.mul(hj))?.is_zero() {
                            return verdict(false, format!("Ẽ[h_{s:?} h_{t:?}] ≠ 0 at n={n}"));
                        }
                    }
                }
            }
        }
    }
    verdict(true, format!("{pairs} pairs for n ≤ 7: equal sizes match σ_d²⟨h_S, h_T⟩_∘, unequal sizes vanish"))
}

fn c09_gram_reconstruction() -> Result<Verdict> {
    for n in 2..=7 {
        let out = gram_reconstruction_check(n)?;
        if !out.passed() {
            return verdict(false, format!("{out}"));
        }
    }
    let n2 = build_y(2)?.to_dense()?;
    let want = QMatrix::from_i64(&[&[1, 0, 0], &[0, 1, -1], &[0, -1, 1]]);
    verdict(n2 == want, "Σ_d σ_d² G_d = Y^(n) exactly for n ≤ 7")
}

fn c10_harmonicity() -> Result<Verdict> {
    let mut cases = 0;
    for n in 2..=7 {
        for d in 0..=d_max(n) {
            let out = harmonicity_check(n, d)?;
            cases += out.cases;
            if !out.passed() {
                return verdict(false, format!("{out}"));
            }
            let basis = specht_basis(n, d)?;
            let dim = binomial(n as i64, d as i64) - binomial(n as i64, d as i64 - 1);
            let g = apolar_gram(&basis)?;
            if BigInt::from(basis.len()) != dim || BigInt::from(g.rank()) != dim {
                return verdict(false, format!("Specht Gram at n={n}, d={d} has rank {} (want {dim})", g.rank()));
            }
        }
    }
    verdict(true, format!("{cases} annihilation and rank cases for n ≤ 7; Specht Grams nonsingular of dimension C(n,d) − C(n,d−1)"))
}

fn c11_schur() -> Result<Verdict> {
    let g = gram_schur_property_check(SEED, 100, GramDims::default())?;
    let v = volume_identity_check(SEED, 50)?;
    if !g.passed() || !v.passed() {
        return verdict(false, format!("{g}\n{v}"));
    }
    for n in 2..=7 {
        let it = iterated_schur_on_y(n, d_max(n))?;
        if !it.outcome.passed() {
            return verdict(false, format!("{}", it.outcome));
        }
        // Johnson structure re-checked here: entries depend only on |S ∩ T|
        for (k, block) in it.blocks.iter().enumerate() {
            let sets: Vec<SubsetIndex> = subsets_of_size(n, k).collect();
            let mut by_overlap: HashMap<usize, &Scalar> = HashMap::new();
            for (i, s) in sets.iter().enumerate() {
                for (j, t) in sets.iter().enumerate() {
                    let e = by_overlap.entry(s.intersection(t).len()).or_insert(block.get(i, j));
                    if *e != block.get(i, j) {
                        return verdict(false, format!("n={n}, step {k}: not constant on |S ∩ T|"));
                    }
                }
            }
            if !block.symmetric_pivots()?.psd {
                return verdict(false, format!("n={n}, step {k}: block not PSD"));
            }
        }
    }
    verdict(true, format!("Gram/projection 100 trials, volume 50 trials (seed {SEED}); iterated elimination on Y for n ≤ 7"))
}

fn c12_hypercube() -> Result<Verdict> {
    for n in 2..=8 {
        let out = hypercube_decomposition_check(n)?;
        if !out.passed() {
            return verdict(false, format!("{out}"));
        }
    }
    verdict(true, "(Σx)^k · Specht spanning set has rank 2^n for 2 ≤ n ≤ 8")
}

fn c13_balanced_measure() -> Result<Verdict> {
    for n in (2..=12).step_by(2) {
        let points: Vec<u64> = (0u64..(1 << n)).filter(|m| m.count_ones() as usize * 2 == n).collect();
        for k in 0..=n {
            let s = prefix(n, k);
            let sum: i64 = points.iter().map(|m| if (m & s.mask()).count_ones() % 2 == 1 { -1 } else { 1 }).sum();
            let enumerated = Scalar::new(BigInt::from(sum), BigInt::from(points.len()));
            let closed = balanced_measure_moment(n, &s)?;
            if closed != enumerated || closed != a_coeff(n, k)? {
                return verdict(false, format!("n={n}, |S|={k}: closed {closed}, enumerated {enumerated}"));
            }
        }
    }
    verdict(true, "closed form = {±1}^n balanced enumeration = a_|S| for even n ≤ 12")
}

fn c14_discrepancy() -> Result<Verdict> {
    let r = distinctness_and_order_report(3)?;
    let traces = trace_moment_check(3, d_max(3) + 3)?;
    let mults_ok = multiplicity(3, 0)? == BigInt::one() && multiplicity(3, 1)? == BigInt::from(2);
    let values_ok = r.values == ["1", "3/2"];
    let flagged = !r.claimed_chain_holds && r.discrepancies.iter().any(|d| d.contains("ordering"));
    let positive = (0..=1).all(|d| lambda_closed(3, d).map(|l| l.is_positive()).unwrap_or(false));
    let ok = flagged && values_ok && r.all_positive && positive && r.pairwise_distinct && mults_ok && traces.passed()
        && r.observed_order == [1, 0];
    verdict(ok, format!("n=3 ordering clause flagged as documented discrepancy: {:?}", r.discrepancies))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Verdict>); 14] = [
        ("positivity certificate, 2 ≤ n ≤ 9", c01_positivity),
        ("exact spectra at n = 2, 3", c02_small_spectra),
        ("eigenvalue recursion, n ≤ 40", c03_recursion),
        ("three-route eigenvalue agreement", c04_three_routes),
        ("restricted character sums, n ≤ 7", c05_restricted_sums),
        ("class-function identities, n ≤ 6", c06_appendix),
        ("pseudo-expected squared norm of h_S, n ≤ 12", c07_hs_squared),
        ("block diagonalization, n ≤ 7", c08_block_diagonalization),
        ("Gram reconstruction, n ≤ 7", c09_gram_reconstruction),
        ("harmonicity and Specht dimension, n ≤ 7", c10_harmonicity),
        ("Schur complement suite", c11_schur),
        ("hypercube decomposition rank, n ≤ 8", c12_hypercube),
        ("balanced-measure moments, even n ≤ 12", c13_balanced_measure),
        ("ordering discrepancy documented", c14_discrepancy),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = f().unwrap_or_else(|e| Verdict { ok: false, detail: format!("error: {e}") });
        if !v.ok {
            failed += 1;
        }
        println!(
            "criterion {:02} {} {name}: {} [{:.1?}]",
            i + 1,
            if v.ok { "PASS" } else { "FAIL" },
            v.detail,
            t.elapsed()
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
