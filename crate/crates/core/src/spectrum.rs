//! Eigenvalues of `Y^(n)`: the closed form, the recursion, the tight-frame
//! derivation, exact spectral certificates, and a floating-point cross-check.
//!
//! The exact certificates rely on `S_n`-invariance: every polynomial in `Y`
//! has entries that depend only on the orbit of the index pair, so a
//! polynomial in `Y` vanishes iff its column at one representative subset of
//! each size vanishes, and `tr(Y^m)` is a binomially weighted sum of
//! representative diagonal entries. Both reduce to exact matrix-vector
//! products.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::apolar::{apolar_ip, equal, frame_norm_factor, hs_span, sigma_sq, SpanPoly};
use crate::characters::dimension;
use crate::combinatorics::{
    big, binomial, binomial_prefix_sum, binomial_q, factorial, int, multinomial, ratio, sign, subsets_of_size,
    Scalar, SubsetIndex,
};
use crate::eigen::symmetric_eigenvalues;
use crate::error::{arg, capacity, Error, Result};
use crate::linalg::{common_denominator, scalar_to_f64, QMatrix};
use crate::pseudomoments::{a_coeff, a_table, build_y, d_max, isotypic_h, PseudomomentMatrix};
use crate::report::CheckOutcome;

/// Largest `n` for the exact annihilation and trace certificates.
pub const MAX_EXACT_N: usize = 12;
/// Largest `n` for the closed-form sweeps.
pub const MAX_CLOSED_N: usize = 40;
/// Largest `n` for the floating-point eigensolve.
pub const MAX_NUMERIC_N: usize = 14;
/// Largest `n` for the Gram reconstruction.
pub const MAX_RECONSTRUCTION_N: usize = 8;

fn check_d(n: usize, d: usize) -> Result<()> {
    if d > d_max(n) {
        return arg(format!("need d ≤ ⌊n/2⌋, got n={n}, d={d}"));
    }
    Ok(())
}

/// `λ_{n,d} = n! Σ_{k=d}^{d_max} a_{k-d}² / ((n-d-k)! (k-d)!) ∏_{i<d} (n-2i-1-k+d)^{-2}`.
pub fn lambda_closed(n: usize, d: usize) -> Result<Scalar> {
    if n == 0 {
        return arg("λ needs n ≥ 1");
    }
    check_d(n, d)?;
    let mut sum = Scalar::zero();
    for k in d..=d_max(n) {
        let a = a_coeff(n, k - d)?;
        if a.is_zero() {
            continue;
        }
        let mut term = &a * &a / big(factorial((n - d - k) as u64) * factorial((k - d) as u64));
        for i in 0..d {
            let f = int((n + d) as i64 - 2 * i as i64 - 1 - k as i64);
            term /= &f * &f;
        }
        sum += term;
    }
    Ok(sum * big(factorial(n as u64)))
}

pub fn lambdas(n: usize) -> Result<Vec<Scalar>> {
    (0..=d_max(n)).map(|d| lambda_closed(n, d)).collect()
}

/// `λ_{n,d} = (n/(n-1)) λ_{n-2,d-1}` for all `3 ≤ n ≤ n_max`, `1 ≤ d ≤ ⌊n/2⌋`.
pub fn lambda_recursion_check(n_max: usize) -> Result<CheckOutcome> {
    capacity("closed-form sweep (n ≤ 40)", MAX_CLOSED_N, n_max)?;
    let mut out = CheckOutcome::new(format!("lambda_recursion(n ≤ {n_max})"));
    for n in 3..=n_max {
        for d in 1..=d_max(n) {
            if d - 1 > d_max(n - 2) {
                continue;
            }
            let lhs = lambda_closed(n, d)?;
            let rhs = ratio(n as i64, n as i64 - 1) * lambda_closed(n - 2, d - 1)?;
            out.check_eq(&lhs, &rhs, || format!("n={n}, d={d}"));
        }
    }
    Ok(out)
}

/// `C(n, d) - C(n, d-1)`.
pub fn multiplicity(n: usize, d: usize) -> Result<BigInt> {
    check_d(n, d)?;
    Ok(dimension(n, d))
}

/// `C(n, ≤ d_max - 1)`.
pub fn zero_multiplicity(n: usize) -> BigInt {
    if d_max(n) == 0 {
        BigInt::zero()
    } else {
        binomial_prefix_sum(n as i64, d_max(n) as i64 - 1)
    }
}

/// `Y` scaled to integers: `D` is the lcm of the denominators of `a_k` and
/// `table[k] = D a_k`.
struct IntegerForm {
    den: BigInt,
    table: Vec<i64>,
    masks: Vec<u64>,
    n: usize,
}

impl IntegerForm {
    fn new(y: &PseudomomentMatrix) -> Self {
        let (nums, den) = common_denominator(y.a());
        let table = nums.iter().map(|x| x.to_i64().expect("scaled a_k fits i64")).collect();
        Self { den, table, masks: y.index().iter().map(|s| s.mask()).collect(), n: y.n() }
    }

    /// `(D Y) w` in `i128`; `None` on overflow.
    fn apply_i128(&self, w: &[i128]) -> Option<Vec<i128>> {
        let mut out = Vec::with_capacity(w.len());
        let mut partial = vec![0i128; self.n + 1];
        for &ms in &self.masks {
            partial.iter_mut().for_each(|x| *x = 0);
            for (&mt, &x) in self.masks.iter().zip(w) {
                if x != 0 {
                    let k = (ms ^ mt).count_ones() as usize;
                    partial[k] = partial[k].checked_add(x)?;
                }
            }
            let mut acc: i128 = 0;
            for (p, &c) in partial.iter().zip(&self.table) {
                if *p != 0 && c != 0 {
                    acc = acc.checked_add(p.checked_mul(c as i128)?)?;
                }
            }
            out.push(acc);
        }
        Some(out)
    }

    fn apply_big(&self, w: &[BigInt]) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(w.len());
        let mut partial = vec![BigInt::zero(); self.n + 1];
        for &ms in &self.masks {
            partial.iter_mut().for_each(|x| x.set_zero());
            for (&mt, x) in self.masks.iter().zip(w) {
                if !x.is_zero() {
                    partial[(ms ^ mt).count_ones() as usize] += x;
                }
            }
            out.push(partial.iter().zip(&self.table).map(|(p, &c)| p * c).sum());
        }
        out
    }
}

/// Integer vector arithmetic with an `i128` fast path and a `BigInt` fallback.
trait Lane: Sized + Clone + PartialEq {
    fn to_big(&self) -> BigInt;
    fn apply(form: &IntegerForm, w: &[Self]) -> Option<Vec<Self>>;
    /// `p·u - q·v`, elementwise.
    fn combine(p: &BigInt, u: &[Self], q: &BigInt, v: &[Self]) -> Option<Vec<Self>>;
    fn content(w: &[Self]) -> BigInt;
    fn div_exact(w: &[Self], g: &BigInt) -> Vec<Self>;
    fn vanishes(&self) -> bool;
    fn unit() -> Self;
    fn null() -> Self;
}

impl Lane for i128 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn apply(form: &IntegerForm, w: &[Self]) -> Option<Vec<Self>> {
        form.apply_i128(w)
    }
    fn combine(p: &BigInt, u: &[Self], q: &BigInt, v: &[Self]) -> Option<Vec<Self>> {
        let p = p.to_i128()?;
        let q = q.to_i128()?;
        u.iter().zip(v).map(|(a, b)| p.checked_mul(*a)?.checked_sub(q.checked_mul(*b)?)).collect()
    }
    fn content(w: &[Self]) -> BigInt {
        BigInt::from(w.iter().fold(0i128, |g, x| g.gcd(x)))
    }
    fn div_exact(w: &[Self], g: &BigInt) -> Vec<Self> {
        let g = g.to_i128().expect("content fits");
        w.iter().map(|x| x / g).collect()
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn unit() -> Self {
        1
    }
    fn null() -> Self {
        0
    }
}

impl Lane for BigInt {
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn apply(form: &IntegerForm, w: &[Self]) -> Option<Vec<Self>> {
        Some(form.apply_big(w))
    }
    fn combine(p: &BigInt, u: &[Self], q: &BigInt, v: &[Self]) -> Option<Vec<Self>> {
        Some(u.iter().zip(v).map(|(a, b)| p * a - q * b).collect())
    }
    fn content(w: &[Self]) -> BigInt {
        w.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }
    fn div_exact(w: &[Self], g: &BigInt) -> Vec<Self> {
        w.iter().map(|x| x / g).collect()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn unit() -> Self {
        BigInt::one()
    }
    fn null() -> Self {
        <BigInt as Zero>::zero()
    }
}

fn unit_vector<L: Lane>(len: usize, i: usize) -> Vec<L> {
    let mut v = vec![L::null(); len];
    v[i] = L::unit();
    v
}

fn normalize<L: Lane>(w: Vec<L>) -> Vec<L> {
    let g = L::content(&w);
    if g.is_zero() || g.is_one() {
        w
    } else {
        L::div_exact(&w, &g)
    }
}

/// Positions of the representatives `{1, …, t}` for `t = 0..=d_max`.
fn representatives(y: &PseudomomentMatrix) -> Result<Vec<(usize, usize)>> {
    (0..=y.d_max())
        .map(|t| {
            let s = SubsetIndex::from_elements(y.n(), &(1..=t).collect::<Vec<_>>())?;
            Ok((t, y.position(&s).expect("representative is indexed")))
        })
        .collect()
}

/// `Y ∏_d (Y - λ_d I) e_T`, up to a positive scalar, for one representative column.
fn annihilated_column<L: Lane>(form: &IntegerForm, col: usize, roots: &[Scalar]) -> Option<bool> {
    let mut w = L::apply(form, &unit_vector::<L>(form.masks.len(), col))?;
    w = normalize(w);
    for lam in roots {
        // (Y - p/q) w ∝ q (D Y) w - p D w
        let yw = L::apply(form, &w)?;
        let pd = lam.numer() * &form.den;
        w = normalize(L::combine(lam.denom(), &yw, &pd, &w)?);
    }
    Some(w.iter().all(L::vanishes))
}

/// `Y ∏_{d=0}^{d_max} (Y - λ_{n,d} I) = 0` exactly, using `roots` in place of the
/// closed-form eigenvalues when given.
pub fn annihilation_check_with(n: usize, roots: &[Scalar]) -> Result<CheckOutcome> {
    capacity("exact spectral certificate (n ≤ 12)", MAX_EXACT_N, n)?;
    let y = build_y(n)?;
    let form = IntegerForm::new(&y);
    let mut out = CheckOutcome::new(format!("annihilation(n={n})"));
    for (t, col) in representatives(&y)? {
        let ok = match annihilated_column::<i128>(&form, col, roots) {
            Some(ok) => ok,
            None => annihilated_column::<BigInt>(&form, col, roots).expect("BigInt lane never overflows"),
        };
        out.check(ok, || format!("column of {{1..{t}}} is not annihilated by Y·∏(Y - λ_d I)"));
    }
    Ok(out)
}

pub fn annihilation_check(n: usize) -> Result<CheckOutcome> {
    annihilation_check_with(n, &lambdas(n)?)
}

/// `(Y^m)_{T,T}` for `m = 1..=m_max` at one representative `T`.
fn diagonal_powers<L: Lane>(form: &IntegerForm, col: usize, m_max: usize) -> Option<Vec<Scalar>> {
    let mut w = unit_vector::<L>(form.masks.len(), col);
    let mut den = BigInt::one();
    let mut out = Vec::with_capacity(m_max);
    for _ in 0..m_max {
        w = L::apply(form, &w)?;
        den *= &form.den;
        let g = L::content(&w).gcd(&den);
        if !g.is_one() && !g.is_zero() {
            w = L::div_exact(&w, &g);
            den /= &g;
        }
        out.push(Scalar::new(w[col].to_big(), den.clone()));
    }
    Some(out)
}

/// `tr(Y^m)` for `m = 1..=m_max`, from representative diagonals.
pub fn trace_powers(n: usize, m_max: usize) -> Result<Vec<Scalar>> {
    capacity("exact spectral certificate (n ≤ 12)", MAX_EXACT_N, n)?;
    let y = build_y(n)?;
    let form = IntegerForm::new(&y);
    let mut traces = vec![Scalar::zero(); m_max];
    for (t, col) in representatives(&y)? {
        let diag = match diagonal_powers::<i128>(&form, col, m_max) {
            Some(v) => v,
            None => diagonal_powers::<BigInt>(&form, col, m_max).expect("BigInt lane never overflows"),
        };
        let weight = binomial_q(n as i64, t as i64);
        for (tr, v) in traces.iter_mut().zip(diag) {
            *tr += &weight * v;
        }
    }
    Ok(traces)
}

/// `tr(Y^m) = Σ_d mult(n,d) λ_{n,d}^m` for `m = 1..=m_max`, with
/// `m_max ≥ d_max + 2`.
pub fn trace_moment_check_with(n: usize, m_max: usize, values: &[Scalar]) -> Result<CheckOutcome> {
    if m_max < d_max(n) + 2 {
        return arg(format!("m_max must be at least d_max + 2 = {}", d_max(n) + 2));
    }
    let traces = trace_powers(n, m_max)?;
    let mut out = CheckOutcome::new(format!("trace_moments(n={n}, m ≤ {m_max})"));
    let mults: Vec<Scalar> = (0..=d_max(n)).map(|d| multiplicity(n, d).map(big)).collect::<Result<_>>()?;
    for (m, tr) in traces.iter().enumerate() {
        let m = m + 1;
        let predicted: Scalar = values.iter().zip(&mults).map(|(l, mu)| mu * pow(l, m)).sum();
        out.check_eq(tr, &predicted, || format!("tr(Y^{m})"));
    }
    Ok(out)
}

pub fn trace_moment_check(n: usize, m_max: usize) -> Result<CheckOutcome> {
    trace_moment_check_with(n, m_max, &lambdas(n)?)
}

fn pow(x: &Scalar, m: usize) -> Scalar {
    let mut v = Scalar::one();
    for _ in 0..m {
        v *= x;
    }
    v
}

/// Dense exact products for small `n`: the annihilating product and the
/// traces of `Y^m`. An independent route to the two certificates above.
pub fn dense_certificates(n: usize, m_max: usize) -> Result<(bool, Vec<Scalar>)> {
    capacity("dense exact powers (n ≤ 8)", 8, n)?;
    let y = build_y(n)?.to_dense()?;
    let id = QMatrix::identity(y.rows());
    let mut prod = y.clone();
    for lam in lambdas(n)? {
        prod = prod.mul(&y.sub(&id.scale(&lam))?)?;
    }
    let mut traces = Vec::with_capacity(m_max);
    let mut p = id;
    for _ in 0..m_max {
        p = p.mul(&y)?;
        traces.push(p.trace());
    }
    Ok((prod.is_zero(), traces))
}

/// Positivity certificate for `Y^(n) ⪰ 0`: annihilation, trace moments up to
/// `d_max + 3`, and `λ_{n,d} > 0`. Coinciding values are grouped, so the
/// trace identities determine the summed multiplicity of every distinct value.
pub fn psd_certificate(n: usize) -> Result<CheckOutcome> {
    let values = lambdas(n)?;
    let mut out = CheckOutcome::new(format!("psd_certificate(n={n})"));
    out.merge(annihilation_check_with(n, &distinct_values(&values))?);
    out.merge(trace_moment_check_with(n, d_max(n) + 3, &values)?);
    for (d, l) in values.iter().enumerate() {
        out.check(l.is_positive(), || format!("λ_{{{n},{d}}} = {l} is not positive"));
    }
    Ok(out)
}

fn distinct_values(values: &[Scalar]) -> Vec<Scalar> {
    let mut v = values.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Observed structure of `{λ_{n,d}}` next to what is claimed for it.
#[derive(Clone, Debug, Serialize)]
pub struct DistinctnessReport {
    pub n: usize,
    pub values: Vec<String>,
    pub all_positive: bool,
    pub pairwise_distinct: bool,
    /// Pairs `(d, d')` with `λ_{n,d} = λ_{n,d'}`.
    pub coincidences: Vec<(usize, usize)>,
    /// `d` indices sorted by decreasing `λ_{n,d}`.
    pub observed_order: Vec<usize>,
    /// Whether `λ_{n,d_max} < ⋯ < λ_{n,0}` holds.
    pub claimed_chain_holds: bool,
    /// Documented mismatches between the claimed statement and the computed values.
    pub discrepancies: Vec<String>,
}

pub fn distinctness_and_order_report(n: usize) -> Result<DistinctnessReport> {
    if n == 0 {
        return arg("need n ≥ 1");
    }
    capacity("closed-form sweep (n ≤ 40)", MAX_CLOSED_N, n)?;
    let values = lambdas(n)?;
    let all_positive = values.iter().all(Signed::is_positive);
    let mut coincidences = Vec::new();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] == values[j] {
                coincidences.push((i, j));
            }
        }
    }
    let mut observed_order: Vec<usize> = (0..values.len()).collect();
    observed_order.sort_by(|&i, &j| values[j].cmp(&values[i]).then(i.cmp(&j)));
    let claimed_chain_holds = values.windows(2).all(|w| w[1] < w[0]);
    let mut discrepancies = Vec::new();
    if !claimed_chain_holds {
        let (i, j) = (0..values.len() - 1).map(|i| (i, i + 1)).find(|&(i, j)| values[j] >= values[i]).unwrap();
        discrepancies.push(format!(
            "strict ordering λ_{{n,d_max}} < ⋯ < λ_{{n,0}} fails: λ_{{{n},{j}}} = {} ≥ λ_{{{n},{i}}} = {}",
            values[j], values[i]
        ));
    }
    if !coincidences.is_empty() {
        discrepancies.push(format!(
            "d_max + 1 nonzero values are not pairwise distinct: equal pairs {coincidences:?}"
        ));
    }
    Ok(DistinctnessReport {
        n,
        values: values.iter().map(ToString::to_string).collect(),
        all_positive,
        pairwise_distinct: coincidences.is_empty(),
        coincidences,
        observed_order,
        claimed_chain_holds,
        discrepancies,
    })
}

fn check_xs_ht(n: usize, dp: usize, d: usize, l: usize) -> Result<()> {
    if d > dp || dp > d_max(n) || l > d {
        return arg(format!("need ℓ ≤ d ≤ d' ≤ ⌊n/2⌋; got n={n}, d'={dp}, d={d}, ℓ={l}"));
    }
    Ok(())
}

/// `Ẽ[x^S h_T]` for `|S| = d'`, `|T| = d`, `|S ∩ T| = ℓ`, `d ≤ d'`:
/// `(-1)^{d+ℓ} dim C(d,ℓ) C(n-2d, d'-d) / multinomial(n; ℓ, d-ℓ, d'-ℓ, n-d-d'+ℓ)
///  · ∏_{i<d} (n-2i)/(n-d'+d-2i-1) · a_{d'-d}`.
pub fn e_xs_ht_closed(n: usize, dp: usize, d: usize, l: usize) -> Result<Scalar> {
    check_xs_ht(n, dp, d, l)?;
    let a = a_coeff(n, dp - d)?;
    if a.is_zero() {
        return Ok(Scalar::zero());
    }
    let (ni, di, dpi, li) = (n as i64, d as i64, dp as i64, l as i64);
    let m = multinomial(ni, &[li, di - li, dpi - li, ni - di - dpi + li])?;
    let mut v = sign(di + li) * Scalar::new(dimension(n, d) * binomial(di, li) * binomial(ni - 2 * di, dpi - di), m);
    for i in 0..di {
        v *= ratio(ni - 2 * i, ni - dpi + di - 2 * i - 1);
    }
    Ok(v * a)
}

/// Canonical `S`, `T` with `|S| = d'`, `|T| = d`, `|S ∩ T| = ℓ`.
fn overlap_pair(n: usize, dp: usize, d: usize, l: usize) -> Result<(SubsetIndex, SubsetIndex)> {
    if dp + d - l > n {
        return arg(format!("sizes {dp}, {d} with overlap {l} do not fit in [{n}]"));
    }
    let s: Vec<usize> = (1..=dp).collect();
    let t: Vec<usize> = (1..=l).chain(dp + 1..=dp + d - l).collect();
    Ok((SubsetIndex::from_elements(n, &s)?, SubsetIndex::from_elements(n, &t)?))
}

/// `Ẽ[x^S h_T] = Σ_B h_T(B) a_{|S △ B|}` by direct contraction; any sizes.
pub fn e_xs_ht_sets(n: usize, s: &SubsetIndex, t: &SubsetIndex) -> Result<Scalar> {
    let h = isotypic_h(n, t)?;
    let a = a_table(n);
    Ok(h.terms().map(|(b, c)| c * &a[b.symmetric_difference(s).len()]).sum())
}

pub fn e_xs_ht_direct(n: usize, dp: usize, d: usize, l: usize) -> Result<Scalar> {
    check_xs_ht(n, dp, d, l)?;
    let (s, t) = overlap_pair(n, dp, d, l)?;
    e_xs_ht_sets(n, &s, &t)
}

/// `f_{d,d} = (1/d!) (n/(n-1))^d`.
pub fn frame_const_diagonal(n: usize, d: usize) -> Scalar {
    frame_norm_factor(n, d)
}

fn check_frame(n: usize, dp: usize, d: usize) -> Result<()> {
    if d > dp || dp > d_max(n) {
        return arg(format!("need d ≤ d' ≤ ⌊n/2⌋; got n={n}, d'={dp}, d={d}"));
    }
    Ok(())
}

/// `η²_{d',d}` in closed form; zero when `d' - d` is odd.
pub fn eta_sq_closed(n: usize, dp: usize, d: usize) -> Result<Scalar> {
    check_frame(n, dp, d)?;
    let a = a_coeff(n, dp - d)?;
    if a.is_zero() {
        return Ok(Scalar::zero());
    }
    let mut prod = Scalar::one();
    for i in 0..d {
        prod *= ratio((n - 2 * i - 1) as i64, (n + d) as i64 - 2 * i as i64 - 1 - dp as i64);
    }
    let dim = big(dimension(n, d));
    let f = |k: usize| big(factorial(k as u64));
    let num = f(d) * f(dp) * f(n - dp) * f(n - 2 * d) * f(n - 2 * d);
    let den = f(n) * f(n) * f(n - d - dp) * f(dp - d);
    Ok(&a * &a
        * pow(&ratio(n as i64, n as i64 - 1), d)
        * &prod
        * &prod
        * &dim
        * &dim
        * num
        / den
        * binomial_q((n - d + 1) as i64, d as i64))
}

/// `η²_{d',d} = (1/(σ_d⁴ f_{d,d})) Σ_{|T| = d} Ẽ[x^S h_T]²` for a fixed `|S| = d'`.
pub fn eta_sq_sum(n: usize, dp: usize, d: usize) -> Result<Scalar> {
    check_frame(n, dp, d)?;
    let s = SubsetIndex::from_elements(n, &(1..=dp).collect::<Vec<_>>())?;
    let mut total = Scalar::zero();
    for t in subsets_of_size(n, d) {
        let e = e_xs_ht_sets(n, &s, &t)?;
        total += &e * &e;
    }
    let sig = sigma_sq(n, d)?;
    Ok(total / (&sig * &sig * frame_const_diagonal(n, d)))
}

/// `f_{d',d} = C(n, d') / dim · η²_{d',d}`.
pub fn frame_const(n: usize, dp: usize, d: usize) -> Result<Scalar> {
    Ok(binomial_q(n as i64, dp as i64) / big(dimension(n, d)) * eta_sq_closed(n, dp, d)?)
}

/// `η²_{d',d}` and `f_{d',d}` for `0 ≤ d ≤ d' ≤ d_max`; zero off parity.
#[derive(Clone, Debug)]
pub struct FrameTable {
    pub n: usize,
    eta: Vec<Vec<Scalar>>,
    f: Vec<Vec<Scalar>>,
}

impl FrameTable {
    pub fn new(n: usize) -> Result<Self> {
        let dm = d_max(n);
        let mut eta = vec![vec![Scalar::zero(); dm + 1]; dm + 1];
        let mut f = eta.clone();
        for dp in 0..=dm {
            for d in 0..=dp {
                eta[dp][d] = eta_sq_closed(n, dp, d)?;
                f[dp][d] = frame_const(n, dp, d)?;
            }
        }
        Ok(Self { n, eta, f })
    }

    pub fn eta_sq(&self, dp: usize, d: usize) -> Scalar {
        self.eta.get(dp).and_then(|r| r.get(d)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn frame_const(&self, dp: usize, d: usize) -> Scalar {
        self.f.get(dp).and_then(|r| r.get(d)).cloned().unwrap_or_else(Scalar::zero)
    }
}

/// `Σ_{|T| = d} ⟨h_S, h_T⟩_∘ h_T = f_{d,d} h_S` for every `|S| = d`.
pub fn tight_frame_check(n: usize, d: usize) -> Result<CheckOutcome> {
    capacity("tight frame check (n ≤ 8)", 8, n)?;
    check_d(n, d)?;
    let mut out = CheckOutcome::new(format!("tight_frame(n={n}, d={d})"));
    let hs: Vec<(SubsetIndex, SpanPoly)> =
        subsets_of_size(n, d).map(|s| hs_span(n, &s).map(|h| (s, h))).collect::<Result<_>>()?;
    let f = frame_const_diagonal(n, d);
    for (s, h) in &hs {
        let mut acc = SpanPoly::zero(n, d);
        for (_, g) in &hs {
            acc = acc.add(&g.scale(&apolar_ip(h, g)?))?;
        }
        out.check(equal(&acc, &h.scale(&f))?, || format!("frame identity fails at S = {s:?}"));
    }
    Ok(out)
}

/// `λ_{n,d} = σ_d² Σ_{d' ≥ d} f_{d',d}`.
pub fn lambda_via_frames(n: usize, d: usize) -> Result<Scalar> {
    check_d(n, d)?;
    let mut s = Scalar::zero();
    for dp in (d..=d_max(n)).step_by(2) {
        s += frame_const(n, dp, d)?;
    }
    Ok(sigma_sq(n, d)? * s)
}

/// `Σ_d σ_d² G_d = Y` with `(G_d)_{S,T} = (1/(f_{d,d} σ_d⁴)) Σ_{|R| = d} Ẽ[x^S h_R] Ẽ[x^T h_R]`,
/// where `E_d = Y H_d` is formed by exact contraction of `Y` with the `h_R`.
pub fn gram_reconstruction_check(n: usize) -> Result<CheckOutcome> {
    capacity("Gram reconstruction (n ≤ 8)", MAX_RECONSTRUCTION_N, n)?;
    let y = build_y(n)?;
    let dense = y.to_dense()?;
    let mut sum = QMatrix::zeros(y.dim(), y.dim());
    let mut out = CheckOutcome::new(format!("gram_reconstruction(n={n})"));
    for d in 0..=y.d_max() {
        let rs: Vec<SubsetIndex> = subsets_of_size(n, d).collect();
        let mut h = QMatrix::zeros(y.dim(), rs.len());
        for (j, r) in rs.iter().enumerate() {
            for (b, c) in isotypic_h(n, r)?.terms() {
                h.set(y.position(b).expect("degree ≤ d_max"), j, c.clone());
            }
        }
        let e = dense.mul(&h)?;
        let sig = sigma_sq(n, d)?;
        let g = e.mul(&e.transpose())?.scale(&(Scalar::one() / (frame_const_diagonal(n, d) * &sig * &sig)));
        let pivots = g.symmetric_pivots()?;
        out.check(pivots.psd, || format!("G_{d} is not PSD"));
        sum = sum.add(&g.scale(&sig))?;
    }
    let diff = sum.sub(&dense)?;
    out.check(diff.is_zero(), || "Σ_d σ_d² G_d differs from Y".into());
    Ok(out)
}

/// Eigenvalues of `Y^(n)` in `f64`, sorted descending. The two parity blocks
/// are solved separately; `tol` is the Jacobi off-diagonal threshold.
pub fn numeric_eigensolve(n: usize, tol: f64) -> Result<Vec<f64>> {
    if !(tol > 0.0 && tol.is_finite()) {
        return arg(format!("tolerance must be positive and finite, got {tol}"));
    }
    capacity("numeric eigensolve (n ≤ 14)", MAX_NUMERIC_N, n)?;
    let y = build_y(n)?;
    let mut all = Vec::with_capacity(y.dim());
    for parity in 0..2 {
        let pos = y.parity_positions(parity);
        let mut block = y.to_f64_block(&pos);
        all.extend(symmetric_eigenvalues(&mut block, pos.len(), tol)?);
    }
    all.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    Ok(all)
}

/// The multiset `{λ_{n,d} × mult} ∪ {0 × zero_mult}`, sorted descending, in `f64`.
pub fn predicted_spectrum(n: usize) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (d, l) in lambdas(n)?.iter().enumerate() {
        let m = multiplicity(n, d)?.to_usize().expect("multiplicity fits usize");
        out.extend(std::iter::repeat(scalar_to_f64(l)).take(m));
    }
    out.extend(std::iter::repeat(0.0).take(zero_multiplicity(n).to_usize().expect("fits")));
    out.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    Ok(out)
}

/// Largest `|x - e| / max(|e|, 1)` between sorted numeric and predicted spectra.
pub fn max_relative_deviation(numeric: &[f64], predicted: &[f64]) -> Result<f64> {
    if numeric.len() != predicted.len() {
        return Err(Error::Numeric(format!("{} numeric vs {} predicted eigenvalues", numeric.len(), predicted.len())));
    }
    Ok(numeric.iter().zip(predicted).map(|(x, e)| crate::linalg::relative_deviation(*x, *e)).fold(0.0, f64::max))
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenEntry {
    pub d: usize,
    pub lambda: String,
    pub multiplicity: String,
}

/// Exact spectrum of `Y^(n)` with the verification flags that apply at this `n`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub d_max: usize,
    pub eigenvalues: Vec<EigenEntry>,
    pub zero_multiplicity: String,
    pub total: String,
    /// `None` when `n` is outside the exact certificate range.
    pub annihilation: Option<bool>,
    pub traces: Option<bool>,
    pub rank: Option<bool>,
    pub distinct: bool,
    pub all_positive: bool,
    pub observed_order: Vec<usize>,
    pub discrepancies: Vec<String>,
}

/// Assembles the report. `certify` runs the exact annihilation, trace and rank checks (`n ≤ 12`).
pub fn spectrum_report(n: usize, certify: bool) -> Result<SpectrumReport> {
    let values = lambdas(n)?;
    let dist = distinctness_and_order_report(n)?;
    let eigenvalues = values
        .iter()
        .enumerate()
        .map(|(d, l)| Ok(EigenEntry { d, lambda: l.to_string(), multiplicity: multiplicity(n, d)?.to_string() }))
        .collect::<Result<Vec<_>>>()?;
    let total = binomial_prefix_sum(n as i64, d_max(n) as i64);
    let (mut annihilation, mut traces, mut rank) = (None, None, None);
    if certify && n <= MAX_EXACT_N && n >= 2 {
        annihilation = Some(annihilation_check_with(n, &distinct_values(&values))?.passed());
        traces = Some(trace_moment_check_with(n, d_max(n) + 3, &values)?.passed());
        let y = build_y(n)?;
        let (r, rep) = crate::pseudomoments::rank_certificate(&y)?;
        rank = Some(rep.passed() && BigInt::from(r) == &total - zero_multiplicity(n));
    }
    Ok(SpectrumReport {
        n,
        d_max: d_max(n),
        eigenvalues,
        zero_multiplicity: zero_multiplicity(n).to_string(),
        total: total.to_string(),
        annihilation,
        traces,
        rank,
        distinct: dist.pairwise_distinct,
        all_positive: dist.all_positive,
        observed_order: dist.observed_order,
        discrepancies: dist.discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_small_values() {
        assert_eq!(lambdas(2).unwrap(), vec![int(1), int(2)]);
        assert_eq!(lambdas(3).unwrap(), vec![int(1), ratio(3, 2)]);
        assert_eq!(lambdas(5).unwrap(), vec![ratio(13, 8), ratio(5, 4), ratio(15, 8)]);
        assert_eq!(lambda_closed(1, 0).unwrap(), int(1));
        for n in 2..=20 {
            let s: Scalar = (0..=d_max(n)).map(|k| binomial_q(n as i64, k as i64) * pow(&a_coeff(n, k).unwrap(), 2)).sum();
            assert_eq!(lambda_closed(n, 0).unwrap(), s);
        }
        assert!(lambda_closed(4, 3).is_err());
    }

    #[test]
    fn recursion_and_multiplicities() {
        assert!(lambda_recursion_check(40).unwrap().passed());
        let m: Vec<BigInt> = (0..=2).map(|d| multiplicity(5, d).unwrap()).collect();
        assert_eq!(m, vec![BigInt::from(1), BigInt::from(4), BigInt::from(5)]);
        assert_eq!(zero_multiplicity(5), BigInt::from(6));
        assert_eq!(zero_multiplicity(2), BigInt::from(1));
        for n in 2..=20 {
            let total: BigInt = (0..=d_max(n)).map(|d| multiplicity(n, d).unwrap()).sum::<BigInt>() + zero_multiplicity(n);
            assert_eq!(total, binomial_prefix_sum(n as i64, d_max(n) as i64));
        }
    }

    #[test]
    fn certificates_agree_with_dense_products() {
        for n in 2..=6 {
            let m = d_max(n) + 3;
            let (zero, dense_traces) = dense_certificates(n, m).unwrap();
            assert!(zero);
            assert_eq!(trace_powers(n, m).unwrap(), dense_traces);
            assert!(annihilation_check(n).unwrap().passed());
            assert!(trace_moment_check(n, m).unwrap().passed());
        }
        assert_eq!(trace_powers(3, 2).unwrap()[1], ratio(11, 2));
        assert_eq!(trace_powers(2, 1).unwrap()[0], int(3));
    }

    #[test]
    fn wrong_root_is_detected() {
        let mut roots = lambdas(5).unwrap();
        roots[1] += ratio(1, 1000);
        assert!(!annihilation_check_with(5, &roots).unwrap().passed());
        assert!(!trace_moment_check_with(5, 5, &roots).unwrap().passed());
    }

    #[test]
    fn report_on_ordering() {
        let r = distinctness_and_order_report(3).unwrap();
        assert!(r.pairwise_distinct && r.all_positive && !r.claimed_chain_holds);
        assert_eq!(r.observed_order, vec![1, 0]);
        assert_eq!(r.discrepancies.len(), 1);
        let r6 = distinctness_and_order_report(6).unwrap();
        assert_eq!(r6.coincidences, vec![(0, 2)]);
    }

    #[test]
    fn xs_ht_examples() {
        assert_eq!(e_xs_ht_closed(5, 2, 0, 0).unwrap(), ratio(-1, 4));
        assert_eq!(e_xs_ht_direct(5, 2, 0, 0).unwrap(), ratio(-1, 4));
        assert_eq!(e_xs_ht_closed(6, 2, 1, 1).unwrap(), int(0));
        for n in 2..=7 {
            for d in 0..=d_max(n) {
                assert_eq!(
                    e_xs_ht_closed(n, d, d, d).unwrap(),
                    crate::pseudomoments::e_hs_squared_closed(n, d).unwrap()
                );
            }
        }
    }

    #[test]
    fn frames_small() {
        assert_eq!(lambda_via_frames(3, 1).unwrap(), ratio(3, 2));
        for n in 2..=6 {
            for d in 0..=d_max(n) {
                assert_eq!(lambda_via_frames(n, d).unwrap(), lambda_closed(n, d).unwrap());
                assert!(tight_frame_check(n, d).unwrap().passed());
                assert_eq!(eta_sq_closed(n, d, 0).unwrap(), pow(&a_coeff(n, d).unwrap(), 2));
            }
        }
    }

    #[test]
    fn numeric_small() {
        let w = numeric_eigensolve(3, 1e-12).unwrap();
        for (x, e) in w.iter().zip([1.5, 1.5, 1.0, 0.0]) {
            assert!((x - e).abs() < 1e-9);
        }
        assert!(numeric_eigensolve(3, 0.0).is_err());
        assert!(numeric_eigensolve(15, 1e-12).is_err());
    }
}
