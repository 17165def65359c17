//! The coefficients `a_k`, the pseudomoment matrix `Y^(n)`, the
//! pseudoexpectation on multilinear polynomials, and the isotypic
//! projections `h_S`.

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::apolar::standard_tableaux;
use crate::characters::{char_two_row, dimension};
use crate::combinatorics::{
    big, binomial, binomial_q, enumerate_subsets, factorial, formal_half_binomial, int, multinomial,
    permutations_iter, sign, subsets_of_size, Permutation, Scalar, SubsetIndex, MAX_PERMUTATION_N,
};
use crate::error::{arg, capacity, Error, Result};
use crate::linalg::{rank_mod_p, QMatrix, CERT_PRIME};
use crate::report::CheckOutcome;

/// Ground-set range accepted by [`build_y`].
pub const MIN_N: usize = 2;
pub const MAX_N: usize = 16;
/// Largest `n` for which [`PseudomomentMatrix::to_dense`] materializes exact entries.
pub const MAX_DENSE_N: usize = 12;

pub fn d_max(n: usize) -> usize {
    n / 2
}

/// `a_k = 1{k even} (-1)^{k/2} ∏_{i<k/2} (2i+1)/(n-2i-1)`.
pub fn a_coeff(n: usize, k: usize) -> Result<Scalar> {
    if k > n {
        return arg(format!("a_k needs k ≤ n, got n={n}, k={k}"));
    }
    if k % 2 == 1 {
        return Ok(Scalar::zero());
    }
    let mut v = sign((k / 2) as i64);
    for i in 0..k / 2 {
        v *= Scalar::new(BigInt::from(2 * i + 1), BigInt::from(n - 2 * i - 1));
    }
    Ok(v)
}

/// `a_0, …, a_n`.
pub fn a_table(n: usize) -> Vec<Scalar> {
    (0..=n).map(|k| a_coeff(n, k).expect("k ≤ n")).collect()
}

/// Checks `s a_{s-1} + (n-s) a_{s+1} = 0` for `1 ≤ s ≤ n-1` and
/// `a_k = (-1)^{k/2} C(n/2, k/2) / C(n, k)` (formal half binomial) for even `k`.
pub fn a_recursion_check(n: usize) -> Result<CheckOutcome> {
    if n < 2 {
        return arg("a_recursion_check needs n ≥ 2");
    }
    let a = a_table(n);
    let mut out = CheckOutcome::new(format!("a_recursion(n={n})"));
    for s in 1..n {
        let lhs = int(s as i64) * &a[s - 1] + int((n - s) as i64) * &a[s + 1];
        out.check(lhs.is_zero(), || format!("|S|={s}: s·a_(s-1) + (n-s)·a_(s+1) = {lhs}"));
    }
    for k in (0..=n).step_by(2) {
        let want = sign((k / 2) as i64) * formal_half_binomial(n as i64, (k / 2) as i64)? / binomial_q(n as i64, k as i64);
        out.check_eq(&a[k], &want, || format!("a_{k} vs half binomial"));
    }
    Ok(out)
}

/// A polynomial on `{±1}^n`, stored by its multilinear coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearPoly {
    n: usize,
    coeffs: BTreeMap<SubsetIndex, Scalar>,
}

impl MultilinearPoly {
    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut p = Self::zero(n);
        p.add_term(SubsetIndex::empty(n), c);
        p
    }

    pub fn monomial(s: SubsetIndex) -> Self {
        let mut p = Self::zero(s.ground());
        p.add_term(s, Scalar::one());
        p
    }

    /// `x_i` for a 1-based `i`.
    pub fn variable(n: usize, i: usize) -> Result<Self> {
        Ok(Self::monomial(SubsetIndex::from_elements(n, &[i])?))
    }

    /// `x_1 + ⋯ + x_n`.
    pub fn sum_of_variables(n: usize) -> Self {
        let mut p = Self::zero(n);
        for s in subsets_of_size(n, 1) {
            p.add_term(s, Scalar::one());
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, s: SubsetIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(s).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn coeff(&self, s: &SubsetIndex) -> Scalar {
        self.coeffs.get(s).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SubsetIndex, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|s| s.len()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(*s, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        for (s, v) in self.terms() {
            out.add_term(*s, v * c);
        }
        out
    }

    /// Product reduced modulo `x_i² = 1`: monomials multiply by symmetric difference.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (s, a) in self.terms() {
            for (t, b) in other.terms() {
                out.add_term(s.symmetric_difference(t), a * b);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::constant(self.n, Scalar::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `p(x_{π(1)}, …)` relabelled so that `x^S ↦ x^{π(S)}`.
    pub fn permute(&self, pi: &Permutation) -> Self {
        let mut out = Self::zero(self.n);
        for (s, c) in self.terms() {
            out.add_term(pi.image_of_set(s), c.clone());
        }
        out
    }

    /// Value at a point of `{±1}^n` given as a sign mask (bit set means `x_i = -1`).
    pub fn evaluate(&self, negative_mask: u64) -> Scalar {
        self.terms()
            .map(|(s, c)| if (s.mask() & negative_mask).count_ones() % 2 == 1 { -c.clone() } else { c.clone() })
            .sum()
    }
}

/// `Ẽ[p] = Σ_S p_S a_{|S|}`.
pub fn pseudo_expect(n: usize, p: &MultilinearPoly) -> Result<Scalar> {
    if p.n != n {
        return arg(format!("polynomial lives on [{}], not [{n}]", p.n));
    }
    let a = a_table(n);
    Ok(p.terms().map(|(s, c)| c * &a[s.len()]).sum())
}

/// `Y^(n)` in canonical subset order. Entries are computed from the `a_k`
/// table on demand; [`PseudomomentMatrix::to_dense`] materializes them.
#[derive(Clone, Debug)]
pub struct PseudomomentMatrix {
    n: usize,
    d_max: usize,
    index: Vec<SubsetIndex>,
    position: HashMap<u64, usize>,
    a: Vec<Scalar>,
}

pub fn build_y(n: usize) -> Result<PseudomomentMatrix> {
    if n < MIN_N {
        return arg(format!("Y^(n) needs n ≥ {MIN_N}, got {n}"));
    }
    capacity("pseudomoment matrix ground set (n ≤ 16)", MAX_N, n)?;
    let dm = d_max(n);
    let index = enumerate_subsets(n, dm)?;
    let position = index.iter().enumerate().map(|(i, s)| (s.mask(), i)).collect();
    Ok(PseudomomentMatrix { n, d_max: dm, index, position, a: a_table(n) })
}

impl PseudomomentMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn index(&self) -> &[SubsetIndex] {
        &self.index
    }

    pub fn a(&self) -> &[Scalar] {
        &self.a
    }

    pub fn position(&self, s: &SubsetIndex) -> Option<usize> {
        self.position.get(&s.mask()).copied()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.a[(self.index[i].mask() ^ self.index[j].mask()).count_ones() as usize]
    }

    pub fn entry_sets(&self, s: &SubsetIndex, t: &SubsetIndex) -> &Scalar {
        &self.a[s.symmetric_difference(t).len()]
    }

    /// Positions of the subsets of each size `0..=d_max`, contiguous in canonical order.
    pub fn degree_blocks(&self) -> Vec<Range<usize>> {
        let mut out = Vec::with_capacity(self.d_max + 1);
        let mut start = 0;
        for d in 0..=self.d_max {
            let len = binomial(self.n as i64, d as i64);
            let end = start + usize::try_from(len).expect("block size fits usize");
            out.push(start..end);
            start = end;
        }
        out
    }

    /// Positions with `|S| ≡ parity (mod 2)`; `Y` is block diagonal on the two classes.
    pub fn parity_positions(&self, parity: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.index[i].len() % 2 == parity).collect()
    }

    pub fn to_dense(&self) -> Result<QMatrix> {
        capacity("exact dense pseudomoment matrix (n ≤ 12)", MAX_DENSE_N, self.n)?;
        Ok(QMatrix::from_fn(self.dim(), self.dim(), |i, j| self.entry(i, j).clone()))
    }

    /// Dense `f64` copy of the principal submatrix on `positions`, row-major.
    pub fn to_f64_block(&self, positions: &[usize]) -> Vec<f64> {
        let table: Vec<f64> = self.a.iter().map(crate::linalg::scalar_to_f64).collect();
        let mut out = Vec::with_capacity(positions.len() * positions.len());
        for &i in positions {
            let mi = self.index[i].mask();
            for &j in positions {
                out.push(table[(mi ^ self.index[j].mask()).count_ones() as usize]);
            }
        }
        out
    }

    /// `Y v` for an exact vector indexed in canonical order.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.dim() {
            return arg("vector length does not match Y");
        }
        // group by |S △ T| first, then apply each distinct entry once
        let mut out = Vec::with_capacity(self.dim());
        for s in &self.index {
            let mut partial = vec![Scalar::zero(); self.n + 1];
            for (t, x) in self.index.iter().zip(v) {
                if !x.is_zero() {
                    partial[(s.mask() ^ t.mask()).count_ones() as usize] += x;
                }
            }
            out.push(partial.iter().zip(&self.a).filter(|(p, _)| !p.is_zero()).map(|(p, a)| p * a).sum());
        }
        Ok(out)
    }

    /// Coordinates of a polynomial of degree ≤ d_max in canonical order.
    pub fn coordinates(&self, p: &MultilinearPoly) -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (s, c) in p.terms() {
            let i = self
                .position(s)
                .ok_or_else(|| Error::Argument(format!("monomial {s:?} exceeds degree d_max = {}", self.d_max)))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// `Ẽ[p q] = coords(p)ᵀ Y coords(q)` for polynomials of degree ≤ d_max.
    pub fn bilinear(&self, p: &MultilinearPoly, q: &MultilinearPoly) -> Result<Scalar> {
        let mut total = Scalar::zero();
        for (s, a) in p.terms() {
            for (t, b) in q.terms() {
                total += a * b * self.entry_sets(s, t);
            }
        }
        Ok(total)
    }
}

/// Balanced measure moment `(-1)^{|S|/2} C(n/2, |S|/2) / C(n, |S|)` for even `|S|`, 0 for odd.
pub fn balanced_measure_moment(n: usize, s: &SubsetIndex) -> Result<Scalar> {
    if n % 2 == 1 {
        return arg(format!("the balanced measure needs even n, got {n}"));
    }
    capacity("balanced measure closed form (n ≤ 20)", 20, n)?;
    let k = s.len();
    if k % 2 == 1 {
        return Ok(Scalar::zero());
    }
    let (n, k) = (n as i64, k as i64);
    Ok(sign(k / 2) * Scalar::new(binomial(n / 2, k / 2), binomial(n, k)))
}

/// `E[x^S]` for `x` uniform over the `C(n, n/2)` points of `{±1}^n` with zero sum.
pub fn balanced_measure_moment_enumerated(n: usize, s: &SubsetIndex) -> Result<Scalar> {
    if n % 2 == 1 {
        return arg(format!("the balanced measure needs even n, got {n}"));
    }
    capacity("balanced measure enumeration (n ≤ 14)", 14, n)?;
    let mut total = 0i64;
    let mut count = 0i64;
    for neg in 0u64..(1 << n) {
        if neg.count_ones() as usize * 2 != n {
            continue;
        }
        count += 1;
        total += if (neg & s.mask()).count_ones() % 2 == 1 { -1 } else { 1 };
    }
    Ok(Scalar::new(BigInt::from(total), BigInt::from(count)))
}

fn check_h_size(n: usize, s: &SubsetIndex) -> Result<usize> {
    if s.ground() != n {
        return arg("subset lives on a different ground set");
    }
    let d = s.len();
    if d > d_max(n) {
        return arg(format!("h_S needs |S| ≤ ⌊n/2⌋, got |S| = {d}, n = {n}"));
    }
    Ok(d)
}

/// Coefficient of `x^B` in `h_S` when `|S ∩ B| = l`:
/// `dim · (-1)^{d+l} / multinomial(n; d, d-l, n-2d+l)`.
pub fn isotypic_coefficient(n: usize, d: usize, l: usize) -> Scalar {
    let (ni, di, li) = (n as i64, d as i64, l as i64);
    let m = multinomial(ni, &[di, di - li, ni - 2 * di + li]).expect("parts sum to n");
    sign(di + li) * Scalar::new(dimension(n, d), m)
}

/// `h_S`, the projection of `x^S` onto the `(n-d, d)` isotypic component, from the closed form.
pub fn isotypic_h(n: usize, s: &SubsetIndex) -> Result<MultilinearPoly> {
    let d = check_h_size(n, s)?;
    let coeffs: Vec<Scalar> = (0..=d).map(|l| isotypic_coefficient(n, d, l)).collect();
    let mut p = MultilinearPoly::zero(n);
    for b in subsets_of_size(n, d) {
        p.add_term(b, coeffs[b.intersection(s).len()].clone());
    }
    Ok(p)
}

/// `h_S = (dim / n!) Σ_π χ_{(n-d,d)}(π) x^{π(S)}`, summed over all of `S_n`.
pub fn isotypic_h_bruteforce(n: usize, s: &SubsetIndex) -> Result<MultilinearPoly> {
    capacity("brute-force permutation enumeration (n ≤ 9)", MAX_PERMUTATION_N, n)?;
    let d = check_h_size(n, s)?;
    let mut acc: HashMap<SubsetIndex, BigInt> = HashMap::new();
    for p in permutations_iter(n)? {
        *acc.entry(p.image_of_set(s)).or_default() += char_two_row(n, d, &p.cycle_type())?;
    }
    let scale = Scalar::new(dimension(n, d), factorial(n as u64));
    let mut out = MultilinearPoly::zero(n);
    for (t, c) in acc {
        out.add_term(t, big(c) * &scale);
    }
    Ok(out)
}

/// `(n-2d+1)/(n-d+1) · ∏_{i<d} (n-2i)/(n-2i-1)`.
pub fn e_hs_squared_closed(n: usize, d: usize) -> Result<Scalar> {
    if d > d_max(n) {
        return arg(format!("need d ≤ ⌊n/2⌋, got n={n}, d={d}"));
    }
    let mut v = Scalar::new(BigInt::from(n - 2 * d + 1), BigInt::from(n - d + 1));
    for i in 0..d {
        v *= Scalar::new(BigInt::from(n - 2 * i), BigInt::from(n - 2 * i - 1));
    }
    Ok(v)
}

/// `Ẽ[h_S x^S]` by contracting the closed-form coefficients of `h_S` against `a`,
/// with `S = {1, …, d}`. Equals `Ẽ[h_S²]` because `h_S - x^S` is orthogonal to `h_S`.
pub fn e_hs_squared_direct(n: usize, d: usize) -> Result<Scalar> {
    if d > d_max(n) {
        return arg(format!("need d ≤ ⌊n/2⌋, got n={n}, d={d}"));
    }
    let s = SubsetIndex::from_elements(n, &(1..=d).collect::<Vec<_>>())?;
    let h = isotypic_h(n, &s)?;
    let a = a_table(n);
    Ok(h.terms().map(|(b, c)| c * &a[b.symmetric_difference(&s).len()]).sum())
}

/// `Ẽ[h_S²]` through the full reduced product; used as a third route on small `n`.
pub fn e_hs_squared_product(n: usize, d: usize) -> Result<Scalar> {
    let s = SubsetIndex::from_elements(n, &(1..=d).collect::<Vec<_>>())?;
    let h = isotypic_h(n, &s)?;
    pseudo_expect(n, &h.mul(&h))
}

fn check_fd(n: usize, a: usize, k: usize) -> Result<()> {
    if 2 * (k + a) > n {
        return arg(format!("finite difference needs 2(k + a) ≤ n, got n={n}, a={a}, k={k}"));
    }
    Ok(())
}

/// `Δ^a f(k) = a_{2k} ∏_{i<a} (n-2i)/(n-2k-2i-1)` for `f(j) = a_{2j}`.
pub fn finite_difference_a(n: usize, a: usize, k: usize) -> Result<Scalar> {
    check_fd(n, a, k)?;
    let mut v = a_coeff(n, 2 * k)?;
    for i in 0..a {
        v *= Scalar::new(BigInt::from(n - 2 * i), BigInt::from(n - 2 * k - 2 * i - 1));
    }
    Ok(v)
}

/// `Σ_j (-1)^j C(a, j) a_{2(k+j)}`.
pub fn finite_difference_a_direct(n: usize, a: usize, k: usize) -> Result<Scalar> {
    check_fd(n, a, k)?;
    let mut v = Scalar::zero();
    for j in 0..=a {
        v += sign(j as i64) * binomial_q(a as i64, j as i64) * a_coeff(n, 2 * (k + j))?;
    }
    Ok(v)
}

/// `∏_a (x_{i_a} - x_{j_a})` for a standard tableau with column pairs `(i_a, j_a)`.
pub fn specht_polynomial(n: usize, pairs: &[(usize, usize)]) -> Result<MultilinearPoly> {
    let mut p = MultilinearPoly::constant(n, Scalar::one());
    for &(i, j) in pairs {
        let diff = MultilinearPoly::variable(n, i)?.sub(&MultilinearPoly::variable(n, j)?);
        p = p.mul(&diff);
    }
    Ok(p)
}

pub const MAX_DECOMPOSITION_N: usize = 8;

/// The polynomials `(Σ x_i)^k w` over Specht polynomials `w` of shape
/// `(n-d, d)` and `0 ≤ k ≤ n-2d`, reduced to multilinear form, as rows of
/// a `2^n`-column coefficient matrix.
pub fn hypercube_spanning_matrix(n: usize) -> Result<QMatrix> {
    capacity("hypercube decomposition (n ≤ 8)", MAX_DECOMPOSITION_N, n)?;
    let cols = enumerate_subsets(n, n)?;
    let pos: HashMap<u64, usize> = cols.iter().enumerate().map(|(i, s)| (s.mask(), i)).collect();
    let sum = MultilinearPoly::sum_of_variables(n);
    let powers: Vec<MultilinearPoly> = (0..=n).map(|k| sum.pow(k)).collect();
    let mut rows = Vec::new();
    for d in 0..=n / 2 {
        for t in standard_tableaux(n, d)? {
            let w = specht_polynomial(n, &t.column_pairs())?;
            for power in powers.iter().take(n - 2 * d + 1) {
                let p = power.mul(&w);
                let mut row = vec![Scalar::zero(); cols.len()];
                for (s, c) in p.terms() {
                    row[pos[&s.mask()]] = c.clone();
                }
                rows.push(row);
            }
        }
    }
    QMatrix::from_rows(rows)
}

/// Dimension count `Σ_d (n-2d+1)(C(n,d) - C(n,d-1)) = 2^n`, full rank of the
/// spanning matrix (certified over `GF(p)`, which bounds the rational rank
/// from below), and `Ẽ[(Σ x_i) x^S] = 0` for `|S| ≤ n-2`.
pub fn hypercube_decomposition_check(n: usize) -> Result<CheckOutcome> {
    capacity("hypercube decomposition (n ≤ 8)", MAX_DECOMPOSITION_N, n)?;
    let mut out = CheckOutcome::new(format!("hypercube_decomposition(n={n})"));
    let count: BigInt = (0..=n / 2).map(|d| BigInt::from(n - 2 * d + 1) * dimension(n, d)).sum();
    let full = BigInt::one() << n;
    out.check_eq(&count, &full, || "dimension count".to_string());
    let m = hypercube_spanning_matrix(n)?;
    let rank = rank_mod_p(&m, CERT_PRIME).ok_or_else(|| Error::Numeric("certificate prime divides a denominator".into()))?;
    out.check(rank == 1 << n, || format!("rank {rank} < 2^{n} over GF(p)"));
    let sum = MultilinearPoly::sum_of_variables(n);
    for s in enumerate_subsets(n, n.saturating_sub(2))? {
        let e = pseudo_expect(n, &sum.mul(&MultilinearPoly::monomial(s)))?;
        out.check(e.is_zero(), || format!("Ẽ[(Σx) x^{s:?}] = {e}"));
    }
    Ok(out)
}

/// Up to this dimension every kernel witness is multiplied out.
pub const EXHAUSTIVE_WITNESS_DIM: usize = 400;

/// `(Σ x_i) x^S` as a coordinate vector over `Y`'s index, for `|S| < d_max`.
pub fn kernel_witnesses(y: &PseudomomentMatrix) -> Result<Vec<Vec<Scalar>>> {
    let sum = MultilinearPoly::sum_of_variables(y.n());
    let mut out = Vec::new();
    for s in enumerate_subsets(y.n(), y.d_max().saturating_sub(1))? {
        if y.d_max() == 0 {
            break;
        }
        out.push(y.coordinates(&sum.mul(&MultilinearPoly::monomial(s)))?);
    }
    Ok(out)
}

/// Exact rank of `Y^(n)`, certified from both sides: the independent
/// kernel witnesses `(Σ x_i) x^S` give `rank ≤ N - #witnesses`, and the
/// rank over `GF(p)` of each parity block gives a lower bound.
pub fn rank_certificate(y: &PseudomomentMatrix) -> Result<(usize, CheckOutcome)> {
    let mut out = CheckOutcome::new(format!("rank(n={})", y.n()));
    let wit = kernel_witnesses(y)?;
    // S_n permutes the witnesses and fixes Y, so one witness per size suffices
    // beyond the exhaustive range
    let exhaustive = y.dim() <= EXHAUSTIVE_WITNESS_DIM;
    let mut last_size = None;
    for (i, (w, s)) in wit.iter().zip(y.index()).enumerate() {
        if !exhaustive && last_size == Some(s.len()) {
            continue;
        }
        last_size = Some(s.len());
        let yw = y.mul_vec(w)?;
        out.check(yw.iter().all(Zero::is_zero), || format!("kernel witness {i} (S = {s:?}) is not annihilated"));
    }
    let indep = if wit.is_empty() {
        0
    } else {
        let m = QMatrix::from_rows(wit.clone())?;
        rank_mod_p(&m, CERT_PRIME).ok_or_else(|| Error::Numeric("certificate prime divides a denominator".into()))?
    };
    out.check(indep == wit.len(), || format!("kernel witnesses have rank {indep} < {}", wit.len()));
    let mut lower = 0;
    for parity in 0..2 {
        let pos = y.parity_positions(parity);
        let block = QMatrix::from_fn(pos.len(), pos.len(), |i, j| y.entry(pos[i], pos[j]).clone());
        lower += rank_mod_p(&block, CERT_PRIME).ok_or_else(|| Error::Numeric("certificate prime divides a denominator".into()))?;
    }
    let upper = y.dim() - indep;
    out.check(lower == upper, || format!("rank bounds do not meet: {lower} ≤ rank ≤ {upper}"));
    Ok((lower, out))
}

/// `|x|` of the largest magnitude coefficient; a convenience for diagnostics.
pub fn max_abs_coeff(p: &MultilinearPoly) -> Scalar {
    p.terms().map(|(_, c)| c.abs()).max().unwrap_or_else(Scalar::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::ratio;

    #[test]
    fn a_examples() {
        for n in 2..=12 {
            assert_eq!(a_coeff(n, 2).unwrap(), ratio(-1, n as i64 - 1));
            assert_eq!(a_coeff(n, 1).unwrap(), int(0));
            assert_eq!(a_coeff(n, 0).unwrap(), int(1));
        }
        assert_eq!(a_coeff(5, 4).unwrap(), ratio(3, 8));
        assert!(a_coeff(3, 4).is_err());
        for n in 2..=30 {
            assert!(a_recursion_check(n).unwrap().passed());
        }
    }

    #[test]
    fn y_small() {
        let y = build_y(2).unwrap();
        let want = QMatrix::from_i64(&[&[1, 0, 0], &[0, 1, -1], &[0, -1, 1]]);
        assert_eq!(y.to_dense().unwrap(), want);
        let y3 = build_y(3).unwrap().to_dense().unwrap();
        assert_eq!(*y3.get(1, 2), ratio(-1, 2));
        assert!(build_y(1).is_err());
        assert!(matches!(build_y(17), Err(Error::Capacity { .. })));
        let y16 = build_y(16).unwrap();
        assert_eq!(y16.dim(), 39203);
        assert!(y16.to_dense().is_err());
    }

    #[test]
    fn pseudo_expectation_examples() {
        for n in 2..=10 {
            let s = MultilinearPoly::sum_of_variables(n);
            assert!(pseudo_expect(n, &s.mul(&s)).unwrap().is_zero());
            assert_eq!(pseudo_expect(n, &MultilinearPoly::constant(n, int(1))).unwrap(), int(1));
        }
    }

    #[test]
    fn balanced_measure() {
        let s = SubsetIndex::from_elements(4, &[1, 2]).unwrap();
        assert_eq!(balanced_measure_moment(4, &s).unwrap(), ratio(-1, 3));
        assert_eq!(balanced_measure_moment_enumerated(4, &s).unwrap(), ratio(-1, 3));
        assert!(balanced_measure_moment(5, &s).is_err());
        let odd = SubsetIndex::from_elements(6, &[1, 2, 5]).unwrap();
        assert_eq!(balanced_measure_moment(6, &odd).unwrap(), int(0));
        assert_eq!(balanced_measure_moment(6, &SubsetIndex::empty(6)).unwrap(), int(1));
    }

    #[test]
    fn isotypic_examples() {
        let s = SubsetIndex::from_elements(3, &[1]).unwrap();
        let h = isotypic_h(3, &s).unwrap();
        assert_eq!(h.coeff(&s), ratio(2, 3));
        assert_eq!(h.coeff(&SubsetIndex::from_elements(3, &[2]).unwrap()), ratio(-1, 3));
        assert_eq!(h, isotypic_h_bruteforce(3, &s).unwrap());
        for n in 2..=8 {
            assert_eq!(isotypic_h(n, &SubsetIndex::empty(n)).unwrap(), MultilinearPoly::constant(n, int(1)));
        }
        assert!(isotypic_h(3, &SubsetIndex::from_elements(3, &[1, 2]).unwrap()).is_err());
    }

    #[test]
    fn hs_squared_examples() {
        assert_eq!(e_hs_squared_closed(3, 1).unwrap(), int(1));
        assert_eq!(e_hs_squared_direct(3, 1).unwrap(), int(1));
        for n in 2..=8 {
            for d in 0..=n / 2 {
                assert_eq!(e_hs_squared_product(n, d).unwrap(), e_hs_squared_closed(n, d).unwrap());
            }
        }
    }

    #[test]
    fn finite_difference_examples() {
        assert_eq!(finite_difference_a(5, 2, 0).unwrap(), ratio(15, 8));
        assert_eq!(finite_difference_a_direct(5, 2, 0).unwrap(), ratio(15, 8));
        assert_eq!(finite_difference_a(6, 0, 2).unwrap(), a_coeff(6, 4).unwrap());
        assert!(finite_difference_a(5, 2, 1).is_err());
    }

    #[test]
    fn mul_vec_matches_dense() {
        for n in 2..=6 {
            let y = build_y(n).unwrap();
            let dense = y.to_dense().unwrap();
            let v: Vec<Scalar> = (0..y.dim()).map(|i| ratio(i as i64 % 5 - 2, 1 + i as i64 % 3)).collect();
            assert_eq!(y.mul_vec(&v).unwrap(), dense.mul_vec(&v).unwrap());
        }
    }

    #[test]
    fn rank_small() {
        for n in 2..=6 {
            let y = build_y(n).unwrap();
            let (rank, rep) = rank_certificate(&y).unwrap();
            assert!(rep.passed(), "{rep}");
            assert_eq!(BigInt::from(rank), binomial(n as i64, (n / 2) as i64));
            assert_eq!(y.to_dense().unwrap().rank(), rank);
        }
    }

    #[test]
    fn decomposition_small() {
        for n in 1..=5 {
            assert!(hypercube_decomposition_check(n).unwrap().passed());
            assert_eq!(hypercube_spanning_matrix(n).unwrap().rank(), 1 << n);
        }
    }
}
