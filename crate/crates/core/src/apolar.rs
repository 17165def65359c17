//! Polynomials in the simplex frame `ℓ_i = ⟨v_i, z⟩`, where `v_1, …, v_n` are
//! unit vectors with `⟨v_i, v_j⟩ = -1/(n-1)` for `i ≠ j`. Everything stays
//! rational because only the Gram matrix of the frame is ever used.
//!
//! The apolar inner product of two products of linear forms is the
//! permanent of their Gram matrix divided by the degree factorial.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::characters::dimension;
use crate::combinatorics::{
    big, binomial_q, factorial, int, ratio, subsets_of_size, Multiset, Permutation, Scalar, SubsetIndex,
};
use crate::error::{arg, capacity, Error, Result};
use crate::linalg::{common_denominator, PivotVerdict, QMatrix};
use crate::pseudomoments::{d_max, isotypic_coefficient};
use crate::report::CheckOutcome;

/// Largest matrix handed to [`permanent`].
pub const MAX_PERMANENT: usize = 12;

/// Gram matrix of the simplex frame: `1` on the diagonal, `-1/(n-1)` elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplexGram {
    n: usize,
}

impl SimplexGram {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return arg("the simplex frame needs n ≥ 2");
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `M_{ij}` for 0-based frame indices.
    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        if i == j {
            Scalar::one()
        } else {
            ratio(-1, self.n as i64 - 1)
        }
    }

    /// `(n-1) M_{ij}`, an integer.
    pub fn scaled_entry(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.n as i64 - 1
        } else {
            -1
        }
    }

    pub fn matrix(&self) -> QMatrix {
        QMatrix::from_fn(self.n, self.n, |i, j| self.entry(i, j))
    }

    /// An explicit `f64` realization in `R^n`: `v_i = √(n/(n-1)) (e_i - 𝟙/n)`.
    pub fn realize(&self) -> Vec<Vec<f64>> {
        let n = self.n as f64;
        let s = (n / (n - 1.0)).sqrt();
        (0..self.n)
            .map(|i| (0..self.n).map(|j| s * (if i == j { 1.0 } else { 0.0 } - 1.0 / n)).collect())
            .collect()
    }
}

/// A homogeneous polynomial `Σ_T c_T ∏_{i ∈ T} ℓ_i` over multisets `T` of
/// frame indices (0-based). The representation is not unique, since
/// `Σ_i ℓ_i = 0`; compare with [`equals_zero`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanPoly {
    n: usize,
    degree: usize,
    coeffs: BTreeMap<Multiset, Scalar>,
}

impl SpanPoly {
    pub fn zero(n: usize, degree: usize) -> Self {
        Self { n, degree, coeffs: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut p = Self::zero(n, 0);
        p.add_term(Multiset::empty(), c);
        p
    }

    /// `ℓ_i = ⟨v_i, z⟩` for a 1-based frame index.
    pub fn linear(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return arg(format!("frame index {i} outside [{n}]"));
        }
        let mut p = Self::zero(n, 1);
        p.add_term(Multiset::from_zero_based([i - 1]), Scalar::one());
        Ok(p)
    }

    /// `∏_{i ∈ T} ℓ_i` for a multiset of 0-based frame indices.
    pub fn product(n: usize, t: Multiset) -> Self {
        let mut p = Self::zero(n, t.len());
        p.add_term(t, Scalar::one());
        p
    }

    /// `(Vᵀ z)^S = ∏_{i ∈ S} ℓ_i`.
    pub fn frame_monomial(s: &SubsetIndex) -> Self {
        Self::product(s.ground(), Multiset::from_subset(s))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multiset, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add_term(&mut self, t: Multiset, c: Scalar) {
        assert_eq!(t.len(), self.degree, "SpanPoly terms must be homogeneous");
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(t.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&t);
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return arg(format!("frame sizes differ: {} vs {}", self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        if self.degree != other.degree {
            return arg("sum of SpanPolys of different degrees");
        }
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for (t, v) in self.terms() {
            out.add_term(t.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.n, self.degree + other.degree);
        for (t, a) in self.terms() {
            for (u, b) in other.terms() {
                out.add_term(t.union(u), a * b);
            }
        }
        Ok(out)
    }

    /// Relabels frame indices: `ℓ_i ↦ ℓ_{π(i)}`.
    pub fn permute(&self, pi: &Permutation) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for (t, c) in self.terms() {
            out.add_term(pi.image_of_multiset(t), c.clone());
        }
        out
    }
}

thread_local! {
    static PERMANENT_CACHE: RefCell<HashMap<(usize, usize, Vec<(u8, u8)>), BigInt>> = RefCell::new(HashMap::new());
}

/// Permanent of the integer matrix `((n-1) M_{t_i u_j})`.
/// It depends only on `n`, the degree, and the multiset of
/// (multiplicity in `t`, multiplicity in `u`) over shared indices.
fn scaled_pair_permanent(gram: SimplexGram, t: &Multiset, u: &Multiset) -> BigInt {
    let ct = t.grouped();
    let cu = u.grouped();
    let mut key: Vec<(u8, u8)> = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < ct.len() && j < cu.len() {
        match ct[i].0.cmp(&cu[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                key.push((ct[i].1 as u8, cu[j].1 as u8));
                i += 1;
                j += 1;
            }
        }
    }
    key.sort_unstable();
    let cache_key = (gram.n, t.len(), key);
    if let Some(v) = PERMANENT_CACHE.with(|c| c.borrow().get(&cache_key).cloned()) {
        return v;
    }
    let d = t.len();
    let te = t.elements();
    let ue = u.elements();
    let m: Vec<i128> = (0..d * d)
        .map(|k| gram.scaled_entry(te[k / d] as usize, ue[k % d] as usize) as i128)
        .collect();
    let v = ryser_i128(&m, d).map(BigInt::from).unwrap_or_else(|| {
        let q = QMatrix::from_fn(d, d, |i, j| int(m[i * d + j] as i64));
        permanent_ryser(&q).numer().clone()
    });
    PERMANENT_CACHE.with(|c| c.borrow_mut().insert(cache_key, v.clone()));
    v
}

/// Ryser's formula on an integer matrix; `None` on overflow.
fn ryser_i128(m: &[i128], d: usize) -> Option<i128> {
    if d == 0 {
        return Some(1);
    }
    let mut total: i128 = 0;
    let mut row_sums = vec![0i128; d];
    // Gray-code walk over column subsets
    let mut prev_gray = 0usize;
    for k in 1..(1usize << d) {
        let gray = k ^ (k >> 1);
        let changed = (gray ^ prev_gray).trailing_zeros() as usize;
        let adding = gray & (1 << changed) != 0;
        for (i, s) in row_sums.iter_mut().enumerate() {
            let x = m[i * d + changed];
            *s = if adding { s.checked_add(x)? } else { s.checked_sub(x)? };
        }
        let mut prod: i128 = 1;
        for s in &row_sums {
            prod = prod.checked_mul(*s)?;
        }
        let bits = gray.count_ones() as usize;
        total = if (d - bits) % 2 == 0 { total.checked_add(prod)? } else { total.checked_sub(prod)? };
        prev_gray = gray;
    }
    Some(total)
}

/// Ryser's formula over the rationals.
fn permanent_ryser(m: &QMatrix) -> Scalar {
    let d = m.rows();
    if d == 0 {
        return Scalar::one();
    }
    let mut total = Scalar::zero();
    for cols in 1usize..(1 << d) {
        let mut prod = Scalar::one();
        for i in 0..d {
            let s: Scalar = (0..d).filter(|j| cols >> j & 1 == 1).map(|j| m.get(i, j).clone()).sum();
            prod *= s;
            if prod.is_zero() {
                break;
            }
        }
        if (d - cols.count_ones() as usize) % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

/// Exact permanent of a square rational matrix (Ryser), size ≤ 12.
pub fn permanent(m: &QMatrix) -> Result<Scalar> {
    if !m.is_square() {
        return arg("permanent of a non-square matrix");
    }
    capacity("permanent size (≤ 12)", MAX_PERMANENT, m.rows())?;
    Ok(permanent_ryser(m))
}

/// Permanent by expansion along the first row; an independent oracle for small sizes.
pub fn permanent_expansion(m: &QMatrix) -> Result<Scalar> {
    if !m.is_square() {
        return arg("permanent of a non-square matrix");
    }
    capacity("permanent expansion size (≤ 9)", 9, m.rows())?;
    fn rec(m: &QMatrix, row: usize, used: u32) -> Scalar {
        if row == m.rows() {
            return Scalar::one();
        }
        let mut s = Scalar::zero();
        for j in 0..m.cols() {
            if used >> j & 1 == 0 && !m.get(row, j).is_zero() {
                s += m.get(row, j) * rec(m, row + 1, used | 1 << j);
            }
        }
        s
    }
    Ok(rec(m, 0, 0))
}

/// `⟨p, q⟩_∘`; zero for different degrees.
pub fn apolar_ip(p: &SpanPoly, q: &SpanPoly) -> Result<Scalar> {
    p.compatible(q)?;
    if p.degree != q.degree {
        return Ok(Scalar::zero());
    }
    capacity("apolar degree (≤ 12)", MAX_PERMANENT, p.degree)?;
    if p.coeffs.is_empty() || q.coeffs.is_empty() {
        return Ok(Scalar::zero());
    }
    let gram = SimplexGram::new(p.n)?;
    let pv: Vec<Scalar> = p.coeffs.values().cloned().collect();
    let qv: Vec<Scalar> = q.coeffs.values().cloned().collect();
    let (pn, pd) = common_denominator(&pv);
    let (qn, qd) = common_denominator(&qv);
    let mut total = BigInt::zero();
    for (t, a) in p.coeffs.keys().zip(&pn) {
        let mut row = BigInt::zero();
        for (u, b) in q.coeffs.keys().zip(&qn) {
            row += b * scaled_pair_permanent(gram, t, u);
        }
        total += a * row;
    }
    let d = p.degree as u32;
    let den = pd * qd * BigInt::from(p.n - 1).pow(d) * factorial(d as u64);
    Ok(Scalar::new(total, den))
}

/// `p = 0` as a polynomial, tested through the positive definite apolar norm.
pub fn equals_zero(p: &SpanPoly) -> bool {
    p.num_terms() == 0 || apolar_ip(p, p).map(|v| v.is_zero()).unwrap_or(false)
}

pub fn equal(p: &SpanPoly, q: &SpanPoly) -> Result<bool> {
    Ok(equals_zero(&p.sub(q)?))
}

/// `⟨v_j, ∂⟩ p` for a 1-based frame index `j`.
pub fn derive(p: &SpanPoly, j: usize) -> Result<SpanPoly> {
    if j == 0 || j > p.n {
        return arg(format!("frame index {j} outside [{}]", p.n));
    }
    if p.degree == 0 {
        return Err(Error::Argument("cannot differentiate a degree-0 SpanPoly".into()));
    }
    let gram = SimplexGram::new(p.n)?;
    let mut out = SpanPoly::zero(p.n, p.degree - 1);
    for (t, c) in p.terms() {
        for (e, mult) in t.grouped() {
            let w = gram.entry(j - 1, e as usize) * int(mult as i64) * c;
            out.add_term(t.remove_one(e).expect("element present"), w);
        }
    }
    Ok(out)
}

/// `q(∂) r`, with `ℓ_i` acting as `⟨v_i, ∂⟩`.
pub fn apply_as_operator(q: &SpanPoly, r: &SpanPoly) -> Result<SpanPoly> {
    q.compatible(r)?;
    if q.degree > r.degree {
        return arg("operator degree exceeds the degree of its argument");
    }
    let mut out = SpanPoly::zero(r.n, r.degree - q.degree);
    for (u, c) in q.terms() {
        let mut cur = r.clone();
        for &i in u.elements() {
            cur = derive(&cur, i as usize + 1)?;
        }
        out = out.add(&cur.scale(c))?;
    }
    Ok(out)
}

/// `⟨p q, r⟩ = (a! / (a+b)!) ⟨p, q(∂) r⟩` with `a = deg p`, `b = deg q`.
pub fn adjointness_check(p: &SpanPoly, q: &SpanPoly, r: &SpanPoly) -> Result<bool> {
    if r.degree != p.degree + q.degree {
        return arg(format!("deg r = {} must equal deg p + deg q = {}", r.degree, p.degree + q.degree));
    }
    let lhs = apolar_ip(&p.mul(q)?, r)?;
    let rhs = apolar_ip(p, &apply_as_operator(q, r)?)?
        * Scalar::new(factorial(p.degree as u64), factorial((p.degree + q.degree) as u64));
    Ok(lhs == rhs)
}

/// A standard tableau of shape `(n-d, d)`, entries 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoRowTableau {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

impl TwoRowTableau {
    /// Column pairs `(i_a, j_a)`: top entry, bottom entry.
    pub fn column_pairs(&self) -> Vec<(usize, usize)> {
        self.second.iter().enumerate().map(|(a, &j)| (self.first[a], j)).collect()
    }

    pub fn is_standard(&self) -> bool {
        self.first.windows(2).all(|w| w[0] < w[1])
            && self.second.windows(2).all(|w| w[0] < w[1])
            && self.column_pairs().iter().all(|(i, j)| i < j)
    }
}

/// Standard tableaux of shape `(n-d, d)` in lexicographic order of the second row.
pub fn standard_tableaux(n: usize, d: usize) -> Result<Vec<TwoRowTableau>> {
    if 2 * d > n {
        return arg(format!("shape (n-d, d) needs d ≤ n/2, got n={n}, d={d}"));
    }
    let mut out = Vec::new();
    for s in subsets_of_size(n, d) {
        let second: Vec<usize> = s.elements().collect();
        let first: Vec<usize> = (1..=n).filter(|e| !s.contains(*e)).collect();
        let t = TwoRowTableau { first, second };
        if t.is_standard() {
            out.push(t);
        }
    }
    Ok(out)
}

/// `∏_a (ℓ_{i_a} - ℓ_{j_a})` over the standard tableaux of shape `(n-d, d)`.
pub fn specht_basis(n: usize, d: usize) -> Result<Vec<SpanPoly>> {
    let tableaux = standard_tableaux(n, d)?;
    let mut out = Vec::with_capacity(tableaux.len());
    for t in tableaux {
        let mut p = SpanPoly::constant(n, Scalar::one());
        for (i, j) in t.column_pairs() {
            p = p.mul(&SpanPoly::linear(n, i)?.sub(&SpanPoly::linear(n, j)?)?)?;
        }
        out.push(p);
    }
    Ok(out)
}

/// Exact Gram matrix `(⟨b_i, b_j⟩_∘)`.
pub fn apolar_gram(basis: &[SpanPoly]) -> Result<QMatrix> {
    let k = basis.len();
    let mut g = QMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..=i {
            let v = apolar_ip(&basis[i], &basis[j])?;
            g.set(j, i, v.clone());
            g.set(i, j, v);
        }
    }
    Ok(g)
}

pub const MAX_JOHNSON_N: usize = 12;

/// `(n-d+1) I + A(J(n, d-1))` on the `(d-1)`-subsets, with its symmetric pivots.
pub fn johnson_slice_gram(n: usize, d: usize) -> Result<(QMatrix, PivotVerdict)> {
    if d == 0 || 2 * d > n {
        return arg(format!("Johnson slice Gram needs 1 ≤ d ≤ n/2, got n={n}, d={d}"));
    }
    capacity("Johnson slice Gram (n ≤ 12)", MAX_JOHNSON_N, n)?;
    let verts: Vec<SubsetIndex> = subsets_of_size(n, d - 1).collect();
    let diag = int((n - d + 1) as i64);
    let g = QMatrix::from_fn(verts.len(), verts.len(), |i, j| {
        if i == j {
            diag.clone()
        } else if verts[i].intersection(&verts[j]).len() + 2 == d {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let v = g.symmetric_pivots()?;
    Ok((g, v))
}

/// `β_{d,k} = ⟨(Vᵀz)^S, (Vᵀz)^T⟩_∘` for `|S| = |T| = d`, `|S ∩ T| = k`.
pub fn beta(n: usize, d: usize, k: usize) -> Result<Scalar> {
    if k > d || d > d_max(n) || 2 * d - k > n {
        return arg(format!("β needs k ≤ d ≤ ⌊n/2⌋ and 2d - k ≤ n; got n={n}, d={d}, k={k}"));
    }
    let s: Vec<usize> = (0..d).collect();
    let t: Vec<usize> = (0..k).chain(d..2 * d - k).collect();
    let gram = SimplexGram::new(n)?;
    let m = QMatrix::from_fn(d, d, |i, j| gram.entry(s[i], t[j]));
    Ok(permanent(&m)? / big(factorial(d as u64)))
}

/// `h_S(ℓ_1, …, ℓ_n)` with the closed-form isotypic coefficients.
pub fn hs_span(n: usize, s: &SubsetIndex) -> Result<SpanPoly> {
    if s.ground() != n {
        return arg("subset lives on a different ground set");
    }
    let d = s.len();
    if d > d_max(n) {
        return arg(format!("h_S needs |S| ≤ ⌊n/2⌋, got |S| = {d}, n = {n}"));
    }
    let coeffs: Vec<Scalar> = (0..=d).map(|l| isotypic_coefficient(n, d, l)).collect();
    let mut p = SpanPoly::zero(n, d);
    for b in subsets_of_size(n, d) {
        p.add_term(Multiset::from_subset(&b), coeffs[b.intersection(s).len()].clone());
    }
    Ok(p)
}

/// `(1/d!) (n/(n-1))^d`.
pub fn frame_norm_factor(n: usize, d: usize) -> Scalar {
    let r = ratio(n as i64, n as i64 - 1);
    let mut v = Scalar::one();
    for _ in 0..d {
        v *= &r;
    }
    v / big(factorial(d as u64))
}

/// `‖h_S‖²_∘ = (dim / C(n,d)) (1/d!) (n/(n-1))^d`.
pub fn hs_span_norm_closed(n: usize, d: usize) -> Scalar {
    big(dimension(n, d)) / binomial_q(n as i64, d as i64) * frame_norm_factor(n, d)
}

/// `σ_d² = d! ((n-1)/n)^d ∏_{i<d} (n-2i)/(n-2i-1)`.
pub fn sigma_sq(n: usize, d: usize) -> Result<Scalar> {
    if d > d_max(n) {
        return arg(format!("σ_d² needs d ≤ ⌊n/2⌋, got n={n}, d={d}"));
    }
    let mut v = big(factorial(d as u64));
    for i in 0..d {
        v *= ratio(n as i64 - 1, n as i64);
        v *= ratio((n - 2 * i) as i64, (n - 2 * i - 1) as i64);
    }
    Ok(v)
}

pub const MAX_PROJECTION_N: usize = 8;

/// Projects each `(Vᵀz)^S`, `|S| = d`, onto `span(specht_basis(n, d))` by an
/// exact Gram solve and compares with `hs_span(S)`.
pub fn harmonic_projection_consistency(n: usize, d: usize) -> Result<CheckOutcome> {
    capacity("harmonic projection (n ≤ 8)", MAX_PROJECTION_N, n)?;
    let basis = specht_basis(n, d)?;
    let gram = apolar_gram(&basis)?;
    let mut out = CheckOutcome::new(format!("harmonic_projection(n={n}, d={d})"));
    for s in subsets_of_size(n, d) {
        let x = SpanPoly::frame_monomial(&s);
        let rhs = QMatrix::from_fn(basis.len(), 1, |i, _| apolar_ip(&basis[i], &x).expect("same frame"));
        let c = gram.solve_consistent(&rhs)?;
        let mut proj = SpanPoly::zero(n, d);
        for (i, b) in basis.iter().enumerate() {
            proj = proj.add(&b.scale(c.get(i, 0)))?;
        }
        let ok = equal(&proj, &hs_span(n, &s)?)?;
        out.check(ok, || format!("projection of (Vᵀz)^{s:?} differs from h_S"));
    }
    Ok(out)
}

/// Every Specht basis element and every `h_S` with `|S| = d` is killed by
/// each `⟨v_k, ∂⟩²`; the Specht Gram is nonsingular of size `C(n,d) - C(n,d-1)`,
/// and appending any `h_S` leaves its rank unchanged.
pub fn harmonicity_check(n: usize, d: usize) -> Result<CheckOutcome> {
    capacity("harmonicity check (n ≤ 8)", MAX_PROJECTION_N, n)?;
    let mut out = CheckOutcome::new(format!("harmonicity(n={n}, d={d})"));
    let basis = specht_basis(n, d)?;
    let dim = dimension(n, d);
    out.check_eq(&BigInt::from(basis.len()), &dim, || "Specht basis size".into());
    let hs: Vec<(SubsetIndex, SpanPoly)> =
        subsets_of_size(n, d).map(|s| hs_span(n, &s).map(|h| (s, h))).collect::<Result<_>>()?;
    if d >= 2 {
        for k in 1..=n {
            for (i, b) in basis.iter().enumerate() {
                let dd = derive(&derive(b, k)?, k)?;
                out.check(equals_zero(&dd), || format!("⟨v_{k},∂⟩² of Specht element {i} is nonzero"));
            }
            for (s, h) in &hs {
                let dd = derive(&derive(h, k)?, k)?;
                out.check(equals_zero(&dd), || format!("⟨v_{k},∂⟩² h_{s:?} is nonzero"));
            }
        }
    } else {
        out.note(format!("degree {d} < 2: second derivatives vanish identically"));
    }
    let gram = apolar_gram(&basis)?;
    let det = gram.determinant()?;
    out.check(!det.is_zero(), || "Specht Gram is singular".into());
    for (s, h) in &hs {
        let mut ext = basis.clone();
        ext.push(h.clone());
        let rank = apolar_gram(&ext)?.rank();
        out.check(BigInt::from(rank) == dim, || format!("appending h_{s:?} raises the rank to {rank}"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Multiset;

    fn l(n: usize, i: usize) -> SpanPoly {
        SpanPoly::linear(n, i).unwrap()
    }

    #[test]
    fn apolar_examples() {
        for n in 2..=8 {
            assert_eq!(apolar_ip(&l(n, 1), &l(n, 1)).unwrap(), int(1));
            assert_eq!(apolar_ip(&l(n, 1), &l(n, 2)).unwrap(), ratio(-1, n as i64 - 1));
        }
        let p = l(5, 1).mul(&l(5, 2)).unwrap();
        let q = l(5, 3).mul(&l(5, 4)).unwrap();
        assert_eq!(apolar_ip(&p, &q).unwrap(), ratio(1, 16));
        assert_eq!(apolar_ip(&p, &l(5, 1)).unwrap(), int(0));
        assert!(apolar_ip(&l(4, 1), &l(5, 1)).is_err());
    }

    #[test]
    fn permanent_examples() {
        assert_eq!(permanent(&QMatrix::identity(5)).unwrap(), int(1));
        let m = QMatrix::from_i64(&[&[2, 3], &[5, 7]]);
        assert_eq!(permanent(&m).unwrap(), int(2 * 7 + 3 * 5));
        for k in 1..=6 {
            let ones = QMatrix::from_fn(k, k, |_, _| int(1));
            assert_eq!(permanent(&ones).unwrap(), big(factorial(k as u64)));
        }
        let r = QMatrix::from_fn(5, 5, |i, j| ratio((i * 3 + j) as i64 % 7 - 3, 1 + (i + j) as i64 % 4));
        assert_eq!(permanent(&r).unwrap(), permanent_expansion(&r).unwrap());
        assert!(permanent(&QMatrix::identity(13)).is_err());
        let im: Vec<i128> = vec![1, 2, 3, 4, 5, 6, 7, 8, 10];
        assert_eq!(ryser_i128(&im, 3), Some(permanent_expansion(&QMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])).unwrap().numer().try_into().unwrap()));
    }

    #[test]
    fn derivative_examples() {
        let n = 6;
        assert_eq!(derive(&l(n, 1), 1).unwrap(), SpanPoly::constant(n, int(1)));
        assert_eq!(derive(&l(n, 1), 2).unwrap(), SpanPoly::constant(n, ratio(-1, 5)));
        assert!(derive(&SpanPoly::constant(n, int(1)), 1).is_err());
    }

    #[test]
    fn zero_test() {
        let n = 5;
        let mut s = SpanPoly::zero(n, 1);
        for i in 0..n {
            s.add_term(Multiset::from_zero_based([i]), int(1));
        }
        assert!(equals_zero(&s));
        assert!(!equals_zero(&l(n, 1)));
        let p = l(n, 1).mul(&l(n, 2)).unwrap();
        let alt = p.add(&s.mul(&l(n, 3)).unwrap().scale(&ratio(7, 3))).unwrap();
        assert!(equal(&p, &alt).unwrap());
    }

    #[test]
    fn adjointness_examples() {
        let n = 4;
        let p = l(n, 1);
        let r = l(n, 1).mul(&l(n, 2)).unwrap();
        assert!(adjointness_check(&p, &l(n, 1), &r).unwrap());
        assert!(adjointness_check(&r, &SpanPoly::constant(n, int(1)), &r).unwrap());
        assert!(adjointness_check(&p, &p, &p).is_err());
    }

    #[test]
    fn specht_examples() {
        let b = specht_basis(3, 1).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0], l(3, 1).sub(&l(3, 2)).unwrap());
        assert_eq!(b[1], l(3, 1).sub(&l(3, 3)).unwrap());
        assert_eq!(specht_basis(4, 2).unwrap().len(), 2);
        assert_eq!(specht_basis(4, 0).unwrap(), vec![SpanPoly::constant(4, int(1))]);
        assert!(specht_basis(4, 3).is_err());
        let t = standard_tableaux(4, 2).unwrap();
        assert_eq!(t[0].column_pairs(), vec![(1, 2), (3, 4)]);
        assert_eq!(t[1].column_pairs(), vec![(1, 3), (2, 4)]);
    }

    #[test]
    fn johnson_examples() {
        let (g, v) = johnson_slice_gram(4, 1).unwrap();
        assert_eq!(g, QMatrix::from_i64(&[&[4]]));
        assert!(v.definite);
        let (g, v) = johnson_slice_gram(4, 2).unwrap();
        assert_eq!(g.rows(), 4);
        assert_eq!(*g.get(0, 1), int(1));
        assert_eq!(*g.get(0, 0), int(3));
        assert!(v.definite);
        assert!(johnson_slice_gram(4, 3).is_err());
        assert!(johnson_slice_gram(14, 2).is_err());
    }

    #[test]
    fn beta_examples() {
        for n in 2..=10 {
            assert_eq!(beta(n, 1, 1).unwrap(), int(1));
            assert_eq!(beta(n, 1, 0).unwrap(), ratio(-1, n as i64 - 1));
            for d in 0..=n / 2 {
                let s: Scalar = (0..=d)
                    .map(|k| crate::combinatorics::sign(k as i64) * binomial_q(d as i64, k as i64) * beta(n, d, k).unwrap())
                    .sum();
                assert_eq!(s, crate::combinatorics::sign(d as i64) * frame_norm_factor(n, d));
                assert!(beta(n, d, d).unwrap() > Scalar::zero());
            }
        }
    }

    #[test]
    fn hs_span_examples() {
        let s = SubsetIndex::from_elements(3, &[1]).unwrap();
        let want = l(3, 1).scale(&int(2)).sub(&l(3, 2)).unwrap().sub(&l(3, 3)).unwrap().scale(&ratio(1, 3));
        assert_eq!(hs_span(3, &s).unwrap(), want);
        assert_eq!(sigma_sq(3, 1).unwrap(), int(1));
        assert_eq!(sigma_sq(7, 0).unwrap(), int(1));
        for n in 2..=7 {
            for d in 0..=n / 2 {
                let s = SubsetIndex::from_elements(n, &(1..=d).collect::<Vec<_>>()).unwrap();
                let h = hs_span(n, &s).unwrap();
                assert_eq!(apolar_ip(&h, &h).unwrap(), hs_span_norm_closed(n, d));
            }
        }
    }

    #[test]
    fn projection_small() {
        for n in 2..=5 {
            for d in 0..=n / 2 {
                let r = harmonic_projection_consistency(n, d).unwrap();
                assert!(r.passed(), "{r}");
                let r = harmonicity_check(n, d).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn realization_has_gram_m() {
        for n in 2..=7 {
            let g = SimplexGram::new(n).unwrap();
            let v = g.realize();
            for i in 0..n {
                for j in 0..n {
                    let dot: f64 = v[i].iter().zip(&v[j]).map(|(a, b)| a * b).sum();
                    assert!((dot - crate::linalg::scalar_to_f64(&g.entry(i, j))).abs() < 1e-12);
                }
            }
        }
    }
}
