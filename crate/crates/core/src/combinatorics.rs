//! Exact combinatorial primitives: binomials, subsets of `[n]`, multisets,
//! integer partitions, cycle types and permutations of small ground sets.
//!
//! Elements of `[n]` are 1-based in every label and constructor that takes
//! element lists; bit `i` of a mask stands for element `i + 1`.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{arg, capacity, Error, Result};

/// Exact rational scalar; always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

/// Largest ground set a [`SubsetIndex`] can describe.
pub const MAX_GROUND_SET: usize = 62;
/// Largest `n` for which `S_n` is enumerated element by element.
pub const MAX_PERMUTATION_N: usize = 9;
/// Largest `n` accepted by [`conjugacy_classes`].
pub const MAX_CLASS_N: usize = 30;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn big(v: BigInt) -> Scalar {
    Scalar::from_integer(v)
}

/// `(-1)^e` as a scalar.
pub fn sign(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Binomial coefficient with the counting convention: zero when `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn binomial_q(n: i64, k: i64) -> Scalar {
    big(binomial(n, k))
}

/// `Σ_{k ≤ upto} C(n, k)`, the size of `([n] choose ≤ upto)`.
pub fn binomial_prefix_sum(n: i64, upto: i64) -> BigInt {
    (0..=upto).map(|k| binomial(n, k)).sum()
}

/// Number of standard tableaux of shape `(n - d, d)`: `C(n, d) - C(n, d - 1)`.
pub fn two_row_dimension(n: i64, d: i64) -> BigInt {
    binomial(n, d) - binomial(n, d - 1)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `n! / ∏ p_i!`; the parts must be non-negative and sum to `n`.
pub fn multinomial(n: i64, parts: &[i64]) -> Result<BigInt> {
    if n < 0 || parts.iter().any(|&p| p < 0) {
        return arg(format!("multinomial({n}; {parts:?}) has a negative entry"));
    }
    if parts.iter().sum::<i64>() != n {
        return arg(format!("multinomial parts {parts:?} do not sum to {n}"));
    }
    let mut acc = factorial(n as u64);
    for &p in parts {
        acc /= factorial(p as u64);
    }
    Ok(acc)
}

/// `n!! = n (n-2) (n-4) ⋯`, with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < -1 {
        return arg(format!("double factorial undefined for {n}"));
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    Ok(acc)
}

/// The binomial coefficient `C(n/2, m)` extended to odd `n`:
/// `n!! / (2^m m! (n - 2m)!!)`.
pub fn formal_half_binomial(n: i64, m: i64) -> Result<Scalar> {
    if n < 0 || m < 0 || 2 * m > n + 1 {
        return arg(format!("formal half binomial needs n ≥ 0 and 0 ≤ 2m ≤ n + 1, got n={n}, m={m}"));
    }
    let num = double_factorial(n)?;
    let den = (BigInt::one() << m as usize) * factorial(m as u64) * double_factorial(n - 2 * m)?;
    Ok(Scalar::new(num, den))
}

/// A subset of `[n]` stored as a bitmask.
///
/// Ordering is by cardinality first, then lexicographic on the increasing
/// element sequence. This order fixes every matrix layout in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetIndex {
    mask: u64,
    n: u8,
}

impl SubsetIndex {
    pub fn new(n: usize, mask: u64) -> Result<Self> {
        capacity("ground set size", MAX_GROUND_SET, n)?;
        if n < 64 && mask >> n != 0 {
            return arg(format!("mask {mask:#b} has bits outside [{n}]"));
        }
        Ok(Self { mask, n: n as u8 })
    }

    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_GROUND_SET);
        Self { mask: 0, n: n as u8 }
    }

    /// Builds a subset from 1-based elements.
    pub fn from_elements(n: usize, elements: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return arg(format!("element {e} outside [{n}]"));
            }
            mask |= 1 << (e - 1);
        }
        Self::new(n, mask)
    }

    pub(crate) fn from_mask_unchecked(n: usize, mask: u64) -> Self {
        debug_assert!(n <= MAX_GROUND_SET && mask >> n == 0);
        Self { mask, n: n as u8 }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn ground(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, element: usize) -> bool {
        element >= 1 && element <= self.ground() && self.mask >> (element - 1) & 1 == 1
    }

    /// 1-based elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.zero_based().map(|i| i + 1)
    }

    pub(crate) fn zero_based(&self) -> impl Iterator<Item = usize> {
        let mut m = self.mask;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        Self { mask: self.mask ^ other.mask, n: self.n }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self { mask: self.mask & other.mask, n: self.n }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self { mask: self.mask | other.mask, n: self.n }
    }

    /// `"1-3-4"` for `{1, 3, 4}`, `"0"` for the empty set.
    pub fn label(&self) -> String {
        if self.is_empty() {
            "0".to_string()
        } else {
            self.elements().map(|e| e.to_string()).join("-")
        }
    }

    pub fn parse_label(n: usize, label: &str) -> Result<Self> {
        if label == "0" {
            return Self::new(n, 0);
        }
        let elements = label
            .split('-')
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("bad set label {label:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!("set label {label:?} is not strictly increasing")));
        }
        Self::from_elements(n, &elements)
    }
}

impl Ord for SubsetIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| {
                let diff = self.mask ^ other.mask;
                if diff == 0 {
                    Ordering::Equal
                } else if self.mask & diff & diff.wrapping_neg() != 0 {
                    // the lowest differing element belongs to self
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            })
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for SubsetIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements().join(","))
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All subsets of `[n]` with at most `max_size` elements, in canonical order.
pub fn enumerate_subsets(n: usize, max_size: usize) -> Result<Vec<SubsetIndex>> {
    capacity("ground set size", MAX_GROUND_SET, n)?;
    if max_size > n {
        return arg(format!("max_size {max_size} exceeds n = {n}"));
    }
    let mut out = Vec::new();
    for k in 0..=max_size {
        out.extend(subsets_of_size(n, k));
    }
    Ok(out)
}

/// The `k`-subsets of `[n]` in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = SubsetIndex> {
    (0..n).combinations(k).map(move |c| {
        let mask = c.iter().fold(0u64, |m, &i| m | 1 << i);
        SubsetIndex::from_mask_unchecked(n, mask)
    })
}

/// A multiset over `[n]`, stored as its sorted 0-based elements.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Multiset(Vec<u8>);

impl Multiset {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// From 0-based elements in any order.
    pub fn from_zero_based(elements: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<u8> = elements.into_iter().map(|e| e as u8).collect();
        v.sort_unstable();
        Self(v)
    }

    pub fn from_subset(s: &SubsetIndex) -> Self {
        Self(s.zero_based().map(|e| e as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sorted 0-based elements, repeated by multiplicity.
    pub fn elements(&self) -> &[u8] {
        &self.0
    }

    pub fn counts(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n];
        for &e in &self.0 {
            c[e as usize] += 1;
        }
        c
    }

    /// Distinct elements with their multiplicities.
    pub fn grouped(&self) -> Vec<(u8, usize)> {
        self.0.iter().dedup_with_count().map(|(c, &e)| (e, c)).collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        Self(v)
    }

    /// Removes one copy of `element`; `None` if absent.
    pub fn remove_one(&self, element: u8) -> Option<Self> {
        let pos = self.0.iter().position(|&e| e == element)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Self(v))
    }

    pub fn map(&self, f: impl Fn(u8) -> u8) -> Self {
        let mut v: Vec<u8> = self.0.iter().map(|&e| f(e)).collect();
        v.sort_unstable();
        Self(v)
    }
}

/// An integer partition: non-increasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntPartition {
    parts: Vec<usize>,
}

impl IntPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return arg(format!("{parts:?} is not a partition"));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl Ord for IntPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl PartialOrd for IntPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

/// All partitions of `n`, lexicographically ascending: `(1,…,1)` first, `(n)` last.
pub fn partitions(n: usize) -> Vec<IntPartition> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<IntPartition>) {
        if remaining == 0 {
            out.push(IntPartition { parts: prefix.clone() });
            return;
        }
        for p in 1..=remaining.min(max_part) {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Cycle lengths of a permutation of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CycleType(IntPartition);

impl CycleType {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let p = IntPartition::new(parts)?;
        if p.total() == 0 {
            return arg("cycle type of an empty ground set");
        }
        Ok(Self(p))
    }

    pub fn identity(n: usize) -> Self {
        Self(IntPartition { parts: vec![1; n] })
    }

    pub fn parts(&self) -> &[usize] {
        self.0.parts()
    }

    pub fn n(&self) -> usize {
        self.0.total()
    }

    /// `n! / ∏_ℓ ℓ^{m_ℓ} m_ℓ!`.
    pub fn class_size(&self) -> BigInt {
        let mut den = BigInt::one();
        for (count, &len) in self.parts().iter().dedup_with_count() {
            den *= BigInt::from(len).pow(count as u32) * factorial(count as u64);
        }
        factorial(self.n() as u64) / den
    }

    /// The canonical class representative: cycles laid out left to right,
    /// `(1 2 … ℓ_1)(ℓ_1+1 …)…`.
    pub fn representative(&self) -> Permutation {
        let mut images = Vec::with_capacity(self.n());
        let mut start = 0;
        for &len in self.parts() {
            for j in 0..len {
                images.push((start + (j + 1) % len) as u8);
            }
            start += len;
        }
        Permutation { images }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<CycleType> for IntPartition {
    fn from(c: CycleType) -> Self {
        c.0
    }
}

/// Conjugacy classes of `S_n` as (cycle type, class size), in partition order.
pub fn conjugacy_classes(n: usize) -> Result<Vec<(CycleType, BigInt)>> {
    if n == 0 {
        return arg("S_0 has no cycle types");
    }
    capacity("conjugacy class enumeration", MAX_CLASS_N, n)?;
    Ok(partitions(n)
        .into_iter()
        .map(|p| {
            let ct = CycleType(p);
            let size = ct.class_size();
            (ct, size)
        })
        .collect())
}

/// A permutation of `[n]` stored as 0-based images.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return arg(format!("{images:?} is not a permutation of 0..{n}"));
            }
            seen[i] = true;
        }
        Ok(Self { images: images.into_iter().map(|i| i as u8).collect() })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n as u8).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn image_of_set(&self, s: &SubsetIndex) -> SubsetIndex {
        let mask = s.zero_based().fold(0u64, |m, i| m | 1 << self.images[i]);
        SubsetIndex::from_mask_unchecked(s.ground(), mask)
    }

    pub fn image_of_multiset(&self, t: &Multiset) -> Multiset {
        t.map(|e| self.images[e as usize])
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Self { images: inv }
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j] as usize;
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(IntPartition { parts })
    }
}

/// Every permutation of `[n]`, each exactly once. Guarded at `n ≤ 9`.
pub fn permutations_iter(n: usize) -> Result<impl Iterator<Item = Permutation>> {
    capacity("brute-force permutation enumeration (n ≤ 9)", MAX_PERMUTATION_N, n)?;
    Ok((0..n as u8).permutations(n).map(|images| Permutation { images }))
}

/// Uniformly sampled permutation (Fisher–Yates) driven by any `u64` source.
pub fn random_permutation(n: usize, next_u64: &mut impl FnMut() -> u64) -> Permutation {
    let mut images: Vec<u8> = (0..n as u8).collect();
    for i in (1..n).rev() {
        let j = (next_u64() % (i as u64 + 1)) as usize;
        images.swap(i, j);
    }
    Permutation { images }
}
