//! Two-row characters of `S_n`, the class functions counting subsets moved by
//! a permutation, and restricted character sums.
//!
//! Every sum over `S_n` is reduced to a class-size-weighted sum over cycle
//! types. Class functions that count subsets are evaluated on the canonical
//! representative of each class.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{
    big, binomial, binomial_q, conjugacy_classes, factorial, int, multinomial, permutations_iter, sign,
    subsets_of_size, two_row_dimension, CycleType, Scalar, SubsetIndex, MAX_PERMUTATION_N,
};
use crate::error::{arg, capacity, Error, Result};
use crate::report::CheckOutcome;

/// Coefficients `c_0, …, c_n` of `∏_i (1 + x^{|C_i|})`: `c_d` counts the
/// `d`-subsets fixed setwise by any permutation of cycle type `ct`.
pub fn fixed_subset_counts(ct: &CycleType) -> Vec<BigInt> {
    let n = ct.n();
    let mut c = vec![BigInt::zero(); n + 1];
    c[0] = BigInt::one();
    let mut deg = 0;
    for &len in ct.parts() {
        for i in (0..=deg).rev() {
            let v = c[i].clone();
            c[i + len] += v;
        }
        deg += len;
    }
    c
}

fn check_two_row(n: usize, d: usize, ct: &CycleType) -> Result<()> {
    if ct.n() != n {
        return arg(format!("cycle type {ct} is not a partition of {n}"));
    }
    if 2 * d > n {
        return arg(format!("shape (n-d, d) needs d ≤ n/2, got n={n}, d={d}"));
    }
    Ok(())
}

/// `χ_{(n-d,d)} = c_d - c_{d-1}`.
pub fn char_two_row(n: usize, d: usize, ct: &CycleType) -> Result<BigInt> {
    check_two_row(n, d, ct)?;
    let c = fixed_subset_counts(ct);
    Ok(if d == 0 { c[0].clone() } else { &c[d] - &c[d - 1] })
}

/// `[x^d] (1 - x) ∏_i (1 + x^{|C_i|})`, expanded term by term.
pub fn char_two_row_frobenius(n: usize, d: usize, ct: &CycleType) -> Result<BigInt> {
    check_two_row(n, d, ct)?;
    // multiply out with (1 - x) first and drop everything above x^d
    let mut poly = vec![BigInt::zero(); d + 1];
    poly[0] = BigInt::one();
    if d >= 1 {
        poly[1] = BigInt::from(-1);
    }
    for &len in ct.parts() {
        let mut next = poly.clone();
        for i in 0..=d {
            if i + len <= d {
                next[i + len] += &poly[i];
            }
        }
        poly = next;
    }
    Ok(poly[d].clone())
}

/// A function on `S_n` that is constant on conjugacy classes.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    n: usize,
    classes: Vec<(CycleType, BigInt)>,
    values: Vec<Scalar>,
}

impl ClassFunction {
    pub fn from_fn(n: usize, mut f: impl FnMut(&CycleType) -> Result<Scalar>) -> Result<Self> {
        let classes = conjugacy_classes(n)?;
        let values = classes.iter().map(|(c, _)| f(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self { n, classes, values })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_fn(n, |_| Ok(Scalar::zero()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// (cycle type, class size, value) in class order.
    pub fn iter(&self) -> impl Iterator<Item = (&CycleType, &BigInt, &Scalar)> {
        self.classes.iter().zip(&self.values).map(|((c, s), v)| (c, s, v))
    }

    pub fn value(&self, ct: &CycleType) -> Option<&Scalar> {
        self.classes.iter().position(|(c, _)| c == ct).map(|i| &self.values[i])
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// `(1/n!) Σ_classes |class| · f · g`.
    pub fn inner(&self, other: &Self) -> Result<Scalar> {
        if self.n != other.n {
            return arg("inner product of class functions on different groups");
        }
        let total: Scalar = self
            .classes
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .map(|((_, size), (a, b))| big(size.clone()) * a * b)
            .sum();
        Ok(total / big(factorial(self.n as u64)))
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) -> Result<()> {
        if self.n != other.n {
            return arg("sum of class functions on different groups");
        }
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += c * b;
        }
        Ok(())
    }
}

pub fn character(n: usize, d: usize) -> Result<ClassFunction> {
    ClassFunction::from_fn(n, |ct| Ok(big(char_two_row(n, d, ct)?)))
}

/// `c_d` as a class function.
pub fn fixed_count_function(n: usize, d: usize) -> Result<ClassFunction> {
    if d > n {
        return arg(format!("d = {d} exceeds n = {n}"));
    }
    ClassFunction::from_fn(n, |ct| Ok(big(fixed_subset_counts(ct)[d].clone())))
}

/// Closed form of `(1/n!) Σ_{π : |π(A) ∩ B| = k} χ_{(n-d,d)}(π)` for
/// `|A| = a`, `|B| = b`, `|A ∩ B| = overlap`.
///
/// Zero when `min(a, b) < d`. When `min(a, b) = d` the value is
/// `(-1)^{k+o} C(d,o) C(d,k) C(n-2d, max(a,b)-d) / multinomial(n; o, a-o, b-o, n-a-b+o)`,
/// which for `a = b = d` reduces to `(-1)^{k+o} C(d,k) / multinomial(n; d, d-o, n-2d+o)`.
pub fn restricted_char_sum_closed(n: usize, d: usize, a: usize, b: usize, overlap: usize, k: usize) -> Result<Scalar> {
    if 2 * d > n || a > n || b > n {
        return arg(format!("need d ≤ n/2 and a, b ≤ n (n={n}, d={d}, a={a}, b={b})"));
    }
    let lo = a.min(b);
    if overlap > lo || overlap + n < a + b {
        return arg(format!("overlap {overlap} is impossible for sizes {a}, {b} in [{n}]"));
    }
    if k > lo {
        return arg(format!("k = {k} exceeds min(a, b) = {lo}"));
    }
    if lo > d {
        return Err(Error::Unsupported(format!(
            "restricted character sum with min(a, b) = {lo} > d = {d} has no closed form here"
        )));
    }
    if lo < d {
        return Ok(Scalar::zero());
    }
    let (n, d, a, b, o, k) = (n as i64, d as i64, a as i64, b as i64, overlap as i64, k as i64);
    let hi = a.max(b);
    let num = binomial(d, o) * binomial(d, k) * binomial(n - 2 * d, hi - d);
    let den = multinomial(n, &[o, a - o, b - o, n - a - b + o])?;
    Ok(sign(k + o) * Scalar::new(num, den))
}

/// Literal `(1/n!) Σ_{π : |π(A) ∩ B| = k} χ_{(n-d,d)}(π)` over all of `S_n`.
pub fn restricted_char_sum_bruteforce(n: usize, d: usize, a_set: &SubsetIndex, b_set: &SubsetIndex, k: usize) -> Result<Scalar> {
    capacity("brute-force permutation enumeration (n ≤ 9)", MAX_PERMUTATION_N, n)?;
    if a_set.ground() != n || b_set.ground() != n {
        return arg("subsets must live in [n]");
    }
    if 2 * d > n {
        return arg(format!("shape (n-d, d) needs d ≤ n/2, got n={n}, d={d}"));
    }
    let mut total = BigInt::zero();
    for p in permutations_iter(n)? {
        if p.image_of_set(a_set).intersection(b_set).len() == k {
            total += char_two_row(n, d, &p.cycle_type())?;
        }
    }
    Ok(Scalar::new(total, factorial(n as u64)))
}

/// All restricted sums for one pair `(A, B)` in a single pass over `S_n`:
/// entry `[d][k]` is `(1/n!) Σ_{π : |π(A) ∩ B| = k} χ_{(n-d,d)}(π)`.
pub fn restricted_char_sum_table(n: usize, a_set: &SubsetIndex, b_set: &SubsetIndex) -> Result<Vec<Vec<Scalar>>> {
    capacity("brute-force permutation enumeration (n ≤ 9)", MAX_PERMUTATION_N, n)?;
    if a_set.ground() != n || b_set.ground() != n {
        return arg("subsets must live in [n]");
    }
    let kmax = a_set.len().min(b_set.len());
    let mut counts: HashMap<CycleType, Vec<u64>> = HashMap::new();
    for p in permutations_iter(n)? {
        let k = p.image_of_set(a_set).intersection(b_set).len();
        counts.entry(p.cycle_type()).or_insert_with(|| vec![0; kmax + 1])[k] += 1;
    }
    let nf = factorial(n as u64);
    (0..=n / 2)
        .map(|d| {
            let mut row = vec![BigInt::zero(); kmax + 1];
            for (ct, hist) in &counts {
                let chi = char_two_row(n, d, ct)?;
                for (r, &h) in row.iter_mut().zip(hist) {
                    *r += &chi * h;
                }
            }
            Ok(row.into_iter().map(|x| Scalar::new(x, nf.clone())).collect())
        })
        .collect()
}

fn enumeration_guard(n: usize) -> Result<()> {
    capacity("class function enumeration (n ≤ 9)", MAX_PERMUTATION_N, n)
}

/// `f_{a,k}(π) = #{A : |A| = a, |π(A) ∩ A| = k}`.
pub fn class_fn_f(n: usize, a: usize, k: usize) -> Result<ClassFunction> {
    enumeration_guard(n)?;
    if k > a || a > n {
        return arg(format!("f_{{a,k}} needs k ≤ a ≤ n, got a={a}, k={k}, n={n}"));
    }
    ClassFunction::from_fn(n, |ct| {
        let pi = ct.representative();
        let count = subsets_of_size(n, a).filter(|s| pi.image_of_set(s).intersection(s).len() == k).count();
        Ok(int(count as i64))
    })
}

/// `g_{a,b,k,ℓ}(π) = #{(A, B) : |A| = a, |B| = b, |A ∩ B| = k, |π(A) ∩ B| = ℓ}`.
pub fn class_fn_g(n: usize, a: usize, b: usize, k: usize, l: usize) -> Result<ClassFunction> {
    enumeration_guard(n)?;
    check_g_params(n, a, b, k, l)?;
    let bs: Vec<SubsetIndex> = subsets_of_size(n, b).collect();
    ClassFunction::from_fn(n, |ct| {
        let pi = ct.representative();
        let mut count = 0i64;
        for s in subsets_of_size(n, a) {
            let image = pi.image_of_set(&s);
            count += bs
                .iter()
                .filter(|t| s.intersection(t).len() == k && image.intersection(t).len() == l)
                .count() as i64;
        }
        Ok(int(count))
    })
}

fn check_g_params(n: usize, a: usize, b: usize, k: usize, l: usize) -> Result<()> {
    if a > n || b > n || k > a.min(b) || l > a.min(b) {
        return arg(format!("g needs a, b ≤ n and k, ℓ ≤ min(a, b); got n={n}, a={a}, b={b}, k={k}, ℓ={l}"));
    }
    Ok(())
}

/// Coefficient of `f_{a,j}` in the expansion of `g_{a,b,k,ℓ}`.
pub fn g_to_f_coefficient(n: usize, a: usize, b: usize, k: usize, l: usize, j: usize) -> BigInt {
    let (n, a, b, k, l, j) = (n as i64, a as i64, b as i64, k as i64, l as i64, j as i64);
    (0..=j)
        .map(|i| {
            binomial(j, i)
                * binomial(a - j, k - i)
                * binomial(a - j, l - i)
                * binomial(n - 2 * a + j, b - k - l + i)
        })
        .sum()
}

/// `g_{a,b,k,ℓ}` rebuilt as `Σ_j coeff_j · f_{a,j}`.
pub fn g_to_f_expand(n: usize, a: usize, b: usize, k: usize, l: usize) -> Result<ClassFunction> {
    check_g_params(n, a, b, k, l)?;
    let mut out = ClassFunction::zero(n)?;
    for j in 0..=a {
        let c = g_to_f_coefficient(n, a, b, k, l, j);
        if !c.is_zero() {
            out.add_scaled(&class_fn_f(n, a, j)?, &big(c))?;
        }
    }
    Ok(out)
}

/// `F_{a,j} = Σ_k C(k, j) f_{a,k}`.
pub fn class_fn_big_f(n: usize, a: usize, j: usize) -> Result<ClassFunction> {
    let mut out = ClassFunction::zero(n)?;
    for k in j..=a {
        out.add_scaled(&class_fn_f(n, a, k)?, &binomial_q(k as i64, j as i64))?;
    }
    Ok(out)
}

/// Checks, on every class, the forward transform `F_{a,j} = Σ_k C(k,j) f_{a,k}`
/// against its counting form `Σ_i C(n-2j+i, a-2j+i) f_{j,i}`, and the
/// inversion `f_{a,k} = Σ_j (-1)^{j+k} C(j,k) F_{a,j}`.
pub fn euler_transform_check(n: usize, a: usize) -> Result<CheckOutcome> {
    enumeration_guard(n)?;
    if a > n {
        return arg(format!("a = {a} exceeds n = {n}"));
    }
    let mut out = CheckOutcome::new(format!("euler_transform(n={n}, a={a})"));
    let f: Vec<ClassFunction> = (0..=a).map(|k| class_fn_f(n, a, k)).collect::<Result<_>>()?;
    let big_f: Vec<ClassFunction> = (0..=a).map(|j| class_fn_big_f(n, a, j)).collect::<Result<_>>()?;
    for (j, fj) in big_f.iter().enumerate() {
        let mut counted = ClassFunction::zero(n)?;
        for i in 0..=j {
            let c = binomial_q((n + i) as i64 - 2 * j as i64, (a + i) as i64 - 2 * j as i64);
            if !c.is_zero() {
                counted.add_scaled(&class_fn_f(n, j, i)?, &c)?;
            }
        }
        for ((ct, _, x), y) in fj.iter().zip(counted.values()) {
            out.check(x == y, || format!("F_{{{a},{j}}}({ct}): transform {x}, count {y}"));
        }
    }
    for (k, fk) in f.iter().enumerate() {
        let mut back = ClassFunction::zero(n)?;
        for (j, fj) in big_f.iter().enumerate().skip(k) {
            back.add_scaled(fj, &(sign((j + k) as i64) * binomial_q(j as i64, k as i64)))?;
        }
        for ((ct, _, x), y) in fk.iter().zip(back.values()) {
            out.check(x == y, || format!("f_{{{a},{k}}}({ct}) = {x}, inverted {y}"));
        }
    }
    Ok(out)
}

/// Closed form of `(1/n!) Σ_π χ_{(n-d,d)}(π) g_{a,b,k,ℓ}(π)` for `a ≤ d`, `a ≤ b`.
pub fn char_g_inner(n: usize, d: usize, a: usize, b: usize, k: usize, l: usize) -> Result<Scalar> {
    if 2 * d > n || a > d || a > b || b > n {
        return arg(format!("need a ≤ d ≤ n/2 and a ≤ b ≤ n; got n={n}, d={d}, a={a}, b={b}"));
    }
    if k > a || l > a {
        return arg(format!("k, ℓ must not exceed a = {a}"));
    }
    if a < d {
        return Ok(Scalar::zero());
    }
    let (n, d, b, k, l) = (n as i64, d as i64, b as i64, k as i64, l as i64);
    Ok(sign(k + l) * big(binomial(d, k) * binomial(d, l) * binomial(n - 2 * d, b - d)))
}

/// The same inner product by enumerating `g` and pairing with the character.
pub fn char_g_inner_enumerated(n: usize, d: usize, a: usize, b: usize, k: usize, l: usize) -> Result<Scalar> {
    character(n, d)?.inner(&class_fn_g(n, a, b, k, l)?)
}

/// `χ_{(n-d,d)}` at the identity, `C(n, d) - C(n, d-1)`.
pub fn dimension(n: usize, d: usize) -> BigInt {
    two_row_dimension(n as i64, d as i64)
}
