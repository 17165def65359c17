//! Dense exact matrices over the rationals with fraction-free elimination,
//! plus a prime-field rank used as a certificate on larger instances.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::{big, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Argument("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| big(BigInt::from(rows[i][j])))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Argument(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Extracts the submatrix on the given row and column positions.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Exact product. Both factors are brought to a common denominator and
    /// multiplied as integer matrices (in `i128` when the bound allows).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Argument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (an, ad) = common_denominator(&self.data);
        let (bn, bd) = common_denominator(&other.data);
        let den = ad * bd;
        let (r, k, c) = (self.rows, self.cols, other.cols);
        let bits = max_bits(&an) + max_bits(&bn) + usize::BITS as u64 - (k.max(1)).leading_zeros() as u64;
        let mut data = Vec::with_capacity(r * c);
        if bits < 126 {
            let a: Vec<i128> = an.iter().map(|x| x.to_i128().unwrap()).collect();
            let b: Vec<i128> = bn.iter().map(|x| x.to_i128().unwrap()).collect();
            let mut acc = vec![0i128; c];
            for i in 0..r {
                acc.iter_mut().for_each(|x| *x = 0);
                for t in 0..k {
                    let x = a[i * k + t];
                    if x == 0 {
                        continue;
                    }
                    let brow = &b[t * c..(t + 1) * c];
                    for (s, &y) in acc.iter_mut().zip(brow) {
                        *s += x * y;
                    }
                }
                data.extend(acc.iter().map(|&s| Scalar::new(BigInt::from(s), den.clone())));
            }
        } else {
            let mut acc = vec![BigInt::zero(); c];
            for i in 0..r {
                acc.iter_mut().for_each(|x| x.set_zero());
                for t in 0..k {
                    let x = &an[i * k + t];
                    if x.is_zero() {
                        continue;
                    }
                    for (s, y) in acc.iter_mut().zip(&bn[t * c..(t + 1) * c]) {
                        *s += x * y;
                    }
                }
                data.extend(acc.iter().map(|s| Scalar::new(s.clone(), den.clone())));
            }
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Argument("vector length mismatch".into()));
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    /// Row-scaled integer copy: each row multiplied by the lcm of its denominators.
    /// Returns the integer rows and the per-row scale factors.
    fn integer_rows(&self, extra_cols: Option<&QMatrix>) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row: Vec<&Scalar> = self.row(i).iter().collect();
            if let Some(e) = extra_cols {
                row.extend(e.row(i).iter());
            }
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            out.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
            scales.push(l);
        }
        (out, scales)
    }

    pub fn rank(&self) -> usize {
        let (mut m, _) = self.integer_rows(None);
        bareiss_echelon(&mut m, self.cols).pivots.len()
    }

    /// Determinant via Bareiss elimination on the row-scaled integer matrix.
    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Argument("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(Scalar::one());
        }
        let (mut m, scales) = self.integer_rows(None);
        let e = bareiss_echelon(&mut m, self.cols);
        if e.pivots.len() < self.rows {
            return Ok(Scalar::zero());
        }
        let det = m[self.rows - 1][self.cols - 1].clone() * if e.swaps % 2 == 0 { 1 } else { -1 };
        let s = scales.iter().fold(BigInt::one(), |acc, x| acc * x);
        Ok(Scalar::new(det, s))
    }

    /// One solution of `self · X = rhs`, free variables set to zero.
    /// Fails with a structure error if the system is inconsistent.
    pub fn solve_consistent(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if rhs.rows != self.rows {
            return Err(Error::Argument("right-hand side has the wrong number of rows".into()));
        }
        let (mut m, _) = self.integer_rows(Some(rhs));
        let e = bareiss_echelon(&mut m, self.cols);
        let rank = e.pivots.len();
        for (i, row) in m.iter().enumerate().skip(rank) {
            if let Some(j) = row[self.cols..].iter().position(|x| !x.is_zero()) {
                return Err(Error::Structure(format!(
                    "inconsistent system: row {i} of the eliminated system has zero coefficients but right-hand side column {j} is nonzero"
                )));
            }
        }
        let mut x = QMatrix::zeros(self.cols, rhs.cols);
        for col in 0..rhs.cols {
            let sol = back_substitute(&m, &e.pivots, self.cols, |row| big(m[row][self.cols + col].clone()));
            for (i, v) in sol.into_iter().enumerate() {
                x.set(i, col, v);
            }
        }
        Ok(x)
    }

    /// A basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (mut m, _) = self.integer_rows(None);
        let e = bareiss_echelon(&mut m, self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut sol = back_substitute(&m, &e.pivots, self.cols, |row| big(-m[row][f].clone()));
                sol[f] = Scalar::one();
                sol
            })
            .collect()
    }

    /// Symmetric elimination with diagonal pivots. Returns the pivot sequence
    /// for a PSD input; a negative pivot, or a zero pivot with a nonzero row,
    /// means the matrix is not PSD.
    pub fn symmetric_pivots(&self) -> Result<PivotVerdict> {
        if !self.is_symmetric() {
            return Err(Error::Structure("symmetric elimination on a non-symmetric matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::with_capacity(n);
        for k in 0..n {
            let p = a[k][k].clone();
            if p.is_negative() {
                pivots.push(p);
                return Ok(PivotVerdict { pivots, psd: false, definite: false });
            }
            if p.is_zero() {
                if (k + 1..n).any(|j| !a[k][j].is_zero()) {
                    pivots.push(p);
                    return Ok(PivotVerdict { pivots, psd: false, definite: false });
                }
                pivots.push(p);
                continue;
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &p;
                for j in k + 1..n {
                    if !a[k][j].is_zero() {
                        let t = &f * &a[k][j];
                        a[i][j] -= t;
                    }
                }
                a[i][k].set_zero();
            }
            pivots.push(p);
        }
        let definite = pivots.iter().all(|p| p.is_positive());
        Ok(PivotVerdict { pivots, psd: true, definite })
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(scalar_to_f64).collect()
    }
}

/// Outcome of [`QMatrix::symmetric_pivots`].
#[derive(Clone, Debug)]
pub struct PivotVerdict {
    pub pivots: Vec<Scalar>,
    pub psd: bool,
    pub definite: bool,
}

impl PivotVerdict {
    pub fn min_pivot(&self) -> Option<&Scalar> {
        self.pivots.iter().min()
    }
}

pub struct Echelon {
    pub pivots: Vec<usize>,
    pub swaps: usize,
}

/// Fraction-free row echelon form (Bareiss), pivoting over the first
/// `pivot_cols` columns and carrying any further columns along.
/// After the call, entries below the pivots are zero and every division is exact.
pub fn bareiss_echelon(m: &mut [Vec<BigInt>], pivot_cols: usize) -> Echelon {
    let rows = m.len();
    let width = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        if p != r {
            m.swap(p, r);
            swaps += 1;
        }
        let (head, tail) = m.split_at_mut(r + 1);
        let prow = &head[r];
        let pv = &prow[c];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..width {
                let v = &row[j] * pv - &f * &prow[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[c].set_zero();
        }
        // rows above the pivot that skipped columns keep their values; rows at
        // or below r have already been updated.
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { pivots, swaps }
}

fn back_substitute(
    m: &[Vec<BigInt>],
    pivots: &[usize],
    ncols: usize,
    rhs: impl Fn(usize) -> Scalar,
) -> Vec<Scalar> {
    let mut x = vec![Scalar::zero(); ncols];
    for (i, &pc) in pivots.iter().enumerate().rev() {
        let mut s = rhs(i);
        for j in pc + 1..ncols {
            if !m[i][j].is_zero() && !x[j].is_zero() {
                s -= &x[j] * big(m[i][j].clone());
            }
        }
        x[pc] = s / big(m[i][pc].clone());
    }
    x
}

/// Numerators over a single common denominator.
pub fn common_denominator(values: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let d = values.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    (values.iter().map(|x| x.numer() * (&d / x.denom())).collect(), d)
}

fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|x| x.bits()).max().unwrap_or(0)
}

pub fn scalar_to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Rank over `GF(p)` of the matrix reduced modulo `p`. A lower bound on the
/// rational rank; `None` if `p` divides some denominator.
pub fn rank_mod_p(m: &QMatrix, p: u64) -> Option<usize> {
    let pb = BigInt::from(p);
    let mut a = Vec::with_capacity(m.rows * m.cols);
    for x in &m.data {
        let d = x.denom().mod_floor(&pb).to_u64().unwrap();
        if d == 0 {
            return None;
        }
        let n = x.numer().mod_floor(&pb).to_u64().unwrap();
        a.push(mulmod(n, invmod(d, p), p));
    }
    Some(rank_mod_p_raw(&mut a, m.rows, m.cols, p))
}

pub(crate) fn rank_mod_p_raw(a: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else { continue };
        if piv != r {
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = invmod(a[r * cols + c], p);
        for i in r + 1..rows {
            let f = a[i * cols + c];
            if f == 0 {
                continue;
            }
            let f = mulmod(f, inv, p);
            for j in c..cols {
                let t = mulmod(f, a[r * cols + j], p);
                let x = a[i * cols + j];
                a[i * cols + j] = if x >= t { x - t } else { x + p - t };
            }
        }
        r += 1;
    }
    r
}

/// A fixed 61-bit Mersenne prime used for modular rank certificates.
pub const CERT_PRIME: u64 = (1 << 61) - 1;

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    let z = a as u128 * b as u128;
    if p == CERT_PRIME {
        // 2^61 ≡ 1: fold the high bits onto the low bits
        let r = (z as u64 & CERT_PRIME) + (z >> 61) as u64;
        let r = (r & CERT_PRIME) + (r >> 61);
        if r >= CERT_PRIME { r - CERT_PRIME } else { r }
    } else {
        (z % p as u128) as u64
    }
}

pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    result
}

/// `|x - e| / max(|e|, 1)`.
pub fn relative_deviation(x: f64, e: f64) -> f64 {
    (x - e).abs() / e.abs().max(1.0)
}
