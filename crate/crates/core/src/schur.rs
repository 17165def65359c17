//! Schur complements of exact symmetric matrices, their Gramian reading, the
//! degree-block elimination of `Y^(n)`, and the determinant volume identity.
//!
//! No pseudoinverse is formed. `M₂₂ - M₂₁ M₁₁† M₁₂` is computed as
//! `M₂₂ - M₂₁ X` for any solution of `M₁₁ X = M₁₂`, which exists and gives the
//! same result whenever `M` is PSD.

use std::collections::HashMap;

use serde::Serialize;

use crate::apolar::{apolar_gram, hs_span, sigma_sq};
use crate::combinatorics::{int, Scalar, SubsetIndex};
use crate::error::{arg, capacity, Error, Result};
use crate::linalg::QMatrix;
use crate::pseudomoments::build_y;
use crate::report::CheckOutcome;
use crate::rng::SeededRng;

/// Largest `n` for [`iterated_schur_on_y`].
pub const MAX_ITERATED_N: usize = 8;

/// A symmetric matrix split as `[[M₁₁, M₁₂], [M₂₁, M₂₂]]` with `M₁₁` on the
/// first `split` indices.
#[derive(Clone, Debug)]
pub struct BlockedMatrix {
    matrix: QMatrix,
    split: usize,
}

impl BlockedMatrix {
    pub fn new(matrix: QMatrix, split: usize) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::Structure("blocked matrix must be symmetric".into()));
        }
        if split > matrix.rows() {
            return arg(format!("split {split} exceeds dimension {}", matrix.rows()));
        }
        Ok(Self { matrix, split })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn split(&self) -> usize {
        self.split
    }

    fn lead(&self) -> Vec<usize> {
        (0..self.split).collect()
    }

    fn rest(&self) -> Vec<usize> {
        (self.split..self.matrix.rows()).collect()
    }

    pub fn m11(&self) -> QMatrix {
        self.matrix.submatrix(&self.lead(), &self.lead())
    }

    pub fn m12(&self) -> QMatrix {
        self.matrix.submatrix(&self.lead(), &self.rest())
    }

    pub fn m22(&self) -> QMatrix {
        self.matrix.submatrix(&self.rest(), &self.rest())
    }

    /// One solution `X` of `M₁₁ X = M₁₂`; structure error if none exists.
    pub fn lead_solve(&self) -> Result<QMatrix> {
        self.m11().solve_consistent(&self.m12())
    }

    /// `M₂₂ - M₂₁ X` for a given solution `X`.
    pub fn complement_with(&self, x: &QMatrix) -> Result<QMatrix> {
        self.m22().sub(&self.m12().transpose().mul(x)?)
    }
}

/// `M₂₂ - M₂₁ M₁₁† M₁₂` through a consistent solve.
pub fn schur_complement(m: &BlockedMatrix) -> Result<QMatrix> {
    m.complement_with(&m.lead_solve()?)
}

/// Plain inner-product Gram matrix of integer or rational vectors.
pub fn vector_gram(vectors: &[Vec<Scalar>]) -> QMatrix {
    QMatrix::from_fn(vectors.len(), vectors.len(), |i, j| dot(&vectors[i], &vectors[j]))
}

fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Vector counts for the random Gram instances: `a` leading vectors,
/// `b` trailing vectors, all in `Q^r`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GramDims {
    pub a: usize,
    pub b: usize,
    pub r: usize,
}

impl Default for GramDims {
    fn default() -> Self {
        Self { a: 2, b: 2, r: 4 }
    }
}

fn random_vector(rng: &mut SeededRng, r: usize) -> Vec<Scalar> {
    (0..r).map(|_| int(rng.range_i64(-3, 3))).collect()
}

/// Leading and trailing vectors of one trial. Trials cycle through four
/// shapes: generic; one `a` duplicated; all `a` zero; `b` inside `span(a)`.
fn gram_instance(rng: &mut SeededRng, dims: GramDims, trial: usize) -> (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>) {
    let mut a: Vec<Vec<Scalar>> = (0..dims.a).map(|_| random_vector(rng, dims.r)).collect();
    let mut b: Vec<Vec<Scalar>> = (0..dims.b).map(|_| random_vector(rng, dims.r)).collect();
    match trial % 4 {
        1 if dims.a >= 2 => a[dims.a - 1] = a[0].clone(),
        2 => a.iter_mut().for_each(|v| v.iter_mut().for_each(|x| *x = int(0))),
        3 => {
            for v in &mut b {
                *v = vec![int(0); dims.r];
                for u in &a {
                    let c = int(rng.range_i64(-3, 3));
                    for (x, y) in v.iter_mut().zip(u) {
                        *x += &c * y;
                    }
                }
            }
        }
        _ => {}
    }
    (a, b)
}

/// Projections `P b_j` off `span(a_i)`: `P b = b - Σ c_i a_i` with `c` solving
/// the Gram system `(⟨a_i, a_k⟩) c = (⟨a_i, b⟩)`.
pub fn project_off(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let ga = vector_gram(a);
    let rhs = QMatrix::from_fn(a.len(), b.len(), |i, j| dot(&a[i], &b[j]));
    let c = ga.solve_consistent(&rhs)?;
    Ok(b.iter()
        .enumerate()
        .map(|(j, v)| {
            let mut p = v.clone();
            for (i, u) in a.iter().enumerate() {
                let cij = c.get(i, j);
                for (x, y) in p.iter_mut().zip(u) {
                    *x -= cij * y;
                }
            }
            p
        })
        .collect())
}

/// The Schur complement of `Gram(a, b)` equals `Gram(P b)`, for seeded random
/// integer vectors with entries in `[-3, 3]`. Also checks `⟨a_i, P b_j⟩ = 0`.
pub fn gram_schur_property_check(seed: u64, trials: usize, dims: GramDims) -> Result<CheckOutcome> {
    let mut rng = SeededRng::new(seed);
    let mut out = CheckOutcome::new(format!("gram_schur_property(seed={seed}, trials={trials})"));
    for t in 0..trials {
        let (a, b) = gram_instance(&mut rng, dims, t);
        let all: Vec<Vec<Scalar>> = a.iter().chain(&b).cloned().collect();
        let m = BlockedMatrix::new(vector_gram(&all), a.len())?;
        let complement = schur_complement(&m)?;
        let pb = project_off(&a, &b)?;
        let orthogonal = a.iter().all(|u| pb.iter().all(|v| dot(u, v) == int(0)));
        out.check(orthogonal, || format!("trial {t}: projected vectors are not orthogonal to span(a)"));
        out.check(complement == vector_gram(&pb), || format!("trial {t}: complement differs from Gram(P b)"));
        if t % 4 == 3 {
            out.check(complement.is_zero(), || format!("trial {t}: b ⊂ span(a) but the complement is nonzero"));
        }
        if t % 4 == 2 {
            out.check(complement == m.m22(), || format!("trial {t}: a = 0 but the complement differs from Gram(b)"));
        }
    }
    Ok(out)
}

/// Replacing the solve `X` by `X + K R` for kernel vectors `K` of `M₁₁` and a
/// random integer `R` leaves the complement unchanged.
pub fn solution_independence_check(seed: u64, trials: usize) -> Result<CheckOutcome> {
    let mut rng = SeededRng::new(seed);
    let mut out = CheckOutcome::new(format!("schur_solution_independence(seed={seed}, trials={trials})"));
    let dims = GramDims { a: 3, b: 2, r: 4 };
    for t in 0..trials {
        let (mut a, b) = gram_instance(&mut rng, dims, 0);
        a[2] = a[0].iter().zip(&a[1]).map(|(x, y)| x - y).collect();
        let all: Vec<Vec<Scalar>> = a.iter().chain(&b).cloned().collect();
        let m = BlockedMatrix::new(vector_gram(&all), a.len())?;
        let x = m.lead_solve()?;
        let base = m.complement_with(&x)?;
        let kernel = m.m11().kernel_basis();
        out.check(!kernel.is_empty(), || format!("trial {t}: leading block unexpectedly nonsingular"));
        let mut shifted = x.clone();
        for k in &kernel {
            for j in 0..shifted.cols() {
                let c = int(rng.range_i64(-5, 5));
                for (i, kv) in k.iter().enumerate() {
                    let v = shifted.get(i, j) + &c * kv;
                    shifted.set(i, j, v);
                }
            }
        }
        out.check(m.complement_with(&shifted)? == base, || format!("trial {t}: complement depends on the solution"));
    }
    Ok(out)
}

/// `det M = det M₁₁ · det(M / M₁₁)` on seeded random Gram instances with
/// `a + b ≤ r`, plus every fifth instance made singular by a repeated vector.
pub fn volume_identity_check(seed: u64, trials: usize) -> Result<CheckOutcome> {
    let mut rng = SeededRng::new(seed);
    let mut out = CheckOutcome::new(format!("volume_identity(seed={seed}, trials={trials})"));
    let dims = GramDims { a: 2, b: 2, r: 5 };
    let mut full_rank = 0;
    for t in 0..trials {
        let (mut a, b) = gram_instance(&mut rng, dims, 0);
        if t % 5 == 4 {
            a[1] = a[0].clone();
        }
        let all: Vec<Vec<Scalar>> = a.iter().chain(&b).cloned().collect();
        let m = BlockedMatrix::new(vector_gram(&all), a.len())?;
        let det = m.matrix().determinant()?;
        let lead = m.m11().determinant()?;
        let rhs = &lead * schur_complement(&m)?.determinant()?;
        if det != int(0) {
            full_rank += 1;
        }
        out.check_eq(&det, &rhs, || format!("trial {t}"));
        if t % 5 == 4 {
            out.check(det == int(0), || format!("trial {t}: repeated vector but det M ≠ 0"));
        }
    }
    out.note(format!("{full_rank} of {trials} instances full rank"));
    Ok(out)
}

/// Result of eliminating `Y^(n)` one degree block at a time.
#[derive(Clone, Debug)]
pub struct IteratedSchur {
    pub n: usize,
    /// Leading diagonal block after `k` eliminations, for `k = 0..=steps`.
    pub blocks: Vec<QMatrix>,
    /// Values of each block by `|S ∩ T|`, indexed by intersection size.
    pub johnson_values: Vec<Vec<Scalar>>,
    pub outcome: CheckOutcome,
}

/// Entries of a block on the `d`-subsets grouped by `|S ∩ T|`; `None` if two
/// pairs in the same orbit disagree.
pub fn johnson_profile(block: &QMatrix, sets: &[SubsetIndex]) -> Option<Vec<Scalar>> {
    let mut seen: HashMap<usize, Scalar> = HashMap::new();
    for (i, s) in sets.iter().enumerate() {
        for (j, t) in sets.iter().enumerate() {
            let k = s.intersection(t).len();
            match seen.get(&k) {
                Some(v) if v != block.get(i, j) => return None,
                Some(_) => {}
                None => {
                    seen.insert(k, block.get(i, j).clone());
                }
            }
        }
    }
    let d = sets.first().map_or(0, SubsetIndex::len);
    Some((0..=d).map(|k| seen.get(&k).cloned().unwrap_or_else(|| int(0))).collect())
}

/// Eliminates the degree blocks `0, 1, …` of `Y^(n)` in order. After `k`
/// eliminations the leading block must equal `σ_k² Gram(h_S : |S| = k)`,
/// depend only on `|S ∩ T|`, and every complement must be PSD.
pub fn iterated_schur_on_y(n: usize, steps: usize) -> Result<IteratedSchur> {
    capacity("iterated Schur complement (n ≤ 8)", MAX_ITERATED_N, n)?;
    let y = build_y(n)?;
    if steps > y.d_max() {
        return arg(format!("steps must be at most ⌊n/2⌋ = {}", y.d_max()));
    }
    let ranges = y.degree_blocks();
    let mut current = y.to_dense()?;
    let mut out = CheckOutcome::new(format!("iterated_schur(n={n}, steps={steps})"));
    let mut blocks = Vec::with_capacity(steps + 1);
    let mut johnson_values = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let sets = &y.index()[ranges[k].clone()];
        let size = sets.len();
        let lead: Vec<usize> = (0..size).collect();
        let block = current.submatrix(&lead, &lead);
        let hs = sets.iter().map(|s| hs_span(n, s)).collect::<Result<Vec<_>>>()?;
        let expected = apolar_gram(&hs)?.scale(&sigma_sq(n, k)?);
        out.check(block == expected, || format!("step {k}: block differs from σ_{k}² Gram(h_S)"));
        match johnson_profile(&block, sets) {
            Some(v) => johnson_values.push(v),
            None => {
                out.check(false, || format!("step {k}: block is not constant on |S ∩ T| orbits"));
                johnson_values.push(Vec::new());
            }
        }
        let pivots = current.symmetric_pivots()?;
        out.check(pivots.psd, || format!("step {k}: matrix after {k} eliminations is not PSD"));
        blocks.push(block);
        if k < steps {
            current = schur_complement(&BlockedMatrix::new(current, size)?)?;
        }
    }
    Ok(IteratedSchur { n, blocks, johnson_values, outcome: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::ratio;

    fn q(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_i64(rows)
    }

    #[test]
    fn identity_and_hand_example() {
        let m = BlockedMatrix::new(QMatrix::identity(4), 1).unwrap();
        assert_eq!(schur_complement(&m).unwrap(), QMatrix::identity(3));
        // a = (1,0), b = (1,1): complement is ‖P b‖² = 1
        let g = q(&[&[1, 1], &[1, 2]]);
        assert_eq!(schur_complement(&BlockedMatrix::new(g, 1).unwrap()).unwrap(), q(&[&[1]]));
    }

    #[test]
    fn duplicated_leading_vector() {
        let a = vec![int(1), int(2), int(0)];
        let b = vec![int(0), int(1), int(1)];
        let once = vector_gram(&[a.clone(), b.clone()]);
        let twice = vector_gram(&[a.clone(), a, b]);
        let s1 = schur_complement(&BlockedMatrix::new(once, 1).unwrap()).unwrap();
        let s2 = schur_complement(&BlockedMatrix::new(twice, 2).unwrap()).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(*s1.get(0, 0), ratio(6, 5));
    }

    #[test]
    fn inconsistent_lead_is_rejected() {
        let m = BlockedMatrix::new(q(&[&[0, 1], &[1, 0]]), 1).unwrap();
        assert!(matches!(schur_complement(&m), Err(Error::Structure(_))));
        assert!(BlockedMatrix::new(q(&[&[0, 1], &[2, 0]]), 1).is_err());
    }

    #[test]
    fn seeded_suites() {
        assert!(gram_schur_property_check(7, 40, GramDims::default()).unwrap().passed());
        assert!(volume_identity_check(7, 20).unwrap().passed());
        assert!(solution_independence_check(7, 5).unwrap().passed());
    }

    #[test]
    fn elimination_small() {
        let r = iterated_schur_on_y(3, 1).unwrap();
        assert!(r.outcome.passed(), "{}", r.outcome);
        assert_eq!(r.blocks[0], q(&[&[1]]));
        assert_eq!(r.blocks[1].rows(), 3);
        assert!(iterated_schur_on_y(3, 2).is_err());
        assert!(iterated_schur_on_y(9, 1).is_err());
    }
}
