//! One-sided Jacobi singular value decomposition, complex and real, with
//! rank-revealing nullspace extraction.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use super::tolerance::ToleranceProfile;
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 80;

/// `M·V = U·diag(σ)` with σ descending. `left` holds `u_k = M·v_k / σ_k`
/// for nonzero σ and zero columns otherwise.
#[derive(Clone, Debug)]
pub struct Svd<T: Real> {
    pub singular: Vec<T>,
    pub right: ComplexMatrix<T>,
    pub left: ComplexMatrix<T>,
}

impl<T: Real> Svd<T> {
    pub fn sigma_max(&self) -> T {
        self.singular.first().copied().unwrap_or_else(T::zero)
    }

    /// Number of singular values above `rel_tol·σ_max`.
    pub fn rank(&self, rel_tol: T) -> usize {
        let cut = rel_tol * self.sigma_max();
        if self.sigma_max() <= T::zero() {
            return 0;
        }
        self.singular.iter().filter(|&&s| s > cut).count()
    }
}

/// Orthonormal basis of an (approximate) nullspace.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct KernelBasis<T: Real> {
    pub matrix: ComplexMatrix<T>,
    pub rank_tol_used: T,
    /// Smallest singular value kept in the range, if any.
    pub smallest_retained: Option<T>,
    /// Largest singular value discarded into the kernel, if any.
    pub largest_discarded: Option<T>,
}

impl<T: Real> KernelBasis<T> {
    pub fn dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.dim() == 0
    }
}

/// Complex one-sided Jacobi SVD.
pub fn svd<T: Real>(m: &ComplexMatrix<T>) -> Result<Svd<T>> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let (rows, n) = m.shape();
    let mut cols: Vec<Vec<Complex<T>>> = (0..n).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<Complex<T>>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex::zero(); n];
            e[j] = Complex::one();
            e
        })
        .collect();
    let eps = T::epsilon() * T::lit(rows.max(1) as f64).sqrt();
    let half = T::lit(0.5);
    let negligible = negligible_column(m.frobenius_norm(), n);
    let mut converged = n < 2;
    let mut worst = T::zero();
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        worst = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                let alpha: T = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: T = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = cols[p]
                    .iter()
                    .zip(&cols[q])
                    .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b);
                let g = gamma.norm();
                if alpha.min(beta) <= negligible || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                worst = worst.max(g / (alpha * beta).sqrt());
                rotated = true;
                let ph = gamma / g;
                let zeta = (beta - alpha) * half / g;
                let sign = if zeta < T::zero() { -T::one() } else { T::one() };
                let t = sign / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                let sp = ph.conj() * s;
                let sq = ph * s;
                rotate(&mut cols, p, q, c, sp, sq);
                rotate(&mut v, p, q, c, sp, sq);
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::Numerical {
            message: format!("Jacobi SVD did not converge in {MAX_SWEEPS} sweeps"),
            residual: worst.as_f64(),
        });
    }
    let norms: Vec<T> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(std::cmp::Ordering::Equal));
    let singular: Vec<T> = order.iter().map(|&i| norms[i]).collect();
    let right = ComplexMatrix::from_fn(n, n, |i, j| v[order[j]][i]);
    let left = ComplexMatrix::from_fn(rows, n, |i, j| {
        let s = norms[order[j]];
        if s > T::zero() {
            cols[order[j]][i] / s
        } else {
            Complex::zero()
        }
    });
    Ok(Svd { singular, right, left })
}

/// Squared column norm below which a column counts as numerically zero.
fn negligible_column<T: Real>(frob: T, n: usize) -> T {
    let e = T::epsilon() * frob;
    e * e * T::lit(n.max(1) as f64)
}

/// `x_p ← c·x_p − sp·x_q`, `x_q ← sq·x_p + c·x_q`.
fn rotate<T: Real>(x: &mut [Vec<Complex<T>>], p: usize, q: usize, c: T, sp: Complex<T>, sq: Complex<T>) {
    let (head, tail) = x.split_at_mut(q);
    let xp = &mut head[p];
    let xq = &mut tail[0];
    for (a, b) in xp.iter_mut().zip(xq.iter_mut()) {
        let (pa, pb) = (*a, *b);
        *a = pa * c - sp * pb;
        *b = sq * pa + pb * c;
    }
}

/// Kernel of `m` using `tol.rank_tol` relative to σ_max. A zero matrix has
/// full kernel.
pub fn nullspace<T: Real>(m: &ComplexMatrix<T>, tol: &ToleranceProfile<T>) -> Result<KernelBasis<T>> {
    let n = m.cols();
    if m.rows() == 0 || n == 0 {
        return Ok(KernelBasis {
            matrix: ComplexMatrix::identity(n),
            rank_tol_used: tol.rank_tol,
            smallest_retained: None,
            largest_discarded: None,
        });
    }
    let dec = svd(m)?;
    let rank = dec.rank(tol.rank_tol);
    let idx: Vec<usize> = (rank..n).collect();
    Ok(KernelBasis {
        matrix: dec.right.select_columns(&idx),
        rank_tol_used: tol.rank_tol,
        smallest_retained: rank.checked_sub(1).map(|r| dec.singular[r]),
        largest_discarded: dec.singular.get(rank).copied(),
    })
}

/// Dense real matrix in row-major order; only used for real-linear systems.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix<T: Real> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Real> RealMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    /// `[[Re M, −Im M], [Im M, Re M]]`, acting on `[Re z; Im z]`.
    pub fn realify(m: &ComplexMatrix<T>) -> Self {
        let (r, c) = m.shape();
        let mut out = Self::zeros(2 * r, 2 * c);
        for i in 0..r {
            for j in 0..c {
                let z = m[(i, j)];
                out.set(i, j, z.re);
                out.set(i, c + j, -z.im);
                out.set(r + i, j, z.im);
                out.set(r + i, c + j, z.re);
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

/// Real nullspace: orthonormal basis vectors plus the singular values that
/// decided the split.
#[derive(Clone, Debug)]
pub struct RealNullspace<T: Real> {
    pub basis: Vec<Vec<T>>,
    pub singular: Vec<T>,
    pub rank: usize,
}

impl<T: Real> RealNullspace<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn smallest_retained(&self) -> Option<T> {
        self.rank.checked_sub(1).map(|r| self.singular[r])
    }
}

/// Real one-sided Jacobi nullspace with rank cut `rel_tol·σ_max`.
pub fn real_nullspace<T: Real>(m: &RealMatrix<T>, rel_tol: T) -> Result<RealNullspace<T>> {
    let n = m.cols;
    if m.data.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut cols: Vec<Vec<T>> = (0..n).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|j| {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            e
        })
        .collect();
    let eps = T::epsilon() * T::lit(m.rows.max(1) as f64).sqrt();
    let half = T::lit(0.5);
    let frob = m.data.iter().map(|x| *x * *x).sum::<T>().sqrt();
    let negligible = negligible_column(frob, n);
    let mut converged = n < 2;
    let mut worst = T::zero();
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        worst = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                let alpha: T = cols[p].iter().map(|x| *x * *x).sum();
                let beta: T = cols[q].iter().map(|x| *x * *x).sum();
                let gamma: T = cols[p].iter().zip(&cols[q]).map(|(a, b)| *a * *b).sum();
                if alpha.min(beta) <= negligible || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                worst = worst.max(gamma.abs() / (alpha * beta).sqrt());
                rotated = true;
                let zeta = (beta - alpha) * half / gamma;
                let sign = if zeta < T::zero() { -T::one() } else { T::one() };
                let t = sign / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for x in [&mut cols, &mut v] {
                    let (head, tail) = x.split_at_mut(q);
                    for (a, b) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                        let (pa, pb) = (*a, *b);
                        *a = c * pa - s * pb;
                        *b = s * pa + c * pb;
                    }
                }
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::Numerical {
            message: format!("real Jacobi SVD did not converge in {MAX_SWEEPS} sweeps"),
            residual: worst.as_f64(),
        });
    }
    let norms: Vec<T> = cols.iter().map(|c| c.iter().map(|x| *x * *x).sum::<T>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(std::cmp::Ordering::Equal));
    let singular: Vec<T> = order.iter().map(|&i| norms[i]).collect();
    let smax = singular.first().copied().unwrap_or_else(T::zero);
    let rank = if smax > T::zero() {
        singular.iter().filter(|&&s| s > rel_tol * smax).count()
    } else {
        0
    };
    let basis = order[rank..].iter().map(|&i| v[i].clone()).collect();
    Ok(RealNullspace { basis, singular, rank })
}

/// Solves `M·z = 0` over the complexes through its realification. The real
/// solution space has twice the complex dimension; `complex_dim` reports the
/// latter.
#[derive(Clone, Debug)]
pub struct HomogeneousSolution<T: Real> {
    pub real: RealNullspace<T>,
    pub complex_dim: usize,
}

pub fn solve_homogeneous<T: Real>(m: &ComplexMatrix<T>, tol: &ToleranceProfile<T>) -> Result<HomogeneousSolution<T>> {
    let real = real_nullspace(&RealMatrix::realify(m), tol.rank_tol)?;
    let complex_dim = real.dim().div_ceil(2);
    Ok(HomogeneousSolution { real, complex_dim })
}
