//! Square linear solves by LU factorization with partial pivoting.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub struct Lu<T: Real> {
    lu: ComplexMatrix<T>,
    perm: Vec<usize>,
}

impl<T: Real> Lu<T> {
    /// Factors `a`; fails when a pivot falls below `pivot_tol·max|a|`.
    pub fn new(a: &ComplexMatrix<T>, pivot_tol: T) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::dim("LU needs a square matrix"));
        }
        let n = a.rows();
        let scale = a.max_abs();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (piv, best) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -T::one()), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best <= pivot_tol * scale || best == T::zero() {
                return Err(Error::Numerical {
                    message: format!("singular system at pivot {k}"),
                    residual: best.as_f64(),
                });
            }
            if piv != k {
                perm.swap(piv, k);
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(piv, j)];
                    lu[(piv, j)] = t;
                }
            }
            let d = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / d;
                lu[(i, k)] = f;
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let n = self.lu.rows();
        if b.len() != n {
            return Err(Error::dim("right-hand side length mismatch"));
        }
        let mut x: Vec<Complex<T>> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        Ok(x)
    }
}

/// Solves `a·x = b` for a single right-hand side.
pub fn solve<T: Real>(a: &ComplexMatrix<T>, b: &[Complex<T>], pivot_tol: T) -> Result<Vec<Complex<T>>> {
    Lu::new(a, pivot_tol)?.solve(b)
}

/// Inverse of a square matrix.
pub fn inverse<T: Real>(a: &ComplexMatrix<T>, pivot_tol: T) -> Result<ComplexMatrix<T>> {
    let lu = Lu::new(a, pivot_tol)?;
    let n = a.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    let mut e = vec![Complex::zero(); n];
    for j in 0..n {
        e.iter_mut().for_each(|z| *z = Complex::zero());
        e[j] = Complex::new(T::one(), T::zero());
        out.set_column(j, &lu.solve(&e)?);
    }
    Ok(out)
}
