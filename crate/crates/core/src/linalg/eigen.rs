//! Hermitian eigendecomposition: Householder reduction to a real symmetric
//! tridiagonal matrix followed by implicit QL iterations.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Eigenvalues in ascending order with unitary eigenvector columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn min(&self) -> T {
        self.values.first().copied().unwrap_or_else(T::zero)
    }

    pub fn max(&self) -> T {
        self.values.last().copied().unwrap_or_else(T::zero)
    }

    /// Eigenvector columns whose eigenvalue satisfies `keep`.
    pub fn columns_where(&self, keep: impl Fn(T) -> bool) -> ComplexMatrix<T> {
        let idx: Vec<usize> = (0..self.values.len()).filter(|&i| keep(self.values[i])).collect();
        self.vectors.select_columns(&idx)
    }

    /// `V·f(Λ)·V*` for a real spectral function.
    pub fn apply(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let n = self.values.len();
        let fv: Vec<T> = self.values.iter().map(|&x| f(x)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).fold(Complex::zero(), |acc, k| {
                acc + self.vectors[(i, k)] * self.vectors[(j, k)].conj() * fv[k]
            })
        })
    }
}

fn check_input<T: Real>(m: &ComplexMatrix<T>, hermitian_tol: T) -> Result<()> {
    if !m.is_square() {
        return Err(Error::dim(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let dev = m.hermitian_deviation();
    if dev > hermitian_tol * T::one().max(m.max_abs()) {
        return Err(Error::precondition(format!(
            "matrix is not Hermitian (deviation {:e})",
            dev.as_f64()
        )));
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigen<T: Real>(m: &ComplexMatrix<T>, hermitian_tol: T) -> Result<HermitianEigen<T>> {
    check_input(m, hermitian_tol)?;
    let (values, vectors) = decompose(m, true)?;
    Ok(HermitianEigen {
        values,
        vectors: vectors.expect("vectors requested"),
    })
}

/// Ascending eigenvalues only; skips all vector accumulation.
pub fn hermitian_eigenvalues<T: Real>(m: &ComplexMatrix<T>, hermitian_tol: T) -> Result<Vec<T>> {
    check_input(m, hermitian_tol)?;
    Ok(decompose(m, false)?.0)
}

fn decompose<T: Real>(m: &ComplexMatrix<T>, want_vectors: bool) -> Result<(Vec<T>, Option<ComplexMatrix<T>>)> {
    let n = m.rows();
    if n == 0 {
        return Ok((Vec::new(), want_vectors.then(|| ComplexMatrix::zeros(0, 0))));
    }
    let mut a = m.hermitian_part();
    let mut q = want_vectors.then(|| ComplexMatrix::<T>::identity(n));
    tridiagonalize(&mut a, q.as_mut());

    let mut d: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![T::zero(); n];
    let mut phase = Complex::<T>::one();
    let mut phases = vec![phase; n];
    for k in 0..n - 1 {
        let off = a[(k + 1, k)];
        let r = off.norm();
        e[k] = r;
        if r > T::zero() {
            phase *= off / r;
        }
        phases[k + 1] = phase;
    }
    if let Some(q) = q.as_mut() {
        for i in 0..n {
            for (j, &p) in phases.iter().enumerate() {
                q[(i, j)] *= p;
            }
        }
    }
    tql2(&mut d, &mut e, q.as_mut())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = q.map(|q| q.select_columns(&order));
    Ok((values, vectors))
}

/// Reduces `a` in place to Hermitian tridiagonal form `Q*·a·Q`, accumulating `Q`.
fn tridiagonalize<T: Real>(a: &mut ComplexMatrix<T>, mut q: Option<&mut ComplexMatrix<T>>) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    let two = T::lit(2.0);
    for k in 0..n - 2 {
        let m = n - k - 1;
        let x: Vec<Complex<T>> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let tail: T = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail <= T::min_positive_value() {
            continue;
        }
        let xnorm = (x[0].norm_sqr() + tail).sqrt();
        let unit = if x[0].norm() > T::zero() { x[0] / x[0].norm() } else { Complex::one() };
        let alpha = -unit * xnorm;
        let mut v = x.clone();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        for z in v.iter_mut() {
            *z /= vnorm;
        }

        // p = 2·B·v on the trailing block B, w = p − (v*p)·v.
        let mut p = vec![Complex::<T>::zero(); m];
        for (i, pi) in p.iter_mut().enumerate() {
            let mut acc = Complex::zero();
            for (j, vj) in v.iter().enumerate() {
                acc += a[(k + 1 + i, k + 1 + j)] * vj;
            }
            *pi = acc * two;
        }
        let kk = v.iter().zip(&p).fold(Complex::<T>::zero(), |acc, (vi, pi): (&Complex<T>, &Complex<T>)| acc + vi.conj() * pi);
        let w: Vec<Complex<T>> = p.iter().zip(&v).map(|(&pi, &vi)| pi - kk * vi).collect();
        for i in 0..m {
            for j in 0..m {
                let upd = v[i] * w[j].conj() + w[i] * v[j].conj();
                a[(k + 1 + i, k + 1 + j)] -= upd;
            }
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in k + 2..n {
            a[(i, k)] = Complex::zero();
            a[(k, i)] = Complex::zero();
        }

        if let Some(q) = q.as_deref_mut() {
            // Q ← Q·H with H = I − 2·v·v* acting on columns k+1..n.
            for r in 0..n {
                let mut s = Complex::zero();
                for (j, vj) in v.iter().enumerate() {
                    s += q[(r, k + 1 + j)] * vj;
                }
                s *= two;
                for (j, vj) in v.iter().enumerate() {
                    q[(r, k + 1 + j)] -= s * vj.conj();
                }
            }
        }
    }
}

/// Implicit QL on a real symmetric tridiagonal matrix (diagonal `d`,
/// subdiagonal `e[0..n-1]`), rotating the columns of `z` alongside.
fn tql2<T: Real>(d: &mut [T], e: &mut [T], mut z: Option<&mut ComplexMatrix<T>>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = T::zero();
    let eps = T::epsilon();
    let cap = 64 * n;
    let mut iterations = 0usize;
    let mut f = T::zero();
    let mut tst1 = T::zero();
    let two = T::lit(2.0);

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            loop {
                iterations += 1;
                if iterations > cap {
                    let residual = e.iter().map(|x| x.abs()).fold(T::zero(), T::max).as_f64();
                    return Err(Error::Numerical {
                        message: format!("tridiagonal QL did not converge within {cap} iterations"),
                        residual,
                    });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(z) = z.as_deref_mut() {
                        for k in 0..z.rows() {
                            let zh = z[(k, i + 1)];
                            let zi = z[(k, i)];
                            z[(k, i + 1)] = zi * s + zh * c;
                            z[(k, i)] = zi * c - zh * s;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }
    Ok(())
}
