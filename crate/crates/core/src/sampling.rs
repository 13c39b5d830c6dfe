//! Seeded random generators for tuples, unitaries and boundary-rich members.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, HermitianTuple, ToleranceProfile};
use crate::pencil::{lambda_eval, Pencil};
use crate::scalar::Real;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for sub-task `k` of a seeded job.
pub fn substream(seed: u64, k: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(k.wrapping_add(1));
    r
}

pub fn gaussian<T: Real>(rng: &mut impl Rng) -> T {
    T::lit(rng.sample::<f64, _>(StandardNormal))
}

pub fn complex_gaussian<T: Real>(rng: &mut impl Rng) -> Complex<T> {
    Complex::new(gaussian(rng), gaussian(rng))
}

/// Uniform point on the unit sphere in real `g`-space.
pub fn unit_vector<T: Real>(rng: &mut impl Rng, g: usize) -> Vec<T> {
    loop {
        let v: Vec<T> = (0..g).map(|_| gaussian(rng)).collect();
        let n = v.iter().map(|x| *x * *x).sum::<T>().sqrt();
        if n > T::lit(1e-12) {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Uniform point on the unit sphere in complex `g`-space.
pub fn complex_unit_vector<T: Real>(rng: &mut impl Rng, g: usize) -> Vec<Complex<T>> {
    loop {
        let v: Vec<Complex<T>> = (0..g).map(|_| complex_gaussian(rng)).collect();
        let n = crate::linalg::norm(&v);
        if n > T::lit(1e-12) {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Gaussian Hermitian matrix.
pub fn hermitian<T: Real>(rng: &mut impl Rng, n: usize) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    m = m.hermitian_part();
    for i in 0..n {
        m[(i, i)].im = T::zero();
    }
    m
}

pub fn hermitian_tuple<T: Real>(rng: &mut impl Rng, n: usize, g: usize) -> HermitianTuple<T> {
    HermitianTuple::hermitize((0..g).map(|_| hermitian(rng, n)).collect()).expect("well-formed random tuple")
}

pub fn real_symmetric_tuple<T: Real>(rng: &mut impl Rng, n: usize, g: usize) -> HermitianTuple<T> {
    let mats = (0..g)
        .map(|_| {
            let m = ComplexMatrix::from_fn(n, n, |_, _| Complex::new(gaussian::<T>(rng), T::zero()));
            m.hermitian_part()
        })
        .collect();
    HermitianTuple::hermitize(mats).expect("well-formed random tuple")
}

/// Modified Gram-Schmidt on the columns of `m`, returning the first `k`
/// orthonormal columns.
fn orthonormalize<T: Real>(m: &ComplexMatrix<T>, k: usize) -> ComplexMatrix<T> {
    let mut out = ComplexMatrix::zeros(m.rows(), k);
    for j in 0..k {
        let mut v = m.column(j);
        for _ in 0..2 {
            for p in 0..j {
                let q = out.column(p);
                let c = crate::linalg::inner(&q, &v);
                for (vi, qi) in v.iter_mut().zip(&q) {
                    *vi -= c * qi;
                }
            }
        }
        let nv = crate::linalg::norm(&v);
        out.set_column(j, &v.into_iter().map(|z| z / nv).collect::<Vec<_>>());
    }
    out
}

/// Haar-like random unitary (Gram-Schmidt of a complex Gaussian matrix).
pub fn unitary<T: Real>(rng: &mut impl Rng, n: usize) -> ComplexMatrix<T> {
    isometry(rng, n, n)
}

/// Random `n×m` isometry (`m ≤ n`), `V*V = I_m`.
pub fn isometry<T: Real>(rng: &mut impl Rng, n: usize, m: usize) -> ComplexMatrix<T> {
    assert!(m <= n, "isometry needs m <= n");
    let g = ComplexMatrix::from_fn(n, m, |_, _| complex_gaussian(rng));
    orthonormalize(&g, m)
}

/// Random real orthogonal `g×g` matrix.
pub fn orthogonal<T: Real>(rng: &mut impl Rng, g: usize) -> ComplexMatrix<T> {
    let m = ComplexMatrix::from_fn(g, g, |_, _| Complex::new(gaussian::<T>(rng), T::zero()));
    orthonormalize(&m, g)
}

/// A random member of `D_A` of size `n`: a Gaussian tuple rescaled so that
/// `λ_max(Λ_A(X)) = s`, where `s = 1` (boundary) with probability one half
/// and uniform in `(0, 1)` otherwise.
pub fn boundary_rich_member<T: Real>(
    rng: &mut impl Rng,
    pencil: &Pencil<T>,
    n: usize,
    tol: &ToleranceProfile<T>,
) -> Result<HermitianTuple<T>> {
    let s = if rng.random_bool(0.5) { T::one() } else { T::lit(rng.random_range(0.05..1.0)) };
    scaled_member(rng, pencil, n, s, tol)
}

/// A Gaussian tuple rescaled so that `λ_max(Λ_A(X)) = s`.
pub fn scaled_member<T: Real>(
    rng: &mut impl Rng,
    pencil: &Pencil<T>,
    n: usize,
    s: T,
    tol: &ToleranceProfile<T>,
) -> Result<HermitianTuple<T>> {
    loop {
        let x = hermitian_tuple::<T>(rng, n, pencil.length());
        let top = *hermitian_eigenvalues(&lambda_eval(pencil, &x)?, tol.hermitian_tol)?
            .last()
            .expect("nonempty spectrum");
        if top > T::lit(1e-8) {
            return Ok(x.scale(s / top));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_is_unitary() {
        let mut r = rng(3);
        let u = unitary::<f64>(&mut r, 4);
        let g = &u.adjoint() * &u;
        assert!((&g - &ComplexMatrix::identity(4)).max_abs() < 1e-12);
    }

    #[test]
    fn seeding_is_deterministic() {
        let a: Vec<f64> = unit_vector(&mut rng(7), 5);
        let b: Vec<f64> = unit_vector(&mut rng(7), 5);
        assert_eq!(a, b);
        let c: Vec<f64> = unit_vector(&mut substream(7, 1), 5);
        assert_ne!(a, c);
    }

    #[test]
    fn orthogonal_is_real() {
        let o = orthogonal::<f64>(&mut rng(1), 3);
        assert_eq!(o.max_imag(), 0.0);
        assert!((&(&o.transpose() * &o) - &ComplexMatrix::identity(3)).max_abs() < 1e-12);
    }
}
