use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use super::tolerance::ToleranceProfile;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// A g-tuple of n×n Hermitian matrices. Serves both as a pencil's
/// coefficient tuple and as an evaluation point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct HermitianTuple<T: Real> {
    size: usize,
    matrices: Vec<ComplexMatrix<T>>,
    /// Largest `‖M − M*‖_max` seen before symmetrization.
    deviation: T,
}

fn check_shapes<T: Real>(mats: &[ComplexMatrix<T>]) -> Result<usize> {
    let first = mats.first().ok_or_else(|| Error::dim("a tuple needs at least one matrix"))?;
    let n = first.rows();
    for (i, m) in mats.iter().enumerate() {
        if m.shape() != (n, n) {
            return Err(Error::dim(format!(
                "tuple entry {i} is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    Ok(n)
}

impl<T: Real> HermitianTuple<T> {
    /// Checks Hermitian-ness against the default tolerance, then symmetrizes.
    pub fn new(matrices: Vec<ComplexMatrix<T>>) -> Result<Self> {
        Self::with_tolerance(matrices, ToleranceProfile::<T>::default().hermitian_tol)
    }

    pub fn with_tolerance(matrices: Vec<ComplexMatrix<T>>, hermitian_tol: T) -> Result<Self> {
        let t = Self::hermitize(matrices)?;
        if t.deviation > hermitian_tol {
            return Err(Error::precondition(format!(
                "tuple entries deviate from Hermitian by {:e} (tolerance {:e})",
                t.deviation.as_f64(),
                hermitian_tol.as_f64()
            )));
        }
        Ok(t)
    }

    /// Symmetrizes unconditionally, recording the deviation. Intended for
    /// matrices that are Hermitian up to rounding by construction.
    pub fn hermitize(matrices: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let size = check_shapes(&matrices)?;
        let deviation = matrices.iter().map(|m| m.hermitian_deviation()).fold(T::zero(), T::max);
        let matrices = matrices.iter().map(|m| signed_zero_free(m.hermitian_part())).collect();
        Ok(Self {
            size,
            matrices,
            deviation,
        })
    }

    pub fn zeros(size: usize, length: usize) -> Self {
        assert!(length > 0, "a tuple needs at least one matrix");
        Self {
            size,
            matrices: vec![ComplexMatrix::zeros(size, size); length],
            deviation: T::zero(),
        }
    }

    /// Level-1 point: a tuple of 1×1 matrices.
    pub fn from_scalars(x: &[T]) -> Self {
        assert!(!x.is_empty(), "a tuple needs at least one coordinate");
        Self {
            size: 1,
            matrices: x.iter().map(|&v| ComplexMatrix::diagonal(&[v])).collect(),
            deviation: T::zero(),
        }
    }

    /// Real symmetric entries from nested `f64` rows, one slice of rows per matrix.
    pub fn from_real(mats: &[&[&[f64]]]) -> Result<Self> {
        Self::new(mats.iter().map(|rows| ComplexMatrix::from_real_rows(rows)).collect())
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn length(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[ComplexMatrix<T>] {
        &self.matrices
    }

    pub fn into_matrices(self) -> Vec<ComplexMatrix<T>> {
        self.matrices
    }

    pub fn get(&self, i: usize) -> &ComplexMatrix<T> {
        &self.matrices[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ComplexMatrix<T>> {
        self.matrices.iter()
    }

    pub fn deviation(&self) -> T {
        self.deviation
    }

    /// The level-1 coordinates, when the size is 1.
    pub fn as_point(&self) -> Option<Vec<T>> {
        (self.size == 1).then(|| self.matrices.iter().map(|m| m[(0, 0)].re).collect())
    }

    fn same_length(&self, other: &Self) -> Result<()> {
        if self.length() != other.length() {
            return Err(Error::dim(format!(
                "tuple lengths differ: {} vs {}",
                self.length(),
                other.length()
            )));
        }
        Ok(())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        self.same_length(other)?;
        if self.size != other.size {
            return Err(Error::dim(format!("tuple sizes differ: {} vs {}", self.size, other.size)));
        }
        Ok(())
    }

    fn mapped(&self, f: impl Fn(&ComplexMatrix<T>) -> ComplexMatrix<T>) -> Self {
        Self {
            size: self.size,
            matrices: self.matrices.iter().map(|m| signed_zero_free(f(m))).collect(),
            deviation: self.deviation,
        }
    }

    /// Coordinatewise block diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_length(other)?;
        Ok(Self {
            size: self.size + other.size,
            matrices: self
                .matrices
                .iter()
                .zip(&other.matrices)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
            deviation: self.deviation.max(other.deviation),
        })
    }

    /// Entrywise complex conjugate of every coordinate.
    pub fn conj(&self) -> Self {
        self.mapped(|m| m.conj())
    }

    pub fn neg(&self) -> Self {
        self.mapped(|m| -m)
    }

    pub fn scale(&self, s: T) -> Self {
        self.mapped(|m| m.scale(s))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            size: self.size,
            matrices: self.matrices.iter().zip(&other.matrices).map(|(a, b)| a + b).collect(),
            deviation: T::zero(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, s: T, other: &Self) -> Result<Self> {
        self.add(&other.scale(s))
    }

    /// Coordinatewise `V*·X_i·V` for any `n×m` matrix `V`.
    pub fn compress(&self, v: &ComplexMatrix<T>) -> Result<Self> {
        if v.rows() != self.size {
            return Err(Error::dim(format!(
                "compression matrix has {} rows, tuple size is {}",
                v.rows(),
                self.size
            )));
        }
        let vh = v.adjoint();
        let mats = self
            .matrices
            .iter()
            .map(|x| vh.matmul(x)?.matmul(v))
            .collect::<Result<Vec<_>>>()?;
        Self::hermitize(mats)
    }

    /// `(self, other)` as a tuple of length `g + h`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.size != other.size {
            return Err(Error::dim("cannot concatenate tuples of different sizes"));
        }
        let mut matrices = self.matrices.clone();
        matrices.extend(other.matrices.iter().cloned());
        Ok(Self {
            size: self.size,
            matrices,
            deviation: self.deviation.max(other.deviation),
        })
    }

    /// Appends zero coordinates up to total length `h`.
    pub fn extend_by_zero(&self, h: usize) -> Result<Self> {
        if h < self.length() {
            return Err(Error::param(format!("cannot extend length {} to {h}", self.length())));
        }
        if h == self.length() {
            return Ok(self.clone());
        }
        self.concat(&Self::zeros(self.size, h - self.length()))
    }

    /// The first `g` coordinates.
    pub fn leading(&self, g: usize) -> Result<Self> {
        if g == 0 || g > self.length() {
            return Err(Error::param(format!("cannot keep {g} of {} coordinates", self.length())));
        }
        Ok(Self {
            size: self.size,
            matrices: self.matrices[..g].to_vec(),
            deviation: self.deviation,
        })
    }

    /// The leading `m×m` block of every coordinate.
    pub fn top_left(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.size {
            return Err(Error::param(format!("cannot take a {m}x{m} corner of size {}", self.size)));
        }
        Ok(Self {
            size: m,
            matrices: self.matrices.iter().map(|x| x.block(0, 0, m, m)).collect(),
            deviation: self.deviation,
        })
    }

    /// Largest entrywise modulus difference; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.same_shape(other).is_err() {
            return T::infinity();
        }
        self.matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| (a - b).max_abs())
            .fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.matrices.iter().map(|m| m.max_abs()).fold(T::zero(), T::max)
    }

    /// `Σ_i X_i²`.
    pub fn sum_of_squares(&self) -> ComplexMatrix<T> {
        let mut s = ComplexMatrix::zeros(self.size, self.size);
        for x in &self.matrices {
            s = &s + &(x * x);
        }
        s.hermitian_part()
    }

    /// `Σ_i c_i X_i` for real coefficients.
    pub fn combine(&self, c: &[T]) -> ComplexMatrix<T> {
        assert_eq!(c.len(), self.length(), "coefficient count mismatch");
        let mut s = ComplexMatrix::zeros(self.size, self.size);
        for (x, &ci) in self.matrices.iter().zip(c) {
            s.axpy(Complex::new(ci, T::zero()), x);
        }
        s
    }

    pub fn cast<U: Real>(&self) -> HermitianTuple<U> {
        HermitianTuple {
            size: self.size,
            matrices: self.matrices.iter().map(|m| m.cast()).collect(),
            deviation: U::lit(self.deviation.as_f64()),
        }
    }
}

/// Block diagonal sum of several tuples of a common length.
pub fn direct_sum<T: Real>(tuples: &[HermitianTuple<T>]) -> Result<HermitianTuple<T>> {
    let (first, rest) = tuples
        .split_first()
        .ok_or_else(|| Error::dim("direct sum of an empty list"))?;
    rest.iter().try_fold(first.clone(), |acc, t| acc.direct_sum(t))
}

/// A tuple of square complex matrices with no Hermitian requirement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct GeneralTuple<T: Real> {
    size: usize,
    matrices: Vec<ComplexMatrix<T>>,
}

/// Replaces `−0.0` by `+0.0` so equal tuples serialize identically.
fn signed_zero_free<T: Real>(m: ComplexMatrix<T>) -> ComplexMatrix<T> {
    m.map(|z| Complex::new(z.re + T::zero(), z.im + T::zero()))
}

impl<T: Real> GeneralTuple<T> {
    pub fn new(matrices: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let size = check_shapes(&matrices)?;
        Ok(Self { size, matrices })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn length(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[ComplexMatrix<T>] {
        &self.matrices
    }

    /// `Σ_i λ_i T_i` for complex coefficients.
    pub fn combine(&self, lambda: &[Complex<T>]) -> ComplexMatrix<T> {
        assert_eq!(lambda.len(), self.length(), "coefficient count mismatch");
        let mut s = ComplexMatrix::zeros(self.size, self.size);
        for (t, &l) in self.matrices.iter().zip(lambda) {
            if !l.is_zero() {
                s.axpy(l, t);
            }
        }
        s
    }
}

impl<T: Real> From<HermitianTuple<T>> for GeneralTuple<T> {
    fn from(t: HermitianTuple<T>) -> Self {
        Self {
            size: t.size,
            matrices: t.matrices,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    #[test]
    fn rejects_mixed_sizes() {
        let r = HermitianTuple::new(vec![M::identity(2), M::identity(3)]);
        assert!(matches!(r, Err(Error::Dimension(_))));
    }

    #[test]
    fn symmetrizes_and_records_deviation() {
        let m = M::from_real_rows(&[&[0.0, 1.0], &[1.0 + 1e-13, 0.0]]);
        let t = HermitianTuple::new(vec![m]).unwrap();
        assert!(t.deviation() > 0.0 && t.deviation() < 2e-13);
        assert_eq!(t.get(0).hermitian_deviation(), 0.0);
    }

    #[test]
    fn rejects_far_from_hermitian() {
        let m = M::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(HermitianTuple::new(vec![m]), Err(Error::Precondition(_))));
    }

    #[test]
    fn direct_sum_is_blockwise() {
        let a = HermitianTuple::from_scalars(&[1.0, 2.0]);
        let b = HermitianTuple::from_scalars(&[3.0, 4.0]);
        let s = direct_sum(&[a, b]).unwrap();
        assert_eq!(s.size(), 2);
        assert_eq!(s.get(1)[(1, 1)].re, 4.0);
        assert_eq!(s.get(1)[(0, 1)].re, 0.0);
    }

    #[test]
    fn extend_and_leading_round_trip() {
        let a = HermitianTuple::from_scalars(&[0.5, -0.5]);
        let e = a.extend_by_zero(4).unwrap();
        assert_eq!(e.length(), 4);
        assert_eq!(e.leading(2).unwrap(), a);
    }
}
