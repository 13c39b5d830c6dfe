//! Monic linear pencils `L_A(X) = I − Σ A_i ⊗ X_i` and free spectrahedron
//! membership.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermitian_eigenvalues, ComplexMatrix, HermitianTuple, KernelBasis, ToleranceProfile};
use crate::sampling;
use crate::scalar::Real;

/// Coefficient tuple of a monic pencil, with the level-1 boundedness flag
/// once the heuristic has been run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Pencil<T: Real> {
    coefficients: HermitianTuple<T>,
    bounded: Option<bool>,
}

impl<T: Real> Pencil<T> {
    pub fn new(coefficients: HermitianTuple<T>) -> Self {
        Self {
            coefficients,
            bounded: None,
        }
    }

    /// Runs [`level1_bounded_heuristic`] and stores its verdict.
    pub fn with_boundedness_check(mut self, directions: usize, seed: u64, tol: &ToleranceProfile<T>) -> Result<Self> {
        let report = level1_bounded_heuristic(&self, directions, seed, tol)?;
        self.bounded = Some(report.bounded);
        Ok(self)
    }

    pub fn coefficients(&self) -> &HermitianTuple<T> {
        &self.coefficients
    }

    /// Matrix size `d` of the coefficients.
    pub fn dim(&self) -> usize {
        self.coefficients.size()
    }

    /// Number of variables `g`.
    pub fn length(&self) -> usize {
        self.coefficients.length()
    }

    /// `None` until the heuristic has run; `Some(true)` is heuristic evidence only.
    pub fn bounded(&self) -> Option<bool> {
        self.bounded
    }
}

impl<T: Real> From<HermitianTuple<T>> for Pencil<T> {
    fn from(t: HermitianTuple<T>) -> Self {
        Self::new(t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct MembershipVerdict<T: Real> {
    pub member: bool,
    pub min_eigenvalue: T,
    pub boundary: bool,
    /// Number of eigenvalues within `psd_tol` of zero; zero unless on the boundary.
    pub kernel_dim: usize,
}

impl<T: Real> MembershipVerdict<T> {
    /// Builds the verdict from an ascending spectrum.
    pub fn from_spectrum(values: &[T], psd_tol: T) -> Self {
        let min_eigenvalue = values.first().copied().unwrap_or_else(T::one);
        let member = min_eigenvalue >= -psd_tol;
        let boundary = min_eigenvalue.abs() <= psd_tol;
        let kernel_dim = if boundary {
            values.iter().filter(|v| v.abs() <= psd_tol).count()
        } else {
            0
        };
        Self {
            member,
            min_eigenvalue,
            boundary,
            kernel_dim,
        }
    }
}

fn check_lengths<T: Real>(a: &Pencil<T>, x: &HermitianTuple<T>) -> Result<()> {
    if a.length() != x.length() {
        return Err(Error::dim(format!(
            "pencil has {} variables, point has {} coordinates",
            a.length(),
            x.length()
        )));
    }
    Ok(())
}

/// `Λ_A(X) = Σ A_i ⊗ X_i`.
pub fn lambda_eval<T: Real>(a: &Pencil<T>, x: &HermitianTuple<T>) -> Result<ComplexMatrix<T>> {
    check_lengths(a, x)?;
    let d = a.dim();
    let n = x.size();
    let mut out = ComplexMatrix::zeros(d * n, d * n);
    for (ai, xi) in a.coefficients().iter().zip(x.iter()) {
        for r in 0..d {
            for c in 0..d {
                let s = ai[(r, c)];
                if s.re == T::zero() && s.im == T::zero() {
                    continue;
                }
                for p in 0..n {
                    for q in 0..n {
                        out[(r * n + p, c * n + q)] += s * xi[(p, q)];
                    }
                }
            }
        }
    }
    Ok(out.hermitian_part())
}

/// `L_A(X) = I − Λ_A(X)`.
pub fn pencil_eval<T: Real>(a: &Pencil<T>, x: &HermitianTuple<T>) -> Result<ComplexMatrix<T>> {
    let lam = lambda_eval(a, x)?;
    Ok(&ComplexMatrix::identity(lam.rows()) - &lam)
}

pub fn membership<T: Real>(a: &Pencil<T>, x: &HermitianTuple<T>, tol: &ToleranceProfile<T>) -> Result<MembershipVerdict<T>> {
    let values = hermitian_eigenvalues(&pencil_eval(a, x)?, tol.hermitian_tol)?;
    Ok(MembershipVerdict::from_spectrum(&values, tol.psd_tol))
}

/// Orthonormal basis of `ker L_A(X)`: eigenvectors with eigenvalue within
/// `psd_tol` of zero. `smallest_retained` is the smallest eigenvalue above
/// the band, i.e. the spectral gap that separates kernel from range.
pub fn pencil_kernel<T: Real>(a: &Pencil<T>, x: &HermitianTuple<T>, tol: &ToleranceProfile<T>) -> Result<KernelBasis<T>> {
    let eig = hermitian_eigen(&pencil_eval(a, x)?, tol.hermitian_tol)?;
    let matrix = eig.columns_where(|v| v.abs() <= tol.psd_tol);
    Ok(KernelBasis {
        matrix,
        rank_tol_used: tol.psd_tol,
        smallest_retained: eig.values.iter().copied().find(|v| *v > tol.psd_tol),
        largest_discarded: eig
            .values
            .iter()
            .copied()
            .filter(|v| v.abs() <= tol.psd_tol)
            .map(|v| v.abs())
            .reduce(T::max),
    })
}

/// Extent of `D_A(1)` along the ray through `c`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct DirectionSupport<T: Real> {
    pub direction: Vec<T>,
    /// `λ_max(Λ_A(c))`; the ray leaves `D_A(1)` at `t = 1/λ_max`.
    pub top_eigenvalue: T,
    /// `1/λ_max(Λ_A(c))`, infinite when the ray never leaves.
    pub radial_extent: T,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct BoundednessReport<T: Real> {
    pub bounded: bool,
    pub supports: Vec<DirectionSupport<T>>,
    pub unbounded_direction: Option<Vec<T>>,
    /// Always true: a positive verdict only covers the sampled directions.
    pub heuristic: bool,
}

/// Samples the `2g` signed coordinate directions and `directions − 2g`
/// random unit directions. A direction `c` with `Λ_A(c) ⪯ psd_tol` spans a
/// ray inside `D_A(1)`, certifying unboundedness.
pub fn level1_bounded_heuristic<T: Real>(
    a: &Pencil<T>,
    directions: usize,
    seed: u64,
    tol: &ToleranceProfile<T>,
) -> Result<BoundednessReport<T>> {
    let g = a.length();
    if directions < 2 * g {
        return Err(Error::param(format!("need at least {} directions, got {directions}", 2 * g)));
    }
    let mut dirs: Vec<Vec<T>> = Vec::with_capacity(directions);
    for i in 0..g {
        for s in [T::one(), -T::one()] {
            let mut c = vec![T::zero(); g];
            c[i] = s;
            dirs.push(c);
        }
    }
    let mut rng = sampling::rng(seed);
    while dirs.len() < directions {
        dirs.push(sampling::unit_vector(&mut rng, g));
    }
    let mut supports = Vec::with_capacity(dirs.len());
    let mut unbounded_direction = None;
    for c in dirs {
        let m = a.coefficients().combine(&c);
        let top = *hermitian_eigenvalues(&m, tol.hermitian_tol)?.last().expect("nonempty spectrum");
        let radial_extent = if top > tol.psd_tol { T::one() / top } else { T::infinity() };
        if top <= tol.psd_tol && unbounded_direction.is_none() {
            unbounded_direction = Some(c.clone());
        }
        supports.push(DirectionSupport {
            direction: c,
            top_eigenvalue: top,
            radial_extent,
        });
    }
    Ok(BoundednessReport {
        bounded: unbounded_direction.is_none(),
        supports,
        unbounded_direction,
        heuristic: true,
    })
}

/// `Σ_i A_i ⊗ b_i` for column vectors `b_i` of height `n`: a `(d·n) × d` matrix.
pub fn lambda_columns<T: Real>(a: &Pencil<T>, b: &[Vec<Complex<T>>]) -> Result<ComplexMatrix<T>> {
    if b.len() != a.length() {
        return Err(Error::dim("column tuple length differs from pencil length"));
    }
    let n = b.first().map_or(0, |v| v.len());
    let d = a.dim();
    let mut out = ComplexMatrix::zeros(d * n, d);
    for (ai, bi) in a.coefficients().iter().zip(b) {
        if bi.len() != n {
            return Err(Error::dim("column tuple entries differ in height"));
        }
        for r in 0..d {
            for c in 0..d {
                let s = ai[(r, c)];
                for p in 0..n {
                    out[(r * n + p, c)] += s * bi[p];
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    fn spin2() -> Pencil<f64> {
        Pencil::new(HermitianTuple::from_real(&[&[&[1.0, 0.0], &[0.0, -1.0]], &[&[0.0, 1.0], &[1.0, 0.0]]]).unwrap())
    }

    #[test]
    fn zero_point_gives_identity() {
        let a = spin2();
        let x = HermitianTuple::zeros(3, 2);
        assert_eq!(pencil_eval(&a, &x).unwrap(), M::identity(6));
        let v = membership(&a, &x, &ToleranceProfile::default()).unwrap();
        assert!(v.member && !v.boundary && v.min_eigenvalue == 1.0);
    }

    #[test]
    fn length_mismatch_is_dimension_error() {
        let x = HermitianTuple::zeros(1, 3);
        assert!(matches!(lambda_eval(&spin2(), &x), Err(Error::Dimension(_))));
    }

    #[test]
    fn scalar_boundary_point_has_kernel() {
        let x = HermitianTuple::from_scalars(&[1.0, 0.0]);
        let tol = ToleranceProfile::default();
        let v = membership(&spin2(), &x, &tol).unwrap();
        assert!(v.member && v.boundary && v.kernel_dim == 1);
        assert_eq!(pencil_kernel(&spin2(), &x, &tol).unwrap().dim(), 1);
    }

    #[test]
    fn single_projection_coefficient_is_unbounded() {
        let a = Pencil::new(HermitianTuple::from_real(&[&[&[1.0, 0.0], &[0.0, 0.0]]]).unwrap());
        let r = level1_bounded_heuristic(&a, 2, 0, &ToleranceProfile::default()).unwrap();
        assert!(!r.bounded);
        assert_eq!(r.unbounded_direction, Some(vec![-1.0]));
    }

    #[test]
    fn spin2_coordinate_extents_are_one() {
        let r = level1_bounded_heuristic(&spin2(), 16, 0, &ToleranceProfile::default()).unwrap();
        assert!(r.bounded);
        for s in &r.supports[..4] {
            assert!((s.radial_extent - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn too_few_directions_rejected() {
        assert!(level1_bounded_heuristic(&spin2(), 3, 0, &ToleranceProfile::default()).is_err());
    }
}
