//! Spin tuples `F^[g]` (universal pairwise anticommuting self-adjoint
//! unitaries) and the Pauli tuple.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianTuple, ToleranceProfile};
use crate::pencil::{membership, MembershipVerdict, Pencil};
use crate::scalar::Real;

/// Largest `g` built by default; the matrix size is `2^(g−1)`.
pub const DEFAULT_SPIN_CAP: usize = 14;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct SpinTuple<T: Real> {
    pub g: usize,
    pub tuple: HermitianTuple<T>,
}

impl<T: Real> SpinTuple<T> {
    pub fn pencil(&self) -> Pencil<T> {
        Pencil::new(self.tuple.clone())
    }
}

fn sigma_z<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
}

fn sigma_x<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn construct_spin<T: Real>(g: usize) -> Result<SpinTuple<T>> {
    construct_spin_capped(g, DEFAULT_SPIN_CAP)
}

/// `F^[2] = (σ_z, σ_x)` and `F^[k+1] = (F_1⊗σ_z, …, F_k⊗σ_z, I⊗σ_x)`.
pub fn construct_spin_capped<T: Real>(g: usize, cap: usize) -> Result<SpinTuple<T>> {
    if g < 2 {
        return Err(Error::param(format!("spin tuples need g >= 2, got {g}")));
    }
    if g > cap {
        return Err(Error::param(format!(
            "g = {g} exceeds the cap {cap} (matrix size 2^{})",
            g - 1
        )));
    }
    let z = sigma_z::<T>();
    let x = sigma_x::<T>();
    let mut f = vec![z.clone(), x.clone()];
    for _ in 2..g {
        let size = f[0].rows();
        let mut next: Vec<ComplexMatrix<T>> = f.iter().map(|m| m.kron(&z)).collect();
        next.push(ComplexMatrix::identity(size).kron(&x));
        f = next;
    }
    Ok(SpinTuple {
        g,
        tuple: HermitianTuple::new(f)?,
    })
}

/// `(σ_z, σ_x, [[0, i], [−i, 0]])`.
pub fn construct_pauli<T: Real>() -> HermitianTuple<T> {
    let p3 = ComplexMatrix::from_complex_rows(&[&[(0.0, 0.0), (0.0, 1.0)], &[(0.0, -1.0), (0.0, 0.0)]]);
    HermitianTuple::new(vec![sigma_z(), sigma_x(), p3]).expect("Pauli matrices are Hermitian")
}

/// Worst residual of `F_i² = I` and `F_iF_j + F_jF_i = 0` (i ≠ j).
pub fn anticommutation_residual<T: Real>(f: &HermitianTuple<T>) -> T {
    let n = f.size();
    let id = ComplexMatrix::identity(n);
    let mut worst = T::zero();
    for i in 0..f.length() {
        let fi = f.get(i);
        worst = worst.max((&(fi * fi) - &id).max_abs());
        for j in i + 1..f.length() {
            let ac = fi.anticommutator(f.get(j)).expect("square matrices of one size");
            worst = worst.max(ac.max_abs());
        }
    }
    worst
}

/// Entry `j` of the result is `Σ_k u_jk X_k` for a real orthogonal `U`.
pub fn orthogonal_transform<T: Real>(u: &ComplexMatrix<T>, x: &HermitianTuple<T>) -> Result<HermitianTuple<T>> {
    let g = x.length();
    if u.shape() != (g, g) {
        return Err(Error::dim(format!("transform is {}x{}, tuple length {g}", u.rows(), u.cols())));
    }
    let check = T::lit(1e-10);
    if u.max_imag() > check {
        return Err(Error::param("orthogonal transform must be real"));
    }
    let gram = &u.transpose() * u;
    let dev = (&gram - &ComplexMatrix::identity(g)).max_abs();
    if dev > check {
        return Err(Error::param(format!("transform is not orthogonal (deviation {:e})", dev.as_f64())));
    }
    let mats = (0..g)
        .map(|j| {
            let row: Vec<T> = (0..g).map(|k| u[(j, k)].re).collect();
            x.combine(&row)
        })
        .collect();
    HermitianTuple::hermitize(mats)
}

/// Membership in `D_{F^[g]}`.
pub fn spin_membership<T: Real>(g: usize, x: &HermitianTuple<T>, tol: &ToleranceProfile<T>) -> Result<MembershipVerdict<T>> {
    membership(&construct_spin::<T>(g)?.pencil(), x, tol)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ExtendByZeroReport<T: Real> {
    pub at_g: MembershipVerdict<T>,
    pub at_h: MembershipVerdict<T>,
    pub agree: bool,
}

/// Compares `X ∈ D_{F^[g]}` with `(X, 0) ∈ D_{F^[h]}`.
pub fn extend_by_zero_check<T: Real>(
    g: usize,
    h: usize,
    x: &HermitianTuple<T>,
    tol: &ToleranceProfile<T>,
) -> Result<ExtendByZeroReport<T>> {
    if h < g {
        return Err(Error::param(format!("extension target h = {h} is below g = {g}")));
    }
    let at_g = spin_membership(g, x, tol)?;
    let at_h = spin_membership(h, &x.extend_by_zero(h)?, tol)?;
    Ok(ExtendByZeroReport {
        agree: at_g.member == at_h.member,
        at_g,
        at_h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin2_is_the_displayed_pair() {
        let f = construct_spin::<f64>(2).unwrap();
        assert_eq!(f.tuple.get(0), &sigma_z());
        assert_eq!(f.tuple.get(1), &sigma_x());
    }

    #[test]
    fn spin_invariants_through_g6() {
        for g in 2..=6 {
            let f = construct_spin::<f64>(g).unwrap();
            assert_eq!(f.tuple.size(), 1 << (g - 1));
            assert!(anticommutation_residual(&f.tuple) <= 1e-12);
        }
    }

    #[test]
    fn spin_rejects_small_and_over_cap() {
        assert!(construct_spin::<f64>(1).is_err());
        assert!(construct_spin_capped::<f64>(5, 4).is_err());
    }

    #[test]
    fn pauli_entries_and_conjugate() {
        let p = construct_pauli::<f64>();
        assert_eq!(p.get(2)[(0, 1)].im, 1.0);
        assert_eq!(p.get(2)[(1, 0)].im, -1.0);
        let c = p.conj();
        assert_eq!(c.get(0), p.get(0));
        assert_eq!(c.get(1), p.get(1));
        assert_eq!(c.get(2), &-p.get(2));
        assert!(anticommutation_residual(&p) == 0.0);
    }

    #[test]
    fn orthogonal_transform_sign_flip() {
        let x = construct_pauli::<f64>();
        let u = ComplexMatrix::diagonal(&[-1.0, 1.0, 1.0]);
        let y = orthogonal_transform(&u, &x).unwrap();
        assert_eq!(y.get(0), &-x.get(0));
        assert_eq!(y.get(1), x.get(1));
    }

    #[test]
    fn orthogonal_transform_rejects_shear() {
        let x = construct_pauli::<f64>();
        let u = ComplexMatrix::from_real_rows(&[&[1.0, 0.5, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        assert!(matches!(orthogonal_transform(&u, &x), Err(Error::Parameter(_))));
    }
}
