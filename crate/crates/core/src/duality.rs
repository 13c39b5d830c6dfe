//! Polar duality for full-span coefficient tuples through Choi matrices.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigen, hermitian_eigenvalues, inverse, real_nullspace, ComplexMatrix, HermitianTuple, RealMatrix,
    ToleranceProfile,
};
use crate::pencil::{lambda_eval, level1_bounded_heuristic, membership, MembershipVerdict, Pencil};
use crate::sampling;
use crate::scalar::Real;

/// `{I, A_1, …, A_{d²−1}}` as a real basis of the `d×d` Hermitian matrices,
/// with the expansion `E_ij = c⁰_ij·I + Σ_k c^k_ij·A_k` folded into the
/// coefficient matrices `G_k[i, j] = c^k_ij`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct FullSpanBasis<T: Real> {
    tuple: HermitianTuple<T>,
    /// `G_0, G_1, …, G_{d²−1}`.
    coefficients: Vec<ComplexMatrix<T>>,
    reconstruction_error: T,
}

const RECONSTRUCTION_TOL: f64 = 1e-10;

impl<T: Real> FullSpanBasis<T> {
    pub fn new(a: HermitianTuple<T>, tol: &ToleranceProfile<T>) -> Result<Self> {
        let d = a.size();
        let g = a.length();
        if d == 0 || g + 1 != d * d {
            return Err(Error::dim(format!("full span needs d^2 - 1 = {} matrices, got {g}", d * d - 1)));
        }
        let dd = d * d;
        let mut elements = Vec::with_capacity(dd);
        elements.push(ComplexMatrix::identity(d));
        elements.extend(a.iter().cloned());

        let mut real = RealMatrix::zeros(2 * dd, dd);
        let mut vecs = ComplexMatrix::zeros(dd, dd);
        for (k, m) in elements.iter().enumerate() {
            for (r, z) in m.as_slice().iter().enumerate() {
                vecs[(r, k)] = *z;
                real.set(r, k, z.re);
                real.set(dd + r, k, z.im);
            }
        }
        let ns = real_nullspace(&real, tol.rank_tol)?;
        if ns.dim() > 0 {
            return Err(Error::Construction {
                message: format!("identity and coefficients are linearly dependent (real nullity {})", ns.dim()),
                value: ns.singular.last().map(|s| s.as_f64()),
            });
        }
        let inv = inverse(&vecs, tol.rank_tol)?;
        let coefficients: Vec<ComplexMatrix<T>> = (0..dd)
            .map(|k| ComplexMatrix::from_fn(d, d, |i, j| inv[(k, i * d + j)]))
            .collect();

        let mut reconstruction_error = T::zero();
        for i in 0..d {
            for j in 0..d {
                let mut m = ComplexMatrix::zeros(d, d);
                for (k, e) in elements.iter().enumerate() {
                    m.axpy(coefficients[k][(i, j)], e);
                }
                m[(i, j)] -= Complex::new(T::one(), T::zero());
                reconstruction_error = reconstruction_error.max(m.max_abs());
            }
        }
        if reconstruction_error > T::lit(RECONSTRUCTION_TOL) {
            return Err(Error::Construction {
                message: "matrix-unit reconstruction failed".into(),
                value: Some(reconstruction_error.as_f64()),
            });
        }
        Ok(Self {
            tuple: a,
            coefficients,
            reconstruction_error,
        })
    }

    pub fn tuple(&self) -> &HermitianTuple<T> {
        &self.tuple
    }

    pub fn dim(&self) -> usize {
        self.tuple.size()
    }

    /// `G_0, …, G_{d²−1}`.
    pub fn coefficients(&self) -> &[ComplexMatrix<T>] {
        &self.coefficients
    }

    pub fn reconstruction_error(&self) -> T {
        self.reconstruction_error
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ChoiMatrix<T: Real> {
    pub matrix: ComplexMatrix<T>,
    pub point: HermitianTuple<T>,
}

/// `G_0 ⊗ I + Σ G_k ⊗ X_k`, the Choi matrix of the unital map `A_k ↦ X_k`.
pub fn choi_matrix<T: Real>(basis: &FullSpanBasis<T>, x: &HermitianTuple<T>) -> Result<ChoiMatrix<T>> {
    if x.length() != basis.tuple.length() {
        return Err(Error::dim(format!(
            "point has {} coordinates, basis has {}",
            x.length(),
            basis.tuple.length()
        )));
    }
    let n = x.size();
    let id = ComplexMatrix::identity(n);
    let mut m = basis.coefficients[0].kron(&id);
    for (gk, xk) in basis.coefficients[1..].iter().zip(x.iter()) {
        m = &m + &gk.kron(xk);
    }
    Ok(ChoiMatrix {
        matrix: m.hermitian_part(),
        point: x.clone(),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ChoiVerdict<T: Real> {
    /// Verdict on the unnormalized Choi spectrum.
    pub verdict: MembershipVerdict<T>,
    /// Smallest Choi eigenvalue divided by `d`.
    pub normalized_min_eigenvalue: T,
}

/// Membership in the matrix range `W(A)` of a full-span tuple.
pub fn choi_membership<T: Real>(
    basis: &FullSpanBasis<T>,
    x: &HermitianTuple<T>,
    tol: &ToleranceProfile<T>,
) -> Result<ChoiVerdict<T>> {
    let c = choi_matrix(basis, x)?;
    let values = hermitian_eigenvalues(&c.matrix, tol.hermitian_tol)?;
    let verdict = MembershipVerdict::from_spectrum(&values, tol.psd_tol);
    Ok(ChoiVerdict {
        normalized_min_eigenvalue: verdict.min_eigenvalue / T::lit(basis.dim() as f64),
        verdict,
    })
}

/// `B_k = −G_0^{−1/2} G_k G_0^{−1/2}`, so that `D_B` is the polar dual of `D_A`.
pub fn dual_pencil<T: Real>(basis: &FullSpanBasis<T>, tol: &ToleranceProfile<T>) -> Result<HermitianTuple<T>> {
    let g0 = hermitian_eigen(&basis.coefficients[0].hermitian_part(), tol.hermitian_tol)?;
    if g0.min() <= tol.psd_tol {
        return Err(Error::Construction {
            message: "identity coefficient G_0 is not positive definite".into(),
            value: Some(g0.min().as_f64()),
        });
    }
    let floor = tol.psd_tol;
    let s = g0.apply(|v| T::one() / v.max(floor).sqrt());
    let mats = basis.coefficients[1..]
        .iter()
        .map(|gk| (&(&s * gk) * &s).scale(-T::one()))
        .collect();
    HermitianTuple::hermitize(mats)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct PolarRefutation<T: Real> {
    pub sample_index: usize,
    /// `λ_max(Σ Y_i ⊗ X_i)` for the offending sample `Y`.
    pub top_eigenvalue: T,
}

/// Returns the first sample `Y` with `λ_max(Σ Y_i ⊗ X_i) > 1 + psd_tol`.
/// `None` does not prove membership in the polar dual.
pub fn polar_refute<T: Real>(
    samples: &[HermitianTuple<T>],
    x: &HermitianTuple<T>,
    tol: &ToleranceProfile<T>,
) -> Result<Option<PolarRefutation<T>>> {
    for (k, y) in samples.iter().enumerate() {
        let lam = lambda_eval(&Pencil::new(y.clone()), x)?;
        let top = *hermitian_eigenvalues(&lam, tol.hermitian_tol)?.last().expect("nonempty spectrum");
        if top > T::one() + tol.psd_tol {
            return Ok(Some(PolarRefutation {
                sample_index: k,
                top_eigenvalue: top,
            }));
        }
    }
    Ok(None)
}

/// A level-1 point separating `D_A(1)` from its polar.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub enum AsymmetryWitness<T: Real> {
    /// `x ∈ D_A(1)` with `⟨x, x⟩ > 1`, hence outside the polar.
    OutsidePolar { point: Vec<T>, squared_norm: T },
    /// `y` on the boundary of the polar (via the dual pencil) but outside `D_A(1)`.
    OutsideSet { point: Vec<T>, min_eigenvalue: T },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct NonSelfDualReport<T: Real> {
    pub d: usize,
    pub g: usize,
    pub directions_tried: usize,
    /// Smallest and largest radial extent of `D_A(1)` over the sampled directions.
    pub radial_range: (T, T),
    pub witness: Option<AsymmetryWitness<T>>,
}

impl<T: Real> NonSelfDualReport<T> {
    pub fn inconclusive(&self) -> bool {
        self.witness.is_none()
    }
}

const BOUNDEDNESS_DIRECTIONS: usize = 64;

/// Searches random directions for a level-1 point in `D_A(1)` but not in its
/// polar, or (for full-span tuples) in the polar but not in `D_A(1)`.
pub fn non_selfdual_check<T: Real>(
    a: &Pencil<T>,
    directions: usize,
    seed: u64,
    tol: &ToleranceProfile<T>,
) -> Result<NonSelfDualReport<T>> {
    let d = a.dim();
    let g = a.length();
    if d < 3 {
        return Err(Error::precondition(format!("need d >= 3, got {d}")));
    }
    if g + d < d * d + 2 || g + 1 > d * d {
        return Err(Error::precondition(format!(
            "need d^2 - d + 2 <= g <= d^2 - 1, got g = {g} at d = {d}"
        )));
    }
    let bounded = match a.bounded() {
        Some(b) => b,
        None => level1_bounded_heuristic(a, BOUNDEDNESS_DIRECTIONS.max(2 * g), seed, tol)?.bounded,
    };
    if !bounded {
        return Err(Error::precondition("level-1 set is not bounded"));
    }
    let dual = if g + 1 == d * d {
        let basis = FullSpanBasis::new(a.coefficients().clone(), tol)?;
        Some(Pencil::new(dual_pencil(&basis, tol)?))
    } else {
        None
    };

    let top = |p: &Pencil<T>, c: &[T]| -> Result<T> {
        Ok(*hermitian_eigenvalues(&p.coefficients().combine(c), tol.hermitian_tol)?
            .last()
            .expect("nonempty spectrum"))
    };

    let mut rng = sampling::rng(seed);
    let mut lo = T::infinity();
    let mut hi = T::zero();
    let mut witness = None;
    let mut tried = 0;
    for _ in 0..directions {
        tried += 1;
        let c: Vec<T> = sampling::unit_vector(&mut rng, g);
        let t = top(a, &c)?;
        if t <= tol.psd_tol {
            continue;
        }
        let r = T::one() / t;
        lo = lo.min(r);
        hi = hi.max(r);
        if r * r > T::one() + tol.membership_margin {
            witness = Some(AsymmetryWitness::OutsidePolar {
                point: c.iter().map(|v| *v * r).collect(),
                squared_norm: r * r,
            });
            break;
        }
        if let Some(b) = &dual {
            let tb = top(b, &c)?;
            if tb > tol.psd_tol {
                let y: Vec<T> = c.iter().map(|v| *v / tb).collect();
                let v = membership(a, &HermitianTuple::from_scalars(&y), tol)?;
                if v.min_eigenvalue < -tol.membership_margin {
                    witness = Some(AsymmetryWitness::OutsideSet {
                        point: y,
                        min_eigenvalue: v.min_eigenvalue,
                    });
                    break;
                }
            }
        }
    }
    Ok(NonSelfDualReport {
        d,
        g,
        directions_tried: tried,
        radial_range: (lo, hi),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::gell_mann;
    use crate::spin::construct_pauli;

    fn tol() -> ToleranceProfile<f64> {
        ToleranceProfile::default()
    }

    #[test]
    fn pauli_coefficients() {
        let b = FullSpanBasis::new(construct_pauli::<f64>(), &tol()).unwrap();
        let p = construct_pauli::<f64>();
        let g = b.coefficients();
        assert!((&g[0] - &ComplexMatrix::identity(2).scale(0.5)).max_abs() < 1e-15);
        assert!((&g[1] - &p.get(0).scale(0.5)).max_abs() < 1e-15);
        assert!((&g[2] - &p.get(1).scale(0.5)).max_abs() < 1e-15);
        assert!((&g[3] + &p.get(2).scale(0.5)).max_abs() < 1e-15);
        assert!(b.reconstruction_error() < 1e-15);
    }

    #[test]
    fn pauli_dual_is_pauli() {
        let b = FullSpanBasis::new(construct_pauli::<f64>(), &tol()).unwrap();
        let dual = dual_pencil(&b, &tol()).unwrap();
        let p = construct_pauli::<f64>();
        assert!((dual.get(0) + p.get(0)).max_abs() < 1e-14);
        assert!((dual.get(1) + p.get(1)).max_abs() < 1e-14);
        assert!((dual.get(2) - p.get(2)).max_abs() < 1e-14);
    }

    #[test]
    fn choi_of_identity_and_transpose() {
        let b = FullSpanBasis::new(construct_pauli::<f64>(), &tol()).unwrap();
        let p = construct_pauli::<f64>();
        let id = choi_membership(&b, &p, &tol()).unwrap();
        assert!(id.verdict.member && id.verdict.boundary);
        let tr = choi_membership(&b, &p.conj(), &tol()).unwrap();
        assert!(!tr.verdict.member);
        assert!((tr.verdict.min_eigenvalue + 1.0).abs() < 1e-14);
        assert!((tr.normalized_min_eigenvalue + 0.5).abs() < 1e-14);
        let zero = choi_membership(&b, &HermitianTuple::zeros(2, 3), &tol()).unwrap();
        assert!(zero.verdict.member);
    }

    #[test]
    fn dependent_basis_rejected() {
        let p = construct_pauli::<f64>();
        let bad = HermitianTuple::new(vec![p.get(0).clone(), p.get(0).clone(), p.get(1).clone()]).unwrap();
        assert!(matches!(FullSpanBasis::new(bad, &tol()), Err(Error::Construction { .. })));
    }

    #[test]
    fn polar_refute_spin3() {
        let f = crate::spin::construct_spin::<f64>(3).unwrap().tuple;
        let x = f.scale(1.0 / 3f64.sqrt());
        let r = polar_refute(std::slice::from_ref(&f), &x, &tol()).unwrap().unwrap();
        assert!((r.top_eigenvalue - 3f64.sqrt()).abs() < 1e-12);
        assert!(polar_refute(&[f], &HermitianTuple::zeros(1, 3), &tol()).unwrap().is_none());
    }

    #[test]
    fn gell_mann_is_not_self_dual() {
        let a = Pencil::new(gell_mann::<f64>());
        let r = non_selfdual_check(&a, 200, 0, &tol()).unwrap();
        assert!(r.witness.is_some());
    }

    #[test]
    fn pauli_rejected_by_non_selfdual_check() {
        let a = Pencil::new(construct_pauli::<f64>());
        assert!(matches!(non_selfdual_check(&a, 10, 0, &tol()), Err(Error::Precondition(_))));
    }
}
