//! Irreducibility and Euclidean / Arveson / free extremality certificates for
//! points of a free spectrahedron, plus one-column Arveson dilations.

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigen, nullspace, real_nullspace, ComplexMatrix, HermitianTuple, KernelBasis, RealMatrix, ToleranceProfile,
};
use crate::pencil::{lambda_columns, lambda_eval, level1_bounded_heuristic, membership, pencil_eval, pencil_kernel, Pencil};
use crate::scalar::Real;

/// Directions sampled when a pencil arrives without a boundedness verdict.
pub const DEFAULT_BOUNDEDNESS_DIRECTIONS: usize = 64;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct CommutantReport<T: Real> {
    pub dim: usize,
    pub smallest_retained: Option<T>,
    /// A non-scalar element of the commutant, when `dim > 1`.
    pub witness: Option<ComplexMatrix<T>>,
}

/// Linear map `C ↦ (C·X_i − X_i·C)_i` as a `(g·n²) × n²` matrix on `vec(C)`
/// (row-major).
fn commutant_system<T: Real>(x: &HermitianTuple<T>) -> ComplexMatrix<T> {
    let n = x.size();
    let g = x.length();
    let mut m = ComplexMatrix::zeros(g * n * n, n * n);
    for (i, xi) in x.iter().enumerate() {
        for r in 0..n {
            for s in 0..n {
                let row = i * n * n + r * n + s;
                for q in 0..n {
                    m[(row, r * n + q)] += xi[(q, s)];
                }
                for p in 0..n {
                    m[(row, p * n + s)] -= xi[(r, p)];
                }
            }
        }
    }
    m
}

pub fn commutant<T: Real>(x: &HermitianTuple<T>, tol: &ToleranceProfile<T>) -> Result<CommutantReport<T>> {
    let n = x.size();
    let k = nullspace(&commutant_system(x), tol)?;
    let witness = (k.dim() > 1).then(|| {
        // Any basis element not parallel to the identity; remove the scalar part.
        let id_norm = T::lit(n as f64).sqrt();
        let mut best: Option<(T, ComplexMatrix<T>)> = None;
        for j in 0..k.dim() {
            let c = ComplexMatrix::from_vec(n, n, k.matrix.column(j)).expect("n² entries");
            let tr = c.trace() / T::lit(n as f64);
            let traceless = &c - &ComplexMatrix::identity(n).scale_complex(tr);
            let size = traceless.frobenius_norm() / id_norm;
            if best.as_ref().is_none_or(|(s, _)| size > *s) {
                best = Some((size, traceless));
            }
        }
        best.expect("kernel has columns").1
    });
    Ok(CommutantReport {
        dim: k.dim(),
        smallest_retained: k.smallest_retained,
        witness,
    })
}

/// Complex dimension of `{C : C·X_i = X_i·C ∀i}`; 1 exactly when `X` is irreducible.
pub fn commutant_dimension<T: Real>(x: &HermitianTuple<T>, tol: &ToleranceProfile<T>) -> Result<usize> {
    Ok(commutant(x, tol)?.dim)
}

/// Nullity report for a homogeneous certificate system.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct SystemReport<T: Real> {
    pub nullity: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub smallest_retained: Option<T>,
    pub largest_discarded: Option<T>,
}

/// Solutions of the column system as column tuples `β = (β_1, …, β_g)`.
#[derive(Clone, Debug)]
pub struct ColumnSystem<T: Real> {
    pub report: SystemReport<T>,
    /// Orthonormal basis of the solution space in the coordinates
    /// `u_i = conj(β_i)`, stacked as `(i, j) ↦ i·n + j`.
    pub basis: ComplexMatrix<T>,
}

fn require_kernel<T: Real>(k: &KernelBasis<T>) -> Result<()> {
    if k.is_empty() {
        return Err(Error::precondition("point is interior: the pencil kernel is trivial"));
    }
    Ok(())
}

/// `T_i[q][(a, col)] = Σ_b (A_i)_{ab} K_{(b·n+q), col}`, the common building
/// block of both certificate systems.
fn contracted_kernel<T: Real>(a: &Pencil<T>, n: usize, k: &ComplexMatrix<T>) -> Vec<Vec<ComplexMatrix<T>>> {
    let d = a.dim();
    let kc = k.cols();
    a.coefficients()
        .iter()
        .map(|ai| {
            (0..n)
                .map(|q| {
                    ComplexMatrix::from_fn(d, kc, |r, col| {
                        (0..d).fold(Complex::zero(), |acc, b| acc + ai[(r, b)] * k[(b * n + q, col)])
                    })
                })
                .collect()
        })
        .collect()
}

fn check_point<T: Real>(a: &Pencil<T>, x: &HermitianTuple<T>, k: &KernelBasis<T>) -> Result<()> {
    if a.length() != x.length() {
        return Err(Error::dim("pencil and point lengths differ"));
    }
    if k.matrix.rows() != a.dim() * x.size() {
        return Err(Error::dim("kernel basis height does not match d·n"));
    }
    Ok(())
}

/// Solves `(Σ_i A_i ⊗ β_i*)·K = 0` for column vectors `β_i ∈ ℂⁿ`. Nullity
/// zero certifies Arveson extremality.
pub fn column_dilation_system<T: Real>(
    a: &Pencil<T>,
    x: &HermitianTuple<T>,
    k: &KernelBasis<T>,
    tol: &ToleranceProfile<T>,
) -> Result<ColumnSystem<T>> {
    check_point(a, x, k)?;
    require_kernel(k)?;
    let d = a.dim();
    let n = x.size();
    let g = a.length();
    let kc = k.dim();
    let blocks = contracted_kernel(a, n, &k.matrix);
    let mut m = ComplexMatrix::zeros(d * kc, g * n);
    for (i, bi) in blocks.iter().enumerate() {
        for (j, t) in bi.iter().enumerate() {
            for r in 0..d {
                for col in 0..kc {
                    m[(r * kc + col, i * n + j)] = t[(r, col)];
                }
            }
        }
    }
    let ns = nullspace(&m, tol)?;
    Ok(ColumnSystem {
        report: SystemReport {
            nullity: ns.dim(),
            unknowns: g * n,
            equations: d * kc,
            smallest_retained: ns.smallest_retained,
            largest_discarded: ns.largest_discarded,
        },
        basis: ns.matrix,
    })
}

impl<T: Real> ColumnSystem<T> {
    /// Converts a solution vector in `u` coordinates to the column tuple `β`.
    pub fn to_columns(&self, u: &[Complex<T>], g: usize) -> Vec<Vec<Complex<T>>> {
        let n = u.len() / g;
        (0..g).map(|i| u[i * n..(i + 1) * n].iter().map(|z| z.conj()).collect()).collect()
    }
}

/// Real basis of the `n²`-dimensional space of Hermitian `n×n` matrices:
/// `E_pp`, then `E_pq + E_qp` and `i·E_pq − i·E_qp` for `p < q`.
fn hermitian_basis_index(n: usize) -> Vec<(usize, usize, u8)> {
    let mut idx = Vec::with_capacity(n * n);
    for p in 0..n {
        idx.push((p, p, 0));
    }
    for p in 0..n {
        for q in p + 1..n {
            idx.push((p, q, 1));
            idx.push((p, q, 2));
        }
    }
    idx
}

fn hermitian_from_coords<T: Real>(n: usize, coords: &[T]) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(n, n);
    for (&(p, q, kind), &c) in hermitian_basis_index(n).iter().zip(coords) {
        match kind {
            0 => m[(p, p)] += Complex::new(c, T::zero()),
            1 => {
                m[(p, q)] += Complex::new(c, T::zero());
                m[(q, p)] += Complex::new(c, T::zero());
            }
            _ => {
                m[(p, q)] += Complex::new(T::zero(), c);
                m[(q, p)] -= Complex::new(T::zero(), c);
            }
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct HermitianSystem<T: Real> {
    pub report: SystemReport<T>,
    /// Real orthonormal basis of the solution space, each converted to a tuple.
    pub solutions: Vec<HermitianTuple<T>>,
}

/// Solves `Λ_A(β)·K = 0` over Hermitian tuples `β` (a real-linear system in
/// `g·n²` real unknowns). Nullity zero certifies Euclidean extremality.
pub fn hermitian_direction_system<T: Real>(
    a: &Pencil<T>,
    x: &HermitianTuple<T>,
    k: &KernelBasis<T>,
    tol: &ToleranceProfile<T>,
) -> Result<HermitianSystem<T>> {
    check_point(a, x, k)?;
    require_kernel(k)?;
    let d = a.dim();
    let n = x.size();
    let g = a.length();
    let kc = k.dim();
    let blocks = contracted_kernel(a, n, &k.matrix);
    let basis = hermitian_basis_index(n);
    let unknowns = g * n * n;
    // Rows: real and imaginary parts of the (d·n) × kc output, entry (a·n+p, col).
    let half = d * n * kc;
    let mut m = RealMatrix::zeros(2 * half, unknowns);
    let row = |r: usize, p: usize, col: usize| (r * n + p) * kc + col;
    for (i, bi) in blocks.iter().enumerate() {
        for (bidx, &(p, q, kind)) in basis.iter().enumerate() {
            let c = i * n * n + bidx;
            let mut put = |rr: usize, z: Complex<T>| {
                m.set(rr, c, m.get(rr, c) + z.re);
                m.set(half + rr, c, m.get(half + rr, c) + z.im);
            };
            for r in 0..d {
                for col in 0..kc {
                    match kind {
                        0 => put(row(r, p, col), bi[p][(r, col)]),
                        1 => {
                            put(row(r, p, col), bi[q][(r, col)]);
                            put(row(r, q, col), bi[p][(r, col)]);
                        }
                        _ => {
                            let iu = Complex::new(T::zero(), T::one());
                            put(row(r, p, col), iu * bi[q][(r, col)]);
                            put(row(r, q, col), -iu * bi[p][(r, col)]);
                        }
                    }
                }
            }
        }
    }
    let ns = real_nullspace(&m, tol.rank_tol)?;
    let solutions = ns
        .basis
        .iter()
        .map(|v| {
            let mats = (0..g).map(|i| hermitian_from_coords(n, &v[i * n * n..(i + 1) * n * n])).collect();
            HermitianTuple::hermitize(mats)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HermitianSystem {
        report: SystemReport {
            nullity: ns.dim(),
            unknowns,
            equations: 2 * half,
            smallest_retained: ns.smallest_retained(),
            largest_discarded: ns.singular.get(ns.rank).copied(),
        },
        solutions,
    })
}

/// Largest `α` with `X ± α·β ∈ D_A`, for `β` whose `Λ_A(β)` vanishes on
/// `ker L_A(X)`: `α = 1 / max|eig(S*·Λ_A(β)·S)|` with `S = V₊·diag(w₊^{-1/2})`
/// over the positive eigenpairs of `L_A(X)`. Returns 1 when `Λ_A(β)` is
/// numerically zero on the range.
pub fn two_sided_step<T: Real>(
    a: &Pencil<T>,
    x: &HermitianTuple<T>,
    beta: &HermitianTuple<T>,
    tol: &ToleranceProfile<T>,
) -> Result<T> {
    let eig = hermitian_eigen(&pencil_eval(a, x)?, tol.hermitian_tol)?;
    let keep: Vec<usize> = (0..eig.values.len()).filter(|&i| eig.values[i] > tol.psd_tol).collect();
    let mut s = eig.vectors.select_columns(&keep);
    for (j, &i) in keep.iter().enumerate() {
        let f = T::one() / eig.values[i].sqrt();
        for r in 0..s.rows() {
            s[(r, j)] *= f;
        }
    }
    let p = lambda_eval(a, beta)?;
    let c = &(&s.adjoint() * &p) * &s;
    let vals = crate::linalg::hermitian_eigenvalues(&c.hermitian_part(), tol.hermitian_tol)?;
    let rho = vals.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    Ok(if rho > T::epsilon() { T::one() / rho } else { T::one() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    NonMember,
    Interior,
    Boundary,
    Euclidean,
    Arveson,
    Free,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::NonMember => "non-member",
            Verdict::Interior => "interior",
            Verdict::Boundary => "boundary",
            Verdict::Euclidean => "euclidean",
            Verdict::Arveson => "arveson",
            Verdict::Free => "free",
        }
    }

    pub fn is_euclidean(self) -> bool {
        self >= Verdict::Euclidean
    }

    pub fn is_arveson(self) -> bool {
        self >= Verdict::Arveson
    }
}

/// Evidence that the next stronger verdict fails.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub enum Witness<T: Real> {
    /// `X ± α·β ∈ D_A`: the point is not Euclidean extreme.
    Hermitian { beta: HermitianTuple<T>, alpha: T },
    /// Nontrivial dilation column: the point is not Arveson extreme.
    Column { beta: Vec<Vec<Complex<T>>> },
    /// Non-scalar matrix commuting with every coordinate: the point is reducible.
    Commutant { matrix: ComplexMatrix<T> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ExtremeCertificate<T: Real> {
    pub verdict: Verdict,
    pub min_eigenvalue: T,
    pub kernel_dim: usize,
    /// `‖L_A(X)·K‖_max` for the kernel basis used.
    pub kernel_residual: Option<T>,
    pub commutant_dim: usize,
    pub beta_nullity_column: Option<usize>,
    pub beta_nullity_hermitian: Option<usize>,
    /// Smallest retained singular value of the column system.
    pub smallest_nonzero_singular: Option<T>,
    pub hermitian_smallest_retained: Option<T>,
    pub commutant_smallest_retained: Option<T>,
    pub witness: Option<Witness<T>>,
    /// The level-1 boundedness flag the Arveson criterion relies on.
    pub pencil_bounded: Option<bool>,
    pub caveat: Option<String>,
}

/// Membership → kernel → Hermitian system → column system → commutant,
/// reporting the strongest verdict that holds.
pub fn classify<T: Real>(a: &Pencil<T>, x: &HermitianTuple<T>, tol: &ToleranceProfile<T>) -> Result<ExtremeCertificate<T>> {
    let mv = membership(a, x, tol)?;
    let comm = commutant(x, tol)?;
    let mut cert = ExtremeCertificate {
        verdict: Verdict::NonMember,
        min_eigenvalue: mv.min_eigenvalue,
        kernel_dim: mv.kernel_dim,
        kernel_residual: None,
        commutant_dim: comm.dim,
        beta_nullity_column: None,
        beta_nullity_hermitian: None,
        smallest_nonzero_singular: None,
        hermitian_smallest_retained: None,
        commutant_smallest_retained: comm.smallest_retained,
        witness: None,
        pencil_bounded: a.bounded(),
        caveat: None,
    };
    if !mv.member {
        return Ok(cert);
    }
    if !mv.boundary {
        cert.verdict = Verdict::Interior;
        return Ok(cert);
    }
    let k = pencil_kernel(a, x, tol)?;
    let l = pencil_eval(a, x)?;
    cert.kernel_dim = k.dim();
    cert.kernel_residual = Some((&l * &k.matrix).max_abs());

    let herm = hermitian_direction_system(a, x, &k, tol)?;
    let col = column_dilation_system(a, x, &k, tol)?;
    cert.beta_nullity_hermitian = Some(herm.report.nullity);
    cert.hermitian_smallest_retained = herm.report.smallest_retained;
    cert.beta_nullity_column = Some(col.report.nullity);
    cert.smallest_nonzero_singular = col.report.smallest_retained;

    if let Some(beta) = herm.solutions.first() {
        let alpha = two_sided_step(a, x, beta, tol)?;
        cert.verdict = Verdict::Boundary;
        cert.witness = Some(Witness::Hermitian {
            beta: beta.clone(),
            alpha,
        });
        return Ok(cert);
    }
    if col.report.nullity > 0 {
        cert.verdict = Verdict::Euclidean;
        cert.witness = Some(Witness::Column {
            beta: col.to_columns(&col.basis.column(0), a.length()),
        });
        return Ok(cert);
    }
    cert.caveat = Some(match a.bounded() {
        Some(true) => "Arveson criterion assumes a bounded free spectrahedron; boundedness is heuristic evidence".into(),
        Some(false) => "pencil failed the boundedness heuristic; the Arveson criterion does not apply".into(),
        None => "Arveson criterion assumes a bounded free spectrahedron; boundedness was not checked".into(),
    });
    if comm.dim == 1 {
        cert.verdict = Verdict::Free;
    } else {
        cert.verdict = Verdict::Arveson;
        cert.witness = comm.witness.map(|matrix| Witness::Commutant { matrix });
    }
    Ok(cert)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct DilationStep<T: Real> {
    pub size_before: usize,
    pub kernel_before: usize,
    pub kernel_after: usize,
    pub column_nullity: usize,
    pub alpha: T,
    /// Index of the standard basis vector whose projection gave `β`.
    pub pivot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DilationStatus {
    /// The final point passes the Arveson criterion.
    Arveson,
    /// The step cap was reached first.
    StepCap { steps: usize },
    /// No admissible one-column dilation increased the kernel at this step.
    Stalled { step: usize, reason: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct DilationOutcome<T: Real> {
    pub status: DilationStatus,
    pub dilation: HermitianTuple<T>,
    pub steps: Vec<DilationStep<T>>,
    /// `max |corner(X̂) − X|` over entries.
    pub corner_error: T,
    pub final_column_nullity: usize,
    pub final_smallest_retained: Option<T>,
}

impl<T: Real> DilationOutcome<T> {
    pub fn succeeded(&self) -> bool {
        self.status == DilationStatus::Arveson
    }
}

/// Repeated one-column dilations `[[X, α·β], [α·β*, 0]]` until the column
/// system has no nonzero solution. `β` is the normalized projection onto the
/// solution space of the first standard basis vector that projects
/// nontrivially; `α` is the largest scale keeping the dilation in `D_A`,
/// `α = λ_max(B*·L_A(X)⁺·B)^{-1/2}` with `B = Σ A_i ⊗ β_i`.
pub fn arveson_dilate<T: Real>(
    a: &Pencil<T>,
    x: &HermitianTuple<T>,
    max_steps: usize,
    tol: &ToleranceProfile<T>,
) -> Result<DilationOutcome<T>> {
    if a.length() != x.length() {
        return Err(Error::dim("pencil and point lengths differ"));
    }
    let bounded = match a.bounded() {
        Some(b) => b,
        None => level1_bounded_heuristic(a, DEFAULT_BOUNDEDNESS_DIRECTIONS.max(2 * a.length()), 0, tol)?.bounded,
    };
    if !bounded {
        return Err(Error::precondition("pencil failed the level-1 boundedness heuristic"));
    }
    let mv = membership(a, x, tol)?;
    if !mv.member {
        return Err(Error::precondition(format!(
            "point is not in the free spectrahedron (min eigenvalue {:e})",
            mv.min_eigenvalue.as_f64()
        )));
    }
    let n0 = x.size();
    let g = a.length();
    let mut cur = x.clone();
    let mut steps = Vec::new();
    loop {
        let eig = hermitian_eigen(&pencil_eval(a, &cur)?, tol.hermitian_tol)?;
        let kernel = KernelBasis {
            matrix: eig.columns_where(|v| v.abs() <= tol.psd_tol),
            rank_tol_used: tol.psd_tol,
            smallest_retained: None,
            largest_discarded: None,
        };
        let n = cur.size();
        let (nullity, basis, smallest) = if kernel.is_empty() {
            (g * n, ComplexMatrix::identity(g * n), None)
        } else {
            let cs = column_dilation_system(a, &cur, &kernel, tol)?;
            (cs.report.nullity, cs.basis, cs.report.smallest_retained)
        };
        let finish = |status, dilation: HermitianTuple<T>, steps| -> Result<DilationOutcome<T>> {
            let corner_error = dilation.top_left(n0)?.max_abs_diff(x);
            Ok(DilationOutcome {
                status,
                dilation,
                steps,
                corner_error,
                final_column_nullity: nullity,
                final_smallest_retained: smallest,
            })
        };
        if nullity == 0 {
            return finish(DilationStatus::Arveson, cur, steps);
        }
        if steps.len() >= max_steps {
            return finish(DilationStatus::StepCap { steps: steps.len() }, cur, steps);
        }

        // First standard basis vector with a nontrivial projection.
        let cut = T::lit(1e-6);
        let mut choice = None;
        for j in 0..g * n {
            let coeffs: Vec<Complex<T>> = (0..nullity).map(|c| basis[(j, c)].conj()).collect();
            let proj = basis.mul_vec(&coeffs);
            let pn = crate::linalg::norm(&proj);
            if pn > cut {
                choice = Some((j, proj.into_iter().map(|z| z / pn).collect::<Vec<_>>()));
                break;
            }
        }
        let Some((pivot, u)) = choice else {
            return finish(
                DilationStatus::Stalled {
                    step: steps.len(),
                    reason: "solution space has no usable direction".into(),
                },
                cur,
                steps,
            );
        };
        let beta: Vec<Vec<Complex<T>>> = (0..g).map(|i| u[i * n..(i + 1) * n].iter().map(|z| z.conj()).collect()).collect();

        // α from the Schur complement of the bordered pencil.
        let b = lambda_columns(a, &beta)?;
        let pinv = eig.apply(|v| if v > tol.psd_tol { T::one() / v } else { T::zero() });
        let schur = &(&b.adjoint() * &pinv) * &b;
        let top = *crate::linalg::hermitian_eigenvalues(&schur.hermitian_part(), tol.hermitian_tol)?
            .last()
            .expect("d ≥ 1");
        if top <= tol.psd_tol {
            return finish(
                DilationStatus::Stalled {
                    step: steps.len(),
                    reason: format!("dilation column leaves the pencil unchanged (scale {:e})", top.as_f64()),
                },
                cur,
                steps,
            );
        }
        let alpha = T::one() / top.sqrt();
        let mats = cur
            .iter()
            .zip(&beta)
            .map(|(xi, bi)| {
                let mut y = ComplexMatrix::zeros(n + 1, n + 1);
                y.set_block(0, 0, xi);
                for p in 0..n {
                    y[(p, n)] = bi[p] * alpha;
                    y[(n, p)] = (bi[p] * alpha).conj();
                }
                y
            })
            .collect();
        let next = HermitianTuple::hermitize(mats)?;
        let after = membership(a, &next, tol)?;
        let kernel_after = if after.boundary { after.kernel_dim } else { 0 };
        let record = DilationStep {
            size_before: n,
            kernel_before: kernel.dim(),
            kernel_after,
            column_nullity: nullity,
            alpha,
            pivot,
        };
        if !after.member || kernel_after <= kernel.dim() {
            steps.push(record);
            let reason = if after.member {
                "kernel did not grow".to_string()
            } else {
                format!("dilation left the set (min eigenvalue {:e})", after.min_eigenvalue.as_f64())
            };
            return finish(DilationStatus::Stalled { step: steps.len() - 1, reason }, cur, steps);
        }
        steps.push(record);
        cur = next;
    }
}

/// `[[X, β], [β*, γ]]` coordinatewise; used by dilation checks in tests and reports.
pub fn border<T: Real>(x: &HermitianTuple<T>, beta: &[Vec<Complex<T>>], gamma: &[T]) -> Result<HermitianTuple<T>> {
    let n = x.size();
    if beta.len() != x.length() || gamma.len() != x.length() {
        return Err(Error::dim("border data length differs from tuple length"));
    }
    let mats = x
        .iter()
        .zip(beta)
        .zip(gamma)
        .map(|((xi, bi), &gi)| {
            let mut y = ComplexMatrix::zeros(n + 1, n + 1);
            y.set_block(0, 0, xi);
            for p in 0..n {
                y[(p, n)] = bi[p];
                y[(n, p)] = bi[p].conj();
            }
            y[(n, n)] = Complex::new(gi, T::zero());
            y
        })
        .collect();
    HermitianTuple::hermitize(mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::{construct_pauli, construct_spin};

    fn tol() -> ToleranceProfile<f64> {
        ToleranceProfile::default()
    }

    #[test]
    fn pauli_is_irreducible() {
        assert_eq!(commutant_dimension(&construct_pauli::<f64>(), &tol()).unwrap(), 1);
    }

    #[test]
    fn spin3_commutant_is_two_dimensional() {
        let f = construct_spin::<f64>(3).unwrap();
        let c = commutant(&f.tuple, &tol()).unwrap();
        assert_eq!(c.dim, 2);
        let w = c.witness.unwrap();
        for fi in f.tuple.iter() {
            assert!(w.commutator(fi).unwrap().max_abs() < 1e-12);
        }
    }

    #[test]
    fn identity_commutant_is_full() {
        let x = HermitianTuple::new(vec![ComplexMatrix::<f64>::identity(2)]).unwrap();
        assert_eq!(commutant_dimension(&x, &tol()).unwrap(), 4);
    }

    #[test]
    fn circle_point_is_free_in_spin2() {
        let a = construct_spin::<f64>(2).unwrap().pencil();
        let x = HermitianTuple::from_scalars(&[1.0, 0.0]);
        let k = pencil_kernel(&a, &x, &tol()).unwrap();
        assert_eq!(column_dilation_system(&a, &x, &k, &tol()).unwrap().report.nullity, 0);
        assert_eq!(classify(&a, &x, &tol()).unwrap().verdict, Verdict::Free);
    }

    #[test]
    fn interior_point_rejects_systems() {
        let a = construct_spin::<f64>(2).unwrap().pencil();
        let x = HermitianTuple::from_scalars(&[0.0, 0.0]);
        let k = pencil_kernel(&a, &x, &tol()).unwrap();
        assert!(matches!(column_dilation_system(&a, &x, &k, &tol()), Err(Error::Precondition(_))));
        assert!(matches!(hermitian_direction_system(&a, &x, &k, &tol()), Err(Error::Precondition(_))));
        assert_eq!(classify(&a, &x, &tol()).unwrap().verdict, Verdict::Interior);
    }

    #[test]
    fn dilating_zero_in_spin2() {
        let a = construct_spin::<f64>(2).unwrap().pencil();
        let x = HermitianTuple::from_scalars(&[0.0, 0.0]);
        let out = arveson_dilate(&a, &x, 8, &tol()).unwrap();
        assert!(out.succeeded(), "{:?}", out.status);
        assert!(out.corner_error <= 1e-12);
        for s in &out.steps {
            assert!(s.kernel_after > s.kernel_before);
        }
        assert!(classify(&a, &out.dilation, &tol()).unwrap().verdict.is_arveson());
    }

    #[test]
    fn boundary_witness_moves_both_ways() {
        // (1/2)·(1 ⊕ ...) style point: X = diag(1, 0) with second coordinate 0 is on
        // the boundary of D_{F^[2]} but splits along the lower corner.
        let a = construct_spin::<f64>(2).unwrap().pencil();
        let x = HermitianTuple::from_real(&[&[&[1.0, 0.0], &[0.0, 0.0]], &[&[0.0, 0.0], &[0.0, 0.0]]]).unwrap();
        let c = classify(&a, &x, &tol()).unwrap();
        assert_eq!(c.verdict, Verdict::Boundary);
        let Some(Witness::Hermitian { beta, alpha }) = c.witness else { panic!("missing witness") };
        for s in [alpha, -alpha] {
            let y = x.add_scaled(s, &beta).unwrap();
            assert!(membership(&a, &y, &tol()).unwrap().member);
        }
    }
}
