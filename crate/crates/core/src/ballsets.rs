//! Matrix convex sets over the closed unit ball: the matrix ball, the
//! self-dual ball, the largest set `W^max`, the non-self-adjoint set `Q_d`,
//! and the containment chain between them.

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::duality::polar_refute;
use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigen, hermitian_eigenvalues, inner, nullspace, ComplexMatrix, GeneralTuple, HermitianTuple,
    ToleranceProfile,
};
use crate::pencil::{lambda_eval, membership};
use crate::sampling;
use crate::scalar::Real;
use crate::spin::construct_spin;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BallSet {
    MatrixBall,
    SelfDualBall,
    WmaxBall,
    Qd,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub enum BallCertificate<T: Real> {
    /// Real unit direction attaining the reported value.
    Direction(Vec<T>),
    /// Complex unit coefficients attaining the reported norm.
    ComplexDirection(Vec<Complex<T>>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct BallVerdict<T: Real> {
    pub set: BallSet,
    pub member: bool,
    pub margin: T,
    /// Set when a member verdict rests on a finite search.
    pub heuristic: bool,
    pub certificate: Option<BallCertificate<T>>,
}

impl<T: Real> BallVerdict<T> {
    fn exact(set: BallSet, margin: T, tol: &ToleranceProfile<T>) -> Self {
        Self {
            set,
            member: margin >= -tol.psd_tol,
            margin,
            heuristic: false,
            certificate: None,
        }
    }
}

fn top_eigenvalue<T: Real>(m: &ComplexMatrix<T>, tol: &ToleranceProfile<T>) -> Result<T> {
    Ok(*hermitian_eigenvalues(m, tol.hermitian_tol)?.last().expect("nonempty spectrum"))
}

/// Margin `1 − λ_max(Σ X_j²)`.
pub fn matrix_ball_membership<T: Real>(x: &HermitianTuple<T>, tol: &ToleranceProfile<T>) -> Result<BallVerdict<T>> {
    let s = x.sum_of_squares().hermitian_part();
    Ok(BallVerdict::exact(BallSet::MatrixBall, T::one() - top_eigenvalue(&s, tol)?, tol))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct BallDilation<T: Real> {
    /// `Y_j = [[X_j, ε·w_j], [ε·w_j*, 0]]`.
    pub dilation: HermitianTuple<T>,
    pub epsilon: T,
    /// Matrix-ball margin of the dilation.
    pub margin: T,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct MatrixBallExtremality<T: Real> {
    pub membership: BallVerdict<T>,
    pub extreme: bool,
    /// `Σ X_j² = I`.
    pub s_is_identity: bool,
    /// Dimension of `ker(I − Σ X_j²)`.
    pub saturated_dim: usize,
    pub nullity: usize,
    pub dilation: Option<BallDilation<T>>,
}

const EPSILON_HALVINGS: usize = 60;

/// Arveson extremality in the matrix ball. With `S = Σ X_j²`, `V = ker(I − S)`
/// and `W = V^⊥`, a nonzero `(w_j) ∈ W^g` with `P_V(Σ X_j w_j) = 0` yields a
/// nontrivial dilation; otherwise `X` is Arveson extreme.
pub fn matrix_ball_arveson<T: Real>(x: &HermitianTuple<T>, tol: &ToleranceProfile<T>) -> Result<MatrixBallExtremality<T>> {
    let membership = matrix_ball_membership(x, tol)?;
    if !membership.member {
        return Err(Error::precondition(format!(
            "point is outside the matrix ball (margin {:e})",
            membership.margin.as_f64()
        )));
    }
    let g = x.length();
    let eig = hermitian_eigen(&x.sum_of_squares().hermitian_part(), tol.hermitian_tol)?;
    let saturated = |v: T| (T::one() - v).abs() <= tol.psd_tol;
    let vm = eig.columns_where(saturated);
    let wm = eig.columns_where(|v| !saturated(v));
    let k = vm.cols();
    let m = wm.cols();
    if m == 0 {
        return Ok(MatrixBallExtremality {
            membership,
            extreme: true,
            s_is_identity: true,
            saturated_dim: k,
            nullity: 0,
            dilation: None,
        });
    }
    // Unknown z_j ∈ C^m with w_j = W z_j; equations V* X_j W z_j summed over j.
    let blocks: Vec<ComplexMatrix<T>> = x.iter().map(|xj| &(&vm.adjoint() * xj) * &wm).collect();
    let mut sys = ComplexMatrix::zeros(k, g * m);
    for (j, b) in blocks.iter().enumerate() {
        sys.set_block(0, j * m, b);
    }
    let kernel = nullspace(&sys, tol)?;
    if kernel.is_empty() {
        return Ok(MatrixBallExtremality {
            membership,
            extreme: true,
            s_is_identity: false,
            saturated_dim: k,
            nullity: 0,
            dilation: None,
        });
    }
    let z = kernel.matrix.column(0);
    let w: Vec<Vec<Complex<T>>> = (0..g)
        .map(|j| wm.mul_vec(&z[j * m..(j + 1) * m]))
        .collect();
    let mut eps = T::one();
    let mut found = None;
    for _ in 0..EPSILON_HALVINGS {
        let y = ball_border(x, &w, eps, &vec![T::zero(); g])?;
        let v = matrix_ball_membership(&y, tol)?;
        if v.member {
            found = Some(BallDilation {
                dilation: y,
                epsilon: eps,
                margin: v.margin,
            });
            break;
        }
        eps /= T::lit(2.0);
    }
    let dilation = found.ok_or_else(|| Error::Numerical {
        message: "no dilation scale kept the matrix ball".into(),
        residual: eps.as_f64(),
    })?;
    Ok(MatrixBallExtremality {
        membership,
        extreme: false,
        s_is_identity: false,
        saturated_dim: k,
        nullity: kernel.dim(),
        dilation: Some(dilation),
    })
}

/// `Y_j = [[X_j, ε·w_j], [ε·w_j*, b_j]]`.
fn ball_border<T: Real>(x: &HermitianTuple<T>, w: &[Vec<Complex<T>>], eps: T, b: &[T]) -> Result<HermitianTuple<T>> {
    let n = x.size();
    let mats = x
        .iter()
        .zip(w.iter().zip(b))
        .map(|(xj, (wj, bj))| {
            let mut y = ComplexMatrix::zeros(n + 1, n + 1);
            y.set_block(0, 0, xj);
            for p in 0..n {
                y[(p, n)] = wj[p] * eps;
                y[(n, p)] = wj[p].conj() * eps;
            }
            y[(n, n)] = Complex::new(*bj, T::zero());
            y
        })
        .collect();
    HermitianTuple::new(mats)
}

/// Tries `trials` random one-step dilations `[[X_j, ε·w_j], [ε·w_j*, ε·b_j]]`
/// with unit-norm `(w_j)` and returns the first that stays in the matrix ball.
pub fn random_ball_dilation<T: Real>(
    x: &HermitianTuple<T>,
    trials: usize,
    eps: T,
    seed: u64,
    tol: &ToleranceProfile<T>,
) -> Result<Option<HermitianTuple<T>>> {
    let n = x.size();
    let g = x.length();
    let mut rng = sampling::rng(seed);
    for _ in 0..trials {
        let flat: Vec<Complex<T>> = sampling::complex_unit_vector(&mut rng, n * g);
        let w: Vec<Vec<Complex<T>>> = flat.chunks(n.max(1)).map(<[_]>::to_vec).collect();
        let b: Vec<T> = (0..g).map(|_| sampling::gaussian::<T>(&mut rng) * eps).collect();
        let y = ball_border(x, &w, eps, &b)?;
        if matrix_ball_membership(&y, tol)?.member {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

/// Margin `1 − ‖Σ X_i ⊗ conj(X_i)‖`.
pub fn selfdual_ball_membership<T: Real>(x: &HermitianTuple<T>, tol: &ToleranceProfile<T>) -> Result<BallVerdict<T>> {
    let n = x.size();
    let mut m = ComplexMatrix::zeros(n * n, n * n);
    for xi in x.iter() {
        m = &m + &xi.kron(&xi.conj());
    }
    let values = hermitian_eigenvalues(&m.hermitian_part(), tol.hermitian_tol)?;
    let norm = values.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    Ok(BallVerdict::exact(BallSet::SelfDualBall, T::one() - norm, tol))
}

const ASCENT_STARTS: usize = 4;
const BACKTRACK_CAP: usize = 40;

fn normalize<T: Real>(v: &[T]) -> Option<Vec<T>> {
    let n = v.iter().map(|x| *x * *x).sum::<T>().sqrt();
    (n > T::zero()).then(|| v.iter().map(|x| *x / n).collect())
}

/// Maximizes `f` over the unit sphere from the best few `starts` by projected
/// gradient ascent with backtracking; only improving steps are taken.
pub(crate) fn sphere_ascent<T: Real>(
    f: impl Fn(&[T]) -> Result<(T, Vec<T>)>,
    starts: Vec<Vec<T>>,
    refine_steps: usize,
) -> Result<(T, Vec<T>)> {
    let mut scored = Vec::with_capacity(starts.len());
    for c in starts {
        let (v, grad) = f(&c)?;
        scored.push((v, c, grad));
    }
    scored.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut best = (scored[0].0, scored[0].1.clone());
    for (mut val, mut c, mut grad) in scored.into_iter().take(ASCENT_STARTS) {
        let mut t = T::one();
        for _ in 0..refine_steps {
            let along = grad.iter().zip(&c).map(|(g, x)| *g * *x).sum::<T>();
            let p: Vec<T> = grad.iter().zip(&c).map(|(g, x)| *g - along * *x).collect();
            if p.iter().map(|x| x.abs()).fold(T::zero(), T::max) <= T::epsilon() {
                break;
            }
            let mut moved = false;
            for _ in 0..BACKTRACK_CAP {
                let trial: Vec<T> = c.iter().zip(&p).map(|(x, d)| *x + t * *d).collect();
                if let Some(trial) = normalize(&trial) {
                    let (v, gr) = f(&trial)?;
                    if v > val {
                        val = v;
                        c = trial;
                        grad = gr;
                        moved = true;
                        t = (t * T::lit(2.0)).min(T::lit(4.0));
                        break;
                    }
                }
                t /= T::lit(2.0);
            }
            if !moved {
                break;
            }
        }
        if val > best.0 {
            best = (val, c);
        }
    }
    Ok(best)
}

fn signed_coordinates<T: Real>(g: usize) -> Vec<Vec<T>> {
    let mut out = Vec::with_capacity(2 * g);
    for i in 0..g {
        for s in [T::one(), -T::one()] {
            let mut c = vec![T::zero(); g];
            c[i] = s;
            out.push(c);
        }
    }
    out
}

/// Estimates `m(X) = sup_{|c|=1} λ_max(Σ c_i X_i)`; margin `1 − m̂`. A
/// non-member verdict is certified by the returned direction; a member
/// verdict is heuristic.
pub fn wmax_ball_membership<T: Real>(
    x: &HermitianTuple<T>,
    grid: usize,
    refine_steps: usize,
    seed: u64,
    tol: &ToleranceProfile<T>,
) -> Result<BallVerdict<T>> {
    let g = x.length();
    if grid < 2 * g {
        return Err(Error::param(format!("grid must be at least 2g = {}, got {grid}", 2 * g)));
    }
    let mut starts = signed_coordinates::<T>(g);
    let mut rng = sampling::rng(seed);
    while starts.len() + 1 < grid {
        let c: Vec<T> = sampling::unit_vector(&mut rng, g);
        starts.push(c.iter().map(|v| -*v).collect());
        starts.push(c);
    }
    let f = |c: &[T]| -> Result<(T, Vec<T>)> {
        let eig = hermitian_eigen(&x.combine(c), tol.hermitian_tol)?;
        let top = eig.max();
        let band = eig.columns_where(|v| v >= top - tol.psd_tol);
        let k = T::lit(band.cols() as f64);
        let grad = x
            .iter()
            .map(|xi| {
                (0..band.cols())
                    .map(|j| {
                        let v = band.column(j);
                        inner(&v, &xi.mul_vec(&v)).re
                    })
                    .sum::<T>()
                    / k
            })
            .collect();
        Ok((top, grad))
    };
    let (m, c) = sphere_ascent(f, starts, refine_steps)?;
    let margin = T::one() - m;
    let member = margin >= -tol.psd_tol;
    Ok(BallVerdict {
        set: BallSet::WmaxBall,
        member,
        margin,
        heuristic: member,
        certificate: Some(BallCertificate::Direction(c)),
    })
}

/// `(σ_max, u, v)` with `M·v = σ_max·u`.
type SingularTriple<T> = (T, Vec<Complex<T>>, Vec<Complex<T>>);

fn top_singular<T: Real>(m: &ComplexMatrix<T>, tol: &ToleranceProfile<T>) -> Result<SingularTriple<T>> {
    let eig = hermitian_eigen(&(&m.adjoint() * m).hermitian_part(), tol.hermitian_tol)?;
    let sigma = eig.max().max(T::zero()).sqrt();
    let v = eig.vectors.column(eig.values.len() - 1);
    let mv = m.mul_vec(&v);
    let u = if sigma > T::zero() {
        mv.into_iter().map(|z| z / sigma).collect()
    } else {
        v.clone()
    };
    Ok((sigma, u, v))
}

/// Estimates `sup_{|λ|=1} ‖Σ λ_i T_i‖` over complex unit `λ`; same
/// one-sided semantics as [`wmax_ball_membership`].
pub fn qd_membership<T: Real>(
    t: &GeneralTuple<T>,
    grid: usize,
    refine_steps: usize,
    seed: u64,
    tol: &ToleranceProfile<T>,
) -> Result<BallVerdict<T>> {
    let g = t.length();
    if grid < 2 * g {
        return Err(Error::param(format!("grid must be at least 2g = {}, got {grid}", 2 * g)));
    }
    let to_complex = |c: &[T]| -> Vec<Complex<T>> { (0..g).map(|i| Complex::new(c[i], c[g + i])).collect() };
    let mut starts: Vec<Vec<T>> = signed_coordinates::<T>(g)
        .into_iter()
        .step_by(2)
        .map(|mut c| {
            c.resize(2 * g, T::zero());
            c
        })
        .collect();
    let mut rng = sampling::rng(seed);
    while starts.len() < grid {
        let l: Vec<Complex<T>> = sampling::complex_unit_vector(&mut rng, g);
        starts.push(l.iter().map(|z| z.re).chain(l.iter().map(|z| z.im)).collect());
    }
    let f = |c: &[T]| -> Result<(T, Vec<T>)> {
        let (sigma, u, v) = top_singular(&t.combine(&to_complex(c)), tol)?;
        let w: Vec<Complex<T>> = t.matrices().iter().map(|ti| inner(&u, &ti.mul_vec(&v))).collect();
        let grad = w.iter().map(|z| z.re).chain(w.iter().map(|z| -z.im)).collect();
        Ok((sigma, grad))
    };
    let (s, c) = sphere_ascent(f, starts, refine_steps)?;
    let margin = T::one() - s;
    let member = margin >= -tol.psd_tol;
    Ok(BallVerdict {
        set: BallSet::Qd,
        member,
        margin,
        heuristic: member,
        certificate: Some(BallCertificate::ComplexDirection(to_complex(&c))),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainLink {
    /// A sampled member of `D_F` failed the matrix ball.
    SpinInMatrixBall,
    /// A sampled member of `D_F` failed the self-dual ball.
    SpinInSelfDualBall,
    /// A sampled member of `D_F` was refuted by matrix-ball samples in the polar.
    SpinInBallPolar,
    /// A sampled member of `D_F` was refuted for `W^max`.
    SpinInWmax,
    /// A matrix convex combination of level-1 ball points failed `D_F`.
    MinimalInSpin,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainViolation {
    pub sample: usize,
    pub link: ChainLink,
    pub margin: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ProperWitness<T: Real> {
    /// Matrix-ball margin of `F/√g`.
    pub matrix_ball_margin: T,
    /// `λ_max(Λ_F(F/√g))`.
    pub lambda_top: T,
    pub in_spin: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ChainReport<T: Real> {
    pub g: usize,
    pub samples: usize,
    pub minimal_samples: usize,
    pub in_matrix_ball: usize,
    pub in_selfdual_ball: usize,
    pub not_polar_refuted: usize,
    pub wmax_not_refuted: usize,
    pub violations: Vec<ChainViolation>,
    pub witness: ProperWitness<T>,
    pub notes: Vec<String>,
}

const POLAR_POOL: usize = 24;
const CHAIN_GRID_FACTOR: usize = 4;
const CHAIN_REFINE: usize = 10;

/// Samples boundary-rich members of `D_{F^[g]}` and checks them against
/// `B_g`, `𝔇_g`, the polar of `B_g` (by sampled refutation) and `W^max`;
/// also builds matrix convex combinations of level-1 ball points and checks
/// them against `D_F`.
pub fn containment_chain_experiment<T: Real>(
    g: usize,
    samples: usize,
    seed: u64,
    tol: &ToleranceProfile<T>,
) -> Result<ChainReport<T>> {
    if g < 2 {
        return Err(Error::param(format!("need g >= 2, got {g}")));
    }
    let spin = construct_spin::<T>(g)?;
    let pencil = spin.pencil();
    let mut rng = sampling::substream(seed, 0);

    let root = T::lit(g as f64).sqrt();
    let witness_point = spin.tuple.scale(T::one() / root);
    let mut pool = vec![witness_point.clone()];
    while pool.len() < POLAR_POOL {
        let n = rng.random_range(1..=3);
        let y = sampling::hermitian_tuple::<T>(&mut rng, n, g);
        let top = top_eigenvalue(&y.sum_of_squares().hermitian_part(), tol)?;
        pool.push(y.scale(T::one() / top.sqrt()));
    }

    let mut report = ChainReport {
        g,
        samples,
        minimal_samples: 0,
        in_matrix_ball: 0,
        in_selfdual_ball: 0,
        not_polar_refuted: 0,
        wmax_not_refuted: 0,
        violations: Vec::new(),
        witness: ProperWitness {
            matrix_ball_margin: matrix_ball_membership(&witness_point, tol)?.margin,
            lambda_top: top_eigenvalue(&lambda_eval(&pencil, &witness_point)?, tol)?,
            in_spin: membership(&pencil, &witness_point, tol)?.member,
        },
        notes: vec![
            "W^min membership is not certified; its elements are generated as matrix convex combinations of unit-sphere points".into(),
        ],
    };
    let violate = |report: &mut ChainReport<T>, sample, link, margin: T| {
        report.violations.push(ChainViolation {
            sample,
            link,
            margin: margin.as_f64(),
        })
    };

    for k in 0..samples {
        let n = rng.random_range(1..=3);
        let x = sampling::boundary_rich_member(&mut rng, &pencil, n, tol)?;
        let mb = matrix_ball_membership(&x, tol)?;
        if mb.member {
            report.in_matrix_ball += 1;
        } else {
            violate(&mut report, k, ChainLink::SpinInMatrixBall, mb.margin);
        }
        let sd = selfdual_ball_membership(&x, tol)?;
        if sd.member {
            report.in_selfdual_ball += 1;
        } else {
            violate(&mut report, k, ChainLink::SpinInSelfDualBall, sd.margin);
        }
        match polar_refute(&pool, &x, tol)? {
            None => report.not_polar_refuted += 1,
            Some(r) => violate(&mut report, k, ChainLink::SpinInBallPolar, T::one() - r.top_eigenvalue),
        }
        let wm = wmax_ball_membership(&x, CHAIN_GRID_FACTOR * g, CHAIN_REFINE, seed.wrapping_add(k as u64), tol)?;
        if wm.member {
            report.wmax_not_refuted += 1;
        } else {
            violate(&mut report, k, ChainLink::SpinInWmax, wm.margin);
        }
    }

    let minimal = samples.div_ceil(4);
    for k in 0..minimal {
        let n = rng.random_range(1..=3);
        let parts = n + rng.random_range(0..=2);
        let w = sampling::isometry::<T>(&mut rng, parts, n);
        let mut mats = vec![ComplexMatrix::zeros(n, n); g];
        for r in 0..parts {
            let point: Vec<T> = sampling::unit_vector(&mut rng, g);
            let row: Vec<Complex<T>> = (0..n).map(|c| w[(r, c)]).collect();
            let outer = ComplexMatrix::from_fn(n, n, |p, q| row[p].conj() * row[q]);
            for (m, ci) in mats.iter_mut().zip(&point) {
                m.axpy(Complex::new(*ci, T::zero()), &outer);
            }
        }
        let x = HermitianTuple::hermitize(mats)?;
        let v = membership(&pencil, &x, tol)?;
        if !v.member {
            violate(&mut report, k, ChainLink::MinimalInSpin, v.min_eigenvalue);
        }
    }
    report.minimal_samples = minimal;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::construct_pauli;

    fn tol() -> ToleranceProfile<f64> {
        ToleranceProfile::default()
    }

    fn spin(g: usize) -> HermitianTuple<f64> {
        construct_spin::<f64>(g).unwrap().tuple
    }

    #[test]
    fn matrix_ball_margins() {
        let f = spin(3);
        let r = matrix_ball_membership(&f.scale(1.0 / 3f64.sqrt()), &tol()).unwrap();
        assert!(r.member && r.margin.abs() < 1e-14);
        assert_eq!(matrix_ball_membership(&HermitianTuple::zeros(2, 3), &tol()).unwrap().margin, 1.0);
        let r = matrix_ball_membership(&f, &tol()).unwrap();
        assert!(!r.member && (r.margin + 2.0).abs() < 1e-13);
    }

    #[test]
    fn arveson_branches() {
        let r = matrix_ball_arveson(&spin(3).scale(1.0 / 3f64.sqrt()), &tol()).unwrap();
        assert!(r.extreme && r.s_is_identity);
        let r = matrix_ball_arveson(&spin(2).scale(0.5), &tol()).unwrap();
        assert!(!r.extreme);
        let d = r.dilation.unwrap();
        assert!(d.margin >= 0.0 && d.dilation.size() == 3);
        let r = matrix_ball_arveson(&HermitianTuple::from_scalars(&[1.0, 0.0]), &tol()).unwrap();
        assert!(r.extreme && r.s_is_identity);
        assert!(matrix_ball_arveson(&spin(3), &tol()).is_err());
    }

    #[test]
    fn selfdual_margins() {
        let r = selfdual_ball_membership(&spin(2).scale(1.0 / 2f64.sqrt()), &tol()).unwrap();
        assert!(r.margin.abs() < 1e-14);
        let r = selfdual_ball_membership(&construct_pauli::<f64>().scale(1.0 / 3f64.sqrt()), &tol()).unwrap();
        assert!(r.margin.abs() < 1e-14);
    }

    #[test]
    fn wmax_examples() {
        let p = construct_pauli::<f64>().leading(2).unwrap();
        let r = wmax_ball_membership(&p, 16, 20, 0, &tol()).unwrap();
        assert!(r.member && r.margin.abs() < 1e-12);
        let r = wmax_ball_membership(&HermitianTuple::from_scalars(&[1.1, 0.0]), 4, 5, 0, &tol()).unwrap();
        assert!(!r.member);
        match r.certificate {
            Some(BallCertificate::Direction(c)) => assert!((c[0] - 1.0).abs() < 1e-12),
            _ => panic!("missing direction"),
        }
        let r = wmax_ball_membership(&spin(3).scale(1.0 / 3f64.sqrt()), 12, 20, 0, &tol()).unwrap();
        assert!(r.member && (1.0 - r.margin - 1.0 / 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn qd_examples() {
        let e12 = ComplexMatrix::<f64>::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let e21 = e12.transpose();
        let r = qd_membership(&GeneralTuple::new(vec![e12.clone()]).unwrap(), 4, 10, 0, &tol()).unwrap();
        assert!(r.member && r.margin.abs() < 1e-12);
        let r = qd_membership(&GeneralTuple::new(vec![e12, e21]).unwrap(), 8, 20, 0, &tol()).unwrap();
        assert!(r.member && r.margin.abs() < 1e-9);
        let id = ComplexMatrix::identity(2);
        let r = qd_membership(&GeneralTuple::new(vec![id.clone(), id]).unwrap(), 8, 30, 0, &tol()).unwrap();
        assert!(!r.member && (r.margin + 2f64.sqrt() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn chain_small() {
        let r = containment_chain_experiment::<f64>(3, 40, 1, &tol()).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(!r.witness.in_spin && r.witness.matrix_ball_margin.abs() < 1e-10);
        assert!((r.witness.lambda_top - 3f64.sqrt()).abs() < 1e-9);
    }
}
