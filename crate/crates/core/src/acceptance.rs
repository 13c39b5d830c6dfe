//! The acceptance checks, one function per criterion. Each returns a
//! pass/fail outcome with the numbers it rests on.

use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ballsets::{containment_chain_experiment, matrix_ball_arveson, matrix_ball_membership, random_ball_dilation};
use crate::drops::{level1_hull_membership, simplex_membership, FreeSimplex};
use crate::duality::{choi_membership, dual_pencil, FullSpanBasis};
use crate::error::Result;
use crate::extremality::{arveson_dilate, classify, Verdict};
use crate::fixtures::{
    freeex4, freeex6, hull_generator, real_form_unitary, realform4, union_simplex_pencil, union_simplex_point,
    UNION_SIMPLEX_VERTICES, UNION_INTERVALS, UNION_SIMPLICES,
};
use crate::linalg::{hermitian_eigen, hermitian_eigenvalues, inner, ComplexMatrix, HermitianTuple, ToleranceProfile};
use crate::pencil::{lambda_eval, membership, pencil_eval, Pencil};
use crate::sampling;
use crate::spin::{anticommutation_residual, construct_pauli, construct_spin, orthogonal_transform};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: f64,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} {}: {} ({:.0} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed_ms
        )
    }
}

type Check = fn(u64) -> Result<(bool, String)>;

const CRITERIA: [(u8, &str, Check); 11] = [
    (1, "level-4 free extreme point", level4_free_extreme),
    (2, "level-6 free extreme point", level6_free_extreme),
    (3, "real-form identity", real_form_identity),
    (4, "Pauli self-duality", pauli_self_duality),
    (5, "Pauli refutations", pauli_refutations),
    (6, "spin symmetry", spin_symmetry),
    (7, "containment chain", containment_chain),
    (8, "extend by zero", extend_by_zero),
    (9, "union and simplex example", union_example),
    (10, "matrix-ball Arveson criterion", matrix_ball_criterion),
    (11, "projection-extension dilation", projection_extension),
];

pub fn criterion_ids() -> impl Iterator<Item = u8> {
    CRITERIA.iter().map(|c| c.0)
}

/// Runs one criterion; errors count as failures.
pub fn run(id: u8, seed: u64) -> Option<CriterionOutcome> {
    let (id, name, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (passed, detail) = check(seed).unwrap_or_else(|e| (false, format!("error: {e}")));
    Some(CriterionOutcome {
        id: *id,
        name: (*name).to_string(),
        passed,
        detail,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    criterion_ids().filter_map(|id| run(id, seed)).collect()
}

fn tol() -> ToleranceProfile<f64> {
    ToleranceProfile::default()
}

fn spin(g: usize) -> Result<Pencil<f64>> {
    Ok(construct_spin::<f64>(g)?.pencil())
}

/// Band outside which two margins must give the same verdict.
const VERDICT_BAND: f64 = 1e-8;
const MIN_RETAINED_SINGULAR: f64 = 1e-6;
const RUNTIME_LIMIT_S: f64 = 1.0;

fn free_extreme_check(x: &HermitianTuple<f64>) -> Result<(bool, String)> {
    let start = Instant::now();
    let a = spin(3)?.with_boundedness_check(64, 0, &tol())?;
    let c = classify(&a, x, &tol())?;
    let secs = start.elapsed().as_secs_f64();
    let retained = c.smallest_nonzero_singular.unwrap_or(0.0);
    let ok = c.verdict == Verdict::Free
        && c.kernel_dim >= 1
        && c.commutant_dim == 1
        && c.beta_nullity_column == Some(0)
        && retained > MIN_RETAINED_SINGULAR
        && secs < RUNTIME_LIMIT_S;
    Ok((
        ok,
        format!(
            "verdict {}, kernel dim {}, commutant dim {}, column nullity {:?}, smallest retained singular {:.4e}, {:.3} s",
            c.verdict.name(),
            c.kernel_dim,
            c.commutant_dim,
            c.beta_nullity_column,
            retained,
            secs
        ),
    ))
}

fn level4_free_extreme(_: u64) -> Result<(bool, String)> {
    free_extreme_check(&freeex4())
}

fn level6_free_extreme(_: u64) -> Result<(bool, String)> {
    free_extreme_check(&freeex6())
}

const REAL_FORM_TOL: f64 = 1e-12;

fn real_form_identity(_: u64) -> Result<(bool, String)> {
    let u = real_form_unitary::<f64>();
    let rotated = freeex4::<f64>().compress(&u)?;
    let diff = rotated.max_abs_diff(&realform4());
    Ok((diff <= REAL_FORM_TOL, format!("max entry difference {diff:.3e}")))
}

const SELF_DUALITY_SAMPLES: usize = 10_000;
const IDENTITY_SAMPLES: usize = 1_000;
const DUAL_PENCIL_SAMPLES: usize = 1_000;
const IDENTITY_TOL: f64 = 1e-12;

/// Random tuples around the boundary of `D_P`: half scaled exactly onto it,
/// half scaled by a factor in `(0.05, 2)`.
fn pauli_sample(rng: &mut impl Rng, p: &Pencil<f64>) -> Result<HermitianTuple<f64>> {
    let n = rng.random_range(1..=4);
    let s = if rng.random_bool(0.5) { 1.0 } else { rng.random_range(0.05..2.0) };
    sampling::scaled_member(rng, p, n, s, &tol())
}

fn pauli_self_duality(seed: u64) -> Result<(bool, String)> {
    let t = tol();
    let p = construct_pauli::<f64>();
    let pencil = Pencil::new(p.clone());
    let basis = FullSpanBasis::new(p.clone(), &t)?;
    let mut rng = sampling::substream(seed, 4);

    let mut disagreements = 0;
    let mut in_band = 0;
    for _ in 0..SELF_DUALITY_SAMPLES {
        let x = pauli_sample(&mut rng, &pencil)?;
        let direct = membership(&pencil, &x, &t)?;
        let choi = choi_membership(&basis, &x, &t)?.verdict;
        if direct.min_eigenvalue.abs() <= VERDICT_BAND || choi.min_eigenvalue.abs() <= VERDICT_BAND {
            in_band += 1;
        } else if direct.member != choi.member {
            disagreements += 1;
        }
    }

    let p3 = p.get(2);
    let mut worst_identity: f64 = 0.0;
    for _ in 0..IDENTITY_SAMPLES {
        let x = pauli_sample(&mut rng, &pencil)?;
        let n = x.size();
        let id = ComplexMatrix::identity(2 * n);
        let mut flipped = id.clone();
        for (k, xk) in x.iter().enumerate() {
            let term = p.get(k).kron(xk);
            flipped = if k == 2 { &flipped - &term } else { &flipped + &term };
        }
        let conj = p3.kron(&ComplexMatrix::identity(n));
        let lhs = &(&conj * &flipped) * &conj;
        worst_identity = worst_identity.max((&lhs - &pencil_eval(&pencil, &x)?).max_abs());
    }

    let dual = Pencil::new(dual_pencil(&basis, &t)?);
    let mut dual_disagreements = 0;
    for _ in 0..DUAL_PENCIL_SAMPLES {
        let x = pauli_sample(&mut rng, &pencil)?;
        let a = membership(&pencil, &x, &t)?;
        let b = membership(&dual, &x, &t)?;
        if a.min_eigenvalue.abs() > VERDICT_BAND && b.min_eigenvalue.abs() > VERDICT_BAND && a.member != b.member {
            dual_disagreements += 1;
        }
    }
    let ok = disagreements == 0 && worst_identity <= IDENTITY_TOL && dual_disagreements == 0;
    Ok((
        ok,
        format!(
            "{disagreements} Choi disagreements ({in_band} of {SELF_DUALITY_SAMPLES} in band), \
             conjugation identity residual {worst_identity:.2e}, {dual_disagreements} dual-pencil disagreements"
        ),
    ))
}

/// Smallest eigenvalue of `L_P` at `conj(P)`, `−P` and `(P_1, P_2, 0)`.
pub const PAULI_REFUTATION_MARGINS: [f64; 3] = [-2.0, -2.0, -1.0];
const REFUTATION_CEILING: f64 = -0.2;
const REGRESSION_TOL: f64 = 1e-12;

fn pauli_refutations(_: u64) -> Result<(bool, String)> {
    let p = construct_pauli::<f64>();
    let pencil = Pencil::new(p.clone());
    let mut third_zero = p.matrices().to_vec();
    third_zero[2] = ComplexMatrix::zeros(2, 2);
    let points = [p.conj(), p.neg(), HermitianTuple::new(third_zero)?];
    let mut ok = true;
    let mut mins = Vec::new();
    for (x, want) in points.iter().zip(PAULI_REFUTATION_MARGINS) {
        let v = membership(&pencil, x, &tol())?;
        ok &= !v.member && v.min_eigenvalue < REFUTATION_CEILING && (v.min_eigenvalue - want).abs() <= REGRESSION_TOL;
        mins.push(v.min_eigenvalue);
    }
    Ok((ok, format!("min pencil eigenvalues {mins:?}")))
}

const SYMMETRY_TRIALS: usize = 100;
const ANTICOMMUTATION_TOL: f64 = 1e-12;
const MARGIN_DRIFT_TOL: f64 = 1e-9;

fn spin_symmetry(seed: u64) -> Result<(bool, String)> {
    let t = tol();
    let mut worst_residual: f64 = 0.0;
    let mut worst_drift: f64 = 0.0;
    let mut flips = 0;
    for g in 2..=5 {
        let f = construct_spin::<f64>(g)?;
        let pencil = f.pencil();
        let mut rng = sampling::substream(seed, 60 + g as u64);
        for _ in 0..SYMMETRY_TRIALS {
            let u = sampling::orthogonal::<f64>(&mut rng, g);
            worst_residual = worst_residual.max(anticommutation_residual(&orthogonal_transform(&u, &f.tuple)?));
            let n = rng.random_range(1..=3);
            let s = if rng.random_bool(0.5) { 1.0 } else { rng.random_range(0.05..1.5) };
            let x = sampling::scaled_member(&mut rng, &pencil, n, s, &t)?;
            let a = membership(&pencil, &x, &t)?;
            let b = membership(&pencil, &orthogonal_transform(&u, &x)?, &t)?;
            worst_drift = worst_drift.max((a.min_eigenvalue - b.min_eigenvalue).abs());
            if a.member != b.member {
                flips += 1;
            }
        }
    }
    let ok = worst_residual <= ANTICOMMUTATION_TOL && worst_drift <= MARGIN_DRIFT_TOL && flips == 0;
    Ok((
        ok,
        format!("worst anticommutation residual {worst_residual:.2e}, worst margin drift {worst_drift:.2e}, {flips} verdict flips"),
    ))
}

const CHAIN_SAMPLES: usize = 1_000;
const WITNESS_MARGIN_TOL: f64 = 1e-10;
const WITNESS_TOP_TOL: f64 = 1e-9;

fn containment_chain(seed: u64) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for g in 2..=4 {
        let r = containment_chain_experiment::<f64>(g, CHAIN_SAMPLES, seed.wrapping_add(g as u64), &tol())?;
        let root = (g as f64).sqrt();
        let w = &r.witness;
        let witness_ok = w.matrix_ball_margin.abs() <= WITNESS_MARGIN_TOL
            && (w.lambda_top - root).abs() <= WITNESS_TOP_TOL
            && !w.in_spin;
        ok &= r.violations.is_empty()
            && r.in_matrix_ball == CHAIN_SAMPLES
            && r.in_selfdual_ball == CHAIN_SAMPLES
            && witness_ok;
        parts.push(format!(
            "g={g}: {} violations, witness ball margin {:.1e}, witness top {:.12}",
            r.violations.len(),
            w.matrix_ball_margin,
            w.lambda_top
        ));
    }
    Ok((ok, parts.join("; ")))
}

const EXTENSION_SAMPLES: usize = 500;

fn extend_by_zero(seed: u64) -> Result<(bool, String)> {
    let t = tol();
    let f3 = spin(3)?;
    let f4 = spin(4)?;
    let mut rng = sampling::substream(seed, 8);
    let mut disagreements = 0;
    let mut members = 0;
    for k in 0..2 * EXTENSION_SAMPLES {
        let n = rng.random_range(1..=3);
        let s = if k < EXTENSION_SAMPLES { rng.random_range(0.05..=1.0) } else { rng.random_range(1.0001..2.0) };
        let x = sampling::scaled_member(&mut rng, &f3, n, s, &t)?;
        let a = membership(&f3, &x, &t)?;
        let b = membership(&f4, &x.extend_by_zero(4)?, &t)?;
        members += usize::from(a.member);
        if a.member != b.member {
            disagreements += 1;
        }
    }
    Ok((
        disagreements == 0 && members == EXTENSION_SAMPLES,
        format!("{disagreements} disagreements over {} points ({members} members)", 2 * EXTENSION_SAMPLES),
    ))
}

const HULL_GRID: usize = 256;
const HULL_REFINE: usize = 60;

fn union_example(_: u64) -> Result<(bool, String)> {
    let t = tol();
    let a = Pencil::new(union_simplex_pencil::<f64>());
    let x = union_simplex_point::<f64>();
    let cert = classify(&a, &x, &t)?;
    let euclidean = cert.beta_nullity_hermitian == Some(0) && cert.verdict.is_euclidean();

    let y = [0.0, -2.0 / 3.0];
    let gens: Vec<HermitianTuple<f64>> = UNION_SIMPLICES.iter().map(|s| hull_generator(s)).collect();
    let big = level1_hull_membership(&gens, &y, HULL_GRID, HULL_REFINE, &t)?;
    let big_simplex = FreeSimplex::new(UNION_SIMPLEX_VERTICES.iter().map(|v| v.to_vec()).collect())?;
    let in_big_simplex = simplex_membership(&big_simplex, &HermitianTuple::from_scalars(&y), &t)?.verdict.member;

    let mut separated = true;
    let mut parts = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        let r = level1_hull_membership(std::slice::from_ref(g), &y, HULL_GRID, HULL_REFINE, &t)?;
        separated &= r.separating.is_some();
        parts.push(match &r.separating {
            Some(c) => format!("K'_{} separated by ({:.4}, {:.4}) margin {:.4}", j + 1, c[0], c[1], r.margin),
            None => format!("K'_{} contains the point (margin {:.4})", j + 1, r.margin),
        });
    }
    let mut interval_parts = Vec::new();
    for (j, seg) in UNION_INTERVALS.iter().enumerate() {
        let r = level1_hull_membership(&[hull_generator(seg)], &y, HULL_GRID, HULL_REFINE, &t)?;
        interval_parts.push(format!("K_{}: {}", j + 1, if r.member { "member" } else { "separated" }));
    }
    let mut range_parts = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        range_parts.push(match range_point_outside(&x, g, &t)? {
            Some(p) => format!("W1(X) has ({:.4}, {:.4}) outside K'_{}", p[0], p[1], j + 1),
            None => format!("no point of W1(X) found outside K'_{}", j + 1),
        });
    }
    let ok = euclidean && big.member && in_big_simplex && separated;
    Ok((
        ok,
        format!(
            "point verdict {} with Hermitian nullity {:?}; (0,-2/3) in big hull {} (margin {:.4}); {}; {}; {}",
            cert.verdict.name(),
            cert.beta_nullity_hermitian,
            big.member,
            big.margin,
            parts.join(", "),
            interval_parts.join(", "),
            range_parts.join(", ")
        ),
    ))
}

/// A point `(⟨X_i v, v⟩)_i` of the joint numerical range of `x` that the
/// hull of `generator` excludes, searched over a direction grid.
fn range_point_outside(
    x: &HermitianTuple<f64>,
    generator: &HermitianTuple<f64>,
    t: &ToleranceProfile<f64>,
) -> Result<Option<Vec<f64>>> {
    for k in 0..HULL_GRID {
        let theta = std::f64::consts::TAU * k as f64 / HULL_GRID as f64;
        let c = [theta.cos(), theta.sin()];
        let eig = hermitian_eigen(&x.combine(&c), t.hermitian_tol)?;
        let v = eig.vectors.column(eig.values.len() - 1);
        let p: Vec<f64> = x.iter().map(|xi| inner(&v, &xi.mul_vec(&v)).re).collect();
        if !level1_hull_membership(std::slice::from_ref(generator), &p, HULL_GRID, HULL_REFINE, t)?.member {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

const BALL_SAMPLES: usize = 200;
const BALL_ATTEMPTS: usize = 1_000;
const BALL_ATTEMPT_SCALE: f64 = 1e-2;

/// Mix of interior points, points scaled onto the matrix-ball boundary, and
/// points with `Σ X_j² = I` (unit vectors at level 1, rotated Pauli frames at level 2).
fn ball_sample(rng: &mut impl Rng, g: usize) -> Result<HermitianTuple<f64>> {
    match rng.random_range(0..3) {
        0 | 1 => {
            let n = rng.random_range(1..=3);
            let x = sampling::hermitian_tuple::<f64>(rng, n, g);
            let top = *hermitian_eigenvalues(&x.sum_of_squares().hermitian_part(), 1e-12)?.last().expect("nonempty");
            let s = if rng.random_bool(0.5) { 1.0 } else { rng.random_range(0.1..1.0) };
            Ok(x.scale(s / top.sqrt()))
        }
        _ if rng.random_bool(0.5) => Ok(HermitianTuple::from_scalars(&sampling::unit_vector::<f64>(rng, g))),
        _ => {
            let frame = construct_pauli::<f64>().leading(g)?.scale(1.0 / (g as f64).sqrt());
            orthogonal_transform(&sampling::orthogonal(rng, g), &frame)
        }
    }
}

fn matrix_ball_criterion(seed: u64) -> Result<(bool, String)> {
    let t = tol();
    let mut rng = sampling::substream(seed, 10);
    let mut extreme = 0;
    let mut bad = 0;
    for k in 0..BALL_SAMPLES {
        let g = rng.random_range(2..=3);
        let x = ball_sample(&mut rng, g)?;
        let r = matrix_ball_arveson(&x, &t)?;
        if r.extreme {
            extreme += 1;
            let attempt = random_ball_dilation(&x, BALL_ATTEMPTS, BALL_ATTEMPT_SCALE, seed.wrapping_add(k as u64), &t)?;
            bad += usize::from(attempt.is_some());
        } else {
            let verified = r.dilation.as_ref().is_some_and(|d| {
                let n = x.size();
                let corner_ok = d.dilation.top_left(n).map(|c| c.max_abs_diff(&x) == 0.0).unwrap_or(false);
                let off = d.dilation.iter().map(|m| m.block(0, n, n, 1).max_abs()).fold(0.0, f64::max);
                corner_ok && off > 0.0 && matrix_ball_membership(&d.dilation, &t).map(|v| v.member).unwrap_or(false)
            });
            bad += usize::from(!verified);
        }
    }
    let mut fires = true;
    for g in 2..=3 {
        let f = construct_spin::<f64>(g)?.tuple.scale(1.0 / (g as f64).sqrt());
        let r = matrix_ball_arveson(&f, &t)?;
        fires &= r.extreme && r.s_is_identity;
    }
    Ok((
        bad == 0 && fires,
        format!(
            "{extreme} extreme and {} non-extreme of {BALL_SAMPLES}, {bad} failures, identity branch on spin frames {fires}",
            BALL_SAMPLES - extreme
        ),
    ))
}

const DILATION_STEP_CAP: usize = 16;
const CORNER_TOL: f64 = 1e-9;

fn projection_extension(_: u64) -> Result<(bool, String)> {
    let t = tol();
    let x6 = freeex6::<f64>();
    let f4 = spin(4)?.with_boundedness_check(64, 0, &t)?;
    let start = x6.extend_by_zero(4)?;
    let out = arveson_dilate(&f4, &start, DILATION_STEP_CAP, &t)?;
    let corner = out.dilation.top_left(x6.size())?.leading(3)?.max_abs_diff(&x6);
    let grew = out.steps.iter().all(|s| s.kernel_after > s.kernel_before);
    let lam = lambda_eval(&f4, &out.dilation)?;
    let top = *hermitian_eigenvalues(&lam, t.hermitian_tol)?.last().expect("nonempty");
    let ok = out.succeeded() && corner <= CORNER_TOL && grew && top <= 1.0 + t.psd_tol;
    Ok((
        ok,
        format!(
            "status {:?} after {} steps, final size {}, corner error {corner:.2e}, kernel grew every step {grew}",
            out.status,
            out.steps.len(),
            out.dilation.size()
        ),
    ))
}
