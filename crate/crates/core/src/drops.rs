//! Coordinate projections of free spectrahedra, free simplices, and level-1
//! hulls of unions of matrix convex sets.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::ballsets::{sphere_ascent, wmax_ball_membership};
use crate::error::{Error, Result};
use crate::extremality::{classify, ExtremeCertificate, Verdict};
use crate::linalg::{
    hermitian_eigen, hermitian_eigenvalues, inner, solve, ComplexMatrix, HermitianTuple, ToleranceProfile,
};
use crate::pencil::{level1_bounded_heuristic, membership, pencil_eval, MembershipVerdict, Pencil};
use crate::sampling;
use crate::scalar::Real;
use crate::spin::{construct_pauli, construct_spin, DEFAULT_SPIN_CAP};

/// The projection of `D_A` onto its first `keep` coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct DropDescriptor<T: Real> {
    pencil: Pencil<T>,
    keep: usize,
}

/// A known description of a projection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub enum DropOracle<T: Real> {
    /// Nothing is dropped.
    Whole,
    /// `W^max` of the unit disk.
    DiskMax,
    /// The spin spectrahedron `D_{F^[g]}`.
    Spin(usize),
    /// `lo·I ⪯ X ⪯ hi·I` in one variable.
    Interval { lo: T, hi: T },
}

const MATCH_TOL: f64 = 1e-12;
const MAX_VERTEX_SUBSETS: usize = 100_000;

fn same_tuple<T: Real>(a: &HermitianTuple<T>, b: &HermitianTuple<T>) -> bool {
    a.size() == b.size() && a.length() == b.length() && a.max_abs_diff(b) <= T::lit(MATCH_TOL)
}

fn spin_degree<T: Real>(a: &HermitianTuple<T>) -> Option<usize> {
    let h = a.length();
    if !(2..=DEFAULT_SPIN_CAP).contains(&h) || a.size() != 1 << (h - 1) {
        return None;
    }
    construct_spin::<T>(h)
        .ok()
        .filter(|f| same_tuple(&f.tuple, a))
        .map(|_| h)
}

fn is_diagonal<T: Real>(a: &HermitianTuple<T>) -> bool {
    a.iter().all(|m| {
        (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m[(i, j)].norm() <= T::lit(MATCH_TOL)))
    })
}

fn real_solve<T: Real>(rows: &[Vec<T>], rhs: &[T], pivot_tol: T) -> Result<Vec<T>> {
    let n = rhs.len();
    let m = ComplexMatrix::from_fn(n, n, |i, j| Complex::new(rows[i][j], T::zero()));
    let b: Vec<Complex<T>> = rhs.iter().map(|v| Complex::new(*v, T::zero())).collect();
    Ok(solve(&m, &b, pivot_tol)?.into_iter().map(|z| z.re).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Range of the first coordinate over the polytope `D_A(1)` of a diagonal
/// pencil, by vertex enumeration.
fn diagonal_first_coordinate_range<T: Real>(a: &Pencil<T>, tol: &ToleranceProfile<T>) -> Result<(T, T)> {
    let h = a.length();
    let d = a.dim();
    if !level1_bounded_heuristic(a, 64.max(2 * h), 0, tol)?.bounded {
        return Err(Error::Unsupported("diagonal pencil with unbounded level-1 set".into()));
    }
    if binomial(d, h) > MAX_VERTEX_SUBSETS {
        return Err(Error::Unsupported("too many facets for vertex enumeration".into()));
    }
    let rows: Vec<Vec<T>> = (0..d).map(|k| a.coefficients().iter().map(|m| m[(k, k)].re).collect()).collect();
    let slack = T::lit(1e-9);
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for idx in subsets(d, h) {
        let sys: Vec<Vec<T>> = idx.iter().map(|&k| rows[k].clone()).collect();
        let Ok(v) = real_solve(&sys, &vec![T::one(); h], T::lit(1e-12)) else {
            continue;
        };
        let feasible = rows
            .iter()
            .all(|r| r.iter().zip(&v).map(|(a, x)| *a * *x).sum::<T>() <= T::one() + slack);
        if feasible {
            lo = lo.min(v[0]);
            hi = hi.max(v[0]);
        }
    }
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::Unsupported("no vertices found".into()));
    }
    Ok((lo, hi))
}

impl<T: Real> DropDescriptor<T> {
    pub fn new(pencil: Pencil<T>, keep: usize) -> Result<Self> {
        let h = pencil.length();
        if keep == 0 || keep > h {
            return Err(Error::param(format!("kept coordinates must be in 1..={h}, got {keep}")));
        }
        Ok(Self { pencil, keep })
    }

    pub fn pencil(&self) -> &Pencil<T> {
        &self.pencil
    }

    pub fn keep(&self) -> usize {
        self.keep
    }

    /// The registered description of this projection, if any.
    pub fn oracle(&self, tol: &ToleranceProfile<T>) -> Result<DropOracle<T>> {
        let a = self.pencil.coefficients();
        let h = a.length();
        let g = self.keep;
        let pauli = construct_pauli::<T>();
        let unit = DropOracle::Interval {
            lo: -T::one(),
            hi: T::one(),
        };
        if same_tuple(a, &pauli) || same_tuple(a, &pauli.conj()) {
            return Ok(match g {
                1 => unit,
                2 => DropOracle::DiskMax,
                _ => DropOracle::Whole,
            });
        }
        if let Some(h) = spin_degree(a) {
            return Ok(match g {
                1 => unit,
                g if g == h => DropOracle::Whole,
                g => DropOracle::Spin(g),
            });
        }
        if g == h {
            return Ok(DropOracle::Whole);
        }
        if g == 1 && is_diagonal(a) {
            let (lo, hi) = diagonal_first_coordinate_range(&self.pencil, tol)?;
            return Ok(DropOracle::Interval { lo, hi });
        }
        Err(Error::Unsupported(format!(
            "no registered identity for keeping {g} of {h} coordinates; use witness_search"
        )))
    }
}

impl<T: Real> DropOracle<T> {
    /// The pencil describing the projection, when it is a free spectrahedron.
    pub fn pencil(&self, whole: &Pencil<T>) -> Result<Option<Pencil<T>>> {
        Ok(match self {
            DropOracle::Whole => Some(whole.clone()),
            DropOracle::DiskMax => None,
            DropOracle::Spin(g) => Some(construct_spin::<T>(*g)?.pencil()),
            DropOracle::Interval { lo, hi } => Some(interval_pencil(*lo, *hi)),
        })
    }
}

/// `diag(1/hi, 1/lo)`, whose free spectrahedron is `lo·I ⪯ X ⪯ hi·I`.
pub fn interval_pencil<T: Real>(lo: T, hi: T) -> Pencil<T> {
    Pencil::new(HermitianTuple::new(vec![ComplexMatrix::diagonal(&[T::one() / hi, T::one() / lo])]).expect("diagonal"))
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SearchOptions {
    pub grid: usize,
    pub refine_steps: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            grid: 64,
            refine_steps: 40,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ProjectedVerdict<T: Real> {
    pub oracle: DropOracle<T>,
    /// For [`DropOracle::DiskMax`], `min_eigenvalue` holds the sphere-search
    /// margin and `kernel_dim` is zero.
    pub verdict: MembershipVerdict<T>,
    pub heuristic: bool,
}

/// Exact membership in a projection through its registered identity.
pub fn project_membership_special<T: Real>(
    drop: &DropDescriptor<T>,
    x: &HermitianTuple<T>,
    opts: &SearchOptions,
    tol: &ToleranceProfile<T>,
) -> Result<ProjectedVerdict<T>> {
    if x.length() != drop.keep {
        return Err(Error::dim(format!("point has {} coordinates, drop keeps {}", x.length(), drop.keep)));
    }
    let oracle = drop.oracle(tol)?;
    if oracle == DropOracle::DiskMax {
        let b = wmax_ball_membership(x, opts.grid.max(4), opts.refine_steps, opts.seed, tol)?;
        return Ok(ProjectedVerdict {
            oracle,
            verdict: MembershipVerdict {
                member: b.member,
                min_eigenvalue: b.margin,
                boundary: b.margin.abs() <= tol.psd_tol,
                kernel_dim: 0,
            },
            heuristic: b.heuristic,
        });
    }
    let p = oracle.pencil(&drop.pencil)?.expect("pencil-backed oracle");
    Ok(ProjectedVerdict {
        verdict: membership(&p, x, tol)?,
        oracle,
        heuristic: false,
    })
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct WitnessOptions {
    pub restarts: usize,
    pub iters: usize,
    pub seed: u64,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        Self {
            restarts: 8,
            iters: 200,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct WitnessOutcome<T: Real> {
    /// The dropped coordinates `Y` with `(X, Y) ∈ D_A`, verified.
    pub witness: Option<HermitianTuple<T>>,
    pub best_min_eigenvalue: T,
    pub restarts_used: usize,
}

const WITNESS_BACKTRACK: usize = 40;

/// Searches for `Y` with `(X, Y) ∈ D_A` by ascent on `λ_min(L_A(X, Y))` in
/// `Y`. The first restart starts at `Y = 0`. Failure is inconclusive.
pub fn witness_search<T: Real>(
    drop: &DropDescriptor<T>,
    x: &HermitianTuple<T>,
    opts: &WitnessOptions,
    tol: &ToleranceProfile<T>,
) -> Result<WitnessOutcome<T>> {
    let a = &drop.pencil;
    let g = drop.keep;
    let h = a.length();
    if x.length() != g {
        return Err(Error::dim(format!("point has {} coordinates, drop keeps {g}", x.length())));
    }
    let n = x.size();
    let d = a.dim();
    let m = h - g;

    let evaluate = |y: &HermitianTuple<T>| -> Result<(T, Vec<Complex<T>>)> {
        let z = if m == 0 { x.clone() } else { x.concat(y)? };
        let eig = hermitian_eigen(&pencil_eval(a, &z)?, tol.hermitian_tol)?;
        Ok((eig.min(), eig.vectors.column(0)))
    };
    let ascent_direction = |v: &[Complex<T>]| -> Vec<ComplexMatrix<T>> {
        a.coefficients().matrices()[g..]
            .iter()
            .map(|aj| {
                let mut dmat = ComplexMatrix::zeros(n, n);
                for p in 0..n {
                    for q in 0..n {
                        let mut s = Complex::new(T::zero(), T::zero());
                        for r in 0..d {
                            for c in 0..d {
                                let coef = aj[(r, c)];
                                if coef.re != T::zero() || coef.im != T::zero() {
                                    s += v[r * n + p].conj() * coef * v[c * n + q];
                                }
                            }
                        }
                        dmat[(p, q)] = s;
                    }
                }
                dmat.transpose().hermitian_part().scale(-T::one())
            })
            .collect()
    };

    let mut rng = sampling::rng(opts.seed);
    let mut best = T::neg_infinity();
    for restart in 0..opts.restarts.max(1) {
        let mut y = if restart == 0 || m == 0 {
            HermitianTuple::zeros(n, m)
        } else {
            let scale = T::lit(0.5) * T::lit(restart as f64) / T::lit(opts.restarts as f64);
            sampling::hermitian_tuple::<T>(&mut rng, n, m).scale(scale)
        };
        let (mut val, mut v) = evaluate(&y)?;
        let mut t = T::one();
        for _ in 0..opts.iters {
            if val >= -tol.psd_tol || m == 0 {
                break;
            }
            let dir = HermitianTuple::new(ascent_direction(&v))?;
            let mut moved = false;
            for _ in 0..WITNESS_BACKTRACK {
                let trial = y.add_scaled(t, &dir)?;
                let (tv, tvec) = evaluate(&trial)?;
                if tv > val {
                    y = trial;
                    val = tv;
                    v = tvec;
                    moved = true;
                    t = (t * T::lit(2.0)).min(T::lit(4.0));
                    break;
                }
                t /= T::lit(2.0);
            }
            if !moved {
                break;
            }
        }
        best = best.max(val);
        if val >= -tol.psd_tol {
            let z = if m == 0 { x.clone() } else { x.concat(&y)? };
            if membership(a, &z, tol)?.member {
                return Ok(WitnessOutcome {
                    witness: Some(y),
                    best_min_eigenvalue: val,
                    restarts_used: restart + 1,
                });
            }
        }
    }
    Ok(WitnessOutcome {
        witness: None,
        best_min_eigenvalue: best,
        restarts_used: opts.restarts.max(1),
    })
}

/// The free simplex over the simplex with the given vertices: the diagonal
/// pencil whose `i`-th entry is the facet functional opposite vertex `i`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct FreeSimplex<T: Real> {
    vertices: Vec<Vec<T>>,
    /// `facets[i]` satisfies `⟨facets[i], v_k⟩ = 1` for every `k ≠ i`.
    facets: Vec<Vec<T>>,
    /// Barycentric coordinates of the origin.
    origin_weights: Vec<T>,
    pencil: Pencil<T>,
}

impl<T: Real> FreeSimplex<T> {
    pub fn new(vertices: Vec<Vec<T>>) -> Result<Self> {
        let g = vertices.first().map_or(0, Vec::len);
        if g == 0 || vertices.len() != g + 1 || vertices.iter().any(|v| v.len() != g) {
            return Err(Error::Construction {
                message: "a simplex in g-space needs g + 1 vertices of length g".into(),
                value: None,
            });
        }
        let pivot = T::lit(1e-12);
        let degenerate = |what: &str| Error::Construction {
            message: format!("degenerate vertices ({what})"),
            value: None,
        };
        let mut bary: Vec<Vec<T>> = (0..g).map(|j| vertices.iter().map(|v| v[j]).collect()).collect();
        bary.push(vec![T::one(); g + 1]);
        let mut rhs = vec![T::zero(); g + 1];
        rhs[g] = T::one();
        let origin_weights = real_solve(&bary, &rhs, pivot).map_err(|_| degenerate("affinely dependent"))?;
        if let Some(w) = origin_weights.iter().copied().reduce(T::min) {
            if w <= T::zero() {
                return Err(Error::Construction {
                    message: "origin is not strictly inside the simplex".into(),
                    value: Some(w.as_f64()),
                });
            }
        }
        let facets = (0..=g)
            .map(|i| {
                let rows: Vec<Vec<T>> = (0..=g).filter(|&k| k != i).map(|k| vertices[k].clone()).collect();
                real_solve(&rows, &vec![T::one(); g], pivot).map_err(|_| degenerate("facet solve"))
            })
            .collect::<Result<Vec<_>>>()?;
        let mats = (0..g)
            .map(|j| ComplexMatrix::diagonal(&facets.iter().map(|f| f[j]).collect::<Vec<_>>()))
            .collect();
        Ok(Self {
            pencil: Pencil::new(HermitianTuple::new(mats)?),
            vertices,
            facets,
            origin_weights,
        })
    }

    pub fn vertices(&self) -> &[Vec<T>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<T>] {
        &self.facets
    }

    pub fn origin_weights(&self) -> &[T] {
        &self.origin_weights
    }

    pub fn pencil(&self) -> &Pencil<T> {
        &self.pencil
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct SimplexVerdict<T: Real> {
    /// Spectrum-based verdict for the simplex pencil.
    pub verdict: MembershipVerdict<T>,
    /// `Q_i` with `X_j = Σ_i v_i(j)·Q_i` and `Σ_i Q_i = I`.
    pub barycentric: Vec<ComplexMatrix<T>>,
}

/// Solves for the barycentric operators; the pencil block opposite vertex
/// `i` equals `(1 − ⟨a_i, v_i⟩)·Q_i`.
pub fn simplex_membership<T: Real>(
    s: &FreeSimplex<T>,
    x: &HermitianTuple<T>,
    tol: &ToleranceProfile<T>,
) -> Result<SimplexVerdict<T>> {
    let g = s.dim();
    if x.length() != g {
        return Err(Error::dim(format!("point has {} coordinates, simplex lives in {g}", x.length())));
    }
    let n = x.size();
    let mut vhat = ComplexMatrix::zeros(g + 1, g + 1);
    for (i, v) in s.vertices.iter().enumerate() {
        for j in 0..g {
            vhat[(j, i)] = Complex::new(v[j], T::zero());
        }
        vhat[(g, i)] = Complex::new(T::one(), T::zero());
    }
    let lu = crate::linalg::Lu::new(&vhat, T::lit(1e-12))?;
    let mut q = vec![ComplexMatrix::zeros(n, n); g + 1];
    for p in 0..n {
        for r in 0..n {
            let mut rhs: Vec<Complex<T>> = x.iter().map(|xj| xj[(p, r)]).collect();
            rhs.push(if p == r { Complex::new(T::one(), T::zero()) } else { Complex::new(T::zero(), T::zero()) });
            for (qi, val) in q.iter_mut().zip(lu.solve(&rhs)?) {
                qi[(p, r)] = val;
            }
        }
    }
    let mut values = Vec::with_capacity((g + 1) * n);
    for (i, qi) in q.iter_mut().enumerate() {
        *qi = qi.hermitian_part();
        let w = T::one() - s.facets[i].iter().zip(&s.vertices[i]).map(|(a, v)| *a * *v).sum::<T>();
        values.extend(hermitian_eigenvalues(qi, tol.hermitian_tol)?.into_iter().map(|e| e * w));
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(SimplexVerdict {
        verdict: MembershipVerdict::from_spectrum(&values, tol.psd_tol),
        barycentric: q,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct HullVerdict<T: Real> {
    pub member: bool,
    /// Smallest sampled `h(c) − ⟨c, y⟩` over unit `c`, with `h` the support
    /// function of the hull.
    pub margin: T,
    pub direction: Vec<T>,
    /// The direction when it separates.
    pub separating: Option<Vec<T>>,
}

fn sphere_grid<T: Real>(g: usize, grid: usize) -> Vec<Vec<T>> {
    match g {
        1 => vec![vec![T::one()], vec![-T::one()]],
        2 => (0..grid.max(4))
            .map(|k| {
                let t = T::lit(std::f64::consts::TAU * k as f64 / grid.max(4) as f64);
                vec![t.cos(), t.sin()]
            })
            .collect(),
        _ => {
            let n = grid.max(8);
            let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
            (0..n)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
                    let r = (1.0 - z * z).sqrt();
                    let t = golden * k as f64;
                    vec![T::lit(r * t.cos()), T::lit(r * t.sin()), T::lit(z)]
                })
                .collect()
        }
    }
}

/// Decides `y ∈ conv(∪_k W_1(X^(k)))` by minimizing `h(c) − ⟨c, y⟩` over a
/// sphere grid with local refinement.
pub fn level1_hull_membership<T: Real>(
    generators: &[HermitianTuple<T>],
    y: &[T],
    grid: usize,
    refine_steps: usize,
    tol: &ToleranceProfile<T>,
) -> Result<HullVerdict<T>> {
    let g = y.len();
    if g == 0 || g > 3 {
        return Err(Error::Unsupported(format!("hull search supports 1 to 3 coordinates, got {g}")));
    }
    if generators.is_empty() {
        return Err(Error::param("need at least one generator"));
    }
    if let Some(bad) = generators.iter().find(|x| x.length() != g) {
        return Err(Error::dim(format!("generator has {} coordinates, point has {g}", bad.length())));
    }
    let f = |c: &[T]| -> Result<(T, Vec<T>)> {
        let mut best: Option<(T, Vec<T>)> = None;
        for x in generators {
            let eig = hermitian_eigen(&x.combine(c), tol.hermitian_tol)?;
            let top = eig.max();
            if best.as_ref().is_none_or(|b| top > b.0) {
                let v = eig.vectors.column(eig.values.len() - 1);
                let grad = x.iter().map(|xi| inner(&v, &xi.mul_vec(&v)).re).collect();
                best = Some((top, grad));
            }
        }
        let (h, gh) = best.expect("nonempty generators");
        let dot = c.iter().zip(y).map(|(a, b)| *a * *b).sum::<T>();
        Ok((dot - h, y.iter().zip(&gh).map(|(a, b)| *a - *b).collect()))
    };
    let (neg, c) = sphere_ascent(f, sphere_grid(g, grid), refine_steps)?;
    let margin = -neg;
    let member = margin >= -tol.psd_tol;
    Ok(HullVerdict {
        member,
        margin,
        separating: (!member).then(|| c.clone()),
        direction: c,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct HarnessSample<T: Real> {
    pub point: Vec<T>,
    pub certificate: ExtremeCertificate<T>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct HarnessReport<T: Real> {
    pub oracle: DropOracle<T>,
    pub samples: Vec<HarnessSample<T>>,
    pub certified: usize,
}

impl<T: Real> HarnessReport<T> {
    pub fn all_certified(&self) -> bool {
        self.certified == self.samples.len()
    }
}

/// Samples exposed points of the projected level-1 set (each the unique
/// maximizer of a random linear functional) and certifies each as a free
/// extreme point of the projection's pencil.
pub fn drop_theorem_harness<T: Real>(
    a: &Pencil<T>,
    keep: usize,
    samples: usize,
    seed: u64,
    tol: &ToleranceProfile<T>,
) -> Result<HarnessReport<T>> {
    if a.coefficients().iter().any(|m| m.max_imag() > tol.hermitian_tol) {
        return Err(Error::precondition("coefficients must be real"));
    }
    let drop = DropDescriptor::new(a.clone(), keep)?;
    let oracle = drop.oracle(tol)?;
    let support = |c: &[T]| -> Result<Vec<T>> {
        match &oracle {
            DropOracle::Spin(_) => {
                let n = c.iter().map(|v| *v * *v).sum::<T>().sqrt();
                Ok(c.iter().map(|v| *v / n).collect())
            }
            DropOracle::Interval { lo, hi } => Ok(vec![if c[0] > T::zero() { *hi } else { *lo }]),
            _ => Err(Error::Unsupported("no support-point construction for this projection".into())),
        }
    };
    let p = oracle
        .pencil(a)?
        .ok_or_else(|| Error::Unsupported("projection has no pencil".into()))?;
    let p = Pencil::new(p.coefficients().clone()).with_boundedness_check(64.max(2 * keep), seed, tol)?;
    let mut rng = sampling::rng(seed);
    let mut out = Vec::with_capacity(samples);
    for k in 0..samples {
        let mut c: Vec<T> = sampling::unit_vector(&mut rng, keep);
        if keep == 1 {
            c[0] = if k % 2 == 0 { T::one() } else { -T::one() };
        }
        let point = support(&c)?;
        let certificate = classify(&p, &HermitianTuple::from_scalars(&point), tol)?;
        out.push(HarnessSample { point, certificate });
    }
    Ok(HarnessReport {
        certified: out.iter().filter(|s| s.certificate.verdict == Verdict::Free).count(),
        oracle,
        samples: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{freeex4, union_simplex_point, UNION_SIMPLEX_VERTICES};

    fn tol() -> ToleranceProfile<f64> {
        ToleranceProfile::default()
    }

    fn spin(h: usize) -> Pencil<f64> {
        construct_spin::<f64>(h).unwrap().pencil()
    }

    fn union_simplex() -> FreeSimplex<f64> {
        FreeSimplex::new(UNION_SIMPLEX_VERTICES.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    #[test]
    fn special_cases() {
        let opts = SearchOptions::default();
        let p = Pencil::new(construct_pauli::<f64>());
        let d = DropDescriptor::new(p, 2).unwrap();
        let x = construct_pauli::<f64>().leading(2).unwrap();
        let v = project_membership_special(&d, &x, &opts, &tol()).unwrap();
        assert!(v.verdict.member && v.oracle == DropOracle::DiskMax);

        let d = DropDescriptor::new(spin(4), 3).unwrap();
        let v = project_membership_special(&d, &freeex4(), &opts, &tol()).unwrap();
        assert!(v.verdict.member && v.verdict.boundary);

        let d = DropDescriptor::new(spin(3), 1).unwrap();
        let v = project_membership_special(&d, &HermitianTuple::from_scalars(&[1.5]), &opts, &tol()).unwrap();
        assert!(!v.verdict.member);
    }

    #[test]
    fn unregistered_drop_is_unsupported() {
        let a = Pencil::new(crate::fixtures::gell_mann::<f64>());
        let d = DropDescriptor::new(a, 3).unwrap();
        let r = project_membership_special(&d, &HermitianTuple::zeros(1, 3), &SearchOptions::default(), &tol());
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn witness_search_cases() {
        let d = DropDescriptor::new(spin(4), 3).unwrap();
        let r = witness_search(&d, &freeex4(), &WitnessOptions::default(), &tol()).unwrap();
        assert!(r.witness.unwrap().max_abs() == 0.0);
        let x = construct_spin::<f64>(3).unwrap().tuple.scale(1.0 / 3f64.sqrt());
        let r = witness_search(&d, &x, &WitnessOptions::default(), &tol()).unwrap();
        assert!(r.witness.is_none() && r.best_min_eigenvalue < 0.0);
    }

    #[test]
    fn witness_search_moves_off_zero() {
        let a = Pencil::new(
            HermitianTuple::from_real(&[&[&[1.0, 0.0], &[0.0, 0.0]], &[&[0.0, 0.0], &[0.0, 1.0]], &[&[1.0, 0.0], &[0.0, 1.0]]])
                .unwrap(),
        );
        let d = DropDescriptor::new(a, 2).unwrap();
        let x = HermitianTuple::from_scalars(&[2.0, 2.0]);
        let r = witness_search(&d, &x, &WitnessOptions::default(), &tol()).unwrap();
        assert!(r.witness.unwrap().get(0)[(0, 0)].re <= -1.0 + 1e-9);
    }

    #[test]
    fn simplex_pencil_is_the_diagonal_form() {
        let s = union_simplex();
        assert_eq!(s.facets()[0], vec![1.0, 0.0]);
        assert!((s.facets()[1][0] + 1.0).abs() < 1e-15 && (s.facets()[1][1] + 1.0).abs() < 1e-15);
        assert_eq!(s.facets()[2], vec![0.0, 1.0]);
    }

    #[test]
    fn simplex_memberships() {
        let s = union_simplex();
        let v = simplex_membership(&s, &union_simplex_point(), &tol()).unwrap();
        assert!(v.verdict.member && v.verdict.boundary);
        let direct = membership(s.pencil(), &union_simplex_point(), &tol()).unwrap();
        assert!((direct.min_eigenvalue - v.verdict.min_eigenvalue).abs() < 1e-12);
        assert!(simplex_membership(&s, &HermitianTuple::from_scalars(&[0.0, -2.0 / 3.0]), &tol()).unwrap().verdict.member);
        assert!(!simplex_membership(&s, &HermitianTuple::from_scalars(&[2.0, 2.0]), &tol()).unwrap().verdict.member);
    }

    #[test]
    fn degenerate_simplex_rejected() {
        let r = FreeSimplex::new(vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]);
        assert!(matches!(r, Err(Error::Construction { .. })));
        let r = FreeSimplex::new(vec![vec![1.0, 1.0], vec![2.0, 1.0], vec![1.0, 2.0]]);
        assert!(matches!(r, Err(Error::Construction { .. })));
    }

    #[test]
    fn hull_of_triangle() {
        let gen = crate::fixtures::hull_generator::<f64>(&UNION_SIMPLEX_VERTICES);
        let r = level1_hull_membership(std::slice::from_ref(&gen), &[1.0, 1.0], 64, 30, &tol()).unwrap();
        assert!(r.member);
        let r = level1_hull_membership(&[gen], &[2.0, 2.0], 64, 30, &tol()).unwrap();
        let c = r.separating.unwrap();
        assert!((c[0] - 0.5f64.sqrt()).abs() < 1e-6 && (c[1] - 0.5f64.sqrt()).abs() < 1e-6);
        assert!((r.margin + 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn harness_cases() {
        let r = drop_theorem_harness(&spin(3), 2, 5, 0, &tol()).unwrap();
        assert!(r.all_certified());
        let r = drop_theorem_harness(&spin(4), 3, 5, 0, &tol()).unwrap();
        assert!(r.all_certified());
        let s = union_simplex();
        let r = drop_theorem_harness(s.pencil(), 1, 2, 0, &tol()).unwrap();
        assert!(r.all_certified());
        assert_eq!(r.oracle, DropOracle::Interval { lo: -2.0, hi: 1.0 });
    }
}
