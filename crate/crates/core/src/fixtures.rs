//! Named tuples: spin and Pauli tuples, the level-4 and level-6 free extreme
//! points of `D_{F^[3]}`, their real form, and the simplex example.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianTuple};
use crate::scalar::Real;
use crate::spin::{construct_pauli, construct_spin};

/// A named tuple plus the symbolic description of its entries.
#[derive(Clone, Debug)]
pub struct Fixture<T: Real> {
    pub name: String,
    pub tuple: HermitianTuple<T>,
    pub comment: String,
}

pub const FIXTURE_NAMES: &[&str] = &[
    "pauli",
    "pauli-conj",
    "spin-g2",
    "spin-g3",
    "spin-g4",
    "spin-g5",
    "spin-g6",
    "spin-g7",
    "spin-g8",
    "freeex4",
    "freeex6",
    "simplex-remark",
    "simplex-remark-point",
    "realform4",
    "gell-mann",
];

pub fn fixture<T: Real>(name: &str) -> Result<Fixture<T>> {
    let (tuple, comment) = match name {
        "pauli" => (construct_pauli(), "P = (diag(1,-1), [[0,1],[1,0]], [[0,i],[-i,0]])".to_string()),
        "pauli-conj" => (construct_pauli().conj(), "conj(P) = (P1, P2, -P3)".to_string()),
        "freeex4" => (freeex4(), FREEEX4_COMMENT.to_string()),
        "freeex6" => (freeex6(), FREEEX6_COMMENT.to_string()),
        "simplex-remark" => (union_simplex_pencil(), "A = (diag(1,0,-1), diag(0,1,-1))".to_string()),
        "simplex-remark-point" => (
            union_simplex_point(),
            "X = ([[1,0],[0,0]], [[1/2, sqrt(5/6)], [sqrt(5/6), -2/3]]), sqrt(5/6) = 0.91287092917527690".to_string(),
        ),
        "realform4" => (realform4(), REALFORM4_COMMENT.to_string()),
        "gell-mann" => (gell_mann(), "the eight Gell-Mann matrices lambda_1..lambda_8".to_string()),
        _ => {
            let g = name
                .strip_prefix("spin-g")
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|g| (2..=8).contains(g))
                .ok_or_else(|| Error::param(format!("unknown fixture '{name}'")))?;
            (
                construct_spin(g)?.tuple,
                format!("F^[{g}]: F^[2] = (diag(1,-1), [[0,1],[1,0]]), F^[k+1] = (F_i (x) diag(1,-1), I (x) [[0,1],[1,0]])"),
            )
        }
    };
    Ok(Fixture {
        name: name.to_string(),
        tuple,
        comment,
    })
}

const FREEEX4_COMMENT: &str = "X_j = [[0, C_j], [conj(C_j), 0]] with C = (1/2)(diag(1+1/sqrt3, -1+sqrt3), [[0,1],[1,0]], \
diag(-i+2i/sqrt3, -i)); 1/sqrt3 = 0.57735026918962576, sqrt3 = 1.7320508075688772";

const FREEEX6_COMMENT: &str = "X_j = [[0, C_j], [conj(C_j), 0]] with a = sqrt2-1 = 0.41421356237309505, \
C = (1/4)([[a+1,0,-a],[0,a+1,-a],[-a,-a,a+1]], diag(-4 sqrt(2a), 4 sqrt(2a), 0), i[[0,3a-1,a],[3a-1,0,a],[a,a,3-a]]); \
sqrt(2a) = 0.91017972112445465";

const REALFORM4_COMMENT: &str = "U* X U for the level-4 point, U = (sqrt2/2)[[I,-iI],[I,iI]], a = 1+1/sqrt3 = 1.5773502691896258: \
(1/2)(diag(a, 3a-4, -a, -3a+4), [[0,1,0,0],[1,0,0,0],[0,0,0,-1],[0,0,-1,0]], \
[[0,0,3-2a,0],[0,0,0,1],[3-2a,0,0,0],[0,1,0,0]])";

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// `X_j = [[0, C_j], [conj(C_j), 0]]` for complex symmetric blocks `C_j`.
pub fn free_extreme_form<T: Real>(blocks: &[ComplexMatrix<T>]) -> Result<HermitianTuple<T>> {
    let mats = blocks
        .iter()
        .map(|cj| {
            let m = cj.rows();
            let mut x = ComplexMatrix::zeros(2 * m, 2 * m);
            x.set_block(0, m, cj);
            x.set_block(m, 0, &cj.conj());
            x
        })
        .collect();
    HermitianTuple::new(mats)
}

pub fn freeex4_blocks<T: Real>() -> Vec<ComplexMatrix<T>> {
    let s3 = 3f64.sqrt();
    let h = 0.5;
    let z = c::<T>(0.0, 0.0);
    vec![
        ComplexMatrix::from_vec(2, 2, vec![c(h * (1.0 + 1.0 / s3), 0.0), z, z, c(h * (s3 - 1.0), 0.0)]).expect("2x2"),
        ComplexMatrix::from_vec(2, 2, vec![z, c(h, 0.0), c(h, 0.0), z]).expect("2x2"),
        ComplexMatrix::from_vec(2, 2, vec![c(0.0, h * (2.0 / s3 - 1.0)), z, z, c(0.0, -h)]).expect("2x2"),
    ]
}

/// The level-4 free extreme point of `D_{F^[3]}`.
pub fn freeex4<T: Real>() -> HermitianTuple<T> {
    free_extreme_form(&freeex4_blocks()).expect("symmetric blocks")
}

pub fn freeex6_blocks<T: Real>() -> Vec<ComplexMatrix<T>> {
    let a = 2f64.sqrt() - 1.0;
    let r = (2.0 * a).sqrt();
    let q = 0.25;
    let z = c::<T>(0.0, 0.0);
    let re = |x: f64| c::<T>(q * x, 0.0);
    let im = |x: f64| c::<T>(0.0, q * x);
    vec![
        ComplexMatrix::from_vec(
            3,
            3,
            vec![re(a + 1.0), z, re(-a), z, re(a + 1.0), re(-a), re(-a), re(-a), re(a + 1.0)],
        )
        .expect("3x3"),
        ComplexMatrix::from_vec(3, 3, vec![c(-r, 0.0), z, z, z, c(r, 0.0), z, z, z, z]).expect("3x3"),
        ComplexMatrix::from_vec(
            3,
            3,
            vec![z, im(3.0 * a - 1.0), im(a), im(3.0 * a - 1.0), z, im(a), im(a), im(a), im(3.0 - a)],
        )
        .expect("3x3"),
    ]
}

/// The level-6 free extreme point of `D_{F^[3]}`.
pub fn freeex6<T: Real>() -> HermitianTuple<T> {
    free_extreme_form(&freeex6_blocks()).expect("symmetric blocks")
}

/// `U = (√2/2)·[[I₂, −i·I₂], [I₂, i·I₂]]`.
pub fn real_form_unitary<T: Real>() -> ComplexMatrix<T> {
    let s = 0.5 * 2f64.sqrt();
    let mut u = ComplexMatrix::zeros(4, 4);
    for k in 0..2 {
        u[(k, k)] = c(s, 0.0);
        u[(k, k + 2)] = c(0.0, -s);
        u[(k + 2, k)] = c(s, 0.0);
        u[(k + 2, k + 2)] = c(0.0, s);
    }
    u
}

/// The real tuple unitarily equivalent to the level-4 point.
pub fn realform4<T: Real>() -> HermitianTuple<T> {
    let a = 1.0 + 1.0 / 3f64.sqrt();
    let h = 0.5;
    let b = 3.0 - 2.0 * a;
    HermitianTuple::from_real(&[
        &[
            &[h * a, 0.0, 0.0, 0.0],
            &[0.0, h * (3.0 * a - 4.0), 0.0, 0.0],
            &[0.0, 0.0, -h * a, 0.0],
            &[0.0, 0.0, 0.0, h * (4.0 - 3.0 * a)],
        ],
        &[&[0.0, h, 0.0, 0.0], &[h, 0.0, 0.0, 0.0], &[0.0, 0.0, 0.0, -h], &[0.0, 0.0, -h, 0.0]],
        &[&[0.0, 0.0, h * b, 0.0], &[0.0, 0.0, 0.0, h], &[h * b, 0.0, 0.0, 0.0], &[0.0, h, 0.0, 0.0]],
    ])
    .expect("real symmetric")
}

/// `(diag(1,0,−1), diag(0,1,−1))`: the free simplex over the triangle with
/// vertices `(−2,1)`, `(1,1)`, `(1,−2)`.
pub fn union_simplex_pencil<T: Real>() -> HermitianTuple<T> {
    HermitianTuple::new(vec![
        ComplexMatrix::diagonal(&[T::one(), T::zero(), -T::one()]),
        ComplexMatrix::diagonal(&[T::zero(), T::one(), -T::one()]),
    ])
    .expect("diagonal")
}

pub fn union_simplex_point<T: Real>() -> HermitianTuple<T> {
    let r = (5.0f64 / 6.0).sqrt();
    HermitianTuple::from_real(&[&[&[1.0, 0.0], &[0.0, 0.0]], &[&[0.5, r], &[r, -2.0 / 3.0]]]).expect("real symmetric")
}

pub const UNION_SIMPLEX_VERTICES: [[f64; 2]; 3] = [[-2.0, 1.0], [1.0, 1.0], [1.0, -2.0]];

/// Vertex lists of the three small simplices of the union example.
pub const UNION_SIMPLICES: [[[f64; 2]; 3]; 3] = [
    [[-2.0, 1.0], [1.0, 1.0], [0.1, 0.1]],
    [[1.0, 1.0], [1.0, -2.0], [-0.1, 0.0]],
    [[-2.0, 1.0], [1.0, -2.0], [0.0, -0.1]],
];

/// Endpoints of the three free intervals of the union example.
pub const UNION_INTERVALS: [[[f64; 2]; 2]; 3] = [
    [[-2.0, 1.0], [1.0, 1.0]],
    [[1.0, 1.0], [1.0, -2.0]],
    [[-2.0, 1.0], [1.0, -2.0]],
];

/// Diagonal tuple whose joint numerical range is the convex hull of `points`.
pub fn hull_generator<T: Real>(points: &[[f64; 2]]) -> HermitianTuple<T> {
    let xs: Vec<T> = points.iter().map(|p| T::lit(p[0])).collect();
    let ys: Vec<T> = points.iter().map(|p| T::lit(p[1])).collect();
    HermitianTuple::new(vec![ComplexMatrix::diagonal(&xs), ComplexMatrix::diagonal(&ys)]).expect("diagonal")
}

/// The Gell-Mann matrices, a Hermitian basis of the traceless 3×3 matrices.
pub fn gell_mann<T: Real>() -> HermitianTuple<T> {
    let s = 1.0 / 3f64.sqrt();
    let r = |rows: &[&[f64]]| ComplexMatrix::<T>::from_real_rows(rows);
    let mut m = vec![
        r(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]),
        ComplexMatrix::from_complex_rows(&[
            &[(0.0, 0.0), (0.0, -1.0), (0.0, 0.0)],
            &[(0.0, 1.0), (0.0, 0.0), (0.0, 0.0)],
            &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        ]),
        r(&[&[1.0, 0.0, 0.0], &[0.0, -1.0, 0.0], &[0.0, 0.0, 0.0]]),
        r(&[&[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0]]),
        ComplexMatrix::from_complex_rows(&[
            &[(0.0, 0.0), (0.0, 0.0), (0.0, -1.0)],
            &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
            &[(0.0, 1.0), (0.0, 0.0), (0.0, 0.0)],
        ]),
        r(&[&[0.0, 0.0, 0.0], &[0.0, 0.0, 1.0], &[0.0, 1.0, 0.0]]),
        ComplexMatrix::from_complex_rows(&[
            &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
            &[(0.0, 0.0), (0.0, 0.0), (0.0, -1.0)],
            &[(0.0, 0.0), (0.0, 1.0), (0.0, 0.0)],
        ]),
    ];
    m.push(r(&[&[s, 0.0, 0.0], &[0.0, s, 0.0], &[0.0, 0.0, -2.0 * s]]));
    HermitianTuple::new(m).expect("Hermitian")
}
