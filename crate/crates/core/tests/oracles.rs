//! Library spectra against an independent Jacobi/Faddeev–LeVerrier oracle,
//! and frozen values derived from that oracle.

mod common;

use common::oracle::{characteristic_polynomial, eval_polynomial, jacobi_eigenvalues, lambda, pencil, Dense};
use freespec::duality::{choi_matrix, FullSpanBasis};
use freespec::fixtures::{fixture, freeex4, freeex6};
use freespec::linalg::hermitian_eigenvalues;
use freespec::pencil::{lambda_eval, pencil_kernel, Pencil};
use freespec::spin::{construct_pauli, construct_spin};
use freespec::{HermitianTuple, Tolerances};
use num_complex::Complex64 as C;

const SPECTRUM_TOL: f64 = 1e-12;
const KERNEL_BAND: f64 = 1e-9;

fn lib_spectrum(m: &freespec::Matrix) -> Vec<f64> {
    hermitian_eigenvalues(m, 1e-12).unwrap()
}

fn assert_spectrum(got: &[f64], want: &[f64], what: &str) {
    assert_eq!(got.len(), want.len(), "{what}");
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() <= SPECTRUM_TOL, "{what}: {got:?} vs {want:?}");
    }
}

fn assert_poly(m: &Dense, want: &[f64], what: &str) {
    let c = characteristic_polynomial(m);
    assert_eq!(c.len(), want.len(), "{what}");
    for (g, w) in c.iter().zip(want) {
        assert!((g - C::new(*w, 0.0)).norm() <= 1e-10, "{what}: {c:?}");
    }
}

fn oracle_kernel_dim(a: &HermitianTuple<f64>, x: &HermitianTuple<f64>) -> usize {
    jacobi_eigenvalues(&pencil(a, x)).iter().filter(|v| v.abs() <= KERNEL_BAND).count()
}

#[test]
fn jacobi_oracle_sanity() {
    let p = construct_pauli::<f64>();
    for m in p.iter() {
        assert_spectrum(&jacobi_eigenvalues(&Dense::from_lib(m)), &[-1.0, 1.0], "Pauli");
    }
    let c = characteristic_polynomial(&Dense::from_lib(p.get(0)));
    assert!(eval_polynomial(&c, 1.0).norm() < 1e-14 && eval_polynomial(&c, -1.0).norm() < 1e-14);
}

#[test]
fn pauli_self_tensor_spectrum() {
    let p = construct_pauli::<f64>();
    let want = [-3.0, 1.0, 1.0, 1.0];
    let oracle = lambda(&p, &p);
    assert_spectrum(&jacobi_eigenvalues(&oracle), &want, "oracle Σ P⊗P");
    assert_spectrum(&lib_spectrum(&lambda_eval(&Pencil::new(p.clone()), &p).unwrap()), &want, "library Σ P⊗P");
    // (λ + 3)(λ − 1)³
    assert_poly(&oracle, &[-3.0, 8.0, -6.0, 0.0, 1.0], "Σ P⊗P");
}

#[test]
fn pauli_conjugate_tensor_spectrum() {
    let p = construct_pauli::<f64>();
    let pc = p.conj();
    let want = [-1.0, -1.0, -1.0, 3.0];
    let oracle = lambda(&p, &pc);
    assert_spectrum(&jacobi_eigenvalues(&oracle), &want, "oracle Σ P⊗conj P");
    assert_spectrum(&lib_spectrum(&lambda_eval(&Pencil::new(p.clone()), &pc).unwrap()), &want, "library");
    // (λ − 3)(λ + 1)³
    assert_poly(&oracle, &[-3.0, -8.0, -6.0, 0.0, 1.0], "Σ P⊗conj P");
}

#[test]
fn spin2_self_tensor_spectrum() {
    let f = construct_spin::<f64>(2).unwrap().tuple;
    let want = [-2.0, 0.0, 0.0, 2.0];
    let oracle = lambda(&f, &f);
    assert_spectrum(&jacobi_eigenvalues(&oracle), &want, "oracle");
    assert_spectrum(&lib_spectrum(&lambda_eval(&Pencil::new(f.clone()), &f).unwrap()), &want, "library");
    assert_poly(&oracle, &[0.0, 0.0, -4.0, 0.0, 1.0], "λ²(λ² − 4)");
}

#[test]
fn free_extreme_kernel_dimensions() {
    let tol = Tolerances::default();
    let f = construct_spin::<f64>(3).unwrap().tuple;
    for (x, want) in [(freeex4::<f64>(), 6), (freeex6::<f64>(), 10)] {
        assert_eq!(oracle_kernel_dim(&f, &x), want);
        let lib = pencil_kernel(&Pencil::new(f.clone()), &x, &tol).unwrap();
        assert_eq!(lib.dim(), want);
        let min = jacobi_eigenvalues(&pencil(&f, &x))[0];
        assert!(min.abs() <= KERNEL_BAND, "boundary point, min eigenvalue {min}");
    }
}

#[test]
fn free_extreme_points_are_irreducible() {
    // Commutant = kernel of C ↦ ([X_i, C])_i; dimension via the Gram matrix.
    for x in [freeex4::<f64>(), freeex6::<f64>()] {
        let n = x.size();
        let id = Dense::identity(n);
        let mut gram = Dense::zeros(n * n);
        for xi in x.iter() {
            let d = Dense::from_lib(xi);
            let k = d.kron(&id).add(&id.kron(&Dense::from_lib(&xi.transpose())), -1.0);
            let kh = Dense { n: k.n, a: (0..k.n * k.n).map(|i| k.a[(i % k.n) * k.n + i / k.n].conj()).collect() };
            gram = gram.add(&kh.mul(&k), 1.0);
        }
        let dim = jacobi_eigenvalues(&gram).iter().filter(|v| v.abs() <= 1e-9).count();
        assert_eq!(dim, 1, "size {n}");
    }
}

#[test]
fn pauli_choi_of_conjugate() {
    let tol = Tolerances::default();
    let p = construct_pauli::<f64>();
    let basis = FullSpanBasis::new(p.clone(), &tol).unwrap();
    let pc = fixture::<f64>("pauli-conj").unwrap().tuple;
    let lib = choi_matrix(&basis, &pc).unwrap().matrix;

    // Frozen dual coefficients (I/2, P1/2, P2/2, −P3/2).
    let g = [
        Dense::identity(2),
        Dense::from_lib(p.get(0)),
        Dense::from_lib(p.get(1)),
        Dense::from_lib(p.get(2)),
    ];
    let scale = [0.5, 0.5, 0.5, -0.5];
    let mut oracle = g[0].kron(&Dense::identity(2));
    for s in oracle.a.iter_mut() {
        *s *= scale[0];
    }
    for k in 1..4 {
        let term = g[k].kron(&Dense::from_lib(pc.get(k - 1)));
        oracle = oracle.add(&term, scale[k]);
    }
    let lib_dense = Dense::from_lib(&lib);
    for (a, b) in lib_dense.a.iter().zip(&oracle.a) {
        assert!((a - b).norm() <= 1e-12, "Choi entries differ");
    }
    let eig = jacobi_eigenvalues(&oracle);
    assert!((eig[0] + 1.0).abs() <= SPECTRUM_TOL, "{eig:?}");
    assert!((eig[0] / 2.0 + 0.5).abs() <= SPECTRUM_TOL);
    assert_spectrum(&lib_spectrum(&lib), &eig, "library Choi");
}
