//! Invariants over seeded random inputs.

use freespec::ballsets::{matrix_ball_membership, selfdual_ball_membership, wmax_ball_membership};
use freespec::drops::{simplex_membership, witness_search, DropDescriptor, FreeSimplex, WitnessOptions};
use freespec::duality::{choi_matrix, FullSpanBasis};
use freespec::extremality::{arveson_dilate, classify, Verdict, Witness};
use freespec::fixtures::UNION_SIMPLEX_VERTICES;
use freespec::pencil::{lambda_eval, membership, Pencil};
use freespec::sampling::{self, boundary_rich_member, hermitian_tuple, isometry, scaled_member, unit_vector, unitary};
use freespec::spin::{construct_pauli, construct_spin};
use freespec::{ComplexMatrix, HermitianTuple, Tolerances};
use proptest::prelude::*;

const MARGIN_SLACK: f64 = 1e-9;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn spin_pencil(g: usize) -> Pencil<f64> {
    construct_spin::<f64>(g).unwrap().pencil()
}

fn spin_flip() -> freespec::Matrix {
    ComplexMatrix::from_complex_rows(&[&[(0.0, 0.0), (0.0, -1.0)], &[(0.0, 1.0), (0.0, 0.0)]])
}

fn barycentric(y: [f64; 2]) -> [f64; 3] {
    let [a, b, c] = UNION_SIMPLEX_VERTICES;
    let det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
    let l1 = ((y[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (y[1] - a[1])) / det;
    let l2 = ((b[0] - a[0]) * (y[1] - a[1]) - (y[0] - a[0]) * (b[1] - a[1])) / det;
    [1.0 - l1 - l2, l1, l2]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn negated_pencil_negates_the_set(seed in any::<u64>(), n in 1usize..4, g in 1usize..4) {
        let mut rng = sampling::rng(seed);
        let a = Pencil::new(hermitian_tuple::<f64>(&mut rng, 3, g));
        let x = hermitian_tuple::<f64>(&mut rng, n, g);
        let lhs = membership(&Pencil::new(a.coefficients().neg()), &x, &tol()).unwrap();
        let rhs = membership(&a, &x.neg(), &tol()).unwrap();
        prop_assert!((lhs.min_eigenvalue - rhs.min_eigenvalue).abs() <= 1e-12);
    }

    #[test]
    fn conjugate_pauli_set_is_the_negative(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = sampling::rng(seed);
        let p = construct_pauli::<f64>();
        let x = hermitian_tuple::<f64>(&mut rng, n, 3).scale(0.5);
        let conj = membership(&Pencil::new(p.conj()), &x, &tol()).unwrap();
        let neg = membership(&Pencil::new(p.clone()), &x.neg(), &tol()).unwrap();
        prop_assert!((conj.min_eigenvalue - neg.min_eigenvalue).abs() <= 1e-12);
        let flipped = p.compress(&spin_flip()).unwrap();
        prop_assert!(flipped.max_abs_diff(&p.conj().neg()) <= 1e-15);
    }

    #[test]
    fn choi_matrix_is_affine(seed in any::<u64>(), n in 1usize..4, s in 0.0f64..1.0) {
        let mut rng = sampling::rng(seed);
        let basis = FullSpanBasis::new(construct_pauli::<f64>(), &tol()).unwrap();
        let x = hermitian_tuple::<f64>(&mut rng, n, 3);
        let y = hermitian_tuple::<f64>(&mut rng, n, 3);
        let mix = x.scale(s).add(&y.scale(1.0 - s)).unwrap();
        let cx = choi_matrix(&basis, &x).unwrap().matrix;
        let cy = choi_matrix(&basis, &y).unwrap().matrix;
        let cm = choi_matrix(&basis, &mix).unwrap().matrix;
        let combo = &cx.scale(s) + &cy.scale(1.0 - s);
        prop_assert!((&cm - &combo).max_abs() <= 1e-12);
    }

    #[test]
    fn selfdual_margin_is_unitarily_and_conjugation_invariant(seed in any::<u64>(), n in 1usize..4, g in 2usize..4) {
        let mut rng = sampling::rng(seed);
        let x = hermitian_tuple::<f64>(&mut rng, n, g).scale(0.3);
        let u = unitary::<f64>(&mut rng, n);
        let base = selfdual_ball_membership(&x, &tol()).unwrap().margin;
        let rotated = selfdual_ball_membership(&x.compress(&u).unwrap(), &tol()).unwrap().margin;
        let conj = selfdual_ball_membership(&x.conj(), &tol()).unwrap().margin;
        prop_assert!((base - rotated).abs() <= 1e-10);
        prop_assert!((base - conj).abs() <= 1e-10);
    }

    #[test]
    fn wmax_margin_does_not_grow_with_refinement(seed in any::<u64>(), n in 1usize..4, g in 2usize..4) {
        let mut rng = sampling::rng(seed);
        let x = hermitian_tuple::<f64>(&mut rng, n, g).scale(0.5);
        let coarse = wmax_ball_membership(&x, 4 * g, 0, seed, &tol()).unwrap().margin;
        let fine = wmax_ball_membership(&x, 4 * g, 20, seed, &tol()).unwrap().margin;
        prop_assert!(fine <= coarse);
    }

    #[test]
    fn simplex_membership_matches_barycentric_coordinates(
        pts in prop::collection::vec((-2.5f64..1.5, -2.5f64..1.5), 1..4)
    ) {
        let s = FreeSimplex::new(UNION_SIMPLEX_VERTICES.iter().map(|v| v.to_vec()).collect()).unwrap();
        let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
        let x = HermitianTuple::new(vec![ComplexMatrix::diagonal(&xs), ComplexMatrix::diagonal(&ys)]).unwrap();
        let lambdas: Vec<[f64; 3]> = pts.iter().map(|p| barycentric([p.0, p.1])).collect();
        let worst = lambdas.iter().flatten().copied().fold(f64::INFINITY, f64::min);
        prop_assume!(worst.abs() > 1e-7);
        let v = simplex_membership(&s, &x, &tol()).unwrap();
        prop_assert_eq!(v.verdict.member, worst > 0.0);
    }

    #[test]
    fn compressions_of_witnessed_points_stay_witnessed(seed in any::<u64>(), n in 2usize..4, m in 1usize..3) {
        prop_assume!(m <= n);
        let mut rng = sampling::rng(seed);
        let whole = spin_pencil(4);
        let full = scaled_member(&mut rng, &whole, n, 0.9, &tol()).unwrap();
        let x = full.leading(2).unwrap();
        let drop = DropDescriptor::new(whole.clone(), 2).unwrap();
        let opts = WitnessOptions { seed, ..Default::default() };
        let out = witness_search(&drop, &x, &opts, &tol()).unwrap();
        if let Some(y) = out.witness {
            let v = isometry::<f64>(&mut rng, n, m);
            let compressed = x.concat(&y).unwrap().compress(&v).unwrap();
            prop_assert!(membership(&whole, &compressed, &tol()).unwrap().member);
        }
    }

    #[test]
    fn matrix_convex_combinations_of_ball_points_lie_in_spin_set(seed in any::<u64>(), g in 2usize..5, n in 1usize..4, k in 1usize..4) {
        let mut rng = sampling::rng(seed);
        let v = isometry::<f64>(&mut rng, n * k, n);
        let mut acc = HermitianTuple::zeros(n, g);
        for j in 0..k {
            let c: Vec<f64> = unit_vector(&mut rng, g);
            let scalar = HermitianTuple::new(c.iter().map(|ci| ComplexMatrix::identity(n).scale(*ci)).collect()).unwrap();
            acc = acc.add(&scalar.compress(&v.block(j * n, 0, n, n)).unwrap()).unwrap();
        }
        let v = membership(&spin_pencil(g), &acc, &tol()).unwrap();
        prop_assert!(v.min_eigenvalue >= -MARGIN_SLACK, "min eigenvalue {}", v.min_eigenvalue);
    }

    #[test]
    fn spin_set_lies_in_matrix_ball(seed in any::<u64>(), g in 2usize..5, n in 1usize..4) {
        let mut rng = sampling::rng(seed);
        let x = boundary_rich_member(&mut rng, &spin_pencil(g), n, &tol()).unwrap();
        prop_assert!(matrix_ball_membership(&x, &tol()).unwrap().margin >= -MARGIN_SLACK);
    }

    #[test]
    fn non_extreme_verdicts_carry_verified_witnesses(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = sampling::rng(seed);
        let a = spin_pencil(3);
        let x = scaled_member(&mut rng, &a, n, 1.0, &tol()).unwrap();
        let cert = classify(&a, &x, &tol()).unwrap();
        prop_assert!(cert.verdict >= Verdict::Boundary);
        match (&cert.verdict, &cert.witness) {
            (Verdict::Boundary, Some(Witness::Hermitian { beta, alpha })) => {
                for s in [1.0, -1.0] {
                    let moved = x.add_scaled(s * alpha, beta).unwrap();
                    prop_assert!(membership(&a, &moved, &tol()).unwrap().member);
                }
            }
            (Verdict::Euclidean, Some(Witness::Column { .. })) | (Verdict::Arveson, _) => {
                let d = arveson_dilate(&a, &x, 1, &tol()).unwrap();
                prop_assert!(d.dilation.size() > n);
                prop_assert!(d.corner_error <= 1e-9);
                prop_assert!(membership(&a, &d.dilation, &tol()).unwrap().member);
            }
            (Verdict::Free, None) => {}
            (v, w) => prop_assert!(false, "verdict {:?} with witness {:?}", v, w.is_some()),
        }
    }

    #[test]
    fn lambda_is_linear_in_the_point(seed in any::<u64>(), n in 1usize..3, s in -2.0f64..2.0) {
        let mut rng = sampling::rng(seed);
        let a = spin_pencil(3);
        let x = hermitian_tuple::<f64>(&mut rng, n, 3);
        let lx = lambda_eval(&a, &x).unwrap();
        let ls = lambda_eval(&a, &x.scale(s)).unwrap();
        prop_assert!((&ls - &lx.scale(s)).max_abs() <= 1e-12);
    }
}
