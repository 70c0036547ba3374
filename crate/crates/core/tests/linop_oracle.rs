//! Dense linear algebra against nalgebra and against index-level loop oracles.

mod common;

use common::*;
use hawking_core::linop::{
    hermitian_eigen, hermitian_eigenvalues, matrix_exponential, partial_trace,
    partial_trace_matrix, partial_transpose, tensor, trace_norm,
};
use hawking_core::metrics::negativity;
use hawking_core::{ComplexMatrix, DensityMatrix, C64};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn kron_oracle(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (p, q) = (b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(a.rows() * p, a.cols() * q);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            for k in 0..p {
                for l in 0..q {
                    out[(i * p + k, j * q + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Multi-index of `flat` in a row-major product space with dimensions `dims`.
fn digits(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = flat % d;
        flat /= d;
    }
    out
}

/// Sums `m[(i, j)]` over every pair of indices agreeing on the traced factors.
fn partial_trace_oracle(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> ComplexMatrix {
    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let n: usize = kept_dims.iter().product();
    let total: usize = dims.iter().product();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..total {
        let di = digits(i, dims);
        for j in 0..total {
            let dj = digits(j, dims);
            let traced_agree = (0..dims.len())
                .filter(|k| !keep.contains(k))
                .all(|k| di[k] == dj[k]);
            if !traced_agree {
                continue;
            }
            let flatten = |d: &[usize]| keep.iter().fold(0, |acc, &k| acc * dims[k] + d[k]);
            out[(flatten(&di), flatten(&dj))] += m[(i, j)];
        }
    }
    out
}

#[test]
fn eigenvalues_match_nalgebra() {
    let mut rng = rng(11);
    for n in [2, 4, 8] {
        for _ in 0..40 {
            let h = random_hermitian(&mut rng, n);
            let ours = hermitian_eigenvalues(&h).unwrap();
            let mut theirs: Vec<f64> = to_nalgebra(&h)
                .symmetric_eigenvalues()
                .iter()
                .copied()
                .collect();
            theirs.sort_by(f64::total_cmp);
            for (a, b) in ours.iter().zip(&theirs) {
                assert!((a - b).abs() < 1e-10, "n={n}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn degenerate_spectrum() {
    let h = tensor(
        &ComplexMatrix::from_real_diagonal(&[1.0, 1.0]),
        &ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap(),
    );
    let values = hermitian_eigenvalues(&h).unwrap();
    for (v, e) in values.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
        assert!((v - e).abs() < 1e-14);
    }
}

#[test]
fn spectral_reconstruction() {
    let mut rng = rng(12);
    for n in [3, 4, 8] {
        for _ in 0..20 {
            let h = random_hermitian(&mut rng, n);
            let eig = hermitian_eigen(&h).unwrap();
            let v = &eig.vectors;
            let rebuilt = &(v * &ComplexMatrix::from_real_diagonal(&eig.values)) * &v.adjoint();
            assert!(rebuilt.max_abs_diff(&h) < 1e-12);
            let gram = &v.adjoint() * v;
            assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-12);
        }
    }
}

#[test]
fn exponential_matches_nalgebra() {
    let mut rng = rng(13);
    for scale in [0.1, 1.0, 4.0] {
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 4, 4).scale_real(scale);
            let ours = matrix_exponential(&m).unwrap();
            let theirs = to_nalgebra(&m).exp();
            let norm = theirs.iter().map(|z| z.norm()).fold(1.0, f64::max);
            for i in 0..4 {
                for j in 0..4 {
                    assert!((ours[(i, j)] - theirs[(i, j)]).norm() < 1e-10 * norm);
                }
            }
        }
    }
}

#[test]
fn exponential_of_anti_hermitian_is_unitary() {
    let mut rng = rng(14);
    for _ in 0..20 {
        let u = random_unitary(&mut rng, 4);
        assert!((&u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }
}

#[test]
fn tensor_matches_loop_oracle() {
    let mut rng = rng(15);
    for (r1, c1, r2, c2) in [(2, 2, 2, 2), (2, 3, 4, 1), (1, 4, 3, 2)] {
        let a = random_matrix(&mut rng, r1, c1);
        let b = random_matrix(&mut rng, r2, c2);
        assert_eq!(tensor(&a, &b), kron_oracle(&a, &b));
    }
}

#[test]
fn partial_trace_matches_index_sum() {
    let mut rng = rng(16);
    let cases: [(&[usize], &[usize]); 7] = [
        (&[2, 2], &[0]),
        (&[2, 2], &[1]),
        (&[2, 3], &[1]),
        (&[2, 2, 2], &[0, 1]),
        (&[2, 2, 2], &[0, 2]),
        (&[2, 2, 2], &[1]),
        (&[3, 2, 2], &[0, 2]),
    ];
    for (dims, keep) in cases {
        let n: usize = dims.iter().product();
        let m = random_matrix(&mut rng, n, n);
        let ours = partial_trace_matrix(&m, dims, keep).unwrap();
        assert!(ours.max_abs_diff(&partial_trace_oracle(&m, dims, keep)) < 1e-14);
    }
}

#[test]
fn partial_transpose_matches_index_swap() {
    let mut rng = rng(17);
    let m = random_matrix(&mut rng, 4, 4);
    for sub in 0..2 {
        let pt = partial_transpose(&m, &[2, 2], sub).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let (di, dj) = (digits(i, &[2, 2]), digits(j, &[2, 2]));
                let (mut ei, mut ej) = (di.clone(), dj.clone());
                ei[sub] = dj[sub];
                ej[sub] = di[sub];
                let flat = |d: &[usize]| d[0] * 2 + d[1];
                assert_eq!(pt[(i, j)], m[(flat(&ei), flat(&ej))]);
            }
        }
    }
}

proptest! {
    #[test]
    fn trace_norm_of_state_is_one(rho in density_strategy(4)) {
        prop_assert!((trace_norm(rho.matrix()).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn partial_trace_of_product(a in density_strategy(2), b in density_strategy(4)) {
        let joint = DensityMatrix::new(tensor(a.matrix(), b.matrix())).unwrap();
        let left = partial_trace(&joint, &[2, 4], &[0]).unwrap();
        let right = partial_trace(&joint, &[2, 4], &[1]).unwrap();
        prop_assert!(left.matrix().max_abs_diff(a.matrix()) < 1e-12);
        prop_assert!(right.matrix().max_abs_diff(b.matrix()) < 1e-12);
    }

    #[test]
    fn partial_transpose_is_an_involution(m in matrix_strategy(4), sub in 0usize..2) {
        let twice = partial_transpose(&partial_transpose(&m, &[2, 2], sub).unwrap(), &[2, 2], sub).unwrap();
        prop_assert_eq!(twice, m);
    }

    #[test]
    fn eigenvalues_sum_to_trace(h in hermitian_strategy(4)) {
        let sum: f64 = hermitian_eigenvalues(&h).unwrap().iter().sum();
        prop_assert!((sum - h.trace().re).abs() < 1e-12);
    }

    #[test]
    fn negativity_is_local_unitary_invariant(rho in density_strategy(4), seed in any::<u64>()) {
        let mut rng = rng(seed);
        let local = tensor(&random_unitary(&mut rng, 2), &random_unitary(&mut rng, 2));
        let rotated = DensityMatrix::new(&(&local * rho.matrix()) * &local.adjoint()).unwrap();
        prop_assert!((negativity(&rotated).unwrap() - negativity(&rho).unwrap()).abs() < 1e-10);
    }
}
