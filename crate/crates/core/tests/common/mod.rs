#![allow(dead_code)]

use hawking_core::linop::matrix_exponential;
use hawking_core::{ComplexMatrix, DensityMatrix, C64};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols)
        .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::new(rows, cols, data).unwrap()
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = random_matrix(rng, n, n);
    (&g + &g.adjoint()).scale_real(0.5)
}

/// `G G^† / Tr` for a Ginibre matrix `G`; full rank almost surely.
pub fn random_density(rng: &mut impl Rng, n: usize) -> DensityMatrix {
    let g = random_matrix(rng, n, n);
    DensityMatrix::normalized(&g * &g.adjoint()).unwrap()
}

/// `exp(i H)` for a random Hermitian `H`.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let h = random_hermitian(rng, n);
    matrix_exponential(&h.scale(C64::new(0.0, 1.0))).unwrap()
}

pub fn matrix_strategy(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
        let data = v.into_iter().map(|(re, im)| C64::new(re, im)).collect();
        ComplexMatrix::new(n, n, data).unwrap()
    })
}

pub fn density_strategy(n: usize) -> impl Strategy<Value = DensityMatrix> {
    matrix_strategy(n)
        .prop_filter("nonzero", |g| g.one_norm() > 1e-3)
        .prop_map(|g| DensityMatrix::normalized(&g * &g.adjoint()).unwrap())
}

pub fn hermitian_strategy(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix_strategy(n).prop_map(|g| (&g + &g.adjoint()).scale_real(0.5))
}
