//! Deterministic random generators for tests and randomized checks.
//!
//! Everything here is seeded explicitly so that every randomized oracle in
//! the test suites is reproducible run to run.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::{cx, complete_unitary, Complex64, ComplexMatrix, StateVector};

/// Seeded RNG with a stable stream across platforms.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Matrix with entries uniform in the complex unit square.
pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let entries = (0..rows * cols)
        .map(|_| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::new(rows, cols, entries).unwrap()
}

/// Random Hermitian matrix `(A + A†)/2`.
pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let a = random_matrix(rng, n, n);
    a.add(&a.dagger()).unwrap().scale(cx(0.5, 0.0))
}

/// Random PSD matrix `A A†`.
pub fn random_psd(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let a = random_matrix(rng, n, n);
    a.matmul(&a.dagger()).unwrap()
}

/// Random density matrix (PSD, unit trace).
pub fn random_density(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let p = random_psd(rng, n);
    let t = p.trace().re;
    p.scale(cx(1.0 / t, 0.0))
}

/// Random unit vector.
pub fn random_unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    loop {
        let mut v: Vec<Complex64> = (0..n)
            .map(|_| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm: f64 = v.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            for e in &mut v {
                *e /= norm;
            }
            return v;
        }
    }
}

/// Random pure state on `num_qubits` qubits.
pub fn random_state(rng: &mut ChaCha8Rng, num_qubits: usize) -> StateVector {
    let v = random_unit_vector(rng, 1 << num_qubits);
    StateVector::new(num_qubits, v).unwrap()
}

/// Haar-ish random unitary: a random unit column completed by a Householder
/// reflection, mixed by a second one.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let a = complete_unitary(&random_unit_vector(rng, n)).unwrap();
    let b = complete_unitary(&random_unit_vector(rng, n)).unwrap();
    a.matmul(&b).unwrap()
}

/// Random contraction: a matrix scaled to operator norm <= `max_norm`.
pub fn random_contraction(rng: &mut ChaCha8Rng, n: usize, max_norm: f64) -> ComplexMatrix {
    let a = random_matrix(rng, n, n);
    let norm = a.operator_norm();
    let target = rng.gen_range(0.1..max_norm);
    a.scale(cx(target / norm, 0.0))
}
