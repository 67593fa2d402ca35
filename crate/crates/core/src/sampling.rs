//! Seeded random generators for observables, bases, and frames.
//!
//! Every stochastic routine in the crate draws from a [`ChaCha8Rng`] seeded
//! explicitly, so runs are reproducible bit for bit.

use num_complex::Complex64;
use rand::Rng;
pub use rand_chacha::ChaCha8Rng;

use crate::hilbert::{ComplexMatrix, StateVector};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

/// Box-Muller standard normal draw.
pub fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Random Hermitian matrix with O(1) entries: (A + A†)/2 over Gaussian A.
pub fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let a = ComplexMatrix::from_fn(dim, |_, _| complex_gaussian(rng));
    a.add(&a.adjoint()).unwrap().scale(Complex64::new(0.5, 0.0))
}

/// Haar-ish random orthonormal basis via Gram-Schmidt on Gaussian vectors.
pub fn random_orthonormal_basis(dim: usize, rng: &mut ChaCha8Rng) -> Vec<StateVector> {
    let mut basis: Vec<StateVector> = Vec::with_capacity(dim);
    while basis.len() < dim {
        let mut v = StateVector::new((0..dim).map(|_| complex_gaussian(rng)).collect());
        for b in &basis {
            let overlap = b.inner(&v);
            v = v.sub(&b.scale(overlap));
        }
        if v.norm() > 1e-6 {
            basis.push(v.normalized());
        }
    }
    basis
}

/// Random normalized state on a space of the given dimension.
pub fn random_state(dim: usize, rng: &mut ChaCha8Rng) -> StateVector {
    loop {
        let v = StateVector::new((0..dim).map(|_| complex_gaussian(rng)).collect());
        if v.norm() > 1e-6 {
            return v.normalized();
        }
    }
}

/// Random orthonormal triad in R^3 (a rotated coordinate frame).
pub fn random_frame(rng: &mut ChaCha8Rng) -> [[f64; 3]; 3] {
    loop {
        let raw: Vec<[f64; 3]> = (0..3)
            .map(|_| {
                [
                    standard_normal(rng),
                    standard_normal(rng),
                    standard_normal(rng),
                ]
            })
            .collect();
        let mut frame = [[0.0; 3]; 3];
        let mut ok = true;
        for (k, cand) in raw.iter().enumerate() {
            let mut v = *cand;
            for prev in frame.iter().take(k) {
                let dot: f64 = (0..3).map(|i| v[i] * prev[i]).sum();
                for i in 0..3 {
                    v[i] -= dot * prev[i];
                }
            }
            let norm: f64 = (0..3).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
            if norm < 1e-6 {
                ok = false;
                break;
            }
            for i in 0..3 {
                frame[k][i] = v[i] / norm;
            }
        }
        if ok {
            return frame;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::orthonormality_deviation;

    #[test]
    fn hermitian_samples_are_hermitian() {
        let mut rng = rng_from_seed(1);
        for dim in 2..=5 {
            let h = random_hermitian(dim, &mut rng);
            assert!(h.hermiticity_deviation() <= 1e-15);
        }
    }

    #[test]
    fn random_basis_is_orthonormal() {
        let mut rng = rng_from_seed(2);
        let basis = random_orthonormal_basis(4, &mut rng);
        assert!(orthonormality_deviation(&basis) <= 1e-12);
    }

    #[test]
    fn random_frame_is_orthonormal() {
        let mut rng = rng_from_seed(3);
        let f = random_frame(&mut rng);
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| f[i][k] * f[j][k]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((dot - target).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn seeded_draws_are_reproducible() {
        let a = random_hermitian(3, &mut rng_from_seed(42));
        let b = random_hermitian(3, &mut rng_from_seed(42));
        assert_eq!(a, b);
    }
}
