//! Squared spin-1 components along arbitrary orthonormal frames.

use num_complex::Complex64;

use super::NogoError;
use crate::hilbert::{ComplexMatrix, DEFAULT_TOL};

/// Standard spin-1 matrices (ħ = 1) in the m = (1, 0, -1) basis.
pub fn spin1_matrices() -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let t = 1.0 / 2.0_f64.sqrt();
    let sx = ComplexMatrix::from_fn(3, |i, j| {
        if i.abs_diff(j) == 1 {
            Complex64::new(t, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let sy = ComplexMatrix::from_fn(3, |i, j| match (i, j) {
        (0, 1) | (1, 2) => Complex64::new(0.0, -t),
        (1, 0) | (2, 1) => Complex64::new(0.0, t),
        _ => Complex64::new(0.0, 0.0),
    });
    let sz = ComplexMatrix::diagonal(&[1.0, 0.0, -1.0]);
    (sx, sy, sz)
}

/// Spin component u·S along a direction (not necessarily normalized here;
/// callers pass unit vectors).
pub fn spin_component(direction: [f64; 3]) -> ComplexMatrix {
    let (sx, sy, sz) = spin1_matrices();
    sx.scale(Complex64::new(direction[0], 0.0))
        .add(&sy.scale(Complex64::new(direction[1], 0.0)))
        .unwrap()
        .add(&sz.scale(Complex64::new(direction[2], 0.0)))
        .unwrap()
}

fn frame_deviation(frame: &[[f64; 3]; 3]) -> f64 {
    let mut dev = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let dot: f64 = (0..3).map(|k| frame[i][k] * frame[j][k]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((dot - target).abs());
        }
    }
    dev
}

/// Squared spin components (S_u², S_v², S_w²) along an orthonormal triad.
/// Each has eigenvalues in {0, 1}, the three commute pairwise, and they sum
/// to 2·𝟙.
pub fn spin1_squares(
    frame: &[[f64; 3]; 3],
) -> Result<(ComplexMatrix, ComplexMatrix, ComplexMatrix), NogoError> {
    let deviation = frame_deviation(frame);
    if deviation > DEFAULT_TOL {
        return Err(NogoError::NotOrthonormal { deviation });
    }
    let square = |axis: [f64; 3]| {
        let s = spin_component(axis);
        s.mul(&s).unwrap()
    };
    Ok((square(frame[0]), square(frame[1]), square(frame[2])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{commutator, eigendecompose};
    use crate::sampling::{random_frame, rng_from_seed};

    const STANDARD: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

    #[test]
    fn z_axis_square_is_diagonal_one_zero_one() {
        let (_, _, sz2) = spin1_squares(&STANDARD).unwrap();
        let want = ComplexMatrix::diagonal(&[1.0, 0.0, 1.0]);
        assert!(sz2.sub(&want).unwrap().max_abs() <= 1e-15);
    }

    #[test]
    fn squares_sum_to_twice_the_identity() {
        let mut rng = rng_from_seed(41);
        for _ in 0..20 {
            let frame = random_frame(&mut rng);
            let (a, b, c) = spin1_squares(&frame).unwrap();
            let sum = a.add(&b).unwrap().add(&c).unwrap();
            let want = ComplexMatrix::identity(3).scale(Complex64::new(2.0, 0.0));
            assert!(sum.sub(&want).unwrap().max_abs() <= 1e-12);
        }
    }

    #[test]
    fn squares_commute_pairwise() {
        let mut rng = rng_from_seed(42);
        for _ in 0..50 {
            let frame = random_frame(&mut rng);
            let (a, b, c) = spin1_squares(&frame).unwrap();
            assert!(commutator(&a, &b).unwrap().max_abs() <= 1e-10);
            assert!(commutator(&b, &c).unwrap().max_abs() <= 1e-10);
            assert!(commutator(&c, &a).unwrap().max_abs() <= 1e-10);
        }
    }

    #[test]
    fn squares_have_zero_one_spectrum() {
        let mut rng = rng_from_seed(43);
        let frame = random_frame(&mut rng);
        let (a, _, _) = spin1_squares(&frame).unwrap();
        for (value, _) in eigendecompose(&a).unwrap() {
            let nearest = if value < 0.5 { 0.0 } else { 1.0 };
            assert!((value - nearest).abs() <= 1e-10);
        }
    }

    #[test]
    fn rejects_skew_frames() {
        let skew = [[1.0, 0.0, 0.0], [0.6, 0.8, 0.0], [0.0, 0.0, 1.0]];
        assert!(matches!(
            spin1_squares(&skew),
            Err(NogoError::NotOrthonormal { .. })
        ));
    }
}
