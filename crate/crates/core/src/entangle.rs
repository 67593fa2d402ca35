//! Maximally entangled states, the anti-unitary pairing map, and partner
//! observables.
//!
//! A bipartite state is stored in Schmidt form: orthonormal bases for the
//! left (Alice) and right (Bob) factors plus non-negative coefficients.
//! For a maximally entangled state the map U sending Bob's basis to Alice's,
//! extended anti-linearly, pairs every observable O on Bob's side with a
//! partner observable on Alice's side that is perfectly correlated with it.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::hilbert::{
    eigendecompose, orthonormality_deviation, tensor_product, ComplexMatrix, HilbertError,
    StateVector, DEFAULT_TOL,
};

#[derive(Debug, Error, PartialEq)]
pub enum EntangleError {
    #[error("basis is not orthonormal (deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("coefficients are not normalized (sum of squares {sum_sq})")]
    NotNormalized { sum_sq: f64 },
    #[error("state is not maximally entangled")]
    NotMaximallyEntangled,
    #[error("operator is not Hermitian (max deviation {max_dev:.3e})")]
    NotHermitian { max_dev: f64 },
    #[error("state vector is not normalized (norm {norm})")]
    VectorNotNormalized { norm: f64 },
}

impl From<HilbertError> for EntangleError {
    fn from(e: HilbertError) -> Self {
        match e {
            HilbertError::NotHermitian { max_dev } => EntangleError::NotHermitian { max_dev },
            HilbertError::DimensionMismatch { left, right } => {
                EntangleError::DimensionMismatch { left, right }
            }
            HilbertError::NotNormalized { norm } => EntangleError::VectorNotNormalized { norm },
            HilbertError::BadShape { dim, len } => EntangleError::DimensionMismatch {
                left: dim,
                right: len,
            },
        }
    }
}

/// Bipartite pure state in Schmidt form: Σₙ cₙ ψₙ⊗φₙ with ψₙ Alice's
/// (left-slot) basis and φₙ Bob's (right-slot) basis.
#[derive(Debug, Clone, PartialEq)]
pub struct EntangledState {
    dim: usize,
    basis_alice: Vec<StateVector>,
    basis_bob: Vec<StateVector>,
    coeffs: Vec<f64>,
}

impl EntangledState {
    pub fn new(
        basis_alice: Vec<StateVector>,
        basis_bob: Vec<StateVector>,
        coeffs: Vec<f64>,
    ) -> Result<Self, EntangleError> {
        let dim = coeffs.len();
        if basis_alice.len() != dim || basis_bob.len() != dim {
            return Err(EntangleError::DimensionMismatch {
                left: basis_alice.len(),
                right: dim,
            });
        }
        for basis in [&basis_alice, &basis_bob] {
            for v in basis.iter() {
                if v.dim() != dim {
                    return Err(EntangleError::DimensionMismatch {
                        left: v.dim(),
                        right: dim,
                    });
                }
            }
            let deviation = orthonormality_deviation(basis);
            if deviation > DEFAULT_TOL {
                return Err(EntangleError::NotOrthonormal { deviation });
            }
        }
        let sum_sq: f64 = coeffs.iter().map(|c| c * c).sum();
        if (sum_sq - 1.0).abs() > DEFAULT_TOL || coeffs.iter().any(|&c| c < 0.0) {
            return Err(EntangleError::NotNormalized { sum_sq });
        }
        Ok(Self {
            dim,
            basis_alice,
            basis_bob,
            coeffs,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_alice(&self) -> &[StateVector] {
        &self.basis_alice
    }

    pub fn basis_bob(&self) -> &[StateVector] {
        &self.basis_bob
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// True iff every Schmidt coefficient equals 1/√N within the default
    /// tolerance.
    pub fn is_maximally_entangled(&self) -> bool {
        let target = 1.0 / (self.dim as f64).sqrt();
        self.coeffs
            .iter()
            .all(|c| (c - target).abs() <= DEFAULT_TOL)
    }

    pub fn require_maximally_entangled(&self) -> Result<(), EntangleError> {
        if self.is_maximally_entangled() {
            Ok(())
        } else {
            Err(EntangleError::NotMaximallyEntangled)
        }
    }

    /// Expands the Schmidt form into the product-basis amplitude vector of
    /// dimension N², index i·N+j with i Alice's index, j Bob's.
    pub fn amplitude_vector(&self) -> StateVector {
        let n = self.dim;
        let mut amp = vec![Complex64::new(0.0, 0.0); n * n];
        for ((c, psi), phi) in self
            .coeffs
            .iter()
            .zip(&self.basis_alice)
            .zip(&self.basis_bob)
        {
            for i in 0..n {
                let left = psi.amplitudes()[i] * c;
                for j in 0..n {
                    amp[i * n + j] += left * phi.amplitudes()[j];
                }
            }
        }
        StateVector::new(amp)
    }

    /// Same state with the Alice/Bob roles exchanged (the pairing map of the
    /// swapped state is the inverse of the original one).
    pub fn swap_roles(&self) -> Self {
        Self {
            dim: self.dim,
            basis_alice: self.basis_bob.clone(),
            basis_bob: self.basis_alice.clone(),
            coeffs: self.coeffs.clone(),
        }
    }

    /// FNV-1a fingerprint of the state rounded at 1e-12, used to detect
    /// mixed-state record sets.
    pub fn digest(&self) -> u64 {
        let mut hash = 0xcbf29ce484222325u64;
        let mut eat = |x: f64| {
            let q = (x * 1e12).round() as i64;
            for byte in q.to_le_bytes() {
                hash ^= byte as u64;
                hash = hash.wrapping_mul(0x100000001b3);
            }
        };
        eat(self.dim as f64);
        for c in &self.coeffs {
            eat(*c);
        }
        for basis in [&self.basis_alice, &self.basis_bob] {
            for v in basis.iter() {
                for z in v.amplitudes() {
                    eat(z.re);
                    eat(z.im);
                }
            }
        }
        hash
    }
}

#[derive(Serialize, Deserialize)]
struct StateDto {
    dim: usize,
    coeffs: Vec<f64>,
    basis_alice: Vec<StateVector>,
    basis_bob: Vec<StateVector>,
}

impl Serialize for EntangledState {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        StateDto {
            dim: self.dim,
            coeffs: self.coeffs.clone(),
            basis_alice: self.basis_alice.clone(),
            basis_bob: self.basis_bob.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EntangledState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = StateDto::deserialize(deserializer)?;
        if dto.coeffs.len() != dto.dim {
            return Err(D::Error::custom("coeffs length does not match dim"));
        }
        EntangledState::new(dto.basis_alice, dto.basis_bob, dto.coeffs)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Anti-unitary map built from a maximally entangled state.
///
/// Only the unitary factor is stored; the anti-linear action is
/// conjugate-then-multiply in the coordinate basis:
/// `U x = unitary_factor · conj(x)`. The factor folds in the basis change,
/// so when Bob's basis is the coordinate basis it coincides with the factor
/// written next to the basis-dependent conjugation.
#[derive(Debug, Clone)]
pub struct AntiUnitary {
    unitary_factor: ComplexMatrix,
    conjugation_basis: Vec<StateVector>,
}

impl AntiUnitary {
    pub fn unitary_factor(&self) -> &ComplexMatrix {
        &self.unitary_factor
    }

    /// The basis fixing the conjugation convention (Bob's basis).
    pub fn conjugation_basis(&self) -> &[StateVector] {
        &self.conjugation_basis
    }

    pub fn apply(&self, x: &StateVector) -> StateVector {
        self.unitary_factor
            .apply(&x.conj())
            .expect("dim checked at build")
    }

    pub fn apply_inverse(&self, y: &StateVector) -> StateVector {
        self.unitary_factor
            .transpose()
            .apply(&y.conj())
            .expect("dim checked at build")
    }
}

/// Builds the maximally entangled state (1/√N) Σₙ ψₙ⊗φₙ from two
/// orthonormal bases.
pub fn make_max_entangled(
    basis_alice: Vec<StateVector>,
    basis_bob: Vec<StateVector>,
) -> Result<EntangledState, EntangleError> {
    if basis_alice.len() != basis_bob.len() {
        return Err(EntangleError::DimensionMismatch {
            left: basis_alice.len(),
            right: basis_bob.len(),
        });
    }
    let n = basis_alice.len();
    let c = 1.0 / (n as f64).sqrt();
    EntangledState::new(basis_alice, basis_bob, vec![c; n])
}

/// Schmidt decomposition of a normalized vector on the N²-dimensional
/// product space, via the spectral decomposition of Alice's reduced density
/// matrix. Coefficients come back sorted descending; with degenerate
/// coefficients only the multiset and the reconstruction are stable.
pub fn schmidt_decompose(v: &StateVector) -> Result<EntangledState, EntangleError> {
    let total = v.dim();
    let n = (total as f64).sqrt().round() as usize;
    if n * n != total {
        return Err(EntangleError::DimensionMismatch {
            left: total,
            right: n * n,
        });
    }
    let norm = v.norm();
    if (norm - 1.0).abs() > DEFAULT_TOL {
        return Err(EntangleError::VectorNotNormalized { norm });
    }

    // amplitude matrix A[i][j] = v[i·N+j]
    let amp = ComplexMatrix::from_fn(n, |i, j| v.amplitudes()[i * n + j]);
    let rho_alice = amp.mul(&amp.adjoint())?;
    let pairs = eigendecompose(&rho_alice)?;

    let mut coeffs = Vec::with_capacity(n);
    let mut basis_alice = Vec::with_capacity(n);
    let mut basis_bob: Vec<StateVector> = Vec::with_capacity(n);
    // ascending eigenvalues -> walk backwards for descending coefficients
    for (value, w) in pairs.iter().rev() {
        let sigma = value.max(0.0).sqrt();
        coeffs.push(sigma);
        basis_alice.push(w.clone());
        if sigma > 1e-8 {
            // Bob vector carried by this Schmidt term: rows of A against w
            let row = amp.transpose().apply(&w.conj())?;
            basis_bob.push(row.scale(Complex64::new(1.0 / sigma, 0.0)));
        } else {
            basis_bob.push(StateVector::zeros(n));
        }
    }
    complete_basis(&mut basis_bob);
    EntangledState::new(basis_alice, basis_bob, coeffs)
}

/// Replaces zero placeholders with unit vectors completing the family to an
/// orthonormal basis (Gram-Schmidt against the coordinate candidates).
fn complete_basis(basis: &mut [StateVector]) {
    let n = basis.len();
    for k in 0..n {
        if basis[k].norm() > 0.5 {
            continue;
        }
        for cand in 0..n {
            let mut v = StateVector::basis_state(n, cand);
            for other in basis.iter() {
                if other.norm() > 0.5 {
                    let overlap = other.inner(&v);
                    v = v.sub(&other.scale(overlap));
                }
            }
            if v.norm() > 1e-6 {
                basis[k] = v.normalized();
                break;
            }
        }
    }
}

/// The anti-unitary U with Uφₙ = ψₙ, extended anti-linearly. Requires a
/// maximally entangled state, which determines U and is determined by it.
pub fn build_u(state: &EntangledState) -> Result<AntiUnitary, EntangleError> {
    state.require_maximally_entangled()?;
    let n = state.dim();
    let mut factor = ComplexMatrix::zeros(n);
    for (psi, phi) in state.basis_alice.iter().zip(&state.basis_bob) {
        for i in 0..n {
            for j in 0..n {
                factor[(i, j)] += psi.amplitudes()[i] * phi.amplitudes()[j];
            }
        }
    }
    Ok(AntiUnitary {
        unitary_factor: factor,
        conjugation_basis: state.basis_bob.clone(),
    })
}

/// Partner observable Õ = U O U⁻¹ of a Hermitian O on Bob's side. In matrix
/// form Õ = Ũ·conj(O)·Ũ†; it is Hermitian with the same spectrum as O and
/// satisfies Õψₙ = λₙψₙ whenever Oφₙ = λₙφₙ.
pub fn partner_operator(
    state: &EntangledState,
    o: &ComplexMatrix,
) -> Result<ComplexMatrix, EntangleError> {
    partner_operator_with_tol(state, o, DEFAULT_TOL)
}

pub fn partner_operator_with_tol(
    state: &EntangledState,
    o: &ComplexMatrix,
    herm_tol: f64,
) -> Result<ComplexMatrix, EntangleError> {
    if o.dim() != state.dim() {
        return Err(EntangleError::DimensionMismatch {
            left: o.dim(),
            right: state.dim(),
        });
    }
    o.require_hermitian(herm_tol)?;
    let u = build_u(state)?;
    let factor = u.unitary_factor();
    Ok(factor.mul(&o.conj_entries())?.mul(&factor.adjoint())?)
}

/// Residual ‖(Õ⊗𝟙 − 𝟙⊗O)Ψ‖ of the perfect-correlation identity, with the
/// partner observable on Alice's (left) slot and O on Bob's (right) slot.
/// For every Hermitian O on a maximally entangled state this is ≤ 1e-9.
pub fn check_perfect_correlation(
    state: &EntangledState,
    o: &ComplexMatrix,
) -> Result<f64, EntangleError> {
    let partner = partner_operator(state, o)?;
    let id = ComplexMatrix::identity(state.dim());
    let big = tensor_product(&partner, &id).sub(&tensor_product(&id, o))?;
    Ok(big.apply(&state.amplitude_vector())?.norm())
}

/// Product of two maximally entangled states under the canonical slot
/// reshuffle, itself maximally entangled with N = N₁·N₂.
pub fn product_of_entangled(
    a: &EntangledState,
    b: &EntangledState,
) -> Result<EntangledState, EntangleError> {
    a.require_maximally_entangled()?;
    b.require_maximally_entangled()?;
    let mut basis_alice = Vec::with_capacity(a.dim() * b.dim());
    let mut basis_bob = Vec::with_capacity(a.dim() * b.dim());
    let mut coeffs = Vec::with_capacity(a.dim() * b.dim());
    for m in 0..a.dim() {
        for k in 0..b.dim() {
            basis_alice.push(a.basis_alice[m].tensor(&b.basis_alice[k]));
            basis_bob.push(a.basis_bob[m].tensor(&b.basis_bob[k]));
            coeffs.push(a.coeffs[m] * b.coeffs[k]);
        }
    }
    EntangledState::new(basis_alice, basis_bob, coeffs)
}

/// Residual ‖Ψ − (1/√N) Σₖ Uχₖ⊗χₖ‖ for a replacement orthonormal basis χ.
/// The expansion of a maximally entangled state is basis independent, so
/// the residual is ≤ 1e-9 for every orthonormal basis.
pub fn verify_basis_invariance(
    state: &EntangledState,
    new_basis: &[StateVector],
) -> Result<f64, EntangleError> {
    let n = state.dim();
    if new_basis.len() != n || new_basis.iter().any(|v| v.dim() != n) {
        return Err(EntangleError::DimensionMismatch {
            left: new_basis.len(),
            right: n,
        });
    }
    let deviation = orthonormality_deviation(new_basis);
    if deviation > DEFAULT_TOL {
        return Err(EntangleError::NotOrthonormal { deviation });
    }
    let u = build_u(state)?;
    let c = 1.0 / (n as f64).sqrt();
    let mut amp = vec![Complex64::new(0.0, 0.0); n * n];
    for chi in new_basis {
        let u_chi = u.apply(chi);
        for i in 0..n {
            let left = u_chi.amplitudes()[i] * c;
            for j in 0..n {
                amp[i * n + j] += left * chi.amplitudes()[j];
            }
        }
    }
    Ok(state.amplitude_vector().sub(&StateVector::new(amp)).norm())
}

/// Builtin fixture: the two-qubit singlet written with Bob's basis
/// {|↑⟩, |↓⟩} and Alice's basis {-|↓⟩, |↑⟩}, so the amplitude vector is
/// (1/√2)(|↑↓⟩ − |↓↑⟩).
pub fn singlet() -> EntangledState {
    let up = StateVector::basis_state(2, 0);
    let down = StateVector::basis_state(2, 1);
    let minus_down = down.scale(Complex64::new(-1.0, 0.0));
    make_max_entangled(vec![minus_down, up.clone()], vec![up, down])
        .expect("singlet fixture is well-formed")
}
