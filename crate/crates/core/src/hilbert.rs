//! Dense complex linear algebra for small Hilbert spaces: matrices,
//! state vectors, tensor products, commutators, and a cyclic-Jacobi
//! Hermitian eigensolver.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Default absolute tolerance for Hermiticity / normalization checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Eigenvalues closer than this are treated as one degenerate cluster.
pub const DEGENERACY_TOL: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum HilbertError {
    #[error("matrix is not Hermitian (max deviation {max_dev:.3e})")]
    NotHermitian { max_dev: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("entry count {len} does not match dimension {dim}")]
    BadShape { dim: usize, len: usize },
}

/// Square complex matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self, HilbertError> {
        if data.len() != dim * dim {
            return Err(HilbertError::BadShape {
                dim,
                len: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Real diagonal matrix.
    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(e, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj_entries(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, HilbertError> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, HilbertError> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, HilbertError> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector, HilbertError> {
        if v.dim() != self.dim {
            return Err(HilbertError::DimensionMismatch {
                left: self.dim,
                right: v.dim(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[i] += self[(i, j)] * v.amplitudes()[j];
            }
        }
        Ok(StateVector::new(out))
    }

    /// Largest entrywise modulus, the max-norm used by the contracts here.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// max `|M[i][j] - conj(M[j][i])|` over all entries.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub fn require_hermitian(&self, tol: f64) -> Result<(), HilbertError> {
        let dev = self.hermiticity_deviation();
        if dev > tol {
            Err(HilbertError::NotHermitian { max_dev: dev })
        } else {
            Ok(())
        }
    }

    fn check_same_dim(&self, other: &Self) -> Result<(), HilbertError> {
        if self.dim != other.dim {
            return Err(HilbertError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDto {
    dim: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixDto {
            dim: self.dim,
            re: self.data.iter().map(|z| z.re).collect(),
            im: self.data.iter().map(|z| z.im).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = MatrixDto::deserialize(deserializer)?;
        if dto.re.len() != dto.dim * dto.dim || dto.im.len() != dto.dim * dto.dim {
            return Err(D::Error::custom(format!(
                "matrix of dim {} needs {} entries, got re={} im={}",
                dto.dim,
                dto.dim * dto.dim,
                dto.re.len(),
                dto.im.len()
            )));
        }
        let data = dto
            .re
            .iter()
            .zip(&dto.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect();
        Ok(Self { dim: dto.dim, data })
    }
}

/// Complex state vector (a ket in the coordinate basis).
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    data: Vec<Complex64>,
}

impl StateVector {
    pub fn new(data: Vec<Complex64>) -> Self {
        Self { data }
    }

    pub fn from_reals(re: &[f64]) -> Self {
        Self {
            data: re.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        }
    }

    pub fn basis_state(dim: usize, index: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim];
        data[index] = Complex64::new(1.0, 0.0);
        Self { data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            data: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.data
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn require_normalized(&self, tol: f64) -> Result<(), HilbertError> {
        let norm = self.norm();
        if (norm - 1.0).abs() > tol {
            Err(HilbertError::NotNormalized { norm })
        } else {
            Ok(())
        }
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        self.scale(Complex64::new(1.0 / n, 0.0))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Inner product ⟨self|other⟩, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Self { data }
    }

    /// True when the two unit vectors agree up to a global phase:
    /// |⟨self|other⟩| = 1 within `tol`.
    pub fn coincides_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        (self.inner(other).norm() - 1.0).abs() <= tol
    }
}

#[derive(Serialize, Deserialize)]
struct VectorDto {
    dim: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        VectorDto {
            dim: self.dim(),
            re: self.data.iter().map(|z| z.re).collect(),
            im: self.data.iter().map(|z| z.im).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = VectorDto::deserialize(deserializer)?;
        if dto.re.len() != dto.dim || dto.im.len() != dto.dim {
            return Err(D::Error::custom(format!(
                "vector of dim {} got re={} im={}",
                dto.dim,
                dto.re.len(),
                dto.im.len()
            )));
        }
        Ok(Self {
            data: dto
                .re
                .iter()
                .zip(&dto.im)
                .map(|(&re, &im)| Complex64::new(re, im))
                .collect(),
        })
    }
}

/// Kronecker product. Index convention: entry (i·dim(b)+k, j·dim(b)+l) is
/// `a[i][j]·b[k][l]`, so the left factor is the slow index. Throughout the
/// crate the left slot is Alice's system and the right slot is Bob's.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(na * nb);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// ab - ba.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, HilbertError> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// max |⟨vᵢ|vⱼ⟩ - δᵢⱼ| over a family of vectors.
pub fn orthonormality_deviation(basis: &[StateVector]) -> f64 {
    let mut dev = 0.0f64;
    for (i, vi) in basis.iter().enumerate() {
        for (j, vj) in basis.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((vi.inner(vj) - target).norm());
        }
    }
    dev
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Uses cyclic Jacobi sweeps with complex plane rotations, adequate and
/// simple for the dimensions handled here (N ≤ ~64). Eigenvalues come back
/// sorted ascending with orthonormal eigenvectors; within a degenerate
/// cluster (gap ≤ [`DEGENERACY_TOL`]) the vectors are re-orthonormalized,
/// phase-fixed so the first nonzero component is real positive, and ordered
/// lexicographically, which makes the output deterministic. Individual
/// degenerate eigenvectors are basis-dependent; only cluster projectors are
/// contract-stable.
pub fn eigendecompose(m: &ComplexMatrix) -> Result<Vec<(f64, StateVector)>, HilbertError> {
    eigendecompose_with_tol(m, DEFAULT_TOL)
}

pub fn eigendecompose_with_tol(
    m: &ComplexMatrix,
    herm_tol: f64,
) -> Result<Vec<(f64, StateVector)>, HilbertError> {
    m.require_hermitian(herm_tol)?;
    let n = m.dim();
    // Work on the exactly Hermitian average of m and its adjoint.
    let mut a = ComplexMatrix::from_fn(n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);

    let scale = a.max_abs().max(1.0);
    let stop = (scale * 1e-15).powi(2) * (n * n) as f64;
    for _sweep in 0..60 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[(i, j)].norm_sqr();
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut pairs: Vec<(f64, StateVector)> = (0..n)
        .map(|k| {
            let value = a[(k, k)].re;
            let column = StateVector::new((0..n).map(|i| v[(i, k)]).collect());
            (value, column)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());

    // Deterministic handling of degenerate clusters.
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && pairs[end].0 - pairs[end - 1].0 <= DEGENERACY_TOL {
            end += 1;
        }
        if end - start > 1 {
            reorthonormalize(&mut pairs[start..end]);
        }
        for pair in &mut pairs[start..end] {
            fix_phase(&mut pair.1);
        }
        pairs[start..end].sort_by(|x, y| lex_cmp(&x.1, &y.1));
        start = end;
    }
    Ok(pairs)
}

fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    let scale = a[(p, p)].re.abs() + a[(q, q)].re.abs() + 1.0;
    if g <= scale * 1e-300 {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / g;
    let alpha = a[(p, p)].re;
    let beta = a[(q, q)].re;
    let tau = (beta - alpha) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Unitary U differs from the identity only in the (p,q) block:
    // U_pp = phase·c, U_pq = phase·s, U_qp = -s, U_qq = c.
    let n = a.dim();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = akp * (phase * c) - akq * s;
        let new_kq = akp * (phase * s) + akq * c;
        a[(k, p)] = new_kp;
        a[(p, k)] = new_kp.conj();
        a[(k, q)] = new_kq;
        a[(q, k)] = new_kq.conj();
    }
    a[(p, p)] = Complex64::new(alpha - t * g, 0.0);
    a[(q, q)] = Complex64::new(beta + t * g, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * (phase * c) - vkq * s;
        v[(k, q)] = vkp * (phase * s) + vkq * c;
    }
}

fn reorthonormalize(pairs: &mut [(f64, StateVector)]) {
    for i in 0..pairs.len() {
        let (done, rest) = pairs.split_at_mut(i);
        let mut vec = rest[0].1.clone();
        for (_, prev) in done.iter() {
            let overlap = prev.inner(&vec);
            vec = vec.sub(&prev.scale(overlap));
        }
        rest[0].1 = vec.normalized();
    }
}

fn fix_phase(v: &mut StateVector) {
    if let Some(lead) = v.amplitudes().iter().find(|z| z.norm() > 1e-12) {
        let rot = lead.conj() / lead.norm();
        *v = v.scale(rot);
    }
}

fn lex_cmp(a: &StateVector, b: &StateVector) -> std::cmp::Ordering {
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        match x.re.partial_cmp(&y.re).unwrap() {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
        match x.im.partial_cmp(&y.im).unwrap() {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

/// Groups an ascending eigendecomposition into degenerate clusters and
/// returns (eigenvalue, orthonormal cluster basis) per cluster. The cluster
/// eigenvalue is the first member's.
pub fn eigen_clusters(pairs: &[(f64, StateVector)]) -> Vec<(f64, Vec<StateVector>)> {
    let mut clusters: Vec<(f64, Vec<StateVector>)> = Vec::new();
    for (value, vector) in pairs {
        match clusters.last_mut() {
            Some((head, members)) if *value - *head <= DEGENERACY_TOL => {
                members.push(vector.clone());
            }
            _ => clusters.push((*value, vec![vector.clone()])),
        }
    }
    clusters
}

/// Orthogonal projector Σ|v⟩⟨v| onto the span of the given vectors.
pub fn projector_onto(vectors: &[StateVector]) -> ComplexMatrix {
    let dim = vectors[0].dim();
    let mut p = ComplexMatrix::zeros(dim);
    for v in vectors {
        for i in 0..dim {
            for j in 0..dim {
                p[(i, j)] += v.amplitudes()[i] * v.amplitudes()[j].conj();
            }
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::new(
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap()
    }

    pub(crate) fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::new(
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap()
    }

    pub(crate) fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::diagonal(&[1.0, -1.0])
    }

    /// Brute-force Kronecker product: independent quadruple loop over the
    /// entry formula, kept separate from `tensor_product`.
    fn tensor_oracle(a: &ComplexMatrix, b: &ComplexMatrix) -> Vec<Complex64> {
        let (na, nb) = (a.dim(), b.dim());
        let n = na * nb;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..na {
            for j in 0..na {
                for k in 0..nb {
                    for l in 0..nb {
                        out[(i * nb + k) * n + (j * nb + l)] = a[(i, j)] * b[(k, l)];
                    }
                }
            }
        }
        out
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let id2 = ComplexMatrix::identity(2);
        assert_eq!(tensor_product(&id2, &id2), ComplexMatrix::identity(4));
    }

    #[test]
    fn tensor_diagonal_convention() {
        let d = ComplexMatrix::diagonal(&[1.0, -1.0]);
        let got = tensor_product(&d, &ComplexMatrix::identity(2));
        assert_eq!(got, ComplexMatrix::diagonal(&[1.0, 1.0, -1.0, -1.0]));
    }

    #[test]
    fn tensor_matches_entrywise_oracle() {
        let got = tensor_product(&sigma_z(), &sigma_x());
        let want = tensor_oracle(&sigma_z(), &sigma_x());
        for (g, w) in got.entries().iter().zip(&want) {
            assert_eq!(g, w);
        }
    }

    #[test]
    fn eigendecompose_diagonal() {
        let pairs = eigendecompose(&sigma_z()).unwrap();
        assert_eq!(pairs[0].0, -1.0);
        assert_eq!(pairs[1].0, 1.0);
        // phase-fixed eigenvectors of a diagonal matrix are basis states
        assert!(pairs[0]
            .1
            .coincides_up_to_phase(&StateVector::basis_state(2, 1), 1e-12));
        assert!(pairs[1]
            .1
            .coincides_up_to_phase(&StateVector::basis_state(2, 0), 1e-12));
    }

    #[test]
    fn eigendecompose_spin1_z_squared() {
        // S_z = diag(1,0,-1) so S_z^2 = diag(1,0,1); ascending spectrum (0,1,1).
        let sz2 = ComplexMatrix::diagonal(&[1.0, 0.0, 1.0]);
        let values: Vec<f64> = eigendecompose(&sz2).unwrap().iter().map(|p| p.0).collect();
        assert_eq!(values, vec![0.0, 1.0, 1.0]);
    }

    #[test]
    fn eigendecompose_reconstructs_random_hermitian() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let raw = ComplexMatrix::from_fn(4, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let h = raw
                .add(&raw.adjoint())
                .unwrap()
                .scale(Complex64::new(0.5, 0.0));
            let pairs = eigendecompose(&h).unwrap();
            let mut rebuilt = ComplexMatrix::zeros(4);
            for (value, vector) in &pairs {
                let p = projector_onto(std::slice::from_ref(vector));
                rebuilt = rebuilt.add(&p.scale(Complex64::new(*value, 0.0))).unwrap();
            }
            assert!(rebuilt.sub(&h).unwrap().max_abs() <= 1e-9);
            // eigenvectors mutually orthonormal
            let basis: Vec<StateVector> = pairs.iter().map(|p| p.1.clone()).collect();
            assert!(orthonormality_deviation(&basis) <= 1e-9);
        }
    }

    #[test]
    fn eigendecompose_resolves_degenerate_clusters() {
        use crate::sampling::{random_orthonormal_basis, rng_from_seed};
        let mut rng = rng_from_seed(8);
        // spectrum with a double and a triple degeneracy, hidden behind a
        // random basis rotation
        let spectrum = [-2.0, -2.0, 0.5, 0.5, 0.5, 3.0];
        let n = spectrum.len();
        let basis = random_orthonormal_basis(n, &mut rng);
        let mut h = ComplexMatrix::zeros(n);
        for (value, vector) in spectrum.iter().zip(&basis) {
            let p = projector_onto(std::slice::from_ref(vector));
            h = h.add(&p.scale(Complex64::new(*value, 0.0))).unwrap();
        }
        let pairs = eigendecompose(&h).unwrap();
        for ((got, _), want) in pairs.iter().zip(&spectrum) {
            assert!((got - want).abs() <= 1e-9);
        }
        let vectors: Vec<StateVector> = pairs.iter().map(|p| p.1.clone()).collect();
        assert!(orthonormality_deviation(&vectors) <= 1e-9);
        let mut rebuilt = ComplexMatrix::zeros(n);
        for (value, vector) in &pairs {
            let p = projector_onto(std::slice::from_ref(vector));
            rebuilt = rebuilt.add(&p.scale(Complex64::new(*value, 0.0))).unwrap();
        }
        assert!(rebuilt.sub(&h).unwrap().max_abs() <= 1e-9);
    }

    #[test]
    fn eigendecompose_rejects_non_hermitian() {
        let m = ComplexMatrix::new(
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        assert!(matches!(
            eigendecompose(&m),
            Err(HilbertError::NotHermitian { .. })
        ));
    }

    #[test]
    fn self_commutator_vanishes() {
        let c = commutator(&sigma_z(), &sigma_z()).unwrap();
        assert_eq!(c.max_abs(), 0.0);
    }

    #[test]
    fn spin1_squared_components_commute() {
        // 3x3 spin-1 matrices; [S_x^2, S_y^2] = 0.
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        let sx = ComplexMatrix::from_fn(3, |i, j| {
            if i.abs_diff(j) == 1 {
                Complex64::new(inv_sqrt2, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let sy = ComplexMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 1) | (1, 2) => Complex64::new(0.0, -inv_sqrt2),
            (1, 0) | (2, 1) => Complex64::new(0.0, inv_sqrt2),
            _ => Complex64::new(0.0, 0.0),
        });
        let sx2 = sx.mul(&sx).unwrap();
        let sy2 = sy.mul(&sy).unwrap();
        assert!(commutator(&sx2, &sy2).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn pauli_commutator_matches_oracle() {
        // direct 2x2 multiplication: [sigma_x, sigma_z] = -2i sigma_y
        let got = commutator(&sigma_x(), &sigma_z()).unwrap();
        let want = sigma_y().scale(Complex64::new(0.0, -2.0));
        assert!(got.sub(&want).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn commutator_dimension_mismatch() {
        let err = commutator(&sigma_z(), &ComplexMatrix::identity(3)).unwrap_err();
        assert_eq!(err, HilbertError::DimensionMismatch { left: 2, right: 3 });
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = tensor_product(&sigma_y(), &sigma_z());
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"dim\":4"));
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn matrix_json_rejects_bad_lengths() {
        let bad = r#"{"dim": 2, "re": [1.0, 0.0], "im": [0.0, 0.0]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(bad).is_err());
    }
}
