//! Born-rule sampling, projective collapse, and the sequential two-party
//! measurement protocol on maximally entangled states.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::entangle::{build_u, EntangleError, EntangledState};
use crate::exec;
use crate::hilbert::{
    eigen_clusters, eigendecompose, projector_onto, ComplexMatrix, HilbertError, StateVector,
    DEFAULT_TOL, DEGENERACY_TOL,
};
use crate::sampling::rng_from_seed;
use crate::stats::{chi_square_critical_p001, chi_square_homogeneity};
use rand::Rng;

#[derive(Debug, Error, PartialEq)]
pub enum MeasureError {
    #[error("operator is not Hermitian (max deviation {max_dev:.3e})")]
    NotHermitian { max_dev: f64 },
    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("outcome {eigenvalue} has zero probability in this state")]
    ZeroProbabilityOutcome { eigenvalue: f64 },
    #[error("{eigenvalue} is not in the spectrum of the observable")]
    EigenvalueNotInSpectrum { eigenvalue: f64 },
    #[error("state is not maximally entangled")]
    NotMaximallyEntangled,
    #[error("invalid entangled state: {0}")]
    InvalidState(String),
}

impl From<HilbertError> for MeasureError {
    fn from(e: HilbertError) -> Self {
        match e {
            HilbertError::NotHermitian { max_dev } => MeasureError::NotHermitian { max_dev },
            HilbertError::NotNormalized { norm } => MeasureError::NotNormalized { norm },
            HilbertError::DimensionMismatch { left, right } => {
                MeasureError::DimensionMismatch { left, right }
            }
            HilbertError::BadShape { dim, len } => MeasureError::DimensionMismatch {
                left: dim,
                right: len,
            },
        }
    }
}

impl From<EntangleError> for MeasureError {
    fn from(e: EntangleError) -> Self {
        match e {
            EntangleError::NotMaximallyEntangled => MeasureError::NotMaximallyEntangled,
            EntangleError::NotHermitian { max_dev } => MeasureError::NotHermitian { max_dev },
            EntangleError::DimensionMismatch { left, right } => {
                MeasureError::DimensionMismatch { left, right }
            }
            other => MeasureError::InvalidState(other.to_string()),
        }
    }
}

/// Which tensor factor an operator acts on. Alice is the left (slow) index,
/// Bob the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    Alice,
    Bob,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasureOrder {
    AliceFirst,
    BobFirst,
}

impl MeasureOrder {
    pub fn label(&self) -> &'static str {
        match self {
            MeasureOrder::AliceFirst => "alice-first",
            MeasureOrder::BobFirst => "bob-first",
        }
    }
}

/// One projective outcome: the eigenvalue (cluster head), its probability,
/// and the normalized post-measurement state.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub eigenvalue: f64,
    pub probability: f64,
    pub post_state: StateVector,
}

/// Splits the state dimension into (left, right) factor dimensions given
/// the operator dimension on one slot.
fn factor_dims(
    state_dim: usize,
    op_dim: usize,
    subsystem: Subsystem,
) -> Result<(usize, usize), MeasureError> {
    if op_dim == 0 || !state_dim.is_multiple_of(op_dim) {
        return Err(MeasureError::DimensionMismatch {
            left: state_dim,
            right: op_dim,
        });
    }
    let other = state_dim / op_dim;
    Ok(match subsystem {
        Subsystem::Alice => (op_dim, other),
        Subsystem::Bob => (other, op_dim),
    })
}

/// Applies a one-factor operator to the full state: (P⊗𝟙) or (𝟙⊗P).
fn apply_on_slot(
    amp: &StateVector,
    op: &ComplexMatrix,
    subsystem: Subsystem,
) -> Result<StateVector, MeasureError> {
    let (dl, dr) = factor_dims(amp.dim(), op.dim(), subsystem)?;
    let mut out = vec![Complex64::new(0.0, 0.0); amp.dim()];
    match subsystem {
        Subsystem::Alice => {
            for i in 0..dl {
                for ip in 0..dl {
                    let w = op[(i, ip)];
                    if w == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for j in 0..dr {
                        out[i * dr + j] += w * amp.amplitudes()[ip * dr + j];
                    }
                }
            }
        }
        Subsystem::Bob => {
            for j in 0..dr {
                for jp in 0..dr {
                    let w = op[(j, jp)];
                    if w == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for i in 0..dl {
                        out[i * dr + j] += w * amp.amplitudes()[i * dr + jp];
                    }
                }
            }
        }
    }
    Ok(StateVector::new(out))
}

/// Full projective outcome set of a one-factor observable on a normalized
/// state, one entry per spectral cluster with eigenvalues ascending.
/// Clusters with zero probability keep their (zero) projected state
/// unnormalized.
pub fn measurement_outcomes(
    state: &StateVector,
    o: &ComplexMatrix,
    subsystem: Subsystem,
) -> Result<Vec<MeasurementOutcome>, MeasureError> {
    state.require_normalized(DEFAULT_TOL)?;
    let clusters = eigen_clusters(&eigendecompose(o)?);
    let mut outcomes = Vec::with_capacity(clusters.len());
    for (eigenvalue, vectors) in &clusters {
        let projector = projector_onto(vectors);
        let projected = apply_on_slot(state, &projector, subsystem)?;
        let probability = projected.norm().powi(2);
        let post_state = if probability > 1e-24 {
            projected.scale(Complex64::new(1.0 / probability.sqrt(), 0.0))
        } else {
            projected
        };
        outcomes.push(MeasurementOutcome {
            eigenvalue: *eigenvalue,
            probability,
            post_state,
        });
    }
    Ok(outcomes)
}

/// Born distribution of a one-factor observable: (eigenvalue, probability)
/// per spectral cluster, eigenvalues ascending. Probabilities are squared
/// norms of the cluster-projected state and sum to 1.
pub fn born_distribution(
    state: &StateVector,
    o: &ComplexMatrix,
    subsystem: Subsystem,
) -> Result<Vec<(f64, f64)>, MeasureError> {
    Ok(measurement_outcomes(state, o, subsystem)?
        .into_iter()
        .map(|m| (m.eigenvalue, m.probability))
        .collect())
}

/// Projects the state onto the spectral cluster of the given eigenvalue and
/// renormalizes.
pub fn collapse(
    state: &StateVector,
    o: &ComplexMatrix,
    subsystem: Subsystem,
    eigenvalue: f64,
) -> Result<StateVector, MeasureError> {
    let outcomes = measurement_outcomes(state, o, subsystem)?;
    let hit = outcomes
        .into_iter()
        .find(|m| (m.eigenvalue - eigenvalue).abs() <= DEGENERACY_TOL)
        .ok_or(MeasureError::EigenvalueNotInSpectrum { eigenvalue })?;
    if hit.probability <= 1e-24 {
        return Err(MeasureError::ZeroProbabilityOutcome { eigenvalue });
    }
    Ok(hit.post_state)
}

/// One run of the sequential two-party protocol, everything a trial needs
/// to be replayed and audited.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EprTrialRecord {
    pub observable_id: String,
    pub alice_value: f64,
    pub bob_value: f64,
    pub order: MeasureOrder,
    pub rng_seed: u64,
    /// Fingerprint of the entangled state the trial ran on.
    pub state_digest: u64,
}

/// Pre-assembled protocol state shared by every trial of one ensemble:
/// Bob measures O, Alice measures the partner observable, and both sides
/// share one spectral cluster list so matching outcomes compare equal
/// bit for bit.
pub struct EprProtocol {
    observable_id: String,
    eigenvalues: Vec<f64>,
    alice_projectors: Vec<ComplexMatrix>,
    bob_projectors: Vec<ComplexMatrix>,
    amp: StateVector,
    state_digest: u64,
}

impl EprProtocol {
    pub fn new(
        state: &EntangledState,
        o: &ComplexMatrix,
        observable_id: &str,
    ) -> Result<Self, MeasureError> {
        state.require_maximally_entangled()?;
        if o.dim() != state.dim() {
            return Err(MeasureError::DimensionMismatch {
                left: o.dim(),
                right: state.dim(),
            });
        }
        o.require_hermitian(DEFAULT_TOL)?;
        let pairing = build_u(state)?;
        let clusters = eigen_clusters(&eigendecompose(o)?);
        let mut eigenvalues = Vec::with_capacity(clusters.len());
        let mut alice_projectors = Vec::with_capacity(clusters.len());
        let mut bob_projectors = Vec::with_capacity(clusters.len());
        for (eigenvalue, vectors) in &clusters {
            eigenvalues.push(*eigenvalue);
            bob_projectors.push(projector_onto(vectors));
            // the pairing map sends O's eigenvectors to partner eigenvectors
            // with the same eigenvalue
            let mapped: Vec<StateVector> = vectors.iter().map(|v| pairing.apply(v)).collect();
            alice_projectors.push(projector_onto(&mapped));
        }
        Ok(Self {
            observable_id: observable_id.to_string(),
            eigenvalues,
            alice_projectors,
            bob_projectors,
            amp: state.amplitude_vector(),
            state_digest: state.digest(),
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    fn sample_side(
        &self,
        amp: &StateVector,
        subsystem: Subsystem,
        draw: f64,
    ) -> Result<(usize, StateVector), MeasureError> {
        let projectors = match subsystem {
            Subsystem::Alice => &self.alice_projectors,
            Subsystem::Bob => &self.bob_projectors,
        };
        let mut probs = Vec::with_capacity(projectors.len());
        let mut projected = Vec::with_capacity(projectors.len());
        for p in projectors {
            let pv = apply_on_slot(amp, p, subsystem)?;
            probs.push(pv.norm().powi(2));
            projected.push(pv);
        }
        let mut acc = 0.0;
        let mut pick = probs.len() - 1;
        for (k, p) in probs.iter().enumerate() {
            acc += p;
            if draw < acc {
                pick = k;
                break;
            }
        }
        // the probabilities sum to 1 only up to rounding; if the draw fell
        // through onto a zero-probability tail cluster, take the most
        // probable one instead
        if probs[pick] <= 1e-24 {
            pick = probs
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .map(|(k, _)| k)
                .unwrap();
        }
        let post = projected[pick].scale(Complex64::new(1.0 / probs[pick].sqrt(), 0.0));
        Ok((pick, post))
    }

    /// Runs one trial: sample the first side from its Born distribution,
    /// collapse, then measure the second side on the collapsed state.
    pub fn run(&self, order: MeasureOrder, seed: u64) -> Result<EprTrialRecord, MeasureError> {
        let mut rng = rng_from_seed(seed);
        let (first, second) = match order {
            MeasureOrder::AliceFirst => (Subsystem::Alice, Subsystem::Bob),
            MeasureOrder::BobFirst => (Subsystem::Bob, Subsystem::Alice),
        };
        let (k1, collapsed) = self.sample_side(&self.amp, first, rng.gen::<f64>())?;
        let (k2, _) = self.sample_side(&collapsed, second, rng.gen::<f64>())?;
        let (alice_idx, bob_idx) = match order {
            MeasureOrder::AliceFirst => (k1, k2),
            MeasureOrder::BobFirst => (k2, k1),
        };
        Ok(EprTrialRecord {
            observable_id: self.observable_id.clone(),
            alice_value: self.eigenvalues[alice_idx],
            bob_value: self.eigenvalues[bob_idx],
            order,
            rng_seed: seed,
            state_digest: self.state_digest,
        })
    }
}

/// Single-trial entry point; for ensembles prefer [`EprProtocol`] +
/// [`run_epr_ensemble`], which set the shared machinery up once.
pub fn run_epr_trial(
    state: &EntangledState,
    o: &ComplexMatrix,
    observable_id: &str,
    order: MeasureOrder,
    rng_seed: u64,
) -> Result<EprTrialRecord, MeasureError> {
    EprProtocol::new(state, o, observable_id)?.run(order, rng_seed)
}

#[derive(Debug, Clone, Serialize)]
pub struct EprEnsembleReport {
    pub trials: usize,
    pub match_count: usize,
    pub eigenvalues: Vec<f64>,
    pub marginal_counts: Vec<u64>,
    pub counts_alice_first: Vec<u64>,
    pub counts_bob_first: Vec<u64>,
    pub chi_square: f64,
    pub chi_square_dof: usize,
    pub order_independent: bool,
    pub base_seed: u64,
}

impl EprEnsembleReport {
    pub fn match_rate(&self) -> f64 {
        self.match_count as f64 / self.trials as f64
    }

    pub fn marginal_freqs(&self) -> Vec<f64> {
        self.marginal_counts
            .iter()
            .map(|&c| c as f64 / self.trials as f64)
            .collect()
    }
}

/// Runs `trials` independent trials with per-trial seeds `base_seed + i`,
/// alternating the measurement order. Trials run in parallel under the
/// `parallel` feature; results are merged in seed order either way.
pub fn run_epr_ensemble(
    state: &EntangledState,
    o: &ComplexMatrix,
    observable_id: &str,
    trials: usize,
    base_seed: u64,
) -> Result<(Vec<EprTrialRecord>, EprEnsembleReport), MeasureError> {
    let protocol = EprProtocol::new(state, o, observable_id)?;
    let runs = exec::map_indexed(trials, |i| {
        let order = if i % 2 == 0 {
            MeasureOrder::AliceFirst
        } else {
            MeasureOrder::BobFirst
        };
        protocol.run(order, base_seed.wrapping_add(i as u64))
    });
    let mut records = Vec::with_capacity(trials);
    for run in runs {
        records.push(run?);
    }

    let eigenvalues = protocol.eigenvalues().to_vec();
    let locate = |value: f64| {
        eigenvalues
            .iter()
            .position(|&e| e == value)
            .expect("trial value comes from the cluster list")
    };
    let mut marginal_counts = vec![0u64; eigenvalues.len()];
    let mut counts_alice_first = vec![0u64; eigenvalues.len()];
    let mut counts_bob_first = vec![0u64; eigenvalues.len()];
    let mut match_count = 0usize;
    for r in &records {
        if r.alice_value == r.bob_value {
            match_count += 1;
        }
        let k = locate(r.bob_value);
        marginal_counts[k] += 1;
        match r.order {
            MeasureOrder::AliceFirst => counts_alice_first[k] += 1,
            MeasureOrder::BobFirst => counts_bob_first[k] += 1,
        }
    }
    let (chi_square, chi_square_dof) =
        chi_square_homogeneity(&counts_alice_first, &counts_bob_first);
    let order_independent =
        chi_square_dof == 0 || chi_square < chi_square_critical_p001(chi_square_dof);
    let report = EprEnsembleReport {
        trials,
        match_count,
        eigenvalues,
        marginal_counts,
        counts_alice_first,
        counts_bob_first,
        chi_square,
        chi_square_dof,
        order_independent,
        base_seed,
    };
    Ok((records, report))
}

/// CSV rendering of a trial ensemble: `seed,observable,order,alice,bob`.
pub fn trials_to_csv(records: &[EprTrialRecord]) -> String {
    let mut out = String::from("seed,observable,order,alice,bob\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.rng_seed,
            r.observable_id,
            r.order.label(),
            r.alice_value,
            r.bob_value
        ));
    }
    out
}
