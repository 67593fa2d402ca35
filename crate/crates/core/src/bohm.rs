//! Idealized pilot-wave spin measurement in one dimension.
//!
//! The wave is a superposition of two rigidly translating Gaussian packets,
//! one per spin component, separating at speed `s` along z. The particle
//! rides the weighted packet flow; the density is symmetric about z = 0 at
//! all times and the flow vanishes there, so trajectories never cross the
//! nodal line. A measurement procedure is the packet arrangement plus a
//! calibration mapping the final sign to a reported spin value; the
//! reversed procedure swaps which packet carries which spin label and
//! therefore flips the calibration while leaving the trajectory untouched.
//! No PDE is solved; the argument needs only symmetry, separation, and the
//! nodal line, which this model preserves exactly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec;
use crate::sampling::{rng_from_seed, standard_normal};

#[derive(Debug, Error, PartialEq)]
pub enum BohmError {
    #[error("trajectory may not start on the nodal line z = 0")]
    StartOnNode,
    #[error("step {dt} exceeds the stability bound {max}")]
    StepTooLarge { dt: f64, max: f64 },
    #[error("s·t_end = {reach} does not separate the packets (need ≥ {need})")]
    SeparationTooShort { reach: f64, need: f64 },
    #[error("start z0 = {z0} exceeds the detector range {limit}")]
    StartTooFar { z0: f64, limit: f64 },
    #[error("packet parameters must be positive (sigma {sigma}, speed {speed})")]
    NonPositiveParams { sigma: f64, speed: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Procedure {
    Standard,
    Reversed,
}

impl Procedure {
    pub fn label(&self) -> &'static str {
        match self {
            Procedure::Standard => "standard",
            Procedure::Reversed => "reversed",
        }
    }

    /// Calibration: final sign ↦ reported spin value.
    pub fn calibrate(&self, raw_sign: i8) -> i8 {
        match self {
            Procedure::Standard => raw_sign,
            Procedure::Reversed => -raw_sign,
        }
    }
}

/// Numerical parameters of a measurement run. Defaults are dimensionless:
/// σ = 1, s = 1, t_end = 6, dt = 1e-3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketParams {
    pub sigma: f64,
    pub speed: f64,
    pub t_end: f64,
    pub dt: f64,
}

impl Default for PacketParams {
    fn default() -> Self {
        Self {
            sigma: 1.0,
            speed: 1.0,
            t_end: 6.0,
            dt: 1e-3,
        }
    }
}

impl PacketParams {
    pub fn validate(&self) -> Result<(), BohmError> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.sigma) || !positive(self.speed) {
            return Err(BohmError::NonPositiveParams {
                sigma: self.sigma,
                speed: self.speed,
            });
        }
        let max = self.sigma / (100.0 * self.speed);
        if !positive(self.dt) || self.dt > max {
            return Err(BohmError::StepTooLarge { dt: self.dt, max });
        }
        let reach = self.speed * self.t_end;
        let need = 5.0 * self.sigma;
        if reach < need {
            return Err(BohmError::SeparationTooShort { reach, need });
        }
        Ok(())
    }
}

/// Two-packet spinor wave under one measurement procedure. At t = 0 both
/// packet centers sit at 0 and the spatial profile is even in z.
#[derive(Debug, Clone, Copy)]
pub struct SpinorPacketState {
    pub sigma: f64,
    pub speed: f64,
    pub procedure: Procedure,
}

impl SpinorPacketState {
    pub fn new(sigma: f64, speed: f64, procedure: Procedure) -> Self {
        Self {
            sigma,
            speed,
            procedure,
        }
    }

    /// Speed of the spin-up packet; negative under the reversed field
    /// gradient.
    pub fn signed_speed(&self) -> f64 {
        match self.procedure {
            Procedure::Standard => self.speed,
            Procedure::Reversed => -self.speed,
        }
    }

    pub fn up_center(&self, t: f64) -> f64 {
        self.signed_speed() * t
    }

    pub fn down_center(&self, t: f64) -> f64 {
        -self.signed_speed() * t
    }

    /// Guiding velocity v(z,t) = s·(ρ↑ - ρ↓)/(ρ↑ + ρ↓) with ρ the squared
    /// packet envelopes. Returns the degenerate flag when both densities
    /// underflow; the velocity is then reported as 0.
    pub fn velocity_checked(&self, z: f64, t: f64) -> (f64, bool) {
        let s = self.signed_speed();
        let up = gaussian_density(z - s * t, self.sigma);
        let down = gaussian_density(z + s * t, self.sigma);
        let total = up + down;
        if total <= f64::MIN_POSITIVE {
            (0.0, true)
        } else {
            (s * (up - down) / total, false)
        }
    }

    pub fn velocity(&self, z: f64, t: f64) -> f64 {
        self.velocity_checked(z, t).0
    }
}

fn gaussian_density(x: f64, sigma: f64) -> f64 {
    let norm = 1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt());
    norm * (-x * x / (2.0 * sigma * sigma)).exp()
}

/// One integrated particle path with its procedure tag and outcome.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub initial_z: f64,
    pub samples: Vec<(f64, f64)>,
    pub procedure: Procedure,
    pub raw_sign: i8,
    pub calibrated_outcome: i8,
}

fn rk4_step(packet: &SpinorPacketState, z: f64, t: f64, h: f64) -> f64 {
    let k1 = packet.velocity(z, t);
    let k2 = packet.velocity(z + 0.5 * h * k1, t + 0.5 * h);
    let k3 = packet.velocity(z + 0.5 * h * k2, t + 0.5 * h);
    let k4 = packet.velocity(z + h * k3, t + h);
    z + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

fn check_start(packet: &SpinorPacketState, z0: f64, t_end: f64, dt: f64) -> Result<(), BohmError> {
    if z0 == 0.0 {
        return Err(BohmError::StartOnNode);
    }
    let max = packet.sigma / (100.0 * packet.speed);
    if !dt.is_finite() || dt <= 0.0 || dt > max {
        return Err(BohmError::StepTooLarge { dt, max });
    }
    let reach = packet.speed * t_end;
    let need = 5.0 * packet.sigma;
    if reach < need {
        return Err(BohmError::SeparationTooShort { reach, need });
    }
    Ok(())
}

/// Fourth-order integration of dz/dt through the guiding field, recording
/// every step. The path keeps the sign of its start for all time.
pub fn integrate_trajectory(
    packet: &SpinorPacketState,
    z0: f64,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory, BohmError> {
    check_start(packet, z0, t_end, dt)?;
    let steps = (t_end / dt).ceil() as usize;
    let h = t_end / steps as f64;
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push((0.0, z0));
    let mut z = z0;
    for k in 0..steps {
        let t = k as f64 * h;
        z = rk4_step(packet, z, t, h);
        samples.push(((k + 1) as f64 * h, z));
    }
    let raw_sign = if z > 0.0 { 1 } else { -1 };
    Ok(Trajectory {
        initial_z: z0,
        samples,
        procedure: packet.procedure,
        raw_sign,
        calibrated_outcome: packet.procedure.calibrate(raw_sign),
    })
}

/// Sample-free integration for ensembles: final position plus a flag that
/// the path ever left its starting side (which the flow forbids).
fn drift_outcome(packet: &SpinorPacketState, z0: f64, t_end: f64, dt: f64) -> (f64, bool) {
    let steps = (t_end / dt).ceil() as usize;
    let h = t_end / steps as f64;
    let mut z = z0;
    let mut crossed = false;
    let start_positive = z0 > 0.0;
    for k in 0..steps {
        z = rk4_step(packet, z, k as f64 * h, h);
        if (z > 0.0) != start_positive {
            crossed = true;
        }
    }
    (z, crossed)
}

/// Runs both procedures from the identical initial condition and returns
/// (standard outcome, reversed outcome). The product is always -1: the
/// trajectory is the same, only the calibration differs.
pub fn contextuality_demo(z0: f64, params: &PacketParams) -> Result<(i8, i8), BohmError> {
    params.validate()?;
    let standard = integrate_trajectory(
        &SpinorPacketState::new(params.sigma, params.speed, Procedure::Standard),
        z0,
        params.t_end,
        params.dt,
    )?;
    let reversed = integrate_trajectory(
        &SpinorPacketState::new(params.sigma, params.speed, Procedure::Reversed),
        z0,
        params.t_end,
        params.dt,
    )?;
    Ok((standard.calibrated_outcome, reversed.calibrated_outcome))
}

#[derive(Debug, Clone, Serialize)]
pub struct EnsembleReport {
    pub n: usize,
    pub up_count: usize,
    pub up_freq: f64,
    /// Frequency of calibrated outcome +1.
    pub calibrated_plus_freq: f64,
    /// Paths that ever changed sign; the guiding field makes this 0.
    pub crossings: usize,
    pub seed: u64,
    pub procedure: Procedure,
}

/// Draws start positions from the t = 0 position density (a Gaussian of
/// width σ, with the measure-zero z = 0 resampled away), integrates each
/// path, and tallies the up fraction. Trials use seeds `seed + i` and run
/// in parallel under the `parallel` feature.
pub fn born_ensemble(
    params: &PacketParams,
    procedure: Procedure,
    n_trials: usize,
    seed: u64,
) -> Result<EnsembleReport, BohmError> {
    params.validate()?;
    assert!(n_trials >= 1, "ensemble needs at least one trial");
    let packet = SpinorPacketState::new(params.sigma, params.speed, procedure);
    let outcomes = exec::map_indexed(n_trials, |i| {
        let mut rng = rng_from_seed(seed.wrapping_add(i as u64));
        let z0 = loop {
            let draw = params.sigma * standard_normal(&mut rng);
            if draw != 0.0 {
                break draw;
            }
        };
        let (z_final, crossed) = drift_outcome(&packet, z0, params.t_end, params.dt);
        (z_final > 0.0, crossed)
    });
    let up_count = outcomes.iter().filter(|(up, _)| *up).count();
    let crossings = outcomes.iter().filter(|(_, crossed)| *crossed).count();
    let plus_count = match procedure {
        Procedure::Standard => up_count,
        Procedure::Reversed => n_trials - up_count,
    };
    Ok(EnsembleReport {
        n: n_trials,
        up_count,
        up_freq: up_count as f64 / n_trials as f64,
        calibrated_plus_freq: plus_count as f64 / n_trials as f64,
        crossings,
        seed,
        procedure,
    })
}

/// Detector side B of the two-particle run.
#[derive(Debug, Clone, Copy)]
pub struct BSideConfig {
    pub z0: f64,
    pub procedure: Procedure,
}

impl Default for BSideConfig {
    fn default() -> Self {
        Self {
            z0: 0.25,
            procedure: Procedure::Standard,
        }
    }
}

/// Two particles in the singlet state, measured in sequence.
///
/// A's measurement is a full trajectory under the chosen procedure. B's
/// spinor then collapses to the opposite spin eigenstate (the conditional
/// state given A's outcome), so B's packet has a single component and B's
/// reading is deterministic: b = -a whatever B's own settings are. Flipping
/// the procedure at A flips both outcomes with everything at B bit-identical.
pub fn two_particle_demo(
    z0_a: f64,
    procedure_a: Procedure,
    params: &PacketParams,
    b_side: &BSideConfig,
) -> Result<(i8, i8), BohmError> {
    params.validate()?;
    let reach = params.speed * params.t_end;
    if b_side.z0.abs() + params.sigma > reach {
        return Err(BohmError::StartTooFar {
            z0: b_side.z0,
            limit: reach - params.sigma,
        });
    }
    let packet_a = SpinorPacketState::new(params.sigma, params.speed, procedure_a);
    let trajectory_a = integrate_trajectory(&packet_a, z0_a, params.t_end, params.dt)?;
    let a_outcome = trajectory_a.calibrated_outcome;

    // conditional collapse: B carries the single component with spin -a
    let b_spin = -a_outcome;
    // one-component packet: the particle rides it wherever it starts
    let up_speed = match b_side.procedure {
        Procedure::Standard => params.speed,
        Procedure::Reversed => -params.speed,
    };
    let drift = b_spin as f64 * up_speed;
    let z_final = b_side.z0 + drift * params.t_end;
    let b_raw: i8 = if z_final > 0.0 { 1 } else { -1 };
    let b_outcome = b_side.procedure.calibrate(b_raw);
    Ok((a_outcome, b_outcome))
}

/// CSV rendering `t,z` of one trajectory.
pub fn trajectory_to_csv(trajectory: &Trajectory) -> String {
    let mut out = String::from("t,z\n");
    for (t, z) in &trajectory.samples {
        out.push_str(&format!("{t},{z}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn packet(procedure: Procedure) -> SpinorPacketState {
        SpinorPacketState::new(1.0, 1.0, procedure)
    }

    #[test]
    fn velocity_vanishes_on_the_nodal_line() {
        let p = packet(Procedure::Standard);
        for t in [0.0, 0.3, 1.7, 6.0] {
            assert_eq!(p.velocity(0.0, t), 0.0);
        }
    }

    #[test]
    fn packet_centers_start_together_and_separate() {
        for proc in [Procedure::Standard, Procedure::Reversed] {
            let p = packet(proc);
            assert_eq!(p.up_center(0.0), 0.0);
            assert_eq!(p.down_center(0.0), 0.0);
            assert_eq!(p.up_center(2.0), -p.down_center(2.0));
        }
    }

    #[test]
    fn far_field_velocity_approaches_the_packet_speed() {
        // deep in the up-packet region the density ratio is a Gaussian tail
        let p = packet(Procedure::Standard);
        let t = 5.0;
        let z = p.speed * t + 6.0 * p.sigma;
        let v = p.velocity(z, t);
        // oracle: v = s·(1-r)/(1+r) with r = exp(-2·z·s·t/σ²)
        let r = (-2.0 * z * p.speed * t / (p.sigma * p.sigma)).exp();
        let oracle = p.speed * (1.0 - r) / (1.0 + r);
        assert!((v - oracle).abs() <= 1e-15);
        assert!((v - p.speed).abs() <= 1e-12);
    }

    #[test]
    fn velocity_is_antisymmetric_in_z() {
        let p = packet(Procedure::Standard);
        let mut rng = rng_from_seed(51);
        for _ in 0..1000 {
            let z = 8.0 * standard_normal(&mut rng);
            let t = 3.0 * standard_normal(&mut rng).abs();
            assert!((p.velocity(z, t) + p.velocity(-z, t)).abs() <= 1e-12);
        }
    }

    #[test]
    fn velocity_flags_the_degenerate_region() {
        let p = packet(Procedure::Standard);
        let (v, degenerate) = p.velocity_checked(1e6, 0.0);
        assert!(degenerate);
        assert_eq!(v, 0.0);
    }

    #[test]
    fn reversed_gradient_leaves_the_flow_unchanged() {
        let std_packet = packet(Procedure::Standard);
        let rev_packet = packet(Procedure::Reversed);
        let mut rng = rng_from_seed(52);
        for _ in 0..200 {
            let z = 5.0 * standard_normal(&mut rng);
            let t = 2.0 * standard_normal(&mut rng).abs();
            assert_eq!(std_packet.velocity(z, t), rev_packet.velocity(z, t));
        }
    }

    #[test]
    fn upper_start_goes_up_under_both_calibrations() {
        let params = PacketParams::default();
        let up_std =
            integrate_trajectory(&packet(Procedure::Standard), 0.5, params.t_end, params.dt)
                .unwrap();
        assert_eq!(up_std.raw_sign, 1);
        assert_eq!(up_std.calibrated_outcome, 1);

        let up_rev =
            integrate_trajectory(&packet(Procedure::Reversed), 0.5, params.t_end, params.dt)
                .unwrap();
        assert_eq!(up_rev.raw_sign, 1);
        assert_eq!(up_rev.calibrated_outcome, -1);
    }

    #[test]
    fn mirror_start_follows_the_mirror_trajectory() {
        let params = PacketParams::default();
        let up = integrate_trajectory(&packet(Procedure::Standard), 0.5, params.t_end, params.dt)
            .unwrap();
        let down =
            integrate_trajectory(&packet(Procedure::Standard), -0.5, params.t_end, params.dt)
                .unwrap();
        assert_eq!(down.raw_sign, -1);
        for ((_, zu), (_, zd)) in up.samples.iter().zip(&down.samples) {
            assert!((zu + zd).abs() <= 1e-12);
        }
    }

    #[test]
    fn trajectories_never_cross_the_nodal_line() {
        let params = PacketParams::default();
        for &z0 in &[0.01, 0.37, -0.02, -2.5, 3.9] {
            let tr =
                integrate_trajectory(&packet(Procedure::Standard), z0, params.t_end, params.dt)
                    .unwrap();
            for (_, z) in &tr.samples {
                assert!(z * z0.signum() > 0.0, "z0 {z0} crossed at z {z}");
            }
        }
    }

    #[test]
    fn start_and_step_preconditions_are_enforced() {
        let params = PacketParams::default();
        assert_eq!(
            integrate_trajectory(&packet(Procedure::Standard), 0.0, params.t_end, params.dt)
                .unwrap_err(),
            BohmError::StartOnNode
        );
        assert!(matches!(
            integrate_trajectory(&packet(Procedure::Standard), 0.5, params.t_end, 0.5),
            Err(BohmError::StepTooLarge { .. })
        ));
        assert!(matches!(
            integrate_trajectory(&packet(Procedure::Standard), 0.5, 1.0, params.dt),
            Err(BohmError::SeparationTooShort { .. })
        ));
    }

    #[test]
    fn contextuality_pair_and_sweep() {
        let params = PacketParams::default();
        assert_eq!(contextuality_demo(0.5, &params).unwrap(), (1, -1));
        assert_eq!(contextuality_demo(-1.2, &params).unwrap(), (-1, 1));
        for k in 0..100 {
            let z0 = -2.0 + 4.04 * (k as f64 + 0.5) / 100.0;
            let z0 = if z0 == 0.0 { 0.01 } else { z0 };
            let (a, b) = contextuality_demo(z0, &params).unwrap();
            assert_eq!(a * b, -1);
        }
    }

    #[test]
    fn single_trial_ensemble_is_all_or_nothing() {
        let params = PacketParams {
            dt: 0.01,
            ..PacketParams::default()
        };
        let report = born_ensemble(&params, Procedure::Standard, 1, 0).unwrap();
        assert!(report.up_freq == 0.0 || report.up_freq == 1.0);
        assert_eq!(report.crossings, 0);
    }

    #[test]
    fn reversed_ensemble_replays_the_same_raw_signs() {
        let params = PacketParams {
            dt: 0.01,
            ..PacketParams::default()
        };
        let std_report = born_ensemble(&params, Procedure::Standard, 400, 9).unwrap();
        let rev_report = born_ensemble(&params, Procedure::Reversed, 400, 9).unwrap();
        assert_eq!(std_report.up_count, rev_report.up_count);
        let total = std_report.calibrated_plus_freq + rev_report.calibrated_plus_freq;
        assert!((total - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn two_particle_outcomes_are_opposite_and_procedure_sensitive() {
        let params = PacketParams::default();
        let b = BSideConfig::default();
        assert_eq!(
            two_particle_demo(0.5, Procedure::Standard, &params, &b).unwrap(),
            (1, -1)
        );
        assert_eq!(
            two_particle_demo(0.5, Procedure::Reversed, &params, &b).unwrap(),
            (-1, 1)
        );
        for k in 0..50 {
            let z0_a = -2.0 + 4.04 * (k as f64 + 0.5) / 50.0;
            let z0_a = if z0_a == 0.0 { 0.02 } else { z0_a };
            let (_, b_std) = two_particle_demo(z0_a, Procedure::Standard, &params, &b).unwrap();
            let (_, b_rev) = two_particle_demo(z0_a, Procedure::Reversed, &params, &b).unwrap();
            assert_eq!(b_std, -b_rev);
        }
    }

    #[test]
    fn b_side_detector_range_is_checked() {
        let params = PacketParams::default();
        let b = BSideConfig {
            z0: 40.0,
            procedure: Procedure::Standard,
        };
        assert!(matches!(
            two_particle_demo(0.5, Procedure::Standard, &params, &b),
            Err(BohmError::StartTooFar { .. })
        ));
    }

    #[test]
    fn trajectory_csv_has_the_pinned_header() {
        let params = PacketParams::default();
        let tr =
            integrate_trajectory(&packet(Procedure::Standard), 0.5, params.t_end, 0.01).unwrap();
        let csv = trajectory_to_csv(&tr);
        assert!(csv.starts_with("t,z\n"));
        assert_eq!(csv.lines().count(), tr.samples.len() + 1);
    }
}
