//! `qnl bohm`: pilot-wave measurement demonstrations.

use clap::{Args, Subcommand, ValueEnum};

use qnl_core::bohm::{
    born_ensemble, contextuality_demo, integrate_trajectory, trajectory_to_csv, two_particle_demo,
    BSideConfig, PacketParams, Procedure, SpinorPacketState,
};
use qnl_core::report::Json;
use qnl_core::stats::binomial_five_sigma;

use crate::output::{CliError, OutputArgs};

#[derive(Args, Debug)]
pub struct BohmArgs {
    #[command(subcommand)]
    pub demo: BohmDemo,
}

#[derive(Subcommand, Debug)]
pub enum BohmDemo {
    /// Integrate a single trajectory and write its t,z samples
    Traj(TrajArgs),
    /// Run both procedures from one initial condition
    Context(ContextArgs),
    /// Sample start positions from the packet density and tally outcomes
    Ensemble(EnsembleArgs),
    /// Two-particle run: measure A, collapse B, measure B
    Pair(PairArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ProcArg {
    Standard,
    Reversed,
}

impl From<ProcArg> for Procedure {
    fn from(p: ProcArg) -> Procedure {
        match p {
            ProcArg::Standard => Procedure::Standard,
            ProcArg::Reversed => Procedure::Reversed,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct PacketArgs {
    /// Packet width σ
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Packet separation speed s
    #[arg(long, default_value_t = 1.0)]
    pub speed: f64,
    #[arg(long = "t-end", default_value_t = 6.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
}

impl PacketArgs {
    fn params(&self) -> Result<PacketParams, CliError> {
        let params = PacketParams {
            sigma: self.sigma,
            speed: self.speed,
            t_end: self.t_end,
            dt: self.dt,
        };
        params
            .validate()
            .map_err(|e| CliError::input(e.to_string()))?;
        Ok(params)
    }

    fn describe(&self, json: &mut Json) {
        json.push("sigma", self.sigma);
        json.push("speed", self.speed);
        json.push("t_end", self.t_end);
        json.push("dt", self.dt);
    }
}

#[derive(Args, Debug)]
pub struct TrajArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub z0: f64,
    #[arg(long = "proc", value_enum, default_value_t = ProcArg::Standard)]
    pub procedure: ProcArg,
    #[command(flatten)]
    pub packet: PacketArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ContextArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub z0: f64,
    #[command(flatten)]
    pub packet: PacketArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct EnsembleArgs {
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "proc", value_enum, default_value_t = ProcArg::Standard)]
    pub procedure: ProcArg,
    #[command(flatten)]
    pub packet: PacketArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    /// Initial position of particle A
    #[arg(long, allow_hyphen_values = true)]
    pub z0: f64,
    /// Procedure at A
    #[arg(long = "proc", value_enum, default_value_t = ProcArg::Standard)]
    pub procedure: ProcArg,
    /// Initial position of particle B
    #[arg(long = "zb0", allow_hyphen_values = true, default_value_t = 0.25)]
    pub z0_b: f64,
    /// Procedure at B
    #[arg(long = "proc-b", value_enum, default_value_t = ProcArg::Standard)]
    pub procedure_b: ProcArg,
    #[command(flatten)]
    pub packet: PacketArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(args: BohmArgs) -> Result<(), CliError> {
    match args.demo {
        BohmDemo::Traj(a) => run_traj(a),
        BohmDemo::Context(a) => run_context(a),
        BohmDemo::Ensemble(a) => run_ensemble(a),
        BohmDemo::Pair(a) => run_pair(a),
    }
}

fn run_traj(args: TrajArgs) -> Result<(), CliError> {
    let params = args.packet.params()?;
    let packet = SpinorPacketState::new(params.sigma, params.speed, args.procedure.into());
    let trajectory = integrate_trajectory(&packet, args.z0, params.t_end, params.dt)
        .map_err(|e| CliError::input(e.to_string()))?;
    let crossed = trajectory
        .samples
        .iter()
        .any(|(_, z)| (*z > 0.0) != (args.z0 > 0.0));
    let mut json = Json::object()
        .with("command", "bohm-traj")
        .with("procedure", Procedure::from(args.procedure).label())
        .with("z0", args.z0)
        .with("raw_sign", trajectory.raw_sign as i64)
        .with("outcome", trajectory.calibrated_outcome as i64)
        .with("samples", trajectory.samples.len())
        .with("crossed", crossed);
    args.packet.describe(&mut json);
    json.push("pass", !crossed);
    args.output
        .emit(json, &[("csv", trajectory_to_csv(&trajectory))])?;
    if crossed {
        Err(CliError::contract("trajectory crossed the nodal line"))
    } else {
        Ok(())
    }
}

fn run_context(args: ContextArgs) -> Result<(), CliError> {
    let params = args.packet.params()?;
    let (standard, reversed) =
        contextuality_demo(args.z0, &params).map_err(|e| CliError::input(e.to_string()))?;
    let pass = standard * reversed == -1;
    let mut json = Json::object()
        .with("command", "bohm-context")
        .with("z0", args.z0)
        .with("outcome_standard", standard as i64)
        .with("outcome_reversed", reversed as i64)
        .with("product", (standard * reversed) as i64);
    args.packet.describe(&mut json);
    json.push("pass", pass);
    args.output.emit(json, &[])?;
    if pass {
        Ok(())
    } else {
        Err(CliError::contract(
            "procedures did not give opposite values",
        ))
    }
}

fn run_ensemble(args: EnsembleArgs) -> Result<(), CliError> {
    if args.n < 1 {
        return Err(CliError::input("--n must be at least 1"));
    }
    let params = args.packet.params()?;
    let report = born_ensemble(&params, args.procedure.into(), args.n, args.seed)
        .map_err(|e| CliError::input(e.to_string()))?;
    let bound = binomial_five_sigma(0.5, args.n);
    // the statistical bound is meaningless for a handful of samples
    let freq_ok = args.n < 100 || (report.up_freq - 0.5).abs() <= bound;
    let pass = freq_ok && report.crossings == 0;
    let mut json = Json::object()
        .with("command", "bohm-ensemble")
        .with("procedure", Procedure::from(args.procedure).label())
        .with("n", report.n)
        .with("seed", report.seed)
        .with("up_freq", report.up_freq)
        .with("calibrated_plus_freq", report.calibrated_plus_freq)
        .with("bound", bound)
        .with("crossings", report.crossings);
    args.packet.describe(&mut json);
    json.push("pass", pass);
    args.output.emit(json, &[])?;
    if pass {
        Ok(())
    } else {
        Err(CliError::contract(format!(
            "up_freq {} outside 0.5±{bound} or crossings {}",
            report.up_freq, report.crossings
        )))
    }
}

fn run_pair(args: PairArgs) -> Result<(), CliError> {
    let params = args.packet.params()?;
    let b_side = BSideConfig {
        z0: args.z0_b,
        procedure: args.procedure_b.into(),
    };
    let (a, b) = two_particle_demo(args.z0, args.procedure.into(), &params, &b_side)
        .map_err(|e| CliError::input(e.to_string()))?;
    let pass = b == -a;
    let mut json = Json::object()
        .with("command", "bohm-pair")
        .with("z0_a", args.z0)
        .with("procedure_a", Procedure::from(args.procedure).label())
        .with("z0_b", args.z0_b)
        .with("procedure_b", Procedure::from(args.procedure_b).label())
        .with("a_outcome", a as i64)
        .with("b_outcome", b as i64);
    args.packet.describe(&mut json);
    json.push("pass", pass);
    args.output.emit(json, &[])?;
    if pass {
        Ok(())
    } else {
        Err(CliError::contract("outcomes were not anti-correlated"))
    }
}
