//! `qnl epr`: trial ensembles of the sequential two-party protocol.

use clap::Args;

use qnl_core::measure::{run_epr_ensemble, trials_to_csv};
use qnl_core::report::Json;
use qnl_core::stats::binomial_five_sigma;

use crate::fixtures::{dump_state, observable_by_name, resolve_state};
use crate::output::{CliError, OutputArgs};

#[derive(Args, Debug)]
pub struct EprArgs {
    /// Number of trials (per-trial seeds are seed, seed+1, ...)
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Hilbert space dimension; 2 uses the singlet, larger dimensions a
    /// seeded random maximally entangled state. Ignored when --state is a
    /// file.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Observable: sigma-z, identity, random, or a matrix JSON path
    #[arg(long, default_value = "sigma-z")]
    pub observable: String,
    /// State: singlet, random, or a state JSON path
    #[arg(long, value_name = "NAME|PATH")]
    pub state: Option<String>,
    /// Write the entangled state actually used to this path
    #[arg(long, value_name = "PATH")]
    pub dump_state: Option<std::path::PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(args: EprArgs) -> Result<(), CliError> {
    if args.trials < 1 {
        return Err(CliError::input("--trials must be at least 1"));
    }
    let state = resolve_state(args.state.as_deref(), args.dim, args.seed)?;
    let dim = state.dim();
    if let Some(path) = &args.dump_state {
        dump_state(&state, path)?;
    }
    let (observable_id, o) = observable_by_name(&args.observable, dim, args.seed)?;
    let (records, report) = run_epr_ensemble(&state, &o, &observable_id, args.trials, args.seed)
        .map_err(|e| CliError::input(e.to_string()))?;

    let match_rate = report.match_rate();
    let marginals = report.marginal_freqs();
    let clusters = report.eigenvalues.len();
    // uniformity is only a contract for nondegenerate observables
    let nondegenerate = clusters == dim;
    let bound = binomial_five_sigma(1.0 / clusters as f64, args.trials);
    let marginals_ok = !nondegenerate
        || marginals
            .iter()
            .all(|f| (f - 1.0 / clusters as f64).abs() <= bound);
    let pass = match_rate == 1.0 && marginals_ok && report.order_independent;

    let json = Json::object()
        .with("command", "epr")
        .with("observable", observable_id)
        .with("dim", dim)
        .with("trials", args.trials)
        .with("seed", args.seed)
        .with("match_count", report.match_count)
        .with("match_rate", match_rate)
        .with("eigenvalues", report.eigenvalues.clone())
        .with("marginals", marginals)
        .with("marginal_bound", bound)
        .with("chi_square", report.chi_square)
        .with("chi_square_dof", report.chi_square_dof)
        .with("order_independent", report.order_independent)
        .with("pass", pass);
    args.output
        .emit(json, &[("csv", trials_to_csv(&records))])?;

    if pass {
        Ok(())
    } else {
        Err(CliError::contract(format!(
            "match_rate {match_rate}, marginals_ok {marginals_ok}, order_independent {}",
            report.order_independent
        )))
    }
}
