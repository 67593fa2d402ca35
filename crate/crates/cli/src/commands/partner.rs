//! `qnl partner`: partner observable, spectral comparison, and the
//! correlation residual.

use clap::Args;

use qnl_core::entangle::{check_perfect_correlation, partner_operator};
use qnl_core::hilbert::eigendecompose;
use qnl_core::report::{matrix_json, Json};

use crate::fixtures::{dump_state, observable_by_name, remark_operator, resolve_state};
use crate::output::{CliError, OutputArgs};

#[derive(Args, Debug)]
pub struct PartnerArgs {
    /// Operator: remark1, identity, random, or a matrix JSON path
    #[arg(long, default_value = "remark1")]
    pub op: String,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Residual bound for the correlation identity
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// State: singlet, random, or a state JSON path (must match the
    /// operator dimension)
    #[arg(long, value_name = "NAME|PATH")]
    pub state: Option<String>,
    /// Write the entangled state actually used to this path
    #[arg(long, value_name = "PATH")]
    pub dump_state: Option<std::path::PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(args: PartnerArgs) -> Result<(), CliError> {
    let (label, o) = if args.op == "remark1" {
        if args.dim != 2 {
            return Err(CliError::input("remark1 is a two-dimensional fixture"));
        }
        ("remark1".to_string(), remark_operator())
    } else {
        observable_by_name(&args.op, args.dim, args.seed)?
    };
    let state = resolve_state(args.state.as_deref(), o.dim(), args.seed)?;
    if state.dim() != o.dim() {
        return Err(CliError::input(format!(
            "state dimension {} does not match operator dimension {}",
            state.dim(),
            o.dim()
        )));
    }
    if let Some(path) = &args.dump_state {
        dump_state(&state, path)?;
    }
    let partner = partner_operator(&state, &o).map_err(|e| CliError::input(e.to_string()))?;
    let residual =
        check_perfect_correlation(&state, &o).map_err(|e| CliError::input(e.to_string()))?;

    let spectrum: Vec<f64> = eigendecompose(&o)
        .map_err(|e| CliError::input(e.to_string()))?
        .iter()
        .map(|p| p.0)
        .collect();
    let partner_spectrum: Vec<f64> = eigendecompose(&partner)
        .map_err(|e| CliError::input(e.to_string()))?
        .iter()
        .map(|p| p.0)
        .collect();
    let spectrum_max_diff = spectrum
        .iter()
        .zip(&partner_spectrum)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);

    let pass = residual <= args.tol && spectrum_max_diff <= 1e-9;
    let json = Json::object()
        .with("command", "partner")
        .with("op", label)
        .with("dim", o.dim())
        .with("seed", args.seed)
        .with("tol", args.tol)
        .with("operator", matrix_json(&o))
        .with("partner", matrix_json(&partner))
        .with("spectrum", spectrum)
        .with("partner_spectrum", partner_spectrum)
        .with("spectrum_max_diff", spectrum_max_diff)
        .with("residual", residual)
        .with("pass", pass);
    args.output.emit(json, &[])?;

    if pass {
        Ok(())
    } else {
        Err(CliError::contract(format!(
            "residual {residual} (tol {}), spectrum diff {spectrum_max_diff}",
            args.tol
        )))
    }
}
