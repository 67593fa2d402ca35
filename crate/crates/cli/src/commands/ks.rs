//! `qnl ks`: coloring search over a ray set.

use clap::Args;

use qnl_core::nogo::{search_coloring, verify_coloring, ColoringOutcome};
use qnl_core::report::Json;

use crate::fixtures::rayset_by_name;
use crate::output::{CliError, OutputArgs};

#[derive(Args, Debug)]
pub struct KsArgs {
    /// Ray set: peres33, coordinate-triad, or a JSON file `{"rays": [[x,y,z], ...]}`
    #[arg(long, default_value = "peres33")]
    pub set: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(args: KsArgs) -> Result<(), CliError> {
    let rays = rayset_by_name(&args.set)?;
    let outcome = search_coloring(&rays);
    let mut json = Json::object()
        .with("command", "ks")
        .with("set", args.set.as_str())
        .with("rays", rays.len())
        .with("triples", rays.triples().len())
        .with("pairs", rays.pairs().len())
        .with("satisfiable", outcome.is_satisfiable());
    let mut pass = true;
    match &outcome {
        ColoringOutcome::Satisfiable(coloring) => {
            pass = verify_coloring(&rays, coloring);
            json.push(
                "coloring",
                Json::Array(
                    coloring
                        .values()
                        .iter()
                        .map(|v| Json::UInt(v.expect("search returns complete colorings") as u64))
                        .collect(),
                ),
            );
        }
        ColoringOutcome::Unsatisfiable(cert) => {
            json.push(
                "certificate",
                Json::object()
                    .with("unsat", true)
                    .with("nodes", cert.nodes)
                    .with("max_depth", cert.max_depth)
                    .with("exhausted_branches", cert.exhausted_branches),
            );
        }
    }
    json.push("pass", pass);
    args.output.emit(json, &[])?;
    if pass {
        Ok(())
    } else {
        Err(CliError::contract(
            "returned coloring failed re-verification",
        ))
    }
}
