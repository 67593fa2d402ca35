//! `qnl mermin`: the six product checks and the exhaustive sign count.

use clap::Args;
use qnl_core::Complex64;

use qnl_core::hilbert::ComplexMatrix;
use qnl_core::nogo::{mermin_square, refute_product_valuemap};
use qnl_core::report::Json;

use crate::output::{CliError, OutputArgs};

#[derive(Args, Debug)]
pub struct MerminArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(args: MerminArgs) -> Result<(), CliError> {
    let square = mermin_square();
    square
        .validate(args.tol)
        .map_err(|e| CliError::input(e.to_string()))?;
    let refutation =
        refute_product_valuemap(&square).map_err(|e| CliError::input(e.to_string()))?;

    // the six product identities, each checked against its sign target
    let id = ComplexMatrix::identity(4);
    let line_error = |cells: [(usize, usize); 3], sign: i8| -> f64 {
        let mut acc = ComplexMatrix::identity(4);
        for (r, c) in cells {
            acc = acc.mul(square.cell(r, c)).expect("same dim");
        }
        acc.sub(&id.scale(Complex64::new(sign as f64, 0.0)))
            .expect("same dim")
            .max_abs()
    };
    let mut product_errors = Vec::new();
    for r in 0..3 {
        product_errors.push(line_error([(r, 0), (r, 1), (r, 2)], square.row_signs()[r]));
    }
    for c in 0..3 {
        product_errors.push(line_error([(0, c), (1, c), (2, c)], square.col_signs()[c]));
    }
    let identities_ok = product_errors.iter().all(|e| *e <= args.tol);
    let pass =
        identities_ok && refutation.satisfying_assignments == 0 && refutation.parity_product == -1;

    let json = Json::object()
        .with("command", "mermin")
        .with("tol", args.tol)
        .with(
            "row_signs",
            Json::Array(
                square
                    .row_signs()
                    .iter()
                    .map(|&s| Json::Int(s as i64))
                    .collect(),
            ),
        )
        .with(
            "col_signs",
            Json::Array(
                square
                    .col_signs()
                    .iter()
                    .map(|&s| Json::Int(s as i64))
                    .collect(),
            ),
        )
        .with("product_errors", product_errors)
        .with("identities_ok", identities_ok)
        .with("total_assignments", refutation.total_assignments as u64)
        .with(
            "satisfying_assignments",
            refutation.satisfying_assignments as u64,
        )
        .with("parity_product", refutation.parity_product as i64)
        .with("pass", pass);
    args.output.emit(json, &[])?;

    if pass {
        Ok(())
    } else {
        Err(CliError::contract("magic square checks failed"))
    }
}
