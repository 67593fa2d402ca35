//! `qnl report`: the whole argument in one run.
//!
//! Verifies the perfect correlations (the premise that, with locality,
//! forces pre-existing values), then shows those values cannot exist: the
//! 33-ray set has no coloring and the magic square admits no product-
//! consistent sign assignment. Exit 0 means every check passed and the
//! structured conclusion holds; any failing sub-check exits 2.

use clap::Args;
use qnl_core::Complex64;

use qnl_core::entangle::{make_max_entangled, partner_operator, product_of_entangled, singlet};
use qnl_core::hilbert::{tensor_product, ComplexMatrix};
use qnl_core::measure::run_epr_ensemble;
use qnl_core::nogo::{
    mermin_square, peres_rays, refute_product_valuemap, search_coloring, valuemap_from_trials,
    ColoringOutcome,
};
use qnl_core::report::Json;
use qnl_core::sampling::{random_hermitian, random_orthonormal_basis, rng_from_seed};
use qnl_core::stats::binomial_five_sigma;

use crate::fixtures::remark_operator;
use crate::output::{derive_seed, CliError, OutputArgs};

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Trials for the two-party protocol section
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Residual bound for the correlation checks
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Test hook: corrupt a named stage ("partner") to prove the report
    /// catches broken premises
    #[arg(long, hide = true, value_name = "STAGE")]
    pub inject_fault: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(args: ReportArgs) -> Result<(), CliError> {
    let fault_partner = match args.inject_fault.as_deref() {
        None => false,
        Some("partner") => true,
        Some(other) => {
            return Err(CliError::input(format!("unknown fault stage '{other}'")));
        }
    };
    if args.trials < 1 {
        return Err(CliError::input("--trials must be at least 1"));
    }

    let mut failures: Vec<&str> = Vec::new();

    // premise: every observable has a perfectly correlated partner
    let dims = [2usize, 3, 4, 5];
    let per_dim = 20;
    let mut max_residual = 0.0f64;
    let mut checked = 0usize;
    for (d, &dim) in dims.iter().enumerate() {
        let mut rng = rng_from_seed(derive_seed(args.seed, 10 + d as u64));
        let state = make_max_entangled(
            random_orthonormal_basis(dim, &mut rng),
            random_orthonormal_basis(dim, &mut rng),
        )
        .map_err(|e| CliError::input(e.to_string()))?;
        let amp = state.amplitude_vector();
        let id = ComplexMatrix::identity(dim);
        for _ in 0..per_dim {
            let o = random_hermitian(dim, &mut rng);
            let mut partner =
                partner_operator(&state, &o).map_err(|e| CliError::input(e.to_string()))?;
            if fault_partner {
                partner[(0, 0)] += Complex64::new(1e-3, 0.0);
            }
            let residual = tensor_product(&partner, &id)
                .sub(&tensor_product(&id, &o))
                .expect("same dim")
                .apply(&amp)
                .expect("same dim")
                .norm();
            max_residual = max_residual.max(residual);
            checked += 1;
        }
    }
    let correlations_pass = max_residual <= args.tol;
    if !correlations_pass {
        failures.push("perfect_correlations");
    }
    let perfect_correlations = Json::object()
        .with(
            "dims",
            dims.iter()
                .map(|&d| Json::UInt(d as u64))
                .collect::<Vec<_>>(),
        )
        .with("observables_checked", checked)
        .with("max_residual", max_residual)
        .with("tol", args.tol)
        .with("pass", correlations_pass);

    // worked two-qubit example: the partner of diag(1,-1) on the singlet
    // is exactly its negative
    let o = remark_operator();
    let partner = partner_operator(&singlet(), &o).map_err(|e| CliError::input(e.to_string()))?;
    let negation_error = partner.add(&o).expect("same dim").max_abs();
    let example_pass = negation_error <= 1e-14;
    if !example_pass {
        failures.push("worked_example");
    }
    let worked_example = Json::object()
        .with("negation_error", negation_error)
        .with("pass", example_pass);

    // the protocol itself: matched eigenvalues, uniform marginals, order
    // independence
    let (records, epr_report) = run_epr_ensemble(&singlet(), &o, "sigma_z", args.trials, args.seed)
        .map_err(|e| CliError::input(e.to_string()))?;
    let bound = binomial_five_sigma(0.5, args.trials);
    let marginals = epr_report.marginal_freqs();
    let marginals_ok = args.trials < 100 || marginals.iter().all(|f| (f - 0.5).abs() <= bound);
    let epr_pass = epr_report.match_rate() == 1.0 && marginals_ok && epr_report.order_independent;
    if !epr_pass {
        failures.push("epr");
    }
    let epr = Json::object()
        .with("trials", epr_report.trials)
        .with("match_rate", epr_report.match_rate())
        .with("marginals", marginals)
        .with("marginal_bound", bound)
        .with("chi_square", epr_report.chi_square)
        .with("order_independent", epr_report.order_independent)
        .with("pass", epr_pass);

    // locality + the correlations above infer one value per pair and
    // observable; the records must actually define such a map
    let map = valuemap_from_trials(&records).map_err(|e| CliError::input(e.to_string()))?;
    let premise_pass = !map.is_contextual() && map.member_count() == args.trials;
    if !premise_pass {
        failures.push("value_map_premise");
    }
    let value_map_premise = Json::object()
        .with("members", map.member_count())
        .with("witnesses", map.witnesses().len())
        .with("pass", premise_pass);

    // impossibility route one: the 33 rays admit no coloring
    let rays = peres_rays();
    let ks_outcome = search_coloring(&rays);
    let (ks_pass, certificate) = match &ks_outcome {
        ColoringOutcome::Unsatisfiable(cert) => (
            rays.len() == 33,
            Json::object()
                .with("unsat", true)
                .with("nodes", cert.nodes)
                .with("max_depth", cert.max_depth)
                .with("exhausted_branches", cert.exhausted_branches),
        ),
        ColoringOutcome::Satisfiable(_) => (false, Json::object().with("unsat", false)),
    };
    if !ks_pass {
        failures.push("kochen_specker");
    }
    let kochen_specker = Json::object()
        .with("set", "peres33")
        .with("rays", rays.len())
        .with("satisfiable", ks_outcome.is_satisfiable())
        .with("certificate", certificate)
        .with("pass", ks_pass);

    // impossibility route two: no ±1 assignment beats the magic square
    let square = mermin_square();
    let refutation =
        refute_product_valuemap(&square).map_err(|e| CliError::input(e.to_string()))?;
    let mermin_pass = refutation.satisfying_assignments == 0 && refutation.parity_product == -1;
    if !mermin_pass {
        failures.push("mermin");
    }
    let mermin = Json::object()
        .with("total_assignments", refutation.total_assignments as u64)
        .with(
            "satisfying_assignments",
            refutation.satisfying_assignments as u64,
        )
        .with("parity_product", refutation.parity_product as i64)
        .with("pass", mermin_pass);

    // the two halves meet: values inferred for the nine square observables
    // on a four-dimensional pair always break a product constraint
    let pipeline = square_pipeline(args.seed, &square)?;
    let pipeline_pass = matches!(pipeline, (_, true));
    if !pipeline_pass {
        failures.push("square_pipeline");
    }
    let (members, all_violate) = pipeline;
    let square_pipeline = Json::object()
        .with("members", members)
        .with("all_members_violate_a_constraint", all_violate)
        .with("pass", pipeline_pass);

    let premises_verified = correlations_pass && example_pass && epr_pass && premise_pass;
    let value_map_impossible = ks_pass && mermin_pass && pipeline_pass;
    let pass = premises_verified && value_map_impossible;
    let conclusion = Json::object()
        .with("premises_verified", premises_verified)
        .with("value_map_impossible", value_map_impossible)
        .with(
            "locality_untenable",
            premises_verified && value_map_impossible,
        )
        .with(
            "statement",
            if pass {
                "perfect correlations hold and locality would force a non-contextual \
                 value map, which cannot exist; the locality assumption is untenable"
            } else {
                "one or more checks failed; no conclusion"
            },
        );

    let json = Json::object()
        .with("command", "report")
        .with("seed", args.seed)
        .with("trials", args.trials)
        .with("perfect_correlations", perfect_correlations)
        .with("worked_example", worked_example)
        .with("epr", epr)
        .with("value_map_premise", value_map_premise)
        .with("kochen_specker", kochen_specker)
        .with("mermin", mermin)
        .with("square_pipeline", square_pipeline)
        .with("conclusion", conclusion)
        .with("pass", pass);
    args.output.emit(json, &[])?;

    if pass {
        Ok(())
    } else {
        Err(CliError::contract(format!(
            "failed sections: {}",
            failures.join(", ")
        )))
    }
}

/// Infers per-member values for all nine square observables from trials on
/// the four-dimensional pair state and counts members violating at least
/// one product constraint. Returns (members, all members violate).
fn square_pipeline(
    seed: u64,
    square: &qnl_core::nogo::MagicSquare,
) -> Result<(usize, bool), CliError> {
    let state =
        product_of_entangled(&singlet(), &singlet()).map_err(|e| CliError::input(e.to_string()))?;
    let members = 25;
    let mut records = Vec::new();
    for row in 0..3 {
        for col in 0..3 {
            let label = format!("m{row}{col}");
            let (mut cell_records, cell_report) = run_epr_ensemble(
                &state,
                square.cell(row, col),
                &label,
                members,
                derive_seed(seed, 50),
            )
            .map_err(|e| CliError::input(e.to_string()))?;
            if cell_report.match_count != members {
                return Ok((members, false));
            }
            records.append(&mut cell_records);
        }
    }
    let map = valuemap_from_trials(&records).map_err(|e| CliError::input(e.to_string()))?;
    if map.is_contextual() || map.member_count() != members {
        return Ok((members, false));
    }
    let mut all_violate = true;
    for (_, values) in map.members() {
        let value = |row: usize, col: usize| {
            let v = values[&format!("m{row}{col}")];
            if v > 0.0 {
                1i8
            } else {
                -1i8
            }
        };
        let mut broken = 0;
        for r in 0..3 {
            let product: i8 = (0..3).map(|c| value(r, c)).product();
            if product != square.row_signs()[r] {
                broken += 1;
            }
        }
        for c in 0..3 {
            let product: i8 = (0..3).map(|r| value(r, c)).product();
            if product != square.col_signs()[c] {
                broken += 1;
            }
        }
        if broken == 0 {
            all_violate = false;
        }
    }
    Ok((members, all_violate))
}
