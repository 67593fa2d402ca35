//! Builtin fixtures and input loading shared by the subcommands.

use std::path::Path;

use qnl_core::entangle::{make_max_entangled, singlet, EntangledState};
use qnl_core::hilbert::ComplexMatrix;
use qnl_core::nogo::{coordinate_triad, peres_rays, RaySet};
use qnl_core::sampling::{random_hermitian, random_orthonormal_basis, rng_from_seed};

use crate::output::{derive_seed, CliError};

/// The operator of the two-qubit worked example: diag(1, -1) on Bob's side
/// of the singlet, whose partner is its negative.
pub fn remark_operator() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[1.0, -1.0])
}

/// State used by a command: the singlet at dimension 2, a seeded random
/// maximally entangled state above.
pub fn state_for_dim(dim: usize, seed: u64) -> Result<EntangledState, CliError> {
    if dim < 1 {
        return Err(CliError::input("dimension must be at least 1"));
    }
    if dim == 2 {
        return Ok(singlet());
    }
    random_entangled(dim, seed)
}

pub fn random_entangled(dim: usize, seed: u64) -> Result<EntangledState, CliError> {
    let mut rng = rng_from_seed(derive_seed(seed, 1));
    make_max_entangled(
        random_orthonormal_basis(dim, &mut rng),
        random_orthonormal_basis(dim, &mut rng),
    )
    .map_err(|e| CliError::input(e.to_string()))
}

/// Entangled state by name (`singlet`, `random`) or a state JSON file
/// ({"dim", "coeffs", "basis_alice", "basis_bob"}); `None` picks the
/// default for the dimension.
pub fn resolve_state(
    spec: Option<&str>,
    dim: usize,
    seed: u64,
) -> Result<EntangledState, CliError> {
    match spec {
        None => state_for_dim(dim, seed),
        Some("singlet") => {
            if dim != 2 {
                return Err(CliError::input("the singlet lives at --dim 2"));
            }
            Ok(singlet())
        }
        Some("random") => random_entangled(dim, seed),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::input(format!("cannot read {path}: {e}")))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::input(format!("bad state file {path}: {e}")))
        }
    }
}

pub fn dump_state(state: &EntangledState, path: &Path) -> Result<(), CliError> {
    let mut text =
        serde_json::to_string_pretty(state).map_err(|e| CliError::input(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}

/// Observable by name: `sigma-z`, `identity`, `random`, or a path to a
/// matrix JSON file ({"dim", "re", "im"}).
pub fn observable_by_name(
    name: &str,
    dim: usize,
    seed: u64,
) -> Result<(String, ComplexMatrix), CliError> {
    match name {
        "sigma-z" => {
            if dim != 2 {
                return Err(CliError::input("sigma-z needs --dim 2"));
            }
            Ok(("sigma_z".into(), remark_operator()))
        }
        "identity" => Ok(("identity".into(), ComplexMatrix::identity(dim))),
        "random" => {
            let mut rng = rng_from_seed(derive_seed(seed, 2));
            Ok(("random".into(), random_hermitian(dim, &mut rng)))
        }
        path => {
            let matrix = load_operator(Path::new(path))?;
            Ok((path.to_string(), matrix))
        }
    }
}

pub fn load_operator(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("bad operator file {}: {e}", path.display())))
}

/// Ray set by builtin name (`peres33`, `coordinate-triad`) or file path
/// ({"rays": [[x, y, z], ...]}).
pub fn rayset_by_name(name: &str) -> Result<RaySet, CliError> {
    match name {
        "peres33" => Ok(peres_rays()),
        "coordinate-triad" => Ok(coordinate_triad()),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::input(format!("cannot read {path}: {e}")))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::input(format!("bad ray file {path}: {e}")))
        }
    }
}
