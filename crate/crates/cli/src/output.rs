//! Report emission and the shared error split between input problems
//! (exit 1) and contract violations (exit 2).

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Args;
use qnl_core::report::Json;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Contract(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn contract(msg: impl Into<String>) -> Self {
        CliError::Contract(msg.into())
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the JSON report to this path as well as stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Suppress the timestamp so identical runs are byte-identical
    #[arg(long)]
    pub reproducible: bool,
}

impl OutputArgs {
    /// Prints the report, stamps it unless running reproducibly, and writes
    /// the report plus any sibling artifacts when `--out` is given.
    /// Artifacts get the out path with their extension swapped in.
    pub fn emit(&self, mut report: Json, artifacts: &[(&str, String)]) -> Result<(), CliError> {
        if !self.reproducible {
            let stamp = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            report.push("generated_at", stamp);
        }
        let text = report.render();
        print!("{text}");
        if let Some(out) = &self.out {
            write_file(out, &text)?;
            for (extension, content) in artifacts {
                let path = out.with_extension(extension);
                write_file(&path, content)?;
            }
        }
        Ok(())
    }
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::input(format!("cannot create {}: {e}", parent.display())))?;
        }
    }
    std::fs::write(path, content)
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}

/// Splits a derived seed off the user seed so that independently seeded
/// pieces (state, observable, trials) do not share streams.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    seed.wrapping_mul(0x9e3779b97f4a7c15)
        .wrapping_add(stream)
        .rotate_left(17)
}
