//! `htriv`: cohomology and H-triviality of line bundles on toric stacks.
//!
//! Exit codes: 0 success, 1 invalid fan, 2 computation error (cap or
//! properness), 3 usage error.

mod args;
mod render;

use std::process::ExitCode;

use clap::Parser;
use htriv_core::exec::{configure_threads, Execution};
use htriv_core::fan::load_fan_with_seed;
use htriv_core::stack::StackOptions;
use htriv_core::{catalog, ComputeError, FanError, Stack, StackyFan};
use serde_json::{json, Value};

use args::{Cli, Command};

enum Failure {
    Fan(FanError),
    Compute(ComputeError),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Fan(_) => 1,
            Failure::Compute(ComputeError::Length { .. }) | Failure::Usage(_) => 3,
            Failure::Compute(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Fan(e) => format!("invalid fan: {e}"),
            Failure::Compute(e) => format!("computation failed: {e}"),
            Failure::Usage(e) => format!("usage: {e}"),
        }
    }
}

impl From<FanError> for Failure {
    fn from(e: FanError) -> Self {
        match e {
            FanError::UnknownCatalog(_) => Failure::Usage(e.to_string()),
            e => Failure::Fan(e),
        }
    }
}

impl From<ComputeError> for Failure {
    fn from(e: ComputeError) -> Self {
        Failure::Compute(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn load(cli: &Cli) -> Result<StackyFan, Failure> {
    match (&cli.fan, &cli.catalog) {
        (Some(path), None) => {
            let bytes = std::fs::read(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(load_fan_with_seed(&bytes, cli.seed)?)
        }
        (None, Some(name)) => Ok(catalog::by_name(name)?),
        _ => Err(Failure::Usage("give exactly one of --fan PATH or --catalog NAME".into())),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    if cli.cap == 0 || cli.delta_cap == 0 {
        return Err(Failure::Usage("--cap and --delta-cap must be positive".into()));
    }
    let exec = match cli.threads {
        Some(0) => return Err(Failure::Usage("--threads must be positive".into())),
        Some(1) => Execution::Sequential,
        Some(t) => {
            configure_threads(t);
            Execution::Parallel
        }
        None => Execution::default(),
    };
    if let Command::Catalog { name } = &cli.command {
        return Ok(render::catalog(cli.format, name.as_deref())?);
    }
    let fan = load(cli)?;
    let fingerprint = fan.fingerprint();
    if let Command::Validate = cli.command {
        return Ok(render::finish(cli.format, "validate", &fingerprint, render::validate(&fan)));
    }
    let options = StackOptions {
        cap: cli.cap,
        delta_cap: cli.delta_cap,
        exec,
    };
    let st = Stack::with_options(fan, options)?;
    let n = st.fan().n();
    let (name, body): (&str, Value) = match &cli.command {
        Command::Validate | Command::Catalog { .. } => unreachable!("handled above"),
        Command::Pic => ("pic", render::pic(&st)),
        Command::Delta => ("delta", render::delta(&st)),
        Command::Cohomology { coeffs } => {
            check_len(coeffs, n)?;
            ("cohomology", json!(st.class_report(coeffs)?))
        }
        Command::HTrivial { coeffs } => {
            check_len(coeffs, n)?;
            let report = st.class_report(coeffs)?;
            (
                "h-trivial",
                json!({
                    "h_trivial": report.h_trivial,
                    "class": { "raw": report.raw, "canonical": report.canonical },
                    "violating": report.violating,
                }),
            )
        }
        Command::Scan { bounds } => {
            let free = st.pic().free_rank();
            let bounds = if bounds.len() == 1 && free > 1 {
                vec![bounds[0]; free]
            } else {
                bounds.clone()
            };
            if bounds.len() != free {
                return Err(Failure::Usage(format!(
                    "--box has {} ranges, the Picard group has free rank {free}",
                    bounds.len()
                )));
            }
            let classes = st.scan(&bounds)?;
            (
                "scan",
                json!({ "box": bounds, "count": classes.len(), "classes": classes }),
            )
        }
        Command::FindPsi => ("find-psi", render::find_psi(&st)),
        Command::Family { r, ray, psi } => {
            let (s, psi) = match (ray, psi) {
                (Some(s), Some(psi)) => {
                    check_len(psi, n)?;
                    if *s == 0 || *s > n {
                        return Err(Failure::Usage(format!("--ray must be in 1..={n}")));
                    }
                    (s - 1, psi.clone())
                }
                (None, None) => match st.find_degenerate_psi() {
                    Some(d) => (d.ray, d.psi),
                    None => {
                        return Err(Failure::Compute(ComputeError::Precondition(
                            "no degenerate psi exists for this fan; pass --ray and --psi".into(),
                        )))
                    }
                },
                _ => return Err(Failure::Usage("--ray and --psi go together".into())),
            };
            ("family", render::family(&st, s, &psi, *r)?)
        }
        Command::Report { radius, r } => {
            if *radius < 0 {
                return Err(Failure::Usage("--radius must be non-negative".into()));
            }
            ("report", json!(st.criterion_report(*radius, *r)?))
        }
    };
    Ok(render::finish(cli.format, name, &fingerprint, body))
}

fn check_len(v: &[i64], n: usize) -> Result<(), Failure> {
    if v.len() != n {
        return Err(Failure::Usage(format!(
            "expected {n} coefficients (one per ray, in file order), got {}",
            v.len()
        )));
    }
    Ok(())
}
