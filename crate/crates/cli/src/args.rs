use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "htriv",
    version,
    about = "Cohomology and H-triviality of line bundles on complete simplicial toric stacks",
    after_help = "Ray indices are 0-based in fan files and 1-based in reports. \
                  Exit codes: 0 ok, 1 invalid fan, 2 computation error, 3 usage error."
)]
pub struct Cli {
    /// Fan file (JSON with "rank", "rays", "max_cones").
    #[arg(long, global = true, conflicts_with = "catalog")]
    pub fan: Option<PathBuf>,

    /// Use a bundled fan instead of a file (see `htriv catalog`).
    #[arg(long, global = true)]
    pub catalog: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Lattice-point candidates allowed per polyhedron.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub cap: u64,

    /// Largest ray count for exhaustive enumeration of forbidden index sets.
    #[arg(long, global = true, default_value_t = 16)]
    pub delta_cap: usize,

    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Seed for the completeness spot check of fan files.
    #[arg(long, global = true, default_value_t = htriv_core::fan::DEFAULT_COVERAGE_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the fan and print a summary.
    Validate,
    /// Structure of the Picard group.
    Pic,
    /// Index sets with nonzero reduced homology, with Betti numbers.
    Delta,
    /// Cohomology dimensions of the line bundle with the given coefficients.
    Cohomology {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<i64>,
    },
    /// Whether all cohomology of the line bundle vanishes.
    HTrivial {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<i64>,
    },
    /// H-trivial classes in a box of free Picard coordinates.
    Scan {
        /// `lo:hi` per free coordinate, comma separated; a single range is
        /// used for every coordinate.
        #[arg(long = "box", value_parser = parse_range, value_delimiter = ',', allow_hyphen_values = true)]
        bounds: Vec<(i64, i64)>,
    },
    /// Search for a degenerate piecewise-linear function.
    FindPsi,
    /// Members of the H-trivial family built from a degenerate psi.
    Family {
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        r: (i64, i64),
        /// Ray (1-based) where psi degenerates; defaults to the search result.
        #[arg(long, requires = "psi")]
        ray: Option<usize>,
        /// Integer values of psi at the rays.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "ray")]
        psi: Option<Vec<i64>>,
    },
    /// Collinear pairs, degenerate psi, family checks, and verdict.
    Report {
        /// Search radius for a nonzero class outside every interior.
        #[arg(long, default_value_t = 3)]
        radius: i64,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "-5:5")]
        r: (i64, i64),
    },
    /// List bundled fans, or print one as a fan file.
    Catalog { name: Option<String> },
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("{s:?} is not of the form lo:hi"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("{hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}
