use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wreathk_cli::{
    cmd_accept, cmd_burnside, cmd_decompose, cmd_izumi, cmd_semisimple, cmd_slmat, parse_dims, Form,
    GroupSpec, Report,
};
use wreathk_core::gsets::GSetSpec;
use wreathk_core::Caps;

/// Exact decompositions for wreath products, Burnside rings and Bernoulli
/// shifts.
///
/// Groups: C<k> cyclic, S<k> symmetric, D<k> dihedral of order 2k, V4 Klein
/// four-group, Z infinite cyclic, perm:(0 1 2),(0 1) explicit generators.
/// G-sets: regular, trivial:<k>, cosets:<i> (i-th subgroup class), joined
/// with `+`. Resource caps can be set with
/// WREATHK_CAPS=group_order=..,subgroup_order=..,points=..
#[derive(Parser, Debug)]
#[command(name = "wreathk", version)]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Omit wall-clock timings so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// K-theory decomposition of R[H wr G].
    Decompose {
        #[arg(long, value_parser = parse_group)]
        h: GroupSpec,
        #[arg(long, value_parser = parse_group)]
        g: GroupSpec,
        #[arg(long, value_enum, default_value = "orbits")]
        form: FormArg,
        /// Include the K_0 rank.
        #[arg(long)]
        rank: bool,
        /// Diameter bound; required for --g Z.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Truncated decomposition for a semisimple Bernoulli shift.
    Semisimple {
        #[arg(long, value_parser = parse_dim_arg)]
        dims: wreathk_core::ktheory::DimVector,
        #[arg(long, value_parser = parse_group)]
        g: GroupSpec,
        #[arg(long, value_parser = parse_gset)]
        zspec: GSetSpec,
        #[arg(long)]
        bound: usize,
    },
    /// Run or check an expansion certificate.
    Izumi {
        #[arg(long, value_parser = parse_group)]
        g: GroupSpec,
        #[arg(long, value_parser = parse_gset)]
        z: GSetSpec,
        /// Write the certificate as JSON.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Verify a certificate read from JSON instead of computing one.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Bernoulli class [n^Z] with its witnesses alpha and beta.
    Burnside {
        #[arg(long, value_parser = parse_group)]
        g: GroupSpec,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_gset)]
        z: GSetSpec,
    },
    /// Unimodular nonnegative matrix with X (n,..,n)^T = dims.
    Slmat {
        #[arg(long, value_parser = parse_dim_arg)]
        dims: wreathk_core::ktheory::DimVector,
    },
    /// Run the acceptance suite.
    Accept,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Orbits,
    Subgroups,
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    GroupSpec::parse(s).map_err(|e| e.to_string())
}

fn parse_gset(s: &str) -> Result<GSetSpec, String> {
    GSetSpec::parse(s).map_err(|e| e.to_string())
}

fn parse_dim_arg(s: &str) -> Result<wreathk_core::ktheory::DimVector, String> {
    parse_dims(s).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> wreathk_core::Result<Report> {
    let det = cli.deterministic;
    match cli.command {
        Command::Decompose { h, g, form, rank, bound } => {
            let form = match form {
                FormArg::Orbits => Form::Orbits,
                FormArg::Subgroups => Form::Subgroups,
            };
            cmd_decompose(&h, &g, form, rank, bound, det)
        }
        Command::Semisimple { dims, g, zspec, bound } => cmd_semisimple(&dims, &g, &zspec, bound, det),
        Command::Izumi { g, z, emit, check } => cmd_izumi(&g, &z, emit.as_deref(), check.as_deref(), det),
        Command::Burnside { g, n, z } => cmd_burnside(&g, n, &z, det),
        Command::Slmat { dims } => cmd_slmat(&dims, det),
        Command::Accept => Ok(cmd_accept(det)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(text) = std::env::var("WREATHK_CAPS") {
        match text.parse::<Caps>() {
            Ok(caps) => caps.install(),
            Err(e) => {
                eprintln!("error: WREATHK_CAPS: {e}");
                return ExitCode::from(2);
            }
        }
    }
    let pretty = cli.pretty;
    match run(cli) {
        Ok(report) => {
            println!("{}", report.render(pretty));
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
