mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use algrest_core::output::Format;

#[derive(Parser, Debug)]
#[command(name = "algrest", version, about = "Algebraic restrictions and symplectic invariants of curve germs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded basis of the restriction space.
    Basis {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = FlavorArg::Closed)]
        flavor: FlavorArg,
    },
    /// Coordinates of a form's restriction class.
    Restrict {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, value_enum, default_value_t = FlavorArg::Closed)]
        flavor: FlavorArg,
    },
    /// Normal form of a restriction class.
    Classify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArgs,
        /// Family such as T7, T8, A3, D5, E6; defaults to the scenario's family.
        #[arg(long)]
        family: Option<String>,
    },
    /// Lagrangian tangency orders, indices of isotropy and related invariants.
    Invariants {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArgs,
        /// Relative order `NAME` or `NAME=ORDER`: branches of NAME must reach ORDER.
        #[arg(long)]
        relative: Vec<String>,
        /// Also compute the symplectic multiplicity.
        #[arg(long)]
        mu: bool,
        /// Also compute the geometric conditions on the tangent lines.
        #[arg(long)]
        geometric: bool,
    },
    /// Lie derivatives of the basis along the tangent generators.
    ActionTable {
        #[command(flatten)]
        common: Common,
        /// Largest quasi-degree of monomial multipliers of the Euler field.
        #[arg(long)]
        degree_bound: Option<i64>,
    },
    /// Recompute a published table and diff it against the embedded goldens.
    Reproduce {
        /// Table id, or `*` / `all` for every table.
        table: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Shipped scenario name or path to a scenario file.
    scenario: String,
    /// Largest quasi-degree examined when building the basis.
    #[arg(long)]
    degree_cap: Option<i64>,
    /// Largest order tried in tangency and isotropy searches.
    #[arg(long)]
    lt_cap: Option<i64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Work on one component, using its own ideal.
    #[arg(long)]
    component: Option<String>,
}

#[derive(Args, Debug)]
struct FormArgs {
    /// Form name from the scenario, a 2-form expression, `symplectic: P, Q | ...` or `coords: ...`.
    #[arg(long, conflicts_with = "coords")]
    omega: Option<String>,
    /// Comma-separated coordinates over the closed basis.
    #[arg(long, allow_hyphen_values = true)]
    coords: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Closed,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    JsonLines,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Csv => Format::Csv,
            FormatArg::JsonLines => Format::JsonLines,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
