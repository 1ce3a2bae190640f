use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod report;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

/// Exact verification of Lie triple systems in EIII, EIV and G2.
#[derive(Parser, Debug)]
#[command(name = "tgs", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "markdown", global = true)]
    format: Format,
    /// Seed of the flat search and sampled checks.
    #[arg(long, default_value_t = 7, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Restricted roots, multiplicities and metric of a space.
    Space {
        #[command(subcommand)]
        action: SpaceAction,
    },
    /// Expected tables of totally geodesic types.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Lie triple system checks for subspace files.
    Lts {
        #[command(subcommand)]
        action: LtsAction,
    },
    /// Curvature tensor evaluation and quoted identities.
    Curvature {
        #[command(subcommand)]
        action: CurvatureAction,
    },
    /// Closed geodesics of the group G2.
    Geodesic {
        #[command(subcommand)]
        action: GeodesicAction,
    },
    /// Octonion, Jordan algebra and embedding models.
    Models {
        #[command(subcommand)]
        action: ModelsAction,
    },
}

#[derive(Subcommand, Debug)]
enum SpaceAction {
    Info { name: String },
    /// Jacobi identity, Killing form, involution, metric, J and curvature symmetries.
    VerifyFoundations { name: String },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Builds and checks every prototype of the classification table.
    Verify { name: String },
    /// Checks the containment table.
    Containments { name: String },
    /// Catalog of a derived space inside a host prototype.
    Derived {
        name: String,
        #[arg(long)]
        host: String,
    },
}

#[derive(Subcommand, Debug)]
enum LtsAction {
    /// Checks a subspace file (`space NAME` header, one vector per line).
    Check { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CurvatureAction {
    /// Evaluates R(x, y) z.
    Eval {
        name: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
    },
    /// Evaluates the quoted curvature identities.
    Identities { name: String },
}

#[derive(Subcommand, Debug)]
enum GeodesicAction {
    /// Length of the closed geodesic through H, e.g. `(9*l1 + 5*l2)/sqrt(21)`.
    Length {
        #[arg(long = "H", short = 'H')]
        h: String,
        #[arg(long, default_value = "G2group")]
        space: String,
    },
}

#[derive(Subcommand, Debug)]
enum ModelsAction {
    Verify,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed;
    let result = match cli.command {
        Command::Space { action: SpaceAction::Info { name } } => commands::space_info(&name, seed),
        Command::Space { action: SpaceAction::VerifyFoundations { name } } => commands::verify_foundations(&name, seed),
        Command::Catalog { action: CatalogAction::Verify { name } } => commands::catalog_verify(&name, seed),
        Command::Catalog { action: CatalogAction::Containments { name } } => commands::catalog_containments(&name, seed),
        Command::Catalog { action: CatalogAction::Derived { name, host } } => commands::catalog_derived(&name, &host, seed),
        Command::Lts { action: LtsAction::Check { file } } => commands::lts_check(&file, seed),
        Command::Curvature { action: CurvatureAction::Eval { name, x, y, z } } => commands::curvature_eval(&name, &x, &y, &z, seed),
        Command::Curvature { action: CurvatureAction::Identities { name } } => commands::curvature_identities(&name, seed),
        Command::Geodesic { action: GeodesicAction::Length { h, space } } => commands::geodesic_length(&space, &h, seed),
        Command::Models { action: ModelsAction::Verify } => commands::models_verify(seed),
    };
    match result {
        Ok(r) => {
            match cli.format {
                Format::Json => println!("{}", r.to_json()),
                Format::Markdown => print!("{}", r.to_markdown()),
            }
            if r.status == report::Status::Pass {
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
