//! `regge`: verify the Regge symmetry of tetrahedra, transform edges,
//! compute volumes, check Ivory's lemma and sweep the flattening family.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use regge_core::Geometry;

#[derive(Parser, Debug)]
#[command(name = "regge", version, about = "Regge symmetry of tetrahedra in E³, S³ and H³")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct TetraArgs {
    /// euclidean | spherical | hyperbolic (or e/s/h, 0/1/-1)
    #[arg(long, short, allow_hyphen_values = true)]
    pub geometry: Geometry,
    /// Edge lengths x,y,a,b,c,d (x=F1F2, y=KL, a=F1K, b=F2K, c=F2L, d=F1L)
    #[arg(long, short)]
    pub edges: String,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the Regge partner and check every preserved quantity
    Verify {
        #[command(flatten)]
        tetra: TetraArgs,
        /// Tolerance for angle, log-tangent and solid-angle residuals
        #[arg(long)]
        tol: Option<f64>,
        /// Tolerance for the volume residual
        #[arg(long)]
        vol_tol: Option<f64>,
    },
    /// Print the partner edges and both sets of dihedral angles
    Transform {
        #[command(flatten)]
        tetra: TetraArgs,
    },
    /// Volume of a tetrahedron
    Volume {
        #[command(flatten)]
        tetra: TetraArgs,
    },
    /// Great diagonals of a box bounded by confocal conics
    Ivory {
        #[arg(long, short, allow_hyphen_values = true)]
        geometry: Geometry,
        /// Squared semi-axes A1,A2[,A3] (A3 only for curved families)
        #[arg(long, allow_hyphen_values = true)]
        axes: String,
        /// Box parameters λ1,λ1',λ2,λ2'
        #[arg(long, allow_hyphen_values = true)]
        lambdas: String,
        /// Orthant signs, one ±1 per coordinate
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        /// Largest accepted difference between diagonals
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// CSV of volumes and angles along the family with varying y
    Sweep {
        #[arg(long, short, allow_hyphen_values = true)]
        geometry: Geometry,
        /// Fixed edges x,a,b,c,d (or a full sextuple, whose y is ignored)
        #[arg(long, short)]
        edges: String,
        /// First y value (default: just above the lower flattening)
        #[arg(long, allow_hyphen_values = true)]
        param_from: Option<f64>,
        /// Last y value (default: just below the upper flattening)
        #[arg(long, allow_hyphen_values = true)]
        param_to: Option<f64>,
        /// Number of rows
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { tetra, tol, vol_tol } => commands::verify(&tetra, tol, vol_tol),
        Command::Transform { tetra } => commands::transform(&tetra),
        Command::Volume { tetra } => commands::volume(&tetra),
        Command::Ivory { geometry, axes, lambdas, signs, tol, json } => {
            commands::ivory(geometry, &axes, &lambdas, signs.as_deref(), tol, json)
        }
        Command::Sweep { geometry, edges, param_from, param_to, steps } => {
            commands::sweep(geometry, &edges, param_from, param_to, steps)
        }
    };
    match outcome {
        Ok(code) => code.into(),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code.into()
        }
    }
}
