use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::ConfigFile;

#[derive(Debug, Parser)]
#[command(name = "realav", version, about = "Real period matrices: structures, subvarieties, exactness criteria and density search")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML file with any of the keys below; flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Tolerance for fixed-locus membership of float points.
    #[arg(long, global = true)]
    pub tol_fix: Option<f64>,
    /// Tolerance on the J-stability residual.
    #[arg(long, global = true)]
    pub tol_res: Option<f64>,
    /// Tolerance on F-stability of input planes.
    #[arg(long, global = true)]
    pub tol_fstable: Option<f64>,
    /// Denominator bound for rational approximation.
    #[arg(long, global = true)]
    pub denom_bound: Option<u64>,
    /// Solver iteration cap.
    #[arg(long, global = true)]
    pub max_iters: Option<usize>,
    /// Master seed for randomized steps.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for parallel sampling.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

impl GlobalArgs {
    pub fn as_config(&self) -> ConfigFile {
        ConfigFile {
            tol_fix: self.tol_fix,
            tol_res: self.tol_res,
            tol_fstable: self.tol_fstable,
            denom_bound: self.denom_bound,
            max_iters: self.max_iters,
            max_escalations: None,
            seed: self.seed,
            threads: self.threads,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Siegel points, complex structures and the involutions τ.
    #[command(subcommand)]
    Siegel(SiegelCmd),
    /// Tables of real structure types.
    #[command(subcommand)]
    Atlas(AtlasCmd),
    /// Real abelian subvarieties given by rational planes.
    #[command(subcommand)]
    Sub(SubCmd),
    /// Exactness criteria on q-tensors.
    #[command(subcommand)]
    Criterion(CriterionCmd),
    /// Rational approximation in fixed-point Grassmannians.
    #[command(subcommand)]
    Grassmann(GrassmannCmd),
    /// Perturbation search for nearby real period matrices with subvarieties.
    #[command(subcommand)]
    Search(SearchCmd),
}

#[derive(Debug, Args)]
pub struct PointArg {
    /// Siegel point as JSON {"g", "mode", "X", "Y"}; `-` reads stdin.
    #[arg(long = "Z", value_name = "FILE")]
    pub z: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum SiegelCmd {
    /// Check symmetry of X, Y and positive definiteness of Y.
    Validate(PointArg),
    /// The complex structure J on homology and its Riemann relations.
    Jmat(PointArg),
    /// Apply a symplectic integer matrix: Z ↦ (AZ + B)(CZ + D)⁻¹.
    Act {
        #[command(flatten)]
        point: PointArg,
        #[arg(long, value_name = "FILE")]
        gamma: PathBuf,
    },
    /// The involution Z ↦ M − conj(Z).
    Tau {
        #[command(flatten)]
        point: PointArg,
        #[arg(long = "M", value_name = "FILE")]
        m: PathBuf,
    },
    /// Fixed-locus test and the nearest fixed point.
    Fix {
        #[command(flatten)]
        point: PointArg,
        #[arg(long = "M", value_name = "FILE")]
        m: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum AtlasCmd {
    /// Types (alpha, lambda) with normal matrices M and involutions T.
    Abelian {
        #[arg(long)]
        g: usize,
    },
    /// Topological types (epsilon, k) of real curves.
    Curves {
        #[arg(long)]
        g: usize,
    },
    /// Type of a symmetric integer matrix M.
    Classify {
        #[arg(long = "M", value_name = "FILE")]
        m: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum SubCmd {
    /// Certify a rational plane against J and T.
    Check {
        #[command(flatten)]
        point: PointArg,
        #[arg(long = "T", value_name = "FILE")]
        t: PathBuf,
        /// Basis of the plane as columns of a 2g × 2k matrix.
        #[arg(long = "L", value_name = "FILE")]
        l: PathBuf,
    },
    /// Enumerate small-height candidate planes at an exact point.
    Search {
        #[command(flatten)]
        point: PointArg,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        height: u32,
        /// Also require stability under this involution.
        #[arg(long = "T", value_name = "FILE")]
        t: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CriterionCmd {
    /// Condition 1 and the E_k condition for a subspace W.
    Check {
        /// Tensor q[i][j][c] as nested arrays.
        #[arg(long, value_name = "FILE", required_unless_present = "curve", conflicts_with = "curve")]
        q: Option<PathBuf>,
        /// Plane curve {"degree", "terms"}; q is its cup-product tensor.
        #[arg(long, value_name = "FILE")]
        curve: Option<PathBuf>,
        /// Skip the smoothness check for --curve.
        #[arg(long, requires = "curve")]
        assume_smooth: bool,
        /// g × k matrix whose columns span W.
        #[arg(long = "W", value_name = "FILE")]
        w: PathBuf,
        /// Hermitian polarization on C^g; the identity when omitted.
        #[arg(long = "E", value_name = "FILE")]
        e: Option<PathBuf>,
    },
    /// Search for a witness W on the Fermat curve of degree d.
    Fermat {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum GrassmannCmd {
    /// Rational F-stable plane near a real F-stable plane.
    Approx {
        /// Rational involution F.
        #[arg(long = "F", value_name = "FILE")]
        f: PathBuf,
        /// Real plane as an n × r float matrix of column vectors.
        #[arg(long = "L", value_name = "FILE")]
        l: PathBuf,
        /// Denominator bound; overrides --denom-bound.
        #[arg(long)]
        denom: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SearchCmd {
    /// Search near one fixed-locus point.
    Run {
        #[command(flatten)]
        point: PointArg,
        /// Real structure type as `alpha,lambda`.
        #[arg(long = "type", value_name = "ALPHA,LAMBDA", value_parser = parse_type)]
        ty: (u8, usize),
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Displacement budget.
        #[arg(long, default_value_t = 1e-2)]
        eps: f64,
    },
    /// Success rates over seeded random fixed-locus points.
    Sample {
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long = "type", value_name = "ALPHA,LAMBDA", value_parser = parse_type)]
        ty: (u8, usize),
        #[arg(long, default_value_t = 50)]
        n: usize,
        /// Comma-separated displacement budgets.
        #[arg(long, value_delimiter = ',', default_values_t = [1e-2, 5e-2])]
        eps: Vec<f64>,
        /// Write the per-sample rows as CSV instead of the JSON table.
        #[arg(long)]
        csv: bool,
    },
}

fn parse_type(s: &str) -> Result<(u8, usize), String> {
    let (a, l) = s.split_once(',').ok_or_else(|| format!("expected ALPHA,LAMBDA, got {s:?}"))?;
    let a = a.trim().parse::<u8>().map_err(|e| format!("alpha: {e}"))?;
    let l = l.trim().parse::<usize>().map_err(|e| format!("lambda: {e}"))?;
    Ok((a, l))
}
