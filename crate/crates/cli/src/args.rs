//! Command-line surface. Every value flag is optional here; defaults and the
//! config/environment fallbacks are applied by the resolver.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "phi4", version, about = "Digitized lambda-phi^4 spectra, series, singularities and circuits")]
pub struct Cli {
    /// Flat `key = value` config file (`#` starts a comment).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory [key: out_dir, default: .]
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write a JSON mirror of every CSV [key: format = csv|csv+json]
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel sweeps [key: threads, default: all cores]
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dense or Lanczos eigenvalues of a single site or a chain.
    Spectrum(SpectrumArgs),
    /// Weak- or strong-coupling energy series.
    Series(SeriesArgs),
    /// Radius of convergence from the coefficient slope.
    Radius(RadiusArgs),
    /// Perturbed eigenprojector coefficients and partial sums.
    Projector(ProjectorArgs),
    /// Transition amplitude traces.
    Evolve(EvolveArgs),
    /// Minimum eigenvalue gap over a complex-coupling rectangle.
    Scan(ScanArgs),
    /// Sylvester discriminant polynomial of a parity sector.
    Resultant(ResultantArgs),
    /// Pauli-string decomposition of the qubit Hamiltonian.
    Pauli(PauliArgs),
    /// Nonzero Pauli strings and the circuit depth bound.
    Resources(ResourcesArgs),
    /// First-order Trotter statevector simulation.
    Trotter(TrotterArgs),
    /// Ground-state second-derivative singularity of a chain over hopping values.
    LatticeSweep(LatticeSweepArgs),
    /// Gap scan projected onto the Riemann sphere (Mollweide).
    Riemann(RiemannArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Series(_) => "series",
            Command::Radius(_) => "radius",
            Command::Projector(_) => "projector",
            Command::Evolve(_) => "evolve",
            Command::Scan(_) => "scan",
            Command::Resultant(_) => "resultant",
            Command::Pauli(_) => "pauli",
            Command::Resources(_) => "resources",
            Command::Trotter(_) => "trotter",
            Command::LatticeSweep(_) => "lattice-sweep",
            Command::Riemann(_) => "riemann",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Model {
    /// Single-site truncation [key: n_max]
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Oscillator energy scale [key: omega, default: 1]
    #[arg(long)]
    pub omega: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: Model,
    /// Real part of the coupling [key: lambda, default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Imaginary part of the coupling [key: lambda_im, default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_im: Option<f64>,
    /// even | odd | full [key: sector, default: full]
    #[arg(long)]
    pub sector: Option<String>,
    /// dense | lanczos [key: method, default: dense]
    #[arg(long)]
    pub method: Option<String>,
    /// Number of lattice sites [key: n_sites, default: 1]
    #[arg(long)]
    pub sites: Option<usize>,
    /// Hopping energy [key: kappa, default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<f64>,
    /// periodic | open [key: boundary, default: periodic]
    #[arg(long)]
    pub boundary: Option<String>,
    /// Lowest eigenvalues kept by Lanczos [key: k, default: 4]
    #[arg(long)]
    pub k: Option<usize>,
    /// Lanczos start-vector seed [key: seed]
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub model: Model,
    /// weak | strong [key: domain, default: weak]
    #[arg(long)]
    pub domain: Option<String>,
    /// Unperturbed level [key: level, default: 0]
    #[arg(long)]
    pub level: Option<usize>,
    /// Highest order [key: orders, default: 20]
    #[arg(long)]
    pub orders: Option<usize>,
    /// Working decimal digits of the strong series [key: precision]
    #[arg(long)]
    pub precision: Option<u32>,
}

#[derive(Args, Debug)]
pub struct RadiusArgs {
    #[command(flatten)]
    pub model: Model,
    #[arg(long)]
    pub level: Option<usize>,
    /// Must match the level parity when given [key: sector]
    #[arg(long)]
    pub sector: Option<String>,
    /// Highest order [key: orders, default: 200]
    #[arg(long)]
    pub orders: Option<usize>,
    /// Fit window, two orders [key: fit, default: orders/2 orders]
    #[arg(long, num_args = 2)]
    pub fit: Vec<usize>,
    /// exact | float [key: arithmetic, default: exact]
    #[arg(long)]
    pub arithmetic: Option<String>,
}

#[derive(Args, Debug)]
pub struct ProjectorArgs {
    #[command(flatten)]
    pub model: Model,
    #[arg(long)]
    pub level: Option<usize>,
    /// Highest order [key: order, default: 4]
    #[arg(long)]
    pub order: Option<usize>,
    /// Coupling for the partial sums [key: lambda, default: 0.1]
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub model: Model,
    /// exact | projector | dyson | trotter [key: method, default: exact]
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Perturbative order [key: order, default: 4]
    #[arg(long)]
    pub order: Option<usize>,
    /// Initial basis state [key: from, default: 0]
    #[arg(long)]
    pub from: Option<usize>,
    /// Final basis state [key: to, default: 2]
    #[arg(long)]
    pub to: Option<usize>,
    /// Time window [key: t_range, default: 0 20]
    #[arg(long, num_args = 2)]
    pub t_range: Vec<f64>,
    /// Time samples [key: points, default: 201]
    #[arg(long)]
    pub points: Option<usize>,
    /// Trotter step [key: dt, default: 0.05]
    #[arg(long)]
    pub dt: Option<f64>,
    /// Trotter steps [key: steps, default: 400]
    #[arg(long)]
    pub steps: Option<usize>,
    /// magnitude | lexicographic | given [key: ordering, default: magnitude]
    #[arg(long)]
    pub ordering: Option<String>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[command(flatten)]
    pub model: Model,
    /// [key: sector, default: even]
    #[arg(long)]
    pub sector: Option<String>,
    /// lambda | lambda_tilde [key: plane, default: lambda]
    #[arg(long)]
    pub plane: Option<String>,
    /// Real range [key: re_range]
    #[arg(long, num_args = 2, allow_hyphen_values = true)]
    pub re: Vec<f64>,
    /// Imaginary range [key: im_range]
    #[arg(long, num_args = 2, allow_hyphen_values = true)]
    pub im: Vec<f64>,
    /// Points per axis [key: resolution, default: 400]
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Resample the lowest 1% at quarter spacing [key: refine]
    #[arg(long)]
    pub refine: bool,
    /// Local minima to refine into exceptional-point candidates [key: minima, default: 10]
    #[arg(long)]
    pub minima: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ResultantArgs {
    #[command(flatten)]
    pub model: Model,
    /// even | odd [key: sector, default: even]
    #[arg(long)]
    pub sector: Option<String>,
}

#[derive(Args, Debug)]
pub struct PauliArgs {
    /// Qubits; n_max = 2^nq [key: n_q]
    #[arg(long)]
    pub nq: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Relative drop threshold [key: threshold, default: 1e-12]
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Also write exact radical-class coefficients [key: exact]
    #[arg(long)]
    pub exact: bool,
}

#[derive(Args, Debug)]
pub struct ResourcesArgs {
    /// One or more qubit counts [key: n_q]
    #[arg(long, num_args = 1..)]
    pub nq: Vec<usize>,
    /// Coupling for the accidental-zero check [key: lambda, default: 1/3]
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub threshold: Option<f64>,
}

#[derive(Args, Debug)]
pub struct TrotterArgs {
    #[arg(long)]
    pub nq: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub ordering: Option<String>,
    #[arg(long)]
    pub from: Option<usize>,
}

#[derive(Args, Debug)]
pub struct LatticeSweepArgs {
    #[command(flatten)]
    pub model: Model,
    /// [key: n_sites, default: 4]
    #[arg(long)]
    pub sites: Option<usize>,
    #[arg(long)]
    pub boundary: Option<String>,
    /// Hopping values [key: kappa, default: 0.1,0.2,0.3,0.4,0.5]
    #[arg(long, num_args = 1..)]
    pub kappa: Vec<f64>,
    /// Coupling window of the |E0''| scan [key: lambda_range, default: -0.4 1.2]
    #[arg(long, num_args = 2, allow_hyphen_values = true)]
    pub range: Vec<f64>,
    /// Scan points [key: points, default: 161]
    #[arg(long)]
    pub points: Option<usize>,
    /// Also write (lambda, E0, E0'') curves [key: curve]
    #[arg(long)]
    pub curve: bool,
}

#[derive(Args, Debug)]
pub struct RiemannArgs {
    #[command(flatten)]
    pub model: Model,
    #[arg(long)]
    pub sector: Option<String>,
    #[arg(long)]
    pub plane: Option<String>,
    #[arg(long, num_args = 2, allow_hyphen_values = true)]
    pub re: Vec<f64>,
    #[arg(long, num_args = 2, allow_hyphen_values = true)]
    pub im: Vec<f64>,
    #[arg(long)]
    pub resolution: Option<usize>,
}
