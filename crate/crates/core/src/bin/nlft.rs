//! Command-line front end: transforms, inverses, membership checks, seeded
//! instance generation, oracle cross-checks, and CSV sampling over JSON
//! files.
//!
//! Exit codes: 0 on success, 2 when a mathematically valid input is not in
//! the transform's image (or not constant-mass), 1 on I/O and validation
//! errors.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nlft_core::error::Error;
use nlft_core::su2::QMat;
use nlft_core::{complexity, delta, dual, euler, gen, json, oracle, Tolerances};

#[derive(Parser)]
#[command(
    name = "nlft",
    version,
    about = "Discrete nonlinear Fourier transforms, their layer-peeling inverses, and brute-force oracles",
    after_help = "Tolerances fall back to the NLFT_TOL_EPS_F, NLFT_TOL_EPS_C, NLFT_TOL_EPS_PEEL \
                  and NLFT_TOL_EPS_MEMBER environment variables when flags are absent."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TolArgs {
    /// Frequency-merge tolerance (default 1e-9).
    #[arg(long, value_name = "EPS")]
    eps_f: Option<f64>,
    /// Coefficient-prune tolerance (default 1e-12).
    #[arg(long, value_name = "EPS")]
    eps_c: Option<f64>,
    /// Minimum diagonal read-off magnitude per peel step (default 1e-8).
    #[arg(long, value_name = "EPS")]
    eps_peel: Option<f64>,
    /// Identity-residual tolerance for membership (default 1e-7).
    #[arg(long, value_name = "EPS")]
    eps_member: Option<f64>,
}

impl TolArgs {
    fn resolve(&self) -> Result<Tolerances, CliError> {
        let defaults = Tolerances::default();
        Ok(Tolerances {
            eps_f: pick(self.eps_f, "NLFT_TOL_EPS_F", defaults.eps_f)?,
            eps_c: pick(self.eps_c, "NLFT_TOL_EPS_C", defaults.eps_c)?,
            eps_peel: pick(self.eps_peel, "NLFT_TOL_EPS_PEEL", defaults.eps_peel)?,
            eps_member: pick(self.eps_member, "NLFT_TOL_EPS_MEMBER", defaults.eps_member)?,
        })
    }
}

fn pick(flag: Option<f64>, env: &str, default: f64) -> Result<f64, CliError> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match std::env::var(env) {
        Ok(s) => s
            .parse()
            .map_err(|_| CliError::Usage(format!("{env} is not a number: {s:?}"))),
        Err(_) => Ok(default),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    /// Dirac comb with inverse-eligible weights.
    Delta,
    /// Uniform-grid complex signal.
    Signal,
    /// Gap vector for a constant-mass configuration.
    Constmass,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a Dirac comb; emits the reduced transform unless --full.
    ForwardD {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Emit the unreduced transform (leading phase kept).
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Recover a Dirac comb from its reduced transform (--full to feed the
    /// unreduced one).
    InverseD {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Input carries the leading phase; reduce it before inverting.
        #[arg(long)]
        full: bool,
        /// Peel-step budget; defaults to a bound read off the term count.
        #[arg(long)]
        n_max: Option<usize>,
        /// Divide recovered weights by the pole gaps (gap-weighted combs).
        #[arg(long)]
        weighted: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Transform a uniform-grid signal.
    ForwardE {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recover a signal from its sampled transform.
    InverseE {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Test whether a reduced comb transform with N poles is in the image.
    CheckD {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short = 'n', long)]
        n: usize,
        /// Input carries the leading phase; reduce it before checking.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Test whether a sampled grid is in the image of the signal transform.
    CheckE {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Sample the reduced dual transform of a gap vector on its integer grid.
    DualForward {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recover the gap vector of a constant-mass configuration from samples.
    DualInverse {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Exact stratum size C(l, k-1)·C(N-l-1, k-1).
    Strata {
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short, long)]
        k: usize,
        #[arg(short, long)]
        l: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Operation-count comparison of the two inversion strategies.
    Complexity {
        #[arg(short = 'n', long)]
        n: usize,
    },
    /// Sample an exponential-polynomial matrix on a z grid as CSV.
    Sample {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        z_min: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 10.0)]
        z_max: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Deterministic random instance generation.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Pole or sample count (delta, signal).
        #[arg(short = 'n', long)]
        n: Option<usize>,
        /// Gap count (constmass).
        #[arg(short = 'm', long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Brute-force cross-checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Subset expansion of the grid transform vs the factor product.
    DysonE {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Subset expansion of the comb transform vs the reduced product.
    DysonD {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Exact transform of the step approximation at one spectral point.
    Step {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(short, long, allow_hyphen_values = true)]
        z: f64,
    },
    /// Gauge relation at an integer spectral point.
    Gauge {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(short = 'n', long)]
        n: i64,
    },
    /// Enumerate a stratum of strictly increasing index tuples.
    Enum {
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short, long)]
        d: usize,
        #[arg(short, long)]
        l: i64,
        /// Print every tuple, not just the count.
        #[arg(long)]
        list: bool,
    },
}

enum CliError {
    Usage(String),
    Io(String),
    Math(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => write!(f, "{m}"),
            CliError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(Error::NotInImage(_)) | CliError::Math(Error::NotConstMass(_)) => 2,
            _ => 1,
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn derived_peel_budget(m: &nlft_core::exppoly::ExpMat) -> usize {
    let terms = m.b.len();
    if terms == 0 {
        0
    } else {
        (terms as f64).log2().ceil() as usize + 1
    }
}

fn qmat_json(q: &QMat) -> String {
    format!(
        "{{\"a\": {{\"re\": {}, \"im\": {}}}, \"b\": {{\"re\": {}, \"im\": {}}}}}",
        q.a.re, q.a.im, q.b.re, q.b.im
    )
}

fn run() -> Result<(), CliError> {
    match Cli::parse().command {
        Command::ForwardD {
            input,
            output,
            full,
            tol,
        } => {
            let tol = tol.resolve()?;
            let dist = json::delta_from_str(&read_input(&input)?)?;
            let m = delta::forward_with(&dist, tol.eps_f, tol.eps_c);
            let m = if full { m } else { delta::reduce(&m) };
            emit(&output, &json::expmat_to_string(&m))
        }
        Command::InverseD {
            input,
            output,
            full,
            n_max,
            weighted,
            tol,
        } => {
            let tol = tol.resolve()?;
            let m = json::expmat_from_str(&read_input(&input)?, &tol)?;
            let m = if full { delta::reduce(&m) } else { m };
            let budget = n_max.unwrap_or_else(|| derived_peel_budget(&m));
            let dist = if weighted {
                delta::inverse_weighted(&m, budget, &tol)?
            } else {
                delta::inverse(&m, budget, &tol)?
            };
            emit(&output, &json::delta_to_string(&dist))
        }
        Command::ForwardE { input, output } => {
            let signal = json::signal_from_str(&read_input(&input)?)?;
            emit(&output, &json::grid_to_string(&euler::forward(&signal)))
        }
        Command::InverseE { input, output, tol } => {
            let tol = tol.resolve()?;
            let grid = json::grid_from_str(&read_input(&input)?)?;
            let signal = euler::inverse(&grid, &tol)?;
            emit(&output, &json::signal_to_string(&signal))
        }
        Command::CheckD {
            input,
            n,
            full,
            tol,
        } => {
            let tol = tol.resolve()?;
            let m = json::expmat_from_str(&read_input(&input)?, &tol)?;
            let m = if full { delta::reduce(&m) } else { m };
            println!("{{\"member\": {}}}", delta::membership(&m, n, &tol));
            Ok(())
        }
        Command::CheckE { input, tol } => {
            let tol = tol.resolve()?;
            let grid = json::grid_from_str(&read_input(&input)?)?;
            println!("{{\"member\": {}}}", euler::membership(&grid, &tol));
            Ok(())
        }
        Command::DualForward { input, output } => {
            let gap = json::gap_from_str(&read_input(&input)?)?;
            let m = gap.len();
            let hat = dual::hat_forward(&gap, &dual::const_mass_points(m))?;
            let samples: Vec<QMat> = (0..m).map(|zeta| hat.eval(zeta as f64)).collect();
            emit(&output, &json::job_to_string(m, &samples))
        }
        Command::DualInverse { input, output, tol } => {
            let tol = tol.resolve()?;
            let (m, samples) = json::job_from_str(&read_input(&input)?)?;
            let gap = dual::inverse_const_mass(&samples, m, &tol)?;
            emit(&output, &json::gap_to_string(&gap))
        }
        Command::Strata { n, k, l, output } => {
            if l >= n.max(1) {
                return Err(CliError::Usage(format!(
                    "l must lie in [0, N-1], got l = {l} for N = {n}"
                )));
            }
            let count = euler::stratum_count(n, k, l);
            let decimal = count.to_string();
            let approx: f64 = decimal.parse().unwrap_or(f64::INFINITY);
            let text = format!(
                "{{\"N\": {n}, \"k\": {k}, \"l\": {l}, \"count\": \"{decimal}\", \"approx\": \"\u{2248}{approx:.1e}\"}}\n"
            );
            emit(&output, &text)?;
            if output.is_some() {
                println!("|D_{}({l})| = {decimal} \u{2248} {approx:.1e}", 2 * k - 1);
            }
            Ok(())
        }
        Command::Complexity { n } => {
            let r = complexity::report(n);
            println!(
                "{{\"N\": {n}, \"full\": {}, \"modified\": {}, \"difference\": {}}}",
                r.full, r.modified, r.difference
            );
            Ok(())
        }
        Command::Sample {
            input,
            output,
            z_min,
            z_max,
            steps,
            tol,
        } => {
            let tol = tol.resolve()?;
            if steps == 0 {
                return Err(CliError::Usage("steps must be positive".into()));
            }
            let m = json::expmat_from_str(&read_input(&input)?, &tol)?;
            let mut csv = String::from("z,re_a,im_a,re_b,im_b\n");
            for i in 0..steps {
                let z = if steps == 1 {
                    z_min
                } else {
                    z_min + (z_max - z_min) * i as f64 / (steps - 1) as f64
                };
                let q = m.eval(z);
                let _ = writeln!(csv, "{z},{},{},{},{}", q.a.re, q.a.im, q.b.re, q.b.im);
            }
            emit(&output, &csv)
        }
        Command::Gen {
            kind,
            n,
            m,
            seed,
            output,
        } => {
            let content = match kind {
                GenKind::Delta => {
                    let n = n.ok_or_else(|| CliError::Usage("--n is required for --kind delta".into()))?;
                    json::delta_to_string(&gen::delta_distribution(n, seed)?)
                }
                GenKind::Signal => {
                    let n = n.ok_or_else(|| CliError::Usage("--n is required for --kind signal".into()))?;
                    json::signal_to_string(&gen::signal(n, seed)?)
                }
                GenKind::Constmass => {
                    let m = m.ok_or_else(|| CliError::Usage("--m is required for --kind constmass".into()))?;
                    json::gap_to_string(&gen::gap_vector(m, seed)?)
                }
            };
            emit(&output, &content)
        }
        Command::Oracle(cmd) => run_oracle(cmd),
    }
}

fn run_oracle(cmd: OracleCommand) -> Result<(), CliError> {
    match cmd {
        OracleCommand::DysonE { input } => {
            let signal = json::signal_from_str(&read_input(&input)?)?;
            let grid = euler::forward(&signal);
            let mut dev: f64 = 0.0;
            for (z, sample) in grid.samples().iter().enumerate() {
                let direct = oracle::dyson_product(&signal, z as i64)?;
                dev = dev.max(direct.max_abs_diff(sample));
            }
            println!("{{\"max_deviation\": {dev:e}}}");
            Ok(())
        }
        OracleCommand::DysonD { input, tol } => {
            let tol = tol.resolve()?;
            let dist = json::delta_from_str(&read_input(&input)?)?;
            let direct = oracle::dyson_delta(&dist)?;
            let fast = delta::reduce(&delta::forward_with(&dist, tol.eps_f, tol.eps_c));
            let dev = direct.max_matched_coeff_dev(&fast, tol.eps_f);
            println!("{{\"max_deviation\": {dev:e}}}");
            Ok(())
        }
        OracleCommand::Step { input, epsilon, z } => {
            let dist = json::delta_from_str(&read_input(&input)?)?;
            let profile = oracle::StepProfile::new(dist, epsilon)?;
            println!("{}", qmat_json(&oracle::step_transform(&profile, z)));
            Ok(())
        }
        OracleCommand::Gauge { input, epsilon, n } => {
            let dist = json::delta_from_str(&read_input(&input)?)?;
            let profile = oracle::StepProfile::new(dist, epsilon)?;
            let (lhs, rhs) = oracle::gauge_check(&profile, n);
            println!(
                "{{\"lhs\": {}, \"rhs\": {}, \"max_deviation\": {:e}}}",
                qmat_json(&lhs),
                qmat_json(&rhs),
                lhs.max_abs_diff(&rhs)
            );
            Ok(())
        }
        OracleCommand::Enum { n, d, l, list } => {
            let tuples = oracle::enumerate_stratum(n, d, l)?;
            println!("{}", tuples.len());
            if list {
                for t in tuples {
                    let parts: Vec<String> = t.iter().map(usize::to_string).collect();
                    println!("({})", parts.join(", "));
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
