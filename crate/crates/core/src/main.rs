use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use opmeans::instances::{EigRange, InstanceSpec};
use opmeans::matrix::{
    hadamard_product, matrix_from_json, matrix_to_json, mean, tensor_product, HermitianMatrix,
    HpdMatrix,
};
use opmeans::scalar::{
    closed_form_weighted_constant, dual_descriptor, geometric_path_closed_form, lee_constant,
    path_composition_weight, reverse_constants, theorem25_constants, MeanDescriptor, MeanKind,
    ReverseConstants, SpectralBounds,
};
use opmeans::verify::{run_suite, DaykinPair, SuiteConfig, SuiteKind, TolerancePolicy};
use opmeans::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "opmeans",
    version,
    about = "Operator means, reverse constants and Loewner-order checks",
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the secant coefficients and reverse constants of a mean on [m, M].
    Constants(ConstantsArgs),
    /// Run a verification suite over seeded random instances.
    Verify(VerifyArgs),
    /// Apply a matrix operation to matrices read from JSON files.
    Eval(EvalArgs),
    /// Write the matrices of a random instance to JSON files.
    Gen(GenArgs),
}

#[derive(Args, Clone)]
struct MeanArgs {
    /// arithmetic, geometric, harmonic or power_path.
    #[arg(long)]
    mean: Option<String>,
    /// Weight on the second argument.
    #[arg(long)]
    alpha: Option<f64>,
    /// Power-path exponent in [-1, 1].
    #[arg(long)]
    r: Option<f64>,
    /// Power-path weight (also the path parameter of the path suites).
    #[arg(long)]
    t: Option<f64>,
}

impl MeanArgs {
    fn descriptor(&self) -> Result<Option<MeanDescriptor>, Error> {
        let Some(kind) = self.mean.as_deref() else {
            return Ok(None);
        };
        let w = self.alpha.unwrap_or(0.5);
        let desc = match kind {
            "arithmetic" => MeanDescriptor::arithmetic(w)?,
            "geometric" => MeanDescriptor::geometric(w)?,
            "harmonic" => MeanDescriptor::harmonic(w)?,
            "power_path" | "power-path" | "power" => {
                let r = self
                    .r
                    .ok_or_else(|| Error::Precondition("power_path needs --r".into()))?;
                MeanDescriptor::power_path(r, self.t.or(self.alpha).unwrap_or(0.5))?
            }
            other => return Err(Error::Precondition(format!("unknown mean {other:?}"))),
        };
        Ok(Some(desc))
    }
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long = "m", default_value_t = 1.0)]
    m: f64,
    #[arg(long = "M", default_value_t = 4.0)]
    big_m: f64,
}

impl BoundsArgs {
    fn bounds(&self) -> Result<SpectralBounds, Error> {
        SpectralBounds::new(self.m, self.big_m)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ConstantsArgs {
    #[command(flatten)]
    mean: MeanArgs,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// Reflected-path mode: weight s between t and 1 - t.
    #[arg(long)]
    s: Option<f64>,
    /// Reflected-path mode: composition weight in [0, 1].
    #[arg(long)]
    s0: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[command(flatten)]
    mean: MeanArgs,
    #[command(flatten)]
    bounds: BoundsArgs,
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    s0: Option<f64>,
    /// Daykin pair for scalar_daykin_chain: callebaut (with --s) or milne.
    #[arg(long)]
    pair: Option<String>,
    /// Matrix sizes, cycled over trials.
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4, 6])]
    dim: Vec<usize>,
    /// Number of pairs per trial, cycled over trials.
    #[arg(long = "n-terms", value_delimiter = ',', default_values_t = [1usize, 2, 5])]
    n_terms: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    reps: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    complex: bool,
    /// Draw instances from a shared eigenbasis.
    #[arg(long)]
    commuting: bool,
    #[arg(long = "eig-lo", default_value_t = 0.5)]
    eig_lo: f64,
    #[arg(long = "eig-hi", default_value_t = 2.0)]
    eig_hi: f64,
    #[arg(long = "loewner-tol")]
    loewner_tol: Option<f64>,
    #[arg(long = "scalar-tol")]
    scalar_tol: Option<f64>,
    #[arg(long = "identity-tol")]
    identity_tol: Option<f64>,
    /// Report file; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalOp {
    Mean,
    Dual,
    Tensor,
    Hadamard,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct EvalArgs {
    #[arg(value_enum)]
    op: EvalOp,
    #[command(flatten)]
    mean: MeanArgs,
    /// Two matrix JSON files.
    #[arg(num_args = 2, required = true)]
    files: Vec<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct GenArgs {
    /// InstanceSpec JSON file; overrides the individual flags.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long = "n-terms", default_value_t = 1)]
    n_terms: usize,
    #[command(flatten)]
    bounds: BoundsArgs,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    complex: bool,
    /// Build a commuting family instead of independent pairs.
    #[arg(long)]
    commuting: bool,
    #[arg(long = "out-dir")]
    out_dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Constants(a) => cmd_constants(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Eval(a) => cmd_eval(&a),
        Command::Gen(a) => cmd_gen(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn print_constants(c: &ReverseConstants, extra: &[(&str, f64)], format: Format) {
    let mut rows = vec![
        ("mu", c.mu),
        ("nu", c.nu),
        ("gamma", c.gamma),
        ("zeta", c.zeta),
        ("sqrt_gamma_zeta", c.sqrt_gamma_zeta),
    ];
    rows.extend_from_slice(extra);
    match format {
        Format::Json => {
            let map: serde_json::Map<_, _> = rows.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            println!("{}", serde_json::Value::Object(map));
        }
        Format::Csv => {
            println!("{}", rows.iter().map(|(k, _)| *k).collect::<Vec<_>>().join(","));
            println!("{}", rows.iter().map(|(_, v)| v.to_string()).collect::<Vec<_>>().join(","));
        }
        Format::Text => {
            for (k, v) in rows {
                println!("{k:<16} {v}");
            }
        }
    }
}

fn cmd_constants(a: &ConstantsArgs) -> Result<u8, Error> {
    let b = a.bounds.bounds()?;
    if a.s.is_some() || a.s0.is_some() {
        let (r, t) = match (a.mean.r, a.mean.t) {
            (Some(r), Some(t)) => (r, t),
            _ => return Err(Error::Precondition("--s/--s0 need --r and --t".into())),
        };
        let s0 = match (a.s, a.s0) {
            (Some(s), None) => path_composition_weight(t, s)?,
            (None, Some(s0)) => s0,
            _ => return Err(Error::Precondition("give either --s or --s0".into())),
        };
        let c = theorem25_constants(r, t, s0, b)?;
        let mut extra = vec![("s0", s0), ("s", s0 * t + (1.0 - s0) * (1.0 - t))];
        if r == 0.0 {
            extra.push(("closed_form", geometric_path_closed_form(t, s0, b)?));
        }
        print_constants(&c, &extra, a.format);
        return Ok(0);
    }
    let desc = a
        .mean
        .descriptor()?
        .ok_or_else(|| Error::Precondition("--mean is required".into()))?;
    let c = reverse_constants(&desc, b)?;
    let mut extra = vec![("lee", lee_constant(b))];
    if let MeanKind::Geometric { w } = desc.kind() {
        extra.push(("closed_form", closed_form_weighted_constant(*w, b)?));
    }
    print_constants(&c, &extra, a.format);
    Ok(0)
}

fn parse_pair(text: &str, s: Option<f64>) -> Result<DaykinPair, Error> {
    match text {
        "milne" => Ok(DaykinPair::Milne),
        "callebaut" => s
            .map(|s| DaykinPair::Callebaut { s })
            .ok_or_else(|| Error::Precondition("the callebaut pair needs --s".into())),
        other => Err(Error::Precondition(format!("unknown pair {other:?}"))),
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8, Error> {
    let suite: SuiteKind = a.suite.parse()?;
    let mut config = SuiteConfig::new(suite);
    config.dims = a.dim.clone();
    config.n_terms = a.n_terms.clone();
    config.bounds = a.bounds.bounds()?;
    config.seed = a.seed;
    config.reps = a.reps;
    config.complex = a.complex;
    config.commuting = a.commuting;
    config.eig_range = EigRange::new(a.eig_lo, a.eig_hi)?;
    config.mean = a.mean.descriptor()?;
    if config.mean.is_none() {
        config.r = a.mean.r;
        config.t = a.mean.t;
    }
    config.s = a.s;
    config.s0 = a.s0;
    if let Some(p) = &a.pair {
        config.pair = Some(parse_pair(p, a.s)?);
        config.s = None;
    }
    let defaults = TolerancePolicy::default();
    config.policy = TolerancePolicy {
        loewner_rel: a.loewner_tol.unwrap_or(defaults.loewner_rel),
        scalar_rel: a.scalar_tol.unwrap_or(defaults.scalar_rel),
        identity_rel: a.identity_tol.unwrap_or(defaults.identity_rel),
        ..defaults
    };

    let report = run_suite(&config)?;
    let text = match a.format {
        Format::Csv => report.to_csv(),
        _ => report.to_json() + "\n",
    };
    match &a.output {
        Some(path) => fs::write(path, text).map_err(|e| io_error(path, e))?,
        None => print!("{text}"),
    }
    eprintln!(
        "{}: {} passed, {} failed",
        report.suite, report.summary.n_pass, report.summary.n_fail
    );
    Ok(if report.all_hold() { 0 } else { EXIT_FAIL })
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Format(format!("{}: {e}", path.display()))
}

fn read_matrix(path: &Path) -> Result<HermitianMatrix, Error> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    matrix_from_json(&text)
}

fn cmd_eval(a: &EvalArgs) -> Result<u8, Error> {
    let x = read_matrix(&a.files[0])?;
    let y = read_matrix(&a.files[1])?;
    let out = match a.op {
        EvalOp::Tensor => tensor_product(&x, &y)?,
        EvalOp::Hadamard => hadamard_product(&x, &y)?,
        EvalOp::Mean | EvalOp::Dual => {
            let desc = a
                .mean
                .descriptor()?
                .ok_or_else(|| Error::Precondition("--mean is required".into()))?;
            let desc = match a.op {
                EvalOp::Dual => dual_descriptor(&desc),
                _ => desc,
            };
            let (x, y) = (HpdMatrix::new(x)?, HpdMatrix::new(y)?);
            mean(&x, &y, &desc)?.into_hermitian()
        }
    };
    println!("{}", matrix_to_json(&out));
    Ok(0)
}

fn cmd_gen(a: &GenArgs) -> Result<u8, Error> {
    let spec = match &a.spec {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
            InstanceSpec::from_json(&text)?
        }
        None => {
            let mut spec = InstanceSpec::new(a.dim, a.n_terms, a.bounds.bounds()?, a.seed)?;
            spec.complex = a.complex;
            spec
        }
    };
    let pairs = if a.commuting {
        spec.commuting_family()?.pairs
    } else {
        spec.generate()?
    };
    fs::create_dir_all(&a.out_dir).map_err(|e| io_error(&a.out_dir, e))?;
    let write = |name: String, text: String| -> Result<(), Error> {
        let path = a.out_dir.join(name);
        fs::write(&path, text + "\n").map_err(|e| io_error(&path, e))?;
        println!("{}", path.display());
        Ok(())
    };
    write("spec.json".into(), spec.to_json())?;
    for (j, (x, y)) in pairs.iter().enumerate() {
        write(format!("A{j}.json"), matrix_to_json(x))?;
        write(format!("B{j}.json"), matrix_to_json(y))?;
    }
    Ok(0)
}
