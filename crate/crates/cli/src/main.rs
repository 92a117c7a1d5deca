mod output;
mod spec;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fermion_channels::capacity::capacity_report;
use fermion_channels::{MultiplierChannel, OptimizerConfig};

use crate::output::{fmt_sig12, render_json, render_table};
use crate::spec::ChannelSpec;

/// Radial multiplier channels on fermion algebras: capacities, cb entropies,
/// cb norms and oracle verification.
#[derive(Parser)]
#[command(name = "fchan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the capacity report for one channel.
    Analyze(AnalyzeArgs),
    /// Cross-check closed forms against numerical oracles and action identities.
    Verify(VerifyArgs),
    /// Capacity table over a parameter grid, as CSV.
    Sweep(SweepArgs),
    /// Dump the symbol function over the whole hypercube.
    Walsh(WalshArgs),
}

/// Channel selection shared by all subcommands; exactly one of
/// `--radial`, `--dephasing`, `--ou`, `--tensor`.
#[derive(Args)]
struct ChannelArgs {
    /// Radial profile phi(0),...,phi(n) as a comma-separated list.
    #[arg(long, value_name = "csv")]
    radial: Option<String>,

    /// Hypercube dimension for --radial.
    #[arg(long, value_name = "int")]
    n: Option<usize>,

    /// Dephasing channel with flip probability t (n = 2).
    #[arg(long, value_name = "t")]
    dephasing: Option<f64>,

    /// Ornstein-Uhlenbeck semigroup element: dimension and time.
    #[arg(long, num_args = 2, value_names = ["n", "t"])]
    ou: Option<Vec<String>>,

    /// Tensor product of two channel expressions, e.g.
    /// `dephasing(0.25)` `ou(4,0.5)` `radial(2;1,0,0)`.
    #[arg(long, num_args = 2, value_names = ["specA", "specB"])]
    tensor: Option<Vec<String>>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    channel: ChannelArgs,

    /// Exponents for the cb L^1 -> L^p norms ("inf" allowed).
    #[arg(long, value_name = "csv", default_value = "2")]
    p: String,

    /// Output format.
    #[arg(long, value_name = "json|table", default_value = "json")]
    format: String,

    /// Restrict table output to these report fields; requesting a
    /// channel-only field for a non-channel is an error.
    #[arg(long, value_name = "csv")]
    fields: Option<String>,

    /// Write the report to a file instead of stdout.
    #[arg(long, value_name = "path")]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    channel: ChannelArgs,

    /// RNG seed for the optimization oracles.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Number of optimizer restarts.
    #[arg(long, default_value_t = 32)]
    restarts: usize,

    /// Write the report to a file instead of stdout.
    #[arg(long, value_name = "path")]
    out: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    /// Channel family to sweep.
    #[arg(long, value_name = "dephasing|ou")]
    family: String,

    /// Grid of t values, comma-separated.
    #[arg(long, value_name = "csv")]
    grid: String,

    /// Hypercube dimension (ou family; dephasing is fixed at n = 2).
    #[arg(long, default_value_t = 2)]
    n: usize,

    /// Append a numerically optimized min output entropy column.
    #[arg(long)]
    numeric: bool,

    /// RNG seed for the --numeric column.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Number of optimizer restarts for the --numeric column.
    #[arg(long, default_value_t = 8)]
    restarts: usize,

    /// Write the CSV to a file instead of stdout.
    #[arg(long, value_name = "path")]
    out: Option<String>,
}

#[derive(Args)]
struct WalshArgs {
    #[command(flatten)]
    channel: ChannelArgs,

    /// Write the table to a file instead of stdout.
    #[arg(long, value_name = "path")]
    out: Option<String>,
}

/// Failure modes mapped onto process exit codes.
enum Failure {
    /// exit 1: an oracle or identity check failed
    Verification,
    /// exit 2: malformed input
    Parse(String),
    /// exit 3: well-formed but unsatisfiable request
    Invalid(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::Parse(_) => 2,
            Failure::Invalid(_) => 3,
        }
    }
}

fn parse_csv_f64(s: &str, what: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|v| {
            let v = v.trim();
            if v.eq_ignore_ascii_case("inf") {
                Ok(f64::INFINITY)
            } else {
                v.parse::<f64>()
                    .map_err(|e| Failure::Parse(format!("bad {what} value `{v}`: {e}")))
            }
        })
        .collect()
}

impl ChannelArgs {
    fn resolve(&self) -> Result<ChannelSpec, Failure> {
        let mut specs: Vec<ChannelSpec> = Vec::new();
        if let Some(radial) = &self.radial {
            let n = self
                .n
                .ok_or_else(|| Failure::Parse("--radial requires --n".into()))?;
            let phi = parse_csv_f64(radial, "phi")?;
            specs.push(ChannelSpec::Radial { n, phi });
        }
        if let Some(t) = self.dephasing {
            specs.push(ChannelSpec::Dephasing { t });
        }
        if let Some(args) = &self.ou {
            let n: usize = args[0]
                .parse()
                .map_err(|e| Failure::Parse(format!("bad --ou n: {e}")))?;
            let t: f64 = args[1]
                .parse()
                .map_err(|e| Failure::Parse(format!("bad --ou t: {e}")))?;
            specs.push(ChannelSpec::Ou { n, t });
        }
        if let Some(args) = &self.tensor {
            let a: ChannelSpec = args[0].parse().map_err(Failure::Parse)?;
            let b: ChannelSpec = args[1].parse().map_err(Failure::Parse)?;
            specs.push(ChannelSpec::Tensor(Box::new(a), Box::new(b)));
        }
        match specs.len() {
            1 => Ok(specs.pop().unwrap()),
            0 => Err(Failure::Parse(
                "select a channel: --radial/--n, --dephasing, --ou or --tensor".into(),
            )),
            _ => Err(Failure::Parse("more than one channel selected".into())),
        }
    }

    fn build(&self) -> Result<(ChannelSpec, MultiplierChannel), Failure> {
        let spec = self.resolve()?;
        let ch = spec
            .build()
            .map_err(|e| Failure::Invalid(e.to_string()))?;
        Ok((spec, ch))
    }
}

fn emit(out: &Option<String>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Invalid(format!("cannot write {path}: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Invalid(format!("cannot write stdout: {e}")))
        }
    }
}

const CHANNEL_ONLY_FIELDS: &[&str] = &[
    "segal_entropy_f",
    "c_ea",
    "hcb_min_normalized",
    "hcb_min_matrix_trace",
    "q1_lower_bound",
];

const ALL_FIELDS: &[&str] = &[
    "n",
    "N",
    "cp",
    "tp",
    "symbol_kind",
    "segal_entropy_f",
    "c_ea",
    "hcb_min_normalized",
    "hcb_min_matrix_trace",
    "q1_lower_bound",
    "lp_norms",
];

fn cmd_analyze(args: &AnalyzeArgs) -> Result<(), Failure> {
    let (_, ch) = args.channel.build()?;
    let p_list = parse_csv_f64(&args.p, "p")?;
    for &p in &p_list {
        if !(p > 1.0) {
            return Err(Failure::Invalid(format!("cb norm exponent must be > 1, got {p}")));
        }
    }
    let report =
        capacity_report(&ch, &p_list).map_err(|e| Failure::Invalid(e.to_string()))?;

    let fields: Option<Vec<String>> = match &args.fields {
        Some(list) => {
            let fields: Vec<String> =
                list.split(',').map(|f| f.trim().to_string()).collect();
            for f in &fields {
                if !ALL_FIELDS.contains(&f.as_str()) {
                    return Err(Failure::Parse(format!("unknown field `{f}`")));
                }
                if CHANNEL_ONLY_FIELDS.contains(&f.as_str())
                    && report.segal_entropy_f.is_none()
                {
                    return Err(Failure::Invalid(format!(
                        "field `{f}` requires a quantum channel (cp={}, tp={})",
                        report.cp, report.tp
                    )));
                }
                if (f == "N" || f == "hcb_min_matrix_trace" || f == "q1_lower_bound")
                    && report.matrix_dim.is_none()
                {
                    return Err(Failure::Invalid(format!(
                        "field `{f}` requires an even-dimension matrix realization"
                    )));
                }
            }
            Some(fields)
        }
        None => None,
    };

    let text = match args.format.as_str() {
        "json" => render_json(&report),
        "table" => render_table(&report, fields.as_deref()),
        other => return Err(Failure::Parse(format!("unknown format `{other}`"))),
    };
    emit(&args.out, &text)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let (spec, ch) = args.channel.build()?;
    if ch.n() % 2 != 0 {
        return Err(Failure::Invalid(format!(
            "verify needs an even hypercube dimension, got n={}",
            ch.n()
        )));
    }
    let cfg = OptimizerConfig {
        seed: args.seed,
        restarts: args.restarts,
        ..OptimizerConfig::default()
    };
    let (text, all_pass) =
        verify::run_checks(&spec, &ch, &cfg).map_err(|e| Failure::Invalid(e.to_string()))?;
    emit(&args.out, &text)?;
    if all_pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), Failure> {
    let grid = parse_csv_f64(&args.grid, "grid")?;
    if grid.is_empty() {
        return Err(Failure::Parse("empty grid".into()));
    }
    let make = |t: f64| -> fermion_channels::Result<MultiplierChannel> {
        match args.family.as_str() {
            "dephasing" => MultiplierChannel::dephasing(t),
            "ou" => MultiplierChannel::ou_semigroup(args.n, t),
            _ => unreachable!(),
        }
    };
    if !matches!(args.family.as_str(), "dephasing" | "ou") {
        return Err(Failure::Parse(format!(
            "unknown family `{}` (expected dephasing or ou)",
            args.family
        )));
    }
    let cfg = OptimizerConfig {
        seed: args.seed,
        restarts: args.restarts,
        ..OptimizerConfig::default()
    };
    let rows = fermion_channels::parallel::map_indexed(grid.len(), |i| -> Result<String, String> {
        let t = grid[i];
        let ch = make(t).map_err(|e| e.to_string())?;
        let c_ea = fermion_channels::capacity::c_ea(&ch).map_err(|e| e.to_string())?;
        let hcb =
            fermion_channels::capacity::hcb_min_matrix_trace(&ch).map_err(|e| e.to_string())?;
        let q1 =
            fermion_channels::capacity::q1_lower_bound(&ch).map_err(|e| e.to_string())?;
        let mut row = format!(
            "{t},{},{},{}",
            fmt_sig12(c_ea),
            fmt_sig12(hcb),
            fmt_sig12(q1)
        );
        if args.numeric {
            let hmin = fermion_channels::oracle::min_output_entropy_numeric(&ch, &cfg)
                .map_err(|e| e.to_string())?;
            row.push(',');
            row.push_str(&fmt_sig12(hmin));
        }
        Ok(row)
    });
    let mut text = String::from("t,c_ea,hcb_min_tr,q1_lb");
    if args.numeric {
        text.push_str(",hmin_numeric");
    }
    text.push('\n');
    for row in rows {
        text.push_str(&row.map_err(Failure::Invalid)?);
        text.push('\n');
    }
    emit(&args.out, &text)
}

fn cmd_walsh(args: &WalshArgs) -> Result<(), Failure> {
    let (_, ch) = args.channel.build()?;
    let n = ch.n();
    if n > 20 {
        return Err(Failure::Invalid(format!("walsh dump limited to n <= 20, got {n}")));
    }
    let mut text = String::from("mask,signs,f\n");
    for (point, v) in ch.f().values().iter().enumerate() {
        let signs: String = (0..n)
            .map(|j| if point >> j & 1 == 1 { '-' } else { '+' })
            .collect();
        let value = if v.im.abs() < 1e-12 {
            fmt_sig12(v.re)
        } else {
            format!("{}{:+}i", fmt_sig12(v.re), v.im)
        };
        text.push_str(&format!("{point},{signs},{value}\n"));
    }
    emit(&args.out, &text)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Walsh(args) => cmd_walsh(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verification => eprintln!("verification failed"),
                Failure::Parse(msg) => eprintln!("error: {msg}"),
                Failure::Invalid(msg) => eprintln!("invalid request: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}
