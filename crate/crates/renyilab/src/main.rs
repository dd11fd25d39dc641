//! Command-line front end. Parsing and formatting only; every computation
//! lives in the library.
//!
//! Exit codes: 0 all checks passed / computation done, 1 an inequality check
//! failed or a conjecture counterexample was found (a finding, labeled as
//! such), 2 input or usage error.

use std::f64::consts::LN_2;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use renyilab::bounds::{check_main_theorem, check_tsg_lemma, sharpness_scan};
use renyilab::diffconv::{check_discrete_rs, check_h0_rs, rs_limit_scan};
use renyilab::entropy::{renyi, renyi_two_sided_geo};
use renyilab::majorize::{extremal_tsg, majorizes, majorizes_tsg};
use renyilab::probe::{
    complex_modulus_check, conjecture51_search, default_t_grid, f_second_derivative, f_value,
    k_logconcavity_check, log_k_second_derivative, log_k_value, nonmonotone_counterexample,
};
use renyilab::{BoundReport, Geometric, Order, Pmf, TwoSidedGeo};

#[derive(Parser)]
#[command(
    name = "renyilab",
    about = "Renyi entropies, extremal constructions and inequality checks for integer-supported distributions",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Report entropy-valued outputs in bits instead of nats.
    #[arg(long, global = true)]
    bits: bool,

    /// Output format for machine consumption.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Seed for randomized operations (default: RENYILAB_SEED, then 0).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Tolerance override: tail mass for truncating analytic laws, and the
    /// relative tolerance for `check logconcave`.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

/// A distribution source: exactly one of the three must be given.
#[derive(Args)]
struct InputArgs {
    /// Inline JSON {"offset":<int>,"probs":[..]} or @path to a JSON file.
    #[arg(long)]
    pmf: Option<String>,

    /// Geometric success probability θ in (0,1].
    #[arg(long)]
    geometric: Option<f64>,

    /// Two-sided geometric as "p,q,m".
    #[arg(long)]
    tsg: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rényi entropy of a distribution at one order.
    Entropy {
        #[command(flatten)]
        input: InputArgs,
        /// Order spec: "inf", "0", "1", or a positive decimal.
        #[arg(long)]
        order: String,
    },
    /// Structural predicates of a pmf.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Extremal two-sided geometric majorized by a log-concave pmf.
    Extremal {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Does pmf A majorize pmf B? (arguments like --pmf: inline JSON or @file)
    Majorize { a: String, b: String },
    /// Difference-convolution bound H_a(X-Y) - H_a(X) < log c_rs(a).
    Rs {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        order: String,
    },
    /// Sweeps along the geometric family.
    Scan {
        #[command(subcommand)]
        what: ScanCmd,
    },
    /// Conjecture probes; a found counterexample exits 1 with a witness.
    Probe {
        #[command(subcommand)]
        what: ProbeCmd,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// p_i^2 >= p_{i-1} p_{i+1} at every interior index.
    Logconcave {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Weights non-increasing or non-decreasing.
    Monotone {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Subcommand)]
enum ScanCmd {
    /// Margin of H_a - H_inf < log c(a) along geometrics; shrinks to 0 as θ→0.
    Sharpness {
        #[arg(long)]
        order: String,
        #[arg(long, value_delimiter = ',')]
        thetas: Option<Vec<f64>>,
    },
    /// Gap H_a(X-Y) - H_a(X) along geometrics; approaches log 2 as θ→0.
    Rslimit {
        #[arg(long)]
        order: String,
        #[arg(long, value_delimiter = ',')]
        thetas: Option<Vec<f64>>,
    },
}

#[derive(Subcommand)]
enum ProbeCmd {
    /// Randomized varentropy search over monotone log-concave sequences.
    Search {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 30)]
        max_len: usize,
    },
    /// The fixed non-monotone sequence whose F is not concave.
    Counterexample,
    /// Log-concavity of K(t) = (t+γ)Σ y^(t/γ) plus the complex modulus bound.
    Kcheck {
        /// Positive monotone concave sequence, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

struct Ctx {
    bits: bool,
    format: Format,
    seed: u64,
    tail_tol: f64,
}

impl Ctx {
    /// Entropy-valued outputs rescale under --bits; nothing else does.
    fn scale(&self, nats: f64) -> f64 {
        if self.bits {
            nats / LN_2
        } else {
            nats
        }
    }

    fn unit(&self) -> &'static str {
        if self.bits {
            "bits"
        } else {
            "nats"
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Box<dyn std::error::Error>> {
    let seed = match cli.seed {
        Some(s) => s,
        None => std::env::var("RENYILAB_SEED")
            .ok()
            .map(|s| s.parse::<u64>())
            .transpose()
            .map_err(|_| "RENYILAB_SEED must be an unsigned integer")?
            .unwrap_or(0),
    };
    let ctx = Ctx {
        bits: cli.bits,
        format: cli.format,
        seed,
        tail_tol: cli.tol.unwrap_or(renyilab::tol::TRUNCATION),
    };

    match &cli.cmd {
        Cmd::Entropy { input, order } => cmd_entropy(&ctx, input, order),
        Cmd::Check { what } => cmd_check(&ctx, what, cli.tol),
        Cmd::Extremal { input } => cmd_extremal(&ctx, input),
        Cmd::Majorize { a, b } => cmd_majorize(&ctx, a, b),
        Cmd::Rs { input, order } => cmd_rs(&ctx, input, order),
        Cmd::Scan { what } => cmd_scan(&ctx, what),
        Cmd::Probe { what } => cmd_probe(&ctx, what),
    }
}

/// Parse "--pmf" input: inline JSON or @path.
fn parse_pmf(spec: &str) -> Result<Pmf, Box<dyn std::error::Error>> {
    let text = if let Some(path) = spec.strip_prefix('@') {
        std::fs::read_to_string(path)?
    } else {
        spec.to_string()
    };
    Ok(serde_json::from_str(&text)?)
}

fn parse_tsg(spec: &str) -> Result<TwoSidedGeo, Box<dyn std::error::Error>> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err("expected --tsg p,q,m".into());
    }
    let p: f64 = parts[0].parse()?;
    let q: f64 = parts[1].parse()?;
    let m: i64 = parts[2].parse()?;
    Ok(TwoSidedGeo::new(p, q, m)?)
}

enum Source {
    Pmf(Pmf),
    Geometric(Geometric),
    Tsg(TwoSidedGeo),
}

fn parse_source(input: &InputArgs) -> Result<Source, Box<dyn std::error::Error>> {
    match (&input.pmf, input.geometric, &input.tsg) {
        (Some(spec), None, None) => Ok(Source::Pmf(parse_pmf(spec)?)),
        (None, Some(theta), None) => Ok(Source::Geometric(Geometric::new(theta)?)),
        (None, None, Some(spec)) => Ok(Source::Tsg(parse_tsg(spec)?)),
        _ => Err("give exactly one of --pmf, --geometric, --tsg".into()),
    }
}

fn source_pmf(source: &Source, tail_tol: f64) -> Result<Pmf, Box<dyn std::error::Error>> {
    Ok(match source {
        Source::Pmf(f) => f.clone(),
        Source::Geometric(g) => g.to_pmf(tail_tol).pmf,
        Source::Tsg(g) => g.to_pmf(tail_tol).pmf,
    })
}

fn json_num(v: f64) -> serde_json::Value {
    if v.is_finite() {
        serde_json::json!(v)
    } else if v > 0.0 {
        serde_json::json!("inf")
    } else {
        serde_json::json!("-inf")
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn pass_fail(holds: bool) -> &'static str {
    if holds {
        "PASS"
    } else {
        "FAIL"
    }
}

fn report_json(ctx: &Ctx, rep: &BoundReport) -> serde_json::Value {
    serde_json::json!({
        "lhs": json_num(ctx.scale(rep.lhs)),
        "rhs": json_num(ctx.scale(rep.rhs)),
        "margin": json_num(ctx.scale(rep.margin)),
        "holds": rep.holds,
        "witness": rep.witness,
        "unit": ctx.unit(),
    })
}

fn print_report_table(ctx: &Ctx, rep: &BoundReport) {
    println!(
        "lhs = {:.9} {u}   rhs = {:.9} {u}   margin = {:.3e}   {}",
        ctx.scale(rep.lhs),
        ctx.scale(rep.rhs),
        ctx.scale(rep.margin),
        pass_fail(rep.holds),
        u = ctx.unit(),
    );
    println!("  {}", rep.witness);
}

fn cmd_entropy(
    ctx: &Ctx,
    input: &InputArgs,
    order: &str,
) -> Result<u8, Box<dyn std::error::Error>> {
    let a = Order::parse(order)?;
    let source = parse_source(input)?;
    let ev = match &source {
        Source::Pmf(f) => renyi(f, a),
        Source::Geometric(g) => renyi_two_sided_geo(&g.to_tsg(), a),
        Source::Tsg(g) => renyi_two_sided_geo(g, a),
    };
    let value = ctx.scale(ev.value);
    match ctx.format {
        Format::Json => print_json(&serde_json::json!({
            "order": a.to_string(),
            "value": json_num(value),
            "method": serde_json::to_value(ev.method)?,
            "unit": ctx.unit(),
        })),
        Format::Csv => {
            println!("order,value");
            println!("{a},{value:.16e}");
        }
        Format::Table => println!("H_{a} = {:.6} {}", value, ctx.unit()),
    }
    Ok(0)
}

fn cmd_check(
    ctx: &Ctx,
    what: &CheckCmd,
    tol_override: Option<f64>,
) -> Result<u8, Box<dyn std::error::Error>> {
    let (name, input) = match what {
        CheckCmd::Logconcave { input } => ("log-concave", input),
        CheckCmd::Monotone { input } => ("monotone", input),
    };
    let f = source_pmf(&parse_source(input)?, ctx.tail_tol)?;
    let holds = match what {
        CheckCmd::Logconcave { .. } => {
            f.is_log_concave(tol_override.unwrap_or(renyilab::tol::LOG_CONCAVE_REL))
        }
        CheckCmd::Monotone { .. } => f.is_monotone(),
    };
    match ctx.format {
        Format::Json => print_json(&serde_json::json!({ "check": name, "holds": holds })),
        _ => println!("{name}: {holds}"),
    }
    Ok(u8::from(!holds))
}

fn cmd_extremal(ctx: &Ctx, input: &InputArgs) -> Result<u8, Box<dyn std::error::Error>> {
    let f = source_pmf(&parse_source(input)?, ctx.tail_tol)?;
    let phi = extremal_tsg(&f)?;
    let maj = majorizes_tsg(&f, &phi);
    let h_inf = renyi_two_sided_geo(&phi, Order::Infinity).value;
    match ctx.format {
        Format::Json => print_json(&serde_json::json!({
            "p": phi.p(),
            "q": phi.q(),
            "m": phi.mode(),
            "peak": phi.peak(),
            "h_inf": json_num(ctx.scale(h_inf)),
            "total_mass": phi.total_mass(),
            "majorizes": serde_json::to_value(&maj)?,
            "unit": ctx.unit(),
        })),
        _ => {
            println!(
                "extremal two-sided geometric: p = {:.12}, q = {:.12}, mode = {}",
                phi.p(),
                phi.q(),
                phi.mode()
            );
            println!(
                "peak = {:.12}   H_inf = {:.6} {}   total mass = {:.15}",
                phi.peak(),
                ctx.scale(h_inf),
                ctx.unit(),
                phi.total_mass()
            );
            println!(
                "majorized by input: {} (min margin {:.3e}, mass gap {:.3e})",
                maj.holds, maj.min_margin, maj.total_mass_gap
            );
        }
    }
    Ok(u8::from(!maj.holds))
}

fn cmd_majorize(ctx: &Ctx, a: &str, b: &str) -> Result<u8, Box<dyn std::error::Error>> {
    let fa = parse_pmf(a)?;
    let fb = parse_pmf(b)?;
    let rep = majorizes(&fa, &fb);
    match ctx.format {
        Format::Json => print_json(&serde_json::to_value(&rep)?),
        _ => {
            println!(
                "A majorizes B: {} (min margin {:.3e}, mass gap {:.3e}{})",
                rep.holds,
                rep.min_margin,
                rep.total_mass_gap,
                match rep.first_violation_index {
                    Some(k) => format!(", first violation at prefix {k}"),
                    None => String::new(),
                }
            );
        }
    }
    Ok(u8::from(!rep.holds))
}

fn cmd_rs(ctx: &Ctx, input: &InputArgs, order: &str) -> Result<u8, Box<dyn std::error::Error>> {
    let a = Order::parse(order)?;
    let f = source_pmf(&parse_source(input)?, ctx.tail_tol)?;
    let rep = if a == Order::Zero {
        check_h0_rs(&f)
    } else {
        check_discrete_rs(&f, a)?
    };
    match ctx.format {
        Format::Json => print_json(&report_json(ctx, &rep)),
        Format::Csv => {
            println!("lhs,rhs,margin,holds");
            println!(
                "{:.16e},{:.16e},{:.16e},{}",
                ctx.scale(rep.lhs),
                ctx.scale(rep.rhs),
                ctx.scale(rep.margin),
                rep.holds
            );
        }
        Format::Table => print_report_table(ctx, &rep),
    }
    Ok(u8::from(!rep.holds))
}

const DEFAULT_SHARPNESS_THETAS: [f64; 9] =
    [0.999, 0.99, 0.9, 0.5, 0.1, 0.01, 1e-3, 1e-4, 1e-5];
const DEFAULT_RSLIMIT_THETAS: [f64; 6] = [0.9, 0.5, 0.2, 0.1, 0.05, 0.02];

fn print_scan(ctx: &Ctx, thetas: &[f64], reports: &[BoundReport]) -> u8 {
    match ctx.format {
        Format::Csv => {
            println!("theta,lhs,rhs,margin");
            for (theta, rep) in thetas.iter().zip(reports) {
                println!(
                    "{theta:.16e},{:.16e},{:.16e},{:.16e}",
                    ctx.scale(rep.lhs),
                    ctx.scale(rep.rhs),
                    ctx.scale(rep.margin)
                );
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = thetas
                .iter()
                .zip(reports)
                .map(|(theta, rep)| {
                    let mut row = report_json(ctx, rep);
                    row["theta"] = serde_json::json!(theta);
                    row
                })
                .collect();
            print_json(&serde_json::Value::Array(rows));
        }
        Format::Table => {
            println!(
                "{:<10} {:>16} {:>16} {:>12}  {}",
                "theta", "lhs", "rhs", "margin", "status"
            );
            for (theta, rep) in thetas.iter().zip(reports) {
                println!(
                    "{:<10} {:>16.9} {:>16.9} {:>12.3e}  {}",
                    theta,
                    ctx.scale(rep.lhs),
                    ctx.scale(rep.rhs),
                    ctx.scale(rep.margin),
                    pass_fail(rep.holds)
                );
            }
        }
    }
    u8::from(!reports.iter().all(|r| r.holds))
}

fn cmd_scan(ctx: &Ctx, what: &ScanCmd) -> Result<u8, Box<dyn std::error::Error>> {
    match what {
        ScanCmd::Sharpness { order, thetas } => {
            let a = Order::parse(order)?;
            let grid = thetas.clone().unwrap_or_else(|| DEFAULT_SHARPNESS_THETAS.to_vec());
            let reports = sharpness_scan(a, &grid)?;
            Ok(print_scan(ctx, &grid, &reports))
        }
        ScanCmd::Rslimit { order, thetas } => {
            let a = Order::parse(order)?;
            let grid = thetas.clone().unwrap_or_else(|| DEFAULT_RSLIMIT_THETAS.to_vec());
            let reports = rs_limit_scan(a, &grid)?;
            Ok(print_scan(ctx, &grid, &reports))
        }
    }
}

fn cmd_probe(ctx: &Ctx, what: &ProbeCmd) -> Result<u8, Box<dyn std::error::Error>> {
    match what {
        ProbeCmd::Search { trials, max_len } => {
            let result = conjecture51_search(*trials, *max_len, ctx.seed);
            match ctx.format {
                Format::Json => print_json(&serde_json::to_value(&result)?),
                _ => {
                    println!(
                        "varentropy search: trials = {trials}, max worst value = {:.12}",
                        result.worst_value
                    );
                    println!(
                        "finding: {}",
                        if result.violated {
                            "COUNTEREXAMPLE (varentropy above 1)"
                        } else {
                            "no counterexample (consistent with varentropy <= 1)"
                        }
                    );
                    println!("witness: {}", serde_json::to_string(&result.witness)?);
                }
            }
            Ok(u8::from(result.violated))
        }
        ProbeCmd::Counterexample => {
            let result = nonmonotone_counterexample();
            match ctx.format {
                Format::Json => print_json(&serde_json::to_value(&result)?),
                Format::Csv => {
                    // F curve of the witness: t, F(t), F''(t)
                    println!("t,value,d2value");
                    for t in default_t_grid() {
                        let v = f_value(&result.witness.sequence, t)?;
                        let d2 = f_second_derivative(&result.witness.sequence, t)?;
                        println!("{t:.16e},{v:.16e},{d2:.16e}");
                    }
                }
                Format::Table => {
                    println!(
                        "sequence (1/4, 1/2, 1, 1/2, 1/4): F''(3) = {:.6} > 0",
                        result.worst_value
                    );
                    println!("finding: COUNTEREXAMPLE (F is not concave without monotonicity)");
                }
            }
            Ok(u8::from(result.violated))
        }
        ProbeCmd::Kcheck { y, gamma } => {
            let t_grid: Vec<f64> = (0..25)
                .map(|i| -0.9 * gamma + (10.0 + 0.9 * gamma) * i as f64 / 24.0)
                .collect();
            let real = k_logconcavity_check(y, *gamma, &t_grid)?;
            let z_grid: Vec<Complex64> = (0..40)
                .flat_map(|iu| {
                    let u = -0.9 * gamma + (8.0 + 0.9 * gamma) * iu as f64 / 39.0;
                    (0..25).map(move |iv| Complex64::new(u, -6.0 + 12.0 * iv as f64 / 24.0))
                })
                .collect();
            let complex = complex_modulus_check(y, *gamma, &z_grid)?;
            let violated = real.violated || complex.violated;
            match ctx.format {
                Format::Json => print_json(&serde_json::json!({
                    "k_logconcavity": serde_json::to_value(&real)?,
                    "complex_modulus": serde_json::to_value(&complex)?,
                })),
                Format::Csv => {
                    println!("t,value,d2value");
                    for &t in &t_grid {
                        let v = log_k_value(y, *gamma, t)?;
                        let d2 = log_k_second_derivative(y, *gamma, t)?;
                        println!("{t:.16e},{v:.16e},{d2:.16e}");
                    }
                }
                Format::Table => {
                    println!(
                        "(log K)'' worst over {} grid points: {:.6e}  ({})",
                        t_grid.len(),
                        real.worst_value,
                        if real.violated { "VIOLATION" } else { "concave so far" }
                    );
                    println!(
                        "min |K(z)| - K(Re z) over {} grid points: {:.6e}  ({})",
                        z_grid.len(),
                        complex.worst_value,
                        if complex.violated { "VIOLATION" } else { "no violation" }
                    );
                }
            }
            Ok(u8::from(violated))
        }
    }
}
