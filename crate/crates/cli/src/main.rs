use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::Signed;

use trigbound::certificate::{self, Certificate};
use trigbound::driver::{self, ProofOutcome, SearchConfig, Verdict};
use trigbound::multiangle::expand_poly;
use trigbound::parser::{parse_expr, parse_number, parse_problem_with};
use trigbound::positivity::{self, Limits, RootSearch};
use trigbound::rational::{self, Rational};
use trigbound::series::{local_sign, series_coeffs, LocalSignOutcome};
use trigbound::{PiPoly, UniPoly};

const EXIT_USAGE: u8 = 3;

/// Certified positivity proofs for mixed trigonometric polynomials.
#[derive(Parser, Debug)]
#[command(name = "trigbound", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prove `f > 0` on an interval; exit 0 proved, 1 refuted, 2 gave up.
    Prove(ProveArgs),
    /// Verify a certificate file; exit 0 accepted, 1 rejected.
    Check(CheckArgs),
    /// Print the multiple-angle form of an expression.
    Expand(ExprArgs),
    /// Print Maclaurin coefficients and the local sign at 0.
    Series(SeriesArgs),
    /// Enclose the least positive root of a polynomial in x.
    Root(RootArgs),
}

#[derive(Args, Debug)]
struct ProveArgs {
    /// Problem text such as "sin(x) > 0 on (0, 1)", or a file containing it.
    #[arg(allow_hyphen_values = true)]
    input: String,
    /// Interval, when the problem text has none, e.g. "(0, pi/2)".
    #[arg(long)]
    interval: Option<String>,
    /// Where to write the certificate.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 16)]
    k_max: u32,
    #[arg(long, default_value_t = 4)]
    split_depth: u32,
    #[arg(long, default_value_t = 256)]
    precision_bits: u32,
    /// Root enclosure width used when choosing split points.
    #[arg(long, default_value = "1/100000")]
    width: String,
    /// Print decimal approximations instead of exact rationals.
    #[arg(long)]
    approx: bool,
    /// Print the search log to standard error.
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Certificate file.
    file: PathBuf,
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args, Debug)]
struct ExprArgs {
    /// Expression in x, or a file containing it.
    #[arg(allow_hyphen_values = true)]
    input: String,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// Expression in x, or a file containing it.
    #[arg(allow_hyphen_values = true)]
    input: String,
    /// Highest power of x to print.
    #[arg(long, default_value_t = 10)]
    order: u32,
    #[arg(long)]
    approx: bool,
}

#[derive(Args, Debug)]
struct RootArgs {
    /// Polynomial in x (coefficients may involve pi), or a file containing it.
    #[arg(allow_hyphen_values = true)]
    input: String,
    #[arg(long, default_value = "1/100000")]
    width: String,
    #[arg(long, default_value_t = 256)]
    precision_bits: u32,
    #[arg(long)]
    approx: bool,
}

struct Usage(String);

type Run = Result<u8, Usage>;

fn usage(msg: impl Into<String>) -> Usage {
    Usage(msg.into())
}

fn read_input(s: &str) -> Result<String, Usage> {
    let p = Path::new(s);
    if p.is_file() {
        return fs::read_to_string(p)
            .map(|t| t.trim().to_string())
            .map_err(|e| usage(format!("cannot read {s}: {e}")));
    }
    Ok(s.to_string())
}

fn parse_width(s: &str) -> Result<Rational, Usage> {
    match parse_number(s.trim()) {
        Some(w) if w.is_positive() => Ok(w),
        _ => Err(usage(format!("--width must be a positive number, got {s:?}"))),
    }
}

fn num(r: &Rational, approx: bool) -> String {
    if approx {
        rational::approx(r, 10)
    } else {
        rational::to_canonical(r)
    }
}

fn pi_num(p: &PiPoly, approx: bool) -> String {
    match (approx, p.as_rational()) {
        (true, _) => rational::approx(&p.enclose(64).midpoint(), 10),
        (false, Some(r)) => rational::to_canonical(&r),
        (false, None) => p.to_expr(),
    }
}

fn print_outcome(o: &ProofOutcome, approx: bool) {
    match o.verdict {
        Verdict::Proved => {
            println!("proved: {} step(s)", o.steps.len());
            for s in &o.steps {
                let (a, b) = driver::step_span(s);
                let degs: Vec<String> = s
                    .bounds
                    .iter()
                    .map(|c| {
                        let arg = if c.multiple == 1 { "x".to_string() } else { format!("{}x", c.multiple) };
                        format!("{}({arg}) {} {}", c.func, c.direction.name(), c.degree)
                    })
                    .collect();
                let via = if s.transform.is_identity() {
                    String::new()
                } else {
                    format!(" via {}", s.transform)
                };
                println!(
                    "  [{}, {}]{via}: K={}, degrees [{}], P of degree {}, {}",
                    pi_num(&a, approx),
                    pi_num(&b, approx),
                    s.k,
                    degs.join(", "),
                    s.polynomial.degree().unwrap_or(0),
                    s.proof.mode().name()
                );
            }
        }
        Verdict::Refuted => match &o.witness {
            Some(w) => println!("refuted: f({}) <= 0", num(w, approx)),
            None => println!("refuted"),
        },
        Verdict::GaveUp => println!("gave up"),
    }
}

fn prove(a: ProveArgs) -> Run {
    let text = read_input(&a.input)?;
    let problem = parse_problem_with(&text, a.interval.as_deref()).map_err(|e| usage(e.to_string()))?;
    if a.precision_bits < 8 {
        return Err(usage("--precision-bits must be at least 8"));
    }
    let cfg = SearchConfig {
        k_max: a.k_max,
        split_depth_max: a.split_depth,
        precision_bits: a.precision_bits,
        width_target: parse_width(&a.width)?,
        ..SearchConfig::default()
    };
    let o = driver::prove(&problem, &cfg);
    if a.verbose {
        for d in &o.diagnostics {
            eprintln!("{d}");
        }
    }
    print_outcome(&o, a.approx);
    if o.verdict == Verdict::Proved {
        if let Some(path) = &a.out {
            let bytes = certificate::emit(&o).expect("proved outcome");
            fs::write(path, bytes).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            println!("certificate written to {}", path.display());
        }
    }
    Ok(match o.verdict {
        Verdict::Proved => 0,
        Verdict::Refuted => 1,
        Verdict::GaveUp => 2,
    })
}

fn check(a: CheckArgs) -> Run {
    let bytes = fs::read(&a.file).map_err(|e| usage(format!("cannot read {}: {e}", a.file.display())))?;
    let r = certificate::check(&bytes);
    println!("{r}");
    if a.verbose && r.is_accepted() {
        if let Ok(c) = Certificate::parse(&bytes) {
            eprintln!("problem: {}", c.problem);
            eprintln!("steps: {}, bisection leaves: {}", c.steps.len(), certificate::leaf_total(&c));
        }
    }
    Ok(if r.is_accepted() { 0 } else { 1 })
}

fn expand(a: ExprArgs) -> Run {
    let f = parse_expr(&read_input(&a.input)?).map_err(|e| usage(e.to_string()))?;
    println!("{}", expand_poly(&f).to_text());
    Ok(0)
}

fn series(a: SeriesArgs) -> Run {
    let f = parse_expr(&read_input(&a.input)?).map_err(|e| usage(e.to_string()))?;
    for (k, c) in series_coeffs(&f, a.order).iter().enumerate() {
        println!("x^{k}: {}", pi_num(c, a.approx));
    }
    match local_sign(&f, a.order.max(trigbound::series::DEFAULT_MAX_ORDER)) {
        LocalSignOutcome::Sign(s) => {
            let sign = if s.sign > 0 { "positive" } else { "negative" };
            println!("local sign at 0: {sign} (order {})", s.order);
        }
        LocalSignOutcome::IdenticallyZero { max_order } => println!("all coefficients vanish through order {max_order}"),
        LocalSignOutcome::Undecidable { order, .. } => println!("sign of the coefficient of x^{order} is undecided"),
    }
    Ok(0)
}

fn root(a: RootArgs) -> Run {
    let f = parse_expr(&read_input(&a.input)?).map_err(|e| usage(e.to_string()))?;
    let p: UniPoly = match f.terms().as_slice() {
        [] => UniPoly::zero(),
        [t] if t.cos_pow == 0 && t.sin_pow == 0 => t.factor.clone(),
        _ => return Err(usage("root expects a polynomial in x without sin or cos")),
    };
    let width = parse_width(&a.width)?;
    let limits = Limits {
        precision_cap: positivity::DEFAULT_PRECISION_CAP.max(a.precision_bits),
        ..Limits::default()
    };
    match positivity::least_positive_root_with(&p, &width, a.precision_bits, limits) {
        Ok(RootSearch::Root(r)) => {
            println!("least positive root in [{}, {}]", num(&r.lo, a.approx), num(&r.hi, a.approx));
            Ok(0)
        }
        Ok(RootSearch::NoneBelow(b)) => {
            println!("no positive root (root bound {})", num(&b, a.approx));
            Ok(0)
        }
        Err(e) => {
            println!("root search failed: {e}");
            Ok(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let r = match cli.command {
        Command::Prove(a) => prove(a),
        Command::Check(a) => check(a),
        Command::Expand(a) => expand(a),
        Command::Series(a) => series(a),
        Command::Root(a) => root(a),
    };
    match r {
        Ok(code) => ExitCode::from(code),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
