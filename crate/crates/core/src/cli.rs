//! Command-line front end: grid scans, elliptic windows, certificates,
//! searches and number-theory helpers.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::json;

use crate::certify::{certify_with, Certificate, SearchOptions, SearchReport, Verdict};
use crate::classify::{classify_trace, elliptic_windows, goldman_discriminant, IsometryClass, BOUNDARY_TOL};
use crate::error::Error;
use crate::exactnum::{cyclotomic_polynomial, euler_phi, format_poly, moebius, PrecisionPolicy, Rational};
use crate::triangle::{trace_formula, TriangleParams};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

/// Default grid for `windows`; 1024 points miss the narrow m = 9 windows.
pub const WINDOW_STEPS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "chtg", version, about = "Complex hyperbolic (m,m,inf)-triangle groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; json by default, text for `nt`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Starting precision for interval comparisons.
    #[arg(
        long,
        global = true,
        env = "CHTG_PRECISION_BITS",
        default_value_t = 128,
        value_parser = clap::value_parser!(u32).range(53..=4096)
    )]
    pub precision_bits: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace and isometry class over an α grid.
    Scan {
        #[command(flatten)]
        m: MArg,
        #[arg(long, default_value_t = 1024, value_parser = clap::value_parser!(u64).range(1..))]
        alpha_steps: u64,
    },
    /// α-intervals where ι₁ι₂ι₃ is regular elliptic.
    Windows {
        #[command(flatten)]
        m: MArg,
        #[arg(long, default_value_t = WINDOW_STEPS as u64, value_parser = clap::value_parser!(u64).range(16..))]
        alpha_steps: u64,
    },
    /// Non-discreteness certificate at one angular invariant.
    Certify {
        #[command(flatten)]
        m: MArg,
        #[command(flatten)]
        alpha: AlphaArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Exhaustive search for finite-order circle-consistent traces.
    Search {
        #[command(flatten)]
        m: MArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Number-theory utilities.
    Nt {
        #[command(subcommand)]
        func: NtCommand,
    },
}

#[derive(Debug, Args)]
pub struct MArg {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub m: u32,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct AlphaArg {
    /// Angular invariant in radians.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Angular invariant in turns, α = 2πt; rationals such as `1/3` stay exact.
    #[arg(long, value_parser = parse_turns, allow_negative_numbers = true)]
    pub alpha_turns: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    /// Enumerate every exponent triple instead of one per symmetry orbit.
    #[arg(long)]
    pub no_symmetry: bool,
}

#[derive(Debug, Subcommand)]
pub enum NtCommand {
    Phi { n: u64 },
    Moebius { n: u64 },
    Cyclopoly { n: u64 },
}

/// `p/q`, an integer, or a terminating decimal, read exactly.
pub fn parse_turns(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if q.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(format!("not a number: {s:?}"));
    }
    let digits: BigInt = format!("0{int}{frac}").parse().expect("digits only");
    let q = Rational::new(digits, BigInt::from(10u32).pow(frac.len() as u32));
    Ok(if neg { -q } else { q })
}

/// Rendered report plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub exit_code: u8,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, exit_code: EXIT_OK }
    }
}

#[derive(Debug, Serialize)]
pub struct ScanRow {
    pub alpha: f64,
    pub tau_re: f64,
    pub tau_im: f64,
    pub f: f64,
    pub class: IsometryClass,
}

pub fn scan_rows(m: u32, steps: u64) -> Result<Vec<ScanRow>, Error> {
    (0..steps)
        .map(|i| {
            let alpha = 2.0 * PI * i as f64 / steps as f64;
            let tau = trace_formula(&TriangleParams::mm_inf(m, alpha)?);
            Ok(ScanRow {
                alpha,
                tau_re: tau.re,
                tau_im: tau.im,
                f: goldman_discriminant(tau),
                class: classify_trace(tau, BOUNDARY_TOL),
            })
        })
        .collect()
}

fn json_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serialises");
    s.push('\n');
    s
}

fn render_scan(rows: &[ScanRow], format: Format) -> String {
    match format {
        Format::Json => json_string(&rows),
        Format::Csv => {
            let mut s = String::from("alpha,tau_re,tau_im,f,class\n");
            for r in rows {
                let _ = writeln!(
                    s,
                    "{:.16e},{:.16e},{:.16e},{:.16e},{}",
                    r.alpha, r.tau_re, r.tau_im, r.f, r.class
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in rows {
                let _ = writeln!(
                    s,
                    "alpha={:<22} tau=({:+.12}, {:+.12}) f={:+.6e} {}",
                    r.alpha, r.tau_re, r.tau_im, r.f, r.class
                );
            }
            s
        }
    }
}

fn render_windows(w: &[(f64, f64)], format: Format) -> String {
    match format {
        Format::Json => {
            let pairs: Vec<[f64; 2]> = w.iter().map(|&(a, b)| [a, b]).collect();
            json_string(&pairs)
        }
        Format::Csv => {
            let mut s = String::from("lo,hi\n");
            for (a, b) in w {
                let _ = writeln!(s, "{a:.16e},{b:.16e}");
            }
            s
        }
        Format::Text => {
            if w.is_empty() {
                return "no regular elliptic window\n".into();
            }
            w.iter().map(|(a, b)| format!("[{a:.12}, {b:.12}]\n")).collect()
        }
    }
}

fn render_certificate(c: &Certificate, format: Format) -> String {
    match format {
        Format::Json => json_string(c),
        Format::Csv => {
            let mut s = String::from("name,pass,precision_bits\n");
            for ch in &c.checks {
                let pass = ch.passed().map(|b| b.to_string()).unwrap_or_default();
                let bits = ch.precision_bits.map(|b| b.to_string()).unwrap_or_default();
                let _ = writeln!(s, "{},{pass},{bits}", ch.name);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "verdict: {}", c.verdict);
            let _ = writeln!(s, "class: {}", c.class);
            let _ = writeln!(s, "tau: ({:+.15}, {:+.15})", c.tau.re, c.tau.im);
            let _ = writeln!(s, "n_max: {}", c.n_max);
            for ch in &c.checks {
                let pass = match ch.passed() {
                    Some(true) => "pass",
                    Some(false) => "FAIL",
                    None => "info",
                };
                let _ = writeln!(s, "  [{pass}] {}", ch.name);
            }
            let _ = writeln!(s, "{}", c.statement);
            s
        }
    }
}

fn render_search(r: &SearchReport, format: Format) -> String {
    let fields = [
        ("m", r.m.to_string()),
        ("n_max", r.n_max.to_string()),
        ("symmetry", r.symmetry.to_string()),
        ("candidates_examined", r.candidates_examined.to_string()),
        ("rejected_not_regular_elliptic", r.rejections.not_regular_elliptic.to_string()),
        ("rejected_lemma2", r.rejections.lemma2.to_string()),
        ("rejected_galois_real_part", r.rejections.galois_real_part.to_string()),
        ("rejected_circle", r.rejections.circle.to_string()),
        ("lemma2_ties", r.lemma2_ties.to_string()),
        ("inconclusive", r.inconclusive.to_string()),
        ("survivors", r.survivors.len().to_string()),
    ];
    match format {
        Format::Json => json_string(r),
        Format::Csv => {
            let mut s = String::from("key,value\n");
            for (k, v) in fields {
                let _ = writeln!(s, "{k},{v}");
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (k, v) in fields {
                let _ = writeln!(s, "{k}: {v}");
            }
            for c in &r.survivors {
                let _ = writeln!(s, "  survivor {c}");
            }
            s
        }
    }
}

fn render_nt(name: &str, n: u64, value: serde_json::Value, text: String, format: Format) -> String {
    match format {
        Format::Text => text + "\n",
        Format::Json => json_string(&json!({ "function": name, "n": n, "value": value })),
        Format::Csv => format!("function,n,value\n{name},{n},{text}\n"),
    }
}

fn alpha_params(m: u32, a: &AlphaArg) -> Result<TriangleParams, Error> {
    match (&a.alpha, &a.alpha_turns) {
        (Some(alpha), None) => TriangleParams::mm_inf(m, *alpha),
        (None, Some(t)) => {
            let den = t.denom().to_u64().filter(|&d| d <= 1 << 20);
            let num = t.numer().to_i64();
            match (den, num) {
                (Some(d), Some(j)) => TriangleParams::mm_inf_exact(m, d, j),
                _ => TriangleParams::mm_inf(m, 2.0 * PI * t.to_f64().unwrap_or(f64::NAN)),
            }
        }
        _ => Err(Error::InvalidParameter("give exactly one of --alpha, --alpha-turns".into())),
    }
}

fn search_options(s: &SearchArgs, bits: u32) -> SearchOptions {
    SearchOptions {
        symmetry: !s.no_symmetry,
        policy: PrecisionPolicy::starting_at(bits),
    }
}

/// Run a parsed command and render its report.
pub fn execute(cli: &Cli) -> Result<Output, Error> {
    let main_format = cli.format.unwrap_or(Format::Json);
    match &cli.command {
        Command::Scan { m, alpha_steps } => {
            let rows = scan_rows(m.m, *alpha_steps)?;
            Ok(Output::ok(render_scan(&rows, main_format)))
        }
        Command::Windows { m, alpha_steps } => {
            let w = elliptic_windows(m.m, *alpha_steps as usize);
            Ok(Output::ok(render_windows(&w, main_format)))
        }
        Command::Certify { m, alpha, search } => {
            let params = alpha_params(m.m, alpha)?;
            let opts = search_options(search, cli.precision_bits);
            let cert = certify_with(&params, search.n_max, &opts)?;
            let exit_code = match cert.verdict {
                Verdict::Inconclusive => EXIT_INCONCLUSIVE,
                _ => EXIT_OK,
            };
            Ok(Output {
                body: render_certificate(&cert, main_format),
                exit_code,
            })
        }
        Command::Search { m, search } => {
            let opts = search_options(search, cli.precision_bits);
            let report = crate::certify::run_search(m.m, search.n_max, &opts)?;
            let exit_code = if report.inconclusive > 0 { EXIT_INCONCLUSIVE } else { EXIT_OK };
            Ok(Output {
                body: render_search(&report, main_format),
                exit_code,
            })
        }
        Command::Nt { func } => {
            let format = cli.format.unwrap_or(Format::Text);
            let body = match *func {
                NtCommand::Phi { n } => {
                    let v = positive(n)?;
                    render_nt("phi", n, json!(euler_phi(v)), euler_phi(v).to_string(), format)
                }
                NtCommand::Moebius { n } => {
                    let v = positive(n)?;
                    render_nt("moebius", n, json!(moebius(v)), moebius(v).to_string(), format)
                }
                NtCommand::Cyclopoly { n } => {
                    let p = format_poly(&cyclotomic_polynomial(positive(n)?));
                    render_nt("cyclopoly", n, json!(p), p.clone(), format)
                }
            };
            Ok(Output::ok(body))
        }
    }
}

fn positive(n: u64) -> Result<u64, Error> {
    if n == 0 {
        Err(Error::InvalidParameter("argument must be a positive integer".into()))
    } else {
        Ok(n)
    }
}

/// Whole-program entry: parse, run, write; returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.body).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.body.as_bytes()).map_err(|e| e.to_string())
        }
    };
    match written {
        Ok(()) => out.exit_code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}
