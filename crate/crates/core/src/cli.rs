//! Command-line front end. Payloads go to stdout, the run manifest to
//! `--manifest <path>` or stderr.
//!
//! Exit codes: 0 success, 1 argument error, 2 domain error, 3 internal error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, ErrorKind, Result};
use crate::experiments::{root_point, scaled_errors, spacing_stats};
use crate::output::{csv, json_int, RunManifest, SCHEMA_VERSION};
use crate::parametrization::{
    approximations, enumerate_generators, generator_from_root, GammaData,
};
use crate::root_finder::{enumerate_root_pairs, roots_bruteforce, roots_fast, RootPair};
use crate::sieve_check::{sieve_ratio, CoeffSeq};

#[derive(Debug, Parser)]
#[command(
    name = "cubic-congruence",
    version,
    about = "Roots of x^3 = 2 (mod m) and their geometry"
)]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write the run manifest here instead of stderr.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqKind {
    Ones,
    Spike,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All roots of x^3 = 2 (mod m).
    Roots {
        /// Modulus, at least 1.
        #[arg(long)]
        m: u64,
        /// Cross-check against an exhaustive scan.
        #[arg(long)]
        oracle: bool,
    },
    /// Domain generator and Bezout data for every root pair with M < m <= 2M.
    Enumerate {
        /// Lower end of the range M < m <= 2M.
        #[arg(long = "M")]
        big_m: u64,
    },
    /// The three rational approximations to (nu/m, nu^2/m).
    Approx {
        /// Modulus, at least 1.
        #[arg(long)]
        m: u64,
        /// Root of x^3 = 2 (mod m).
        #[arg(long)]
        nu: u64,
    },
    /// Spacing statistics for M < m <= 2M at radius radius_scale/M.
    Spacing {
        /// Lower end of the range M < m <= 2M.
        #[arg(long = "M")]
        big_m: u64,
        /// Disc radius in units of 1/M; must stay below M/2.
        #[arg(long, default_value_t = 1.0)]
        radius_scale: f64,
    },
    /// Both sides of the large sieve inequality.
    Sieve {
        /// Lower end of the range M < m <= 2M.
        #[arg(long = "M")]
        big_m: u64,
        /// Coefficients are indexed by 1 <= k <= K.
        #[arg(long = "K")]
        k: usize,
        /// Coefficients are indexed by 1 <= l <= L.
        #[arg(long = "L")]
        l: usize,
        /// Coefficient sequence.
        #[arg(long, value_enum)]
        seq: SeqKind,
        /// Seed for the random sequence.
        #[arg(long)]
        seed: Option<u64>,
        /// Spike modulus; defaults to the first pair in range.
        #[arg(long)]
        m0: Option<u64>,
        /// Root for the spike modulus.
        #[arg(long)]
        nu0: Option<u64>,
    },
}

/// A rendered payload and its manifest.
#[derive(Debug)]
pub struct Output {
    pub payload: String,
    pub manifest: RunManifest,
}

fn json_payload(v: Value) -> String {
    let mut s = serde_json::to_string(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn gamma_row(g: &GammaData) -> Vec<String> {
    [g.m as i128, g.nu as i128, g.a, g.b, g.c, g.u, g.v, g.w]
        .iter()
        .map(i128::to_string)
        .collect()
}

fn gamma_json(g: &GammaData) -> Value {
    json!({
        "m": json_int(g.m), "nu": json_int(g.nu),
        "a": json_int(g.a), "b": json_int(g.b), "c": json_int(g.c),
        "u": json_int(g.u), "v": json_int(g.v), "w": json_int(g.w),
    })
}

fn cmd_roots(m: u64, oracle: bool, format: Format) -> Result<String> {
    let roots = roots_fast(m)?;
    if oracle {
        let brute = roots_bruteforce(m)?;
        if brute != roots {
            return Err(Error::Internal(format!(
                "fast roots {roots:?} differ from exhaustive scan {brute:?}"
            )));
        }
    }
    Ok(match format {
        Format::Json => json_payload(json!({
            "schema_version": SCHEMA_VERSION,
            "m": json_int(m),
            "roots": roots.iter().map(|&r| json_int(r)).collect::<Vec<_>>(),
        })),
        Format::Csv => csv(
            &["m", "nu"],
            roots.iter().map(|r| vec![m.to_string(), r.to_string()]),
        ),
    })
}

fn cmd_enumerate(big_m: u64, format: Format) -> Result<String> {
    let gens = enumerate_generators(big_m)?;
    Ok(match format {
        Format::Csv => csv(
            &["m", "nu", "a", "b", "c", "u", "v", "w"],
            gens.iter().map(gamma_row),
        ),
        Format::Json => json_payload(json!({
            "schema_version": SCHEMA_VERSION,
            "M": json_int(big_m),
            "rows": gens.iter().map(gamma_json).collect::<Vec<_>>(),
        })),
    })
}

fn cmd_approx(m: u64, nu: u64, format: Format) -> Result<String> {
    let root = RootPair::new(m, nu)?;
    let g = GammaData::from_generator(&generator_from_root(&root)?)?;
    let points = approximations(&g)?;
    let errors = scaled_errors(&g)?;
    let truth = root_point(&root);
    Ok(match format {
        Format::Json => {
            let rendered: Vec<Value> = points
                .iter()
                .zip(errors)
                .map(|(p, e)| {
                    let t = p.to_torus();
                    json!({
                        "n1": json_int(p.n1), "n2": json_int(p.n2), "den": json_int(p.den),
                        "torus": [t.x, t.y],
                        "scaled_sup_distance": e,
                        "scaled_distance": m as f64 * t.distance(&truth),
                    })
                })
                .collect();
            json_payload(json!({
                "schema_version": SCHEMA_VERSION,
                "m": json_int(m),
                "nu": json_int(nu),
                "target": [truth.x, truth.y],
                "gamma": gamma_json(&g),
                "denominators": points.iter().map(|p| json_int(p.den)).collect::<Vec<_>>(),
                "points": rendered,
            }))
        }
        Format::Csv => csv(
            &["point", "n1", "n2", "den", "x", "y", "scaled_sup_distance"],
            points.iter().zip(errors).enumerate().map(|(i, (p, e))| {
                let t = p.to_torus();
                vec![
                    (i + 1).to_string(),
                    p.n1.to_string(),
                    p.n2.to_string(),
                    p.den.to_string(),
                    t.x.to_string(),
                    t.y.to_string(),
                    e.to_string(),
                ]
            }),
        ),
    })
}

fn cmd_spacing(big_m: u64, radius_scale: f64, format: Format) -> Result<String> {
    if !(radius_scale.is_finite() && radius_scale > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "radius scale {radius_scale} must be positive"
        )));
    }
    let s = spacing_stats(big_m, radius_scale)?;
    Ok(match format {
        Format::Json => json_payload(json!({
            "schema_version": SCHEMA_VERSION,
            "M": json_int(big_m),
            "radius": s.radius,
            "pair_count": s.pair_count,
            "max_disc_count": s.disc.max_count,
            "max_neighbor_count": s.disc.max_neighbor_count,
            "min_line_norm_scaled": s.min_line_norm_scaled,
            "max_line_norm_scaled": s.max_line_norm_scaled,
            "histogram": s.disc.histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        })),
        Format::Csv => csv(
            &["neighbor_count", "points"],
            s.disc
                .histogram
                .iter()
                .map(|(k, v)| vec![k.to_string(), v.to_string()]),
        ),
    })
}

fn sieve_sequence(
    big_m: u64,
    k: usize,
    l: usize,
    seq: SeqKind,
    seed: Option<u64>,
    m0: Option<u64>,
    nu0: Option<u64>,
) -> Result<CoeffSeq> {
    match seq {
        SeqKind::Ones => CoeffSeq::make_ones(k, l),
        SeqKind::Random => {
            let seed =
                seed.ok_or_else(|| Error::InvalidArgument("--seq random requires --seed".into()))?;
            CoeffSeq::make_random(k, l, seed)
        }
        SeqKind::Spike => {
            let p = match (m0, nu0) {
                (Some(m), Some(nu)) => RootPair::new(m, nu)?,
                (None, None) => *enumerate_root_pairs(big_m)?.first().ok_or_else(|| {
                    Error::Degenerate(format!("no root pairs in ({big_m}, {}]", 2 * big_m))
                })?,
                _ => return Err(Error::InvalidArgument("--m0 and --nu0 go together".into())),
            };
            CoeffSeq::make_spike(p.m, p.nu, k, l)
        }
    }
}

fn cmd_sieve(big_m: u64, s: &CoeffSeq, format: Format) -> Result<String> {
    let r = sieve_ratio(big_m, s)?;
    Ok(match format {
        Format::Json => {
            let mut v = serde_json::to_value(&r).map_err(|e| Error::Internal(e.to_string()))?;
            v["schema_version"] = json!(SCHEMA_VERSION);
            json_payload(v)
        }
        Format::Csv => csv(
            &[
                "M",
                "K",
                "L",
                "lhs",
                "rhs",
                "ratio",
                "pair_count",
                "seq_descriptor",
                "seed",
            ],
            [vec![
                r.big_m.to_string(),
                r.k.to_string(),
                r.l.to_string(),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.ratio.to_string(),
                r.pair_count.to_string(),
                r.seq_descriptor.clone(),
                r.seed.map(|s| s.to_string()).unwrap_or_default(),
            ]],
        ),
    })
}

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Result<Output> {
    let fmt = |default| cli.format.unwrap_or(default);
    let (name, parameters, seed, payload) = match &cli.command {
        Command::Roots { m, oracle } => (
            "roots",
            params([("m", m.to_string()), ("oracle", oracle.to_string())]),
            None,
            cmd_roots(*m, *oracle, fmt(Format::Json))?,
        ),
        Command::Enumerate { big_m } => (
            "enumerate",
            params([("M", big_m.to_string())]),
            None,
            cmd_enumerate(*big_m, fmt(Format::Csv))?,
        ),
        Command::Approx { m, nu } => (
            "approx",
            params([("m", m.to_string()), ("nu", nu.to_string())]),
            None,
            cmd_approx(*m, *nu, fmt(Format::Json))?,
        ),
        Command::Spacing {
            big_m,
            radius_scale,
        } => (
            "spacing",
            params([
                ("M", big_m.to_string()),
                ("radius_scale", radius_scale.to_string()),
            ]),
            None,
            cmd_spacing(*big_m, *radius_scale, fmt(Format::Json))?,
        ),
        Command::Sieve {
            big_m,
            k,
            l,
            seq,
            seed,
            m0,
            nu0,
        } => {
            let s = sieve_sequence(*big_m, *k, *l, *seq, *seed, *m0, *nu0)?;
            let opt = |x: &Option<u64>| x.map(|v| v.to_string()).unwrap_or_default();
            (
                "sieve",
                params([
                    ("M", big_m.to_string()),
                    ("K", k.to_string()),
                    ("L", l.to_string()),
                    ("seq", format!("{seq:?}").to_lowercase()),
                    ("m0", opt(m0)),
                    ("nu0", opt(nu0)),
                ]),
                s.seed(),
                cmd_sieve(*big_m, &s, fmt(Format::Json))?,
            )
        }
    };
    let manifest = RunManifest::new(name, parameters, seed, payload.as_bytes());
    Ok(Output { payload, manifest })
}

pub fn exit_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Argument => 1,
        ErrorKind::Domain => 2,
        ErrorKind::Internal => 3,
    }
}

/// Parses, runs and writes; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(e.kind());
        }
    };
    let manifest = serde_json::to_string(&out.manifest).expect("manifest serializes");
    let written = match &cli.manifest {
        Some(path) => std::fs::write(path, format!("{manifest}\n")),
        None => writeln!(std::io::stderr(), "{manifest}"),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write manifest: {e}");
        return 3;
    }
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(out.payload.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return 3;
    }
    0
}
