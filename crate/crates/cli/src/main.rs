//! `qfusion`: batch front end.
//!
//! Every command prints one JSON line `{"command", "params", "rows"}` (or CSV
//! rows with `--format csv`). Exit codes: 0 success, 1 verification
//! failure, 2 parse error, 3 domain error, 4 resource limit.

mod output;
mod verify;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use qfusion::chebyshev::{cheby_coeffs, cheby_u, dim_orth, ChebyParams, DEFAULT_T0};
use qfusion::multiplier::{
    approx_identity_weights, choose_truncation, net_coeffs, unit_coeffs_with_radius, BoundParams,
    Group, Label, DEFAULT_ENTRY_CAP,
};
use qfusion::orth::{fuse_orth_many, OrthLabel};
use qfusion::spectral::{
    empirical_moments, ks_distance, semicircle_moment, semicircle_sample, spectrum_interval,
    Algebra, DEFAULT_SUBDIVISIONS,
};
use qfusion::unitary::{
    alternating_form, char_expand_oracle, dim_unitary, fuse_unitary, word_parse, FreeWord,
};
use qfusion::Error;

use output::{big, float, int, text, Format, OutputRecord, Row};
use verify::{Suite, VerifyOpts};

#[derive(Parser, Debug)]
#[command(
    name = "qfusion",
    version,
    about = "Fusion rings and multiplier nets of O_N^+ and U_N^+"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    O,
    U,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::O => Group::Orth,
            GroupArg::U => Group::Unit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgebraArg {
    Reduced,
    Full,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose a tensor product of irreducibles (left to right).
    Fuse {
        #[arg(long, value_enum)]
        group: GroupArg,
        /// Also report dimensions at this N.
        #[arg(long = "N")]
        n: Option<u64>,
        /// Integers for `o`, words over {a, b} for `u` ("" is the unit).
        #[arg(required = true, num_args = 1..)]
        operands: Vec<String>,
    },
    /// Exact dimensions of irreducibles.
    Dims {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long = "N")]
        n: u64,
        #[arg(required = true, num_args = 1..)]
        labels: Vec<String>,
    },
    /// Coefficient table of the multiplier net up to level m.
    Coeffs(CoeffsArgs),
    /// Smallest truncation order with a certified tail bound below eps.
    Certify(CertifyArgs),
    /// Alternating character forms of U_N^+ words, with the oracle.
    Form {
        #[arg(required = true, num_args = 1..)]
        words: Vec<String>,
    },
    /// Approximate-identity weights a_t(conj α) d_α up to level m.
    Weights {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        t: f64,
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_T0)]
        t0: f64,
    },
    /// Fundamental-character moments: fusion count and quadrature.
    Moments {
        #[arg(long, default_value_t = 16)]
        k_max: u32,
        #[arg(long, default_value_t = DEFAULT_SUBDIVISIONS)]
        subdivisions: usize,
    },
    /// Semicircle samples (or their summary with --summary).
    Sample {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Print moments and KS distance instead of the samples.
        #[arg(long)]
        summary: bool,
    },
    /// Spectrum of the fundamental character.
    Spectrum {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        #[arg(long = "N")]
        n: u64,
    },
    /// Dilated Chebyshev polynomial u_n: coefficients and optional value.
    Poly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: Option<f64>,
    },
    /// Run an invariant suite; exits 1 on any failure.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct CoeffsArgs {
    #[arg(long, value_enum)]
    group: GroupArg,
    #[arg(long)]
    t: f64,
    #[arg(long = "N")]
    n: u64,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = DEFAULT_T0)]
    t0: f64,
    /// Poisson radius for `u`: `auto` uses r(t), a number in [0, 1] fixes it.
    #[arg(long = "r", default_value = "auto")]
    r_mode: String,
    /// Maximum number of table entries.
    #[arg(long, default_value_t = DEFAULT_ENTRY_CAP)]
    cap: u128,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[arg(long, value_enum)]
    group: GroupArg,
    #[arg(long)]
    t: f64,
    #[arg(long = "N")]
    n: u64,
    #[arg(long)]
    eps: f64,
    /// RD constant D_N (required for `o`).
    #[arg(long = "D")]
    d: Option<f64>,
    /// RD constant R_N (required for `u`).
    #[arg(long = "R")]
    r: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_T0)]
    t0: f64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    max_label: Option<usize>,
    /// Comma-separated list of N values.
    #[arg(long = "N", value_delimiter = ',')]
    n: Option<Vec<u64>>,
    #[arg(long)]
    grid: Option<usize>,
    /// Number of random cases.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_T0)]
    t0: f64,
}

enum Failure {
    Lib(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Domain(_) => 3,
        Error::Resource { .. } => 4,
        Error::Consistency(_) => 1,
    }
}

fn parse_orth(s: &str) -> Result<OrthLabel, Error> {
    s.parse::<usize>()
        .map(OrthLabel)
        .map_err(|_| Error::Parse(format!("expected a non-negative integer label, got {s:?}")))
}

fn parse_word(s: &str) -> Result<FreeWord, Error> {
    word_parse(s)
}

fn fuse(group: GroupArg, n: Option<u64>, operands: &[String]) -> Result<OutputRecord, Error> {
    let mut rec = OutputRecord::new("fuse");
    rec.param("group", text(Group::from(group).to_string()))
        .param(
            "operands",
            Value::Array(operands.iter().map(|s| text(s.clone())).collect()),
        );
    if let Some(n) = n {
        rec.param("N", int(n));
    }
    match group {
        GroupArg::O => {
            let labels = operands
                .iter()
                .map(|s| parse_orth(s))
                .collect::<Result<Vec<_>, _>>()?;
            let sum = fuse_orth_many(&labels)?;
            for (label, mult) in sum.iter() {
                let mut row = Row::new()
                    .with("label", text(label.to_string()))
                    .with("multiplicity", big(mult));
                if let Some(n) = n {
                    row = row.with("dim", big(&dim_orth(label.0, n)?));
                }
                rec.push(row);
            }
        }
        GroupArg::U => {
            let words = operands
                .iter()
                .map(|s| parse_word(s))
                .collect::<Result<Vec<_>, _>>()?;
            // left-to-right, multiplicities accumulated
            let mut acc: Vec<(FreeWord, u64)> = vec![(words[0].clone(), 1)];
            for h in &words[1..] {
                let mut next = std::collections::BTreeMap::new();
                for (g, m) in &acc {
                    for (w, k) in fuse_unitary(g, h).iter() {
                        *next.entry(w.clone()).or_insert(0u64) += m * k;
                    }
                }
                acc = next.into_iter().collect();
            }
            for (w, mult) in acc {
                let mut row = Row::new()
                    .with("label", text(w.to_string()))
                    .with("multiplicity", text(mult.to_string()));
                if let Some(n) = n {
                    row = row.with("dim", big(&dim_unitary(&w, n)?));
                }
                rec.push(row);
            }
        }
    }
    Ok(rec)
}

fn dims(group: GroupArg, n: u64, labels: &[String]) -> Result<OutputRecord, Error> {
    let mut rec = OutputRecord::new("dims");
    rec.param("group", text(Group::from(group).to_string()))
        .param("N", int(n));
    for s in labels {
        let (label, dim) = match group {
            GroupArg::O => {
                let l = parse_orth(s)?;
                (l.to_string(), dim_orth(l.0, n)?)
            }
            GroupArg::U => {
                let w = parse_word(s)?;
                (w.to_string(), dim_unitary(&w, n)?)
            }
        };
        rec.push(Row::new().with("label", text(label)).with("dim", big(&dim)));
    }
    Ok(rec)
}

fn coeffs(a: &CoeffsArgs) -> Result<OutputRecord, Error> {
    let params = ChebyParams::new(a.n, a.t0)?;
    let group = Group::from(a.group);
    let table = match (group, a.r_mode.as_str()) {
        (_, "auto") | (Group::Orth, _) => net_coeffs(group, a.t, 0..=a.m, &params, a.cap)?,
        (Group::Unit, value) => {
            let radius: f64 = value.parse().map_err(|_| {
                Error::Parse(format!("--r expects `auto` or a number, got {value:?}"))
            })?;
            unit_coeffs_with_radius(a.t, radius, 0..=a.m, &params, a.cap)?
        }
    };
    let mut rec = OutputRecord::new("coeffs");
    rec.param("group", text(group.to_string()))
        .param("t", float(a.t))
        .param("N", int(a.n))
        .param("m", int(a.m as u64))
        .param("t0", float(a.t0))
        .param("c_t0", float(params.decay_constant()))
        .param(
            "level_max",
            Value::Array(table.level_max().values().map(|&v| float(v)).collect()),
        );
    if let Some(r) = table.params.and_then(|p| p.r) {
        rec.param("r", float(r));
    }
    for (label, v) in &table.entries {
        rec.push(
            Row::new()
                .with("label", text(label.to_string()))
                .with("level", int(label.level() as u64))
                .with("coeff", float(*v)),
        );
    }
    Ok(rec)
}

fn certify(a: &CertifyArgs) -> Result<OutputRecord, Error> {
    let group = Group::from(a.group);
    let bounds = BoundParams::new(a.d, a.r, a.t0)?;
    let cert = choose_truncation(a.t, a.eps, a.n, group, &bounds)?;
    let mut rec = OutputRecord::new("certify");
    rec.param("group", text(group.to_string()))
        .param("t", float(a.t))
        .param("N", int(a.n))
        .param("eps", float(a.eps))
        .param("t0", float(a.t0));
    match group {
        Group::Orth => rec.param("D", float(bounds.rd_constant(group)?)),
        Group::Unit => rec.param("R", float(bounds.rd_constant(group)?)),
    };
    rec.push(
        Row::new()
            .with("m", int(cert.m as u64))
            .with("tail_bound", float(cert.tail_bound))
            .with("eps", float(cert.target_eps))
            .with("satisfied", Value::Bool(cert.satisfied())),
    );
    Ok(rec)
}

fn form(words: &[String]) -> Result<OutputRecord, Error> {
    let mut rec = OutputRecord::new("form");
    for s in words {
        let w = parse_word(s)?;
        let f = alternating_form(&w);
        let oracle = char_expand_oracle(&w)?;
        rec.push(
            Row::new()
                .with("label", text(w.to_string()))
                .with(
                    "eps",
                    Value::Array(f.eps.iter().map(|&e| Value::from(e)).collect()),
                )
                .with(
                    "blocks",
                    Value::Array(f.blocks.iter().map(|&k| Value::from(k)).collect()),
                )
                .with("monomial", text(f.to_string()))
                .with("oracle_agrees", Value::Bool(oracle == f)),
        );
    }
    Ok(rec)
}

fn weights(group: GroupArg, t: f64, n: u64, m: usize, t0: f64) -> Result<OutputRecord, Error> {
    let params = ChebyParams::new(n, t0)?;
    let group = Group::from(group);
    let ws = approx_identity_weights(group, t, m, &params)?;
    let mut rec = OutputRecord::new("weights");
    rec.param("group", text(group.to_string()))
        .param("t", float(t))
        .param("N", int(n))
        .param("m", int(m as u64))
        .param("t0", float(t0));
    for (label, w) in ws {
        let level = match &label {
            Label::Orth(l) => l.0,
            Label::Unit(w) => w.len(),
        };
        rec.push(
            Row::new()
                .with("label", text(label.to_string()))
                .with("level", int(level as u64))
                .with("weight", float(w)),
        );
    }
    Ok(rec)
}

fn moments(k_max: u32, subdivisions: usize) -> Result<OutputRecord, Error> {
    let mut rec = OutputRecord::new("moments");
    rec.param("k_max", int(k_max))
        .param("subdivisions", int(subdivisions as u64));
    for k in 0..=k_max {
        let mut row = Row::new()
            .with("k", int(k))
            .with("fusion", big(&qfusion::orth::char_moment_orth(k as usize)))
            .with("quadrature", float(semicircle_moment(k, subdivisions)?));
        if k % 2 == 0 {
            row = row.with("catalan", big(&qfusion::orth::catalan(k as usize / 2)));
        }
        rec.push(row);
    }
    Ok(rec)
}

fn sample(seed: u64, count: usize, summary: bool) -> Result<OutputRecord, Error> {
    if count == 0 {
        return Err(Error::Domain("count must be positive".into()));
    }
    let xs = semicircle_sample(seed, count);
    let mut rec = OutputRecord::new("sample");
    rec.param("seed", int(seed))
        .param("count", int(count as u64));
    if summary {
        let m = empirical_moments(&xs, 4);
        rec.push(
            Row::new()
                .with("m1", float(m[0]))
                .with("m2", float(m[1]))
                .with("m3", float(m[2]))
                .with("m4", float(m[3]))
                .with("ks", float(ks_distance(&xs))),
        );
    } else {
        for x in xs {
            rec.push(Row::new().with("x", float(x)));
        }
    }
    Ok(rec)
}

fn spectrum(algebra: AlgebraArg, n: u64) -> Result<OutputRecord, Error> {
    let alg = match algebra {
        AlgebraArg::Reduced => Algebra::Reduced,
        AlgebraArg::Full => Algebra::Full,
    };
    let (lo, hi) = spectrum_interval(alg, n)?;
    let mut rec = OutputRecord::new("spectrum");
    rec.param(
        "algebra",
        text(match algebra {
            AlgebraArg::Reduced => "reduced",
            AlgebraArg::Full => "full",
        }),
    )
    .param("N", int(n));
    rec.push(Row::new().with("lo", float(lo)).with("hi", float(hi)));
    Ok(rec)
}

fn poly(n: usize, x: Option<f64>) -> OutputRecord {
    let mut rec = OutputRecord::new("poly");
    rec.param("n", int(n as u64));
    let coeffs = cheby_coeffs(n);
    for (i, c) in coeffs.0.iter().enumerate() {
        rec.push(
            Row::new()
                .with("power", int(i as u64))
                .with("coeff", text(c.to_string())),
        );
    }
    if let Some(x) = x {
        rec.param("x", float(x))
            .param("value", float(cheby_u(n, x)));
    }
    rec
}

fn verify_cmd(a: &VerifyArgs) -> Result<(OutputRecord, bool), Error> {
    let opts = VerifyOpts {
        max_len: a.max_len,
        max_label: a.max_label,
        dims: a.n.clone(),
        grid: a.grid,
        random: a.random,
        seed: a.seed,
        t0: a.t0,
    };
    qfusion::chebyshev::decay_constant(a.t0)?;
    let suite_name = a
        .suite
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let results = verify::run(a.suite, &opts);
    let mut rec = OutputRecord::new("verify");
    rec.param("suite", text(suite_name))
        .param("seed", int(a.seed));
    let mut ok = true;
    for r in results {
        ok &= r.failures == 0;
        rec.push(
            Row::new()
                .with("check", text(r.name))
                .with("cases", int(r.cases))
                .with("failures", int(r.failures)),
        );
    }
    Ok((rec, ok))
}

// The error side is cold, so its size does not matter.
#[allow(clippy::result_large_err)]
fn run(cli: &Cli) -> Result<OutputRecord, (Option<OutputRecord>, Failure)> {
    let lib = |r: Result<OutputRecord, Error>| r.map_err(|e| (None, Failure::Lib(e)));
    match &cli.command {
        Command::Fuse { group, n, operands } => lib(fuse(*group, *n, operands)),
        Command::Dims { group, n, labels } => lib(dims(*group, *n, labels)),
        Command::Coeffs(a) => lib(coeffs(a)),
        Command::Certify(a) => lib(certify(a)),
        Command::Form { words } => lib(form(words)),
        Command::Weights { group, t, n, m, t0 } => lib(weights(*group, *t, *n, *m, *t0)),
        Command::Moments {
            k_max,
            subdivisions,
        } => lib(moments(*k_max, *subdivisions)),
        Command::Sample {
            seed,
            count,
            summary,
        } => lib(sample(*seed, *count, *summary)),
        Command::Spectrum { algebra, n } => lib(spectrum(*algebra, *n)),
        Command::Poly { n, x } => Ok(poly(*n, *x)),
        Command::Verify(a) => match verify_cmd(a) {
            Ok((rec, true)) => Ok(rec),
            Ok((rec, false)) => Err((Some(rec), Failure::Verify)),
            Err(e) => Err((None, Failure::Lib(e))),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli) {
        Ok(rec) => {
            if rec.write(cli.format, &mut out).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err((rec, failure)) => {
            if let Some(rec) = rec {
                let _ = rec.write(cli.format, &mut out);
            }
            let _ = out.flush();
            match failure {
                Failure::Verify => {
                    eprintln!("error: verification failed");
                    ExitCode::from(1)
                }
                Failure::Lib(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(exit_code(&e))
                }
            }
        }
    }
}
