use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use seqop::bar::{format_bar, parse_bar};
use seqop::cochains::CochainAlgebra;
use seqop::coefficients::coefficient;
use seqop::diagonal::diagonal;
use seqop::free_algebra::FreeAlgebra;
use seqop::phi::phi;
use seqop::simplicial::SimplicialSet;
use seqop::steenrod::{
    check_simply_connected_model, loop_cohomology, BarConstruction, Steenrod, TableEntry,
};
use seqop::verify::{Suite, VerificationReport, VerifyParams};
use seqop::{Coeff, Error, Field, OperadElement, Surjection, F2, F3, F5, F7, Z};

#[derive(Parser)]
#[command(
    name = "seqop",
    version,
    about = "Computations with the sequence operad"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (0 picks the number of CPUs).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct RingArg {
    /// Coefficient ring: Z, F2, F3, F5, F7, or Fp together with --prime.
    #[arg(long, default_value = "Z")]
    ring: String,
    #[arg(long)]
    prime: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficient element C(f; e^1, ..., e^k).
    Coeff {
        surjection: String,
        multiplicities: Vec<usize>,
        #[command(flatten)]
        ring: RingArg,
    },
    /// Evaluate Φ(g; x^1, ..., x^k) on bar elements of a free algebra.
    PhiEval {
        /// An operad element such as "(121)" or "(12)+(21)".
        element: String,
        /// Bar elements such as "[x|y]" or "[x]+2[y]".
        bars: Vec<String>,
        #[command(flatten)]
        ring: RingArg,
        /// Generator declaration `name:degree[:differential]`; undeclared
        /// names default to degree 2 with zero differential.
        #[arg(long = "gen")]
        generators: Vec<String>,
        /// Smallest generator degree accepted
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        min_degree: i32,
    },
    /// Print the diagonal Δ(f).
    Diagonal {
        element: String,
        #[command(flatten)]
        ring: RingArg,
    },
    /// Steenrod operations on H*(B N̄*(X); F_p).
    SteenrodTable {
        #[arg(long, default_value_t = 2)]
        prime: u64,
        /// Truncation cutoff D; classes need p|c| + 1 ≤ D.
        #[arg(long, default_value_t = 5)]
        max_degree: i32,
        /// A simplicial set file or a built-in: S<n>, RP2, D<n>, or A*B.
        #[arg(long, default_value = "S2")]
        space: String,
    },
    /// Dimensions of H^n(B N̄*(X); F_p) and the operations on them.
    LoopCohomology {
        #[arg(long, default_value = "S2")]
        space: String,
        #[arg(long, default_value_t = 2)]
        prime: u64,
        #[arg(long, default_value_t = 4)]
        max_degree: i32,
    },
    /// Run verification suites.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Longest surjection sequence enumerated [default: 7]
        #[arg(long)]
        max_entries: Option<usize>,
        /// Largest arity k enumerated [default: 3]
        #[arg(long)]
        max_arity: Option<usize>,
        /// Longest bar element used as an input [default: 4]
        #[arg(long)]
        max_bar_length: Option<usize>,
        /// Random cases per check when exhaustive enumeration is too large [default: 200]
        #[arg(long)]
        samples: Option<usize>,
        /// Seed for the sampled cases
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Operad,
    Coefficients,
    Phi,
    Diagonal,
    Steenrod,
    All,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

#[derive(Clone, Copy)]
enum Ring {
    Z,
    F2,
    F3,
    F5,
    F7,
}

impl RingArg {
    fn resolve(&self) -> Result<Ring, Failure> {
        let name = self.ring.to_ascii_uppercase();
        let p = match name.as_str() {
            "Z" => return Ok(Ring::Z),
            "FP" => self
                .prime
                .ok_or_else(|| Failure::Usage("--ring Fp needs --prime".into()))?,
            other => other
                .strip_prefix('F')
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| Failure::Usage(format!("unknown ring `{}`", self.ring)))?,
        };
        prime_ring(p)
    }
}

fn prime_ring(p: u64) -> Result<Ring, Failure> {
    match p {
        2 => Ok(Ring::F2),
        3 => Ok(Ring::F3),
        5 => Ok(Ring::F5),
        7 => Ok(Ring::F7),
        _ => Err(Error::UnsupportedPrime(p).into()),
    }
}

macro_rules! with_ring {
    ($ring:expr, $f:ident ( $($arg:expr),* )) => {
        match $ring {
            Ring::Z => $f::<Z>($($arg),*),
            Ring::F2 => $f::<F2>($($arg),*),
            Ring::F3 => $f::<F3>($($arg),*),
            Ring::F5 => $f::<F5>($($arg),*),
            Ring::F7 => $f::<F7>($($arg),*),
        }
    };
}

macro_rules! with_field {
    ($p:expr, $f:ident ( $($arg:expr),* )) => {
        match prime_ring($p)? {
            Ring::F2 => $f::<F2>($($arg),*),
            Ring::F3 => $f::<F3>($($arg),*),
            Ring::F5 => $f::<F5>($($arg),*),
            Ring::F7 => $f::<F7>($($arg),*),
            Ring::Z => unreachable!("prime_ring never returns Z"),
        }
    };
}

fn emit(format: Format, text: &str, doc: Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Structured => println!("{}", serde_json::to_string_pretty(&doc).expect("json")),
    }
}

fn ring_name(r: u64) -> String {
    if r == 0 {
        "Z".into()
    } else {
        format!("F{r}")
    }
}

fn run_coeff<R: Coeff>(format: Format, f: &str, e: &[usize]) -> Outcome {
    let f: Surjection = f.parse()?;
    if e.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            got: e.len(),
        }
        .into());
    }
    if e.contains(&0) {
        return Err(Failure::Usage("multiplicities must be positive".into()));
    }
    let c = coefficient::<R>(&f, e);
    let text = c.to_string();
    emit(
        format,
        &text,
        json!({"surjection": f.to_string(), "multiplicities": e, "ring": ring_name(R::CHARACTERISTIC), "value": text}),
    );
    Ok(())
}

fn generator_names(literal: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in literal.chars().chain(std::iter::once(' ')) {
        if ch.is_alphanumeric() || ch == '_' {
            cur.push(ch);
        } else {
            if cur
                .chars()
                .next()
                .is_some_and(|c| c.is_alphabetic() || c == '_')
            {
                out.push(std::mem::take(&mut cur));
            }
            cur.clear();
        }
    }
    out
}

fn run_phi<R: Coeff>(
    format: Format,
    element: &str,
    bars: &[String],
    gens: &[String],
    min_degree: i32,
) -> Outcome {
    let mut alg = FreeAlgebra::<R>::with_min_degree(min_degree);
    for decl in gens {
        let parts: Vec<&str> = decl.splitn(3, ':').collect();
        let degree = parts
            .get(1)
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Failure::Usage(format!("bad generator declaration `{decl}`")))?;
        alg.add_generator_str(parts[0], degree, parts.get(2).copied().unwrap_or(""))?;
    }
    for b in bars {
        for name in generator_names(b) {
            if alg.id(&name).is_err() {
                alg.add_generator_str(&name, 2, "")?;
            }
        }
    }
    let g: OperadElement<R> = element.parse()?;
    let xs = bars
        .iter()
        .map(|b| parse_bar(b, |e| alg.parse_element(e)))
        .collect::<seqop::Result<Vec<_>>>()?;
    let value = phi(&alg, &g, &xs)?;
    let text = format_bar(&alg, &value);
    emit(
        format,
        &text,
        json!({"element": g.to_string(), "inputs": bars, "ring": ring_name(R::CHARACTERISTIC), "value": text}),
    );
    Ok(())
}

fn run_diagonal<R: Coeff>(format: Format, element: &str) -> Outcome {
    let x: OperadElement<R> = element.parse()?;
    let text = diagonal(&x).to_string();
    emit(
        format,
        &text,
        json!({"element": x.to_string(), "ring": ring_name(R::CHARACTERISTIC), "value": text}),
    );
    Ok(())
}

fn builtin(name: &str) -> Option<SimplicialSet> {
    if let Some((a, b)) = name.split_once('*') {
        return Some(SimplicialSet::product(
            &builtin(a.trim())?,
            &builtin(b.trim())?,
        ));
    }
    let upper = name.to_ascii_uppercase();
    if upper == "RP2" {
        return Some(SimplicialSet::projective_plane());
    }
    if let Some(n) = upper.strip_prefix('S').and_then(|n| n.parse().ok()) {
        return Some(SimplicialSet::sphere(n));
    }
    if let Some(n) = upper.strip_prefix('D').and_then(|n| n.parse().ok()) {
        return Some(SimplicialSet::standard_simplex(n));
    }
    None
}

fn load_space(name: &str) -> Result<SimplicialSet, Failure> {
    if let Some(x) = builtin(name) {
        return Ok(x);
    }
    let text = std::fs::read_to_string(name)
        .map_err(|e| Failure::Usage(format!("cannot read `{name}`: {e}")))?;
    Ok(SimplicialSet::from_json(&text)?)
}

fn format_table(entries: &[TableEntry]) -> String {
    entries
        .iter()
        .map(|t| {
            format!(
                "H^{} class {}  {:<7} -> H^{} {:?}",
                t.source_degree, t.class, t.operation, t.target_degree, t.result
            )
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn operation_table<F: Field>(x: &SimplicialSet, cutoff: i32) -> Result<Vec<TableEntry>, Failure> {
    check_simply_connected_model(x)?;
    let cochains = CochainAlgebra::reduced(x);
    let bar = BarConstruction(&cochains);
    let st = Steenrod::<F, _>::new(&bar, cutoff)?;
    Ok(st.table()?)
}

fn run_steenrod<F: Field>(format: Format, space: &str, cutoff: i32) -> Outcome {
    let x = load_space(space)?;
    let table = operation_table::<F>(&x, cutoff)?;
    let text = if table.is_empty() {
        "no classes within the cutoff".to_string()
    } else {
        format_table(&table)
    };
    emit(
        format,
        &text,
        json!({"space": space, "prime": F::CHARACTERISTIC, "cutoff": cutoff, "table": table}),
    );
    Ok(())
}

fn run_loop<F: Field>(format: Format, space: &str, max_degree: i32) -> Outcome {
    let x = load_space(space)?;
    let dims = loop_cohomology::<F>(&x, max_degree)?;
    let table = operation_table::<F>(&x, max_degree + 1)?;
    let mut text = String::new();
    for (n, d) in dims.iter().enumerate() {
        text.push_str(&format!("H^{n}: {d}\n"));
    }
    text.push_str(&format_table(&table));
    let dims_doc: BTreeMap<String, usize> = dims
        .iter()
        .enumerate()
        .map(|(n, d)| (n.to_string(), *d))
        .collect();
    emit(
        format,
        text.trim_end(),
        json!({"space": space, "prime": F::CHARACTERISTIC, "max_degree": max_degree, "dimensions": dims_doc, "operations": table}),
    );
    Ok(())
}

fn format_report(r: &VerificationReport) -> String {
    let mut out = format!("suite {}\n", r.suite);
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    out.push_str(&format!("  params: {}\n", params.join(" ")));
    for c in &r.checks {
        let status = if c.passed() { "ok" } else { "FAILED" };
        out.push_str(&format!(
            "  [{status}] {} ({}): {} cases, {} failures\n",
            c.name, c.range, c.cases, c.failed
        ));
        for f in &c.failures {
            out.push_str(&format!("      {}: {}\n", f.case, f.detail));
        }
    }
    for (k, v) in &r.observations {
        out.push_str(&format!("  note {k}: {v}\n"));
    }
    out.push_str(if r.passed() {
        "  result: pass"
    } else {
        "  result: FAIL"
    });
    out
}

fn run_verify(format: Format, suite: SuiteArg, params: VerifyParams) -> Outcome {
    let suites: Vec<Suite> = match suite {
        SuiteArg::Operad => vec![Suite::Operad],
        SuiteArg::Coefficients => vec![Suite::Coefficients],
        SuiteArg::Phi => vec![Suite::Phi],
        SuiteArg::Diagonal => vec![Suite::Diagonal],
        SuiteArg::Steenrod => vec![Suite::Steenrod],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let mut reports = Vec::new();
    for s in suites {
        let r = s.run(&params);
        eprintln!("{}: {:.1} s", r.suite, r.wall_time.as_secs_f64());
        reports.push(r);
    }
    let text = reports
        .iter()
        .map(format_report)
        .collect::<Vec<_>>()
        .join("\n");
    emit(format, &text, json!(reports));
    if reports.iter().all(VerificationReport::passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Coeff {
            surjection,
            multiplicities,
            ring,
        } => with_ring!(
            ring.resolve()?,
            run_coeff(format, &surjection, &multiplicities)
        ),
        Command::PhiEval {
            element,
            bars,
            ring,
            generators,
            min_degree,
        } => with_ring!(
            ring.resolve()?,
            run_phi(format, &element, &bars, &generators, min_degree)
        ),
        Command::Diagonal { element, ring } => {
            with_ring!(ring.resolve()?, run_diagonal(format, &element))
        }
        Command::SteenrodTable {
            prime,
            max_degree,
            space,
        } => with_field!(prime, run_steenrod(format, &space, max_degree)),
        Command::LoopCohomology {
            space,
            prime,
            max_degree,
        } => with_field!(prime, run_loop(format, &space, max_degree)),
        Command::Verify {
            suite,
            max_entries,
            max_arity,
            max_bar_length,
            samples,
            seed,
        } => {
            let d = VerifyParams::default();
            let params = VerifyParams {
                max_entries: max_entries.unwrap_or(d.max_entries),
                max_arity: max_arity.unwrap_or(d.max_arity),
                max_bar_length: max_bar_length.unwrap_or(d.max_bar_length),
                samples: samples.unwrap_or(d.samples),
                seed,
            };
            run_verify(format, suite, params)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .expect("thread pool configured once");
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
