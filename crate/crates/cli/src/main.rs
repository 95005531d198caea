use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mfhrr::corpus::{filtered_corpus, hrr_case, run_corpus, CorpusReport};
use mfhrr::forms::chern;
use mfhrr::homology::euler_chi;
use mfhrr::mf::{MatrixFactorization, MfFile};
use mfhrr::poly::{parse_poly, Ring};
use mfhrr::residue::{res_general, residue_pairing};
use mfhrr::selftest::{run_case, run_suite, run_thm112, SelftestConfig, SuiteResult, SUITES};
use mfhrr::{Error, Poly, Rational};

#[derive(Parser)]
#[command(name = "mfhrr", version, about = "Exact matrix factorization and residue computations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Grothendieck residue of num·dx / (g1,…,gn).
    Residue {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long)]
        num: String,
        #[arg(long, value_delimiter = ',', required = true)]
        dens: Vec<String>,
    },
    /// Chern character of a factorization, as a Milnor class.
    Chern { mf: PathBuf },
    /// Euler pairing χ(X, Y).
    Chi(Pair),
    /// Residue pairing ⟨ch X, ch Y⟩.
    Pairing(Pair),
    /// Compare χ(X, Y) with the signed residue pairing.
    HrrVerify(Pair),
    /// Run the built-in corpus.
    Corpus {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Include per-case wall-clock times (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Randomized property suites.
    Selftest(Selftest),
}

#[derive(Args)]
struct Pair {
    x: PathBuf,
    y: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Selftest {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    len: usize,
    #[arg(long, default_value_t = 50)]
    cases: usize,
    /// Run only this suite.
    #[arg(long)]
    suite: Option<String>,
    /// Rerun one case of --suite from a reported case seed.
    #[arg(long, requires = "suite")]
    case_seed: Option<u64>,
    #[command(subcommand)]
    only: Option<SelftestOnly>,
}

#[derive(Subcommand)]
enum SelftestOnly {
    /// The one-variable trace/residue verification.
    Thm112 {
        #[arg(long, default_value_t = 5)]
        jmax: usize,
    },
}

enum Failure {
    Engine(Error),
    Io(String),
    Usage(String),
    Verdict(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Engine(Error::NotZeroDimensional | Error::NotIsolated) => 2,
            Failure::Engine(Error::OddDimension(_)) => 4,
            Failure::Verdict(_) => 3,
            _ => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Engine(e) => write!(f, "{}", e),
            Failure::Io(m) | Failure::Usage(m) | Failure::Verdict(m) => f.write_str(m),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn load_mf(path: &Path) -> std::result::Result<MatrixFactorization<Rational>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {}", path.display(), e)))?;
    let file: MfFile =
        serde_json::from_str(&text).map_err(|e| Failure::Io(format!("{}: {}", path.display(), e)))?;
    Ok(MatrixFactorization::from_json(&file)?)
}

fn load_pair(p: &Pair) -> std::result::Result<(MatrixFactorization<Rational>, MatrixFactorization<Rational>), Failure> {
    let x = load_mf(&p.x)?;
    let y = load_mf(&p.y)?;
    if x.ring() != y.ring() {
        return Err(Error::RingMismatch.into());
    }
    if x.potential() != y.potential() {
        return Err(Error::PotentialMismatch.into());
    }
    Ok((x, y))
}

fn residue(vars: &[String], num: &str, dens: &[String]) -> Outcome {
    let ring = Ring::new(vars);
    let g: Poly = parse_poly(num, &ring)?;
    let dens = dens
        .iter()
        .map(|d| parse_poly(d, &ring))
        .collect::<mfhrr::Result<Vec<_>>>()?;
    println!("{}", res_general(&g, &dens)?);
    Ok(())
}

fn pairing(x: &MatrixFactorization<Rational>, y: &MatrixFactorization<Rational>) -> mfhrr::Result<Rational> {
    residue_pairing(x.potential(), &chern(x)?, &chern(y)?)
}

fn hrr_verify(p: &Pair) -> Outcome {
    let (x, y) = load_pair(p)?;
    let case = hrr_case(&x, &y)?;
    println!("{}", serde_json::to_string_pretty(&case).expect("serializable report"));
    if case.verdict {
        Ok(())
    } else {
        Err(Failure::Verdict(format!(
            "identity fails: chi = {}, sign * pairing = {} * {}",
            case.chi, case.sign, case.pairing
        )))
    }
}

fn write_csv(report: &CorpusReport) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record([
        "entry", "f", "x", "y", "n", "chi", "theta", "ch_x", "ch_y", "pairing", "sign", "verdict", "millis",
    ])?;
    for c in &report.cases {
        let r = &c.result;
        w.write_record([
            c.entry.clone(),
            c.f.clone(),
            c.x.clone(),
            c.y.clone(),
            r.n.to_string(),
            r.chi.to_string(),
            r.theta.to_string(),
            r.ch_x.clone(),
            r.ch_y.clone(),
            r.pairing.clone(),
            r.sign.to_string(),
            (r.verdict && c.expected_ok != Some(false)).to_string(),
            c.millis.map(|m| m.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()
}

fn corpus(filter: Option<&str>, format: Format, timings: bool) -> Outcome {
    let report = run_corpus(&filtered_corpus(filter), timings)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable report")),
        Format::Csv => write_csv(&report).map_err(|e| Failure::Io(e.to_string()))?,
    }
    eprintln!("{} cases, {} hold, {} fail", report.total, report.passed, report.failed);
    if report.all_hold() {
        Ok(())
    } else {
        Err(Failure::Verdict(format!("{} verdicts fail", report.failed)))
    }
}

fn print_suite(r: &SuiteResult) {
    let status = if r.ok() { "ok" } else { "FAIL" };
    println!("{:<16} {:>4}/{:<4} {}", r.suite, r.passed, r.cases, status);
}

fn selftest(s: &Selftest) -> Outcome {
    if let Some(SelftestOnly::Thm112 { jmax }) = s.only {
        let r = run_thm112(jmax)?;
        print_suite(&r);
        return if r.ok() {
            Ok(())
        } else {
            Err(Failure::Verdict(r.message.unwrap_or_default()))
        };
    }
    let cfg = SelftestConfig {
        seed: s.seed,
        len: s.len,
        cases: s.cases,
    };
    let names: Vec<&str> = match &s.suite {
        Some(name) if SUITES.contains(&name.as_str()) => vec![name.as_str()],
        Some(name) => return Err(Failure::Usage(format!("unknown suite `{}`; known: {}", name, SUITES.join(", ")))),
        None => SUITES.to_vec(),
    };
    if let Some(seed) = s.case_seed {
        let name = names[0];
        return match run_case(name, seed, &cfg).expect("known suite") {
            Ok(true) => {
                println!("{} case {}: ok", name, seed);
                Ok(())
            }
            Ok(false) => Err(Failure::Verdict(format!("{} case {}: property does not hold", name, seed))),
            Err(e) => Err(e.into()),
        };
    }
    println!("seed {} len {} cases {}", cfg.seed, cfg.len, cfg.cases);
    for name in &names {
        let r = run_suite(name, &cfg).expect("known suite");
        print_suite(&r);
        if !r.ok() {
            let seed = r.failing_seed.unwrap_or_default();
            return Err(Failure::Verdict(format!(
                "{}: {}; reproduce with: selftest --seed {} --len {} --suite {} --case-seed {}",
                r.suite,
                r.message.unwrap_or_default(),
                cfg.seed,
                cfg.len,
                r.suite,
                seed
            )));
        }
    }
    if s.suite.is_none() {
        let r = run_thm112(5)?;
        print_suite(&r);
        if !r.ok() {
            return Err(Failure::Verdict(r.message.unwrap_or_default()));
        }
    }
    Ok(())
}

fn configure_threads() {
    if let Some(n) = std::env::var("MFHRR_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            // fails only if a pool already exists
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Residue { vars, num, dens } => residue(&vars, &num, &dens),
        Cmd::Chern { mf } => {
            let x = load_mf(&mf)?;
            println!("{}", chern(&x)?);
            Ok(())
        }
        Cmd::Chi(p) => {
            let (x, y) = load_pair(&p)?;
            println!("{}", euler_chi(&x, &y)?);
            Ok(())
        }
        Cmd::Pairing(p) => {
            let (x, y) = load_pair(&p)?;
            println!("{}", pairing(&x, &y)?);
            Ok(())
        }
        Cmd::HrrVerify(p) => hrr_verify(&p),
        Cmd::Corpus { filter, format, timings } => corpus(filter.as_deref(), format, timings),
        Cmd::Selftest(s) => selftest(&s),
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {
            let _ = io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = io::stdout().flush();
            eprintln!("error: {}", e);
            ExitCode::from(e.code())
        }
    }
}
