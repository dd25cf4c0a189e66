use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use braidcong::congruence::{bezout_decompose, in_congruence, BezoutTarget};
use braidcong::dihedral::{derive_certificate, verify_certificate_json};
use braidcong::image::{check_dihedral, enumerate_image, ImageExport, ImageGens, DEFAULT_ELEMENT_BUDGET};
use braidcong::linalg::IntMatrix;
use braidcong::rep::{evaluate, Evaluated, RepName};
use braidcong::report::{ExperimentConfig, OutputFormat, Status};
use braidcong::suites::{run_suite, Suite};
use braidcong::{parse_word, parse_word_infer, BraidWord, Error, GenKind};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "braidcong", version, about = "Congruence subgroups of virtual braid groups, computed exactly")]
struct Cli {
    /// Seed for every sampler.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// json or csv. Matrices print as aligned text when omitted.
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// Element budget for enumerations.
    #[arg(long, global = true, env = "BRAIDCONG_BUDGET", default_value_t = DEFAULT_ELEMENT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a representation on a word.
    Eval {
        word: String,
        #[arg(long)]
        n: Option<usize>,
        /// burau, minus, plus, vburau or perm.
        #[arg(long, default_value = "vburau")]
        rep: RepName,
        /// Reduce the integer matrix modulo m.
        #[arg(long)]
        m: Option<u64>,
    },
    /// Test membership in vB_n[m]. Exit 0 for members, 1 otherwise.
    Member {
        word: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: u64,
    },
    /// Enumerate the image of vB_n (or B_n) in GL_n(Z/mZ).
    Image {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        /// vburau or minus.
        #[arg(long, default_value = "vburau")]
        gens: ImageGens,
        /// Include every element matrix in JSON output.
        #[arg(long)]
        elements: bool,
    },
    /// Run a verification suite and write its report.
    Verify(VerifyArgs),
    /// Derive a relator certificate for a two-strand word in ker q_m.
    Certify {
        word: String,
        #[arg(long)]
        m: u64,
    },
    /// Check a certificate file.
    CheckCert { path: PathBuf },
    /// Split s_i or t_i as u·v with u in vB_n[2] and v in vB_n[l], l odd.
    Decompose {
        /// A single letter such as s1 or t2.
        #[arg(long)]
        target: String,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// all, relations, fig2, arnold, vpure, lcm, product, welded, dihedral, closure or torsion.
    suite: Suite,
    /// Run only this strand count.
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    n: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    m_min: Option<u64>,
    #[arg(long)]
    m_max: Option<u64>,
    /// Largest odd level for Bezout decompositions.
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    constructed: Option<usize>,
    #[arg(long)]
    certificates: Option<usize>,
    #[arg(long)]
    exhaustive_len_n2: Option<usize>,
    #[arg(long)]
    exhaustive_len_n3: Option<usize>,
    #[arg(long)]
    sample_len: Option<usize>,
}

/// Error plus the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotInKernel { .. } | Error::BudgetExceeded { .. } => FAIL,
            _ => USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: USAGE, message: message.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("braidcong: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let text = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| usage(format!("stdout: {e}"))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn read_word(text: &str, n: Option<usize>) -> Result<BraidWord, Failure> {
    Ok(match n {
        Some(n) => parse_word(text, n)?,
        None => parse_word_infer(text)?,
    })
}

fn matrix_csv(rows: Vec<Vec<String>>) -> Result<String, Failure> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.write_record(row).map_err(|e| usage(format!("csv: {e}")))?;
    }
    let bytes = writer.into_inner().map_err(|e| usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

fn no_csv(format: Option<OutputFormat>) -> Result<bool, Failure> {
    match format {
        Some(OutputFormat::Csv) => Err(usage("csv output is available for eval and verify only")),
        Some(OutputFormat::Json) => Ok(true),
        None => Ok(false),
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Eval { word, n, rep, m } => {
            let w = read_word(word, *n)?;
            let text = match (evaluate(*rep, &w)?, *m) {
                (Evaluated::Laurent(_), Some(_)) => {
                    return Err(usage("reduction mod m needs an integer representation (minus, plus, vburau, perm)"))
                }
                (Evaluated::Laurent(x), None) => {
                    let rows: Vec<Vec<String>> =
                        x.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect();
                    match cli.format {
                        None => x.to_string(),
                        Some(OutputFormat::Json) => {
                            to_json(&json!({ "n": x.dim(), "ring": "Z[t,t^-1]", "rows": rows }))
                        }
                        Some(OutputFormat::Csv) => matrix_csv(rows)?,
                    }
                }
                (Evaluated::Int(x), Some(m)) => {
                    let reduced = x.reduce_mod(i64::try_from(m).map_err(|_| usage("modulus too large"))?)?;
                    match cli.format {
                        None => reduced.to_string(),
                        Some(OutputFormat::Json) => to_json(&reduced.to_json()),
                        Some(OutputFormat::Csv) => matrix_csv(reduced.to_json().rows)?,
                    }
                }
                (Evaluated::Int(x), None) => int_output(&x, cli.format)?,
            };
            emit(out, &text)?;
            Ok(PASS)
        }
        Command::Member { word, n, m } => {
            let w = read_word(word, *n)?;
            let verdict = in_congruence(&w, *m)?;
            let text = if no_csv(cli.format)? {
                to_json(&json!({
                    "word": w.to_string(),
                    "n": w.strands(),
                    "m": m,
                    "member": verdict.in_subgroup,
                    "matrix": verdict.matrix.to_json(),
                }))
            } else {
                let label = if verdict.in_subgroup { "member" } else { "non-member" };
                format!("{label}\n{}", verdict.matrix)
            };
            emit(out, &text)?;
            Ok(if verdict.in_subgroup { PASS } else { FAIL })
        }
        Command::Image { n, m, gens, elements } => {
            let image = enumerate_image(*n, *m, *gens, cli.budget, false)?;
            let dihedral =
                if *n == 2 && *gens == ImageGens::VirtualBurau { Some(check_dihedral(&image)?) } else { None };
            #[derive(Serialize)]
            struct Summary {
                #[serde(flatten)]
                export: ImageExport,
                #[serde(skip_serializing_if = "Option::is_none")]
                dihedral: Option<bool>,
            }
            let text = if no_csv(cli.format)? {
                to_json(&Summary { export: image.export(*elements), dihedral })
            } else {
                let mut s = format!("n: {n}\nm: {m}\ngens: {gens}\norder: {}", image.order());
                if let Some(d) = dihedral {
                    s.push_str(&format!("\ndihedral: {d}"));
                }
                s
            };
            emit(out, &text)?;
            Ok(PASS)
        }
        Command::Verify(args) => verify(cli, args),
        Command::Certify { word, m } => {
            let w = parse_word(word, 2)?;
            let cert = derive_certificate(&w, *m)?;
            emit(out, &to_json(&cert.to_json()))?;
            Ok(PASS)
        }
        Command::CheckCert { path } => {
            let text =
                std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let valid = verify_certificate_json(&text)?;
            let shown = if no_csv(cli.format)? {
                to_json(&json!({ "valid": valid }))
            } else {
                (if valid { "valid" } else { "invalid" }).to_string()
            };
            emit(out, &shown)?;
            Ok(if valid { PASS } else { FAIL })
        }
        Command::Decompose { target, l, n } => {
            let w = read_word(target, *n)?;
            let [g] = w.letters() else {
                return Err(usage(format!("target must be a single letter such as s1 or t1, got {target:?}")));
            };
            let target = match g.kind {
                GenKind::Sigma => BezoutTarget::SigmaAt(g.index),
                GenKind::Tau => BezoutTarget::TauAt(g.index),
                GenKind::SigmaInv => return Err(usage("target must be s_i or t_i")),
            };
            let d = bezout_decompose(target, *l, w.strands())?;
            let verified = d.verify()?;
            let text = if no_csv(cli.format)? {
                to_json(&json!({
                    "target": g.to_string(),
                    "n": w.strands(),
                    "l": l,
                    "a": d.a,
                    "b": d.b,
                    "u": d.u.to_string(),
                    "v": d.v.to_string(),
                    "verified": verified,
                }))
            } else {
                format!("a: {}\nb: {}\nu: {}\nv: {}\nverified: {verified}", d.a, d.b, d.u, d.v)
            };
            emit(out, &text)?;
            Ok(if verified { PASS } else { FAIL })
        }
    }
}

fn int_output(x: &IntMatrix, format: Option<OutputFormat>) -> Result<String, Failure> {
    Ok(match format {
        None => x.to_string(),
        Some(OutputFormat::Json) => to_json(&x.to_json()),
        Some(OutputFormat::Csv) => matrix_csv(x.to_json().rows)?,
    })
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<u8, Failure> {
    let mut config = ExperimentConfig {
        seed: cli.seed,
        budget: cli.budget,
        format: cli.format.unwrap_or_default(),
        output: cli.out.clone(),
        ..Default::default()
    };
    if let Some(n) = args.n {
        config.n_min = n;
        config.n_max = n;
    }
    macro_rules! set {
        ($($field:ident <- $arg:ident),*) => {
            $(if let Some(v) = args.$arg { config.$field = v; })*
        };
    }
    set!(n_min <- n_min, n_max <- n_max, m_min <- m_min, m_max <- m_max, l_max <- l, samples <- samples,
         constructed <- constructed, certificates <- certificates, exhaustive_len_n2 <- exhaustive_len_n2,
         exhaustive_len_n3 <- exhaustive_len_n3, sample_len <- sample_len);
    let report = run_suite(args.suite, &config)?;
    emit(cli.out.as_deref(), &report.render(config.format)?)?;
    eprintln!(
        "{} checks: {} pass, {} fail, {} skip",
        report.checks.len(),
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Skip)
    );
    Ok(if report.passed() { PASS } else { FAIL })
}
