//! Command-line front end.
//!
//! Exit codes: 0 contradiction certified or success, 1 consistent
//! configuration, 2 structural error, 3 I/O or parse error.

pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::catalog;
use crate::error::Error;
use crate::geometry::SymplecticPoint;
use crate::magic::MagicConfiguration;
use crate::pauli::PauliObservable;
use crate::search::{self, CapCensus, SearchOptions, SearchOutcome, Shape};

pub use format::{ConfigFile, ParseError};
pub use report::{Report, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONSISTENT: i32 = 1;
pub const EXIT_STRUCTURAL: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bks", version, about = "Pauli-group geometry and Bell-Kochen-Specker configuration checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rebuild the four-qubit magic rectangle and everything derived from it
    Reproduce {
        #[arg(long)]
        json: bool,
    },
    /// Check a configuration file for a contradiction
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Classify the geometry of each context
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Project a configuration from a point, writing a new configuration file
    Complement {
        file: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate configurations
    Search {
        #[arg(long)]
        qubits: usize,
        #[arg(long, value_parser = parse_shape)]
        shape: Shape,
        #[arg(long)]
        anchor: Option<String>,
        #[arg(long, default_value_t = search::DEFAULT_LIMIT)]
        limit: usize,
        /// Restrict rectangle search and census to the built-in rectangle's generators
        #[arg(long)]
        rectangle_seed: bool,
        #[arg(long)]
        no_dedup: bool,
        #[arg(long)]
        json: bool,
    },
}

fn parse_shape(s: &str) -> Result<Shape, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    Structural(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Structural(_) => EXIT_STRUCTURAL,
            CliError::Io(_) | CliError::Parse(_) => EXIT_INPUT,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Io(m) | CliError::Parse(m) | CliError::Structural(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::EmptyWord | Error::InvalidCharacter { .. } => CliError::Parse(e.to_string()),
            other => CliError::Structural(other.to_string()),
        }
    }
}

/// What a command writes to stdout, plus its exit code.
pub struct Output {
    pub text: String,
    pub code: i32,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn load(path: &Path) -> Result<MagicConfiguration, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let file = ConfigFile::parse(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    file.to_configuration()
        .map_err(|e| CliError::Structural(format!("{}: {e}", path.display())))
}

fn parse_point(word: &str) -> Result<SymplecticPoint, CliError> {
    let obs: PauliObservable = word
        .parse()
        .map_err(|e: Error| CliError::Parse(format!("{word:?}: {e}")))?;
    Ok(obs.to_point()?)
}

fn same_words(computed: &[SymplecticPoint], expected: &[&str]) -> bool {
    let mut a: Vec<String> = computed.iter().map(|p| p.word()).collect();
    let mut b: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
    a.sort();
    b.sort();
    a == b
}

fn same_observables(computed: &[PauliObservable], expected: &[&str]) -> bool {
    let mut a: Vec<String> = computed.iter().map(|o| o.to_string()).collect();
    let mut b: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
    a.sort();
    b.sort();
    a == b
}

/// Compares a computed rectangle report against the published listings.
fn reference_checks(report: &Report) -> Vec<report::ReferenceCheck> {
    let mut checks = Vec::new();
    let mut check = |item: String, matches: bool| checks.push(report::ReferenceCheck { item, matches });
    for (c, (name, words)) in report.contexts.iter().zip(catalog::HC_RECTANGLE) {
        check(format!("{name} observables"), same_observables(&c.observables, words));
    }
    let signs: Vec<i8> = report.contexts.iter().map(|c| c.sign.value()).collect();
    check("context signs (+1,+1,+1,+1,-1)".into(), signs == [1, 1, 1, 1, -1]);
    for (i, generator) in catalog::HC_GENERATORS.iter().enumerate() {
        check(
            format!("PG(3,2)_{} (15 points)", i + 1),
            same_words(&report.contexts[i].closure.points, generator),
        );
    }
    check(
        "Fano plane closure of S5".into(),
        same_words(&report.contexts[4].closure.points, &catalog::HC_FANO_PLANE),
    );
    check(
        "off-set line of S5".into(),
        same_words(&report.contexts[4].closure.complement, &catalog::HC_DIAGONAL_LINE),
    );
    for ((i, j), words) in catalog::HC_LINES {
        let line = report
            .lines
            .iter()
            .find(|l| l.contexts == [i - 1, j - 1] && l.rank == 2);
        check(
            format!("L{i}{j}"),
            line.is_some_and(|l| same_words(&l.points, &words)),
        );
    }
    check(
        "shared point IXII".into(),
        report.shared_point.map(|p| p.word()).as_deref() == Some(catalog::HC_PERSPECTIVITY_POINT),
    );
    match &report.twin {
        Some(twin) => {
            for (c, (name, words)) in twin.iter().zip(catalog::HC_TWIN) {
                check(format!("{name} observables"), same_observables(&c.observables, words));
            }
        }
        None => check("twin configuration".into(), false),
    }
    checks
}

pub fn cmd_reproduce(json: bool) -> Result<Output, CliError> {
    let mut report = Report::build(&catalog::hc_rectangle())?;
    report.reference = Some(reference_checks(&report));
    let text = if json {
        to_json(&report)
    } else {
        report.render_text()
    };
    Ok(Output {
        text,
        code: EXIT_OK,
    })
}

pub fn cmd_verify(path: &Path, json: bool) -> Result<Output, CliError> {
    let m = load(path)?;
    let report = Report::build(&m)?;
    let code = report.verdict.exit_code();
    let text = if json {
        to_json(&report)
    } else {
        report.render_text()
    };
    Ok(Output { text, code })
}

#[derive(Serialize)]
struct ClassifyJson<'a> {
    contexts: &'a [report::ContextReport],
    summary: String,
}

pub fn cmd_classify(path: &Path, json: bool) -> Result<Output, CliError> {
    let m = load(path)?;
    let report = Report::build(&m)?;
    let summary = report.classification_summary();
    let text = if json {
        to_json(&ClassifyJson {
            contexts: &report.contexts,
            summary,
        })
    } else {
        let mut out = String::new();
        for (i, c) in report.contexts.iter().enumerate() {
            let name = c.name.clone().unwrap_or(format!("#{}", i + 1));
            out.push_str(&format!(
                "{name}: {} (closure rank {}{})\n",
                c.classification,
                c.span_rank,
                if c.totally_isotropic { ", totally isotropic" } else { "" }
            ));
        }
        out.push_str(&summary);
        out.push('\n');
        out
    };
    Ok(Output {
        text,
        code: EXIT_OK,
    })
}

#[derive(Serialize)]
struct ContextJson {
    name: Option<String>,
    observables: Vec<PauliObservable>,
    sign: crate::pauli::Sign,
}

fn contexts_json(m: &MagicConfiguration) -> Vec<ContextJson> {
    m.contexts()
        .iter()
        .map(|c| ContextJson {
            name: c.name().map(str::to_string),
            observables: c.canonical_observables(),
            sign: c.sign(),
        })
        .collect()
}

pub fn cmd_complement(path: &Path, point: &str, json: bool) -> Result<Output, CliError> {
    let m = load(path)?;
    let p = parse_point(point)?;
    let twin = crate::magic::complement_config(&m, p)?;
    let text = if json {
        #[derive(Serialize)]
        struct Json {
            point: SymplecticPoint,
            contexts: Vec<ContextJson>,
        }
        to_json(&Json {
            point: p,
            contexts: contexts_json(&twin),
        })
    } else {
        ConfigFile::from_configuration(&twin).to_string()
    };
    Ok(Output {
        text,
        code: EXIT_OK,
    })
}

#[derive(Serialize)]
struct SearchJson {
    shape: Shape,
    qubits: usize,
    anchor: Option<SymplecticPoint>,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    results: Option<Vec<SearchResultJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    census: Option<Vec<CapCensus>>,
}

#[derive(Serialize)]
struct SearchResultJson {
    contexts: Vec<ContextJson>,
    verdict: Verdict,
}

pub fn cmd_search(options: &SearchOptions, json: bool) -> Result<Output, CliError> {
    let outcome = search::run_search(options)?;
    let text = match (&outcome, json) {
        (SearchOutcome::Configurations(found), true) => {
            let results = found
                .iter()
                .map(|m| {
                    let cert = crate::magic::parity_witness(m)?;
                    Ok(SearchResultJson {
                        contexts: contexts_json(m),
                        verdict: Verdict::from_certificate(&cert),
                    })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            to_json(&SearchJson {
                shape: options.shape,
                qubits: options.qubit_count,
                anchor: options.anchor,
                count: results.len(),
                results: Some(results),
                census: None,
            })
        }
        (SearchOutcome::Configurations(found), false) => {
            let mut out = format!("# {} {} configuration(s)\n", found.len(), options.shape);
            for (k, m) in found.iter().enumerate() {
                out.push_str(&format!("\n# result {}\n", k + 1));
                out.push_str(&ConfigFile::from_configuration(m).to_string());
            }
            out
        }
        (SearchOutcome::Census(census), true) => to_json(&SearchJson {
            shape: options.shape,
            qubits: options.qubit_count,
            anchor: options.anchor,
            count: census.len(),
            results: None,
            census: Some(census.clone()),
        }),
        (SearchOutcome::Census(census), false) => {
            let mut out = format!("# elliptic quadric census over {} PG(3,2)(s)\n", census.len());
            for c in census {
                let ambient: Vec<String> = c.ambient.iter().map(|p| p.word()).collect();
                out.push_str(&format!("{} quadrics in {{{}}}\n", c.count, ambient.join(" ")));
            }
            out
        }
    };
    Ok(Output {
        text,
        code: EXIT_OK,
    })
}

fn dispatch(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Reproduce { json } => cmd_reproduce(json),
        Command::Verify { file, json } => cmd_verify(&file, json),
        Command::Classify { file, json } => cmd_classify(&file, json),
        Command::Complement { file, point, json } => cmd_complement(&file, &point, json),
        Command::Search {
            qubits,
            shape,
            anchor,
            limit,
            rectangle_seed,
            no_dedup,
            json,
        } => {
            let mut options = SearchOptions::new(shape, qubits).limit(limit);
            options.dedup = !no_dedup;
            if let Some(word) = anchor {
                options = options.anchor(parse_point(&word)?);
            }
            if rectangle_seed {
                options = options.seed(search::rectangle_seed());
            }
            cmd_search(&options, json)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(output) => {
            let _ = stdout.write_all(output.text.as_bytes());
            output.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.exit_code()
        }
    }
}
