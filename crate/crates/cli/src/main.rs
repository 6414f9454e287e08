//! `vpconf`: conformance checking and automaton utilities over JSON documents.
//!
//! Exit codes: 0 success (PASS, accepted, valid), 1 negative answer (FAIL,
//! rejected, invalid), 2 unreadable input or a broken precondition.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use vpconf::conformance::{self, Emptiness, Outcome};
use vpconf::format::{self, Automaton};
use vpconf::{oracle, Iovpts, PartitionedAlphabet, Vpa, Vpts};

const DEFAULT_ORACLE_LEN: usize = 6;

#[derive(Parser)]
#[command(name = "vpconf", version, about = "Visibly pushdown conformance checking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an implementation conforms to a specification.
    Check(CheckArgs),
    /// Fault-model automaton for a specification and D/F languages.
    Suite { spec: PathBuf, desired: PathBuf, forbidden: PathBuf },
    /// Complement of a deterministic VPA.
    Complement { file: PathBuf },
    /// Union of two deterministic VPAs.
    Union { left: PathBuf, right: PathBuf },
    /// Intersection of two VPAs.
    Intersect { left: PathBuf, right: PathBuf },
    /// Drop the transitions no run can take.
    Contract { file: PathBuf },
    /// The VPA whose language is the observable traces of a VPTS.
    ToVpa { file: PathBuf },
    /// Print EMPTY or a shortest accepted word.
    Empty { file: PathBuf },
    /// Accepted words (VPA) or observable traces (VPTS) up to a length.
    Enumerate {
        file: PathBuf,
        /// Defaults to VPCONF_ORACLE_LEN, or 6.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Exit 0 if the word is accepted (VPA) or observable (VPTS), 1 if not.
    Member {
        file: PathBuf,
        /// Symbols, space separated or as one string when all symbols are
        /// single characters; `ε` or nothing for the empty word.
        word: Vec<String>,
    },
    /// Report every well-formedness violation.
    Validate { file: PathBuf },
}

#[derive(Args)]
struct CheckArgs {
    spec: PathBuf,
    iut: PathBuf,
    desired: PathBuf,
    forbidden: PathBuf,
    /// Also print where the witness lies.
    #[arg(long)]
    witness: bool,
    /// Cross-check the verdict by enumeration up to this length (0 turns it
    /// off). Defaults to VPCONF_ORACLE_LEN, or 6.
    #[arg(long)]
    max_oracle_len: Option<usize>,
    /// Print the verdict as JSON.
    #[arg(long)]
    json: bool,
}

fn oracle_len(flag: Option<usize>) -> Result<usize> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("VPCONF_ORACLE_LEN") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("VPCONF_ORACLE_LEN={v:?} is not a length")),
        Err(_) => Ok(DEFAULT_ORACLE_LEN),
    }
}

fn load(path: &Path) -> Result<Automaton> {
    let text = std::fs::read_to_string(path).with_context(|| format!("{}: cannot read", path.display()))?;
    format::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn violations(path: &Path, list: Vec<vpconf::Violation>) -> Result<()> {
    if list.is_empty() {
        return Ok(());
    }
    let lines: Vec<String> = list.iter().map(|v| format!("{}: {v}", path.display())).collect();
    bail!("{}", lines.join("\n"))
}

fn load_vpa(path: &Path) -> Result<Vpa> {
    match load(path)? {
        Automaton::Vpa(a) => {
            violations(path, a.validate())?;
            Ok(a)
        }
        other => bail!("{}: expected a vpa document, found {:?}", path.display(), other.kind()),
    }
}

/// VPTS documents, with the io split of an iovpts ignored.
fn load_vpts(path: &Path) -> Result<Vpts> {
    let v = match load(path)? {
        Automaton::Vpts(v) => v,
        Automaton::Iovpts(v) => v.vpts,
        Automaton::Vpa(_) => bail!("{}: expected a vpts or iovpts document, found a vpa", path.display()),
    };
    violations(path, v.validate_structure())?;
    Ok(v)
}

fn load_iovpts(path: &Path) -> Result<Iovpts> {
    match load(path)? {
        Automaton::Iovpts(v) => {
            violations(path, v.validate())?;
            Ok(v)
        }
        other => bail!("{}: expected an iovpts document, found {:?}", path.display(), other.kind()),
    }
}

/// Names the file behind an operand in a construction error.
fn blame(e: vpconf::Error, files: &[(&str, &Path)]) -> anyhow::Error {
    let operand = match &e {
        vpconf::Error::NotDeterministic { operand, .. } | vpconf::Error::Invalid { operand, .. } => {
            Some(operand.as_str())
        }
        _ => None,
    };
    match operand.and_then(|o| files.iter().find(|(name, _)| *name == o)) {
        Some((_, path)) => anyhow!("{}: {e}", path.display()),
        None => anyhow!("{e}"),
    }
}

fn single_chars(alphabet: &PartitionedAlphabet) -> bool {
    alphabet.symbols().iter().all(|s| s.chars().count() == 1)
}

fn show_word(alphabet: &PartitionedAlphabet, w: &[String]) -> String {
    if w.is_empty() {
        "ε".into()
    } else if single_chars(alphabet) {
        w.concat()
    } else {
        w.join(" ")
    }
}

fn read_word(alphabet: &PartitionedAlphabet, args: &[String]) -> Vec<String> {
    let tokens: Vec<String> = args
        .iter()
        .flat_map(|a| a.split_whitespace().map(str::to_string).collect::<Vec<_>>())
        .filter(|t| t != "ε")
        .collect();
    if let [one] = tokens.as_slice() {
        if !alphabet.contains(one) && single_chars(alphabet) {
            return one.chars().map(|c| c.to_string()).collect();
        }
    }
    tokens
}

fn print_vpa(a: &Vpa) {
    print!("{}", format::vpa_to_json(a));
}

fn check(args: &CheckArgs) -> Result<ExitCode> {
    let spec = load_iovpts(&args.spec)?;
    let iut = load_vpts(&args.iut)?;
    let desired = load_vpa(&args.desired)?;
    let forbidden = load_vpa(&args.forbidden)?;
    let files = [
        ("specification", args.spec.as_path()),
        ("implementation", args.iut.as_path()),
        ("desired", args.desired.as_path()),
        ("forbidden", args.forbidden.as_path()),
    ];
    let verdict = conformance::check_conformance(&iut, &spec, &desired, &forbidden).map_err(|e| blame(e, &files))?;

    let bound = oracle_len(args.max_oracle_len)?;
    if bound > 0 {
        let direct = oracle::first_conformance_violation(&iut, &spec.vpts, &desired, &forbidden, bound);
        let agrees = match (&verdict.witness, &direct) {
            (None, None) => true,
            (Some(w), Some(o)) => w == o,
            (Some(w), None) => w.len() > bound,
            (None, Some(_)) => false,
        };
        if !agrees {
            bail!(
                "verdict and bounded enumeration disagree: witness {:?}, enumeration {:?}",
                verdict.witness,
                direct
            );
        }
    }

    let alphabet = &spec.vpts.alphabet;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&verdict)?);
    } else {
        match verdict.outcome {
            Outcome::Pass => println!("PASS"),
            Outcome::Fail => println!("FAIL"),
        }
        if let Some(w) = &verdict.witness {
            println!("witness: {}", show_word(alphabet, w));
        }
        if let Some(c) = verdict.clause {
            println!("clause: {c:?}");
        }
        if args.witness {
            if let Some(m) = verdict.memberships {
                println!("in desired: {}", m.desired);
                println!("in forbidden: {}", m.forbidden);
                println!("observable in specification: {}", m.spec_trace);
            }
        }
        println!("suite states: {} (bound {})", verdict.suite_states, verdict.bound);
        if bound > 0 {
            println!("enumeration agrees up to length {bound}");
        }
    }
    Ok(match verdict.outcome {
        Outcome::Pass => ExitCode::SUCCESS,
        Outcome::Fail => ExitCode::from(1),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check(args) => return check(&args),
        Command::Suite { spec, desired, forbidden } => {
            let s = load_iovpts(&spec)?;
            let d = load_vpa(&desired)?;
            let f = load_vpa(&forbidden)?;
            let files = [
                ("specification", spec.as_path()),
                ("desired", desired.as_path()),
                ("forbidden", forbidden.as_path()),
            ];
            let model = conformance::build_fault_model(&s, &d, &f).map_err(|e| blame(e, &files))?;
            print_vpa(&model.suite);
        }
        Command::Complement { file } => {
            let a = load_vpa(&file)?;
            print_vpa(&vpconf::complement(&a).map_err(|e| blame(e, &[("operand", &file)]))?);
        }
        Command::Union { left, right } => {
            let (l, r) = (load_vpa(&left)?, load_vpa(&right)?);
            let files = [("left", left.as_path()), ("right", right.as_path())];
            print_vpa(&vpconf::union(&l, &r).map_err(|e| blame(e, &files))?);
        }
        Command::Intersect { left, right } => {
            let (l, r) = (load_vpa(&left)?, load_vpa(&right)?);
            print_vpa(&vpconf::intersect(&l, &r)?);
        }
        Command::Contract { file } => {
            let out = match load(&file)? {
                Automaton::Vpts(v) => {
                    violations(&file, v.validate_structure())?;
                    Automaton::Vpts(v.contract())
                }
                Automaton::Iovpts(v) => {
                    violations(&file, v.validate_structure())?;
                    Automaton::Iovpts(Iovpts::new(v.vpts.contract(), v.io))
                }
                Automaton::Vpa(_) => bail!("{}: contract needs a vpts or iovpts document", file.display()),
            };
            print!("{}", format::to_json(&out));
        }
        Command::ToVpa { file } => print_vpa(&load_vpts(&file)?.induced_vpa()),
        Command::Empty { file } => {
            let a = load_vpa(&file)?;
            match conformance::is_empty_with_witness(&a) {
                Emptiness::Empty => println!("EMPTY"),
                Emptiness::NonEmpty(w) => println!("{}", show_word(&a.alphabet, &w)),
            }
        }
        Command::Enumerate { file, max_len } => {
            let bound = oracle_len(max_len)?;
            let (alphabet, lang) = match load(&file)? {
                Automaton::Vpa(a) => {
                    violations(&file, a.validate())?;
                    (a.alphabet.clone(), oracle::enumerate_vpa(&a, bound))
                }
                Automaton::Vpts(v) | Automaton::Iovpts(Iovpts { vpts: v, .. }) => {
                    violations(&file, v.validate_structure())?;
                    (v.alphabet.clone(), oracle::enumerate_otr(&v, bound))
                }
            };
            for w in lang.shortlex() {
                println!("{}", show_word(&alphabet, &w));
            }
        }
        Command::Member { file, word } => {
            let accepted = match load(&file)? {
                Automaton::Vpa(a) => {
                    violations(&file, a.validate())?;
                    a.accepts(&read_word(&a.alphabet, &word))?
                }
                Automaton::Vpts(v) | Automaton::Iovpts(Iovpts { vpts: v, .. }) => {
                    violations(&file, v.validate_structure())?;
                    v.has_observable_trace(&read_word(&v.alphabet, &word))?
                }
            };
            println!("{}", if accepted { "accepted" } else { "rejected" });
            return Ok(if accepted { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Validate { file } => {
            let list = match load(&file)? {
                Automaton::Vpa(a) => a.validate(),
                Automaton::Vpts(v) => v.validate(),
                Automaton::Iovpts(v) => v.validate(),
            };
            for v in &list {
                println!("{}: {v}", file.display());
            }
            if !list.is_empty() {
                return Ok(ExitCode::from(1));
            }
            println!("valid");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
