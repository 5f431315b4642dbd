//! Argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 on success, 1 when a family fails the check it was given
//! (not saturated, a verifier counterexample, an inconclusive search), 2 on
//! usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nsat_core::saturation::{canonical_construction, check_saturated, greedy_saturate, greedy_saturate_shuffled};
use nsat_core::search::{sat_star_exact, SearchError};
use nsat_core::verify::{run_suite, LemmaId};
use nsat_core::{GroundSet, PosetPattern, SaturationError, SetFamily, StandardPattern, VerifyError};

use crate::format::{csv_row, export_dot, parse_family, parse_pattern, serialize_family, FormatError, CSV_HEADER};
use crate::report::{saturation_report, search_report, verify_report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "nsat", version, about = "Induced poset saturation in the Boolean lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report freeness and saturation of a family.
    Check(FamilyArgs),
    /// Complete a family (or the empty family on [n]) greedily.
    Saturate(SaturateArgs),
    /// The 2n-member N-saturated family on [n].
    GenCanonical(CommonArgs),
    /// Run structural verifiers on an N-saturated family.
    Verify(VerifyArgs),
    /// Exact saturation number by exhaustive search.
    Satstar(SearchArgs),
    /// Hasse diagram of a family as DOT.
    ExportDot(FamilyArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Ground set size.
    #[arg(long)]
    pub n: Option<u32>,
    /// Pattern name (N, butterfly, diamond, chevron, vee, chain(k),
    /// antichain(k)) or a pattern JSON file.
    #[arg(long, default_value = "N")]
    pub pattern: String,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Family JSON file.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SaturateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Shuffle the candidate order with this seed instead of using
    /// canonical order.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Comma-separated verifier names (maxmin, midpoint, valve, forest,
    /// bounds, extension), or `all`.
    #[arg(long, default_value = "all")]
    pub lemmas: String,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Largest family size to try (default: 2^n).
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Search nodes allowed per target size.
    #[arg(long, default_value_t = 100_000_000)]
    pub budget: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: FormatError },
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// What a subcommand produced: the artifact text and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Standard name first, then a pattern file.
pub fn resolve_pattern(arg: &str) -> Result<(PosetPattern, String), CliError> {
    if let Ok(which) = StandardPattern::parse(arg) {
        let p = PosetPattern::standard(which).map_err(|e| usage(format!("pattern {arg}: {e}")))?;
        return Ok((p, which.to_string()));
    }
    let path = Path::new(arg);
    if !path.is_file() {
        return Err(usage(format!("unknown pattern {arg:?}")));
    }
    let p = parse_pattern(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((p, arg.to_string()))
}

fn load_family(args: &FamilyArgs) -> Result<SetFamily, CliError> {
    let path = args.input.as_deref().ok_or_else(|| usage("--input is required"))?;
    let f = parse_family(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })?;
    if let Some(n) = args.common.n {
        if n != f.n() {
            return Err(usage(format!(
                "--n {n} disagrees with n = {} in {}",
                f.n(),
                path.display()
            )));
        }
    }
    Ok(f)
}

fn format_or(common: &CommonArgs, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let fmt = common.format.unwrap_or(default);
    if allowed.contains(&fmt) {
        Ok(fmt)
    } else {
        Err(usage(format!("--format {fmt:?} is not available here").to_lowercase()))
    }
}

fn family_text(f: &SetFamily, fmt: Format) -> String {
    match fmt {
        Format::Dot => export_dot(f),
        Format::Text => format!("{f}\n"),
        _ => serialize_family(f) + "\n",
    }
}

fn parse_lemmas(list: &str) -> Result<Vec<LemmaId>, CliError> {
    if list.trim() == "all" {
        return Ok(LemmaId::ALL.to_vec());
    }
    list.split(',')
        .map(|name| LemmaId::from_name(name.trim()).ok_or_else(|| usage(format!("unknown verifier {name:?}"))))
        .collect()
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check(args) => check(args),
        Command::Saturate(args) => saturate(args),
        Command::GenCanonical(args) => gen_canonical(args),
        Command::Verify(args) => verify(args),
        Command::Satstar(args) => satstar(args),
        Command::ExportDot(args) => {
            format_or(&args.common, Format::Dot, &[Format::Dot])?;
            Ok(Outcome {
                text: export_dot(&load_family(args)?),
                code: EXIT_OK,
            })
        }
    }
}

fn check(args: &FamilyArgs) -> Result<Outcome, CliError> {
    let fmt = format_or(&args.common, Format::Json, &[Format::Json, Format::Text])?;
    let (p, name) = resolve_pattern(&args.common.pattern)?;
    let f = load_family(args)?;
    if f.n() > GroundSet::SEARCH_MAX {
        return Err(usage(format!(
            "check enumerates 2^n sets; n must be at most {}",
            GroundSet::SEARCH_MAX
        )));
    }
    let r = check_saturated(&f, &p);
    let text = match fmt {
        Format::Text => {
            let mut t = format!("pattern: {name}\nfree: {}\nsaturated: {}\n", r.free, r.saturated);
            if let Some(c) = &r.violating_copy {
                let parts: Vec<String> = c.map().iter().map(|s| s.to_string()).collect();
                t += &format!("violating copy: ({})\n", parts.join(", "));
            }
            if !r.unblocked.is_empty() {
                let parts: Vec<String> = r.unblocked.iter().map(|s| s.to_string()).collect();
                t += &format!("unblocked: {}\n", parts.join(", "));
            }
            t
        }
        _ => saturation_report(&name, &r) + "\n",
    };
    Ok(Outcome {
        text,
        code: if r.saturated { EXIT_OK } else { EXIT_FAILED },
    })
}

fn saturate(sargs: &SaturateArgs) -> Result<Outcome, CliError> {
    let args = &sargs.family;
    let fmt = format_or(&args.common, Format::Json, &[Format::Json, Format::Dot, Format::Text])?;
    let (p, _) = resolve_pattern(&args.common.pattern)?;
    let seed = match (&args.input, args.common.n) {
        (Some(_), _) => load_family(args)?,
        (None, Some(n)) => SetFamily::empty(GroundSet::new(n).map_err(|e| usage(e.to_string()))?),
        (None, None) => return Err(usage("saturate needs --input or --n")),
    };
    if seed.n() > GroundSet::SEARCH_MAX {
        return Err(usage(format!(
            "saturate enumerates 2^n sets; n must be at most {}",
            GroundSet::SEARCH_MAX
        )));
    }
    let out = match sargs.seed {
        Some(s) => greedy_saturate_shuffled(&seed, &p, s),
        None => greedy_saturate(&seed, &p),
    };
    match out {
        Ok(f) => Ok(Outcome {
            text: family_text(&f, fmt),
            code: EXIT_OK,
        }),
        Err(SaturationError::SeedNotFree) => Ok(Outcome {
            text: "seed family already contains the pattern\n".into(),
            code: EXIT_FAILED,
        }),
        Err(e) => Err(usage(e.to_string())),
    }
}

fn gen_canonical(args: &CommonArgs) -> Result<Outcome, CliError> {
    let fmt = format_or(args, Format::Json, &[Format::Json, Format::Dot, Format::Text])?;
    let n = args.n.ok_or_else(|| usage("gen-canonical needs --n"))?;
    let f = canonical_construction(n).map_err(|e| usage(e.to_string()))?;
    Ok(Outcome {
        text: family_text(&f, fmt),
        code: EXIT_OK,
    })
}

fn verify(vargs: &VerifyArgs) -> Result<Outcome, CliError> {
    let args = &vargs.family;
    let fmt = format_or(&args.common, Format::Json, &[Format::Json, Format::Text])?;
    let lemmas = parse_lemmas(&vargs.lemmas)?;
    let f = load_family(args)?;
    let verdicts = match run_suite(&f, &lemmas) {
        Ok(v) => v,
        Err(e @ (VerifyError::NotSaturated | VerifyError::NoSmallValve | VerifyError::ValveFailure(_))) => {
            return Ok(Outcome {
                text: format!("{e}\n"),
                code: EXIT_FAILED,
            });
        }
        Err(e) => return Err(usage(e.to_string())),
    };
    let all_hold = verdicts.iter().all(|v| v.holds);
    let text = match fmt {
        Format::Text => verdicts
            .iter()
            .map(|v| {
                let status = if v.holds { "holds" } else { "FAILS" };
                let mut line = format!(
                    "{:<10} {status} ({} certificates)",
                    v.lemma_id.name(),
                    v.certificates.len()
                );
                if let Some(w) = &v.counterexample {
                    line += &format!("\n  counterexample: {w:?}");
                }
                line + "\n"
            })
            .collect(),
        _ => verify_report(&f, &verdicts) + "\n",
    };
    Ok(Outcome {
        text,
        code: if all_hold { EXIT_OK } else { EXIT_FAILED },
    })
}

fn satstar(args: &SearchArgs) -> Result<Outcome, CliError> {
    let fmt = format_or(&args.common, Format::Json, &[Format::Json, Format::Csv, Format::Text])?;
    let (p, name) = resolve_pattern(&args.common.pattern)?;
    let n = args.common.n.ok_or_else(|| usage("satstar needs --n"))?;
    if n == 0 || n > GroundSet::SEARCH_MAX {
        return Err(usage(format!("--n must be in 1..={}", GroundSet::SEARCH_MAX)));
    }
    let k_max = args.k_max.unwrap_or(1usize << n);
    if k_max == 0 {
        return Err(usage("--k-max must be at least 1"));
    }
    let start = Instant::now();
    let result = sat_star_exact(n, &p, k_max, args.budget);
    let seconds = start.elapsed().as_secs_f64();
    let (json, sat, exhaustive, nodes) = match &result {
        Ok(r) => (
            search_report(n, &name, Ok(r)),
            Some(r.sat_star),
            r.exhaustive,
            r.explored.nodes,
        ),
        Err(SearchError::BudgetExhausted { lower_bound, explored }) => (
            search_report(n, &name, Err((*lower_bound, explored))),
            None,
            false,
            explored.nodes,
        ),
        Err(SearchError::KMaxExceeded { k_max, explored, .. }) => (
            search_report(n, &name, Err((*k_max + 1, explored))),
            None,
            false,
            explored.nodes,
        ),
        Err(e) => return Err(usage(e.to_string())),
    };
    let text = match fmt {
        Format::Csv => format!("{CSV_HEADER}\n{}\n", csv_row(n, &name, sat, exhaustive, nodes, seconds)),
        Format::Text => match &result {
            Ok(r) => format!(
                "sat*({n}, {name}) = {}{}\nclasses: {}\nnodes: {nodes}\n",
                r.sat_star,
                if r.exhaustive {
                    ""
                } else {
                    " (upper bound; search incomplete)"
                },
                r.witnesses.len()
            ),
            Err(e) => format!("{e}\nnodes: {nodes}\n"),
        },
        _ => json + "\n",
    };
    let ok = matches!(&result, Ok(r) if r.exhaustive);
    Ok(Outcome {
        text,
        code: if ok { EXIT_OK } else { EXIT_FAILED },
    })
}

/// Runs the command and writes its artifact; returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    let output = match &cli.command {
        Command::Check(a) | Command::ExportDot(a) => &a.common.output,
        Command::Saturate(a) => &a.family.common.output,
        Command::Verify(a) => &a.family.common.output,
        Command::GenCanonical(a) => &a.output,
        Command::Satstar(a) => &a.common.output,
    };
    match run(cli) {
        Ok(out) => {
            let written = match output {
                Some(path) => fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) => out.code,
                Err(msg) => {
                    eprintln!("nsat: {msg}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            eprintln!("nsat: {e}");
            EXIT_USAGE
        }
    }
}
