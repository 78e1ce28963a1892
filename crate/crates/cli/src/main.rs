//! Command-line front end: parse, typecheck, translate, evaluate, and verify
//! continuity moduli of programs in the surface syntax.
//!
//! Exit codes: 0 on success, 1 when a verification or search fails, 2 on
//! input or usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tcont::continuity::{ContinuityError, DEFAULT_SEED};
use tcont::eval::DEFAULT_FUEL;
use tcont::json::{nat_json, term_json, type_json};
use tcont::{
    apply_to_point, check_equivalence, modulus_at, modulus_term_checked, oracle_modulus, parse,
    pretty_term, pretty_type, sample_points, translate_term_checked, translate_type,
    typecheck_closed, uc_modulus, verify_modulus, Point, Term, TranslationTarget, VerifyBudget,
};

#[derive(Parser)]
#[command(
    name = "tcont",
    version,
    about = "Continuity workbench for total functionals over input sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for sampled points and perturbations.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Evaluation step budget; 0 disables it.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL)]
    fuel: u64,

    /// Perturbed points checked per modulus verification.
    #[arg(long, global = true, default_value_t = 10_000)]
    budget: u64,

    /// Depth bound for the uniform-continuity search.
    #[arg(long = "max-depth", global = true, default_value_t = 16)]
    max_depth: u32,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Typecheck a program and print its type.
    Check { file: PathBuf },
    /// Print the translation of a program.
    Translate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Target::Baire)]
        target: Target,
    },
    /// Evaluate a functional at a point and show what it queried.
    Eval {
        file: PathBuf,
        /// Point literal, e.g. "[5;const 0]" or "[1,2;cycle 0,1]".
        #[arg(long)]
        point: String,
    },
    /// Compute the derived and query-log moduli at a point and verify them.
    Modulus {
        file: PathBuf,
        #[arg(long)]
        point: String,
        /// Report the moduli without perturbation testing.
        #[arg(long)]
        skip_verify: bool,
    },
    /// Emit the derived modulus of a functional as a closed program.
    ModulusTerm { file: PathBuf },
    /// Search for a uniform continuity modulus over binary sequences.
    UcModulus { file: PathBuf },
    /// Check the program against its translation at seeded points.
    Equiv {
        file: PathBuf,
        #[arg(long, default_value_t = 50)]
        points: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    /// Numbers become functionals over an input sequence.
    Baire,
    /// Paired value/modulus translation.
    Bb,
    /// Numbers become functions N -> N; the generic element is the identity.
    Nat,
}

impl Target {
    fn to_translation(self) -> TranslationTarget {
        match self {
            Target::Baire => TranslationTarget::Baire,
            Target::Bb => TranslationTarget::BairePaired,
            Target::Nat => TranslationTarget::NatId,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load_program(file: &Path) -> Result<Term, String> {
    let source =
        fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    parse(&source).map_err(|e| format!("{}: {e}", file.display()))
}

fn parse_point(literal: &str) -> Result<Point, String> {
    Point::parse(literal).map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<u8, String> {
    let fuel = if cli.fuel == 0 { None } else { Some(cli.fuel) };
    match &cli.command {
        Command::Check { file } => {
            let term = load_program(file)?;
            let ty = typecheck_closed(&term).map_err(|e| e.to_string())?;
            if cli.json {
                println!("{}", json!({ "pretty": pretty_type(&ty), "type": type_json(&ty) }));
            } else {
                println!("type={}", pretty_type(&ty));
            }
            Ok(0)
        }
        Command::Translate { file, target } => {
            let term = load_program(file)?;
            let target = target.to_translation();
            let translated =
                translate_term_checked(&term, &target).map_err(|e| e.to_string())?;
            if cli.json {
                println!("{}", term_json(&translated));
            } else {
                println!("{}", pretty_term(&translated));
            }
            let source_ty = typecheck_closed(&term).map_err(|e| e.to_string())?;
            debug_assert_eq!(
                typecheck_closed(&translated),
                Ok(translate_type(&source_ty, &target))
            );
            Ok(0)
        }
        Command::Eval { file, point } => {
            let term = load_program(file)?;
            let alpha = parse_point(point)?;
            let (value, log) = apply_to_point(&term, &alpha, fuel).map_err(|e| e.to_string())?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "value": nat_json(&value),
                        "queries": log.indices().iter().map(nat_json).collect::<Vec<_>>(),
                        "oracle_modulus": nat_json(&log.modulus()),
                    })
                );
            } else {
                let queries: Vec<String> =
                    log.indices().iter().map(|i| i.to_string()).collect();
                println!(
                    "value={} queries=[{}] oracle_modulus={}",
                    value,
                    queries.join(","),
                    log.modulus()
                );
            }
            Ok(0)
        }
        Command::Modulus {
            file,
            point,
            skip_verify,
        } => {
            let term = load_program(file)?;
            let alpha = parse_point(point)?;
            let modulus_bb = modulus_at(&term, &alpha, fuel).map_err(|e| e.to_string())?;
            let modulus_oracle =
                oracle_modulus(&term, &alpha, fuel).map_err(|e| e.to_string())?;
            if *skip_verify {
                if cli.json {
                    println!(
                        "{}",
                        json!({
                            "modulus_bb": nat_json(&modulus_bb),
                            "modulus_oracle": nat_json(&modulus_oracle),
                        })
                    );
                } else {
                    println!("modulus_bb={modulus_bb} modulus_oracle={modulus_oracle}");
                }
                return Ok(0);
            }
            let budget = VerifyBudget {
                limit: cli.budget,
                seed: cli.seed,
                fuel,
                ..VerifyBudget::default()
            };
            let mut reports = vec![verify_modulus(&term, &alpha, &modulus_bb, &budget)
                .map_err(|e| e.to_string())?];
            if modulus_oracle != modulus_bb {
                reports.push(
                    verify_modulus(&term, &alpha, &modulus_oracle, &budget)
                        .map_err(|e| e.to_string())?,
                );
            }
            let verified = reports.iter().all(|r| r.verified);
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "modulus_bb": nat_json(&modulus_bb),
                        "modulus_oracle": nat_json(&modulus_oracle),
                        "verified": verified,
                        "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!(
                    "modulus_bb={modulus_bb} modulus_oracle={modulus_oracle} verified={verified}"
                );
            }
            Ok(if verified { 0 } else { 1 })
        }
        Command::ModulusTerm { file } => {
            let term = load_program(file)?;
            let modulus = modulus_term_checked(&term).map_err(|e| e.to_string())?;
            if cli.json {
                println!("{}", term_json(&modulus));
            } else {
                println!("{}", pretty_term(&modulus));
            }
            Ok(0)
        }
        Command::UcModulus { file } => {
            let term = load_program(file)?;
            match uc_modulus(&term, cli.max_depth, fuel) {
                Ok(report) => {
                    if cli.json {
                        println!("{}", report.to_json());
                    } else {
                        println!(
                            "uc_modulus={} prefixes_checked={}",
                            report.uc_modulus, report.prefixes_checked
                        );
                    }
                    Ok(0)
                }
                Err(ContinuityError::MaxDepthExceeded { max_depth }) => {
                    if cli.json {
                        println!(
                            "{}",
                            json!({ "max_depth_hit": true, "max_depth": max_depth })
                        );
                    } else {
                        println!("max_depth_hit=true max_depth={max_depth}");
                    }
                    Ok(1)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Equiv { file, points } => {
            let term = load_program(file)?;
            let sampled = sample_points(cli.seed, *points as usize);
            let report =
                check_equivalence(&term, &sampled, fuel).map_err(|e| e.to_string())?;
            if cli.json {
                println!("{}", report.to_json());
            } else {
                println!(
                    "points={} mismatches={}",
                    report.points_checked,
                    report.mismatches.len()
                );
            }
            Ok(if report.all_equal() { 0 } else { 1 })
        }
    }
}
