//! `mtgw`: command-line front end for multi-topology games.
//!
//! Machine-readable results go to stdout as JSON; progress and
//! human-readable summaries go to stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mtg::equilibria::{check_traced, Concept};
use mtg::format;
use mtg::oracle::{deviation_oracle, gamma_sample, omega_oracle};
use mtg::random::{random_game, Limits};
use mtg::reductions::{build_cne_game, build_gne_game, PartialInfoGame};
use mtg::search::{search, Goal, SearchOptions, SearchStatus};
use mtg::strategy::{memoryless_profiles, outcome, winners, wintops};
use mtg::targets::TargetTuple;
use mtg::{AnalysisError, GameError, Mtg, Profile};

const EXIT_INPUT: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "mtgw", version, about = "Analyse multi-topology games")]
struct Cli {
    /// Worker threads for searches.
    #[arg(long, global = true, env = "MTG_JOBS", default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a game file and list every defect.
    Validate { game: PathBuf },
    /// Print the play of a profile in one topology.
    Outcome {
        game: PathBuf,
        profile: PathBuf,
        #[arg(long)]
        topology: String,
    },
    /// Print each player's winning topologies under a profile.
    Wintop { game: PathBuf, profile: PathBuf },
    /// Decide whether a profile is an equilibrium.
    Check {
        concept: CheckKind,
        game: PathBuf,
        profile: PathBuf,
        /// Topology for `ne`.
        #[arg(long)]
        topology: Option<String>,
        /// Write every arena built during the check to this file.
        #[arg(long)]
        dump_arenas: Option<PathBuf>,
    },
    /// Search profiles of bounded memory.
    Find {
        goal: FindKind,
        game: PathBuf,
        #[arg(long)]
        memory: usize,
        /// Required for `target`.
        #[arg(long)]
        targets: Option<PathBuf>,
        /// Maximum number of candidate evaluations.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Build a reduction game and write it to a file.
    Reduce {
        kind: ReduceKind,
        game: PathBuf,
        #[arg(long)]
        targets: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Close a one-topology game under all player permutations.
    Symmetrize {
        game: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a brute-force cross-check.
    #[command(subcommand)]
    Oracle(Oracle),
}

#[derive(Subcommand)]
enum Oracle {
    /// Compare reduction ranks with the clause-level objective.
    Omega {
        kind: ReduceKind,
        game: PathBuf,
        #[arg(long)]
        targets: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_cycle: usize,
    },
    /// Sample strategy triples and compare plays across a reduction.
    Gamma {
        kind: ReduceKind,
        game: PathBuf,
        #[arg(long)]
        targets: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        memory: usize,
    },
    /// Compare the deviation checker with strategy enumeration.
    Deviation(DeviationArgs),
}

#[derive(Args)]
struct DeviationArgs {
    /// Game to analyse; omit to generate random games from `--seed`.
    game: Option<PathBuf>,
    /// Profile to analyse; defaults to every memoryless profile.
    profile: Option<PathBuf>,
    /// Memory bound of the enumerated deviations.
    #[arg(long, default_value_t = 2)]
    memory: usize,
    /// Seed of the random game generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random games.
    #[arg(long, default_value_t = 10)]
    games: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Ne,
    Cne,
    Gne,
}

#[derive(Clone, Copy, ValueEnum)]
enum FindKind {
    Cne,
    Gne,
    Target,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    Cne,
    Gne,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Input problems exit with 1; failed internal verification with 3.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<AnalysisError>() {
        Some(AnalysisError::Game(_)) | None => EXIT_INPUT,
        Some(_) => EXIT_INTERNAL,
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load_game(path: &Path) -> anyhow::Result<Mtg> {
    Mtg::from_json(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_profile(game: &Mtg, path: &Path) -> anyhow::Result<Profile> {
    Profile::from_json(game, &read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_targets(game: &Mtg, path: &Path) -> anyhow::Result<TargetTuple> {
    TargetTuple::from_json(game, &read(path)?).with_context(|| format!("in {}", path.display()))
}

fn emit(value: &impl serde::Serialize) {
    print!("{}", format::to_json(value));
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Validate { game } => {
            let text = read(&game)?;
            let file: format::GameFile = format::from_json(&text).map_err(GameError::from)?;
            let report = mtg::validate(&file);
            let defects: Vec<String> = report.defects.iter().map(|d| d.to_string()).collect();
            emit(&json!({ "valid": report.is_ok(), "defects": defects }));
            if report.is_ok() {
                eprintln!("{}: valid", game.display());
                Ok(0)
            } else {
                eprint!("{}: {} defect(s)\n{report}", game.display(), defects.len());
                Ok(EXIT_INPUT)
            }
        }
        Command::Outcome { game, profile, topology } => {
            let g = load_game(&game)?;
            let p = load_profile(&g, &profile)?;
            let t = g.topology(&topology)?;
            let lasso = outcome(&g, t, &p);
            let names = |xs: &[mtg::State]| xs.iter().map(|&s| g.state_name(s).to_string()).collect::<Vec<_>>();
            let won: Vec<&str> = winners(&g, t, &p).into_iter().map(|p| g.player_name(p)).collect();
            eprintln!("{}: {}", topology, lasso.display(&g));
            emit(&json!({
                "topology": topology,
                "prefix": names(&lasso.prefix),
                "cycle": names(&lasso.cycle),
                "winners": won,
            }));
            Ok(0)
        }
        Command::Wintop { game, profile } => {
            let g = load_game(&game)?;
            let p = load_profile(&g, &profile)?;
            let w = wintops(&g, &p);
            let file = TargetTuple(w).to_file(&g);
            for (player, ts) in &file.targets {
                eprintln!("{player}: {{{}}}", ts.join(", "));
            }
            emit(&json!({ "wintop": file.targets }));
            Ok(0)
        }
        Command::Check {
            concept,
            game,
            profile,
            topology,
            dump_arenas,
        } => {
            let g = load_game(&game)?;
            let p = load_profile(&g, &profile)?;
            let concept = match (concept, topology) {
                (CheckKind::Ne, Some(t)) => Concept::Ne(g.topology(&t)?),
                (CheckKind::Ne, None) => bail!("`check ne` needs --topology"),
                (_, Some(_)) => bail!("--topology applies only to `check ne`"),
                (CheckKind::Cne, None) => Concept::Cne,
                (CheckKind::Gne, None) => Concept::Gne,
            };
            let (report, arenas) = check_traced(&g, &p, concept, dump_arenas.is_some())?;
            if let Some(path) = dump_arenas {
                write(&path, &format::to_json(&arenas))?;
            }
            let file = report.to_file(&g);
            eprintln!(
                "{}: {}",
                concept.name(),
                if report.verdict { "holds" } else { "fails" }
            );
            if let Some(w) = &file.witness {
                eprintln!(
                    "  {} deviates to win {{{}}} (needed {{{}}})",
                    w.player,
                    w.achieved.join(", "),
                    w.targets.join(", ")
                );
            }
            emit(&file);
            Ok(0)
        }
        Command::Find {
            goal,
            game,
            memory,
            targets,
            budget,
        } => {
            let g = load_game(&game)?;
            let goal = match (goal, targets) {
                (FindKind::Target, Some(path)) => Goal::Wintop(load_targets(&g, &path)?),
                (FindKind::Target, None) => bail!("`find target` needs --targets"),
                (_, Some(_)) => bail!("--targets applies only to `find target`"),
                (FindKind::Cne, None) => Goal::Cne,
                (FindKind::Gne, None) => Goal::Gne,
            };
            let options = SearchOptions {
                memory,
                budget,
                jobs: cli.jobs.max(1),
            };
            let out = search(&g, &goal, &options)?;
            eprintln!("{:?} after {} evaluations", out.status, out.evaluations);
            emit(&out.to_file(&g, memory));
            Ok(if out.status == SearchStatus::BudgetExhausted { EXIT_BUDGET } else { 0 })
        }
        Command::Reduce { kind, game, targets, out } => {
            let g = load_game(&game)?;
            let t = load_targets(&g, &targets)?;
            let h = build(kind, &g, &t)?;
            write(&out, &format::to_json(&h.to_file()))?;
            eprintln!("{} states (bound {}) written to {}", h.interior_len(), h.size_bound(), out.display());
            emit(&json!({
                "kind": h.kind(),
                "states": h.interior_len(),
                "bound": h.size_bound(),
                "family": h.family().len(),
            }));
            Ok(0)
        }
        Command::Symmetrize { game, out } => {
            let g = load_game(&game)?;
            let sym = mtg::symmetrize(&g, g.num_players())?;
            write(&out, &sym.to_json())?;
            eprintln!("{} topologies written to {}", sym.num_topologies(), out.display());
            emit(&json!({ "topologies": sym.topologies() }));
            Ok(0)
        }
        Command::Oracle(oracle) => run_oracle(oracle),
    }
}

fn build(kind: ReduceKind, g: &Mtg, t: &TargetTuple) -> Result<PartialInfoGame, GameError> {
    match kind {
        ReduceKind::Cne => build_cne_game(g, t),
        ReduceKind::Gne => build_gne_game(g, t),
    }
}

fn run_oracle(oracle: Oracle) -> anyhow::Result<u8> {
    match oracle {
        Oracle::Omega {
            kind,
            game,
            targets,
            max_cycle,
        } => {
            let g = load_game(&game)?;
            let h = build(kind, &g, &load_targets(&g, &targets)?)?;
            let r = omega_oracle(&h, max_cycle)?;
            let bad: Vec<serde_json::Value> = r
                .disagreements
                .iter()
                .map(|p| {
                    json!({
                        "prefix": p.prefix.iter().map(|&q| h.name(q)).collect::<Vec<_>>(),
                        "cycle": p.cycle.iter().map(|&q| h.name(q)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            eprintln!("{} cycle classes, {} closed walks, {} disagreements", r.classes, r.walks, bad.len());
            emit(&json!({ "classes": r.classes, "walks": r.walks.to_string(), "disagreements": bad }));
            Ok(0)
        }
        Oracle::Gamma {
            kind,
            game,
            targets,
            samples,
            memory,
        } => {
            let g = load_game(&game)?;
            let h = build(kind, &g, &load_targets(&g, &targets)?)?;
            let r = gamma_sample(&h, samples, 0, memory.max(1))?;
            let bad: Vec<serde_json::Value> = r
                .mismatches
                .iter()
                .map(|m| {
                    json!({
                        "player": g.player_name(m.player),
                        "topology": g.topology_name(m.topology),
                        "deviated_mismatch": m.deviated_mismatch,
                        "obeyed_mismatch": m.obeyed_mismatch,
                    })
                })
                .collect();
            eprintln!("{} runs, {} obeying, {} mismatches", r.runs, r.obeyed, bad.len());
            emit(&json!({ "runs": r.runs, "obeyed": r.obeyed, "mismatches": bad }));
            Ok(0)
        }
        Oracle::Deviation(args) => {
            let games: Vec<Mtg> = match &args.game {
                Some(path) => vec![load_game(path)?],
                None => (0..args.games)
                    .map(|i| random_game(args.seed.wrapping_add(i), Limits::default()))
                    .collect(),
            };
            let mut totals = (0usize, 0usize, 0usize, 0usize);
            let mut failures = Vec::new();
            for g in &games {
                let profiles = match (&args.game, &args.profile) {
                    (Some(_), Some(path)) => vec![load_profile(g, path)?],
                    _ => memoryless_profiles(g),
                };
                for p in &profiles {
                    let r = deviation_oracle(g, p, args.memory.max(1))?;
                    totals.0 += r.queries;
                    totals.1 += r.oracle_true;
                    totals.2 += r.checker_true;
                    totals.3 += r.beyond_bound;
                    failures.extend(r.failures);
                }
            }
            eprintln!(
                "{} queries: enumeration {}, checker {}, beyond bound {}, failures {}",
                totals.0,
                totals.1,
                totals.2,
                totals.3,
                failures.len()
            );
            emit(&json!({
                "games": games.len(),
                "queries": totals.0,
                "oracle_true": totals.1,
                "checker_true": totals.2,
                "beyond_bound": totals.3,
                "failures": failures,
            }));
            Ok(0)
        }
    }
}
