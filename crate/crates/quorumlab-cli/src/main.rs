//! Command-line surface for the simple-game analysis toolkit.

mod report;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use quorumlab::{
    banzhaf_enum, certify_dimension, find_swap_violation, is_complete, is_weakly_complete,
    legco_game, proposition1_report, scenario_realization, ssi_enum, sweep, EnumCap, GameDef,
    Scenario, SweepRow,
};
use report::{decimal, emit, envelope, rational_value, to_canonical_string};

#[derive(Parser)]
#[command(
    name = "quorumlab",
    version,
    about = "Simple-game analysis: coalition evaluation, structural orderings, \
             dimension certificates and exact power indices for split-voting legislatures"
)]
struct Cli {
    /// Enumeration cap in players for exhaustive operations.
    #[arg(
        long,
        global = true,
        env = "QUORUMLAB_MAX_PLAYERS",
        default_value_t = EnumCap::DEFAULT_MAX_PLAYERS
    )]
    max_players: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IndexKind {
    Bi,
    Ssi,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Write a legislature game in the canonical JSON format.
    Gen {
        /// Chamber size (each chamber has n members; 2n+1 players total).
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "status_quo")]
        scenario: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structural analysis: swap robustness, completeness, orderings.
    Analyze {
        /// Game JSON file (alternative to --n).
        #[arg(long, conflicts_with = "n")]
        game: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value = "status_quo")]
        scenario: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-sided dimension certificate for a game and a candidate matrix.
    Dimension {
        #[arg(long, conflicts_with = "n")]
        game: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value = "status_quo")]
        scenario: String,
        /// Candidate realization (weighted game JSON); defaults to the
        /// built-in realization when the game is given via --n.
        #[arg(long)]
        candidate: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Power indices: closed forms via --n, enumeration via --game.
    Power {
        #[arg(long, conflicts_with = "n")]
        game: Option<PathBuf>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_enum, default_value_t = IndexKind::Both)]
        index: IndexKind,
        /// Significant digits for decimal columns.
        #[arg(long, default_value_t = 4)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form ratio sweep over chamber sizes (plot-ready CSV).
    Sweep {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value_t = 1)]
        step: u64,
        #[arg(long, default_value_t = 4)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-derive the published results and check them against this
    /// implementation; nonzero exit on any failing check.
    #[command(name = "verify-paper")]
    VerifyPaper {
        /// Chamber sizes: comma-separated values and inclusive ranges,
        /// e.g. "1..7,35".
        #[arg(long, default_value = "1..7,35")]
        n: String,
        /// Attempt enumeration checks even beyond their default ranges;
        /// sizes over the cap then fail with a capacity error.
        #[arg(long)]
        force_enum: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_scenario(label: &str) -> Result<Scenario> {
    Scenario::from_label(label).ok_or_else(|| {
        anyhow!("unknown scenario {label:?}; expected status_quo, bicameral_only or unicameral")
    })
}

fn load_game(path: &Path) -> Result<(GameDef, Vec<u8>)> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let game = quorumlab::json::from_json(std::str::from_utf8(&bytes)?)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok((game, bytes))
}

/// Resolves the game argument pair: a file, or a legislature game built
/// from --n/--scenario. Returns the game and its digest source bytes.
fn resolve_game(
    game: &Option<PathBuf>,
    n: Option<u32>,
    scenario: &str,
) -> Result<(GameDef, Vec<u8>)> {
    match (game, n) {
        (Some(path), None) => load_game(path),
        (None, Some(n)) => {
            let g = legco_game(n, parse_scenario(scenario)?)?;
            let bytes = quorumlab::json::to_json(&g).into_bytes();
            Ok((g, bytes))
        }
        _ => bail!("exactly one of --game or --n is required"),
    }
}

fn scenario_label(game: &GameDef) -> Option<&'static str> {
    match game {
        GameDef::Legco(g) => Some(g.scenario().label()),
        _ => None,
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cap = EnumCap::new(cli.max_players);
    match cli.command {
        Command::Gen { n, scenario, out } => {
            let game = legco_game(n, parse_scenario(&scenario)?)?;
            let mut text = quorumlab::json::to_json(&game);
            text.push('\n');
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Analyze { game, n, scenario, format, out } => {
            let (game, input) = resolve_game(&game, n, &scenario)?;
            let witness = find_swap_violation(&game, cap)?;
            let complete = is_complete(&game, cap)?;
            let weakly = is_weakly_complete(&game, cap)?;
            // The clause battery applies to the status-quo family only.
            let proposition1 = match &game {
                GameDef::Legco(g) if g.scenario() == Scenario::StatusQuo => {
                    Some(proposition1_report(g.chamber_size(), cap)?)
                }
                _ => None,
            };
            if format == Format::Csv {
                let prop = |c: Option<&quorumlab::ClauseOutcome>| {
                    c.map_or("n/a", |c| c.label()).to_string()
                };
                let text = format!(
                    "players,swap_robust,complete,weakly_complete,proposition1_a,proposition1_b,proposition1_c,proposition1_d\n{},{},{},{},{},{},{},{}\n",
                    game.player_count(),
                    witness.is_none(),
                    complete,
                    weakly,
                    prop(proposition1.as_ref().map(|r| &r.a)),
                    prop(proposition1.as_ref().map(|r| &r.b)),
                    prop(proposition1.as_ref().map(|r| &r.c)),
                    prop(proposition1.as_ref().map(|r| &r.d)),
                );
                emit(out.as_deref(), &text)?;
                return Ok(ExitCode::SUCCESS);
            }
            let result = json!({
                "players": game.player_count(),
                "scenario": scenario_label(&game),
                "swap_robust": witness.is_none(),
                "swap_violation": witness.as_ref().map(report::swap_witness_value),
                "complete": complete,
                "weakly_complete": weakly,
                "proposition1": proposition1.as_ref().map(report::proposition1_value),
            });
            let text = to_canonical_string(&envelope(
                "analyze",
                &report::digest_bytes(&input),
                result,
            ));
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Dimension { game, n, scenario, candidate, format, out } => {
            let (game, mut input) = resolve_game(&game, n, &scenario)?;
            let matrix = match (&candidate, n) {
                (Some(path), _) => {
                    let (candidate_game, bytes) = load_game(path)?;
                    input.extend_from_slice(b"\x00candidate\x00");
                    input.extend_from_slice(&bytes);
                    match candidate_game {
                        GameDef::Weighted(m) => m,
                        _ => bail!("candidate must be a weighted game (an amalgamated matrix)"),
                    }
                }
                (None, Some(n)) => scenario_realization(n, parse_scenario(&scenario)?)?,
                (None, None) => bail!("--candidate is required when the game comes from a file"),
            };
            let cert = certify_dimension(&game, &matrix, cap)?;
            if format == Format::Csv {
                let text = format!(
                    "players,rows,lower,upper,certified\n{},{},{},{},{}\n",
                    game.player_count(),
                    cert.realization.row_count(),
                    cert.lower,
                    cert.upper,
                    cert.certified,
                );
                emit(out.as_deref(), &text)?;
                return Ok(ExitCode::SUCCESS);
            }
            let text = to_canonical_string(&envelope(
                "dimension",
                &report::digest_bytes(&input),
                report::certificate_value(&cert),
            ));
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Power { game, n, index, digits, format, out } => {
            match (game, n) {
                (None, Some(n)) => {
                    let row = SweepRow::compute(n);
                    if format == Format::Csv {
                        let text = format!(
                            "{}\n{}\n",
                            report::SWEEP_CSV_HEADER,
                            report::sweep_row_csv(&row, digits)
                        );
                        emit(out.as_deref(), &text)?;
                        return Ok(ExitCode::SUCCESS);
                    }
                    let mut result = json!({"n": n, "parity": row.parity()});
                    let fields = result.as_object_mut().unwrap();
                    if matches!(index, IndexKind::Bi | IndexKind::Both) {
                        fields.insert("banzhaf".into(), json!({
                            "b_ord": row.b_ord.to_string(),
                            "b_gov": row.b_gov.to_string(),
                            "ratio": rational_value(&row.bi_ratio),
                            "ratio_decimal": decimal(&row.bi_ratio, digits),
                            "ratio_asymptotic": report::decimal_f64(row.bi_ratio_asymptotic, digits),
                        }));
                    }
                    if matches!(index, IndexKind::Ssi | IndexKind::Both) {
                        fields.insert("ssi".into(), json!({
                            "gov": rational_value(&row.ssi_gov),
                            "gov_decimal": decimal(&row.ssi_gov, digits),
                            "ord": rational_value(&row.ssi_ord),
                            "ord_decimal": decimal(&row.ssi_ord, digits),
                            "ratio": rational_value(&row.ssi_ratio),
                            "ratio_decimal": decimal(&row.ssi_ratio, digits),
                        }));
                    }
                    let digest = report::digest_bytes(format!("power n={n}").as_bytes());
                    let text = to_canonical_string(&envelope("power", &digest, result));
                    emit(out.as_deref(), &text)?;
                    Ok(ExitCode::SUCCESS)
                }
                (Some(path), None) => {
                    let (game, input) = load_game(&path)?;
                    let swings = banzhaf_enum(&game, cap)?;
                    let banzhaf = swings.normalized();
                    let ssi = ssi_enum(&game, cap)?;
                    if format == Format::Csv {
                        let mut text = String::from("player,swings,banzhaf,ssi\n");
                        for i in 1..=game.player_count() {
                            let p = quorumlab::player(i);
                            text.push_str(&format!(
                                "{i},{},{},{}\n",
                                swings.count(p),
                                decimal(banzhaf.value(p), digits),
                                decimal(ssi.value(p), digits),
                            ));
                        }
                        emit(out.as_deref(), &text)?;
                        return Ok(ExitCode::SUCCESS);
                    }
                    let players: Vec<_> = (1..=game.player_count())
                        .map(|i| {
                            let p = quorumlab::player(i);
                            json!({
                                "player": i,
                                "swings": swings.count(p).to_string(),
                                "banzhaf": rational_value(banzhaf.value(p)),
                                "banzhaf_decimal": decimal(banzhaf.value(p), digits),
                                "ssi": rational_value(ssi.value(p)),
                                "ssi_decimal": decimal(ssi.value(p), digits),
                            })
                        })
                        .collect();
                    let result = json!({"players": players});
                    let text = to_canonical_string(&envelope(
                        "power",
                        &report::digest_bytes(&input),
                        result,
                    ));
                    emit(out.as_deref(), &text)?;
                    Ok(ExitCode::SUCCESS)
                }
                _ => bail!("exactly one of --game or --n is required"),
            }
        }

        Command::Sweep { from, to, step, digits, format, out } => {
            let rows = sweep(from, to, step)?;
            let text = match format {
                Format::Csv => {
                    let mut text = String::from(report::SWEEP_CSV_HEADER);
                    text.push('\n');
                    for row in &rows {
                        text.push_str(&report::sweep_row_csv(row, digits));
                        text.push('\n');
                    }
                    text
                }
                Format::Json => {
                    let digest = report::digest_bytes(
                        format!("sweep from={from} to={to} step={step}").as_bytes(),
                    );
                    let result = json!({
                        "rows": rows.iter().map(|r| report::sweep_row_value(r, digits)).collect::<Vec<_>>(),
                    });
                    to_canonical_string(&envelope("sweep", &digest, result))
                }
            };
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::VerifyPaper { n, force_enum, out } => {
            let sizes = parse_sizes(&n)?;
            let checks = verify::run_battery(&sizes, cap, force_enum)?;
            for check in &checks {
                eprintln!(
                    "[{}] {} (n={}) {}",
                    match check.status {
                        verify::Status::Pass => "pass",
                        verify::Status::Fail => "FAIL",
                        verify::Status::Skipped => "skip",
                    },
                    check.name,
                    check.n,
                    check.detail
                );
            }
            let digest = report::digest_bytes(
                format!(
                    "verify-paper n={:?} max_players={} force_enum={force_enum}",
                    sizes,
                    cap.max_players()
                )
                .as_bytes(),
            );
            let text = to_canonical_string(&envelope(
                "verify-paper",
                &digest,
                verify::battery_value(&checks),
            ));
            emit(out.as_deref(), &text)?;
            Ok(if verify::all_passed(&checks) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

/// Parses "1..7,35" style size lists: comma-separated values or
/// inclusive ranges, deduplicated and sorted.
fn parse_sizes(list: &str) -> Result<Vec<u64>> {
    let mut sizes = std::collections::BTreeSet::new();
    for item in list.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        match item.split_once("..") {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().context("bad range start")?;
                let b: u64 = b.trim().parse().context("bad range end")?;
                if a > b {
                    bail!("empty range {item:?}");
                }
                sizes.extend(a..=b);
            }
            None => {
                sizes.insert(item.parse().with_context(|| format!("bad size {item:?}"))?);
            }
        }
    }
    if sizes.is_empty() {
        bail!("no chamber sizes given");
    }
    Ok(sizes.into_iter().collect())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
