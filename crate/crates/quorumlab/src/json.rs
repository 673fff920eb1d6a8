//! The canonical JSON game format.
//!
//! Three core forms, all self-describing via a `type` tag:
//!
//! ```json
//! {"type":"explicit","players":3,"winning":[[1,2],[1,2,3]]}
//! {"type":"weighted","players":3,"rows":[{"q":"2","w":["1","1","0"]}]}
//! {"type":"legco","n":35,"scenario":"status_quo"}
//! ```
//!
//! plus a `chamber_rule` extension for symmetric rule games, which stores
//! the minimal winning profiles. Rationals are written as lowest-terms
//! strings (`"p"` or `"p/q"`); integers are also accepted on input.
//! Output is canonical: coalitions sorted by mask, members ascending,
//! fixed key order, so identical games serialize to identical bytes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{AmalgamatedMatrix, Coalition, ExplicitGame, GameDef, PlayerId, WeightedRule};
use crate::legco::{legco_game, Scenario};
use crate::profile::{ChamberRuleGame, Profile};

/// Lowest-terms rendering: `"p"` for integers, `"p/q"` otherwise.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"`, `"p/q"`, with optional sign.
pub fn rational_from_str(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::InvalidParameter(format!("bad rational {s:?}: {e}")))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::InvalidParameter(format!("bad rational {s:?}: zero denominator")));
            }
            Ok(BigRational::new(parse_int(num)?, den))
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RationalDto {
    Int(i64),
    Str(String),
}

impl RationalDto {
    fn parse(&self) -> Result<BigRational> {
        match self {
            RationalDto::Int(v) => Ok(BigRational::from_integer((*v).into())),
            RationalDto::Str(s) => rational_from_str(s),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RowDto {
    q: RationalDto,
    w: Vec<RationalDto>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum GameFile {
    Explicit {
        players: u32,
        winning: Vec<Vec<u32>>,
    },
    Weighted {
        players: u32,
        rows: Vec<RowDto>,
    },
    Legco {
        n: u32,
        scenario: String,
    },
    ChamberRule {
        n: u32,
        minimal_winning_profiles: Vec<(u32, u32, u8)>,
    },
}

fn coalition_to_indices(c: Coalition) -> Vec<u32> {
    c.players().map(PlayerId::index).collect()
}

fn coalition_from_indices(indices: &[u32], players: u32) -> Result<Coalition> {
    let mut c = Coalition::EMPTY;
    for &i in indices {
        let p = PlayerId::new(i).ok_or_else(|| {
            Error::InvalidParameter(format!("player index {i} out of range"))
        })?;
        if p.index() > players {
            return Err(Error::WidthMismatch { expected: players, got: i });
        }
        c = c.with(p);
    }
    Ok(c)
}

fn to_file(game: &GameDef) -> GameFile {
    match game {
        GameDef::Explicit(g) => GameFile::Explicit {
            players: g.players(),
            winning: g.winning().iter().map(|&c| coalition_to_indices(c)).collect(),
        },
        GameDef::Weighted(m) => GameFile::Weighted {
            players: m.width(),
            rows: m
                .rows()
                .iter()
                .map(|row| RowDto {
                    q: RationalDto::Str(rational_to_string(row.threshold())),
                    w: row
                        .weights()
                        .iter()
                        .map(|w| RationalDto::Str(rational_to_string(w)))
                        .collect(),
                })
                .collect(),
        },
        GameDef::Legco(g) => GameFile::Legco {
            n: g.chamber_size(),
            scenario: g.scenario().label().to_string(),
        },
        GameDef::ChamberRule(g) => {
            let view = crate::profile::ProfileView::of(game).expect("chamber rule games are symmetric");
            GameFile::ChamberRule {
                n: g.chamber_size(),
                minimal_winning_profiles: view
                    .minimal_winning_profiles()
                    .into_iter()
                    .map(|p| (p.geo, p.func, u8::from(p.gov)))
                    .collect(),
            }
        }
    }
}

fn from_file(file: GameFile) -> Result<GameDef> {
    match file {
        GameFile::Explicit { players, winning } => {
            let coalitions = winning
                .iter()
                .map(|c| coalition_from_indices(c, players))
                .collect::<Result<Vec<_>>>()?;
            Ok(GameDef::Explicit(ExplicitGame::new(players, coalitions)?))
        }
        GameFile::Weighted { players, rows } => {
            let rules = rows
                .iter()
                .map(|row| {
                    if row.w.len() as u32 != players {
                        return Err(Error::WidthMismatch {
                            expected: players,
                            got: row.w.len() as u32,
                        });
                    }
                    let weights = row.w.iter().map(RationalDto::parse).collect::<Result<Vec<_>>>()?;
                    WeightedRule::new(row.q.parse()?, weights)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(GameDef::Weighted(AmalgamatedMatrix::new(rules)?))
        }
        GameFile::Legco { n, scenario } => {
            let scenario = Scenario::from_label(&scenario).ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown scenario {scenario:?}; expected one of status_quo, bicameral_only, unicameral"
                ))
            })?;
            legco_game(n, scenario)
        }
        GameFile::ChamberRule { n, minimal_winning_profiles } => {
            let minimal: Vec<Profile> = minimal_winning_profiles
                .into_iter()
                .map(|(geo, func, gov)| Profile::new(geo, func, gov != 0))
                .collect();
            let game = ChamberRuleGame::from_rule(n, |p| {
                minimal.iter().any(|m| m.dominated_by(p))
            })?;
            Ok(GameDef::ChamberRule(game))
        }
    }
}

/// Canonical single-line JSON encoding of a game.
pub fn to_json(game: &GameDef) -> String {
    serde_json::to_string(&to_file(game)).expect("game serialization cannot fail")
}

/// Canonical pretty-printed JSON encoding (still byte-deterministic).
pub fn to_json_pretty(game: &GameDef) -> String {
    serde_json::to_string_pretty(&to_file(game)).expect("game serialization cannot fail")
}

/// Parses and validates a game from its JSON encoding.
pub fn from_json(text: &str) -> Result<GameDef> {
    let file: GameFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidParameter(format!("bad game JSON: {e}")))?;
    from_file(file)
}
