//! The split-voting legislature game family and its reform variants.
//!
//! The model: `2n` ordinary members split into a geographical chamber
//! `1..=n` and a functional chamber `n+1..=2n`, plus a virtual government
//! member `2n+1` who supports exactly the government's own bills. A
//! coalition wins when either the government member is in it and a simple
//! majority of all ordinary members joins, or the government member is
//! absent and each chamber supplies a strict majority on its own.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::game::{
    player, AmalgamatedMatrix, Coalition, GameDef, PlayerId, WeightedRule, MAX_PLAYERS,
};
use crate::profile::{ChamberRuleGame, Profile, ProfileTable};

/// Which voting mechanism is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scenario {
    /// Government bills need a simple majority of all ordinary members;
    /// member bills need concurrent majorities in both chambers.
    StatusQuo,
    /// Every bill needs concurrent chamber majorities; the government
    /// member keeps a seat but no influence.
    BicameralOnly,
    /// Every bill needs a simple majority of all ordinary members.
    Unicameral,
}

impl Scenario {
    pub const ALL: [Scenario; 3] = [Scenario::StatusQuo, Scenario::BicameralOnly, Scenario::Unicameral];

    pub fn label(self) -> &'static str {
        match self {
            Scenario::StatusQuo => "status_quo",
            Scenario::BicameralOnly => "bicameral_only",
            Scenario::Unicameral => "unicameral",
        }
    }

    pub fn from_label(label: &str) -> Option<Scenario> {
        Scenario::ALL.into_iter().find(|s| s.label() == label)
    }
}

/// The chamber layout for chamber size `n`: geo `1..=n`, func
/// `n+1..=2n`, government `2n+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlayerCategories {
    n: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Geo,
    Func,
    Gov,
}

impl PlayerCategories {
    pub fn new(n: u32) -> PlayerCategories {
        PlayerCategories { n }
    }

    pub fn chamber_size(self) -> u32 {
        self.n
    }

    pub fn player_count(self) -> u32 {
        2 * self.n + 1
    }

    pub fn geo(self) -> Coalition {
        Coalition::range(1, self.n)
    }

    pub fn func(self) -> Coalition {
        Coalition::range(self.n + 1, 2 * self.n)
    }

    pub fn gov(self) -> PlayerId {
        player(2 * self.n + 1)
    }

    pub fn category(self, p: PlayerId) -> Category {
        let i = p.index();
        if i <= self.n {
            Category::Geo
        } else if i <= 2 * self.n {
            Category::Func
        } else {
            Category::Gov
        }
    }
}

/// A member of the legislature family: chamber size plus scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LegcoGame {
    n: u32,
    scenario: Scenario,
}

impl LegcoGame {
    pub fn chamber_size(&self) -> u32 {
        self.n
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn player_count(&self) -> u32 {
        2 * self.n + 1
    }

    pub fn categories(&self) -> PlayerCategories {
        PlayerCategories::new(self.n)
    }

    /// The winning rule on profiles. Strict chamber majority "more than
    /// half" is evaluated exactly as `2·count > n`, never by rounding.
    pub fn wins_profile(&self, p: Profile) -> bool {
        let n = self.n;
        match self.scenario {
            Scenario::StatusQuo => {
                if p.gov {
                    p.geo + p.func > n
                } else {
                    2 * p.geo > n && 2 * p.func > n
                }
            }
            Scenario::BicameralOnly => 2 * p.geo > n && 2 * p.func > n,
            Scenario::Unicameral => p.geo + p.func > n,
        }
    }

    pub fn accepts(&self, s: Coalition) -> bool {
        self.wins_profile(Profile::of(s, self.n))
    }
}

/// Constructs the legislature game for chamber size `n`.
///
/// The government member stays in the player set in every scenario (as a
/// dummy where powerless) so player indices line up across scenario
/// comparisons.
pub fn legco_game(n: u32, scenario: Scenario) -> Result<GameDef> {
    if n == 0 {
        return Err(Error::InvalidParameter("chamber size must be at least 1".into()));
    }
    if 2 * n + 1 > MAX_PLAYERS {
        return Err(Error::InvalidParameter(format!(
            "chamber size {n} needs {} players, which exceeds the {MAX_PLAYERS}-bit coalition mask",
            2 * n + 1
        )));
    }
    Ok(GameDef::Legco(LegcoGame { n, scenario }))
}

/// Profile classification and dominance frontiers of a family member.
pub fn profile_table(n: u32, scenario: Scenario) -> Result<ProfileTable> {
    ProfileTable::of(&legco_game(n, scenario)?)
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Builds a matrix whose rows are constant on each chamber:
/// `(q; e…e, f…f, g)` for chamber size `n`.
pub fn build_symmetric_matrix(
    n: u32,
    rows: &[(BigRational, BigRational, BigRational, BigRational)],
) -> Result<AmalgamatedMatrix> {
    let rules = rows
        .iter()
        .map(|(q, e, f, g)| {
            let mut weights = Vec::with_capacity(2 * n as usize + 1);
            weights.extend(std::iter::repeat_with(|| e.clone()).take(n as usize));
            weights.extend(std::iter::repeat_with(|| f.clone()).take(n as usize));
            weights.push(g.clone());
            WeightedRule::new(q.clone(), weights)
        })
        .collect::<Result<Vec<_>>>()?;
    AmalgamatedMatrix::new(rules)
}

/// The published minimal realization of the status-quo game: one row for
/// chamber sizes 1 and 2, two rows for 3 and 4, and the three-row
/// majority/chamber/chamber matrix from size 5 on. Fractional entries
/// (the `(n+1)/2` thresholds and the `n/2` government weight) stay exact.
pub fn canonical_realization(n: u32) -> Result<AmalgamatedMatrix> {
    match n {
        0 => Err(Error::InvalidParameter("chamber size must be at least 1".into())),
        1 => AmalgamatedMatrix::single(2, &[1, 1, 0]),
        2 => AmalgamatedMatrix::single(4, &[1, 1, 1, 1, 1]),
        3 => AmalgamatedMatrix::from_integers(&[
            (10, vec![2, 2, 2, 3, 3, 3, 1]),
            (10, vec![3, 3, 3, 2, 2, 2, 1]),
        ]),
        4 => AmalgamatedMatrix::from_integers(&[
            (15, vec![2, 2, 2, 2, 3, 3, 3, 3, 4]),
            (15, vec![3, 3, 3, 3, 2, 2, 2, 2, 4]),
        ]),
        n => {
            let n_i = i64::from(n);
            build_symmetric_matrix(
                n,
                &[
                    (ratio(n_i + 1, 1), ratio(1, 1), ratio(1, 1), ratio(0, 1)),
                    (ratio(n_i + 1, 2), ratio(1, 1), ratio(0, 1), ratio(n_i, 2)),
                    (ratio(n_i + 1, 2), ratio(0, 1), ratio(1, 1), ratio(n_i, 2)),
                ],
            )
        }
    }
}

/// A matrix realizing the given reform scenario with as few rows as the
/// scenario's certified dimension.
pub fn scenario_realization(n: u32, scenario: Scenario) -> Result<AmalgamatedMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("chamber size must be at least 1".into()));
    }
    let n_i = i64::from(n);
    match scenario {
        Scenario::StatusQuo => canonical_realization(n),
        Scenario::Unicameral => {
            build_symmetric_matrix(n, &[(ratio(n_i + 1, 1), ratio(1, 1), ratio(1, 1), ratio(0, 1))])
        }
        Scenario::BicameralOnly => {
            let majority = ratio(n_i / 2 + 1, 1);
            build_symmetric_matrix(
                n,
                &[
                    (majority.clone(), BigRational::one(), ratio(0, 1), ratio(0, 1)),
                    (majority, ratio(0, 1), BigRational::one(), ratio(0, 1)),
                ],
            )
        }
    }
}

/// Which structural class the factors of a decomposition belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorClaim {
    /// Factors are complete games (swap robust).
    Complete,
    /// Factors are weakly complete games.
    WeaklyComplete,
}

/// A decomposition of the status-quo game into an intersection of
/// structurally simpler games.
#[derive(Clone, Debug)]
pub struct FactorDecomposition {
    pub factors: Vec<GameDef>,
    pub claim: FactorClaim,
}

/// The two-factor decomposition of the status-quo game for `n >= 5`.
///
/// Even `n = 2k`: two complete rule games. The first wins with the
/// government and `2k+1` ordinary members, or without the government
/// given `2k+2` ordinary members of whom at least `k+1` are geographical;
/// the second mirrors the chambers. Odd `n`: the ordinary-majority row
/// and the two-row chamber/government matrix, both weakly complete.
pub fn factor_decomposition(n: u32) -> Result<FactorDecomposition> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!(
            "the two-factor decomposition needs chamber size >= 5, got {n}"
        )));
    }
    if n.is_multiple_of(2) {
        let k = n / 2;
        let system = |geo_heavy: bool| {
            ChamberRuleGame::from_rule(n, move |p: Profile| {
                let ordinary = p.geo + p.func;
                let chamber = if geo_heavy { p.geo } else { p.func };
                if p.gov {
                    ordinary > 2 * k
                } else {
                    ordinary >= 2 * k + 2 && chamber > k
                }
            })
        };
        Ok(FactorDecomposition {
            factors: vec![
                GameDef::ChamberRule(system(true)?),
                GameDef::ChamberRule(system(false)?),
            ],
            claim: FactorClaim::Complete,
        })
    } else {
        let n_i = i64::from(n);
        let ordinary_majority =
            build_symmetric_matrix(n, &[(ratio(n_i + 1, 1), ratio(1, 1), ratio(1, 1), ratio(0, 1))])?;
        let chamber_pair = build_symmetric_matrix(
            n,
            &[
                (ratio(n_i + 1, 2), ratio(1, 1), ratio(0, 1), ratio(n_i, 2)),
                (ratio(n_i + 1, 2), ratio(0, 1), ratio(1, 1), ratio(n_i, 2)),
            ],
        )?;
        Ok(FactorDecomposition {
            factors: vec![GameDef::Weighted(ordinary_majority), GameDef::Weighted(chamber_pair)],
            claim: FactorClaim::WeaklyComplete,
        })
    }
}

/// A coalition from the dimension arguments, with its status in the
/// status-quo game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub members: Coalition,
    pub expected_winning: bool,
}

/// One one-for-one exchange: `moved.0` leaves the first source for the
/// second, `moved.1` moves the other way, producing the two results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exchange {
    pub sources: (&'static str, &'static str),
    pub moved: (u32, u32),
    pub results: (&'static str, &'static str),
}

fn range_set(from: u32, to: u32) -> Coalition {
    if from > to {
        Coalition::EMPTY
    } else {
        Coalition::range(from, to)
    }
}

fn catalog_for(n: u32) -> Vec<CatalogEntry> {
    let mut entries = vec![CatalogEntry {
        name: "U",
        members: range_set(n + 1, 2 * n),
        expected_winning: false,
    }];
    if n >= 3 {
        let h = n / 2;
        let s_swap = range_set(1, h + 1).union(range_set(n + 1, n + h + 1));
        let s_swap_prime = range_set(1, h)
            .with(player(h + 2))
            .union(range_set(n + 1, n + h).with(player(n + h + 2)));
        entries.extend([
            CatalogEntry { name: "S_swap", members: s_swap, expected_winning: true },
            CatalogEntry { name: "S_swap_prime", members: s_swap_prime, expected_winning: true },
            CatalogEntry {
                name: "S_swap_result",
                members: s_swap.without(player(h + 1)).with(player(n + h + 2)),
                expected_winning: false,
            },
            CatalogEntry {
                name: "S_swap_prime_result",
                members: s_swap_prime.without(player(n + h + 2)).with(player(h + 1)),
                expected_winning: false,
            },
        ]);
    }
    if n >= 5 && !n.is_multiple_of(2) {
        let k = (n - 1) / 2;
        let gov = player(2 * n + 1);
        let geo = |to: u32| range_set(1, to);
        let func = |count: u32| range_set(n + 1, n + count);
        entries.extend([
            // The five exchange sources. The last one has only n ordinary
            // members and is therefore losing here; the decomposition
            // argument only ever uses it inside a hypothetical factor.
            CatalogEntry { name: "A1", members: geo(k + 1).union(func(k + 1)), expected_winning: true },
            CatalogEntry {
                name: "A2",
                members: geo(k).with(player(k + 2)).union(func(k).with(player(n + k + 2))),
                expected_winning: true,
            },
            CatalogEntry {
                name: "A3",
                members: geo(k - 1)
                    .with(player(k + 1))
                    .with(player(k + 2))
                    .union(func(k).with(player(n + k + 2))),
                expected_winning: true,
            },
            CatalogEntry {
                name: "A4",
                members: geo(k).with(player(k + 2)).union(func(k).with(player(n + k + 3))),
                expected_winning: true,
            },
            CatalogEntry {
                name: "B1",
                members: geo(k).with(player(k + 2)).with(player(k + 3)).union(func(k)).with(gov),
                expected_winning: true,
            },
            CatalogEntry {
                name: "C1",
                members: geo(k - 1).union(func(k + 2)).with(gov),
                expected_winning: false,
            },
            // The losing coalitions produced by the exchange chain.
            CatalogEntry { name: "L1", members: geo(k).union(func(k + 2)), expected_winning: false },
            CatalogEntry { name: "L2", members: geo(k + 2).union(func(k)), expected_winning: false },
            CatalogEntry {
                name: "L3",
                members: geo(k - 1).with(player(k + 1)).union(func(k + 2)),
                expected_winning: false,
            },
            CatalogEntry {
                name: "L4",
                members: geo(k).union(func(k + 1).with(player(n + k + 3))),
                expected_winning: false,
            },
            CatalogEntry { name: "L5", members: geo(k + 3).union(func(k)), expected_winning: false },
            CatalogEntry {
                name: "L6",
                members: geo(k).union(func(k + 1)).with(gov),
                expected_winning: false,
            },
            // L7 names the same coalition as L3; it reappears at the end
            // of the chain.
            CatalogEntry {
                name: "L7",
                members: geo(k - 1).with(player(k + 1)).union(func(k + 2)),
                expected_winning: false,
            },
        ]);
    }
    entries
}

/// Looks up one catalogued coalition by name, parameterized by `n`.
pub fn catalog_coalition(n: u32, name: &str) -> Result<CatalogEntry> {
    if n == 0 {
        return Err(Error::InvalidParameter("chamber size must be at least 1".into()));
    }
    catalog_for(n)
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCoalition { name: name.to_string(), n })
}

/// All catalogued coalitions available at this chamber size.
pub fn coalition_catalog(n: u32) -> Vec<CatalogEntry> {
    catalog_for(n)
}

/// The one-for-one exchanges behind the dimension lower-bound arguments:
/// the two-chamber swap (any `n >= 3`) and, for odd `n >= 5`, the chain
/// that pins down the factor memberships of L1..L7.
pub fn exchange_chain(n: u32) -> Vec<Exchange> {
    let mut chain = Vec::new();
    if n >= 3 {
        let h = n / 2;
        chain.push(Exchange {
            sources: ("S_swap", "S_swap_prime"),
            moved: (h + 1, n + h + 2),
            results: ("S_swap_result", "S_swap_prime_result"),
        });
    }
    if n >= 5 && !n.is_multiple_of(2) {
        let k = (n - 1) / 2;
        chain.extend([
            Exchange { sources: ("A1", "A2"), moved: (k + 1, n + k + 2), results: ("L1", "L2") },
            Exchange { sources: ("A1", "A3"), moved: (k, n + k + 2), results: ("L3", "L2") },
            Exchange { sources: ("A1", "A4"), moved: (k + 1, n + k + 3), results: ("L4", "L2") },
            Exchange { sources: ("B1", "A1"), moved: (2 * n + 1, k + 1), results: ("L5", "L6") },
            Exchange { sources: ("C1", "A1"), moved: (2 * n + 1, k + 1), results: ("L7", "L6") },
        ]);
    }
    chain
}
