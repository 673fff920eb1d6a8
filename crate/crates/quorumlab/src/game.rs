//! Players, coalitions and monotone simple games.
//!
//! A game is anything that classifies coalitions as winning or losing,
//! subject to the usual axioms: the empty coalition loses, the grand
//! coalition wins, and winning is preserved under supersets. Games are
//! immutable after construction and all operations here are pure.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::legco::LegcoGame;
use crate::profile::{ChamberRuleGame, ProfileView};

/// Hard width limit of the coalition bit mask.
pub const MAX_PLAYERS: u32 = 128;

/// A 1-based player index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlayerId(u32);

impl PlayerId {
    pub fn new(index: u32) -> Option<PlayerId> {
        (1..=MAX_PLAYERS).contains(&index).then_some(PlayerId(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Convenience constructor for player literals; panics outside 1..=128.
pub fn player(index: u32) -> PlayerId {
    PlayerId::new(index).expect("player index must be in 1..=128")
}

/// A set of players encoded as a fixed-width bit mask (bit i-1 = player i).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coalition(u128);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    /// The grand coalition over `players` players.
    pub fn full(players: u32) -> Coalition {
        debug_assert!(players <= MAX_PLAYERS);
        if players == MAX_PLAYERS {
            Coalition(u128::MAX)
        } else {
            Coalition((1u128 << players) - 1)
        }
    }

    pub fn from_mask(mask: u128) -> Coalition {
        Coalition(mask)
    }

    pub fn mask(self) -> u128 {
        self.0
    }

    pub fn from_players<I: IntoIterator<Item = PlayerId>>(players: I) -> Coalition {
        let mut c = Coalition::EMPTY;
        for p in players {
            c = c.with(p);
        }
        c
    }

    /// Players `from..=to`, a recurring pattern in the legislature games.
    pub fn range(from: u32, to: u32) -> Coalition {
        let mut c = Coalition::EMPTY;
        for i in from..=to {
            c = c.with(player(i));
        }
        c
    }

    pub fn contains(self, p: PlayerId) -> bool {
        self.0 >> (p.0 - 1) & 1 == 1
    }

    #[must_use]
    pub fn with(self, p: PlayerId) -> Coalition {
        Coalition(self.0 | 1u128 << (p.0 - 1))
    }

    #[must_use]
    pub fn without(self, p: PlayerId) -> Coalition {
        Coalition(self.0 & !(1u128 << (p.0 - 1)))
    }

    pub fn size(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersect(self, other: Coalition) -> Coalition {
        Coalition(self.0 & other.0)
    }

    pub fn union(self, other: Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    /// Members in ascending index order.
    pub fn players(self) -> impl Iterator<Item = PlayerId> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros();
            rest &= rest - 1;
            Some(PlayerId(bit + 1))
        })
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.players().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Enumeration budget for exhaustive operations, in players.
///
/// 2^26 coalition evaluations is the default desk-scale ceiling; callers
/// opting into larger sweeps construct a bigger cap explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumCap {
    max_players: u32,
}

impl EnumCap {
    pub const DEFAULT_MAX_PLAYERS: u32 = 26;

    pub fn new(max_players: u32) -> EnumCap {
        EnumCap {
            max_players: max_players.min(MAX_PLAYERS),
        }
    }

    pub fn max_players(self) -> u32 {
        self.max_players
    }

    pub fn check(self, players: u32) -> Result<()> {
        if players > self.max_players {
            Err(Error::CapacityExceeded {
                players,
                cap: self.max_players,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for EnumCap {
    fn default() -> EnumCap {
        EnumCap::new(EnumCap::DEFAULT_MAX_PLAYERS)
    }
}

/// One threshold/weight row: accepts `S` iff the member weights sum to at
/// least the threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedRule {
    threshold: BigRational,
    weights: Vec<BigRational>,
}

impl WeightedRule {
    pub fn new(threshold: BigRational, weights: Vec<BigRational>) -> Result<WeightedRule> {
        if weights.is_empty() || weights.len() as u32 > MAX_PLAYERS {
            return Err(Error::InvalidParameter(format!(
                "a rule needs 1..={MAX_PLAYERS} weights, got {}",
                weights.len()
            )));
        }
        if weights.iter().any(|w| w < &BigRational::zero()) {
            return Err(Error::InvalidParameter(
                "rule weights must be nonnegative".into(),
            ));
        }
        Ok(WeightedRule { threshold, weights })
    }

    pub fn threshold(&self) -> &BigRational {
        &self.threshold
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn width(&self) -> u32 {
        self.weights.len() as u32
    }

    pub fn accepts(&self, s: Coalition) -> bool {
        let mut total = BigRational::zero();
        for p in s.players() {
            total += &self.weights[p.index() as usize - 1];
        }
        total >= self.threshold
    }
}

/// An intersection of weighted rules over a common player set.
///
/// Nonnegative weights make every row individually monotone, so the
/// intersection is a monotone simple game whenever the grand coalition
/// clears every threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamatedMatrix {
    rows: Vec<WeightedRule>,
}

impl AmalgamatedMatrix {
    pub fn new(rows: Vec<WeightedRule>) -> Result<AmalgamatedMatrix> {
        let Some(first) = rows.first() else {
            return Err(Error::InvalidParameter("a matrix needs at least one row".into()));
        };
        let width = first.width();
        if rows.iter().any(|r| r.width() != width) {
            return Err(Error::WidthMismatch {
                expected: width,
                got: rows.iter().map(WeightedRule::width).find(|w| *w != width).unwrap(),
            });
        }
        let grand = Coalition::full(width);
        for row in &rows {
            if !row.accepts(grand) {
                return Err(Error::InvalidGame(
                    "grand coalition must clear every row threshold".into(),
                ));
            }
        }
        // A single all-accepting row is legal (it is still monotone); only
        // the intersection must reject the empty coalition.
        if rows.iter().all(|r| r.accepts(Coalition::EMPTY)) {
            return Err(Error::InvalidGame(
                "the empty coalition may not clear every row threshold".into(),
            ));
        }
        Ok(AmalgamatedMatrix { rows })
    }

    /// Single-row convenience constructor from integer data.
    pub fn single(threshold: i64, weights: &[i64]) -> Result<AmalgamatedMatrix> {
        AmalgamatedMatrix::from_integers(&[(threshold, weights.to_vec())])
    }

    pub fn from_integers(rows: &[(i64, Vec<i64>)]) -> Result<AmalgamatedMatrix> {
        let rows = rows
            .iter()
            .map(|(q, ws)| {
                WeightedRule::new(
                    BigRational::from_integer((*q).into()),
                    ws.iter().map(|w| BigRational::from_integer((*w).into())).collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        AmalgamatedMatrix::new(rows)
    }

    pub fn rows(&self) -> &[WeightedRule] {
        &self.rows
    }

    pub fn row_count(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn width(&self) -> u32 {
        self.rows[0].width()
    }

    pub fn accepts(&self, s: Coalition) -> bool {
        self.rows.iter().all(|r| r.accepts(s))
    }
}

/// An explicitly listed monotone game: the full winning set, sorted by
/// mask value for canonical serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGame {
    players: u32,
    winning: Vec<Coalition>,
}

impl ExplicitGame {
    pub fn new(players: u32, mut winning: Vec<Coalition>) -> Result<ExplicitGame> {
        if players == 0 || players > MAX_PLAYERS {
            return Err(Error::InvalidParameter(format!(
                "player count must be in 1..={MAX_PLAYERS}, got {players}"
            )));
        }
        winning.sort_unstable();
        winning.dedup();
        let full = Coalition::full(players);
        if let Some(c) = winning.iter().find(|c| !c.is_subset_of(full)) {
            return Err(Error::WidthMismatch {
                expected: players,
                got: 128 - c.mask().leading_zeros(),
            });
        }
        let violations = check_monotone(&winning, players);
        if let Some((s, t)) = violations.first() {
            return Err(Error::InvalidGame(if s == t {
                format!("axiom violation at {s}")
            } else {
                format!("winning {s} has losing superset {t}")
            }));
        }
        Ok(ExplicitGame { players, winning })
    }

    pub fn players(&self) -> u32 {
        self.players
    }

    pub fn winning(&self) -> &[Coalition] {
        &self.winning
    }

    pub fn accepts(&self, s: Coalition) -> bool {
        self.winning.binary_search(&s).is_ok()
    }
}

/// A monotone simple game in any of its concrete representations.
///
/// All variants expose the same evaluation contract; `ChamberRule` covers
/// the chamber-symmetric rule games that are neither weighted nor members
/// of the legislature family (notably the factor games used by the
/// dimension decompositions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameDef {
    Explicit(ExplicitGame),
    Weighted(AmalgamatedMatrix),
    Legco(LegcoGame),
    ChamberRule(ChamberRuleGame),
}

impl GameDef {
    pub fn player_count(&self) -> u32 {
        match self {
            GameDef::Explicit(g) => g.players(),
            GameDef::Weighted(m) => m.width(),
            GameDef::Legco(g) => g.player_count(),
            GameDef::ChamberRule(g) => g.player_count(),
        }
    }

    /// Evaluates the characteristic function on a coalition.
    pub fn eval(&self, s: Coalition) -> Result<bool> {
        let full = Coalition::full(self.player_count());
        if !s.is_subset_of(full) {
            return Err(Error::WidthMismatch {
                expected: self.player_count(),
                got: 128 - s.mask().leading_zeros(),
            });
        }
        Ok(match self {
            GameDef::Explicit(g) => g.accepts(s),
            GameDef::Weighted(m) => m.accepts(s),
            GameDef::Legco(g) => g.accepts(s),
            GameDef::ChamberRule(g) => g.accepts(s),
        })
    }

    /// The symmetry-reduced view of the game, when one exists.
    ///
    /// Legislature-family and chamber-rule games are symmetric by
    /// construction; a weighted matrix qualifies when its weights are
    /// constant within each chamber.
    pub fn profile_view(&self) -> Option<ProfileView> {
        ProfileView::of(self)
    }
}

/// Outcome of comparing two games coalition-by-coalition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameComparison {
    pub equal: bool,
    /// A coalition the two games classify differently, when unequal.
    pub witness: Option<Coalition>,
}

/// Reports every one-step monotonicity failure in a winning set, plus the
/// two axiom checks, as pairs `(S, T)` with `S ⊆ T`, `S` winning, `T` not.
///
/// A reflexive pair marks an axiom failure: `(∅, ∅)` when the empty
/// coalition is listed winning, `(N, N)` when the grand coalition is not
/// reachable from any listed winner. The list is empty exactly when the
/// set is superset-closed, excludes `∅` and contains the grand coalition.
pub fn check_monotone(winning: &[Coalition], players: u32) -> Vec<(Coalition, Coalition)> {
    let set: std::collections::BTreeSet<Coalition> = winning.iter().copied().collect();
    let mut violations = Vec::new();
    if set.contains(&Coalition::EMPTY) {
        violations.push((Coalition::EMPTY, Coalition::EMPTY));
    }
    let grand = Coalition::full(players);
    if set.is_empty() {
        violations.push((grand, grand));
    }
    for &s in &set {
        for i in 1..=players {
            let p = PlayerId(i);
            if !s.contains(p) {
                let t = s.with(p);
                if !set.contains(&t) {
                    violations.push((s, t));
                }
            }
        }
    }
    violations
}

/// Precomputed win/lose bits over all `2^N` masks; the workhorse behind
/// the exhaustive scans.
pub struct EvalTable {
    players: u32,
    bits: Vec<u64>,
}

impl EvalTable {
    pub fn build(game: &GameDef, cap: EnumCap) -> Result<EvalTable> {
        let players = game.player_count();
        cap.check(players)?;
        let n_masks = 1usize << players;
        let mut bits = vec![0u64; n_masks.div_ceil(64)];
        // Symmetric games classify by profile, which turns the fill into
        // popcounts instead of per-row rational sums.
        let view = game.profile_view();
        for mask in 0..n_masks {
            let s = Coalition::from_mask(mask as u128);
            let wins = match &view {
                Some(v) => v.wins(crate::profile::Profile::of(s, v.chamber_size())),
                None => game.eval(s)?,
            };
            if wins {
                bits[mask >> 6] |= 1u64 << (mask & 63);
            }
        }
        Ok(EvalTable { players, bits })
    }

    pub fn players(&self) -> u32 {
        self.players
    }

    pub fn wins(&self, s: Coalition) -> bool {
        let mask = s.mask() as usize;
        self.bits[mask >> 6] >> (mask & 63) & 1 == 1
    }

    /// All winning coalitions in ascending mask order.
    pub fn winning(&self) -> Vec<Coalition> {
        (0..1u128 << self.players)
            .map(Coalition::from_mask)
            .filter(|c| self.wins(*c))
            .collect()
    }
}

/// The winning coalitions none of whose proper subsets win, ascending by
/// mask. These generate all lower-bound constraints of a realization.
pub fn minimal_winning(game: &GameDef, cap: EnumCap) -> Result<Vec<Coalition>> {
    let table = EvalTable::build(game, cap)?;
    let n = game.player_count();
    let mut result = Vec::new();
    for mask in 0..1u128 << n {
        let s = Coalition::from_mask(mask);
        if table.wins(s) && s.players().all(|p| !table.wins(s.without(p))) {
            result.push(s);
        }
    }
    Ok(result)
}

/// Dual frontier: the losing coalitions all of whose proper supersets win.
pub fn maximal_losing(game: &GameDef, cap: EnumCap) -> Result<Vec<Coalition>> {
    let table = EvalTable::build(game, cap)?;
    let n = game.player_count();
    let mut result = Vec::new();
    for mask in 0..1u128 << n {
        let s = Coalition::from_mask(mask);
        if !table.wins(s) {
            let maximal = (1..=n)
                .map(PlayerId)
                .filter(|p| !s.contains(*p))
                .all(|p| table.wins(s.with(p)));
            if maximal {
                result.push(s);
            }
        }
    }
    Ok(result)
}

// Above this width, equality of two symmetry-reducible games is decided on
// their profile tables instead of walking all 2^N masks. The two routes
// agree by construction (every profile is realized by some coalition); the
// cross-check lives in the profile module's tests.
const PROFILE_FASTPATH_MIN_PLAYERS: u32 = 20;

/// Compares two games on every coalition.
///
/// Returns a witness coalition (the lowest differing mask, or the lowest
/// differing profile's canonical coalition on the symmetry-reduced path)
/// when the games disagree.
pub fn games_equal(g1: &GameDef, g2: &GameDef, cap: EnumCap) -> Result<GameComparison> {
    let n = g1.player_count();
    if g2.player_count() != n {
        return Err(Error::WidthMismatch {
            expected: n,
            got: g2.player_count(),
        });
    }
    cap.check(n)?;

    if n > PROFILE_FASTPATH_MIN_PLAYERS {
        if let (Some(v1), Some(v2)) = (g1.profile_view(), g2.profile_view()) {
            let witness = v1.first_disagreement(&v2);
            return Ok(GameComparison {
                equal: witness.is_none(),
                witness,
            });
        }
    }

    for mask in 0..1u128 << n {
        let s = Coalition::from_mask(mask);
        if g1.eval(s)? != g2.eval(s)? {
            return Ok(GameComparison {
                equal: false,
                witness: Some(s),
            });
        }
    }
    Ok(GameComparison {
        equal: true,
        witness: None,
    })
}
