//! Symmetry-reduced coalition signatures.
//!
//! Every game in the legislature family is invariant under permutations
//! within each chamber, so a coalition is classified entirely by its
//! profile: how many geographical members, how many functional members,
//! and whether the government member joined. Collapsing coalitions to
//! profiles turns `2^(2n+1)` questions into `2(n+1)^2` and is what makes
//! the realization-refutation search tractable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{player, Coalition, GameDef};
use crate::legco::PlayerCategories;

/// A coalition signature: `geo` members from the first chamber, `func`
/// from the second, plus the government flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Profile {
    pub geo: u32,
    pub func: u32,
    pub gov: bool,
}

impl Profile {
    pub fn new(geo: u32, func: u32, gov: bool) -> Profile {
        Profile { geo, func, gov }
    }

    /// The signature of a concrete coalition under the standard chamber
    /// layout for chamber size `n`.
    pub fn of(s: Coalition, n: u32) -> Profile {
        let cats = PlayerCategories::new(n);
        Profile {
            geo: s.intersect(cats.geo()).size(),
            func: s.intersect(cats.func()).size(),
            gov: s.contains(cats.gov()),
        }
    }

    /// Componentwise dominance; winning sets are upward closed under it.
    pub fn dominated_by(self, other: Profile) -> bool {
        self.geo <= other.geo && self.func <= other.func && self.gov <= other.gov
    }

    pub fn size(self) -> u32 {
        self.geo + self.func + u32::from(self.gov)
    }

    /// The canonical coalition with this signature: lowest-indexed members
    /// of each chamber.
    pub fn canonical_coalition(self, n: u32) -> Coalition {
        let mut c = Coalition::EMPTY;
        if self.geo > 0 {
            c = c.union(Coalition::range(1, self.geo));
        }
        if self.func > 0 {
            c = c.union(Coalition::range(n + 1, n + self.func));
        }
        if self.gov {
            c = c.with(player(2 * n + 1));
        }
        c
    }

    fn index(self, n: u32) -> usize {
        let side = n as usize + 1;
        (usize::from(self.gov) * side + self.geo as usize) * side + self.func as usize
    }
}

/// Deterministic iteration order over all profiles for chamber size `n`:
/// government flag outermost, then geo count, then func count.
pub fn all_profiles(n: u32) -> impl Iterator<Item = Profile> {
    (0..2u32).flat_map(move |gov| {
        (0..=n).flat_map(move |geo| (0..=n).map(move |func| Profile::new(geo, func, gov == 1)))
    })
}

/// A chamber-symmetric game given directly by its profile classification.
///
/// This is the representation for rule games that are neither weighted
/// nor members of the legislature family, e.g. the complete factor games
/// of the even-size decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberRuleGame {
    n: u32,
    wins: Vec<bool>,
}

impl ChamberRuleGame {
    /// Builds the game from a profile predicate, validating the
    /// simple-game axioms and dominance monotonicity.
    pub fn from_rule(n: u32, rule: impl Fn(Profile) -> bool) -> Result<ChamberRuleGame> {
        if n == 0 || 2 * n + 1 > crate::game::MAX_PLAYERS {
            return Err(Error::InvalidParameter(format!(
                "chamber size must be in 1..=63, got {n}"
            )));
        }
        let mut wins = vec![false; 2 * (n as usize + 1) * (n as usize + 1)];
        for p in all_profiles(n) {
            wins[p.index(n)] = rule(p);
        }
        let game = ChamberRuleGame { n, wins };
        if game.wins_profile(Profile::new(0, 0, false)) {
            return Err(Error::InvalidGame("the empty profile may not win".into()));
        }
        if !game.wins_profile(Profile::new(n, n, true)) {
            return Err(Error::InvalidGame("the full profile must win".into()));
        }
        for p in all_profiles(n) {
            if !game.wins_profile(p) {
                continue;
            }
            let mut ups = Vec::new();
            if p.geo < n {
                ups.push(Profile::new(p.geo + 1, p.func, p.gov));
            }
            if p.func < n {
                ups.push(Profile::new(p.geo, p.func + 1, p.gov));
            }
            if !p.gov {
                ups.push(Profile::new(p.geo, p.func, true));
            }
            if let Some(bad) = ups.into_iter().find(|u| !game.wins_profile(*u)) {
                return Err(Error::InvalidGame(format!(
                    "profile rule is not monotone: {p:?} wins but {bad:?} loses"
                )));
            }
        }
        Ok(game)
    }

    pub fn chamber_size(&self) -> u32 {
        self.n
    }

    pub fn player_count(&self) -> u32 {
        2 * self.n + 1
    }

    pub fn wins_profile(&self, p: Profile) -> bool {
        self.wins[p.index(self.n)]
    }

    pub fn accepts(&self, s: Coalition) -> bool {
        self.wins_profile(Profile::of(s, self.n))
    }

    /// The game accepting exactly the coalitions both games accept.
    pub fn intersect(&self, other: &ChamberRuleGame) -> Result<ChamberRuleGame> {
        if self.n != other.n {
            return Err(Error::WidthMismatch {
                expected: self.player_count(),
                got: other.player_count(),
            });
        }
        ChamberRuleGame::from_rule(self.n, |p| self.wins_profile(p) && other.wins_profile(p))
    }
}

/// The materialized profile classification of any chamber-symmetric game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileView {
    n: u32,
    wins: Vec<bool>,
}

impl ProfileView {
    /// Extracts the symmetric view of a game, if it has one.
    ///
    /// Legislature and chamber-rule games qualify by construction; a
    /// weighted matrix qualifies when its width is `2n+1` and each row's
    /// weights are constant within both chambers. Explicit games are not
    /// inspected for hidden symmetry.
    pub fn of(game: &GameDef) -> Option<ProfileView> {
        match game {
            GameDef::Legco(g) => {
                let n = g.chamber_size();
                Some(ProfileView::from_rule(n, |p| g.wins_profile(p)))
            }
            GameDef::ChamberRule(g) => Some(ProfileView {
                n: g.chamber_size(),
                wins: all_profiles(g.chamber_size()).map(|p| g.wins_profile(p)).collect(),
            }),
            GameDef::Weighted(m) => {
                let width = m.width();
                if width < 3 || width % 2 == 0 {
                    return None;
                }
                let n = (width - 1) / 2;
                let mut rows = Vec::with_capacity(m.rows().len());
                for row in m.rows() {
                    let w = row.weights();
                    let geo = &w[0];
                    let func = &w[n as usize];
                    if w[..n as usize].iter().any(|x| x != geo)
                        || w[n as usize..2 * n as usize].iter().any(|x| x != func)
                    {
                        return None;
                    }
                    rows.push((row.threshold().clone(), geo.clone(), func.clone(), w[2 * n as usize].clone()));
                }
                Some(ProfileView::from_rule(n, |p| {
                    rows.iter().all(|(q, e, f, g)| {
                        let mut total = e * num_rational::BigRational::from_integer(p.geo.into());
                        total += f * num_rational::BigRational::from_integer(p.func.into());
                        if p.gov {
                            total += g;
                        }
                        total >= *q
                    })
                }))
            }
            GameDef::Explicit(_) => None,
        }
    }

    pub fn from_rule(n: u32, rule: impl Fn(Profile) -> bool) -> ProfileView {
        ProfileView {
            n,
            wins: all_profiles(n).map(rule).collect(),
        }
    }

    pub fn chamber_size(&self) -> u32 {
        self.n
    }

    pub fn wins(&self, p: Profile) -> bool {
        // all_profiles iterates in index order, so the flat Vec lines up.
        self.wins[p.index(self.n)]
    }

    /// The canonical coalition of the first profile (in iteration order)
    /// the two views classify differently.
    pub fn first_disagreement(&self, other: &ProfileView) -> Option<Coalition> {
        debug_assert_eq!(self.n, other.n);
        all_profiles(self.n)
            .find(|p| self.wins(*p) != other.wins(*p))
            .map(|p| p.canonical_coalition(self.n))
    }

    /// Winning profiles none of whose strictly dominated profiles win.
    pub fn minimal_winning_profiles(&self) -> Vec<Profile> {
        all_profiles(self.n)
            .filter(|&p| {
                self.wins(p)
                    && all_profiles(self.n)
                        .filter(|&q| q != p && q.dominated_by(p))
                        .all(|q| !self.wins(q))
            })
            .collect()
    }

    /// Losing profiles dominated by no other losing profile.
    pub fn maximal_losing_profiles(&self) -> Vec<Profile> {
        all_profiles(self.n)
            .filter(|&p| {
                !self.wins(p)
                    && all_profiles(self.n)
                        .filter(|&q| q != p && p.dominated_by(q))
                        .all(|q| self.wins(q))
            })
            .collect()
    }
}

/// Full profile classification of a symmetric game plus its dominance
/// frontiers, the constraint generators for the realization searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileTable {
    pub view: ProfileView,
    pub minimal_winning: Vec<Profile>,
    pub maximal_losing: Vec<Profile>,
}

impl ProfileTable {
    pub fn from_view(view: ProfileView) -> ProfileTable {
        let minimal_winning = view.minimal_winning_profiles();
        let maximal_losing = view.maximal_losing_profiles();
        ProfileTable {
            view,
            minimal_winning,
            maximal_losing,
        }
    }

    pub fn of(game: &GameDef) -> Result<ProfileTable> {
        let view = game.profile_view().ok_or_else(|| {
            Error::InvalidParameter("game has no chamber-symmetric profile form".into())
        })?;
        Ok(ProfileTable::from_view(view))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::EnumCap;
    use crate::legco::{legco_game, profile_table, Scenario};

    #[test]
    fn profile_of_coalition() {
        // n=3: geo {1,2,3}, func {4,5,6}, government 7.
        let s = Coalition::range(1, 2).union(Coalition::range(5, 7));
        let p = Profile::of(s, 3);
        assert_eq!(p, Profile::new(2, 2, true));
        assert_eq!(p.size(), 5);
    }

    #[test]
    fn canonical_coalition_round_trips() {
        let n = 4;
        for p in all_profiles(n) {
            assert_eq!(Profile::of(p.canonical_coalition(n), n), p);
        }
    }

    #[test]
    fn legco_5_maximal_losing_profiles() {
        let table = profile_table(5, Scenario::StatusQuo).unwrap();
        let expected: Vec<Profile> = vec![
            (2, 5, false),
            (5, 2, false),
            (0, 5, true),
            (1, 4, true),
            (2, 3, true),
            (3, 2, true),
            (4, 1, true),
            (5, 0, true),
        ]
        .into_iter()
        .map(|(r, s, g)| Profile::new(r, s, g))
        .collect();
        let mut got = table.maximal_losing.clone();
        got.sort();
        let mut want = expected;
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn legco_5_minimal_winning_profiles() {
        let table = profile_table(5, Scenario::StatusQuo).unwrap();
        let mut got = table.minimal_winning.clone();
        got.sort();
        let mut want: Vec<Profile> = vec![
            (3, 3, false),
            (1, 5, true),
            (2, 4, true),
            (4, 2, true),
            (5, 1, true),
        ]
        .into_iter()
        .map(|(r, s, g)| Profile::new(r, s, g))
        .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn legco_1_both_chambers_unanimous() {
        let table = profile_table(1, Scenario::StatusQuo).unwrap();
        assert!(table.view.wins(Profile::new(1, 1, false)));
        assert!(!table.view.wins(Profile::new(1, 0, false)));
    }

    #[test]
    fn chamber_rule_validates_monotonicity() {
        // Winning iff exactly two geo members: not upward closed.
        assert!(ChamberRuleGame::from_rule(3, |p| p.geo == 2).is_err());
        // Quota rule is fine.
        assert!(ChamberRuleGame::from_rule(3, |p| p.size() >= 4).is_ok());
    }

    #[test]
    fn profile_view_of_symmetric_matrix() {
        // The 2-row realization of the n=3 game has chamber-constant rows.
        let g = crate::legco::canonical_realization(3).unwrap();
        let game = GameDef::Weighted(g);
        let view = game.profile_view().expect("chamber-constant matrix");
        let legco = legco_game(3, Scenario::StatusQuo).unwrap();
        let legco_view = legco.profile_view().unwrap();
        assert!(view.first_disagreement(&legco_view).is_none());
    }

    #[test]
    fn profile_view_rejects_asymmetric_matrix() {
        // Geo weights 2 and 1 differ, so no chamber-symmetric view exists.
        let m = crate::game::AmalgamatedMatrix::single(3, &[2, 1, 1, 1, 0]).unwrap();
        assert!(GameDef::Weighted(m).profile_view().is_none());
        // Even-width matrices have no government column at all.
        let m = crate::game::AmalgamatedMatrix::single(2, &[1, 1, 1, 1]).unwrap();
        assert!(GameDef::Weighted(m).profile_view().is_none());
    }

    // The symmetry reduction must agree with raw enumeration; this is the
    // cross-check that licenses the profile fast path in games_equal.
    #[test]
    fn profile_classification_matches_enumeration() {
        for n in 1..=4 {
            let game = legco_game(n, Scenario::StatusQuo).unwrap();
            let view = game.profile_view().unwrap();
            for mask in 0..1u128 << (2 * n + 1) {
                let s = Coalition::from_mask(mask);
                assert_eq!(view.wins(Profile::of(s, n)), game.eval(s).unwrap());
            }
        }
    }

    #[test]
    fn frontier_profiles_match_frontier_coalitions() {
        let n = 3;
        let game = legco_game(n, Scenario::StatusQuo).unwrap();
        let table = ProfileTable::of(&game).unwrap();
        let min_win = crate::game::minimal_winning(&game, EnumCap::default()).unwrap();
        let mut profile_set: Vec<Profile> =
            min_win.iter().map(|&c| Profile::of(c, n)).collect();
        profile_set.sort();
        profile_set.dedup();
        let mut want = table.minimal_winning.clone();
        want.sort();
        assert_eq!(profile_set, want);
    }
}
