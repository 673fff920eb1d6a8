//! Banzhaf and Shapley-Shubik power computation.
//!
//! Two independent routes everywhere: closed forms in exact big-integer
//! arithmetic for any chamber size, and brute-force enumeration oracles
//! under the enumeration cap. The cross-checks between them are the
//! regression core of this module.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::{binomial, exact_div, factorials, pow2};
use crate::error::{Error, Result};
use crate::game::{Coalition, EnumCap, EvalTable, GameDef, PlayerId};

/// Exact swing counts per player: entry `i-1` counts the winning
/// coalitions that contain player `i` and lose without them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwingCounts {
    counts: Vec<BigUint>,
}

impl SwingCounts {
    pub fn count(&self, p: PlayerId) -> &BigUint {
        &self.counts[p.index() as usize - 1]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// The normalized Banzhaf index vector (sums to one).
    pub fn normalized(&self) -> IndexVector {
        let total = BigInt::from(self.total());
        let values = self
            .counts
            .iter()
            .map(|c| BigRational::new(BigInt::from(c.clone()), total.clone()))
            .collect();
        IndexVector { values }
    }
}

/// A vector of exact rational power indices, summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexVector {
    values: Vec<BigRational>,
}

impl IndexVector {
    pub fn value(&self, p: PlayerId) -> &BigRational {
        &self.values[p.index() as usize - 1]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn sum(&self) -> BigRational {
        self.values.iter().sum()
    }
}

/// Swing counts of every player by full enumeration.
pub fn banzhaf_enum(game: &GameDef, cap: EnumCap) -> Result<SwingCounts> {
    let table = EvalTable::build(game, cap)?;
    let n = game.player_count();
    let mut counts = vec![BigUint::zero(); n as usize];
    for mask in 0..1u128 << n {
        let s = Coalition::from_mask(mask);
        if !table.wins(s) {
            continue;
        }
        for p in s.players() {
            if !table.wins(s.without(p)) {
                counts[p.index() as usize - 1] += 1u32;
            }
        }
    }
    Ok(SwingCounts { counts })
}

/// Closed-form swing counts for the status-quo game of chamber size `n`:
/// `(ordinary, government)`.
///
/// The half and quarter terms are integers for parity reasons; the exact
/// divisions assert that instead of truncating.
pub fn banzhaf_closed(n: u64) -> (BigUint, BigUint) {
    assert!(n >= 1, "chamber size must be at least 1");
    let gov_present = binomial(2 * n - 1, n);
    let half_central = exact_div(binomial(2 * n, n), 2);
    if !n.is_multiple_of(2) {
        let ordinary = gov_present + binomial(n - 1, (n - 1) / 2) * pow2(n - 1);
        let government = pow2(2 * n - 2) - half_central;
        (ordinary, government)
    } else {
        let central = binomial(n, n / 2);
        let ordinary =
            gov_present + binomial(n - 1, n / 2) * (pow2(n - 1) - exact_div(central.clone(), 2));
        // 2^(2n-2) - C(2n,n)/2 + 2^(n-1)·C(n,n/2) - C(n,n/2)²/4, grouped
        // positives-first so the unsigned subtraction cannot underflow.
        let positive = pow2(2 * n - 2) + pow2(n - 1) * &central;
        let negative = half_central + exact_div(central.clone() * central, 4);
        let government = positive - negative;
        (ordinary, government)
    }
}

/// Shapley-Shubik indices of every player by full enumeration, using the
/// coalition form: a swing `S ∋ i` contributes `(|S|-1)!(N-|S|)!/N!`.
pub fn ssi_enum(game: &GameDef, cap: EnumCap) -> Result<IndexVector> {
    let table = EvalTable::build(game, cap)?;
    let n = game.player_count();
    let fact = factorials(n as u64);
    // Accumulate the integer weights and divide by N! once at the end.
    let mut weights = vec![BigUint::zero(); n as usize];
    for mask in 0..1u128 << n {
        let s = Coalition::from_mask(mask);
        if !table.wins(s) {
            continue;
        }
        let size = s.size() as usize;
        for p in s.players() {
            if !table.wins(s.without(p)) {
                weights[p.index() as usize - 1] += &fact[size - 1] * &fact[n as usize - size];
            }
        }
    }
    let total = BigInt::from(fact[n as usize].clone());
    let values = weights
        .into_iter()
        .map(|w| BigRational::new(BigInt::from(w), total.clone()))
        .collect();
    Ok(IndexVector { values })
}

/// Closed-form Shapley-Shubik index of the government member in the
/// status-quo game:
/// `(2/(2n+1)) · Σ_{r=1}^{⌊n/2⌋} Σ_{s=n+1-r}^{n} C(r+s,r)·C(2n-r-s,n-r) / C(2n,n)`.
pub fn ssi_gov_closed(n: u64) -> BigRational {
    assert!(n >= 1, "chamber size must be at least 1");
    let mut sum = BigUint::zero();
    for r in 1..=n / 2 {
        // March s upward with exact incremental binomial updates:
        // C(r+s+1, r) = C(r+s, r)·(r+s+1)/(s+1) and
        // C(m-1, n-r) = C(m, n-r)·(n-s)/m for m = 2n-r-s.
        let mut left = binomial(n + 1, r);
        let mut right = binomial(n - 1, n - r);
        for s in (n + 1 - r)..=n {
            sum += &left * &right;
            if s < n {
                left = exact_div(left * BigUint::from(r + s + 1), s + 1);
                right = exact_div(right * BigUint::from(n - s), 2 * n - r - s);
            }
        }
    }
    let numside = BigInt::from(2u32) * BigInt::from(sum);
    let denside = BigInt::from(2 * n + 1) * BigInt::from(binomial(2 * n, n));
    BigRational::new(numside, denside)
}

/// Ordinary-member Shapley-Shubik index implied by the government's:
/// the `2n` ordinary members split the rest equally.
pub fn ssi_ord_closed(n: u64) -> BigRational {
    let gov = ssi_gov_closed(n);
    (BigRational::one() - gov) / BigRational::from_integer((2 * n).into())
}

/// Stirling-based approximation of the government/ordinary swing ratio.
pub fn bi_ratio_asymptotic(n: u64) -> f64 {
    let root2 = std::f64::consts::SQRT_2;
    let lead = (std::f64::consts::PI / 2.0).sqrt() * (n as f64).sqrt() * (root2 - 1.0);
    if n.is_multiple_of(2) {
        lead + root2 - 1.0
    } else {
        lead - root2 * (root2 - 1.0)
    }
}

/// Lossless-enough conversion of a big rational to `f64` for display and
/// tolerance checks: scales the quotient to carry ~80 bits regardless of
/// the operands' magnitude.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let shift = 80i64 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let v = q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-shift as i32);
    if negative {
        -v
    } else {
        v
    }
}

/// One row of the closed-form ratio sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub n: u64,
    pub b_ord: BigUint,
    pub b_gov: BigUint,
    /// Government/ordinary swing ratio, exact.
    pub bi_ratio: BigRational,
    pub bi_ratio_asymptotic: f64,
    pub ssi_gov: BigRational,
    pub ssi_ord: BigRational,
    /// `2n·SSI_gov/(1-SSI_gov)`, the government/ordinary index ratio.
    pub ssi_ratio: BigRational,
}

impl SweepRow {
    pub fn compute(n: u64) -> SweepRow {
        let (b_ord, b_gov) = banzhaf_closed(n);
        let bi_ratio = BigRational::new(BigInt::from(b_gov.clone()), BigInt::from(b_ord.clone()));
        let ssi_gov = ssi_gov_closed(n);
        let ssi_ord = ssi_ord_closed(n);
        let ssi_ratio = BigRational::from_integer((2 * n).into()) * &ssi_gov
            / (BigRational::one() - &ssi_gov);
        SweepRow {
            n,
            b_ord,
            b_gov,
            bi_ratio,
            bi_ratio_asymptotic: bi_ratio_asymptotic(n),
            ssi_gov,
            ssi_ord,
            ssi_ratio,
        }
    }

    pub fn parity(&self) -> &'static str {
        if self.n.is_multiple_of(2) {
            "even"
        } else {
            "odd"
        }
    }
}

/// Closed-form sweep over chamber sizes; no enumeration, so sizes in the
/// thousands are fine.
pub fn sweep(from: u64, to: u64, step: u64) -> Result<Vec<SweepRow>> {
    if from < 1 || from > to {
        return Err(Error::InvalidParameter(format!("empty sweep range {from}..={to}")));
    }
    if step == 0 {
        return Err(Error::InvalidParameter("step must be positive".into()));
    }
    Ok((from..=to).step_by(step as usize).map(SweepRow::compute).collect())
}

/// One probe row: the scaled index `SSI·√n` tracks the conjectured
/// `λ/√n` decay, the ratio tracks the conjectured `√n` growth.
#[derive(Clone, Debug)]
pub struct ProbeRow {
    pub n: u64,
    pub ssi_gov: BigRational,
    pub lambda_estimate: f64,
    pub ssi_ratio: f64,
}

/// Numeric probe of the two conjectured asymptotics over `from..=to`.
/// Reports estimates only; no limit is asserted.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub rows: Vec<ProbeRow>,
    /// Least-squares slope of `ln(ssi_ratio)` against `ln(n)`.
    pub fitted_exponent: f64,
}

pub fn conjecture_probe(from: u64, to: u64) -> Result<ProbeReport> {
    if from < 1 || from > to {
        return Err(Error::InvalidParameter(format!("empty probe range {from}..={to}")));
    }
    let rows: Vec<ProbeRow> = (from..=to)
        .map(|n| {
            let row = SweepRow::compute(n);
            ProbeRow {
                n,
                lambda_estimate: rational_to_f64(&row.ssi_gov) * (n as f64).sqrt(),
                ssi_ratio: rational_to_f64(&row.ssi_ratio),
                ssi_gov: row.ssi_gov,
            }
        })
        .collect();

    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), r.ssi_ratio.ln()))
        .collect();
    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
    let cov: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let var: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let fitted_exponent = if var == 0.0 { f64::NAN } else { cov / var };

    Ok(ProbeReport { rows, fitted_exponent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{player, AmalgamatedMatrix};
    use crate::legco::{legco_game, Scenario};

    fn legco(n: u32) -> GameDef {
        legco_game(n, Scenario::StatusQuo).unwrap()
    }

    fn cap() -> EnumCap {
        EnumCap::default()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn swing_counts_smallest_sizes() {
        let b1 = banzhaf_enum(&legco(1), cap()).unwrap();
        assert_eq!(b1.counts(), &[big(2), big(2), big(0)]);

        let b2 = banzhaf_enum(&legco(2), cap()).unwrap();
        assert_eq!(b2.counts(), &[big(4), big(4), big(4), big(4), big(4)]);

        let m = GameDef::Weighted(AmalgamatedMatrix::single(2, &[1, 1, 0]).unwrap());
        assert_eq!(banzhaf_enum(&m, cap()).unwrap().counts(), &[big(2), big(2), big(0)]);
    }

    #[test]
    fn closed_form_matches_enumeration() {
        for n in 1..=4u32 {
            let (ord, gov) = banzhaf_closed(n as u64);
            let by_enum = banzhaf_enum(&legco(n), cap()).unwrap();
            for j in 1..=2 * n {
                assert_eq!(*by_enum.count(player(j)), ord, "ordinary member {j} at n={n}");
            }
            assert_eq!(*by_enum.count(player(2 * n + 1)), gov, "government at n={n}");
        }
    }

    #[test]
    fn closed_form_fixed_points() {
        assert_eq!(banzhaf_closed(1), (big(2), big(0)));
        assert_eq!(banzhaf_closed(2), (big(4), big(4)));
    }

    #[test]
    fn ssi_dummy_and_symmetry() {
        let m = GameDef::Weighted(AmalgamatedMatrix::single(2, &[1, 1, 0]).unwrap());
        let v = ssi_enum(&m, cap()).unwrap();
        assert_eq!(*v.value(player(1)), BigRational::new(1.into(), 2.into()));
        assert_eq!(*v.value(player(2)), BigRational::new(1.into(), 2.into()));
        assert!(v.value(player(3)).is_zero());

        let v2 = ssi_enum(&legco(2), cap()).unwrap();
        let fifth = BigRational::new(1.into(), 5.into());
        assert!(v2.values().iter().all(|x| *x == fifth));
    }

    #[test]
    fn ssi_vectors_sum_to_one() {
        for n in 1..=3 {
            assert_eq!(ssi_enum(&legco(n), cap()).unwrap().sum(), BigRational::one());
        }
    }

    #[test]
    fn ordinary_members_share_one_index_value() {
        let v = ssi_enum(&legco(3), cap()).unwrap();
        let first = v.value(player(1)).clone();
        assert!((2..=6).all(|j| *v.value(player(j)) == first));
        assert_ne!(*v.value(player(7)), first);
    }

    #[test]
    fn ssi_closed_form_fixed_point() {
        assert_eq!(ssi_gov_closed(2), BigRational::new(1.into(), 5.into()));
        assert!(ssi_gov_closed(1).is_zero());
    }

    #[test]
    fn ssi_closed_matches_enumeration() {
        for n in 2..=4u64 {
            let closed = ssi_gov_closed(n);
            let by_enum = ssi_enum(&legco(n as u32), cap()).unwrap();
            assert_eq!(*by_enum.value(player(2 * n as u32 + 1)), closed, "n={n}");
        }
    }

    #[test]
    fn government_powerless_in_reform_scenarios() {
        for scenario in [Scenario::Unicameral, Scenario::BicameralOnly] {
            let g = legco_game(4, scenario).unwrap();
            let b = banzhaf_enum(&g, cap()).unwrap();
            assert!(b.count(player(9)).is_zero(), "{scenario:?}");
            let v = ssi_enum(&g, cap()).unwrap();
            assert!(v.value(player(9)).is_zero(), "{scenario:?}");
        }
    }

    #[test]
    fn normalized_banzhaf_sums_to_one() {
        let b = banzhaf_enum(&legco(3), cap()).unwrap();
        assert_eq!(b.normalized().sum(), BigRational::one());
    }

    #[test]
    fn asymptotic_constant() {
        // The odd-size curve scaled by 1/sqrt(n) approaches
        // sqrt(pi/2)(sqrt(2)-1) = 0.51898...
        let n = 2_000_001u64;
        let scaled = bi_ratio_asymptotic(n) / (n as f64).sqrt();
        assert!((scaled - 0.51898).abs() < 1e-3, "{scaled}");
        assert!(bi_ratio_asymptotic(1).is_finite());
    }

    #[test]
    fn full_size_ratio_tracks_asymptotic_form() {
        let row = SweepRow::compute(35);
        let exact = rational_to_f64(&row.bi_ratio);
        assert!((exact - row.bi_ratio_asymptotic).abs() / exact < 0.02);
    }

    #[test]
    fn enumeration_respects_cap() {
        let g = legco_game(14, Scenario::StatusQuo).unwrap();
        assert!(matches!(
            banzhaf_enum(&g, cap()),
            Err(crate::Error::CapacityExceeded { players: 29, cap: 26 })
        ));
    }

    #[test]
    fn rational_to_f64_handles_huge_operands() {
        let (ord, gov) = banzhaf_closed(200);
        let ratio = BigRational::new(BigInt::from(gov), BigInt::from(ord));
        let v = rational_to_f64(&ratio);
        assert!(v.is_finite() && v > 0.0);
        // Cross-check against the asymptotic form, loosely.
        assert!((v - bi_ratio_asymptotic(200)).abs() / v < 0.1);

        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(rational_to_f64(&half), 0.5);
        assert_eq!(rational_to_f64(&-half.clone()), -0.5);
    }

    #[test]
    fn sweep_row_count_and_order() {
        let rows = sweep(1, 10, 1).unwrap();
        assert_eq!(rows.len(), 10);
        assert!(rows.windows(2).all(|w| w[0].n < w[1].n));
        assert!(sweep(5, 4, 1).is_err());
        assert!(sweep(0, 4, 1).is_err());
        assert!(sweep(1, 4, 0).is_err());
    }

    #[test]
    fn sweep_ratio_consistency() {
        // ssi_ratio = ssi_gov / ssi_ord exactly.
        for row in sweep(2, 8, 3).unwrap() {
            assert_eq!(row.ssi_ratio, &row.ssi_gov / &row.ssi_ord, "n={}", row.n);
        }
    }

    #[test]
    fn probe_rejects_empty_ranges() {
        assert!(conjecture_probe(30, 20).is_err());
    }
}
