//! Exact rational feasibility on systems `A·x ≤ b`, `x ≥ 0`.
//!
//! A dense Phase-I simplex over `BigRational` with Bland's pivot rule:
//! deterministic, cycle-free and free of floating point. The systems here
//! are tiny (a handful of variables, tens of rows), so a dense tableau is
//! the right tool. Infeasibility comes with a rejection witness `y ≥ 0`
//! with `yᵀA ≥ 0` and `yᵀb < 0`, read off the final reduced costs and
//! re-verified by exact substitution before it is reported.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A feasibility problem: find `x ≥ 0` with `a·x ≤ b` for every row.
#[derive(Clone, Debug)]
pub struct FeasibilityProblem {
    n_vars: usize,
    rows: Vec<(Vec<BigRational>, BigRational)>,
}

/// Outcome of a feasibility solve.
#[derive(Clone, Debug)]
pub enum Feasibility {
    /// A point satisfying every constraint (re-verified exactly).
    Feasible(Vec<BigRational>),
    /// No point exists; the witness multipliers prove it when present.
    Infeasible(Option<Vec<BigRational>>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

impl FeasibilityProblem {
    pub fn new(n_vars: usize) -> FeasibilityProblem {
        FeasibilityProblem { n_vars, rows: Vec::new() }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn rows(&self) -> &[(Vec<BigRational>, BigRational)] {
        &self.rows
    }

    /// Adds `coeffs · x ≤ rhs`.
    pub fn add_le(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.n_vars);
        self.rows.push((coeffs, rhs));
    }

    /// Adds `coeffs · x ≥ rhs` (stored as the negated `≤` row).
    pub fn add_ge(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) {
        self.add_le(coeffs.into_iter().map(|c| -c).collect(), -rhs);
    }

    /// Exact substitution check of a candidate point.
    pub fn check_point(&self, x: &[BigRational]) -> bool {
        x.len() == self.n_vars
            && x.iter().all(|v| !v.is_negative())
            && self.rows.iter().all(|(a, b)| {
                let lhs: BigRational = a.iter().zip(x).map(|(c, v)| c * v).sum();
                lhs <= *b
            })
    }

    /// Exact check of a rejection witness: `y ≥ 0`, `yᵀA ≥ 0`, `yᵀb < 0`.
    pub fn check_rejection(&self, y: &[BigRational]) -> bool {
        if y.len() != self.rows.len() || y.iter().any(Signed::is_negative) {
            return false;
        }
        for var in 0..self.n_vars {
            let col: BigRational = self
                .rows
                .iter()
                .zip(y)
                .map(|((a, _), yi)| &a[var] * yi)
                .sum();
            if col.is_negative() {
                return false;
            }
        }
        let rhs: BigRational = self.rows.iter().zip(y).map(|((_, b), yi)| b * yi).sum();
        rhs.is_negative()
    }

    /// Phase-I simplex feasibility solve.
    pub fn solve(&self) -> Feasibility {
        let m = self.rows.len();
        let n = self.n_vars;
        if m == 0 {
            return Feasibility::Feasible(vec![BigRational::zero(); n]);
        }

        // Tableau columns: n structural vars, m slacks, up to m artificials,
        // then the right-hand side. Rows with negative rhs are negated so
        // every starting rhs is nonnegative; those rows get an artificial
        // basic variable, the rest start on their slack.
        let flipped: Vec<bool> = self.rows.iter().map(|(_, b)| b.is_negative()).collect();
        let artificial_rows: Vec<usize> =
            (0..m).filter(|&i| flipped[i]).collect();
        let n_art = artificial_rows.len();
        let width = n + m + n_art + 1;
        let mut tableau: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); width]; m];
        let mut basis: Vec<usize> = vec![0; m];

        for (i, (a, b)) in self.rows.iter().enumerate() {
            let sign = if flipped[i] { -BigRational::one() } else { BigRational::one() };
            for (j, c) in a.iter().enumerate() {
                tableau[i][j] = c * &sign;
            }
            tableau[i][n + i] = sign.clone();
            tableau[i][width - 1] = b * &sign;
        }
        for (k, &i) in artificial_rows.iter().enumerate() {
            tableau[i][n + m + k] = BigRational::one();
            basis[i] = n + m + k;
        }
        for i in 0..m {
            if !flipped[i] {
                basis[i] = n + i;
            }
        }

        // Objective: minimize the sum of artificials. Reduced costs of the
        // starting basis: z-row = -(sum of artificial rows) on non-basic
        // columns, objective value = sum of their rhs.
        let mut obj = vec![BigRational::zero(); width];
        for &i in &artificial_rows {
            for j in 0..width {
                let delta = tableau[i][j].clone();
                obj[j] -= delta;
            }
        }
        for (k, _) in artificial_rows.iter().enumerate() {
            obj[n + m + k] = BigRational::zero();
        }

        // Bland: entering = lowest-index column with negative reduced cost.
        while let Some(entering) = (0..width - 1).find(|&j| obj[j].is_negative()) {
            // Leaving: minimum ratio; ties broken by lowest basic index.
            let mut leaving: Option<(usize, BigRational)> = None;
            for i in 0..m {
                if tableau[i][entering].is_positive() {
                    let ratio = &tableau[i][width - 1] / &tableau[i][entering];
                    let better = match &leaving {
                        None => true,
                        Some((row, best)) => {
                            ratio < *best || (ratio == *best && basis[i] < basis[*row])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((pivot_row, _)) = leaving else {
                // The Phase-I objective is bounded below by zero, so an
                // unbounded column cannot occur; guard anyway.
                return Feasibility::Infeasible(None);
            };

            let pivot = tableau[pivot_row][entering].clone();
            for v in &mut tableau[pivot_row] {
                *v /= &pivot;
            }
            let pivot_row_values = tableau[pivot_row].clone();
            for (i, row) in tableau.iter_mut().enumerate() {
                if i != pivot_row && !row[entering].is_zero() {
                    let factor = row[entering].clone();
                    for (target, pivot_val) in row.iter_mut().zip(&pivot_row_values) {
                        *target -= &factor * pivot_val;
                    }
                }
            }
            if !obj[entering].is_zero() {
                let factor = obj[entering].clone();
                for (target, pivot_val) in obj.iter_mut().zip(&tableau[pivot_row]) {
                    *target -= &factor * pivot_val;
                }
            }
            basis[pivot_row] = entering;
        }

        // Phase-I optimum: -obj[rhs] is the residual artificial mass.
        let residual = -obj[width - 1].clone();
        if residual.is_zero() {
            let mut x = vec![BigRational::zero(); n];
            for i in 0..m {
                if basis[i] < n {
                    x[basis[i]] = tableau[i][width - 1].clone();
                }
            }
            debug_assert!(self.check_point(&x));
            return Feasibility::Feasible(x);
        }

        // The reduced costs on the slack columns are the rejection
        // multipliers for the original `≤` rows (for rows that were
        // negated, the slack column was negated with them, which is
        // exactly the sign the witness needs).
        let y: Vec<BigRational> = (0..m).map(|i| obj[n + i].clone()).collect();
        if self.check_rejection(&y) {
            Feasibility::Infeasible(Some(y))
        } else {
            debug_assert!(false, "rejection witness failed exact verification");
            Feasibility::Infeasible(None)
        }
    }
}
