//! Exact big-integer combinatorics shared by the power-index and
//! profile-counting code.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Binomial coefficient C(n, k) as an exact big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut result = BigUint::one();
    for i in 0..k {
        result = result * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    result
}

/// Factorials 0! .. n! in one pass.
pub fn factorials(n: u64) -> Vec<BigUint> {
    let mut table = Vec::with_capacity(n as usize + 1);
    table.push(BigUint::one());
    for i in 1..=n {
        let next = table.last().unwrap() * BigUint::from(i);
        table.push(next);
    }
    table
}

/// 2^k as a big integer.
pub fn pow2(k: u64) -> BigUint {
    BigUint::one() << k
}

/// Divides `value` by `divisor`, panicking if the division is not exact.
///
/// The closed-form swing counts contain terms like C(2n,n)/2 that are
/// integers for parity reasons; asserting exactness here catches
/// transcription mistakes instead of silently truncating them.
pub fn exact_div(value: BigUint, divisor: u64) -> BigUint {
    let divisor = BigUint::from(divisor);
    let (q, r) = num_integer::Integer::div_rem(&value, &divisor);
    assert!(r.is_zero(), "non-exact division by {divisor}");
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(4, 7), BigUint::zero());
        assert_eq!(binomial(70, 35).to_string(), "112186277816662845432");
    }

    #[test]
    fn binomial_symmetry_row_sum() {
        // sum_k C(10,k) = 2^10
        let total: BigUint = (0..=10).map(|k| binomial(10, k)).sum();
        assert_eq!(total, pow2(10));
    }

    #[test]
    fn factorial_table() {
        let f = factorials(6);
        assert_eq!(f[0], BigUint::one());
        assert_eq!(f[6], BigUint::from(720u32));
    }

    #[test]
    #[should_panic(expected = "non-exact")]
    fn exact_div_rejects_remainders() {
        exact_div(BigUint::from(7u32), 2);
    }
}
