//! Exact arithmetic substrate: big rationals, truncated power series and
//! dense rational matrices.

mod matrix;
pub mod poly;
mod rational;
mod series;

use num_bigint::BigInt;
use num_traits::One;

pub use matrix::{det_int, MatrixQ};
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use series::{binom_power, TruncSeries};

/// `m (m-1) ... (m-k+1) / k!` as a polynomial in `m`, so any integer `m` is
/// allowed. Zero for `0 <= m < k`.
pub fn binomial(m: i64, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(m) - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::binomial;
    use num_bigint::BigInt;

    #[test]
    fn binomial_polynomial_extension() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 3), BigInt::from(0));
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-2, 2), BigInt::from(3));
        assert_eq!(binomial(7, 0), BigInt::from(1));
    }
}
