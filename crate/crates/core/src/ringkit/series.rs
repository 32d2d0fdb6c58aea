use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Power series over the rationals truncated after `t^order`.
///
/// The order is fixed per value; combining two series of different orders is
/// an error rather than an implicit retruncation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Builds a series from `coeffs[0..=order]`. Missing trailing
    /// coefficients are zero-filled, extra ones are rejected.
    pub fn new(order: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() > order + 1 {
            return Err(Error::Shape(format!(
                "{} coefficients for a series of order {order}",
                coeffs.len()
            )));
        }
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, Rational::zero());
        Ok(Self { coeffs })
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Result<Self> {
        Self::new(order, coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; zero past the truncation order.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Multiplicative inverse, solved term by term.
    pub fn inv(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::SingularSeries);
        }
        let inv0 = a0.recip();
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[k - i];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// Substitutes `t -> c*t`.
    pub fn rescale(&self, c: &Rational) -> Self {
        let mut pow = Rational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &pow);
            pow *= c;
        }
        Self { coeffs }
    }

    /// All coefficients as integers, or `None` if one is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = format_rational(&c.abs());
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}t")?,
                _ => write!(f, "{mag}t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

/// `(1 - j t)^e` truncated at `order`, via the generalized binomial series so
/// that negative exponents work.
pub fn binom_power(j: u64, e: i64, order: usize) -> TruncSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let neg_j = -BigInt::from(j);
    // C(e, k) * (-j)^k, updated incrementally.
    let mut term = BigInt::one();
    coeffs.push(Rational::from_integer(term.clone()));
    for k in 1..=order {
        term = term * (BigInt::from(e) - BigInt::from(k as i64 - 1)) * &neg_j;
        term /= BigInt::from(k as i64);
        coeffs.push(Rational::from_integer(term.clone()));
    }
    TruncSeries { coeffs }
}
