//! Hodge profiles, the gamma series and the Chern/Schur/Segre numbers derived
//! from it, the Hilbert polynomial of the BGG sheaf, and Bott's formula.
//!
//! Inputs are the numbers `h^{0,j} = h^j(X, O_X)`; the `h^{d,j}` used by the
//! gamma series are read off through Serre duality as `h0[d - j]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ringkit::{binom_power, binomial, det_int, rat, Rational, TruncSeries};

/// Hodge numbers `h^{0,j}` of an irregular compact Kähler manifold together
/// with caller-asserted hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeProfile {
    #[serde(rename = "dimension")]
    d: usize,
    h0: Vec<u64>,
    /// The manifold carries no irregular fibration.
    #[serde(default)]
    pub no_irregular_fibrations: bool,
    /// The origin is an isolated point of every `V^i(omega_X)`, `i > 0`.
    #[serde(default)]
    pub isolated_origin: bool,
}

impl HodgeProfile {
    pub fn new(d: usize, h0: Vec<u64>) -> Result<Self> {
        let p = Self {
            d,
            h0,
            no_irregular_fibrations: false,
            isolated_origin: false,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_flags(mut self, no_irregular_fibrations: bool, isolated_origin: bool) -> Self {
        self.no_irregular_fibrations = no_irregular_fibrations;
        self.isolated_origin = isolated_origin;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidProfile(m));
        if self.d == 0 {
            return bad("dimension must be positive".into());
        }
        if self.h0.len() != self.d + 1 {
            return bad(format!(
                "h0 has {} entries, expected dimension + 1 = {}",
                self.h0.len(),
                self.d + 1
            ));
        }
        if self.h0[0] != 1 {
            return bad(format!("h0[0] must be 1, got {}", self.h0[0]));
        }
        if self.h0[1] == 0 {
            return bad("irregularity q = h0[1] must be at least 1".into());
        }
        if let Some(x) = self.h0.iter().find(|&&x| x > i64::MAX as u64) {
            return bad(format!("entry {x} too large"));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn h0(&self) -> &[u64] {
        &self.h0
    }

    /// Irregularity `q = h^{0,1}`.
    pub fn q(&self) -> usize {
        self.h0[1] as usize
    }

    /// Geometric genus `p_g = h^{0,d}`.
    pub fn p_g(&self) -> u64 {
        self.h0[self.d]
    }

    /// `h^{d,j}`, by Serre duality equal to `h^{0,d-j}`.
    pub fn h_top(&self, j: usize) -> u64 {
        self.h0[self.d - j]
    }
}

impl fmt::Display for HodgeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h: Vec<String> = self.h0.iter().map(u64::to_string).collect();
        write!(f, "d={} h0=({})", self.d, h.join(","))
    }
}

/// `chi(omega_X) = sum_i (-1)^i h^{d,i}`.
pub fn euler_char(h: &HodgeProfile) -> i128 {
    (0..=h.d)
        .map(|i| {
            let v = h.h_top(i) as i128;
            if i % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .sum()
}

/// Gamma coefficients `gamma_0 = 1, ..., gamma_{q-1}` and the rank
/// `chi(omega_X)` of the BGG sheaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    gamma: Vec<BigInt>,
    rank: i128,
}

impl ChernData {
    /// Direct construction, mainly for tests; `gamma[0]` must be 1.
    pub fn new(gamma: Vec<BigInt>, rank: i128) -> Result<Self> {
        if gamma.first() != Some(&BigInt::one()) {
            return Err(Error::Invalid("gamma_0 must be 1".into()));
        }
        Ok(Self { gamma, rank })
    }

    pub fn gamma(&self) -> &[BigInt] {
        &self.gamma
    }

    pub fn rank(&self) -> i128 {
        self.rank
    }

    pub fn q(&self) -> usize {
        self.gamma.len()
    }

    /// `gamma_k`, zero outside `0..q`.
    pub fn gamma_at(&self, k: i64) -> BigInt {
        if k < 0 {
            return BigInt::zero();
        }
        self.gamma.get(k as usize).cloned().unwrap_or_default()
    }

    /// The gamma series truncated at `t^{q-1}`.
    pub fn series(&self) -> TruncSeries {
        TruncSeries::new(
            self.q() - 1,
            self.gamma.iter().cloned().map(Rational::from_integer).collect(),
        )
        .expect("length q")
    }
}

/// The product `prod_{j=1}^{d} (1 - j t)^{(-1)^j h^{d,j}}` truncated at
/// order `q - 1`.
pub fn gamma_power_series(h: &HodgeProfile) -> TruncSeries {
    let order = h.q() - 1;
    let mut acc = TruncSeries::one(order);
    for j in 1..=h.d {
        let e = h.h_top(j) as i64;
        let e = if j % 2 == 0 { e } else { -e };
        acc = acc
            .mul(&binom_power(j as u64, e, order))
            .expect("shared order");
    }
    acc
}

pub fn gamma_series(h: &HodgeProfile) -> ChernData {
    let gamma = gamma_power_series(h)
        .integer_coeffs()
        .expect("gamma coefficients are integers");
    debug_assert!(gamma[0].is_one());
    ChernData {
        gamma,
        rank: euler_char(h),
    }
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    /// The one-column partition `(1, ..., 1)` with `k` parts.
    pub fn column(k: usize) -> Self {
        Self { parts: vec![1; k] }
    }

    /// The one-row partition `(k)`.
    pub fn row(k: usize) -> Self {
        Self {
            parts: if k == 0 { vec![] } else { vec![k] },
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Self {
        let len = self.parts.first().copied().unwrap_or(0);
        Self {
            parts: (1..=len)
                .map(|i| self.parts.iter().filter(|&&p| p >= i).count())
                .collect(),
        }
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn of_weight(n: usize) -> Vec<Self> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All nonempty partitions of weight `1..=max_weight`.
    pub fn up_to_weight(max_weight: usize) -> Vec<Self> {
        (1..=max_weight).flat_map(Self::of_weight).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", p.join(","))
    }
}

/// Schur polynomial in the gamma classes, `det(gamma_{lam_i + j - i})`.
///
/// With this convention the one-column partition `(1^k)` gives the degree `k`
/// Segre class of the dual bundle, and the one-row partition `(k)` gives
/// `gamma_k`.
pub fn schur_number(c: &ChernData, lam: &Partition) -> Result<BigInt> {
    let max = c.q() - 1;
    if lam.weight() > max {
        return Err(Error::WeightTooLarge {
            weight: lam.weight(),
            max,
        });
    }
    let parts = lam.parts();
    let n = parts.len();
    let m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| c.gamma_at(parts[i] as i64 + j as i64 - i as i64))
                .collect()
        })
        .collect();
    Ok(det_int(&m))
}

/// `[t^k]` of `1 / gamma(-t)`: the Segre class of the dual of the BGG
/// sheaf.
pub fn segre_number(c: &ChernData, k: usize) -> Result<BigInt> {
    let max = c.q() - 1;
    if k > max {
        return Err(Error::IndexOutOfRange { index: k, max });
    }
    Ok(segre_series(c).coeff(k).to_integer())
}

/// `1 / gamma(-t)` truncated at order `q - 1`.
pub fn segre_series(c: &ChernData) -> TruncSeries {
    c.series()
        .rescale(&rat(-1))
        .inv()
        .expect("gamma_0 = 1 is invertible")
}

/// `chi(F(i))` for the BGG sheaf `F` on `P^{q-1}`, read off from its linear
/// resolution by `O(-k) (x) H^{d-k}(O_X)`.
pub fn hilbert_poly_f(h: &HodgeProfile, i: i64) -> BigInt {
    let n = h.q() - 1;
    let mut acc = BigInt::zero();
    for k in 0..=h.d {
        let term = BigInt::from(h.h0[h.d - k]) * binomial(n as i64 + i - k as i64, n);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `(h^0, ..., h^n)` of `Omega^p(k)` on `P^n` by Bott's formula.
pub fn bott_dimension(n: usize, p: usize, k: i64) -> Result<Vec<BigInt>> {
    if p > n {
        return Err(Error::IndexOutOfRange { index: p, max: n });
    }
    let mut out = vec![BigInt::zero(); n + 1];
    let (ni, pi) = (n as i64, p as i64);
    // h^0
    if k > pi {
        out[0] = binomial(k + ni - pi, k as usize) * binomial(k - 1, p);
    } else if k == 0 && p == 0 {
        out[0] = BigInt::one();
    }
    // h^n, dual to the h^0 case.
    if k < pi - ni {
        out[n] += binomial(-k + pi, (-k) as usize) * binomial(-k - 1, n - p);
    } else if k == 0 && p == n && n > 0 {
        out[n] = BigInt::one();
    }
    // middle cohomology
    if k == 0 && 0 < p && p < n {
        out[p] = BigInt::one();
    }
    debug_assert!(out.iter().all(|x| !x.is_negative()));
    Ok(out)
}
