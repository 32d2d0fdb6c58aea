//! Matrices of linear forms stored as 3-tensors.
//!
//! An `a x b x q` tensor `T` stands for the `a x b` matrix whose `(r, c)`
//! entry is the linear form `sum_i T[r][c][i] x_i` on `C^q`. Flipping swaps
//! the roles of the column index and the variable index, producing an
//! `a x q` matrix of linear forms in `b` variables; both cut out the same
//! bilinear equations on `C^b x C^q`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ringkit::poly::{generic_rank as symbolic_rank, Poly};
use crate::ringkit::{rat, MatrixQ, Rational};

/// Seed used for rank sampling unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 1729;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinFormMatrix {
    a: usize,
    b: usize,
    q: usize,
    entries: Vec<Rational>,
    /// Set after an odd number of flips: the columns then index the `C^q`
    /// factor and the variables the `C^b` factor.
    flipped: bool,
}

impl LinFormMatrix {
    /// `entries` in `(r, c, i)` row-major order.
    pub fn new(a: usize, b: usize, q: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != a * b * q {
            return Err(Error::Shape(format!(
                "{} entries for an {a}x{b}x{q} tensor",
                entries.len()
            )));
        }
        Ok(Self {
            a,
            b,
            q,
            entries,
            flipped: false,
        })
    }

    pub fn zeros(a: usize, b: usize, q: usize) -> Self {
        Self {
            a,
            b,
            q,
            entries: vec![Rational::zero(); a * b * q],
            flipped: false,
        }
    }

    pub fn from_fn(a: usize, b: usize, q: usize, f: impl Fn(usize, usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(a * b * q);
        for r in 0..a {
            for c in 0..b {
                for i in 0..q {
                    entries.push(f(r, c, i));
                }
            }
        }
        Self {
            a,
            b,
            q,
            entries,
            flipped: false,
        }
    }

    pub(crate) fn with_flipped(mut self, flipped: bool) -> Self {
        self.flipped = flipped;
        self
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.a, self.b, self.q)
    }

    pub fn is_flipped(&self) -> bool {
        self.flipped
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize, i: usize) -> &Rational {
        &self.entries[(r * self.b + c) * self.q + i]
    }

    /// Coefficients of the linear form at `(r, c)`.
    pub fn form(&self, r: usize, c: usize) -> &[Rational] {
        let start = (r * self.b + c) * self.q;
        &self.entries[start..start + self.q]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// The scalar `a x b` matrix obtained by evaluating every form at `v`.
    pub fn eval_at(&self, v: &[Rational]) -> Result<MatrixQ> {
        if v.len() != self.q {
            return Err(Error::Shape(format!(
                "point of length {} for forms in {} variables",
                v.len(),
                self.q
            )));
        }
        let mut m = MatrixQ::zeros(self.a, self.b);
        for r in 0..self.a {
            for c in 0..self.b {
                let val: Rational = self
                    .form(r, c)
                    .iter()
                    .zip(v)
                    .filter(|(t, x)| !t.is_zero() && !x.is_zero())
                    .map(|(t, x)| t * x)
                    .sum();
                m.set(r, c, val);
            }
        }
        Ok(m)
    }

    /// `T'[r][i][c] = T[r][c][i]`. An involution.
    pub fn flip(&self) -> Self {
        let mut out = Self::from_fn(self.a, self.q, self.b, |r, i, c| self.get(r, c, i).clone());
        out.flipped = !self.flipped;
        out
    }

    /// The `a x b` matrix with polynomial entries.
    pub fn to_polys(&self) -> Vec<Vec<Poly>> {
        (0..self.a)
            .map(|r| (0..self.b).map(|c| Poly::linear(self.form(r, c))).collect())
            .collect()
    }
}

/// One bilinear form `sum coeff * y_c * x_i` on `C^b x C^q`, with terms sorted
/// by `(c, i)` and zero coefficients dropped.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BilinearForm {
    pub terms: Vec<(usize, usize, Rational)>,
}

/// Row `r` of `u` gives the form `sum_{c,i} T[r][c][i] y_c x_i`. The
/// coordinates are always reported as (`C^b` index, `C^q` index), so a
/// flipped tensor reports its terms with the indices swapped back.
pub fn bilinear_equations(u: &LinFormMatrix) -> Vec<BilinearForm> {
    (0..u.a)
        .map(|r| {
            let mut terms = Vec::new();
            for c in 0..u.b {
                for i in 0..u.q {
                    let t = u.get(r, c, i);
                    if t.is_zero() {
                        continue;
                    }
                    let (y, x) = if u.flipped { (i, c) } else { (c, i) };
                    terms.push((y, x, t.clone()));
                }
            }
            terms.sort();
            BilinearForm { terms }
        })
        .collect()
}

/// Deterministic nonzero integer points with coordinates in `-5..=5`.
pub fn sample_points(q: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vec<i64> = (0..q).map(|_| rng.gen_range(-5..=5)).collect();
        if v.iter().any(|&x| x != 0) {
            out.push(v.into_iter().map(rat).collect());
        }
    }
    out
}

/// Ranks of `u` evaluated at each point.
pub fn rank_profile(u: &LinFormMatrix, points: &[Vec<Rational>]) -> Result<Vec<usize>> {
    if points.is_empty() {
        return Err(Error::EmptySample);
    }
    points
        .iter()
        .map(|v| {
            if v.iter().all(Zero::is_zero) {
                return Err(Error::Invalid("sample point must be nonzero".into()));
            }
            Ok(u.eval_at(v)?.rank())
        })
        .collect()
}

/// Rank over the field of rational functions in the `q` variables.
///
/// A random evaluation reaching `min(a, b)` settles it; otherwise the
/// symbolic elimination decides.
pub fn generic_rank(u: &LinFormMatrix, seed: u64) -> usize {
    let full = u.a.min(u.b);
    if full == 0 || u.q == 0 {
        return 0;
    }
    for v in sample_points(u.q, 3, seed) {
        if u.eval_at(&v).expect("length q").rank() == full {
            return full;
        }
    }
    symbolic_rank(u.to_polys())
}

/// Sampled rank evidence for one matrix of linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub seed: u64,
    pub generic_rank: usize,
    pub sampled: Vec<usize>,
}

impl RankReport {
    /// Every sampled rank equals the generic rank. This is sampled evidence
    /// only, never a proof of constant rank.
    pub fn constant(&self) -> bool {
        self.sampled.iter().all(|&r| r == self.generic_rank)
    }

    pub fn verdict(&self) -> &'static str {
        if self.constant() {
            "no rank drop detected (sampled)"
        } else {
            "rank drop detected"
        }
    }
}

pub fn rank_report(u: &LinFormMatrix, samples: usize, seed: u64) -> Result<RankReport> {
    let (_, _, q) = u.shape();
    let pts = sample_points(q, samples, seed);
    Ok(RankReport {
        seed,
        generic_rank: generic_rank(u, seed),
        sampled: rank_profile(u, &pts)?,
    })
}
