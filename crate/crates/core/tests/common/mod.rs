//! Independent oracles and random generators shared by the integration
//! tests. Nothing here calls the routines it is used to check.

#![allow(dead_code)]

use hodgebgg::bggcore::ExteriorModule;
use hodgebgg::chern::{bott_dimension, HodgeProfile};
use hodgebgg::examples::{koszul_module, product_module};
use hodgebgg::linforms::LinFormMatrix;
use hodgebgg::ringkit::{rat, Rational, TruncSeries};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

/// `C(n, k)` for integers `n >= 0`, zero outside `0..=n`.
pub fn choose(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `chi(O_{P^n}(k)) = C(n + k, n)` as a polynomial in `k`.
pub fn chi_line_bundle(n: i64, k: i64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=n {
        num *= BigInt::from(k + i);
        den *= BigInt::from(i);
    }
    num / den
}

/// `chi(Omega^p(k))` on `P^n` from the Euler sequence:
/// `chi(Omega^p(k)) = C(n+1, p) chi(O(k-p)) - chi(Omega^{p-1}(k))`.
pub fn chi_omega(n: i64, p: i64, k: i64) -> BigInt {
    if p == 0 {
        return chi_line_bundle(n, k);
    }
    choose(n + 1, p) * chi_line_bundle(n, k - p) - chi_omega(n, p - 1, k)
}

/// Rank by plain Gaussian elimination over the rationals.
pub fn gauss_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let p = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &p;
                for c in col..ncols {
                    let sub = &f * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn subsets(q: usize, j: usize) -> Vec<u32> {
    (0u32..(1 << q)).filter(|s| s.count_ones() as usize == j).collect()
}

fn monomials(q: usize, p: usize) -> Vec<Vec<u32>> {
    if q == 0 {
        return if p == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=p as u32).rev() {
        for mut rest in monomials(q - 1, p - first as usize) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Matrix of the Koszul differential `S_p (x) Lambda^j -> S_{p+1} (x)
/// Lambda^{j+1}`, `m (x) e_T -> sum_i x_i m (x) e_i ^ e_T`, built from
/// bitmask subsets.
fn koszul_differential(q: usize, j: usize, p: usize) -> Vec<Vec<Rational>> {
    let src_m = monomials(q, p);
    let dst_m = monomials(q, p + 1);
    let src_s = subsets(q, j);
    let dst_s = subsets(q, j + 1);
    let ncols = src_m.len() * src_s.len();
    let mut rows = vec![vec![Rational::zero(); ncols]; dst_m.len() * dst_s.len()];
    for (a, mono) in src_m.iter().enumerate() {
        for (b, &set) in src_s.iter().enumerate() {
            for i in 0..q {
                if set & (1 << i) != 0 {
                    continue;
                }
                let mut m2 = mono.clone();
                m2[i] += 1;
                let r_m = dst_m.iter().position(|x| *x == m2).unwrap();
                let r_s = dst_s.iter().position(|&x| x == set | (1 << i)).unwrap();
                let below = (set & ((1 << i) - 1)).count_ones();
                let sign = if below % 2 == 0 { 1 } else { -1 };
                rows[r_m * dst_s.len() + r_s][a * src_s.len() + b] += rat(sign);
            }
        }
    }
    rows
}

/// Homology of the Koszul complex `S (x) Lambda^. V`, `dim V = q`, at spot
/// `j` in internal degree `p`.
pub fn koszul_homology(q: usize, j: usize, p: usize) -> usize {
    let dim = monomials(q, p).len() * subsets(q, j).len();
    let out = if j < q { gauss_rank(&koszul_differential(q, j, p)) } else { 0 };
    let inc = if j > 0 && p > 0 {
        gauss_rank(&koszul_differential(q, j - 1, p - 1))
    } else {
        0
    };
    dim - out - inc
}

/// `[t^k] (1+t)^q / (1+2t) = sum_{j<=k} C(q, j) (-2)^{k-j}`.
pub fn surface_segre(q: i64, k: i64) -> BigInt {
    (0..=k)
        .map(|j| choose(q, j) * BigInt::from(-2).pow((k - j) as u32))
        .sum()
}

/// Highest `l <= q - 1` with a nonzero coefficient in `1/(1-t^2)^q`, whose
/// coefficients are `C(q+m-1, m)` at `t^{2m}`.
pub fn surface_ell(q: i64) -> i64 {
    (0..q)
        .rev()
        .find(|l| l % 2 == 0 && choose(q + l / 2 - 1, l / 2).is_positive())
        .unwrap()
}

pub fn bott_h(n: usize, p: usize, k: i64, i: usize) -> BigInt {
    bott_dimension(n, p, k).unwrap()[i].clone()
}

// Strategies

pub fn series(order: usize) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(-6i64..=6, order + 1)
        .prop_map(move |c| TruncSeries::from_ints(order, &c).unwrap())
}

pub fn unit_series(order: usize) -> impl Strategy<Value = TruncSeries> {
    (prop_oneof![-3i64..=-1, 1i64..=3], prop::collection::vec(-6i64..=6, order))
        .prop_map(move |(c0, rest)| {
            let mut c = vec![c0];
            c.extend(rest);
            TruncSeries::from_ints(order, &c).unwrap()
        })
}

pub fn int_matrix(max: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
    })
}

/// Low-rank integer matrices: a product of two thin random factors.
pub fn low_rank_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max, 1..=3usize).prop_flat_map(|(r, c, k)| {
        (
            prop::collection::vec(prop::collection::vec(-4i64..=4, k), r),
            prop::collection::vec(prop::collection::vec(-4i64..=4, c), k),
        )
            .prop_map(move |(a, b)| {
                (0..r)
                    .map(|i| (0..c).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect())
                    .collect()
            })
    })
}

pub fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

pub fn tensor(max: usize) -> impl Strategy<Value = LinFormMatrix> {
    (1..=max, 1..=max, 1..=max).prop_flat_map(|(a, b, q)| {
        prop::collection::vec(-3i64..=3, a * b * q).prop_map(move |e| {
            LinFormMatrix::new(a, b, q, e.into_iter().map(rat).collect()).unwrap()
        })
    })
}

pub fn nonzero_point(q: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-5i64..=5, q)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
        .prop_map(|v| v.into_iter().map(rat).collect())
}

/// Valid modules: Koszul, product and trivial modules and their sums.
pub fn valid_module() -> impl Strategy<Value = ExteriorModule> {
    let base = prop_oneof![
        (1usize..=3).prop_map(koszul_module),
        (1usize..=2, 1usize..=2).prop_map(|(m, k)| product_module(m, k)),
        (1usize..=3, prop::collection::vec(0usize..=2, 2..=4)).prop_map(|(q, dims)| {
            ExteriorModule::trivial(q, dims).unwrap()
        }),
    ];
    (base.clone(), base, any::<bool>()).prop_map(|(a, b, sum)| {
        if sum && a.q() == b.q() {
            a.direct_sum(&b).unwrap()
        } else {
            a
        }
    })
}

/// Hodge profiles with `d <= 6` and entries `<= 30`.
pub fn profile() -> impl Strategy<Value = HodgeProfile> {
    profile_with(30)
}

/// Hodge profiles with `d <= 6`, `q <= max_q` and entries `<= 30`.
pub fn profile_with(max_q: u64) -> impl Strategy<Value = HodgeProfile> {
    (1usize..=6).prop_flat_map(move |d| {
        (1u64..=max_q, prop::collection::vec(0u64..=30, d - 1)).prop_map(move |(q, rest)| {
            let mut h0 = vec![1, q];
            h0.extend(rest);
            h0.truncate(d + 1);
            HodgeProfile::new(d, h0).unwrap()
        })
    })
}

pub mod props;
