use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;

use super::rational::Rational;

/// Sparse multivariate polynomial over the rationals. Exponent vectors are
/// compared lexicographically, so the last map entry is the leading term.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// `self / other` when the division is exact, otherwise `None`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        let (lead_e, lead_c) = other.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c / lead_c;
            let mut mono = Self::zero(self.nvars);
            mono.add_term(qe.clone(), qc.clone());
            rem = rem.sub(&mono.mul(other));
            quot.add_term(qe, qc);
        }
        Some(quot)
    }
}

/// Rank over the field of rational functions, by fraction-free elimination
/// with polynomial entries.
pub fn generic_rank(mut m: Vec<Vec<Poly>>) -> usize {
    let rows = m.len();
    let Some(cols) = m.first().map(Vec::len) else {
        return 0;
    };
    let nvars = m[0].first().map_or(0, |p| p.nvars);
    let mut prev = Poly::constant(nvars, Rational::from_integer(1.into()));
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][c].clone();
        for i in rank + 1..rows {
            let lead = std::mem::take(&mut m[i][c]);
            for j in c + 1..cols {
                let v = piv.mul(&m[i][j]).sub(&lead.mul(&m[rank][j]));
                m[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = piv;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
