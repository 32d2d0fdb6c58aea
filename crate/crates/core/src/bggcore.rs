//! Graded modules over the exterior algebra `E = Lambda V`, the linear
//! complex `L(P)` over `S = Sym(V^*)` attached to them, and exactness and
//! regularity by exact linear algebra on degree slices.
//!
//! Grading follows the Hodge convention: piece `P_j` carries `H^j` and sits
//! in module degree `d - j`; the basis vector `e_i` maps `P_j` to `P_{j+1}`.
//! The term `S (x) P_j` of `L(P)` is called spot `j`, and its degree `p`
//! part `S_p (x) P_j` is the slice at `(j, p)`. The differential
//! `s (x) v -> sum_i x_i s (x) e_i v` maps slice `(j, p)` to `(j+1, p+1)`.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::chern::{hilbert_poly_f, HodgeProfile};
use crate::error::{Error, Result};
use crate::linforms::LinFormMatrix;
use crate::ringkit::{binomial, MatrixQ, Rational};

/// A finite graded `E`-module given by its pieces and the action matrices
/// `actions[i][j] : P_j -> P_{j+1}` of the basis vectors `e_1..e_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorModule {
    q: usize,
    piece_dims: Vec<usize>,
    actions: Vec<Vec<MatrixQ>>,
}

impl ExteriorModule {
    /// Checks shapes only; see [`validate_module`] for the algebra axioms.
    pub fn new(q: usize, piece_dims: Vec<usize>, actions: Vec<Vec<MatrixQ>>) -> Result<Self> {
        if q == 0 {
            return Err(Error::Shape("dim V must be positive".into()));
        }
        if piece_dims.is_empty() {
            return Err(Error::Shape("module needs at least one piece".into()));
        }
        if actions.len() != q {
            return Err(Error::Shape(format!(
                "{} action lists for dim V = {q}",
                actions.len()
            )));
        }
        let d = piece_dims.len() - 1;
        for (i, per_piece) in actions.iter().enumerate() {
            if per_piece.len() != d {
                return Err(Error::Shape(format!(
                    "e_{} has {} matrices, expected {d}",
                    i + 1,
                    per_piece.len()
                )));
            }
            for (j, m) in per_piece.iter().enumerate() {
                if (m.rows(), m.cols()) != (piece_dims[j + 1], piece_dims[j]) {
                    return Err(Error::Shape(format!(
                        "e_{} on piece {j} is {}x{}, expected {}x{}",
                        i + 1,
                        m.rows(),
                        m.cols(),
                        piece_dims[j + 1],
                        piece_dims[j]
                    )));
                }
            }
        }
        Ok(Self {
            q,
            piece_dims,
            actions,
        })
    }

    /// The module with the given pieces and every action zero.
    pub fn trivial(q: usize, piece_dims: Vec<usize>) -> Result<Self> {
        let actions = (0..q)
            .map(|_| {
                piece_dims
                    .windows(2)
                    .map(|w| MatrixQ::zeros(w[1], w[0]))
                    .collect()
            })
            .collect();
        Self::new(q, piece_dims, actions)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Index of the last piece.
    pub fn top(&self) -> usize {
        self.piece_dims.len() - 1
    }

    pub fn piece_dims(&self) -> &[usize] {
        &self.piece_dims
    }

    pub fn actions(&self) -> &[Vec<MatrixQ>] {
        &self.actions
    }

    /// Matrix of `e_i` (0-based) on piece `j`.
    pub fn action(&self, i: usize, j: usize) -> &MatrixQ {
        &self.actions[i][j]
    }

    /// Block direct sum; the shorter module is padded with zero pieces.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.q != other.q {
            return Err(Error::Shape(format!(
                "cannot add modules over dim V = {} and {}",
                self.q, other.q
            )));
        }
        let len = self.piece_dims.len().max(other.piece_dims.len());
        let dim = |m: &Self, j: usize| m.piece_dims.get(j).copied().unwrap_or(0);
        let piece_dims: Vec<usize> = (0..len).map(|j| dim(self, j) + dim(other, j)).collect();
        let block = |i: usize, j: usize| {
            let mut out = MatrixQ::zeros(piece_dims[j + 1], piece_dims[j]);
            let (r0, c0) = (dim(self, j + 1), dim(self, j));
            if j < self.top() {
                let a = self.action(i, j);
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        out.set(r, c, a.get(r, c).clone());
                    }
                }
            }
            if j < other.top() {
                let b = other.action(i, j);
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        out.set(r0 + r, c0 + c, b.get(r, c).clone());
                    }
                }
            }
            out
        };
        let actions = (0..self.q)
            .map(|i| (0..len - 1).map(|j| block(i, j)).collect())
            .collect();
        Self::new(self.q, piece_dims, actions)
    }
}

/// Checks `e_i e_i = 0` and `e_i e_k + e_k e_i = 0` on every piece.
pub fn validate_module(m: &ExteriorModule) -> Result<()> {
    for j in 0..m.top().saturating_sub(1) {
        for i in 0..m.q {
            let sq = m.action(i, j + 1).mul(m.action(i, j))?;
            if !sq.is_zero() {
                return Err(Error::ModuleAxiom {
                    i: i + 1,
                    j: i + 1,
                    piece: j,
                    kind: "is nonzero",
                });
            }
            for k in i + 1..m.q {
                let ik = m.action(i, j + 1).mul(m.action(k, j))?;
                let ki = m.action(k, j + 1).mul(m.action(i, j))?;
                if !ik.add(&ki)?.is_zero() {
                    return Err(Error::ModuleAxiom {
                        i: i + 1,
                        j: k + 1,
                        piece: j,
                        kind: "does not anticommute with its swap",
                    });
                }
            }
        }
    }
    Ok(())
}

/// A complex of free `S`-modules `S^{a_0} -> ... -> S^{a_d}` whose
/// differentials are matrices of linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearComplex {
    q: usize,
    spots: Vec<usize>,
    diffs: Vec<LinFormMatrix>,
}

impl LinearComplex {
    pub fn new(q: usize, spots: Vec<usize>, diffs: Vec<LinFormMatrix>) -> Result<Self> {
        if spots.is_empty() || diffs.len() + 1 != spots.len() {
            return Err(Error::Shape(format!(
                "{} differentials for {} spots",
                diffs.len(),
                spots.len()
            )));
        }
        for (j, u) in diffs.iter().enumerate() {
            if u.shape() != (spots[j + 1], spots[j], q) {
                return Err(Error::Shape(format!(
                    "differential {j} has shape {:?}, expected {:?}",
                    u.shape(),
                    (spots[j + 1], spots[j], q)
                )));
            }
        }
        Ok(Self { q, spots, diffs })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Index of the last spot.
    pub fn top(&self) -> usize {
        self.spots.len() - 1
    }

    pub fn spots(&self) -> &[usize] {
        &self.spots
    }

    pub fn diffs(&self) -> &[LinFormMatrix] {
        &self.diffs
    }

    /// Every term has rank zero.
    pub fn is_empty(&self) -> bool {
        self.spots.iter().all(|&a| a == 0)
    }

    /// Expands `diff[j+1] . diff[j]` as a matrix of quadratic forms and
    /// checks every coefficient vanishes.
    pub fn composes_to_zero(&self) -> bool {
        self.diffs.windows(2).all(|w| {
            let (first, second) = (&w[0], &w[1]);
            let (b, a, _) = first.shape();
            let (c, _, _) = second.shape();
            for r in 0..c {
                for col in 0..a {
                    for i in 0..self.q {
                        for k in i..self.q {
                            let mut coeff = Rational::zero();
                            for mid in 0..b {
                                coeff += second.get(r, mid, k) * first.get(mid, col, i);
                                if k != i {
                                    coeff += second.get(r, mid, i) * first.get(mid, col, k);
                                }
                            }
                            if !coeff.is_zero() {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        })
    }

    /// Homology dimensions of the scalar complex obtained by evaluating the
    /// differentials at `v`.
    pub fn fiber_homology(&self, v: &[Rational]) -> Result<Vec<usize>> {
        let ranks: Vec<usize> = self
            .diffs
            .iter()
            .map(|u| u.eval_at(v).map(|m| m.rank()))
            .collect::<Result<_>>()?;
        Ok((0..self.spots.len())
            .map(|j| {
                let out = ranks.get(j).copied().unwrap_or(0);
                let inc = if j == 0 { 0 } else { ranks[j - 1] };
                self.spots[j] - out - inc
            })
            .collect())
    }
}

/// `L(P)`: the differential at spot `j` has `(r, c)` entry
/// `sum_i action(e_i)[r][c] x_i`.
pub fn bgg_complex(m: &ExteriorModule) -> Result<LinearComplex> {
    validate_module(m)?;
    let diffs = (0..m.top())
        .map(|j| {
            LinFormMatrix::from_fn(m.piece_dims[j + 1], m.piece_dims[j], m.q, |r, c, i| {
                m.action(i, j).get(r, c).clone()
            })
        })
        .collect();
    LinearComplex::new(m.q, m.piece_dims.clone(), diffs)
}

/// Exponent vectors of degree `p` in `q` variables, in lexicographically
/// decreasing order.
pub fn monomials(q: usize, p: usize) -> Vec<Vec<u32>> {
    fn go(q: usize, rest: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == q {
            cur.push(rest as u32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=rest).rev() {
            cur.push(e as u32);
            go(q, rest - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if q == 0 {
        if p == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(q, p, &mut Vec::new(), &mut out);
    out
}

/// `dim S_p = C(p + q - 1, q - 1)`.
pub fn sym_dim(q: usize, p: usize) -> usize {
    usize::try_from(binomial((p + q - 1) as i64, q - 1)).expect("fits")
}

struct MonomialTable {
    list: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialTable {
    fn new(q: usize, p: usize) -> Self {
        let list = monomials(q, p);
        let index = list
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        Self { list, index }
    }
}

/// The out-map of slice `(j, p)`: `S_p (x) P_j -> S_{p+1} (x) P_{j+1}`, with
/// basis index `monomial * a_j + piece basis`.
fn slice_out(c: &LinearComplex, j: usize, src: &MonomialTable, dst: &MonomialTable) -> MatrixQ {
    let a = c.spots[j];
    let cols = src.list.len() * a;
    if j == c.top() {
        return MatrixQ::zeros(0, cols);
    }
    let b = c.spots[j + 1];
    let u = &c.diffs[j];
    let mut m = MatrixQ::zeros(dst.list.len() * b, cols);
    for (mi, mono) in src.list.iter().enumerate() {
        for col in 0..a {
            for i in 0..c.q {
                let mut target = mono.clone();
                target[i] += 1;
                let ti = dst.index[&target];
                for r in 0..b {
                    let t = u.get(r, col, i);
                    if !t.is_zero() {
                        let row = ti * b + r;
                        let cur = m.get(row, mi * a + col) + t;
                        m.set(row, mi * a + col, cur);
                    }
                }
            }
        }
    }
    m
}

/// The matrices entering and leaving slice `(j, p)`. The homology there has
/// dimension `dim S_p * a_j - rank(out) - rank(in)`.
pub fn degree_slice(c: &LinearComplex, j: usize, p: usize) -> Result<(MatrixQ, MatrixQ)> {
    if j > c.top() {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: c.top(),
        });
    }
    let here = MonomialTable::new(c.q, p);
    let next = MonomialTable::new(c.q, p + 1);
    let out = slice_out(c, j, &here, &next);
    let inc = if j == 0 || p == 0 {
        MatrixQ::zeros(here.list.len() * c.spots[j], 0)
    } else {
        let prev = MonomialTable::new(c.q, p - 1);
        slice_out(c, j - 1, &prev, &here)
    };
    Ok((inc, out))
}

/// A `Z^q` grading on the basis vectors of every spot under which each
/// differential is homogeneous: a nonzero `x_i` coefficient from `(j, c)` to
/// `(j + 1, r)` forces `deg(j + 1, r) = deg(j, c) - e_i`. Connected basis
/// vectors share a component; components are graded independently.
struct FineGrading {
    comp: Vec<Vec<usize>>,
    deg: Vec<Vec<Vec<i32>>>,
}

fn fine_grading(c: &LinearComplex) -> Option<FineGrading> {
    let offsets: Vec<usize> = c
        .spots
        .iter()
        .scan(0, |acc, &a| {
            let o = *acc;
            *acc += a;
            Some(o)
        })
        .collect();
    let total: usize = c.spots.iter().sum();
    // (neighbor, variable, +1 if the neighbor is one spot higher)
    let mut adj: Vec<Vec<(usize, usize, i32)>> = vec![Vec::new(); total];
    for (j, u) in c.diffs.iter().enumerate() {
        let (b, a, q) = u.shape();
        for r in 0..b {
            for col in 0..a {
                for i in 0..q {
                    if !u.get(r, col, i).is_zero() {
                        let (s, t) = (offsets[j] + col, offsets[j + 1] + r);
                        adj[s].push((t, i, -1));
                        adj[t].push((s, i, 1));
                    }
                }
            }
        }
    }
    let mut comp = vec![usize::MAX; total];
    let mut deg = vec![vec![0i32; c.q]; total];
    let mut ncomp = 0;
    let mut queue = VecDeque::new();
    for root in 0..total {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = ncomp;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &(w, i, sign) in &adj[v] {
                let mut expect = deg[v].clone();
                expect[i] += sign;
                if comp[w] == usize::MAX {
                    comp[w] = ncomp;
                    deg[w] = expect;
                    queue.push_back(w);
                } else if deg[w] != expect {
                    return None;
                }
            }
        }
        ncomp += 1;
    }
    let split = |j: usize| offsets[j]..offsets[j] + c.spots[j];
    Some(FineGrading {
        comp: (0..c.spots.len()).map(|j| comp[split(j)].to_vec()).collect(),
        deg: (0..c.spots.len()).map(|j| deg[split(j)].to_vec()).collect(),
    })
}

/// Rank of the out-map of slice `(j, p)`, computed block by block along the
/// fine grading. The differential preserves `(component, exponent + deg)`,
/// so the slice matrix is block diagonal in that key.
fn blocked_out_rank(
    c: &LinearComplex,
    g: &FineGrading,
    j: usize,
    src: &MonomialTable,
    dst: &MonomialTable,
) -> usize {
    if j == c.top() || c.spots[j] == 0 || c.spots[j + 1] == 0 {
        return 0;
    }
    let (a, b) = (c.spots[j], c.spots[j + 1]);
    let u = &c.diffs[j];
    let support: Vec<Vec<(usize, usize, &Rational)>> = (0..a)
        .map(|col| {
            let mut s = Vec::new();
            for r in 0..b {
                for i in 0..c.q {
                    let t = u.get(r, col, i);
                    if !t.is_zero() {
                        s.push((r, i, t));
                    }
                }
            }
            s
        })
        .collect();

    // key -> (columns, rows seen, row index lookup)
    let mut blocks: HashMap<(usize, Vec<i32>), Vec<(usize, usize)>> = HashMap::new();
    for (mi, mono) in src.list.iter().enumerate() {
        for col in 0..a {
            if support[col].is_empty() {
                continue;
            }
            let key: Vec<i32> = mono
                .iter()
                .zip(&g.deg[j][col])
                .map(|(&e, &d)| e as i32 + d)
                .collect();
            blocks
                .entry((g.comp[j][col], key))
                .or_default()
                .push((mi, col));
        }
    }
    let mut keys: Vec<_> = blocks.keys().cloned().collect();
    keys.sort();
    keys.iter()
        .map(|k| {
            let cols = &blocks[k];
            let mut row_of: HashMap<usize, usize> = HashMap::new();
            let mut entries: Vec<(usize, usize, &Rational)> = Vec::new();
            for (ci, &(mi, col)) in cols.iter().enumerate() {
                for &(r, i, t) in &support[col] {
                    let mut target = src.list[mi].clone();
                    target[i] += 1;
                    let global = dst.index[&target] * b + r;
                    let next = row_of.len();
                    let ri = *row_of.entry(global).or_insert(next);
                    entries.push((ri, ci, t));
                }
            }
            let mut m = MatrixQ::zeros(row_of.len(), cols.len());
            for (ri, ci, t) in entries {
                let cur = m.get(ri, ci) + t;
                m.set(ri, ci, cur);
            }
            m.rank()
        })
        .sum()
}

/// Homology of `L(P)` in every slice `(j, p)` with `p <= p_max`.
///
/// Verdicts are certified only inside this window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub q: usize,
    pub top: usize,
    pub p_max: usize,
    /// `term_dims[j][p] = dim S_p * a_j`.
    pub term_dims: Vec<Vec<usize>>,
    /// `homology[j][p]`.
    pub homology: Vec<Vec<usize>>,
    /// Leftmost spot with homology in the window, and its lowest degree.
    pub first_failure: Option<(usize, usize)>,
    /// Smallest `m` with exactness at the first `top - m` spots.
    pub regularity: usize,
    /// The alternating sums of term dimensions and of homology dimensions
    /// agree along every strand `p - j = const` inside the window.
    pub ledger_ok: bool,
    /// Slices were split along a fine grading.
    pub graded_blocks: bool,
}

impl ExactnessReport {
    pub fn spot_total(&self, j: usize) -> usize {
        self.homology[j].iter().sum()
    }

    pub fn exact_at(&self, j: usize) -> bool {
        self.spot_total(j) == 0
    }

    /// Number of consecutive exact spots starting from spot 0.
    pub fn leading_exact_spots(&self) -> usize {
        (0..=self.top).take_while(|&j| self.exact_at(j)).count()
    }
}

/// Default degree window `2 (d + q)`.
pub fn default_p_max(top: usize, q: usize) -> usize {
    2 * (top + q)
}

pub fn exactness_profile(c: &LinearComplex, p_max: usize) -> ExactnessReport {
    let q = c.q;
    let top = c.top();
    let tables: Vec<MonomialTable> = (0..=p_max + 1).map(|p| MonomialTable::new(q, p)).collect();
    let grading = fine_grading(c);

    // out_rank[j][p]
    let jobs: Vec<(usize, usize)> = (0..=top)
        .flat_map(|j| (0..=p_max).map(move |p| (j, p)))
        .collect();
    let ranks: Vec<usize> = jobs
        .par_iter()
        .map(|&(j, p)| match &grading {
            Some(g) => blocked_out_rank(c, g, j, &tables[p], &tables[p + 1]),
            None => slice_out(c, j, &tables[p], &tables[p + 1]).rank(),
        })
        .collect();
    let out_rank = |j: usize, p: usize| ranks[j * (p_max + 1) + p];

    let term_dims: Vec<Vec<usize>> = (0..=top)
        .map(|j| (0..=p_max).map(|p| sym_dim(q, p) * c.spots[j]).collect())
        .collect();
    let homology: Vec<Vec<usize>> = (0..=top)
        .map(|j| {
            (0..=p_max)
                .map(|p| {
                    let inc = if j == 0 || p == 0 { 0 } else { out_rank(j - 1, p - 1) };
                    term_dims[j][p] - out_rank(j, p) - inc
                })
                .collect()
        })
        .collect();

    let first_failure = (0..=top).find_map(|j| {
        (0..=p_max)
            .find(|&p| homology[j][p] != 0)
            .map(|p| (j, p))
    });

    let ledger_ok = (-(top as i64)..=p_max as i64 - top as i64).all(|strand| {
        let mut terms = 0i128;
        let mut hom = 0i128;
        for j in 0..=top {
            let p = strand + j as i64;
            if p < 0 {
                continue;
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let dim = usize::try_from(binomial(p + q as i64 - 1, q - 1)).expect("fits")
                * c.spots[j];
            terms += sign * dim as i128;
            hom += sign * homology[j][p as usize] as i128;
        }
        terms == hom
    });

    let mut report = ExactnessReport {
        q,
        top,
        p_max,
        term_dims,
        homology,
        first_failure,
        regularity: 0,
        ledger_ok,
        graded_blocks: grading.is_some(),
    };
    report.regularity = top - report.leading_exact_spots().min(top);
    report
}

/// Regularity of the dual module `Q = P^`, read off from the exactness of
/// `L(P)` within the degree window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularity {
    pub m: usize,
    /// The first slice with homology, if any.
    pub witness: Option<(usize, usize)>,
    pub p_max: usize,
    pub report: ExactnessReport,
}

pub fn regularity(m: &ExteriorModule, p_max: usize) -> Result<Regularity> {
    let c = bgg_complex(m)?;
    let report = exactness_profile(&c, p_max);
    Ok(Regularity {
        m: report.regularity,
        witness: report.first_failure,
        p_max,
        report,
    })
}

/// Exterior Betti number `b_i = chi(F(i))` in the linear-resolution regime.
pub fn betti_linear(m: &ExteriorModule, h: &HodgeProfile, i: i64, p_max: usize) -> Result<BigInt> {
    if m.q != h.q() || m.top() != h.dim() {
        return Err(Error::Invalid(format!(
            "module (q={}, top={}) does not match profile {h}",
            m.q,
            m.top()
        )));
    }
    let reg = regularity(m, p_max)?;
    if reg.m != 0 {
        return Err(Error::NotLinear(reg.m));
    }
    if i < 0 {
        return Ok(BigInt::zero());
    }
    Ok(hilbert_poly_f(h, i))
}
