//! Builders for the standard worked cases: exterior algebras, abelian
//! varieties times projective spaces, theta divisors and abelian varieties,
//! together with a catalog of their known invariants.

use crate::bggcore::ExteriorModule;
use crate::chern::HodgeProfile;
use crate::ringkit::{binomial, rat, MatrixQ};

/// Increasing `j`-subsets of `0..q` in lexicographic order.
pub fn subsets(q: usize, j: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, q: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for x in start..q {
            cur.push(x);
            go(x + 1, q, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, q, j, &mut Vec::new(), &mut out);
    out
}

/// Matrix of `e_i ^ -` from `Lambda^j V` to `Lambda^{j+1} V` in the subset
/// bases.
fn wedge_matrix(q: usize, i: usize, j: usize) -> MatrixQ {
    let src = subsets(q, j);
    let dst = subsets(q, j + 1);
    let mut m = MatrixQ::zeros(dst.len(), src.len());
    for (c, s) in src.iter().enumerate() {
        if s.contains(&i) {
            continue;
        }
        let mut t = s.clone();
        t.push(i);
        t.sort_unstable();
        let r = dst.binary_search(&t).expect("subset present");
        let before = s.iter().filter(|&&x| x < i).count();
        m.set(r, c, rat(if before % 2 == 0 { 1 } else { -1 }));
    }
    m
}

/// The exterior algebra `Lambda V` over itself, `dim V = q`.
pub fn koszul_module(q: usize) -> ExteriorModule {
    assert!(q >= 1, "koszul_module needs q >= 1");
    let dims = (0..=q).map(|j| subsets(q, j).len()).collect();
    let actions = (0..q)
        .map(|i| (0..q).map(|j| wedge_matrix(q, i, j)).collect())
        .collect();
    ExteriorModule::new(q, dims, actions).expect("consistent shapes")
}

/// Cohomology module of `A x P^k` with `A` abelian of dimension `m`: the
/// exterior algebra on `m` generators followed by `k` zero pieces.
pub fn product_module(m: usize, k: usize) -> ExteriorModule {
    assert!(m >= 1 && k >= 1, "product_module needs m, k >= 1");
    let d = m + k;
    let dims: Vec<usize> = (0..=d)
        .map(|j| if j <= m { subsets(m, j).len() } else { 0 })
        .collect();
    let actions = (0..m)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if j < m {
                        wedge_matrix(m, i, j)
                    } else {
                        MatrixQ::zeros(dims[j + 1], dims[j])
                    }
                })
                .collect()
        })
        .collect();
    ExteriorModule::new(m, dims, actions).expect("consistent shapes")
}

fn binom_u64(n: usize, k: usize) -> u64 {
    u64::try_from(binomial(n as i64, k)).expect("small binomial")
}

/// Theta divisor in a `(d+1)`-dimensional principally polarized abelian
/// variety: `h^{0,j} = C(d+1, j)` for `j < d` and `p_g = d + 1`.
pub fn theta_profile(d: usize) -> HodgeProfile {
    assert!(d >= 2, "theta_profile needs d >= 2");
    let mut h0: Vec<u64> = (0..d).map(|j| binom_u64(d + 1, j)).collect();
    h0.push(d as u64 + 1);
    HodgeProfile::new(d, h0)
        .expect("valid profile")
        .with_flags(true, true)
}

/// Abelian variety of dimension `d`: `h^{0,j} = C(d, j)`. Only the
/// isolated-origin flag is set: for `d >= 2` an abelian variety fibres over
/// its quotients.
pub fn abelian_profile(d: usize) -> HodgeProfile {
    assert!(d >= 1, "abelian_profile needs d >= 1");
    HodgeProfile::new(d, (0..=d).map(|j| binom_u64(d, j)).collect())
        .expect("valid profile")
        .with_flags(false, true)
}

/// Surface with irregularity `q` and geometric genus `p_g`, without
/// irrational pencils.
pub fn surface_profile(q: u64, p_g: u64) -> HodgeProfile {
    HodgeProfile::new(2, vec![1, q, p_g])
        .expect("valid profile")
        .with_flags(true, true)
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Stated in the literature the case is drawn from.
    Published,
    /// Immediate from the definitions.
    Elementary,
    /// Computed by an independent hand or oracle calculation.
    Computed,
}

#[derive(Clone, Debug)]
pub struct Expected {
    pub operation: &'static str,
    pub value: String,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct ExampleCase {
    pub name: String,
    pub module: Option<ExteriorModule>,
    pub profile: Option<HodgeProfile>,
    pub expected: Vec<Expected>,
}

fn exp(operation: &'static str, value: &str, provenance: Provenance) -> Expected {
    Expected {
        operation,
        value: value.to_string(),
        provenance,
    }
}

/// The worked cases with their known values. Values are rendered the way
/// the CLI's table view prints them.
pub fn catalog() -> Vec<ExampleCase> {
    use Provenance::*;
    vec![
        ExampleCase {
            name: "theta divisor, d=3".into(),
            module: None,
            profile: Some(theta_profile(3)),
            expected: vec![
                exp("euler_char", "1", Computed),
                exp("gamma", "1,1,0,0", Computed),
                exp("hilbert_poly_f(0..3)", "4,10,20", Computed),
            ],
        },
        ExampleCase {
            name: "abelian threefold".into(),
            module: Some(koszul_module(3)),
            profile: Some(abelian_profile(3)),
            expected: vec![
                exp("euler_char", "0", Elementary),
                exp("gamma", "1,0,0", Computed),
                exp("regularity", "0", Published),
            ],
        },
        ExampleCase {
            name: "A x P^1, dim A = 2".into(),
            module: Some(product_module(2, 1)),
            profile: None,
            expected: vec![
                exp("piece_dims", "1,2,1,0", Elementary),
                exp("regularity", "1", Published),
            ],
        },
        ExampleCase {
            name: "A x P^2, dim A = 3".into(),
            module: Some(product_module(3, 2)),
            profile: None,
            expected: vec![
                exp("piece_dims", "1,3,3,1,0,0", Elementary),
                exp("regularity", "2", Published),
            ],
        },
        ExampleCase {
            name: "theta divisor, d=2".into(),
            module: None,
            profile: Some(theta_profile(2)),
            expected: vec![exp("euler_char", "1", Published)],
        },
    ]
}
