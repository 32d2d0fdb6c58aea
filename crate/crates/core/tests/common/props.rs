//! Property bodies shared by the proptest suite and the acceptance runner.

use hodgebgg::bggcore::{
    bgg_complex, default_p_max, exactness_profile, validate_module, ExteriorModule,
};
use hodgebgg::examples::koszul_module;
use hodgebgg::ringkit::{rat, MatrixQ, Rational, TruncSeries};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{gauss_rank, to_rational};

type PropResult = Result<(), TestCaseError>;

pub fn ring_axioms(a: &TruncSeries, b: &TruncSeries, c: &TruncSeries) -> PropResult {
    prop_assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
    prop_assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
    prop_assert_eq!(
        a.mul(b).unwrap().mul(c).unwrap(),
        a.mul(&b.mul(c).unwrap()).unwrap()
    );
    prop_assert_eq!(
        a.add(b).unwrap().add(c).unwrap(),
        a.add(&b.add(c).unwrap()).unwrap()
    );
    prop_assert_eq!(
        a.mul(&b.add(c).unwrap()).unwrap(),
        a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap()
    );
    let one = TruncSeries::one(a.order());
    prop_assert_eq!(&a.mul(&one).unwrap(), a);
    prop_assert_eq!(&a.add(&TruncSeries::zero(a.order())).unwrap(), a);
    Ok(())
}

pub fn inverse_identity(u: &TruncSeries) -> PropResult {
    let inv = u.inv().unwrap();
    let one = TruncSeries::one(u.order());
    prop_assert_eq!(u.mul(&inv).unwrap(), one.clone());
    prop_assert_eq!(inv.mul(u).unwrap(), one);
    prop_assert_eq!(&inv.inv().unwrap(), u);
    Ok(())
}

pub fn rank_agrees(m: &[Vec<i64>]) -> PropResult {
    let rows = to_rational(m);
    let expected = gauss_rank(&rows);
    let mq = MatrixQ::from_rows(rows.clone()).unwrap();
    prop_assert_eq!(mq.rank(), expected);
    prop_assert_eq!(mq.transpose().rank(), expected);
    let mut reversed = rows;
    reversed.reverse();
    for r in &mut reversed {
        r.rotate_left(1);
    }
    prop_assert_eq!(MatrixQ::from_rows(reversed).unwrap().rank(), expected);
    Ok(())
}

/// Valid modules pass validation; changing one action entry of an exterior
/// algebra on `q >= 2` generators always breaks an axiom.
pub fn module_axioms(valid: &ExteriorModule, q: usize, pick: (usize, usize, usize, usize), delta: i64) -> PropResult {
    prop_assert!(validate_module(valid).is_ok());
    let k = koszul_module(q);
    let (i, j, r, c) = pick;
    let i = i % q;
    let j = j % q;
    let mut actions = k.actions().to_vec();
    let m = &mut actions[i][j];
    let (r, c) = (r % m.rows(), c % m.cols());
    let v = m.get(r, c) + rat(delta);
    m.set(r, c, v);
    let broken = ExteriorModule::new(q, k.piece_dims().to_vec(), actions).unwrap();
    prop_assert!(validate_module(&broken).is_err());
    Ok(())
}

pub fn euler_ledger(m: &ExteriorModule) -> PropResult {
    let c = bgg_complex(m).unwrap();
    prop_assert!(c.composes_to_zero());
    let rep = exactness_profile(&c, default_p_max(m.top(), m.q()).min(8));
    prop_assert!(rep.ledger_ok);
    Ok(())
}

pub fn fiber_exact(q: usize, v: &[Rational]) -> PropResult {
    let c = bgg_complex(&koszul_module(q)).unwrap();
    let h = c.fiber_homology(v).unwrap();
    prop_assert!(h.iter().all(|&x| x == 0), "fiber homology {:?} at {:?}", h, v);
    Ok(())
}
