mod common;

use common::*;
use tclose::closures::{integral_member_bounded, EffectiveClosure, FrobeniusClosure, IntegralClosure};
use tclose::frobenius::{f_membership, frobenius_closure, ChainStatus};
use tclose::nakayama::{enumerate_minimal_reductions, independence, spread_consistency_audit, strong_independence, Tri};
use tclose::special_part::{decomposition_check, sptc_approx_ideal};
use tclose::verdict::{Certificate, Status};
use tclose::Ideal;

#[test]
fn hypersurface_integral_dependence_of_y() {
    let rf = load(HS);
    let r = &rf.ring;
    let v = integral_member_bounded(&r.parse_poly("y").unwrap(), rf.ideal("K").unwrap(), 6).unwrap();
    assert_eq!(v.status, Status::In);
    let Certificate::IntegralEquation { n, identity, .. } = &v.certificate else { panic!() };
    assert_eq!(*n, 2);
    assert!(identity.reverify(r.base()).unwrap());
}

#[test]
fn hypersurface_maximal_ideal_is_not_strongly_independent() {
    let rf = load(HS);
    let m = rf.ideal("M").unwrap();
    let rep = strong_independence(m, &IntegralClosure::bounded(6), &[]).unwrap();
    assert_eq!(rep.strongly_independent, Tri::No);
    let w = Ideal::new(rf.ring.clone(), rep.witness.unwrap().iter().map(|s| rf.ring.parse_poly(s).unwrap()).collect());
    assert!(w.equals(rf.ideal("K").unwrap()).unwrap());
    let ind = independence(m.gens(), m, &IntegralClosure::bounded(6)).unwrap();
    assert_eq!(ind.independent, Tri::Yes);
}

#[test]
fn frobenius_powers_keep_independence() {
    let rf = load(HS);
    let r = &rf.ring;
    let m = rf.ideal("M").unwrap();
    let cl = FrobeniusClosure { e_max: 1, confirm: 1 };
    assert_eq!(independence(m.gens(), m, &cl).unwrap().independent, Tri::Yes);
    let powered: Vec<_> = m.gens().iter().map(|g| r.frobenius_pow(g, 1).unwrap()).collect();
    let mp = Ideal::new(r.clone(), powered.clone());
    assert_eq!(independence(&powered, &mp, &cl).unwrap().independent, Tri::Yes);
}

#[test]
fn grade_ring_frobenius_membership() {
    for src in [GR, GR3] {
        let rf = load(src);
        let r = &rf.ring;
        let v = f_membership(&r.parse_poly("x").unwrap(), rf.ideal("I").unwrap(), 2).unwrap();
        assert_eq!(v.status, Status::In);
        assert!(matches!(v.certificate, Certificate::Frobenius { e: 1, .. }));
        assert_eq!(v.reverify(r).unwrap(), Some(true));
        let ch = frobenius_closure(rf.ideal("I").unwrap(), 4, 2).unwrap();
        assert_eq!(ch.status, ChainStatus::Stabilized { at: 1, depth: 2 });
        assert!(ch.candidate().equals(rf.ideal("M").unwrap()).unwrap());
    }
}

#[test]
fn frobenius_closure_is_not_integral_closure_here() {
    let rf = load(GR);
    let r = &rf.ring;
    let v = FrobeniusClosure::default().member(&r.parse_poly("x").unwrap(), rf.ideal("I").unwrap()).unwrap();
    assert_eq!(v.status, Status::In);
    let rep = decomposition_check(rf.ideal("I").unwrap(), 4, 1).unwrap();
    assert_eq!(rep.q_prime, Some(2));
}

#[test]
fn plane_spread_and_special_part() {
    let rf = load(A2);
    let rep = enumerate_minimal_reductions(rf.ideal("M2").unwrap(), &IntegralClosure::newton(), 6).unwrap();
    assert_eq!(rep.mu_set, vec![2]);
    assert_eq!(rep.representative.as_ref().unwrap().reduction, vec!["x^2", "y^2"]);
    assert_eq!(spread_consistency_audit(&rep).spread, Some(2));
    let a = sptc_approx_ideal(rf.ideal("M").unwrap(), 4, 2).unwrap();
    assert!(a.ideal().equals(rf.ideal("M2").unwrap()).unwrap());
}
