mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tclose::closures::{colon_profile, tc_evidence, EffectiveClosure, FrobeniusClosure, IdentityClosure, IntegralClosure, TestElement};
use tclose::frobenius::{bracket_power, frobenius_closure, frobenius_root};
use tclose::ideals::{colon, min_gens};
use tclose::nakayama::{is_reduction, minimize_reduction, nakayama_audit, Mode};
use tclose::newton::newton_closure_monomial;
use tclose::special_part::sptc_approx_ideal;
use tclose::verdict::Status;
use tclose::{GroebnerBasis, Ideal};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Number of monomials of degree `< n` not divisible by a leading monomial
/// of the Gröbner basis of `J + m^n`.
fn standard_count(j: &Ideal, n: u32) -> usize {
    let ring = j.ring();
    let nv = ring.nvars();
    let big: Vec<_> = monomials_of_degree(nv, n).iter().map(|e| mono(ring, e)).collect();
    let mut gens = j.preimage_gens();
    gens.extend(big);
    let gb = GroebnerBasis::compute(ring.base(), &gens, ring.step_limit()).unwrap();
    let leads = gb.leading_monomials();
    (0..n)
        .flat_map(|d| monomials_of_degree(nv, d))
        .filter(|e| {
            let m = tclose::poly::Monomial::new(e.clone());
            !leads.iter().any(|l| l.divides(&m))
        })
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_a_ring_homomorphism(seed in any::<u64>(), which in 0usize..2) {
        let rf = load([HS, GR][which]);
        let r = &rf.ring;
        let mut g = rng(seed);
        let (f, h) = (random_poly(r, &mut g, 4, 4), random_poly(r, &mut g, 4, 4));
        let b = r.base();
        let cf = r.canonical_form(&f).unwrap();
        let ch = r.canonical_form(&h).unwrap();
        prop_assert_eq!(r.canonical_form(&b.add(&f, &h)).unwrap(), r.canonical_form(&b.add(&cf, &ch)).unwrap());
        prop_assert_eq!(r.canonical_form(&b.mul(&f, &h)).unwrap(), r.canonical_form(&b.mul(&cf, &ch)).unwrap());
    }

    #[test]
    fn frobenius_is_additive_and_composes(seed in any::<u64>(), which in 0usize..3) {
        let rf = load([A2, HS, GR3][which]);
        let r = &rf.ring;
        let mut g = rng(seed);
        let (f, h) = (random_poly(r, &mut g, 3, 3), random_poly(r, &mut g, 3, 3));
        let sum = r.frobenius_pow(&r.base().add(&f, &h), 1).unwrap();
        let parts = r.add(&r.frobenius_pow(&f, 1).unwrap(), &r.frobenius_pow(&h, 1).unwrap()).unwrap();
        prop_assert_eq!(sum, parts);
        let once = r.frobenius_pow(&f, 1).unwrap();
        prop_assert_eq!(r.frobenius_pow(&once, 1).unwrap(), r.frobenius_pow(&f, 2).unwrap());
    }

    #[test]
    fn ideals_absorb_combinations(seed in any::<u64>(), which in 0usize..2) {
        let rf = load([A2, HS][which]);
        let r = &rf.ring;
        let mut g = rng(seed);
        let i = random_ideal(r, &mut g, 3, 3, true);
        let (f, h) = (random_member(&i, &mut g), random_member(&i, &mut g));
        let s = random_poly(r, &mut g, 3, 2);
        let combo = r.base().add(&f, &r.base().mul(&s, &h));
        prop_assert!(i.contains(&combo).unwrap());
    }

    #[test]
    fn colon_adjunction(seed in any::<u64>(), which in 0usize..2) {
        let rf = load([A2, HS][which]);
        let r = &rf.ring;
        let mut g = rng(seed);
        let i = random_ideal(r, &mut g, 3, 3, true);
        let j = random_ideal(r, &mut g, 2, 2, true);
        let c = colon(&i, &j).unwrap();
        prop_assert!(i.contains_ideal(&j.product(&c)).unwrap());
    }

    #[test]
    fn min_gens_matches_standard_monomial_count(seed in any::<u64>(), which in 0usize..2) {
        let rf = load([A2, HS][which]);
        let r = &rf.ring;
        let mut g = rng(seed);
        let i = random_ideal(r, &mut g, 3, 3, true);
        let n = 5;
        let oracle = standard_count(&i.times_maximal(), n) - standard_count(&i, n);
        prop_assert_eq!(min_gens(&i).unwrap().dim(), oracle);
    }

    #[test]
    fn groebner_bases_are_reproducible(seed in any::<u64>(), which in 0usize..2) {
        let rf = load([A2, HS][which]);
        let r = &rf.ring;
        let mut g = rng(seed);
        let i = random_ideal(r, &mut g, 3, 3, true);
        let again = Ideal::new(r.clone(), i.gens().to_vec());
        prop_assert_eq!(i.gb_strings().unwrap(), again.gb_strings().unwrap());
    }

    #[test]
    fn root_adjunction(seed in any::<u64>(), which in 0usize..2) {
        let rf = load([A2, HS][which]);
        let r = &rf.ring;
        let mut g = rng(seed);
        let j = random_ideal(r, &mut g, 3, 4, true);
        let root = frobenius_root(&j, 1).unwrap();
        for _ in 0..8 {
            let f = if g.gen_bool(0.5) { random_member(&root, &mut g) } else { random_poly(r, &mut g, 2, 2) };
            prop_assert_eq!(root.contains(&f).unwrap(), j.contains(&r.frobenius_pow(&f, 1).unwrap()).unwrap());
        }
    }

    #[test]
    fn root_of_bracket_contains_ideal(seed in any::<u64>(), which in 0usize..2) {
        let rf = load([A2, HS][which]);
        let r = &rf.ring;
        let mut g = rng(seed);
        let i = random_ideal(r, &mut g, 2, 2, true);
        let back = frobenius_root(&bracket_power(&i, 1).unwrap(), 1).unwrap();
        prop_assert!(back.contains_ideal(&i).unwrap());
        if r.is_relation_free() {
            prop_assert!(i.contains_ideal(&back).unwrap());
        }
    }

    #[test]
    fn bracket_power_ignores_generating_set(seed in any::<u64>(), which in 0usize..2) {
        let rf = load([A2, HS][which]);
        let r = &rf.ring;
        let mut g = rng(seed);
        let i = random_ideal(r, &mut g, 3, 2, true);
        let j = regenerate(&i, &mut g);
        prop_assert!(i.equals(&j).unwrap());
        prop_assert!(bracket_power(&i, 1).unwrap().equals(&bracket_power(&j, 1).unwrap()).unwrap());
    }

    #[test]
    fn bracket_powers_compose(seed in any::<u64>()) {
        let rf = load(A2);
        let r = &rf.ring;
        let mut g = rng(seed);
        let i = random_ideal(r, &mut g, 2, 2, true);
        let twice = bracket_power(&bracket_power(&i, 1).unwrap(), 1).unwrap();
        prop_assert!(twice.equals(&bracket_power(&i, 2).unwrap()).unwrap());
    }

    #[test]
    fn frobenius_candidate_inside_newton_closure(seed in any::<u64>()) {
        let rf = load(A2);
        let mut g = rng(seed);
        let i = random_ideal(&rf.ring, &mut g, 3, 4, false);
        let f = frobenius_closure(&i, 2, 2).unwrap();
        prop_assert!(newton_closure_monomial(&i).unwrap().contains_ideal(f.candidate()).unwrap());
    }

    #[test]
    fn colon_profile_of_a_member_has_no_depth(seed in any::<u64>()) {
        let rf = load(A2);
        let mut g = rng(seed);
        let i = random_ideal(&rf.ring, &mut g, 2, 3, true);
        let f = random_member(&i, &mut g);
        prop_assume!(!f.is_zero());
        let prof = colon_profile(&f, &i, (0, 2)).unwrap();
        prop_assert!(prof.rows.iter().all(|row| row.depth.is_none()));
    }

    #[test]
    fn unit_test_element_matches_frobenius_membership(seed in any::<u64>()) {
        let rf = load(A2);
        let r = &rf.ring;
        let mut g = rng(seed);
        let i = random_ideal(r, &mut g, 3, 3, false);
        let d = g.gen_range(1..4);
        let x = random_monomial(r, &mut g, d);
        let test = TestElement { c: r.base().one(), q0_exponent: 0 };
        let tc = tc_evidence(&x, &i, &test, (0, 2)).unwrap();
        let fm = FrobeniusClosure { e_max: 2, confirm: 2 }.member(&x, &i).unwrap();
        prop_assert_eq!(tc.status, fm.status);
        prop_assert!(tc.status.is_certified());
    }

    #[test]
    fn nakayama_implication(seed in any::<u64>(), which in 0usize..3) {
        let rf = load(A2);
        let r = &rf.ring;
        let mut g = rng(seed);
        let i = random_ideal(r, &mut g, 3, 3, false);
        let keep: Vec<_> = i.gens().iter().filter(|_| g.gen_bool(0.6)).cloned().collect();
        let j = Ideal::new(r.clone(), keep);
        let cl: Box<dyn EffectiveClosure> = match which {
            0 => Box::new(IdentityClosure),
            1 => Box::new(FrobeniusClosure { e_max: 2, confirm: 2 }),
            _ => Box::new(IntegralClosure::newton()),
        };
        let out = nakayama_audit(&i, &j, cl.as_ref()).unwrap();
        prop_assert!(out.pass);
    }

    #[test]
    fn reductions_are_transitive(seed in any::<u64>()) {
        let rf = load(A2);
        let r = &rf.ring;
        let mut g = rng(seed);
        let i = random_ideal(r, &mut g, 4, 3, false);
        let j = Ideal::new(r.clone(), i.gens().iter().filter(|_| g.gen_bool(0.7)).cloned().collect());
        let k = Ideal::new(r.clone(), j.gens().iter().filter(|_| g.gen_bool(0.7)).cloned().collect());
        let cl = IntegralClosure::newton();
        let kj = is_reduction(&k, &j, &cl).unwrap().is_reduction;
        let ji = is_reduction(&j, &i, &cl).unwrap().is_reduction;
        if kj == Status::In && ji == Status::In {
            prop_assert_eq!(is_reduction(&k, &i, &cl).unwrap().is_reduction, Status::In);
        }
    }

    #[test]
    fn reduction_depends_only_on_the_subspace(seed in any::<u64>()) {
        let rf = load(A2);
        let r = &rf.ring;
        let b = r.base();
        let mut g = rng(seed);
        let i = random_ideal(r, &mut g, 3, 3, true);
        let mi = i.times_maximal();
        let l: Vec<_> = i.gens().iter().filter(|_| g.gen_bool(0.6)).cloned().collect();
        let shift = |g: &mut ChaCha8Rng| -> Ideal {
            let gens = l.iter().map(|f| b.add(f, &random_member(&mi, g))).collect();
            Ideal::new(r.clone(), gens).sum(&mi)
        };
        let (k1, k2) = (shift(&mut g), shift(&mut g));
        prop_assert!(k1.equals(&k2).unwrap());
        let cl = IntegralClosure::newton();
        prop_assert_eq!(is_reduction(&k1, &i, &cl).unwrap().is_reduction, is_reduction(&k2, &i, &cl).unwrap().is_reduction);
    }

    #[test]
    fn minimized_reductions_are_minimal_generating_sets(seed in any::<u64>()) {
        let rf = load(A2);
        let r = &rf.ring;
        let mut g = rng(seed);
        let i = random_ideal(r, &mut g, 3, 3, false);
        let rep = minimize_reduction(&i, &i, &IntegralClosure::newton(), Mode::Greedy).unwrap();
        prop_assert_eq!(rep.k_cap_mi_is_mk, Some(true));
        prop_assert_eq!(rep.is_reduction, Status::In);
    }

    #[test]
    fn special_part_stage_zero_contains_mi(seed in any::<u64>(), which in 0usize..2) {
        let rf = load([A2, HS][which]);
        let mut g = rng(seed);
        let i = random_ideal(&rf.ring, &mut g, 2, 2, true);
        let a = sptc_approx_ideal(&i, 2, 1).unwrap();
        prop_assert!(a.ideal().contains_ideal(&i.times_maximal()).unwrap());
        for w in a.stages.windows(2) {
            prop_assert!(w[1].contains_ideal(&w[0]).unwrap());
        }
    }

    #[test]
    fn integral_certificates_reverify(seed in any::<u64>()) {
        let rf = load(A2);
        let r = &rf.ring;
        let mut g = rng(seed);
        let i = random_ideal(r, &mut g, 2, 3, true);
        let d = g.gen_range(1..4);
        let x = random_mono_or_binomial(r, &mut g, d);
        let v = IntegralClosure::bounded(4).member(&x, &i).unwrap();
        prop_assert_ne!(v.reverify(r).unwrap(), Some(false));
    }
}
