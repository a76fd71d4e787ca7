//! Bracket powers `I^[q]`, Frobenius roots `J^(1/q)` and the Frobenius
//! closure chain.

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideals::project_out;
use crate::poly::{Monomial, MonomialOrder, Poly};
use crate::ring::{Ideal, RingPresentation};
use crate::verdict::{membership_identity, paren, power_expr, Certificate, Probe, Status, Verdict};
use serde::Serialize;

/// `I^[p^e]`, generated by the `p^e`-th powers of the generators.
pub fn bracket_power(ideal: &Ideal, e: u32) -> Result<Ideal> {
    let ring = ideal.ring();
    let gens = ideal
        .gens()
        .iter()
        .map(|g| ring.frobenius_pow(g, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(ring.clone(), gens))
}

/// `J^(1/p^e) = {f : f^(p^e) ∈ J}`.
///
/// Over `F_p` one has `f^q = f(x_1^q, ..., x_n^q)`, so the root is the
/// preimage of `J + Q` under `x_i -> x_i^q`, obtained by eliminating the
/// original variables from `J + Q + (x_i^q - y_i)`.
pub fn frobenius_root(j: &Ideal, e: u32) -> Result<Ideal> {
    let ring = j.ring();
    if e == 0 {
        return Ok(j.clone());
    }
    let q = ring.prime_power(e)?;
    if ring.is_relation_free() && j.is_monomial() {
        return Ok(monomial_root(j, q));
    }
    let base = ring.base();
    let n = base.nvars();
    let ynames: Vec<String> = base.names().iter().map(|s| format!("_{s}")).collect();
    let big = base.extend(&ynames, MonomialOrder::Block(n));
    let xs: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Poly> = j
        .preimage_gens()
        .iter()
        .map(|g| base.map_into(g, &big, &xs))
        .collect();
    for i in 0..n {
        let xq = big.monomial(Monomial::var(2 * n, i, q as u32), 1);
        gens.push(big.sub(&xq, &big.var(n + i)));
    }
    let gb = GroebnerBasis::compute(&big, &gens, ring.step_limit())?;
    let back = project_out(gb.polys(), n, base);
    Ideal::new(ring.clone(), back).trimmed()
}

fn monomial_root(j: &Ideal, q: u64) -> Ideal {
    let ring = j.ring();
    let gens = j
        .gens()
        .iter()
        .map(|g| {
            let (m, _) = &g.terms()[0];
            let exps: Vec<u32> = m
                .exponents()
                .iter()
                .map(|&b| (b as u64).div_ceil(q) as u32)
                .collect();
            crate::ring::monomial(ring, &exps)
        })
        .collect();
    Ideal::new(ring.clone(), gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum ChainStatus {
    /// `F_at = F_{at+1} = ... = F_{at+depth}`.
    Stabilized { at: u32, depth: u32 },
    Unstabilized { reason: String },
}

#[derive(Clone, Debug)]
pub struct FrobeniusChain {
    pub base: Ideal,
    /// `stages[e] = (I^[p^e])^(1/p^e)`.
    pub stages: Vec<Ideal>,
    pub status: ChainStatus,
    pub confirm: u32,
}

impl FrobeniusChain {
    /// Largest computed stage; a certified subset of `I^F`.
    pub fn candidate(&self) -> &Ideal {
        self.stages.last().expect("stage 0 always present")
    }

    pub fn is_stabilized(&self) -> bool {
        matches!(self.status, ChainStatus::Stabilized { .. })
    }
}

/// Computes stages `F_e` for `e = 0..=e_max`, stopping once `confirm + 1`
/// consecutive stages agree.
pub fn frobenius_closure(ideal: &Ideal, e_max: u32, confirm: u32) -> Result<FrobeniusChain> {
    chain(ideal, e_max, confirm, |e| {
        let b = bracket_power(ideal, e)?;
        frobenius_root(&b, e)
    })
}

/// Shared driver for ascending root chains.
pub(crate) fn chain(
    ideal: &Ideal,
    e_max: u32,
    confirm: u32,
    stage: impl Fn(u32) -> Result<Ideal>,
) -> Result<FrobeniusChain> {
    let mut stages = vec![stage(0)?];
    let mut run = 0u32;
    let mut status = ChainStatus::Unstabilized {
        reason: format!("e_max={e_max} reached"),
    };
    if confirm == 0 {
        status = ChainStatus::Stabilized { at: 0, depth: 0 };
    } else {
        for e in 1..=e_max {
            let next = match stage(e) {
                Ok(s) => s,
                Err(Error::BudgetExceeded { what, limit }) => {
                    status = ChainStatus::Unstabilized {
                        reason: format!("{what} budget {limit} exhausted at e={e}"),
                    };
                    break;
                }
                Err(err) => return Err(err),
            };
            let prev = stages.last().unwrap();
            if !next.contains_ideal(prev)? {
                return Err(Error::AuditFailure(format!(
                    "Frobenius chain not ascending at e={e}: {} ⊄ {}",
                    prev.display(),
                    next.display()
                )));
            }
            let equal = prev.contains_ideal(&next)?;
            stages.push(next);
            run = if equal { run + 1 } else { 0 };
            if run >= confirm {
                status = ChainStatus::Stabilized {
                    at: e - run,
                    depth: run,
                };
                break;
            }
        }
    }
    Ok(FrobeniusChain {
        base: ideal.clone(),
        stages,
        status,
        confirm,
    })
}

/// Certificate that `c * x^q ∈ I^[q] + Q`, as an exact identity with
/// generators `(g_i)^q` and the relations.
pub fn frobenius_identity(
    x: &Poly,
    ideal: &Ideal,
    e: u32,
    c: Option<&Poly>,
) -> Result<Option<crate::verdict::Combination>> {
    let ring = ideal.ring();
    let base = ring.base();
    let q = ring.prime_power(e)?;
    let mut target = base.frobenius(x, q)?;
    let mut target_str = power_expr(base, x, q);
    if let Some(c) = c {
        target = base.mul(c, &target);
        target_str = format!("{}*{target_str}", paren(base, c));
    }
    let gens = ideal
        .gens()
        .iter()
        .map(|g| base.frobenius(g, q))
        .collect::<Result<Vec<_>>>()?;
    let names: Vec<String> = ideal
        .gens()
        .iter()
        .map(|g| power_expr(base, g, q))
        .collect();
    membership_identity(ring, &target, target_str, &gens, &names)
}

/// IN with a certificate at the first `e ≤ e_max` with `x^q ∈ I^[q]`,
/// otherwise UNKNOWN with the probe trace.
pub fn f_membership(x: &Poly, ideal: &Ideal, e_max: u32) -> Result<Verdict> {
    let ring = ideal.ring();
    let mut probes = Vec::new();
    for e in 0..=e_max {
        let q = ring.prime_power(e)?;
        let xq = ring.frobenius_pow(x, e)?;
        let b = bracket_power(ideal, e)?;
        let holds = match b.contains(&xq) {
            Ok(h) => h,
            Err(Error::BudgetExceeded { what, limit }) => {
                probes.push(Probe {
                    label: format!("x^{q} in I^[{q}]: {what} budget {limit} exhausted"),
                    holds: false,
                });
                break;
            }
            Err(err) => return Err(err),
        };
        if holds {
            let identity = frobenius_identity(x, ideal, e, None)?
                .ok_or_else(|| Error::AuditFailure("membership without cofactors".into()))?;
            return Ok(Verdict::new(Status::In, Certificate::Frobenius { e, q, identity })
                .with_param("e_max", e_max));
        }
        probes.push(Probe {
            label: format!("x^{q} in I^[{q}]"),
            holds: false,
        });
    }
    Ok(Verdict::unknown(probes).with_param("e_max", e_max))
}

/// Whether `x ∈ I^F` is refuted by flatness of Frobenius: in a polynomial
/// ring every ideal is Frobenius closed.
pub fn regular_f_closed(ring: &RingPresentation) -> bool {
    ring.is_relation_free()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring_file;

    fn a2() -> crate::RingFile {
        parse_ring_file("ring { char = 3; vars = [x, y]; relations = [] }\nideal M = [x, y]\nideal Q = [x^2, y^2]").unwrap()
    }

    #[test]
    fn bracket_of_linear_forms() {
        let rf = a2();
        let r = rf.ring.clone();
        let i = Ideal::new(r.clone(), vec![r.parse_poly("x").unwrap(), r.parse_poly("x+y").unwrap()]);
        let b = bracket_power(&i, 1).unwrap();
        let want = Ideal::new(r.clone(), vec![r.parse_poly("x^3").unwrap(), r.parse_poly("y^3").unwrap()]);
        assert!(b.equals(&want).unwrap());
    }

    #[test]
    fn roots_of_monomial_ideals() {
        let rf = a2();
        let r = rf.ring.clone();
        let j = Ideal::new(r.clone(), vec![r.parse_poly("x^5").unwrap()]);
        let root = frobenius_root(&j, 1).unwrap();
        assert_eq!(root.gb_strings().unwrap(), vec!["x^2"]);
        let j = Ideal::new(r.clone(), vec![r.parse_poly("x^3").unwrap(), r.parse_poly("y^3").unwrap()]);
        assert!(frobenius_root(&j, 1).unwrap().equals(rf.ideal("M").unwrap()).unwrap());
    }

    #[test]
    fn elimination_root_agrees_with_monomial_rule() {
        let rf = a2();
        let r = rf.ring.clone();
        // x^5 + 0 written non-monomially forces the elimination path
        let j = Ideal::new(r.clone(), vec![r.parse_poly("x^5 + x^4*y").unwrap(), r.parse_poly("x^4*y").unwrap()]);
        let root = frobenius_root(&j, 1).unwrap();
        assert_eq!(root.gb_strings().unwrap(), vec!["x^2"]);
    }

    #[test]
    fn regular_ring_chain_stabilizes_at_zero() {
        let rf = a2();
        let ch = frobenius_closure(rf.ideal("Q").unwrap(), 4, 2).unwrap();
        assert_eq!(ch.status, ChainStatus::Stabilized { at: 0, depth: 2 });
        assert!(ch.candidate().equals(rf.ideal("Q").unwrap()).unwrap());
    }

    #[test]
    fn hypersurface_frobenius_power() {
        let rf = parse_ring_file("ring { char = 5; vars = [x, y, z, w]; relations = [x*y - z*w] }").unwrap();
        let r = rf.ring;
        let a = r.frobenius_pow(&r.parse_poly("x*y").unwrap(), 1).unwrap();
        let b = r.canonical_form(&r.parse_poly("z^5*w^5").unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gr_example_is_frobenius_member() {
        let rf = parse_ring_file(
            "ring { char = 2; vars = [u, v, w, x, y, z, t]; relations = [u*x^2 + v*y^2 + w*z^2, u*t - 1]; local = [x, y, z] }\nideal I = [y, z]",
        )
        .unwrap();
        let r = rf.ring.clone();
        let x = r.parse_poly("x").unwrap();
        let v = f_membership(&x, rf.ideal("I").unwrap(), 2).unwrap();
        assert_eq!(v.status, Status::In);
        assert!(matches!(v.certificate, Certificate::Frobenius { e: 1, .. }));
        assert_eq!(v.reverify(&r).unwrap(), Some(true));
    }
}
