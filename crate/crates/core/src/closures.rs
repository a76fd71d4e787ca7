//! Closure oracles behind one interface, integral-closure membership
//! search, tight-closure evidence, colon profiles and the closure-axiom
//! audit.

use crate::arcs::separating_arc;
use crate::error::{Error, Result};
use crate::frobenius::{bracket_power, f_membership, frobenius_closure};
use crate::ideals::colon;
use crate::newton::{exponents_of, in_polyhedron, newton_closure_monomial, term_exponents};
use crate::poly::Poly;
use crate::ring::{dedup, Ideal};
use crate::verdict::{membership_identity, paren, Certificate, Combination, Probe, Status, Verdict};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Mutex;

pub const DEFAULT_E_MAX: u32 = 4;
pub const DEFAULT_CONFIRM: u32 = 2;
pub const DEFAULT_N_MAX: u32 = 6;

/// Most generators written out as explicit products in an integral
/// equation certificate.
const PRODUCT_CAP: usize = 400;

/// A closure operation known only through what can be computed about it.
pub trait EffectiveClosure: Send + Sync {
    fn name(&self) -> String;
    fn params(&self) -> BTreeMap<String, Value>;
    /// The closure as an ideal, when this oracle can produce it.
    fn closure(&self, ideal: &Ideal) -> Result<Option<Ideal>>;
    fn member(&self, x: &Poly, ideal: &Ideal) -> Result<Verdict>;
    /// A cheap certified OUT, if one is available without searching.
    fn quick_out(&self, x: &Poly, ideal: &Ideal) -> Result<Option<Verdict>> {
        let _ = (x, ideal);
        Ok(None)
    }
}

impl<T: EffectiveClosure + ?Sized> EffectiveClosure for Box<T> {
    fn name(&self) -> String {
        (**self).name()
    }

    fn params(&self) -> BTreeMap<String, Value> {
        (**self).params()
    }

    fn closure(&self, ideal: &Ideal) -> Result<Option<Ideal>> {
        (**self).closure(ideal)
    }

    fn member(&self, x: &Poly, ideal: &Ideal) -> Result<Verdict> {
        (**self).member(x, ideal)
    }

    fn quick_out(&self, x: &Poly, ideal: &Ideal) -> Result<Option<Verdict>> {
        (**self).quick_out(x, ideal)
    }
}

/// Membership in `I` itself, as a verdict.
pub fn plain_member(x: &Poly, ideal: &Ideal) -> Result<Verdict> {
    let ring = ideal.ring();
    if ideal.contains(x)? {
        let base = ring.base();
        let names: Vec<String> = ideal.gens().iter().map(|g| paren(base, g)).collect();
        let identity = membership_identity(ring, x, paren(base, x), ideal.gens(), &names)?
            .ok_or_else(|| Error::AuditFailure("member without cofactors".into()))?;
        Ok(Verdict::new(Status::In, Certificate::Membership { identity }))
    } else {
        let nf = ideal.normal_form(x)?;
        Ok(Verdict::rule(
            Status::Out,
            "ideal membership",
            format!("normal form {} is nonzero", ring.format(&nf)),
        ))
    }
}

pub struct IdentityClosure;

impl EffectiveClosure for IdentityClosure {
    fn name(&self) -> String {
        "identity".into()
    }

    fn params(&self) -> BTreeMap<String, Value> {
        BTreeMap::new()
    }

    fn closure(&self, ideal: &Ideal) -> Result<Option<Ideal>> {
        Ok(Some(ideal.clone()))
    }

    fn member(&self, x: &Poly, ideal: &Ideal) -> Result<Verdict> {
        plain_member(x, ideal)
    }

    fn quick_out(&self, x: &Poly, ideal: &Ideal) -> Result<Option<Verdict>> {
        let v = plain_member(x, ideal)?;
        Ok((v.status == Status::Out).then_some(v))
    }
}

/// Frobenius closure truncated at `e_max`.
pub struct FrobeniusClosure {
    pub e_max: u32,
    pub confirm: u32,
}

impl Default for FrobeniusClosure {
    fn default() -> Self {
        FrobeniusClosure {
            e_max: DEFAULT_E_MAX,
            confirm: DEFAULT_CONFIRM,
        }
    }
}

impl EffectiveClosure for FrobeniusClosure {
    fn name(&self) -> String {
        "frobenius".into()
    }

    fn params(&self) -> BTreeMap<String, Value> {
        BTreeMap::from([
            ("e_max".to_string(), json!(self.e_max)),
            ("confirm".to_string(), json!(self.confirm)),
        ])
    }

    fn closure(&self, ideal: &Ideal) -> Result<Option<Ideal>> {
        Ok(Some(frobenius_closure(ideal, self.e_max, self.confirm)?.candidate().clone()))
    }

    fn member(&self, x: &Poly, ideal: &Ideal) -> Result<Verdict> {
        let v = f_membership(x, ideal, self.e_max)?;
        if v.status == Status::In {
            return Ok(v);
        }
        if ideal.ring().is_relation_free() && !ideal.contains(x)? {
            return Ok(Verdict::rule(
                Status::Out,
                "regular ring",
                "Frobenius is flat on a polynomial ring, so every ideal is Frobenius closed; x^1 is not in I",
            )
            .with_param("e_max", self.e_max));
        }
        if let Some(out) = integral_out(x, ideal)? {
            return Ok(upper_bound("integral closure", out));
        }
        Ok(v)
    }

    fn quick_out(&self, x: &Poly, ideal: &Ideal) -> Result<Option<Verdict>> {
        if ideal.ring().is_relation_free() {
            let v = plain_member(x, ideal)?;
            return Ok((v.status == Status::Out).then_some(v));
        }
        Ok(integral_out(x, ideal)?.map(|v| upper_bound("integral closure", v)))
    }
}

/// Integral closure through bounded search for equations of integral
/// dependence, with exact Newton closures for monomial ideals of a
/// polynomial ring when `newton` is set.
pub struct IntegralClosure {
    pub n_max: u32,
    pub newton: bool,
}

impl IntegralClosure {
    pub fn bounded(n_max: u32) -> Self {
        IntegralClosure { n_max, newton: false }
    }

    pub fn newton() -> Self {
        IntegralClosure {
            n_max: DEFAULT_N_MAX,
            newton: true,
        }
    }

    fn exact_monomial(&self, ideal: &Ideal) -> bool {
        self.newton && ideal.ring().is_relation_free() && ideal.is_monomial() && !ideal.is_zero()
    }
}

impl EffectiveClosure for IntegralClosure {
    fn name(&self) -> String {
        if self.newton { "newton" } else { "integral" }.into()
    }

    fn params(&self) -> BTreeMap<String, Value> {
        BTreeMap::from([("n_max".to_string(), json!(self.n_max))])
    }

    fn closure(&self, ideal: &Ideal) -> Result<Option<Ideal>> {
        if self.exact_monomial(ideal) {
            return newton_closure_monomial(ideal).map(Some);
        }
        if ideal.ring().is_relation_free() && principal(ideal)? {
            return Ok(Some(ideal.clone()));
        }
        Ok(None)
    }

    fn member(&self, x: &Poly, ideal: &Ideal) -> Result<Verdict> {
        if self.exact_monomial(ideal) {
            return Ok(newton_member(x, ideal)?.with_param("n_max", self.n_max));
        }
        if ideal.contains(x)? {
            return plain_member(x, ideal);
        }
        if let Some(out) = integral_out(x, ideal)? {
            return Ok(out.with_param("n_max", self.n_max));
        }
        integral_member_bounded(x, ideal, self.n_max)
    }

    fn quick_out(&self, x: &Poly, ideal: &Ideal) -> Result<Option<Verdict>> {
        if self.exact_monomial(ideal) {
            let v = newton_member(x, ideal)?;
            return Ok((v.status == Status::Out).then_some(v));
        }
        integral_out(x, ideal)
    }
}

fn upper_bound(bound: &str, inner: Verdict) -> Verdict {
    Verdict::new(
        inner.status,
        Certificate::UpperBound {
            bound: bound.to_string(),
            inner: Box::new(inner),
        },
    )
}

fn principal(ideal: &Ideal) -> Result<bool> {
    Ok(ideal.gens().len() <= 1 || ideal.trimmed()?.gens().len() <= 1)
}

/// Exact membership in the integral closure of a monomial ideal of a
/// polynomial ring: every term of `x` must lie in the Newton polyhedron.
pub fn newton_member(x: &Poly, ideal: &Ideal) -> Result<Verdict> {
    let b = exponents_of(ideal)?;
    let mut witnesses = Vec::new();
    for (m, _) in x.terms() {
        match in_polyhedron(&b, m.exponents()) {
            Some(w) => witnesses.push(w),
            None => {
                return Ok(Verdict::new(
                    Status::Out,
                    Certificate::NewtonBound {
                        bound: ideal.gens_strings(),
                        failing_exponent: m.exponents().to_vec(),
                        note: "exponent outside the Newton polyhedron".into(),
                    },
                ))
            }
        }
    }
    Ok(Verdict::new(Status::In, Certificate::NewtonHull { witnesses }))
}

/// Certified reasons why `x` is not in the integral closure of `I`, if one
/// is found. Every closure handled here is contained in the integral
/// closure, so these certify OUT for all of them.
pub fn integral_out(x: &Poly, ideal: &Ideal) -> Result<Option<Verdict>> {
    let ring = ideal.ring();
    if ideal.contains(x)? {
        return Ok(None);
    }
    if ideal.is_zero() && ring.is_relation_free() {
        return Ok(Some(Verdict::rule(
            Status::Out,
            "zero ideal",
            "the integral closure of (0) in a domain is (0)",
        )));
    }
    if ring.is_relation_free() {
        if principal(ideal)? {
            return Ok(Some(Verdict::rule(
                Status::Out,
                "principal ideal",
                "principal ideals of a polynomial ring are integrally closed and x is not in I",
            )));
        }
        let t = term_exponents(ideal);
        for (m, _) in x.terms() {
            if in_polyhedron(&t, m.exponents()).is_none() {
                let base = ring.base();
                let bound = t
                    .iter()
                    .map(|e| base.format(&crate::ring::monomial(ring, e)))
                    .collect();
                return Ok(Some(Verdict::new(
                    Status::Out,
                    Certificate::NewtonBound {
                        bound,
                        failing_exponent: m.exponents().to_vec(),
                        note: "term outside the Newton polyhedron of the monomials of I".into(),
                    },
                )));
            }
        }
    }
    Ok(separating_arc(x, ideal))
}

/// `x^n ∈ I (I + (x))^(n-1)` for some `n ≤ n_max`. Never returns OUT.
pub fn integral_member_bounded(x: &Poly, ideal: &Ideal, n_max: u32) -> Result<Verdict> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let ring = ideal.ring();
    let base = ring.base();
    let gens: Vec<Poly> = if ideal.gens().len() > 6 {
        ideal.trimmed()?.gens().to_vec()
    } else {
        ideal.gens().to_vec()
    };
    let mut probes = Vec::new();
    // powers[j] generates I^j
    let mut powers: Vec<Vec<Poly>> = vec![vec![base.one()], gens.clone()];
    for n in 1..=n_max {
        while powers.len() <= n as usize {
            let prev = powers.last().unwrap();
            let next = Ideal::new(ring.clone(), products(base, prev, &gens)).trimmed();
            let next = match next {
                Ok(i) => i.gens().to_vec(),
                Err(Error::BudgetExceeded { .. }) => return Ok(Verdict::unknown(probes)),
                Err(e) => return Err(e),
            };
            powers.push(next);
        }
        let xn = ring.canonical_form(&base.pow(x, n as u64))?;
        let mut lhs = Vec::new();
        for k in 0..n {
            let xk = base.pow(x, k as u64);
            for g in &powers[(n - k) as usize] {
                lhs.push(base.mul(&xk, g));
            }
        }
        let holds = match Ideal::new(ring.clone(), lhs).contains(&xn) {
            Ok(h) => h,
            Err(Error::BudgetExceeded { .. }) => {
                probes.push(Probe {
                    label: format!("n={n}: budget exhausted"),
                    holds: false,
                });
                break;
            }
            Err(e) => return Err(e),
        };
        if holds {
            let (kind, identity) = integral_identity(x, &gens, &powers, n, ideal)?;
            return Ok(Verdict::new(
                Status::In,
                Certificate::IntegralEquation {
                    n,
                    generators: kind,
                    identity,
                },
            )
            .with_param("n_max", n_max));
        }
        probes.push(Probe {
            label: format!("x^{n} in I(I+(x))^{}", n - 1),
            holds: false,
        });
    }
    Ok(Verdict::unknown(probes).with_param("n_max", n_max))
}

fn products(base: &crate::poly::PolyRing, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut out: Vec<Poly> = a.iter().flat_map(|f| b.iter().map(move |g| base.mul(f, g))).collect();
    dedup(&mut out);
    out
}

/// Multisets of size `k` from `0..n`, as sorted index vectors.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    if n == 0 {
        return if k == 0 { vec![cur] } else { out };
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] + 1 < n) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[i];
        }
    }
}

fn integral_identity(
    x: &Poly,
    gens: &[Poly],
    powers: &[Vec<Poly>],
    n: u32,
    ideal: &Ideal,
) -> Result<(String, Combination)> {
    let ring = ideal.ring();
    let base = ring.base();
    let target = base.pow(x, n as u64);
    let target_str = if n == 1 {
        paren(base, x)
    } else {
        format!("{}^{n}", paren(base, x))
    };
    let xpow = |k: u32| match k {
        0 => String::new(),
        1 => format!("{}*", paren(base, x)),
        _ => format!("{}^{k}*", paren(base, x)),
    };
    let count: usize = (0..n)
        .map(|k| multisets(gens.len(), (n - k) as usize).len())
        .sum();
    let (kind, polys, names) = if count <= PRODUCT_CAP {
        let mut polys = Vec::new();
        let mut names = Vec::new();
        for k in 0..n {
            for ms in multisets(gens.len(), (n - k) as usize) {
                let mut p = base.pow(x, k as u64);
                let mut s = xpow(k);
                for (idx, &i) in ms.iter().enumerate() {
                    p = base.mul(&p, &gens[i]);
                    if idx > 0 {
                        s.push('*');
                    }
                    s.push_str(&paren(base, &gens[i]));
                }
                polys.push(p);
                names.push(s);
            }
        }
        ("products", polys, names)
    } else {
        let mut polys = Vec::new();
        let mut names = Vec::new();
        for k in 0..n {
            for g in &powers[(n - k) as usize] {
                polys.push(base.mul(&base.pow(x, k as u64), g));
                names.push(format!("{}{}", xpow(k), paren(base, g)));
            }
        }
        ("power-basis", polys, names)
    };
    let identity = membership_identity(ring, &target, target_str, &polys, &names)?
        .ok_or_else(|| Error::AuditFailure("integral equation without cofactors".into()))?;
    Ok((kind.to_string(), identity))
}

/// The test-element candidate `c` with the exponent from which it is used.
#[derive(Clone, Debug)]
pub struct TestElement {
    pub c: Poly,
    pub q0_exponent: u32,
}

/// Tight-closure evidence for `x ∈ I^*` from probes `c x^q ∈ I^[q]`,
/// `e ∈ e_range`.
pub fn tc_evidence(x: &Poly, ideal: &Ideal, test: &TestElement, e_range: (u32, u32)) -> Result<Verdict> {
    let ring = ideal.ring();
    let base = ring.base();
    let c = ring.canonical_form(&test.c)?;
    if c.is_zero() {
        return Err(Error::InvalidArgument("test element c must be nonzero".into()));
    }
    let c_is_one = c == base.one();
    let c_valid = c_is_one && ring.is_relation_free();
    let lo = e_range.0.max(test.q0_exponent);
    let hi = e_range.1.max(lo);
    let annotate = |v: Verdict| {
        v.with_param("c", ring.format(&c))
            .with_param("c_verified", c_valid)
            .with_param("e_range", json!([lo, hi]))
    };
    if ideal.contains(x)? {
        return Ok(annotate(plain_member(x, ideal)?));
    }
    if let Some(out) = integral_out(x, ideal)? {
        return Ok(annotate(upper_bound("integral closure", out)));
    }
    let mut probes = Vec::new();
    let mut failed = None;
    for e in lo..=hi {
        let q = ring.prime_power(e)?;
        let lhs = ring.mul(&c, &ring.frobenius_pow(x, e)?)?;
        let holds = match bracket_power(ideal, e)?.contains(&lhs) {
            Ok(h) => h,
            Err(Error::BudgetExceeded { .. }) => {
                probes.push(Probe {
                    label: format!("c*x^{q} in I^[{q}]: budget exhausted"),
                    holds: false,
                });
                return Ok(annotate(Verdict::unknown(probes)));
            }
            Err(e) => return Err(e),
        };
        probes.push(Probe {
            label: format!("c*x^{q} in I^[{q}]"),
            holds,
        });
        if !holds && failed.is_none() {
            failed = Some(q);
        }
    }
    if let Some(q) = failed {
        if c_valid {
            return Ok(annotate(Verdict::rule(
                Status::Out,
                "test element",
                format!("c = 1 is a test element of a polynomial ring and x^{q} is not in I^[{q}]"),
            )));
        }
        return Ok(annotate(Verdict::unknown(probes)));
    }
    let fv = f_membership(x, ideal, hi)?;
    if fv.status == Status::In {
        return Ok(annotate(fv));
    }
    Ok(annotate(Verdict::new(Status::EvidenceIn, Certificate::Probes { probes })))
}

#[derive(Clone, Debug, Serialize)]
pub struct ColonRow {
    pub e: u32,
    pub q: u64,
    pub colon: Vec<String>,
    /// Largest `r` with `I^[q] : f^q ⊆ m^[p^r]`; absent when the colon is
    /// not inside `m`.
    pub depth: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColonProfile {
    pub rows: Vec<ColonRow>,
    /// Depth defined at every probe and strictly increasing with `e`: the
    /// shape that indicates `f` is not in the tight closure.
    pub linear_growth: bool,
}

pub fn colon_profile(f: &Poly, ideal: &Ideal, e_range: (u32, u32)) -> Result<ColonProfile> {
    let ring = ideal.ring();
    if ring.canonical_form(f)?.is_zero() {
        return Err(Error::InvalidArgument("f must be nonzero".into()));
    }
    let m = ring.maximal_ideal();
    let mut rows = Vec::new();
    for e in e_range.0..=e_range.1 {
        let q = ring.prime_power(e)?;
        let fq = Ideal::new(ring.clone(), vec![ring.frobenius_pow(f, e)?]);
        let c = colon(&bracket_power(ideal, e)?, &fq)?.trimmed()?;
        let mut depth = None;
        for r in 0..=e + 2 {
            if bracket_power(&m, r)?.contains_ideal(&c)? {
                depth = Some(r);
            } else {
                break;
            }
        }
        rows.push(ColonRow {
            e,
            q,
            colon: c.gens_strings(),
            depth,
        });
    }
    let linear_growth = rows.iter().all(|r| r.depth.is_some())
        && rows.windows(2).all(|w| w[0].depth < w[1].depth);
    Ok(ColonProfile { rows, linear_growth })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub closure: String,
    pub instances: usize,
    pub skipped: usize,
    pub extensive: usize,
    pub monotone: usize,
    pub idempotent: usize,
}

/// Checks extensivity, monotonicity and idempotence on pairs `J ⊆ I`.
/// Any violation is an error carrying the smallest failing instance.
pub fn closure_axiom_audit(cl: &dyn EffectiveClosure, pairs: &[(Ideal, Ideal)]) -> Result<AxiomReport> {
    let mut report = AxiomReport {
        closure: cl.name(),
        ..Default::default()
    };
    let mut violations: Vec<(usize, String)> = Vec::new();
    for (j, i) in pairs {
        if !i.contains_ideal(j)? {
            return Err(Error::NotContained);
        }
        let (Some(cj), Some(ci)) = (cl.closure(j)?, cl.closure(i)?) else {
            report.skipped += 1;
            continue;
        };
        report.instances += 1;
        let size = j.gens().len() + i.gens().len();
        let tag = format!("J = {}, I = {}", j.display(), i.display());
        if cj.contains_ideal(j)? && ci.contains_ideal(i)? {
            report.extensive += 1;
        } else {
            violations.push((size, format!("extensivity fails for {tag}")));
        }
        if ci.contains_ideal(&cj)? {
            report.monotone += 1;
        } else {
            violations.push((size, format!("monotonicity fails for {tag}: cl(J) = {} ⊄ cl(I) = {}", cj.display(), ci.display())));
        }
        let ccj = cl.closure(&cj)?.unwrap_or_else(|| cj.clone());
        let cci = cl.closure(&ci)?.unwrap_or_else(|| ci.clone());
        if ccj.equals(&cj)? && cci.equals(&ci)? {
            report.idempotent += 1;
        } else {
            violations.push((size, format!("idempotence fails for {tag}")));
        }
    }
    if let Some((_, msg)) = violations.into_iter().min_by_key(|(s, _)| *s) {
        return Err(Error::AxiomViolation(format!("{}: {msg}", cl.name())));
    }
    Ok(report)
}

/// Wraps a closure oracle and checks every closure it computes: each
/// result is checked for extensivity and idempotence when produced, and
/// monotonicity is checked across all recorded results by [`Audited::finish`].
pub struct Audited<C> {
    inner: C,
    log: Mutex<Vec<(Ideal, Ideal)>>,
}

impl<C: EffectiveClosure> Audited<C> {
    pub fn new(inner: C) -> Self {
        Audited {
            inner,
            log: Mutex::new(Vec::new()),
        }
    }

    pub fn inner(&self) -> &C {
        &self.inner
    }

    pub fn recorded(&self) -> usize {
        self.log.lock().unwrap().len()
    }

    /// Pairwise monotonicity over every recorded instance.
    pub fn finish(&self) -> Result<usize> {
        let log = self.log.lock().unwrap();
        let mut checked = 0;
        for (a, ca) in log.iter() {
            for (b, cb) in log.iter() {
                if std::ptr::eq(a, b) || !b.contains_ideal(a)? {
                    continue;
                }
                checked += 1;
                if !cb.contains_ideal(ca)? {
                    return Err(Error::AxiomViolation(format!(
                        "{}: monotonicity fails for {} ⊆ {}",
                        self.inner.name(),
                        a.display(),
                        b.display()
                    )));
                }
            }
        }
        Ok(checked)
    }
}

impl<C: EffectiveClosure> EffectiveClosure for Audited<C> {
    fn name(&self) -> String {
        self.inner.name()
    }

    fn params(&self) -> BTreeMap<String, Value> {
        self.inner.params()
    }

    fn closure(&self, ideal: &Ideal) -> Result<Option<Ideal>> {
        let Some(c) = self.inner.closure(ideal)? else {
            return Ok(None);
        };
        if !c.contains_ideal(ideal)? {
            return Err(Error::AxiomViolation(format!(
                "{}: {} ⊄ its closure {}",
                self.inner.name(),
                ideal.display(),
                c.display()
            )));
        }
        if let Some(cc) = self.inner.closure(&c)? {
            if !cc.equals(&c)? {
                return Err(Error::AxiomViolation(format!(
                    "{}: closure of {} is not idempotent",
                    self.inner.name(),
                    ideal.display()
                )));
            }
        }
        self.log.lock().unwrap().push((ideal.clone(), c.clone()));
        Ok(Some(c))
    }

    fn member(&self, x: &Poly, ideal: &Ideal) -> Result<Verdict> {
        self.inner.member(x, ideal)
    }

    fn quick_out(&self, x: &Poly, ideal: &Ideal) -> Result<Option<Verdict>> {
        self.inner.quick_out(x, ideal)
    }
}

/// Closure oracle by name: `identity`, `frobenius`, `integral`, `newton`.
pub fn closure_by_name(name: &str, e_max: u32, confirm: u32, n_max: u32) -> Result<Box<dyn EffectiveClosure>> {
    Ok(match name {
        "identity" => Box::new(IdentityClosure),
        "frobenius" => Box::new(FrobeniusClosure { e_max, confirm }),
        "integral" => Box::new(IntegralClosure::bounded(n_max)),
        "newton" => Box::new(IntegralClosure { n_max, newton: true }),
        other => return Err(Error::InvalidArgument(format!("unknown closure `{other}`"))),
    })
}

/// Verdicts for `elems ⊆ cl(J)`, one per element; stops at the first OUT.
pub fn contained_in_closure(cl: &dyn EffectiveClosure, elems: &[Poly], j: &Ideal) -> Result<(Status, Vec<Verdict>)> {
    for x in elems {
        if let Some(v) = cl.quick_out(x, j)? {
            return Ok((Status::Out, vec![v]));
        }
    }
    let mut out = Vec::with_capacity(elems.len());
    for x in elems {
        let v = cl.member(x, j)?;
        let stop = v.status == Status::Out;
        out.push(v);
        if stop {
            break;
        }
    }
    Ok((crate::verdict::conjunction(&out), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring_file;

    fn a2() -> crate::RingFile {
        parse_ring_file("ring { char = 3; vars = [x, y]; relations = [] }\nideal Q = [x^2, y^2]\nideal M2 = [x^2, x*y, y^2]").unwrap()
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(2, 0), vec![Vec::<usize>::new()]);
        assert_eq!(multisets(1, 3), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn hypersurface_integral_equation() {
        let rf = parse_ring_file("ring { char = 5; vars = [x, y, z, w]; relations = [x*y - z*w] }\nideal K = [x + y, z, w]").unwrap();
        let r = rf.ring.clone();
        let v = integral_member_bounded(&r.parse_poly("y").unwrap(), rf.ideal("K").unwrap(), 6).unwrap();
        assert_eq!(v.status, Status::In);
        assert!(matches!(v.certificate, Certificate::IntegralEquation { n: 2, .. }));
        assert_eq!(v.reverify(&r).unwrap(), Some(true));
    }

    #[test]
    fn bounded_search_in_polynomial_ring() {
        let rf = a2();
        let r = rf.ring.clone();
        let v = integral_member_bounded(&r.parse_poly("x*y").unwrap(), rf.ideal("Q").unwrap(), 6).unwrap();
        assert_eq!(v.status, Status::In);
        assert_eq!(v.reverify(&r).unwrap(), Some(true));
        let v = integral_member_bounded(&r.parse_poly("x").unwrap(), rf.ideal("Q").unwrap(), 3).unwrap();
        assert_eq!(v.status, Status::Unknown);
    }

    #[test]
    fn tight_closure_evidence_examples() {
        let rf = a2();
        let r = rf.ring.clone();
        let one = TestElement { c: r.base().one(), q0_exponent: 0 };
        let q = rf.ideal("Q").unwrap();
        let v = tc_evidence(&r.parse_poly("x").unwrap(), q, &one, (1, 4)).unwrap();
        assert_eq!(v.status, Status::Out);
        assert!(matches!(v.certificate, Certificate::UpperBound { .. }));
        let v = tc_evidence(&r.parse_poly("x*y").unwrap(), q, &one, (1, 4)).unwrap();
        assert_eq!(v.status, Status::Out);
        assert!(matches!(v.certificate, Certificate::Rule { .. }));
    }

    #[test]
    fn colon_profile_examples() {
        let rf = a2();
        let r = rf.ring.clone();
        let y = Ideal::new(r.clone(), vec![r.parse_poly("y").unwrap()]);
        let p = colon_profile(&r.parse_poly("x").unwrap(), &y, (1, 3)).unwrap();
        assert_eq!(p.rows.iter().map(|r| r.depth).collect::<Vec<_>>(), vec![Some(1), Some(2), Some(3)]);
        assert!(p.linear_growth);
        let x = Ideal::new(r.clone(), vec![r.parse_poly("x").unwrap()]);
        let p = colon_profile(&r.parse_poly("x").unwrap(), &x, (1, 3)).unwrap();
        assert!(p.rows.iter().all(|r| r.depth.is_none() && r.colon == vec!["1"]));
        assert!(!p.linear_growth);
        let p = colon_profile(&r.parse_poly("x*y").unwrap(), rf.ideal("Q").unwrap(), (1, 2)).unwrap();
        assert_eq!(p.rows[0].colon.len(), 2);
        assert_eq!(p.rows[1].depth, Some(2));
    }

    #[test]
    fn axiom_audit_passes_for_standard_oracles() {
        let rf = a2();
        let pairs = vec![(rf.ideal("Q").unwrap().clone(), rf.ideal("M2").unwrap().clone())];
        for cl in [
            Box::new(IdentityClosure) as Box<dyn EffectiveClosure>,
            Box::new(FrobeniusClosure::default()),
            Box::new(IntegralClosure::newton()),
        ] {
            let rep = closure_axiom_audit(cl.as_ref(), &pairs).unwrap();
            assert_eq!(rep.instances, 1);
        }
        let newton = IntegralClosure::newton();
        let c = newton.closure(rf.ideal("Q").unwrap()).unwrap().unwrap();
        assert!(c.equals(rf.ideal("M2").unwrap()).unwrap());
    }
}
