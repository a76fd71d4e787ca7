//! Reductions with respect to a closure: reduction tests, the Nakayama
//! implication, minimal reductions by subspace search, independence,
//! strong independence and spread.

use crate::closures::{contained_in_closure, EffectiveClosure};
use crate::error::{Error, Result};
use crate::ideals::{intersect, min_gens, VectorSpaceBasis};
use crate::linalg::{hyperplanes_of, subspaces_of_dim, Matrix, RowSpace};
use crate::poly::Poly;
use crate::ring::Ideal;
use crate::verdict::{Status, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Default largest `dim I/mI` for exhaustive enumeration.
pub const DEFAULT_MAX_DIM: usize = 6;
/// Largest number of subspaces classified in one enumeration.
pub const SUBSPACE_LIMIT: u128 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Tri {
    #[serde(rename = "YES")]
    Yes,
    #[serde(rename = "NO")]
    No,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

impl Tri {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tri::Yes => "YES",
            Tri::No => "NO",
            Tri::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementVerdict {
    pub element: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub closure: String,
    pub ideal: Vec<String>,
    pub candidate: Vec<String>,
    pub is_reduction: Status,
    pub verdicts: Vec<ElementVerdict>,
    /// The reduction found by minimisation.
    pub reduction: Option<Vec<String>>,
    pub minimal: Option<Tri>,
    /// Candidates left undecided below the reported dimension.
    pub unresolved: usize,
    /// `K ∩ mI = mK`.
    pub k_cap_mi_is_mk: Option<bool>,
}

fn ring_strings(ideal: &Ideal) -> Vec<String> {
    ideal.gens_strings()
}

/// Elements whose images span `I/mI`, falling back to the generators when
/// the residue field is not `F_p`.
fn spanning_elements(ideal: &Ideal) -> Result<Vec<Poly>> {
    match min_gens(ideal) {
        Ok(b) => Ok(b.elements().to_vec()),
        Err(Error::ResidueFieldNotPrime) => Ok(ideal.gens().to_vec()),
        Err(e) => Err(e),
    }
}

fn element_verdicts(ideal: &Ideal, elems: &[Poly], vs: Vec<Verdict>) -> Vec<ElementVerdict> {
    elems
        .iter()
        .zip(vs)
        .map(|(x, verdict)| ElementVerdict {
            element: ideal.ring().format(x),
            verdict,
        })
        .collect()
}

/// `J ⊆ I ⊆ cl(J)`, one verdict per minimal generator of `I`.
pub fn is_reduction(j: &Ideal, i: &Ideal, cl: &dyn EffectiveClosure) -> Result<ReductionReport> {
    if !i.contains_ideal(j)? {
        return Err(Error::NotContained);
    }
    let elems = spanning_elements(i)?;
    let mut verdicts = Vec::with_capacity(elems.len());
    for x in &elems {
        verdicts.push(cl.member(x, j)?);
    }
    let status = crate::verdict::conjunction(&verdicts);
    Ok(ReductionReport {
        closure: cl.name(),
        ideal: ring_strings(i),
        candidate: ring_strings(j),
        is_reduction: status,
        verdicts: element_verdicts(i, &elems, verdicts),
        reduction: None,
        minimal: None,
        unresolved: 0,
        k_cap_mi_is_mk: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NakayamaOutcome {
    pub closure: String,
    /// `I ⊆ cl(J + mI)`.
    pub hypothesis: Status,
    /// `I ⊆ cl(J)`, evaluated when the hypothesis is certified.
    pub conclusion: Option<Status>,
    /// Inputs homogeneous for the local grading; otherwise membership is
    /// affine and the implication need not hold.
    pub graded: bool,
    pub pass: bool,
}

/// If `I ⊆ cl(J + mI)` is certified then `I ⊆ cl(J)` must be too; a
/// certified failure on graded input is an error.
pub fn nakayama_audit(i: &Ideal, j: &Ideal, cl: &dyn EffectiveClosure) -> Result<NakayamaOutcome> {
    if !i.contains_ideal(j)? {
        return Err(Error::NotContained);
    }
    let elems = spanning_elements(i)?;
    let jm = j.sum(&i.times_maximal());
    let (hyp, _) = contained_in_closure(cl, &elems, &jm)?;
    let mut out = NakayamaOutcome {
        closure: cl.name(),
        hypothesis: hyp,
        conclusion: None,
        graded: i.is_graded() && j.is_graded(),
        pass: true,
    };
    if hyp == Status::In {
        let (conc, vs) = contained_in_closure(cl, &elems, j)?;
        out.conclusion = Some(conc);
        out.pass = conc == Status::In;
        if conc == Status::Out && out.graded {
            let failing = vs.last().map(|v| format!("{:?}", v.certificate)).unwrap_or_default();
            return Err(Error::AuditFailure(format!(
                "Nakayama implication fails for {}: I = {}, J = {}; {failing}",
                cl.name(),
                i.display(),
                j.display()
            )));
        }
    }
    Ok(out)
}

/// Classifies subspaces `L` of `I/mI` by whether `I ⊆ cl(lift(L) + mI)`.
struct Classifier<'a> {
    cl: &'a dyn EffectiveClosure,
    ideal: Ideal,
    elems: Vec<Poly>,
    mi: Ideal,
    /// Elements whose images form the coordinate basis of the subspace.
    basis: Vec<Poly>,
}

impl<'a> Classifier<'a> {
    fn new(cl: &'a dyn EffectiveClosure, vs: &VectorSpaceBasis, basis: Vec<Poly>) -> Result<Self> {
        let mi = vs.m_times_ideal().trimmed()?;
        Ok(Classifier {
            cl,
            ideal: vs.ideal().clone(),
            elems: vs.elements().to_vec(),
            mi,
            basis,
        })
    }

    fn lift(&self, l: &Matrix) -> Vec<Poly> {
        let ring = self.ideal.ring();
        let base = ring.base();
        let one = crate::poly::Monomial::one(base.nvars());
        l.rows
            .iter()
            .map(|row| {
                let f = self
                    .basis
                    .iter()
                    .zip(row)
                    .fold(base.zero(), |acc, (b, c)| base.add_scaled(&acc, *c, &one, b));
                ring.canonical_form(&f).unwrap_or(f)
            })
            .collect()
    }

    fn with_mi(&self, k: &[Poly]) -> Ideal {
        let mut g = k.to_vec();
        g.extend(self.mi.gens().iter().cloned());
        Ideal::new(self.ideal.ring().clone(), g)
    }

    fn classify(&self, l: &Matrix) -> Result<Status> {
        let k = self.lift(l);
        Ok(contained_in_closure(self.cl, &self.elems, &self.with_mi(&k))?.0)
    }

    fn classify_all(&self, ls: &[Matrix]) -> Result<Vec<Status>> {
        ls.par_iter().map(|l| self.classify(l)).collect()
    }
}

/// Elements of `J` whose images are independent in `I/mI`, in order.
fn independent_lifts(vs: &VectorSpaceBasis, j: &Ideal) -> Result<Vec<Poly>> {
    let mut rs = RowSpace::new(*j.ring().field(), vs.dim());
    let mut out = Vec::new();
    for g in j.gens() {
        let Some(c) = vs.coordinates(g)? else {
            return Err(Error::NotContained);
        };
        if rs.insert(&c) {
            out.push(g.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Greedy,
    Exhaustive,
}

/// A minimal reduction `K ⊆ J` of `I`.
pub fn minimize_reduction(j: &Ideal, i: &Ideal, cl: &dyn EffectiveClosure, mode: Mode) -> Result<ReductionReport> {
    let mut report = is_reduction(j, i, cl)?;
    if report.is_reduction != Status::In {
        return Err(Error::InvalidArgument(format!(
            "J is not a certified {}-reduction of I",
            cl.name()
        )));
    }
    let vs = min_gens(i)?;
    let lifts = independent_lifts(&vs, j)?;
    let f = *i.ring().field();
    let classifier = Classifier::new(cl, &vs, lifts.clone())?;
    let w = lifts.len();
    let identity = Matrix::new((0..w).map(|r| (0..w).map(|c| (r == c) as u32).collect()).collect(), w);
    let (chosen, minimal, unresolved) = match mode {
        Mode::Greedy => {
            let mut keep: Vec<usize> = (0..w).collect();
            let mut idx = 0;
            while idx < keep.len() {
                let trial: Vec<usize> = keep.iter().copied().filter(|&k| k != keep[idx]).collect();
                let m = Matrix::new(trial.iter().map(|&t| identity.rows[t].clone()).collect(), w);
                if classifier.classify(&m)? == Status::In {
                    keep = trial;
                } else {
                    idx += 1;
                }
            }
            let l = Matrix::new(keep.iter().map(|&t| identity.rows[t].clone()).collect(), w);
            let hyper = if l.nrows() <= 8 { hyperplanes_of(&f, &l) } else { Vec::new() };
            let statuses = classifier.classify_all(&hyper)?;
            let minimal = if l.nrows() > 8 {
                Tri::Unknown
            } else if statuses.contains(&Status::In) {
                Tri::No
            } else if statuses.iter().all(|s| *s == Status::Out) {
                Tri::Yes
            } else {
                Tri::Unknown
            };
            let unresolved = statuses.iter().filter(|s| **s != Status::In && **s != Status::Out).count();
            (l, minimal, unresolved)
        }
        Mode::Exhaustive => {
            let mut found = None;
            let mut unresolved = 0;
            for k in 0..=w {
                let subs = subspaces_of_dim(&f, w, k);
                let statuses = classifier.classify_all(&subs)?;
                if let Some(pos) = statuses.iter().position(|s| *s == Status::In) {
                    found = Some(subs[pos].clone());
                    break;
                }
                unresolved += statuses.iter().filter(|s| **s != Status::Out).count();
            }
            let l = found.unwrap_or(identity);
            let minimal = if unresolved == 0 { Tri::Yes } else { Tri::Unknown };
            (l, minimal, unresolved)
        }
    };
    let k = classifier.lift(&chosen);
    let k_ideal = Ideal::new(i.ring().clone(), k.clone());
    let (conc, _) = contained_in_closure(cl, vs.elements(), &k_ideal)?;
    if conc == Status::Out {
        return Err(Error::AuditFailure(format!(
            "Nakayama step fails: I = {} not in cl(K) for K = {}",
            i.display(),
            k_ideal.display()
        )));
    }
    let mk = k_ideal.times_maximal();
    let cap = intersect(&k_ideal, vs.m_times_ideal())?;
    report.k_cap_mi_is_mk = Some(cap.equals(&mk)?);
    report.reduction = Some(k.iter().map(|g| i.ring().format(g)).collect());
    report.minimal = Some(if conc == Status::In { minimal } else { Tri::Unknown });
    report.unresolved = unresolved;
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub closure: String,
    pub elements: Vec<String>,
    /// Verdict on `x_i ∈ cl(others)` for each `i`.
    pub verdicts: Vec<ElementVerdict>,
    pub independent: Tri,
}

/// For each `i`, whether `x_i ∈ cl(x_1, .., x̂_i, .., x_n)`.
pub fn independence(elems: &[Poly], ring_of: &Ideal, cl: &dyn EffectiveClosure) -> Result<IndependenceReport> {
    let ring = ring_of.ring();
    let mut verdicts = Vec::with_capacity(elems.len());
    for (k, x) in elems.iter().enumerate() {
        if ring.canonical_form(x)?.is_zero() {
            return Err(Error::InvalidArgument("elements must be nonzero".into()));
        }
        let others: Vec<Poly> = elems
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, g)| g.clone())
            .collect();
        let o = Ideal::new(ring.clone(), others);
        let v = match cl.quick_out(x, &o)? {
            Some(v) => v,
            None => cl.member(x, &o)?,
        };
        verdicts.push(v);
    }
    let independent = if verdicts.iter().any(|v| v.status == Status::In) {
        Tri::No
    } else if verdicts.iter().all(|v| v.status == Status::Out) {
        Tri::Yes
    } else {
        Tri::Unknown
    };
    Ok(IndependenceReport {
        closure: cl.name(),
        elements: elems.iter().map(|e| ring.format(e)).collect(),
        verdicts: elems
            .iter()
            .zip(verdicts)
            .map(|(x, verdict)| ElementVerdict {
                element: ring.format(x),
                verdict,
            })
            .collect(),
        independent,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StrongIndependenceReport {
    pub closure: String,
    pub ideal: Vec<String>,
    pub strongly_independent: Tri,
    /// How the answer was reached: `generating-set` or `subspaces`.
    pub method: String,
    /// A proper subspace `L` with `J ⊆ cl(lift(L) + mJ)`, by spanning elements.
    pub witness: Option<Vec<String>>,
    /// The element shown to lie in the closure of the witness.
    pub dependent_element: Option<ElementVerdict>,
    pub hyperplanes: usize,
    pub unresolved: usize,
}

/// `J` is strongly independent exactly when it is a minimal reduction of
/// itself, i.e. no hyperplane `L` of `J/mJ` has `J ⊆ cl(lift(L) + mJ)`.
///
/// Minimal generating sets are tried first: the ideal's own generators,
/// then `gensets`, then elementary transvections `g_i + c g_j`. A dependent
/// element there gives the witness directly.
pub fn strong_independence(j: &Ideal, cl: &dyn EffectiveClosure, gensets: &[Vec<Poly>]) -> Result<StrongIndependenceReport> {
    let ring = j.ring();
    let vs = min_gens(j)?;
    let mu = vs.dim();
    let base_gens = vs.elements().to_vec();
    let mut report = StrongIndependenceReport {
        closure: cl.name(),
        ideal: j.gens_strings(),
        strongly_independent: Tri::Unknown,
        method: "subspaces".into(),
        witness: None,
        dependent_element: None,
        hyperplanes: 0,
        unresolved: 0,
    };
    if mu <= 1 {
        report.strongly_independent = Tri::Yes;
        return Ok(report);
    }
    let mut candidates: Vec<Vec<Poly>> = vec![base_gens.clone()];
    for g in gensets {
        let gi = Ideal::new(ring.clone(), g.clone());
        if g.len() != mu || !gi.equals(j)? {
            return Err(Error::InvalidArgument(format!(
                "{} is not a minimal generating set of the ideal",
                gi.display()
            )));
        }
        candidates.push(g.clone());
    }
    let p = ring.characteristic();
    let base = ring.base();
    let one = crate::poly::Monomial::one(base.nvars());
    for a in 0..mu {
        for b in 0..mu {
            if a == b {
                continue;
            }
            for c in 1..p {
                let mut g = base_gens.clone();
                g[a] = base.add_scaled(&g[a], c, &one, &base_gens[b]);
                candidates.push(g);
            }
        }
    }
    for g in &candidates {
        let rep = independence(g, j, cl)?;
        if let Some(pos) = rep.verdicts.iter().position(|v| v.verdict.status == Status::In) {
            report.strongly_independent = Tri::No;
            report.method = "generating-set".into();
            report.witness = Some(
                g.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != pos)
                    .map(|(_, e)| ring.format(e))
                    .collect(),
            );
            report.dependent_element = Some(rep.verdicts[pos].clone());
            return Ok(report);
        }
    }
    let classifier = Classifier::new(cl, &vs, base_gens)?;
    let f = *ring.field();
    let hyper = subspaces_of_dim(&f, mu, mu - 1);
    report.hyperplanes = hyper.len();
    let statuses = classifier.classify_all(&hyper)?;
    if let Some(pos) = statuses.iter().position(|s| *s == Status::In) {
        report.strongly_independent = Tri::No;
        report.witness = Some(classifier.lift(&hyper[pos]).iter().map(|g| ring.format(g)).collect());
    } else if statuses.iter().all(|s| *s == Status::Out) {
        report.strongly_independent = Tri::Yes;
    } else {
        report.unresolved = statuses.iter().filter(|s| **s != Status::Out).count();
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalEntry {
    pub dim: usize,
    /// RREF coordinates over the minimal generators.
    pub subspace: Vec<Vec<u32>>,
    pub reduction: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionCount {
    pub dim: usize,
    pub subspaces: usize,
    pub members: usize,
    pub non_members: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpreadReport {
    pub closure: String,
    pub ideal: Vec<String>,
    pub basis: Vec<String>,
    pub counts: Vec<DimensionCount>,
    /// Certified inclusion-minimal members of Σ.
    pub minimal: Vec<MinimalEntry>,
    /// Members whose minimality is blocked by undecided hyperplanes.
    pub possibly_minimal: usize,
    pub mu_set: Vec<usize>,
    pub well_defined: bool,
    pub representative: Option<MinimalEntry>,
    pub unknown_subspaces: usize,
    pub lift_checks: usize,
}

/// Classifies every subspace `L` of `V = I/mI` by `I ⊆ cl(lift(L) + mI)`
/// and collects the certified inclusion-minimal members.
pub fn enumerate_minimal_reductions(i: &Ideal, cl: &dyn EffectiveClosure, max_dim: usize) -> Result<SpreadReport> {
    let ring = i.ring();
    let vs = min_gens(i)?;
    let d = vs.dim();
    if d > max_dim {
        return Err(Error::BudgetExceeded {
            what: "subspace enumeration dimension",
            limit: max_dim as u64,
        });
    }
    let p = ring.characteristic() as u64;
    let total: u128 = (0..=d).map(|k| crate::linalg::count_subspaces(p, d, k)).sum();
    if total > SUBSPACE_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "subspace enumeration",
            limit: SUBSPACE_LIMIT as u64,
        });
    }
    let f = *ring.field();
    let classifier = Classifier::new(cl, &vs, vs.elements().to_vec())?;
    let mut layers: Vec<(Vec<Matrix>, Vec<Status>)> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let subs = subspaces_of_dim(&f, d, k);
        let st = classifier.classify_all(&subs)?;
        layers.push((subs, st));
    }
    let lookup = |m: &Matrix| -> Status {
        let k = m.nrows();
        let (subs, st) = &layers[k];
        subs.iter().position(|s| s == m).map(|pos| st[pos]).unwrap_or(Status::Unknown)
    };
    let mut counts = Vec::new();
    let mut minimal = Vec::new();
    let mut possibly = 0;
    let mut unknown = 0;
    for (k, (subs, st)) in layers.iter().enumerate() {
        let members = st.iter().filter(|s| **s == Status::In).count();
        let non = st.iter().filter(|s| **s == Status::Out).count();
        let unk = subs.len() - members - non;
        unknown += unk;
        counts.push(DimensionCount {
            dim: k,
            subspaces: subs.len(),
            members,
            non_members: non,
            unknown: unk,
        });
        for (l, s) in subs.iter().zip(st) {
            if *s != Status::In {
                continue;
            }
            let hs: Vec<Status> = if k == 0 {
                Vec::new()
            } else {
                hyperplanes_of(&f, l).iter().map(&lookup).collect()
            };
            if hs.iter().all(|h| *h == Status::Out) {
                minimal.push(MinimalEntry {
                    dim: k,
                    subspace: l.rows.clone(),
                    reduction: classifier.lift(l).iter().map(|g| ring.format(g)).collect(),
                });
            } else if !hs.contains(&Status::In) {
                possibly += 1;
            }
        }
    }
    let mut mu_set: Vec<usize> = minimal.iter().map(|m| m.dim).collect();
    mu_set.sort();
    mu_set.dedup();
    let well_defined = mu_set.len() == 1
        && counts
            .iter()
            .filter(|c| c.dim < mu_set[0])
            .all(|c| c.unknown == 0);
    let representative = mu_set.first().and_then(|&lo| {
        minimal
            .iter()
            .filter(|m| m.dim == lo)
            .min_by_key(|m| m.subspace.iter().flatten().filter(|&&c| c != 0).count())
            .cloned()
    });
    let lift_checks = lift_spot_check(&classifier, &layers, 4)?;
    Ok(SpreadReport {
        closure: cl.name(),
        ideal: i.gens_strings(),
        basis: vs.elements().iter().map(|g| ring.format(g)).collect(),
        counts,
        minimal,
        possibly_minimal: possibly,
        mu_set,
        well_defined,
        representative,
        unknown_subspaces: unknown,
        lift_checks,
    })
}

/// Random lifts of the same subspace give the same `K + mI` exactly.
fn lift_spot_check(c: &Classifier, layers: &[(Vec<Matrix>, Vec<Status>)], per_layer: usize) -> Result<usize> {
    let ring = c.ideal.ring();
    let base = ring.base();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mi = c.mi.gens();
    let p = ring.characteristic();
    let mut checks = 0;
    for (subs, _) in layers {
        for l in subs.iter().take(per_layer) {
            let k1 = c.lift(l);
            if mi.is_empty() {
                continue;
            }
            let k2: Vec<Poly> = k1
                .iter()
                .map(|g| {
                    let h = &mi[rng.gen_range(0..mi.len())];
                    let s = rng.gen_range(1..p.max(2));
                    base.add_scaled(g, s % p, &crate::poly::Monomial::one(base.nvars()), h)
                })
                .collect();
            if !c.with_mi(&k1).equals(&c.with_mi(&k2))? {
                return Err(Error::AuditFailure(format!(
                    "two lifts of the same subspace differ modulo mI: {:?}",
                    l.rows
                )));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpreadAudit {
    pub closure: String,
    /// `pass`, `fail` or `incomparable`.
    pub outcome: String,
    pub spread: Option<usize>,
    pub witnesses: Vec<MinimalEntry>,
}

pub fn spread_consistency_audit(report: &SpreadReport) -> SpreadAudit {
    let (outcome, spread, witnesses) = if report.mu_set.len() > 1 {
        let a = report.minimal.iter().find(|m| m.dim == report.mu_set[0]).cloned();
        let b = report.minimal.iter().find(|m| m.dim == report.mu_set[1]).cloned();
        ("fail", None, a.into_iter().chain(b).collect())
    } else if report.well_defined {
        ("pass", report.mu_set.first().copied(), report.representative.clone().into_iter().collect())
    } else {
        ("incomparable", None, Vec::new())
    };
    SpreadAudit {
        closure: report.closure.clone(),
        outcome: outcome.into(),
        spread,
        witnesses,
    }
}

/// `ℓ^cl(I)` when well defined.
pub fn cl_spread(i: &Ideal, cl: &dyn EffectiveClosure) -> Result<Option<usize>> {
    let rep = enumerate_minimal_reductions(i, cl, DEFAULT_MAX_DIM)?;
    Ok(spread_consistency_audit(&rep).spread)
}
