//! Quotient rings `F_p[x_1..x_n]/Q` with a designated maximal ideal, and
//! ideals in them.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::{self, GroebnerBasis, DEFAULT_STEP_LIMIT};
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing};
use once_cell::sync::OnceCell;
use std::fmt;
use std::sync::Arc;

/// A graded-local model of a local ring of characteristic `p`.
///
/// The maximal ideal is generated by the images of the `local` variables
/// (all variables unless a `local` list is declared). `Q + m` is always a
/// proper ideal.
#[derive(Debug)]
pub struct RingPresentation {
    base: PolyRing,
    relations: Vec<Poly>,
    local: Vec<usize>,
    step_limit: u64,
    relation_gb: OnceCell<Arc<GroebnerBasis>>,
}

pub type Ring = Arc<RingPresentation>;

impl RingPresentation {
    pub fn new(
        field: PrimeField,
        vars: Vec<String>,
        order: MonomialOrder,
        relations: Vec<Poly>,
        local: Option<Vec<usize>>,
    ) -> Result<Ring> {
        Self::with_limit(field, vars, order, relations, local, DEFAULT_STEP_LIMIT)
    }

    pub fn with_limit(
        field: PrimeField,
        vars: Vec<String>,
        order: MonomialOrder,
        relations: Vec<Poly>,
        local: Option<Vec<usize>>,
        step_limit: u64,
    ) -> Result<Ring> {
        let base = PolyRing::new(field, vars, order);
        let explicit_local = local.is_some();
        let local = local.unwrap_or_else(|| (0..base.nvars()).collect());
        let relations: Vec<Poly> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        if !explicit_local {
            if let Some(r) = relations.iter().find(|r| r.constant_term() != 0) {
                return Err(Error::NonzeroConstantRelation(base.format(r)));
            }
        }
        let ring = Arc::new(RingPresentation {
            base,
            relations,
            local,
            step_limit,
            relation_gb: OnceCell::new(),
        });
        if explicit_local {
            let m = ring.maximal_ideal();
            if m.gb()?.is_unit() {
                return Err(Error::ImproperMaximalIdeal);
            }
        }
        Ok(ring)
    }

    /// Same presentation with a different step budget.
    pub fn with_step_limit(&self, step_limit: u64) -> Ring {
        Arc::new(RingPresentation {
            base: self.base.clone(),
            relations: self.relations.clone(),
            local: self.local.clone(),
            step_limit,
            relation_gb: self.relation_gb.clone(),
        })
    }

    pub fn base(&self) -> &PolyRing {
        &self.base
    }

    pub fn field(&self) -> &PrimeField {
        self.base.field()
    }

    pub fn characteristic(&self) -> u32 {
        self.base.field().characteristic()
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn is_relation_free(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn local_vars(&self) -> &[usize] {
        &self.local
    }

    pub fn step_limit(&self) -> u64 {
        self.step_limit
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    /// `q = p^e`.
    pub fn prime_power(&self, e: u32) -> Result<u64> {
        (self.characteristic() as u64)
            .checked_pow(e)
            .filter(|q| *q <= u32::MAX as u64)
            .ok_or(Error::ExponentOverflow)
    }

    pub fn relation_gb(&self) -> Result<&GroebnerBasis> {
        self.relation_gb
            .get_or_try_init(|| {
                GroebnerBasis::compute(&self.base, &self.relations, self.step_limit).map(Arc::new)
            })
            .map(|a| a.as_ref())
    }

    /// Unique normal form modulo the relations.
    pub fn canonical_form(&self, f: &Poly) -> Result<Poly> {
        if self.relations.is_empty() {
            return Ok(f.clone());
        }
        Ok(self.relation_gb()?.reduce(&self.base, f))
    }

    /// `canonical_form(f^(p^e))`.
    pub fn frobenius_pow(&self, f: &Poly, e: u32) -> Result<Poly> {
        let q = self.prime_power(e)?;
        let g = self.base.frobenius(f, q)?;
        self.canonical_form(&g)
    }

    pub fn add(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.canonical_form(&self.base.add(f, g))
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.canonical_form(&self.base.mul(f, g))
    }

    pub fn var(&self, i: usize) -> Poly {
        self.base.var(i)
    }

    pub fn parse_poly(&self, src: &str) -> Result<Poly> {
        let f = crate::parse::parse_polynomial(&self.base, src)?;
        self.canonical_form(&f)
    }

    pub fn format(&self, f: &Poly) -> String {
        self.base.format(f)
    }

    /// Homogeneous for the grading that gives local variables degree 1 and
    /// all others degree 0.
    pub fn is_local_homogeneous(&self, f: &Poly) -> bool {
        let deg = |m: &crate::poly::Monomial| -> u32 { self.local.iter().map(|&i| m.exponents()[i]).sum() };
        let mut it = f.terms().iter().map(|(m, _)| deg(m));
        match it.next() {
            Some(d) => it.all(|e| e == d),
            None => true,
        }
    }

    /// Relations all homogeneous for the local grading.
    pub fn is_graded(&self) -> bool {
        self.relations.iter().all(|r| self.is_local_homogeneous(r))
    }

    pub fn maximal_ideal(self: &Arc<Self>) -> Ideal {
        let gens = self.local.iter().map(|&i| self.base.var(i)).collect();
        Ideal::new(self.clone(), gens)
    }

    /// Whether every variable is congruent to a constant modulo `m + Q`,
    /// i.e. `R/m = F_p`.
    pub fn residue_field_is_prime(self: &Arc<Self>) -> Result<bool> {
        let m = self.maximal_ideal();
        let gb = m.gb()?;
        Ok((0..self.nvars()).all(|i| {
            let nf = gb.reduce(&self.base, &self.base.var(i));
            nf.terms().iter().all(|(mono, _)| mono.is_one())
        }))
    }
}

/// A finitely generated ideal of a [`RingPresentation`].
///
/// Generators are stored in canonical form; the Gröbner basis of
/// generators plus relations is computed once on demand.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb: OnceCell<Arc<GroebnerBasis>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", self.display())
    }
}

impl Ideal {
    /// Ideal generated by `gens`; generators are reduced modulo the
    /// relations and zeros dropped.
    pub fn new(ring: Ring, gens: Vec<Poly>) -> Self {
        let gens = gens
            .into_iter()
            .map(|g| {
                if ring.relations.is_empty() {
                    g
                } else {
                    ring.relation_gb()
                        .map(|gb| gb.reduce(&ring.base, &g))
                        .unwrap_or(g)
                }
            })
            .filter(|g| !g.is_zero())
            .collect();
        Ideal {
            ring,
            gens,
            gb: OnceCell::new(),
        }
    }

    pub fn zero(ring: Ring) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: Ring) -> Self {
        let one = ring.base.one();
        Ideal::new(ring, vec![one])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generators followed by the relations: the preimage in the ambient
    /// polynomial ring.
    pub fn preimage_gens(&self) -> Vec<Poly> {
        let mut v = self.gens.clone();
        v.extend(self.ring.relations.iter().cloned());
        v
    }

    /// Reduced Gröbner basis of the preimage `I + Q`.
    pub fn gb(&self) -> Result<&GroebnerBasis> {
        self.gb
            .get_or_try_init(|| {
                GroebnerBasis::compute(&self.ring.base, &self.preimage_gens(), self.ring.step_limit)
                    .map(Arc::new)
            })
            .map(|a| a.as_ref())
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        Ok(self.gb()?.reduce(&self.ring.base, f))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality via identical reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.gb()? == other.gb()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit())
    }

    /// Contained in the maximal ideal.
    pub fn is_proper_local(&self) -> Result<bool> {
        self.ring.maximal_ideal().contains_ideal(self)
    }

    /// Generated by elements homogeneous for the local grading, in a graded
    /// presentation.
    pub fn is_graded(&self) -> bool {
        self.ring.is_graded() && self.gens.iter().all(|g| self.ring.is_local_homogeneous(g))
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    pub fn is_principal_generated(&self) -> bool {
        self.gens.len() <= 1
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(self.ring.clone(), g)
    }

    pub fn with_element(&self, f: &Poly) -> Ideal {
        let mut g = self.gens.clone();
        g.push(f.clone());
        Ideal::new(self.ring.clone(), g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let b = &self.ring.base;
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for x in &self.gens {
            for y in &other.gens {
                g.push(b.mul(x, y));
            }
        }
        dedup(&mut g);
        Ideal::new(self.ring.clone(), g)
    }

    /// `m * I`.
    pub fn times_maximal(&self) -> Ideal {
        self.ring.maximal_ideal().product(self)
    }

    /// A smaller generating set: the generators of the reduced Gröbner
    /// basis that are not already in the relation ideal.
    pub fn trimmed(&self) -> Result<Ideal> {
        let gb = self.gb()?;
        let rel = self.ring.relation_gb()?;
        let gens: Vec<Poly> = gb
            .polys()
            .iter()
            .filter(|g| !rel.contains(&self.ring.base, g))
            .cloned()
            .collect();
        Ok(Ideal::new(self.ring.clone(), gens))
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| self.ring.format(g)).collect();
        format!("({})", parts.join(", "))
    }

    pub fn gens_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.format(g)).collect()
    }

    /// Reduced Gröbner basis elements outside the relation ideal, as
    /// strings (canonical description).
    pub fn gb_strings(&self) -> Result<Vec<String>> {
        Ok(self.trimmed()?.gens_strings())
    }

    /// Cofactors `c_i` with `f = sum c_i g_i + sum d_j r_j` over the
    /// generators `g_i` followed by the relations `r_j`.
    pub fn lift(&self, f: &Poly) -> Result<Option<Vec<Poly>>> {
        groebner::lift(&self.ring.base, &self.preimage_gens(), f, self.ring.step_limit)
    }
}

pub(crate) fn dedup(v: &mut Vec<Poly>) {
    let mut seen = std::collections::HashSet::new();
    v.retain(|p| !p.is_zero() && seen.insert(p.clone()));
}

/// Monomial with the given exponents in `ring`'s ambient polynomial ring.
pub fn monomial(ring: &RingPresentation, exps: &[u32]) -> Poly {
    ring.base().monomial(Monomial::new(smallvec::SmallVec::from_slice(exps)), 1)
}
