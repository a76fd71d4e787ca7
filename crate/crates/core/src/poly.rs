//! Sparse multivariate polynomials over `F_p`.
//!
//! A [`Poly`] is a list of terms sorted strictly descending in the monomial
//! order of the [`PolyRing`] that built it. Polynomials do not carry their
//! ring; every operation goes through the ring so orders can never be mixed
//! silently.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use serde::Serialize;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt::Write as _;

pub type Exponents = SmallVec<[u32; 8]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    exps: Exponents,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn new(exps: impl Into<Exponents>) -> Self {
        let exps = exps.into();
        let deg = exps.iter().sum();
        Monomial { deg, exps }
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = e;
        m.deg = e;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            deg: self.deg + other.deg,
            exps,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(a, b)| a - b)
            .collect();
        Monomial {
            deg: other.deg - self.deg,
            exps,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect::<Exponents>(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, q: u64) -> Result<Monomial> {
        let q32 = u32::try_from(q).map_err(|_| Error::ExponentOverflow)?;
        let exps = self
            .exps
            .iter()
            .map(|a| a.checked_mul(q32).ok_or(Error::ExponentOverflow))
            .collect::<Result<Exponents>>()?;
        let deg = self.deg.checked_mul(q32).ok_or(Error::ExponentOverflow)?;
        Ok(Monomial { deg, exps })
    }
}

/// Monomial orders. Variables are ranked in declaration order (`x_0 > x_1 > ...`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    #[serde(rename = "glex")]
    GradedLex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest.
    /// An elimination order for the first block.
    Block(usize),
}

fn grevlex(a: &[u32], da: u32, b: &[u32], db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GradedLex => a.deg.cmp(&b.deg).then_with(|| a.exps.cmp(&b.exps)),
            MonomialOrder::Grevlex => grevlex(&a.exps, a.deg, &b.exps, b.deg),
            MonomialOrder::Block(k) => {
                let (a1, a2) = a.exps.split_at(*k);
                let (b1, b2) = b.exps.split_at(*k);
                let da1: u32 = a1.iter().sum();
                let db1: u32 = b1.iter().sum();
                grevlex(a1, da1, b1, db1)
                    .then_with(|| grevlex(a2, a.deg - da1, b2, b.deg - db1))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::GradedLex => "glex".into(),
            MonomialOrder::Block(k) => format!("block({k})"),
        }
    }
}

pub type Term = (Monomial, u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<Term>,
}

impl Poly {
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.deg == w[1].0.deg)
    }

    /// Smallest total degree of a term, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.deg).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.deg).max()
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }
}

/// `F_p[x_1, ..., x_n]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    names: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: PrimeField, names: Vec<String>, order: MonomialOrder) -> Self {
        PolyRing {
            field,
            names,
            order,
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> Poly {
        Poly::default()
    }

    pub fn constant(&self, c: u32) -> Poly {
        if c.is_multiple_of(self.field.characteristic()) {
            Poly::default()
        } else {
            Poly {
                terms: vec![(Monomial::one(self.nvars()), c % self.field.characteristic())],
            }
        }
    }

    pub fn one(&self) -> Poly {
        self.constant(1)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly {
            terms: vec![(Monomial::var(self.nvars(), i, 1), 1)],
        }
    }

    pub fn monomial(&self, m: Monomial, c: u32) -> Poly {
        debug_assert_eq!(m.nvars(), self.nvars());
        let c = c % self.field.characteristic();
        if c == 0 {
            Poly::default()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(&self, mut terms: Vec<Term>) -> Poly {
        let f = self.field;
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % f.characteristic();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Poly { terms: out }
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// `f + c * m * g`, the workhorse of reduction.
    pub fn add_scaled(&self, f: &Poly, c: u32, m: &Monomial, g: &Poly) -> Poly {
        let fld = self.field;
        if c == 0 || g.is_zero() {
            return f.clone();
        }
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let mut pending: Option<Term> = None;
        loop {
            if pending.is_none() && j < g.terms.len() {
                let (gm, gc) = &g.terms[j];
                pending = Some((m.mul(gm), fld.mul(c, *gc)));
                j += 1;
            }
            match (f.terms.get(i), pending.as_ref()) {
                (None, None) => break,
                (Some(t), None) => {
                    out.push(t.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                }
                (Some(t), Some(p)) => match self.order.cmp(&t.0, &p.0) {
                    Ordering::Greater => {
                        out.push(t.clone());
                        i += 1;
                    }
                    Ordering::Less => out.push(pending.take().unwrap()),
                    Ordering::Equal => {
                        let s = fld.add(t.1, p.1);
                        if s != 0 {
                            out.push((t.0.clone(), s));
                        }
                        i += 1;
                        pending = None;
                    }
                },
            }
        }
        Poly { terms: out }
    }

    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        self.add_scaled(f, 1, &Monomial::one(self.nvars()), g)
    }

    pub fn sub(&self, f: &Poly, g: &Poly) -> Poly {
        self.add_scaled(f, self.field.neg(1), &Monomial::one(self.nvars()), g)
    }

    pub fn neg(&self, f: &Poly) -> Poly {
        self.scale(f, self.field.neg(1))
    }

    pub fn scale(&self, f: &Poly, c: u32) -> Poly {
        let c = c % self.field.characteristic();
        if c == 0 {
            return Poly::default();
        }
        Poly {
            terms: f
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.field.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, f: &Poly, m: &Monomial, c: u32) -> Poly {
        let c = c % self.field.characteristic();
        if c == 0 {
            return Poly::default();
        }
        // multiplication by a monomial preserves the order
        Poly {
            terms: f
                .terms
                .iter()
                .map(|(fm, a)| (fm.mul(m), self.field.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        let mut acc = Poly::default();
        for (m, c) in &small.terms {
            acc = self.add_scaled(&acc, *c, m, large);
        }
        acc
    }

    pub fn pow(&self, f: &Poly, mut e: u64) -> Poly {
        let mut base = f.clone();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        r
    }

    /// `f^q` for `q` a power of the characteristic: coefficients are fixed
    /// by Frobenius on `F_p`, so only exponents scale.
    pub fn frobenius(&self, f: &Poly, q: u64) -> Result<Poly> {
        let terms = f
            .terms
            .iter()
            .map(|(m, c)| Ok((m.pow(q)?, *c)))
            .collect::<Result<Vec<_>>>()?;
        // x^a > x^b iff x^{qa} > x^{qb} for every monomial order
        Ok(Poly { terms })
    }

    pub fn make_monic(&self, f: &Poly) -> Poly {
        match f.lead() {
            Some((_, c)) if *c != 1 => self.scale(f, self.field.inv(*c)),
            _ => f.clone(),
        }
    }

    /// Degree-`d` homogeneous component.
    pub fn homogeneous_part(&self, f: &Poly, d: u32) -> Poly {
        Poly {
            terms: f.terms.iter().filter(|t| t.0.deg == d).cloned().collect(),
        }
    }

    /// Moves `f` into `target`, renaming variable `i` of `self` to
    /// `map[i]` in `target`.
    pub fn map_into(&self, f: &Poly, target: &PolyRing, map: &[usize]) -> Poly {
        let n = target.nvars();
        let terms = f
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e: Exponents = SmallVec::from_elem(0, n);
                for (i, a) in m.exps.iter().enumerate() {
                    e[map[i]] += a;
                }
                (Monomial::new(e), *c)
            })
            .collect();
        target.from_terms(terms)
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing {
            field: self.field,
            names: self.names.clone(),
            order,
        }
    }

    /// Adds fresh variables after the existing ones.
    pub fn extend(&self, extra: &[String], order: MonomialOrder) -> PolyRing {
        let mut names = self.names.clone();
        names.extend(extra.iter().cloned());
        PolyRing {
            field: self.field,
            names,
            order,
        }
    }

    /// Adds fresh variables before the existing ones.
    pub fn prepend(&self, extra: &[String], order: MonomialOrder) -> PolyRing {
        let mut names: Vec<String> = extra.to_vec();
        names.extend(self.names.iter().cloned());
        PolyRing {
            field: self.field,
            names,
            order,
        }
    }

    pub fn evaluate_monomial_sign(&self, c: u32) -> i64 {
        self.field.signed(c)
    }

    pub fn format(&self, f: &Poly) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in f.terms.iter().enumerate() {
            let sc = self.field.signed(*c);
            let mag = sc.unsigned_abs();
            if k == 0 {
                if sc < 0 {
                    s.push('-');
                }
            } else if sc < 0 {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            let mut parts: Vec<String> = Vec::new();
            if mag != 1 || m.is_one() {
                parts.push(mag.to_string());
            }
            for (i, e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.names[i].clone()),
                    _ => parts.push(format!("{}^{}", self.names[i], e)),
                }
            }
            let _ = write!(s, "{}", parts.join("*"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, n: usize, order: MonomialOrder) -> PolyRing {
        let names = (0..n).map(|i| format!("x{i}")).collect();
        PolyRing::new(PrimeField::new(p).unwrap(), names, order)
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        let o = MonomialOrder::Grevlex;
        // x^2 > xy > y^2 > xz > yz > z^2 for degree 2 in three variables
        let seq = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]];
        for w in seq.windows(2) {
            let a = Monomial::new(SmallVec::from_slice(&w[0]));
            let b = Monomial::new(SmallVec::from_slice(&w[1]));
            assert_eq!(o.cmp(&a, &b), Ordering::Greater, "{:?} vs {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::Block(1);
        let a = Monomial::new(SmallVec::from_slice(&[1, 0, 0]));
        let b = Monomial::new(SmallVec::from_slice(&[0, 5, 5]));
        assert_eq!(o.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn freshmans_dream() {
        let r = ring(3, 2, MonomialOrder::Grevlex);
        let f = r.add(&r.var(0), &r.var(1));
        assert_eq!(r.pow(&f, 3), r.frobenius(&f, 3).unwrap());
        assert_eq!(r.format(&r.pow(&f, 3)), "x0^3 + x1^3");
    }

    #[test]
    fn cancellation_removes_terms() {
        let r = ring(5, 2, MonomialOrder::Lex);
        let f = r.add(&r.var(0), &r.var(1));
        assert!(r.sub(&f, &f).is_zero());
        let g = r.mul(&f, &r.sub(&r.var(0), &r.var(1)));
        assert_eq!(r.format(&g), "x0^2 - x1^2");
    }
}
