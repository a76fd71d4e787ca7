//! Ideal operations built on the Gröbner kernel: membership, colon,
//! intersection, equality and minimal generators modulo `m`.

use crate::error::{Error, Result};
use crate::groebner::{divide_exact, GroebnerBasis};
use crate::linalg::RowSpace;
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing};
use crate::ring::{dedup, Ideal, Ring};
use std::collections::BTreeMap;

pub fn groebner_basis(ideal: &Ideal) -> Result<GroebnerBasis> {
    ideal.gb().cloned()
}

/// `f in I + Q`.
pub fn membership(f: &Poly, ideal: &Ideal) -> Result<bool> {
    ideal.contains(f)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.equals(b)
}

/// Intersection of two ideals of the ambient polynomial ring, by
/// eliminating `t` from `t*A + (1-t)*B`.
pub fn intersect_polys(base: &PolyRing, a: &[Poly], b: &[Poly], limit: u64) -> Result<Vec<Poly>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let n = base.nvars();
    let ext = base.prepend(&["_t".to_string()], MonomialOrder::Block(1));
    let shift: Vec<usize> = (1..=n).collect();
    let t = ext.var(0);
    let one_minus_t = ext.sub(&ext.one(), &t);
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for f in a {
        gens.push(ext.mul(&t, &base.map_into(f, &ext, &shift)));
    }
    for g in b {
        gens.push(ext.mul(&one_minus_t, &base.map_into(g, &ext, &shift)));
    }
    let gb = GroebnerBasis::compute(&ext, &gens, limit)?;
    let back = project_out(gb.polys(), 1, base);
    Ok(back)
}

/// Keeps the polynomials free of the first `k` variables and drops those
/// variables, landing in `base`.
pub(crate) fn project_out(polys: &[Poly], k: usize, base: &PolyRing) -> Vec<Poly> {
    polys
        .iter()
        .filter(|p| {
            p.terms()
                .iter()
                .all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0))
        })
        .map(|p| {
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| {
                    (
                        Monomial::new(smallvec::SmallVec::from_slice(&m.exponents()[k..])),
                        *c,
                    )
                })
                .collect();
            base.from_terms(terms)
        })
        .collect()
}

/// `I ∩ J` in the quotient ring.
pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    let ring = a.ring().clone();
    let polys = intersect_polys(ring.base(), &a.preimage_gens(), &b.preimage_gens(), ring.step_limit())?;
    finish(&ring, polys)
}

fn finish(ring: &Ring, polys: Vec<Poly>) -> Result<Ideal> {
    let mut gens = Vec::with_capacity(polys.len());
    for p in polys {
        let nf = ring.canonical_form(&p)?;
        if !nf.is_zero() {
            gens.push(nf);
        }
    }
    dedup(&mut gens);
    Ok(Ideal::new(ring.clone(), gens))
}

/// `(I + Q) : g` in the ambient ring.
fn colon_element(ideal: &Ideal, g: &Poly) -> Result<Vec<Poly>> {
    let ring = ideal.ring();
    let base = ring.base();
    if ideal.contains(g)? {
        return Ok(vec![base.one()]);
    }
    let inter = intersect_polys(base, &ideal.preimage_gens(), std::slice::from_ref(g), ring.step_limit())?;
    inter
        .iter()
        .map(|h| {
            divide_exact(base, h, g).ok_or_else(|| {
                Error::AuditFailure(format!(
                    "intersection element {} not divisible by {}",
                    base.format(h),
                    base.format(g)
                ))
            })
        })
        .collect()
}

/// `I : J = {r : rJ ⊆ I}`.
pub fn colon(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    let ring = i.ring().clone();
    let base = ring.base();
    let mut acc: Option<Vec<Poly>> = None;
    for g in j.gens() {
        let part = colon_element(i, g)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => {
                let mut with_q = prev;
                with_q.extend(ring.relations().iter().cloned());
                let mut part_q = part;
                part_q.extend(ring.relations().iter().cloned());
                let inter = intersect_polys(base, &with_q, &part_q, ring.step_limit())?;
                GroebnerBasis::compute(base, &inter, ring.step_limit())?.polys().to_vec()
            }
        });
    }
    match acc {
        None => Ok(Ideal::unit(ring)),
        Some(polys) => finish(&ring, polys),
    }
}

/// Representatives of a basis of `I/mI` over `F_p`.
#[derive(Clone, Debug)]
pub struct VectorSpaceBasis {
    ideal: Ideal,
    elements: Vec<Poly>,
    m_ideal: Ideal,
    columns: Vec<Monomial>,
    space: RowSpace,
}

impl VectorSpaceBasis {
    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// `m * I`, with its Gröbner basis cached.
    pub fn m_times_ideal(&self) -> &Ideal {
        &self.m_ideal
    }

    fn vector(&self, f: &Poly) -> Result<Option<Vec<u32>>> {
        let nf = self.m_ideal.normal_form(f)?;
        let mut v = vec![0u32; self.columns.len()];
        for (m, c) in nf.terms() {
            match self.columns.binary_search(m) {
                Ok(k) => v[k] = *c,
                Err(_) => return Ok(None),
            }
        }
        Ok(Some(v))
    }

    /// Coordinates of the image of `f` in `I/mI`; `None` when `f ∉ I`.
    pub fn coordinates(&self, f: &Poly) -> Result<Option<Vec<u32>>> {
        if !self.ideal.contains(f)? {
            return Ok(None);
        }
        match self.vector(f)? {
            Some(v) => Ok(self.space.solve(&v)),
            None => Ok(None),
        }
    }

    /// `sum c_k b_k`.
    pub fn combine(&self, coeffs: &[u32]) -> Poly {
        let base = self.ideal.ring().base();
        let one = Monomial::one(base.nvars());
        self.elements
            .iter()
            .zip(coeffs)
            .fold(base.zero(), |acc, (b, c)| base.add_scaled(&acc, *c, &one, b))
    }
}

/// Minimal generators: a basis of `I/mI`. Needs `I ⊆ m` and `R/m = F_p`.
pub fn min_gens(ideal: &Ideal) -> Result<VectorSpaceBasis> {
    let ring = ideal.ring();
    if !ideal.is_proper_local()? {
        return Err(Error::NotProperLocal);
    }
    if !ring.residue_field_is_prime()? {
        return Err(Error::ResidueFieldNotPrime);
    }
    let m_ideal = ideal.times_maximal();
    let nfs: Vec<Poly> = ideal
        .gens()
        .iter()
        .map(|g| m_ideal.normal_form(g))
        .collect::<Result<_>>()?;
    let mut cols: BTreeMap<Monomial, ()> = BTreeMap::new();
    for nf in &nfs {
        for (m, _) in nf.terms() {
            cols.insert(m.clone(), ());
        }
    }
    let columns: Vec<Monomial> = cols.into_keys().collect();
    let mut space = RowSpace::new(*ring.field(), columns.len());
    let mut elements = Vec::new();
    for (g, nf) in ideal.gens().iter().zip(nfs.iter()) {
        let mut v = vec![0u32; columns.len()];
        for (m, c) in nf.terms() {
            v[columns.binary_search(m).unwrap()] = *c;
        }
        if space.insert(&v) {
            elements.push(g.clone());
        }
    }
    // rebuild the row space over the kept elements only, so coordinates
    // refer to `elements`
    let mut kept = RowSpace::new(*ring.field(), columns.len());
    for g in &elements {
        let nf = m_ideal.normal_form(g)?;
        let mut v = vec![0u32; columns.len()];
        for (m, c) in nf.terms() {
            v[columns.binary_search(m).unwrap()] = *c;
        }
        kept.insert(&v);
    }
    Ok(VectorSpaceBasis {
        ideal: ideal.clone(),
        elements,
        m_ideal,
        columns,
        space: kept,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring_file;

    fn a2(p: u64) -> Ring {
        parse_ring_file(&format!("ring {{ char = {p} ; vars = [x, y] }}")).unwrap().ring
    }

    fn hs() -> Ring {
        parse_ring_file("ring { char = 5 ; vars = [x, y, z, w] ; relations = [x*y - z*w] }")
            .unwrap()
            .ring
    }

    fn ideal(r: &Ring, gens: &str) -> Ideal {
        let polys = crate::parse::parse_polynomial_list(r.base(), gens).unwrap();
        Ideal::new(r.clone(), polys)
    }

    #[test]
    fn hypersurface_basis_of_x() {
        let r = hs();
        let i = ideal(&r, "x");
        assert_eq!(i.gb_strings().unwrap(), vec!["x", "z*w"]);
    }

    #[test]
    fn membership_examples() {
        let r = hs();
        assert!(membership(&r.parse_poly("x*y").unwrap(), &ideal(&r, "z*w")).unwrap());
        assert!(!membership(&r.parse_poly("y").unwrap(), &ideal(&r, "x+y, z, w")).unwrap());
        let a = a2(3);
        assert!(!membership(&a.parse_poly("x").unwrap(), &ideal(&a, "x^2, y^2")).unwrap());
    }

    #[test]
    fn colon_examples() {
        let a = a2(3);
        let c = colon(&ideal(&a, "x^2*y"), &ideal(&a, "x")).unwrap();
        assert!(ideal_equal(&c, &ideal(&a, "x*y")).unwrap());
        let c = colon(&ideal(&a, "x"), &ideal(&a, "x")).unwrap();
        assert!(c.is_unit().unwrap());
        let r = hs();
        let c = colon(&ideal(&r, "z*w"), &ideal(&r, "x")).unwrap();
        assert!(c.contains(&r.parse_poly("y").unwrap()).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let a = a2(3);
        let i = intersect(&ideal(&a, "x"), &ideal(&a, "y")).unwrap();
        assert!(ideal_equal(&i, &ideal(&a, "x*y")).unwrap());
        let i = intersect(&ideal(&a, "x^2, y"), &ideal(&a, "x")).unwrap();
        assert!(ideal_equal(&i, &ideal(&a, "x^2, x*y")).unwrap());
        let j = ideal(&a, "x^2 + y^3, x*y");
        assert!(ideal_equal(&intersect(&j, &j).unwrap(), &j).unwrap());
    }

    #[test]
    fn equality_examples() {
        let a = a2(3);
        assert!(ideal_equal(&ideal(&a, "x, x+y"), &ideal(&a, "x, y")).unwrap());
        assert!(!ideal_equal(&ideal(&a, "x"), &ideal(&a, "x^2")).unwrap());
        let r = hs();
        assert!(ideal_equal(&ideal(&r, "x*y"), &ideal(&r, "z*w")).unwrap());
    }

    #[test]
    fn minimal_generator_counts() {
        let a = a2(3);
        assert_eq!(min_gens(&ideal(&a, "x^2, x*y, y^2, x^2+x*y")).unwrap().dim(), 3);
        let b = min_gens(&ideal(&a, "x, x+y")).unwrap();
        assert_eq!(b.dim(), 2);
        let r = hs();
        assert_eq!(min_gens(&ideal(&r, "x, y, z, w")).unwrap().dim(), 4);
        assert_eq!(min_gens(&ideal(&r, "x, y, z, w, x+y, z*w")).unwrap().dim(), 4);
    }

    #[test]
    fn min_gens_rejects_units() {
        let a = a2(3);
        assert_eq!(min_gens(&ideal(&a, "1 + x")).unwrap_err(), Error::NotProperLocal);
    }

    #[test]
    fn coordinates_in_cotangent_space() {
        let a = a2(5);
        let b = min_gens(&ideal(&a, "x, y")).unwrap();
        let c = b.coordinates(&a.parse_poly("2*x + 3*y + x*y").unwrap()).unwrap().unwrap();
        assert_eq!(c, vec![2, 3]);
        assert!(b.coordinates(&a.parse_poly("1").unwrap()).unwrap().is_none());
    }
}
