//! Monomial arcs `t -> (c_1 t^w_1, ..., c_n t^w_n)` through the origin on
//! which every relation vanishes. Each gives a ring map `R -> K[t]`, and
//! `ord_t` of the image bounds integral closures from above: `x ∈ cl(I)`
//! forces `ord(x) >= ord(I)`.

use crate::field::{Ext2, QuadraticExt};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::ring::{Ideal, RingPresentation};
use crate::verdict::{Certificate, Status, Verdict};
use std::collections::BTreeMap;

/// Upper bound on arcs tried per family.
pub const ARC_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialArc {
    pub coords: Vec<Ext2>,
    pub weights: Vec<u32>,
    pub extension: bool,
}

impl MonomialArc {
    /// `ord_t f(arc)`, `None` when the image is zero.
    pub fn order(&self, ext: &QuadraticExt, f: &Poly) -> Option<u32> {
        let mut acc: BTreeMap<u64, Ext2> = BTreeMap::new();
        'terms: for (m, c) in f.terms() {
            let mut v = ext.embed(*c);
            let mut deg = 0u64;
            for (i, &a) in m.exponents().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if ext.is_zero(self.coords[i]) {
                    continue 'terms;
                }
                v = ext.mul(v, ext.pow(self.coords[i], a as u64));
                deg += self.weights[i] as u64 * a as u64;
            }
            let slot = acc.entry(deg).or_insert((0, 0));
            *slot = ext.add(*slot, v);
        }
        acc.into_iter()
            .find(|(_, v)| !ext.is_zero(*v))
            .map(|(d, _)| d.min(u32::MAX as u64) as u32)
    }

    fn ideal_order(&self, ext: &QuadraticExt, gens: &[Poly]) -> Option<u32> {
        gens.iter().filter_map(|g| self.order(ext, g)).min()
    }

    fn describe(&self, ext: &QuadraticExt) -> Vec<String> {
        self.coords
            .iter()
            .map(|&(a0, a1)| {
                if a1 == 0 {
                    ext.base.signed(a0).to_string()
                } else {
                    format!("{} + {}*s", ext.base.signed(a0), ext.base.signed(a1))
                }
            })
            .collect()
    }
}

/// Arcs are only meaningful when the maximal ideal is generated by all
/// variables (the arc is centred at the origin).
pub fn applicable(ring: &RingPresentation) -> bool {
    ring.local_vars().len() == ring.nvars()
}

/// Searches for an arc with `ord(x) < ord(I)`; returns an OUT verdict.
pub fn separating_arc(x: &Poly, ideal: &Ideal) -> Option<Verdict> {
    let ring = ideal.ring();
    if !applicable(ring) || x.is_zero() {
        return None;
    }
    let f = *ring.field();
    let ext = QuadraticExt::new(f);
    let n = ring.nvars();
    let gens = ideal.gens();
    let rels = ring.relations();
    let check = |arc: &MonomialArc| -> Option<Verdict> {
        if rels.iter().any(|r| arc.order(&ext, r).is_some()) {
            return None;
        }
        let vx = arc.order(&ext, x)?;
        let vi = arc.ideal_order(&ext, gens);
        if vi.is_some_and(|vi| vi <= vx) {
            return None;
        }
        let (b, c) = ext.modulus();
        let field = if arc.extension {
            format!(
                "F_{}[s]/(s^2 - {}*s - {})",
                f.characteristic(),
                f.signed(b),
                f.signed(c)
            )
        } else {
            format!("F_{}", f.characteristic())
        };
        Some(Verdict::new(
            Status::Out,
            Certificate::ArcValuation {
                field,
                coordinates: arc.describe(&ext),
                weights: arc.weights.clone(),
                order_of_element: vx,
                order_of_ideal: vi,
            },
        ))
    };

    // linear arcs through the common kernel of the linear parts
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for g in gens.iter().chain(rels) {
        let mut row = vec![0u32; n];
        for (m, c) in g.terms() {
            if m.degree() == 1 {
                let i = m.exponents().iter().position(|&a| a == 1).unwrap();
                row[i] = *c;
            }
        }
        if row.iter().any(|&c| c != 0) {
            rows.push(row);
        }
    }
    let kernel = kernel_basis(&f, &rows, n);
    let k = kernel.len();
    for extension in [false, true] {
        let scalars: Vec<Ext2> = if extension {
            ext.elements().collect()
        } else {
            (0..f.characteristic()).map(|a| (a, 0)).collect()
        };
        let s = scalars.len();
        let total = (s as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        if total > ARC_CAP as u64 {
            continue;
        }
        let mut digits = vec![0usize; k];
        for _ in 0..total {
            let mut coords = vec![(0u32, 0u32); n];
            for (d, v) in digits.iter().zip(&kernel) {
                let a = scalars[*d];
                for (c, &vi) in coords.iter_mut().zip(v) {
                    *c = ext.add(*c, ext.mul(a, ext.embed(vi)));
                }
            }
            let is_new = !extension || coords.iter().any(|c| c.1 != 0);
            if is_new && coords.iter().any(|c| !ext.is_zero(*c)) {
                let arc = MonomialArc {
                    coords,
                    weights: vec![1; n],
                    extension,
                };
                if let Some(v) = check(&arc) {
                    return Some(v);
                }
            }
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < s {
                    break;
                }
                *d = 0;
            }
        }
    }

    // weighted 0/1 arcs
    let total = 6u64.checked_pow(n as u32).unwrap_or(u64::MAX);
    if total <= ARC_CAP as u64 {
        for code in 0..total {
            let mut c = code;
            let mut coords = Vec::with_capacity(n);
            let mut weights = Vec::with_capacity(n);
            for _ in 0..n {
                let d = (c % 6) as u32;
                c /= 6;
                coords.push(((d / 3).min(1) ^ 1, 0));
                weights.push(d % 3 + 1);
            }
            if coords.iter().all(|c| c.0 == 0) {
                continue;
            }
            let arc = MonomialArc {
                coords,
                weights,
                extension: false,
            };
            if let Some(v) = check(&arc) {
                return Some(v);
            }
        }
    }
    None
}

/// Basis of `{v : rows . v = 0}` over `F_p`.
fn kernel_basis(f: &crate::field::PrimeField, rows: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    let (r, pivots) = Matrix::new(rows.to_vec(), n).rref(f);
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&j| {
            let mut v = vec![0u32; n];
            v[j] = 1;
            for (row, &pc) in r.rows.iter().zip(&pivots) {
                v[pc] = f.neg(row[j]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring_file;

    fn hs() -> crate::RingFile {
        parse_ring_file("ring { char = 5; vars = [x, y, z, w]; relations = [x*y - z*w] }").unwrap()
    }

    #[test]
    fn variables_are_independent_in_the_hypersurface() {
        let rf = hs();
        let r = rf.ring.clone();
        let names = ["x", "y", "z", "w"];
        for (i, v) in names.iter().enumerate() {
            let others: Vec<_> = names
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, s)| r.parse_poly(s).unwrap())
                .collect();
            let ideal = Ideal::new(r.clone(), others);
            let verdict = separating_arc(&r.parse_poly(v).unwrap(), &ideal).expect("arc");
            assert_eq!(verdict.status, Status::Out);
        }
    }

    #[test]
    fn no_arc_separates_an_integral_element() {
        let rf = hs();
        let r = rf.ring.clone();
        let k = Ideal::new(r.clone(), ["x+y", "z", "w"].iter().map(|s| r.parse_poly(s).unwrap()).collect());
        assert!(separating_arc(&r.parse_poly("y").unwrap(), &k).is_none());
    }

    #[test]
    fn two_dimensional_linear_sections_miss_the_maximal_ideal() {
        let rf = hs();
        let r = rf.ring.clone();
        let m2 = r.maximal_ideal().product(&r.maximal_ideal());
        let k = Ideal::new(r.clone(), ["x+y", "z"].iter().map(|s| r.parse_poly(s).unwrap()).collect()).sum(&m2);
        let out = ["x", "y", "z", "w"]
            .iter()
            .any(|v| separating_arc(&r.parse_poly(v).unwrap(), &k).is_some());
        assert!(out);
    }

    #[test]
    fn extension_points_split_binary_quadrics() {
        let rf = parse_ring_file("ring { char = 3; vars = [x, y]; relations = [] }").unwrap();
        let r = rf.ring.clone();
        let m3 = r.maximal_ideal().product(&r.maximal_ideal()).product(&r.maximal_ideal());
        let k = Ideal::new(r.clone(), vec![r.parse_poly("x^2 + y^2").unwrap()]).sum(&m3);
        let v = separating_arc(&r.parse_poly("x*y").unwrap(), &k).unwrap();
        assert!(matches!(v.certificate, Certificate::ArcValuation { order_of_element: 2, .. }));
    }
}
