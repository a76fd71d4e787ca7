//! Buchberger's algorithm with Gebauer–Möller pair elimination.
//!
//! The engine optionally tracks, for every basis element, its expression in
//! terms of the input generators. Tracking is only switched on when a
//! membership certificate is requested ([`lift`]).

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, PolyRing};
use std::cmp::Ordering;

/// Default number of reduction steps before a computation gives up.
pub const DEFAULT_STEP_LIMIT: u64 = 10_000_000;

/// A reduced Gröbner basis: monic, inter-reduced, sorted ascending by
/// leading monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroebnerBasis {
    polys: Vec<Poly>,
}

#[derive(Clone, Debug)]
struct Row {
    poly: Poly,
    cof: Vec<Poly>,
}

struct Engine<'a> {
    ring: &'a PolyRing,
    track: bool,
    ngens: usize,
    steps: u64,
    limit: u64,
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
}

impl<'a> Engine<'a> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.limit {
            Err(Error::BudgetExceeded {
                what: "groebner basis",
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    fn combine(&self, a: &[Poly], c: u32, m: &Monomial, b: &[Poly]) -> Vec<Poly> {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| self.ring.add_scaled(x, c, m, y))
            .collect()
    }

    fn scale_row(&self, row: &Row, c: u32) -> Row {
        Row {
            poly: self.ring.scale(&row.poly, c),
            cof: row.cof.iter().map(|p| self.ring.scale(p, c)).collect(),
        }
    }

    fn monic(&self, row: Row) -> Row {
        match row.poly.lead() {
            Some((_, c)) if *c != 1 => {
                let inv = self.ring.field().inv(*c);
                self.scale_row(&row, inv)
            }
            _ => row,
        }
    }

    /// Full reduction of `row` by the rows in `basis[active]` (monic).
    fn reduce(&mut self, row: Row, basis: &[Row], active: &[usize]) -> Result<Row> {
        let fld = *self.ring.field();
        let mut p = row.poly;
        let mut cof = row.cof;
        let mut rem: Vec<(Monomial, u32)> = Vec::new();
        while let Some((lm, lc)) = p.lead().cloned() {
            let reducer = active
                .iter()
                .copied()
                .find(|&k| basis[k].poly.lead_monomial().unwrap().divides(&lm));
            match reducer {
                Some(k) => {
                    self.tick()?;
                    let g = &basis[k];
                    let q = g.poly.lead_monomial().unwrap().quotient(&lm);
                    let c = fld.neg(lc);
                    p = self.ring.add_scaled(&p, c, &q, &g.poly);
                    if self.track {
                        cof = self.combine(&cof, c, &q, &g.cof);
                    }
                }
                None => {
                    let mut terms = p.into_terms();
                    let t = terms.remove(0);
                    rem.push(t);
                    p = self.ring.from_terms(terms);
                }
            }
        }
        Ok(Row {
            poly: self.ring.from_terms(rem),
            cof,
        })
    }

    fn spoly(&self, a: &Row, b: &Row) -> Row {
        let la = a.poly.lead_monomial().unwrap();
        let lb = b.poly.lead_monomial().unwrap();
        let l = la.lcm(lb);
        let ma = la.quotient(&l);
        let mb = lb.quotient(&l);
        let fld = self.ring.field();
        let zero = self.ring.zero();
        let p = self
            .ring
            .add_scaled(&self.ring.add_scaled(&zero, 1, &ma, &a.poly), fld.neg(1), &mb, &b.poly);
        let cof = if self.track {
            let tmp = self.combine(&vec![zero.clone(); self.ngens], 1, &ma, &a.cof);
            self.combine(&tmp, fld.neg(1), &mb, &b.cof)
        } else {
            Vec::new()
        };
        Row { poly: p, cof }
    }

    fn lcm_of(&self, basis: &[Row], pr: &Pair) -> Monomial {
        basis[pr.i]
            .poly
            .lead_monomial()
            .unwrap()
            .lcm(basis[pr.j].poly.lead_monomial().unwrap())
    }

    /// Gebauer–Möller update after appending `basis[h]`.
    fn update(&self, basis: &[Row], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
        let lh = basis[h].poly.lead_monomial().unwrap().clone();
        let lm = |k: usize| basis[k].poly.lead_monomial().unwrap();

        let mut c: Vec<usize> = active.clone();
        let mut d: Vec<usize> = Vec::new();
        while let Some(g1) = (!c.is_empty()).then(|| c.remove(0)) {
            let l1 = lm(g1).lcm(&lh);
            let keep = lm(g1).coprime(&lh)
                || (!c.iter().any(|&g2| lm(g2).lcm(&lh).divides(&l1))
                    && !d.iter().any(|&g2| lm(g2).lcm(&lh).divides(&l1)));
            if keep {
                d.push(g1);
            }
        }
        let e: Vec<usize> = d.into_iter().filter(|&g| !lm(g).coprime(&lh)).collect();

        pairs.retain(|pr| {
            let l = self.lcm_of(basis, pr);
            !(lh.divides(&l) && lm(pr.i).lcm(&lh) != l && lm(pr.j).lcm(&lh) != l)
        });
        pairs.extend(e.into_iter().map(|g| Pair { i: g, j: h }));

        active.retain(|&g| !lh.divides(lm(g)));
        active.push(h);
    }

    fn run(&mut self, gens: &[Poly]) -> Result<Vec<Row>> {
        let zero = self.ring.zero();
        let mut basis: Vec<Row> = Vec::new();
        let mut active: Vec<usize> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        for (idx, g) in gens.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let cof = if self.track {
                let mut v = vec![zero.clone(); self.ngens];
                v[idx] = self.ring.one();
                v
            } else {
                Vec::new()
            };
            let row = self.reduce(Row { poly: g.clone(), cof }, &basis, &active)?;
            if row.poly.is_zero() {
                continue;
            }
            let row = self.monic(row);
            basis.push(row);
            let h = basis.len() - 1;
            self.update(&basis, &mut active, &mut pairs, h);
        }

        while !pairs.is_empty() {
            self.tick()?;
            // normal selection strategy: smallest lcm, ties by index
            let mut best = 0;
            let mut best_l = self.lcm_of(&basis, &pairs[0]);
            for (k, pr) in pairs.iter().enumerate().skip(1) {
                let l = self.lcm_of(&basis, pr);
                let ord = self.ring.cmp_monomials(&l, &best_l);
                if ord == Ordering::Less {
                    best = k;
                    best_l = l;
                }
            }
            let pr = pairs.remove(best);
            let s = self.spoly(&basis[pr.i], &basis[pr.j]);
            let h = self.reduce(s, &basis, &active)?;
            if h.poly.is_zero() {
                continue;
            }
            let h = self.monic(h);
            basis.push(h);
            let hi = basis.len() - 1;
            self.update(&basis, &mut active, &mut pairs, hi);
        }

        // minimal basis, then inter-reduce the tails
        let mut min: Vec<usize> = Vec::new();
        for &k in &active {
            let lk = basis[k].poly.lead_monomial().unwrap();
            let dominated = active.iter().any(|&o| {
                o != k && {
                    let lo = basis[o].poly.lead_monomial().unwrap();
                    lo.divides(lk) && (lo != lk || o < k)
                }
            });
            if !dominated {
                min.push(k);
            }
        }
        let mut out = Vec::with_capacity(min.len());
        for &k in &min {
            let others: Vec<usize> = min.iter().copied().filter(|&o| o != k).collect();
            let row = basis[k].clone();
            // the leading term is irreducible by the others; reduce the tail
            let lead = row.poly.lead().cloned().unwrap();
            let tail = self.ring.sub(&row.poly, &self.ring.monomial(lead.0.clone(), lead.1));
            let lead_cof_row = Row {
                poly: tail,
                cof: row.cof.clone(),
            };
            let red = self.reduce(lead_cof_row, &basis, &others)?;
            let poly = self.ring.add(&red.poly, &self.ring.monomial(lead.0, lead.1));
            out.push(Row { poly, cof: red.cof });
        }
        out.sort_by(|a, b| {
            self.ring
                .cmp_monomials(a.poly.lead_monomial().unwrap(), b.poly.lead_monomial().unwrap())
        });
        Ok(out)
    }
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the ideal generated by `gens`.
    pub fn compute(ring: &PolyRing, gens: &[Poly], limit: u64) -> Result<Self> {
        let mut eng = Engine {
            ring,
            track: false,
            ngens: gens.len(),
            steps: 0,
            limit,
        };
        let rows = eng.run(gens)?;
        Ok(GroebnerBasis {
            polys: rows.into_iter().map(|r| r.poly).collect(),
        })
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// True for the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].lead_monomial().is_some_and(|m| m.is_one())
    }

    /// Normal form of `f`: the unique remainder modulo the basis.
    pub fn reduce(&self, ring: &PolyRing, f: &Poly) -> Poly {
        let fld = *ring.field();
        let mut p = f.clone();
        let mut rem = Vec::new();
        while let Some((lm, lc)) = p.lead().cloned() {
            match self
                .polys
                .iter()
                .find(|g| g.lead_monomial().unwrap().divides(&lm))
            {
                Some(g) => {
                    let q = g.lead_monomial().unwrap().quotient(&lm);
                    p = ring.add_scaled(&p, fld.neg(lc), &q, g);
                }
                None => {
                    let mut terms = p.into_terms();
                    rem.push(terms.remove(0));
                    p = ring.from_terms(terms);
                }
            }
        }
        ring.from_terms(rem)
    }

    pub fn contains(&self, ring: &PolyRing, f: &Poly) -> bool {
        self.reduce(ring, f).is_zero()
    }

    /// Leading monomials, in basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| p.lead_monomial().unwrap().clone())
            .collect()
    }
}

/// Expresses `f` as `sum cof_i * gens_i`, if `f` lies in the ideal.
pub fn lift(ring: &PolyRing, gens: &[Poly], f: &Poly, limit: u64) -> Result<Option<Vec<Poly>>> {
    let mut eng = Engine {
        ring,
        track: true,
        ngens: gens.len(),
        steps: 0,
        limit,
    };
    let rows = eng.run(gens)?;
    let active: Vec<usize> = (0..rows.len()).collect();
    let zero = ring.zero();
    let start = Row {
        poly: f.clone(),
        cof: vec![zero; gens.len()],
    };
    // reduce tracks -sum(quotients) in cof
    let red = eng.reduce(start, &rows, &active)?;
    if !red.poly.is_zero() {
        return Ok(None);
    }
    Ok(Some(red.cof.iter().map(|c| ring.neg(c)).collect()))
}

/// Exact division `f / g`, `None` when `g` does not divide `f`.
pub fn divide_exact(ring: &PolyRing, f: &Poly, g: &Poly) -> Option<Poly> {
    let fld = *ring.field();
    let (lg, cg) = g.lead()?.clone();
    let inv = fld.inv(cg);
    let mut p = f.clone();
    let mut quot = Vec::new();
    while let Some((lm, lc)) = p.lead().cloned() {
        if !lg.divides(&lm) {
            return None;
        }
        let m = lg.quotient(&lm);
        let c = fld.mul(lc, inv);
        quot.push((m.clone(), c));
        p = ring.add_scaled(&p, fld.neg(c), &m, g);
    }
    Some(ring.from_terms(quot))
}
