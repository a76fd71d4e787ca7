//! Newton polyhedra of monomial ideals: exact membership by linear
//! programming over the rationals, and the integral closure of a monomial
//! ideal in a polynomial ring.

use crate::error::{Error, Result};
use crate::ring::{monomial, Ideal};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Largest exponent box searched for generators of a closure.
pub const BOX_LIMIT: u64 = 200_000;

/// A point of the Newton polyhedron written as a convex combination of
/// generator exponents plus a non-negative remainder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HullWitness {
    pub point: Vec<u32>,
    /// `(lambda_j, b_j)` with `sum lambda_j = 1` and `sum lambda_j b_j <= point`.
    pub weights: Vec<(String, Vec<u32>)>,
}

impl HullWitness {
    pub fn verify(&self) -> bool {
        let mut total = BigRational::zero();
        let mut acc = vec![BigRational::zero(); self.point.len()];
        for (l, b) in &self.weights {
            let Ok(l) = l.parse::<BigRational>() else {
                return false;
            };
            if l.is_negative() || b.len() != self.point.len() {
                return false;
            }
            for (a, &e) in acc.iter_mut().zip(b) {
                *a += &l * BigRational::from_integer(BigInt::from(e));
            }
            total += l;
        }
        total.is_one()
            && acc
                .iter()
                .zip(&self.point)
                .all(|(a, &e)| *a <= BigRational::from_integer(BigInt::from(e)))
    }
}

/// Exponent vectors of a monomial ideal, or an error if some generator is
/// not a monomial.
pub fn exponents_of(ideal: &Ideal) -> Result<Vec<Vec<u32>>> {
    if !ideal.is_monomial() {
        return Err(Error::Unsupported("generators are not monomials".into()));
    }
    Ok(ideal
        .gens()
        .iter()
        .map(|g| g.terms()[0].0.exponents().to_vec())
        .collect())
}

/// Whether `a` lies in `conv(B) + R_{>=0}^n`, with a witness when it does.
pub fn in_polyhedron(b: &[Vec<u32>], a: &[u32]) -> Option<HullWitness> {
    if b.is_empty() {
        return None;
    }
    if let Some(bj) = b.iter().find(|bj| bj.iter().zip(a).all(|(x, y)| x <= y)) {
        return Some(HullWitness {
            point: a.to_vec(),
            weights: vec![("1".into(), bj.clone())],
        });
    }
    // B lambda + s = a, 1.lambda = 1, lambda, s >= 0
    let n = a.len();
    let m = b.len();
    let q = |v: u32| BigRational::from_integer(BigInt::from(v));
    let mut rows = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut r: Vec<BigRational> = b.iter().map(|bj| q(bj[i])).collect();
        r.extend((0..n).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
        rows.push(r);
        rhs.push(q(a[i]));
    }
    let mut last = vec![BigRational::one(); m];
    last.extend((0..n).map(|_| BigRational::zero()));
    rows.push(last);
    rhs.push(BigRational::one());
    let x = feasible_point(rows, rhs)?;
    let weights = x[..m]
        .iter()
        .zip(b)
        .filter(|(l, _)| !l.is_zero())
        .map(|(l, bj)| (l.to_string(), bj.clone()))
        .collect();
    Some(HullWitness {
        point: a.to_vec(),
        weights,
    })
}

/// A point of `{x >= 0 : A x = b}` for `b >= 0`, by phase-one simplex with
/// Bland's rule in exact arithmetic.
fn feasible_point(a: Vec<Vec<BigRational>>, b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = a
        .into_iter()
        .zip(b)
        .enumerate()
        .map(|(i, (mut r, bi))| {
            r.extend((0..m).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
            r.push(bi);
            r
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // objective: minimise the sum of artificials
    let mut cost = vec![BigRational::zero(); width];
    for r in &t {
        for j in 0..n {
            cost[j] -= &r[j];
        }
        cost[width - 1] -= &r[width - 1];
    }
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, r) in t.iter().enumerate() {
            if r[enter].is_positive() {
                let ratio = &r[width - 1] / &r[enter];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (pr, _) = leave?;
        let piv = t[pr][enter].clone();
        for v in t[pr].iter_mut() {
            *v /= &piv;
        }
        let prow = t[pr].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != pr && !r[enter].is_zero() {
                let f = r[enter].clone();
                for (v, pv) in r.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
        let f = cost[enter].clone();
        for (v, pv) in cost.iter_mut().zip(&prow) {
            *v -= &f * pv;
        }
        basis[pr] = enter;
    }
    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

/// Integral closure of a monomial ideal of a polynomial ring: the monomials
/// whose exponents lie in the Newton polyhedron.
pub fn newton_closure_monomial(ideal: &Ideal) -> Result<Ideal> {
    let ring = ideal.ring();
    if !ring.is_relation_free() {
        return Err(Error::Unsupported("Newton closure needs a polynomial ring".into()));
    }
    let b = exponents_of(ideal)?;
    if b.is_empty() {
        return Ok(ideal.clone());
    }
    let n = ring.nvars();
    // minimal generators have every coordinate at most the largest
    // generator exponent in that coordinate
    let maxes: Vec<u32> = (0..n).map(|i| b.iter().map(|e| e[i]).max().unwrap_or(0)).collect();
    let size = maxes
        .iter()
        .try_fold(1u64, |acc, &m| acc.checked_mul(m as u64 + 1))
        .filter(|s| *s <= BOX_LIMIT)
        .ok_or_else(|| Error::Unsupported("exponent box too large".into()))?;
    let mut members: Vec<Vec<u32>> = Vec::new();
    let mut cur = vec![0u32; n];
    for _ in 0..size {
        let dominated = members.iter().any(|m| m.iter().zip(&cur).all(|(x, y)| x <= y));
        if !dominated && in_polyhedron(&b, &cur).is_some() {
            members.push(cur.clone());
        }
        for i in (0..n).rev() {
            if cur[i] < maxes[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
    let minimal: Vec<&Vec<u32>> = members
        .iter()
        .filter(|a| {
            !members
                .iter()
                .any(|c| c != *a && c.iter().zip(a.iter()).all(|(x, y)| x <= y))
        })
        .collect();
    let gens = minimal.into_iter().map(|e| monomial(ring, e)).collect();
    Ok(Ideal::new(ring.clone(), gens))
}

/// Exponent vectors of every term of every generator: the monomial ideal
/// they span contains `I`, so its closure contains the closure of `I`.
pub fn term_exponents(ideal: &Ideal) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = ideal
        .gens()
        .iter()
        .flat_map(|g| g.terms().iter().map(|(m, _)| m.exponents().to_vec()))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring_file;

    fn closure_of(src: &str) -> Vec<String> {
        let rf = parse_ring_file(&format!("ring {{ char = 3; vars = [x, y]; relations = [] }}\nideal I = {src}")).unwrap();
        let mut v = newton_closure_monomial(rf.ideal("I").unwrap()).unwrap().gb_strings().unwrap();
        v.sort();
        v
    }

    #[test]
    fn closures_of_small_monomial_ideals() {
        assert_eq!(closure_of("[x^3, y^3]"), vec!["x*y^2", "x^2*y", "x^3", "y^3"]);
        assert_eq!(closure_of("[x^2, y^2]"), vec!["x*y", "x^2", "y^2"]);
        assert_eq!(closure_of("[x]"), vec!["x"]);
        assert_eq!(closure_of("[x^4, y^2]"), vec!["x^2*y", "x^4", "y^2"]);
    }

    #[test]
    fn hull_witness_verifies() {
        let b = vec![vec![2, 0], vec![0, 2]];
        let w = in_polyhedron(&b, &[1, 1]).unwrap();
        assert!(w.verify());
        assert!(in_polyhedron(&b, &[1, 0]).is_none());
        assert!(in_polyhedron(&b, &[0, 1]).is_none());
        let b3 = vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]];
        assert!(in_polyhedron(&b3, &[1, 1, 1]).unwrap().verify());
        assert!(in_polyhedron(&b3, &[1, 1, 0]).is_none());
    }
}
