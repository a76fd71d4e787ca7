#![allow(dead_code)]

use rand::Rng;
use tclose::parse::parse_ring_file;
use tclose::poly::{Monomial, Poly};
use tclose::{Ideal, Ring, RingFile};

pub const A2: &str = include_str!("../../../../corpus/a2-spread/a2.ring");
pub const HS: &str = include_str!("../../../../corpus/hs-reduction/hs.ring");
pub const GR: &str = include_str!("../../../../corpus/gr-frobenius/gr.ring");
pub const GR3: &str = include_str!("../../../../corpus/gr3-frobenius/gr3.ring");

pub fn load(src: &str) -> RingFile {
    parse_ring_file(src).unwrap()
}

pub fn corpus_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Exponent vectors of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

pub fn mono(ring: &Ring, exps: &[u32]) -> Poly {
    tclose::ring::monomial(ring, exps)
}

/// Random monomial of degree `d` in the local variables.
pub fn random_monomial(ring: &Ring, rng: &mut impl Rng, d: u32) -> Poly {
    let n = ring.nvars();
    let local = ring.local_vars();
    let mut exps = vec![0u32; n];
    for _ in 0..d {
        exps[local[rng.gen_range(0..local.len())]] += 1;
    }
    mono(ring, &exps)
}

/// Random polynomial with up to `terms` terms of degree at most `max_deg`.
pub fn random_poly(ring: &Ring, rng: &mut impl Rng, terms: usize, max_deg: u32) -> Poly {
    let base = ring.base();
    let p = ring.characteristic();
    let mut f = base.zero();
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_deg);
        let n = ring.nvars();
        let mut exps = vec![0u32; n];
        for _ in 0..d {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = rng.gen_range(1..p);
        f = base.add(&f, &base.monomial(Monomial::new(exps), c));
    }
    f
}

/// Random homogeneous monomial or binomial of degree `d` in the local variables.
pub fn random_mono_or_binomial(ring: &Ring, rng: &mut impl Rng, d: u32) -> Poly {
    let a = random_monomial(ring, rng, d);
    if rng.gen_bool(0.5) {
        return a;
    }
    let b = random_monomial(ring, rng, d);
    let c = rng.gen_range(1..ring.characteristic());
    let f = ring.base().add(&a, &ring.base().scale(&b, c));
    if f.is_zero() {
        a
    } else {
        f
    }
}

/// Ideal from random generators, each of degree `1..=max_deg`.
pub fn random_ideal(ring: &Ring, rng: &mut impl Rng, ngens: usize, max_deg: u32, binomials: bool) -> Ideal {
    let gens = (0..ngens)
        .map(|_| {
            let d = rng.gen_range(1..=max_deg);
            if binomials {
                random_mono_or_binomial(ring, rng, d)
            } else {
                random_monomial(ring, rng, d)
            }
        })
        .collect();
    Ideal::new(ring.clone(), gens)
}

/// A different generating set of the same ideal: random unitriangular
/// recombination plus multiples of other generators.
pub fn regenerate(ideal: &Ideal, rng: &mut impl Rng) -> Ideal {
    let ring = ideal.ring();
    let base = ring.base();
    let gens = ideal.gens();
    let mut out = Vec::with_capacity(gens.len() + 1);
    for (i, g) in gens.iter().enumerate() {
        let mut h = g.clone();
        for other in &gens[i + 1..] {
            let r = random_poly(ring, rng, 2, 1);
            h = base.add(&h, &base.mul(&r, other));
        }
        out.push(h);
    }
    out.reverse();
    if let Some(g) = gens.first() {
        let r = random_poly(ring, rng, 2, 2);
        out.push(base.mul(&r, g));
    }
    Ideal::new(ring.clone(), out)
}

/// Random element of `I`.
pub fn random_member(ideal: &Ideal, rng: &mut impl Rng) -> Poly {
    let ring = ideal.ring();
    let base = ring.base();
    let mut f = base.zero();
    for g in ideal.gens() {
        let r = random_poly(ring, rng, 2, 2);
        f = base.add(&f, &base.mul(&r, g));
    }
    f
}

/// Random element of `I` homogeneous of degree `d`; zero if no generator
/// has degree at most `d`. Generators must be homogeneous.
pub fn random_homogeneous_member(ideal: &Ideal, rng: &mut impl Rng, d: u32) -> Poly {
    let ring = ideal.ring();
    let base = ring.base();
    let mut f = base.zero();
    for g in ideal.gens() {
        let dg = g.max_degree().unwrap_or(0);
        if dg <= d {
            let m = random_monomial(ring, rng, d - dg);
            let c = rng.gen_range(1..ring.characteristic());
            f = base.add(&f, &base.scale(&base.mul(&m, g), c));
        }
    }
    f
}
