//! Prime fields `F_p` and their quadratic extensions.

use crate::error::{Error, Result};
use serde::Serialize;

/// Largest characteristic accepted: `2^31 - 1`.
pub const MAX_CHARACTERISTIC: u64 = (1 << 31) - 1;

/// The prime field `F_p`. Elements are canonical residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_CHARACTERISTIC || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `0..p`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// Signed representative in `(-p/2, p/2]`, used when printing.
    pub fn signed(&self, a: u32) -> i64 {
        if a as u64 > self.p as u64 / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// `F_{p^2} = F_p[t]/(t^2 - b t - c)` for a monic irreducible quadratic.
///
/// Only used to evaluate polynomials with `F_p` coefficients at points with
/// coordinates in the extension (arc valuations).
#[derive(Clone, Copy, Debug)]
pub struct QuadraticExt {
    pub base: PrimeField,
    // t^2 = b t + c
    b: u32,
    c: u32,
}

/// An element `a0 + a1 t`.
pub type Ext2 = (u32, u32);

impl QuadraticExt {
    pub fn new(base: PrimeField) -> Self {
        let p = base.characteristic();
        for b in 0..p {
            for c in 0..p {
                // t^2 - b t - c has no root in F_p
                let has_root = (0..p).any(|t| {
                    let v = base.sub(base.sub(base.mul(t, t), base.mul(b, t)), c);
                    v == 0
                });
                if !has_root {
                    return QuadraticExt { base, b, c };
                }
            }
        }
        unreachable!("every prime field has an irreducible quadratic")
    }

    /// `(b, c)` with `t^2 = b t + c`.
    pub fn modulus(&self) -> (u32, u32) {
        (self.b, self.c)
    }

    pub fn embed(&self, a: u32) -> Ext2 {
        (a, 0)
    }

    pub fn is_zero(&self, a: Ext2) -> bool {
        a == (0, 0)
    }

    pub fn add(&self, x: Ext2, y: Ext2) -> Ext2 {
        (self.base.add(x.0, y.0), self.base.add(x.1, y.1))
    }

    pub fn mul(&self, x: Ext2, y: Ext2) -> Ext2 {
        let f = &self.base;
        let a0b0 = f.mul(x.0, y.0);
        let a1b1 = f.mul(x.1, y.1);
        let cross = f.add(f.mul(x.0, y.1), f.mul(x.1, y.0));
        // (a1 b1) t^2 = (a1 b1)(b t + c)
        (
            f.add(a0b0, f.mul(a1b1, self.c)),
            f.add(cross, f.mul(a1b1, self.b)),
        )
    }

    pub fn pow(&self, mut a: Ext2, mut e: u64) -> Ext2 {
        let mut r = (1 % self.base.characteristic(), 0);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// All `p^2` elements, in a fixed order.
    pub fn elements(&self) -> impl Iterator<Item = Ext2> + '_ {
        let p = self.base.characteristic();
        (0..p).flat_map(move |a1| (0..p).map(move |a0| (a0, a1)))
    }
}
