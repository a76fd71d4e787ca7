//! Dense linear algebra over `F_p` and enumeration of subspaces in
//! reduced row echelon form.

use crate::field::PrimeField;
use serde::Serialize;

/// A dense matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Matrix {
    pub rows: Vec<Vec<u32>>,
    pub ncols: usize,
}

impl Matrix {
    pub fn new(rows: Vec<Vec<u32>>, ncols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Matrix { rows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Reduced row echelon form with zero rows removed, and its pivot columns.
    pub fn rref(&self, f: &PrimeField) -> (Matrix, Vec<usize>) {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            let Some(k) = (r..m.len()).find(|&k| m[k][c] != 0) else {
                continue;
            };
            m.swap(r, k);
            let inv = f.inv(m[r][c]);
            for v in m[r].iter_mut() {
                *v = f.mul(*v, inv);
            }
            let pivot = m[r].clone();
            for (k, row) in m.iter_mut().enumerate() {
                if k != r && row[c] != 0 {
                    let factor = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = f.sub(*x, f.mul(factor, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        m.truncate(r);
        (Matrix::new(m, self.ncols), pivots)
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        self.rref(f).1.len()
    }
}

/// Incremental row space over `F_p`: tests whether a vector is in the span
/// of the rows inserted so far and, if so, with which coefficients.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: PrimeField,
    ncols: usize,
    // echelon rows with their expression in terms of the inserted vectors
    rows: Vec<(Vec<u32>, Vec<u32>, usize)>,
    inserted: usize,
}

impl RowSpace {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        RowSpace {
            field,
            ncols,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the echelon rows; returns residual and the
    /// combination (over inserted vectors) that was subtracted.
    fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let f = &self.field;
        let mut v = v.to_vec();
        let mut combo = vec![0u32; self.inserted];
        for (row, expr, piv) in &self.rows {
            let c = v[*piv];
            if c == 0 {
                continue;
            }
            for j in 0..self.ncols {
                v[j] = f.sub(v[j], f.mul(c, row[j]));
            }
            for (k, e) in expr.iter().enumerate() {
                combo[k] = f.add(combo[k], f.mul(c, *e));
            }
        }
        (v, combo)
    }

    /// Inserts `v`; returns true when it was independent of the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ncols);
        let f = self.field;
        let idx = self.inserted;
        self.inserted += 1;
        for r in self.rows.iter_mut() {
            r.1.push(0);
        }
        let (mut res, combo) = self.reduce(v);
        let Some(piv) = res.iter().position(|&c| c != 0) else {
            return false;
        };
        // res = v - sum combo_k * inserted_k
        let mut expr: Vec<u32> = combo.iter().map(|c| f.neg(*c)).collect();
        expr[idx] = 1;
        let inv = f.inv(res[piv]);
        for x in res.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for e in expr.iter_mut() {
            *e = f.mul(*e, inv);
        }
        // keep rows reduced in the new pivot column
        for (row, rexpr, _) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for j in 0..self.ncols {
                    row[j] = f.sub(row[j], f.mul(c, res[j]));
                }
                for (k, e) in expr.iter().enumerate() {
                    rexpr[k] = f.sub(rexpr[k], f.mul(c, *e));
                }
            }
        }
        self.rows.push((res, expr, piv));
        true
    }

    /// Coefficients `c` with `v = sum c_k inserted_k`, if `v` is in the span.
    pub fn solve(&self, v: &[u32]) -> Option<Vec<u32>> {
        let (res, combo) = self.reduce(v);
        res.iter().all(|&c| c == 0).then_some(combo)
    }
}

/// All `k`-dimensional subspaces of `F_p^d`, each as its unique RREF basis
/// (`k x d`), in canonical order: pivot sets lexicographically, then free
/// entries lexicographically (row-major).
pub fn subspaces_of_dim(f: &PrimeField, d: usize, k: usize) -> Vec<Matrix> {
    let p = f.characteristic();
    let mut out = Vec::new();
    for pivots in combinations(d, k) {
        // free positions: (row i, column j) with j > pivots[i], j not a pivot
        let mut free = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            for j in pc + 1..d {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let mut vals = vec![0u32; free.len()];
        loop {
            let mut rows = vec![vec![0u32; d]; k];
            for (i, &pc) in pivots.iter().enumerate() {
                rows[i][pc] = 1;
            }
            for (slot, &(i, j)) in free.iter().enumerate() {
                rows[i][j] = vals[slot];
            }
            out.push(Matrix::new(rows, d));
            // odometer, last entry fastest
            let mut i = free.len();
            let mut carry = true;
            while carry && i > 0 {
                i -= 1;
                vals[i] += 1;
                if vals[i] < p {
                    carry = false;
                } else {
                    vals[i] = 0;
                }
            }
            if carry {
                break;
            }
        }
    }
    out
}

/// Number of `k`-dimensional subspaces of `F_p^d` (Gaussian binomial).
pub fn count_subspaces(p: u64, d: usize, k: usize) -> u128 {
    if k > d {
        return 0;
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(p.pow((d - i) as u32) - 1);
        den = den.saturating_mul(p.pow((i + 1) as u32) - 1);
    }
    num / den
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Codimension-one subspaces of the row space of `basis` (`k x d`, full
/// rank), as RREF matrices in the ambient coordinates.
pub fn hyperplanes_of(f: &PrimeField, basis: &Matrix) -> Vec<Matrix> {
    let k = basis.nrows();
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for sub in subspaces_of_dim(f, k, k - 1) {
        let rows: Vec<Vec<u32>> = sub
            .rows
            .iter()
            .map(|coef| {
                let mut v = vec![0u32; basis.ncols];
                for (c, brow) in coef.iter().zip(basis.rows.iter()) {
                    for j in 0..basis.ncols {
                        v[j] = f.add(v[j], f.mul(*c, brow[j]));
                    }
                }
                v
            })
            .collect();
        let (m, _) = Matrix::new(rows, basis.ncols).rref(f);
        out.push(m);
    }
    out
}
