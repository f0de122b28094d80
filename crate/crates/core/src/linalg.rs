//! Exact sparse linear algebra over the rationals.
//!
//! Matrices are stored column-major as sparse columns of `BigRational`
//! entries.  Rank and solving use Gaussian elimination with a cheap
//! Markowitz-style pivot choice (sparsest eligible row/column product).

use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use num::BigInt;
use std::collections::BTreeMap;

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse rational matrix; `cols[j]` maps row index -> entry.
#[derive(Debug, Clone, Default)]
pub struct SparseMat {
    pub nrows: usize,
    pub cols: Vec<BTreeMap<usize, Q>>,
}

impl SparseMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat {
            nrows,
            cols: vec![BTreeMap::new(); ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn add_to(&mut self, row: usize, col: usize, val: Q) {
        if val.is_zero() {
            return;
        }
        debug_assert!(row < self.nrows);
        let slot = self.cols[col].entry(row).or_insert_with(Q::zero);
        *slot += val;
        if slot.is_zero() {
            self.cols[col].remove(&row);
        }
    }

    pub fn set(&mut self, row: usize, col: usize, val: Q) {
        if val.is_zero() {
            self.cols[col].remove(&row);
        } else {
            self.cols[col].insert(row, val);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Q {
        self.cols[col].get(&row).cloned().unwrap_or_else(Q::zero)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// `self * other` (composition: columns of `other` pushed through).
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.ncols(), other.nrows);
        let mut out = SparseMat::zero(self.nrows, other.ncols());
        for (j, col) in other.cols.iter().enumerate() {
            for (&k, v) in col {
                for (&i, w) in &self.cols[k] {
                    out.add_to(i, j, v * w);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.ncols());
        let mut out = vec![Q::zero(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (&i, w) in col {
                out[i] += w * &v[j];
            }
        }
        out
    }

    fn to_rows(&self) -> Vec<BTreeMap<usize, Q>> {
        let mut rows: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (&i, v) in col {
                rows[i].insert(j, v.clone());
            }
        }
        rows
    }

    /// Exact rank by row elimination.
    pub fn rank(&self) -> usize {
        Eliminated::new(self, None).rank
    }

    /// Solves `self * x = rhs` exactly.  Returns a particular solution
    /// (minimal support from the elimination: free variables set to zero)
    /// or `None` when inconsistent.
    pub fn solve(&self, rhs: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(rhs.len(), self.nrows);
        let elim = Eliminated::new(self, Some(rhs));
        elim.solution
    }

    /// Dimension of the kernel.
    pub fn kernel_dim(&self) -> usize {
        self.ncols() - self.rank()
    }

    /// Is `v` in the column span?
    pub fn in_image(&self, v: &[Q]) -> bool {
        self.solve(v).is_some()
    }
}

/// Row-echelon elimination state; optionally tracks a right-hand side and
/// produces a particular solution.
struct Eliminated {
    rank: usize,
    solution: Option<Vec<Q>>,
}

impl Eliminated {
    fn new(m: &SparseMat, rhs: Option<&[Q]>) -> Self {
        let mut rows = m.to_rows();
        let mut b: Vec<Q> = rhs.map(|r| r.to_vec()).unwrap_or_default();
        let track = rhs.is_some();
        let nrows = m.nrows;
        let mut pivot_of_col: BTreeMap<usize, usize> = BTreeMap::new(); // col -> row
        let mut row_used = vec![false; nrows];
        let mut rank = 0usize;

        loop {
            // Markowitz-ish: among unused nonempty rows pick the one whose
            // sparsest entry minimises (row_len - 1) * (col density proxy).
            let mut best: Option<(usize, usize, usize)> = None; // (score, row, col)
            for (i, row) in rows.iter().enumerate() {
                if row_used[i] || row.is_empty() {
                    continue;
                }
                let (&j, _) = row.iter().next().unwrap();
                let mut jbest = j;
                let mut cost = usize::MAX;
                for (&jj, _) in row.iter() {
                    // prefer columns that appear in few other rows; proxy:
                    // entry magnitude-free, use column position only
                    let c = jj;
                    if c < cost {
                        cost = c;
                        jbest = jj;
                    }
                }
                let score = (row.len() - 1) * 1000 + (jbest % 997);
                match best {
                    None => best = Some((score, i, jbest)),
                    Some((s, _, _)) if score < s => best = Some((score, i, jbest)),
                    _ => {}
                }
            }
            let Some((_, pi, pj)) = best else { break };
            row_used[pi] = true;
            pivot_of_col.insert(pj, pi);
            rank += 1;
            let pivot_val = rows[pi][&pj].clone();
            let prow = rows[pi].clone();
            for i in 0..nrows {
                if i == pi || row_used[i] {
                    continue;
                }
                let Some(f) = rows[i].get(&pj).cloned() else {
                    continue;
                };
                let factor = &f / &pivot_val;
                for (&jj, v) in &prow {
                    let delta = v * &factor;
                    let slot = rows[i].entry(jj).or_insert_with(Q::zero);
                    *slot -= delta;
                    if slot.is_zero() {
                        rows[i].remove(&jj);
                    }
                }
                if track {
                    let delta = &b[pi] * &factor;
                    b[i] -= delta;
                }
            }
        }

        let solution = if track {
            // consistency: every eliminated-to-empty row must have b = 0
            let mut consistent = true;
            for i in 0..nrows {
                if !row_used[i] && !b[i].is_zero() {
                    consistent = false;
                    break;
                }
            }
            if !consistent {
                None
            } else {
                // back-substitute over pivot rows (they still hold entries in
                // pivot columns of later-eliminated rows: full back-solve).
                let mut x = vec![Q::zero(); m.ncols()];
                // process pivots in reverse elimination order: recompute by
                // repeatedly solving rows whose non-pivot support is resolved.
                // Simpler: iterate until fixpoint (each pass resolves >= 1).
                let mut remaining: Vec<(usize, usize)> =
                    pivot_of_col.iter().map(|(&c, &r)| (c, r)).collect();
                let mut resolved = vec![false; m.ncols()];
                while !remaining.is_empty() {
                    let mut progressed = false;
                    remaining.retain(|&(c, r)| {
                        let ok = rows[r]
                            .keys()
                            .all(|&j| j == c || resolved[j] || !pivot_of_col.contains_key(&j));
                        if ok {
                            let mut acc = b[r].clone();
                            for (&j, v) in &rows[r] {
                                if j != c {
                                    acc -= v * &x[j];
                                }
                            }
                            x[c] = acc / rows[r][&c].clone();
                            resolved[c] = true;
                        }
                        if ok {
                            progressed = true;
                        }
                        !ok
                    });
                    assert!(progressed, "back-substitution stalled");
                }
                Some(x)
            }
        } else {
            None
        };
        Eliminated { rank, solution }
    }
}

/// Rank over the prime field F_p for a word-size prime; a lower bound for
/// the rational rank, used to certify vanishing homology cheaply.
pub fn rank_mod_p(nrows: usize, cols: &[Vec<(usize, i64)>], p: u64) -> usize {
    let md = |x: i64| -> u64 { x.rem_euclid(p as i64) as u64 };
    let mut rows: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); nrows];
    for (j, col) in cols.iter().enumerate() {
        for &(i, v) in col {
            let v = md(v);
            if v != 0 {
                let e = rows[i].entry(j).or_insert(0);
                *e = (*e + v) % p;
                if *e == 0 {
                    rows[i].remove(&j);
                }
            }
        }
    }
    let inv = |a: u64| -> u64 { pow_mod(a, p - 2, p) };
    let mut rank = 0usize;
    let mut used = vec![false; nrows];
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            if used[i] || row.is_empty() {
                continue;
            }
            let len = row.len();
            let j = *row.keys().next().unwrap();
            match best {
                None => best = Some((len, i, j)),
                Some((l, _, _)) if len < l => best = Some((len, i, j)),
                _ => {}
            }
        }
        let Some((_, pi, pj)) = best else { break };
        used[pi] = true;
        rank += 1;
        let pv = rows[pi][&pj];
        let pv_inv = inv(pv);
        let prow: Vec<(usize, u64)> = rows[pi].iter().map(|(&j, &v)| (j, v)).collect();
        for i in 0..nrows {
            if used[i] {
                continue;
            }
            let Some(&f) = rows[i].get(&pj) else { continue };
            let factor = f * pv_inv % p;
            for &(jj, v) in &prow {
                let delta = v * factor % p;
                let e = rows[i].entry(jj).or_insert(0);
                *e = (*e + p - delta) % p;
                if *e == 0 {
                    rows[i].remove(&jj);
                }
            }
        }
    }
    rank
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r: u128 = 1;
    let mut base: u128 = a as u128 % p as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    let _ = &mut a;
    r as u64
}

/// Sign of a permutation given as the image list; consumes the slice copy.
pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut p = perm.to_vec();
    let mut sign = 1i64;
    for i in 0..p.len() {
        while p[i] != i {
            let j = p[i];
            p.swap(i, j);
            sign = -sign;
        }
    }
    sign
}

/// Determinant sign of a small exact matrix (columns of length n), or 0 if
/// singular.
pub fn det_sign(cols: &[Vec<Q>]) -> i64 {
    let n = cols.len();
    if n == 0 {
        return 1;
    }
    assert!(cols.iter().all(|c| c.len() == n));
    let mut m: Vec<Vec<Q>> = cols.to_vec();
    let mut sign = 1i64;
    let mut det = Q::one();
    for k in 0..n {
        // find pivot in column k at row >= k
        let Some(pr) = (k..n).find(|&r| !m[k][r].is_zero()) else {
            return 0;
        };
        if pr != k {
            for col in m.iter_mut() {
                col.swap(k, pr);
            }
            sign = -sign;
        }
        let piv = m[k][k].clone();
        det *= &piv;
        for j in (k + 1)..n {
            if m[j][k].is_zero() {
                continue;
            }
            let f = &m[j][k] / &piv;
            for r in k..n {
                let delta = &m[k][r] * &f;
                m[j][r] -= delta;
            }
        }
    }
    if det.is_zero() {
        0
    } else if det.is_positive() {
        sign
    } else {
        -sign
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(nrows: usize, data: &[&[i64]]) -> SparseMat {
        let mut m = SparseMat::zero(nrows, data.len());
        for (j, col) in data.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, q_int(v));
            }
        }
        m
    }

    #[test]
    fn rank_and_solve() {
        let m = mat(3, &[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]);
        assert_eq!(m.rank(), 2);
        let rhs = vec![q_int(1), q_int(2), q_int(3)];
        let x = m.solve(&rhs).unwrap();
        let y = m.apply(&x);
        assert_eq!(y, rhs);
        let bad = vec![q_int(1), q_int(2), q_int(4)];
        assert!(m.solve(&bad).is_none());
        assert!(!m.in_image(&bad));
    }

    #[test]
    fn kernel_dim() {
        let m = mat(2, &[&[1, 0], &[2, 0], &[0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel_dim(), 1);
    }

    #[test]
    fn modular_rank_matches() {
        let m = mat(3, &[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2], &[2, 3, 5]]);
        let cols: Vec<Vec<(usize, i64)>> = (0..m.ncols())
            .map(|j| m.cols[j].iter().map(|(&i, v)| (i, v.to_integer().try_into().unwrap())).collect())
            .collect();
        assert_eq!(rank_mod_p(3, &cols, (1 << 31) - 1), m.rank());
    }

    #[test]
    fn perm_sign_and_det() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        let cols = vec![vec![q_int(0), q_int(1)], vec![q_int(1), q_int(0)]];
        assert_eq!(det_sign(&cols), -1);
        let cols = vec![vec![q_int(2), q_int(0)], vec![q_int(0), q_int(3)]];
        assert_eq!(det_sign(&cols), 1);
        let cols = vec![vec![q_int(1), q_int(1)], vec![q_int(1), q_int(1)]];
        assert_eq!(det_sign(&cols), 0);
    }
}
