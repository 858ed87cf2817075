//! Smith normal form over the integers.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ...`, all non-negative.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Matrix,
    pub v: Matrix,
    pub d: Matrix,
    u_inv: Matrix,
    v_inv: Matrix,
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Row and column operations applied to `A` and mirrored into the transforms.
struct Work {
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
            for row in self.u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in self.a.iter_mut() {
                row.swap(i, j);
            }
            for row in self.v.iter_mut() {
                row.swap(i, j);
            }
            self.v_inv.swap(i, j);
        }
    }

    /// row_i += q · row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                *x += q * y;
            }
        }
        // U^{-1} gets the inverse column operation: col_j -= q · col_i
        for row in self.u_inv.iter_mut() {
            let t = q * &row[i];
            row[j] -= t;
        }
    }

    /// col_i += q · col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let t = q * &row[j];
                row[i] += t;
            }
        }
        let src = self.v_inv[i].clone();
        for (x, y) in self.v_inv[j].iter_mut().zip(&src) {
            *x -= q * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -x.clone();
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -row[i].clone();
        }
    }
}

/// Smith normal form with greedy smallest-pivot elimination. The result is
/// verified before returning; a failed verification panics.
pub fn smith_normal_form(a: &Matrix, cols: usize) -> SmithForm {
    let rows = a.len();
    assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut w = Work {
        a: a.clone(),
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
        rows,
        cols,
    };
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..w.rows {
                for j in t..w.cols {
                    if !w.a[i][j].is_zero() && best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            w.swap_rows(t, bi);
            w.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..w.rows {
                if !w.a[i][t].is_zero() {
                    let q = -w.a[i][t].div_floor(&w.a[t][t]);
                    w.add_row(i, t, &q);
                    clean &= w.a[i][t].is_zero();
                }
            }
            for j in t + 1..w.cols {
                if !w.a[t][j].is_zero() {
                    let q = -w.a[t][j].div_floor(&w.a[t][t]);
                    w.add_col(j, t, &q);
                    clean &= w.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let p = w.a[t][t].clone();
            let bad = (t + 1..w.rows).find(|&i| (t + 1..w.cols).any(|j| !w.a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if t < w.rows && t < w.cols && w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    let f = SmithForm {
        u: w.u,
        v: w.v,
        d: w.a,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    };
    assert!(f.verify(a), "Smith normal form failed verification");
    f
}

impl SmithForm {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// `U A V = D`, `U U^{-1} = I`, `V V^{-1} = I`, `D` diagonal with a
    /// divisibility chain of non-negative entries.
    pub fn verify(&self, a: &Matrix) -> bool {
        let rows = a.len();
        let cols = self.v.len();
        let uav = mat_mul(&mat_mul(&self.u, a, rows, cols), &self.v, cols, cols);
        if uav != self.d {
            return false;
        }
        if mat_mul(&self.u, &self.u_inv, rows, rows) != identity(rows)
            || mat_mul(&self.v, &self.v_inv, cols, cols) != identity(cols)
        {
            return false;
        }
        for i in 0..rows {
            for j in 0..cols {
                if i != j && !self.d[i][j].is_zero() {
                    return false;
                }
            }
        }
        let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| self.d[i][i].clone()).collect();
        if diag.iter().any(Signed::is_negative) {
            return false;
        }
        diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        })
    }
}

/// Rank and invariant factors (those `> 1`) of a sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Sparse row with sorted column keys.
pub type SparseRow = BTreeMap<usize, i64>;

/// Eliminate unit pivots in checked `i64` arithmetic, then finish the
/// remaining block with the dense Smith form. Each elimination step is an
/// unimodular row operation followed by deleting a unit pivot's row and
/// column, which leaves the remaining invariant factors unchanged.
pub fn rank_profile(rows: Vec<SparseRow>, cols: usize) -> RankProfile {
    match eliminate_units(rows.clone(), cols) {
        Some((rank, rest)) => finish_dense(rank, rest),
        None => {
            let dense: Matrix = rows
                .iter()
                .map(|r| {
                    let mut v = vec![BigInt::zero(); cols];
                    for (&c, &x) in r {
                        v[c] = BigInt::from(x);
                    }
                    v
                })
                .collect();
            finish_dense(0, (dense, cols))
        }
    }
}

fn finish_dense(units: usize, (m, cols): (Matrix, usize)) -> RankProfile {
    let (rank, torsion) = if m.is_empty() || cols == 0 {
        (0, Vec::new())
    } else {
        let f = smith_normal_form(&m, cols);
        let inv = f.invariant_factors();
        let t = inv.iter().filter(|x| !x.is_one()).cloned().collect();
        (inv.len(), t)
    };
    RankProfile {
        rank: units + rank,
        torsion,
    }
}

fn eliminate_units(mut rows: Vec<SparseRow>, cols: usize) -> Option<(usize, (Matrix, usize))> {
    rows.retain(|r| !r.is_empty());
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            col_rows[c].insert(i);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut col_alive = vec![true; cols];
    let mut rank = 0;
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| rows[i].len());
    let mut progress = true;
    while progress {
        progress = false;
        for &r in &order {
            if !alive[r] {
                continue;
            }
            // prefer the unit column with the fewest other rows
            let pivot = rows[r]
                .iter()
                .filter(|(_, &v)| v == 1 || v == -1)
                .map(|(&c, &v)| (c, v))
                .min_by_key(|&(c, _)| col_rows[c].len());
            let Some((c, pv)) = pivot else { continue };
            let prow = rows[r].clone();
            let others: Vec<usize> = col_rows[c].iter().copied().filter(|&o| o != r).collect();
            for o in others {
                let factor = rows[o][&c].checked_mul(pv)?;
                for (&k, &x) in &prow {
                    let entry = rows[o].entry(k).or_insert(0);
                    let was_zero = *entry == 0;
                    *entry = entry.checked_sub(factor.checked_mul(x)?)?;
                    if *entry == 0 {
                        rows[o].remove(&k);
                        col_rows[k].remove(&o);
                    } else if was_zero {
                        col_rows[k].insert(o);
                    }
                }
            }
            for &k in prow.keys() {
                col_rows[k].remove(&r);
            }
            alive[r] = false;
            col_alive[c] = false;
            rank += 1;
            progress = true;
        }
    }
    let live_cols: Vec<usize> = (0..cols).filter(|&c| col_alive[c]).collect();
    let pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let rest: Matrix = (0..rows.len())
        .filter(|&i| alive[i] && !rows[i].is_empty())
        .map(|i| {
            let mut v = vec![BigInt::zero(); live_cols.len()];
            for (&c, &x) in &rows[i] {
                v[pos[&c]] = BigInt::from(x);
            }
            v
        })
        .collect();
    Some((rank, (rest, live_cols.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn known_smith_forms() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let f = smith_normal_form(&a, 3);
        assert_eq!(
            f.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        let z = m(&[&[0, 0], &[0, 0]]);
        assert_eq!(smith_normal_form(&z, 2).rank(), 0);
        let rect = m(&[&[1, 2, 3], &[4, 5, 6]]);
        let f = smith_normal_form(&rect, 3);
        assert_eq!(f.invariant_factors(), vec![BigInt::from(1), BigInt::from(3)]);
    }

    #[test]
    fn sparse_path_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
            let dense: Vec<Vec<i64>> = (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| if rng.gen_bool(0.5) { rng.gen_range(-3..=3) } else { 0 })
                        .collect()
                })
                .collect();
            let big: Matrix = dense
                .iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let f = smith_normal_form(&big, c);
            let inv = f.invariant_factors();
            let sparse: Vec<SparseRow> = dense
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, &x)| x != 0)
                        .map(|(k, &x)| (k, x))
                        .collect()
                })
                .collect();
            let p = rank_profile(sparse, c);
            assert_eq!(p.rank, inv.len());
            assert_eq!(p.torsion, inv.into_iter().filter(|x| !x.is_one()).collect::<Vec<_>>());
        }
    }
}
