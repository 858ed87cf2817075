//! Integer lattices in `Z^d` kept in row Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A sublattice of `Z^dim`. The basis is in row Hermite normal form: pivot
/// columns strictly increase, pivots are positive and entries above a pivot
/// lie in `[0, pivot)`. The form is unique, so `==` is lattice equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

fn pivot_of(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

fn sub_multiple(target: &mut [BigInt], q: &BigInt, row: &[BigInt]) {
    if q.is_zero() {
        return;
    }
    for (t, r) in target.iter_mut().zip(row) {
        *t -= q * r;
    }
}

impl IntLattice {
    pub fn zero(dim: usize) -> Self {
        IntLattice { dim, basis: Vec::new() }
    }

    pub fn from_generators(dim: usize, gens: impl IntoIterator<Item = Vec<BigInt>>) -> Self {
        let mut rows: Vec<Vec<BigInt>> = gens
            .into_iter()
            .inspect(|g| assert_eq!(g.len(), dim, "generator length"))
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .collect();
        let mut r = 0;
        for col in 0..dim {
            if r == rows.len() {
                break;
            }
            loop {
                // smallest nonzero entry in this column becomes the pivot candidate
                let best = (r..rows.len())
                    .filter(|&i| !rows[i][col].is_zero())
                    .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
                let Some(best) = best else { break };
                rows.swap(r, best);
                let mut done = true;
                for i in r + 1..rows.len() {
                    if rows[i][col].is_zero() {
                        continue;
                    }
                    let q = rows[i][col].div_floor(&rows[r][col]);
                    let (head, tail) = rows.split_at_mut(i);
                    sub_multiple(&mut tail[0], &q, &head[r]);
                    if !rows[i][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if r < rows.len() && !rows[r][col].is_zero() {
                if rows[r][col].is_negative() {
                    for x in rows[r].iter_mut() {
                        *x = -x.clone();
                    }
                }
                for i in 0..r {
                    let q = rows[i][col].div_floor(&rows[r][col]);
                    let (head, tail) = rows.split_at_mut(r);
                    sub_multiple(&mut head[i], &q, &tail[0]);
                }
                r += 1;
            }
        }
        rows.truncate(r);
        debug_assert!(rows.iter().all(|row| pivot_of(row).is_some()));
        IntLattice { dim, basis: rows }
    }

    pub fn from_i64_generators(dim: usize, gens: &[Vec<i64>]) -> Self {
        Self::from_generators(dim, gens.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = pivot_of(row).expect("basis rows are nonzero");
            let (q, rem) = w[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return false;
            }
            sub_multiple(&mut w, &q, row);
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        self.contains(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    pub fn is_subset(&self, other: &IntLattice) -> bool {
        self.basis.iter().all(|row| other.contains(row))
    }

    pub fn sum(&self, other: &IntLattice) -> IntLattice {
        Self::from_generators(self.dim, self.basis.iter().chain(&other.basis).cloned())
    }

    /// `A ∩ B` from the rows of `[[A, A], [B, 0]]` whose first half vanishes.
    pub fn intersection(&self, other: &IntLattice) -> IntLattice {
        assert_eq!(self.dim, other.dim, "lattice dimension");
        let d = self.dim;
        let gens = self
            .basis
            .iter()
            .map(|a| a.iter().chain(a).cloned().collect::<Vec<_>>())
            .chain(other.basis.iter().map(|b| {
                b.iter()
                    .cloned()
                    .chain(std::iter::repeat_n(BigInt::zero(), d))
                    .collect()
            }));
        let big = IntLattice::from_generators(2 * d, gens);
        Self::from_generators(
            d,
            big.basis
                .into_iter()
                .filter(|row| row[..d].iter().all(Zero::is_zero))
                .map(|row| row[d..].to_vec()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_is_canonical() {
        let a = IntLattice::from_i64_generators(2, &[vec![2, 0], vec![0, 3]]);
        let b = IntLattice::from_i64_generators(2, &[vec![2, 3], vec![4, 3], vec![0, 6]]);
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
        assert!(a.contains_i64(&[4, -9]));
        assert!(!a.contains_i64(&[1, 0]));
    }

    #[test]
    fn intersection_of_scaled_lines() {
        let a = IntLattice::from_i64_generators(2, &[vec![2, 0], vec![0, 1]]);
        let b = IntLattice::from_i64_generators(2, &[vec![3, 0], vec![0, 2]]);
        let c = IntLattice::from_i64_generators(2, &[vec![6, 0], vec![0, 2]]);
        assert_eq!(a.intersection(&b), c);
        let line = IntLattice::from_i64_generators(3, &[vec![1, 1, 0]]);
        let plane = IntLattice::from_i64_generators(3, &[vec![1, 0, 0], vec![0, 0, 1]]);
        assert!(line.intersection(&plane).is_zero());
    }

    #[test]
    fn zero_generators() {
        let z = IntLattice::from_i64_generators(3, &[vec![0, 0, 0]]);
        assert!(z.is_zero());
        assert!(z.contains_i64(&[0, 0, 0]));
        assert!(z.is_subset(&IntLattice::zero(3)));
    }
}
