use std::collections::HashMap;

use crate::whitehead::Poset;

use super::ComplexError;

/// A finite simplicial complex on vertex ids `u32`. Simplices are stored by
/// dimension as ascending vertex lists; the set is closed under faces.
#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The face closure of the given simplices.
    pub fn from_faces(faces: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut x = Self::empty();
        for mut f in faces {
            f.sort_unstable();
            f.dedup();
            x.insert_closed(f);
        }
        x
    }

    fn insert_closed(&mut self, s: Vec<u32>) {
        if s.is_empty() || self.contains(&s) {
            return;
        }
        for k in 0..s.len() {
            let mut face = s.clone();
            face.remove(k);
            self.insert_closed(face);
        }
        self.push(s);
    }

    /// Add a simplex whose faces are already present.
    fn push(&mut self, s: Vec<u32>) {
        let d = s.len() - 1;
        while self.simplices.len() <= d {
            self.simplices.push(Vec::new());
            self.index.push(HashMap::new());
        }
        self.index[d].insert(s.clone(), self.simplices[d].len());
        self.simplices[d].push(s);
    }

    /// `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.simplices
            .first()
            .map_or(Vec::new(), |v| v.iter().map(|s| s[0]).collect())
    }

    /// Simplices of dimension `d` (empty slice if none).
    pub fn simplices(&self, d: usize) -> &[Vec<u32>] {
        self.simplices.get(d).map_or(&[], Vec::as_slice)
    }

    /// Number of simplices in each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        s.is_empty() || self.index_of(s).is_some()
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    /// Every simplex, lowest dimension first.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.simplices.iter().flatten()
    }

    /// `lk(σ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ X}`. The link of the empty simplex
    /// is the complex itself.
    pub fn link(&self, sigma: &[u32]) -> Result<SimplicialComplex, ComplexError> {
        let mut sigma = sigma.to_vec();
        sigma.sort_unstable();
        if !self.contains(&sigma) {
            return Err(ComplexError::NotASimplex(sigma));
        }
        let mut out = SimplicialComplex::empty();
        for s in self.simplices.iter().skip(sigma.len()).flatten() {
            if sigma.iter().all(|v| s.binary_search(v).is_ok()) {
                let rest: Vec<u32> = s.iter().copied().filter(|v| sigma.binary_search(v).is_err()).collect();
                if !rest.is_empty() {
                    out.push(rest);
                }
            }
        }
        Ok(out)
    }
}

/// The order complex of a poset: one simplex per nonempty chain. Vertex ids
/// are poset indices. With `drop_min` the global minimum is removed first.
pub fn flag_complex(p: &Poset, drop_min: bool) -> Result<SimplicialComplex, ComplexError> {
    let skip = if drop_min {
        Some(p.minimum().ok_or(ComplexError::NoMinimum)?)
    } else {
        None
    };
    let keep: Vec<usize> = (0..p.len()).filter(|&x| Some(x) != skip).collect();
    Ok(chain_complex(p, &keep))
}

/// Order complex of the subposet induced on `elements`.
pub(crate) fn chain_complex(p: &Poset, elements: &[usize]) -> SimplicialComplex {
    let mut allowed = fixedbitset::FixedBitSet::with_capacity(p.len());
    for &e in elements {
        allowed.insert(e);
    }
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    let mut x = SimplicialComplex::empty();
    // chains listed bottom-up; stored sorted by id, so faces are found by
    // sorting, and length-k chains are all produced before length k+1
    let mut level: Vec<Vec<usize>> = sorted.iter().map(|&e| vec![e]).collect();
    while !level.is_empty() {
        let mut next = Vec::new();
        for chain in &level {
            let mut s: Vec<u32> = chain.iter().map(|&v| v as u32).collect();
            s.sort_unstable();
            x.push(s);
            let top = *chain.last().expect("nonempty chain");
            for y in p.up_set(top).ones() {
                if y != top && allowed.contains(y) {
                    let mut c = chain.clone();
                    c.push(y);
                    next.push(c);
                }
            }
        }
        level = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_closure_and_link() {
        let x = SimplicialComplex::from_faces([vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(x.f_vector(), vec![4, 4, 1]);
        assert_eq!(x.dimension(), 2);
        let lk = x.link(&[2]).unwrap();
        assert_eq!(lk.f_vector(), vec![3, 1]);
        assert!(x.link(&[0, 1, 2]).unwrap().is_empty());
        assert_eq!(x.link(&[]).unwrap().f_vector(), x.f_vector());
        assert!(x.link(&[0, 3]).is_err());
    }

    #[test]
    fn chains_of_a_chain() {
        let p = Poset::from_fn(3, |a, b| a <= b);
        let x = flag_complex(&p, false).unwrap();
        assert_eq!(x.f_vector(), vec![3, 3, 1]);
        let single = Poset::from_fn(1, |_, _| true);
        assert!(flag_complex(&single, true).unwrap().is_empty());
        let anti = Poset::from_fn(2, |a, b| a == b);
        assert!(flag_complex(&anti, true).is_err());
    }
}
