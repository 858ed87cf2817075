use num_bigint::BigInt;
use serde::Serialize;

use super::simplicial::SimplicialComplex;
use super::snf::{rank_profile, RankProfile, SparseRow};

/// Reduced homology in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: isize,
    pub betti: usize,
    /// Invariant factors greater than one.
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Reduced integer homology from degree `-1` upward.
///
/// Conventions: the augmented chain complex has `C_{-1} = Z`. The empty
/// complex therefore has `H̃_{-1} = Z` and nothing else; every nonempty
/// complex has `H̃_{-1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn degree(&self, d: isize) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.degree == d)
    }

    /// Zero in every degree `<= d` that was computed.
    pub fn vanishes_through(&self, d: isize) -> bool {
        self.groups.iter().filter(|g| g.degree <= d).all(HomologyGroup::is_zero)
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }
}

/// Rows are `d`-simplices, columns the `(d-1)`-faces; the transpose of the
/// boundary map has the same rank and invariant factors.
fn boundary_rows(x: &SimplicialComplex, d: usize) -> (Vec<SparseRow>, usize) {
    if d == 0 {
        let rows = x.simplices(0).iter().map(|_| SparseRow::from([(0, 1)])).collect();
        return (rows, 1);
    }
    let rows = x
        .simplices(d)
        .iter()
        .map(|s| {
            let mut row = SparseRow::new();
            for k in 0..s.len() {
                let mut face = s.clone();
                face.remove(k);
                let c = x.index_of(&face).expect("complex is face-closed");
                row.insert(c, if k % 2 == 0 { 1 } else { -1 });
            }
            row
        })
        .collect();
    (rows, x.simplices(d - 1).len())
}

/// Reduced homology in degrees `-1..=through`, computed exactly. All boundary
/// maps are reduced, and the Euler–Poincaré identity is checked on every call.
pub fn reduced_homology(x: &SimplicialComplex, through: isize) -> HomologyProfile {
    let dim = x.dimension();
    // ranks[d + 1] = rank of ∂_d : C_d -> C_{d-1}, for d = 0..=dim
    let mut profiles: Vec<RankProfile> = Vec::new();
    for d in 0..=dim.max(-1) {
        let (rows, cols) = boundary_rows(x, d as usize);
        profiles.push(rank_profile(rows, cols));
    }
    let chain_rank = |d: isize| -> usize {
        if d == -1 {
            1
        } else if d < 0 || d > dim {
            0
        } else {
            x.simplices(d as usize).len()
        }
    };
    let bd = |d: isize| -> Option<&RankProfile> {
        // ∂_d for d >= 0
        if d < 0 || d > dim {
            None
        } else {
            Some(&profiles[d as usize])
        }
    };
    let mut groups = Vec::new();
    let mut euler_chains: i64 = 0;
    let mut euler_betti: i64 = 0;
    for d in -1..=dim.max(-1) {
        let out_rank = if d == -1 { 0 } else { bd(d).map_or(0, |p| p.rank) };
        let in_prof = bd(d + 1);
        let betti = chain_rank(d) - out_rank - in_prof.map_or(0, |p| p.rank);
        let torsion = in_prof.map_or(Vec::new(), |p| p.torsion.clone());
        let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
        euler_chains += sign * chain_rank(d) as i64;
        euler_betti += sign * betti as i64;
        groups.push(HomologyGroup {
            degree: d,
            betti,
            torsion,
        });
    }
    assert_eq!(euler_chains, euler_betti, "Euler–Poincaré identity failed");
    groups.retain(|g| g.degree <= through);
    HomologyProfile { groups }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn betti(x: &SimplicialComplex) -> Vec<usize> {
        reduced_homology(x, 10).groups.iter().map(|g| g.betti).collect()
    }

    #[test]
    fn spheres_and_points() {
        let circle = SimplicialComplex::from_faces([vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(betti(&circle), vec![0, 0, 1]);
        let two_points = SimplicialComplex::from_faces([vec![0], vec![1]]);
        assert_eq!(betti(&two_points), vec![0, 1]);
        let simplex = SimplicialComplex::from_faces([vec![0, 1, 2, 3]]);
        assert!(reduced_homology(&simplex, 10).is_acyclic());
        let sphere2 = SimplicialComplex::from_faces([vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        assert_eq!(betti(&sphere2), vec![0, 0, 0, 1]);
    }

    #[test]
    fn empty_complex_convention() {
        let h = reduced_homology(&SimplicialComplex::empty(), 5);
        assert_eq!(h.groups.len(), 1);
        assert_eq!(h.groups[0].degree, -1);
        assert_eq!(h.groups[0].betti, 1);
    }

    #[test]
    fn projective_plane_torsion() {
        // 6-vertex triangulation of RP^2
        let faces = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        let x = SimplicialComplex::from_faces(faces.iter().map(|f| f.to_vec()));
        let h = reduced_homology(&x, 2);
        assert_eq!(h.degree(1).unwrap().torsion, vec![BigInt::from(2)]);
        assert_eq!(h.degree(1).unwrap().betti, 0);
        assert_eq!(h.degree(2).unwrap().betti, 0);
    }
}
