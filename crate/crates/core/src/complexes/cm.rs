//! Cohen–Macaulay checks for order complexes.

use rayon::prelude::*;
use serde::Serialize;

use crate::whitehead::Poset;

use super::homology::{reduced_homology, HomologyGroup};
use super::rao::find_rao;
use super::simplicial::{chain_complex, flag_complex};

/// A simplex whose link has homology below the required degree.
#[derive(Clone, Debug, Serialize)]
pub struct CmWitness {
    /// Poset indices of the chain (empty for the whole complex).
    pub simplex: Vec<u32>,
    pub group: HomologyGroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct CmReport {
    pub dimension: isize,
    /// Links examined, including the link of the empty simplex.
    pub links_checked: usize,
    pub witness: Option<CmWitness>,
}

impl CmReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Homology-level Cohen–Macaulay test of the order complex `Δ(P)`: for every
/// `p`-simplex `σ` (including `σ = ∅`, `p = -1`), `H̃_i(lk σ) = 0` for all
/// `i <= dim − p − 2`. This is evidence, not a proof of the homotopy
/// statement, since fundamental groups are not examined.
///
/// The link of a chain in an order complex is the order complex of the
/// elements outside the chain comparable to all of it.
pub fn homological_cm_check(p: &Poset) -> CmReport {
    let x = flag_complex(p, false).expect("no element is dropped");
    let dim = x.dimension();
    let mut sigmas: Vec<Vec<u32>> = vec![Vec::new()];
    sigmas.extend(x.all_simplices().cloned());
    let failures: Vec<Option<CmWitness>> = sigmas
        .par_iter()
        .map(|sigma| {
            let pdim = sigma.len() as isize - 1;
            let bound = dim - pdim - 2;
            if bound < -1 {
                return None;
            }
            let rest: Vec<usize> = (0..p.len())
                .filter(|&y| {
                    sigma.binary_search(&(y as u32)).is_err()
                        && sigma.iter().all(|&s| p.leq(s as usize, y) || p.leq(y, s as usize))
                })
                .collect();
            let lk = chain_complex(p, &rest);
            let h = reduced_homology(&lk, bound);
            h.groups.into_iter().find(|g| !g.is_zero()).map(|group| CmWitness {
                simplex: sigma.clone(),
                group,
            })
        })
        .collect();
    CmReport {
        dimension: dim,
        links_checked: sigmas.len(),
        witness: failures.into_iter().flatten().next(),
    }
}

/// Three-valued Cohen–Macaulay verdict for a poset with a global minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CmVerdict {
    /// A recursive atom ordering of the dual with a top adjoined exists,
    /// which gives shellability and hence the homotopy statement.
    PassHomotopy,
    /// All link homology vanishes as required, no ordering was found.
    PassHomologyOnly,
    Fail,
}

pub fn cm_verdict(p: &Poset) -> (CmVerdict, CmReport) {
    let report = homological_cm_check(p);
    if !report.passed() {
        return (CmVerdict::Fail, report);
    }
    let z = p.adjoin_top().dual();
    let verdict = match find_rao(&z) {
        Ok(Some(_)) => CmVerdict::PassHomotopy,
        _ => CmVerdict::PassHomologyOnly,
    };
    (verdict, report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_lattice_passes() {
        let p = Poset::from_fn(8, |a, b| a & b == a);
        assert!(homological_cm_check(&p).passed());
        assert_eq!(cm_verdict(&p).0, CmVerdict::PassHomotopy);
    }

    /// `a, b < c, d` plus `c < x`: the square a-c-b-d is a hole.
    pub(crate) fn bowtie_with_tail() -> Poset {
        let rel = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (0, 4), (1, 4)];
        Poset::from_fn(5, |x, y| x == y || rel.contains(&(x, y)))
    }

    #[test]
    fn crafted_failure_has_witness() {
        let p = bowtie_with_tail();
        assert!(p.is_partial_order());
        let r = homological_cm_check(&p);
        let w = r.witness.expect("fixture must fail");
        assert!(w.simplex.is_empty());
        assert_eq!(w.group.degree, 1);
    }
}
