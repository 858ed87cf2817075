//! The McCool presentation of `PSAut_n` and its machine check.

use rayon::prelude::*;
use serde::Serialize;

use super::automorphism::{evaluate_formal, FormalGeneratorWord, WhiteheadSymbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationFamily {
    /// `[α_ij, α_kl]`, all four indices distinct.
    DisjointCommute,
    /// `[α_ij, α_kj]`, `i, j, k` distinct.
    SharedBaseCommute,
    /// `[α_ij α_kj, α_ik]`, `i, j, k` distinct.
    Triangle,
}

#[derive(Clone, Debug)]
pub struct McCoolRelator {
    pub family: RelationFamily,
    /// The indices `(i, j, k[, l])` of the instance.
    pub indices: Vec<usize>,
    pub word: FormalGeneratorWord,
}

/// Every ordered instance of the three McCool relator families on `n` letters.
pub fn mccool_relators(n: usize) -> Vec<McCoolRelator> {
    let a = |i: usize, j: usize| FormalGeneratorWord::single(WhiteheadSymbol::alpha(i, j));
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if j == i {
                continue;
            }
            for k in 1..=n {
                if k == i || k == j {
                    continue;
                }
                for l in 1..=n {
                    if l == i || l == j || l == k {
                        continue;
                    }
                    out.push(McCoolRelator {
                        family: RelationFamily::DisjointCommute,
                        indices: vec![i, j, k, l],
                        word: FormalGeneratorWord::commutator(&a(i, j), &a(k, l)),
                    });
                }
                out.push(McCoolRelator {
                    family: RelationFamily::SharedBaseCommute,
                    indices: vec![i, j, k],
                    word: FormalGeneratorWord::commutator(&a(i, j), &a(k, j)),
                });
                out.push(McCoolRelator {
                    family: RelationFamily::Triangle,
                    indices: vec![i, j, k],
                    word: FormalGeneratorWord::commutator(&a(i, j).concat(&a(k, j)), &a(i, k)),
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct RelatorFailure {
    pub family: RelationFamily,
    pub indices: Vec<usize>,
    pub omega_substituted: bool,
    pub word: String,
    pub evaluated: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub disjoint_commute: usize,
    pub shared_base_commute: usize,
    pub triangle: usize,
    pub failures: Vec<RelatorFailure>,
}

impl RelationReport {
    pub fn total(&self) -> usize {
        self.disjoint_commute + self.shared_base_commute + self.triangle
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluate every McCool relator, and its image under `α_ij -> α_ij^{-1}`,
/// as an automorphism of `F_n`; collect anything that is not the identity.
pub fn verify_mccool_relations(n: usize) -> RelationReport {
    let relators = mccool_relators(n);
    let count = |f| relators.iter().filter(|r| r.family == f).count();
    let failures: Vec<RelatorFailure> = relators
        .par_iter()
        .flat_map_iter(|r| {
            [false, true].into_iter().filter_map(move |omega| {
                let word = if omega { r.word.omega() } else { r.word.clone() };
                let value = evaluate_formal(n, &word).expect("relator symbols are valid");
                (!value.is_identity()).then(|| RelatorFailure {
                    family: r.family,
                    indices: r.indices.clone(),
                    omega_substituted: omega,
                    word: word.to_string(),
                    evaluated: value.to_string(),
                })
            })
        })
        .collect();
    RelationReport {
        n,
        disjoint_commute: count(RelationFamily::DisjointCommute),
        shared_base_commute: count(RelationFamily::SharedBaseCommute),
        triangle: count(RelationFamily::Triangle),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_has_twelve_instances() {
        let rep = verify_mccool_relations(3);
        assert_eq!(rep.total(), 12);
        assert_eq!(rep.disjoint_commute, 0);
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn n2_is_vacuous() {
        let rep = verify_mccool_relations(2);
        assert_eq!(rep.total(), 0);
        assert!(rep.passed());
    }

    #[test]
    fn n4_including_omega() {
        let rep = verify_mccool_relations(4);
        // 4*3*2*1 + 2 * 4*3*2
        assert_eq!(rep.total(), 24 + 48);
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn wrong_relator_is_detected() {
        // [α_12, α_21] is not a relation
        let w = FormalGeneratorWord::commutator(
            &FormalGeneratorWord::single(WhiteheadSymbol::alpha(1, 2)),
            &FormalGeneratorWord::single(WhiteheadSymbol::alpha(2, 1)),
        );
        assert!(!evaluate_formal(2, &w).unwrap().is_identity());
    }
}
