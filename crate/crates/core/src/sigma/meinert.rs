//! The commutation criterion for quotients of RAAGs, and its application to
//! `PSAut_n` for `n ≥ 10` via the graph `Γ(n, S)`.

use std::collections::{BTreeMap, HashSet};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::freegroup::{commutes, mccool_relators, whitehead_aut, RelationFamily, WhiteheadSymbol};
use crate::whitehead::Family;

use super::character::Character;
use super::raag::{raag_sigma1, raag_sigma2, CommutationGraph};
use super::{SigmaError, SigmaStatus, SigmaVerdict};

/// A finite presentation; relator letters are `±(generator index + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    fn validate(&self) -> Result<(), SigmaError> {
        let g = self.generators.len() as i32;
        for (k, r) in self.relators.iter().enumerate() {
            if let Some(&x) = r.iter().find(|&&x| x == 0 || x.abs() > g) {
                return Err(SigmaError::InvalidCharacter(format!(
                    "relator {k} uses letter {x} outside ±1..={g}"
                )));
            }
        }
        Ok(())
    }

    /// The unordered generator pair of a relator `x y x⁻¹ y⁻¹`.
    fn commutator_pair(&self, r: usize) -> Option<(usize, usize)> {
        match self.relators[r][..] {
            [a, b, c, d] if c == -a && d == -b && a.abs() != b.abs() => {
                let (x, y) = (a.unsigned_abs() as usize - 1, b.unsigned_abs() as usize - 1);
                Some((x.min(y), x.max(y)))
            }
            _ => None,
        }
    }

    fn generators_in(&self, r: usize) -> Vec<usize> {
        let mut gs: Vec<usize> = self.relators[r].iter().map(|x| x.unsigned_abs() as usize - 1).collect();
        gs.sort_unstable();
        gs.dedup();
        gs
    }
}

/// The `n(n−1)` ordered pairs `(i, j)`, in the generator order used below.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

fn pair_index(n: usize, (i, j): (usize, usize)) -> usize {
    (i - 1) * (n - 1) + if j < i { j - 1 } else { j - 2 }
}

/// The McCool presentation of `PSAut_n` with generators `α_ij`.
pub fn mccool_presentation(n: usize) -> Presentation {
    let generators = pairs(n).iter().map(|(i, j)| format!("a{i},{j}")).collect();
    let relators = mccool_relators(n)
        .iter()
        .map(|r| {
            r.word
                .symbols()
                .iter()
                .map(|s| {
                    let i = s.moved.min().expect("relator symbols move one letter");
                    let letter = pair_index(n, (i, s.base)) as i32 + 1;
                    letter * s.exponent.signum() as i32
                })
                .collect()
        })
        .collect();
    Presentation { generators, relators }
}

/// `{(1,2), (3,4), (5,6), (7,8), (9,10)}`.
pub fn standard_s() -> Vec<(usize, usize)> {
    (0..5).map(|k| (2 * k + 1, 2 * k + 2)).collect()
}

/// `Γ(n, S)`: vertices are all `(i, j)`; two are adjacent iff at least one
/// lies in `S` and the automorphisms `α_ij`, `α_kl` commute.
pub fn build_meinert_graph(n: usize, s: &[(usize, usize)]) -> Result<CommutationGraph, SigmaError> {
    let ps = pairs(n);
    for &(i, j) in s {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(SigmaError::OutOfRange(format!(
                "({i},{j}) is not a generator for n = {n}"
            )));
        }
    }
    let auts = ps
        .iter()
        .map(|&(i, j)| whitehead_aut(n, &WhiteheadSymbol::alpha(i, j)))
        .collect::<Result<Vec<_>, _>>()?;
    let in_s: Vec<bool> = ps.iter().map(|p| s.contains(p)).collect();
    let edges: Vec<(usize, usize)> = (0..ps.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let (auts, in_s) = (&auts, &in_s);
            (a + 1..ps.len()).filter_map(move |b| {
                ((in_s[a] || in_s[b]) && commutes(&auts[a], &auts[b]).expect("same rank")).then_some((a, b))
            })
        })
        .collect();
    let mut g = CommutationGraph::new(ps.iter().map(|(i, j)| format!("({i},{j})")).collect());
    for (a, b) in edges {
        g.add_edge(a, b);
    }
    Ok(g)
}

/// Hypothesis check for the commutation criterion on `⟨X | R⟩`, with `R_1`
/// the relators listed in `r1` and witnesses `r ↦ g_r` (generator indices)
/// for the remaining ones.
///
/// `R_1` must consist of commutators of distinct generators; its graph `Γ`
/// is the defining graph of the RAAG `⟨X | R_1⟩`. Each `r ∉ R_1` needs
/// `g_r` not occurring in `r`, `χ(g_r) ≠ 0` and `[g_r, x] ∈ R_1` for every
/// generator `x` of `r`. IN when these hold and `[χ] ∈ Σ²(A_Γ)`; UNKNOWN
/// when only the sufficient condition fails.
pub fn meinert_quotient_check(
    pres: &Presentation,
    r1: &[usize],
    chi: &[BigRational],
    witness: &BTreeMap<usize, usize>,
) -> Result<SigmaVerdict, SigmaError> {
    pres.validate()?;
    let ng = pres.generators.len();
    if chi.len() != ng {
        return Err(SigmaError::InvalidCharacter(format!(
            "{} values for {ng} generators",
            chi.len()
        )));
    }
    let mut graph = CommutationGraph::new(pres.generators.clone());
    for &r in r1 {
        if r >= pres.relators.len() {
            return Err(SigmaError::OutOfRange(format!("R_1 index {r} is not a relator")));
        }
        let (a, b) = pres
            .commutator_pair(r)
            .ok_or_else(|| SigmaError::Unsupported(format!("R_1 relator {r} is not a commutator of two generators")))?;
        graph.add_edge(a, b);
    }
    let r1_set: HashSet<usize> = r1.iter().copied().collect();
    let rest: Vec<usize> = (0..pres.relators.len()).filter(|r| !r1_set.contains(r)).collect();

    let failures: Vec<String> = rest
        .par_iter()
        .filter_map(|&r| {
            let Some(&g) = witness.get(&r) else {
                return Some(format!("relator {r}: no witness"));
            };
            if g >= ng {
                return Some(format!("relator {r}: witness {g} is not a generator"));
            }
            let gs = pres.generators_in(r);
            if gs.contains(&g) {
                return Some(format!(
                    "relator {r}: witness {} occurs in the relator",
                    pres.generators[g]
                ));
            }
            if chi[g].is_zero() {
                return Some(format!("relator {r}: χ({}) = 0", pres.generators[g]));
            }
            gs.iter().find(|&&x| !graph.has_edge(g, x)).map(|&x| {
                format!(
                    "relator {r}: [{}, {}] is not in R_1",
                    pres.generators[g], pres.generators[x]
                )
            })
        })
        .collect();

    let raag = raag_sigma2(&graph, chi)?;
    let mut reasons = vec![format!(
        "Σ² of the RAAG ⟨X | R_1⟩ ({} edges): {}",
        graph.edge_count(),
        raag.status
    )];
    reasons.extend(raag.reasons.iter().map(|r| format!("  {r}")));
    if rest.is_empty() {
        reasons.push("R \\ R_1 is empty: the group is the RAAG itself".into());
        return Ok(SigmaVerdict::new(raag.status, reasons));
    }
    let witnesses_ok = failures.is_empty();
    if witnesses_ok {
        reasons.push(format!(
            "all {} relators outside R_1 have a witness g_r with χ(g_r) ≠ 0 commuting with every generator of r",
            rest.len()
        ));
    } else {
        reasons.push(format!("{} witness checks failed", failures.len()));
        reasons.extend(failures.into_iter().take(10));
    }
    let ok = raag.status == SigmaStatus::In && witnesses_ok;
    Ok(SigmaVerdict::new(
        if ok { SigmaStatus::In } else { SigmaStatus::Unknown },
        reasons,
    ))
}

/// Five pairwise index-disjoint pairs in the support of `χ`, preferring the
/// standard `S`.
fn choose_s(chi: &Character) -> Option<Vec<(usize, usize)>> {
    let std = standard_s();
    if std.iter().all(|&(i, j)| !chi.value(i, j).is_zero()) {
        return Some(std);
    }
    fn extend(support: &[(usize, usize)], from: usize, used: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>) -> bool {
        if acc.len() == 5 {
            return true;
        }
        for k in from..support.len() {
            let (i, j) = support[k];
            if used.contains(&i) || used.contains(&j) {
                continue;
            }
            used.extend([i, j]);
            acc.push((i, j));
            if extend(support, k + 1, used, acc) {
                return true;
            }
            acc.pop();
            used.truncate(used.len() - 2);
        }
        false
    }
    let support = chi.support();
    let mut acc = Vec::new();
    extend(&support, 0, &mut Vec::new(), &mut acc).then_some(acc)
}

/// Σ² sufficiency for `PSAut_n`, `n ≥ 10`: IN when `χ` is nonzero on five
/// index-disjoint generators `S`, after checking the graph `Γ(n, S)` and the
/// commutation criterion on the McCool presentation.
pub fn sigma2_sufficient(chi: &Character) -> Result<SigmaVerdict, SigmaError> {
    let n = chi.n();
    if chi.family() != Family::Aut {
        return Err(SigmaError::Unsupported("Σ² sufficiency is stated for PSAut_n".into()));
    }
    if n < 10 {
        return Err(SigmaError::OutOfRange(format!("Σ² sufficiency needs n >= 10, got {n}")));
    }
    let Some(s) = choose_s(chi) else {
        return Ok(SigmaVerdict::new(
            SigmaStatus::Unknown,
            vec!["χ is not nonzero on any five index-disjoint generators; the criterion does not apply".into()],
        ));
    };
    let s_text = s
        .iter()
        .map(|(i, j)| format!("({i},{j})"))
        .collect::<Vec<_>>()
        .join(", ");
    let mut reasons = vec![format!("S = {{{s_text}}}, χ nonzero on S")];
    let fail = |mut reasons: Vec<String>, why: String| {
        reasons.push(why);
        Ok(SigmaVerdict::new(SigmaStatus::Unknown, reasons))
    };

    let graph = build_meinert_graph(n, &s)?;
    let ps = pairs(n);
    let s_idx: Vec<usize> = s.iter().map(|&p| pair_index(n, p)).collect();
    let in_s = |v: usize| s_idx.contains(&v);
    if !s_idx
        .iter()
        .all(|&a| s_idx.iter().all(|&b| a == b || graph.has_edge(a, b)))
    {
        return fail(reasons, "S is not a clique".into());
    }
    reasons.push("S is a clique in Γ".into());
    if let Some(v) = (0..ps.len()).find(|&v| !in_s(v) && !s_idx.iter().any(|&a| graph.has_edge(v, a))) {
        return fail(reasons, format!("{} has no neighbour in S", graph.label(v)));
    }
    reasons.push("every vertex is adjacent to S".into());
    if let Some(v) = (0..ps.len()).find(|&v| !in_s(v) && graph.neighbours(v).any(|u| !in_s(u))) {
        return fail(reasons, format!("{} has a neighbour outside S", graph.label(v)));
    }
    reasons.push("vertices outside S are adjacent only to S".into());
    if !graph.is_chordal() {
        return fail(reasons, "Γ is not chordal".into());
    }
    reasons.push("Γ is chordal".into());
    let values: Vec<BigRational> = ps.iter().map(|&(i, j)| chi.value(i, j).clone()).collect();
    let s1 = raag_sigma1(&graph, &values)?;
    if s1.status != SigmaStatus::In {
        return fail(reasons, format!("Σ¹(A_Γ) check: {}", s1.reasons.join("; ")));
    }
    reasons.push("[χ] ∈ Σ¹(A_Γ) = Σ²(A_Γ)".into());

    let pres = mccool_presentation(n);
    let relators = mccool_relators(n);
    let mut r1 = Vec::new();
    let mut witness = BTreeMap::new();
    for (k, r) in relators.iter().enumerate() {
        let commutator = matches!(
            r.family,
            RelationFamily::DisjointCommute | RelationFamily::SharedBaseCommute
        );
        if commutator {
            if let Some((a, b)) = pres.commutator_pair(k) {
                if graph.has_edge(a, b) {
                    r1.push(k);
                    continue;
                }
            }
        }
        match s.iter().find(|(a, b)| !r.indices.contains(a) && !r.indices.contains(b)) {
            Some(&p) => {
                witness.insert(k, pair_index(n, p));
            }
            None => {
                return fail(
                    reasons,
                    format!("relator {} over {:?} touches every pair of S", k, r.indices),
                );
            }
        }
    }
    reasons.push(format!(
        "five-index condition: each of the {} relators outside R_1 uses at most four indices, so some (k,l) ∈ S avoids it",
        relators.len() - r1.len()
    ));
    let q = meinert_quotient_check(&pres, &r1, &values, &witness)?;
    reasons.extend(q.reasons);
    if q.status != SigmaStatus::In {
        return Ok(SigmaVerdict::new(SigmaStatus::Unknown, reasons));
    }
    reasons.push(format!("[χ] ∈ Σ²(PSAut_{n})"));
    Ok(SigmaVerdict::new(SigmaStatus::In, reasons))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(values: &[i64]) -> Vec<BigRational> {
        values.iter().map(|&v| BigRational::from_integer(v.into())).collect()
    }

    #[test]
    fn pair_indices_match_order() {
        for n in 2..6 {
            for (k, &p) in pairs(n).iter().enumerate() {
                assert_eq!(pair_index(n, p), k);
            }
        }
    }

    #[test]
    fn presentation_letters() {
        let p = mccool_presentation(3);
        assert_eq!(p.generators.len(), 6);
        assert_eq!(p.relators.len(), 12);
        assert!(p.relators.iter().all(|r| r.iter().all(|&x| x != 0 && x.abs() <= 6)));
    }

    #[test]
    fn meinert_graph_n10() {
        let g = build_meinert_graph(10, &standard_s()).unwrap();
        assert_eq!(g.len(), 90);
        let s: Vec<usize> = standard_s().iter().map(|&p| pair_index(10, p)).collect();
        for &a in &s {
            for &b in &s {
                assert!(a == b || g.has_edge(a, b));
            }
        }
        for v in 0..90 {
            assert!(s.contains(&v) || s.iter().any(|&a| g.has_edge(v, a)));
        }
        assert!(g.is_chordal());
    }

    #[test]
    fn sigma2_on_s() {
        let s = standard_s();
        let chi = Character::from_integers(10, Family::Aut, |i, j| i64::from(s.contains(&(i, j)))).unwrap();
        let v = sigma2_sufficient(&chi).unwrap();
        assert_eq!(v.status, SigmaStatus::In, "{:?}", v.reasons);
    }

    #[test]
    fn sigma2_requires_n10() {
        let chi = Character::from_integers(9, Family::Aut, |_, _| 1).unwrap();
        assert!(sigma2_sufficient(&chi).is_err());
    }

    #[test]
    fn quotient_check_small_cases() {
        // ⟨a, b, c | [a, b], a c a⁻¹⟩ with R_1 = {[a,b]}
        let pres = Presentation {
            generators: vec!["a".into(), "b".into(), "c".into()],
            relators: vec![vec![1, 2, -1, -2], vec![1, 3, -1]],
        };
        // the witness occurs in its relator
        let w = BTreeMap::from([(1, 0)]);
        let v = meinert_quotient_check(&pres, &[0], &q(&[1, 1, 1]), &w).unwrap();
        assert_eq!(v.status, SigmaStatus::Unknown);
        assert!(v.reasons.iter().any(|r| r.contains("occurs in the relator")));

        // empty R \ R_1: Z^2 with χ = (1, 0) is in Σ²
        let z2 = Presentation {
            generators: vec!["a".into(), "b".into()],
            relators: vec![vec![1, 2, -1, -2]],
        };
        let v = meinert_quotient_check(&z2, &[0], &q(&[1, 0]), &BTreeMap::new()).unwrap();
        assert_eq!(v.status, SigmaStatus::In);
        assert!(v.reasons.iter().any(|r| r.contains("empty")));

        // R_1 must be commutators
        assert!(meinert_quotient_check(&pres, &[1], &q(&[1, 1, 1]), &BTreeMap::new()).is_err());
    }
}
