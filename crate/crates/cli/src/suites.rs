use std::path::Path;

use mccool_core::complexes::{
    bounded_dual, find_rao, flag_complex, homological_cm_check, reduced_homology, verify_rao,
};
use mccool_core::freegroup::verify_mccool_relations;
use mccool_core::stabilizers::{aux_graph_from_lattice, reconstruct, StabilizerLattice};
use mccool_core::whitehead::{cache_path, load_poset, save_poset, CacheError, Family, HyperTree, WhiteheadPoset};
use serde::Serialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Relations,
    Poset,
    Stabilizers,
    Homology,
    Rao,
    Cm,
    All,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub family: Option<Family>,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(suite: &'static str, family: Option<Family>, name: &str, passed: bool, detail: String) -> Check {
    Check {
        suite,
        family,
        name: name.into(),
        passed,
        detail,
    }
}

/// Enumerate, or reuse the cache under `dir` (digest-checked).
pub fn obtain_poset(n: usize, family: Family, dir: Option<&Path>) -> Result<(WhiteheadPoset, bool), CliError> {
    let Some(dir) = dir else {
        return Ok((
            WhiteheadPoset::enumerate(n, family).map_err(|e| CliError::Input(e.to_string()))?,
            false,
        ));
    };
    let path = cache_path(dir, n, family);
    if path.exists() {
        return match load_poset(&path, Some((n, family))) {
            Ok(p) => Ok((p, true)),
            Err(CacheError::Io(e)) => Err(CliError::Input(format!("{}: {e}", path.display()))),
            Err(e) => Err(CliError::Verification(format!("{}: {e}", path.display()))),
        };
    }
    let p = WhiteheadPoset::enumerate(n, family).map_err(|e| CliError::Input(e.to_string()))?;
    std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    save_poset(&p, &path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok((p, false))
}

pub fn relations(n: usize) -> Vec<Check> {
    let rep = verify_mccool_relations(n);
    let detail = if rep.passed() {
        format!(
            "{} relator instances and their ω images evaluate to the identity",
            rep.total()
        )
    } else {
        let f = &rep.failures[0];
        format!(
            "{} failures; first: {:?} {:?} (ω = {}) evaluates to {}",
            rep.failures.len(),
            f.family,
            f.indices,
            f.omega_substituted,
            f.evaluated
        )
    };
    vec![check("relations", None, "mccool relators", rep.passed(), detail)]
}

pub fn poset(p: &WhiteheadPoset) -> Vec<Check> {
    let f = Some(p.family());
    let order = p.poset();
    let mut out = vec![check(
        "poset",
        f,
        "partial order",
        order.is_partial_order(),
        format!("{} elements", p.len()),
    )];
    let star = HyperTree::star(p.labels());
    out.push(check(
        "poset",
        f,
        "star minimum",
        order.minimum().map(|m| &p.elements()[m]) == Some(&star),
        format!("minimum is {star}"),
    ));
    let bad_cover = (0..p.len()).find(|&x| {
        let mut covers: Vec<HyperTree> = order
            .lower_covers(x)
            .into_iter()
            .map(|y| p.elements()[y].clone())
            .collect();
        covers.sort();
        covers != p.elements()[x].foldings()
    });
    out.push(check(
        "poset",
        f,
        "covers are foldings",
        bad_cover.is_none(),
        match bad_cover {
            None => "lower covers of every element are exactly its foldings".into(),
            Some(x) => format!("covers of {} differ from its foldings", p.elements()[x]),
        },
    ));
    let missing = (0..p.len()).find_map(|x| (x..p.len()).find(|&y| order.meet(x, y).is_none()).map(|y| (x, y)));
    out.push(check(
        "poset",
        f,
        "meets",
        missing.is_none(),
        match missing {
            None => format!(
                "all {} pairs have a unique greatest lower bound",
                p.len() * (p.len() + 1) / 2
            ),
            Some((x, y)) => format!("no meet for {} and {}", p.elements()[x], p.elements()[y]),
        },
    ));
    out
}

pub fn stabilizers(p: &WhiteheadPoset) -> Result<Vec<Check>, CliError> {
    let family = p.family();
    let f = Some(family);
    let err = |e: mccool_core::stabilizers::StabilizerError| CliError::Verification(e.to_string());
    let lats = p
        .elements()
        .iter()
        .map(|t| StabilizerLattice::of(t, family))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let mut out = Vec::new();
    let bad_rank = (0..p.len()).find(|&x| lats[x].rank() != p.elements()[x].degree());
    out.push(check(
        "stabilizers",
        f,
        "rank = degree",
        bad_rank.is_none(),
        match bad_rank {
            None => "rank H(T) = deg(T) for every element".into(),
            Some(x) => format!("rank {} for {}", lats[x].rank(), p.elements()[x]),
        },
    ));
    let mut bad_iso = None;
    'iso: for x in 0..p.len() {
        for y in 0..p.len() {
            if p.leq_index(x, y) != lats[x].is_subset(&lats[y]).map_err(err)? {
                bad_iso = Some((x, y));
                break 'iso;
            }
        }
    }
    out.push(check(
        "stabilizers",
        f,
        "order = inclusion",
        bad_iso.is_none(),
        match bad_iso {
            None => "T <= U iff H(T) <= H(U), all pairs".into(),
            Some((x, y)) => format!("mismatch at {} vs {}", p.elements()[x], p.elements()[y]),
        },
    ));
    let order = p.poset();
    let mut bad_meet = None;
    'meet: for x in 0..p.len() {
        for y in x + 1..p.len() {
            let m = order
                .meet(x, y)
                .ok_or_else(|| CliError::Verification("missing meet".into()))?;
            if lats[x].intersection(&lats[y]).map_err(err)? != lats[m] {
                bad_meet = Some((x, y));
                break 'meet;
            }
        }
    }
    out.push(check(
        "stabilizers",
        f,
        "meet = intersection",
        bad_meet.is_none(),
        match bad_meet {
            None => "H(T ∧ U) = H(T) ∩ H(U), all pairs".into(),
            Some((x, y)) => format!("mismatch at {} and {}", p.elements()[x], p.elements()[y]),
        },
    ));
    let mut bad_aux = None;
    for t in p.elements() {
        let lat = StabilizerLattice::of(t, Family::Out).map_err(err)?;
        if reconstruct(&aux_graph_from_lattice(&lat).map_err(err)?).map_err(err)? != *t {
            bad_aux = Some(t.clone());
            break;
        }
    }
    out.push(check(
        "stabilizers",
        f,
        "aux roundtrip",
        bad_aux.is_none(),
        match bad_aux {
            None => "every tree is recovered from its stabilizer".into(),
            Some(t) => format!("{t} is not recovered"),
        },
    ));
    Ok(out)
}

/// Degree through which `F_0` is expected to be acyclic: `n − 4` for OUT,
/// `n − 3` for AUT.
pub fn connectivity_bound(n: usize, family: Family) -> isize {
    n as isize
        - match family {
            Family::Out => 4,
            Family::Aut => 3,
        }
}

pub fn homology(p: &WhiteheadPoset) -> Result<Vec<Check>, CliError> {
    let f = Some(p.family());
    let order = p.poset();
    let err = |e: mccool_core::complexes::ComplexError| CliError::Verification(e.to_string());
    let full = flag_complex(&order, false).map_err(err)?;
    let h = reduced_homology(&full, full.dimension());
    let mut out = vec![check(
        "homology",
        f,
        "F acyclic",
        h.is_acyclic(),
        format!("f-vector {:?}", full.f_vector()),
    )];
    let bound = connectivity_bound(p.n(), p.family());
    let f0 = flag_complex(&order, true).map_err(err)?;
    let h0 = reduced_homology(&f0, f0.dimension());
    let groups: Vec<String> = h0
        .groups
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| format!("H_{} = {}", g.degree, describe_group(g)))
        .collect();
    out.push(check(
        "homology",
        f,
        "F_0 connectivity",
        h0.vanishes_through(bound),
        format!(
            "f-vector {:?}; reduced homology vanishes through degree {bound}; nonzero: {}",
            f0.f_vector(),
            if groups.is_empty() {
                "none".into()
            } else {
                groups.join(", ")
            }
        ),
    ));
    Ok(out)
}

pub fn describe_group(g: &mccool_core::complexes::HomologyGroup) -> String {
    let mut parts = Vec::new();
    if g.betti > 0 {
        parts.push(if g.betti == 1 {
            "Z".to_string()
        } else {
            format!("Z^{}", g.betti)
        });
    }
    parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn rao(p: &WhiteheadPoset) -> Result<Vec<Check>, CliError> {
    let z = bounded_dual(&p.poset());
    let err = |e: mccool_core::complexes::ComplexError| CliError::Verification(e.to_string());
    let name = match p.family() {
        Family::Out => format!("ZO_{}", p.n()),
        Family::Aut => format!("ZA_{}", p.n()),
    };
    let (passed, detail) = match find_rao(&z).map_err(err)? {
        None => (false, format!("no recursive atom ordering of {name} found")),
        Some(r) => {
            let ok = verify_rao(&z, &r).map_err(err)?;
            (
                ok,
                format!(
                    "{name}: {} atoms, {} intervals ordered, verification {}",
                    r.atoms().len(),
                    r.interval_count(),
                    if ok { "passed" } else { "failed" }
                ),
            )
        }
    };
    Ok(vec![check(
        "rao",
        Some(p.family()),
        "recursive atom ordering",
        passed,
        detail,
    )])
}

pub fn cm(p: &WhiteheadPoset) -> Vec<Check> {
    let rep = homological_cm_check(&p.poset());
    let detail = match &rep.witness {
        None => format!("{} links checked, dimension {}", rep.links_checked, rep.dimension),
        Some(w) => format!(
            "link of {:?} has H_{} = {}",
            w.simplex,
            w.group.degree,
            describe_group(&w.group)
        ),
    };
    vec![check(
        "cm",
        Some(p.family()),
        "homological Cohen–Macaulay",
        rep.passed(),
        detail,
    )]
}

pub fn run(suite: Suite, n: usize, families: &[Family], cache: Option<&Path>) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Relations | Suite::All) {
        out.extend(relations(n));
    }
    if suite == Suite::Relations {
        return Ok(out);
    }
    for &family in families {
        if n < family.min_n() {
            continue;
        }
        let (p, _) = obtain_poset(n, family, cache)?;
        let all = suite == Suite::All;
        if all || suite == Suite::Poset {
            out.extend(poset(&p));
        }
        if all || suite == Suite::Stabilizers {
            out.extend(stabilizers(&p)?);
        }
        if all || suite == Suite::Homology {
            out.extend(homology(&p)?);
        }
        if all || suite == Suite::Rao {
            out.extend(rao(&p)?);
        }
        if all || suite == Suite::Cm {
            out.extend(cm(&p));
        }
    }
    Ok(out)
}
