//! Σ-criteria for the McCool groups themselves.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use serde::Serialize;

use crate::complexes::{bounded_dual, find_rao, flag_complex, reduced_homology, verify_rao};
use crate::stabilizers::StabilizerLattice;
use crate::whitehead::{Family, WhiteheadPoset};

use super::character::Character;
use super::{SigmaError, SigmaStatus, SigmaVerdict};

/// Orlandi-Korner's description of `Σ¹(PSAut_n)`.
///
/// `[χ] ∉ Σ¹` iff (1) the support lies in `{(i,j), (j,i)}` for some `i ≠ j`,
/// or (2) the support lies inside a triple `{i,j,k}` and for each base in the
/// triple the two values based there sum to zero.
pub fn orlandi_korner_sigma1(chi: &Character) -> Result<SigmaVerdict, SigmaError> {
    if chi.family() != Family::Aut {
        return Err(SigmaError::Unsupported(
            "the Orlandi-Korner criterion is stated for PSAut_n".into(),
        ));
    }
    let n = chi.n();
    let support = chi.support();
    let within = |set: &[usize]| support.iter().all(|(a, b)| set.contains(a) && set.contains(b));
    for i in 1..=n {
        for j in i + 1..=n {
            if within(&[i, j]) {
                return Ok(SigmaVerdict::new(
                    SigmaStatus::Out,
                    vec![format!(
                        "Orlandi-Korner condition (1): support lies in {{({i},{j}), ({j},{i})}}"
                    )],
                ));
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let t = [i, j, k];
                if !within(&t) {
                    continue;
                }
                let balanced = t.iter().all(|&b| {
                    let s: num_rational::BigRational =
                        t.iter().filter(|&&a| a != b).map(|&a| chi.value(a, b).clone()).sum();
                    s.is_zero()
                });
                if balanced {
                    return Ok(SigmaVerdict::new(
                        SigmaStatus::Out,
                        vec![format!(
                            "Orlandi-Korner condition (2): support inside {{{i},{j},{k}}} with all three base sums zero"
                        )],
                    ));
                }
            }
        }
    }
    Ok(SigmaVerdict::new(
        SigmaStatus::In,
        vec!["Orlandi-Korner: neither condition (1) nor condition (2) holds".into()],
    ))
}

/// `(1−n)^{n−1}` for `PSAut_n` (`n ≥ 2`), `(1−n)^{n−2}` for `PSOut_n` (`n ≥ 3`).
pub fn euler_characteristic(n: usize, family: Family) -> Result<BigInt, SigmaError> {
    let min = match family {
        Family::Aut => 2,
        Family::Out => 3,
    };
    if n < min {
        return Err(SigmaError::OutOfRange(format!(
            "Euler characteristic for {family} needs n >= {min}"
        )));
    }
    let base = BigInt::from(1) - BigInt::from(n);
    let exp = match family {
        Family::Aut => n - 1,
        Family::Out => n - 2,
    };
    Ok(Pow::pow(base, exp as u32))
}

/// Largest `m` with `Σ^m` dense; `Σ^{m+1}` is empty.
pub fn dense_bound(n: usize, family: Family) -> usize {
    match family {
        Family::Aut => n - 2,
        Family::Out => n - 3,
    }
}

/// DENSE for `m ≤ n−2` (AUT) / `m ≤ n−3` (OUT), EMPTY above.
pub fn emptiness_verdict(n: usize, m: usize, family: Family) -> Result<SigmaVerdict, SigmaError> {
    let chi = euler_characteristic(n, family)?;
    let bound = dense_bound(n, family);
    let group = match family {
        Family::Aut => format!("PSAut_{n}"),
        Family::Out => format!("PSOut_{n}"),
    };
    if m > bound {
        let dim = bound + 1;
        Ok(SigmaVerdict::new(
            SigmaStatus::Empty,
            vec![
                format!(
                    "{group} is of type F with a free cocompact action on a contractible {dim}-dimensional complex"
                ),
                format!("Euler characteristic of {group} is {chi}, nonzero"),
                "α_ij -> α_ij^-1 induces χ∘ω = −χ, so every Σ-invariant is symmetric".into(),
                "type F, symmetric invariants and nonzero Euler characteristic force Σ^∞ = ∅".into(),
                if m == dim {
                    format!("Σ^{dim} = Σ^∞ = ∅ for a {dim}-dimensional classifying space")
                } else {
                    format!("Σ^{m} ⊆ Σ^{dim} = Σ^∞ = ∅ since m > {dim}")
                },
            ],
        ))
    } else {
        Ok(SigmaVerdict::new(
            SigmaStatus::Dense,
            vec![
                format!("Σ^{bound}({group}) is dense: it contains every generic character"),
                format!("Σ^{m} ⊇ Σ^{bound} since m <= {bound}"),
            ],
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Evidence {
    Computed,
    Cited,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub evidence: Evidence,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityCertificate {
    pub n: usize,
    pub family: Family,
    pub m: usize,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: String,
}

impl DensityCertificate {
    pub fn passed(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }
}

/// Largest number of tree labels for which the computed parts of a density
/// certificate are produced; above it the poset facts are cited.
pub const CERTIFICATE_MAX_LABELS: usize = 5;

/// Certificate that a generic `χ` lies in `Σ^m` via the
/// Meier–Meinert–Van Wyk criterion applied to the stabilizer family.
pub fn density_certificate(chi: &Character, m: usize) -> Result<DensityCertificate, SigmaError> {
    let n = chi.n();
    let family = chi.family();
    let bound = dense_bound(n, family);
    if m > bound {
        let verdict = emptiness_verdict(n, m, family)?;
        return Err(SigmaError::OutOfRange(format!(
            "m = {m} exceeds {bound}; {}",
            verdict.reasons.join("; ")
        )));
    }
    if let Some(w) = chi.genericity_witness()? {
        return Err(SigmaError::NotGeneric(w.to_string()));
    }
    let group = match family {
        Family::Aut => format!("PSAut_{n}"),
        Family::Out => format!("PSOut_{n}"),
    };
    let mut hyps = vec![Hypothesis {
        name: "generic".into(),
        evidence: Evidence::Computed,
        holds: true,
        detail: "χ is nonzero on every nontrivial Whitehead generator (exact subset sums)".into(),
    }];
    if family.ambient_labels(n) <= CERTIFICATE_MAX_LABELS {
        hyps.extend(computed_poset_hypotheses(chi, m)?);
    } else {
        hyps.push(Hypothesis {
            name: "nonvanishing on the family".into(),
            evidence: Evidence::Cited,
            holds: true,
            detail: "every nontrivial stabilizer contains a nontrivial Whitehead generator, on which χ is nonzero"
                .into(),
        });
        hyps.push(Hypothesis {
            name: "F_0 connectivity".into(),
            evidence: Evidence::Cited,
            holds: true,
            detail: format!(
                "the Whitehead poset is homotopy Cohen–Macaulay, so F_0 is ({})-connected",
                bound as isize - 1
            ),
        });
        hyps.push(Hypothesis {
            name: "intersection-closed".into(),
            evidence: Evidence::Cited,
            holds: true,
            detail: "the stabilizer family is closed under intersections".into(),
        });
    }
    hyps.push(Hypothesis {
        name: "infinitely generating".into(),
        evidence: Evidence::Cited,
        holds: true,
        detail: "the McCullough–Miller complex is contractible".into(),
    });
    hyps.push(Hypothesis {
        name: "type F".into(),
        evidence: Evidence::Cited,
        holds: true,
        detail: format!("{group} is torsion-free and acts freely and cocompactly on a contractible complex"),
    });
    hyps.push(Hypothesis {
        name: "stabilizers".into(),
        evidence: Evidence::Cited,
        holds: true,
        detail: "each stabilizer is free abelian, so any nonzero restriction lies in all of its Σ-invariants".into(),
    });
    let ok = hyps.iter().all(|h| h.holds);
    Ok(DensityCertificate {
        n,
        family,
        m,
        conclusion: if ok {
            format!("[χ] ∈ Σ^{m}({group})")
        } else {
            "hypotheses not all verified".into()
        },
        hypotheses: hyps,
    })
}

fn computed_poset_hypotheses(chi: &Character, m: usize) -> Result<Vec<Hypothesis>, SigmaError> {
    let n = chi.n();
    let family = chi.family();
    let poset = WhiteheadPoset::enumerate(n, family)?;
    let lattices: Vec<StabilizerLattice> = poset
        .elements()
        .iter()
        .map(|t| StabilizerLattice::of(t, family))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();

    let vanishing = lattices.iter().zip(poset.elements()).find(|(lat, _)| {
        !lat.is_trivial()
            && (1..=n).all(|j| {
                lat.base(j)
                    .basis()
                    .iter()
                    .all(|row| chi.evaluate_vector(j, row).is_zero())
            })
    });
    out.push(Hypothesis {
        name: "nonvanishing on the family".into(),
        evidence: Evidence::Computed,
        holds: vanishing.is_none(),
        detail: match vanishing {
            None => format!(
                "χ restricted to each of the {} nontrivial stabilizers is nonzero",
                lattices.iter().filter(|l| !l.is_trivial()).count()
            ),
            Some((_, t)) => format!("χ vanishes on the stabilizer of {t}"),
        },
    });

    let p = poset.poset();
    let f0 = flag_complex(&p, true)?;
    let h = reduced_homology(&f0, m as isize - 1);
    out.push(Hypothesis {
        name: "F_0 homology".into(),
        evidence: Evidence::Computed,
        holds: h.vanishes_through(m as isize - 1),
        detail: format!("reduced homology of F_0 vanishes through degree {}", m as isize - 1),
    });

    let z = bounded_dual(&p);
    let rao_ok = match find_rao(&z)? {
        Some(r) => verify_rao(&z, &r)?,
        None => false,
    };
    out.push(Hypothesis {
        name: "recursive atom ordering".into(),
        evidence: Evidence::Computed,
        holds: rao_ok,
        detail: "found and verified on the dual with a top adjoined (homotopy Cohen–Macaulay)".into(),
    });

    let mut closed = true;
    'outer: for (x, t) in poset.elements().iter().enumerate() {
        for (y, u) in poset.elements().iter().enumerate().skip(x + 1) {
            let meet = poset.meet(t, u)?;
            let inter = lattices[x].intersection(&lattices[y])?;
            if inter != lattices[poset.index_of(&meet).expect("meet is an element")] {
                closed = false;
                break 'outer;
            }
        }
    }
    out.push(Hypothesis {
        name: "intersection-closed".into(),
        evidence: Evidence::Computed,
        holds: closed,
        detail: "H(T) ∩ H(U) = H(T ∧ U) for every pair".into(),
    });
    Ok(out)
}
