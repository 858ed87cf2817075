//! `mccool`: enumeration, verification suites and Σ-criterion queries for
//! the McCool groups.
//!
//! Exit codes: 0 all checks pass, 1 the verdict is OUT / EMPTY / not
//! generic, 2 a verification failed (including cache digest mismatch),
//! 3 bad input.

mod inputs;
mod output;
mod suites;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mccool_core::complexes::{bounded_dual, find_rao, flag_complex, reduced_homology, verify_rao};
use mccool_core::sigma::{
    build_meinert_graph, density_certificate, emptiness_verdict, meinert_quotient_check, orlandi_korner_sigma1,
    raag_sigma1, raag_sigma2, sigma2_sufficient, standard_s, SigmaError, SigmaStatus, SigmaVerdict,
};
use mccool_core::whitehead::{order_digest, Family};
use mccool_core::words::CertificateFile;
use serde_json::json;

use output::{Format, Output};
use suites::Suite;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 2,
            CliError::Input(_) => 3,
        }
    }
}

impl From<SigmaError> for CliError {
    fn from(e: SigmaError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "mccool",
    version,
    about = "Whitehead posets, stabilizers and BNSR criteria for McCool groups"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory for cached posets.
    #[arg(long, global = true, env = "MCCOOL_CACHE_DIR")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Size {
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_family)]
    family: Family,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Query {
    Ok1,
    Generic,
    Density,
    Emptiness,
    Sigma2Sufficient,
    Raag,
    Meinert,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate WO_n / WA_n and summarize it.
    Enumerate(Size),
    /// Run verification suites.
    Verify {
        #[arg(long)]
        n: usize,
        /// Both families when omitted.
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Query a Σ-criterion.
    Sigma {
        #[arg(long, value_enum)]
        query: Query,
        /// Character file: {"n", "family", "values": {"i,j": "p/q"}}.
        #[arg(long = "char")]
        character: Option<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        /// Graph file for `raag`.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Presentation file for `meinert`.
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
    /// Reduced homology of the flag complex with the minimum removed.
    Homology {
        #[command(flatten)]
        size: Size,
        /// Keep the minimum (the complex is then a cone).
        #[arg(long)]
        keep_min: bool,
    },
    /// Find and verify a recursive atom ordering of ZO_n / ZA_n.
    Rao(Size),
    /// Check a Σ² certificate file.
    CertificateCheck {
        #[arg(long)]
        file: PathBuf,
    },
}

fn plural(k: usize, word: &str) -> String {
    if k == 1 {
        format!("{k} {word}")
    } else {
        format!("{k} {word}s")
    }
}

fn verdict_code(status: SigmaStatus) -> u8 {
    match status {
        SigmaStatus::Out | SigmaStatus::Empty => 1,
        _ => 0,
    }
}

fn emit_verdict(out: &Output, query: &str, v: &SigmaVerdict) {
    out.emit(
        "verdict",
        json!({"query": query, "status": v.status, "reasons": v.reasons, "negative": verdict_code(v.status) == 1}),
        || {
            let mut s = format!("{query}: {}", v.status);
            for r in &v.reasons {
                s.push_str(&format!("\n  - {r}"));
            }
            s
        },
    );
}

fn enumerate(out: &Output, size: &Size, cache: Option<&PathBuf>) -> Result<u8, CliError> {
    let (p, reused) = suites::obtain_poset(size.n, size.family, cache.map(PathBuf::as_path))?;
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for t in p.elements() {
        *hist.entry(t.degree()).or_default() += 1;
    }
    let order = p.poset();
    let atoms = order.atoms().len();
    let maximal = order.maximal_elements().len();
    let digest = order_digest(&p);
    out.emit(
        "enumerate",
        json!({
            "n": size.n, "family": size.family, "elements": p.len(),
            "degree_histogram": hist.iter().map(|(d, c)| json!({"degree": d, "count": c})).collect::<Vec<_>>(),
            "atoms": atoms, "maximal": maximal, "order_digest": digest, "from_cache": reused,
        }),
        || {
            let name = match size.family {
                Family::Out => format!("WO_{}", size.n),
                Family::Aut => format!("WA_{}", size.n),
            };
            let hist: Vec<String> = hist.iter().map(|(d, c)| format!("{d}:{c}")).collect();
            format!(
                "{name}: {}\ndegree histogram {}\n{}, {}\norder digest {digest}{}",
                plural(p.len(), "element"),
                hist.join(" "),
                plural(atoms, "atom"),
                plural(maximal, "maximal element"),
                if reused { " (from cache)" } else { "" }
            )
        },
    );
    Ok(0)
}

fn verify(
    out: &Output,
    n: usize,
    family: Option<Family>,
    suite: Suite,
    cache: Option<&PathBuf>,
) -> Result<u8, CliError> {
    let families = match family {
        Some(f) => vec![f],
        None => vec![Family::Out, Family::Aut],
    };
    let checks = suites::run(suite, n, &families, cache.map(PathBuf::as_path))?;
    for c in &checks {
        out.emit("check", json!({"n": n, "check": c}), || {
            let fam = c.family.map(|f| format!(" [{f}]")).unwrap_or_default();
            format!(
                "{} {}{fam} {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite,
                c.name,
                c.detail
            )
        });
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    out.emit("summary", json!({"checks": checks.len(), "failed": failed}), || {
        format!("{} passed, {failed} failed", checks.len() - failed)
    });
    Ok(if failed == 0 { 0 } else { 2 })
}

#[allow(clippy::too_many_arguments)]
fn sigma(
    out: &Output,
    query: Query,
    character: Option<&PathBuf>,
    m: Option<usize>,
    n: Option<usize>,
    family: Option<Family>,
    graph: Option<&PathBuf>,
    presentation: Option<&PathBuf>,
) -> Result<u8, CliError> {
    let need_char = || -> Result<_, CliError> {
        inputs::character(character.ok_or_else(|| CliError::Input("this query needs --char FILE".into()))?)
    };
    let need_m = || m.ok_or_else(|| CliError::Input("this query needs --m".into()));
    match query {
        Query::Ok1 => {
            let v = orlandi_korner_sigma1(&need_char()?)?;
            emit_verdict(out, "ok1", &v);
            Ok(verdict_code(v.status))
        }
        Query::Generic => {
            let chi = need_char()?;
            let w = chi.genericity_witness()?;
            out.emit(
                "generic",
                json!({"generic": w.is_none(), "vanishes_on": w.as_ref().map(|s| s.to_string())}),
                || match &w {
                    None => "generic: χ is nonzero on every nontrivial Whitehead generator".into(),
                    Some(s) => format!("not generic: χ vanishes on {s}"),
                },
            );
            Ok(if w.is_none() { 0 } else { 1 })
        }
        Query::Density => {
            let cert = density_certificate(&need_char()?, need_m()?)?;
            out.emit("density", json!({"certificate": cert, "passed": cert.passed()}), || {
                let mut s = format!("density certificate: {}", if cert.passed() { "PASS" } else { "FAIL" });
                for h in &cert.hypotheses {
                    s.push_str(&format!(
                        "\n  [{}] {} ({:?}): {}",
                        if h.holds { "ok" } else { "FAIL" },
                        h.name,
                        h.evidence,
                        h.detail
                    ));
                }
                s.push_str(&format!("\n  conclusion: {}", cert.conclusion));
                s
            });
            Ok(if cert.passed() { 0 } else { 2 })
        }
        Query::Emptiness => {
            let (n, family) = match (n, family, character) {
                (Some(n), Some(f), _) => (n, f),
                (_, _, Some(_)) => {
                    let chi = need_char()?;
                    (chi.n(), chi.family())
                }
                _ => return Err(CliError::Input("emptiness needs --n and --family, or --char".into())),
            };
            let v = emptiness_verdict(n, need_m()?, family)?;
            emit_verdict(out, "emptiness", &v);
            Ok(verdict_code(v.status))
        }
        Query::Sigma2Sufficient => {
            let v = sigma2_sufficient(&need_char()?)?;
            emit_verdict(out, "sigma2-sufficient", &v);
            Ok(verdict_code(v.status))
        }
        Query::Raag => {
            let path = graph.ok_or_else(|| CliError::Input("raag needs --graph FILE".into()))?;
            let (g, values) = inputs::graph(path)?;
            let chordality = g.chordality();
            out.emit("chordality", json!(chordality), || match &chordality.chordless_cycle {
                None => "Γ is chordal".into(),
                Some(c) => format!(
                    "Γ is not chordal; chordless cycle {}",
                    c.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(" - ")
                ),
            });
            let s1 = raag_sigma1(&g, &values)?;
            let s2 = raag_sigma2(&g, &values)?;
            emit_verdict(out, "raag-sigma1", &s1);
            emit_verdict(out, "raag-sigma2", &s2);
            Ok(verdict_code(s1.status).max(verdict_code(s2.status)))
        }
        Query::Meinert => {
            if let Some(path) = presentation {
                let q = inputs::presentation(path)?;
                let v = meinert_quotient_check(&q.presentation, &q.r1, &q.values, &q.witness)?;
                emit_verdict(out, "meinert", &v);
                return Ok(verdict_code(v.status));
            }
            let n = n.ok_or_else(|| CliError::Input("meinert needs --presentation FILE or --n".into()))?;
            if n < 10 {
                return Err(CliError::Input("Γ(n, S) needs n >= 10".into()));
            }
            let s = standard_s();
            let g = build_meinert_graph(n, &s)?;
            let idx: Vec<usize> = (0..g.len())
                .filter(|&v| s.iter().any(|(i, j)| g.label(v) == format!("({i},{j})")))
                .collect();
            let clique = idx.iter().all(|&a| idx.iter().all(|&b| a == b || g.has_edge(a, b)));
            let dominated = (0..g.len()).all(|v| idx.contains(&v) || idx.iter().any(|&a| g.has_edge(v, a)));
            let only_s = (0..g.len())
                .filter(|v| !idx.contains(v))
                .all(|v| g.neighbours(v).all(|u| idx.contains(&u)));
            let chordal = g.is_chordal();
            let ok = clique && dominated && only_s && chordal;
            out.emit(
                "meinert-graph",
                json!({"n": n, "vertices": g.len(), "edges": g.edge_count(), "s_clique": clique,
                       "dominated_by_s": dominated, "outside_s_adjacent_only_to_s": only_s, "chordal": chordal}),
                || {
                    format!(
                        "Γ({n}, S): {} vertices, {} edges\n  S is a clique: {clique}\n  every vertex adjacent to S: {dominated}\n  vertices outside S adjacent only to S: {only_s}\n  chordal: {chordal}",
                        g.len(),
                        g.edge_count()
                    )
                },
            );
            Ok(if ok { 0 } else { 2 })
        }
    }
}

fn homology(out: &Output, size: &Size, keep_min: bool, cache: Option<&PathBuf>) -> Result<u8, CliError> {
    let (p, _) = suites::obtain_poset(size.n, size.family, cache.map(PathBuf::as_path))?;
    let x = flag_complex(&p.poset(), !keep_min).map_err(|e| CliError::Verification(e.to_string()))?;
    let h = reduced_homology(&x, x.dimension());
    out.emit(
        "homology",
        json!({"n": size.n, "family": size.family, "keep_min": keep_min, "f_vector": x.f_vector(), "reduced_homology": h.groups}),
        || {
            let mut s = format!("f-vector {:?}", x.f_vector());
            for g in &h.groups {
                s.push_str(&format!("\nH~_{} = {}", g.degree, suites::describe_group(g)));
            }
            s
        },
    );
    Ok(0)
}

fn rao(out: &Output, size: &Size, cache: Option<&PathBuf>) -> Result<u8, CliError> {
    let (p, _) = suites::obtain_poset(size.n, size.family, cache.map(PathBuf::as_path))?;
    let z = bounded_dual(&p.poset());
    let err = |e: mccool_core::complexes::ComplexError| CliError::Verification(e.to_string());
    let start = Instant::now();
    let found = find_rao(&z).map_err(err)?;
    let verified = match &found {
        Some(r) => verify_rao(&z, r).map_err(err)?,
        None => false,
    };
    let elapsed = start.elapsed();
    out.emit(
        "rao",
        json!({"n": size.n, "family": size.family, "found": found.is_some(), "verified": verified,
               "atoms": found.as_ref().map(|r| r.atoms().len()), "intervals": found.as_ref().map(|r| r.interval_count())}),
        || match &found {
            Some(r) => format!(
                "recursive atom ordering found: {} atoms, {} intervals; verification {} ({:.2?})",
                r.atoms().len(),
                r.interval_count(),
                if verified { "passed" } else { "FAILED" },
                elapsed
            ),
            None => format!("no recursive atom ordering found ({elapsed:.2?})"),
        },
    );
    Ok(if verified { 0 } else { 2 })
}

fn certificate_check(out: &Output, file: &PathBuf) -> Result<u8, CliError> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let cert = CertificateFile::from_json(&text).map_err(|e| CliError::Input(e.to_string()))?;
    let rep = cert.verify().map_err(|e| CliError::Input(e.to_string()))?;
    out.emit("certificate", json!({"report": rep, "passed": rep.passed()}), || {
        format!(
            "certificate: {}\n  expansion equals the word in F(X): {}\n  χ_min(expansion) = {} >= C = {}: {}",
            if rep.passed() { "PASS" } else { "FAIL" },
            rep.freely_equal,
            rep.chi_min,
            rep.claimed_c,
            rep.bound_holds
        )
    });
    Ok(if rep.passed() { 0 } else { 2 })
}

fn run(cli: &Cli, out: &Output) -> Result<u8, CliError> {
    let cache = cli.cache.as_ref();
    match &cli.command {
        Command::Enumerate(size) => enumerate(out, size, cache),
        Command::Verify { n, family, suite } => verify(out, *n, *family, *suite, cache),
        Command::Sigma {
            query,
            character,
            m,
            n,
            family,
            graph,
            presentation,
        } => sigma(
            out,
            *query,
            character.as_ref(),
            *m,
            *n,
            *family,
            graph.as_ref(),
            presentation.as_ref(),
        ),
        Command::Homology { size, keep_min } => homology(out, size, *keep_min, cache),
        Command::Rao(size) => rao(out, size, cache),
        Command::CertificateCheck { file } => certificate_check(out, file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let out = Output { format: cli.format };
    match run(&cli, &out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let (kind, msg) = match &e {
                CliError::Input(m) => ("input", m),
                CliError::Verification(m) => ("verification", m),
            };
            out.emit(
                "error",
                json!({"kind": kind, "message": msg, "exit_code": e.code()}),
                || format!("error ({kind}): {msg}"),
            );
            ExitCode::from(e.code())
        }
    }
}
