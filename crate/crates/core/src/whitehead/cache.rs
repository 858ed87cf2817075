//! Line-delimited JSON cache for enumerated posets.
//!
//! ```text
//! {"format":"whitehead-poset","version":1,"n":4,"family":"out","elements":29}
//! {"petals":[[1,2,3,4]]}
//! ...
//! {"order_digest":"<sha256 hex>"}
//! ```
//!
//! Loading re-derives the order from the trees and compares digests, so a
//! corrupted or tampered file is reported instead of silently used.

use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{EnumerationLimit, Family, HyperTree, WhiteheadError, WhiteheadPoset};
use crate::labels::LabelSet;

const FORMAT: &str = "whitehead-poset";
const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] io::Error),
    #[error("cache line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported cache format {format:?} version {version}")]
    Version { format: String, version: u32 },
    #[error("cache header is for n = {found_n} ({found_family}), expected n = {n} ({family})")]
    WrongPoset {
        n: usize,
        family: Family,
        found_n: usize,
        found_family: Family,
    },
    #[error("order digest mismatch: file has {stored}, recomputed {computed}")]
    DigestMismatch { stored: String, computed: String },
    #[error(transparent)]
    Tree(#[from] WhiteheadError),
}

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    n: usize,
    family: Family,
    elements: usize,
}

#[derive(Serialize, Deserialize)]
struct Record {
    petals: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct Trailer {
    order_digest: String,
}

/// SHA-256 over the element encodings followed by every order row.
pub fn order_digest(poset: &WhiteheadPoset) -> String {
    let mut h = Sha256::new();
    h.update(format!("{FORMAT}/{VERSION}/{}/{}\n", poset.n(), poset.family()));
    for t in poset.elements() {
        h.update(t.encode());
        h.update(b"\n");
    }
    for x in 0..poset.len() {
        let row: Vec<String> = (0..poset.len())
            .filter(|&y| poset.leq_index(x, y))
            .map(|y| y.to_string())
            .collect();
        h.update(row.join(","));
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

/// The file name used for a poset inside a cache directory.
pub fn cache_path(dir: &Path, n: usize, family: Family) -> PathBuf {
    dir.join(format!("{family}-{n}.jsonl"))
}

pub fn save_poset(poset: &WhiteheadPoset, path: &Path) -> Result<(), CacheError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut w = BufWriter::new(fs::File::create(path)?);
    let header = Header {
        format: FORMAT.into(),
        version: VERSION,
        n: poset.n(),
        family: poset.family(),
        elements: poset.len(),
    };
    let json = |e: serde_json::Error| CacheError::Io(io::Error::other(e));
    writeln!(w, "{}", serde_json::to_string(&header).map_err(json)?)?;
    for t in poset.elements() {
        let rec = Record {
            petals: t.petal_lists(),
        };
        writeln!(w, "{}", serde_json::to_string(&rec).map_err(json)?)?;
    }
    let trailer = Trailer {
        order_digest: order_digest(poset),
    };
    writeln!(w, "{}", serde_json::to_string(&trailer).map_err(json)?)?;
    w.flush()?;
    Ok(())
}

/// Read a cached poset, rebuild its order and check the stored digest.
pub fn load_poset(path: &Path, expect: Option<(usize, Family)>) -> Result<WhiteheadPoset, CacheError> {
    let reader = BufReader::new(fs::File::open(path)?);
    let lines: Vec<String> = reader.lines().collect::<Result<_, _>>()?;
    let parse_err = |line: usize, message: String| CacheError::Parse { line, message };
    let first = lines.first().ok_or_else(|| parse_err(1, "empty file".into()))?;
    let header: Header = serde_json::from_str(first).map_err(|e| parse_err(1, e.to_string()))?;
    if header.format != FORMAT || header.version != VERSION {
        return Err(CacheError::Version {
            format: header.format,
            version: header.version,
        });
    }
    if let Some((n, family)) = expect {
        if (n, family) != (header.n, header.family) {
            return Err(CacheError::WrongPoset {
                n,
                family,
                found_n: header.n,
                found_family: header.family,
            });
        }
    }
    if lines.len() != header.elements + 2 {
        return Err(parse_err(
            lines.len(),
            format!(
                "expected {} element lines, found {}",
                header.elements,
                lines.len().saturating_sub(2)
            ),
        ));
    }
    let labels = header.family.ambient_labels(header.n);
    let mut elements = Vec::with_capacity(header.elements);
    for (k, line) in lines[1..=header.elements].iter().enumerate() {
        let rec: Record = serde_json::from_str(line).map_err(|e| parse_err(k + 2, e.to_string()))?;
        let mut petals = Vec::new();
        for p in rec.petals {
            let mut s = LabelSet::EMPTY;
            for i in p {
                if i == 0 || i > labels {
                    return Err(parse_err(k + 2, format!("label {i} out of range")));
                }
                s.insert(i);
            }
            petals.push(s);
        }
        let t = HyperTree::new(labels, petals)?;
        if header.family == Family::Aut && !t.is_leaf(labels) {
            return Err(parse_err(k + 2, format!("{t} is not in the AUT family")));
        }
        elements.push(t);
    }
    let trailer: Trailer =
        serde_json::from_str(&lines[header.elements + 1]).map_err(|e| parse_err(header.elements + 2, e.to_string()))?;
    elements.sort();
    elements.dedup();
    let poset = WhiteheadPoset::from_elements(
        header.n,
        header.family,
        elements,
        EnumerationLimit::default().dense_max_elements,
    );
    let computed = order_digest(&poset);
    if computed != trailer.order_digest {
        return Err(CacheError::DigestMismatch {
            stored: trailer.order_digest,
            computed,
        });
    }
    Ok(poset)
}
