use std::fmt;

use crate::labels::LabelSet;

use super::word::{Letter, ReducedWord};
use super::FreeGroupError;

/// A pure symmetric automorphism of `F_rank`, stored by conjugators:
/// `x_i -> w_i^{-1} x_i w_i`.
///
/// Each conjugator is kept in canonical form: it never begins with
/// `x_i^{±1}`, since `x_i^m w_i` conjugates `x_i` the same way as `w_i`.
/// Two automorphisms are equal iff their canonical conjugators are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PureSymAut {
    rank: usize,
    conjugators: Vec<ReducedWord>,
}

impl PureSymAut {
    pub fn identity(rank: usize) -> Self {
        PureSymAut {
            rank,
            conjugators: vec![ReducedWord::identity(rank); rank],
        }
    }

    /// Build from arbitrary conjugators `w_1, ..., w_rank` (canonicalized here).
    pub fn from_conjugators(rank: usize, conjugators: Vec<ReducedWord>) -> Result<Self, FreeGroupError> {
        if conjugators.len() != rank {
            return Err(FreeGroupError::RankMismatch {
                left: rank,
                right: conjugators.len(),
            });
        }
        let mut out = Vec::with_capacity(rank);
        for (k, w) in conjugators.into_iter().enumerate() {
            if w.rank() != rank {
                return Err(FreeGroupError::RankMismatch {
                    left: rank,
                    right: w.rank(),
                });
            }
            out.push(w.split_leading_power(k + 1).1);
        }
        Ok(PureSymAut { rank, conjugators: out })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Canonical conjugator of `x_i` (1-based).
    pub fn conjugator(&self, i: usize) -> &ReducedWord {
        &self.conjugators[i - 1]
    }

    pub fn conjugators(&self) -> &[ReducedWord] {
        &self.conjugators
    }

    /// The reduced word `w_i^{-1} x_i w_i`.
    pub fn image(&self, i: usize) -> ReducedWord {
        let w = &self.conjugators[i - 1];
        let mut letters: Vec<Letter> = Vec::with_capacity(2 * w.len() + 1);
        letters.extend(w.letters().iter().rev().map(|l| -l));
        letters.push(i as Letter);
        letters.extend_from_slice(w.letters());
        // canonical conjugators never start with x_i^{±1}, so nothing cancels
        ReducedWord::from_reduced_unchecked(self.rank, letters)
    }

    /// Apply the automorphism to a word.
    pub fn apply(&self, word: &ReducedWord) -> Result<ReducedWord, FreeGroupError> {
        if word.rank() != self.rank {
            return Err(FreeGroupError::RankMismatch {
                left: self.rank,
                right: word.rank(),
            });
        }
        let images: Vec<ReducedWord> = (1..=self.rank).map(|i| self.image(i)).collect();
        let inverses: Vec<ReducedWord> = images.iter().map(ReducedWord::inverse).collect();
        Ok(ReducedWord::product(
            self.rank,
            word.letters().iter().map(|&l| {
                let k = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    &images[k]
                } else {
                    &inverses[k]
                }
            }),
        ))
    }

    pub fn is_identity(&self) -> bool {
        self.conjugators.iter().all(ReducedWord::is_empty)
    }

    /// Sum of canonical conjugator lengths.
    pub fn conjugator_length(&self) -> usize {
        self.conjugators.iter().map(ReducedWord::len).sum()
    }

    /// If the automorphism is conjugation `x_i -> w^{-1} x_i w` by a single
    /// word, return that `w`.
    ///
    /// Any common conjugator has the form `w = x_i^{m_i} w_i` for every `i`.
    /// Fixing `i = 1`, each `k != 1` forces `w_1 w_k^{-1} = x_1^{-m} x_k^{m_k}`,
    /// which pins `m` uniquely (or rules out a solution). For rank `>= 2`
    /// the common conjugator is therefore unique.
    pub fn inner_conjugator(&self) -> Option<ReducedWord> {
        if self.rank <= 1 {
            return Some(ReducedWord::identity(self.rank));
        }
        let w1 = &self.conjugators[0];
        let mut forced: Option<i64> = None;
        for k in 2..=self.rank {
            let wk = &self.conjugators[k - 1];
            let c = w1.mul(&wk.inverse()).expect("same rank");
            let (a, rest) = c.split_leading_power(1);
            let (_, tail) = rest.split_leading_power(k);
            if !tail.is_empty() {
                return None;
            }
            let m = -a;
            match forced {
                None => forced = Some(m),
                Some(prev) if prev != m => return None,
                _ => {}
            }
        }
        let m = forced.unwrap_or(0);
        let prefix = ReducedWord::generator_power(self.rank, 1, m).expect("rank >= 1");
        Some(prefix.mul(w1).expect("same rank"))
    }

    pub fn is_inner(&self) -> bool {
        self.inner_conjugator().is_some()
    }

    /// Try to write the inverse as a product of Whitehead automorphisms by
    /// greedily shortening the conjugators. The candidate is verified by
    /// composition before it is returned.
    pub fn inverse_candidate(&self) -> Option<PureSymAut> {
        let n = self.rank;
        let generators = all_whitehead_symbols(n);
        let mut current = self.clone();
        let mut acc = PureSymAut::identity(n);
        let budget = 4 * self.conjugator_length() + 4;
        for _ in 0..budget {
            if current.is_identity() {
                break;
            }
            let len = current.conjugator_length();
            let best = generators
                .iter()
                .map(|s| {
                    let g = whitehead_aut(n, s).expect("valid symbol");
                    let next = compose(&g, &current).expect("same rank");
                    (next.conjugator_length(), g, next)
                })
                .filter(|(l, _, _)| *l < len)
                .min_by_key(|(l, _, _)| *l)?;
            acc = compose(&best.1, &acc).expect("same rank");
            current = best.2;
        }
        if !current.is_identity() {
            return None;
        }
        let check = compose(&acc, self).ok()?;
        (check.is_identity() && compose(self, &acc).ok()?.is_identity()).then_some(acc)
    }
}

/// `compose(a, b)` applies `b` first, then `a`: `x -> a(b(x))`.
pub fn compose(a: &PureSymAut, b: &PureSymAut) -> Result<PureSymAut, FreeGroupError> {
    if a.rank != b.rank {
        return Err(FreeGroupError::RankMismatch {
            left: a.rank,
            right: b.rank,
        });
    }
    // a(w^{-1} x_i w) = a(w)^{-1} u_i^{-1} x_i u_i a(w)
    let mut conjugators = Vec::with_capacity(a.rank);
    for i in 1..=a.rank {
        let w = &b.conjugators[i - 1];
        let aw = a.apply(w)?;
        let c = a.conjugators[i - 1].mul(&aw)?;
        conjugators.push(c.split_leading_power(i).1);
    }
    Ok(PureSymAut {
        rank: a.rank,
        conjugators,
    })
}

/// True iff `a` and `b` commute as automorphisms.
pub fn commutes(a: &PureSymAut, b: &PureSymAut) -> Result<bool, FreeGroupError> {
    Ok(compose(a, b)? == compose(b, a)?)
}

impl fmt::Debug for PureSymAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PureSymAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 1..=self.rank {
            if i > 1 {
                write!(f, ", ")?;
            }
            write!(f, "x{i} -> {}", self.image(i))?;
        }
        write!(f, "]")
    }
}

/// `α_{I,j}^e`: conjugate every `x_i` with `i ∈ I` by `x_j^e`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct WhiteheadSymbol {
    pub base: usize,
    pub moved: LabelSet,
    pub exponent: i64,
}

impl WhiteheadSymbol {
    pub fn new(base: usize, moved: LabelSet, exponent: i64) -> Self {
        WhiteheadSymbol { base, moved, exponent }
    }

    /// `α_{ij} = α_{{i},j}`.
    pub fn alpha(i: usize, j: usize) -> Self {
        Self::new(j, LabelSet::singleton(i), 1)
    }

    pub fn pow(self, e: i64) -> Self {
        WhiteheadSymbol {
            exponent: self.exponent * e,
            ..self
        }
    }

    pub fn inverse(self) -> Self {
        self.pow(-1)
    }

    pub fn validate(&self, rank: usize) -> Result<(), FreeGroupError> {
        let valid = (1..=rank).contains(&self.base)
            && !self.moved.contains(self.base)
            && self.moved.is_subset(LabelSet::full(rank));
        if valid {
            Ok(())
        } else {
            Err(FreeGroupError::InvalidSymbol {
                symbol: self.to_string(),
                rank,
            })
        }
    }
}

impl fmt::Display for WhiteheadSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a[{},{}]", self.moved, self.base)?;
        if self.exponent != 1 {
            write!(f, "^{}", self.exponent)?;
        }
        Ok(())
    }
}

/// Every `α_{I,j}^{±1}` with `I` non-empty.
fn all_whitehead_symbols(n: usize) -> Vec<WhiteheadSymbol> {
    let mut out = Vec::new();
    for j in 1..=n {
        let rest = LabelSet::full(n).without(j);
        for moved in rest.subsets().filter(|s| !s.is_empty()) {
            out.push(WhiteheadSymbol::new(j, moved, 1));
            out.push(WhiteheadSymbol::new(j, moved, -1));
        }
    }
    out
}

/// The automorphism `α_{I,j}^e`: `x_i -> x_j^{-e} x_i x_j^e` for `i ∈ I`.
pub fn whitehead_aut(n: usize, symbol: &WhiteheadSymbol) -> Result<PureSymAut, FreeGroupError> {
    symbol.validate(n)?;
    let mut conjugators = vec![ReducedWord::identity(n); n];
    if symbol.exponent != 0 {
        let w = ReducedWord::generator_power(n, symbol.base, symbol.exponent)?;
        for i in symbol.moved {
            conjugators[i - 1] = w.clone();
        }
    }
    Ok(PureSymAut { rank: n, conjugators })
}

/// A product of Whitehead symbols, read left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FormalGeneratorWord(pub Vec<WhiteheadSymbol>);

impl FormalGeneratorWord {
    pub fn empty() -> Self {
        FormalGeneratorWord(Vec::new())
    }

    pub fn single(s: WhiteheadSymbol) -> Self {
        FormalGeneratorWord(vec![s])
    }

    pub fn symbols(&self) -> &[WhiteheadSymbol] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        FormalGeneratorWord(self.0.iter().rev().map(|s| s.inverse()).collect())
    }

    pub fn concat(&self, other: &FormalGeneratorWord) -> Self {
        FormalGeneratorWord(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    /// `[u, v] = u^{-1} v^{-1} u v`.
    pub fn commutator(u: &FormalGeneratorWord, v: &FormalGeneratorWord) -> Self {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    /// Replace every symbol by its inverse, keeping the order (the
    /// substitution `α_{ij} -> α_{ij}^{-1}`).
    pub fn omega(&self) -> Self {
        FormalGeneratorWord(self.0.iter().map(|s| s.inverse()).collect())
    }

    pub fn validate(&self, rank: usize) -> Result<(), FreeGroupError> {
        self.0.iter().try_for_each(|s| s.validate(rank))
    }
}

impl fmt::Display for FormalGeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Evaluate `g_1 g_2 ... g_k` as the automorphism `g_1 ∘ g_2 ∘ ... ∘ g_k`.
pub fn evaluate_formal(n: usize, word: &FormalGeneratorWord) -> Result<PureSymAut, FreeGroupError> {
    word.validate(n)?;
    let mut acc = PureSymAut::identity(n);
    for s in &word.0 {
        acc = compose(&acc, &whitehead_aut(n, s)?)?;
    }
    Ok(acc)
}
