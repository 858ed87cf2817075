//! Unreduced words over a finite alphabet, prefix minima, and the
//! certificate form of the combinatorial Σ² condition.

mod certificate;

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::freegroup::{reduce, FreeGroupError, Letter, ReducedWord};

pub use certificate::{
    combine_constants, compute_cq, compute_cx, expand, verify_sigma2_certificate, CertificateFile, CertificateReport,
    ConjugacyDecomposition, DecompositionTerm, CERTIFICATE_VERSION,
};

#[derive(Debug, Error)]
pub enum WordsError {
    #[error(transparent)]
    Letter(#[from] FreeGroupError),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("word {0} is not χ-non-negative")]
    NotNonNegative(String),
    #[error("relator {0} is not in the declared relator set")]
    UnknownRelator(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Named letters `x_1, ..., x_k`; words refer to them as `±index` (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: Vec<String>) -> Result<Self, WordsError> {
        for (k, a) in names.iter().enumerate() {
            if a.is_empty() || a.contains(|c: char| c.is_whitespace() || c == '^') {
                return Err(WordsError::Parse(format!("bad letter name {a:?}")));
            }
            if names[..k].contains(a) {
                return Err(WordsError::Parse(format!("duplicate letter {a:?}")));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|a| a == name)
    }

    /// Whitespace-separated tokens `x`, `x^-1`, `x^3`; `1` or an empty
    /// string is the empty word.
    pub fn parse(&self, text: &str) -> Result<FormalWord, WordsError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, power) = match tok.split_once('^') {
                Some((a, p)) => (
                    a,
                    p.parse::<i32>()
                        .map_err(|_| WordsError::Parse(format!("bad power in {tok:?}")))?,
                ),
                None => (tok, 1),
            };
            let k = self
                .index(name)
                .ok_or_else(|| WordsError::Parse(format!("unknown letter {name:?}")))? as Letter
                + 1;
            let l = if power < 0 { -k } else { k };
            letters.extend(std::iter::repeat_n(l, power.unsigned_abs() as usize));
        }
        FormalWord::new(self.len(), letters)
    }

    pub fn format(&self, w: &FormalWord) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters
            .iter()
            .map(|&l| {
                let name = &self.names[l.unsigned_abs() as usize - 1];
                if l < 0 {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A word in `Ω(X)`: a finite sequence of letters and inverse letters,
/// never freely reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl FormalWord {
    pub fn new(rank: usize, letters: Vec<Letter>) -> Result<Self, WordsError> {
        if let Some(&l) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > rank) {
            return Err(FreeGroupError::LetterOutOfRange { letter: l, rank }.into());
        }
        Ok(FormalWord { rank, letters })
    }

    pub fn empty(rank: usize) -> Self {
        FormalWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// `x^e` as `|e|` letters.
    pub fn power(rank: usize, letter: Letter, e: i64) -> Result<Self, WordsError> {
        let l = if e < 0 { -letter } else { letter };
        Self::new(rank, vec![l; e.unsigned_abs() as usize])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `w⁻¹ = x_k⁻¹ ⋯ x_1⁻¹`, letter by letter.
    pub fn invert(&self) -> Self {
        FormalWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "words over different alphabets");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FormalWord {
            rank: self.rank,
            letters,
        }
    }

    /// The element of `F(X)` represented by this word.
    pub fn reduce(&self) -> ReducedWord {
        reduce(self.rank, &self.letters).expect("letters validated on construction")
    }

    /// Same element of the free group.
    pub fn freely_equal(&self, other: &Self) -> bool {
        self.rank == other.rank && self.reduce() == other.reduce()
    }
}

impl fmt::Debug for FormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalWord{:?}", self.letters)
    }
}

/// A character of the free monoid `Ω(X)`: one exact value per letter, with
/// `χ(x⁻¹) = −χ(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterWeighting {
    values: Vec<BigRational>,
}

impl LetterWeighting {
    pub fn new(values: Vec<BigRational>) -> Self {
        LetterWeighting { values }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn letter(&self, l: Letter) -> BigRational {
        let v = &self.values[l.unsigned_abs() as usize - 1];
        if l < 0 {
            -v
        } else {
            v.clone()
        }
    }

    fn check(&self, w: &FormalWord) {
        assert_eq!(self.rank(), w.rank(), "weighting and word over different alphabets");
    }

    pub fn chi(&self, w: &FormalWord) -> BigRational {
        self.check(w);
        w.letters.iter().map(|&l| self.letter(l)).sum()
    }

    /// Minimum of `χ` over all prefixes, the empty prefix included; never
    /// positive.
    pub fn chi_min(&self, w: &FormalWord) -> BigRational {
        self.check(w);
        let mut sum = BigRational::zero();
        let mut min = BigRational::zero();
        for &l in &w.letters {
            sum += self.letter(l);
            if sum < min {
                min = sum.clone();
            }
        }
        min
    }

    pub fn is_non_negative(&self, w: &FormalWord) -> bool {
        !self.chi_min(w).is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xy() -> Alphabet {
        Alphabet::new(vec!["x".into(), "y".into()]).unwrap()
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn chi_examples() {
        let a = xy();
        let chi = LetterWeighting::from_integers(&[1, -2]);
        let w = a.parse("x x^-1 y").unwrap();
        assert_eq!(chi.chi(&w), q(-2));
        assert_eq!(chi.chi_min(&w), q(-2));
        let e = FormalWord::empty(2);
        assert_eq!(chi.chi(&e), q(0));
        assert_eq!(chi.chi_min(&e), q(0));
        let pos = LetterWeighting::from_integers(&[1, 3]);
        assert!(pos.is_non_negative(&a.parse("x y y x").unwrap()));
    }

    #[test]
    fn inverse_and_concat() {
        let a = xy();
        assert_eq!(a.parse("x y").unwrap().invert(), a.parse("y^-1 x^-1").unwrap());
        let u = a.parse("x y^2").unwrap();
        assert_eq!(u.concat(&FormalWord::empty(2)), u);
        assert_eq!(a.format(&u), "x y y");
        // no reduction happens
        assert_eq!(a.parse("x x^-1").unwrap().len(), 2);
        assert!(a.parse("z").is_err());
        assert!(FormalWord::new(2, vec![3]).is_err());
    }

    fn word(rank: usize) -> impl Strategy<Value = FormalWord> {
        proptest::collection::vec((1..=rank as i32, any::<bool>()), 0..24).prop_map(move |ls| {
            FormalWord::new(rank, ls.into_iter().map(|(l, neg)| if neg { -l } else { l }).collect()).unwrap()
        })
    }

    fn weighting(rank: usize) -> impl Strategy<Value = LetterWeighting> {
        proptest::collection::vec((-5i64..=5, 1i64..=3), rank).prop_map(|vs| {
            LetterWeighting::new(
                vs.into_iter()
                    .map(|(a, b)| BigRational::new(a.into(), b.into()))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn chi_min_never_positive(w in word(3), chi in weighting(3)) {
            let m = chi.chi_min(&w);
            prop_assert!(!m.is_positive());
            prop_assert!(m <= chi.chi(&w));
            prop_assert_eq!(chi.chi(&w.invert()), -chi.chi(&w));
        }
    }
}
