use std::fmt;

use super::FreeGroupError;

/// A signed generator: `+k` is `x_k`, `-k` is `x_k^{-1}`, `k >= 1`.
pub type Letter = i32;

/// A freely reduced word in the free group on `x_1, ..., x_rank`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    rank: usize,
    letters: Vec<Letter>,
}

fn check_letter(rank: usize, letter: Letter) -> Result<(), FreeGroupError> {
    if letter == 0 || letter.unsigned_abs() as usize > rank {
        return Err(FreeGroupError::LetterOutOfRange { letter, rank });
    }
    Ok(())
}

/// Stack-scan free reduction of `raw` onto `out`.
fn push_reduced(out: &mut Vec<Letter>, raw: impl IntoIterator<Item = Letter>) {
    for l in raw {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
}

/// Freely reduce `raw` over the alphabet `x_1..x_rank`.
pub fn reduce(rank: usize, raw: &[Letter]) -> Result<ReducedWord, FreeGroupError> {
    for &l in raw {
        check_letter(rank, l)?;
    }
    let mut letters = Vec::with_capacity(raw.len());
    push_reduced(&mut letters, raw.iter().copied());
    Ok(ReducedWord { rank, letters })
}

impl ReducedWord {
    pub fn identity(rank: usize) -> Self {
        ReducedWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// `x_i^e`.
    pub fn generator_power(rank: usize, i: usize, e: i64) -> Result<Self, FreeGroupError> {
        let letter = if e >= 0 { i as Letter } else { -(i as Letter) };
        check_letter(rank, letter)?;
        Ok(ReducedWord {
            rank,
            letters: vec![letter; e.unsigned_abs() as usize],
        })
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

    pub fn inverse(&self) -> Self {
        ReducedWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// The reduced product `self * other`.
    pub fn mul(&self, other: &ReducedWord) -> Result<Self, FreeGroupError> {
        if self.rank != other.rank {
            return Err(FreeGroupError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut letters = self.letters.clone();
        push_reduced(&mut letters, other.letters.iter().copied());
        Ok(ReducedWord {
            rank: self.rank,
            letters,
        })
    }

    /// Reduced product of a sequence of words, all of rank `rank`.
    pub fn product<'a>(rank: usize, words: impl IntoIterator<Item = &'a ReducedWord>) -> Self {
        let mut letters = Vec::new();
        for w in words {
            debug_assert_eq!(w.rank, rank);
            push_reduced(&mut letters, w.letters.iter().copied());
        }
        ReducedWord { rank, letters }
    }

    /// Split off the maximal leading power of `x_i`: returns `(e, rest)` with
    /// `self = x_i^e * rest` and `rest` not starting with `x_i^{±1}`.
    pub fn split_leading_power(&self, i: usize) -> (i64, ReducedWord) {
        let g = i as Letter;
        let run = self.letters.iter().take_while(|&&l| l == g || l == -g).count();
        // a reduced word cannot contain x_i x_i^{-1}, so the run has one sign
        let e = match self.letters.first() {
            Some(&l) if run > 0 && l > 0 => run as i64,
            Some(_) if run > 0 => -(run as i64),
            _ => 0,
        };
        (
            e,
            ReducedWord {
                rank: self.rank,
                letters: self.letters[run..].to_vec(),
            },
        )
    }

    pub(crate) fn from_reduced_unchecked(rank: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != -w[1]));
        ReducedWord { rank, letters }
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, &l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if l > 0 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "x{}^-1", -l)?;
            }
        }
        Ok(())
    }
}
