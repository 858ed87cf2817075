use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::Value;

use crate::freegroup::{FormalGeneratorWord, WhiteheadSymbol};
use crate::labels::LabelSet;
use crate::whitehead::Family;

use super::SigmaError;

/// Largest `n` for which subset-sum genericity is enumerated.
pub const MAX_GENERIC_N: usize = 16;

/// A character of `PSAut_n` or `PSOut_n`, given by its exact values on the
/// generators `α_{i,j}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Character {
    n: usize,
    family: Family,
    values: Vec<BigRational>,
}

fn slot(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + (j - 1)
}

/// Parse `"3"`, `"-3/2"`; anything else (including decimals) is rejected.
pub fn parse_rational(text: &str) -> Result<BigRational, SigmaError> {
    let bad = || SigmaError::Parse(format!("not an exact rational: {text:?}"));
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl Character {
    /// Validate: some value is nonzero, and for OUT every base column sums
    /// to zero (the inner automorphisms `ᾱ_{[n]∖{j},j}` are trivial).
    pub fn new(n: usize, family: Family, values: &BTreeMap<(usize, usize), BigRational>) -> Result<Self, SigmaError> {
        if n < family.min_n() {
            return Err(SigmaError::InvalidCharacter(format!(
                "n = {n} is too small for {family}"
            )));
        }
        let mut v = vec![BigRational::zero(); n * n];
        for (&(i, j), x) in values {
            if i == 0 || j == 0 || i > n || j > n || i == j {
                return Err(SigmaError::InvalidCharacter(format!(
                    "no generator α_({i},{j}) for n = {n}"
                )));
            }
            v[slot(n, i, j)] = x.clone();
        }
        let c = Character { n, family, values: v };
        if c.values.iter().all(Zero::is_zero) {
            return Err(SigmaError::InvalidCharacter("the zero character has no class".into()));
        }
        if family == Family::Out {
            for j in 1..=n {
                let s: BigRational = (1..=n).filter(|&i| i != j).map(|i| c.value(i, j).clone()).sum();
                if !s.is_zero() {
                    return Err(SigmaError::InvalidCharacter(format!(
                        "column {j} sums to {s}, but must vanish on the inner automorphism based at {j}"
                    )));
                }
            }
        }
        Ok(c)
    }

    pub fn from_fn(
        n: usize,
        family: Family,
        mut f: impl FnMut(usize, usize) -> BigRational,
    ) -> Result<Self, SigmaError> {
        let mut m = BTreeMap::new();
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    m.insert((i, j), f(i, j));
                }
            }
        }
        Self::new(n, family, &m)
    }

    pub fn from_integers(n: usize, family: Family, f: impl Fn(usize, usize) -> i64) -> Result<Self, SigmaError> {
        Self::from_fn(n, family, |i, j| BigRational::from_integer(f(i, j).into()))
    }

    /// JSON of the form `{"n": 3, "family": "aut", "values": {"1,2": "3/2"}}`.
    /// Values are integers or strings `"p/q"`; floating-point numbers are
    /// rejected. Missing pairs are zero.
    pub fn from_json(text: &str) -> Result<Self, SigmaError> {
        let v: Value = serde_json::from_str(text).map_err(|e| SigmaError::Parse(e.to_string()))?;
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| SigmaError::Parse("missing integer field \"n\"".into()))? as usize;
        let family: Family = v
            .get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| SigmaError::Parse("missing field \"family\"".into()))?
            .parse()
            .map_err(SigmaError::Parse)?;
        let obj = v
            .get("values")
            .and_then(Value::as_object)
            .ok_or_else(|| SigmaError::Parse("missing object \"values\"".into()))?;
        let mut values = BTreeMap::new();
        for (key, val) in obj {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| SigmaError::Parse(format!("key {key:?} is not \"i,j\"")))?;
            let i: usize = a
                .trim()
                .parse()
                .map_err(|_| SigmaError::Parse(format!("bad index in {key:?}")))?;
            let j: usize = b
                .trim()
                .parse()
                .map_err(|_| SigmaError::Parse(format!("bad index in {key:?}")))?;
            let x = match val {
                Value::String(s) => parse_rational(s)?,
                Value::Number(num) if num.is_i64() || num.is_u64() => parse_rational(&num.to_string())?,
                other => {
                    return Err(SigmaError::Parse(format!(
                        "value for {key:?} must be an integer or a \"p/q\" string, got {other}"
                    )))
                }
            };
            values.insert((i, j), x);
        }
        Self::new(n, family, &values)
    }

    pub fn to_json(&self) -> Value {
        let values: serde_json::Map<String, Value> = self
            .support()
            .into_iter()
            .map(|(i, j)| (format!("{i},{j}"), Value::String(self.value(i, j).to_string())))
            .collect();
        serde_json::json!({ "n": self.n, "family": self.family, "values": values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// `χ(α_{i,j})`.
    pub fn value(&self, i: usize, j: usize) -> &BigRational {
        &self.values[slot(self.n, i, j)]
    }

    /// Pairs `(i, j)` with `χ(α_{i,j}) ≠ 0`, in lexicographic order.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                if i != j && !self.value(i, j).is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn evaluate_symbol(&self, s: &WhiteheadSymbol) -> Result<BigRational, SigmaError> {
        s.validate(self.n)?;
        let sum: BigRational = s.moved.iter().map(|i| self.value(i, s.base).clone()).sum();
        Ok(sum * BigRational::from_integer(s.exponent.into()))
    }

    pub fn evaluate(&self, w: &FormalGeneratorWord) -> Result<BigRational, SigmaError> {
        w.symbols().iter().map(|s| self.evaluate_symbol(s)).sum()
    }

    /// `Σ_i v_i χ(α_{i,j})` for an exponent vector indexed by label.
    pub fn evaluate_vector(&self, base: usize, v: &[BigInt]) -> BigRational {
        (1..=self.n)
            .filter(|&i| i != base)
            .map(|i| self.value(i, base) * BigRational::from_integer(v[i].clone()))
            .sum()
    }

    pub fn scaled(&self, q: &BigRational) -> Result<Self, SigmaError> {
        if q.is_zero() {
            return Err(SigmaError::InvalidCharacter("scaling by zero".into()));
        }
        Ok(Character {
            n: self.n,
            family: self.family,
            values: self.values.iter().map(|x| x * q).collect(),
        })
    }

    /// `χ ∘ ω = −χ`.
    pub fn negated(&self) -> Self {
        Character {
            n: self.n,
            family: self.family,
            values: self.values.iter().map(|x| -x).collect(),
        }
    }

    /// A nontrivial Whitehead generator on which `χ` vanishes, if any.
    ///
    /// AUT: every nonempty `I ⊆ [n]∖{j}`. OUT: `I = [n]∖{j}` is skipped
    /// because `ᾱ_{[n]∖{j},j} = 1`.
    pub fn genericity_witness(&self) -> Result<Option<WhiteheadSymbol>, SigmaError> {
        if self.n > MAX_GENERIC_N {
            return Err(SigmaError::Unsupported(format!(
                "genericity enumerates subset sums only for n <= {MAX_GENERIC_N}"
            )));
        }
        let n = self.n;
        let found: Vec<Option<WhiteheadSymbol>> = (1..=n)
            .into_par_iter()
            .map(|j| {
                let others: Vec<usize> = (1..=n).filter(|&i| i != j).collect();
                let k = others.len();
                let full = (1u32 << k) - 1;
                let mut sums = vec![BigRational::zero(); 1 << k];
                for mask in 1..=full {
                    let low = mask.trailing_zeros() as usize;
                    sums[mask as usize] = &sums[(mask & (mask - 1)) as usize] + self.value(others[low], j);
                    if self.family == Family::Out && mask == full {
                        continue;
                    }
                    if sums[mask as usize].is_zero() {
                        let moved: LabelSet = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| others[b]).collect();
                        return Some(WhiteheadSymbol::new(j, moved, 1));
                    }
                }
                None
            })
            .collect();
        Ok(found.into_iter().flatten().next())
    }

    pub fn is_generic(&self) -> Result<bool, SigmaError> {
        Ok(self.genericity_witness()?.is_none())
    }

    pub fn is_positive(&self) -> bool {
        self.support().iter().all(|&(i, j)| self.value(i, j).is_positive())
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Character({}, n={}, {})",
            self.family,
            self.n,
            self.to_json()["values"]
        )
    }
}
