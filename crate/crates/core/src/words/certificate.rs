//! Conjugacy decompositions `∏ a_i r_i^{±1} a_i⁻¹`, the certificate check
//! and the constant arithmetic around it.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::sigma::parse_rational;

use super::{Alphabet, FormalWord, LetterWeighting, WordsError};

pub const CERTIFICATE_VERSION: u64 = 1;

fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTerm {
    pub conjugator: FormalWord,
    pub relator: FormalWord,
    /// `+1` or `−1`.
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyDecomposition {
    pub rank: usize,
    pub terms: Vec<DecompositionTerm>,
}

impl ConjugacyDecomposition {
    pub fn new(rank: usize) -> Self {
        ConjugacyDecomposition {
            rank,
            terms: Vec::new(),
        }
    }

    pub fn push(&mut self, conjugator: FormalWord, relator: FormalWord, sign: i8) {
        self.terms.push(DecompositionTerm {
            conjugator,
            relator,
            sign,
        });
    }
}

/// The literal concatenation `a_1 r_1^{±1} a_1⁻¹ ⋯ a_k r_k^{±1} a_k⁻¹`.
pub fn expand(d: &ConjugacyDecomposition) -> FormalWord {
    d.terms.iter().fold(FormalWord::empty(d.rank), |acc, t| {
        let r = if t.sign < 0 {
            t.relator.invert()
        } else {
            t.relator.clone()
        };
        acc.concat(&t.conjugator).concat(&r).concat(&t.conjugator.invert())
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    /// `expand(d) = w` in `F(X)`.
    pub freely_equal: bool,
    #[serde(serialize_with = "ser_rational")]
    pub chi_min: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub claimed_c: BigRational,
    /// `χ_min(expand(d)) ≥ C`.
    pub bound_holds: bool,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.freely_equal && self.bound_holds
    }
}

/// Check that `d` witnesses the combinatorial Σ² condition for the
/// χ-non-negative relator `w` with constant `c`.
pub fn verify_sigma2_certificate(
    w: &FormalWord,
    d: &ConjugacyDecomposition,
    chi: &LetterWeighting,
    relators: &[FormalWord],
    c: &BigRational,
) -> Result<CertificateReport, WordsError> {
    if !chi.is_non_negative(w) {
        return Err(WordsError::NotNonNegative(format!("{w:?}")));
    }
    if d.rank != w.rank() {
        return Err(WordsError::Precondition(
            "decomposition and word over different alphabets".into(),
        ));
    }
    for t in &d.terms {
        if !relators.contains(&t.relator) {
            return Err(WordsError::UnknownRelator(format!("{:?}", t.relator)));
        }
        if t.sign != 1 && t.sign != -1 {
            return Err(WordsError::Precondition(format!("sign {} is not ±1", t.sign)));
        }
    }
    let expanded = expand(d);
    let chi_min = chi.chi_min(&expanded);
    Ok(CertificateReport {
        freely_equal: expanded.freely_equal(w),
        bound_holds: chi_min >= *c,
        chi_min,
        claimed_c: c.clone(),
    })
}

/// `C_Q = min χ_min(r)` over the extra relators.
pub fn compute_cq(r_q: &[FormalWord], chi: &LetterWeighting) -> Result<BigRational, WordsError> {
    r_q.iter()
        .map(|r| chi.chi_min(r))
        .min()
        .ok_or_else(|| WordsError::Precondition("R_Q is empty".into()))
}

/// `C_X = max χ(x)` over `X ⊔ X⁻¹`.
pub fn compute_cx(chi: &LetterWeighting) -> BigRational {
    chi.values()
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// `C = C_Q − C_X + C_G`, for `C_Q ≤ 0`, `C_X > 0`, `C_G ≤ 0`.
pub fn combine_constants(cq: &BigRational, cx: &BigRational, cg: &BigRational) -> Result<BigRational, WordsError> {
    if cq.is_positive() {
        return Err(WordsError::Precondition(format!("C_Q = {cq} > 0")));
    }
    if !cx.is_positive() {
        return Err(WordsError::Precondition(format!("C_X = {cx} <= 0")));
    }
    if cg.is_positive() {
        return Err(WordsError::Precondition(format!("C_G = {cg} > 0")));
    }
    Ok(cq - cx + cg)
}

/// A certificate on disk: alphabet, weighting, relators, the word, the
/// decomposition (relators by index) and the claimed constant.
#[derive(Clone, Debug)]
pub struct CertificateFile {
    pub alphabet: Alphabet,
    pub weighting: LetterWeighting,
    pub relators: Vec<FormalWord>,
    pub word: FormalWord,
    pub decomposition: ConjugacyDecomposition,
    pub claimed_c: BigRational,
}

fn rational_value(v: &Value) -> Result<BigRational, WordsError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| WordsError::Parse(e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        other => Err(WordsError::Parse(format!(
            "{other} is not an integer or \"p/q\" string"
        ))),
    }
}

impl CertificateFile {
    pub fn from_json(text: &str) -> Result<Self, WordsError> {
        let parse = |m: String| WordsError::Parse(m);
        let v: Value = serde_json::from_str(text).map_err(|e| parse(e.to_string()))?;
        if v["format"] != "sigma2-certificate" {
            return Err(parse("format is not \"sigma2-certificate\"".into()));
        }
        if v["version"].as_u64() != Some(CERTIFICATE_VERSION) {
            return Err(parse(format!("unsupported version {}", v["version"])));
        }
        let names = v["alphabet"]
            .as_array()
            .ok_or_else(|| parse("missing \"alphabet\"".into()))?
            .iter()
            .map(|a| {
                a.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| parse("alphabet entries must be strings".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let alphabet = Alphabet::new(names)?;
        let weights = v["weights"]
            .as_object()
            .ok_or_else(|| parse("missing \"weights\"".into()))?;
        let mut values = vec![None; alphabet.len()];
        for (k, x) in weights {
            let i = alphabet
                .index(k)
                .ok_or_else(|| parse(format!("weight for unknown letter {k:?}")))?;
            values[i] = Some(rational_value(x)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| parse(format!("no weight for {:?}", alphabet.names()[i]))))
            .collect::<Result<Vec<_>, _>>()?;
        let word_at = |x: &Value| -> Result<FormalWord, WordsError> {
            alphabet.parse(x.as_str().ok_or_else(|| parse(format!("{x} is not a word string")))?)
        };
        let relators = v["relators"]
            .as_array()
            .ok_or_else(|| parse("missing \"relators\"".into()))?
            .iter()
            .map(word_at)
            .collect::<Result<Vec<_>, _>>()?;
        let word = word_at(&v["word"])?;
        let mut decomposition = ConjugacyDecomposition::new(alphabet.len());
        for t in v["decomposition"]
            .as_array()
            .ok_or_else(|| parse("missing \"decomposition\"".into()))?
        {
            let r = t["relator"]
                .as_u64()
                .and_then(|r| relators.get(r as usize))
                .ok_or_else(|| parse(format!("bad relator index in {t}")))?;
            let sign = match t["sign"].as_i64() {
                Some(1) => 1,
                Some(-1) => -1,
                _ => return Err(parse(format!("sign must be 1 or -1 in {t}"))),
            };
            decomposition.push(word_at(&t["conjugator"])?, r.clone(), sign);
        }
        Ok(CertificateFile {
            weighting: LetterWeighting::new(values),
            claimed_c: rational_value(&v["claimed_c"])?,
            alphabet,
            relators,
            word,
            decomposition,
        })
    }

    pub fn to_json(&self) -> Value {
        let weights: BTreeMap<&str, String> = self
            .alphabet
            .names()
            .iter()
            .zip(self.weighting.values())
            .map(|(a, v)| (a.as_str(), v.to_string()))
            .collect();
        let terms: Vec<Value> = self
            .decomposition
            .terms
            .iter()
            .map(|t| {
                let r = self
                    .relators
                    .iter()
                    .position(|r| *r == t.relator)
                    .expect("relator from the list");
                json!({"conjugator": self.alphabet.format(&t.conjugator), "relator": r, "sign": t.sign})
            })
            .collect();
        json!({
            "format": "sigma2-certificate",
            "version": CERTIFICATE_VERSION,
            "alphabet": self.alphabet.names(),
            "weights": weights,
            "relators": self.relators.iter().map(|r| self.alphabet.format(r)).collect::<Vec<_>>(),
            "word": self.alphabet.format(&self.word),
            "decomposition": terms,
            "claimed_c": self.claimed_c.to_string(),
        })
    }

    pub fn verify(&self) -> Result<CertificateReport, WordsError> {
        verify_sigma2_certificate(
            &self.word,
            &self.decomposition,
            &self.weighting,
            &self.relators,
            &self.claimed_c,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn xy() -> Alphabet {
        Alphabet::new(vec!["x".into(), "y".into()]).unwrap()
    }

    #[test]
    fn expand_examples() {
        let a = xy();
        let r = a.parse("x^-1 y^-1 x y").unwrap();
        let mut d = ConjugacyDecomposition::new(2);
        assert!(expand(&d).is_empty());
        d.push(FormalWord::empty(2), r.clone(), 1);
        assert_eq!(expand(&d), r);
        let mut d = ConjugacyDecomposition::new(2);
        let c = a.parse("x").unwrap();
        d.push(c.clone(), r.clone(), -1);
        assert_eq!(expand(&d), c.concat(&r.invert()).concat(&c.invert()));
    }

    #[test]
    fn identity_certificate() {
        let a = xy();
        let chi = LetterWeighting::from_integers(&[1, 1]);
        let r = a.parse("x y x^-1 y^-1").unwrap();
        assert!(chi.is_non_negative(&r));
        let mut d = ConjugacyDecomposition::new(2);
        d.push(FormalWord::empty(2), r.clone(), 1);
        let c = chi.chi_min(&r);
        let rep = verify_sigma2_certificate(&r, &d, &chi, std::slice::from_ref(&r), &c).unwrap();
        assert!(rep.passed());
        let rep = verify_sigma2_certificate(&r, &d, &chi, std::slice::from_ref(&r), &(c + q(1))).unwrap();
        assert!(rep.freely_equal && !rep.bound_holds);
    }

    #[test]
    fn rejects_bad_inputs() {
        let a = xy();
        let chi = LetterWeighting::from_integers(&[1, 0]);
        let r = a.parse("x^-1 y^-1 x y").unwrap();
        let d = ConjugacyDecomposition::new(2);
        assert!(matches!(
            verify_sigma2_certificate(&r, &d, &chi, std::slice::from_ref(&r), &q(0)),
            Err(WordsError::NotNonNegative(_))
        ));
        let w = a.parse("y").unwrap();
        let mut d = ConjugacyDecomposition::new(2);
        d.push(FormalWord::empty(2), w.clone(), 1);
        assert!(matches!(
            verify_sigma2_certificate(&w, &d, &chi, &[r], &q(0)),
            Err(WordsError::UnknownRelator(_))
        ));
    }

    #[test]
    fn constants() {
        assert_eq!(combine_constants(&q(-3), &q(2), &q(-1)).unwrap(), q(-6));
        assert_eq!(combine_constants(&q(0), &q(5), &q(0)).unwrap(), q(-5));
        assert!(combine_constants(&q(1), &q(2), &q(0)).is_err());
        assert!(combine_constants(&q(0), &q(0), &q(0)).is_err());
        assert!(combine_constants(&q(0), &q(1), &q(1)).is_err());
        assert_eq!(compute_cx(&LetterWeighting::from_integers(&[1, -2])), q(2));
        let a = xy();
        let chi = LetterWeighting::from_integers(&[1, 0]);
        let rq = [a.parse("x^-1 y x").unwrap(), a.parse("y").unwrap()];
        assert_eq!(compute_cq(&rq, &chi).unwrap(), q(-1));
        assert!(compute_cq(&[], &chi).is_err());
    }

    #[test]
    fn file_roundtrip() {
        let text = r#"{
            "format": "sigma2-certificate", "version": 1,
            "alphabet": ["x", "y"],
            "weights": {"x": 1, "y": "0"},
            "relators": ["x^-1 y^-1 x y", "x^-1 y x"],
            "word": "y",
            "decomposition": [
                {"conjugator": "x^-1 y x", "relator": 0, "sign": 1},
                {"conjugator": "1", "relator": 1, "sign": 1}
            ],
            "claimed_c": "-2"
        }"#;
        let f = CertificateFile::from_json(text).unwrap();
        assert!(f.verify().unwrap().passed());
        let again = CertificateFile::from_json(&f.to_json().to_string()).unwrap();
        assert_eq!(again.decomposition, f.decomposition);
        assert_eq!(again.claimed_c, f.claimed_c);
        assert!(CertificateFile::from_json(&text.replace("\"version\": 1", "\"version\": 2")).is_err());
        assert!(CertificateFile::from_json(&text.replace("\"x\": 1", "\"x\": 1.5")).is_err());
    }
}
