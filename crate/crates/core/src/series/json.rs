//! Canonical JSON form of series:
//! `{"nvars": n, "accuracy": N, "terms": [{"exp": [..], "re": "p/q", "im": "p/q"}, ..]}`
//! with terms in graded-lex order.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::multi::{Monomial, MultiSeries};
use super::scalar::{parse_rational, rational_to_string, CScalar, Rational};
use crate::error::SeriesError;

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    re: String,
    #[serde(default = "zero_string")]
    im: String,
}

fn zero_string() -> String {
    "0/1".to_string()
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    nvars: usize,
    accuracy: u32,
    terms: Vec<TermJson>,
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(rational_to_string(r))
}

pub fn scalar_json(c: &CScalar) -> Value {
    json!({"re": rational_to_string(&c.re), "im": rational_to_string(&c.im)})
}

pub fn scalar_from_json(v: &Value) -> Result<CScalar, SeriesError> {
    let field = |k: &str| -> Result<Rational, SeriesError> {
        match v.get(k) {
            None => Ok(Rational::from_integer(0.into())),
            Some(Value::String(s)) => parse_rational(s),
            Some(other) => Err(SeriesError::Parse(format!(
                "expected rational string, got {other}"
            ))),
        }
    };
    Ok(CScalar::new(field("re")?, field("im")?))
}

impl MultiSeries {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("series serialization")
    }

    pub fn from_json(v: &Value) -> Result<MultiSeries, SeriesError> {
        serde_json::from_value(v.clone()).map_err(|e| SeriesError::Parse(e.to_string()))
    }
}

impl Serialize for MultiSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesJson {
            nvars: self.nvars(),
            accuracy: self.accuracy(),
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.exponents(),
                    re: rational_to_string(&c.re),
                    im: rational_to_string(&c.im),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = SeriesJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            if t.exp.len() != raw.nvars {
                return Err(D::Error::custom(format!(
                    "exponent {:?} does not have {} entries",
                    t.exp, raw.nvars
                )));
            }
            let re = parse_rational(&t.re).map_err(D::Error::custom)?;
            let im = parse_rational(&t.im).map_err(D::Error::custom)?;
            terms.push((Monomial::new(&t.exp), CScalar::new(re, im)));
        }
        Ok(MultiSeries::from_terms(raw.nvars, raw.accuracy, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::scalar::rat;

    #[test]
    fn canonical_round_trip() {
        let s = MultiSeries::from_exponent_terms(
            2,
            3,
            vec![
                (vec![0, 2], CScalar::new(rat(1, 2), rat(-1, 3))),
                (vec![1, 0], CScalar::from_int(5)),
            ],
        );
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(
            text,
            r#"{"nvars":2,"accuracy":3,"terms":[{"exp":[1,0],"re":"5/1","im":"0/1"},{"exp":[0,2],"re":"1/2","im":"-1/3"}]}"#
        );
        let back: MultiSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(serde_json::from_str::<MultiSeries>(
            r#"{"nvars":2,"accuracy":3,"terms":[{"exp":[1],"re":"1/1","im":"0/1"}]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<MultiSeries>(
            r#"{"nvars":1,"accuracy":3,"terms":[{"exp":[1],"re":"0.5","im":"0/1"}]}"#
        )
        .is_err());
    }
}
