//! JSON documents for specs and solutions.
//!
//! Solution: `{"g": 1, "family": "...", "params": {...}, "pairs": [["x1", "y1^2"], ...]}`.
//! Spec: `{"g": 1, "terms": [["1", 2], ["y1", 2]]}`.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::equation::{EquationSpec, Family, Solution};
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub g: u32,
    pub family: String,
    #[serde(default)]
    pub params: Map<String, Value>,
    pub pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecDoc {
    pub g: u32,
    pub terms: Vec<(String, i64)>,
}

impl From<&Solution> for SolutionDoc {
    fn from(sol: &Solution) -> Self {
        SolutionDoc {
            g: sol.g,
            family: sol.family.to_string(),
            params: sol.params.clone(),
            pairs: sol
                .pairs
                .iter()
                .map(|(u, v)| (u.to_string(), v.to_string()))
                .collect(),
        }
    }
}

impl TryFrom<SolutionDoc> for Solution {
    type Error = Error;

    fn try_from(doc: SolutionDoc) -> Result<Self> {
        let pairs = doc
            .pairs
            .iter()
            .map(|(u, v)| Ok((Word::parse(u, doc.g)?, Word::parse(v, doc.g)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Solution {
            g: doc.g,
            pairs,
            family: doc.family.parse()?,
            params: doc.params,
        })
    }
}

impl From<&EquationSpec> for SpecDoc {
    fn from(spec: &EquationSpec) -> Self {
        SpecDoc {
            g: spec.g,
            terms: spec.terms.iter().map(|(w, c)| (w.to_string(), *c)).collect(),
        }
    }
}

impl TryFrom<SpecDoc> for EquationSpec {
    type Error = Error;

    fn try_from(doc: SpecDoc) -> Result<Self> {
        let terms = doc
            .terms
            .iter()
            .map(|(w, c)| Ok((Word::parse(w, doc.g)?, *c)))
            .collect::<Result<Vec<_>>>()?;
        EquationSpec::new(doc.g, terms)
    }
}

fn bad(e: serde_json::Error) -> Error {
    Error::Document(e.to_string())
}

pub fn solution_from_json(text: &str) -> Result<Solution> {
    serde_json::from_str::<SolutionDoc>(text).map_err(bad)?.try_into()
}

pub fn solution_to_json(sol: &Solution) -> String {
    serde_json::to_string(&SolutionDoc::from(sol)).expect("plain data")
}

pub fn spec_from_json(text: &str) -> Result<EquationSpec> {
    serde_json::from_str::<SpecDoc>(text).map_err(bad)?.try_into()
}

pub fn spec_to_json(spec: &EquationSpec) -> String {
    serde_json::to_string(&SpecDoc::from(spec)).expect("plain data")
}

fn param_u32(sol: &Solution, key: &str) -> Result<u32> {
    sol.params
        .get(key)
        .and_then(Value::as_u64)
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| Error::Document(format!("solution params lack integer {key:?}")))
}

/// The equation a generated solution was built for, recovered from its
/// family and parameters.
pub fn implied_spec(sol: &Solution) -> Result<EquationSpec> {
    match sol.family {
        Family::PowerLift => {
            let c = param_u32(sol, "c")?;
            let w = sol
                .params
                .get("w")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Document("solution params lack list \"w\"".into()))?;
            let conj = w
                .iter()
                .map(|v| {
                    let s = v
                        .as_str()
                        .ok_or_else(|| Error::Document("conjugators must be strings".into()))?;
                    Word::parse(s, sol.g)
                })
                .collect::<Result<Vec<_>>>()?;
            EquationSpec::uniform(sol.g, &conj, c as i64)
        }
        Family::Asymmetric => {
            let (k, l) = (param_u32(sol, "k")? as i64, param_u32(sol, "l")? as i64);
            EquationSpec::new(
                1,
                vec![(Word::identity(1), k + l), (Word::y(1, 1), k - l)],
            )
        }
        Family::TorusMinIndex | Family::TorusPrimitive | Family::External => {
            let (l, c) = (param_u32(sol, "l")?, param_u32(sol, "c")?);
            EquationSpec::torus(l, c as i64)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let sol = Solution::new(1, vec![(Word::x(1, 1), Word::y(1, 1).pow(2))], Family::TorusMinIndex)
            .with_param("l", 2)
            .with_param("c", 1);
        let text = solution_to_json(&sol);
        assert_eq!(
            text,
            r#"{"g":1,"family":"torus-min-index","params":{"c":1,"l":2},"pairs":[["x1","y1^2"]]}"#
        );
        assert_eq!(solution_from_json(&text).unwrap(), sol);
        let spec = implied_spec(&sol).unwrap();
        assert_eq!(spec_from_json(&spec_to_json(&spec)).unwrap(), spec);
        assert_eq!(spec_to_json(&spec), r#"{"g":1,"terms":[["1",1],["y1",1]]}"#);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(solution_from_json("{"), Err(Error::Document(_))));
        assert!(spec_from_json(r#"{"g":1,"terms":[["x2",1]]}"#).is_err());
        let sol = Solution::new(1, vec![], Family::Asymmetric);
        assert!(implied_spec(&sol).is_err());
    }
}
