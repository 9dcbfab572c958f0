//! JSON form: `{"vars": ["x","y"], "terms": [{"coeff": "3/2", "q": 0, "exp": [1,-1]}]}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, ExponentVector, LaurentPolynomial, QPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: String,
    #[serde(default)]
    pub q: u32,
    pub exp: ExponentVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyFile {
    pub vars: Vec<String>,
    pub terms: Vec<TermRecord>,
}

impl PolyFile {
    /// Rejects a repeated `(exp, q)` pair; the same exponent may appear once per `q` power.
    pub fn to_polynomial(&self) -> Result<LaurentPolynomial> {
        let mut seen = BTreeSet::new();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if !seen.insert((t.exp.clone(), t.q)) {
                return Err(Error::Parse(format!("duplicate term for exponent {:?} and q^{}", t.exp, t.q)));
            }
            let c = parse_rational(&t.coeff)?;
            terms.push((t.exp.clone(), QPoly::monomial(c, t.q)));
        }
        LaurentPolynomial::from_terms(&self.vars, terms)
    }

    pub fn from_polynomial(f: &LaurentPolynomial) -> Self {
        let mut terms = Vec::new();
        for (e, c) in f.terms() {
            for (q, v) in c.terms() {
                terms.push(TermRecord { coeff: format_rational(v), q, exp: e.clone() });
            }
        }
        Self { vars: f.vars().to_vec(), terms }
    }
}

impl LaurentPolynomial {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: PolyFile = serde_json::from_str(text)?;
        file.to_polynomial()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PolyFile::from_polynomial(self)).expect("serializable")
    }
}
