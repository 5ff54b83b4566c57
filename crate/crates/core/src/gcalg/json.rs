use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AlgElement, FreeGcAlgebra, Monomial};
use crate::error::{Error, Result};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

/// Canonical serialized form of an [`AlgElement`]: variable names in index
/// order and terms in graded presentation order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl AlgElement {
    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            vars: self.algebra().names(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(m, c)| TermJson {
                    coeff: c.to_string(),
                    exps: m.0.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(alg: &Arc<FreeGcAlgebra>, json: &ElementJson) -> Result<AlgElement> {
        if json.vars != alg.names() {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = alg.zero();
        for t in &json.terms {
            let c: Q = t
                .coeff
                .parse()
                .map_err(|_| Error::Unsupported(format!("bad coefficient `{}`", t.coeff)))?;
            let m = Monomial(t.exps.clone());
            if !alg.is_valid_monomial(&m) {
                return Err(Error::Unsupported(format!(
                    "bad exponent vector {:?}",
                    t.exps
                )));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }
}
