//! JSON formats: Lagrangian subspaces and polynomials with exact rational
//! entries written as strings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{EpwError, Result};
use crate::exterior::N;
use crate::field::{format_rational, parse_rational, Rationals, Q};
use crate::lagrangian::{gram_failures, LagrangianSubspace, D3};
use crate::poly::MultiPoly;
use crate::subspace::Subspace;

/// `{"basis": [[20 entries] x 10], "labels": [...], "meta": {...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LagrangianFile {
    pub basis: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

/// A JSON entry: a string "p/q" or "n", or an integer.
pub fn parse_entry(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Q::from_integer(i.into()))
            .ok_or_else(|| EpwError::Parse(format!("numbers must be integers, got {n}"))),
        other => Err(EpwError::Parse(format!("expected a rational, got {other}"))),
    }
}

impl LagrangianFile {
    /// The canonical (reduced echelon) basis of A.
    pub fn from_lagrangian(a: &LagrangianSubspace<Rationals>, meta: Option<Value>) -> Self {
        let basis = a.basis_vecs().iter().map(|row| row.iter().map(|x| Value::String(format_rational(x))).collect()).collect();
        LagrangianFile { basis, labels: None, meta }
    }

    /// Parse and validate; a subspace that is not Lagrangian is rejected with
    /// the list of nonzero Gram pairs.
    pub fn to_lagrangian(&self) -> Result<LagrangianSubspace<Rationals>> {
        if self.basis.len() != 10 {
            return Err(EpwError::DimensionMismatch {
                expected: 10,
                found: self.basis.len(),
            });
        }
        let rows: Vec<Vec<Q>> = self
            .basis
            .iter()
            .map(|r| {
                if r.len() != D3 {
                    return Err(EpwError::DimensionMismatch { expected: D3, found: r.len() });
                }
                r.iter().map(parse_entry).collect()
            })
            .collect::<Result<_>>()?;
        let s = Subspace::span(&Rationals, D3, &rows)?;
        if s.dim() != 10 {
            return Err(EpwError::NotLagrangian {
                dim: s.dim(),
                failed_pairs: gram_failures(&s),
            });
        }
        LagrangianSubspace::new(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| EpwError::Parse(e.to_string()))
    }
}

/// One term of a [`PolyFile`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub exp: Vec<u32>,
    pub coeff: Value,
}

/// `{"vars": ["X0", ...], "terms": [{"exp": [...], "coeff": "p/q"}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyFile {
    pub vars: Vec<String>,
    pub terms: Vec<PolyTerm>,
}

impl PolyFile {
    /// Terms in descending lex order of exponents.
    pub fn from_poly(p: &MultiPoly<Rationals>) -> Self {
        let vars = (0..p.nvars()).map(|i| format!("X{i}")).collect();
        let mut terms: Vec<PolyTerm> = p
            .terms()
            .map(|(m, c)| PolyTerm {
                exp: m.0.clone(),
                coeff: Value::String(format_rational(c)),
            })
            .collect();
        terms.sort_by(|a, b| b.exp.cmp(&a.exp));
        PolyFile { vars, terms }
    }

    pub fn to_poly(&self) -> Result<MultiPoly<Rationals>> {
        let n = self.vars.len();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.exp.len() != n {
                    return Err(EpwError::DimensionMismatch { expected: n, found: t.exp.len() });
                }
                Ok((t.exp.clone(), parse_entry(&t.coeff)?))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(&Rationals, n, terms)
    }

    /// Whether every term has total degree d.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.iter().all(|t| t.exp.iter().sum::<u32>() == d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| EpwError::Parse(e.to_string()))
    }
}

/// Parse a point "a0,...,a5" of V.
pub fn parse_point(s: &str) -> Result<Vec<Q>> {
    let v: Vec<Q> = s.split(',').map(parse_rational).collect::<Result<_>>()?;
    if v.len() != N {
        return Err(EpwError::DimensionMismatch { expected: N, found: v.len() });
    }
    Ok(v)
}
