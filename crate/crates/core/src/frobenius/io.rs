//! Period input `{"index": 3, "coeffs": ["1","0","0","6", …]}`, structure-constant
//! records `{"p":1,"q":2,"r":0,"value":"3q"}`, and theta-series records.

use serde::{Deserialize, Serialize};

use super::{PeriodSequence, StructureTable, ThetaSeries};
use crate::error::Result;
use crate::laurent::{parse_rational, QPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<u32>,
    pub coeffs: Vec<String>,
}

impl PeriodFile {
    /// Entries mentioning `q` are read as polynomials. Plain numbers are placed
    /// in `q^{d/index}` when an index is given and `index | d`, otherwise in `q^0`.
    pub fn to_sequence(&self) -> Result<PeriodSequence> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (d, s) in self.coeffs.iter().enumerate() {
            let c = if s.contains('q') {
                s.parse::<QPoly>()?
            } else {
                let v = parse_rational(s)?;
                match self.index {
                    Some(i) if i > 0 && (d as u32).is_multiple_of(i) => QPoly::monomial(v, d as u32 / i),
                    _ => QPoly::constant(v),
                }
            };
            coeffs.push(c);
        }
        PeriodSequence::new(coeffs, self.index)
    }

    pub fn from_coeffs(coeffs: &[QPoly], index: Option<u32>) -> Self {
        Self { index, coeffs: coeffs.iter().map(|c| c.to_string()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub value: String,
}

impl TableRecord {
    pub fn from_table(table: &StructureTable, at_q_one: bool) -> Vec<Self> {
        table
            .entries()
            .map(|((p, q, r), v)| TableRecord { p, q, r, value: render(v, at_q_one) })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailRecord {
    pub i: u32,
    /// `a_i`, the coefficient of `t^{-i}`.
    pub coeff: String,
    /// `N_{p,i} = a_i / i`.
    pub invariant: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub p: u32,
    pub valid_to: Option<u32>,
    pub tail: Vec<TailRecord>,
}

impl SeriesRecord {
    /// Lists every `i` up to `valid_to` (or the last stored term for exact series), zeros included.
    pub fn from_series(s: &ThetaSeries, at_q_one: bool) -> Result<Self> {
        let last = s.valid_to().unwrap_or_else(|| s.tail().map(|(i, _)| i).max().unwrap_or(0));
        let mut tail = Vec::new();
        for i in 1..=last {
            tail.push(TailRecord {
                i,
                coeff: render(&s.tail_coeff(i)?, at_q_one),
                invariant: render(&s.two_point(i)?, at_q_one),
            });
        }
        Ok(Self { p: s.p(), valid_to: s.valid_to(), tail })
    }
}

pub(crate) fn render(v: &QPoly, at_q_one: bool) -> String {
    if at_q_one {
        QPoly::constant(v.eval_one()).to_string()
    } else {
        v.to_string()
    }
}
