//! JSON documents: root systems, characters, weights and verification reports.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use orbitquant_core::character::{FormalCharacter, VirtualRep};
use orbitquant_core::rootsys::cartan_of_type;
use orbitquant_core::{RealRootSystem, Weight};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{AppError, AppResult};

/// `{"type": "A2", "cartan": [[2,-1],[-1,2]], "noncompact_simple": [2]}`.
/// `noncompact_simple` is 1-based; `cartan` may be omitted when `type` names a
/// classical type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemDoc {
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub noncompact_simple: Vec<usize>,
}

impl RootSystemDoc {
    pub fn to_root_system(&self) -> AppResult<RealRootSystem> {
        let cartan = match &self.cartan {
            Some(c) => c.clone(),
            None => cartan_of_type(&self.ty)?,
        };
        let mut idx = Vec::with_capacity(self.noncompact_simple.len());
        for &i in &self.noncompact_simple {
            if i == 0 || i > cartan.len() {
                return Err(AppError::Input(format!("noncompact_simple index {i} outside 1..={}", cartan.len())));
            }
            idx.push(i - 1);
        }
        Ok(RealRootSystem::build(&self.ty, cartan, &idx)?)
    }

    pub fn from_root_system(rs: &RealRootSystem) -> Self {
        RootSystemDoc {
            ty: type_name(rs).unwrap_or_else(|| rs.label.clone()),
            cartan: Some(rs.cartan.clone()),
            noncompact_simple: rs
                .noncompact_simple
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i + 1)
                .collect(),
        }
    }
}

/// Cartan type of `rs` if it is one of the types `cartan_of_type` knows.
pub fn type_name(rs: &RealRootSystem) -> Option<String> {
    ["A", "B", "C", "D", "G"]
        .iter()
        .map(|l| format!("{l}{}", rs.rank))
        .find(|t| cartan_of_type(t).map(|c| c == rs.cartan).unwrap_or(false))
}

/// A catalog name or a path to a root-system document.
pub fn load_root_system(name_or_path: &str) -> AppResult<RealRootSystem> {
    if RealRootSystem::CATALOG.contains(&name_or_path) {
        return Ok(RealRootSystem::catalog(name_or_path)?);
    }
    if name_or_path.ends_with(".json") {
        let text = crate::read_file(name_or_path)?;
        let doc: RootSystemDoc =
            serde_json::from_str(&text).map_err(|source| AppError::Json { path: name_or_path.to_string(), source })?;
        return doc.to_root_system();
    }
    Err(orbitquant_core::Error::UnknownModel(name_or_path.to_string()).into())
}

/// Comma-separated doubled coordinates, e.g. `2,-1`.
pub fn parse_weight(s: &str) -> AppResult<Weight> {
    let coords = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| AppError::Input(format!("bad weight `{s}`: expected comma-separated integers")))?;
    Ok(Weight::new(coords))
}

/// Comma-separated rationals (`1/3,2`).
pub fn parse_rationals(s: &str) -> AppResult<Vec<Ratio<i64>>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let bad = || AppError::Input(format!("bad coordinate `{t}`"));
            match t.split_once('/') {
                Some((a, b)) => {
                    let (a, b): (i64, i64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
                    if b == 0 {
                        return Err(bad());
                    }
                    Ok(Ratio::new(a, b))
                }
                None => Ok(Ratio::from_integer(t.parse().map_err(|_| bad())?)),
            }
        })
        .collect()
}

/// `a,b=c` with an optional `=c` (default 1).
pub fn parse_rep_term(s: &str) -> AppResult<(Weight, BigInt)> {
    let (w, c) = match s.split_once('=') {
        Some((w, c)) => {
            let c = c.trim().parse::<BigInt>().map_err(|_| AppError::Input(format!("bad multiplicity in `{s}`")))?;
            (w, c)
        }
        None => (s, BigInt::from(1)),
    };
    Ok((parse_weight(w)?, c))
}

/// Integers that fit in `i64` are emitted as numbers, larger ones as strings.
pub fn int_value(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(c.to_string()),
    }
}

fn value_int(v: &Value) -> AppResult<BigInt> {
    match v {
        Value::Number(n) => {
            n.as_i64().map(BigInt::from).ok_or_else(|| AppError::Input(format!("non-integer coefficient {n}")))
        }
        Value::String(s) => s.parse().map_err(|_| AppError::Input(format!("bad coefficient `{s}`"))),
        other => Err(AppError::Input(format!("bad coefficient {other}"))),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Term {
    pub weight: Vec<i64>,
    pub coeff: Value,
}

pub fn character_to_json(ch: &FormalCharacter) -> Vec<Term> {
    ch.terms().map(|(w, c)| Term { weight: w.coords().to_vec(), coeff: int_value(c) }).collect()
}

pub fn character_from_json(rank: usize, terms: &[Term]) -> AppResult<FormalCharacter> {
    let parsed = terms
        .iter()
        .map(|t| Ok((Weight::new(t.weight.clone()), value_int(&t.coeff)?)))
        .collect::<AppResult<Vec<_>>>()?;
    Ok(FormalCharacter::from_terms(rank, parsed)?)
}

pub fn rep_to_json(rep: &VirtualRep) -> Vec<Term> {
    rep.iter().map(|(w, c)| Term { weight: w.coords().to_vec(), coeff: int_value(c) }).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityJson {
    pub identity: &'static str,
    pub group: String,
    pub lambda: Vec<i64>,
    pub max_residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckJson {
    pub check: &'static str,
    pub model: String,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QrJson {
    pub identity: &'static str,
    pub group: String,
    pub mu: Vec<i64>,
    pub quantized: Value,
    pub oracle: i64,
    pub in_support: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GssJson {
    pub identity: &'static str,
    /// How the left side is obtained: Dirac induction of the K-quantisation.
    pub realization: &'static str,
    pub group: String,
    pub lambda: Vec<i64>,
    pub lowest_k_type: Vec<i64>,
    pub lhs: Value,
    pub rhs: Value,
    pub sign: i64,
    pub in_support: bool,
    pub orbits_strongly_elliptic: bool,
    pub pass: bool,
}
