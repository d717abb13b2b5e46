//! Spec files for `qr-verify` and `gss-verify`:
//! `{"G": "sp4r", "N": {"kind": "orbit_product", "lambdas": [[..],[..]]}, "hc_lambda": [..], "seed": 42}`.
//! Weights are doubled fundamental coordinates. `N` always lives over the
//! compact subsystem of `G`.

use orbitquant_core::pipeline::{CompactHamiltonianSpec, GssReport, SpecKind};
use orbitquant_core::{RealRootSystem, Subsystem, Weight};
use serde::{Deserialize, Serialize};

use crate::json::load_root_system;
use crate::{AppError, AppResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindDoc {
    Orbit,
    OrbitProduct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NDoc {
    pub kind: KindDoc,
    pub lambdas: Vec<Vec<i64>>,
}

/// Which way the induced check is expected to come out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Nonzero multiplicity on both sides.
    Match,
    /// The lowest K-type is a weight of N's quantisation but not a constituent.
    Mismatch,
    /// The lowest K-type is not even a weight.
    OffSupport,
}

impl Outcome {
    pub fn of(report: &GssReport) -> Self {
        if !report.in_support {
            Outcome::OffSupport
        } else if report.lhs == 0.into() {
            Outcome::Mismatch
        } else {
            Outcome::Match
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDoc {
    #[serde(rename = "G")]
    pub group: String,
    #[serde(rename = "N")]
    pub n: NDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hc_lambda: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Outcome>,
}

pub struct LoadedSpec {
    pub doc: SpecDoc,
    pub root_system: RealRootSystem,
    pub spec: CompactHamiltonianSpec,
}

impl SpecDoc {
    pub fn parse(text: &str, path: &str) -> AppResult<Self> {
        serde_json::from_str(text).map_err(|source| AppError::Json { path: path.to_string(), source })
    }

    pub fn load(path: &str) -> AppResult<LoadedSpec> {
        Self::parse(&crate::read_file(path)?, path)?.resolve()
    }

    pub fn resolve(self) -> AppResult<LoadedSpec> {
        let root_system = load_root_system(&self.group)?;
        let kind = match self.n.kind {
            KindDoc::Orbit => SpecKind::Orbit,
            KindDoc::OrbitProduct => SpecKind::OrbitProduct,
        };
        let spec = CompactHamiltonianSpec {
            kind,
            subsystem: Subsystem::Compact,
            lambdas: self.n.lambdas.iter().map(|l| Weight::new(l.clone())).collect(),
        };
        spec.validate(&root_system)?;
        Ok(LoadedSpec { doc: self, root_system, spec })
    }

    pub fn hc_weight(&self) -> Option<Weight> {
        self.hc_lambda.as_ref().map(|l| Weight::new(l.clone()))
    }
}
