//! The matrix-model catalog file. The default copy is compiled in; setting
//! `ORBITQUANT_CATALOG` to a path loads that file instead.

use orbitquant_core::lie::{LieModel, ModelParts};
use serde::{Deserialize, Serialize};

use crate::{AppError, AppResult};

pub const ENV_VAR: &str = "ORBITQUANT_CATALOG";

const SHIPPED: &str = include_str!("../data/catalog.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelDoc {
    pub name: String,
    pub root_system: String,
    pub n: usize,
    pub basis: Vec<Vec<Vec<f64>>>,
    pub k_indices: Vec<usize>,
    pub p_indices: Vec<usize>,
    pub torus_indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogDoc {
    pub models: Vec<ModelDoc>,
}

impl From<&ModelParts> for ModelDoc {
    fn from(p: &ModelParts) -> Self {
        ModelDoc {
            name: p.name.clone(),
            root_system: p.root_system.clone(),
            n: p.n,
            basis: p.basis.clone(),
            k_indices: p.k_indices.clone(),
            p_indices: p.p_indices.clone(),
            torus_indices: p.torus_indices.clone(),
        }
    }
}

impl From<ModelDoc> for ModelParts {
    fn from(d: ModelDoc) -> Self {
        ModelParts {
            name: d.name,
            root_system: d.root_system,
            n: d.n,
            basis: d.basis,
            k_indices: d.k_indices,
            p_indices: d.p_indices,
            torus_indices: d.torus_indices,
        }
    }
}

impl CatalogDoc {
    /// The catalog built from the core's hard-coded bases.
    pub fn builtin() -> Self {
        let models = orbitquant_core::lie::catalog::NAMES
            .iter()
            .map(|n| ModelDoc::from(&orbitquant_core::lie::catalog::parts(n).expect("builtin model")))
            .collect();
        CatalogDoc { models }
    }

    pub fn shipped() -> Self {
        serde_json::from_str(SHIPPED).expect("shipped catalog is valid JSON")
    }

    /// Honors `ORBITQUANT_CATALOG`, falling back to the shipped file.
    pub fn load() -> AppResult<Self> {
        match std::env::var(ENV_VAR) {
            Ok(path) if !path.is_empty() => Self::from_path(&path),
            _ => Ok(Self::shipped()),
        }
    }

    pub fn from_path(path: &str) -> AppResult<Self> {
        let text = crate::read_file(path)?;
        serde_json::from_str(&text).map_err(|source| AppError::Json { path: path.to_string(), source })
    }

    pub fn names(&self) -> Vec<&str> {
        self.models.iter().map(|m| m.name.as_str()).collect()
    }

    pub fn model(&self, name: &str) -> AppResult<LieModel> {
        let doc = self
            .models
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| orbitquant_core::Error::UnknownModel(name.to_string()))?;
        Ok(LieModel::from_parts(&ModelParts::from(doc.clone()))?)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.models.iter().any(|m| m.name == name)
    }
}
