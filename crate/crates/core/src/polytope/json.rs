//! `{"dim": s, "points": [[...], ...], "vertices": [[...], ...]}`

use serde::{Deserialize, Serialize};

use super::{LatticePoint, LatticePolytope};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<i64>>>,
}

impl From<&LatticePolytope> for PolytopeJson {
    fn from(p: &LatticePolytope) -> Self {
        PolytopeJson {
            dim: p.ambient_dim(),
            points: p.generators().iter().map(|q| q.0.clone()).collect(),
            vertices: Some(p.vertices().iter().map(|q| q.0.clone()).collect()),
        }
    }
}

impl PolytopeJson {
    /// Rebuilds the polytope from `points`; `vertices`, if present, is ignored.
    pub fn to_polytope(&self) -> Result<LatticePolytope> {
        if let Some(bad) = self.points.iter().find(|p| p.len() != self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: bad.len() });
        }
        LatticePolytope::hull(self.points.iter().cloned().map(LatticePoint))
    }
}

impl LatticePolytope {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolytopeJson::from(self)).expect("polytope serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let pj: PolytopeJson = serde_json::from_str(s).map_err(|e| Error::Input(format!("polytope JSON: {e}")))?;
        pj.to_polytope()
    }
}
