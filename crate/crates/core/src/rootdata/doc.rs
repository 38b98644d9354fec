use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::linalg::IMat;

use super::datum::RootDatum;

pub const ROOT_DATUM_SCHEMA_VERSION: u32 = 1;

/// Versioned JSON form of a root datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDatumDoc {
    pub schema_version: u32,
    pub name: Option<String>,
    pub rank: usize,
    /// Needed for tori and non-semisimple data; defaults to the vector length.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_rank: Option<usize>,
    pub simple_roots: IMat,
    pub simple_coroots: IMat,
}

impl From<&RootDatum> for RootDatumDoc {
    fn from(rd: &RootDatum) -> Self {
        RootDatumDoc {
            schema_version: ROOT_DATUM_SCHEMA_VERSION,
            name: rd.name().map(str::to_string),
            rank: rd.rank(),
            lattice_rank: Some(rd.lattice_rank()),
            simple_roots: rd.simple_roots().clone(),
            simple_coroots: rd.simple_coroots().clone(),
        }
    }
}

impl RootDatumDoc {
    pub fn into_datum(self) -> Result<RootDatum> {
        if self.schema_version != ROOT_DATUM_SCHEMA_VERSION {
            return invalid(format!("unsupported root datum schema version {}", self.schema_version));
        }
        if self.rank != self.simple_roots.len() {
            return invalid(format!(
                "rank {} disagrees with {} simple roots",
                self.rank,
                self.simple_roots.len()
            ));
        }
        let n = match (self.lattice_rank, self.simple_roots.first()) {
            (Some(n), _) => n,
            (None, Some(v)) => v.len(),
            (None, None) => return invalid("a datum without roots needs lattice_rank"),
        };
        RootDatum::new(self.name, n, self.simple_roots, self.simple_coroots)
    }
}

impl RootDatum {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&RootDatumDoc::from(self)).expect("datum serializes")
    }

    pub fn from_json(s: &str) -> Result<RootDatum> {
        let doc: RootDatumDoc = serde_json::from_str(s)
            .map_err(|e| crate::Error::Validation(format!("root datum JSON: {e}")))?;
        doc.into_datum()
    }
}

#[cfg(test)]
mod tests {
    use crate::rootdata::build_root_datum;
    use crate::rootdata::RootDatum;

    #[test]
    fn round_trip() {
        for name in ["A2", "GL3", "SO2", "G2×A1"] {
            let rd = build_root_datum(name).unwrap();
            let back = RootDatum::from_json(&rd.to_json()).unwrap();
            assert_eq!(rd, back);
            assert_eq!(rd.name(), back.name());
        }
    }

    #[test]
    fn rejects_rank_mismatch_and_unknown_keys() {
        let bad = r#"{"schema_version":1,"name":"x","rank":2,"simple_roots":[[2]],"simple_coroots":[[1]]}"#;
        assert!(RootDatum::from_json(bad).is_err());
        let extra = r#"{"schema_version":1,"name":"x","rank":1,"simple_roots":[[2]],"simple_coroots":[[1]],"colour":1}"#;
        assert!(RootDatum::from_json(extra).is_err());
        let ok = r#"{"schema_version":1,"name":"A1","rank":1,"simple_roots":[[2]],"simple_coroots":[[1]]}"#;
        assert_eq!(RootDatum::from_json(ok).unwrap().num_positive_roots(), 1);
    }
}
