use serde::{Deserialize, Serialize};

use super::{EnergyModel, FitError, OriginModel};

/// A saved model. JSON with a `kind` tag:
///
/// ```text
/// {"kind":"origin1","c":0.2454,"trained_on":["alexNet", ...]}
/// {"kind":"energy2","x1":3.34e-5,"x2":3.18e-6,"trained_on":[...]}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ModelDocument {
    #[serde(rename = "origin1")]
    Origin(OriginModel),
    #[serde(rename = "energy2")]
    Energy(EnergyModel),
}

/// Serialises at full precision (shortest round-trip float representation).
pub fn save_model(model: &ModelDocument) -> String {
    let mut s = serde_json::to_string_pretty(model).expect("model serialises");
    s.push('\n');
    s
}

pub fn load_model(text: &str) -> Result<ModelDocument, FitError> {
    let doc: ModelDocument =
        serde_json::from_str(text).map_err(|e| FitError::Document(e.to_string()))?;
    let finite = match &doc {
        ModelDocument::Origin(m) => m.slope.is_finite(),
        ModelDocument::Energy(m) => m.bus_coef.is_finite() && m.simd_coef.is_finite(),
    };
    if !finite {
        return Err(FitError::Document("non-finite coefficient".into()));
    }
    Ok(doc)
}

impl ModelDocument {
    pub fn into_origin(self) -> Result<OriginModel, FitError> {
        match self {
            ModelDocument::Origin(m) => Ok(m),
            ModelDocument::Energy(_) => Err(FitError::Document(
                "expected kind origin1, found energy2".into(),
            )),
        }
    }

    pub fn into_energy(self) -> Result<EnergyModel, FitError> {
        match self {
            ModelDocument::Energy(m) => Ok(m),
            ModelDocument::Origin(_) => Err(FitError::Document(
                "expected kind energy2, found origin1".into(),
            )),
        }
    }
}
