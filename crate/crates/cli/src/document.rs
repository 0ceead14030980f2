use serde::{Deserialize, Serialize};
use splitfield::{AbelianField, Limits, SplittingData};

use crate::CliError;

/// Serialized abelian field: the conductor and the sorted generators of the
/// fixing subgroup, plus optional construction trace and splitting table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldDocument {
    pub conductor: u128,
    pub subgroup_generators: Vec<u128>,
    pub degree: u64,
    #[serde(default = "yes")]
    pub canonical: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<Vec<SplittingData>>,
}

fn yes() -> bool {
    true
}

impl FieldDocument {
    pub fn from_field(field: &AbelianField) -> FieldDocument {
        FieldDocument {
            conductor: field.conductor(),
            subgroup_generators: field.fixing_subgroup().generators(),
            degree: field.degree(),
            canonical: true,
            trace: None,
            splitting: None,
        }
    }

    /// Adds the splitting table at `primes`.
    pub fn with_splitting(mut self, field: &AbelianField, primes: &[u64]) -> Result<FieldDocument, CliError> {
        if !primes.is_empty() {
            self.splitting = Some(
                primes
                    .iter()
                    .map(|&p| field.splitting_data(p))
                    .collect::<splitfield::Result<Vec<_>>>()?,
            );
        }
        Ok(self)
    }

    /// Rebuilds the field; the stored degree, and the conductor of a document
    /// marked canonical, must agree with the recomputed ones.
    pub fn to_field(&self, limits: Limits) -> Result<AbelianField, CliError> {
        let field = AbelianField::from_generators(self.conductor, &self.subgroup_generators, limits)?;
        if field.degree() != self.degree {
            return Err(CliError::Input(format!(
                "document says degree {}, generators give degree {}",
                self.degree,
                field.degree()
            )));
        }
        if self.canonical && field.conductor() != self.conductor {
            return Err(CliError::Input(format!(
                "document marked canonical with modulus {} but the conductor is {}",
                self.conductor,
                field.conductor()
            )));
        }
        Ok(field)
    }

    pub fn parse(text: &str) -> Result<FieldDocument, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("field document: {e}")))
    }

    /// Inline JSON when `arg` starts with `{`, otherwise a file path.
    pub fn load(arg: &str) -> Result<FieldDocument, CliError> {
        if arg.trim_start().starts_with('{') {
            FieldDocument::parse(arg)
        } else {
            let text = std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
            FieldDocument::parse(&text)
        }
    }
}
