//! JSON layer documents.
//!
//! ```json
//! {"atoms":["a","b"],"layers":[["11"],["01"],["10","00"]]}
//! ```
//!
//! Layer 0 comes first; worlds are bitstrings in atom order. A state file is
//! one such document.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::{Signature, SignatureError, WorldSet};
use crate::preorder::{Layers, TotalPreorder};
use crate::state::{EpistemicState, StateError};

#[derive(Debug, Error)]
pub enum LayersError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("`{0}` is not a world bitstring over the declared atoms")]
    BadWorld(String),
    #[error(transparent)]
    State(#[from] StateError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayersDocument {
    pub atoms: Vec<String>,
    pub layers: Vec<Vec<String>>,
}

impl LayersDocument {
    pub fn from_order(signature: &Signature, order: &TotalPreorder) -> Self {
        LayersDocument {
            atoms: signature.atoms().to_vec(),
            layers: encode_layers(signature, order),
        }
    }

    pub fn from_state(state: &EpistemicState) -> Self {
        Self::from_order(state.signature(), state.order())
    }

    pub fn to_state(&self) -> Result<EpistemicState, LayersError> {
        let signature = Arc::new(Signature::new(self.atoms.iter().cloned())?);
        let layers = self
            .layers
            .iter()
            .map(|layer| {
                let mut set = WorldSet::empty(signature.world_count());
                for text in layer {
                    let w = signature
                        .parse_world(text)
                        .ok_or_else(|| LayersError::BadWorld(text.clone()))?;
                    set.insert(w);
                }
                Ok(set)
            })
            .collect::<Result<Vec<_>, LayersError>>()?;
        if layers.is_empty() {
            return Err(StateError::Preorder(crate::preorder::PreorderError::EmptyUniverse).into());
        }
        // Duplicates inside one layer would collapse silently in a set.
        let listed: usize = self.layers.iter().map(Vec::len).sum();
        let distinct: usize = layers.iter().map(WorldSet::len).sum();
        if listed != distinct {
            let dup = self
                .layers
                .iter()
                .flatten()
                .find(|w| self.layers.iter().flatten().filter(|v| v == w).count() > 1)
                .cloned()
                .unwrap_or_default();
            let w = signature.parse_world(&dup).map(|w| w.0).unwrap_or(0);
            return Err(StateError::Preorder(crate::preorder::PreorderError::Overlap(w)).into());
        }
        Ok(EpistemicState::from_layers(signature, &Layers(layers))?)
    }

    pub fn parse(text: &str) -> Result<Self, LayersError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("layer documents always serialize")
    }
}

/// Layers as bitstrings, layer 0 first, highest world index first in each layer.
pub fn encode_layers(signature: &Signature, order: &TotalPreorder) -> Vec<Vec<String>> {
    order
        .to_layers()
        .iter()
        .map(|layer| layer.bitstrings(signature.len()))
        .collect()
}

pub fn parse_state(text: &str) -> Result<EpistemicState, LayersError> {
    LayersDocument::parse(text)?.to_state()
}

pub fn state_to_json(state: &EpistemicState) -> String {
    LayersDocument::from_state(state).to_json()
}
