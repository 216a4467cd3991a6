//! Epistemic states realized as total preorders over worlds.
//!
//! The state is its own faithful assignment: `Mod(Ψ)` is layer 0, so the
//! worlds of `Mod(Ψ)` are mutually equivalent and strictly below all others
//! by construction.

use std::sync::Arc;

use thiserror::Error;

use crate::logic::{Formula, Signature, UnknownAtom, WorldSet};
use crate::preorder::{Layers, PreorderError, TotalPreorder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error("order covers {found} worlds but the signature has {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Preorder(#[from] PreorderError),
    #[error(transparent)]
    UnknownAtom(#[from] UnknownAtom),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpistemicState {
    signature: Arc<Signature>,
    order: TotalPreorder,
}

impl EpistemicState {
    pub fn new(signature: Arc<Signature>, order: TotalPreorder) -> Result<Self, StateError> {
        if order.universe_size() != signature.world_count() {
            return Err(StateError::UniverseMismatch {
                expected: signature.world_count(),
                found: order.universe_size(),
            });
        }
        Ok(EpistemicState { signature, order })
    }

    pub fn from_layers(signature: Arc<Signature>, layers: &Layers) -> Result<Self, StateError> {
        let order = TotalPreorder::from_layers(layers)?;
        Self::new(signature, order)
    }

    /// The state in which every world is equally plausible.
    pub fn flat(signature: Arc<Signature>) -> Self {
        let order = TotalPreorder::flat(signature.world_count());
        EpistemicState { signature, order }
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn order(&self) -> &TotalPreorder {
        &self.order
    }

    pub fn into_order(self) -> TotalPreorder {
        self.order
    }

    /// Same signature, different order.
    pub fn with_order(&self, order: TotalPreorder) -> Self {
        assert_eq!(order.universe_size(), self.order.universe_size());
        EpistemicState {
            signature: Arc::clone(&self.signature),
            order,
        }
    }

    pub fn layers(&self) -> Layers {
        self.order.to_layers()
    }

    /// `Mod(Ψ)`.
    pub fn belief_models(&self) -> WorldSet {
        self.order.bottom()
    }

    /// `Ψ ⊨ α`.
    pub fn believes(&self, alpha: &Formula) -> Result<bool, UnknownAtom> {
        Ok(believes_models(&self.order, &self.signature.models(alpha)?))
    }

    /// `Bel(Ψ1) =_α Bel(Ψ2)`.
    pub fn bel_equiv_wrt(
        &self,
        other: &EpistemicState,
        alpha: &Formula,
    ) -> Result<bool, StateError> {
        if self.signature != other.signature {
            return Err(StateError::UniverseMismatch {
                expected: self.signature.world_count(),
                found: other.signature.world_count(),
            });
        }
        let alpha = self.signature.models(alpha)?;
        Ok(self
            .belief_models()
            .equal_within(&other.belief_models(), &alpha))
    }
}

/// `Ψ ⊨ α` on model sets.
pub fn believes_models(order: &TotalPreorder, alpha: &WorldSet) -> bool {
    order.bottom().is_subset(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::World;

    fn sig() -> Arc<Signature> {
        Arc::new(Signature::new(["a", "b"]).unwrap())
    }

    fn ws(worlds: &[u32]) -> WorldSet {
        WorldSet::from_worlds(4, worlds.iter().map(|&w| World(w)))
    }

    fn state(layers: &[&[u32]]) -> EpistemicState {
        EpistemicState::from_layers(sig(), &Layers(layers.iter().map(|l| ws(l)).collect())).unwrap()
    }

    fn psi1() -> EpistemicState {
        state(&[&[3], &[1], &[2, 0]])
    }

    #[test]
    fn belief_models_are_bottom_layer() {
        assert_eq!(psi1().belief_models(), ws(&[3]));
        assert_eq!(
            EpistemicState::flat(sig()).belief_models(),
            ws(&[0, 1, 2, 3])
        );
        // after one type-2 step with a
        assert_eq!(state(&[&[3, 1], &[2, 0]]).belief_models(), ws(&[3, 1]));
    }

    #[test]
    fn believes_examples() {
        let s = sig();
        let p = psi1();
        assert!(p.believes(&s.parse("a").unwrap()).unwrap());
        assert!(p.believes(&s.parse("b").unwrap()).unwrap());
        assert!(p.believes(&Formula::Top).unwrap());
        assert!(!p.believes(&Formula::Bottom).unwrap());
    }

    #[test]
    fn bel_equiv_examples() {
        let s = sig();
        let not_a = s.parse("!a").unwrap();
        let col1 = state(&[&[3, 1], &[2, 0]]);
        let col2 = state(&[&[3, 1], &[0], &[2]]);
        assert!(col1.bel_equiv_wrt(&col2, &not_a).unwrap());
        assert!(psi1().bel_equiv_wrt(&psi1(), &Formula::atom("b")).unwrap());
        assert!(!psi1().bel_equiv_wrt(&col1, &not_a).unwrap());
    }

    #[test]
    fn order_must_match_signature() {
        assert_eq!(
            EpistemicState::new(sig(), TotalPreorder::flat(8)),
            Err(StateError::UniverseMismatch {
                expected: 4,
                found: 8
            })
        );
    }
}
