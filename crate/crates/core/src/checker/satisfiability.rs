//! Which successor orders a set of transition conditions admits.

use serde::{Deserialize, Serialize};

use crate::io::encode_layers;
use crate::logic::{Signature, World, WorldSet};
use crate::preorder::{enumerate_preorders, TotalPreorder};

use super::eval::transition_holds;
use super::{CheckError, PostulateId};

const CONSTRAINTS: [PostulateId; 8] = [
    PostulateId::DR8,
    PostulateId::DR9,
    PostulateId::DR10,
    PostulateId::DR11,
    PostulateId::DR12,
    PostulateId::DR13,
    PostulateId::DR14,
    PostulateId::DR15,
];

/// Every total preorder `≤'` such that `order ↦ ≤'` under `alpha`
/// satisfies each selected condition, in enumeration order.
pub fn successor_satisfiability(
    order: &TotalPreorder,
    alpha: &WorldSet,
    constraints: &[PostulateId],
) -> Result<Vec<TotalPreorder>, CheckError> {
    if let Some(&bad) = constraints.iter().find(|c| !CONSTRAINTS.contains(c)) {
        return Err(CheckError::NotAConstraint(bad));
    }
    let u = order.universe_size();
    let worlds: Vec<World> = order.worlds().collect();
    Ok(enumerate_preorders(u)?
        .filter(|candidate| {
            constraints.iter().all(|&c| {
                worlds.iter().all(|&w1| {
                    worlds
                        .iter()
                        .all(|&w2| transition_holds(c, order, candidate, alpha, w1, w2))
                })
            })
        })
        .collect())
}

/// Serializable summary of a satisfiability run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatReport {
    pub atoms: Vec<String>,
    pub state: Vec<Vec<String>>,
    pub alpha: Vec<String>,
    pub constraints: Vec<PostulateId>,
    pub candidates: u64,
    pub count: usize,
    pub successors: Vec<Vec<Vec<String>>>,
}

impl SatReport {
    /// Summarize `successors`, listing at most `limit` of them.
    pub fn new(
        signature: &Signature,
        order: &TotalPreorder,
        alpha: &WorldSet,
        constraints: &[PostulateId],
        successors: &[TotalPreorder],
        limit: usize,
    ) -> Self {
        SatReport {
            atoms: signature.atoms().to_vec(),
            state: encode_layers(signature, order),
            alpha: alpha.bitstrings(signature.len()),
            constraints: constraints.to_vec(),
            candidates: enumerate_preorders(order.universe_size())
                .map(|it| it.count() as u64)
                .unwrap_or(0),
            count: successors.len(),
            successors: successors
                .iter()
                .take(limit)
                .map(|s| encode_layers(signature, s))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preorder::Layers;

    fn ws(worlds: &[u32]) -> WorldSet {
        WorldSet::from_worlds(4, worlds.iter().map(|&w| World(w)))
    }

    fn order(layers: &[&[u32]]) -> TotalPreorder {
        TotalPreorder::from_layers(&Layers(layers.iter().map(|l| ws(l)).collect())).unwrap()
    }

    #[test]
    fn mixed_bottom_conflict_has_no_successor() {
        use PostulateId::*;
        let psi = order(&[&[3, 1], &[0], &[2]]);
        let a = ws(&[3, 2]);
        assert!(successor_satisfiability(&psi, &a, &[DR9, DR12, DR13])
            .unwrap()
            .is_empty());
        assert!(!successor_satisfiability(&psi, &a, &[DR9, DR12])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn unbelieved_input_admits_the_identity() {
        use PostulateId::*;
        let flat = TotalPreorder::flat(4);
        let found =
            successor_satisfiability(&flat, &ws(&[3, 2]), &[DR8, DR9, DR10, DR11, DR13]).unwrap();
        assert!(found.contains(&flat));
    }

    #[test]
    fn rejects_non_constraints() {
        let psi = TotalPreorder::flat(4);
        assert_eq!(
            successor_satisfiability(&psi, &ws(&[3]), &[PostulateId::D1]),
            Err(CheckError::NotAConstraint(PostulateId::D1))
        );
    }
}
