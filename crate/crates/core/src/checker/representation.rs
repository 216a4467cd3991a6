//! Recovering an assignment from `•` and checking it against the
//! representation conditions.

use serde::{Deserialize, Serialize};

use crate::logic::{Signature, World, WorldSet};
use crate::operators::{achieve_order, induced_order_of, BeliefChange};
use crate::preorder::{enumerate_preorders, TotalPreorder};
use crate::state::believes_models;

use super::eval::transition_holds;
use super::{CheckError, Counterexample, Outcome, PostulateId, Witness};

const CAP: usize = 5;

/// Outcome of one condition over every state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: String,
    pub outcome: Outcome,
    pub cases: u64,
    pub violations: u64,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationReport {
    pub operator: String,
    pub domain: String,
    pub outcome: Outcome,
    pub conditions: Vec<ConditionReport>,
}

impl RepresentationReport {
    pub fn condition(&self, name: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.condition == name)
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

struct Condition {
    name: String,
    cases: u64,
    witnesses: Vec<Witness>,
    violations: u64,
}

impl Condition {
    fn new(name: &str) -> Self {
        Condition {
            name: name.to_string(),
            cases: 0,
            witnesses: Vec::new(),
            violations: 0,
        }
    }

    fn record(&mut self, ok: bool, order: &TotalPreorder, formulas: &[WorldSet], worlds: &[World]) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            self.witnesses.push(Witness::new(order, formulas, worlds));
        }
    }

    fn finish(mut self, signature: &Signature) -> ConditionReport {
        self.witnesses.sort();
        self.witnesses.truncate(CAP);
        ConditionReport {
            condition: self.name,
            outcome: if self.violations == 0 {
                Outcome::Pass
            } else {
                Outcome::Fail
            },
            cases: self.cases,
            violations: self.violations,
            counterexamples: self.witnesses.iter().map(|w| w.encode(signature)).collect(),
        }
    }
}

const TRANSITIONS: [PostulateId; 6] = [
    PostulateId::DR8,
    PostulateId::DR9,
    PostulateId::DR10,
    PostulateId::DR11,
    PostulateId::DR12,
    PostulateId::DR13,
];

/// For every state: the order induced by `•` is a total preorder, it is
/// faithful (`SFA1`, `SFA2`), decrement success holds with it, and every
/// step on a believed input satisfies `DR8`–`DR13` between the induced
/// orders before and after.
pub fn verify_representation(
    op: &dyn BeliefChange,
    signature: &Signature,
) -> Result<RepresentationReport, CheckError> {
    if signature.len() > 2 {
        return Err(CheckError::DomainTooLarge {
            postulate: "representation".to_string(),
            mode: "exhaustive",
            atoms: signature.len(),
            limit: 2,
        });
    }
    let u = signature.world_count();
    let mut induced_ok = Condition::new("induced-preorder");
    let mut sfa1 = Condition::new("SFA1");
    let mut sfa2 = Condition::new("SFA2");
    let mut success = Condition::new("DecrementSuccess");
    let mut drs: Vec<Condition> = TRANSITIONS
        .iter()
        .map(|p| Condition::new(p.name()))
        .collect();

    let induced = |o: &TotalPreorder| induced_order_of(op, o).ok();

    for order in enumerate_preorders(u)? {
        let Some(ind) = induced(&order) else {
            induced_ok.record(false, &order, &[], &[]);
            continue;
        };
        induced_ok.record(true, &order, &[], &[]);

        let m = order.bottom();
        for i in 0..u as u32 {
            for j in 0..u as u32 {
                let (w1, w2) = (World(i), World(j));
                let (m1, m2) = (m.contains(w1), m.contains(w2));
                sfa1.record(!(m1 && m2) || ind.equiv(w1, w2), &order, &[], &[w1, w2]);
                sfa2.record(!(m1 && !m2) || ind.lt(w1, w2), &order, &[], &[w1, w2]);
            }
        }

        for mask in 0..(1u64 << u) {
            let a = WorldSet::from_mask(u, mask);
            success.record(
                succeeds(op, &order, &ind, &a),
                &order,
                std::slice::from_ref(&a),
                &[],
            );

            if !believes_models(&order, &a) {
                continue;
            }
            let next = op.apply(&order, &a);
            let Some(ind_next) = induced(&next) else {
                induced_ok.record(false, &next, &[], &[]);
                continue;
            };
            for (cond, &p) in drs.iter_mut().zip(TRANSITIONS.iter()) {
                for i in 0..u as u32 {
                    for j in 0..u as u32 {
                        let (w1, w2) = (World(i), World(j));
                        let ok = transition_holds(p, &ind, &ind_next, &a, w1, w2);
                        cond.record(ok, &order, std::slice::from_ref(&a), &[w1, w2]);
                    }
                }
            }
        }
    }

    let mut conditions = vec![
        induced_ok.finish(signature),
        sfa1.finish(signature),
        sfa2.finish(signature),
        success.finish(signature),
    ];
    conditions.extend(drs.into_iter().map(|c| c.finish(signature)));
    let outcome = if conditions.iter().all(|c| c.outcome == Outcome::Pass) {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    Ok(RepresentationReport {
        operator: op.name().to_string(),
        domain: format!("exhaustive |Σ|={}", signature.len()),
        outcome,
        conditions,
    })
}

/// Decrement success measured against the induced order `ind`.
fn succeeds(
    op: &dyn BeliefChange,
    order: &TotalPreorder,
    ind: &TotalPreorder,
    a: &WorldSet,
) -> bool {
    let m = order.bottom();
    if a.is_full() {
        return achieve_order(op, order, a).is_ok_and(|r| r.order.bottom() == m);
    }
    let expected = m.union(&ind.min_of(&a.complement()));
    let mut current = order.clone();
    for n in 0..=order.layer_count() {
        let bel = current.bottom();
        if !bel.is_subset(a) {
            return bel == expected;
        }
        if n < order.layer_count() {
            current = op.apply(&current, a);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::OperatorKind;

    #[test]
    fn decrement_kinds_are_represented() {
        let sig = Signature::alphabetic(2).unwrap();
        for kind in [OperatorKind::Type1Decrement, OperatorKind::Type2Decrement] {
            let r = verify_representation(&kind, &sig).unwrap();
            assert!(r.passed(), "{kind}: {r:?}");
            assert_eq!(r.condition("induced-preorder").unwrap().cases, 75);
        }
    }

    #[test]
    fn instant_fails_only_transition_conditions() {
        let sig = Signature::alphabetic(2).unwrap();
        let r = verify_representation(&OperatorKind::InstantContraction, &sig).unwrap();
        for name in ["induced-preorder", "SFA1", "SFA2", "DecrementSuccess"] {
            assert!(
                r.condition(name).unwrap().outcome == Outcome::Pass,
                "{name}"
            );
        }
        assert_eq!(r.condition("DR12").unwrap().outcome, Outcome::Fail);
        assert!(!r.passed());
    }

    #[test]
    fn refuses_large_signatures() {
        let sig = Signature::alphabetic(3).unwrap();
        assert!(verify_representation(&OperatorKind::Type1Decrement, &sig).is_err());
    }
}
