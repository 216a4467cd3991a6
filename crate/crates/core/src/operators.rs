//! One-step belief-change operators and the notions derived from them.
//!
//! The semantic core works on a [`TotalPreorder`] and the model set of the
//! input formula; the formula-level functions at the bottom of this module
//! resolve formulas against the state's signature first.
//!
//! Key schemes for a believed, non-tautological `α` (rank `r` in `Ψ`):
//!
//! | kind      | `α`-world | `¬α`-world                               |
//! |-----------|-----------|------------------------------------------|
//! | type-1    | `2r`      | `2r − 2`                                 |
//! | type-2    | `2r`      | `2r` if frontal w.r.t. `α`, else `2r − 2` |
//! | instant   | `Mod(Ψ) ∪ min(Mod(¬α))` to 0, every other world `r + 1` |
//!
//! followed by compression. When `α` is not believed, or `α ≡ ⊤`, every
//! operator returns the state unchanged.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::{Formula, UnknownAtom, World, WorldSet};
use crate::preorder::{TotalPreorder, MAX_ENUMERATION_WORLDS};
use crate::state::{believes_models, EpistemicState};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error("formula does not fit the state's signature: {0}")]
    SignatureMismatch(#[from] UnknownAtom),
    #[error("operator `{operator}` still believes the input after {bound} steps")]
    HesitanceViolation { operator: String, bound: usize },
    #[error(
        "quantifying over all formulas needs at most {MAX_ENUMERATION_WORLDS} worlds, got {0}"
    )]
    UniverseTooLarge(usize),
    #[error("induced relation is not total: worlds {0} and {1} are incomparable")]
    NotTotal(u32, u32),
    #[error("induced relation is not transitive: {0} ≤ {1} ≤ {2} but not {0} ≤ {2}")]
    NotTransitive(u32, u32, u32),
}

/// A belief change operator `∘ : E × L → E` over preorder states. Formulas
/// enter only through their model sets.
pub trait BeliefChange: Sync {
    /// Short identifier used in reports.
    fn name(&self) -> &str;

    fn apply(&self, order: &TotalPreorder, alpha: &WorldSet) -> TotalPreorder;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OperatorKind {
    #[serde(rename = "type1")]
    Type1Decrement,
    #[serde(rename = "type2")]
    Type2Decrement,
    #[serde(rename = "instant")]
    InstantContraction,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 3] = [
        OperatorKind::Type1Decrement,
        OperatorKind::Type2Decrement,
        OperatorKind::InstantContraction,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OperatorKind::Type1Decrement => "type1",
            OperatorKind::Type2Decrement => "type2",
            OperatorKind::InstantContraction => "instant",
        }
    }

    pub fn is_decrement(self) -> bool {
        !matches!(self, OperatorKind::InstantContraction)
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown operator `{0}` (expected type1, type2 or instant)")]
pub struct UnknownOperator(pub String);

impl FromStr for OperatorKind {
    type Err = UnknownOperator;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "type1" => Ok(OperatorKind::Type1Decrement),
            "type2" => Ok(OperatorKind::Type2Decrement),
            "instant" => Ok(OperatorKind::InstantContraction),
            other => Err(UnknownOperator(other.to_string())),
        }
    }
}

impl BeliefChange for OperatorKind {
    fn name(&self) -> &str {
        self.as_str()
    }

    fn apply(&self, order: &TotalPreorder, alpha: &WorldSet) -> TotalPreorder {
        if alpha.is_full() || !believes_models(order, alpha) {
            return order.clone();
        }
        match self {
            OperatorKind::Type1Decrement => decrement(order, alpha, false),
            OperatorKind::Type2Decrement => decrement(order, alpha, true),
            OperatorKind::InstantContraction => instant(order, alpha),
        }
    }
}

fn decrement(order: &TotalPreorder, alpha: &WorldSet, keep_frontal: bool) -> TotalPreorder {
    let keys: Vec<i64> = order
        .worlds()
        .map(|w| {
            let r = i64::from(order.rank(w));
            if alpha.contains(w) || (keep_frontal && frontal_in(order, w, alpha)) {
                2 * r
            } else {
                2 * r - 2
            }
        })
        .collect();
    TotalPreorder::compress(&keys)
}

fn instant(order: &TotalPreorder, alpha: &WorldSet) -> TotalPreorder {
    let contracted = order.bottom().union(&order.min_of(&alpha.complement()));
    let keys: Vec<u32> = order
        .worlds()
        .map(|w| {
            if contracted.contains(w) {
                0
            } else {
                order.rank(w) + 1
            }
        })
        .collect();
    TotalPreorder::compress(&keys)
}

/// Whether `world` is frontal w.r.t. `α`: it is a `¬α`-world, no `α`-world
/// lies directly below it and no `¬α`-world directly above it.
pub fn frontal_in(order: &TotalPreorder, world: World, alpha: &WorldSet) -> bool {
    if alpha.contains(world) {
        return false;
    }
    !order.worlds().any(|other| {
        (alpha.contains(other) && order.direct_successor(other, world))
            || (!alpha.contains(other) && order.direct_successor(world, other))
    })
}

/// `Ψ ∘ⁿ α`.
pub fn iterate_order(
    op: &(impl BeliefChange + ?Sized),
    order: &TotalPreorder,
    alpha: &WorldSet,
    n: usize,
) -> TotalPreorder {
    let mut current = order.clone();
    for _ in 0..n {
        current = op.apply(&current, alpha);
    }
    current
}

/// Result of the success operator `•`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Achieved {
    pub order: TotalPreorder,
    pub steps: usize,
}

/// `Ψ • α`: apply `α` until it is no longer believed; zero steps for
/// tautologies and for inputs that are not believed. Gives up after as many
/// steps as `Ψ` has layers.
pub fn achieve_order(
    op: &(impl BeliefChange + ?Sized),
    order: &TotalPreorder,
    alpha: &WorldSet,
) -> Result<Achieved, OperatorError> {
    if alpha.is_full() {
        return Ok(Achieved {
            order: order.clone(),
            steps: 0,
        });
    }
    let bound = order.layer_count();
    let mut current = order.clone();
    for steps in 0..=bound {
        if !believes_models(&current, alpha) {
            return Ok(Achieved {
                order: current,
                steps,
            });
        }
        if steps < bound {
            current = op.apply(&current, alpha);
        }
    }
    Err(OperatorError::HesitanceViolation {
        operator: op.name().to_string(),
        bound,
    })
}

/// `α ⪯ β` in `Ψ`: `Bel(Ψ • (α ∧ β)) ⊆ Bel(Ψ • α)`, i.e.
/// `Mod(Ψ • α) ⊆ Mod(Ψ • (α ∧ β))`.
pub fn giveup_leq_in(
    op: &(impl BeliefChange + ?Sized),
    order: &TotalPreorder,
    alpha: &WorldSet,
    beta: &WorldSet,
) -> Result<bool, OperatorError> {
    let single = achieve_order(op, order, alpha)?.order.bottom();
    let both = achieve_order(op, order, &alpha.intersection(beta))?
        .order
        .bottom();
    Ok(single.is_subset(&both))
}

/// Strict part of [`giveup_leq_in`].
pub fn giveup_lt_in(
    op: &(impl BeliefChange + ?Sized),
    order: &TotalPreorder,
    alpha: &WorldSet,
    beta: &WorldSet,
) -> Result<bool, OperatorError> {
    Ok(giveup_leq_in(op, order, alpha, beta)? && !giveup_leq_in(op, order, beta, alpha)?)
}

/// `α ⋘ β`: `α ≺ β` with no `γ` strictly in between. `γ` ranges over every
/// semantic class of the universe.
pub fn giveup_ll_in(
    op: &(impl BeliefChange + ?Sized),
    order: &TotalPreorder,
    alpha: &WorldSet,
    beta: &WorldSet,
) -> Result<bool, OperatorError> {
    let universe = order.universe_size();
    if universe > MAX_ENUMERATION_WORLDS {
        return Err(OperatorError::UniverseTooLarge(universe));
    }
    if !giveup_lt_in(op, order, alpha, beta)? {
        return Ok(false);
    }
    for mask in 0..(1u64 << universe) {
        let gamma = WorldSet::from_mask(universe, mask);
        if giveup_lt_in(op, order, alpha, &gamma)? && giveup_lt_in(op, order, &gamma, beta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The order recovered from `•` alone:
/// `ω1 ≤ ω2` iff `ω1 ∈ Mod(Ψ • ¬(ω1 ∨ ω2))`.
///
/// Fails with a witness when the relation is not a total preorder.
#[allow(clippy::needless_range_loop)]
pub fn induced_order_of(
    op: &(impl BeliefChange + ?Sized),
    order: &TotalPreorder,
) -> Result<TotalPreorder, OperatorError> {
    let n = order.universe_size();
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut excluded = WorldSet::full(n);
            excluded.remove(World(i as u32));
            excluded.remove(World(j as u32));
            let result = achieve_order(op, order, &excluded)?;
            rel[i][j] = result.order.bottom().contains(World(i as u32));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !rel[i][j] && !rel[j][i] {
                return Err(OperatorError::NotTotal(i as u32, j as u32));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !rel[i][j] {
                continue;
            }
            for k in 0..n {
                if rel[j][k] && !rel[i][k] {
                    return Err(OperatorError::NotTransitive(i as u32, j as u32, k as u32));
                }
            }
        }
    }
    // In a total preorder, the number of worlds at or below ω orders ω.
    let keys: Vec<usize> = (0..n)
        .map(|j| (0..n).filter(|&i| rel[i][j]).count())
        .collect();
    Ok(TotalPreorder::compress(&keys))
}

/// `Ψ • α` together with the number of steps taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AchieveResult {
    pub state: EpistemicState,
    pub steps: usize,
}

fn models_in(state: &EpistemicState, f: &Formula) -> Result<WorldSet, OperatorError> {
    Ok(state.signature().models(f)?)
}

/// `Ψ ∘ α`.
pub fn step(
    state: &EpistemicState,
    alpha: &Formula,
    op: &(impl BeliefChange + ?Sized),
) -> Result<EpistemicState, OperatorError> {
    let alpha = models_in(state, alpha)?;
    Ok(state.with_order(op.apply(state.order(), &alpha)))
}

/// `Ψ ∘ⁿ α`; `n = 0` returns `Ψ`.
pub fn iterate(
    state: &EpistemicState,
    alpha: &Formula,
    op: &(impl BeliefChange + ?Sized),
    n: usize,
) -> Result<EpistemicState, OperatorError> {
    let alpha = models_in(state, alpha)?;
    Ok(state.with_order(iterate_order(op, state.order(), &alpha, n)))
}

/// `Ψ • α` with the step count.
pub fn achieve(
    state: &EpistemicState,
    alpha: &Formula,
    op: &(impl BeliefChange + ?Sized),
) -> Result<AchieveResult, OperatorError> {
    let alpha = models_in(state, alpha)?;
    let Achieved { order, steps } = achieve_order(op, state.order(), &alpha)?;
    Ok(AchieveResult {
        state: state.with_order(order),
        steps,
    })
}

pub fn frontal(
    state: &EpistemicState,
    world: World,
    alpha: &Formula,
) -> Result<bool, OperatorError> {
    Ok(frontal_in(state.order(), world, &models_in(state, alpha)?))
}

pub fn giveup_leq(
    state: &EpistemicState,
    alpha: &Formula,
    beta: &Formula,
    op: &(impl BeliefChange + ?Sized),
) -> Result<bool, OperatorError> {
    giveup_leq_in(
        op,
        state.order(),
        &models_in(state, alpha)?,
        &models_in(state, beta)?,
    )
}

pub fn giveup_lt(
    state: &EpistemicState,
    alpha: &Formula,
    beta: &Formula,
    op: &(impl BeliefChange + ?Sized),
) -> Result<bool, OperatorError> {
    giveup_lt_in(
        op,
        state.order(),
        &models_in(state, alpha)?,
        &models_in(state, beta)?,
    )
}

pub fn giveup_ll(
    state: &EpistemicState,
    alpha: &Formula,
    beta: &Formula,
    op: &(impl BeliefChange + ?Sized),
) -> Result<bool, OperatorError> {
    giveup_ll_in(
        op,
        state.order(),
        &models_in(state, alpha)?,
        &models_in(state, beta)?,
    )
}

pub fn induced_order(
    op: &(impl BeliefChange + ?Sized),
    state: &EpistemicState,
) -> Result<TotalPreorder, OperatorError> {
    induced_order_of(op, state.order())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::logic::Signature;
    use crate::preorder::Layers;

    use OperatorKind::*;

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

    fn f(text: &str) -> Formula {
        sig().parse(text).unwrap()
    }

    #[test]
    fn worked_example_steps() {
        let a = f("a");
        assert_eq!(
            step(&psi1(), &a, &Type1Decrement).unwrap(),
            state(&[&[3, 1], &[0], &[2]])
        );
        assert_eq!(
            step(&psi1(), &a, &Type2Decrement).unwrap(),
            state(&[&[3, 1], &[2, 0]])
        );
        assert_eq!(
            step(&psi1(), &a, &InstantContraction).unwrap(),
            state(&[&[3, 1], &[2, 0]])
        );
    }

    #[test]
    fn flat_state_is_fixed() {
        let flat = EpistemicState::flat(sig());
        for kind in OperatorKind::ALL {
            for text in ["a", "true", "false", "a | b"] {
                assert_eq!(step(&flat, &f(text), &kind).unwrap(), flat);
            }
        }
    }

    #[test]
    fn iterate_examples() {
        let a = f("a");
        for kind in OperatorKind::ALL {
            assert_eq!(iterate(&psi1(), &a, &kind, 0).unwrap(), psi1());
            assert_eq!(
                iterate(&psi1(), &a, &kind, 1).unwrap(),
                step(&psi1(), &a, &kind).unwrap()
            );
        }
        assert_eq!(
            iterate(&psi1(), &a, &Type2Decrement, 2).unwrap(),
            iterate(&psi1(), &a, &Type2Decrement, 1).unwrap()
        );
    }

    #[test]
    fn achieve_examples() {
        let r = achieve(&psi1(), &f("a"), &Type2Decrement).unwrap();
        assert_eq!(r.steps, 1);
        assert_eq!(r.state.belief_models(), ws(&[3, 1]));
        for kind in OperatorKind::ALL {
            let r = achieve(&psi1(), &Formula::Top, &kind).unwrap();
            assert_eq!((r.steps, r.state), (0, psi1()));
        }
        // ¬b is not believed in Ψ1 (layer 0 is {ab}), so no step is needed.
        let r = achieve(&psi1(), &f("!b"), &Type1Decrement).unwrap();
        assert_eq!((r.steps, r.state), (0, psi1()));
        // b is believed and its least counter-models sit at rank 2.
        let r = achieve(&psi1(), &f("b"), &Type1Decrement).unwrap();
        assert_eq!(r.steps, 2);
        assert_eq!(r.state.belief_models(), ws(&[3, 2, 0]));
    }

    #[test]
    fn frontality_examples() {
        let a = f("a");
        assert!(frontal(&psi1(), World(0), &a).unwrap());
        assert!(!frontal(&psi1(), World(1), &a).unwrap());
        assert!(!frontal(&psi1(), World(3), &a).unwrap());
        let flat = EpistemicState::flat(sig());
        for w in [World(0), World(1)] {
            assert!(frontal(&flat, w, &a).unwrap());
        }
    }

    #[test]
    fn giveup_examples() {
        let (a, b) = (f("a"), f("b"));
        for kind in OperatorKind::ALL {
            for beta in ["a", "b", "false", "a -> b", "true"] {
                assert!(giveup_leq(&psi1(), &Formula::Top, &f(beta), &kind).unwrap());
                assert!(giveup_leq(&psi1(), &f(beta), &f(beta), &kind).unwrap());
            }
        }
        assert!(giveup_lt(&psi1(), &a, &b, &Type2Decrement).unwrap());
        assert!(!giveup_lt(&psi1(), &b, &a, &Type2Decrement).unwrap());
        // a's counter-models sit at rank 1, b's at rank 2: adjacent.
        assert!(giveup_ll(&psi1(), &a, &b, &Type2Decrement).unwrap());
    }

    #[test]
    fn giveup_ll_refuses_large_universe() {
        let big = Arc::new(Signature::alphabetic(4).unwrap());
        let s = EpistemicState::flat(big);
        assert_eq!(
            giveup_ll(
                &s,
                &Formula::atom("a"),
                &Formula::atom("b"),
                &Type1Decrement
            ),
            Err(OperatorError::UniverseTooLarge(16))
        );
    }

    #[test]
    fn induced_order_examples() {
        for kind in OperatorKind::ALL {
            assert_eq!(
                induced_order(&kind, &psi1()).unwrap(),
                psi1().order().clone()
            );
            let flat = EpistemicState::flat(sig());
            assert_eq!(induced_order(&kind, &flat).unwrap(), TotalPreorder::flat(4));
        }
    }

    struct Stubborn;
    impl BeliefChange for Stubborn {
        fn name(&self) -> &str {
            "stubborn"
        }
        fn apply(&self, order: &TotalPreorder, _: &WorldSet) -> TotalPreorder {
            order.clone()
        }
    }

    #[test]
    fn non_hesitant_operator_is_reported() {
        assert_eq!(
            achieve(&psi1(), &f("a"), &Stubborn),
            Err(OperatorError::HesitanceViolation {
                operator: "stubborn".into(),
                bound: 3
            })
        );
        assert!(matches!(
            induced_order(&Stubborn, &psi1()),
            Err(OperatorError::HesitanceViolation { .. })
        ));
    }

    #[test]
    fn formula_outside_signature() {
        assert_eq!(
            step(&psi1(), &Formula::atom("c"), &Type1Decrement),
            Err(OperatorError::SignatureMismatch(UnknownAtom("c".into())))
        );
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in OperatorKind::ALL {
            assert_eq!(kind.as_str().parse::<OperatorKind>().unwrap(), kind);
        }
        assert!("type3".parse::<OperatorKind>().is_err());
    }
}
