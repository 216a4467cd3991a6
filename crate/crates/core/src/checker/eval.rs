//! Per-case evaluation of every postulate on model sets.

use std::collections::HashMap;

use crate::logic::{Formula, Signature, World, WorldSet};
use crate::operators::{achieve_order, frontal_in, BeliefChange};
use crate::preorder::TotalPreorder;

use super::PostulateId::{self, *};

/// Whether a single transition `before ↦ after` under `α` satisfies one of
/// the world-pair conditions for the pair `(ω1, ω2)`.
pub(crate) fn transition_holds(
    p: PostulateId,
    before: &TotalPreorder,
    after: &TotalPreorder,
    alpha: &WorldSet,
    w1: World,
    w2: World,
) -> bool {
    let a1 = alpha.contains(w1);
    let a2 = alpha.contains(w2);
    // Most conditions compare a ¬α-world ω1 with an α-world ω2.
    let mixed = !a1 && a2;
    match p {
        DR8 | IC1 => !(a1 && a2) || before.leq(w1, w2) == after.leq(w1, w2),
        DR9 | IC2 => a1 || a2 || before.leq(w1, w2) == after.leq(w1, w2),
        DR10 | IC4 => !mixed || !before.leq(w1, w2) || after.leq(w1, w2),
        DR11 | IC3 => !mixed || !before.lt(w1, w2) || after.lt(w1, w2),
        DR12 => !mixed || !before.direct_successor(w2, w1) || after.leq(w1, w2),
        DR13 => !mixed || before.rank(w2) != 0 || after.leq(w2, w1),
        DR14 => !mixed || !before.equiv(w2, w1) || after.direct_successor(w1, w2),
        DR15 => {
            !mixed || !frontal_in(before, w1, alpha) || !before.equiv(w2, w1) || after.equiv(w2, w1)
        }
        _ => unreachable!("{p} is not a transition condition"),
    }
}

fn sfa_holds(p: PostulateId, order: &TotalPreorder, w1: World, w2: World) -> bool {
    let bottom = order.bottom();
    let (m1, m2) = (bottom.contains(w1), bottom.contains(w2));
    match p {
        SFA1 => !(m1 && m2) || order.equiv(w1, w2),
        SFA2 => !(m1 && !m2) || order.lt(w1, w2),
        _ => unreachable!(),
    }
}

/// Memoizing evaluator. One instance serves one worker; caches are keyed by
/// the full order so they stay valid across states.
pub(crate) struct Evaluator<'a> {
    op: &'a dyn BeliefChange,
    signature: &'a Signature,
    steps: HashMap<(TotalPreorder, u64), TotalPreorder>,
    achieved: HashMap<(TotalPreorder, u64), Option<WorldSet>>,
    direct: HashMap<(TotalPreorder, u64, u64), Option<bool>>,
}

fn mask(set: &WorldSet) -> u64 {
    set.as_mask().expect("checker universes fit one word")
}

impl<'a> Evaluator<'a> {
    pub(crate) fn new(op: &'a dyn BeliefChange, signature: &'a Signature) -> Self {
        Evaluator {
            op,
            signature,
            steps: HashMap::new(),
            achieved: HashMap::new(),
            direct: HashMap::new(),
        }
    }

    /// Drop memoized results; called between states to bound memory.
    pub(crate) fn clear(&mut self) {
        self.steps.clear();
        self.achieved.clear();
        self.direct.clear();
    }

    fn step(&mut self, s: &TotalPreorder, a: &WorldSet) -> TotalPreorder {
        let key = (s.clone(), mask(a));
        if let Some(hit) = self.steps.get(&key) {
            return hit.clone();
        }
        let out = self.op.apply(s, a);
        self.steps.insert(key, out.clone());
        out
    }

    /// `Mod(s • a)`, or `None` if `•` is undefined (hesitance fails).
    fn bel_achieved(&mut self, s: &TotalPreorder, a: &WorldSet) -> Option<WorldSet> {
        let key = (s.clone(), mask(a));
        if let Some(hit) = self.achieved.get(&key) {
            return hit.clone();
        }
        let out = achieve_order(self.op, s, a).ok().map(|r| r.order.bottom());
        self.achieved.insert(key, out.clone());
        out
    }

    fn leq(&mut self, s: &TotalPreorder, a: &WorldSet, b: &WorldSet) -> Option<bool> {
        let single = self.bel_achieved(s, a)?;
        let both = self.bel_achieved(s, &a.intersection(b))?;
        Some(single.is_subset(&both))
    }

    fn lt(&mut self, s: &TotalPreorder, a: &WorldSet, b: &WorldSet) -> Option<bool> {
        Some(self.leq(s, a, b)? && !self.leq(s, b, a)?)
    }

    fn ll(&mut self, s: &TotalPreorder, a: &WorldSet, b: &WorldSet) -> Option<bool> {
        let key = (s.clone(), mask(a), mask(b));
        if let Some(hit) = self.direct.get(&key) {
            return *hit;
        }
        let out = self.ll_uncached(s, a, b);
        self.direct.insert(key, out);
        out
    }

    fn ll_uncached(&mut self, s: &TotalPreorder, a: &WorldSet, b: &WorldSet) -> Option<bool> {
        if !self.lt(s, a, b)? {
            return Some(false);
        }
        let u = s.universe_size();
        for m in 0..(1u64 << u) {
            let g = WorldSet::from_mask(u, m);
            if self.lt(s, a, &g)? && self.lt(s, &g, b)? {
                return Some(false);
            }
        }
        Some(true)
    }

    /// Syntactically different formulas with the models `set`.
    fn representatives(&self, set: &WorldSet) -> Vec<WorldSet> {
        let dnf = self.signature.dnf_for(set);
        let forms = [
            self.signature.cnf_for(set),
            Formula::not(Formula::not(dnf.clone())),
            dnf,
        ];
        forms
            .iter()
            .map(|f| {
                self.signature
                    .models(f)
                    .expect("built over the same signature")
            })
            .collect()
    }

    /// Every violating world tuple of `p` on one case. Zero-world postulates
    /// report a violation as one empty tuple.
    pub(crate) fn violations(
        &mut self,
        p: PostulateId,
        s: &TotalPreorder,
        f: &[WorldSet],
    ) -> Vec<Vec<World>> {
        let u = s.universe_size();
        match p.arity().worlds {
            0 => {
                if self.holds(p, s, f) {
                    Vec::new()
                } else {
                    vec![Vec::new()]
                }
            }
            1 => (0..u as u32)
                .map(World)
                .filter(|&w| !self.holds_lemma1(s, w))
                .map(|w| vec![w])
                .collect(),
            _ => {
                let a = &f[0];
                let after = self.step(s, a);
                let mut out = Vec::new();
                for i in 0..u as u32 {
                    for j in 0..u as u32 {
                        let (w1, w2) = (World(i), World(j));
                        let ok = match p {
                            SFA1 | SFA2 => sfa_holds(p, s, w1, w2) && sfa_holds(p, &after, w1, w2),
                            _ => transition_holds(p, s, &after, a, w1, w2),
                        };
                        if !ok {
                            out.push(vec![w1, w2]);
                        }
                    }
                }
                out
            }
        }
    }

    fn holds_lemma1(&mut self, s: &TotalPreorder, w: World) -> bool {
        let u = s.universe_size();
        let mut not_w = WorldSet::full(u);
        not_w.remove(w);
        let mut expected = s.bottom();
        expected.insert(w);
        self.bel_achieved(s, &not_w) == Some(expected)
    }

    fn holds(&mut self, p: PostulateId, s: &TotalPreorder, f: &[WorldSet]) -> bool {
        let m = s.bottom();
        let a = &f[0];
        match p {
            C1 | D13 => m.is_subset(&self.step(s, a).bottom()),
            C2 => m.is_subset(a) || self.step(s, a).bottom().is_subset(&m),
            C3 => a.is_full() || !self.step(s, a).bottom().is_subset(a),
            C4 => self.step(s, a).bottom().intersection(a).is_subset(&m),
            C5 => {
                let expected = self.step(s, a).bottom();
                self.representatives(a)
                    .iter()
                    .all(|r| self.op.apply(s, r).bottom() == expected)
            }
            C6 => {
                let both = self.step(s, &a.intersection(&f[1])).bottom();
                let either = self
                    .step(s, a)
                    .bottom()
                    .union(&self.step(s, &f[1]).bottom());
                both.is_subset(&either)
            }
            C7 => {
                let b = &f[1];
                let both = self.step(s, &a.intersection(b)).bottom();
                both.is_subset(b) || self.step(s, b).bottom().is_subset(&both)
            }
            D1 => self.bel_achieved(s, a).is_some_and(|r| m.is_subset(&r)),
            D2 => match self.bel_achieved(s, a) {
                None => false,
                Some(r) => m.is_subset(a) || r.is_subset(&m),
            },
            D3 | Hesitance => self.hesitant(s, a),
            D4 => self
                .bel_achieved(s, a)
                .is_some_and(|r| r.intersection(a).is_subset(&m)),
            D5 => self.sequence_independent(s, a, &f[1], false),
            SFA3 => self.sequence_independent(s, a, &f[1], true),
            D6 => {
                let b = &f[1];
                let (Some(ra), Some(rb), Some(rab)) = (
                    self.bel_achieved(s, a),
                    self.bel_achieved(s, b),
                    self.bel_achieved(s, &a.intersection(b)),
                ) else {
                    return false;
                };
                rab.is_subset(&ra.union(&rb))
            }
            D7 => {
                let b = &f[1];
                let (Some(rb), Some(rab)) = (
                    self.bel_achieved(s, b),
                    self.bel_achieved(s, &a.intersection(b)),
                ) else {
                    return false;
                };
                rab.is_subset(b) || rb.is_subset(&rab)
            }
            D8 | D9 | D10 | D11 => {
                let b = &f[1];
                let after = self.step(s, a);
                let (Some(later), Some(now)) =
                    (self.bel_achieved(&after, b), self.bel_achieved(s, b))
                else {
                    return false;
                };
                match p {
                    D8 => !a.complement().is_subset(b) || later.equal_within(&now, a),
                    D9 => !a.is_subset(b) || later.equal_within(&now, &b.complement()),
                    D10 => {
                        let g = &f[2];
                        !a.is_subset(g) || !later.is_subset(g) || now.is_subset(g)
                    }
                    _ => {
                        let g = &f[2];
                        !a.complement().is_subset(g) || !now.is_subset(g) || later.is_subset(g)
                    }
                }
            }
            D12 => {
                let (b, g) = (&f[1], &f[2]);
                if !a.is_subset(b) || !a.complement().is_subset(g) {
                    return true;
                }
                match self.ll(s, g, b) {
                    None => false,
                    Some(false) => true,
                    Some(true) => {
                        let after = self.step(s, a);
                        self.leq(&after, b, g) == Some(true)
                    }
                }
            }
            DecrementSuccess => self.decrement_success(s, a),
            PartialSuccess => {
                let after = self.step(s, a).bottom();
                let bound = m.union(&s.min_of(&a.complement()));
                m.is_subset(&after) && after.is_subset(&bound)
            }
            Lemma3 => {
                let (g, b) = (a, &f[1]);
                match self.lt(s, g, b) {
                    None => false,
                    Some(false) => true,
                    Some(true) => {
                        let Some(direct) = self.ll(s, g, b) else {
                            return false;
                        };
                        let min_b = s.min_of(&b.complement());
                        let min_g = s.min_of(&g.complement());
                        let adjacent = min_b.iter().all(|w1| {
                            min_g
                                .iter()
                                .all(|w2| s.direct_successor(w2, w1) || s.equiv(w2, w1))
                        });
                        direct == adjacent
                    }
                }
            }
            _ => unreachable!("{p} quantifies over worlds"),
        }
    }

    fn hesitant(&mut self, s: &TotalPreorder, a: &WorldSet) -> bool {
        if a.is_full() {
            return true;
        }
        let mut current = s.clone();
        for n in 0..=s.layer_count() {
            if !current.bottom().is_subset(a) {
                return true;
            }
            if n < s.layer_count() {
                current = self.step(&current, a);
            }
        }
        false
    }

    /// The smallest `n` with `Mod(s∘ⁿa) ⊄ a` exists and yields
    /// `Mod(s) ∪ min(¬a, s)`. For `a ≡ ⊤` only `Mod(s • ⊤) = Mod(s)` is
    /// required.
    fn decrement_success(&mut self, s: &TotalPreorder, a: &WorldSet) -> bool {
        let m = s.bottom();
        if a.is_full() {
            return self.bel_achieved(s, a) == Some(m);
        }
        let expected = m.union(&s.min_of(&a.complement()));
        let mut current = s.clone();
        for n in 0..=s.layer_count() {
            let bel = current.bottom();
            if !bel.is_subset(a) {
                return bel == expected;
            }
            if n < s.layer_count() {
                current = self.step(&current, a);
            }
        }
        false
    }

    /// Equal results for every choice of syntactic representatives in
    /// sequences of length one and two. Compares beliefs, or whole orders
    /// when `full` is set.
    fn sequence_independent(
        &mut self,
        s: &TotalPreorder,
        a: &WorldSet,
        b: &WorldSet,
        full: bool,
    ) -> bool {
        let same = |x: &TotalPreorder, y: &TotalPreorder| {
            if full {
                x == y
            } else {
                x.bottom() == y.bottom()
            }
        };
        let once = self.step(s, a);
        let twice = self.step(&once, b);
        let reps_a = self.representatives(a);
        let reps_b = self.representatives(b);
        for ra in &reps_a {
            let first = self.op.apply(s, ra);
            if !same(&first, &once) {
                return false;
            }
            for rb in &reps_b {
                if !same(&self.op.apply(&first, rb), &twice) {
                    return false;
                }
            }
        }
        true
    }
}
