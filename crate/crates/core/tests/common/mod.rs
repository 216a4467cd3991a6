//! A deliberately naive second evaluator. It shares nothing with the
//! checker except the operators themselves: states are plain rank vectors
//! generated by brute force, formulas are bitmasks, and every relation is
//! written out from its definition.

#![allow(dead_code)]

use decrement::checker::PostulateId::{self, *};
use decrement::{BeliefChange, OperatorKind, TotalPreorder, WorldSet};

pub type Ranks = Vec<u32>;

/// All rank vectors over `n` worlds whose used ranks are exactly `0..k`.
pub fn all_states(n: usize) -> Vec<Ranks> {
    let mut out = Vec::new();
    let total = (n as u64).pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let r: Ranks = (0..n)
            .map(|_| {
                let d = (c % n as u64) as u32;
                c /= n as u64;
                d
            })
            .collect();
        let max = *r.iter().max().unwrap();
        if (0..=max).all(|k| r.contains(&k)) {
            out.push(r);
        }
    }
    out
}

pub fn full(n: usize) -> u64 {
    (1u64 << n) - 1
}

fn has(set: u64, w: usize) -> bool {
    set >> w & 1 == 1
}

fn subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

pub fn bottom(r: &Ranks) -> u64 {
    (0..r.len())
        .filter(|&w| r[w] == 0)
        .fold(0, |m, w| m | 1 << w)
}

pub fn min_of(r: &Ranks, set: u64) -> u64 {
    let Some(lo) = (0..r.len()).filter(|&w| has(set, w)).map(|w| r[w]).min() else {
        return 0;
    };
    (0..r.len())
        .filter(|&w| has(set, w) && r[w] == lo)
        .fold(0, |m, w| m | 1 << w)
}

/// `w2` is an immediate successor of `w1`: strictly above with nothing
/// strictly in between.
fn immediate(r: &Ranks, w1: usize, w2: usize) -> bool {
    r[w1] < r[w2] && !(0..r.len()).any(|k| r[w1] < r[k] && r[k] < r[w2])
}

pub fn apply(op: &dyn BeliefChange, r: &Ranks, a: u64) -> Ranks {
    let n = r.len();
    let order = TotalPreorder::from_ranks(r.clone()).unwrap();
    op.apply(&order, &WorldSet::from_mask(n, a))
        .ranks()
        .to_vec()
}

fn layers(r: &Ranks) -> usize {
    *r.iter().max().unwrap() as usize + 1
}

/// `Mod(Ψ • α)`.
pub fn achieve(op: &dyn BeliefChange, r: &Ranks, a: u64) -> Option<u64> {
    let n = r.len();
    if a == full(n) {
        return Some(bottom(r));
    }
    let mut cur = r.clone();
    for _ in 0..=layers(r) {
        if !subset(bottom(&cur), a) {
            return Some(bottom(&cur));
        }
        cur = apply(op, &cur, a);
    }
    None
}

fn gleq(op: &dyn BeliefChange, r: &Ranks, a: u64, b: u64) -> Option<bool> {
    Some(subset(achieve(op, r, a)?, achieve(op, r, a & b)?))
}

fn glt(op: &dyn BeliefChange, r: &Ranks, a: u64, b: u64) -> Option<bool> {
    Some(gleq(op, r, a, b)? && !gleq(op, r, b, a)?)
}

fn gll(op: &dyn BeliefChange, r: &Ranks, a: u64, b: u64) -> Option<bool> {
    if !glt(op, r, a, b)? {
        return Some(false);
    }
    for g in 0..=full(r.len()) {
        if glt(op, r, a, g)? && glt(op, r, g, b)? {
            return Some(false);
        }
    }
    Some(true)
}

fn frontal(r: &Ranks, w: usize, a: u64) -> bool {
    !has(a, w)
        && !(0..r.len())
            .any(|o| (has(a, o) && r[w] == r[o] + 1) || (!has(a, o) && r[o] == r[w] + 1))
}

/// Whether `p` holds on one case. Supports every postulate except the
/// syntax-independence ones.
pub fn holds(op: &dyn BeliefChange, p: PostulateId, r: &Ranks, f: &[u64], w: &[usize]) -> bool {
    let n = r.len();
    let all = full(n);
    let m = bottom(r);
    let step = |x: &Ranks, a: u64| apply(op, x, a);
    let bel_step = |x: &Ranks, a: u64| bottom(&apply(op, x, a));
    match p {
        C1 | D13 => subset(m, bel_step(r, f[0])),
        C2 => subset(m, f[0]) || subset(bel_step(r, f[0]), m),
        C3 => f[0] == all || !subset(bel_step(r, f[0]), f[0]),
        C4 => subset(bel_step(r, f[0]) & f[0], m),
        C6 => subset(
            bel_step(r, f[0] & f[1]),
            bel_step(r, f[0]) | bel_step(r, f[1]),
        ),
        C7 => {
            let both = bel_step(r, f[0] & f[1]);
            subset(both, f[1]) || subset(bel_step(r, f[1]), both)
        }
        D1 => achieve(op, r, f[0]).is_some_and(|x| subset(m, x)),
        D2 => achieve(op, r, f[0]).is_some_and(|x| subset(m, f[0]) || subset(x, m)),
        D3 | Hesitance => {
            f[0] == all || {
                let mut cur = r.clone();
                let mut found = false;
                for _ in 0..=layers(r) {
                    if !subset(bottom(&cur), f[0]) {
                        found = true;
                        break;
                    }
                    cur = step(&cur, f[0]);
                }
                found
            }
        }
        D4 => achieve(op, r, f[0]).is_some_and(|x| subset(x & f[0], m)),
        D6 => match (
            achieve(op, r, f[0]),
            achieve(op, r, f[1]),
            achieve(op, r, f[0] & f[1]),
        ) {
            (Some(x), Some(y), Some(z)) => subset(z, x | y),
            _ => false,
        },
        D7 => match (achieve(op, r, f[1]), achieve(op, r, f[0] & f[1])) {
            (Some(y), Some(z)) => subset(z, f[1]) || subset(y, z),
            _ => false,
        },
        D8 | D9 | D10 | D11 => {
            let (a, b) = (f[0], f[1]);
            let (Some(later), Some(now)) = (achieve(op, &step(r, a), b), achieve(op, r, b)) else {
                return false;
            };
            match p {
                D8 => !subset(all & !a, b) || (later & a) == (now & a),
                D9 => !subset(a, b) || (later & !b & all) == (now & !b & all),
                D10 => !subset(a, f[2]) || !subset(later, f[2]) || subset(now, f[2]),
                _ => !subset(all & !a, f[2]) || !subset(now, f[2]) || subset(later, f[2]),
            }
        }
        D12 => {
            let (a, b, g) = (f[0], f[1], f[2]);
            if !subset(a, b) || !subset(all & !a, g) {
                return true;
            }
            match gll(op, r, g, b) {
                None => false,
                Some(false) => true,
                Some(true) => gleq(op, &step(r, a), b, g) == Some(true),
            }
        }
        DecrementSuccess => {
            let a = f[0];
            if a == all {
                return achieve(op, r, a) == Some(m);
            }
            let target = m | min_of(r, all & !a);
            let mut cur = r.clone();
            for _ in 0..=layers(r) {
                if !subset(bottom(&cur), a) {
                    return bottom(&cur) == target;
                }
                cur = step(&cur, a);
            }
            false
        }
        PartialSuccess => {
            let after = bel_step(r, f[0]);
            subset(m, after) && subset(after, m | min_of(r, all & !f[0]))
        }
        Lemma1 => achieve(op, r, all & !(1 << w[0])) == Some(m | 1 << w[0]),
        Lemma3 => {
            let (g, b) = (f[0], f[1]);
            match glt(op, r, g, b) {
                None => false,
                Some(false) => true,
                Some(true) => {
                    let Some(direct) = gll(op, r, g, b) else {
                        return false;
                    };
                    let mb = min_of(r, all & !b);
                    let mg = min_of(r, all & !g);
                    let adjacent = (0..n).filter(|&w1| has(mb, w1)).all(|w1| {
                        (0..n)
                            .filter(|&w2| has(mg, w2))
                            .all(|w2| immediate(r, w2, w1) || r[w2] == r[w1])
                    });
                    direct == adjacent
                }
            }
        }
        SFA1 | SFA2 => {
            let after = step(r, f[0]);
            [r, &after].iter().all(|x| {
                let b = bottom(x);
                let (in1, in2) = (has(b, w[0]), has(b, w[1]));
                match p {
                    SFA1 => !(in1 && in2) || x[w[0]] == x[w[1]],
                    _ => !(in1 && !in2) || x[w[0]] < x[w[1]],
                }
            })
        }
        _ => {
            let after = step(r, f[0]);
            transition(p, r, &after, f[0], w[0], w[1])
        }
    }
}

/// World-pair condition on `before ↦ after`.
pub fn transition(
    p: PostulateId,
    before: &Ranks,
    after: &Ranks,
    a: u64,
    w1: usize,
    w2: usize,
) -> bool {
    let (x, y) = (before, after);
    let both_a = has(a, w1) && has(a, w2);
    let both_na = !has(a, w1) && !has(a, w2);
    let mixed = !has(a, w1) && has(a, w2);
    match p {
        DR8 | IC1 => !both_a || (x[w1] <= x[w2]) == (y[w1] <= y[w2]),
        DR9 | IC2 => !both_na || (x[w1] <= x[w2]) == (y[w1] <= y[w2]),
        DR10 | IC4 => !mixed || x[w1] > x[w2] || y[w1] <= y[w2],
        DR11 | IC3 => !mixed || x[w1] >= x[w2] || y[w1] < y[w2],
        DR12 => !mixed || !immediate(x, w2, w1) || y[w1] <= y[w2],
        DR13 => !mixed || x.iter().any(|&k| x[w2] > k) || y[w2] <= y[w1],
        DR14 => !mixed || x[w1] != x[w2] || immediate(y, w1, w2),
        DR15 => !mixed || !frontal(x, w1, a) || x[w1] != x[w2] || y[w1] == y[w2],
        _ => unreachable!(),
    }
}

/// Violating cases of `p`, counted the way the checker counts them.
pub fn count_violations(
    op: &OperatorKind,
    p: PostulateId,
    n: usize,
    believed_only: bool,
) -> (u64, u64) {
    let arity = p.arity();
    let mut cases = 0;
    let mut bad = 0;
    let classes = 1u64 << n;
    for r in all_states(n) {
        let tuples = (classes).pow(arity.formulas);
        for code in 0..tuples {
            let mut c = code;
            let f: Vec<u64> = (0..arity.formulas)
                .map(|_| {
                    let v = c % classes;
                    c /= classes;
                    v
                })
                .collect();
            if believed_only && p.changes_by_first_formula() && !subset(bottom(&r), f[0]) {
                continue;
            }
            let worlds = (n as u64).pow(arity.worlds);
            for wcode in 0..worlds {
                let mut c = wcode;
                let w: Vec<usize> = (0..arity.worlds)
                    .map(|_| {
                        let v = (c % n as u64) as usize;
                        c /= n as u64;
                        v
                    })
                    .collect();
                cases += 1;
                if !holds(op, p, &r, &f, &w) {
                    bad += 1;
                }
            }
        }
    }
    (cases, bad)
}

/// Independent count of weak orders: `a(n) = Σ_{k=1..n} C(n,k)·a(n−k)`.
pub fn ordered_partitions(n: usize) -> u64 {
    let mut a = vec![1u64; n + 1];
    for m in 1..=n {
        let mut binom = 1u64;
        let mut total = 0;
        for k in 1..=m {
            binom = binom * (m - k + 1) as u64 / k as u64;
            total += binom * a[m - k];
        }
        a[m] = total;
    }
    a[n]
}
