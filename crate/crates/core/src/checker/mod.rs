//! Brute-force verification of postulates against belief change operators.
//!
//! States range over every total preorder of the world universe, formulas
//! over semantic classes (model sets) and worlds over the universe. Work is
//! split by state index across rayon workers and merged in index order, so
//! the worker count never changes a report.

mod eval;
mod postulate;
mod representation;
mod satisfiability;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::io::{encode_layers, LayersDocument};
use crate::logic::{Signature, World, WorldSet};
use crate::operators::{BeliefChange, OperatorKind};
use crate::preorder::{enumerate_preorders, PreorderError, TotalPreorder};
use crate::state::believes_models;

use eval::Evaluator;
pub use postulate::{Arity, PostulateId};
pub use representation::{verify_representation, ConditionReport, RepresentationReport};
pub use satisfiability::{successor_satisfiability, SatReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("{postulate} in {mode} mode supports at most {limit} atoms, got {atoms}")]
    DomainTooLarge {
        postulate: String,
        mode: &'static str,
        atoms: usize,
        limit: usize,
    },
    #[error("unknown postulate `{0}`")]
    UnknownPostulate(String),
    #[error("{0} is not a successor constraint (expected DR8..DR15)")]
    NotAConstraint(PostulateId),
    #[error(transparent)]
    Preorder(#[from] PreorderError),
    #[error("counterexample does not decode: {0}")]
    Decode(String),
    #[error("cannot start worker pool: {0}")]
    Workers(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sample { seed: u64, count: usize },
}

/// Which inputs a check ranges over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Scope {
    /// Every case, as the postulate is written.
    #[default]
    Literal,
    /// Only cases whose changing formula is believed in the state.
    BelievedInput,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub mode: Mode,
    pub scope: Scope,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    pub max_counterexamples: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            mode: Mode::Exhaustive,
            scope: Scope::Literal,
            workers: None,
            max_counterexamples: 5,
        }
    }
}

impl CheckConfig {
    pub fn exhaustive() -> Self {
        Self::default()
    }

    pub fn sample(seed: u64, count: usize) -> Self {
        CheckConfig {
            mode: Mode::Sample { seed, count },
            ..Self::default()
        }
    }

    pub fn believed_only(mut self) -> Self {
        self.scope = Scope::BelievedInput;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    fn domain(&self, p: PostulateId, atoms: usize) -> String {
        let mut text = match self.mode {
            Mode::Exhaustive => format!("exhaustive |Σ|={atoms}"),
            Mode::Sample { seed, count } => {
                format!("sample |Σ|={atoms} seed={seed} count={count}")
            }
        };
        if self.restricts(p) {
            text.push_str(" believed-input");
        }
        text
    }

    fn restricts(&self, p: PostulateId) -> bool {
        self.scope == Scope::BelievedInput && p.changes_by_first_formula()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
        })
    }
}

/// One violating case: the state as layers (layer 0 first), the formulas as
/// model lists, and the world witnesses, all as bitstrings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub state: Vec<Vec<String>>,
    pub formulas: Vec<Vec<String>>,
    pub worlds: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub postulate: PostulateId,
    pub operator: String,
    pub domain: String,
    pub outcome: Outcome,
    pub cases: u64,
    pub violations: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

/// Reports for every requested operator × postulate pair, operator-major in
/// request order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformanceMatrix {
    pub atoms: Vec<String>,
    pub reports: Vec<CheckReport>,
}

impl ConformanceMatrix {
    pub fn get(&self, operator: &str, postulate: PostulateId) -> Option<&CheckReport> {
        self.reports
            .iter()
            .find(|r| r.operator == operator && r.postulate == postulate)
    }

    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrices always serialize")
    }
}

/// Internal counterexample with its presentation order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Witness {
    key: (usize, Vec<Vec<u32>>),
    formulas: Vec<u64>,
    worlds: Vec<u32>,
    order: TotalPreorder,
}

impl Witness {
    fn new(order: &TotalPreorder, formulas: &[WorldSet], worlds: &[World]) -> Self {
        Witness {
            key: order.presentation_key(),
            formulas: formulas
                .iter()
                .map(|f| f.as_mask().expect("checker universes fit one word"))
                .collect(),
            worlds: worlds.iter().map(|w| w.0).collect(),
            order: order.clone(),
        }
    }

    fn encode(&self, signature: &Signature) -> Counterexample {
        let u = signature.world_count();
        let width = signature.len();
        Counterexample {
            state: encode_layers(signature, &self.order),
            formulas: self
                .formulas
                .iter()
                .map(|&m| WorldSet::from_mask(u, m).bitstrings(width))
                .collect(),
            worlds: self
                .worlds
                .iter()
                .map(|&w| World(w).bitstring(width))
                .collect(),
        }
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    violations: u64,
    witnesses: Vec<Witness>,
}

impl Tally {
    fn keep(&mut self, w: Witness, cap: usize) {
        self.witnesses.push(w);
        if self.witnesses.len() > cap.max(1) * 4 {
            self.trim(cap);
        }
    }

    fn trim(&mut self, cap: usize) {
        self.witnesses.sort();
        self.witnesses.truncate(cap);
    }

    fn merge(&mut self, other: Tally, cap: usize) {
        self.cases += other.cases;
        self.violations += other.violations;
        for w in other.witnesses {
            self.keep(w, cap);
        }
    }
}

fn check_domain(p: PostulateId, signature: &Signature, mode: Mode) -> Result<(), CheckError> {
    let (name, limit) = match mode {
        Mode::Exhaustive => ("exhaustive", p.exhaustive_atom_limit()),
        Mode::Sample { .. } => ("sample", p.sample_atom_limit()),
    };
    if signature.len() > limit {
        return Err(CheckError::DomainTooLarge {
            postulate: p.name().to_string(),
            mode: name,
            atoms: signature.len(),
            limit,
        });
    }
    Ok(())
}

/// Every formula tuple of the given length, as masks in lexicographic order.
fn formula_tuples(universe: usize, len: u32) -> Vec<Vec<WorldSet>> {
    let classes = 1u64 << universe;
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..classes).map(move |m| {
                    let mut next = prefix.clone();
                    next.push(WorldSet::from_mask(universe, m));
                    next
                })
            })
            .collect();
    }
    out
}

fn evaluate_case(
    ev: &mut Evaluator<'_>,
    p: PostulateId,
    config: &CheckConfig,
    order: &TotalPreorder,
    formulas: &[WorldSet],
    tally: &mut Tally,
) {
    if config.restricts(p) && !believes_models(order, &formulas[0]) {
        return;
    }
    let u = order.universe_size() as u64;
    tally.cases += u.pow(p.arity().worlds);
    for worlds in ev.violations(p, order, formulas) {
        tally.violations += 1;
        tally.keep(
            Witness::new(order, formulas, &worlds),
            config.max_counterexamples,
        );
    }
}

fn in_pool<T: Send>(
    workers: Option<usize>,
    job: impl FnOnce() -> T + Send,
) -> Result<T, CheckError> {
    match workers {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CheckError::Workers(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

fn random_case(
    rng: &mut ChaCha8Rng,
    universe: usize,
    formulas: u32,
) -> (TotalPreorder, Vec<WorldSet>) {
    let keys: Vec<u32> = (0..universe)
        .map(|_| rng.gen_range(0..universe as u32))
        .collect();
    let order = TotalPreorder::compress(&keys);
    let all = if universe == 64 {
        u64::MAX
    } else {
        (1u64 << universe) - 1
    };
    let f = (0..formulas)
        .map(|_| WorldSet::from_mask(universe, rng.gen::<u64>() & all))
        .collect();
    (order, f)
}

/// Check one postulate for one operator over the domain `signature`.
pub fn check_postulate(
    op: &dyn BeliefChange,
    p: PostulateId,
    signature: &Signature,
    config: &CheckConfig,
) -> Result<CheckReport, CheckError> {
    check_domain(p, signature, config.mode)?;
    let u = signature.world_count();
    let arity = p.arity();
    let cap = config.max_counterexamples;

    let tally = in_pool(config.workers, || -> Result<Tally, CheckError> {
        let partials: Vec<Tally> = match config.mode {
            Mode::Exhaustive => {
                let states: Vec<TotalPreorder> = enumerate_preorders(u)?.collect();
                let tuples = formula_tuples(u, arity.formulas);
                states
                    .par_iter()
                    .map_init(
                        || Evaluator::new(op, signature),
                        |ev, order| {
                            ev.clear();
                            let mut t = Tally::default();
                            for f in &tuples {
                                evaluate_case(ev, p, config, order, f, &mut t);
                            }
                            t
                        },
                    )
                    .collect()
            }
            Mode::Sample { seed, count } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let cases: Vec<_> = (0..count)
                    .map(|_| random_case(&mut rng, u, arity.formulas))
                    .collect();
                cases
                    .par_iter()
                    .map_init(
                        || Evaluator::new(op, signature),
                        |ev, (order, f)| {
                            ev.clear();
                            let mut t = Tally::default();
                            evaluate_case(ev, p, config, order, f, &mut t);
                            t
                        },
                    )
                    .collect()
            }
        };
        let mut total = Tally::default();
        for part in partials {
            total.merge(part, cap);
        }
        total.trim(cap);
        Ok(total)
    })??;

    Ok(CheckReport {
        postulate: p,
        operator: op.name().to_string(),
        domain: config.domain(p, signature.len()),
        outcome: if tally.violations == 0 {
            Outcome::Pass
        } else {
            Outcome::Fail
        },
        cases: tally.cases,
        violations: tally.violations,
        counterexamples: tally
            .witnesses
            .iter()
            .map(|w| w.encode(signature))
            .collect(),
    })
}

/// Reports for every `operator × postulate` pair.
pub fn conformance_matrix(
    kinds: &[OperatorKind],
    postulates: &[PostulateId],
    signature: &Signature,
    config: &CheckConfig,
) -> Result<ConformanceMatrix, CheckError> {
    for &p in postulates {
        check_domain(p, signature, config.mode)?;
    }
    let mut reports = Vec::with_capacity(kinds.len() * postulates.len());
    for kind in kinds {
        for &p in postulates {
            reports.push(check_postulate(kind, p, signature, config)?);
        }
    }
    Ok(ConformanceMatrix {
        atoms: signature.atoms().to_vec(),
        reports,
    })
}

/// Re-evaluate a reported case. `Ok(true)` means the case still violates
/// `p`.
pub fn replay(
    op: &dyn BeliefChange,
    p: PostulateId,
    signature: &Signature,
    case: &Counterexample,
) -> Result<bool, CheckError> {
    let doc = LayersDocument {
        atoms: signature.atoms().to_vec(),
        layers: case.state.clone(),
    };
    let order = doc
        .to_state()
        .map_err(|e| CheckError::Decode(e.to_string()))?
        .into_order();
    let world = |text: &String| {
        signature
            .parse_world(text)
            .ok_or_else(|| CheckError::Decode(format!("bad world `{text}`")))
    };
    let u = signature.world_count();
    let formulas = case
        .formulas
        .iter()
        .map(|f| {
            f.iter()
                .map(world)
                .collect::<Result<Vec<_>, _>>()
                .map(|ws| WorldSet::from_worlds(u, ws))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let worlds = case
        .worlds
        .iter()
        .map(world)
        .collect::<Result<Vec<_>, _>>()?;
    let arity = p.arity();
    if formulas.len() != arity.formulas as usize || worlds.len() != arity.worlds as usize {
        return Err(CheckError::Decode(format!(
            "{p} takes {} formulas and {} worlds",
            arity.formulas, arity.worlds
        )));
    }
    let mut ev = Evaluator::new(op, signature);
    Ok(ev.violations(p, &order, &formulas).contains(&worlds))
}
