//! Decrement operators for belief contraction over propositional epistemic
//! states, and a brute-force checker for their postulates.
//!
//! * [`logic`]: signatures, formulas, model sets.
//! * [`preorder`]: total preorders over worlds and their enumeration.
//! * [`state`]: epistemic states as preorders.
//! * [`operators`]: type-1/type-2 decrements, instant contraction, `•`,
//!   frontality, the give-up relation and the induced order.
//! * [`checker`]: postulate checks, conformance matrices, successor
//!   satisfiability and representation checks.
//! * [`io`]: the JSON layer format.

pub mod checker;
pub mod io;
pub mod logic;
pub mod operators;
pub mod preorder;
pub mod state;

pub use logic::{Formula, Signature, World, WorldSet};
pub use operators::{BeliefChange, OperatorKind};
pub use preorder::{Layers, TotalPreorder};
pub use state::EpistemicState;
