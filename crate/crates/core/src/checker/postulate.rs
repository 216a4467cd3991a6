use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CheckError;

/// Every named condition the checker can evaluate.
///
/// `IC1`–`IC4` are the four iterated-contraction conditions in listing order:
/// `α`-internal order kept, `¬α`-internal order kept, strict `¬α < α`
/// kept, weak `¬α ≤ α` kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PostulateId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
    D8,
    D9,
    D10,
    D11,
    D12,
    D13,
    DR8,
    DR9,
    DR10,
    DR11,
    DR12,
    DR13,
    DR14,
    DR15,
    SFA1,
    SFA2,
    SFA3,
    Hesitance,
    DecrementSuccess,
    PartialSuccess,
    Lemma1,
    Lemma3,
    IC1,
    IC2,
    IC3,
    IC4,
}

use PostulateId::*;

/// Quantifier shape of a postulate: how many formulas (semantic classes) and
/// how many worlds it ranges over, besides the state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arity {
    pub formulas: u32,
    pub worlds: u32,
}

impl PostulateId {
    pub const ALL: [PostulateId; 40] = [
        C1,
        C2,
        C3,
        C4,
        C5,
        C6,
        C7,
        D1,
        D2,
        D3,
        D4,
        D5,
        D6,
        D7,
        D8,
        D9,
        D10,
        D11,
        D12,
        D13,
        DR8,
        DR9,
        DR10,
        DR11,
        DR12,
        DR13,
        DR14,
        DR15,
        SFA1,
        SFA2,
        SFA3,
        Hesitance,
        DecrementSuccess,
        PartialSuccess,
        Lemma1,
        Lemma3,
        IC1,
        IC2,
        IC3,
        IC4,
    ];

    /// Conditions on a single transition `≤Ψ ↦ ≤Ψ∘α`.
    pub const TRANSITION: [PostulateId; 12] = [
        DR8, DR9, DR10, DR11, DR12, DR13, DR14, DR15, IC1, IC2, IC3, IC4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            C1 => "C1",
            C2 => "C2",
            C3 => "C3",
            C4 => "C4",
            C5 => "C5",
            C6 => "C6",
            C7 => "C7",
            D1 => "D1",
            D2 => "D2",
            D3 => "D3",
            D4 => "D4",
            D5 => "D5",
            D6 => "D6",
            D7 => "D7",
            D8 => "D8",
            D9 => "D9",
            D10 => "D10",
            D11 => "D11",
            D12 => "D12",
            D13 => "D13",
            DR8 => "DR8",
            DR9 => "DR9",
            DR10 => "DR10",
            DR11 => "DR11",
            DR12 => "DR12",
            DR13 => "DR13",
            DR14 => "DR14",
            DR15 => "DR15",
            SFA1 => "SFA1",
            SFA2 => "SFA2",
            SFA3 => "SFA3",
            Hesitance => "Hesitance",
            DecrementSuccess => "DecrementSuccess",
            PartialSuccess => "PartialSuccess",
            Lemma1 => "Lemma1",
            Lemma3 => "Lemma3",
            IC1 => "IC1",
            IC2 => "IC2",
            IC3 => "IC3",
            IC4 => "IC4",
        }
    }

    pub fn arity(self) -> Arity {
        let (formulas, worlds) = match self {
            C1 | C2 | C3 | C4 | C5 | D1 | D2 | D3 | D4 | D13 => (1, 0),
            Hesitance | DecrementSuccess | PartialSuccess => (1, 0),
            C6 | C7 | D5 | D6 | D7 | D8 | D9 | SFA3 | Lemma3 => (2, 0),
            D10 | D11 | D12 => (3, 0),
            DR8 | DR9 | DR10 | DR11 | DR12 | DR13 | DR14 | DR15 => (1, 2),
            IC1 | IC2 | IC3 | IC4 | SFA1 | SFA2 => (1, 2),
            Lemma1 => (0, 1),
        };
        Arity { formulas, worlds }
    }

    /// Whether evaluation quantifies a formula over all semantic classes
    /// internally (the `⋘` relation).
    pub fn uses_direct_giveup(self) -> bool {
        matches!(self, D12 | Lemma3)
    }

    /// Whether the first formula is the input of `∘`/`•` applied to the
    /// state, so that a believed-input restriction is meaningful.
    pub fn changes_by_first_formula(self) -> bool {
        !matches!(self, Lemma1 | Lemma3)
    }

    pub fn is_transition(self) -> bool {
        Self::TRANSITION.contains(&self)
    }

    /// Largest signature size for exhaustive checking.
    pub fn exhaustive_atom_limit(self) -> usize {
        if self.arity().formulas >= 2 || self.uses_direct_giveup() {
            2
        } else {
            3
        }
    }

    /// Largest signature size for sampled checking.
    pub fn sample_atom_limit(self) -> usize {
        if self.uses_direct_giveup() {
            3
        } else {
            6
        }
    }

    /// Comma-separated names, or `all`.
    pub fn parse_list(text: &str) -> Result<Vec<PostulateId>, CheckError> {
        if text.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let p: PostulateId = part.parse()?;
            if !out.contains(&p) {
                out.push(p);
            }
        }
        if out.is_empty() {
            return Err(CheckError::UnknownPostulate(text.to_string()));
        }
        Ok(out)
    }
}

impl fmt::Display for PostulateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PostulateId {
    type Err = CheckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CheckError::UnknownPostulate(s.to_string()))
    }
}

impl Serialize for PostulateId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for PostulateId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
