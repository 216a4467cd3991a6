//! Propositional signatures, formulas and their model sets.
//!
//! Everything downstream works on model sets: two formulas with the same
//! [`WorldSet`] are interchangeable, which is what makes "for all formulas"
//! a finite quantifier over the `2^(2^n)` semantic classes.

mod formula;
mod parser;
mod worlds;

use thiserror::Error;

pub use formula::Formula;
pub use worlds::{World, WorldSet};

/// Largest signature accepted for evaluation.
pub const MAX_ATOMS: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("signature has no atoms")]
    Empty,
    #[error("signature has {0} atoms, at most {MAX_ATOMS} are supported")]
    TooLarge(usize),
    #[error("invalid atom name `{0}` (expected [a-z][a-z0-9_]*, not `true`/`false`)")]
    InvalidName(String),
    #[error("duplicate atom `{0}`")]
    Duplicate(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {}: {message}", match position { Some(p) => format!("position {p}"), None => "end of input".to_string() })]
    Syntax {
        /// Byte offset of the offending token; `None` at end of input.
        position: Option<usize>,
        message: String,
    },
    #[error("unknown atom `{name}` at position {position}")]
    UnknownAtom { name: String, position: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("atom `{0}` is not part of the signature")]
pub struct UnknownAtom(pub String);

/// An ordered list of distinct atom names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    atoms: Vec<String>,
}

fn valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
        && name != "true"
        && name != "false"
}

impl Signature {
    pub fn new<I, S>(atoms: I) -> Result<Self, SignatureError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(SignatureError::Empty);
        }
        if atoms.len() > MAX_ATOMS {
            return Err(SignatureError::TooLarge(atoms.len()));
        }
        for (i, name) in atoms.iter().enumerate() {
            if !valid_atom_name(name) {
                return Err(SignatureError::InvalidName(name.clone()));
            }
            if atoms[..i].contains(name) {
                return Err(SignatureError::Duplicate(name.clone()));
            }
        }
        Ok(Signature { atoms })
    }

    /// `a, b, c, …` with `n` atoms.
    pub fn alphabetic(n: usize) -> Result<Self, SignatureError> {
        if n > MAX_ATOMS {
            return Err(SignatureError::TooLarge(n));
        }
        Signature::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    pub fn world_count(&self) -> usize {
        1 << self.atoms.len()
    }

    pub fn worlds(&self) -> impl Iterator<Item = World> {
        (0..self.world_count() as u32).map(World)
    }

    pub fn universe(&self) -> WorldSet {
        WorldSet::full(self.world_count())
    }

    pub fn world_string(&self, world: World) -> String {
        world.bitstring(self.len())
    }

    pub fn parse_world(&self, text: &str) -> Option<World> {
        World::parse_bitstring(text, self.len())
    }

    pub fn parse(&self, text: &str) -> Result<Formula, ParseError> {
        parser::parse(text, self)
    }

    /// Worlds in which atom `index` is true.
    fn atom_models(&self, index: usize) -> WorldSet {
        let n = self.len();
        WorldSet::from_worlds(
            self.world_count(),
            self.worlds().filter(|w| w.truth(index, n)),
        )
    }

    /// `Mod(f)`, computed by set algebra over the atom model sets.
    pub fn models(&self, f: &Formula) -> Result<WorldSet, UnknownAtom> {
        Ok(match f {
            Formula::Top => self.universe(),
            Formula::Bottom => WorldSet::empty(self.world_count()),
            Formula::Atom(name) => {
                let i = self
                    .index_of(name)
                    .ok_or_else(|| UnknownAtom(name.clone()))?;
                self.atom_models(i)
            }
            Formula::Not(g) => self.models(g)?.complement(),
            Formula::And(l, r) => self.models(l)?.intersection(&self.models(r)?),
            Formula::Or(l, r) => self.models(l)?.union(&self.models(r)?),
            Formula::Implies(l, r) => self.models(l)?.complement().union(&self.models(r)?),
            Formula::Iff(l, r) => {
                let (l, r) = (self.models(l)?, self.models(r)?);
                l.intersection(&r).union(&l.union(&r).complement())
            }
        })
    }

    /// Truth value of `f` in one world, by direct recursion.
    pub fn eval(&self, f: &Formula, world: World) -> Result<bool, UnknownAtom> {
        Ok(match f {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(name) => {
                let i = self
                    .index_of(name)
                    .ok_or_else(|| UnknownAtom(name.clone()))?;
                world.truth(i, self.len())
            }
            Formula::Not(g) => !self.eval(g, world)?,
            Formula::And(l, r) => self.eval(l, world)? && self.eval(r, world)?,
            Formula::Or(l, r) => self.eval(l, world)? || self.eval(r, world)?,
            Formula::Implies(l, r) => !self.eval(l, world)? || self.eval(r, world)?,
            Formula::Iff(l, r) => self.eval(l, world)? == self.eval(r, world)?,
        })
    }

    pub fn entails(&self, f: &Formula, g: &Formula) -> Result<bool, UnknownAtom> {
        Ok(self.models(f)?.is_subset(&self.models(g)?))
    }

    pub fn equivalent(&self, f: &Formula, g: &Formula) -> Result<bool, UnknownAtom> {
        Ok(self.models(f)? == self.models(g)?)
    }

    /// `Ω1 =_α Ω2`.
    pub fn equiv_wrt(
        &self,
        first: &WorldSet,
        second: &WorldSet,
        alpha: &Formula,
    ) -> Result<bool, UnknownAtom> {
        Ok(first.equal_within(second, &self.models(alpha)?))
    }

    /// Complete conjunction of literals describing `world`.
    pub fn world_formula(&self, world: World) -> Formula {
        let n = self.len();
        Formula::conjunction(self.atoms.iter().enumerate().map(|(i, name)| {
            let lit = Formula::atom(name.clone());
            if world.truth(i, n) {
                lit
            } else {
                lit.not()
            }
        }))
    }

    /// `¬ω`: true in every world except `world`.
    pub fn negated_world(&self, world: World) -> Formula {
        self.world_formula(world).not()
    }

    /// Disjunction of complete conjunctions with exactly the given models.
    pub fn dnf_for(&self, set: &WorldSet) -> Formula {
        let mut worlds: Vec<World> = set.iter().collect();
        worlds.reverse();
        Formula::disjunction(worlds.into_iter().map(|w| self.world_formula(w)))
    }

    /// Conjunction of negated worlds with exactly the given models.
    pub fn cnf_for(&self, set: &WorldSet) -> Formula {
        Formula::conjunction(set.complement().iter().map(|w| self.negated_world(w)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Signature {
        Signature::new(["a", "b"]).unwrap()
    }

    fn set(sig: &Signature, worlds: &[&str]) -> WorldSet {
        WorldSet::from_worlds(
            sig.world_count(),
            worlds.iter().map(|w| sig.parse_world(w).unwrap()),
        )
    }

    #[test]
    fn signature_validation() {
        assert_eq!(
            Signature::new(Vec::<String>::new()),
            Err(SignatureError::Empty)
        );
        assert_eq!(
            Signature::new(["a", "a"]),
            Err(SignatureError::Duplicate("a".into()))
        );
        assert_eq!(
            Signature::new(["A"]),
            Err(SignatureError::InvalidName("A".into()))
        );
        assert_eq!(
            Signature::new(["true"]),
            Err(SignatureError::InvalidName("true".into()))
        );
        assert_eq!(
            Signature::new(["1a"]),
            Err(SignatureError::InvalidName("1a".into()))
        );
        assert!(Signature::new(["rain", "wet_2"]).is_ok());
        assert_eq!(Signature::alphabetic(27), Err(SignatureError::TooLarge(27)));
        assert_eq!(Signature::alphabetic(26).unwrap().world_count(), 1 << 26);
    }

    #[test]
    fn model_examples() {
        let sig = ab();
        let m = sig.models(&sig.parse("a | b").unwrap()).unwrap();
        assert_eq!(m, set(&sig, &["11", "10", "01"]));
        assert_eq!(sig.models(&Formula::Top).unwrap().len(), 4);
        let contradiction = sig.parse("a & !a").unwrap();
        assert!(sig.models(&contradiction).unwrap().is_empty());
    }

    #[test]
    fn entailment_examples() {
        let sig = ab();
        let p = |t: &str| sig.parse(t).unwrap();
        assert!(sig.entails(&p("a & b"), &p("a")).unwrap());
        assert!(sig.equivalent(&p("a -> b"), &p("!a | b")).unwrap());
        assert!(!sig.entails(&p("a"), &p("a & b")).unwrap());
    }

    #[test]
    fn negated_world_examples() {
        let sig = ab();
        let w11 = sig.parse_world("11").unwrap();
        let w00 = sig.parse_world("00").unwrap();
        assert_eq!(sig.negated_world(w11).to_string(), "!(a & b)");
        assert_eq!(sig.negated_world(w00).to_string(), "!(!a & !b)");
        for w in sig.worlds() {
            let m = sig.models(&sig.negated_world(w)).unwrap();
            assert_eq!(m.len(), 3);
            assert!(!m.contains(w));
        }
    }

    #[test]
    fn equiv_wrt_examples() {
        let sig = ab();
        let a = Formula::atom("a");
        assert!(sig
            .equiv_wrt(&set(&sig, &["11", "01"]), &set(&sig, &["11", "00"]), &a)
            .unwrap());
        assert!(!sig
            .equiv_wrt(&set(&sig, &["11"]), &set(&sig, &["01"]), &a)
            .unwrap());
        assert!(sig
            .equiv_wrt(&set(&sig, &["11"]), &set(&sig, &["01"]), &Formula::Bottom)
            .unwrap());
    }

    #[test]
    fn unknown_atom_in_models() {
        let sig = ab();
        assert_eq!(
            sig.models(&Formula::atom("z")),
            Err(UnknownAtom("z".into()))
        );
    }

    #[test]
    fn normal_forms_have_requested_models() {
        let sig = ab();
        for mask in 0..16u64 {
            let s = WorldSet::from_mask(4, mask);
            assert_eq!(sig.models(&sig.dnf_for(&s)).unwrap(), s);
            assert_eq!(sig.models(&sig.cnf_for(&s)).unwrap(), s);
        }
    }
}
