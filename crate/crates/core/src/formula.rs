//! Formula AST for LTL extended with the compensation operator `⊗`.

use std::collections::BTreeSet;
use std::fmt;

/// Words that the concrete syntax claims for operators and constants.
pub const RESERVED_WORDS: [&str; 6] = ["G", "F", "X", "U", "true", "false"];

/// Returns true when `name` matches `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn is_reserved(name: &str) -> bool {
    RESERVED_WORDS.contains(&name)
}

/// A legal atom name: an identifier that is not a reserved word.
pub fn is_atom_name(name: &str) -> bool {
    is_identifier(name) && !is_reserved(name)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Finally(Box<Formula>),
    Globally(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    /// `φ ⊗ ψ`: φ holds forever, or some position falsifies φ and ψ holds
    /// at that position or later.
    OTimes(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Builds an atom. Panics if `name` is not a legal atom name; use the
    /// parser for untrusted input.
    pub fn atom(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(is_atom_name(&name), "illegal atom name {name:?}");
        Formula::Atom(name)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn next(f: Formula) -> Self {
        Formula::Next(Box::new(f))
    }

    pub fn finally(f: Formula) -> Self {
        Formula::Finally(Box::new(f))
    }

    pub fn globally(f: Formula) -> Self {
        Formula::Globally(Box::new(f))
    }

    pub fn until(l: Formula, r: Formula) -> Self {
        Formula::Until(Box::new(l), Box::new(r))
    }

    pub fn otimes(l: Formula, r: Formula) -> Self {
        Formula::OTimes(Box::new(l), Box::new(r))
    }

    /// Left-nested conjunction; the empty conjunction is `true`.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; the empty disjunction is `false`.
    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | False | Atom(_) => vec![],
            Not(f) | Next(f) | Finally(f) | Globally(f) => vec![f],
            And(l, r) | Or(l, r) | Implies(l, r) | Until(l, r) | OTimes(l, r) => vec![l, r],
        }
    }

    /// Height of the tree; constants and atoms have depth 0.
    pub fn depth(&self) -> usize {
        self.children()
            .into_iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::size)
            .sum::<usize>()
    }

    pub fn count_otimes(&self) -> usize {
        let own = usize::from(matches!(self, Formula::OTimes(..)));
        own + self
            .children()
            .into_iter()
            .map(Formula::count_otimes)
            .sum::<usize>()
    }

    /// True when the formula has no temporal operator and no `⊗`.
    pub fn is_propositional(&self) -> bool {
        use Formula::*;
        match self {
            Next(_) | Finally(_) | Globally(_) | Until(..) | OTimes(..) => false,
            _ => self.children().into_iter().all(Formula::is_propositional),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        if let Formula::Atom(a) = self {
            out.insert(a.clone());
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    /// Replaces every `φ ⊗ ψ` (bottom-up) by `G φ ∨ F(¬φ ∧ F ψ)`.
    ///
    /// No simplification is done, so `¬A ⊗ B` becomes `G ¬A ∨ F(¬¬A ∧ F B)`.
    pub fn expand_otimes(&self) -> Formula {
        use Formula::*;
        match self {
            True | False | Atom(_) => self.clone(),
            Not(f) => Formula::not(f.expand_otimes()),
            Next(f) => Formula::next(f.expand_otimes()),
            Finally(f) => Formula::finally(f.expand_otimes()),
            Globally(f) => Formula::globally(f.expand_otimes()),
            And(l, r) => Formula::and(l.expand_otimes(), r.expand_otimes()),
            Or(l, r) => Formula::or(l.expand_otimes(), r.expand_otimes()),
            Implies(l, r) => Formula::implies(l.expand_otimes(), r.expand_otimes()),
            Until(l, r) => Formula::until(l.expand_otimes(), r.expand_otimes()),
            OTimes(l, r) => {
                let phi = l.expand_otimes();
                let psi = r.expand_otimes();
                Formula::or(
                    Formula::globally(phi.clone()),
                    Formula::finally(Formula::and(Formula::not(phi), Formula::finally(psi))),
                )
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_formula(self))
    }
}
