//! Infinite runs as lasso words `u·v^ω`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::formula::is_atom_name;

/// The atoms true at one instant. Anything not listed is false.
pub type State = BTreeSet<String>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("lasso loop must contain at least one state")]
    EmptyLoop,
    #[error("illegal atom name {0:?} in trace state")]
    BadAtom(String),
}

/// An ultimately periodic run: `prefix` once, then `lasso` forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LassoTrace {
    prefix: Vec<State>,
    lasso: Vec<State>,
}

impl LassoTrace {
    pub fn new(prefix: Vec<State>, lasso: Vec<State>) -> Result<Self, TraceError> {
        if lasso.is_empty() {
            return Err(TraceError::EmptyLoop);
        }
        if let Some(bad) = prefix
            .iter()
            .chain(lasso.iter())
            .flatten()
            .find(|a| !is_atom_name(a))
        {
            return Err(TraceError::BadAtom(bad.clone()));
        }
        Ok(LassoTrace { prefix, lasso })
    }

    /// Convenience constructor from string slices.
    pub fn from_atoms(prefix: &[&[&str]], lasso: &[&[&str]]) -> Result<Self, TraceError> {
        let conv = |states: &[&[&str]]| -> Vec<State> {
            states
                .iter()
                .map(|s| s.iter().map(|a| a.to_string()).collect())
                .collect()
        };
        LassoTrace::new(conv(prefix), conv(lasso))
    }

    pub fn prefix(&self) -> &[State] {
        &self.prefix
    }

    pub fn lasso(&self) -> &[State] {
        &self.lasso
    }

    /// Number of distinct positions, `|prefix| + |loop|`.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.lasso.len()
    }

    /// Always false; a lasso has at least one loop state.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn loop_start(&self) -> usize {
        self.prefix.len()
    }

    /// Maps any position of the infinite word to the index in `[0, len())`
    /// whose suffix is the same word.
    pub fn canonical_position(&self, p: usize) -> usize {
        let n = self.len();
        if p < n {
            p
        } else {
            let start = self.loop_start();
            start + (p - start) % self.lasso.len()
        }
    }

    /// Canonical index of the position after `i`.
    pub fn successor(&self, i: usize) -> usize {
        if i + 1 < self.len() {
            i + 1
        } else {
            self.loop_start()
        }
    }

    /// State at any position of the infinite word.
    pub fn state(&self, p: usize) -> &State {
        let i = self.canonical_position(p);
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.lasso[i - self.prefix.len()]
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        self.prefix
            .iter()
            .chain(self.lasso.iter())
            .flatten()
            .cloned()
            .collect()
    }

    /// Moves the first loop state onto the prefix and rotates the loop left.
    /// The denoted infinite word is unchanged.
    pub fn rotated(&self) -> LassoTrace {
        let mut prefix = self.prefix.clone();
        prefix.push(self.lasso[0].clone());
        let mut lasso = self.lasso.clone();
        lasso.rotate_left(1);
        LassoTrace { prefix, lasso }
    }
}

impl fmt::Display for LassoTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_trace(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paradox() -> LassoTrace {
        LassoTrace::from_atoms(&[&["A", "D"], &["B"]], &[&[]]).unwrap()
    }

    #[test]
    fn canonical_position_examples() {
        let t = paradox();
        assert_eq!(t.canonical_position(0), 0);
        assert_eq!(t.canonical_position(7), 2);
        let t = LassoTrace::from_atoms(&[], &[&["A"], &["B"]]).unwrap();
        assert_eq!(t.canonical_position(5), 1);
    }

    #[test]
    fn successor_wraps_to_loop_start() {
        let t = paradox();
        assert_eq!(t.successor(0), 1);
        assert_eq!(t.successor(1), 2);
        assert_eq!(t.successor(2), 2);
    }

    #[test]
    fn rejects_empty_loop_and_bad_atoms() {
        assert_eq!(
            LassoTrace::from_atoms(&[&["A"]], &[]),
            Err(TraceError::EmptyLoop)
        );
        assert_eq!(
            LassoTrace::from_atoms(&[], &[&["G"]]),
            Err(TraceError::BadAtom("G".into()))
        );
    }

    #[test]
    fn rotation_preserves_word() {
        let t = LassoTrace::from_atoms(&[&["A"]], &[&["B"], &["C"], &[]]).unwrap();
        let r = t.rotated();
        for p in 0..20 {
            assert_eq!(t.state(p), r.state(p));
        }
    }
}
