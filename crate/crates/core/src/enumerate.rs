//! Bounded enumeration of every lasso over a fixed alphabet.

use thiserror::Error;

use crate::formula::is_atom_name;
use crate::trace::{LassoTrace, State};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("at least one atom is required")]
    NoAtoms,
    #[error("max loop length must be at least 1")]
    ZeroLoop,
    #[error("illegal atom name {0:?}")]
    BadAtom(String),
    #[error("duplicate atom {0:?}")]
    DuplicateAtom(String),
    #[error("search space too large to count")]
    TooLarge,
}

/// All lassos with prefix length `0..=max_prefix`, loop length
/// `1..=max_loop`, and every state drawn from the subsets of `atoms`.
///
/// Traces are indexed in the order: prefix length, then loop length, then
/// the states read as one big binary number with the first state most
/// significant. Within a state the first atom is the most significant bit.
/// Rotations of the same ω-word are not merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoSpace {
    atoms: Vec<String>,
    max_prefix: usize,
    max_loop: usize,
    len: u64,
}

impl LassoSpace {
    pub fn new(
        atoms: &[String],
        max_prefix: usize,
        max_loop: usize,
    ) -> Result<Self, EnumerationError> {
        if atoms.is_empty() {
            return Err(EnumerationError::NoAtoms);
        }
        if max_loop == 0 {
            return Err(EnumerationError::ZeroLoop);
        }
        for (i, a) in atoms.iter().enumerate() {
            if !is_atom_name(a) {
                return Err(EnumerationError::BadAtom(a.clone()));
            }
            if atoms[..i].contains(a) {
                return Err(EnumerationError::DuplicateAtom(a.clone()));
            }
        }
        let k = atoms.len();
        let geometric = |from: usize, to: usize| -> Option<u64> {
            (from..=to).try_fold(0u64, |acc, len| {
                let exp = u32::try_from(k.checked_mul(len)?).ok()?;
                acc.checked_add(2u64.checked_pow(exp)?)
            })
        };
        let len = geometric(0, max_prefix)
            .zip(geometric(1, max_loop))
            .and_then(|(p, l)| p.checked_mul(l))
            .ok_or(EnumerationError::TooLarge)?;
        Ok(LassoSpace {
            atoms: atoms.to_vec(),
            max_prefix,
            max_loop,
            len,
        })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn max_prefix(&self) -> usize {
        self.max_prefix
    }

    pub fn max_loop(&self) -> usize {
        self.max_loop
    }

    /// The trace at `index` in enumeration order.
    pub fn get(&self, index: u64) -> Option<LassoTrace> {
        let k = self.atoms.len();
        let mut rest = index;
        for prefix_len in 0..=self.max_prefix {
            for loop_len in 1..=self.max_loop {
                let block = 1u64 << (k * (prefix_len + loop_len));
                if rest < block {
                    return Some(self.decode(rest, prefix_len, loop_len));
                }
                rest -= block;
            }
        }
        None
    }

    fn decode(&self, code: u64, prefix_len: usize, loop_len: usize) -> LassoTrace {
        let k = self.atoms.len();
        let total = prefix_len + loop_len;
        let state = |pos: usize| -> State {
            let bits = (code >> (k * (total - 1 - pos))) & ((1u64 << k) - 1);
            self.atoms
                .iter()
                .enumerate()
                .filter(|&(i, _)| bits >> (k - 1 - i) & 1 == 1)
                .map(|(_, a)| a.clone())
                .collect()
        };
        let prefix = (0..prefix_len).map(state).collect();
        let lasso = (prefix_len..total).map(state).collect();
        LassoTrace::new(prefix, lasso).expect("enumerated trace is valid")
    }

    /// Iterates in enumeration order. The iterator can also be reversed.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = LassoTrace> + '_ {
        (0..self.len).map(move |i| self.get(i).expect("index in range"))
    }
}

/// Shorthand for `LassoSpace::new(..)?.iter()` with an owned space.
pub fn enumerate_lassos(
    atoms: &[String],
    max_prefix: usize,
    max_loop: usize,
) -> Result<impl DoubleEndedIterator<Item = LassoTrace>, EnumerationError> {
    let space = LassoSpace::new(atoms, max_prefix, max_loop)?;
    Ok((0..space.len()).map(move |i| space.get(i).expect("index in range")))
}
