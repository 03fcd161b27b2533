//! Reference evaluator used to cross-check [`crate::eval`].
//!
//! Works directly on absolute positions of the infinite word and reads
//! every operator off its textbook definition, with each unbounded
//! quantifier cut to the window `[p, p + n + 2·|loop|]`. Past the prefix
//! all truth values repeat with period `|loop|`, so the first witness of
//! any existential, if there is one, falls inside that window.
//!
//! Shares no temporal-operator code with the main evaluator. Results are
//! memoized per (subformula, absolute position) so nested operators stay
//! polynomial.

use std::collections::HashMap;

use crate::formula::Formula;
use crate::trace::LassoTrace;

pub fn eval_oracle(f: &Formula, t: &LassoTrace, p: usize) -> bool {
    Oracle::new(t).holds(f, p)
}

struct Oracle<'a> {
    trace: &'a LassoTrace,
    horizon: usize,
    memo: HashMap<(*const Formula, usize), bool>,
}

impl<'a> Oracle<'a> {
    fn new(trace: &'a LassoTrace) -> Self {
        let n = trace.prefix().len() + trace.lasso().len();
        Oracle {
            trace,
            horizon: n + 2 * trace.lasso().len(),
            memo: HashMap::new(),
        }
    }

    fn letter_has(&self, atom: &str, p: usize) -> bool {
        let prefix = self.trace.prefix();
        let lasso = self.trace.lasso();
        let state = if p < prefix.len() {
            &prefix[p]
        } else {
            &lasso[(p - prefix.len()) % lasso.len()]
        };
        state.contains(atom)
    }

    fn window(&self, p: usize) -> std::ops::RangeInclusive<usize> {
        p..=p + self.horizon
    }

    fn holds(&mut self, f: &Formula, p: usize) -> bool {
        let key = (f as *const Formula, p);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = self.compute(f, p);
        self.memo.insert(key, v);
        v
    }

    fn compute(&mut self, f: &Formula, p: usize) -> bool {
        match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => self.letter_has(a, p),
            Formula::Not(g) => !self.holds(g, p),
            Formula::And(l, r) => self.holds(l, p) && self.holds(r, p),
            Formula::Or(l, r) => self.holds(l, p) || self.holds(r, p),
            Formula::Implies(l, r) => !self.holds(l, p) || self.holds(r, p),
            Formula::Next(g) => self.holds(g, p + 1),
            // ∃k ≥ p. g(k)
            Formula::Finally(g) => self.window(p).any(|k| self.holds(g, k)),
            // ∀i ≥ p. g(i)
            Formula::Globally(g) => self.window(p).all(|i| self.holds(g, i)),
            // ∃k ≥ p. r(k) ∧ ∀i ∈ [p, k). l(i)
            Formula::Until(l, r) => self
                .window(p)
                .any(|k| self.holds(r, k) && (p..k).all(|i| self.holds(l, i))),
            // (∀i ≥ p. l(i)) ∨ ∃j,k. p ≤ j ≤ k ∧ ¬l(j) ∧ r(k)
            Formula::OTimes(l, r) => {
                self.window(p).all(|i| self.holds(l, i))
                    || self.window(p).any(|j| {
                        !self.holds(l, j) && (j..=p + self.horizon).any(|k| self.holds(r, k))
                    })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paradox() -> LassoTrace {
        LassoTrace::from_atoms(&[&["A", "D"], &["B"]], &[&[]]).unwrap()
    }

    #[test]
    fn finally_b_on_paradox_run() {
        let f = Formula::finally(Formula::atom("B"));
        assert!(eval_oracle(&f, &paradox(), 0));
        assert!(!eval_oracle(&f, &paradox(), 2));
    }

    #[test]
    fn globally_not_a_on_paradox_run() {
        let f = Formula::globally(Formula::not(Formula::atom("A")));
        assert!(!eval_oracle(&f, &paradox(), 0));
        assert!(eval_oracle(&f, &paradox(), 1));
    }

    #[test]
    fn otimes_witness_pair() {
        let f = Formula::otimes(Formula::not(Formula::atom("A")), Formula::atom("B"));
        assert!(eval_oracle(&f, &paradox(), 0));
    }
}
