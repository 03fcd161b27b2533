//! Exact evaluation over lasso traces.
//!
//! Every subformula is turned into a truth table indexed by canonical
//! position (`0..trace.len()`). Tables are built bottom-up; `U` is the least
//! fixpoint of `ψ ∨ (φ ∧ X(φ U ψ))`, computed by sweeping the loop backwards
//! twice and then the prefix once. `⊗` is evaluated by quantifying over the
//! positions reachable from each origin, never by rewriting.

use crate::formula::Formula;
use crate::trace::LassoTrace;

/// Truth of `f` at position `p` of the infinite word. Positions past the
/// end of the lasso are folded back with [`LassoTrace::canonical_position`].
pub fn eval_at(f: &Formula, t: &LassoTrace, p: usize) -> bool {
    truth_table(f, t)[t.canonical_position(p)]
}

/// Truth of `f` at the start of the run.
pub fn eval(f: &Formula, t: &LassoTrace) -> bool {
    eval_at(f, t, 0)
}

/// Truth value of `f` at each canonical position of `t`.
pub fn truth_table(f: &Formula, t: &LassoTrace) -> Vec<bool> {
    let n = t.len();
    match f {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Atom(a) => (0..n).map(|i| t.state(i).contains(a)).collect(),
        Formula::Not(g) => truth_table(g, t).into_iter().map(|v| !v).collect(),
        Formula::And(l, r) => zip_with(truth_table(l, t), truth_table(r, t), |a, b| a && b),
        Formula::Or(l, r) => zip_with(truth_table(l, t), truth_table(r, t), |a, b| a || b),
        Formula::Implies(l, r) => zip_with(truth_table(l, t), truth_table(r, t), |a, b| !a || b),
        Formula::Next(g) => {
            let inner = truth_table(g, t);
            (0..n).map(|i| inner[t.successor(i)]).collect()
        }
        Formula::Finally(g) => until_table(&vec![true; n], &truth_table(g, t), t),
        Formula::Globally(g) => {
            let negated: Vec<bool> = truth_table(g, t).into_iter().map(|v| !v).collect();
            until_table(&vec![true; n], &negated, t)
                .into_iter()
                .map(|v| !v)
                .collect()
        }
        Formula::Until(l, r) => until_table(&truth_table(l, t), &truth_table(r, t), t),
        Formula::OTimes(l, r) => otimes_table(&truth_table(l, t), &truth_table(r, t), t),
    }
}

fn zip_with(a: Vec<bool>, b: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

fn until_table(hold: &[bool], goal: &[bool], t: &LassoTrace) -> Vec<bool> {
    let n = t.len();
    let start = t.loop_start();
    let mut out = vec![false; n];
    // The first loop sweep is exact for witnesses that do not wrap around;
    // the second propagates the loop-start values through the wrap.
    for _ in 0..2 {
        for i in (start..n).rev() {
            out[i] = goal[i] || (hold[i] && out[t.successor(i)]);
        }
    }
    for i in (0..start).rev() {
        out[i] = goal[i] || (hold[i] && out[i + 1]);
    }
    out
}

/// Canonical positions visited by the suffix starting at canonical `p`.
fn reachable(t: &LassoTrace, p: usize) -> std::ops::Range<usize> {
    p.min(t.loop_start())..t.len()
}

fn otimes_table(phi: &[bool], psi: &[bool], t: &LassoTrace) -> Vec<bool> {
    (0..t.len())
        .map(|p| {
            let always = reachable(t, p).all(|i| phi[i]);
            let compensated = reachable(t, p)
                .filter(|&j| !phi[j])
                .any(|j| reachable(t, j).any(|k| psi[k]));
            always || compensated
        })
        .collect()
}
