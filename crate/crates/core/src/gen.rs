//! Seeded random and exhaustive generation of formulas and traces, for the
//! verification harness and tests.

use rand::Rng;

use crate::formula::Formula;
use crate::trace::{LassoTrace, State};

/// Which operators random and exhaustive generation may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operators {
    /// Every constructor, `⊗` included.
    All,
    /// Everything except `⊗`.
    NoOTimes,
}

const UNARY: [fn(Formula) -> Formula; 4] = [
    Formula::not,
    Formula::next,
    Formula::finally,
    Formula::globally,
];

const BINARY: [fn(Formula, Formula) -> Formula; 5] = [
    Formula::and,
    Formula::or,
    Formula::implies,
    Formula::until,
    Formula::otimes,
];

fn binary_ops(ops: Operators) -> &'static [fn(Formula, Formula) -> Formula] {
    match ops {
        Operators::All => &BINARY,
        Operators::NoOTimes => &BINARY[..4],
    }
}

fn leaves(atoms: &[String]) -> Vec<Formula> {
    let mut out = vec![Formula::True, Formula::False];
    out.extend(atoms.iter().map(|a| Formula::Atom(a.clone())));
    out
}

/// A random formula of depth at most `max_depth` over `atoms`.
pub fn random_formula<R: Rng + ?Sized>(
    rng: &mut R,
    atoms: &[String],
    max_depth: usize,
    ops: Operators,
) -> Formula {
    // Leaves get a fair share at every level so shallow formulas are common.
    if max_depth == 0 || rng.random_bool(0.25) {
        let leaves = leaves(atoms);
        // Bias toward atoms; constants make most operators trivial.
        if !atoms.is_empty() && rng.random_bool(0.8) {
            return Formula::Atom(atoms[rng.random_range(0..atoms.len())].clone());
        }
        return leaves[rng.random_range(0..leaves.len())].clone();
    }
    let binary = binary_ops(ops);
    let pick = rng.random_range(0..UNARY.len() + binary.len());
    if pick < UNARY.len() {
        UNARY[pick](random_formula(rng, atoms, max_depth - 1, ops))
    } else {
        let l = random_formula(rng, atoms, max_depth - 1, ops);
        let r = random_formula(rng, atoms, max_depth - 1, ops);
        binary[pick - UNARY.len()](l, r)
    }
}

/// A random lasso with prefix length `0..=max_prefix` and loop length
/// `1..=max_loop`; each atom is in each state with probability 1/2.
pub fn random_trace<R: Rng + ?Sized>(
    rng: &mut R,
    atoms: &[String],
    max_prefix: usize,
    max_loop: usize,
) -> LassoTrace {
    let state = |rng: &mut R| -> State {
        atoms
            .iter()
            .filter(|_| rng.random_bool(0.5))
            .cloned()
            .collect()
    };
    let prefix_len = rng.random_range(0..=max_prefix);
    let loop_len = rng.random_range(1..=max_loop.max(1));
    let prefix = (0..prefix_len).map(|_| state(rng)).collect();
    let lasso = (0..loop_len).map(|_| state(rng)).collect();
    LassoTrace::new(prefix, lasso).expect("generated trace is valid")
}

/// Every formula of depth at most `depth` over `atoms`.
///
/// Leaves are `true`, `false` and the atoms; each level adds the four unary
/// operators and the binary ones. Over one atom with all operators this is
/// 3, 60 and 18,243 formulas for depths 0, 1 and 2.
pub fn formulas_up_to_depth(atoms: &[String], depth: usize, ops: Operators) -> Vec<Formula> {
    let mut all = leaves(atoms);
    for _ in 0..depth {
        let mut next = leaves(atoms);
        for op in UNARY {
            next.extend(all.iter().cloned().map(op));
        }
        for op in binary_ops(ops) {
            for l in &all {
                for r in &all {
                    next.push(op(l.clone(), r.clone()));
                }
            }
        }
        all = next;
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn exhaustive_counts() {
        let atoms = names(&["p"]);
        assert_eq!(formulas_up_to_depth(&atoms, 0, Operators::All).len(), 3);
        assert_eq!(formulas_up_to_depth(&atoms, 1, Operators::All).len(), 60);
        // 3 + 4·60 + 5·60²
        assert_eq!(
            formulas_up_to_depth(&atoms, 2, Operators::All).len(),
            18_243
        );
        assert_eq!(
            formulas_up_to_depth(&atoms, 1, Operators::NoOTimes).len(),
            3 + 12 + 4 * 9
        );
    }

    #[test]
    fn random_respects_bounds() {
        let atoms = names(&["p", "q", "r"]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let f = random_formula(&mut rng, &atoms, 4, Operators::NoOTimes);
            assert!(f.depth() <= 4);
            assert_eq!(f.count_otimes(), 0);
            let t = random_trace(&mut rng, &atoms, 3, 3);
            assert!(t.prefix().len() <= 3 && (1..=3).contains(&t.lasso().len()));
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let atoms = names(&["p", "q"]);
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20)
                .map(|_| random_formula(&mut rng, &atoms, 3, Operators::All))
                .collect::<Vec<_>>()
        };
        assert_eq!(run(3), run(3));
        assert_ne!(run(3), run(4));
    }
}
