use ltlnorm_core::enumerate::LassoSpace;
use ltlnorm_core::{
    check_partition, compile, eval, eval_at, eval_oracle, parse_formula, parse_trace,
    print_formula, print_trace, Deadline, Formula, LassoTrace, Norm, NormSet, State,
};
use proptest::prelude::*;

const ATOMS: [&str; 3] = ["p", "q", "r"];

fn leaf() -> impl Strategy<Value = Formula> {
    prop_oneof![
        Just(Formula::True),
        Just(Formula::False),
        proptest::sample::select(&ATOMS[..]).prop_map(Formula::atom),
        // exercises identifier characters beyond single letters
        Just(Formula::atom("Read_2")),
    ]
}

fn formula() -> impl Strategy<Value = Formula> {
    leaf().prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::next),
            inner.clone().prop_map(Formula::finally),
            inner.clone().prop_map(Formula::globally),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::until(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::otimes(l, r)),
        ]
    })
}

fn state() -> impl Strategy<Value = State> {
    proptest::sample::subsequence(&ATOMS[..], 0..=ATOMS.len())
        .prop_map(|xs| xs.into_iter().map(String::from).collect())
}

fn trace() -> impl Strategy<Value = LassoTrace> {
    (
        proptest::collection::vec(state(), 0..=3),
        proptest::collection::vec(state(), 1..=3),
    )
        .prop_map(|(p, l)| LassoTrace::new(p, l).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn suffix_periodicity(f in formula(), t in trace(), p in 0usize..20) {
        prop_assert_eq!(eval_at(&f, &t, p), eval_at(&f, &t, t.canonical_position(p)));
    }

    #[test]
    fn evaluator_matches_oracle(f in formula(), t in trace(), p in 0usize..8) {
        prop_assert_eq!(eval_at(&f, &t, p), eval_oracle(&f, &t, p));
    }

    #[test]
    fn derived_operators(f in formula(), t in trace()) {
        let fin = Formula::finally(f.clone());
        prop_assert_eq!(eval(&fin, &t), eval(&Formula::until(Formula::True, f.clone()), &t));
        let glob = Formula::globally(f.clone());
        let dual = Formula::not(Formula::finally(Formula::not(f)));
        prop_assert_eq!(eval(&glob, &t), eval(&dual, &t));
    }

    #[test]
    fn otimes_expansion_everywhere(phi in formula(), psi in formula(), t in trace(), p in 0usize..8) {
        let f = Formula::otimes(phi, psi);
        let expanded = f.expand_otimes();
        prop_assert_eq!(expanded.count_otimes(), 0);
        prop_assert_eq!(eval_at(&f, &t, p), eval_at(&expanded, &t, p));
    }

    #[test]
    fn rotation_preserves_verdicts(f in formula(), t in trace()) {
        prop_assert_eq!(eval(&f, &t), eval(&f, &t.rotated()));
    }

    #[test]
    fn absent_atom_is_false(t in trace(), p in 0usize..8) {
        prop_assert!(!eval_at(&Formula::atom("absent"), &t, p));
    }

    #[test]
    fn formula_round_trip(f in formula()) {
        let text = print_formula(&f);
        prop_assert_eq!(parse_formula(&text).unwrap(), f);
    }

    #[test]
    fn trace_round_trip(t in trace()) {
        prop_assert_eq!(parse_trace(&print_trace(&t)).unwrap(), t);
    }

    #[test]
    fn parse_error_spans_in_bounds(s in "[ -~⊗¬∧∨→]{0,24}") {
        for err in [parse_formula(&s).err(), parse_trace(&s).err()].into_iter().flatten() {
            prop_assert!(err.span.start <= err.span.end);
            prop_assert!(err.span.end <= s.len());
            prop_assert!(!err.message.is_empty());
        }
    }
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn guard() -> impl Strategy<Value = Formula> {
    let atom = proptest::sample::select(&["p", "q"][..]).prop_map(Formula::atom);
    prop_oneof![
        Just(Formula::True),
        Just(Formula::False),
        atom.clone(),
        atom.clone().prop_map(Formula::not),
        (atom.clone(), atom).prop_map(|(l, r)| Formula::and(l, r)),
    ]
}

fn norm_set() -> impl Strategy<Value = NormSet> {
    let deadline = prop_oneof![
        Just(Deadline::Eventually),
        Just(Deadline::Next),
        Just(Deadline::Immediate)
    ];
    let norm = (guard(), guard(), proptest::option::of(guard()), deadline);
    proptest::collection::vec(norm, 0..=3).prop_map(|raw| {
        let norms = raw
            .into_iter()
            .enumerate()
            .map(|(i, (forbidden, unless, comp, deadline))| {
                let n = Norm::prohibition(format!("n{i}"), forbidden, unless);
                match comp {
                    Some(c) => n.with_compensation(c, deadline),
                    None => n,
                }
            })
            .collect();
        NormSet::new(names(&["p", "q"]), norms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compiled_classifiers_partition(ns in norm_set()) {
        let cf = compile(&ns);
        let report = check_partition(&cf, &names(&["p", "q"]), 1, 2).unwrap();
        prop_assert!(report.partition_holds(), "{}", report);
        prop_assert!(report.deterministic);
    }

    #[test]
    fn weak_unsatisfiable_without_compensation(ns in norm_set()) {
        let plain: Vec<Norm> = ns.norms().iter().cloned().map(|mut n| { n.compensation = None; n }).collect();
        let ns = NormSet::new(names(&["p", "q"]), plain).unwrap();
        let cf = compile(&ns);
        let space = LassoSpace::new(&names(&["p", "q"]), 1, 2).unwrap();
        for t in space.iter() {
            prop_assert!(!eval(&cf.weak, &t));
        }
    }
}
