//! LTL extended with the compensation operator `⊗`, evaluated exactly on
//! ultimately periodic runs, plus a compiler from prohibition-style norms
//! to fully compliant / weakly compliant / violating run classifiers.

pub mod enumerate;
pub mod eval;
pub mod formula;
pub mod gen;
pub mod norm;
pub mod oracle;
pub mod syntax;
pub mod trace;
pub mod verify;

pub use enumerate::{enumerate_lassos, EnumerationError, LassoSpace};
pub use eval::{eval, eval_at, truth_table};
pub use formula::Formula;
pub use norm::{
    builtin_n1_n4, builtin_paper_norms, compile, load_norm_document, load_norms, paradox_run,
    ClassifierFormulas, Deadline, Norm, NormDocument, NormError, NormSet,
};
pub use oracle::eval_oracle;
pub use syntax::{
    parse_formula, parse_trace, print_formula, print_trace, ParseError, ParseErrorKind, SourceSpan,
};
pub use trace::{LassoTrace, State, TraceError};
pub use verify::{
    check_otimes_equivalence, check_otimes_exhaustive, check_partition, classify,
    reproduce_paradox, ClassMask, ComplianceClass, OTimesCheck, OTimesMismatch, ParadoxReport,
    PartitionReport, PartitionViolation,
};
