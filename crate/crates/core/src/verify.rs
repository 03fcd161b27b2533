//! Run classification and machine checks over bounded run spaces.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::enumerate::{EnumerationError, LassoSpace};
use crate::eval::{eval, truth_table};
use crate::formula::Formula;
use crate::gen::{random_formula, random_trace, Operators};
use crate::norm::{builtin_n1_n4, compile, paper_norm_set, paradox_run, ClassifierFormulas};
use crate::syntax::parse_formula;
use crate::trace::LassoTrace;

/// Anomalies kept verbatim in a [`PartitionReport`]; the rest are counted.
pub const ANOMALY_CAP: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComplianceClass {
    FullyCompliant,
    WeaklyCompliant,
    Violating,
}

impl ComplianceClass {
    pub const ALL: [ComplianceClass; 3] = [
        ComplianceClass::FullyCompliant,
        ComplianceClass::WeaklyCompliant,
        ComplianceClass::Violating,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ComplianceClass::FullyCompliant => "FULLY_COMPLIANT",
            ComplianceClass::WeaklyCompliant => "WEAKLY_COMPLIANT",
            ComplianceClass::Violating => "VIOLATING",
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }

    pub fn formula(self, cf: &ClassifierFormulas) -> &Formula {
        match self {
            ComplianceClass::FullyCompliant => &cf.full,
            ComplianceClass::WeaklyCompliant => &cf.weak,
            ComplianceClass::Violating => &cf.violating,
        }
    }
}

impl fmt::Display for ComplianceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Set of classes whose formula a trace satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ClassMask(u8);

impl ClassMask {
    pub fn contains(self, class: ComplianceClass) -> bool {
        self.0 & class.bit() != 0
    }

    pub fn insert(&mut self, class: ComplianceClass) {
        self.0 |= class.bit();
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// The class, if exactly one is set.
    pub fn single(self) -> Option<ComplianceClass> {
        let mut it = ComplianceClass::ALL
            .into_iter()
            .filter(|c| self.contains(*c));
        match (it.next(), it.next()) {
            (Some(c), None) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for ClassMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [
            ("full", ComplianceClass::FullyCompliant),
            ("weak", ComplianceClass::WeaklyCompliant),
            ("violating", ComplianceClass::Violating),
        ]
        .into_iter()
        .filter(|(_, c)| self.contains(*c))
        .map(|(n, _)| n)
        .collect();
        if names.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&names.join("+"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("trace satisfies {mask} of the classifier formulas, expected exactly one")]
pub struct PartitionViolation {
    pub mask: ClassMask,
}

/// Which classifier formulas hold at the start of `t`.
pub fn satisfied_classes(cf: &ClassifierFormulas, t: &LassoTrace) -> ClassMask {
    let mut mask = ClassMask::default();
    for class in ComplianceClass::ALL {
        if truth_table(class.formula(cf), t)[0] {
            mask.insert(class);
        }
    }
    mask
}

/// The unique class whose formula holds at the start of `t`.
pub fn classify(
    cf: &ClassifierFormulas,
    t: &LassoTrace,
) -> Result<ComplianceClass, PartitionViolation> {
    let mask = satisfied_classes(cf, t);
    mask.single().ok_or(PartitionViolation { mask })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassCounts {
    pub fully_compliant: u64,
    pub weakly_compliant: u64,
    pub violating: u64,
}

impl ClassCounts {
    fn bump(&mut self, class: ComplianceClass) {
        match class {
            ComplianceClass::FullyCompliant => self.fully_compliant += 1,
            ComplianceClass::WeaklyCompliant => self.weakly_compliant += 1,
            ComplianceClass::Violating => self.violating += 1,
        }
    }

    pub fn get(&self, class: ComplianceClass) -> u64 {
        match class {
            ComplianceClass::FullyCompliant => self.fully_compliant,
            ComplianceClass::WeaklyCompliant => self.weakly_compliant,
            ComplianceClass::Violating => self.violating,
        }
    }

    pub fn sum(&self) -> u64 {
        self.fully_compliant + self.weakly_compliant + self.violating
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anomaly {
    pub trace: LassoTrace,
    pub mask: ClassMask,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub atoms: Vec<String>,
    pub max_prefix: usize,
    pub max_loop: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub total: u64,
    pub per_class: ClassCounts,
    /// First [`ANOMALY_CAP`] anomalies in enumeration order.
    pub anomalies: Vec<Anomaly>,
    /// Anomalies beyond the cap.
    pub anomaly_overflow: u64,
    pub bounds: Bounds,
    /// A second pass in reverse enumeration order produced the same counts.
    pub deterministic: bool,
}

impl PartitionReport {
    pub fn anomaly_count(&self) -> u64 {
        self.anomalies.len() as u64 + self.anomaly_overflow
    }

    pub fn partition_holds(&self) -> bool {
        self.anomaly_count() == 0
    }
}

impl fmt::Display for PartitionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "atoms: {}", self.bounds.atoms.join(","))?;
        writeln!(f, "max-prefix: {}", self.bounds.max_prefix)?;
        writeln!(f, "max-loop: {}", self.bounds.max_loop)?;
        writeln!(f, "total: {}", self.total)?;
        for class in ComplianceClass::ALL {
            writeln!(f, "{}: {}", class.label(), self.per_class.get(class))?;
        }
        writeln!(f, "anomalies: {}", self.anomaly_count())?;
        for a in &self.anomalies {
            writeln!(f, "  {} satisfies {}", a.trace, a.mask)?;
        }
        if self.anomaly_overflow > 0 {
            writeln!(f, "  ... and {} more", self.anomaly_overflow)?;
        }
        writeln!(f, "deterministic: {}", self.deterministic)?;
        writeln!(
            f,
            "partition: {}",
            if self.partition_holds() {
                "holds"
            } else {
                "fails"
            }
        )
    }
}

#[derive(Default)]
struct Tally {
    counts: ClassCounts,
    anomalies: Vec<Anomaly>,
    overflow: u64,
}

impl Tally {
    fn add(&mut self, cf: &ClassifierFormulas, t: LassoTrace) {
        let mask = satisfied_classes(cf, &t);
        match mask.single() {
            Some(class) => self.counts.bump(class),
            None if self.anomalies.len() < ANOMALY_CAP => {
                self.anomalies.push(Anomaly { trace: t, mask })
            }
            None => self.overflow += 1,
        }
    }
}

/// Checks that exactly one classifier holds on every lasso within bounds.
pub fn check_partition(
    cf: &ClassifierFormulas,
    atoms: &[String],
    max_prefix: usize,
    max_loop: usize,
) -> Result<PartitionReport, EnumerationError> {
    let space = LassoSpace::new(atoms, max_prefix, max_loop)?;
    let mut forward = Tally::default();
    for t in space.iter() {
        forward.add(cf, t);
    }
    let mut backward = Tally::default();
    for t in space.iter().rev() {
        backward.add(cf, t);
    }
    let forward_anomalies = forward.anomalies.len() as u64 + forward.overflow;
    let backward_anomalies = backward.anomalies.len() as u64 + backward.overflow;
    Ok(PartitionReport {
        total: space.len(),
        per_class: forward.counts,
        deterministic: forward.counts == backward.counts && forward_anomalies == backward_anomalies,
        anomalies: forward.anomalies,
        anomaly_overflow: forward.overflow,
        bounds: Bounds {
            atoms: atoms.to_vec(),
            max_prefix,
            max_loop,
        },
    })
}

/// A case where definitional `⊗` and its `G`/`F` expansion disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OTimesMismatch {
    pub phi: Formula,
    pub psi: Formula,
    pub trace: LassoTrace,
    pub definitional: bool,
}

fn otimes_agrees(phi: &Formula, psi: &Formula, t: &LassoTrace) -> Option<OTimesMismatch> {
    let f = Formula::otimes(phi.clone(), psi.clone());
    let definitional = eval(&f, t);
    let expanded = eval(&f.expand_otimes(), t);
    (definitional != expanded).then(|| OTimesMismatch {
        phi: phi.clone(),
        psi: psi.clone(),
        trace: t.clone(),
        definitional,
    })
}

/// Every operand pair against every lasso within bounds.
pub fn check_otimes_exhaustive(
    operands: &[Formula],
    atoms: &[String],
    max_prefix: usize,
    max_loop: usize,
) -> Result<Vec<OTimesMismatch>, EnumerationError> {
    let space = LassoSpace::new(atoms, max_prefix, max_loop)?;
    let mut out = Vec::new();
    for t in space.iter() {
        for phi in operands {
            for psi in operands {
                out.extend(otimes_agrees(phi, psi, &t));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OTimesCheck {
    pub seed: u64,
    pub cases: usize,
    pub max_depth: usize,
    pub atoms: Vec<String>,
    pub max_prefix: usize,
    pub max_loop: usize,
}

impl OTimesCheck {
    /// 10,000 cases of depth ≤ 4 over `p, q, r`, traces up to (3, 3).
    pub fn standard(seed: u64) -> Self {
        OTimesCheck {
            seed,
            cases: 10_000,
            max_depth: 4,
            atoms: ["p", "q", "r"].map(String::from).to_vec(),
            max_prefix: 3,
            max_loop: 3,
        }
    }
}

/// Random `⊗`-free operand pairs and random traces, reproducible from the
/// seed.
pub fn check_otimes_equivalence(cfg: &OTimesCheck) -> Vec<OTimesMismatch> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for _ in 0..cfg.cases {
        let phi = random_formula(&mut rng, &cfg.atoms, cfg.max_depth, Operators::NoOTimes);
        let psi = random_formula(&mut rng, &cfg.atoms, cfg.max_depth, Operators::NoOTimes);
        let t = random_trace(&mut rng, &cfg.atoms, cfg.max_prefix, cfg.max_loop);
        out.extend(otimes_agrees(&phi, &psi, &t));
    }
    out
}

pub const PARADOX_WITNESS: &str = "F(!C & D)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParadoxReport {
    pub trace: LassoTrace,
    pub n_results: Vec<(String, bool)>,
    /// `None` if the classifiers did not single out one class.
    pub classification: Option<ComplianceClass>,
    pub violating_witness: bool,
}

impl ParadoxReport {
    /// N1–N4 all hold, yet the run is a violation with `F(¬C ∧ D)`.
    pub fn reproduced(&self) -> bool {
        self.n_results.iter().all(|(_, v)| *v)
            && self.classification == Some(ComplianceClass::Violating)
            && self.violating_witness
    }
}

impl fmt::Display for ParadoxReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trace: {}", self.trace)?;
        for (name, v) in &self.n_results {
            writeln!(f, "{name}: {v}")?;
        }
        match self.classification {
            Some(c) => writeln!(f, "classification: {c}")?,
            None => writeln!(f, "classification: NONE")?,
        }
        writeln!(f, "{PARADOX_WITNESS}: {}", self.violating_witness)?;
        writeln!(f, "reproduced: {}", self.reproduced())
    }
}

/// Evaluates N1–N4, the compiled classification, and `F(¬C ∧ D)` on the
/// counterexample run.
pub fn reproduce_paradox() -> ParadoxReport {
    let trace = paradox_run();
    let n_results = builtin_n1_n4()
        .into_iter()
        .map(|(name, f)| (name.to_string(), eval(&f, &trace)))
        .collect();
    let cf = compile(&paper_norm_set());
    let witness = parse_formula(PARADOX_WITNESS).expect("builtin formula parses");
    ParadoxReport {
        n_results,
        classification: classify(&cf, &trace).ok(),
        violating_witness: eval(&witness, &trace),
        trace,
    }
}
