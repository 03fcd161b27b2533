//! Prohibitions with exceptions and compensations, and their compilation
//! into the three run classifiers.
//!
//! A norm forbids `forbidden` unless `unless` holds in the same state. A
//! state with `¬unless ∧ forbidden` is a violation. If the norm carries a
//! compensation `c`, the violation is excused when `c` shows up within the
//! norm's deadline:
//!
//! | deadline     | obligation after a violation |
//! |--------------|------------------------------|
//! | `eventually` | `F c`                        |
//! | `next`       | `X c`                        |
//! | `immediate`  | `c` (at the violating state) |
//!
//! `immediate` is meant for compensations that are themselves run
//! properties, e.g. `!Read U Destroyed`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::formula::{is_atom_name, is_identifier, Formula};
use crate::syntax::{parse_formula, ParseError};
use crate::trace::LassoTrace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Deadline {
    #[default]
    Eventually,
    Next,
    Immediate,
}

impl Deadline {
    /// The obligation a violation triggers for compensation `c`.
    pub fn obligation(self, c: Formula) -> Formula {
        match self {
            Deadline::Eventually => Formula::finally(c),
            Deadline::Next => Formula::next(c),
            Deadline::Immediate => c,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Deadline::Eventually => "eventually",
            Deadline::Next => "next",
            Deadline::Immediate => "immediate",
        }
    }
}

impl std::str::FromStr for Deadline {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eventually" => Ok(Deadline::Eventually),
            "next" => Ok(Deadline::Next),
            "immediate" => Ok(Deadline::Immediate),
            other => Err(format!(
                "unknown deadline {other:?} (expected eventually, next or immediate)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Norm {
    pub id: String,
    pub forbidden: Formula,
    pub unless: Formula,
    pub compensation: Option<Formula>,
    /// Ignored when there is no compensation.
    pub deadline: Deadline,
}

impl Norm {
    pub fn prohibition(id: impl Into<String>, forbidden: Formula, unless: Formula) -> Self {
        Norm {
            id: id.into(),
            forbidden,
            unless,
            compensation: None,
            deadline: Deadline::Eventually,
        }
    }

    pub fn with_compensation(mut self, compensation: Formula, deadline: Deadline) -> Self {
        self.compensation = Some(compensation);
        self.deadline = deadline;
        self
    }

    /// `¬unless ∧ forbidden`
    pub fn violation(&self) -> Formula {
        Formula::and(Formula::not(self.unless.clone()), self.forbidden.clone())
    }

    /// The deadline obligation, for compensable norms.
    pub fn obligation(&self) -> Option<Formula> {
        self.compensation
            .as_ref()
            .map(|c| self.deadline.obligation(c.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormError {
    #[error("malformed norm file: {0}")]
    Document(String),
    #[error("illegal atom name {0:?} in atom list")]
    BadAtom(String),
    #[error("illegal norm id {0:?}")]
    BadId(String),
    #[error("duplicate norm id {0}")]
    DuplicateId(String),
    #[error("in {field} of {norm}: {error}")]
    Formula {
        norm: String,
        field: &'static str,
        error: ParseError,
    },
    #[error("temporal operator in {} of {norm}", field_label(.field))]
    TemporalOperator { norm: String, field: &'static str },
    #[error("atom {atom} used in {norm} is not declared in atoms")]
    UnknownAtom { norm: String, atom: String },
    #[error("in {norm}: {message}")]
    BadDeadline { norm: String, message: String },
}

fn field_label(field: &str) -> &str {
    if field == "unless" {
        "guard"
    } else {
        field
    }
}

/// A declared alphabet plus an ordered list of norms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormSet {
    atoms: BTreeSet<String>,
    norms: Vec<Norm>,
}

impl NormSet {
    pub fn new(
        atoms: impl IntoIterator<Item = String>,
        norms: Vec<Norm>,
    ) -> Result<Self, NormError> {
        let atoms: BTreeSet<String> = atoms.into_iter().collect();
        if let Some(bad) = atoms.iter().find(|a| !is_atom_name(a)) {
            return Err(NormError::BadAtom(bad.clone()));
        }
        let mut seen = HashSet::new();
        for norm in &norms {
            if !is_identifier(&norm.id) {
                return Err(NormError::BadId(norm.id.clone()));
            }
            if !seen.insert(norm.id.as_str()) {
                return Err(NormError::DuplicateId(norm.id.clone()));
            }
            for (field, f) in [("forbidden", &norm.forbidden), ("unless", &norm.unless)] {
                if !f.is_propositional() {
                    return Err(NormError::TemporalOperator {
                        norm: norm.id.clone(),
                        field,
                    });
                }
            }
            let used = [&norm.forbidden, &norm.unless]
                .into_iter()
                .chain(norm.compensation.as_ref())
                .flat_map(Formula::atoms);
            for atom in used {
                if !atoms.contains(&atom) {
                    return Err(NormError::UnknownAtom {
                        norm: norm.id.clone(),
                        atom,
                    });
                }
            }
        }
        Ok(NormSet { atoms, norms })
    }

    pub fn empty() -> Self {
        NormSet {
            atoms: BTreeSet::new(),
            norms: Vec::new(),
        }
    }

    pub fn atoms(&self) -> &BTreeSet<String> {
        &self.atoms
    }

    pub fn norms(&self) -> &[Norm] {
        &self.norms
    }
}

/// One formula per compliance class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifierFormulas {
    pub full: Formula,
    pub weak: Formula,
    pub violating: Formula,
}

impl fmt::Display for ClassifierFormulas {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "full: {}", self.full)?;
        writeln!(f, "weak: {}", self.weak)?;
        writeln!(f, "violating: {}", self.violating)
    }
}

/// Compiles a norm set into its classifiers.
///
/// With `viol_i = ¬unless_i ∧ forbidden_i` and `D_i` the deadline
/// obligation of compensable norm `i`:
///
/// ```text
/// full      = G(∧_all ¬viol_i)
/// weak      = F(∨_comp viol_i) ∧ (∧_comp G(viol_i → D_i)) ∧ (∧_plain G ¬viol_j)
/// violating = F(∨_plain viol_j ∨ ∨_comp (viol_i ∧ ¬D_i))
/// ```
pub fn compile(ns: &NormSet) -> ClassifierFormulas {
    let (comp, plain): (Vec<&Norm>, Vec<&Norm>) =
        ns.norms.iter().partition(|n| n.compensation.is_some());
    let obligation = |n: &Norm| n.obligation().expect("compensable norm");

    let full = Formula::globally(Formula::conjunction(
        ns.norms.iter().map(|n| Formula::not(n.violation())),
    ));

    let weak = Formula::conjunction([
        Formula::finally(Formula::disjunction(comp.iter().map(|n| n.violation()))),
        Formula::conjunction(
            comp.iter()
                .map(|n| Formula::globally(Formula::implies(n.violation(), obligation(n)))),
        ),
        Formula::conjunction(
            plain
                .iter()
                .map(|n| Formula::globally(Formula::not(n.violation()))),
        ),
    ]);

    let violating = Formula::finally(Formula::disjunction(
        plain.iter().map(|n| n.violation()).chain(
            comp.iter()
                .map(|n| Formula::and(n.violation(), Formula::not(obligation(n)))),
        ),
    ));

    ClassifierFormulas {
        full,
        weak,
        violating,
    }
}

fn atoms(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// The running example: collecting personal data `A` is forbidden unless
/// the court authorised it (`C`), excused by destroying the data (`B`)
/// later; collecting medical data `D` is forbidden unless `C`.
pub fn paper_norm_set() -> NormSet {
    let a = Formula::atom;
    NormSet::new(
        atoms(&["A", "B", "C", "D"]),
        vec![
            Norm::prohibition("n1", a("A"), a("C")).with_compensation(a("B"), Deadline::Eventually),
            Norm::prohibition("n2", a("D"), a("C")),
        ],
    )
    .expect("builtin norm set is valid")
}

pub const VERBATIM_FULL: &str = "G(C | (!C & !A & !D))";
pub const VERBATIM_WEAK: &str = "F(!C & A) & G(!C & A -> F B) & G(!C -> !D)";
pub const VERBATIM_VIOLATING: &str = "F(!C & (D | (A & !F B)))";

/// The example norm set together with its hand-written classifiers
/// (parsed from text, not compiled).
pub fn builtin_paper_norms() -> (NormSet, ClassifierFormulas) {
    let parse = |s: &str| parse_formula(s).expect("builtin formula parses");
    (
        paper_norm_set(),
        ClassifierFormulas {
            full: parse(VERBATIM_FULL),
            weak: parse(VERBATIM_WEAK),
            violating: parse(VERBATIM_VIOLATING),
        },
    )
}

/// The N1–N4 reading of the same norms, each meant to hold at the start
/// of a run.
pub fn builtin_n1_n4() -> Vec<(&'static str, Formula)> {
    [
        ("N1", "!C -> (!A (x) B)"),
        ("N2", "C -> F A"),
        ("N3", "G !A -> G !D"),
        ("N4", "F A -> F D"),
    ]
    .into_iter()
    .map(|(name, text)| (name, parse_formula(text).expect("builtin formula parses")))
    .collect()
}

/// `{A,D} ; {B} | {}`: a violation of both prohibitions, a later `B`, and
/// nothing after that.
pub fn paradox_run() -> LassoTrace {
    LassoTrace::from_atoms(&[&["A", "D"], &["B"]], &[&[]]).expect("valid trace")
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    atoms: Vec<String>,
    norms: Vec<RawNorm>,
    #[serde(default)]
    classifiers: RawClassifiers,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNorm {
    id: String,
    forbidden: String,
    unless: String,
    compensation: Option<String>,
    deadline: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClassifiers {
    full: Option<String>,
    weak: Option<String>,
    violating: Option<String>,
}

/// A parsed norm file: the norm set plus any hand-written classifier
/// formulas that replace the compiled ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormDocument {
    pub norms: NormSet,
    pub overrides: BTreeMap<&'static str, Formula>,
}

impl NormDocument {
    /// Compiled classifiers with any overrides applied.
    pub fn classifiers(&self) -> ClassifierFormulas {
        let mut cf = compile(&self.norms);
        for (&name, f) in &self.overrides {
            let slot = match name {
                "full" => &mut cf.full,
                "weak" => &mut cf.weak,
                _ => &mut cf.violating,
            };
            *slot = f.clone();
        }
        cf
    }
}

/// Parses a JSON norm file:
///
/// ```json
/// {
///   "atoms": ["A", "B", "C", "D"],
///   "norms": [
///     {"id": "n1", "forbidden": "A", "unless": "C",
///      "compensation": "B", "deadline": "eventually"},
///     {"id": "n2", "forbidden": "D", "unless": "C"}
///   ]
/// }
/// ```
///
/// An optional `classifiers` object with `full`, `weak` or `violating`
/// formula strings overrides the compiled classifiers.
pub fn load_norm_document(input: &str) -> Result<NormDocument, NormError> {
    let raw: RawDocument =
        serde_json::from_str(input).map_err(|e| NormError::Document(e.to_string()))?;
    let mut norms = Vec::with_capacity(raw.norms.len());
    for rn in raw.norms {
        let field = |field: &'static str, text: &str| {
            parse_formula(text).map_err(|error| NormError::Formula {
                norm: rn.id.clone(),
                field,
                error,
            })
        };
        let forbidden = field("forbidden", &rn.forbidden)?;
        let unless = field("unless", &rn.unless)?;
        let compensation = rn
            .compensation
            .as_deref()
            .map(|c| field("compensation", c))
            .transpose()?;
        let deadline = match rn.deadline.as_deref() {
            None => Deadline::default(),
            Some(d) => d.parse().map_err(|message| NormError::BadDeadline {
                norm: rn.id.clone(),
                message,
            })?,
        };
        norms.push(Norm {
            id: rn.id,
            forbidden,
            unless,
            compensation,
            deadline,
        });
    }
    let norms = NormSet::new(raw.atoms, norms)?;

    let mut overrides = BTreeMap::new();
    for (name, text) in [
        ("full", raw.classifiers.full),
        ("weak", raw.classifiers.weak),
        ("violating", raw.classifiers.violating),
    ] {
        if let Some(text) = text {
            let f = parse_formula(&text).map_err(|error| NormError::Formula {
                norm: "classifiers".into(),
                field: name,
                error,
            })?;
            overrides.insert(name, f);
        }
    }
    Ok(NormDocument { norms, overrides })
}

/// Parses a norm file, ignoring classifier overrides.
pub fn load_norms(input: &str) -> Result<NormSet, NormError> {
    load_norm_document(input).map(|doc| doc.norms)
}
