//! Text formats for formulas and lasso traces.
//!
//! Formula grammar, loosest binding first:
//!
//! | level | operators                      | assoc |
//! |-------|--------------------------------|-------|
//! | 1     | `(x)` / `⊗`                    | right |
//! | 2     | `->` / `→`                     | right |
//! | 3     | `\|` / `∨`                     | left  |
//! | 4     | `&` / `∧`                      | left  |
//! | 5     | `U`                            | right |
//! | 6     | `!` / `¬`, `G`, `F`, `X`       | prefix |
//! | 7     | `true`, `false`, atoms, `( … )` |      |
//!
//! The three-character sequence `(x)` always lexes as `⊗`; a parenthesized
//! atom named `x` must be written with inner whitespace, `( x )`.
//!
//! Trace grammar: `{A,D} ; {B} | {}` — prefix states, `|`, loop states.

mod formula;
mod trace;

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;
use crate::trace::LassoTrace;

pub use formula::parse_formula;
pub use trace::parse_trace;

/// Byte range `[start, end)` into the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken,
    UnbalancedParen,
    ReservedAtom,
    EmptyLoop,
    BadStateSyntax,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at {span}")]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError {
            message: message.into(),
            span,
            kind,
        }
    }

    /// Renders the error with a caret line under the offending input.
    pub fn render(&self, input: &str) -> String {
        let col = input[..self.span.start].chars().count();
        let width = input[self.span.start..self.span.end].chars().count().max(1);
        format!(
            "error: {}\n  {}\n  {}{}",
            self.message,
            input,
            " ".repeat(col),
            "^".repeat(width)
        )
    }
}

/// Fully parenthesized ASCII rendering; `parse_formula` inverts it exactly.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn write_formula(f: &Formula, out: &mut String) {
    let unary = |op: &str, g: &Formula, out: &mut String| {
        out.push('(');
        out.push_str(op);
        write_formula(g, out);
        out.push(')');
    };
    let binary = |l: &Formula, op: &str, r: &Formula, out: &mut String| {
        out.push('(');
        write_formula(l, out);
        out.push(' ');
        out.push_str(op);
        out.push(' ');
        write_formula(r, out);
        out.push(')');
    };
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Atom(a) => out.push_str(a),
        Formula::Not(g) => unary("!", g, out),
        Formula::Next(g) => unary("X ", g, out),
        Formula::Finally(g) => unary("F ", g, out),
        Formula::Globally(g) => unary("G ", g, out),
        Formula::And(l, r) => binary(l, "&", r, out),
        Formula::Or(l, r) => binary(l, "|", r, out),
        Formula::Implies(l, r) => binary(l, "->", r, out),
        Formula::Until(l, r) => binary(l, "U", r, out),
        Formula::OTimes(l, r) => binary(l, "(x)", r, out),
    }
}

/// Canonical trace text: sorted atoms, `" ; "` between states, `" | "`
/// before the loop (just `"| "` when the prefix is empty).
pub fn print_trace(t: &LassoTrace) -> String {
    let states = |s: &[crate::trace::State]| {
        s.iter()
            .map(|st| {
                let atoms: Vec<&str> = st.iter().map(String::as_str).collect();
                format!("{{{}}}", atoms.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ; ")
    };
    if t.prefix().is_empty() {
        format!("| {}", states(t.lasso()))
    } else {
        format!("{} | {}", states(t.prefix()), states(t.lasso()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn print_examples() {
        assert_eq!(print_formula(&Formula::atom("A")), "A");
        assert_eq!(
            print_formula(&Formula::otimes(
                Formula::not(Formula::atom("A")),
                Formula::atom("B")
            )),
            "((!A) (x) B)"
        );
        let t = LassoTrace::from_atoms(&[&["D", "A"]], &[&[]]).unwrap();
        assert_eq!(print_trace(&t), "{A,D} | {}");
        let t = LassoTrace::from_atoms(&[], &[&["C"]]).unwrap();
        assert_eq!(print_trace(&t), "| {C}");
    }

    #[test]
    fn render_points_at_span() {
        let err = parse_formula("a & U").unwrap_err();
        let shown = err.render("a & U");
        assert!(shown.ends_with("      ^"), "{shown}");
    }
}
