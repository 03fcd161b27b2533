use crate::formula::is_reserved;
use crate::trace::{LassoTrace, State};

use super::{ParseError, ParseErrorKind, SourceSpan};

struct Scanner<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.input[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.input[self.pos..].chars().next()
    }

    fn here(&self) -> SourceSpan {
        let len = self.input[self.pos..]
            .chars()
            .next()
            .map_or(0, char::len_utf8);
        SourceSpan::new(self.pos, self.pos + len)
    }

    fn err(&self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError::new(kind, self.here(), message)
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.input[start..];
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| {
                c.is_ascii_alphabetic() || c == '_' || (i > 0 && c.is_ascii_digit())
            })
            .count();
        if len == 0 {
            return Err(self.err(ParseErrorKind::BadStateSyntax, "expected an atom name"));
        }
        self.pos += len;
        let word = &rest[..len];
        if is_reserved(word) {
            return Err(ParseError::new(
                ParseErrorKind::ReservedAtom,
                SourceSpan::new(start, self.pos),
                format!("`{word}` is reserved and cannot be used as an atom"),
            ));
        }
        Ok(word.to_string())
    }

    fn state(&mut self) -> Result<State, ParseError> {
        if self.peek() != Some('{') {
            return Err(self.err(
                ParseErrorKind::BadStateSyntax,
                "expected `{` to open a state",
            ));
        }
        self.pos += 1;
        let mut state = State::new();
        if self.peek() == Some('}') {
            self.pos += 1;
            return Ok(state);
        }
        loop {
            state.insert(self.ident()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some('}') => {
                    self.pos += 1;
                    return Ok(state);
                }
                None => {
                    return Err(self.err(
                        ParseErrorKind::BadStateSyntax,
                        "unclosed state, expected `}`",
                    ))
                }
                Some(_) => {
                    return Err(self.err(
                        ParseErrorKind::BadStateSyntax,
                        "expected `,` or `}` in state",
                    ))
                }
            }
        }
    }

    fn states(&mut self) -> Result<Vec<State>, ParseError> {
        let mut out = vec![self.state()?];
        while self.peek() == Some(';') {
            self.pos += 1;
            out.push(self.state()?);
        }
        Ok(out)
    }
}

/// Parses `prefix-states | loop-states`; duplicate atoms in a state collapse.
pub fn parse_trace(input: &str) -> Result<LassoTrace, ParseError> {
    let mut s = Scanner { input, pos: 0 };
    let prefix = if s.peek() == Some('|') {
        Vec::new()
    } else {
        s.states()?
    };
    if s.peek() != Some('|') {
        return Err(s.err(ParseErrorKind::UnexpectedToken, "expected `;` or `|`"));
    }
    s.pos += 1;
    if s.peek().is_none() {
        return Err(s.err(
            ParseErrorKind::EmptyLoop,
            "the loop after `|` needs at least one state",
        ));
    }
    let lasso = s.states()?;
    if s.peek().is_some() {
        return Err(s.err(
            ParseErrorKind::UnexpectedToken,
            "expected `;` or end of input",
        ));
    }
    // Both lists are nonempty-checked and atoms validated above.
    Ok(LassoTrace::new(prefix, lasso).expect("validated while parsing"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(s: &str) -> ParseErrorKind {
        parse_trace(s).unwrap_err().kind
    }

    #[test]
    fn paradox_run_text() {
        let t = parse_trace("{A,D} ; {B} | {}").unwrap();
        assert_eq!(
            t,
            LassoTrace::from_atoms(&[&["A", "D"], &["B"]], &[&[]]).unwrap()
        );
        let compact = parse_trace("{A,D};{B}|{}").unwrap();
        assert_eq!(t, compact);
    }

    #[test]
    fn empty_prefix_and_duplicates() {
        let t = parse_trace("| {C}").unwrap();
        assert!(t.prefix().is_empty());
        assert_eq!(parse_trace("|{C,C, C}").unwrap(), t);
    }

    #[test]
    fn error_kinds() {
        assert_eq!(kind("{A} | "), ParseErrorKind::EmptyLoop);
        assert_eq!(kind("{A} |"), ParseErrorKind::EmptyLoop);
        assert_eq!(kind("{A,,B} | {}"), ParseErrorKind::BadStateSyntax);
        assert_eq!(kind("{A | {}"), ParseErrorKind::BadStateSyntax);
        assert_eq!(kind("| {A"), ParseErrorKind::BadStateSyntax);
        assert_eq!(kind("A | {}"), ParseErrorKind::BadStateSyntax);
        assert_eq!(kind("{A} {B} | {}"), ParseErrorKind::UnexpectedToken);
        assert_eq!(kind("{A}"), ParseErrorKind::UnexpectedToken);
        assert_eq!(kind("| {A} | {B}"), ParseErrorKind::UnexpectedToken);
        assert_eq!(kind("| {G}"), ParseErrorKind::ReservedAtom);
        assert_eq!(kind("| {1a}"), ParseErrorKind::BadStateSyntax);
    }

    #[test]
    fn spans_stay_in_bounds() {
        for bad in ["{A} | ", "{A", "{", "|", "{A,}", "{A}{", "  | {x} ;"] {
            let e = parse_trace(bad).unwrap_err();
            assert!(
                e.span.start <= e.span.end && e.span.end <= bad.len(),
                "{bad:?}"
            );
        }
    }
}
