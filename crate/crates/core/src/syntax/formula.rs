use crate::formula::Formula;

use super::{ParseError, ParseErrorKind, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Globally,
    Finally,
    Next,
    Until,
    Not,
    And,
    Or,
    Implies,
    OTimes,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("atom `{name}`"),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Globally => "`G`".into(),
            Tok::Finally => "`F`".into(),
            Tok::Next => "`X`".into(),
            Tok::Until => "`U`".into(),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::OTimes => "`(x)`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }

    fn starts_formula(&self) -> bool {
        matches!(
            self,
            Tok::Ident(_)
                | Tok::True
                | Tok::False
                | Tok::Globally
                | Tok::Finally
                | Tok::Next
                | Tok::Not
                | Tok::LParen
        )
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let single = |tok: Tok| (tok, SourceSpan::new(start, start + c.len_utf8()));
        let tok = match c {
            '(' if input[start..].starts_with("(x)") => {
                chars.nth(2);
                toks.push((Tok::OTimes, SourceSpan::new(start, start + 3)));
                continue;
            }
            '-' => {
                chars.next();
                if let Some(&(_, '>')) = chars.peek() {
                    chars.next();
                    toks.push((Tok::Implies, SourceSpan::new(start, start + 2)));
                    continue;
                }
                return Err(ParseError::new(
                    ParseErrorKind::UnexpectedToken,
                    SourceSpan::new(start, start + 1),
                    "expected `->`",
                ));
            }
            '(' => single(Tok::LParen),
            ')' => single(Tok::RParen),
            '!' | '¬' => single(Tok::Not),
            '&' | '∧' => single(Tok::And),
            '|' | '∨' => single(Tok::Or),
            '→' => single(Tok::Implies),
            '⊗' => single(Tok::OTimes),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = start;
                while let Some(&(i, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        end = i + c.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let word = &input[start..end];
                let tok = match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "G" => Tok::Globally,
                    "F" => Tok::Finally,
                    "X" => Tok::Next,
                    "U" => Tok::Until,
                    _ => Tok::Ident(word.to_string()),
                };
                toks.push((tok, SourceSpan::new(start, end)));
                continue;
            }
            other => {
                return Err(ParseError::new(
                    ParseErrorKind::UnexpectedToken,
                    SourceSpan::new(start, start + other.len_utf8()),
                    format!("unexpected character {other:?}"),
                ))
            }
        };
        chars.next();
        toks.push(tok);
    }
    toks.push((Tok::Eof, SourceSpan::new(input.len(), input.len())));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError::new(
            ParseErrorKind::UnexpectedToken,
            self.span(),
            format!("expected {expected}, found {}", self.peek().describe()),
        )
    }

    fn otimes(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implies()?;
        if self.eat(&Tok::OTimes) {
            Ok(Formula::otimes(lhs, self.otimes()?))
        } else {
            Ok(lhs)
        }
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            Ok(Formula::implies(lhs, self.implies()?))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.until()?;
        while self.eat(&Tok::And) {
            lhs = Formula::and(lhs, self.until()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if self.eat(&Tok::Until) {
            Ok(Formula::until(lhs, self.until()?))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let build: fn(Formula) -> Formula = match self.peek() {
            Tok::Not => Formula::not,
            Tok::Globally => Formula::globally,
            Tok::Finally => Formula::finally,
            Tok::Next => Formula::next,
            _ => return self.primary(),
        };
        let (op, span) = self.bump();
        if op != Tok::Not && !self.peek().starts_formula() {
            // `G & a`, `a | F`: most likely a reserved letter used as an atom.
            let word = &op.describe();
            return Err(ParseError::new(
                ParseErrorKind::ReservedAtom,
                span,
                format!("{word} is a reserved operator and cannot be used as an atom"),
            ));
        }
        Ok(build(self.unary()?))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Tok::Until => Err(ParseError::new(
                ParseErrorKind::ReservedAtom,
                self.span(),
                "`U` is a reserved operator and cannot be used as an atom",
            )),
            Tok::LParen => {
                let (_, open) = self.bump();
                let inner = self.otimes()?;
                match self.peek() {
                    Tok::RParen => {
                        self.bump();
                        Ok(inner)
                    }
                    Tok::Eof => Err(ParseError::new(
                        ParseErrorKind::UnbalancedParen,
                        open,
                        "unclosed `(`",
                    )),
                    _ => Err(self.unexpected("`)`")),
                }
            }
            _ => Err(self.unexpected("a formula")),
        }
    }
}

/// Parses the formula grammar described in the module docs.
pub fn parse_formula(input: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(input)?,
        pos: 0,
    };
    let f = p.otimes()?;
    match p.peek() {
        Tok::Eof => Ok(f),
        Tok::RParen => Err(ParseError::new(
            ParseErrorKind::UnbalancedParen,
            p.span(),
            "unmatched `)`",
        )),
        _ => Err(p.unexpected("an operator or end of input")),
    }
}
