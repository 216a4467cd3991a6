//! Precedence-climbing parser for the formula grammar.
//!
//! Tokens: atoms, `!`, `&`, `|`, `->`, `<->`, parentheses, `true`, `false`.
//! Binding strength `!` > `&` > `|` > `->` > `<->`; `->` and `<->` associate
//! to the right, `&` and `|` to the left.

use super::{Formula, ParseError, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("atom `{name}`"),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }

    /// (precedence, right-associative) for binary operators.
    fn binary(&self) -> Option<(u8, bool)> {
        match self {
            Tok::Iff => Some((1, true)),
            Tok::Implies => Some((2, true)),
            Tok::Or => Some((3, false)),
            Tok::And => Some((4, false)),
            _ => None,
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len()
                    && matches!(bytes[i + 1], b'a'..=b'z' | b'0'..=b'9' | b'_')
                {
                    i += 1;
                }
                match &text[start..=i] {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    name => Tok::Ident(name.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    position: Some(start),
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn error_here(&self, expected: &str) -> ParseError {
        match self.toks.get(self.pos) {
            Some((tok, at)) => ParseError::Syntax {
                position: Some(*at),
                message: format!("expected {expected}, found {}", tok.describe()),
            },
            None => ParseError::Syntax {
                position: None,
                message: format!("expected {expected}"),
            },
        }
    }

    fn expression(&mut self, min_prec: u8) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while let Some((prec, right)) = self.peek().and_then(Tok::binary) {
            if prec < min_prec {
                break;
            }
            let op = self.toks[self.pos].0.clone();
            self.pos += 1;
            let rhs = self.expression(if right { prec } else { prec + 1 })?;
            lhs = match op {
                Tok::And => lhs.and(rhs),
                Tok::Or => lhs.or(rhs),
                Tok::Implies => lhs.implies(rhs),
                Tok::Iff => lhs.iff(rhs),
                _ => unreachable!("binary() admits only binary operators"),
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let Some((tok, at)) = self.toks.get(self.pos).cloned() else {
            return Err(self.error_here("a formula"));
        };
        self.pos += 1;
        match tok {
            Tok::Not => Ok(self.unary()?.not()),
            Tok::True => Ok(Formula::Top),
            Tok::False => Ok(Formula::Bottom),
            Tok::Ident(name) => {
                if self.sig.index_of(&name).is_none() {
                    return Err(ParseError::UnknownAtom { name, position: at });
                }
                Ok(Formula::Atom(name))
            }
            Tok::LParen => {
                let inner = self.expression(0)?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error_here("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.error_here("a formula"))
            }
        }
    }
}

pub(super) fn parse(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, sig };
    let formula = parser.expression(0)?;
    if parser.pos < parser.toks.len() {
        return Err(parser.error_here("end of input"));
    }
    Ok(formula)
}
