//! Text syntax for propositions, words and syllogisms.
//!
//! ```text
//! prop      := MOOD '(' var ',' var ')'      MOOD := A | E | I | O
//! atom      := prop ['~']
//! word      := atom ('#' atom)*
//! syllogism := word '|=' prop
//! ```
//!
//! Atoms of a word are written first premise first; [`parse_word`] stores
//! them reversed, in chain order.

use thiserror::Error;

use crate::model::{Atom, Mood, Proposition, TermVariable, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    LParen,
    RParen,
    Comma,
    Tilde,
    Hash,
    Turnstile,
    End,
}

impl Tok<'_> {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Hash => "`#`".into(),
            Tok::Turnstile => "`|=`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { text, pos: 0 }
    }

    fn next(&mut self) -> Result<(usize, Tok<'a>), ParseError> {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(start) else {
            return Ok((start, Tok::End));
        };
        self.pos += 1;
        let tok = match b {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'~' => Tok::Tilde,
            b'#' => Tok::Hash,
            b'|' if bytes.get(start + 1) == Some(&b'=') => {
                self.pos += 1;
                Tok::Turnstile
            }
            b if b.is_ascii_alphabetic() => {
                while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                    self.pos += 1;
                }
                Tok::Ident(&self.text[start..self.pos])
            }
            _ => {
                let ch = self.text[start..].chars().next().unwrap_or('?');
                return Err(ParseError { offset: start, message: format!("unexpected character {ch:?}") });
            }
        };
        Ok((start, tok))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<(usize, Tok<'a>)>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { lexer: Lexer::new(text), peeked: None }
    }

    fn peek(&mut self) -> Result<&(usize, Tok<'a>), ParseError> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next()?);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn bump(&mut self) -> Result<(usize, Tok<'a>), ParseError> {
        self.peek()?;
        Ok(self.peeked.take().unwrap())
    }

    fn expect(&mut self, want: Tok<'static>) -> Result<usize, ParseError> {
        let (offset, tok) = self.bump()?;
        if tok == want {
            Ok(offset)
        } else {
            Err(ParseError { offset, message: format!("expected {}, found {}", want.describe(), tok.describe()) })
        }
    }

    fn variable(&mut self) -> Result<TermVariable, ParseError> {
        match self.bump()? {
            (offset, Tok::Ident(name)) => TermVariable::parse(name)
                .ok_or_else(|| ParseError { offset, message: format!("invalid variable name `{name}`") }),
            (offset, tok) => Err(ParseError { offset, message: format!("expected a variable, found {}", tok.describe()) }),
        }
    }

    fn proposition(&mut self) -> Result<Proposition, ParseError> {
        let mood = match self.bump()? {
            (offset, Tok::Ident(name)) => {
                let mut chars = name.chars();
                match (chars.next().and_then(Mood::from_letter), chars.next()) {
                    (Some(mood), None) => mood,
                    _ => {
                        return Err(ParseError {
                            offset,
                            message: format!("expected a mood A, E, I or O, found `{name}`"),
                        })
                    }
                }
            }
            (offset, tok) => {
                return Err(ParseError { offset, message: format!("expected a mood, found {}", tok.describe()) })
            }
        };
        self.expect(Tok::LParen)?;
        let subject = self.variable()?;
        self.expect(Tok::Comma)?;
        let predicate = self.variable()?;
        self.expect(Tok::RParen)?;
        Ok(Proposition::new(mood, subject, predicate))
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let prop = self.proposition()?;
        let dual = if self.peek()?.1 == Tok::Tilde {
            self.bump()?;
            true
        } else {
            false
        };
        Ok(Atom { prop, dual })
    }

    fn written_atoms(&mut self) -> Result<Vec<Atom>, ParseError> {
        let mut atoms = vec![self.atom()?];
        while self.peek()?.1 == Tok::Hash {
            self.bump()?;
            atoms.push(self.atom()?);
        }
        Ok(atoms)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.expect(Tok::End).map(|_| ())
    }
}

pub fn parse_proposition(text: &str) -> Result<Proposition, ParseError> {
    let mut p = Parser::new(text);
    let prop = p.proposition()?;
    p.finish()?;
    Ok(prop)
}

pub fn parse_word(text: &str) -> Result<Word, crate::Error> {
    let mut p = Parser::new(text);
    let atoms = p.written_atoms()?;
    p.finish()?;
    Ok(Word::from_written(atoms)?)
}

/// Splits `premises |= conclusion`.
pub fn parse_syllogism(text: &str) -> Result<(Word, Proposition), crate::Error> {
    let mut p = Parser::new(text);
    let atoms = p.written_atoms()?;
    p.expect(Tok::Turnstile)?;
    let conclusion = p.proposition()?;
    p.finish()?;
    Ok((Word::from_written(atoms)?, conclusion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CompositionError;

    #[test]
    fn barbara() {
        let (premises, conclusion) = parse_syllogism("A(m,p) # A(s,m) |= A(s,p)").unwrap();
        assert_eq!(premises.len(), 2);
        assert_eq!(premises.atoms()[0].to_string(), "A(s,m)");
        assert_eq!(conclusion.to_string(), "A(s,p)");
    }

    #[test]
    fn whitespace_is_insignificant() {
        let (w, c) = parse_syllogism("  A( m ,p )#A(s,m)|=A(s , p)").unwrap();
        assert_eq!(w.to_string(), "A(m,p) # A(s,m)");
        assert_eq!(c.to_string(), "A(s,p)");
    }

    #[test]
    fn dual_marker() {
        let w = parse_word("E(m,s)~").unwrap();
        assert!(w.atoms()[0].dual);
        assert_eq!(w.atoms()[0].prop.to_string(), "E(m,s)");
    }

    #[test]
    fn composition_error() {
        assert!(matches!(
            parse_word("A(a,b) # A(c,d)"),
            Err(crate::Error::Composition(CompositionError::Mismatch { junction: 1, .. }))
        ));
    }

    #[test]
    fn error_offsets() {
        let err = parse_syllogism("A(x,y |= A(x,y)").unwrap_err();
        match err {
            crate::Error::Parse(e) => assert_eq!(e.offset, 6),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_proposition("Q(x,y)").unwrap_err();
        assert_eq!(err.offset, 0);
        let err = parse_proposition("A(x,y) extra").unwrap_err();
        assert_eq!(err.offset, 7);
        let err = parse_word("A(x,y) $").unwrap_err();
        assert!(matches!(err, crate::Error::Parse(ParseError { offset: 7, .. })));
        assert!(parse_syllogism("A(x,y) |= A(x,y)~").is_err());
    }
}
