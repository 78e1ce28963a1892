//! Lexer and recursive-descent parser for the surface syntax.
//!
//! ```text
//! prog  := { "let" IDENT "=" term ";"? }* term
//! term  := "fun" ( "(" IDENT ":" type ")" )+ "=>" term | app
//! app   := atom+                      (left associative)
//! atom  := IDENT | NUMERAL | "succ" | "fst" | "snd"
//!        | "rec" "[" type "]" | "pair" atom atom | "(" term ")"
//! type  := prod ( "->" type )?        ("->" right associative)
//! prod  := tatom ( "*" prod )?        ("*" binds tighter than "->")
//! tatom := "N" | "(" type ")"
//! ```
//!
//! Application is greedy, so a binding whose successor starts with an atom
//! needs the optional `;` terminator to mark where the binding ends.
//!
//! `let` bindings must be closed; they are inlined into later terms before
//! typechecking, so the kernel only ever sees one closed main term.

use std::fmt;

use crate::syntax::{FiniteType, Term};

/// Numeral literals elaborate into `succ`-towers, so their size is bounded
/// to keep term depth sane.
pub const MAX_NUMERAL: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax {
        line: u32,
        col: u32,
        expected: Vec<String>,
        found: String,
    },
    UnboundName {
        name: String,
        line: u32,
        col: u32,
    },
    NumeralTooLarge {
        line: u32,
        col: u32,
        limit: u64,
    },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax {
                line,
                col,
                expected,
                found,
            } => write!(
                f,
                "{line}:{col}: expected {}, found {found}",
                expected.join(" | ")
            ),
            ParseError::UnboundName { name, line, col } => {
                write!(f, "{line}:{col}: unbound name `{name}`")
            }
            ParseError::NumeralTooLarge { line, col, limit } => {
                write!(f, "{line}:{col}: numeral literal exceeds {limit}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    KwFun,
    KwLet,
    KwRec,
    KwSucc,
    KwPair,
    KwFst,
    KwSnd,
    KwNatType,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Arrow,
    FatArrow,
    Star,
    Eq,
    Semi,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::Num(n) => format!("numeral {n}"),
            Tok::KwFun => "`fun`".into(),
            Tok::KwLet => "`let`".into(),
            Tok::KwRec => "`rec`".into(),
            Tok::KwSucc => "`succ`".into(),
            Tok::KwPair => "`pair`".into(),
            Tok::KwFst => "`fst`".into(),
            Tok::KwSnd => "`snd`".into(),
            Tok::KwNatType => "`N`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = src.chars().peekable();
    let mut line: u32 = 1;
    let mut col: u32 = 1;

    macro_rules! push {
        ($tok:expr, $line:expr, $col:expr) => {
            tokens.push(Token {
                tok: $tok,
                line: $line,
                col: $col,
            })
        };
    }

    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '(' => {
                chars.next();
                col += 1;
                push!(Tok::LParen, tl, tc);
            }
            ')' => {
                chars.next();
                col += 1;
                push!(Tok::RParen, tl, tc);
            }
            '[' => {
                chars.next();
                col += 1;
                push!(Tok::LBracket, tl, tc);
            }
            ']' => {
                chars.next();
                col += 1;
                push!(Tok::RBracket, tl, tc);
            }
            ':' => {
                chars.next();
                col += 1;
                push!(Tok::Colon, tl, tc);
            }
            '*' => {
                chars.next();
                col += 1;
                push!(Tok::Star, tl, tc);
            }
            ';' => {
                chars.next();
                col += 1;
                push!(Tok::Semi, tl, tc);
            }
            '-' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    push!(Tok::Arrow, tl, tc);
                } else {
                    return Err(ParseError::Syntax {
                        line: tl,
                        col: tc,
                        expected: vec!["`->`".into()],
                        found: "`-`".into(),
                    });
                }
            }
            '=' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    push!(Tok::FatArrow, tl, tc);
                } else {
                    push!(Tok::Eq, tl, tc);
                }
            }
            c if c.is_ascii_digit() => {
                let mut value: u64 = 0;
                let mut overflow = false;
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    chars.next();
                    col += 1;
                    value = match value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(u64::from(d as u8 - b'0')))
                    {
                        Some(v) => v,
                        None => {
                            overflow = true;
                            0
                        }
                    };
                }
                if overflow || value > MAX_NUMERAL {
                    return Err(ParseError::NumeralTooLarge {
                        line: tl,
                        col: tc,
                        limit: MAX_NUMERAL,
                    });
                }
                push!(Tok::Num(value), tl, tc);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let tok = match name.as_str() {
                    "fun" => Tok::KwFun,
                    "let" => Tok::KwLet,
                    "rec" => Tok::KwRec,
                    "succ" => Tok::KwSucc,
                    "pair" => Tok::KwPair,
                    "fst" => Tok::KwFst,
                    "snd" => Tok::KwSnd,
                    "N" => Tok::KwNatType,
                    _ => Tok::Ident(name),
                };
                push!(tok, tl, tc);
            }
            other => {
                return Err(ParseError::Syntax {
                    line: tl,
                    col: tc,
                    expected: vec!["a token".into()],
                    found: format!("`{other}`"),
                });
            }
        }
    }
    push!(Tok::Eof, line, col);
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    /// Top-level bindings, already elaborated (and therefore closed).
    lets: Vec<(String, Term)>,
    /// Names of enclosing binders, innermost last.
    binders: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.advance())
        } else {
            Err(self.error(&[expected]))
        }
    }

    fn expect_ident(&mut self) -> Result<(String, u32, u32), ParseError> {
        match self.peek().tok.clone() {
            Tok::Ident(name) => {
                let t = self.advance();
                Ok((name, t.line, t.col))
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    fn parse_program(&mut self) -> Result<Term, ParseError> {
        while self.peek().tok == Tok::KwLet {
            self.advance();
            let (name, _, _) = self.expect_ident()?;
            self.expect(Tok::Eq, "`=`")?;
            let body = self.parse_term()?;
            // Bindings are parsed with no enclosing binders, so any
            // variable reference inside has already been resolved against
            // earlier lets or rejected; the result is closed.
            self.lets.push((name, body));
            if self.peek().tok == Tok::Semi {
                self.advance();
            }
        }
        let main = self.parse_term()?;
        if self.peek().tok != Tok::Eof {
            return Err(self.error(&["end of input"]));
        }
        Ok(main)
    }

    fn parse_term(&mut self) -> Result<Term, ParseError> {
        if self.peek().tok == Tok::KwFun {
            self.advance();
            let mut domains = Vec::new();
            while self.peek().tok == Tok::LParen {
                self.advance();
                let (name, _, _) = self.expect_ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let ty = self.parse_type()?;
                self.expect(Tok::RParen, "`)`")?;
                self.binders.push(name);
                domains.push(ty);
            }
            if domains.is_empty() {
                return Err(self.error(&["`(`"]));
            }
            self.expect(Tok::FatArrow, "`=>`")?;
            let mut body = self.parse_term()?;
            for ty in domains.into_iter().rev() {
                self.binders.pop();
                body = Term::lam(ty, body);
            }
            Ok(body)
        } else {
            self.parse_app()
        }
    }

    fn parse_app(&mut self) -> Result<Term, ParseError> {
        let mut term = self.parse_atom()?;
        while self.starts_atom() {
            let arg = self.parse_atom()?;
            term = Term::app(term, arg);
        }
        Ok(term)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek().tok,
            Tok::Ident(_)
                | Tok::Num(_)
                | Tok::KwSucc
                | Tok::KwFst
                | Tok::KwSnd
                | Tok::KwRec
                | Tok::KwPair
                | Tok::LParen
        )
    }

    fn parse_atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().tok.clone() {
            Tok::Ident(name) => {
                let t = self.advance();
                // Binders shadow lets; innermost binder first.
                if let Some(rev) = self.binders.iter().rev().position(|b| *b == name) {
                    return Ok(Term::Var(rev));
                }
                if let Some((_, body)) = self.lets.iter().find(|(n, _)| *n == name) {
                    return Ok(body.clone());
                }
                Err(ParseError::UnboundName {
                    name,
                    line: t.line,
                    col: t.col,
                })
            }
            Tok::Num(n) => {
                self.advance();
                Ok(Term::numeral(n))
            }
            Tok::KwSucc => {
                self.advance();
                Ok(Term::Succ)
            }
            Tok::KwFst => {
                self.advance();
                Ok(Term::Fst)
            }
            Tok::KwSnd => {
                self.advance();
                Ok(Term::Snd)
            }
            Tok::KwRec => {
                self.advance();
                self.expect(Tok::LBracket, "`[`")?;
                let ty = self.parse_type()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Term::Rec(ty))
            }
            Tok::KwPair => {
                self.advance();
                let fst = self.parse_atom()?;
                let snd = self.parse_atom()?;
                Ok(Term::pair(fst, snd))
            }
            Tok::LParen => {
                self.advance();
                let term = self.parse_term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(term)
            }
            _ => Err(self.error(&[
                "identifier",
                "numeral",
                "`succ`",
                "`fst`",
                "`snd`",
                "`rec`",
                "`pair`",
                "`(`",
                "`fun`",
            ])),
        }
    }

    fn parse_type(&mut self) -> Result<FiniteType, ParseError> {
        let left = self.parse_type_prod()?;
        if self.peek().tok == Tok::Arrow {
            self.advance();
            let right = self.parse_type()?;
            Ok(FiniteType::arrow(left, right))
        } else {
            Ok(left)
        }
    }

    fn parse_type_prod(&mut self) -> Result<FiniteType, ParseError> {
        let left = self.parse_type_atom()?;
        if self.peek().tok == Tok::Star {
            self.advance();
            let right = self.parse_type_prod()?;
            Ok(FiniteType::prod(left, right))
        } else {
            Ok(left)
        }
    }

    fn parse_type_atom(&mut self) -> Result<FiniteType, ParseError> {
        match self.peek().tok {
            Tok::KwNatType => {
                self.advance();
                Ok(FiniteType::Nat)
            }
            Tok::LParen => {
                self.advance();
                let ty = self.parse_type()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(ty)
            }
            _ => Err(self.error(&["`N`", "`(`"])),
        }
    }
}

/// Parse a source program into one closed term, inlining `let` bindings.
pub fn parse(src: &str) -> Result<Term, ParseError> {
    let tokens = lex(src)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        lets: Vec::new(),
        binders: Vec::new(),
    };
    parser.parse_program()
}
