//! Parser for the prefix s-expression syntax printed by `Expr`'s `Display`.
//!
//! Grammar: atoms are integers, `p/q` rationals, or variables `xN` (N ≥ 1);
//! lists are `(+ e…)`, `(* e…)`, `(- e)` (negation), `(- a b…)`
//! (subtraction), `(/ a b)` and `(exp e)`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Expr, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected `{token}` at offset {offset}")]
    Unexpected { token: String, offset: usize },
    #[error("unknown operator `{op}` at offset {offset}")]
    UnknownOperator { op: String, offset: usize },
    #[error("operator `{op}` at offset {offset} expects {expected} argument(s), found {found}")]
    Arity {
        op: String,
        offset: usize,
        expected: &'static str,
        found: usize,
    },
    #[error("invalid atom `{token}` at offset {offset}")]
    BadAtom { token: String, offset: usize },
    #[error("division by the zero constant at offset {offset}")]
    ZeroDenominator { offset: usize },
    #[error("trailing input at offset {offset}")]
    Trailing { offset: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(s: &str) -> Vec<(Tok<'_>, usize)> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => {
                out.push((Tok::Open, i));
                i += 1;
            }
            b')' => {
                out.push((Tok::Close, i));
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && bytes[i] != b'('
                    && bytes[i] != b')'
                {
                    i += 1;
                }
                out.push((Tok::Atom(&s[start..i]), start));
            }
        }
    }
    out
}

struct Parser<'a> {
    toks: Vec<(Tok<'a>, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn expr(&mut self) -> Result<Expr, ParseError> {
        let (tok, offset) = self.toks.get(self.pos).cloned().ok_or(ParseError::Eof)?;
        self.pos += 1;
        match tok {
            Tok::Atom(a) => atom(a, offset),
            Tok::Close => Err(ParseError::Unexpected {
                token: ")".into(),
                offset,
            }),
            Tok::Open => {
                let (op_tok, op_off) = self.toks.get(self.pos).cloned().ok_or(ParseError::Eof)?;
                self.pos += 1;
                let op = match op_tok {
                    Tok::Atom(a) => a,
                    Tok::Open => {
                        return Err(ParseError::Unexpected {
                            token: "(".into(),
                            offset: op_off,
                        })
                    }
                    Tok::Close => {
                        return Err(ParseError::Unexpected {
                            token: ")".into(),
                            offset: op_off,
                        })
                    }
                };
                let mut args = Vec::new();
                loop {
                    match self.toks.get(self.pos) {
                        None => return Err(ParseError::Eof),
                        Some((Tok::Close, _)) => {
                            self.pos += 1;
                            break;
                        }
                        Some(_) => args.push(self.expr()?),
                    }
                }
                build(op, op_off, args)
            }
        }
    }
}

fn arity(op: &str, offset: usize, expected: &'static str, found: usize) -> ParseError {
    ParseError::Arity {
        op: op.to_string(),
        offset,
        expected,
        found,
    }
}

fn build(op: &str, offset: usize, mut args: Vec<Expr>) -> Result<Expr, ParseError> {
    match op {
        "+" => Ok(Expr::sum(args)),
        "*" => Ok(Expr::product(args)),
        "-" => match args.len() {
            0 => Err(arity(op, offset, "at least 1", 0)),
            1 => Ok(Expr::neg(args.pop().unwrap())),
            _ => {
                let head = args.remove(0);
                Ok(Expr::sum(
                    core::iter::once(head).chain(args.into_iter().map(Expr::neg)),
                ))
            }
        },
        "/" => {
            if args.len() != 2 {
                return Err(arity(op, offset, "2", args.len()));
            }
            let b = args.pop().unwrap();
            let a = args.pop().unwrap();
            Expr::try_quotient(a, b).ok_or(ParseError::ZeroDenominator { offset })
        }
        "exp" => {
            if args.len() != 1 {
                return Err(arity(op, offset, "1", args.len()));
            }
            Ok(Expr::exp(args.pop().unwrap()))
        }
        _ => Err(ParseError::UnknownOperator {
            op: op.to_string(),
            offset,
        }),
    }
}

fn atom(a: &str, offset: usize) -> Result<Expr, ParseError> {
    let bad = || ParseError::BadAtom {
        token: a.to_string(),
        offset,
    };
    if let Some(idx) = a.strip_prefix('x') {
        if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let i: usize = idx.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        return Ok(Expr::var(i));
    }
    a.parse::<Rational>().map(Expr::Const).map_err(|_| bad())
}

/// Parse a single expression.
pub fn parse(s: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(s),
        pos: 0,
    };
    let e = p.expr()?;
    if let Some((_, offset)) = p.toks.get(p.pos) {
        return Err(ParseError::Trailing { offset: *offset });
    }
    Ok(e)
}

impl core::str::FromStr for Expr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
