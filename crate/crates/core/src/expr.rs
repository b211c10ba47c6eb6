//! Polynomial expressions as typed on the command line.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := rational | var | '(' expr ')'
//! ```
//!
//! Juxtaposition is rejected, so `x^5y` must be written `x^5*y`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Monomial, Vars};
use crate::scalar::{to_fraction_string, Rational};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    /// Nonnegative literal.
    Num(Rational),
    Var(char),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    pub fn to_poly(&self, vars: Vars) -> LaurentPoly {
        match self {
            PolyExpr::Num(c) => LaurentPoly::constant(c.clone()),
            PolyExpr::Var(v) => {
                let mut e = [0, 0];
                e[vars.index_of(*v).expect("variable checked by the parser")] = 1;
                LaurentPoly::monomial(Monomial(e))
            }
            PolyExpr::Neg(a) => -a.to_poly(vars),
            PolyExpr::Add(a, b) => a.to_poly(vars) + b.to_poly(vars),
            PolyExpr::Sub(a, b) => a.to_poly(vars) - b.to_poly(vars),
            PolyExpr::Mul(a, b) => a.to_poly(vars) * b.to_poly(vars),
            PolyExpr::Pow(a, n) => a.to_poly(vars).pow(*n),
        }
    }

    fn level(&self) -> u8 {
        match self {
            PolyExpr::Add(..) | PolyExpr::Sub(..) | PolyExpr::Neg(_) => 1,
            PolyExpr::Mul(..) => 2,
            PolyExpr::Pow(..) => 3,
            PolyExpr::Num(_) | PolyExpr::Var(_) => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, need: u8) -> fmt::Result {
        if self.level() < need {
            f.write_str("(")?;
            self.write_at(f, 1)?;
            return f.write_str(")");
        }
        match self {
            PolyExpr::Num(c) => f.write_str(&literal(c)),
            PolyExpr::Var(v) => write!(f, "{v}"),
            PolyExpr::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, 2)
            }
            PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(if matches!(self, PolyExpr::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 2)
            }
            PolyExpr::Mul(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("*")?;
                b.write_at(f, 3)
            }
            PolyExpr::Pow(a, n) => {
                a.write_at(f, 4)?;
                write!(f, "^{n}")
            }
        }
    }
}

fn literal(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        to_fraction_string(c)
    }
}

/// Prints with the fewest parentheses that still parse back to the same tree.
impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 1)
    }
}

pub fn parse_poly(src: &str, vars: Vars) -> Result<PolyExpr> {
    let mut p = Parser {
        tokens: lex(src, vars)?,
        pos: 0,
    };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(t) => Err(p.unexpected(t)),
    }
}

/// Parses and evaluates in one step.
pub fn parse_laurent(src: &str, vars: Vars) -> Result<LaurentPoly> {
    Ok(parse_poly(src, vars)?.to_poly(vars))
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Var(char),
    Op(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(src: &str, vars: Vars) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut tokens = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (start_line, start_col) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let digits = |k: &mut usize, col: &mut usize| {
                let from = *k;
                while *k < chars.len() && chars[*k].is_ascii_digit() {
                    *k += 1;
                    *col += 1;
                }
                chars[from..*k].iter().collect::<String>()
            };
            let num: BigInt = digits(&mut k, &mut col).parse().expect("digits");
            let mut value = Rational::from_integer(num);
            if k < chars.len() && chars[k] == '/' {
                k += 1;
                col += 1;
                if k >= chars.len() || !chars[k].is_ascii_digit() {
                    return Err(syntax(line, col, "expected a denominator after '/'"));
                }
                let den: BigInt = digits(&mut k, &mut col).parse().expect("digits");
                if den.is_zero() {
                    return Err(syntax(start_line, start_col, "zero denominator"));
                }
                value /= Rational::from_integer(den);
            }
            Tok::Num(value)
        } else if c.is_alphabetic() || c == '_' {
            if vars.index_of(c).is_none() {
                let from = k;
                while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                let [a, b] = vars.names();
                return Err(Error::UnknownVariable {
                    name: chars[from..k].iter().collect(),
                    line,
                    column: col,
                    allowed: format!("{a}, {b}"),
                });
            }
            k += 1;
            col += 1;
            Tok::Var(c)
        } else if "+-*^()".contains(c) {
            k += 1;
            col += 1;
            Tok::Op(c)
        } else {
            return Err(syntax(line, col, format!("unexpected character '{c}'")));
        };
        tokens.push(Token {
            tok,
            line: start_line,
            column: start_col,
        });
    }
    tokens.push(Token {
        tok: Tok::Op('$'),
        line,
        column: col,
    });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).filter(|t| t.tok != Tok::Op('$'))
    }

    fn eof(&self) -> &Token {
        self.tokens.last().expect("sentinel")
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek().is_some_and(|t| t.tok == Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, t: &Token) -> Error {
        let message = match &t.tok {
            Tok::Num(_) | Tok::Var(_) | Tok::Op('(') => {
                "implicit multiplication is not allowed; write '*' between factors".to_string()
            }
            Tok::Op(c) => format!("unexpected '{c}'"),
        };
        syntax(t.line, t.column, message)
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut e = if self.eat('-') {
            PolyExpr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.eat('+') {
                e = PolyExpr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = PolyExpr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut e = self.factor()?;
        while self.eat('*') {
            e = PolyExpr::Mul(Box::new(e), Box::new(self.factor()?));
        }
        Ok(e)
    }

    fn factor(&mut self) -> Result<PolyExpr> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let t = self.peek().unwrap_or(self.eof()).clone();
        match &t.tok {
            Tok::Num(n) if n.is_integer() => {
                self.pos += 1;
                let n = u32::try_from(n.numer())
                    .ok()
                    .filter(|&n| n <= MAX_EXPONENT)
                    .ok_or_else(|| {
                        syntax(t.line, t.column, format!("exponent larger than {MAX_EXPONENT}"))
                    })?;
                Ok(PolyExpr::Pow(Box::new(base), n))
            }
            _ => Err(syntax(
                t.line,
                t.column,
                "expected a nonnegative integer exponent after '^'",
            )),
        }
    }

    fn base(&mut self) -> Result<PolyExpr> {
        let Some(t) = self.peek().cloned() else {
            let end = self.eof();
            return Err(syntax(end.line, end.column, "unexpected end of input"));
        };
        self.pos += 1;
        match t.tok {
            Tok::Num(c) => Ok(PolyExpr::Num(c)),
            Tok::Var(v) => Ok(PolyExpr::Var(v)),
            Tok::Op('(') => {
                let e = self.expr()?;
                if self.eat(')') {
                    Ok(e)
                } else {
                    let at = self.peek().unwrap_or(self.eof()).clone();
                    Err(syntax(at.line, at.column, "expected ')'"))
                }
            }
            Tok::Op(c) => Err(syntax(t.line, t.column, format!("unexpected '{c}'"))),
        }
    }
}
