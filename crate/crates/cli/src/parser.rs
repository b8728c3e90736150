//! Polynomial expression parser.
//!
//! The grammar is deliberately small:
//!
//! ```text
//! expr   := '-'? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := var | rational | '(' expr ')'
//! ```
//!
//! Variables come from the ambient coordinate ring, coefficients are
//! integer or `p/q` rational literals, and multiplication is always
//! written out: `x1 x2` is a syntax error, not a product. Whitespace is
//! insignificant. Every error carries the 1-based column it happened at.

use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use k3fibre_core::poly::VarSet;
use k3fibre_core::{Coeff, MultiPoly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exponents past this bound are a typo, not a curve.
const MAX_EXPONENT: u32 = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character column in the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Number(Rational),
    Ident(String),
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Plus => "`+`".to_string(),
            TokenKind::Minus => "`-`".to_string(),
            TokenKind::Star => "`*`".to_string(),
            TokenKind::Caret => "`^`".to_string(),
            TokenKind::LParen => "`(`".to_string(),
            TokenKind::RParen => "`)`".to_string(),
            TokenKind::Number(n) => format!("the number `{}`", n),
            TokenKind::Ident(name) => format!("`{}`", name),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Token {
    kind: TokenKind,
    position: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut at = 0usize;
    while at < chars.len() {
        let c = chars[at];
        let position = at + 1;
        if c.is_whitespace() {
            at += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(TokenKind::Plus),
            '-' => Some(TokenKind::Minus),
            '*' => Some(TokenKind::Star),
            '^' => Some(TokenKind::Caret),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            _ => None,
        };
        if let Some(kind) = simple {
            tokens.push(Token { kind, position });
            at += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = at;
            while at < chars.len() && chars[at].is_ascii_digit() {
                at += 1;
            }
            let numer: String = chars[start..at].iter().collect();
            let numer = BigInt::from_str(&numer).expect("digits form an integer");
            let mut denom = BigInt::one();
            if at < chars.len() && chars[at] == '/' {
                at += 1;
                let denom_start = at;
                while at < chars.len() && chars[at].is_ascii_digit() {
                    at += 1;
                }
                if at == denom_start {
                    return err(denom_start + 1, "expected digits after `/`");
                }
                let text: String = chars[denom_start..at].iter().collect();
                denom = BigInt::from_str(&text).expect("digits form an integer");
                if denom.is_zero() {
                    return err(denom_start + 1, "denominator is zero");
                }
            }
            tokens.push(Token {
                kind: TokenKind::Number(Rational::new(numer, denom)),
                position,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = at;
            while at < chars.len() && chars[at].is_ascii_alphanumeric() {
                at += 1;
            }
            let name: String = chars[start..at].iter().collect();
            tokens.push(Token {
                kind: TokenKind::Ident(name),
                position,
            });
            continue;
        }
        return err(position, format!("unexpected character `{}`", c));
    }
    Ok(tokens)
}

/// Abstract syntax of a polynomial expression.
#[derive(Debug, Clone, PartialEq)]
pub enum PolyExpr {
    Var(usize),
    Const(Rational),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    pub fn to_poly(&self, vars: &Rc<VarSet>) -> MultiPoly {
        match self {
            PolyExpr::Var(i) => MultiPoly::var(vars, *i),
            PolyExpr::Const(r) => MultiPoly::constant(vars, Coeff::Rat(r.clone())),
            PolyExpr::Neg(e) => e.to_poly(vars).scale(&Coeff::Rat(-Rational::one())),
            PolyExpr::Add(a, b) => a.to_poly(vars).add(&b.to_poly(vars)),
            PolyExpr::Sub(a, b) => a.to_poly(vars).sub(&b.to_poly(vars)),
            PolyExpr::Mul(a, b) => a.to_poly(vars).mul(&b.to_poly(vars)),
            PolyExpr::Pow(e, n) => e.to_poly(vars).pow(*n),
        }
    }
}

struct Parser<'a> {
    tokens: Vec<Token>,
    at: usize,
    vars: &'a Rc<VarSet>,
    input_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.at).cloned();
        if token.is_some() {
            self.at += 1;
        }
        token
    }

    fn end_position(&self) -> usize {
        self.input_len + 1
    }

    fn allowed_vars(&self) -> String {
        (0..self.vars.len())
            .map(|i| self.vars.name(i))
            .collect::<Vec<_>>()
            .join(", ")
    }

    fn expr(&mut self) -> Result<PolyExpr, ParseError> {
        let mut acc = if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Minus)) {
            self.bump();
            PolyExpr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek().map(|t| t.kind.clone()) {
                Some(TokenKind::Plus) => {
                    self.bump();
                    acc = PolyExpr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(TokenKind::Minus) => {
                    self.bump();
                    acc = PolyExpr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Star)) {
            self.bump();
            acc = PolyExpr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyExpr, ParseError> {
        let base = self.base()?;
        if !matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Caret)) {
            return Ok(base);
        }
        self.bump();
        let token = match self.bump() {
            Some(token) => token,
            None => {
                return err(self.end_position(), "expected an exponent after `^`");
            }
        };
        match token.kind {
            TokenKind::Number(n) if n.is_integer() => {
                let exponent = u32::try_from(n.to_integer()).unwrap_or(u32::MAX);
                if exponent > MAX_EXPONENT {
                    return err(
                        token.position,
                        format!("exponent exceeds the supported bound {}", MAX_EXPONENT),
                    );
                }
                Ok(PolyExpr::Pow(Box::new(base), exponent))
            }
            _ => err(
                token.position,
                "the exponent must be a non-negative integer literal",
            ),
        }
    }

    fn base(&mut self) -> Result<PolyExpr, ParseError> {
        let token = match self.bump() {
            Some(token) => token,
            None => return err(self.end_position(), "expected a variable, number or `(`"),
        };
        match token.kind {
            TokenKind::Number(n) => Ok(PolyExpr::Const(n)),
            TokenKind::Ident(name) => {
                for i in 0..self.vars.len() {
                    if self.vars.name(i) == name {
                        return Ok(PolyExpr::Var(i));
                    }
                }
                err(
                    token.position,
                    format!(
                        "unknown variable `{}`; expected one of {}",
                        name,
                        self.allowed_vars()
                    ),
                )
            }
            TokenKind::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token {
                        kind: TokenKind::RParen,
                        ..
                    }) => Ok(inner),
                    Some(token) => err(
                        token.position,
                        format!("expected `)`, found {}", token.kind.describe()),
                    ),
                    None => err(self.end_position(), "expected `)` before the end of input"),
                }
            }
            kind => err(
                token.position,
                format!("expected a variable, number or `(`, found {}", kind.describe()),
            ),
        }
    }
}

/// Parse an expression into the abstract syntax tree.
pub fn parse_expr(text: &str, vars: &Rc<VarSet>) -> Result<PolyExpr, ParseError> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return err(1, "empty input");
    }
    let mut parser = Parser {
        tokens,
        at: 0,
        vars,
        input_len: text.chars().count(),
    };
    let expr = parser.expr()?;
    if let Some(token) = parser.peek() {
        let hint = match token.kind {
            TokenKind::Ident(_) | TokenKind::Number(_) | TokenKind::LParen => {
                "; multiplication must be written with `*`"
            }
            _ => "",
        };
        return err(
            token.position,
            format!("unexpected {}{}", token.kind.describe(), hint),
        );
    }
    Ok(expr)
}

/// Parse an expression all the way to a polynomial in the given ring.
pub fn parse_poly(text: &str, vars: &Rc<VarSet>) -> Result<MultiPoly, ParseError> {
    Ok(parse_expr(text, vars)?.to_poly(vars))
}

/// Parse a comma separated point, e.g. `1,-3/2`.
pub fn parse_point(text: &str) -> Result<Vec<Rational>, ParseError> {
    let mut coords = Vec::new();
    let mut consumed = 0usize;
    for piece in text.split(',') {
        let position = consumed + 1;
        consumed += piece.chars().count() + 1;
        let trimmed = piece.trim();
        if trimmed.is_empty() {
            return err(position, "empty coordinate");
        }
        match Rational::from_str(trimmed) {
            Ok(r) => coords.push(r),
            Err(_) => {
                return err(
                    position,
                    format!("invalid coordinate `{}`; expected a rational like -3/2", trimmed),
                )
            }
        }
    }
    Ok(coords)
}
