//! Text syntax for polynomials and rational functions.
//!
//! Identifiers name registry variables, `^` takes an integer power, `*` is
//! optional between factors (`2x y` is `2*x*y`), and numeric literals are
//! read exactly: `1.56` is `39/25`.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use super::{rat, Poly, PolyError, RatFun, Registry};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownSymbol(String),
    Unsupported(String),
    NotPolynomial,
    Algebra(PolyError),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::UnknownSymbol(s) => write!(f, "undeclared symbol `{s}`"),
            ParseErrorKind::Unsupported(s) => write!(f, "unsupported expression: {s}"),
            ParseErrorKind::NotPolynomial => write!(f, "expression is not a polynomial"),
            ParseErrorKind::Algebra(e) => write!(f, "{e}"),
        }
    }
}

/// Error with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
    /// No whitespace between this token and the previous one.
    glued: bool,
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut glued = false;
    let err = |col: usize, m: String| ParseError {
        line,
        column: col0 + col + 1,
        kind: ParseErrorKind::Syntax(m),
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            glued = false;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let s: String = chars[start..i].iter().collect();
            if s.matches('.').count() > 1 {
                return Err(err(start, format!("malformed number `{s}`")));
            }
            Tok::Num(s)
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' | '\u{2212}' => Tok::Minus,
                '*' | '\u{b7}' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => return Err(err(start, format!("unexpected character `{c}`"))),
            }
        };
        out.push(Token {
            tok,
            col: start,
            glued,
        });
        glued = true;
    }
    out.push(Token {
        tok: Tok::End,
        col: chars.len(),
        glued: false,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    registry: &'a Registry,
    line: usize,
    col0: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        self.error_at(self.pos, kind)
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.col0 + self.toks[pos].col + 1,
            kind,
        }
    }

    fn algebra(&self, e: PolyError) -> ParseError {
        self.error(ParseErrorKind::Algebra(e))
    }

    fn expr(&mut self) -> Result<RatFun, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs).map_err(|e| self.algebra(e))?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs).map_err(|e| self.algebra(e))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs).map_err(|e| self.algebra(e))?;
                }
                Tok::Slash => {
                    let at = self.pos;
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc
                        .div(&rhs)
                        .map_err(|e| self.error_at(at, ParseErrorKind::Algebra(e)))?;
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen => {
                    let rhs = self.power()?;
                    acc = acc.mul(&rhs).map_err(|e| self.algebra(e))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFun, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.pos += 1;
        let exp_pos = self.pos;
        let e = self.exponent()?;
        base.powi(e)
            .map_err(|err| self.error_at(exp_pos, ParseErrorKind::Algebra(err)))
    }

    fn exponent(&mut self) -> Result<i32, ParseError> {
        let mut neg = false;
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.pos += 1;
        }
        if *self.peek() == Tok::Minus {
            neg = true;
            self.pos += 1;
        }
        let v = match self.peek().clone() {
            Tok::Num(s) if s.bytes().all(|b| b.is_ascii_digit()) => s
                .parse::<i32>()
                .map_err(|_| self.error(ParseErrorKind::Syntax("exponent too large".into())))?,
            Tok::Ident(name) => {
                return Err(self.error(ParseErrorKind::Unsupported(format!(
                    "symbolic exponent `{name}`"
                ))))
            }
            Tok::Num(s) => {
                return Err(self.error(ParseErrorKind::Unsupported(format!(
                    "non-integer exponent `{s}`"
                ))))
            }
            _ => return Err(self.error(ParseErrorKind::Syntax("expected integer exponent".into()))),
        };
        self.pos += 1;
        if paren {
            self.expect_rparen()?;
        }
        Ok(if neg { -v } else { v })
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::RParen {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(ParseErrorKind::Syntax("expected `)`".into())))
        }
    }

    fn atom(&mut self) -> Result<RatFun, ParseError> {
        match self.peek().clone() {
            Tok::Num(s) => {
                let v = rat::parse(&s).ok_or_else(|| {
                    self.error(ParseErrorKind::Syntax(format!("malformed number `{s}`")))
                })?;
                self.pos += 1;
                Ok(RatFun::constant(self.registry, v))
            }
            Tok::Ident(name) => {
                let called = self.toks[self.pos + 1].tok == Tok::LParen && self.toks[self.pos + 1].glued;
                match self.registry.index_of(&name) {
                    Some(i) => {
                        self.pos += 1;
                        Ok(RatFun::from_poly(Poly::var(self.registry, i)))
                    }
                    None if called => Err(self.error(ParseErrorKind::Unsupported(format!(
                        "function `{name}` (only rational expressions are allowed)"
                    )))),
                    None => Err(self.error(ParseErrorKind::UnknownSymbol(name))),
                }
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::End => Err(self.error(ParseErrorKind::Syntax("unexpected end of expression".into()))),
            t => Err(self.error(ParseErrorKind::Syntax(format!("unexpected token {t:?}")))),
        }
    }
}

/// Parses a rational expression; positions in errors are offset by `line`/`col0`.
pub fn parse_ratfun_at(
    text: &str,
    registry: &Registry,
    line: usize,
    col0: usize,
) -> Result<RatFun, ParseError> {
    let toks = tokenize(text, line, col0)?;
    let mut p = Parser {
        toks,
        pos: 0,
        registry,
        line,
        col0,
    };
    let value = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(ParseErrorKind::Syntax("unexpected trailing input".into())));
    }
    Ok(value)
}

pub fn parse_ratfun(text: &str, registry: &Registry) -> Result<RatFun, ParseError> {
    parse_ratfun_at(text, registry, 1, 0)
}

/// Parses a polynomial. An equation `lhs = rhs` is read as `lhs - rhs`.
pub fn parse_poly(text: &str, registry: &Registry) -> Result<Poly, ParseError> {
    parse_poly_at(text, registry, 1, 0)
}

pub fn parse_poly_at(
    text: &str,
    registry: &Registry,
    line: usize,
    col0: usize,
) -> Result<Poly, ParseError> {
    let r = match text.split_once('=') {
        Some((lhs, rhs)) => {
            let l = parse_ratfun_at(lhs, registry, line, col0)?;
            let r = parse_ratfun_at(rhs, registry, line, col0 + lhs.chars().count() + 1)?;
            l.sub(&r).map_err(|e| ParseError {
                line,
                column: col0 + 1,
                kind: ParseErrorKind::Algebra(e),
            })?
        }
        None => parse_ratfun_at(text, registry, line, col0)?,
    };
    match r.as_poly() {
        Some(p) => {
            let c = r.den().constant_term();
            debug_assert!(!c.is_zero());
            Ok(p.scale(&c.recip()))
        }
        None => Err(ParseError {
            line,
            column: col0 + 1,
            kind: ParseErrorKind::NotPolynomial,
        }),
    }
}

/// Identifiers in order of first appearance (function names excluded).
pub fn identifiers(text: &str) -> Result<Vec<String>, ParseError> {
    let toks = tokenize(text, 1, 0)?;
    let mut out: Vec<String> = Vec::new();
    for (k, t) in toks.iter().enumerate() {
        if let Tok::Ident(name) = &t.tok {
            let called = toks[k + 1].tok == Tok::LParen && toks[k + 1].glued;
            if !called && !out.contains(name) {
                out.push(name.clone());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> Registry {
        Registry::new(["x", "y", "mu"]).unwrap()
    }

    #[test]
    fn implicit_multiplication_and_precedence() {
        let r = reg();
        let a = parse_poly("2x y - x^2 + 3(y+1)", &r).unwrap();
        let b = parse_poly("2*x*y - (x^2) + 3*y + 3", &r).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("-x^2", &r).unwrap(), -Poly::var(&r, 0).pow(2));
        assert_eq!(parse_poly("2^3", &r).unwrap(), Poly::constant(&r, rat::int(8)));
        assert_eq!(parse_poly("x - -y", &r).unwrap(), parse_poly("x+y", &r).unwrap());
    }

    #[test]
    fn decimals_and_equations() {
        let r = reg();
        let p = parse_poly("2.00 = x^2 + x", &r).unwrap();
        assert_eq!(p, parse_poly("2 - x^2 - x", &r).unwrap());
        let p = parse_poly("-1.50 = 2x y + y", &r).unwrap();
        assert_eq!(p.constant_term(), rat::frac(-3, 2));
    }

    #[test]
    fn rational_expressions() {
        let r = reg();
        let f = parse_ratfun("1/x + mu", &r).unwrap();
        assert_eq!(f.to_string(), "(x*mu + 1)/(x)");
        let g = parse_ratfun("x^(-2)", &r).unwrap();
        assert_eq!(g, parse_ratfun("1/(x*x)", &r).unwrap());
        assert!(matches!(
            parse_poly("1/x", &r).unwrap_err().kind,
            ParseErrorKind::NotPolynomial
        ));
    }

    #[test]
    fn errors_carry_positions() {
        let r = reg();
        let e = parse_ratfun("x + sin(y)", &r).unwrap_err();
        assert_eq!(e.column, 5);
        assert!(matches!(e.kind, ParseErrorKind::Unsupported(_)));
        let e = parse_ratfun("x + z", &r).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownSymbol("z".into()));
        assert_eq!(e.column, 5);
        let e = parse_ratfun("x + (y", &r).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        let e = parse_ratfun("x^y", &r).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Unsupported(_)));
        let e = parse_ratfun("x/(y-y)", &r).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Algebra(PolyError::ZeroDenominator)));
        let e = parse_ratfun("x $ y", &r).unwrap_err();
        assert_eq!(e.column, 3);
    }

    #[test]
    fn identifier_scan() {
        assert_eq!(
            identifiers("x_0^2 + 3 mu x_0 - f(x_1)").unwrap(),
            vec!["x_0".to_string(), "mu".into(), "x_1".into()]
        );
    }

    #[test]
    fn scientific_literals() {
        let r = reg();
        assert_eq!(
            parse_poly("2.5e-1 x", &r).unwrap(),
            parse_poly("1/4 x", &r).unwrap()
        );
        // `e` not followed by digits is not an exponent
        let r2 = Registry::new(["e"]).unwrap();
        assert_eq!(parse_poly("2e", &r2).unwrap(), parse_poly("2*e", &r2).unwrap());
    }
}
