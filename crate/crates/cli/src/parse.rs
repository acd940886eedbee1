//! Polynomial expressions: integer and rational literals, variables,
//! `+ - * / ^` and parentheses.
//!
//! Exponents must be non-negative integer literals and division is only by
//! nonzero constants, so every accepted expression is a polynomial.
//! Juxtaposition (`2x`, `x(x+1)`) is rejected rather than read as a product.

use std::fmt;

use galois_core::exact::{MultiPoly, Rational, UniPoly};
use num_traits::Zero;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character column; one past the end for unexpected end of input.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Source text together with the polynomial it denotes.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyExpression {
    pub source: String,
    pub poly: UniPoly,
}

impl PolyExpression {
    pub fn parse(source: &str) -> Result<Self, ParseError> {
        Ok(Self { source: source.to_string(), poly: parse_polynomial(source)? })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(r) => format!("number {r}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Op(c) => format!("'{c}'"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_operand(&self) -> bool {
        matches!(self, Tok::Num(_) | Tok::Ident(_) | Tok::LParen)
    }
}

fn err(column: usize, message: impl Into<String>) -> ParseError {
    ParseError { column, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let int_part: String = chars[start..i].iter().collect();
            let mut value: Rational = if int_part.is_empty() {
                Rational::zero()
            } else {
                Rational::from_integer(int_part.parse().expect("digits"))
            };
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                let fs = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if fs == i {
                    return Err(err(i + 1, "expected digits after '.'"));
                }
                let frac: String = chars[fs..i].iter().collect();
                let ten = Rational::from_integer(10.into());
                value += Rational::from_integer(frac.parse().expect("digits")) / num_traits::pow(ten, frac.len());
            }
            out.push((col, Tok::Num(value)));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
            continue;
        }
        let tok = match c {
            '+' | '*' | '/' | '^' => Tok::Op(c),
            '-' | '\u{2212}' => Tok::Op('-'),
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(err(col, format!("unexpected character '{c}'"))),
        };
        out.push((col, tok));
        i += 1;
    }
    out.push((chars.len() + 1, Tok::End));
    Ok(out)
}

struct Parser<'a, F> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    arity: usize,
    resolve: &'a F,
}

impl<F: Fn(&str) -> Result<usize, String>> Parser<'_, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn col(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.term()?;
        while let Tok::Op(op @ ('+' | '-')) = *self.peek() {
            self.bump();
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match *self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    self.bump();
                    let col = self.col();
                    let d = self.unary()?;
                    if !d.is_constant() {
                        return Err(err(col, "division by a non-constant is not a polynomial"));
                    }
                    let c = d.constant_term();
                    if c.is_zero() {
                        return Err(err(col, "division by zero"));
                    }
                    acc = acc.scale(&c.recip());
                }
                ref t if t.starts_operand() => {
                    return Err(err(self.col(), "implicit multiplication is not allowed; use '*'"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly, ParseError> {
        match *self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let (col, tok) = self.bump();
        let e = match tok {
            Tok::Num(r) if r.is_integer() => r.to_integer(),
            Tok::Op('-') => return Err(err(col, "negative exponents are not allowed")),
            t => return Err(err(col, format!("expected a non-negative integer exponent, found {}", t.describe()))),
        };
        let e: u32 = match u32::try_from(e) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return Err(err(col, format!("exponent exceeds {MAX_EXPONENT}"))),
        };
        if *self.peek() == Tok::Op('^') {
            return Err(err(self.col(), "chained exponents need parentheses"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        let (col, tok) = self.bump();
        match tok {
            Tok::Num(r) => Ok(MultiPoly::constant(self.arity, r)),
            Tok::Ident(name) => {
                let i = (self.resolve)(&name).map_err(|m| err(col, m))?;
                Ok(MultiPoly::var(self.arity, i))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    (_, Tok::RParen) => Ok(inner),
                    (c, t) => Err(err(c, format!("expected ')', found {}", t.describe()))),
                }
            }
            t => Err(err(col, format!("expected a number, variable or '(', found {}", t.describe()))),
        }
    }
}

fn parse_with<F>(text: &str, arity: usize, resolve: &F) -> Result<MultiPoly, ParseError>
where
    F: Fn(&str) -> Result<usize, String>,
{
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, arity, resolve };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out.with_arity(arity)),
        Tok::RParen => Err(err(p.col(), "unmatched ')'")),
        t if t.starts_operand() => Err(err(p.col(), "implicit multiplication is not allowed; use '*'")),
        t => Err(err(p.col(), format!("unexpected {}", t.describe()))),
    }
}

/// Parses a polynomial in `x` and expands it.
pub fn parse_polynomial(text: &str) -> Result<UniPoly, ParseError> {
    let resolve = |name: &str| match name {
        "x" => Ok(0),
        _ => Err(format!("unknown variable '{name}'; only x is allowed")),
    };
    let m = parse_with(text, 1, &resolve)?;
    let deg = m.terms().map(|(e, _)| e[0] as usize).max().unwrap_or(0);
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (e, c) in m.terms() {
        coeffs[e[0] as usize] = c.clone();
    }
    Ok(UniPoly::new(coeffs))
}

/// Parses a polynomial in `r1, r2, ...`. The arity is `vars` when given,
/// otherwise the largest index that appears.
pub fn parse_multivariate(text: &str, vars: Option<usize>) -> Result<MultiPoly, ParseError> {
    let index = |name: &str| -> Result<usize, String> {
        name.strip_prefix('r')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i >= 1 && !name[1..].starts_with('0'))
            .ok_or_else(|| format!("unknown variable '{name}'; expected r1, r2, ..."))
    };
    let seen = lex(text)?
        .iter()
        .filter_map(|(col, t)| match t {
            Tok::Ident(s) => Some(index(s).map_err(|m| err(*col, m))),
            _ => None,
        })
        .collect::<Result<Vec<_>, _>>()?;
    let arity = vars.unwrap_or_else(|| seen.iter().copied().max().unwrap_or(1)).max(1);
    let resolve = |name: &str| {
        let i = index(name)?;
        if i > arity {
            return Err(format!("'{name}' exceeds the {arity} declared variables"));
        }
        Ok(i - 1)
    };
    parse_with(text, arity, &resolve)
}

/// Coefficients as `num/den` strings, low degree first.
pub fn coefficient_strings(p: &UniPoly) -> Vec<String> {
    p.coeffs().iter().map(galois_core::exact::rational_to_string).collect()
}
