//! Polynomial expressions: `+ - * / ^`, parentheses, integer literals,
//! parameter and variable names. Precedence is `^` over unary minus over
//! `* /` over `+ -`. There is no implicit multiplication.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::{Backend, Coeff};
use crate::morphism::invert_monomial;
use crate::ring::{Presentation, SkewPoly};

/// Failure inside one expression; `column` is 1-based in characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub column: usize,
    pub message: String,
    /// True for well-formed expressions that do not fit the ring.
    pub schema: bool,
}

impl ExprError {
    fn syntax(column: usize, message: impl Into<String>) -> Self {
        ExprError {
            column,
            message: message.into(),
            schema: false,
        }
    }

    fn schema(column: usize, message: impl Into<String>) -> Self {
        ExprError {
            column,
            message: message.into(),
            schema: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn describe(t: Option<&Tok>) -> String {
    match t {
        None => "end of input".into(),
        Some(Tok::Num(n)) => format!("number {n}"),
        Some(Tok::Ident(s)) => format!("name '{s}'"),
        Some(Tok::Plus) => "'+'".into(),
        Some(Tok::Minus) => "'-'".into(),
        Some(Tok::Star) => "'*'".into(),
        Some(Tok::Slash) => "'/'".into(),
        Some(Tok::Caret) => "'^'".into(),
        Some(Tok::LParen) => "'('".into(),
        Some(Tok::RParen) => "')'".into(),
    }
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            out.push((Tok::Num(digits.parse().expect("ascii digits")), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((Tok::Ident(chars[start..k].iter().collect()), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(ExprError::syntax(
                    col,
                    format!("unexpected character '{c}'"),
                ))
            }
        };
        out.push((t, col));
        k += 1;
    }
    Ok(out)
}

/// Parsed expression tree; every node keeps its column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Name(String, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64, usize),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn unexpected(&self, expected: &str) -> ExprError {
        ExprError::syntax(
            self.col(),
            format!("expected {expected}, found {}", describe(self.peek())),
        )
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    let col = self.col();
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), col);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let col = self.col();
        self.pos += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.peek() {
            Some(Tok::Num(n)) => i64::try_from(n.clone())
                .map_err(|_| ExprError::syntax(self.col(), "exponent out of range"))?,
            _ => return Err(self.unexpected("an integer exponent")),
        };
        self.pos += 1;
        Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }, col))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Name(s, col))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected("')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.unexpected("a number, a name or '('")),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, ExprError> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}

fn first_col(e: &Expr) -> usize {
    match e {
        Expr::Num(_) => 1,
        Expr::Name(_, c) | Expr::Div(_, _, c) | Expr::Pow(_, _, c) => *c,
        Expr::Add(a, _) | Expr::Sub(a, _) | Expr::Mul(a, _) | Expr::Neg(a) => first_col(a),
    }
}

fn literal(b: &Backend, n: &BigInt, col: usize) -> Result<Coeff, ExprError> {
    b.from_rational(&BigRational::from_integer(n.clone()))
        .map_err(|e| ExprError::schema(col, e.to_string()))
}

fn param(b: &Backend, name: &str) -> Option<Coeff> {
    b.param_names()
        .iter()
        .position(|p| p == name)
        .map(|k| b.param(k))
}

/// Evaluates an expression that may not mention ring variables.
pub fn eval_coeff(e: &Expr, b: &Backend) -> Result<Coeff, ExprError> {
    Ok(match e {
        Expr::Num(n) => literal(b, n, 1)?,
        Expr::Name(s, col) => param(b, s)
            .ok_or_else(|| ExprError::schema(*col, format!("unknown parameter '{s}'")))?,
        Expr::Add(x, y) => eval_coeff(x, b)?.add(&eval_coeff(y, b)?),
        Expr::Sub(x, y) => eval_coeff(x, b)?.sub(&eval_coeff(y, b)?),
        Expr::Mul(x, y) => eval_coeff(x, b)?.mul(&eval_coeff(y, b)?),
        Expr::Neg(x) => eval_coeff(x, b)?.neg(),
        Expr::Div(x, y, col) => {
            let d = eval_coeff(y, b)?;
            let inv = d.inverse().ok_or_else(|| {
                ExprError::schema(*col, format!("cannot divide by {}", b.render(&d)))
            })?;
            eval_coeff(x, b)?.mul(&inv)
        }
        Expr::Pow(x, k, col) => {
            let base = eval_coeff(x, b)?;
            base.pow(*k).ok_or_else(|| {
                ExprError::schema(*col, format!("{} is not a unit", b.render(&base)))
            })?
        }
    })
}

/// Evaluates an expression in the ring, multiplying with the engine so that
/// variables may appear in any order.
pub fn eval_poly(e: &Expr, p: &Presentation) -> Result<SkewPoly, ExprError> {
    let b = p.backend();
    Ok(match e {
        Expr::Num(n) => p.constant(literal(b, n, 1)?),
        Expr::Name(s, col) => match p.names().iter().position(|v| v == s) {
            Some(i) => p.var(i),
            None => p.constant(
                param(b, s)
                    .ok_or_else(|| ExprError::schema(*col, format!("unknown name '{s}'")))?,
            ),
        },
        Expr::Add(x, y) => eval_poly(x, p)?.add(&eval_poly(y, p)?),
        Expr::Sub(x, y) => eval_poly(x, p)?.sub(&eval_poly(y, p)?),
        Expr::Mul(x, y) => p.multiply(&eval_poly(x, p)?, &eval_poly(y, p)?),
        Expr::Neg(x) => eval_poly(x, p)?.neg(),
        Expr::Div(x, y, col) => {
            let d = eval_poly(y, p)?;
            let inv = d
                .as_monomial()
                .filter(|(t, _)| t.iter().all(|&k| k == 0))
                .and_then(|(_, c)| c.inverse())
                .ok_or_else(|| {
                    ExprError::schema(*col, format!("cannot divide by {}", p.render(&d)))
                })?;
            p.mul_coeff_right(&eval_poly(x, p)?, &inv)
        }
        Expr::Pow(x, k, col) => {
            let base = eval_poly(x, p)?;
            if *k >= 0 {
                p.pow(&base, *k as u32)
            } else {
                if let Expr::Name(s, _) = x.as_ref() {
                    if let Some(i) = p.names().iter().position(|v| v == s) {
                        if i >= p.r() {
                            return Err(ExprError::schema(
                                first_col(x),
                                format!("negative exponent on non-Laurent variable {s}"),
                            ));
                        }
                    }
                }
                let inv = invert_monomial(p, &base).map_err(|_| {
                    ExprError::schema(*col, format!("{} is not a unit", p.render(&base)))
                })?;
                p.pow(&inv, k.unsigned_abs() as u32)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PresentationBuilder;

    fn dqsq() -> Presentation {
        let b = Backend::laurent(&["q"], 2);
        PresentationBuilder::new(b.clone(), vec!["x1".into(), "d1".into()])
            .c(1, 0, b.param(0))
            .d(1, 0, SkewPoly::constant(2, b.one()))
            .build()
            .unwrap()
    }

    #[test]
    fn precedence_and_order() {
        let p = dqsq();
        let f = eval_poly(&parse_expr("d1*x1^2").unwrap(), &p).unwrap();
        assert_eq!(p.render(&f), "q^2*x1^2*d1 + (q+1)*x1");
        let g = eval_poly(&parse_expr("-x1^2 + 3/2*q").unwrap(), &p).unwrap();
        assert_eq!(p.render(&g), "-x1^2 + 3/2*q");
        let h = eval_poly(&parse_expr("(1+q)*(x1 - x1)").unwrap(), &p).unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn positioned_errors() {
        assert_eq!(parse_expr("x1 + * 2").unwrap_err().column, 6);
        let e = parse_expr("(x1").unwrap_err();
        assert_eq!(
            (e.column, e.message.as_str()),
            (4, "expected ')', found end of input")
        );
        assert_eq!(parse_expr("x1 $").unwrap_err().column, 4);
        assert!(parse_expr("x1 x2")
            .unwrap_err()
            .message
            .contains("operator"));
        let p = dqsq();
        let e = eval_poly(&parse_expr("x1 + d1^-1").unwrap(), &p).unwrap_err();
        assert!(e.schema);
        assert_eq!(e.column, 6);
        assert_eq!(e.message, "negative exponent on non-Laurent variable d1");
    }

    #[test]
    fn coefficient_mode() {
        let b = Backend::laurent(&["q"], 1);
        let c = eval_coeff(&parse_expr("2*q^-1").unwrap(), &b).unwrap();
        assert_eq!(b.render(&c), "2*q^-1");
        assert!(
            eval_coeff(&parse_expr("1/(1+q)").unwrap(), &b)
                .unwrap_err()
                .schema
        );
        assert!(eval_coeff(&parse_expr("x1").unwrap(), &b).is_err());
    }
}
