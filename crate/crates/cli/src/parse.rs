//! Precedence-climbing parser for component expressions.
//!
//! Grammar: rationals, `i`, bound parameters, variables of the source space,
//! `+ - * / ^` (non-negative integer powers), `sqrt(·)`, parentheses, unary minus.

use std::collections::BTreeMap;
use std::fmt;

use cr_algebra::{Expr, GaussianRational as GR};

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Int(String),
    Ident(String),
    Op(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut k, mut line, mut column) = (0, 1, 1);
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, column);
        let err = |m: String| ParseError { line: l0, column: c0, message: m };
        if c == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            k += 1;
            continue;
        }
        let start = k;
        let tok = if c.is_ascii_digit() {
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            if k < chars.len() && (chars[k] == '.' || chars[k] == 'e' || chars[k] == 'E') {
                return Err(err("decimal numbers are not accepted; write p/q".into()));
            }
            Tok::Int(chars[start..k].iter().collect())
        } else if c.is_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            Tok::Ident(chars[start..k].iter().collect())
        } else if "+-*/^()".contains(c) {
            k += 1;
            Tok::Op(c)
        } else {
            return Err(err(format!("unexpected character `{c}`")));
        };
        column += k - start;
        out.push(Token { tok, line: l0, column: c0 });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

/// Names the parser may resolve.
pub struct Scope<'a> {
    pub variables: &'a [String],
    pub parameters: &'a BTreeMap<String, GR>,
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    scope: &'a Scope<'a>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, message: impl Into<String>) -> ParseError {
        ParseError { line: t.line, column: t.column, message: message.into() }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::Op(c) {
            Ok(())
        } else {
            Err(Self::error_at(&t, format!("expected `{c}`, found {}", describe(&t.tok))))
        }
    }

    fn binary_power(op: char) -> Option<u8> {
        match op {
            '+' | '-' => Some(1),
            '*' | '/' => Some(2),
            _ => None,
        }
    }

    fn expr(&mut self, min: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Tok::Op(op) = self.peek().tok {
            let Some(p) = Self::binary_power(op) else { break };
            if p < min {
                break;
            }
            self.next();
            let rhs = self.expr(p + 1)?;
            let (a, b) = (Box::new(lhs), Box::new(rhs));
            lhs = match op {
                '+' => Expr::Add(a, b),
                '-' => Expr::Sub(a, b),
                '*' => Expr::Mul(a, b),
                _ => Expr::Div(a, b),
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().tok {
            Tok::Op('-') => {
                self.next();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Op('+') => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Op('^') {
            return Ok(base);
        }
        self.next();
        let t = self.next();
        match &t.tok {
            Tok::Int(s) => {
                let e: u32 = s.parse().map_err(|_| Self::error_at(&t, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            Tok::Op('(') => {
                let inner = self.next();
                let Tok::Int(s) = &inner.tok else {
                    return Err(Self::error_at(&inner, "exponents must be non-negative integers"));
                };
                let e: u32 = s.parse().map_err(|_| Self::error_at(&inner, "exponent too large"))?;
                self.expect(')')?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(Self::error_at(&t, "exponents must be non-negative integers")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(s) => Ok(Expr::Num(s.parse().map_err(|_| Self::error_at(&t, "bad integer"))?)),
            Tok::Op('(') => {
                let e = self.expr(0)?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) if name == "sqrt" => {
                self.expect('(')?;
                let e = self.expr(0)?;
                self.expect(')')?;
                Ok(Expr::Sqrt(Box::new(e)))
            }
            Tok::Ident(name) if name == "i" => Ok(Expr::Num(GR::i())),
            Tok::Ident(name) => {
                if let Some(v) = self.scope.parameters.get(name) {
                    Ok(Expr::Num(v.clone()))
                } else if self.scope.variables.iter().any(|v| v == name) {
                    Ok(Expr::Var(name.clone()))
                } else {
                    Err(Self::error_at(&t, format!("unknown identifier `{name}`")))
                }
            }
            other => Err(Self::error_at(&t, format!("expected an operand, found {}", describe(other)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(s) => format!("`{s}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Op(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

pub fn parse_expression(text: &str, scope: &Scope<'_>) -> Result<Expr, ParseError> {
    let mut p = Parser { tokens: lex(text)?, pos: 0, scope };
    let e = p.expr(0)?;
    let t = p.next();
    if t.tok != Tok::End {
        return Err(Parser::error_at(&t, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(e)
}

/// Value of a variable-free expression (no `sqrt`).
pub fn eval_constant(e: &Expr) -> Result<GR, String> {
    let bin = |a: &Expr, b: &Expr| Ok::<_, String>((eval_constant(a)?, eval_constant(b)?));
    Ok(match e {
        Expr::Num(c) => c.clone(),
        Expr::Var(v) => return Err(format!("`{v}` is not a constant")),
        Expr::Neg(a) => -&eval_constant(a)?,
        Expr::Add(a, b) => {
            let (x, y) = bin(a, b)?;
            &x + &y
        }
        Expr::Sub(a, b) => {
            let (x, y) = bin(a, b)?;
            &x - &y
        }
        Expr::Mul(a, b) => {
            let (x, y) = bin(a, b)?;
            &x * &y
        }
        Expr::Div(a, b) => {
            let (x, y) = bin(a, b)?;
            x.checked_div(&y).map_err(|e| e.to_string())?
        }
        Expr::Pow(a, k) => eval_constant(a)?.pow(*k),
        Expr::Sqrt(_) => return Err("sqrt is not allowed in constants".into()),
    })
}

/// Parses an exact scalar such as `1/2`, `-3`, `1/2 + 3/4*i`.
pub fn parse_scalar(text: &str, parameters: &BTreeMap<String, GR>) -> Result<GR, ParseError> {
    let scope = Scope { variables: &[], parameters };
    let e = parse_expression(text, &scope)?;
    eval_constant(&e).map_err(|message| ParseError { line: 1, column: 1, message })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        ["z1", "w"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn precedence_and_unary_minus() {
        let params = BTreeMap::new();
        let v = vars();
        let scope = Scope { variables: &v, parameters: &params };
        let e = parse_expression("-z1^2 + 2*w/3", &scope).unwrap();
        let z = || Box::new(Expr::Var("z1".into()));
        let expected = Expr::Add(
            Box::new(Expr::Neg(Box::new(Expr::Pow(z(), 2)))),
            Box::new(Expr::Div(
                Box::new(Expr::Mul(Box::new(Expr::Num(2.into())), Box::new(Expr::Var("w".into())))),
                Box::new(Expr::Num(3.into())),
            )),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn errors_carry_positions() {
        let params = BTreeMap::new();
        let v = vars();
        let scope = Scope { variables: &v, parameters: &params };
        let err = parse_expression("(", &scope).unwrap_err();
        assert_eq!((err.line, err.column), (1, 2));
        let err = parse_expression("z1 +\n  q", &scope).unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(err.message.contains("unknown identifier"));
        assert!(parse_expression("0.5*z1", &scope).is_err());
        assert!(parse_expression("z1^-1", &scope).is_err());
    }

    #[test]
    fn scalars() {
        let p = BTreeMap::new();
        assert_eq!(parse_scalar("1/2 + 3/4*i", &p).unwrap(), GR::complex(1, 2, 3, 4));
        assert_eq!(parse_scalar("-2", &p).unwrap(), GR::from_int(-2));
        assert!(parse_scalar("1/0", &p).is_err());
    }
}
