//! Text grammar: integers, identifiers, `+ - * ^`, parentheses.

use num_bigint::BigInt;

use super::multi::MultiPoly;
use crate::error::ParseError;

#[derive(Clone, Debug)]
pub struct System {
    pub vars: Vec<String>,
    pub polys: Vec<MultiPoly>,
}

#[derive(Debug)]
enum Ast {
    Num(BigInt),
    Var(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.pos + 1, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected a non-negative integer exponent"));
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Ast::Num(s.parse().unwrap()))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                Ok(Ast::Var(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string()))
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn collect_vars(a: &Ast, out: &mut Vec<String>) {
    match a {
        Ast::Num(_) => {}
        Ast::Var(v) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        Ast::Neg(x) | Ast::Pow(x, _) => collect_vars(x, out),
        Ast::Add(x, y) | Ast::Sub(x, y) | Ast::Mul(x, y) => {
            collect_vars(x, out);
            collect_vars(y, out);
        }
    }
}

fn build(a: &Ast, vars: &[String]) -> MultiPoly {
    let n = vars.len();
    match a {
        Ast::Num(c) => MultiPoly::constant(n, c.clone()),
        Ast::Var(v) => MultiPoly::var(n, vars.iter().position(|x| x == v).unwrap()),
        Ast::Neg(x) => build(x, vars).neg(),
        Ast::Add(x, y) => build(x, vars).add(&build(y, vars)),
        Ast::Sub(x, y) => build(x, vars).sub(&build(y, vars)),
        Ast::Mul(x, y) => build(x, vars).mul(&build(y, vars)),
        Ast::Pow(x, e) => build(x, vars).pow(*e),
    }
}

fn parse_ast(src: &str, line: usize) -> Result<Ast, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, line };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parse one polynomial per entry. Without an explicit order, variables are ordered
/// by first appearance.
pub fn parse_system(lines: &[&str], vars: Option<&[&str]>) -> Result<System, ParseError> {
    let mut asts = Vec::with_capacity(lines.len());
    for (k, l) in lines.iter().enumerate() {
        asts.push(parse_ast(l, k + 1)?);
    }
    let mut found = Vec::new();
    for a in &asts {
        collect_vars(a, &mut found);
    }
    let order: Vec<String> = match vars {
        Some(v) => {
            let v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
            if let Some(missing) = found.iter().find(|x| !v.contains(x)) {
                return Err(ParseError { line: 0, col: 0, msg: format!("variable '{missing}' not in the declared order") });
            }
            v
        }
        None => found,
    };
    let polys = asts.iter().map(|a| build(a, &order)).collect();
    Ok(System { vars: order, polys })
}

/// Split input text into polynomial lines; blank lines and `#` comments are skipped and
/// `;` also separates polynomials.
pub fn split_input(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    for (k, l) in text.lines().enumerate() {
        let l = l.split('#').next().unwrap();
        for part in l.split(';') {
            if !part.trim().is_empty() {
                out.push((k + 1, part.trim().to_string()));
            }
        }
    }
    out
}
