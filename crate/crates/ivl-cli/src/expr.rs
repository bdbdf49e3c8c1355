//! Recursive-descent parser and evaluator for interval expressions.
//!
//! Grammar: `+ - * /` with the usual precedence, right-associative `^`,
//! unary minus, parentheses, decimal numbers (outward point enclosures),
//! bracketed interval literals, bound variables, and registered function
//! calls. An integer literal exponent selects the exact integer power;
//! anything else goes through the real-exponent power.

use crate::registry;
use ivl::textio::{self, Accuracy};
use ivl::{arith, elem, Interval, Precision};
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub enum Expr {
    Literal(Interval),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pown(Box<Expr>, i32),
    Pow(Box<Expr>, Box<Expr>),
    Call(&'static str, Vec<Expr>),
}

#[derive(Debug)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    prec: Precision,
}

pub fn parse(src: &str, prec: Precision) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        prec,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.factor()?;
                lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
            } else if self.eat(b'/') {
                let rhs = self.factor()?;
                lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.unary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let exponent = self.factor()?; // right associative
        Ok(match integer_exponent(&exponent) {
            Some(n) => Expr::Pown(Box::new(base), n),
            None => Expr::Pow(Box::new(base), Box::new(exponent)),
        })
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let _ = self.eat(b'+');
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(b'[') => self.interval_literal(),
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.identifier(),
            _ => Err(self.err("expected a value")),
        }
    }

    fn interval_literal(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos] != b']' {
            self.pos += 1;
        }
        if self.pos == self.src.len() {
            return Err(self.err("unterminated interval literal"));
        }
        self.pos += 1; // consume ']'
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let (iv, acc) = textio::try_parse(text, self.prec);
        if acc == Accuracy::Invalid {
            return Err(ParseError(format!("bad interval literal {text:?}")));
        }
        Ok(Expr::Literal(iv))
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .map_or(false, |c| c.is_ascii_digit() || *c == b'.')
        {
            self.pos += 1;
        }
        // Exponent part.
        if matches!(self.src.get(self.pos), Some(b'e') | Some(b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+') | Some(b'-')) {
                self.pos += 1;
            }
            if self.src.get(self.pos).map_or(false, u8::is_ascii_digit) {
                while self.src.get(self.pos).map_or(false, u8::is_ascii_digit) {
                    self.pos += 1;
                }
            } else {
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        // A bare number denotes the outward point enclosure of its value.
        let (iv, acc) = textio::try_parse(&format!("[{text}]"), self.prec);
        if acc == Accuracy::Invalid {
            return Err(ParseError(format!("bad number {text:?}")));
        }
        Ok(Expr::Literal(iv))
    }

    fn identifier(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .map_or(false, |c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string();
        if self.eat(b'(') {
            let func = registry::lookup(&name)
                .ok_or_else(|| ParseError(format!("unknown function {name:?}")))?;
            let mut args = vec![self.expr()?];
            while self.eat(b',') {
                args.push(self.expr()?);
            }
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            if args.len() != func.arity() {
                return Err(ParseError(format!(
                    "{name} takes {} argument(s), got {}",
                    func.arity(),
                    args.len()
                )));
            }
            return Ok(Expr::Call(func.name(), args));
        }
        Ok(Expr::Var(name))
    }
}

fn integer_exponent(e: &Expr) -> Option<i32> {
    fn point_int(iv: &Interval) -> Option<i32> {
        let (lo, hi) = iv.bounds()?;
        if lo.cmp_value(hi) != std::cmp::Ordering::Equal {
            return None;
        }
        let v = lo.to_f64(ivl::Round::Down);
        if v.fract() == 0.0 && v.abs() <= i32::MAX as f64 {
            Some(v as i32)
        } else {
            None
        }
    }
    match e {
        Expr::Literal(iv) => point_int(iv),
        Expr::Neg(inner) => match &**inner {
            Expr::Literal(iv) => point_int(iv).map(|n| -n),
            _ => None,
        },
        _ => None,
    }
}

pub fn eval(e: &Expr, env: &HashMap<String, Interval>) -> Result<Interval, ParseError> {
    Ok(match e {
        Expr::Literal(iv) => iv.clone(),
        Expr::Var(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| ParseError(format!("unbound variable {name:?}")))?,
        Expr::Neg(a) => arith::neg(&eval(a, env)?),
        Expr::Add(a, b) => arith::add(&eval(a, env)?, &eval(b, env)?),
        Expr::Sub(a, b) => arith::sub(&eval(a, env)?, &eval(b, env)?),
        Expr::Mul(a, b) => arith::mul(&eval(a, env)?, &eval(b, env)?),
        Expr::Div(a, b) => arith::div(&eval(a, env)?, &eval(b, env)?),
        Expr::Pown(a, n) => arith::pown(&eval(a, env)?, *n),
        Expr::Pow(a, b) => elem::pow_interval(&eval(a, env)?, &eval(b, env)?),
        Expr::Call(name, args) => {
            let func = registry::lookup(name).expect("registered at parse time");
            let vals = args
                .iter()
                .map(|a| eval(a, env))
                .collect::<Result<Vec<_>, _>>()?;
            func.apply(&vals)
        }
    })
}
