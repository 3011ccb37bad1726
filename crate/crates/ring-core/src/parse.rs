//! Parser for polynomial expressions such as `x^2*y + y^3 - 1/2*x`.

use num_bigint::BigInt;

use crate::ctx::RingCtx;
use crate::error::RingError;
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, RingError> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            out.push((st, Tok::Num(txt.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_' || cs[i] == '\'') {
                i += 1;
            }
            out.push((st, Tok::Ident(cs[st..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(RingError::Parse { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a RingCtx,
    toks: Vec<(usize, Tok)>,
    at: usize,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: &str) -> Result<T, RingError> {
        Err(RingError::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<TruncatedSeries, RingError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<TruncatedSeries, RingError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return self.err("can only divide by a nonzero constant");
                }
                let inv = d.residue().inv().ok_or(RingError::DivisionByZero)?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<TruncatedSeries, RingError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<TruncatedSeries, RingError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.at += 1;
                    let e: u32 = n.try_into().map_err(|_| RingError::Parse {
                        pos: self.pos(),
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<TruncatedSeries, RingError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(TruncatedSeries::constant(self.ctx, Scalar::from_bigint(self.ctx.field(), &n)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match self.ctx.var_index(&name) {
                    Some(i) => Ok(TruncatedSeries::var(self.ctx, i)),
                    None => self.err(&format!("unknown variable {name}")),
                }
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }
}

/// Parses an expression in the variables of `ctx`. Division is allowed by nonzero constants only.
pub fn parse_series(ctx: &RingCtx, s: &str) -> Result<TruncatedSeries, RingError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(RingError::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { ctx, toks, at: 0, len: s.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Variable names in order of first appearance, for inferring a ring from an expression.
pub fn variables_in(s: &str) -> Result<Vec<String>, RingError> {
    let mut out: Vec<String> = Vec::new();
    for (_, t) in lex(s)? {
        if let Tok::Ident(n) = t {
            if !out.contains(&n) {
                out.push(n);
            }
        }
    }
    Ok(out)
}
