//! Textual input language for series summands.
//!
//! ```text
//! summand  := factor (('*' | '/') factor)*
//! factor   := 'poch' '(' form ',' form ')' | 'gamma' '(' form ')'
//!           | 'fact' '(' ident ')' | 'pow' '(' vexpr ',' form ')'
//!           | vexpr | number | '-' factor | '(' summand ')'
//! vexpr    := vatom (('*' | '/') vatom)* | '-' vexpr
//! vatom    := ident | '(' '1' '-' ident ')' | number
//! form     := signed term (('+' | '-') term)* ;  term := [number ['*']] ident | number
//! ```
//!
//! Identifiers listed as summation indices parse as indices; everything
//! else is a parameter. Rationals are written `3/4` (ordinary division).

use crate::error::ParseError;
use crate::expr::{Index, LinearForm, Param};
use crate::factors::FactorProduct;
use crate::rat::Q;
use crate::series::HypSeries;
use crate::varexpr::VarExpr;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, col));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                let v = text.parse::<i64>().map_err(|_| ParseError {
                    col,
                    message: format!("integer literal `{text}` out of range"),
                })?;
                out.push((Tok::Int(v), col));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(bytes[start..i].iter().collect()), col));
            }
            other => {
                return Err(ParseError {
                    col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

impl Lexer {
    fn new(s: &str) -> Result<Self, ParseError> {
        Ok(Lexer {
            toks: lex(s)?,
            pos: 0,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or_else(|| self.toks.last().map(|(_, c)| c + 1).unwrap_or(1))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        let col = self.col();
        match self.next() {
            Some(t) if t == tok => Ok(()),
            got => Err(ParseError {
                col,
                message: format!("expected {:?}, found {:?}", tok, got),
            }),
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            col: self.col(),
            message: message.into(),
        })
    }
}

struct Parser<'a> {
    lx: Lexer,
    indices: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn is_index(&self, name: &str) -> bool {
        self.indices.contains(&name)
    }

    // linear form: sum of signed terms
    fn form(&mut self) -> Result<LinearForm, ParseError> {
        let mut out = LinearForm::zero();
        let mut sign = 1i64;
        let mut first = true;
        loop {
            match self.lx.peek() {
                Some(Tok::Plus) => {
                    self.lx.next();
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.lx.next();
                    sign = -1;
                }
                _ if first => {}
                _ => break,
            }
            out = out.add(&self.form_term(sign)?);
            first = false;
            sign = 1;
            match self.lx.peek() {
                Some(Tok::Plus) | Some(Tok::Minus) => continue,
                _ => break,
            }
        }
        Ok(out)
    }

    fn form_term(&mut self, sign: i64) -> Result<LinearForm, ParseError> {
        match self.lx.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.lx.next();
                let mut coef = Q::int(sign * v);
                // optional '/' denom for rationals, then optional '*'? ident or juxtaposed ident
                if let Some(Tok::Slash) = self.lx.peek() {
                    self.lx.next();
                    match self.lx.next() {
                        Some(Tok::Int(d)) if d != 0 => {
                            coef = coef * Q::new(1, d);
                        }
                        _ => return self.lx.err("expected nonzero integer denominator"),
                    }
                }
                match self.lx.peek().cloned() {
                    Some(Tok::Star) => {
                        self.lx.next();
                        match self.lx.next() {
                            Some(Tok::Ident(name)) => {
                                let coef = self.form_divisor(coef)?;
                                Ok(self.symbol(&name).scale(&coef))
                            }
                            _ => self.lx.err("expected identifier after `*`"),
                        }
                    }
                    Some(Tok::Ident(name)) => {
                        self.lx.next();
                        let coef = self.form_divisor(coef)?;
                        Ok(self.symbol(&name).scale(&coef))
                    }
                    _ => Ok(LinearForm::constant(coef)),
                }
            }
            Some(Tok::Ident(name)) => {
                self.lx.next();
                let coef = self.form_divisor(Q::int(sign))?;
                Ok(self.symbol(&name).scale(&coef))
            }
            _ => self.lx.err("expected linear-form term"),
        }
    }

    /// Optional trailing `/ int` on a linear-form term, e.g. `a/3`.
    fn form_divisor(&mut self, coef: Q) -> Result<Q, ParseError> {
        if let Some(Tok::Slash) = self.lx.peek() {
            if let Some((Tok::Int(d), _)) = self.lx.toks.get(self.lx.pos + 1) {
                let d = *d;
                if d != 0 {
                    self.lx.next();
                    self.lx.next();
                    return Ok(coef * Q::new(1, d));
                }
            }
        }
        Ok(coef)
    }

    fn symbol(&self, name: &str) -> LinearForm {
        if self.is_index(name) {
            LinearForm::index(Index::new(name))
        } else {
            LinearForm::param(Param::new(name))
        }
    }

    // variable expression: product of atoms with unary minus
    fn vexpr(&mut self) -> Result<VarExpr, ParseError> {
        let mut neg = false;
        while let Some(Tok::Minus) = self.lx.peek() {
            self.lx.next();
            neg = !neg;
        }
        let mut out = self.vatom()?;
        loop {
            match self.lx.peek() {
                Some(Tok::Star) => {
                    self.lx.next();
                    let rhs = self.vatom()?;
                    out = out.mul(&rhs);
                }
                Some(Tok::Slash) => {
                    self.lx.next();
                    let rhs = self.vatom()?;
                    out = out.mul(&rhs.recip());
                }
                _ => break,
            }
        }
        if neg {
            out = out.neg();
        }
        Ok(out)
    }

    fn vatom(&mut self) -> Result<VarExpr, ParseError> {
        match self.lx.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.lx.next();
                if self.is_index(&name) {
                    return self.lx.err(format!(
                        "summation index `{name}` cannot appear inside a variable expression"
                    ));
                }
                Ok(VarExpr::var(&name))
            }
            Some(Tok::Int(v)) => {
                self.lx.next();
                if v == 0 {
                    return self.lx.err("variable expressions are nonzero");
                }
                Ok(VarExpr::constant(Q::int(v)))
            }
            Some(Tok::LParen) => {
                self.lx.next();
                // either (1 - v) or a parenthesized vexpr
                if let (Some(Tok::Int(1)), Some((Tok::Minus, _))) =
                    (self.lx.peek().cloned().as_ref().map(|t| t.clone()), self.lx.toks.get(self.lx.pos + 1).cloned())
                {
                    self.lx.next();
                    self.lx.next();
                    match self.lx.next() {
                        Some(Tok::Ident(name)) if !self.is_index(&name) => {
                            self.lx.expect(Tok::RParen)?;
                            Ok(VarExpr::one_minus(&name))
                        }
                        _ => self.lx.err("expected base variable in `(1 - v)`"),
                    }
                } else {
                    let inner = self.vexpr()?;
                    self.lx.expect(Tok::RParen)?;
                    Ok(inner)
                }
            }
            _ => self.lx.err("expected variable expression"),
        }
    }

    // full summand: product of factors
    fn summand(&mut self) -> Result<FactorProduct, ParseError> {
        let mut out = self.factor()?;
        loop {
            match self.lx.peek() {
                Some(Tok::Star) => {
                    self.lx.next();
                    let rhs = self.factor()?;
                    out = out.mul(&rhs);
                }
                Some(Tok::Slash) => {
                    self.lx.next();
                    let rhs = self.factor()?;
                    out = out.mul(&rhs.recip());
                }
                _ => break,
            }
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<FactorProduct, ParseError> {
        match self.lx.peek().cloned() {
            Some(Tok::Minus) => {
                self.lx.next();
                let mut inner = self.factor()?;
                inner.mul_coeff(&Q::int(-1));
                Ok(inner)
            }
            Some(Tok::Int(v)) => {
                self.lx.next();
                Ok(FactorProduct::one().with_coeff(Q::int(v)))
            }
            Some(Tok::LParen) => {
                self.lx.next();
                // (1 - v) as a bare variable atom, else parenthesized product
                if let (Some(Tok::Int(1)), Some((Tok::Minus, _))) = (
                    self.lx.peek().cloned(),
                    self.lx.toks.get(self.lx.pos + 1).cloned(),
                ) {
                    if let Some((Tok::Ident(name), _)) = self.lx.toks.get(self.lx.pos + 2).cloned()
                    {
                        if !self.is_index(&name) {
                            self.lx.next();
                            self.lx.next();
                            self.lx.next();
                            self.lx.expect(Tok::RParen)?;
                            let mut fp = FactorProduct::one();
                            fp.push_power(VarExpr::one_minus(&name), LinearForm::int(1));
                            return Ok(fp);
                        }
                    }
                }
                let inner = self.summand()?;
                self.lx.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.lx.next();
                match name.as_str() {
                    "poch" => {
                        self.lx.expect(Tok::LParen)?;
                        let base = self.form()?;
                        self.lx.expect(Tok::Comma)?;
                        let shift = self.form()?;
                        self.lx.expect(Tok::RParen)?;
                        let mut fp = FactorProduct::one();
                        fp.push_poch(base, shift, 1);
                        Ok(fp)
                    }
                    "gamma" => {
                        self.lx.expect(Tok::LParen)?;
                        let arg = self.form()?;
                        self.lx.expect(Tok::RParen)?;
                        let mut fp = FactorProduct::one();
                        fp.push_gamma(arg, 1);
                        Ok(fp)
                    }
                    "fact" => {
                        self.lx.expect(Tok::LParen)?;
                        let arg = self.form()?;
                        self.lx.expect(Tok::RParen)?;
                        // idx! is the denominator Pochhammer (1)_idx, so a
                        // numerator `fact` contributes (1)_idx^{+1}
                        let mut fp = FactorProduct::one();
                        fp.push_poch(LinearForm::int(1), arg, 1);
                        Ok(fp)
                    }
                    "pow" => {
                        self.lx.expect(Tok::LParen)?;
                        let base = self.vexpr()?;
                        self.lx.expect(Tok::Comma)?;
                        let exp = self.form()?;
                        self.lx.expect(Tok::RParen)?;
                        let mut fp = FactorProduct::one();
                        fp.push_power(base, exp);
                        Ok(fp)
                    }
                    _ => {
                        if self.is_index(&name) {
                            self.lx.err(format!(
                                "bare summation index `{name}`; use fact({name}) or pow(v, {name})"
                            ))
                        } else {
                            // bare variable, exponent one
                            let mut fp = FactorProduct::one();
                            fp.push_power(VarExpr::var(&name), LinearForm::int(1));
                            Ok(fp)
                        }
                    }
                }
            }
            got => self.lx.err(format!("expected factor, found {:?}", got)),
        }
    }
}

pub fn parse_factors(text: &str, indices: &[&str]) -> Result<FactorProduct, ParseError> {
    let mut p = Parser {
        lx: Lexer::new(text)?,
        indices,
    };
    let fp = p.summand()?;
    if p.lx.peek().is_some() {
        return p.lx.err("trailing input");
    }
    Ok(fp)
}

pub fn parse_series(text: &str, indices: &[&str]) -> Result<HypSeries, ParseError> {
    let fp = parse_factors(text, indices)?;
    let idx: Vec<Index> = indices.iter().map(|s| Index::new(s)).collect();
    Ok(HypSeries::from_summand(idx, fp))
}

pub fn parse_linear_form(text: &str, indices: &[&str]) -> Result<LinearForm, ParseError> {
    let mut p = Parser {
        lx: Lexer::new(text)?,
        indices,
    };
    let f = p.form()?;
    if p.lx.peek().is_some() {
        return p.lx.err("trailing input");
    }
    Ok(f)
}

pub fn parse_var_expr(text: &str) -> Result<VarExpr, ParseError> {
    let mut p = Parser {
        lx: Lexer::new(text)?,
        indices: &[],
    };
    let v = p.vexpr()?;
    if p.lx.peek().is_some() {
        return p.lx.err("trailing input");
    }
    Ok(v)
}

/// Comma-separated list of index forms, e.g. `"m+n, m, n"`.
pub fn parse_form_list(text: &str, indices: &[&str]) -> Result<Vec<LinearForm>, ParseError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_linear_form(s, indices))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::lf;

    #[test]
    fn parses_f2_summand() {
        let s = parse_series(
            "poch(a, m + p)*poch(b1, m)*poch(b2, p)*pow(x, m)*pow(y, p)/(poch(c1, m)*poch(c2, p)*fact(m)*fact(p))",
            &["m", "p"],
        )
        .unwrap();
        let named = crate::named::appell_f2("a", "b1", "b2", "c1", "c2", "x", "y", "m", "p");
        assert_eq!(s, named);
    }

    #[test]
    fn parses_rational_and_juxtaposition() {
        let f = parse_linear_form("1/2 + a - 2m + 3*n", &["m", "n"]).unwrap();
        assert_eq!(f, lf("1/2 + a - 2m + 3n", &["m", "n"]));
    }

    #[test]
    fn parse_error_position() {
        let err = parse_factors("poch(a,", &["m"]).unwrap_err();
        assert!(err.col >= 7, "col = {}", err.col);
    }

    #[test]
    fn var_expr_shapes() {
        assert_eq!(parse_var_expr("-x/y").unwrap().to_string(), "-x/y");
        assert_eq!(parse_var_expr("(1-y)").unwrap(), VarExpr::one_minus("y"));
        let e = parse_var_expr("x*(1-y)/4").unwrap();
        assert_eq!(e.coeff(), &crate::rat::q(1, 4));
    }
}
