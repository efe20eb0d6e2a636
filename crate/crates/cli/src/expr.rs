//! Polynomial literals in `X` with coefficients that are polynomials in the field generator `t`.

use wildcover::{Error, Fe, Field, Poly, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    T,
    X,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    field: &'a Field,
}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, col, msg: msg.into() })
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        let tok = match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse::<u64>().or_else(|_| err(line, col, "integer literal too large"))?;
                out.push((Tok::Int(v), col));
                continue;
            }
            't' => Tok::T,
            'X' | 'x' => Tok::X,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::Open,
            ')' => Tok::Close,
            other => return err(line, col, format!("unexpected character '{other}'")),
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.field);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let col = self.col();
            match self.toks.get(self.pos) {
                Some((Tok::Int(e), _)) => {
                    self.pos += 1;
                    return Ok(base.pow(*e));
                }
                _ => return err(self.line, col, "expected an integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let col = self.col();
        let Some((tok, _)) = self.toks.get(self.pos).cloned() else {
            return err(self.line, col, "unexpected end of expression");
        };
        self.pos += 1;
        match tok {
            Tok::Int(v) => Ok(Poly::constant(Fe::from_int(self.field, (v % self.field.p() as u64) as i64))),
            Tok::T => Ok(Poly::constant(Fe::gen(self.field))),
            Tok::X => Ok(Poly::x(self.field)),
            Tok::Open => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return err(self.line, self.col(), "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => err(self.line, col, "expected a number, 't', 'X' or '('"),
        }
    }
}

/// Parses `src` (which starts at column `col0` of line `line`) as a polynomial in `X`.
pub fn parse_poly_at(src: &str, field: &Field, line: usize, col0: usize) -> Result<Poly> {
    let toks = lex(src, line, col0)?;
    let mut p = Parser { toks, pos: 0, line, end_col: col0 + src.chars().count(), field };
    if p.toks.is_empty() {
        return err(line, col0, "empty expression");
    }
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return err(line, p.col(), "unexpected trailing input");
    }
    Ok(out)
}

pub fn parse_poly(src: &str, field: &Field) -> Result<Poly> {
    parse_poly_at(src, field, 1, 1)
}

/// A field element: an expression without `X`.
pub fn parse_fe_at(src: &str, field: &Field, line: usize, col0: usize) -> Result<Fe> {
    let poly = parse_poly_at(src, field, line, col0)?;
    match poly.degree() {
        None => Ok(Fe::zero(field)),
        Some(0) => Ok(poly.coeff(0)),
        Some(_) => err(line, col0, "expected a field element, found a polynomial in X"),
    }
}

pub fn parse_fe(src: &str, field: &Field) -> Result<Fe> {
    parse_fe_at(src, field, 1, 1)
}

/// A monic modulus over `F_p` written in `t`, e.g. `t^2 + 2`.
pub fn parse_modulus(src: &str, p: u32, line: usize, col0: usize) -> Result<Vec<u32>> {
    let prime = wildcover::FieldCtx::prime(p)?;
    let renamed: String = src.chars().map(|c| if c == 't' { 'X' } else { c }).collect();
    let poly = parse_poly_at(&renamed, &prime, line, col0)?;
    Ok(poly.coeffs().iter().map(|c| c.as_prime().unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use wildcover::FieldCtx;

    #[test]
    fn round_trip_rendering() {
        let k = FieldCtx::default_field(5, 2).unwrap();
        let f = parse_poly("X^11 + 4*t*X^7 + (t + 1)*X + 3", &k).unwrap();
        assert_eq!(f.degree(), Some(11));
        assert_eq!(parse_poly(&f.to_string(), &k).unwrap(), f);
        assert_eq!(parse_poly("-X^2 - (X - 1)^2", &k).unwrap(), parse_poly("3*X^2 + 2*X + 4", &k).unwrap());
    }

    #[test]
    fn positions() {
        let k = FieldCtx::prime(5).unwrap();
        match parse_poly("X^2 + + 3", &k).unwrap_err() {
            Error::Parse { line, col, .. } => assert_eq!((line, col), (1, 7)),
            e => panic!("{e:?}"),
        }
        match parse_poly("X^2 + 3$", &k).unwrap_err() {
            Error::Parse { col, .. } => assert_eq!(col, 8),
            e => panic!("{e:?}"),
        }
        assert!(parse_fe("X", &k).is_err());
    }
}
