//! Text format for candidate big actions.
//!
//! ```text
//! # comment
//! p=5 m=2 modulus=t^2 + 2
//! f1 = X^6 + 4*X^2
//! f2 = X^11 + 2*X^7
//! V = basis: t, 2*t + 1
//! family = special p=5 n=2
//! ```
//! `m` and `modulus` are optional; `V = auto` computes the largest stable subspace.

use crate::expr::{parse_fe_at, parse_modulus, parse_poly_at};
use std::fmt;
use wildcover::cover::{find_stable_translations, CoverSpec};
use wildcover::ff::Embedding;
use wildcover::{Error, Fe, Field, FieldCtx, Poly, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum VDirective {
    Auto,
    Basis(Vec<Fe>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpecFile {
    pub p: u32,
    pub modulus: Vec<u32>,
    pub functions: Vec<Poly>,
    pub v: VDirective,
    pub family: Option<String>,
}

fn perr<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, col, msg: msg.into() })
}

/// Attaches a line number to errors raised while validating a header.
fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.or_else(|e| match e {
        Error::Parse { .. } => Err(e),
        other => perr(line, 1, other.to_string()),
    })
}

fn parse_header(text: &str, line: usize) -> Result<Field> {
    let mut p = None;
    let mut m = None;
    let mut modulus = None;
    let mut col = 1 + text.len() - text.trim_start().len();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        if let Some(body) = rest.strip_prefix("modulus=") {
            let Some(p) = p else {
                return perr(line, col, "modulus must follow p=");
            };
            modulus = Some(parse_modulus(body, p, line, col + "modulus=".len())?);
            break;
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let word = &rest[..end];
        let (key, value) =
            word.split_once('=').map_or_else(|| perr(line, col, format!("expected key=value, found '{word}'")), Ok)?;
        let value: u64 = value.parse().or_else(|_| perr(line, col + key.len() + 1, format!("bad number '{value}'")))?;
        match key {
            "p" => p = Some(value as u32),
            "m" => m = Some(value as usize),
            _ => return perr(line, col, format!("unknown header key '{key}'")),
        }
        let skipped = rest[end..].len() - rest[end..].trim_start().len();
        col += end + skipped;
        rest = rest[end..].trim_start();
    }
    let p = p.map_or_else(|| perr(line, 1, "header must set p="), Ok)?;
    let field = match modulus {
        Some(md) => {
            let k = at_line(line, FieldCtx::new(p, md))?;
            if m.is_some_and(|m| m != k.degree()) {
                return perr(line, 1, "m does not match the modulus degree");
            }
            k
        }
        None => at_line(line, FieldCtx::default_field(p, m.unwrap_or(1)))?,
    };
    Ok(field)
}

impl SpecFile {
    pub fn field(&self) -> Result<Field> {
        FieldCtx::new(self.p, self.modulus.clone())
    }

    pub fn parse(text: &str) -> Result<SpecFile> {
        let mut field: Option<Field> = None;
        let mut functions = Vec::new();
        let mut v = None;
        let mut family = None;
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap();
            if content.trim().is_empty() {
                continue;
            }
            let Some(k) = field.clone() else {
                field = Some(parse_header(content, line)?);
                continue;
            };
            let Some(eq) = content.find('=') else {
                return perr(line, 1, "expected 'name = value'");
            };
            let key = content[..eq].trim();
            let value = &content[eq + 1..];
            let col0 = eq + 2 + (value.len() - value.trim_start().len());
            let value_trim = value.trim();
            if key == "family" {
                family = Some(value_trim.to_string());
            } else if let Some(num) = key.strip_prefix('f') {
                let idx: usize = num.parse().or_else(|_| perr(line, 1, format!("bad function name '{key}'")))?;
                if idx != functions.len() + 1 {
                    return perr(line, 1, format!("expected f{}, found {key}", functions.len() + 1));
                }
                functions.push(parse_poly_at(value_trim, &k, line, col0)?);
            } else if key == "V" {
                if v.is_some() {
                    return perr(line, 1, "V given twice");
                }
                if value_trim == "auto" {
                    v = Some(VDirective::Auto);
                } else if let Some(list) = value_trim.strip_prefix("basis:") {
                    let offset = col0 + "basis:".len();
                    let mut basis = Vec::new();
                    let mut pos = 0;
                    for part in list.split(',') {
                        let lead = part.len() - part.trim_start().len();
                        if !part.trim().is_empty() {
                            basis.push(parse_fe_at(part.trim(), &k, line, offset + pos + lead)?);
                        }
                        pos += part.len() + 1;
                    }
                    v = Some(VDirective::Basis(basis));
                } else {
                    return perr(line, col0, "expected 'auto' or 'basis: ...'");
                }
            } else {
                return perr(line, 1, format!("unknown directive '{key}'"));
            }
        }
        let field = field.map_or_else(|| perr(last_line.max(1), 1, "missing field header"), Ok)?;
        if functions.is_empty() {
            return perr(last_line.max(1), 1, "no functions f1, f2, ...");
        }
        Ok(SpecFile {
            p: field.p(),
            modulus: field.modulus().to_vec(),
            functions,
            v: v.unwrap_or(VDirective::Auto),
            family,
        })
    }

    /// Builds the cover, computing `V` when requested.
    pub fn to_cover(&self, bound: usize) -> Result<CoverSpec> {
        match &self.v {
            VDirective::Basis(b) => CoverSpec::new(&self.functions, b.clone()),
            VDirective::Auto => {
                let (ambient, basis) = find_stable_translations(&self.functions, bound)?;
                let emb = Embedding::new(&self.field()?, &ambient)?;
                let lifted: Vec<Poly> = self.functions.iter().map(|f| f.map_field(&emb)).collect();
                CoverSpec::new(&lifted, basis)
            }
        }
    }

    pub fn from_cover(spec: &CoverSpec, family: Option<String>) -> SpecFile {
        SpecFile {
            p: spec.p,
            modulus: spec.ambient.modulus().to_vec(),
            functions: spec.reduced(),
            v: VDirective::Basis(spec.v_basis.clone()),
            family,
        }
    }
}

impl fmt::Display for SpecFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.field().map_err(|_| fmt::Error)?;
        writeln!(f, "{}", k.header())?;
        for (i, g) in self.functions.iter().enumerate() {
            writeln!(f, "f{} = {}", i + 1, g.render("X"))?;
        }
        match &self.v {
            VDirective::Auto => writeln!(f, "V = auto")?,
            VDirective::Basis(b) => {
                let parts: Vec<String> = b.iter().map(ToString::to_string).collect();
                writeln!(f, "V = basis: {}", parts.join(", "))?;
            }
        }
        if let Some(fam) = &self.family {
            writeln!(f, "family = {fam}")?;
        }
        Ok(())
    }
}
