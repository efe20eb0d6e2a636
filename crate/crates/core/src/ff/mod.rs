//! Finite fields `F_{p^m}` in a power basis, with Frobenius, trace and
//! Artin-Schreier root extraction, plus F_p linear algebra.

mod element;
mod embed;
pub(crate) mod fp_poly;
pub mod linalg;

pub use element::Fe;
pub use embed::{embed, Embedding};

use crate::error::{Error, Result};
use linalg::Matrix;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Shared handle to a field context.
pub type Field = Arc<FieldCtx>;

/// The field `F_p[t]/(modulus)`.
pub struct FieldCtx {
    p: u32,
    m: usize,
    modulus: Vec<u32>,
    /// `p - modulus[j]`, used to fold `t^m` back into the basis.
    neg_mod: Vec<u32>,
    frob: Matrix,
    frob_inv: Matrix,
    traces: Vec<u32>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl FieldCtx {
    /// Builds a context from an explicit monic modulus (little-endian coefficients).
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > 251 {
            return Err(Error::OutOfRange(p as usize));
        }
        let mut modulus: Vec<u32> = modulus.into_iter().map(|c| c % p).collect();
        fp_poly::trim(&mut modulus);
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::ReducibleModulus);
        }
        if !fp_poly::is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus);
        }
        Ok(Arc::new(Self::build(p, modulus)))
    }

    /// The default field of degree `m`: lexicographically smallest modulus, cached.
    pub fn default_field(p: u32, m: usize) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::OutOfRange(0));
        }
        static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Field>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&(p, m)) {
            return Ok(f.clone());
        }
        let field = Arc::new(Self::build(p, find_irreducible(p, m)));
        Ok(cache.lock().unwrap().entry((p, m)).or_insert(field).clone())
    }

    /// The prime field.
    pub fn prime(p: u32) -> Result<Field> {
        Self::default_field(p, 1)
    }

    fn build(p: u32, modulus: Vec<u32>) -> Self {
        let m = modulus.len() - 1;
        let neg_mod = modulus[..m].iter().map(|&c| (p - c) % p).collect();
        let frob = fp_poly::frobenius_matrix(&modulus, p);
        let frob_inv = linalg::inverse(&frob, p).expect("Frobenius is invertible");
        let mut traces = vec![0u32; m];
        for (i, tr) in traces.iter_mut().enumerate() {
            let mut v = vec![0u32; m];
            v[i] = 1;
            let mut acc = v.clone();
            for _ in 1..m {
                v = linalg::mat_vec(&frob, &v, p);
                for (a, b) in acc.iter_mut().zip(&v) {
                    *a = (*a + b) % p;
                }
            }
            *tr = acc[0];
        }
        FieldCtx { p, m, modulus, neg_mod, frob, frob_inv, traces }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `p^m`, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.m as u32)
    }

    pub(crate) fn frob_matrix(&self) -> &Matrix {
        &self.frob
    }

    pub(crate) fn frob_inv_matrix(&self) -> &Matrix {
        &self.frob_inv
    }

    pub(crate) fn neg_mod(&self) -> &[u32] {
        &self.neg_mod
    }

    pub(crate) fn basis_traces(&self) -> &[u32] {
        &self.traces
    }

    pub fn same(a: &FieldCtx, b: &FieldCtx) -> bool {
        std::ptr::eq(a, b) || (a.p == b.p && a.modulus == b.modulus)
    }

    /// Header used by the text formats: `p=5 m=2 modulus=t^2+2`.
    pub fn header(&self) -> String {
        format!("p={} m={} modulus={}", self.p, self.m, render_fp_poly(&self.modulus, "t"))
    }

    /// Every element, in the fixed ordering (only for small fields).
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = Fe> + '_ {
        let total = self.order().expect("field too large to enumerate");
        (0..total).map(move |k| Fe::from_index(self, k))
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.header())
    }
}

pub(crate) fn render_fp_poly(coeffs: &[u32], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Lexicographically smallest monic irreducible modulus of degree `m` over `F_p`.
/// For `m = 1` this is `X`, so the generator is `0`.
pub fn find_irreducible(p: u32, m: usize) -> Vec<u32> {
    fp_poly::smallest_irreducible(p, m)
}

pub fn frobenius(a: &Fe, k: i64) -> Fe {
    a.frobenius(k)
}

pub fn trace_to_prime(a: &Fe) -> u32 {
    a.trace()
}

pub fn artin_schreier_root(c: &Fe) -> Result<Fe> {
    c.as_root()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f25() -> Field {
        FieldCtx::default_field(5, 2).unwrap()
    }

    #[test]
    fn default_modulus_for_25() {
        assert_eq!(f25().modulus(), &[2, 0, 1]);
        assert_eq!(find_irreducible(5, 1), vec![0, 1]);
        assert_eq!(f25().header(), "p=5 m=2 modulus=t^2 + 2");
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(FieldCtx::new(6, vec![0, 1]).unwrap_err(), Error::NotPrime(6));
        assert_eq!(FieldCtx::new(5, vec![1, 0, 1]).unwrap_err(), Error::ReducibleModulus);
    }

    #[test]
    fn trace_examples() {
        let k = f25();
        assert_eq!(Fe::one(&k).trace(), 2);
        assert_eq!(Fe::gen(&k).trace(), 0);
        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(Fe::from_int(&f5, 3).trace(), 3);
    }
}
