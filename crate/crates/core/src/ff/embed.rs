//! Field embeddings `F_{p^a} → F_{p^b}` for `a | b`.

use super::{linalg, linalg::Matrix, Fe, Field, FieldCtx};
use crate::error::{Error, Result};
use crate::poly::Poly;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Ring homomorphism sending the source generator to the smallest root of the
/// source modulus in the target.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: Field,
    dst: Field,
    /// `dst.m × src.m`; column `i` is the image of `t^i`.
    mat: Matrix,
}

type Key = (u32, Vec<u32>, Vec<u32>);

impl Embedding {
    pub fn new(src: &Field, dst: &Field) -> Result<Self> {
        if src.p() != dst.p() {
            return Err(Error::FieldMismatch);
        }
        let (a, b) = (src.degree(), dst.degree());
        if b % a != 0 {
            return Err(Error::NoEmbedding { src: a, dst: b });
        }
        if FieldCtx::same(src, dst) {
            return Ok(Self::identity(src));
        }
        static CACHE: OnceLock<Mutex<HashMap<Key, Matrix>>> = OnceLock::new();
        let key = (src.p(), src.modulus().to_vec(), dst.modulus().to_vec());
        let cache = CACHE.get_or_init(Default::default);
        if let Some(mat) = cache.lock().unwrap().get(&key) {
            return Ok(Embedding { src: src.clone(), dst: dst.clone(), mat: mat.clone() });
        }
        let image = if a == 1 {
            Fe::zero(dst)
        } else {
            let f = Poly::from_coeffs(dst, src.modulus().iter().map(|&c| Fe::from_int(dst, c as i64)).collect());
            let roots = split_roots(&f);
            debug_assert_eq!(roots.len(), a);
            roots.into_iter().min().expect("modulus splits in an extension")
        };
        let mut cols = Vec::with_capacity(a);
        let mut pw = Fe::one(dst);
        for _ in 0..a {
            cols.push(pw.coeffs());
            pw = &pw * &image;
        }
        let mat = linalg::transpose(&cols);
        cache.lock().unwrap().insert(key, mat.clone());
        Ok(Embedding { src: src.clone(), dst: dst.clone(), mat })
    }

    pub fn identity(field: &Field) -> Self {
        Embedding { src: field.clone(), dst: field.clone(), mat: linalg::identity(field.degree()) }
    }

    pub fn source(&self) -> &Field {
        &self.src
    }

    pub fn target(&self) -> &Field {
        &self.dst
    }

    pub fn apply(&self, a: &Fe) -> Fe {
        assert!(FieldCtx::same(a.field(), &self.src), "element not in embedding source");
        if Arc::ptr_eq(&self.src, &self.dst) {
            return a.clone();
        }
        let v = linalg::mat_vec(&self.mat, &a.coeffs(), self.src.p());
        Fe::from_coeffs(&self.dst, &v)
    }

    /// Composite `self` then `next`.
    pub fn then(&self, next: &Embedding) -> Result<Embedding> {
        if !FieldCtx::same(&self.dst, &next.src) {
            return Err(Error::FieldMismatch);
        }
        Ok(Embedding {
            src: self.src.clone(),
            dst: next.dst.clone(),
            mat: linalg::mat_mul(&next.mat, &self.mat, self.src.p()),
        })
    }
}

pub fn embed(a: &Fe, target: &Field) -> Result<Fe> {
    Ok(Embedding::new(a.field(), target)?.apply(a))
}

/// All roots of a squarefree polynomial that splits into linear factors.
pub(crate) fn split_roots(f: &Poly) -> Vec<Fe> {
    let mut out = Vec::new();
    split_into(&f.monic(), &mut out);
    out.sort();
    out
}

fn split_into(f: &Poly, out: &mut Vec<Fe>) {
    let field = f.field().clone();
    match f.degree() {
        None | Some(0) => return,
        Some(1) => {
            let c = f.coeff(0);
            out.push(-&(&c * &f.coeff(1).inv().unwrap()));
            return;
        }
        _ => {}
    }
    let p = field.p();
    let m = field.degree();
    let deg = f.degree().unwrap();
    for k in 1u128.. {
        let a = Fe::from_index(&field, k);
        let h = if p == 2 {
            // Tr(a X) mod f
            let mut u = Poly::monomial(a.clone(), 1).rem(f).unwrap();
            let mut sum = u.clone();
            for _ in 1..m {
                u = u.pth_power_mod(f);
                sum = &sum + &u;
            }
            sum
        } else {
            let lin = Poly::from_coeffs(&field, vec![a.clone(), Fe::one(&field)]);
            let w = pow_mod(&lin, ((p - 1) / 2) as u64, f);
            let mut u = w.clone();
            let mut acc = w;
            for _ in 1..m {
                u = u.pth_power_mod(f);
                acc = acc.mul_mod(&u, f);
            }
            &acc - &Poly::constant(Fe::one(&field))
        };
        let g = f.gcd(&h).unwrap();
        let dg = g.degree().unwrap_or(deg);
        if dg > 0 && dg < deg {
            let (q, _) = f.divrem(&g).unwrap();
            split_into(&g, out);
            split_into(&q.monic(), out);
            return;
        }
    }
}

fn pow_mod(base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut acc = Poly::constant(Fe::one(base.field()));
    let mut b = base.rem(m).unwrap();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_mod(&b, m);
        }
        b = b.mul_mod(&b, m);
        e >>= 1;
    }
    acc
}
