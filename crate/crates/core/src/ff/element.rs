use super::{linalg, Field, FieldCtx};
use crate::error::{Error, Result};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

pub(crate) type Coeffs = SmallVec<[u8; 24]>;

/// An element of `F_{p^m}`: coordinates in the power basis of the generator `t`.
#[derive(Clone)]
pub struct Fe {
    field: Field,
    c: Coeffs,
}

impl Fe {
    pub fn zero(field: &Field) -> Self {
        Fe { field: field.clone(), c: SmallVec::from_elem(0, field.degree()) }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Field, v: i64) -> Self {
        let mut z = Self::zero(field);
        z.c[0] = v.rem_euclid(field.p() as i64) as u8;
        z
    }

    /// The class of `t`. In the prime field (modulus `X`) this is `0`.
    pub fn gen(field: &Field) -> Self {
        if field.degree() == 1 {
            return Self::zero(field);
        }
        let mut z = Self::zero(field);
        z.c[1] = 1;
        z
    }

    pub fn from_coeffs(field: &Field, coeffs: &[u32]) -> Self {
        let p = field.p();
        let m = field.degree();
        let mut z = Self::zero(field);
        let mut buf = vec![0u32; coeffs.len().max(m)];
        for (b, &c) in buf.iter_mut().zip(coeffs) {
            *b = c % p;
        }
        reduce_buf(field, &mut buf);
        for i in 0..m {
            z.c[i] = buf[i] as u8;
        }
        z
    }

    /// Element whose coordinates are the base-p digits of `k`.
    pub fn from_index(field: &Field, mut k: u128) -> Self {
        let p = field.p() as u128;
        let mut z = Self::zero(field);
        for i in 0..field.degree() {
            z.c[i] = (k % p) as u8;
            k /= p;
        }
        z
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.c.iter().map(|&x| x as u32).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// `Some(v)` when the element lies in `F_p`.
    pub fn as_prime(&self) -> Option<u32> {
        self.c[1..].iter().all(|&x| x == 0).then(|| self.c[0] as u32)
    }

    pub fn same_field(&self, other: &Fe) -> bool {
        FieldCtx::same(&self.field, &other.field)
    }

    fn check(&self, other: &Fe) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Fe) -> Result<Fe> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Fe) -> Result<Fe> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Fe) -> Result<Fe> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn try_div(&self, other: &Fe) -> Result<Fe> {
        self.check(other)?;
        Ok(self * &other.inv()?)
    }

    /// Multiplies by an F_p scalar.
    pub fn scale(&self, k: u32) -> Fe {
        let p = self.p();
        let k = k % p;
        let mut z = self.clone();
        for x in z.c.iter_mut() {
            *x = ((*x as u32 * k) % p) as u8;
        }
        z
    }

    pub fn pow(&self, mut e: u64) -> Fe {
        let mut base = self.clone();
        let mut acc = Fe::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exponent given as little-endian base-p digits, so huge exponents
    /// like `(p^m - 1)/2` stay exact.
    pub fn pow_digits(&self, digits: &[u32]) -> Fe {
        let mut acc = Fe::one(&self.field);
        let mut base = self.clone();
        for &d in digits {
            acc = &acc * &base.pow(d as u64);
            base = base.frobenius(1);
        }
        acc
    }

    pub fn inv(&self) -> Result<Fe> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // a^{-1} = a^{q-2}; q - 2 has digits (p-2, p-1, ..., p-1)
        let p = self.p();
        let m = self.field.degree();
        let mut digits = vec![p - 1; m];
        digits[0] = p - 2;
        Ok(self.pow_digits(&digits))
    }

    pub fn div(&self, other: &Fe) -> Result<Fe> {
        self.try_div(other)
    }

    /// `a^{p^k}`; negative `k` gives the inverse Frobenius.
    pub fn frobenius(&self, k: i64) -> Fe {
        let m = self.field.degree() as i64;
        let r = k.rem_euclid(m);
        if r == 0 {
            return self.clone();
        }
        let (mat, times) =
            if r <= m - r { (self.field.frob_matrix(), r) } else { (self.field.frob_inv_matrix(), m - r) };
        let p = self.p();
        let mut v = self.coeffs();
        for _ in 0..times {
            v = linalg::mat_vec(mat, &v, p);
        }
        Fe { field: self.field.clone(), c: v.into_iter().map(|x| x as u8).collect() }
    }

    /// Absolute trace to `F_p`.
    pub fn trace(&self) -> u32 {
        let p = self.p();
        let s: u32 = self.c.iter().zip(self.field.basis_traces()).map(|(&a, &t)| a as u32 * t % p).sum();
        s % p
    }

    /// `z^p - z`.
    pub fn wp(&self) -> Fe {
        &self.frobenius(1) - self
    }

    /// A root of `z^p - z = self`; the others are `z + F_p`. The returned root has
    /// zero constant coordinate whenever some root does.
    pub fn as_root(&self) -> Result<Fe> {
        if self.trace() != 0 {
            return Err(Error::NoRoot);
        }
        let p = self.p();
        let m = self.field.degree();
        let mut a = self.field.frob_matrix().clone();
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = (row[i] + p - 1) % p;
        }
        let x = linalg::solve(&a, &self.coeffs(), m, p).ok_or(Error::NoRoot)?;
        let z = Fe::from_coeffs(&self.field, &x);
        debug_assert_eq!(&z.wp(), self);
        Ok(z)
    }

    /// Position of the element in the fixed ordering (base-p value of the coordinates).
    pub fn index(&self) -> u128 {
        let p = self.p() as u128;
        self.c.iter().rev().fold(0u128, |acc, &x| acc * p + x as u128)
    }
}

/// Folds a little-endian coefficient buffer modulo the field modulus, reducing mod p.
pub(crate) fn reduce_buf(field: &FieldCtx, buf: &mut [u32]) {
    let p = field.p();
    let m = field.degree();
    let neg = field.neg_mod();
    for k in (m..buf.len()).rev() {
        let c = buf[k] % p;
        buf[k] = 0;
        if c != 0 {
            let base = k - m;
            for (j, &nj) in neg.iter().enumerate() {
                buf[base + j] += c * nj;
            }
        }
    }
    for x in buf.iter_mut().take(m) {
        *x %= p;
    }
}

impl PartialEq for Fe {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.same_field(other)
    }
}

impl Eq for Fe {}

impl Hash for Fe {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fe {
    /// Compares the base-p integers formed by the coordinates.
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.iter().rev().cmp(other.c.iter().rev())
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = super::render_fp_poly(&self.coeffs(), "t");
        if f.alternate() && s.contains('+') {
            write!(f, "({s})")
        } else {
            write!(f, "{s}")
        }
    }
}

fn assert_same(a: &Fe, b: &Fe) {
    assert!(a.same_field(b), "field mismatch: {:?} vs {:?}", a.field, b.field);
}

impl<'a> Add<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn add(self, rhs: &'a Fe) -> Fe {
        assert_same(self, rhs);
        let p = self.p() as u8;
        let mut z = self.clone();
        for (x, &y) in z.c.iter_mut().zip(rhs.c.iter()) {
            let s = *x + y;
            *x = if s >= p { s - p } else { s };
        }
        z
    }
}

impl<'a> Sub<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn sub(self, rhs: &'a Fe) -> Fe {
        assert_same(self, rhs);
        let p = self.p() as u8;
        let mut z = self.clone();
        for (x, &y) in z.c.iter_mut().zip(rhs.c.iter()) {
            *x = if *x >= y { *x - y } else { *x + p - y };
        }
        z
    }
}

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        let p = self.p() as u8;
        let mut z = self.clone();
        for x in z.c.iter_mut() {
            if *x != 0 {
                *x = p - *x;
            }
        }
        z
    }
}

impl<'a> Mul<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn mul(self, rhs: &'a Fe) -> Fe {
        assert_same(self, rhs);
        let field = &self.field;
        let m = field.degree();
        if m == 1 {
            let p = field.p();
            let mut z = self.clone();
            z.c[0] = ((self.c[0] as u32 * rhs.c[0] as u32) % p) as u8;
            return z;
        }
        let mut buf: SmallVec<[u32; 64]> = SmallVec::from_elem(0, 2 * m - 1);
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let a = a as u32;
            for (j, &b) in rhs.c.iter().enumerate() {
                buf[i + j] += a * b as u32;
            }
        }
        reduce_buf(field, &mut buf);
        Fe { field: field.clone(), c: buf[..m].iter().map(|&x| x as u8).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Fe> for Fe {
            type Output = Fe;
            fn $method(self, rhs: Fe) -> Fe {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Fe> for Fe {
            type Output = Fe;
            fn $method(self, rhs: &'a Fe) -> Fe {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Fe> for &'a Fe {
            type Output = Fe;
            fn $method(self, rhs: Fe) -> Fe {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        -&self
    }
}

impl AddAssign<&Fe> for Fe {
    fn add_assign(&mut self, rhs: &Fe) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Fe> for Fe {
    fn sub_assign(&mut self, rhs: &Fe) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Fe> for Fe {
    fn mul_assign(&mut self, rhs: &Fe) {
        *self = &*self * rhs;
    }
}
