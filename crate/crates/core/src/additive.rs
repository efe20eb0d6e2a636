//! Additive polynomials as elements of the twisted ring `k{F}`, where `F a = a^p F`.

use crate::error::{Error, Result};
use crate::ff::{linalg, Embedding, Fe, Field, FieldCtx};
use crate::poly::Poly;
use std::fmt;
use std::ops::{Add, Mul, Sub};

/// Default cap on extension degrees when looking for splitting fields.
pub const DEFAULT_AMBIENT_BOUND: usize = 120;

/// `Σ a_i F^i`, i.e. the polynomial `Σ a_i X^{p^i}`.
#[derive(Clone)]
pub struct TwistedPoly {
    field: Field,
    a: Vec<Fe>,
}

impl PartialEq for TwistedPoly {
    fn eq(&self, other: &Self) -> bool {
        FieldCtx::same(&self.field, &other.field) && self.a == other.a
    }
}

impl Eq for TwistedPoly {}

impl TwistedPoly {
    pub fn from_coeffs(field: &Field, a: Vec<Fe>) -> Self {
        assert!(a.iter().all(|c| FieldCtx::same(c.field(), field)), "field mismatch");
        let mut t = TwistedPoly { field: field.clone(), a };
        while t.a.last().is_some_and(Fe::is_zero) {
            t.a.pop();
        }
        t
    }

    pub fn from_ints(field: &Field, a: &[i64]) -> Self {
        Self::from_coeffs(field, a.iter().map(|&v| Fe::from_int(field, v)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_coeffs(field, Vec::new())
    }

    /// The scalar `α` as `α F^0`.
    pub fn scalar(a: Fe) -> Self {
        let field = a.field().clone();
        Self::from_coeffs(&field, vec![a])
    }

    pub fn one(field: &Field) -> Self {
        Self::scalar(Fe::one(field))
    }

    /// `c F^k`.
    pub fn term(c: Fe, k: usize) -> Self {
        let field = c.field().clone();
        let mut a = vec![Fe::zero(&field); k + 1];
        a[k] = c;
        Self::from_coeffs(&field, a)
    }

    /// `F - 1`, i.e. `X^p - X`.
    pub fn wp(field: &Field) -> Self {
        Self::from_ints(field, &[-1, 1])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.a
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.a.get(i).cloned().unwrap_or_else(|| Fe::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_empty()
    }

    /// Degree in `F`.
    pub fn degree(&self) -> Option<usize> {
        self.a.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Fe> {
        self.a.last()
    }

    pub fn is_separable(&self) -> bool {
        self.a.first().is_some_and(|c| !c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if FieldCtx::same(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Composition product: `(AB)_k = Σ_{i+j=k} a_i b_j^{p^i}`.
    pub fn twisted_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self + other)
    }

    /// Left scalar multiple `c ∘ self`.
    pub fn scale_left(&self, c: &Fe) -> Self {
        Self::from_coeffs(&self.field, self.a.iter().map(|x| c * x).collect())
    }

    /// Divides on the left by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale_left(&l.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn evaluate(&self, y: &Fe) -> Fe {
        let mut acc = Fe::zero(&self.field);
        let mut fy = y.clone();
        for (i, c) in self.a.iter().enumerate() {
            if i > 0 {
                fy = fy.frobenius(1);
            }
            if !c.is_zero() {
                acc += &(c * &fy);
            }
        }
        acc
    }

    /// The ordinary polynomial `Σ a_i X^{p^i}` (dense, so only for small degrees).
    pub fn to_poly(&self) -> Poly {
        let p = self.p() as usize;
        Poly::from_terms(&self.field, self.a.iter().enumerate().map(|(i, c)| (c.clone(), p.pow(i as u32))))
    }

    pub fn from_poly(f: &Poly) -> Result<Self> {
        let p = f.p() as usize;
        let mut a = Vec::new();
        for (k, c) in f.terms() {
            let i = log_p(k, p).ok_or(Error::NotAdditive)?;
            if a.len() <= i {
                a.resize(i + 1, Fe::zero(f.field()));
            }
            a[i] = c.clone();
        }
        Ok(Self::from_coeffs(f.field(), a))
    }

    pub fn map_field(&self, emb: &Embedding) -> Self {
        Self::from_coeffs(emb.target(), self.a.iter().map(|c| emb.apply(c)).collect())
    }

    /// `F ∘ self`.
    fn frob_left(&self) -> Self {
        let mut a = vec![Fe::zero(&self.field)];
        a.extend(self.a.iter().map(|c| c.frobenius(1)));
        Self::from_coeffs(&self.field, a)
    }

    /// Right remainder: `self - Q ∘ d` with F-degree below `deg d`.
    pub fn rem_right(&self, d: &Self) -> Self {
        let r = d.degree().expect("nonzero divisor");
        let mut a = self.a.clone();
        while a.len() > r {
            let top = a.len() - 1;
            let shift = top - r;
            // subtract (c ∘ F^{shift}) ∘ d, with c killing the top coefficient
            let c = &a[top] * &d.a[r].frobenius(shift as i64).inv().unwrap();
            for (j, dj) in d.a.iter().enumerate() {
                let term = &c * &dj.frobenius(shift as i64);
                a[shift + j] -= &term;
            }
            debug_assert!(a[top].is_zero());
            a.pop();
            while a.last().is_some_and(Fe::is_zero) {
                a.pop();
            }
        }
        Self::from_coeffs(&self.field, a)
    }

    /// Renders as `F^2 + 3*F + 1`.
    pub fn render_f(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = Vec::new();
        for (i, c) in self.a.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "F".into(),
                _ => format!("F^{i}"),
            };
            let coef = format!("{c:#}");
            out.push(match (i, coef.as_str()) {
                (0, _) => coef,
                (_, "1") => mono,
                _ => format!("{coef}*{mono}"),
            });
        }
        out.join(" + ")
    }

    /// Renders the expanded polynomial `X^25 + 3*X^5 + X` without building it densely.
    pub fn render_x(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let p = self.p() as u128;
        let mut out = Vec::new();
        for (i, c) in self.a.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = p.pow(i as u32);
            let mono = if e == 1 { var.to_string() } else { format!("{var}^{e}") };
            let coef = format!("{c:#}");
            out.push(if coef == "1" { mono } else { format!("{coef}*{mono}") });
        }
        out.join(" + ")
    }
}

fn log_p(k: usize, p: usize) -> Option<usize> {
    let mut e = 0;
    let mut v = 1usize;
    while v < k {
        v = v.checked_mul(p)?;
        e += 1;
    }
    (v == k).then_some(e)
}

impl fmt::Display for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_f())
    }
}

impl fmt::Debug for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedPoly({})", self.render_f())
    }
}

impl<'a> Add<&'a TwistedPoly> for &'a TwistedPoly {
    type Output = TwistedPoly;
    fn add(self, rhs: &'a TwistedPoly) -> TwistedPoly {
        assert!(FieldCtx::same(&self.field, &rhs.field), "field mismatch");
        let n = self.a.len().max(rhs.a.len());
        TwistedPoly::from_coeffs(&self.field, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a TwistedPoly> for &'a TwistedPoly {
    type Output = TwistedPoly;
    fn sub(self, rhs: &'a TwistedPoly) -> TwistedPoly {
        assert!(FieldCtx::same(&self.field, &rhs.field), "field mismatch");
        let n = self.a.len().max(rhs.a.len());
        TwistedPoly::from_coeffs(&self.field, (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a TwistedPoly> for &'a TwistedPoly {
    type Output = TwistedPoly;
    fn mul(self, rhs: &'a TwistedPoly) -> TwistedPoly {
        assert!(FieldCtx::same(&self.field, &rhs.field), "field mismatch");
        if self.is_zero() || rhs.is_zero() {
            return TwistedPoly::zero(&self.field);
        }
        let mut out = vec![Fe::zero(&self.field); self.a.len() + rhs.a.len() - 1];
        for (i, ai) in self.a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in rhs.a.iter().enumerate() {
                out[i + j] += &(ai * &bj.frobenius(i as i64));
            }
        }
        TwistedPoly::from_coeffs(&self.field, out)
    }
}

pub fn is_additive(f: &Poly) -> bool {
    let p = f.p() as usize;
    f.support().all(|k| log_p(k, p).is_some())
}

/// Writes `f = X·S(X) + c·X`; returns `(S, c)`.
pub fn split_shape(f: &Poly) -> Result<(TwistedPoly, Fe)> {
    let field = f.field();
    let p = f.p() as usize;
    let mut c = Fe::zero(field);
    let mut s = Vec::new();
    for (k, a) in f.terms() {
        if k == 1 {
            c = a.clone();
            continue;
        }
        let j = k.checked_sub(1).and_then(|e| log_p(e, p)).ok_or(Error::WrongShape)?;
        if s.len() <= j {
            s.resize(j + 1, Fe::zero(field));
        }
        s[j] = &s[j] + a;
    }
    let s = TwistedPoly::from_coeffs(field, s);
    if s.degree().unwrap_or(0) < 1 {
        return Err(Error::WrongShape);
    }
    Ok((s, c))
}

/// The monic palindromic polynomial `Ad_f` of `f = X·S(X) + cX`.
pub fn palindromic(f: &Poly) -> Result<TwistedPoly> {
    let (s_poly, _) = split_shape(f)?;
    let field = f.field();
    let s = s_poly.degree().unwrap();
    let a = s_poly.coeffs();
    let mut out = vec![Fe::zero(field); 2 * s + 1];
    for (k, ak) in a.iter().enumerate() {
        if ak.is_zero() {
            continue;
        }
        out[s + k] += &ak.frobenius(s as i64);
        out[s - k] += &ak.frobenius((s - k) as i64);
    }
    let ad = TwistedPoly::from_coeffs(field, out).scale_left(&a[s].inv().unwrap());
    Ok(ad.monic())
}

/// `P_V = ∏_{y ∈ V} (X - y)` for `V = span(basis)`.
pub fn subspace_poly(field: &Field, basis: &[Fe]) -> Result<TwistedPoly> {
    let p = field.p() as u64;
    let mut pv = TwistedPoly::one(field);
    for z in basis {
        let c = pv.evaluate(z);
        if c.is_zero() {
            return Err(Error::DependentBasis);
        }
        pv = &pv.frob_left() - &pv.scale_left(&c.pow(p - 1));
    }
    Ok(pv)
}

/// F_p-basis of `{y ∈ field : P(y) = 0}`, after embedding `P` into `field` if needed.
pub fn additive_kernel(pol: &TwistedPoly, field: &Field) -> Result<Vec<Fe>> {
    let pol = if FieldCtx::same(pol.field(), field) {
        pol.clone()
    } else {
        pol.map_field(&Embedding::new(pol.field(), field)?)
    };
    let m = field.degree();
    let p = field.p();
    let cols: Vec<Vec<u32>> = (0..m)
        .map(|i| {
            let mut e = vec![0u32; m];
            e[i] = 1;
            pol.evaluate(&Fe::from_coeffs(field, &e)).coeffs()
        })
        .collect();
    let mat = linalg::transpose(&cols);
    Ok(linalg::nullspace(&mat, m, p).into_iter().map(|v| Fe::from_coeffs(field, &v)).collect())
}

/// Smallest `e ≥ 1` with `Z(P) ⊆ F_{p^e}`, from `F^e ≡ 1` modulo `P` on the right.
pub fn root_field_degree(pol: &TwistedPoly, bound: usize) -> Result<usize> {
    if !pol.is_separable() {
        return Err(Error::NotSeparable);
    }
    if pol.degree() == Some(0) {
        return Ok(1);
    }
    let one = TwistedPoly::one(pol.field());
    let mut r = one.clone();
    for e in 1..=bound {
        r = r.frob_left().rem_right(pol);
        if r == one {
            return Ok(e);
        }
    }
    Err(Error::BoundExceeded(bound))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Smallest multiple of the coefficient field's degree over which `P` has all its roots.
pub fn minimal_splitting_degree(pol: &TwistedPoly, bound: usize) -> Result<usize> {
    let e = root_field_degree(pol, bound)?;
    let total = lcm(pol.field().degree(), e);
    if total > bound {
        return Err(Error::BoundExceeded(bound));
    }
    Ok(total)
}

/// Zero locus of an additive polynomial inside a field that contains all of it.
#[derive(Clone, Debug)]
pub struct ZeroSet {
    pub field: Field,
    pub basis: Vec<Fe>,
    /// From the polynomial's field into `field`.
    pub embedding: Embedding,
}

pub fn zero_set(pol: &TwistedPoly, bound: usize) -> Result<ZeroSet> {
    let m = minimal_splitting_degree(pol, bound)?;
    zero_set_in_degree(pol, m)
}

/// Like [`zero_set`] but in the default field of a prescribed degree (a multiple of the splitting degree).
pub fn zero_set_in_degree(pol: &TwistedPoly, m: usize) -> Result<ZeroSet> {
    let field = if m == pol.field().degree() { pol.field().clone() } else { FieldCtx::default_field(pol.p(), m)? };
    let embedding = Embedding::new(pol.field(), &field)?;
    let basis = additive_kernel(&pol.map_field(&embedding), &field)?;
    let r = pol.degree().unwrap_or(0);
    if basis.len() != r {
        return Err(Error::BoundExceeded(m));
    }
    Ok(ZeroSet { field, basis, embedding })
}

/// Degree of the smallest subfield containing all the given elements.
pub fn generated_degree(elems: &[Fe]) -> usize {
    let Some(first) = elems.first() else {
        return 1;
    };
    let m = first.field().degree();
    (1..=m).filter(|d| m % d == 0).find(|&d| elems.iter().all(|g| &g.frobenius(d as i64) == g)).unwrap_or(m)
}

/// Checks F_p-independence of field elements.
pub fn independent_over_fp(elems: &[Fe]) -> bool {
    let Some(first) = elems.first() else {
        return true;
    };
    let rows: Vec<Vec<u32>> = elems.iter().map(Fe::coeffs).collect();
    linalg::rank(&rows, first.field().degree(), first.p()) == elems.len()
}

/// Writes every `S_i` as `γ_i S_1`. Returns `d` (degree of `F_p(γ_2, ..., γ_n)`) and the `γ_i`.
/// With a single polynomial the convention is `d = s`.
pub fn gamma_decomposition(list: &[TwistedPoly]) -> Result<(usize, Vec<Fe>)> {
    let s1 = list.first().ok_or(Error::NotProportional)?;
    let field = s1.field().clone();
    let s = s1.degree().ok_or(Error::NotProportional)?;
    let lead = s1.leading().unwrap().clone();
    let mut gammas = vec![Fe::one(&field)];
    for si in &list[1..] {
        si.check(s1)?;
        if si.degree() != Some(s) {
            return Err(Error::NotProportional);
        }
        let g = si.leading().unwrap().div(&lead)?;
        if si != &s1.scale_left(&g) {
            return Err(Error::NotProportional);
        }
        gammas.push(g);
    }
    if list.len() == 1 {
        return Ok((s, gammas));
    }
    if !independent_over_fp(&gammas) {
        return Err(Error::DependentGammas);
    }
    let d = generated_degree(&gammas);
    let supported = s1.coeffs().iter().enumerate().all(|(i, c)| c.is_zero() || i % d == 0);
    if !supported {
        return Err(Error::SupportViolation);
    }
    Ok((d, gammas))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, m: usize) -> Field {
        FieldCtx::default_field(p, m).unwrap()
    }

    #[test]
    fn frobenius_twists_scalars() {
        let k = f(5, 2);
        let t = Fe::gen(&k);
        let fr = TwistedPoly::term(Fe::one(&k), 1);
        let prod = &fr * &TwistedPoly::scalar(t.clone());
        assert_eq!(prod, TwistedPoly::term(t.frobenius(1), 1));
        let a = TwistedPoly::from_coeffs(&k, vec![t.clone(), Fe::one(&k)]);
        assert_eq!(&a * &TwistedPoly::one(&k), a);
    }

    #[test]
    fn wp_squared() {
        let k = f(5, 1);
        let wp = TwistedPoly::wp(&k);
        let sq = &wp * &wp;
        assert_eq!(sq, TwistedPoly::from_ints(&k, &[1, -2, 1]));
        assert_eq!(sq.to_poly(), Poly::from_terms(&k, [(Fe::one(&k), 25), (Fe::from_int(&k, 3), 5), (Fe::one(&k), 1)]));
        assert_eq!(sq.render_x("X"), "X^25 + 3*X^5 + X");
        assert_eq!(sq.render_f(), "F^2 + 3*F + 1");
    }

    #[test]
    fn recognizes_additive() {
        let k5 = f(5, 1);
        let wp = Poly::from_ints(&k5, &[0, -1, 0, 0, 0, 1]);
        assert!(is_additive(&wp));
        assert!(!is_additive(&Poly::monomial(Fe::one(&k5), 6)));
        let k = f(5, 2);
        let t = Fe::gen(&k);
        let g = Poly::from_terms(&k, [(Fe::from_int(&k, 3), 25), (t.clone(), 5), (Fe::one(&k), 1)]);
        let tp = TwistedPoly::from_poly(&g).unwrap();
        assert_eq!(tp.coeffs(), &[Fe::one(&k), t, Fe::from_int(&k, 3)]);
        assert_eq!(TwistedPoly::from_poly(&Poly::monomial(Fe::one(&k5), 6)).unwrap_err(), Error::NotAdditive);
    }

    #[test]
    fn palindromic_examples() {
        let k = f(5, 1);
        let x6 = Poly::monomial(Fe::one(&k), 6);
        assert_eq!(palindromic(&x6).unwrap(), TwistedPoly::from_ints(&k, &[1, 0, 1]));
        let f1 = Poly::from_ints(&k, &[0, 0, 4, 0, 0, 0, 1]);
        let ad = palindromic(&f1).unwrap();
        assert_eq!(ad, TwistedPoly::from_ints(&k, &[1, 3, 1]));
        assert_eq!(zero_set(&ad, 30).unwrap().basis.len(), 2);
        let shifted = &x6 + &Poly::monomial(Fe::from_int(&k, 7), 1);
        assert_eq!(palindromic(&shifted).unwrap(), palindromic(&x6).unwrap());
        assert_eq!(palindromic(&Poly::monomial(Fe::one(&k), 7)).unwrap_err(), Error::WrongShape);
    }

    #[test]
    fn kernels() {
        let wp5 = TwistedPoly::wp(&f(5, 1));
        for m in [1, 2, 3] {
            let field = f(5, m);
            let ker = additive_kernel(&wp5, &field).unwrap();
            assert_eq!(ker, vec![Fe::one(&field)]);
        }
        let sq = &wp5 * &wp5;
        assert_eq!(additive_kernel(&sq, &f(5, 2)).unwrap().len(), 1);
        assert_eq!(additive_kernel(&sq, &f(5, 5)).unwrap().len(), 2);
    }

    #[test]
    fn splitting_degrees() {
        let k = f(5, 1);
        let wp = TwistedPoly::wp(&k);
        assert_eq!(minimal_splitting_degree(&wp, 10).unwrap(), 1);
        assert_eq!(minimal_splitting_degree(&(&wp * &wp), 10).unwrap(), 5);
        let ad = TwistedPoly::from_ints(&k, &[1, 0, 1]);
        assert_eq!(minimal_splitting_degree(&ad, 10).unwrap(), 4);
        assert_eq!(minimal_splitting_degree(&ad, 3).unwrap_err(), Error::BoundExceeded(3));
    }

    #[test]
    fn subspace_polys() {
        let k = f(5, 1);
        assert_eq!(subspace_poly(&k, &[Fe::one(&k)]).unwrap(), TwistedPoly::wp(&k));
        assert_eq!(subspace_poly(&k, &[]).unwrap(), TwistedPoly::one(&k));
        let wp = TwistedPoly::wp(&k);
        let sq = &wp * &wp;
        let zs = zero_set(&sq, 10).unwrap();
        let pv = subspace_poly(&zs.field, &zs.basis).unwrap();
        assert_eq!(pv, sq.map_field(&zs.embedding));
        let one = Fe::one(&zs.field);
        assert_eq!(subspace_poly(&zs.field, &[one.clone(), one.scale(2)]).unwrap_err(), Error::DependentBasis);
    }

    #[test]
    fn gamma_examples() {
        let k = f(5, 2);
        let t = Fe::gen(&k);
        let s1 = TwistedPoly::term(Fe::one(&k), 2);
        let s2 = TwistedPoly::term(t.clone(), 2);
        assert_eq!(gamma_decomposition(&[s1.clone(), s2]).unwrap(), (2, vec![Fe::one(&k), t.clone()]));
        assert_eq!(gamma_decomposition(std::slice::from_ref(&s1)).unwrap(), (2, vec![Fe::one(&k)]));
        let bad = TwistedPoly::from_ints(&k, &[0, 1, 1]);
        assert_eq!(gamma_decomposition(&[s1.clone(), bad]).unwrap_err(), Error::NotProportional);
        let dep = TwistedPoly::term(Fe::from_int(&k, 2), 2);
        assert_eq!(gamma_decomposition(&[s1, dep]).unwrap_err(), Error::DependentGammas);
        let odd = TwistedPoly::from_coeffs(&k, vec![Fe::zero(&k), Fe::one(&k), Fe::one(&k)]);
        let odd2 = odd.scale_left(&t);
        assert_eq!(gamma_decomposition(&[odd, odd2]).unwrap_err(), Error::SupportViolation);
    }
}
