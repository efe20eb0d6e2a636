use crate::error::{Error, Result};
use crate::ff::{linalg, linalg::Matrix, Fe, Field, FieldCtx};
use crate::poly::Poly;
use std::collections::{HashSet, VecDeque};

/// `σ(X) = X + y`, `σ[W] = M[W] + [P(X)] + [Z]`, normalized so that `P(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Aut {
    pub y: Fe,
    pub m: Matrix,
    pub p: Vec<Poly>,
    pub z: Vec<Fe>,
}

fn mat_apply_fe(m: &Matrix, v: &[Fe], field: &Field) -> Vec<Fe> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(Fe::zero(field), |acc, (&c, x)| if c == 0 { acc } else { &acc + &x.scale(c) })
        })
        .collect()
}

fn mat_apply_poly(m: &Matrix, v: &[Poly], field: &Field) -> Vec<Poly> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Poly::zero(field), |acc, (&c, x)| if c == 0 { acc } else { &acc + &x.scale_int(c as i64) })
        })
        .collect()
}

impl Aut {
    pub fn new(y: Fe, m: Matrix, p: Vec<Poly>, z: Vec<Fe>) -> Result<Self> {
        let n = m.len();
        let field = y.field().clone();
        let unitriangular =
            m.iter().enumerate().all(|(i, row)| row.len() == n && row[i] == 1 && row[i + 1..].iter().all(|&x| x == 0));
        if !unitriangular || p.len() != n || z.len() != n {
            return Err(Error::WrongShape);
        }
        if p.iter().any(|q| !FieldCtx::same(q.field(), &field)) || z.iter().any(|c| !c.same_field(&y)) {
            return Err(Error::FieldMismatch);
        }
        let mut a = Aut { y, m, p, z };
        a.normalize();
        Ok(a)
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Aut { y: Fe::zero(field), m: linalg::identity(n), p: vec![Poly::zero(field); n], z: vec![Fe::zero(field); n] }
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn field(&self) -> &Field {
        self.y.field()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field(), self.n())
    }

    fn normalize(&mut self) {
        for (q, z) in self.p.iter_mut().zip(self.z.iter_mut()) {
            let c = q.coeff(0);
            if !c.is_zero() {
                *z += &c;
                *q = &*q - &Poly::constant(c);
            }
        }
    }

    /// `σ ∘ τ` (apply `τ` first, then `σ`, as automorphisms of the function field).
    pub fn compose(&self, tau: &Aut) -> Result<Aut> {
        let sigma = self;
        if sigma.n() != tau.n() || !sigma.y.same_field(&tau.y) {
            return Err(Error::Mismatch);
        }
        let field = sigma.field().clone();
        let p = field.p();
        let m = linalg::mat_mul(&tau.m, &sigma.m, p);
        let mp = mat_apply_poly(&tau.m, &sigma.p, &field);
        let mz = mat_apply_fe(&tau.m, &sigma.z, &field);
        let mut out = Aut {
            y: &sigma.y + &tau.y,
            m,
            p: mp.iter().zip(&tau.p).map(|(a, b)| a + &b.shift(&sigma.y)).collect(),
            z: mz.iter().zip(&tau.z).map(|(a, b)| a + b).collect(),
        };
        out.normalize();
        Ok(out)
    }

    pub fn inverse(&self) -> Aut {
        let field = self.field().clone();
        let p = field.p();
        let minv = linalg::inverse(&self.m, p).expect("unitriangular");
        let neg_y = -&self.y;
        // P'(X + y) - P'(y) = -M^{-1} P(X)
        let shifted: Vec<Poly> = self.p.iter().map(|q| q.shift(&neg_y)).collect();
        let q = mat_apply_poly(&minv, &shifted, &field);
        let p_inv: Vec<Poly> = q.iter().map(|r| &Poly::constant(r.coeff(0)) - r).collect();
        let mz = mat_apply_fe(&minv, &self.z, &field);
        let z_inv = mz.iter().zip(&p_inv).map(|(a, r)| -&(a + &r.evaluate(&self.y))).collect();
        Aut { y: neg_y, m: minv, p: p_inv, z: z_inv }
    }

    pub fn pow(&self, k: u64) -> Aut {
        let mut acc = Aut::identity(self.field(), self.n());
        for _ in 0..k {
            acc = acc.compose(self).unwrap();
        }
        acc
    }

    /// Smallest `k ≥ 1` with `σ^k = id`, searching up to `p^3`.
    pub fn element_order(&self) -> Result<u64> {
        let bound = (self.field().p() as u64).pow(3);
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Ok(k);
            }
            acc = acc.compose(self)?;
        }
        Err(Error::OrderBoundExceeded(bound))
    }

    /// `Σ_j M_ij g_j(X) + ℘(P_i) + ℘(Z_i) = g_i(X + y)` for every `i`.
    pub fn satisfies(&self, equations: &[Poly]) -> bool {
        let field = self.field();
        let lhs = mat_apply_poly(&self.m, equations, field);
        lhs.iter()
            .zip(&self.p)
            .zip(&self.z)
            .zip(equations)
            .all(|(((l, q), z), g)| &(l + &q.wp()) + &Poly::constant(z.wp()) == g.shift(&self.y))
    }
}

/// Breadth-first closure of a generating set.
pub fn group_closure(gens: &[Aut], bound: usize) -> Result<Vec<Aut>> {
    let first = gens.first().ok_or(Error::OutOfRange(0))?;
    let id = Aut::identity(first.field(), first.n());
    let mut seen: HashSet<Aut> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(a) = queue.pop_front() {
        for g in gens {
            let b = a.compose(g)?;
            if seen.insert(b.clone()) {
                if seen.len() > bound {
                    return Err(Error::BoundExceeded(bound));
                }
                order.push(b.clone());
                queue.push_back(b);
            }
        }
    }
    Ok(order)
}
