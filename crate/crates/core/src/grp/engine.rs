//! Compact group engine: an element is `(y, Z)`, since `M` and `P` are functions of `y`.

use super::{lambda_dims, lambda_filtration, Aut, PhiFamily};
use crate::asw::reduce_with_witness;
use crate::cover::{CoverSpec, RepSolver};
use crate::error::{Error, Result};
use crate::ff::{linalg::Matrix, Embedding, Fe, Field, FieldCtx};
use crate::poly::Poly;
use std::collections::{HashSet, VecDeque};

/// `y` as its index in the enumeration of `V` (base-p digits over the basis), plus `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    pub y: usize,
    pub z: Vec<Fe>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupReport {
    pub order: u128,
    pub exponent: u64,
    pub center_order: u128,
    pub center_generators: Vec<Elem>,
    pub derived_order: u128,
    pub lambda_dims: Vec<usize>,
}

pub struct GroupEngine {
    p: u32,
    n: usize,
    field: Field,
    v_basis: Vec<Fe>,
    ys: Vec<Fe>,
    mats: Vec<Matrix>,
    /// `P^{(y)}` for every `y ∈ V`.
    polys: Vec<Vec<Poly>>,
    /// `P^{(y_τ)}(y_σ)`, indexed `[τ][σ]`.
    evals: Vec<Vec<Vec<Fe>>>,
    roots: Vec<Vec<Fe>>,
    phi: PhiFamily,
    equations: Vec<Poly>,
}

impl GroupEngine {
    /// Uses the reduced functions of the cover as the equations.
    pub fn new(spec: &CoverSpec) -> Result<Self> {
        Self::with_equations(spec, &spec.reduced())
    }

    /// `equations[i]` must lie in the AS class of `spec.functions[i]` (up to a constant);
    /// they may live in any subfield of the ambient field.
    pub fn with_equations(spec: &CoverSpec, equations: &[Poly]) -> Result<Self> {
        Self::build(spec, equations, 0)
    }

    /// Like [`Self::with_equations`], but shifts every chosen `℘`-root by `shift ∈ F_p`.
    pub fn with_root_shift(spec: &CoverSpec, equations: &[Poly], shift: u32) -> Result<Self> {
        Self::build(spec, equations, shift)
    }

    fn build(spec: &CoverSpec, equations: &[Poly], shift: u32) -> Result<Self> {
        let (p, n) = (spec.p, spec.n());
        if equations.len() != n {
            return Err(Error::Mismatch);
        }
        let ambient = spec.ambient.clone();
        let eqs: Vec<Poly> =
            equations.iter().map(|g| Ok(g.map_field(&Embedding::new(g.field(), &ambient)?))).collect::<Result<_>>()?;
        for (g, f) in eqs.iter().zip(&spec.functions) {
            if reduce_with_witness(g).reduced != f.reduced {
                return Err(Error::Mismatch);
            }
        }
        let solver = RepSolver::new(spec);
        let ys = spec.v_elements();
        let mut mats = Vec::with_capacity(ys.len());
        let mut polys = Vec::with_capacity(ys.len());
        let mut constants = Vec::with_capacity(ys.len());
        for y in &ys {
            let m = solver.solve(y)?.phi();
            let combos: Vec<Poly> = m
                .iter()
                .map(|row| {
                    row.iter().zip(&eqs).fold(Poly::zero(&ambient), |acc, (&c, g)| &acc + &g.scale_int(c as i64))
                })
                .collect();
            let mut pv = Vec::with_capacity(n);
            let mut cv = Vec::with_capacity(n);
            for (g, comb) in eqs.iter().zip(&combos) {
                let r = reduce_with_witness(&(&g.shift(y) - comb));
                if !r.reduced.is_zero() {
                    return Err(Error::RepresentationLawViolated(
                        "translation leaves a nonzero reduced remainder".into(),
                    ));
                }
                pv.push(r.witness);
                cv.push(r.constant);
            }
            mats.push(m);
            polys.push(pv);
            constants.push(cv);
        }
        let needs_extension = constants.iter().flatten().any(|c| c.as_root().is_err());
        let field =
            if needs_extension { FieldCtx::default_field(p, ambient.degree() * p as usize)? } else { ambient.clone() };
        let emb = Embedding::new(&ambient, &field)?;
        let ys: Vec<Fe> = ys.iter().map(|y| emb.apply(y)).collect();
        let polys: Vec<Vec<Poly>> = polys.iter().map(|v| v.iter().map(|q| q.map_field(&emb)).collect()).collect();
        let bump = Fe::from_int(&field, shift as i64);
        let roots = constants
            .iter()
            .enumerate()
            .map(|(k, v)| {
                v.iter()
                    .map(|c| {
                        let r = emb.apply(c).as_root()?;
                        Ok(if k == 0 { r } else { &r + &bump })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let evals =
            polys.iter().map(|pv| ys.iter().map(|y| pv.iter().map(|q| q.evaluate(y)).collect()).collect()).collect();
        let phi = PhiFamily::from_spec(spec)?;
        Ok(GroupEngine {
            p,
            n,
            v_basis: spec.v_basis.iter().map(|y| emb.apply(y)).collect(),
            field,
            ys,
            mats,
            polys,
            evals,
            roots,
            phi,
            equations: eqs.iter().map(|g| g.map_field(&emb)).collect(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phi_family(&self) -> &PhiFamily {
        &self.phi
    }

    /// Equations over the engine's field.
    pub fn equations(&self) -> &[Poly] {
        &self.equations
    }

    fn add_index(&self, a: usize, b: usize) -> usize {
        let p = self.p as usize;
        let (mut a, mut b, mut out, mut w) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
            w *= p;
        }
        out
    }

    fn neg_index(&self, a: usize) -> usize {
        let p = self.p as usize;
        let (mut a, mut out, mut w) = (a, 0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * w;
            a /= p;
            w *= p;
        }
        out
    }

    fn mat_fe(&self, m: &Matrix, v: &[Fe]) -> Vec<Fe> {
        m.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Fe::zero(&self.field), |acc, (&c, x)| if c == 0 { acc } else { &acc + &x.scale(c) })
            })
            .collect()
    }

    pub fn identity(&self) -> Elem {
        Elem { y: 0, z: vec![Fe::zero(&self.field); self.n] }
    }

    /// Translations by the basis of `V`, then `W_i ↦ W_i + 1`.
    pub fn generators(&self) -> Vec<Elem> {
        let p = self.p as usize;
        let mut out: Vec<Elem> = (0..self.v_basis.len())
            .map(|k| {
                let y = p.pow(k as u32);
                Elem { y, z: self.roots[y].clone() }
            })
            .collect();
        for i in 0..self.n {
            let mut z = vec![Fe::zero(&self.field); self.n];
            z[i] = Fe::one(&self.field);
            out.push(Elem { y: 0, z });
        }
        out
    }

    /// `σ ∘ τ`.
    pub fn compose(&self, sigma: &Elem, tau: &Elem) -> Elem {
        let mz = self.mat_fe(&self.mats[tau.y], &sigma.z);
        let ev = &self.evals[tau.y][sigma.y];
        let z = mz.iter().zip(&tau.z).zip(ev).map(|((a, b), c)| &(a + b) + c).collect();
        Elem { y: self.add_index(sigma.y, tau.y), z }
    }

    pub fn inverse(&self, sigma: &Elem) -> Elem {
        let y = self.neg_index(sigma.y);
        let minv = &self.mats[y];
        let mz = self.mat_fe(minv, &sigma.z);
        let ev = &self.evals[y][sigma.y];
        Elem { y, z: mz.iter().zip(ev).map(|(a, b)| -&(a + b)).collect() }
    }

    pub fn order(&self, sigma: &Elem) -> Result<u64> {
        let id = self.identity();
        let bound = (self.p as u64).pow(3);
        let mut acc = sigma.clone();
        for k in 1..=bound {
            if acc == id {
                return Ok(k);
            }
            acc = self.compose(&acc, sigma);
        }
        Err(Error::OrderBoundExceeded(bound))
    }

    pub fn to_aut(&self, e: &Elem) -> Aut {
        Aut { y: self.ys[e.y].clone(), m: self.mats[e.y].clone(), p: self.polys[e.y].clone(), z: e.z.clone() }
    }

    /// The element with this translation part and `Z` equal to the chosen root plus `c`.
    pub fn lift(&self, y: usize, c: &[u32]) -> Elem {
        let z = self.roots[y].iter().zip(c).map(|(r, &k)| r + &Fe::from_int(&self.field, k as i64)).collect();
        Elem { y, z }
    }

    /// Breadth-first closure; the result is sorted.
    pub fn closure(&self, gens: &[Elem], bound: usize) -> Result<Vec<Elem>> {
        let id = self.identity();
        let mut seen: HashSet<Elem> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(a) = queue.pop_front() {
            for g in gens {
                let b = self.compose(&a, g);
                if !seen.contains(&b) {
                    if seen.len() >= bound {
                        return Err(Error::BoundExceeded(bound));
                    }
                    seen.insert(b.clone());
                    queue.push_back(b);
                }
            }
        }
        let mut out: Vec<Elem> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    pub fn commutes(&self, a: &Elem, b: &Elem) -> bool {
        self.compose(a, b) == self.compose(b, a)
    }

    /// Elements of `set` commuting with every generator.
    pub fn center(&self, set: &[Elem]) -> Vec<Elem> {
        let gens = self.generators();
        set.iter().filter(|a| gens.iter().all(|g| self.commutes(a, g))).cloned().collect()
    }

    pub fn commutator(&self, a: &Elem, b: &Elem) -> Elem {
        let ab = self.compose(a, b);
        let ba = self.compose(b, a);
        self.compose(&ab, &self.inverse(&ba))
    }

    /// Normal closure of the commutators of the generators.
    pub fn derived(&self, bound: usize) -> Result<Vec<Elem>> {
        let gens = self.generators();
        let mut sub_gens: Vec<Elem> = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = self.commutator(a, b);
                if c != self.identity() && !sub_gens.contains(&c) {
                    sub_gens.push(c);
                }
            }
        }
        if sub_gens.is_empty() {
            return Ok(vec![self.identity()]);
        }
        loop {
            let h = self.closure(&sub_gens, bound)?;
            let set: HashSet<&Elem> = h.iter().collect();
            let mut extra = Vec::new();
            for s in &sub_gens {
                for g in &gens {
                    let conj = self.compose(&self.compose(&self.inverse(g), s), g);
                    if !set.contains(&conj) && !extra.contains(&conj) {
                        extra.push(conj);
                    }
                }
            }
            if extra.is_empty() {
                return Ok(h);
            }
            sub_gens.extend(extra);
        }
    }

    pub fn exponent(&self, set: &[Elem]) -> Result<u64> {
        set.iter().try_fold(1u64, |acc, e| Ok(acc.max(self.order(e)?)))
    }

    /// A minimal generating set, picked greedily in sorted order.
    pub fn minimal_generators(&self, set: &[Elem], bound: usize) -> Result<Vec<Elem>> {
        let mut gens: Vec<Elem> = Vec::new();
        let mut span: HashSet<Elem> = HashSet::from([self.identity()]);
        for e in set {
            if !span.contains(e) {
                gens.push(e.clone());
                span = self.closure(&gens, bound)?.into_iter().collect();
            }
        }
        Ok(gens)
    }

    /// Central elements are exactly `y = 0, M = I, P = 0, Z_1..Z_{n-1} = 0, Z_n ∈ F_p`.
    pub fn center_characterization_check(&self, set: &[Elem]) -> bool {
        let n = self.n;
        let gens = self.generators();
        set.iter().all(|e| {
            let central = gens.iter().all(|g| self.commutes(e, g));
            let shape = e.y == 0 && e.z[..n - 1].iter().all(Fe::is_zero) && e.z[n - 1].as_prime().is_some();
            central == shape
        })
    }

    /// Class translations `c ∈ F_p^n` with `(0, c)` central and in the derived subgroup.
    pub fn central_derived_classes(&self, center: &[Elem], derived: &[Elem]) -> Vec<Vec<u32>> {
        let d: HashSet<&Elem> = derived.iter().collect();
        center
            .iter()
            .filter(|e| e.y == 0 && d.contains(e))
            .filter_map(|e| e.z.iter().map(Fe::as_prime).collect::<Option<Vec<u32>>>())
            .collect()
    }

    /// Exponent of `G / H` for a normal subgroup `H`.
    pub fn quotient_exponent(&self, set: &[Elem], normal: &[Elem]) -> u64 {
        let h: HashSet<&Elem> = normal.iter().collect();
        set.iter()
            .map(|e| {
                let mut acc = e.clone();
                let mut k = 1;
                while !h.contains(&acc) {
                    acc = self.compose(&acc, e);
                    k += 1;
                }
                k
            })
            .max()
            .unwrap_or(1)
    }

    pub fn report(&self, bound: usize) -> Result<GroupReport> {
        let group = self.closure(&self.generators(), bound)?;
        let center = self.center(&group);
        let derived = self.derived(bound)?;
        Ok(GroupReport {
            order: group.len() as u128,
            exponent: self.exponent(&group)?,
            center_order: center.len() as u128,
            center_generators: self.minimal_generators(&center, bound)?,
            derived_order: derived.len() as u128,
            lambda_dims: lambda_dims(&self.phi),
        })
    }

    /// `Λ_1` as a set of vectors, for comparison with central class translations.
    pub fn lambda_one(&self) -> Vec<Vec<u32>> {
        match lambda_filtration(&self.phi).first() {
            Some(b) => span_vectors(b, self.p),
            None => vec![vec![0; self.n]],
        }
    }
}

fn span_vectors(basis: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let n = basis.first().map_or(0, Vec::len);
    let total = (p as usize).pow(basis.len() as u32);
    let mut out: Vec<Vec<u32>> = (0..total)
        .map(|mut idx| {
            let mut v = vec![0u32; n];
            for b in basis {
                let d = (idx % p as usize) as u32;
                idx /= p as usize;
                for (x, &bi) in v.iter_mut().zip(b) {
                    *x = (*x + d * bi) % p;
                }
            }
            v
        })
        .collect();
    out.sort();
    out
}
