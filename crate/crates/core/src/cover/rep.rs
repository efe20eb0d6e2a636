//! Translation stability: the matrices `L(y)` and the checks built on them.

use super::ramification::{max_jump_ratio, ramification, RamificationReport};
use super::{adapt_basis, flatten, is_adapted, span_elements, AdaptedBasis, CoverSpec};
use crate::additive::{palindromic, split_shape, zero_set};
use crate::asw::{reduce, sigma_level};
use crate::error::{Error, Result};
use crate::ff::{linalg, Fe, Field, FieldCtx};
use crate::poly::Poly;
use std::collections::HashSet;

/// Upper unitriangular `L(y)`: `f_i(X+y) ≡ Σ_j ℓ_{j,i}(y) f_j(X)` modulo `℘(k[X])`.
/// `entries[j][i]` holds `ℓ_{j,i}` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    pub y: Fe,
    pub entries: Vec<Vec<u32>>,
}

impl RepMatrix {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn is_identity(&self) -> bool {
        self.entries == linalg::identity(self.n())
    }

    pub fn get(&self, j: usize, i: usize) -> u32 {
        self.entries[j][i]
    }

    /// `Φ(y)`, the transpose.
    pub fn phi(&self) -> Vec<Vec<u32>> {
        linalg::transpose(&self.entries)
    }
}

/// A single named instance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub tag: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(tag: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { tag: tag.into(), passed, detail: detail.into() }
    }
}

/// Solves for `L(y)` by matching F_p coordinates of reduced classes.
pub struct RepSolver {
    p: u32,
    ambient: Field,
    reduced: Vec<Poly>,
    flat: Vec<Vec<u32>>,
    max_deg: usize,
}

impl RepSolver {
    pub fn new(spec: &CoverSpec) -> Self {
        let reduced = spec.reduced();
        let max_deg = reduced.iter().filter_map(Poly::degree).max().unwrap_or(0);
        let flat = reduced.iter().map(|f| flatten(f, max_deg)).collect();
        RepSolver { p: spec.p, ambient: spec.ambient.clone(), reduced, flat, max_deg }
    }

    pub fn solve(&self, y: &Fe) -> Result<RepMatrix> {
        if !FieldCtx::same(y.field(), &self.ambient) {
            return Err(Error::FieldMismatch);
        }
        let n = self.reduced.len();
        let mut entries = linalg::identity(n);
        for i in 0..n {
            let h = reduce(&self.reduced[i].delta(y)).reduced;
            if h.is_zero() {
                continue;
            }
            if h.degree().unwrap() > self.max_deg || i == 0 {
                return Err(Error::NotStable(i + 1));
            }
            let rhs = flatten(&h, self.max_deg);
            let cols = &self.flat[..i];
            let mat: Vec<Vec<u32>> = (0..rhs.len()).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
            let sol = linalg::solve(&mat, &rhs, i, self.p).ok_or(Error::NotStable(i + 1))?;
            for (j, &l) in sol.iter().enumerate() {
                entries[j][i] = l;
            }
        }
        Ok(RepMatrix { y: y.clone(), entries })
    }
}

pub fn solve_rep_matrix(spec: &CoverSpec, y: &Fe) -> Result<RepMatrix> {
    RepSolver::new(spec).solve(y)
}

/// Everything `verify_cover` found.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub adapted: AdaptedBasis,
    pub matrices: Vec<RepMatrix>,
    pub ramification: RamificationReport,
    pub s1: Option<usize>,
    pub checks: Vec<Check>,
}

impl CoverReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs the full battery of instance checks on a candidate big action.
pub fn verify_cover(spec: &CoverSpec) -> Result<CoverReport> {
    let p = spec.p;
    let n = spec.n();
    let v = spec.v();
    let mut checks = Vec::new();
    let adapted = adapt_basis(&spec.functions)?;
    checks.push(Check::new(
        "adapted-order",
        is_adapted(&spec.functions),
        "degrees prime to p, nondecreasing, no degree drop within equal-degree blocks",
    ));

    let solver = RepSolver::new(spec);
    let matrices = spec.v_basis.iter().map(|y| solver.solve(y)).collect::<Result<Vec<_>>>()?;

    for a in 0..matrices.len() {
        for b in a..matrices.len() {
            let sum = &spec.v_basis[a] + &spec.v_basis[b];
            let lsum = solver.solve(&sum).map_err(|e| {
                Error::RepresentationLawViolated(format!("sum of basis vectors {a},{b} not stable: {e}"))
            })?;
            let ab = linalg::mat_mul(&matrices[a].entries, &matrices[b].entries, p);
            let ba = linalg::mat_mul(&matrices[b].entries, &matrices[a].entries, p);
            if lsum.entries != ab || lsum.entries != ba {
                return Err(Error::RepresentationLawViolated(format!(
                    "L(y{a} + y{b}) differs from the product of L(y{a}) and L(y{b})"
                )));
            }
        }
    }
    checks.push(Check::new("rep-law", true, "L(y + y') = L(y) L(y') on basis pairs"));

    let degrees = spec.degrees();
    let zero_pattern =
        matrices.iter().all(|l| (0..n).all(|i| (0..i).all(|j| degrees[j] != degrees[i] || l.get(j, i) == 0)));
    checks.push(Check::new("equal-degree-zero-pattern", zero_pattern, "l_{j,i} = 0 when m_j = m_i"));

    let reduced = spec.reduced();
    let shape = split_shape(&reduced[0]);
    let s1 = shape.as_ref().ok().map(|(s, _)| s.degree().unwrap());
    checks.push(Check::new("f1-shape", shape.is_ok(), "f_1 = X S_1(X) + c X with S_1 additive"));
    if let Ok(ad) = palindromic(&reduced[0]) {
        let ok = spec.v_basis.iter().all(|y| ad.evaluate(y).is_zero());
        checks.push(Check::new("v-in-ad-kernel", ok, "V lies in the zero set of Ad_{f_1}"));
    }

    let pv = (p as u128).pow(v as u32);
    let mn = *degrees.last().unwrap_or(&0) as u128;
    let bound_ok = pv > mn && s1.is_some_and(|s| v <= 2 * s);
    checks.push(Check::new(
        "translation-bounds",
        bound_ok,
        format!("p^v = {pv} >= m_n + 1 = {}; v = {v} <= 2 s_1 = {}", mn + 1, s1.map_or(0, |s| 2 * s)),
    ));

    let levels: Vec<u32> = reduced.iter().map(|f| sigma_level(f).unwrap_or(0)).collect();
    let level_ok = levels.iter().enumerate().all(|(i, &l)| l as usize <= i + 2);
    checks.push(Check::new("sigma-level-bound", level_ok, format!("levels {levels:?}, f_i in Sigma_(i+1)")));

    let ram = ramification(p, &degrees, v);
    checks.push(Check::new("hurwitz", ram.hurwitz_ok, "2(g - 1) = -2 p^n + d"));
    checks.push(Check::new(
        "big-action",
        ram.is_big_action,
        format!("|G| (p-1) = {} > 2 p g = {}", ram.order * (p as u128 - 1), 2 * p as u128 * ram.genus),
    ));

    Ok(CoverReport { adapted, matrices, ramification: ram, s1, checks })
}

pub fn rho_trivial(matrices: &[RepMatrix]) -> bool {
    matrices.iter().all(RepMatrix::is_identity)
}

/// When `ρ` is trivial, every `f_i` must have the shape `X S_i(X) + c_i X`
/// and `V` must lie in every `Z(Ad_{f_i})`.
pub fn trivial_rep_check(spec: &CoverSpec, matrices: &[RepMatrix]) -> Vec<Check> {
    if !rho_trivial(matrices) {
        return Vec::new();
    }
    let reduced = spec.reduced();
    let shapes = reduced.iter().all(|f| split_shape(f).is_ok());
    let kernels =
        reduced.iter().all(|f| palindromic(f).is_ok_and(|ad| spec.v_basis.iter().all(|y| ad.evaluate(y).is_zero())));
    vec![
        Check::new("trivial-rep-shape", shapes, "every f_i = X S_i(X) + c_i X"),
        Check::new("trivial-rep-kernel", kernels, "V lies in every Z(Ad_{f_i})"),
    ]
}

/// Predicates about maximal jumps and their forced consequences.
#[derive(Clone, Debug)]
pub struct MaxJumpReport {
    /// `sigma_level(f_i) = i + 1` for all `i`.
    pub levels_exact: bool,
    /// Every superdiagonal form `ℓ_{i,i+1}` is nonzero on `V`.
    pub subdiagonal_nonzero: bool,
    pub vacuous: bool,
    pub checks: Vec<Check>,
}

impl MaxJumpReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn max_jump_predicate(spec: &CoverSpec, matrices: &[RepMatrix]) -> (bool, bool) {
    let levels_exact = spec.reduced().iter().enumerate().all(|(i, f)| sigma_level(f).ok() == Some(i as u32 + 2));
    let n = spec.n();
    let sub = (0..n.saturating_sub(1)).all(|i| matrices.iter().any(|l| l.get(i, i + 1) != 0));
    (levels_exact, sub)
}

pub fn max_jump_check(spec: &CoverSpec) -> Result<MaxJumpReport> {
    let solver = RepSolver::new(spec);
    let matrices = spec.v_basis.iter().map(|y| solver.solve(y)).collect::<Result<Vec<_>>>()?;
    let (a, b) = max_jump_predicate(spec, &matrices);
    let n = spec.n();
    let mut checks =
        vec![Check::new("max-jump-equivalence", a == b, format!("exact levels {a}, nonzero subdiagonal {b}"))];
    if a && b && n >= 2 {
        let p = spec.p as usize;
        let s1 = split_shape(&spec.functions[0].reduced)?.0.degree().unwrap();
        let ps = p.pow(s1 as u32);
        let degrees = spec.degrees();
        let expected: Vec<usize> = (1..=n).map(|i| 1 + i * ps).collect();
        checks.push(Check::new(
            "max-jump-degrees",
            degrees == expected,
            format!("m = {degrees:?}, expected {expected:?}"),
        ));
        checks.push(Check::new(
            "max-jump-translations",
            spec.v() == s1 + 1,
            format!("v = {}, s_1 + 1 = {}", spec.v(), s1 + 1),
        ));
        let ram = ramification(spec.p, &degrees, spec.v());
        let closed = max_jump_ratio(spec.p, n);
        let ok = ram.ratio.is_some_and(|r| r.same_value(closed));
        checks.push(Check::new("max-jump-ratio", ok, format!("|G|/g equals {}", closed.reduced())));
    }
    Ok(MaxJumpReport { levels_exact: a, subdiagonal_nonzero: b, vacuous: n == 1, checks })
}

pub fn truncate_cover(spec: &CoverSpec, d: usize) -> Result<CoverSpec> {
    if d == 0 || d > spec.n() {
        return Err(Error::OutOfRange(d));
    }
    CoverSpec::from_classes(&spec.ambient, spec.functions[..d].to_vec(), spec.v_basis.clone())
}

/// The largest `V ⊆ Z(Ad_{f_1})` whose translations preserve the span of the classes.
/// Returns the ambient field (large enough for `Z(Ad_{f_1})`) and a basis.
pub fn find_stable_translations(functions: &[Poly], bound: usize) -> Result<(Field, Vec<Fe>)> {
    let f1 = functions.first().ok_or(Error::OutOfRange(0))?;
    let ad = palindromic(f1)?;
    let zs = zero_set(&ad, bound)?;
    let field = zs.field.clone();
    let lifted: Vec<Poly> = functions.iter().map(|f| f.map_field(&zs.embedding)).collect();
    let probe = CoverSpec::new(&lifted, Vec::new())?;
    let solver = RepSolver::new(&probe);
    let candidates = span_elements(&field, &zs.basis);
    let survivors: Vec<Fe> = candidates.into_iter().filter(|y| solver.solve(y).is_ok()).collect();
    let set: HashSet<&Fe> = survivors.iter().collect();
    for a in &survivors {
        for b in &survivors {
            if !set.contains(&(a + b)) {
                return Err(Error::RepresentationLawViolated("stable translations not closed under addition".into()));
            }
        }
    }
    let mut basis: Vec<Fe> = Vec::new();
    let p = field.p();
    let m = field.degree();
    for y in &survivors {
        let mut rows: Vec<Vec<u32>> = basis.iter().map(Fe::coeffs).collect();
        rows.push(y.coeffs());
        if linalg::rank(&rows, m, p) == rows.len() {
            basis.push(y.clone());
        }
    }
    Ok((field, basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x6_spec() -> CoverSpec {
        let k = FieldCtx::prime(5).unwrap();
        let f = Poly::monomial(Fe::one(&k), 6);
        let (field, basis) = find_stable_translations(std::slice::from_ref(&f), 30).unwrap();
        let emb = crate::ff::Embedding::new(&k, &field).unwrap();
        CoverSpec::new(&[f.map_field(&emb)], basis).unwrap()
    }

    #[test]
    fn single_equation_base_case() {
        let spec = x6_spec();
        assert_eq!(spec.v(), 2);
        let rep = verify_cover(&spec).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.checks);
        assert_eq!(rep.ramification.genus, 10);
        assert!(rep.ramification.ratio.unwrap().same_value(super::super::Ratio::new(125, 10)));
        assert!(rho_trivial(&rep.matrices));
        assert!(trivial_rep_check(&spec, &rep.matrices).iter().all(|c| c.passed));
        let mj = max_jump_check(&spec).unwrap();
        assert!(mj.vacuous && mj.all_passed());
    }

    #[test]
    fn identity_at_zero_and_unstable_outside() {
        let spec = x6_spec();
        let zero = Fe::zero(&spec.ambient);
        assert!(solve_rep_matrix(&spec, &zero).unwrap().is_identity());
        let bad = Fe::one(&spec.ambient);
        assert_eq!(solve_rep_matrix(&spec, &bad).unwrap_err(), Error::NotStable(1));
        let broken = CoverSpec::new(&spec.reduced(), vec![spec.v_basis[0].clone(), bad]).unwrap();
        assert_eq!(verify_cover(&broken).unwrap_err(), Error::NotStable(1));
    }

    #[test]
    fn truncation_bounds() {
        let spec = x6_spec();
        assert_eq!(truncate_cover(&spec, 2).unwrap_err(), Error::OutOfRange(2));
        assert_eq!(truncate_cover(&spec, 1).unwrap().n(), 1);
    }
}
