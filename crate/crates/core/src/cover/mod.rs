//! Candidate big actions: the functions `f_i`, the translation space `V`,
//! adapted bases and ramification data.

mod ramification;
mod rep;

pub use ramification::{max_jump_ratio, ramification, RamificationReport, Ratio};
pub use rep::{
    find_stable_translations, max_jump_check, max_jump_predicate, rho_trivial, solve_rep_matrix, trivial_rep_check,
    truncate_cover, verify_cover, Check, CoverReport, MaxJumpReport, RepMatrix, RepSolver,
};

use crate::additive::independent_over_fp;
use crate::asw::{reduce, ASClass};
use crate::error::{Error, Result};
use crate::ff::{linalg, Embedding, Fe, Field, FieldCtx};
use crate::poly::Poly;

/// `n` Artin-Schreier equations `W_i^p - W_i = f_i(X)` together with the
/// translations `X ↦ X + y`, `y ∈ V`, all over one ambient field.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    pub p: u32,
    pub ambient: Field,
    pub functions: Vec<ASClass>,
    pub v_basis: Vec<Fe>,
}

impl CoverSpec {
    /// Reduces the functions and validates independence of both the classes and `V`.
    pub fn new(functions: &[Poly], v_basis: Vec<Fe>) -> Result<Self> {
        let ambient = functions.first().ok_or(Error::OutOfRange(0))?.field().clone();
        let classes: Vec<ASClass> = functions.iter().map(reduce).collect();
        Self::from_classes(&ambient, classes, v_basis)
    }

    pub fn from_classes(ambient: &Field, functions: Vec<ASClass>, v_basis: Vec<Fe>) -> Result<Self> {
        let same = functions.iter().all(|c| FieldCtx::same(c.reduced.field(), ambient))
            && v_basis.iter().all(|y| FieldCtx::same(y.field(), ambient));
        if !same {
            return Err(Error::FieldMismatch);
        }
        if !classes_independent(&functions) {
            return Err(Error::DependentClasses);
        }
        if !independent_over_fp(&v_basis) {
            return Err(Error::DependentBasis);
        }
        Ok(CoverSpec { p: ambient.p(), ambient: ambient.clone(), functions, v_basis })
    }

    pub fn n(&self) -> usize {
        self.functions.len()
    }

    pub fn v(&self) -> usize {
        self.v_basis.len()
    }

    pub fn reduced(&self) -> Vec<Poly> {
        self.functions.iter().map(|c| c.reduced.clone()).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.functions.iter().map(|c| c.degree().unwrap_or(0)).collect()
    }

    /// Re-embeds everything into a larger field.
    pub fn map_field(&self, emb: &Embedding) -> Result<Self> {
        let functions = self.functions.iter().map(|c| reduce(&c.reduced.map_field(emb))).collect();
        let v_basis = self.v_basis.iter().map(|y| emb.apply(y)).collect();
        Self::from_classes(emb.target(), functions, v_basis)
    }

    /// Every element of `V` (p^v of them), in counter order over the basis.
    pub fn v_elements(&self) -> Vec<Fe> {
        span_elements(&self.ambient, &self.v_basis)
    }
}

/// All F_p-combinations of `basis`; element `k` uses the base-p digits of `k`,
/// first basis vector least significant.
pub fn span_elements(field: &Field, basis: &[Fe]) -> Vec<Fe> {
    let p = field.p() as usize;
    let total = p.pow(basis.len() as u32);
    (0..total)
        .map(|mut idx| {
            let mut y = Fe::zero(field);
            for b in basis {
                let d = idx % p;
                idx /= p;
                if d != 0 {
                    y += &b.scale(d as u32);
                }
            }
            y
        })
        .collect()
}

/// F_p coordinates of a polynomial: exponent-major, then field coordinates.
pub(crate) fn flatten(f: &Poly, max_deg: usize) -> Vec<u32> {
    let m = f.field().degree();
    let mut v = vec![0u32; (max_deg + 1) * m];
    for (e, c) in f.terms() {
        v[e * m..(e + 1) * m].copy_from_slice(&c.coeffs());
    }
    v
}

pub(crate) fn classes_independent(classes: &[ASClass]) -> bool {
    let Some(first) = classes.first() else {
        return true;
    };
    let max_deg = classes.iter().filter_map(ASClass::degree).max().unwrap_or(0);
    if classes.iter().any(|c| c.reduced.is_zero()) {
        return false;
    }
    let rows: Vec<Vec<u32>> = classes.iter().map(|c| flatten(&c.reduced, max_deg)).collect();
    let ncols = rows[0].len();
    linalg::rank(&rows, ncols, first.reduced.p()) == classes.len()
}

/// Basis satisfying the adaptedness conditions, with its jump data.
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    pub functions: Vec<ASClass>,
    pub degrees: Vec<usize>,
    /// Distinct degrees in increasing order.
    pub jumps: Vec<usize>,
    /// `n_0 = 0 < n_1 < ... = n`: cumulative block sizes.
    pub dims: Vec<usize>,
}

fn leading_block_dependency(block: &[&ASClass], deg: usize) -> Option<Vec<u32>> {
    let first = block.first()?;
    let p = first.reduced.p();
    let cols: Vec<Vec<u32>> = block.iter().map(|c| c.reduced.coeff(deg).coeffs()).collect();
    let mat = linalg::transpose(&cols);
    linalg::nullspace(&mat, block.len(), p).into_iter().next()
}

/// True when the classes, in the given order, already satisfy the adaptedness conditions.
pub fn is_adapted(classes: &[ASClass]) -> bool {
    let degs: Vec<Option<usize>> = classes.iter().map(ASClass::degree).collect();
    if degs.iter().any(Option::is_none) {
        return false;
    }
    let degs: Vec<usize> = degs.into_iter().flatten().collect();
    let p = match classes.first() {
        Some(c) => c.reduced.p() as usize,
        None => return true,
    };
    if degs.iter().any(|d| d % p == 0) || degs.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    let mut start = 0;
    while start < classes.len() {
        let d = degs[start];
        let end = (start..classes.len()).find(|&k| degs[k] != d).unwrap_or(classes.len());
        let block: Vec<&ASClass> = classes[start..end].iter().collect();
        if leading_block_dependency(&block, d).is_some() {
            return false;
        }
        start = end;
    }
    true
}

pub fn adapt_basis(classes: &[ASClass]) -> Result<AdaptedBasis> {
    if classes.iter().any(|c| c.reduced.is_zero()) || !classes_independent(classes) {
        return Err(Error::DependentClasses);
    }
    let mut work: Vec<ASClass> = classes.to_vec();
    loop {
        let mut changed = false;
        let mut degs: Vec<usize> = work.iter().map(|c| c.degree().unwrap()).collect();
        degs.sort_unstable();
        degs.dedup();
        for &d in degs.iter().rev() {
            let idx: Vec<usize> = (0..work.len()).filter(|&k| work[k].degree() == Some(d)).collect();
            let block: Vec<&ASClass> = idx.iter().map(|&k| &work[k]).collect();
            if let Some(lambda) = leading_block_dependency(&block, d) {
                let p = work[0].reduced.p();
                let last = (0..idx.len()).rev().find(|&j| lambda[j] != 0).unwrap();
                let scale = linalg::inv_mod(lambda[last], p);
                let field = work[0].reduced.field().clone();
                let mut comb = Poly::zero(&field);
                let mut cc = 0u32;
                for (j, &k) in idx.iter().enumerate() {
                    let coef = lambda[j] * scale % p;
                    comb = &comb + &work[k].reduced.scale_int(coef as i64);
                    cc = (cc + coef * work[k].const_class) % p;
                }
                if comb.is_zero() {
                    return Err(Error::DependentClasses);
                }
                work[idx[last]] = ASClass { reduced: comb, const_class: cc };
                changed = true;
                break;
            }
        }
        if !changed {
            break;
        }
    }
    work.sort_by_key(|c| c.degree().unwrap());
    let degrees: Vec<usize> = work.iter().map(|c| c.degree().unwrap()).collect();
    let mut jumps = degrees.clone();
    jumps.dedup();
    let mut dims = vec![0];
    for &j in &jumps {
        dims.push(degrees.iter().filter(|&&d| d <= j).count());
    }
    Ok(AdaptedBasis { functions: work, degrees, jumps, dims })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adapt_example() {
        let k = FieldCtx::prime(5).unwrap();
        let a = reduce(&Poly::from_ints(&k, &[0, 0, 4, 0, 0, 0, 1]));
        let b = reduce(&Poly::from_ints(&k, &[0, 0, 4, 1, 0, 0, 1]));
        let ab = adapt_basis(&[a.clone(), b]).unwrap();
        assert_eq!(ab.degrees, vec![3, 6]);
        assert_eq!(ab.functions[0].reduced, Poly::monomial(Fe::one(&k), 3));
        assert_eq!(ab.jumps, vec![3, 6]);
        assert_eq!(ab.dims, vec![0, 1, 2]);
        let twice = ASClass { reduced: a.reduced.scale_int(2), const_class: 0 };
        assert_eq!(adapt_basis(&[a.clone(), twice]).unwrap_err(), Error::DependentClasses);
        let same = adapt_basis(std::slice::from_ref(&a)).unwrap();
        assert_eq!(same.functions, vec![a]);
    }

    #[test]
    fn span_enumeration_order() {
        let k = FieldCtx::default_field(3, 2).unwrap();
        let basis = vec![Fe::one(&k), Fe::gen(&k)];
        let all = span_elements(&k, &basis);
        assert_eq!(all.len(), 9);
        assert_eq!(all[1], Fe::one(&k));
        assert_eq!(all[3], Fe::gen(&k));
        let set: std::collections::HashSet<_> = all.into_iter().collect();
        assert_eq!(set.len(), 9);
    }
}
