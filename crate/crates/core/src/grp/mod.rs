//! The group side: `Λ_i` filtrations from the matrices `Φ(y)`, maximal-jump
//! normalization, and explicit automorphism groups.

mod aut;
mod engine;

pub use aut::{group_closure, Aut};
pub use engine::{Elem, GroupEngine, GroupReport};

use crate::cover::{CoverSpec, RepSolver};
use crate::error::{Error, Result};
use crate::ff::{linalg, linalg::Matrix, Fe};

/// Commuting lower unitriangular matrices `Φ(y) = L(y)^T`, one per generator `y`.
#[derive(Clone, Debug)]
pub struct PhiFamily {
    pub p: u32,
    pub n: usize,
    pub generators: Vec<(Fe, Matrix)>,
}

impl PhiFamily {
    pub fn new(p: u32, n: usize, generators: Vec<(Fe, Matrix)>) -> Result<Self> {
        for (_, m) in &generators {
            let ok = m.len() == n
                && m.iter()
                    .enumerate()
                    .all(|(i, row)| row.len() == n && row[i] == 1 && row[i + 1..].iter().all(|&x| x == 0));
            if !ok {
                return Err(Error::WrongShape);
            }
        }
        Ok(PhiFamily { p, n, generators })
    }

    /// Matrices of the translations by the basis of `V`.
    pub fn from_spec(spec: &CoverSpec) -> Result<Self> {
        let solver = RepSolver::new(spec);
        let gens = spec.v_basis.iter().map(|y| Ok((y.clone(), solver.solve(y)?.phi()))).collect::<Result<Vec<_>>>()?;
        Self::new(spec.p, spec.n(), gens)
    }

    pub fn commuting(&self) -> bool {
        let p = self.p;
        self.generators
            .iter()
            .all(|(_, a)| self.generators.iter().all(|(_, b)| linalg::mat_mul(a, b, p) == linalg::mat_mul(b, a, p)))
    }

    /// Subdiagonal entry `Φ(y)_{i+1,i}` at every generator.
    fn subdiagonal(&self, i: usize) -> Vec<u32> {
        self.generators.iter().map(|(_, m)| m[i + 1][i]).collect()
    }
}

/// `{0} = Λ_0 ⊂ Λ_1 ⊂ ...`: `Λ_i` is the set of `w` with `(Φ(y) - I) w ∈ Λ_{i-1}` for all `y`.
/// Returns bases of `Λ_1, Λ_2, ...` up to the whole space.
pub fn lambda_filtration(fam: &PhiFamily) -> Vec<Vec<Vec<u32>>> {
    let (p, n) = (fam.p, fam.n);
    let mut chain = Vec::new();
    let mut prev: Vec<Vec<u32>> = Vec::new();
    while prev.len() < n {
        // rows u with u·b = 0 for b in prev
        let annihilator = if prev.is_empty() { linalg::identity(n) } else { linalg::nullspace(&prev, n, p) };
        let mut rows = Vec::new();
        for (_, phi) in &fam.generators {
            let mut d = phi.clone();
            for (i, row) in d.iter_mut().enumerate() {
                row[i] = (row[i] + p - 1) % p;
            }
            rows.extend(linalg::mat_mul(&annihilator, &d, p));
        }
        let next = if rows.is_empty() { linalg::identity(n) } else { linalg::nullspace(&rows, n, p) };
        if next.len() <= prev.len() {
            break;
        }
        chain.push(next.clone());
        prev = next;
    }
    chain
}

pub fn lambda_dims(fam: &PhiFamily) -> Vec<usize> {
    std::iter::once(0).chain(lambda_filtration(fam).iter().map(Vec::len)).collect()
}

/// Every subdiagonal form `ℓ_{i+1,i}` is nonzero on `V`.
pub fn max_jumps(fam: &PhiFamily) -> bool {
    (0..fam.n.saturating_sub(1)).all(|i| fam.subdiagonal(i).iter().any(|&x| x != 0))
}

/// Diagonal rescaling making every subdiagonal equal to one form `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    /// `d_1 = 1, d_{i+1} = d_i λ_i`; the new basis is `g_i / d_i`.
    pub diag: Vec<u32>,
    /// `ℓ_{i+1,i} = λ_i ℓ_{2,1}`, starting with `λ_1 = 1`.
    pub lambdas: Vec<u32>,
    /// `ℓ(y)` at each generator.
    pub form: Vec<u32>,
    pub normalized: Vec<Matrix>,
}

pub fn homothety_normalize(fam: &PhiFamily) -> Result<Normalization> {
    if !max_jumps(fam) {
        return Err(Error::NotMaxJumps);
    }
    let (p, n) = (fam.p, fam.n);
    if n > p as usize {
        return Err(Error::CheckFailed {
            tag: "homothety-normalization".into(),
            detail: format!("n = {n} exceeds p = {p}"),
        });
    }
    let form = if n >= 2 { fam.subdiagonal(0) } else { vec![0; fam.generators.len()] };
    let mut lambdas = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let li = fam.subdiagonal(i);
        let k = form.iter().position(|&x| x != 0).unwrap();
        let lam = li[k] * linalg::inv_mod(form[k], p) % p;
        if li.iter().zip(&form).any(|(&a, &b)| a != lam * b % p) {
            return Err(Error::NotProportional);
        }
        lambdas.push(lam);
    }
    let mut diag = vec![1u32];
    for &l in &lambdas {
        diag.push(diag.last().unwrap() * l % p);
    }
    let dinv: Vec<u32> = diag.iter().map(|&d| linalg::inv_mod(d, p)).collect();
    let normalized = fam
        .generators
        .iter()
        .map(|(_, m)| (0..n).map(|i| (0..n).map(|j| m[i][j] * dinv[i] % p * diag[j] % p).collect()).collect())
        .collect();
    Ok(Normalization { diag, lambdas, form, normalized })
}
