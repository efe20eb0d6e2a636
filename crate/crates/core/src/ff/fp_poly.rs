//! Small polynomial helpers over the prime field, used to pick and test moduli.
//! Coefficient vectors are little-endian and kept trimmed.

use super::linalg::{inv_mod, mat_vec, Matrix};

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            let shift = top - df;
            for (j, &fj) in f.iter().enumerate() {
                r[shift + j] = (r[shift + j] + (p - c) * fj) % p;
            }
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, f, p)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p);
        for x in a.iter_mut() {
            *x = *x * inv % p;
        }
    }
    a
}

/// Matrix of `h ↦ h^p` on `F_p[x]/(f)`: column `i` holds `x^{ip} mod f`.
pub(crate) fn frobenius_matrix(f: &[u32], p: u32) -> Matrix {
    let m = f.len() - 1;
    let mut xp = vec![1u32];
    let x = rem(&[0, 1], f, p);
    for _ in 0..p {
        xp = mul_mod(&xp, &x, f, p);
    }
    let mut cols = Vec::with_capacity(m);
    let mut cur = rem(&[1], f, p);
    for _ in 0..m {
        let mut c = cur.clone();
        c.resize(m, 0);
        cols.push(c);
        cur = mul_mod(&cur, &xp, f, p);
    }
    (0..m).map(|r| (0..m).map(|i| cols[i][r]).collect()).collect()
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic `f` of degree `m ≥ 1`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let q = frobenius_matrix(f, p);
    let mut x = vec![0u32; m];
    x[1 % m] = 1;
    // powers[k] = x^{p^k} mod f
    let mut powers = vec![x.clone()];
    for _ in 0..m {
        let next = mat_vec(&q, powers.last().unwrap(), p);
        powers.push(next);
    }
    let minus_x = |v: &[u32]| {
        let mut w = v.to_vec();
        w[1] = (w[1] + p - 1) % p;
        w
    };
    let mut top = minus_x(&powers[m]);
    trim(&mut top);
    if !top.is_empty() {
        return false;
    }
    prime_factors(m).into_iter().all(|r| {
        let g = gcd(f, &minus_x(&powers[m / r]), p);
        g.len() == 1
    })
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`,
/// ordering candidates by the integer whose base-p digits are the lower coefficients.
pub(crate) fn smallest_irreducible(p: u32, m: usize) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let mut digits = vec![0u32; m];
    loop {
        let mut f = digits.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < m, "no irreducible polynomial found");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_moduli() {
        assert_eq!(smallest_irreducible(5, 2), vec![2, 0, 1]);
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert!(!is_irreducible(&[1, 0, 1], 5));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducibles of degree 4 over F_3 is (81 - 9) / 4 = 18
        let mut count = 0;
        for k in 0..81u32 {
            let f = vec![k % 3, (k / 3) % 3, (k / 9) % 3, (k / 27) % 3, 1];
            if is_irreducible(&f, 3) {
                count += 1;
            }
        }
        assert_eq!(count, 18);
    }
}
