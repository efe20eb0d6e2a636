//! Dense linear algebra over the prime field F_p.
//!
//! Matrices are row-major `Vec<Vec<u32>>` with entries in `[0, p)`.

pub type Matrix = Vec<Vec<u32>>;

pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a, p as u64 - 2, p)
}

pub fn pow_mod(a: u32, mut e: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut base = a as u64 % p64;
    let mut acc = 1u64 % p64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        e >>= 1;
    }
    acc as u32
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix, ncols: usize, p: u32) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(r) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, r);
        let inv = inv_mod(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = (*x * inv) % p;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col] == 0 {
                continue;
            }
            let factor = p - other[col];
            for (x, &y) in other.iter_mut().zip(&pivot_row) {
                *x = (*x + factor * y) % p;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<u32>], ncols: usize, p: u32) -> usize {
    let mut a = m.to_vec();
    rref(&mut a, ncols, p).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column in increasing order.
pub fn nullspace(m: &[Vec<u32>], ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, ncols, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[r][f]) % p;
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b` (free variables set to zero), or `None`.
pub fn solve(m: &[Vec<u32>], b: &[u32], ncols: usize, p: u32) -> Option<Vec<u32>> {
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi % p);
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1, p);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![0u32; ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols];
    }
    Some(x)
}

pub fn mat_mul(a: &[Vec<u32>], b: &[Vec<u32>], p: u32) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let s: u64 = (0..inner).map(|k| row[k] as u64 * b[k][j] as u64).sum();
                    (s % p as u64) as u32
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<u32>], v: &[u32], p: u32) -> Vec<u32> {
    a.iter()
        .map(|row| {
            let s: u64 = row.iter().zip(v).map(|(&x, &y)| x as u64 * y as u64).sum();
            (s % p as u64) as u32
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

pub fn inverse(m: &[Vec<u32>], p: u32) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n, p);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn transpose(m: &[Vec<u32>]) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![vec![1, 2, 3]];
        let ns = nullspace(&m, 3, 5);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(mat_vec(&m, &v, 5), vec![0]);
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = vec![vec![1, 1], vec![0, 1]];
        assert_eq!(solve(&m, &[3, 1], 2, 5), Some(vec![2, 1]));
        let inv = inverse(&m, 5).unwrap();
        assert_eq!(mat_mul(&m, &inv, 5), identity(2));
        assert!(solve(&[vec![0, 0]], &[1], 2, 5).is_none());
    }
}
