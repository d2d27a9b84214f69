//! Hochschild cohomology of a finite-dimensional algebra read off the bar
//! complex directly: `C^n = Hom(A^{⊗n}, A)` in the basis of elementary
//! tensors, the textbook differential, and ranks by Gaussian elimination
//! over big rationals. Deliberately self-contained.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Structure constants: `e_i · e_j = Σ_k mult[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub dim: usize,
    pub mult: Vec<Vec<Vec<i64>>>,
}

impl Algebra {
    /// From the nonzero products `(i, j, [(k, c)])`.
    pub fn new(dim: usize, products: &[(usize, usize, &[(usize, i64)])]) -> Algebra {
        let mut mult = vec![vec![vec![0; dim]; dim]; dim];
        for &(i, j, out) in products {
            for &(k, c) in out {
                mult[i][j][k] += c;
            }
        }
        Algebra { dim, mult }
    }

    /// `e_0` is the unit.
    pub fn unital(dim: usize, products: &[(usize, usize, &[(usize, i64)])]) -> Algebra {
        let mut a = Algebra::new(dim, products);
        for i in 0..dim {
            a.mult[0][i] = unit_vec(dim, i);
            a.mult[i][0] = unit_vec(dim, i);
        }
        a
    }
}

fn unit_vec(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn q(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

/// Index of a tuple in `[d]^n`, most significant first.
fn encode(t: &[usize], d: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * d + x)
}

fn decode(mut i: usize, n: usize, d: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for k in (0..n).rev() {
        t[k] = i % d;
        i /= d;
    }
    t
}

/// The bar differential `C^n → C^{n+1}`; the coordinate of `(tuple, k)` is
/// `tuple_index · d + k`.
pub fn bar_differential(a: &Algebra, n: usize) -> Vec<Vec<BigRational>> {
    let d = a.dim;
    let cols = d.pow(n as u32) * d;
    let rows = d.pow(n as u32 + 1) * d;
    let mut m = vec![vec![BigRational::zero(); cols]; rows];
    for u_idx in 0..d.pow(n as u32 + 1) {
        let u = decode(u_idx, n + 1, d);
        // (δf)(u) = u_0 f(u_1..) + Σ_i (-1)^i f(.., u_{i-1}u_i, ..) + (-1)^{n+1} f(..u_{n-1}) u_n
        // as a function of the coordinates of f
        let tail = encode(&u[1..], d);
        for k in 0..d {
            for (m_out, &c) in a.mult[u[0]][k].iter().enumerate() {
                if c != 0 {
                    m[u_idx * d + m_out][tail * d + k] += q(c);
                }
            }
        }
        for i in 1..=n {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for (p, &c) in a.mult[u[i - 1]][u[i]].iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut t = u[..i - 1].to_vec();
                t.push(p);
                t.extend_from_slice(&u[i + 1..]);
                let t_idx = encode(&t, d);
                for k in 0..d {
                    m[u_idx * d + k][t_idx * d + k] += q(sign * c);
                }
            }
        }
        let head = encode(&u[..n], d);
        let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
        for k in 0..d {
            for (m_out, &c) in a.mult[k][u[n]].iter().enumerate() {
                if c != 0 {
                    m[u_idx * d + m_out][head * d + k] += q(sign * c);
                }
            }
        }
    }
    m
}

pub fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / m[r][c].clone();
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// `dim HH^n(A)` for `n = 0..=top`.
pub fn hochschild_dims(a: &Algebra, top: usize) -> Vec<usize> {
    let d = a.dim;
    let ranks: Vec<usize> = (0..=top).map(|n| rank(bar_differential(a, n))).collect();
    (0..=top)
        .map(|n| {
            let dim_c = d.pow(n as u32) * d;
            let incoming = if n == 0 { 0 } else { ranks[n - 1] };
            dim_c - ranks[n] - incoming
        })
        .collect()
}

/// `δ∘δ`, entrywise, as a sanity check of the oracle itself.
pub fn square_is_zero(a: &Algebra, n: usize) -> bool {
    let d0 = bar_differential(a, n);
    let d1 = bar_differential(a, n + 1);
    d1.iter().all(|row| {
        (0..d0[0].len()).all(|j| {
            let mut s = BigRational::zero();
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() && !d0[k][j].is_zero() {
                    s += x * &d0[k][j];
                }
            }
            s.is_zero()
        })
    })
}

/// The ground field.
pub fn field() -> Algebra {
    Algebra::unital(1, &[])
}

/// `k[x]/x^n` in the basis `1, x, …, x^{n-1}`.
pub fn truncated_polynomial(n: usize) -> Algebra {
    let mut a = Algebra::new(n, &[]);
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                a.mult[i][j][i + j] = 1;
            }
        }
    }
    a
}

/// `k × k` in the basis `1, e` with `e² = e`.
pub fn split_pair() -> Algebra {
    Algebra::unital(2, &[(1, 1, &[(1, 1)])])
}

/// Upper triangular 2×2 matrices in the basis `1, e₁₁, e₁₂`.
pub fn upper_triangular() -> Algebra {
    Algebra::unital(3, &[(1, 1, &[(1, 1)]), (1, 2, &[(2, 1)])])
}
