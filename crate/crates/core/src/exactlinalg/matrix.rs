use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Field, LinalgError, Scalar};

/// Dense row-major matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Dimension("ragged rows".into()));
        }
        Ok(Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let data = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Matrix::from_rows(field, data).expect("rectangular literal")
    }

    /// Builds a matrix from its columns; `rows` is needed when there are no columns.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| super::dot(self.field, self.row(i), v)).collect())
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(LinalgError::Dimension("matrix sum shapes differ".into()));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { data: self.data.iter().map(|a| a * c).collect(), ..*self }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Stacks `[self; below]`.
    pub fn vstack(&self, below: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != below.cols {
            return Err(LinalgError::Dimension("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Ok(Matrix { field: self.field, rows: self.rows + below.rows, cols: self.cols, data })
    }

    /// Concatenates `[self | right]`.
    pub fn hstack(&self, right: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != right.rows {
            return Err(LinalgError::Dimension("hstack row counts differ".into()));
        }
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + right.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..right.cols {
                out.set(i, self.cols + j, right.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Rank by fraction-free elimination (Bareiss over ℤ after clearing row
    /// denominators for ℚ; plain elimination for 𝔽_p, which is already exact).
    pub fn rank(&self) -> usize {
        match self.field {
            Field::Rational => bareiss_rank(self.integer_rows()),
            Field::Prime(p) => modular_rank(self, p),
        }
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row.iter().fold(BigInt::one(), |acc, s| {
                    acc.lcm(s.as_rational().expect("rational matrix").denom())
                });
                row.iter()
                    .map(|s| {
                        let r = s.as_rational().unwrap();
                        r.numer() * (&lcm / r.denom())
                    })
                    .collect()
            })
            .filter(|row: &Vec<BigInt>| row.iter().any(|v| !v.is_zero()))
            .collect()
    }

    /// Gauss-Jordan reduction. Pivots are chosen column by column, left to
    /// right, using the first row at or below the current one with a nonzero
    /// entry.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            let pivot_row: Vec<(usize, Scalar)> = (c..m.cols)
                .filter(|&j| !m.get(r, j).is_zero())
                .map(|j| (j, m.get(r, j).clone()))
                .collect();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                let nf = -&f;
                for (j, v) in &pivot_row {
                    m.data[i * m.cols + j].add_mul(&nf, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    /// Solves `self · x = b`. Free variables are set to zero; returns `None`
    /// when the system is inconsistent.
    pub fn solve_linear(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&Matrix::from_columns(self.field, self.rows, &[b.to_vec()]))?;
        let red = aug.rref();
        if red.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &c) in red.pivots.iter().enumerate() {
            x[c] = red.matrix.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Null-space basis; one vector per free column, with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let red = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &red.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &c) in red.pivots.iter().enumerate() {
                v[c] = -red.matrix.get(r, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Indices of a maximal linearly independent subset of the columns,
    /// chosen greedily from the left.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            let lead = a[i][c].clone();
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &lead * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

fn modular_rank(m: &Matrix, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|s| match s {
                    Scalar::Fp(v, _) => *v,
                    Scalar::Q(_) => panic!("rational entry in prime-field matrix"),
                })
                .collect()
        })
        .collect();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(piv) = (r..m.rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = Scalar::Fp(a[r][c], p).inverse().expect("nonzero");
        let Scalar::Fp(inv, _) = inv else { unreachable!() };
        for i in r + 1..m.rows {
            if a[i][c] == 0 {
                continue;
            }
            let f = a[i][c] * inv % p;
            for j in c..m.cols {
                a[i][j] = (a[i][j] + p * p - f * a[r][j] % p) % p;
            }
        }
        r += 1;
    }
    r
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rational;

    fn vec_i(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zeros(Q, 0, 0).rank(), 0);
        assert_eq!(Matrix::identity(Q, 3).rank(), 3);
        assert_eq!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).rank(), 1);
        let f5 = Field::Prime(5);
        assert_eq!(Matrix::from_i64(f5, &[&[1, 2], &[3, 1]]).rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(Q, 3);
        assert_eq!(id.solve_linear(&vec_i(&[4, -1, 7])).unwrap(), Some(vec_i(&[4, -1, 7])));
        let m = Matrix::from_i64(Q, &[&[1, 1]]);
        assert_eq!(m.solve_linear(&vec_i(&[2])).unwrap(), Some(vec_i(&[2, 0])));
        let m = Matrix::from_i64(Q, &[&[1], &[1]]);
        assert_eq!(m.solve_linear(&vec_i(&[0, 1])).unwrap(), None);
        assert!(m.solve_linear(&vec_i(&[0])).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(Q, 4).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(Q, 2, 3).kernel_basis().len(), 3);
        let k = Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k, vec![vec_i(&[-2, 1])]);
    }

    fn arb_matrix() -> impl Strategy<Value = (Field, Vec<Vec<i64>>)> {
        (0usize..6, 0usize..6, prop_oneof![Just(Q), Just(Field::Prime(5)), Just(Field::Prime(3))])
            .prop_flat_map(|(r, c, f)| {
                (Just(f), proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r))
            })
    }

    fn build(f: Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(f, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, f.from_i64(v));
            }
        }
        m
    }

    proptest! {
        #[test]
        fn rank_nullity((f, rows) in arb_matrix()) {
            let m = build(f, &rows);
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            prop_assert_eq!(m.rank(), m.rref().pivots.len());
            for v in k {
                prop_assert!(m.mul_vec(&v).unwrap().iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn solutions_are_exact((f, rows) in arb_matrix(), seed in proptest::collection::vec(-3i64..4, 6)) {
            let m = build(f, &rows);
            let x0: Vec<Scalar> = (0..m.cols()).map(|j| f.from_i64(seed[j])).collect();
            let b = m.mul_vec(&x0).unwrap();
            let x = m.solve_linear(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
        }

        #[test]
        fn rank_ignores_row_order((f, rows) in arb_matrix(), shift in 0usize..6) {
            let m = build(f, &rows);
            let mut perm = rows.clone();
            if !perm.is_empty() {
                let n = perm.len();
                perm.rotate_left(shift % n);
                perm.reverse();
            }
            prop_assert_eq!(m.rank(), build(f, &perm).rank());
        }
    }
}
