//! Integer matrices and the Smith normal form.

use std::fmt;

use serde::Serialize;

use crate::field::{rat_int, rat_to_i64, Rational};
use crate::linalg::Matrix;

/// A dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let mut m = IntMatrix::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a != 0 {
                    for j in 0..other.cols {
                        out[(i, j)] += a * other[(k, j)];
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| v[i] * self[(i, j)]).sum())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn to_rational(&self) -> Matrix<Rational> {
        Matrix::from_rows(
            self.to_rows()
                .iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    /// Converts an integral rational matrix, `None` if some entry is not integral.
    pub fn from_rational(m: &Matrix<Rational>) -> Option<Self> {
        let mut out = IntMatrix::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(i, j)] = rat_to_i64(&m[(i, j)])?;
            }
        }
        Some(out)
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        IntMatrix::from_rational(&self.to_rational().inverse()?)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += f * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, f: i64) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += f * v;
        }
    }

    /// `col[dst] += f * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, f: i64) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += f * v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal with `d_1 | d_2 | …`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries of `D`.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)])
            .collect()
    }
}

/// Smith normal form by repeated pivoting on the entry of least absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // Least nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[(i, j)] != 0 && best.is_none_or(|(a, b)| d[(i, j)].abs() < d[(a, b)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { u, d, v };
            };
            if pi != t {
                d.swap_rows(pi, t);
                u.swap_rows(pi, t);
            }
            if pj != t {
                d.swap_cols(pj, t);
                v.swap_cols(pj, t);
            }
            let p = d[(t, t)];
            let mut clean = true;
            for i in t + 1..rows {
                let q = d[(i, t)].div_euclid(p);
                if q != 0 {
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                if d[(i, t)] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = d[(t, j)].div_euclid(p);
                if q != 0 {
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                if d[(t, j)] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| d[(i, j)] % p != 0);
            match bad {
                Some((i, _)) => {
                    d.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.u.unimodular_inverse().is_some());
        assert!(s.v.unimodular_inverse().is_some());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert_eq!(s.d[(i, j)], 0);
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[0] >= 0);
            if w[0] != 0 {
                assert_eq!(w[1] % w[0], 0);
            } else {
                assert_eq!(w[1], 0);
            }
        }
        s
    }

    #[test]
    fn known_forms() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(check(&m).invariant_factors(), vec![2, 6, 12]);
        let m = IntMatrix::diagonal(&[4, 6]);
        assert_eq!(check(&m).invariant_factors(), vec![2, 12]);
        let m = IntMatrix::from_rows(&[vec![0, 0], vec![0, 3]]);
        assert_eq!(check(&m).invariant_factors(), vec![3, 0]);
    }

    proptest! {
        #[test]
        fn smith_invariants(rows in 1usize..4, cols in 1usize..4, entries in prop::collection::vec(-20i64..21, 16)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 4..i * 4 + cols].to_vec()).collect();
            check(&IntMatrix::from_rows(&data));
        }
    }
}
