//! Dense square matrices over the rationals.

use std::fmt;

use num_traits::{One, Zero};

use crate::poly::Rat;
use crate::univariate::UniPoly;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Rat::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Panics unless the rows form a square array.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: Vec<Vec<Rat>>) -> Self {
        let mut m = Self::from_rows(cols);
        m.transpose_in_place();
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    fn transpose_in_place(&mut self) {
        for i in 0..self.n {
            for j in i + 1..self.n {
                self.data.swap(i * self.n + j, j * self.n + i);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rat {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_of_product(&self, other: &Matrix) -> Rat {
        let n = self.n;
        let mut acc = Rat::zero();
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += a * other.get(k, i);
                }
            }
        }
        acc
    }

    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut m = self.data.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !m[r * n + col].is_zero()) else {
                continue;
            };
            for j in 0..n {
                m.swap(rank * n + j, p * n + j);
            }
            let inv = m[rank * n + col].recip();
            for r in rank + 1..n {
                let f = &m[r * n + col] * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = &f * &m[rank * n + j];
                    m[r * n + j] -= t;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right kernel from the reduced row echelon form, one
    /// vector per free column with a 1 in that column.
    pub fn null_space(&self) -> Vec<Vec<Rat>> {
        let n = self.n;
        let mut m = self.data.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !m[r * n + col].is_zero()) else {
                continue;
            };
            for j in 0..n {
                m.swap(rank * n + j, p * n + j);
            }
            let inv = m[rank * n + col].recip();
            for j in 0..n {
                m[rank * n + j] *= &inv;
            }
            for r in 0..n {
                if r == rank || m[r * n + col].is_zero() {
                    continue;
                }
                let f = m[r * n + col].clone();
                for j in 0..n {
                    let t = &f * &m[rank * n + j];
                    m[r * n + j] -= t;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let mut out = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rat::zero(); n];
            v[free] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r * n + free].clone();
            }
            out.push(v);
        }
        out
    }

    /// `det(T*I - self)` by Berkowitz's division-free recurrence.
    pub fn charpoly(&self) -> UniPoly {
        let n = self.n;
        match n {
            0 => return UniPoly::one(),
            1 => return UniPoly::new(vec![-self.get(0, 0).clone(), Rat::one()]),
            2 => {
                let det = self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0);
                return UniPoly::new(vec![det, -self.trace(), Rat::one()]);
            }
            _ => {}
        }
        // coefficient vectors are highest degree first
        let mut p = vec![Rat::one(), -self.get(0, 0).clone()];
        for r in 1..n {
            let row: Vec<Rat> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let mut v: Vec<Rat> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let mut col = Vec::with_capacity(r + 1);
            col.push(Rat::one());
            col.push(-self.get(r, r).clone());
            for k in 0..r {
                let d: Rat = row.iter().zip(&v).map(|(a, b)| a * b).sum();
                col.push(-d);
                if k + 1 < r {
                    v = (0..r)
                        .map(|i| (0..r).map(|j| self.get(i, j) * &v[j]).sum())
                        .collect();
                }
            }
            let mut next = vec![Rat::zero(); r + 2];
            for (i, out) in next.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate() {
                    if i >= j {
                        *out += &col[i - j] * pj;
                    }
                }
            }
            p = next;
        }
        p.reverse();
        UniPoly::new(p)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| self.row(i).iter().map(|c| c.to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}
