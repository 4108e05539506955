use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::cyclotomic::common_order;
use super::{Cyclotomic, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix over a cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Cyclotomic>,
}

/// Exact hash key: every entry expressed in one fixed cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixKey {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Cyclotomic>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count does not match shape"
        );
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Cyclotomic::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![Cyclotomic::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Cyclotomic::one();
        }
        m
    }

    pub fn diagonal(diag: &[Cyclotomic]) -> Self {
        let n = diag.len();
        let mut m = Matrix::zero(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.clone();
        }
        m
    }

    /// `n × 1` column from a vector.
    pub fn column(v: &[Cyclotomic]) -> Self {
        Matrix::new(v.len(), 1, v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Cyclotomic> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Cyclotomic::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.get(i, j).clone());
            }
        }
        Matrix::new(self.cols, self.rows, out)
    }

    pub fn conj(&self) -> Self {
        Matrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(Cyclotomic::conj).collect(),
        )
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Matrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|e| e * c).collect(),
        )
    }

    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Cyclotomic::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Vec::with_capacity(r * c);
        for i1 in 0..self.rows {
            for i2 in 0..other.rows {
                for j1 in 0..self.cols {
                    for j2 in 0..other.cols {
                        out.push(self.get(i1, j1) * other.get(i2, j2));
                    }
                }
            }
        }
        Matrix::new(r, c, out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Smallest `m <= bound` with `self^m = I`.
    pub fn multiplicative_order(&self, bound: u64) -> Option<u64> {
        let id = Matrix::identity(self.rows);
        let mut acc = self.clone();
        for m in 1..=bound {
            if acc == id {
                return Some(m);
            }
            acc = &acc * self;
        }
        None
    }

    /// Order of the smallest cyclotomic field containing all entries.
    pub fn field_order(&self) -> u32 {
        common_order(&self.entries)
    }

    pub fn embed(&self, order: u32) -> Self {
        Matrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|e| e.embed(order)).collect(),
        )
    }

    /// Canonical key with all entries expressed in `Q(ζ_order)`.
    pub fn key_at(&self, order: u32) -> MatrixKey {
        let mut coeffs = Vec::new();
        for e in &self.entries {
            coeffs.extend(e.key_at(order));
        }
        MatrixKey { order, coeffs }
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{ v : self·v = 0 }`.
    pub fn kernel(&self) -> Vec<Vec<Cyclotomic>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Cyclotomic::zero(); self.cols];
                v[f] = Cyclotomic::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f);
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Cyclotomic {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Cyclotomic::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Cyclotomic::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Cyclotomic::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut out = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Characteristic polynomial `det(xI - A)`, constant term first.
    pub fn characteristic_polynomial(&self) -> Vec<Cyclotomic> {
        // Faddeev–LeVerrier
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Cyclotomic::zero(); n + 1];
        coeffs[n] = Cyclotomic::one();
        let mut m = Matrix::zero(n, n);
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                let v = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            m = next;
            let am = self * &m;
            let tr = (0..n).fold(Cyclotomic::zero(), |acc, i| &acc + am.get(i, i));
            let c = tr.scale(&Rational::new(BigInt::from(-1), BigInt::from(k)));
            coeffs[n - k] = c;
        }
        coeffs
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: Option<Cyclotomic> = None;
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let p = a * b;
                    acc = Some(match acc {
                        None => p,
                        Some(s) => &s + &p,
                    });
                }
                out.push(acc.unwrap_or_else(Cyclotomic::zero));
            }
        }
        Matrix::new(self.rows, rhs.cols, out)
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|e| -e).collect(),
        )
    }
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

/// Rank of a matrix over the cyclotomic field containing its entries.
pub fn exact_rank(m: &Matrix) -> usize {
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(exact_rank(&Matrix::identity(2)), 2);
        assert_eq!(exact_rank(&Matrix::zero(3, 4)), 0);
        let m = Matrix::from_i64(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 2, 1]]);
        assert_eq!(exact_rank(&m), 2);
        assert_eq!(exact_rank(&m.transpose()), 2);
    }

    #[test]
    fn kernel_and_inverse() {
        let m = Matrix::from_i64(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 2, 1]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.apply(&ker[0]).iter().all(Cyclotomic::is_zero));
        assert_eq!(m.inverse(), Err(Error::Singular));

        let z = Cyclotomic::zeta(3);
        let a = Matrix::from_rows(vec![
            vec![z.clone(), Cyclotomic::one()],
            vec![Cyclotomic::zero(), z.conj()],
        ]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert!(a.determinant().is_one());
    }

    #[test]
    fn kron_and_charpoly() {
        let a = Matrix::from_i64(&[vec![0, -1], vec![1, -1]]);
        let b = Matrix::from_i64(&[vec![-1]]);
        assert_eq!(a.kron(&b), -&a);
        // x^2 + x + 1
        let cp = a.characteristic_polynomial();
        assert_eq!(cp, vec![1.into(), 1.into(), 1.into()]);
        assert_eq!(a.multiplicative_order(10), Some(3));
    }
}
