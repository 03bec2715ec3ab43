//! Dense matrices over the exact rings used in this crate.

use std::fmt::Debug;

use crate::qfield::{LambdaPoly, QScalar};

pub trait Ring: Clone + PartialEq + Debug {
    fn ring_zero() -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient, None when it does not exist.
    fn exact_div(&self, o: &Self) -> Option<Self>;
    /// Multiplication by a scalar of the base field.
    fn scale_q(&self, c: &QScalar) -> Self;
}

impl Ring for QScalar {
    fn ring_zero() -> Self {
        QScalar::zero()
    }
    fn zero_like(&self) -> Self {
        QScalar::zero()
    }
    fn one_like(&self) -> Self {
        QScalar::one()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        QScalar::neg(self)
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            None
        } else {
            Some(self / o)
        }
    }
    fn scale_q(&self, c: &QScalar) -> Self {
        self * c
    }
}

impl Ring for LambdaPoly {
    fn ring_zero() -> Self {
        LambdaPoly::zero()
    }
    fn zero_like(&self) -> Self {
        LambdaPoly::zero()
    }
    fn one_like(&self) -> Self {
        let rank = self.terms().keys().next().map(|e| e.len()).unwrap_or(0);
        LambdaPoly::one(rank)
    }
    fn is_zero(&self) -> bool {
        LambdaPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        LambdaPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        LambdaPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        LambdaPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        LambdaPoly::neg(self)
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        LambdaPoly::exact_div(self, o)
    }
    fn scale_q(&self, c: &QScalar) -> Self {
        self.scale(c)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Mat<T> {
    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Mat { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let data: Vec<T> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged matrix rows");
        Mat { rows: r, cols: c, data }
    }

    pub fn identity(n: usize, one: T) -> Self {
        let zero = one.zero_like();
        let mut m = Mat::filled(n, n, zero);
        for i in 0..n {
            m[(i, i)] = one.clone();
        }
        m
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Ring, F: Fn(&T) -> U>(&self, f: F) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut out = Mat::filled(self.rows, o.cols, T::ring_zero());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// Fraction-free (Bareiss) elimination; returns the determinant of a square matrix.
    pub fn det_bareiss(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            panic!("determinant of an empty matrix needs a ring witness");
        }
        let mut a = self.clone();
        let one = a.data[0].one_like();
        let mut prev = one.clone();
        let mut sign = false;
        for k in 0..n {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return one.zero_like();
                };
                a.swap_rows(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(i, j)].mul(&a[(k, k)]).sub(&a[(i, k)].mul(&a[(k, j)]));
                    a[(i, j)] = v.exact_div(&prev).expect("Bareiss step must divide exactly");
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign {
            d.neg()
        } else {
            d
        }
    }

    /// Adjugate of a square matrix via cofactor determinants.
    pub fn adjugate(&self) -> Self {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let one = self.data[0].one_like();
        if n == 1 {
            return Mat::identity(1, one);
        }
        let mut out = Mat::filled(n, n, one.zero_like());
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let d = minor.det_bareiss();
                out[(j, i)] = if (i + j) % 2 == 0 { d } else { d.neg() };
            }
        }
        out
    }

    fn minor(&self, r: usize, c: usize) -> Self {
        let mut rows = Vec::new();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            rows.push((0..self.cols).filter(|&j| j != c).map(|j| self[(i, j)].clone()).collect());
        }
        Mat::from_rows(rows)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Mat<QScalar> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::filled(rows, cols, QScalar::zero())
    }

    pub fn eye(n: usize) -> Self {
        Mat::identity(n, QScalar::one())
    }

    /// Row-reduce in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv();
            for j in c..self.cols {
                self[(r, j)] = &self[(r, j)] * &inv;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if !self[(r, j)].is_zero() {
                        let v = &self[(i, j)] - &(&f * &self[(r, j)]);
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Inverse of a square matrix, None when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = QScalar::one();
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(out)
    }

    pub fn det(&self) -> QScalar {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = QScalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return QScalar::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.inv();
            for i in c + 1..n {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = &a[(i, c)] * &inv;
                for j in c..n {
                    let v = &a[(i, j)] - &(&f * &a[(c, j)]);
                    a[(i, j)] = v;
                }
            }
        }
        det
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::Q;

    fn qi(n: i64) -> QScalar {
        QScalar::from_int(n)
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat::from_rows(vec![vec![qi(2), qi(1)], vec![QScalar::q_pow(Q::from_integer(1)), qi(3)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::eye(2));
    }

    #[test]
    fn bareiss_matches_gauss() {
        let m = Mat::from_rows(vec![
            vec![qi(2), qi(1), qi(0)],
            vec![qi(1), QScalar::q_pow(Q::from_integer(2)), qi(4)],
            vec![qi(5), qi(1), qi(7)],
        ]);
        assert_eq!(m.det_bareiss(), m.det());
    }
}
