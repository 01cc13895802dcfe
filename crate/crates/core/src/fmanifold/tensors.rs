use crate::arith::{RatExpr, Rational, Space};

pub type VectorField = Vec<RatExpr>;

/// (1,1)-tensor; `get(i, j)` is T^i_j.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<RatExpr>,
}

impl Matrix {
    pub fn zero(n: usize, nvars: usize) -> Self {
        Matrix { n, data: vec![RatExpr::zero(nvars); n * n] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zero(n, nvars);
        for i in 0..n {
            m.set(i, i, RatExpr::one(nvars));
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> RatExpr) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_columns(cols: &[VectorField]) -> Self {
        let n = cols.len();
        Self::from_fn(n, |i, j| cols[j][i].clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RatExpr {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatExpr) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        Matrix::from_fn(n, |i, j| {
            let mut acc = RatExpr::zero(self.data[0].nvars());
            for s in 0..n {
                let a = self.get(i, s);
                let b = other.get(s, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn scale(&self, c: &RatExpr) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(i, j) * c)
    }

    pub fn sub_scalar(&self, c: &RatExpr) -> Matrix {
        Matrix::from_fn(self.n, |i, j| if i == j { self.get(i, j) - c } else { self.get(i, j).clone() })
    }

    pub fn apply(&self, v: &[RatExpr]) -> VectorField {
        (0..self.n)
            .map(|i| {
                let mut acc = RatExpr::zero(v[0].nvars());
                for s in 0..self.n {
                    if !self.get(i, s).is_zero() && !v[s].is_zero() {
                        acc = &acc + &(self.get(i, s) * &v[s]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> VectorField {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatExpr::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    v.as_constant() == Some(Rational::from_integer(1.into()))
                } else {
                    v.is_zero()
                }
            })
        })
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn to_strings(&self, space: &Space) -> Vec<Vec<String>> {
        (0..self.n).map(|i| (0..self.n).map(|j| space.fmt(self.get(i, j))).collect()).collect()
    }
}

/// Dense three-index array, `get(i, j, k)` for an object with one upper and
/// two lower indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    n: usize,
    data: Vec<RatExpr>,
}

impl Tensor3 {
    pub fn zero(n: usize, nvars: usize) -> Self {
        Tensor3 { n, data: vec![RatExpr::zero(nvars); n * n * n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> RatExpr) -> Self {
        let mut data = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    data.push(f(i, j, k));
                }
            }
        }
        Tensor3 { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &RatExpr {
        &self.data[(i * self.n + j) * self.n + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: RatExpr) {
        self.data[(i * self.n + j) * self.n + k] = v;
    }

    /// Index triples (0-based) of nonzero entries.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.get(i, j, k).is_zero() {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatExpr::is_zero)
    }
}

/// Dense four-index array `get(k, l, i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor4 {
    n: usize,
    data: Vec<RatExpr>,
}

impl Tensor4 {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize, usize) -> RatExpr) -> Self {
        let mut data = Vec::with_capacity(n * n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        data.push(f(a, b, c, d));
                    }
                }
            }
        }
        Tensor4 { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> &RatExpr {
        let n = self.n;
        &self.data[((a * n + b) * n + c) * n + d]
    }

    pub fn nonzero(&self) -> Vec<(usize, usize, usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if !self.get(a, b, c, d).is_zero() {
                            out.push((a, b, c, d));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatExpr::is_zero)
    }
}
