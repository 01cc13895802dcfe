use std::collections::BTreeMap;

use crate::arith::{Polynomial, RatExpr};
use crate::error::{Error, Result};
use crate::fmanifold::tensors::Matrix;

/// Product of the distinct denominator factors of `items`, each to its
/// largest exponent, together with that factor list.
pub fn common_denominator<'a>(nvars: usize, items: impl Iterator<Item = &'a RatExpr>) -> (Polynomial, Vec<Polynomial>) {
    let mut fs: BTreeMap<Polynomial, u32> = BTreeMap::new();
    for r in items {
        for (f, e) in r.den_factors() {
            let slot = fs.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
    }
    let d = fs.iter().fold(Polynomial::one(nvars), |acc, (f, &e)| &acc * &f.pow(e));
    (d, fs.into_keys().collect())
}

/// Fraction-free Bareiss determinant of a polynomial matrix (row-major).
pub fn bareiss(mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    let nvars = m[0][0].nvars();
    let mut sign = false;
    let mut prev = Polynomial::one(nvars);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return Polynomial::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Exact determinant: clear to a common polynomial denominator, then Bareiss.
pub fn det(t: &Matrix) -> RatExpr {
    let n = t.n();
    let nvars = t.get(0, 0).nvars();
    let all: Vec<&RatExpr> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| t.get(i, j)).collect();
    let (d, hints) = common_denominator(nvars, all.iter().copied());
    let dr = RatExpr::from(d.clone());
    let rows: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (t.get(i, j) * &dr).as_polynomial().cloned().expect("cleared entry is polynomial"))
                .collect()
        })
        .collect();
    let num = RatExpr::from(bareiss(rows));
    if d.total_degree() == 0 && d.as_constant().is_some_and(|c| c == num_traits::One::one()) {
        return num;
    }
    let dn = RatExpr::from(d).pow(n as i32).expect("nonzero power");
    num.try_mul(&dn.inv_with_hints(&hints).expect("nonzero denominator")).expect("same ring")
}

/// Gauss–Jordan inverse over rational expressions.
pub fn invert(t: &Matrix) -> Result<Matrix> {
    let n = t.n();
    let nvars = t.get(0, 0).nvars();
    let mut a: Vec<Vec<RatExpr>> = (0..n).map(|i| (0..n).map(|j| t.get(i, j).clone()).collect()).collect();
    let mut b: Vec<Vec<RatExpr>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { RatExpr::one(nvars) } else { RatExpr::zero(nvars) }).collect())
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::Singular)?;
        a.swap(p, k);
        b.swap(p, k);
        let inv = a[k][k].inv()?;
        for j in 0..n {
            a[k][j] = &a[k][j] * &inv;
            b[k][j] = &b[k][j] * &inv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                if !a[k][j].is_zero() {
                    a[i][j] = &a[i][j] - &(&f * &a[k][j]);
                }
                if !b[k][j].is_zero() {
                    b[i][j] = &b[i][j] - &(&f * &b[k][j]);
                }
            }
        }
    }
    Ok(Matrix::from_fn(n, |i, j| b[i][j].clone()))
}
