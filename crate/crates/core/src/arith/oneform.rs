use super::polynomial::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Polynomial 1-form on the first `components.len()` variables. Any further
/// ring variables are treated as constants.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm {
    pub components: Vec<Polynomial>,
}

impl OneForm {
    pub fn new(components: Vec<Polynomial>) -> Self {
        OneForm { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// Exterior derivative of a function, restricted to the first `n` variables.
    pub fn exact(f: &Polynomial, n: usize) -> Self {
        OneForm { components: (0..n).map(|k| f.partial(k)).collect() }
    }

    /// First pair (1-based, i < j) with ∂_j w_i ≠ ∂_i w_j.
    pub fn closedness_violation(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                if self.components[i].partial(j) != self.components[j].partial(i) {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }
}

/// Returns the unique f with f(0) = 0 and df = w, integrating along rays from
/// the origin. The input must be closed.
pub fn integrate_radial(w: &OneForm) -> Result<Polynomial> {
    if let Some((i, j)) = w.closedness_violation() {
        return Err(Error::NotClosed(i, j));
    }
    let n = w.dim();
    let nvars = w.components.first().map(Polynomial::nvars).unwrap_or(n);
    let mut f = Polynomial::zero(nvars);
    for (i, wi) in w.components.iter().enumerate() {
        for (m, c) in wi.terms() {
            let deg: u32 = m.0[..n].iter().sum();
            let mut e = m.clone();
            e.0[i] += 1;
            f.add_term(e, c / Rational::from_integer((deg + 1).into()));
        }
    }
    Ok(f)
}
