#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fcc_core::a0::{build_a0, is_linear, A0Family, Coef};
use fcc_core::arith::rational::frac;
use fcc_core::arith::{Monomial, Polynomial, Rational, Space};
use fcc_core::fmanifold::{canonical_structure, JordanSpec, Structure};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn spec(b: &[usize]) -> JordanSpec {
    JordanSpec::new(b.to_vec()).unwrap()
}

pub fn st(b: &[usize]) -> Structure {
    canonical_structure(&spec(b))
}

/// Non-increasing partitions of n.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn specs_up_to(n: usize) -> Vec<Vec<usize>> {
    (1..=n).flat_map(partitions).collect()
}

pub fn rand_rational(r: &mut impl Rng) -> Rational {
    frac(r.gen_range(-6..=6), r.gen_range(1..=3))
}

pub fn rand_nonzero(r: &mut impl Rng) -> Rational {
    loop {
        let q = rand_rational(r);
        if q != Rational::from_integer(0.into()) {
            return q;
        }
    }
}

/// Random polynomial in the first `nvars` variables of degree ≤ `deg`.
pub fn rand_poly(r: &mut impl Rng, nvars: usize, deg: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for _ in 0..terms {
        let mut e = vec![0u32; nvars];
        let mut left = r.gen_range(0..=deg);
        while left > 0 {
            e[r.gen_range(0..nvars)] += 1;
            left -= 1;
        }
        p.add_term(Monomial(e), rand_rational(r));
    }
    p
}

pub fn rand_point(r: &mut impl Rng, nvars: usize) -> Vec<Rational> {
    (0..nvars).map(|_| rand_rational(r)).collect()
}

/// Random family with coefficient polynomials of degree ≤ `deg`.
pub fn rand_family(r: &mut impl Rng, spec: &JordanSpec, deg: usize) -> A0Family {
    A0Family {
        blocks: spec
            .blocks()
            .iter()
            .map(|&m| (0..m).map(|_| (0..=deg).map(|_| Coef(rand_rational(r))).collect()).collect())
            .collect(),
    }
}

pub fn rand_a0(r: &mut impl Rng, st: &Structure, deg: usize) -> Polynomial {
    build_a0(st, &rand_family(r, &st.spec, deg)).unwrap().value
}

/// Random valid a₀ that is not linear.
pub fn rand_nonlinear_a0(r: &mut impl Rng, st: &Structure) -> Polynomial {
    loop {
        let a = rand_a0(r, st, 2);
        if !is_linear(&st.space, &a) {
            return a;
        }
    }
}

pub fn rand_linear_a0(r: &mut impl Rng, st: &Structure) -> Polynomial {
    let mut a = st.space.constant(rand_rational(r));
    for k in 0..st.n() {
        a = &a + &st.space.u(k).scale(&rand_rational(r));
    }
    a
}

pub fn poly(sp: &Space, s: &str) -> Polynomial {
    fcc_core::arith::parse::parse_poly(sp, s).unwrap()
}
