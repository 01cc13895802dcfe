mod common;

use fcc_core::arith::{RatExpr, Space};
use fcc_core::fmanifold::{
    associativity_residual, circ, d_l_function, det, hertling_manin_residual, invert, mult_operator, nijenhuis, JordanSpec, Matrix, VectorField,
};

use common::{poly, rand_poly, rng, specs_up_to, st};

fn r(sp: &Space, s: &str) -> RatExpr {
    fcc_core::arith::parse_expr(sp, &fcc_core::arith::Bindings::new(), s).unwrap()
}

fn mat(sp: &Space, rows: &[&[&str]]) -> Matrix {
    Matrix::from_fn(rows.len(), |i, j| r(sp, rows[i][j]))
}

fn vf(sp: &Space, v: &[&str]) -> VectorField {
    v.iter().map(|s| r(sp, s)).collect()
}

#[test]
fn canonical_structures() {
    let s = st(&[2]);
    assert_eq!(s.l, mat(&s.space, &[&["u1", "0"], &["u2", "u1"]]));
    assert_eq!(s.e, vf(&s.space, &["1", "0"]));
    assert_eq!(s.euler, vf(&s.space, &["u1", "u2"]));

    let s = st(&[1, 1]);
    assert_eq!(s.l, mat(&s.space, &[&["u1", "0"], &["0", "u2"]]));
    assert_eq!(s.e, vf(&s.space, &["1", "1"]));

    let s = st(&[2, 1]);
    let mut entries: Vec<_> = s.c.entries().copied().collect();
    entries.sort();
    assert_eq!(entries, vec![(0, 0, 0), (1, 0, 1), (1, 1, 0), (2, 2, 2)]);
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(JordanSpec::new(vec![]).is_err());
    assert!(JordanSpec::new(vec![2, 0]).is_err());
}

#[test]
fn product_axioms() {
    let mut g = rng(3);
    for b in specs_up_to(4) {
        let s = st(&b);
        assert!(associativity_residual(&s.c).is_empty(), "{b:?}");
        let n = s.n();
        let x: VectorField = (0..n).map(|_| rand_poly(&mut g, n, 2, 3).into()).collect();
        let y: VectorField = (0..n).map(|_| rand_poly(&mut g, n, 2, 3).into()).collect();
        assert_eq!(circ(&s.e, &y, &s.c), y);
        assert_eq!(circ(&x, &y, &s.c), circ(&y, &x, &s.c));
        assert!(mult_operator(&s.e, &s.c).is_identity());
        assert!(nijenhuis(&s.l, &s.space).is_zero(), "{b:?}");
        assert!(hertling_manin_residual(&s.c.dense(s.nvars()), &s.space).is_empty());
    }
}

#[test]
fn euler_square_in_one_block() {
    let s = st(&[2]);
    assert_eq!(circ(&s.euler, &s.euler, &s.c), vf(&s.space, &["u1^2", "2*u1*u2"]));
    let a0 = RatExpr::from(poly(&s.space, "u1*u2"));
    let shifted: VectorField = s.euler.iter().zip(&s.e).map(|(x, e)| x - &(e * &a0)).collect();
    assert_eq!(mult_operator(&shifted, &s.c), mat(&s.space, &[&["u1 - u1*u2", "0"], &["u2", "u1 - u1*u2"]]));
}

#[test]
fn determinants_and_inverses() {
    let s = st(&[2]);
    let sp = &s.space;
    assert_eq!(det(&Matrix::identity(2, 2)), RatExpr::one(2));
    assert_eq!(det(&s.l), r(sp, "u1^2"));
    let a0 = RatExpr::from(poly(sp, "u1*u2"));
    let x: VectorField = s.euler.iter().zip(&s.e).map(|(x, e)| x - &(e * &a0)).collect();
    let m1 = Matrix::from_columns(&[s.e.clone(), x]);
    let m2 = Matrix::from_columns(&[s.e.clone(), s.euler.clone()]);
    assert_eq!(det(&m1), r(sp, "u2"));
    assert_eq!(det(&m2), r(sp, "u2"));

    assert_eq!(invert(&s.l).unwrap(), mat(sp, &[&["1/u1", "0"], &["-u2/u1^2", "1/u1"]]));
    assert!(invert(&Matrix::identity(3, 3)).unwrap().is_identity());
    let s3 = st(&[3]);
    assert!(s3.l.mul(&invert(&s3.l).unwrap()).is_identity());
    assert!(invert(&Matrix::zero(2, 2)).is_err());
}

#[test]
fn nijenhuis_detects_torsion() {
    let sp = Space::new(2);
    assert!(nijenhuis(&Matrix::identity(2, 2), &sp).is_zero());
    let t = mat(&sp, &[&["u2", "0"], &["0", "u1"]]);
    assert!(!nijenhuis(&t, &sp).is_zero());
}

#[test]
fn associativity_detects_a_broken_product() {
    let s = st(&[3]);
    let mut c = s.c.clone();
    // dropping c^3_22 alone leaves the associative algebra k[x,y]/(x², xy, y²)
    assert!(c.remove(2, 1, 1));
    assert!(associativity_residual(&c).is_empty());
    // dropping c^2_12 and c^2_21 instead: (∂2∘∂2)∘∂1 ≠ ∂2∘(∂2∘∂1)
    let mut c = s.c.clone();
    assert!(c.remove(1, 0, 1) && c.remove(1, 1, 0));
    assert!(!associativity_residual(&c).is_empty());
    // constant structure constants have no Hertling–Manin residual at all
    assert!(hertling_manin_residual(&c.dense(3), &s.space).is_empty());
}

#[test]
fn d_l_examples() {
    let s = st(&[2]);
    let w = d_l_function(&poly(&s.space, "u2"), &s.l, &s.space);
    assert_eq!(w.components, vec![poly(&s.space, "u2"), poly(&s.space, "u1")]);
    let w = d_l_function(&poly(&s.space, "7"), &s.l, &s.space);
    assert!(w.components.iter().all(|c| c.is_zero()));
    let s = st(&[1, 1]);
    let w = d_l_function(&poly(&s.space, "u1"), &s.l, &s.space);
    assert_eq!(w.components, vec![poly(&s.space, "u1"), s.space.zero()]);
}
