mod common;

use proptest::prelude::*;

use fcc_core::arith::rational::{frac, int};
use fcc_core::arith::{integrate_radial, parse_expr, Bindings, Monomial, OneForm, Polynomial, RatExpr, Rational, Space};
use fcc_core::Error;

use common::{poly, rand_point, rand_poly, rng};

fn sp(n: usize) -> Space {
    Space::new(n)
}

fn rat(s: &Space, text: &str) -> RatExpr {
    parse_expr(s, &Bindings::new(), text).unwrap()
}

fn arb_poly(nvars: usize, deg: u32) -> impl Strategy<Value = Polynomial> {
    let term = (proptest::collection::vec(0..=deg, nvars), -9i64..=9, 1i64..=4);
    proptest::collection::vec(term, 0..6).prop_map(move |ts| {
        let mut p = Polynomial::zero(nvars);
        for (e, a, b) in ts {
            if e.iter().sum::<u32>() <= deg {
                p.add_term(Monomial(e), frac(a, b));
            }
        }
        p
    })
}

fn arb_point(nvars: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-7i64..=7, 1i64..=5).prop_map(|(a, b)| frac(a, b)), nvars)
}

#[test]
fn polynomial_examples() {
    let s = sp(2);
    assert_eq!(&poly(&s, "u1 + u2") * &poly(&s, "u1 - u2"), poly(&s, "u1^2 - u2^2"));
    let p = poly(&s, "3*u1*u2 - 1/2");
    assert_eq!(&p + &s.zero(), p);
    assert_eq!(&poly(&s, "u1*u2") * &poly(&s, "u1*u2"), poly(&s, "u1^2*u2^2"));
    assert_eq!(poly(&s, "u1*u2^2").partial(1), poly(&s, "2*u1*u2"));
    assert!(poly(&s, "u2").partial(0).is_zero());
}

#[test]
fn canonical_printing() {
    let s = sp(3);
    assert_eq!(s.fmt_poly(&poly(&s, "u2*u1 + u1*u2")), "2*u1*u2");
    assert_eq!(s.fmt_poly(&poly(&s, "(u1 - u3)^2")), "u3^2 - 2*u1*u3 + u1^2");
    assert_eq!(s.fmt_poly(&poly(&s, "1/2*u2^2 - 1")), "1/2*u2^2 - 1");
    assert_eq!(s.fmt_poly(&s.zero()), "0");
}

#[test]
fn rational_expression_examples() {
    let s = sp(3);
    assert!((rat(&s, "1/u2") + rat(&s, "-1/u2")).is_zero());
    assert_eq!(rat(&s, "u1/u2") * rat(&s, "u2/u1"), RatExpr::one(3));
    assert_eq!(rat(&s, "u1/(u1-u3)") + rat(&s, "u3/(u3-u1)"), RatExpr::one(3));
    assert!(rat(&s, "(u1^2 - u1^2)/u2").is_zero());
    assert!(!rat(&s, "(u1*u2 - u2*u1 + u2)/u1").is_zero());
    assert_eq!(rat(&s, "u1/u2").eval(&[int(3), int(2), int(0)]).unwrap(), frac(3, 2));
    assert_eq!(rat(&s, "u1+u2").eval(&[int(1), int(-1), int(5)]).unwrap(), int(0));
}

#[test]
fn division_by_zero_is_an_error() {
    let s = sp(2);
    assert!(RatExpr::zero(2).inv().is_err());
    assert!(rat(&s, "u1").try_div(&rat(&s, "u2 - u2")).is_err());
    assert!(rat(&s, "1/u2").eval(&[int(1), int(0)]).is_err());
}

#[test]
fn integrate_radial_examples() {
    let s = sp(2);
    let w = OneForm::new(vec![poly(&s, "u2"), poly(&s, "u1")]);
    assert_eq!(integrate_radial(&w).unwrap(), poly(&s, "u1*u2"));
    let w = OneForm::new(vec![poly(&s, "u2"), poly(&s, "u1 - u2")]);
    let f = integrate_radial(&w).unwrap();
    assert_eq!(f, poly(&s, "u1*u2 - 1/2*u2^2"));
    assert_eq!(OneForm::exact(&f, 2), w);
    let w = OneForm::new(vec![poly(&s, "u2"), s.zero()]);
    assert!(matches!(integrate_radial(&w), Err(Error::NotClosed(1, 2))));
}

#[test]
fn parser_rejects_garbage() {
    let s = sp(2);
    for bad in ["u1 +", "u3", "u1^u2", "(u1", "2**u1", "u1^(1/2)"] {
        assert!(parse_expr(&s, &Bindings::new(), bad).is_err(), "{bad}");
    }
    assert_eq!(rat(&s, "u2^(-2)") * rat(&s, "u2^2"), RatExpr::one(2));
}

#[test]
fn jets_follow_the_chain_rule() {
    let mut s = Space::new(2);
    let f = s.add_jet("F", 1, 3);
    let p = &s.var(f) * &s.u(0);
    // d/du2 (u1 F(u2)) = u1 F'(u2)
    assert_eq!(s.fmt_poly(&s.d_poly(1, &p)), "u1*F'");
    assert_eq!(s.fmt_poly(&s.d_poly(0, &p)), "F");
}

#[test]
fn equality_agrees_with_evaluation() {
    // a = b exactly iff a − b vanishes at random points (probabilistic oracle)
    let mut r = rng(11);
    let s = sp(3);
    let den = [poly(&s, "u1 - u3"), poly(&s, "u2"), poly(&s, "u1 + 2")];
    for t in 0..100 {
        let mk = |r: &mut rand_chacha::ChaCha8Rng| {
            let d = &den[rand::Rng::gen_range(r, 0..3)];
            RatExpr::from_parts(rand_poly(r, 3, 3, 4), d).unwrap()
        };
        let a = mk(&mut r);
        let b = if t % 2 == 0 { a.clone() + RatExpr::zero(3) } else { mk(&mut r) };
        let exact = a == b;
        let mut agree = 0;
        let mut tries = 0;
        while agree < 5 {
            tries += 1;
            assert!(tries < 100);
            let pt = rand_point(&mut r, 3);
            if let (Ok(x), Ok(y)) = (a.eval(&pt), b.eval(&pt)) {
                if exact {
                    assert_eq!(x, y);
                    agree += 1;
                } else if x != y {
                    break;
                } else {
                    agree += 1;
                }
            }
        }
        assert_eq!(exact, agree == 5, "pair {t}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(p in arb_poly(3, 3), q in arb_poly(3, 3), r in arb_poly(3, 2)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn leibniz(p in arb_poly(3, 4), q in arb_poly(3, 4), k in 0usize..3) {
        let lhs = (&p * &q).partial(k);
        let rhs = &(&p.partial(k) * &q) + &(&p * &q.partial(k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_partials(p in arb_poly(3, 4), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!(p.partial(i).partial(j), p.partial(j).partial(i));
    }

    #[test]
    fn eval_homomorphism(p in arb_poly(3, 4), q in arb_poly(3, 4), x in arb_point(3)) {
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
    }

    #[test]
    fn radial_integration_inverts_d(p in arb_poly(3, 5)) {
        let p0 = &p - &Polynomial::constant(3, p.coeff(&Monomial::one(3)));
        let back = integrate_radial(&OneForm::exact(&p0, 3)).unwrap();
        prop_assert_eq!(back, p0);
    }

    #[test]
    fn printing_round_trips(p in arb_poly(3, 4)) {
        let s = sp(3);
        prop_assert_eq!(poly(&s, &s.fmt_poly(&p)), p);
    }

    #[test]
    fn rational_field_ops(p in arb_poly(2, 2), q in arb_poly(2, 2), x in arb_point(2)) {
        prop_assume!(!q.is_zero());
        let s = sp(2);
        let d = poly(&s, "u1 - u2 + 3");
        let a = RatExpr::from_parts(p.clone(), &d).unwrap();
        let b = RatExpr::from(q.clone());
        let back = (&a * &b).try_div(&b).unwrap();
        prop_assert_eq!(&back, &a);
        if let (Ok(va), Ok(vb)) = (a.eval(&x), b.eval(&x)) {
            prop_assert_eq!((&a - &b).eval(&x).unwrap(), va - vb);
        }
    }
}
