mod common;

use fcc_core::a0::{
    build_a0, build_a0_polys, build_single_block, check_master, check_system_form, is_linear, partial_bridge, symbolic_family, A0Family, Coef,
    SystemViolation,
};
use fcc_core::arith::rational::int;
use fcc_core::arith::{Monomial, Polynomial, Space};
use fcc_core::fmanifold::Structure;

use common::{poly, rand_family, rand_poly, rng, spec, specs_up_to, st};

fn symbolic(b: &[usize]) -> (Structure, Polynomial) {
    let sp = spec(b);
    let (space, fs) = symbolic_family(&sp, 4);
    let s = Structure::with_space(&sp, space);
    let a = build_a0_polys(&s, &fs).unwrap();
    (s, a)
}

fn monomials(n: usize, deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    for _ in 0..deg {
        let mut next = Vec::new();
        for m in &out {
            for k in 0..n {
                let mut e = m.clone();
                e.0[k] += 1;
                next.push(e);
            }
        }
        out.extend(next);
        out.sort();
        out.dedup();
    }
    out
}

#[test]
fn single_block_general_solutions() {
    for (b, expected) in [
        (vec![2], "F1*u2 + F2"),
        (vec![3], "F1*u3 + 1/2*F1'*u2^2 + F2*u2 + F3"),
        (vec![4], "u4*F1 + u3*F2 + u2*F3 + F4 + u2*u3*F1' + 1/2*u2^2*F2' + 1/6*u2^3*F1''"),
        (vec![2, 1], "F1*u2 + F2 + F3"),
        (vec![2, 2], "F1*u2 + F2 + F3*u4 + F4"),
        (vec![2, 1, 1], "F1*u2 + F2 + F3 + F4"),
    ] {
        let (s, a) = symbolic(&b);
        assert_eq!(a, poly(&s.space, expected), "{b:?}");
        assert!(check_master(&s, &a).is_empty(), "{b:?}");
    }
}

#[test]
fn family_coefficients() {
    let s = st(&[2]);
    let fam = A0Family { blocks: vec![vec![vec![Coef(int(0)), Coef(int(1))], vec![Coef(int(0))]]] };
    assert_eq!(s.space.fmt_poly(&build_a0(&s, &fam).unwrap().value), "u1*u2");
    let bad = A0Family { blocks: vec![vec![vec![Coef(int(1))]]] };
    assert!(build_a0(&s, &bad).is_err());
    let fam: A0Family = serde_json::from_str(r#"{"blocks": [[[2]], [["-1/3"]]]}"#).unwrap();
    let s = st(&[1, 1]);
    assert_eq!(s.space.fmt_poly(&build_a0(&s, &fam).unwrap().value), "5/3");
}

#[test]
fn master_equation_examples() {
    let s = st(&[2]);
    assert!(check_master(&s, &poly(&s.space, "u1*u2")).is_empty());
    assert_eq!(check_master(&s, &poly(&s.space, "u2^2")), vec![((1, 2), poly(&s.space, "2*u2"))]);
    let s = st(&[2, 1]);
    let res = check_master(&s, &poly(&s.space, "u1*u3"));
    assert_eq!(res, vec![((1, 3), poly(&s.space, "u1 - u3"))]);
}

#[test]
fn system_form_examples() {
    let sp = Space::new(4);
    let f = build_single_block(&sp, &[0, 1, 2, 3], &[sp.u(0), sp.zero(), sp.zero(), sp.zero()]);
    assert!(check_system_form(&sp, 4, &f).is_empty());
    let sp = Space::new(2);
    assert_eq!(check_system_form(&sp, 2, &poly(&sp, "u2^2")), vec![SystemViolation::Nonvanishing(2, 2)]);
    let sp = Space::new(3);
    assert!(check_system_form(&sp, 3, &poly(&sp, "u2*u3")).contains(&SystemViolation::Nonvanishing(2, 3)));
}

#[test]
fn master_and_system_form_agree_on_monomials() {
    for n in 2..=4 {
        let s = st(&[n]);
        for m in monomials(n, 4) {
            let f = Polynomial::term(m.clone(), int(1));
            assert_eq!(check_master(&s, &f).is_empty(), check_system_form(&s.space, n, &f).is_empty(), "n={n} {m:?}");
        }
    }
}

#[test]
fn master_and_system_form_agree_on_combinations() {
    let mut g = rng(5);
    for n in 2..=4 {
        let s = st(&[n]);
        for _ in 0..50 {
            let f = rand_poly(&mut g, n, 4, 3);
            assert_eq!(check_master(&s, &f).is_empty(), check_system_form(&s.space, n, &f).is_empty());
        }
    }
}

#[test]
fn built_solutions_solve_the_master_equation() {
    let mut g = rng(6);
    for b in specs_up_to(5) {
        let s = st(&b);
        for _ in 0..3 {
            let a = build_a0(&s, &rand_family(&mut g, &s.spec, 3)).unwrap().value;
            assert!(check_master(&s, &a).is_empty(), "{b:?}");
        }
    }
}

#[test]
fn linearity() {
    let mut sp = Space::new(2);
    let e1 = sp.add_const("e1");
    let e2 = sp.add_const("e2");
    let f = &(&sp.var(e1) * &sp.u(0)) + &(&sp.var(e2) * &sp.u(1));
    assert!(is_linear(&sp, &f));
    assert!(!is_linear(&sp, &poly(&sp, "u1*u2")));
    assert!(is_linear(&sp, &poly(&sp, "3")));
    sp.add_jet("F", 0, 1);
    assert!(!is_linear(&sp, &poly(&sp, "F")));
}

#[test]
fn bridge_examples() {
    let (space, fs) = symbolic_family(&spec(&[4]), 4);
    let b1 = partial_bridge(&space, &fs[0], 1).unwrap();
    assert!(b1.equal);
    assert_eq!(b1.lhs, poly(&space, "F1"));
    let b2 = partial_bridge(&space, &fs[0], 2).unwrap();
    assert!(b2.equal);
    assert_eq!(b2.lhs, poly(&space, "F2 + u2*F1'"));
    let (space, fs) = symbolic_family(&spec(&[3]), 4);
    let b3 = partial_bridge(&space, &fs[0], 3).unwrap();
    assert!(b3.equal);
    assert_eq!(b3.rhs, poly(&space, "F1'*u3 + 1/2*F1''*u2^2 + F2'*u2 + F3'"));
    assert!(partial_bridge(&space, &fs[0], 0).is_err());
    assert!(partial_bridge(&space, &fs[0], 4).is_err());
}
