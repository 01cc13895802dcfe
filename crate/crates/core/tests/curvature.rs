mod common;

use fcc_core::a0::{build_a0, is_linear, A0Family, Coef};
use fcc_core::arith::rational::int;
use fcc_core::arith::{parse_expr, Bindings, RatExpr, Space};
use fcc_core::connection::{solve_connection, Connection};
use fcc_core::curvature::{antisymmetry_violations, check_3rc, e_flatness_residual, is_flat, riemann};
use fcc_core::dual::{dual_structure, dual_unit_violations, euler_flatness_violations};
use fcc_core::fmanifold::{canonical_structure, Matrix, Structure};
use fcc_core::metric::metric_checks;

use common::{poly, rand_linear_a0, rand_nonlinear_a0, rng, spec, specs_up_to, st};

fn r(sp: &Space, s: &str) -> RatExpr {
    parse_expr(sp, &Bindings::new(), s).unwrap()
}

fn eps_structure(b: &[usize]) -> Structure {
    let sp = spec(b);
    let mut space = Space::new(sp.n());
    for k in 1..=sp.n() {
        space.add_const(&format!("eps{k}"));
    }
    Structure::with_space(&sp, space)
}

#[test]
fn zero_connection_is_flat() {
    let sp = Space::new(3);
    let g = Connection::zero(3, 3);
    assert!(is_flat(&riemann(&g, &sp)));
    let s = st(&[3]);
    assert!(e_flatness_residual(&g, &s).is_zero());
}

#[test]
fn curvature_of_u1_u2() {
    let s = st(&[2]);
    let g = solve_connection(&s, &poly(&s.space, "u1*u2")).unwrap();
    let rm = riemann(&g, &s.space);
    assert_eq!(rm.get(0, 1, 0, 1), &r(&s.space, "-1/u2"));
    assert!(!is_flat(&rm));
    assert!(antisymmetry_violations(&rm).is_empty());
    let ef = e_flatness_residual(&g, &s);
    assert_eq!(ef.get(0, 1, 1), &r(&s.space, "1/u2"));
}

#[test]
fn symbolic_linear_a0_is_flat() {
    for b in [vec![2], vec![2, 2], vec![3, 1]] {
        let s = eps_structure(&b);
        let mut a0 = s.space.zero();
        for k in 0..s.n() {
            a0 = &a0 + &(&s.space.u(k) * &s.space.named(&format!("eps{}", k + 1)).unwrap());
        }
        let g = solve_connection(&s, &a0).unwrap();
        assert!(is_flat(&riemann(&g, &s.space)), "{b:?}");
        if b == [2] {
            assert!(e_flatness_residual(&g, &s).is_zero());
        }
    }
}

#[test]
fn flat_iff_linear() {
    let mut gen = rng(31);
    // every connection on a line is flat
    for b in specs_up_to(4).into_iter().filter(|b| b.iter().sum::<usize>() > 1) {
        let s = st(&b);
        let lin = rand_linear_a0(&mut gen, &s);
        let g = solve_connection(&s, &lin).unwrap();
        assert!(is_flat(&riemann(&g, &s.space)), "{b:?}");
        let a0 = rand_nonlinear_a0(&mut gen, &s);
        let g = solve_connection(&s, &a0).unwrap();
        let rm = riemann(&g, &s.space);
        assert!(!is_flat(&rm), "{b:?}");
        assert!(check_3rc(&rm, &s.c).is_empty(), "{b:?}");
        assert!(antisymmetry_violations(&rm).is_empty());
    }
}

#[test]
fn cyclic_condition_examples() {
    let s = st(&[3]);
    let c = |v: i64| Coef(int(v));
    // F1 = u1², F2 = u1, F3 = 0
    let fam = A0Family { blocks: vec![vec![vec![c(0), c(0), c(1)], vec![c(0), c(1)], vec![c(0)]]] };
    let a0 = build_a0(&s, &fam).unwrap().value;
    let g = solve_connection(&s, &a0).unwrap();
    assert!(check_3rc(&riemann(&g, &s.space), &s.c).is_empty());

    let bad = poly(&s.space, "u3^2");
    let g = solve_connection(&s, &bad).unwrap();
    assert!(!check_3rc(&riemann(&g, &s.space), &s.c).is_empty());
}

#[test]
fn dual_of_a_linear_block() {
    let s = eps_structure(&[2]);
    let sp = &s.space;
    let a0 = poly(sp, "eps1*u1 + eps2*u2");
    let g = solve_connection(&s, &a0).unwrap();
    let d = dual_structure(&s, &g).unwrap();
    let gs = &d.gamma_star;
    assert_eq!(gs.get(0, 1, 1), &r(sp, "eps2/u2"));
    assert_eq!(gs.get(1, 1, 1), &r(sp, "-eps1/u2"));
    assert_eq!(gs.get(0, 0, 0), &r(sp, "(eps2*u2 - u1)/u1^2"));
    assert!(dual_unit_violations(&s, &d).is_empty());
    assert!(euler_flatness_violations(&s, gs).is_empty());
    assert!(is_flat(&riemann(gs, sp)));
}

#[test]
fn euler_field_is_the_dual_unit() {
    let mut gen = rng(32);
    for b in specs_up_to(4) {
        let s = st(&b);
        let a0 = rand_nonlinear_a0(&mut gen, &s);
        let g = solve_connection(&s, &a0).unwrap();
        let d = dual_structure(&s, &g).unwrap();
        assert!(dual_unit_violations(&s, &d).is_empty(), "{b:?}");
        assert!(euler_flatness_violations(&s, &d.gamma_star).is_empty(), "{b:?}");
    }
}

#[test]
fn dual_is_flat_for_linear_a0() {
    let mut gen = rng(33);
    for b in specs_up_to(4) {
        let s = st(&b);
        let a0 = rand_linear_a0(&mut gen, &s);
        assert!(is_linear(&s.space, &a0));
        let g = solve_connection(&s, &a0).unwrap();
        let d = dual_structure(&s, &g).unwrap();
        assert!(is_flat(&riemann(&d.gamma_star, &s.space)), "{b:?}");
    }
}

#[test]
fn metric_fixture_in_dimension_two() {
    let s = canonical_structure(&spec(&[2]));
    let sp = &s.space;
    let a0 = poly(sp, "-u1");
    let g = solve_connection(&s, &a0).unwrap();
    let m = Matrix::from_fn(2, |i, j| if i == j { sp.rzero() } else { r(sp, "u2") });
    let rep = metric_checks(&s, &m, &g);
    assert!(rep.invariant && rep.killing && rep.bridge && rep.nondegenerate);
    let id = metric_checks(&s, &Matrix::identity(2, s.nvars()), &g);
    assert!(!id.bridge);
    // only (i, j, k) = (2, 2, 2): −2Γ²₂₂ = −2/u2 on the left, 0 on the right
    assert_eq!(id.bridge_violations, vec![(2, 2, 2)]);
}
