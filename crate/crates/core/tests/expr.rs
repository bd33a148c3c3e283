use fermat_core::expr::{parse, parse_constant, Expr, ExprError, Func};
use fermat_core::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn arb_func() -> impl Strategy<Value = Func> {
    prop_oneof![
        Just(Func::Exp),
        Just(Func::Sin),
        Just(Func::Cos),
        Just(Func::Sinh),
        Just(Func::Cosh),
    ]
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0.0f64..1e6).prop_map(Expr::Real),
        Just(Expr::ImagUnit),
        Just(Expr::Var),
    ];
    leaf.prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 0.5f64..100.0)
                .prop_map(|(a, d)| Expr::Div(Box::new(a), Box::new(Expr::Real(d)))),
            (inner.clone(), 0u32..6).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
            (arb_func(), inner).prop_map(|(f, a)| Expr::Call(f, Box::new(a))),
        ]
    })
}

#[test]
fn evaluation_examples() {
    assert_eq!(parse("z").unwrap(), Expr::Var);
    assert_eq!(parse("z").unwrap().eval(c(3.0, 4.0)).unwrap(), c(3.0, 4.0));
    assert_eq!(parse("z^2").unwrap().eval(c(1.0, 1.0)).unwrap(), c(0.0, 2.0));
    for z in [c(0.0, 0.0), c(5.0, -3.0), c(-100.0, 0.25)] {
        assert_eq!(parse("exp(0*z)").unwrap().eval(z).unwrap(), c(1.0, 0.0));
    }
    assert_eq!(parse("0^0").unwrap().eval(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
}

#[test]
fn grammar_exercise() {
    let ast = parse("exp(2*z) + (1+i)*z^3").unwrap();
    match &ast {
        Expr::Add(left, right) => {
            assert!(matches!(**left, Expr::Call(Func::Exp, _)));
            match &**right {
                Expr::Mul(_, power) => assert!(matches!(**power, Expr::Pow(_, 3))),
                other => panic!("unexpected right operand {other:?}"),
            }
        }
        other => panic!("unexpected tree {other:?}"),
    }
    let z = c(0.2, -0.4);
    let expected = (2.0 * z).exp() + c(1.0, 1.0) * z * z * z;
    assert!((ast.eval(z).unwrap() - expected).norm() < 1e-15);
}

#[test]
fn precedence_and_associativity() {
    let z = c(2.0, 0.0);
    let value = |s: &str| parse(s).unwrap().eval(z).unwrap();
    assert_eq!(value("-z^2"), c(-4.0, 0.0));
    assert_eq!(value("2^3^2"), c(512.0, 0.0));
    assert_eq!(value("10 - 4 - 3"), c(3.0, 0.0));
    assert_eq!(value("12 / 3 / 2"), c(2.0, 0.0));
    assert_eq!(value("1 + 2 * 3"), c(7.0, 0.0));
    assert_eq!(value("  z*  i "), c(0.0, 2.0));
}

#[test]
fn entirety_violations() {
    assert!(matches!(parse("1/z"), Err(ExprError::NotEntire { .. })));
    assert!(matches!(parse("z/0"), Err(ExprError::NotEntire { .. })));
    assert!(matches!(parse("z/(1-1)"), Err(ExprError::NotEntire { .. })));
    assert!(matches!(parse("z^-1"), Err(ExprError::NotEntire { .. }) | Err(ExprError::Syntax { .. })));
    assert!(matches!(parse("z^0.5"), Err(ExprError::NotEntire { .. })));
    assert!(matches!(parse("z^z"), Err(ExprError::NotEntire { .. })));
}

#[test]
fn errors_carry_offsets() {
    match parse("z + $") {
        Err(ExprError::Syntax { offset, .. }) => assert_eq!(offset, 4),
        other => panic!("{other:?}"),
    }
    match parse("2z") {
        Err(ExprError::Syntax { offset, .. }) => assert_eq!(offset, 1),
        other => panic!("{other:?}"),
    }
    match parse("z + log(z)") {
        Err(e @ ExprError::UnknownIdentifier { offset: 4, .. }) => {
            let text = e.to_string();
            for name in ["exp", "sin", "cos", "sinh", "cosh"] {
                assert!(text.contains(name));
            }
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse("(z"), Err(ExprError::Syntax { offset: 2, .. })));
}

#[test]
fn overflow_is_reported() {
    let ast = parse("exp(exp(z))").unwrap();
    assert_eq!(ast.eval(c(10.0, 0.0)), Err(ExprError::Overflow));
}

#[test]
fn constants_parse() {
    assert_eq!(parse_constant("0.7+0.2*i").unwrap(), c(0.7, 0.2));
    assert!(parse_constant("z").is_err());
}

#[test]
fn accepted_expressions_are_pole_free_on_a_grid() {
    let sources = [
        "z",
        "z^2+0.3*i",
        "exp(z)",
        "sin(z)*cos(z) - sinh(z)/3",
        "cosh(z^3)/(2+i)",
        "(z-1)^7 + 0.5*z",
        "exp(-z^2)/(1/2)",
    ];
    for src in sources {
        let ast = parse(src).unwrap();
        for a in 0..100 {
            for b in 0..100 {
                let z = c(-2.0 + 4.0 * a as f64 / 99.0, -2.0 + 4.0 * b as f64 / 99.0);
                assert!(ast.eval(z).is_ok(), "{src} at {z}");
            }
        }
    }
}

proptest! {
    #[test]
    fn print_parse_round_trip(ast in arb_expr()) {
        let text = ast.to_string();
        prop_assert_eq!(parse(&text).unwrap(), ast);
    }

    #[test]
    fn power_matches_iterated_multiplication(n in 0u32..=16, re in -1.5f64..1.5, im in -1.5f64..1.5) {
        let z = c(re, im);
        let ast = parse(&format!("z^{n}")).unwrap();
        let mut expected = c(1.0, 0.0);
        for _ in 0..n {
            expected *= z;
        }
        let got = ast.eval(z).unwrap();
        prop_assert!((got - expected).norm() <= 1e-13 * expected.norm().max(f64::MIN_POSITIVE));
    }

    #[test]
    fn parsed_expressions_evaluate_on_the_grid(ast in arb_expr()) {
        let ast = parse(&ast.to_string()).unwrap();
        for a in 0..10 {
            for b in 0..10 {
                let z = c(-2.0 + 4.0 * a as f64 / 9.0, -2.0 + 4.0 * b as f64 / 9.0);
                match ast.eval(z) {
                    Ok(v) => prop_assert!(v.is_finite()),
                    // Huge literals under nested exp can overflow; that is reported, never a pole.
                    Err(e) => prop_assert_eq!(e, ExprError::Overflow),
                }
            }
        }
    }
}
