use infcwf_core::syntax::*;
use proptest::prelude::*;

fn bool_ctx() -> RCon {
    Con::ext(&Con::empty(), &Ty::bool())
}

fn two_bools() -> RCon {
    Con::telescope(&[Ty::bool(), Ty::bool()])
}

fn tm(g: &RCon, t: &RTm) -> Expr {
    Expr::Tm(g.clone(), t.clone())
}

#[test]
fn variable_rule_checks() {
    let e = Con::empty();
    let b = Ty::bool();
    check_tm(&bool_ctx(), &Ty::sub(&b, &Sub::p(&e, &b)), &Tm::q(&e, &b)).unwrap();
}

#[test]
fn unannotated_pair_of_closed_type() {
    let s = Sub::pair_unannotated(&Sub::eps(&Con::empty()), &Tm::tru());
    let (src, tgt) = check_sub(&s).unwrap();
    assert_eq!(*src, Con::Empty);
    assert!(conv_con(&tgt, &bool_ctx()).unwrap());
}

#[test]
fn unannotated_pair_of_open_type_is_rejected() {
    let g = Con::ext(&Con::empty(), &Ty::univ());
    let code = Tm::var(&g, 0).unwrap();
    let el = Ty::el(&code);
    let g2 = Con::ext(&g, &el);
    let x = Tm::var(&g2, 0).unwrap();
    let s = Sub::pair_unannotated(&Sub::p(&g, &el), &x);
    assert!(check_sub(&s).is_err());
    assert!(check_sub(&Sub::pair(&Sub::p(&g, &el), &el, &x)).is_ok());
}

#[test]
fn mismatch_reports_both_types() {
    let err = check_tm(&Con::empty(), &Ty::unit(), &Tm::tru()).unwrap_err();
    match err {
        SyntaxError::TypeMismatch {
            expected, found, ..
        } => {
            assert_eq!(expected, "unit");
            assert_eq!(found, "bool");
        }
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn errors_carry_paths() {
    let bad = Sub::comp(&Sub::p(&Con::empty(), &Ty::bool()), &Sub::id(&Con::empty()));
    let err = check_sub(&bad).unwrap_err();
    assert!(err.to_string().contains("comp"), "{err}");
    let lam = Tm::lam(&Ty::bool(), &Ty::bool(), &Tm::tt());
    let err = infer_tm(&Con::empty(), &lam).unwrap_err();
    assert!(err.to_string().contains("lam.2"), "{err}");
}

#[test]
fn q_of_pair_normalizes_to_second_component() {
    let g = bool_ctx();
    let a = Ty::unit();
    let t = Tm::tt();
    let s = Sub::pair(&Sub::id(&g), &a, &t);
    let lhs = Tm::sub(&Tm::q(&g, &a), &s);
    assert_eq!(normalize_tm(&g, &lhs).unwrap().0, normalize_tm(&g, &t).unwrap().0);

    let x = Tm::var(&g, 0).unwrap();
    let s = Sub::pair(&Sub::id(&g), &Ty::bool(), &x);
    let lhs = Tm::sub(&Tm::q(&g, &Ty::bool()), &s);
    assert_eq!(
        normalize_tm(&g, &lhs).unwrap().0,
        NfTm::Ne(NfNe::Var(0))
    );
}

#[test]
fn type_under_identity_normalizes_away() {
    let g = bool_ctx();
    let a = Ty::pi(&Ty::bool(), &Ty::unit());
    let lhs = Ty::sub(&a, &Sub::id(&g));
    assert_eq!(normalize_ty(&g, &lhs).unwrap(), normalize_ty(&g, &a).unwrap());
}

#[test]
fn projection_pair_is_identity() {
    let g = bool_ctx();
    let a = Ty::bool();
    let ga = Con::ext(&g, &a);
    let plain = Sub::pair(&Sub::p(&g, &a), &a, &Tm::q(&g, &a));
    assert_eq!(
        normalize_sub(&plain).unwrap(),
        normalize_sub(&Sub::id(&ga)).unwrap()
    );
}

#[test]
fn normal_substitutions_are_tuples() {
    let g = two_bools();
    let nf = normalize_sub(&Sub::id(&g)).unwrap();
    assert_eq!(nf.entries, vec![NfTm::Ne(NfNe::Var(1)), NfTm::Ne(NfNe::Var(0))]);
    let back = embed_sub(&nf);
    assert!(conv_sub(&back, &Sub::id(&g)).unwrap());
}

#[test]
fn conversion_examples() {
    let g = two_bools();
    let (s, _) = Generator::new(3).gen_sub_from(&g, 6);
    let (src, tgt) = check_sub(&s).unwrap();
    let lhs = Sub::comp(&Sub::id(&tgt), &s);
    assert!(conv_sub(&lhs, &s).unwrap());
    assert_eq!(*src, *g);

    let to_empty = Sub::comp(&Sub::eps(&bool_ctx()), &Sub::p(&bool_ctx(), &Ty::bool()));
    assert!(conv_sub(&to_empty, &Sub::eps(&g)).unwrap());

    assert!(!conv_tm(&Con::empty(), &Tm::tru(), &Tm::fls()).unwrap());
}

#[test]
fn consistency_negatives() {
    let g = two_bools();
    let x0 = Tm::var(&g, 0).unwrap();
    let x1 = Tm::var(&g, 1).unwrap();
    assert!(!conv_tm(&g, &x0, &x1).unwrap());
    assert!(!conv_ty(&Con::empty(), &Ty::bool(), &Ty::unit()).unwrap());
    assert!(!convertible(&tm(&Con::empty(), &Tm::tru()), &tm(&Con::empty(), &Tm::fls())).unwrap());
}

#[test]
fn conversion_across_indices_is_an_error() {
    assert!(matches!(
        conv_tm(&Con::empty(), &Tm::tru(), &Tm::tt()),
        Err(SyntaxError::IndexMismatch(_))
    ));
    assert!(convertible(&Expr::Con(Con::empty()), &Expr::Ty(Con::empty(), Ty::bool())).is_err());
}

#[test]
fn bool_has_no_eta() {
    let g = bool_ctx();
    let x = Tm::var(&g, 0).unwrap();
    let motive = Ty::sub(&Ty::bool(), &Sub::p(&g, &Ty::bool()));
    let expanded = Tm::bool_rec(&motive, &Tm::tru(), &Tm::fls(), &x);
    assert!(!conv_tm(&g, &x, &expanded).unwrap());
}

#[test]
fn eta_for_functions_pairs_and_unit() {
    let pi = Ty::pi(&Ty::bool(), &Ty::bool());
    let g = Con::ext(&Con::empty(), &pi);
    let f = Tm::var(&g, 0).unwrap();
    let e = Expr::Tm(g.clone(), f);
    let redex = redexes(&e, &[Rule::PiEta]);
    assert!(!redex.is_empty());
    let r = redex.iter().find(|r| r.direction == Direction::RightToLeft).unwrap();
    let out = rewrite_step(&e, r.rule, &r.position, r.direction).unwrap();
    assert_ne!(out, e);
    assert!(convertible(&out, &e).unwrap());

    let gu = Con::ext(&Con::empty(), &Ty::unit());
    let u = Tm::var(&gu, 0).unwrap();
    assert!(conv_tm(&gu, &u, &Tm::tt()).unwrap());
}

fn root(e: &Expr, rule: Rule) -> Expr {
    rewrite_step(e, rule, &[], Direction::LeftToRight).unwrap()
}

#[test]
fn rewrite_examples() {
    let g = two_bools();
    let g1 = bool_ctx();
    let e = Con::empty();
    let b = Ty::bool();
    let nu = Sub::p(&g1, &b);
    let delta = Sub::p(&g, &b);
    let sigma = Sub::eps(&g1);
    let lhs = Expr::Sub(Sub::comp(&Sub::comp(&sigma, &nu), &delta));
    let rhs = Expr::Sub(Sub::comp(&sigma, &Sub::comp(&nu, &delta)));
    assert_eq!(root(&lhs, Rule::Assoc), rhs);
    assert_eq!(rewrite_step(&rhs, Rule::Assoc, &[], Direction::RightToLeft).unwrap(), lhs);

    let s = Sub::eps(&g1);
    let t = Tm::tru();
    let pair = Sub::pair(&s, &b, &t);
    let n = Sub::p(&g, &b);
    let lhs = Expr::Sub(Sub::comp(&pair, &n));
    let expect = Expr::Sub(Sub::pair(&Sub::comp(&s, &n), &b, &Tm::sub(&t, &n)));
    assert_eq!(root(&lhs, Rule::PairComp), expect);

    let lhs = Expr::Sub(Sub::comp(&Sub::p(&e, &b), &pair));
    assert_eq!(root(&lhs, Rule::ExtBeta1), Expr::Sub(s.clone()));

    assert!(matches!(
        rewrite_step(&Expr::Sub(s), Rule::Assoc, &[], Direction::LeftToRight),
        Err(RewriteError::NoMatch { .. })
    ));
    assert!(matches!(
        rewrite_step(&lhs, Rule::ExtBeta1, &[7], Direction::LeftToRight),
        Err(RewriteError::BadPosition(_))
    ));
}

#[test]
fn rule_names_round_trip() {
    for r in Rule::ALL {
        assert_eq!(r.name().parse::<Rule>().unwrap(), r);
    }
    assert_eq!(CWF_RULES.len(), 12);
}

#[test]
fn generator_is_deterministic() {
    for sort in [Sort::Con, Sort::Sub, Sort::Ty, Sort::Tm] {
        let a = random_wellformed(17, 12, sort, &bool_ctx());
        let b = random_wellformed(17, 12, sort, &bool_ctx());
        assert_eq!(a, b);
    }
}

#[test]
fn minimal_budget_gives_variable_or_literal() {
    for seed in 0..50 {
        let e = random_wellformed(seed, 1, Sort::Tm, &bool_ctx());
        let Expr::Tm(_, t) = e else { panic!() };
        assert!(
            matches!(
                &*t,
                Tm::Q(..) | Tm::Tt | Tm::True | Tm::False | Tm::BoolCode | Tm::UnitCode | Tm::Lam(..) | Tm::PairTm(..)
            ),
            "{t}"
        );
    }
}

#[test]
fn generated_expressions_are_wellformed() {
    let sorts = [Sort::Con, Sort::Sub, Sort::Ty, Sort::Tm];
    for seed in 0..1000u64 {
        let mut gen = Generator::new(seed);
        let g = gen.gen_con(4);
        let sort = sorts[(seed % 4) as usize];
        let e = gen.gen_expr(sort, &g, 12);
        check_expr(&e).unwrap_or_else(|err| panic!("seed {seed}: {e}: {err}"));
    }
}

#[test]
fn chains_end_in_convertible_expressions() {
    let sorts = [Sort::Sub, Sort::Ty, Sort::Tm];
    for seed in 0..300u64 {
        let mut gen = Generator::new(seed);
        let g = gen.gen_con(3);
        let e = gen.gen_expr(sorts[(seed % 3) as usize], &g, 8);
        let (end, steps) = gen.chain(&e, 8, &Rule::ALL);
        check_expr(&end).unwrap_or_else(|err| panic!("seed {seed}: {steps:?}: {err}"));
        assert!(
            convertible(&e, &end).unwrap(),
            "seed {seed}: {e} vs {end} via {steps:?}"
        );
    }
}

#[test]
fn every_listed_redex_is_sound() {
    for seed in 0..200u64 {
        let mut gen = Generator::new(seed);
        let g = gen.gen_con(3);
        let e = gen.gen_expr([Sort::Sub, Sort::Ty, Sort::Tm][(seed % 3) as usize], &g, 8);
        for r in redexes(&e, &Rule::ALL) {
            let out = rewrite_step(&e, r.rule, &r.position, r.direction).unwrap();
            check_expr(&out).unwrap_or_else(|err| panic!("{r:?} on {e}: {err}"));
            assert!(convertible(&e, &out).unwrap(), "{r:?} on {e}");
        }
    }
}

#[test]
fn extension_tuples_are_unique() {
    for seed in 0..100u64 {
        let mut gen = Generator::new(seed);
        let g = gen.gen_con(3);
        let (s, d) = gen.gen_sub_from(&g, 5);
        let a = gen.gen_ty(&d, 3);
        let Some(t) = gen.gen_tm(&g, &Ty::sub(&a, &s), 5) else { continue };
        let pair = Expr::Sub(Sub::pair(&s, &a, &t));
        let (tau, _) = gen.chain(&pair, 6, &CWF_RULES);
        assert!(convertible(&tau, &pair).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>(), sort in 0usize..4) {
        let sorts = [Sort::Con, Sort::Sub, Sort::Ty, Sort::Tm];
        let mut gen = Generator::new(seed);
        let g = gen.gen_con(3);
        let e = gen.gen_expr(sorts[sort], &g, 10);
        let n1 = normalize(&e).unwrap();
        check_expr(&n1).unwrap();
        let n2 = normalize(&n1).unwrap();
        prop_assert_eq!(&n1, &n2);
        prop_assert!(convertible(&e, &n1).unwrap());
    }

    #[test]
    fn conversion_is_an_equivalence(seed in any::<u64>()) {
        let mut gen = Generator::new(seed);
        let g = gen.gen_con(2);
        let e = gen.gen_expr(Sort::Tm, &g, 8);
        let (f, _) = gen.chain(&e, 3, &Rule::ALL);
        let (h, _) = gen.chain(&f, 3, &Rule::ALL);
        prop_assert!(convertible(&e, &e).unwrap());
        prop_assert_eq!(convertible(&e, &f).unwrap(), convertible(&f, &e).unwrap());
        prop_assert!(convertible(&e, &f).unwrap() && convertible(&f, &h).unwrap());
        prop_assert!(convertible(&e, &h).unwrap());
    }

    #[test]
    fn printing_is_injective_on_normal_forms(seed in any::<u64>()) {
        let mut gen = Generator::new(seed);
        let g = gen.gen_con(2);
        let e1 = gen.gen_expr(Sort::Ty, &g, 6);
        let e2 = gen.gen_expr(Sort::Ty, &g, 6);
        let (Expr::Ty(_, a), Expr::Ty(_, b)) = (&e1, &e2) else { unreachable!() };
        let na = normalize_ty(&g, a).unwrap();
        let nb = normalize_ty(&g, b).unwrap();
        prop_assert_eq!(na == nb, na.to_string() == nb.to_string());
    }
}
