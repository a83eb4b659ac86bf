use infcwf_core::model::*;
use infcwf_core::syntax::*;

fn show(r: &LawReport) -> String {
    let mut out = format!("{} ({} samples)\n", r.model, r.samples);
    for s in std::iter::once(&r.sampler)
        .chain(&r.schemas)
        .chain(r.representability.as_ref())
    {
        out += &format!("  {} {}/{}\n", s.schema, s.failures, s.checked);
        if let Some(c) = &s.counterexample {
            out += &format!("{c}\n");
        }
    }
    out
}

#[test]
fn standard_model_passes() {
    let r = law_harness(&StandardModel::new(), 200, 0);
    assert!(r.passes(), "{}", show(&r));
    assert_eq!(r.representability.as_ref().unwrap().checked, 200);
}

#[test]
fn syntactic_model_passes() {
    let r = law_harness(&SyntacticModel::new(), 200, 0);
    assert!(r.passes(), "{}", show(&r));
    assert_eq!(r.representability.as_ref().unwrap().checked, 200);
}

#[test]
fn faulted_model_fails_second_projection() {
    let r = law_harness(&StandardModel::faulted(), 100, 0);
    let beta2 = r.schema("ext-beta2").unwrap();
    assert!(beta2.failures > 0, "{}", show(&r));
    assert!(beta2.counterexample.is_some());
    assert!(r.schema("idl").unwrap().passes());
    assert!(!r.passes());
}

#[test]
fn slices_pass() {
    let b = Con::ext(&Con::empty(), &Ty::bool());
    let s = SliceModel::new(SyntacticModel::new(), &Con::empty()).unwrap();
    let r = law_harness(&s, 100, 0);
    assert!(r.passes(), "{}", show(&r));

    let s = SliceModel::new(StandardModel::new(), &b).unwrap();
    let r = law_harness(&s, 100, 0);
    assert!(r.passes(), "{}", show(&r));

    let s = SliceModel::new(SyntacticModel::new(), &b).unwrap();
    let r = law_harness(&s, 100, 0);
    assert!(r.passes(), "{}", show(&r));

    let twice = SliceModel::new(SliceModel::new(StandardModel::new(), &b).unwrap(), &b).unwrap();
    let r = law_harness(&twice, 50, 7);
    assert!(r.passes(), "{}", show(&r));
}

#[test]
fn slice_requires_extension_of_base() {
    let b = Con::ext(&Con::empty(), &Ty::bool());
    let u = Con::ext(&Con::empty(), &Ty::unit());
    let inner = SliceModel::new(StandardModel::new(), &b).unwrap();
    assert!(matches!(
        SliceModel::new(inner, &u),
        Err(ModelError::Precondition(_))
    ));
    assert!(slice_model(StandardModel::faulted(), &b, 20, 0).is_err());
    assert!(slice_model(StandardModel::new(), &b, 20, 0).is_ok());
}

#[test]
fn slice_eps_is_the_structure_map() {
    let b = Con::ext(&Con::empty(), &Ty::bool());
    let s = SliceModel::new(StandardModel::new(), &b).unwrap();
    let g = Con::ext(&b, &Ty::unit());
    let c = s.con(&g);
    let eps = s.eps(&c);
    assert_eq!(eps(&vec![Value::Bool(true), Value::Star]), vec![Value::Bool(true)]);
    assert!(s.eq_con(&s.empty(), &s.con(&b)));
}

#[test]
fn reports_merge_in_order() {
    let m = StandardModel::new();
    let whole = law_harness(&m, 40, 3);
    let parts = law_harness_range(&m, 3..20).merge(law_harness_range(&m, 20..43));
    assert_eq!(whole, parts);
}

#[test]
fn semantic_equality_examples() {
    let g = Con::empty();
    let b = Ty::bool();
    let id = Tm::lam(&b, &b, &Tm::q(&g, &b));
    let gb = Con::ext(&g, &b);
    let x = Tm::var(&gb, 0).unwrap();
    let motive = Ty::sub(&b, &Sub::p(&gb, &b));
    let by_cases = Tm::lam(&b, &b, &Tm::bool_rec(&motive, &Tm::tru(), &Tm::fls(), &x));
    let e1 = Expr::Tm(g.clone(), id);
    let e2 = Expr::Tm(g.clone(), by_cases);
    assert!(semantic_equal(&e1, &e2).unwrap());
    assert!(!convertible(&e1, &e2).unwrap());
    let t = Expr::Tm(g.clone(), Tm::tru());
    let f = Expr::Tm(g.clone(), Tm::fls());
    assert!(!semantic_equal(&t, &f).unwrap());
    assert!(semantic_equal(&t, &Expr::Ty(g, b)).is_err());
}

#[test]
fn conversion_implies_semantic_equality() {
    for seed in 0..300u64 {
        let mut gen = Generator::new(seed);
        let g = gen.gen_con(3);
        let e = gen.gen_expr([Sort::Sub, Sort::Ty, Sort::Tm][(seed % 3) as usize], &g, 8);
        let (f, _) = gen.chain(&e, 6, &Rule::ALL);
        assert!(semantic_equal(&e, &f).unwrap(), "seed {seed}");
        let n = normalize(&e).unwrap();
        assert!(semantic_equal(&e, &n).unwrap(), "seed {seed}");
    }
}

#[test]
fn extension_counts_are_sums() {
    for seed in 0..200u64 {
        let mut gen = Generator::new(seed);
        let g = gen.gen_con(3);
        let a = gen.gen_ty(&g, 5);
        let envs = eval_con(&g).unwrap();
        let expect: usize = envs.iter().map(|env| eval_ty(&a, env).card()).sum();
        assert_eq!(eval_con(&Con::ext(&g, &a)).unwrap().len(), expect);
    }
}

#[test]
fn uniqueness_derivation_rewrites_to_the_pair() {
    let g = Con::ext(&Con::empty(), &Ty::bool());
    let s = Sub::id(&g);
    let t = Tm::var(&g, 0).unwrap();
    let gamma = Sub::pair(&s, &Ty::bool(), &t);
    let out = SyntacticModel::derive_uniqueness(&gamma, &s, &t).unwrap();
    assert!(conv_sub(&out, &gamma).unwrap());
    assert!(SyntacticModel::derive_uniqueness(&gamma, &s, &Tm::tru()).is_err());
}
