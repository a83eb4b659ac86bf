//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use infcwf_core::model::*;
use infcwf_core::semicat::{
    self, category_of_elements, check_id_characterisation, enumerate_functors, enumerate_semicats,
    enumerate_with_hom_sizes, good_identities, i_of, is_equivalence, nerve, EnumSpec, FinSemicat,
};
use infcwf_core::simplex::{binomial, enumerate_monotone, face_map, simplex_cells, HornShape};
use infcwf_core::sset::corpus::segal_corpus;
use infcwf_core::sset::{
    composition_from_segal, equivalence_edges, fibration_kind, induced_composition, segal_report,
    univalence_check,
};
use infcwf_core::syntax::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("{what} took {t:.1?}, limit {limit:?}"))
}

/// The enumeration domain shared by the semicategory criteria.
fn instances() -> Vec<FinSemicat> {
    enumerate_semicats(EnumSpec {
        max_objects: 2,
        max_total_morphisms: 3,
    })
    .unwrap()
    .collect()
}

/// Number of associative operations on an `n`-element set, by brute force.
fn associative_tables(n: usize) -> usize {
    let cells = n * n;
    (0..n.pow(cells as u32))
        .filter(|&code| {
            let mut t = vec![0; cells];
            let mut c = code;
            for slot in t.iter_mut() {
                *slot = c % n;
                c /= n;
            }
            let op = |a: usize, b: usize| t[a * n + b];
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| op(op(a, b), c) == op(a, op(b, c)))))
        })
        .count()
}

/// Bijectivity of pre- and post-composition, counted from the table.
fn bijective(c: &FinSemicat, e: usize) -> bool {
    let (x, y) = (c.src(e), c.dst(e));
    (0..c.object_count()).all(|z| {
        let pre = c.hom(y, z).len() == c.hom(x, z).len()
            && c.hom(x, z).iter().all(|&t| {
                c.hom(y, z).iter().filter(|&&g| c.compose(g, e) == Some(t)).count() == 1
            });
        let post = c.hom(z, x).len() == c.hom(z, y).len()
            && c.hom(z, y).iter().all(|&t| {
                c.hom(z, x).iter().filter(|&&f| c.compose(e, f) == Some(t)).count() == 1
            });
        pre && post
    })
}

fn report_failure(r: &LawReport) -> Option<String> {
    if r.passes() {
        return None;
    }
    let bad = std::iter::once(&r.sampler)
        .chain(&r.schemas)
        .chain(r.representability.as_ref())
        .find(|s| !s.passes())?;
    Some(format!(
        "{}: {} failed {}/{}\n{}",
        r.model,
        bad.schema,
        bad.failures,
        bad.checked,
        bad.counterexample.clone().unwrap_or_default()
    ))
}

fn law_suite() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for r in [
        law_harness(&SyntacticModel::new(), 1000, 0),
        law_harness(&StandardModel::new(), 1000, 0),
    ] {
        if let Some(e) = report_failure(&r) {
            return Err(e);
        }
        ensure(r.schema("idl").unwrap().checked == 1000, || {
            format!("{}: only {} samples reached the equations", r.model, r.schema("idl").unwrap().checked)
        })?;
        checked += r.schemas.iter().map(|s| s.checked).sum::<usize>();
    }
    within(start, Duration::from_secs(120), "law suite")?;
    Ok(format!("{checked} equation instances in {:.1?}", start.elapsed()))
}

fn identity_theory() -> Outcome {
    let start = Instant::now();
    for (n, expected) in [(2, 8), (3, 113)] {
        let brute = associative_tables(n);
        ensure(brute == expected, || format!("brute force gives {brute} tables at {n}"))?;
        let found = enumerate_with_hom_sizes(1, &[n]).len();
        ensure(found == brute, || format!("enumeration gives {found} tables at {n}, brute force {brute}"))?;
    }
    let all = instances();
    for c in &all {
        for x in 0..c.object_count() {
            ensure(good_identities(c, x).len() <= 1, || format!("two good identities at {x} in\n{c}"))?;
        }
        let r = check_id_characterisation(c);
        ensure(r.passes(), || format!("{r:?} in\n{c}"))?;
        for e in (0..c.morphism_count()).filter(|&e| is_equivalence(c, e)) {
            let i = i_of(c, e).map_err(|err| err.to_string())?;
            ensure(good_identities(c, c.src(e)) == [i], || format!("I({e}) = {i} is not good in\n{c}"))?;
            ensure((e == i) == (c.compose(e, e) == Some(e)), || {
                format!("e = I(e) does not match idempotence for {e} in\n{c}")
            })?;
        }
    }
    within(start, Duration::from_secs(60), "identity theory")?;
    Ok(format!("{} instances", all.len()))
}

fn segal_round_trip() -> Outcome {
    let all = instances();
    for c in &all {
        let n = nerve(c, 4);
        let r = segal_report(&n, 4).map_err(|e| e.to_string())?;
        ensure(r.passes(), || format!("nerve fails Segal: {:?}\n{c}", r.failures.first()))?;
        let t = composition_from_segal(&n).map_err(|e| e.to_string())?;
        let expected: std::collections::BTreeMap<(usize, usize), usize> =
            c.composites().into_iter().map(|(g, f, h)| ((g, f), h)).collect();
        ensure(t.composites == expected, || format!("recovered table differs for\n{c}"))?;
    }
    let corpus = segal_corpus();
    for entry in &corpus {
        let segal = segal_report(&entry.sset, 3).map_err(|e| e.to_string())?.passes();
        let induced = induced_composition(&entry.sset);
        let category = induced.total && induced.associative;
        ensure(segal == category, || {
            format!("{}: segal {segal}, total and associative {category}", entry.name)
        })?;
        ensure(segal == entry.segal, || format!("{}: expected segal {}", entry.name, entry.segal))?;
    }
    Ok(format!("{} nerves, {} corpus entries", all.len(), corpus.len()))
}

fn equivalence_agreement() -> Outcome {
    let all = instances();
    let mut edges = 0;
    for c in &all {
        let flags = equivalence_edges(&nerve(c, 3)).map_err(|e| e.to_string())?;
        for (e, &flag) in flags.iter().enumerate() {
            ensure(flag == is_equivalence(c, e) && flag == bijective(c, e), || {
                format!("morphism {e} disagrees in\n{c}")
            })?;
        }
        edges += flags.len();
    }
    Ok(format!("{edges} morphisms"))
}

fn conversion() -> Outcome {
    let sorts = [Sort::Con, Sort::Sub, Sort::Ty, Sort::Tm];
    for seed in 0..1000u64 {
        let mut gen = Generator::new(seed);
        let g = gen.gen_con(3);
        let e = gen.gen_expr(sorts[(seed % 4) as usize], &g, 10);
        let len = (seed % 9) as usize;
        let (f, steps) = gen.chain(&e, len, &Rule::ALL);
        ensure(convertible(&e, &f) == Ok(true), || {
            format!("seed {seed}: {steps:?} broke conversion")
        })?;
    }
    let g = Con::telescope(&[Ty::bool(), Ty::bool()]);
    let negatives = [
        (Expr::Tm(Con::empty(), Tm::tru()), Expr::Tm(Con::empty(), Tm::fls())),
        (
            Expr::Tm(g.clone(), Tm::var(&g, 0).unwrap()),
            Expr::Tm(g.clone(), Tm::var(&g, 1).unwrap()),
        ),
        (Expr::Ty(Con::empty(), Ty::bool()), Expr::Ty(Con::empty(), Ty::unit())),
    ];
    for (a, b) in &negatives {
        ensure(convertible(a, b) == Ok(false), || format!("{a:?} and {b:?} convert"))?;
    }
    Ok("1000 chains, 3 negatives".into())
}

/// A well-formed pair sharing context and boundary: a rewrite chain, its
/// normal form, or two independent draws.
fn seeded_pair(seed: u64) -> (Expr, Expr) {
    let mut gen = Generator::new(seed ^ 0xb41d);
    let g = gen.gen_con(3);
    match seed % 3 {
        0 => {
            let e = gen.gen_expr([Sort::Sub, Sort::Ty, Sort::Tm][(seed / 3 % 3) as usize], &g, 8);
            let (f, _) = gen.chain(&e, 8, &Rule::ALL);
            (e, f)
        }
        1 => {
            let e = gen.gen_expr([Sort::Sub, Sort::Ty, Sort::Tm][(seed / 3 % 3) as usize], &g, 8);
            let n = normalize(&e).unwrap();
            (e, n)
        }
        _ => match seed / 3 % 3 {
            0 => {
                let (s, d) = gen.gen_sub_from(&g, 6);
                let t = gen.gen_sub_to(&g, &d, 6).unwrap_or_else(|| s.clone());
                (Expr::Sub(s), Expr::Sub(t))
            }
            1 => (Expr::Ty(g.clone(), gen.gen_ty(&g, 6)), Expr::Ty(g.clone(), gen.gen_ty(&g, 6))),
            _ => {
                let (t, a) = gen.gen_any_tm(&g, 6);
                let u = gen.gen_tm(&g, &a, 6).unwrap_or_else(|| t.clone());
                (Expr::Tm(g.clone(), t), Expr::Tm(g, u))
            }
        },
    }
}

fn soundness_bridge() -> Outcome {
    let mut convertible_pairs = 0;
    for seed in 0..1000u64 {
        let (e1, e2) = seeded_pair(seed);
        check_expr(&e1).map_err(|e| format!("seed {seed}: {e}"))?;
        check_expr(&e2).map_err(|e| format!("seed {seed}: {e}"))?;
        if convertible(&e1, &e2).map_err(|e| format!("seed {seed}: {e}"))? {
            convertible_pairs += 1;
            let sem = semantic_equal(&e1, &e2).map_err(|e| format!("seed {seed}: {e}"))?;
            ensure(sem, || format!("seed {seed}: convertible but semantically distinct"))?;
        }
    }
    Ok(format!("1000 pairs, {convertible_pairs} convertible"))
}

fn representability() -> Outcome {
    let syn = law_harness(&SyntacticModel::new(), 200, 1000);
    let std = law_harness(&StandardModel::new(), 200, 1000);
    for r in [&syn, &std] {
        let rep = r
            .representability
            .as_ref()
            .ok_or_else(|| format!("{}: no representability verdicts", r.model))?;
        ensure(rep.passes() && rep.checked == 200, || {
            format!(
                "{}: {}/{} failed\n{}",
                r.model,
                rep.failures,
                rep.checked,
                rep.counterexample.clone().unwrap_or_default()
            )
        })?;
    }
    Ok("200 syntactic, 200 standard instances".into())
}

fn slice_stability() -> Outcome {
    let start = Instant::now();
    for seed in 0..5u64 {
        let g0 = Generator::new(seed).gen_con(3);
        let s = slice_model(SyntacticModel::new(), &g0, 500, seed).map_err(|e| e.to_string())?;
        if let Some(e) = report_failure(&law_harness(&s, 500, seed)) {
            return Err(e);
        }
        let s = slice_model(StandardModel::new(), &g0, 500, seed).map_err(|e| e.to_string())?;
        if let Some(e) = report_failure(&law_harness(&s, 500, seed)) {
            return Err(e);
        }
    }
    let all = instances();
    let mut lifted = 0;
    for c in &all {
        for g in 0..c.object_count() {
            let s = semicat::slice(c, g);
            ensure(s.identity_lift.passes(), || format!("slice over {g} loses identities in\n{c}"))?;
            lifted += s.identity_lift.base_has_identities as usize;
        }
    }
    Ok(format!(
        "10 slice models in {:.1?}, {lifted} semicategory slices with identities",
        start.elapsed()
    ))
}

fn univalence() -> Outcome {
    use semicat::examples::{codiscrete2, trivial, z2};
    let verdict = |c: &FinSemicat| univalence_check(&nerve(c, 3)).map(|r| r.passes()).map_err(|e| e.to_string());
    ensure(verdict(&trivial())?, || "trivial instance is not univalent".into())?;
    ensure(!verdict(&z2())?, || "nerve(Z/2) is univalent".into())?;
    ensure(!verdict(&codiscrete2())?, || "codiscrete instance is univalent".into())?;
    let mut functors = 0;
    for c in instances().iter().filter(|c| c.object_count() <= 2) {
        for f in enumerate_functors(c, 2) {
            let el = category_of_elements(&f, 3);
            let kind = fibration_kind(&el.projection, 3).map_err(|e| e.to_string())?;
            ensure(kind.is_left(), || format!("projection is {kind:?} for a functor on\n{c}"))?;
            functors += 1;
        }
    }
    Ok(format!("3 univalence verdicts, {functors} functors"))
}

fn counts() -> Outcome {
    for n in 0..=5 {
        let cells = simplex_cells(n, n);
        for (m, level) in cells.iter().enumerate() {
            ensure(level.len() == binomial(n + 1, m + 1), || format!("Δ{n} level {m}: {}", level.len()))?;
        }
        for k in 0..=n {
            if n == 0 {
                break;
            }
            let h = HornShape::new(n, k, n).map_err(|e| e.to_string())?;
            let missing = face_map(n, k).map_err(|e| e.to_string())?;
            for (m, level) in h.cells.iter().enumerate() {
                let expected = if m == n {
                    0
                } else if m + 1 == n {
                    binomial(n + 1, n) - 1
                } else {
                    binomial(n + 1, m + 1)
                };
                ensure(level.len() == expected, || format!("Λ{n},{k} level {m}: {}", level.len()))?;
                ensure(level.iter().all(|c| c.values() != missing.values() || m + 1 != n), || {
                    format!("Λ{n},{k} keeps the face opposite {k}")
                })?;
            }
        }
    }
    for i in 0..=5 {
        for j in 0..=5 {
            let found = enumerate_monotone(i, j).len();
            ensure(found == binomial(j + 1, i + 1), || format!("[{i}] -> [{j}]: {found}"))?;
        }
    }
    Ok("Δn and Λn,k for n <= 5, monotone maps for i, j <= 5".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("law suite on the syntactic and standard models", law_suite),
        ("identity theory on enumerated semicategories", identity_theory),
        ("Segal condition and semicategory round trip", segal_round_trip),
        ("equivalence detection agreement", equivalence_agreement),
        ("conversion against rewrite chains", conversion),
        ("conversion implies semantic equality", soundness_bridge),
        ("representability of context extension", representability),
        ("slice stability", slice_stability),
        ("univalence and left fibrations", univalence),
        ("combinatorial counts", counts),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.1?}]", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{:.1?}]", i + 1, start.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
