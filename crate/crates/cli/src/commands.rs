//! Subcommands and their dispatch.

use std::ops::Range;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use infcwf_core::model::{
    eval_con, eval_sub, eval_tm, eval_ty, law_harness_range, semantic_equal, Env, Interpret,
    LawReport, SchemaResult, SliceModel, StandardModel, SyntacticModel,
};
use infcwf_core::semicat::{
    self, category_of_elements, check_id_characterisation, enumerate_semicats,
    enumerate_with_hom_sizes, good_identities, hom_size_vectors, i_of, identity_structure,
    is_equivalence, nerve, EnumSpec, FinSemicat,
};
use infcwf_core::sset::{
    composition_from_segal, equivalence_edges, fibration_kind, identity_structure as sset_identities,
    induced_composition, lifting_profile, segal_report, univalence_check, FibrationKind, FinSSet,
    SSetMap,
};
use infcwf_core::syntax::{
    check_expr, check_sub, con_len, convertible, infer_tm, normalize, Expr,
};
use rayon::prelude::*;
use thiserror::Error;

use crate::formats::{
    parse_functor, parse_map, parse_semicat, parse_sset, read_file, write_semicat, write_sset,
};
use crate::report::{Check, Report};
use crate::surface::{parse_surface, print_surface};

#[derive(Debug, Parser)]
#[command(name = "infcwf", version, about = "Type theory kernel and finite semicategory verifiers")]
pub struct Cli {
    #[command(flatten)]
    pub options: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Highest simplicial level used by sset checks.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=6))]
    pub max_level: u64,
    /// Number of samples for sampling commands.
    #[arg(long, global = true, default_value_t = 1000)]
    pub budget: usize,
    /// First seed for sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Add brute-force cross-checks.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Worker threads for enumeration and sampling.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    pub jobs: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Syntactic,
    Standard,
    /// The standard model with a deliberately broken context extension.
    Faulted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Kan,
    Left,
    Right,
    Inner,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that an expression is well formed.
    Check { file: PathBuf },
    /// Print the normal form of an expression.
    Norm { file: PathBuf },
    /// Decide conversion of two expressions.
    Eq { left: PathBuf, right: PathBuf },
    /// Evaluate an expression in the finite standard model on every environment.
    Eval { file: PathBuf },
    /// Write the nerve of a semicategory as an sset file.
    Nerve {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Validate an sset and check Segal, identities and univalence.
    VerifySset { file: PathBuf },
    /// Check the identity theory of a semicategory.
    VerifySemicat { file: PathBuf },
    /// Classify a map (`.map`) or the projection of a category of elements (`.functor`).
    VerifyMap {
        file: PathBuf,
        /// Required class; defaults to left for functor files.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Run the semicategory lemma suite over an enumeration.
    Enumerate {
        #[arg(long, default_value_t = 1)]
        max_objects: usize,
        #[arg(long, default_value_t = 3)]
        max_morphisms: usize,
    },
    /// Slice a semicategory over an object, or a model over a context.
    Slice {
        /// Semicategory file to slice (with --object).
        file: Option<PathBuf>,
        #[arg(long, requires = "file")]
        object: Option<String>,
        /// Model to slice (with --context).
        #[arg(long, value_enum, conflicts_with = "file", requires = "context")]
        model: Option<ModelName>,
        /// Surface file holding the context to slice by.
        #[arg(long, requires = "model")]
        context: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the equations of a model on seeded samples.
    Harness {
        #[arg(long, value_enum, default_value_t = ModelName::Syntactic)]
        model: ModelName,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Norm { .. } => "norm",
            Command::Eq { .. } => "eq",
            Command::Eval { .. } => "eval",
            Command::Nerve { .. } => "nerve",
            Command::VerifySset { .. } => "verify-sset",
            Command::VerifySemicat { .. } => "verify-semicat",
            Command::VerifyMap { .. } => "verify-map",
            Command::Enumerate { .. } => "enumerate",
            Command::Slice { .. } => "slice",
            Command::Harness { .. } => "harness",
        }
    }
}

/// Input and usage problems; reported with exit code 2.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct InputError(String);

fn input(e: impl std::fmt::Display) -> InputError {
    InputError(e.to_string())
}

type Res<T> = Result<T, InputError>;

/// Run a command; `progress` receives lines as long jobs advance.
pub fn run(cli: &Cli, progress: &mut dyn FnMut(&str)) -> Report {
    let start = Instant::now();
    let name = cli.command.name();
    let mut report = match dispatch(cli, progress) {
        Ok(r) => r,
        Err(e) => Report::error(name, e.0),
    };
    report.elapsed = start.elapsed();
    report
}

fn dispatch(cli: &Cli, progress: &mut dyn FnMut(&str)) -> Res<Report> {
    let o = &cli.options;
    let mut r = Report::new(cli.command.name());
    match &cli.command {
        Command::Check { file } => check(&load_expr(file)?, &mut r),
        Command::Norm { file } => norm(&load_expr(file)?, &mut r),
        Command::Eq { left, right } => eq(&load_expr(left)?, &load_expr(right)?, o, &mut r),
        Command::Eval { file } => eval(&load_expr(file)?, &mut r)?,
        Command::Nerve { file, output } => {
            let c = load_semicat(file)?;
            let a = nerve(&c, o.max_level as usize);
            r.push(Check::new("nerve", true, format!("cell counts {:?}", a.counts())));
            if o.oracle {
                nerve_oracle(&c, &a, &mut r);
            }
            emit(&mut r, write_sset(&a), output.as_deref())?;
        }
        Command::VerifySset { file } => verify_sset(&load_sset(file)?, o, &mut r)?,
        Command::VerifySemicat { file } => verify_semicat(&load_semicat(file)?, o, &mut r),
        Command::VerifyMap { file, expect } => verify_map(file, *expect, o, &mut r)?,
        Command::Enumerate {
            max_objects,
            max_morphisms,
        } => enumerate(*max_objects, *max_morphisms, o, &mut r, progress)?,
        Command::Slice {
            file,
            object,
            model,
            context,
            output,
        } => match (file, model) {
            (Some(file), None) => {
                let object = object
                    .as_deref()
                    .ok_or_else(|| input("slicing a semicategory needs --object"))?;
                slice_semicat(&load_semicat(file)?, object, &mut r, output.as_deref())?
            }
            (None, Some(m)) => {
                let text = read_file(context.as_deref().expect("clap requires --context"))
                    .map_err(input)?;
                slice_model_harness(*m, &text, o, &mut r)?
            }
            _ => return Err(input("slice needs either FILE --object NAME or --model M --context FILE")),
        },
        Command::Harness { model } => {
            let rep = harness(o, move || model_of(*model))?;
            push_law_report(&mut r, "", &rep);
        }
    }
    Ok(r)
}

fn load_expr(path: &Path) -> Res<Expr> {
    let text = read_file(path).map_err(input)?;
    parse_surface(&text).map_err(|e| input(format!("{}:{e}", path.display())))
}

fn load_semicat(path: &Path) -> Res<FinSemicat> {
    let text = read_file(path).map_err(input)?;
    parse_semicat(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_sset(path: &Path) -> Res<FinSSet> {
    let text = read_file(path).map_err(input)?;
    parse_sset(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

/// Put an artifact in the report, or in `path` when given.
fn emit(r: &mut Report, text: String, path: Option<&Path>) -> Res<()> {
    match path {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| input(format!("{}: {e}", p.display())))?;
            r.push(Check::note("output", format!("written to {}", p.display())));
        }
        None => r.output = Some(text),
    }
    Ok(())
}

fn describe(e: &Expr) -> String {
    match e {
        Expr::Con(g) => format!("context of length {}", con_len(g)),
        Expr::Sub(s) => match check_sub(s) {
            Ok((src, tgt)) => format!("substitution {src} -> {tgt}"),
            Err(e) => e.to_string(),
        },
        Expr::Ty(g, _) => format!("type in {g}"),
        Expr::Tm(g, t) => match infer_tm(g, t) {
            Ok(a) => format!("term of type {a} in {g}"),
            Err(e) => e.to_string(),
        },
    }
}

fn check(e: &Expr, r: &mut Report) {
    match check_expr(e) {
        Ok(()) => r.push(Check::new("well-formed", true, describe(e))),
        Err(err) => r.push(Check::new("well-formed", false, err.to_string())),
    }
}

fn norm(e: &Expr, r: &mut Report) {
    match normalize(e) {
        Ok(n) => {
            r.output = Some(print_surface(&n));
            r.push(Check::new("normalize", true, describe(&n)));
        }
        Err(err) => r.push(Check::new("normalize", false, err.to_string())),
    }
}

fn eq(a: &Expr, b: &Expr, o: &Options, r: &mut Report) {
    let verdict = match convertible(a, b) {
        Ok(v) => v,
        Err(err) => {
            r.push(Check::new("conversion", false, err.to_string()));
            return;
        }
    };
    r.push(Check::new(
        "conversion",
        verdict,
        if verdict { "equal" } else { "not equal" },
    ));
    if o.oracle {
        match semantic_equal(a, b) {
            Ok(sem) if verdict && !sem => r.push(Check::new(
                "standard-model",
                false,
                "convertible but different in the standard model",
            )),
            Ok(sem) => r.push(Check::note(
                "standard-model",
                if sem { "equal on every environment" } else { "different on some environment" },
            )),
            Err(err) => r.push(Check::note("standard-model", err.to_string())),
        }
    }
}

fn show_env(env: &Env) -> String {
    let parts: Vec<String> = env.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn eval(e: &Expr, r: &mut Report) -> Res<()> {
    if let Err(err) = check_expr(e) {
        r.push(Check::new("well-formed", false, err.to_string()));
        return Ok(());
    }
    let source = match e {
        Expr::Con(g) | Expr::Ty(g, _) | Expr::Tm(g, _) => g.clone(),
        Expr::Sub(s) => check_sub(s).map_err(input)?.0,
    };
    let envs = eval_con(&source).map_err(|err| input(format!("cannot enumerate {source}: {err}")))?;
    let mut out = String::new();
    for env in &envs {
        let line = match e {
            Expr::Con(_) => show_env(env),
            Expr::Sub(s) => format!("{} -> {}", show_env(env), show_env(&eval_sub(s, env))),
            Expr::Ty(_, a) => {
                let t = eval_ty(a, env);
                format!("{} -> {t} ({} values)", show_env(env), t.card())
            }
            Expr::Tm(_, t) => format!("{} -> {}", show_env(env), eval_tm(t, env)),
        };
        out.push_str(&line);
        out.push('\n');
    }
    r.output = Some(out);
    r.push(Check::new("evaluate", true, format!("{} environments", envs.len())));
    Ok(())
}

fn nerve_oracle(c: &FinSemicat, a: &FinSSet, r: &mut Report) {
    let up_to = a.max_level();
    match segal_report(a, up_to) {
        Ok(s) => r.push(Check::new(
            "oracle-segal",
            s.passes(),
            format!("inner horns through level {up_to}"),
        )),
        Err(e) => r.push(Check::new("oracle-segal", false, e.to_string())),
    }
    if up_to >= 2 {
        let ok = composition_from_segal(a).is_ok_and(|t| {
            t.composites.len() == c.composites().len()
                && c.composites().into_iter().all(|(g, f, h)| t.compose(g, f) == Some(h))
        });
        r.push(Check::new("oracle-composition", ok, "composition recovered from the nerve"));
    }
}

fn verify_sset(a: &FinSSet, o: &Options, r: &mut Report) -> Res<()> {
    let v = a.validate();
    let detail = v
        .violations
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("\n");
    r.push(
        Check::new("validate", v.is_valid(), format!("cell counts {:?}", a.counts()))
            .with_counterexample((!v.is_valid()).then_some(detail)),
    );
    if !v.is_valid() {
        return Ok(());
    }
    let up_to = (o.max_level as usize).min(a.max_level());
    if up_to < 2 {
        r.push(Check::note("segal", format!("max level {} has no inner horns", a.max_level())));
        return Ok(());
    }
    let s = segal_report(a, up_to).map_err(input)?;
    let cx = s.failures.first().map(|f| {
        format!(
            "Λ{},{} has {} fillers: {:?}",
            f.n, f.k, f.fillers, f.horn
        )
    });
    r.push(
        Check::new(
            "segal",
            s.passes(),
            format!(
                "through level {up_to}: {} existence and {} uniqueness failures",
                s.existence_failures(),
                s.uniqueness_failures()
            ),
        )
        .with_counterexample(cx),
    );
    if o.oracle {
        let ind = induced_composition(a);
        let agree = s.passes_at(2) == ind.total;
        r.push(Check::new(
            "oracle-composition",
            agree,
            format!("2-cells give a total composition: {}", ind.total),
        ));
    }
    if !s.passes() {
        return Ok(());
    }
    let ids = sset_identities(a).map_err(input)?;
    match &ids.structure {
        Some(st) => {
            let names: Vec<String> = st
                .iter()
                .enumerate()
                .map(|(x, &i)| format!("{}: {}", a.name(0, x), a.name(1, i)))
                .collect();
            r.push(Check::note("identities", format!("{{{}}}", names.join(", "))));
            let u = univalence_check(a).map_err(input)?;
            let cx = u
                .violations
                .first()
                .map(|v| format!("{} -> {}: {:?}", v.from, v.to, v.equivalences));
            r.push(
                Check::note(
                    "univalence",
                    if u.passes() { "holds" } else { "fails: equivalences other than identities" },
                )
                .with_counterexample(cx),
            );
        }
        None => r.push(Check::note("identities", "no identity structure")),
    }
    r.push(Check::new(
        "identity-uniqueness",
        ids.conflicts.is_empty(),
        "at most one good identity per vertex",
    ));
    Ok(())
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

/// I(e) is a good identity for every equivalence `e`, and `e = I(e)`
/// exactly when `e` is idempotent.
fn extraction_failure(c: &FinSemicat) -> Option<String> {
    for e in (0..c.morphism_count()).filter(|&e| is_equivalence(c, e)) {
        let i = match i_of(c, e) {
            Ok(i) => i,
            Err(err) => return Some(err.to_string()),
        };
        if good_identities(c, c.src(e)) != [i] {
            return Some(format!("I({}) = {} is not the good identity", c.name(e), c.name(i)));
        }
        if (e == i) != (c.compose(e, e) == Some(e)) {
            return Some(format!("{} = I({}) disagrees with idempotence", c.name(e), c.name(e)));
        }
    }
    None
}

fn verify_semicat(c: &FinSemicat, o: &Options, r: &mut Report) {
    let ch = check_id_characterisation(c);
    let cx = ch.counterexamples.first().map(|x| {
        format!("{}: good identity {}, neutral {}", x.morphism, x.good_identity, x.neutral)
    });
    r.push(
        Check::new(
            "id-characterisation",
            ch.passes(),
            format!("{} endomorphisms: good identity iff neutral", ch.checked),
        )
        .with_counterexample(cx),
    );
    let many = (0..c.object_count()).find(|&x| good_identities(c, x).len() > 1);
    r.push(Check::new(
        "identity-uniqueness",
        many.is_none(),
        match many {
            Some(x) => format!("{} has several good identities", c.objects()[x]),
            None => "at most one good identity per object".into(),
        },
    ));
    let failure = extraction_failure(c);
    let equivalences: Vec<&str> = (0..c.morphism_count())
        .filter(|&e| is_equivalence(c, e))
        .map(|e| c.name(e))
        .collect();
    r.push(
        Check::new(
            "identity-extraction",
            failure.is_none(),
            format!("equivalences {{{}}}", equivalences.join(", ")),
        )
        .with_counterexample(failure),
    );
    match identity_structure(c) {
        Some(ids) => {
            let names: Vec<&str> = ids.iter().map(|&i| c.name(i)).collect();
            r.push(Check::note("identities", format!("{{{}}}", names.join(", "))));
            let univalent = (0..c.morphism_count())
                .filter(|&e| is_equivalence(c, e))
                .all(|e| ids.contains(&e));
            r.push(Check::note(
                "univalence",
                if univalent { "holds" } else { "fails: equivalences other than identities" },
            ));
        }
        None => r.push(Check::note("identities", "no identity structure")),
    }
    if o.oracle {
        let bad = (0..c.morphism_count()).find(|&e| is_equivalence(c, e) != bijective(c, e));
        r.push(Check::new(
            "oracle-bijection",
            bad.is_none(),
            "equivalences agree with bijective composition",
        ));
        let a = nerve(c, (o.max_level as usize).max(2));
        let horn = equivalence_edges(&a)
            .map(|flags| flags.iter().enumerate().all(|(e, &f)| f == is_equivalence(c, e)))
            .unwrap_or(false);
        r.push(Check::new("oracle-nerve", horn, "equivalences agree with horn filling in the nerve"));
    }
}

fn satisfies(kind: FibrationKind, expect: Expect) -> bool {
    match expect {
        Expect::Kan => kind == FibrationKind::Kan,
        Expect::Left => kind.is_left(),
        Expect::Right => kind.is_right(),
        Expect::Inner => kind.is_inner(),
    }
}

fn verify_map(file: &Path, expect: Option<Expect>, o: &Options, r: &mut Report) -> Res<()> {
    let text = read_file(file).map_err(input)?;
    let is_functor = file.extension().is_some_and(|e| e == "functor");
    let map: SSetMap = if is_functor {
        let f = parse_functor(&text, file).map_err(|e| input(format!("{}: {e}", file.display())))?;
        category_of_elements(&f, o.max_level as usize).projection
    } else {
        parse_map(&text, file).map_err(|e| input(format!("{}: {e}", file.display())))?
    };
    let up_to = (o.max_level as usize).min(map.top_level());
    let kind = fibration_kind(&map, up_to).map_err(input)?;
    let expect = expect.or(is_functor.then_some(Expect::Left));
    let detail = format!("{kind:?} through level {up_to}").to_lowercase();
    let check = match expect {
        Some(x) => {
            let ok = satisfies(kind, x);
            let cx = if ok {
                None
            } else {
                lifting_profile(&map, up_to)
                    .ok()
                    .and_then(|p| p.failures.first().cloned())
                    .map(|f| format!("Λ{},{} with {} lifts: {:?}", f.n, f.k, f.lifts, f.horn))
            };
            Check::new("fibration", ok, format!("{detail}, expected {x:?}").to_lowercase())
                .with_counterexample(cx)
        }
        None => Check::note("fibration", detail),
    };
    r.push(check);
    Ok(())
}

fn pool(o: &Options) -> Res<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(o.jobs as usize)
        .build()
        .map_err(input)
}

const LEMMAS: [&str; 6] = [
    "identity-uniqueness",
    "id-characterisation",
    "identity-extraction",
    "nerve-segal",
    "equivalence-agreement",
    "slice-identities",
];

#[derive(Default, Clone)]
struct Tally {
    checked: usize,
    failures: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn record(&mut self, failure: Option<String>) {
        self.checked += 1;
        if let Some(f) = failure {
            self.failures += 1;
            self.counterexample.get_or_insert(f);
        }
    }
}

/// Failures of each lemma on one instance, in [`LEMMAS`] order.
fn lemma_failures(c: &FinSemicat, level: usize, oracle: bool) -> Vec<Option<String>> {
    let show = |what: String| Some(format!("{what}\n{c}"));
    let mut out = Vec::with_capacity(LEMMAS.len() + 1);
    out.push(
        (0..c.object_count())
            .find(|&x| good_identities(c, x).len() > 1)
            .and_then(|x| show(format!("two good identities at {}", c.objects()[x]))),
    );
    let ch = check_id_characterisation(c);
    out.push((!ch.passes()).then(|| format!("{:?}\n{c}", ch.counterexamples[0])));
    out.push(extraction_failure(c).and_then(show));
    let a = nerve(c, level);
    let segal = match segal_report(&a, level) {
        Ok(s) if s.passes() => composition_from_segal(&a)
            .ok()
            .filter(|t| {
                t.composites.len() == c.composites().len()
                    && c.composites().into_iter().all(|(g, f, h)| t.compose(g, f) == Some(h))
            })
            .map_or_else(|| show("composition not recovered from the nerve".into()), |_| None),
        Ok(s) => show(format!("nerve fails Segal: {:?}", s.failures[0])),
        Err(e) => show(e.to_string()),
    };
    out.push(segal);
    let agreement = match equivalence_edges(&a) {
        Ok(flags) => flags
            .iter()
            .enumerate()
            .find(|&(e, &f)| f != is_equivalence(c, e) || (oracle && f != bijective(c, e)))
            .and_then(|(e, _)| show(format!("detectors disagree on {}", c.name(e)))),
        Err(e) => show(e.to_string()),
    };
    out.push(agreement);
    out.push(
        (0..c.object_count())
            .find(|&g| !semicat::slice(c, g).identity_lift.passes())
            .and_then(|g| show(format!("slice over {} loses identities", c.objects()[g]))),
    );
    out
}

/// Associative operations on an `n`-element set, by brute force.
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

fn enumerate(
    max_objects: usize,
    max_morphisms: usize,
    o: &Options,
    r: &mut Report,
    progress: &mut dyn FnMut(&str),
) -> Res<()> {
    let spec = EnumSpec {
        max_objects,
        max_total_morphisms: max_morphisms,
    };
    // Validates the bounds before any work.
    let _ = enumerate_semicats(spec).map_err(input)?;
    let level = (o.max_level as usize).max(2);
    let pool = pool(o)?;
    let mut tallies = vec![Tally::default(); LEMMAS.len()];
    let mut total = 0;
    for objects in 0..=max_objects {
        for t in 0..=max_morphisms {
            for sizes in hom_size_vectors(objects, t) {
                let batch = enumerate_with_hom_sizes(objects, &sizes);
                let results: Vec<Vec<Option<String>>> = pool.install(|| {
                    batch
                        .par_iter()
                        .map(|c| lemma_failures(c, level, o.oracle))
                        .collect()
                });
                for per in results {
                    for (tally, f) in tallies.iter_mut().zip(per) {
                        tally.record(f);
                    }
                }
                total += batch.len();
                let line = format!("{objects} objects, hom sizes {sizes:?}: {} instances", batch.len());
                progress(&line);
                r.push(Check::note(format!("instances {objects} {sizes:?}"), format!("{} instances", batch.len())));
                if o.oracle && objects == 1 && t <= 3 {
                    let brute = if t == 0 { 1 } else { associative_tables(t) };
                    r.push(Check::new(
                        format!("oracle-count [{t}]"),
                        brute == batch.len(),
                        format!("brute force finds {brute} associative tables"),
                    ));
                }
            }
        }
    }
    for (name, t) in LEMMAS.iter().zip(tallies) {
        r.push(
            Check::new(
                *name,
                t.failures == 0,
                format!("{} instances, {} failures", t.checked, t.failures),
            )
            .with_counterexample(t.counterexample),
        );
    }
    r.push(Check::note("instances", format!("{total} in total")));
    Ok(())
}

fn slice_semicat(c: &FinSemicat, object: &str, r: &mut Report, output: Option<&Path>) -> Res<()> {
    let g = c
        .find_object(object)
        .ok_or_else(|| input(format!("no object {object:?}")))?;
    let s = semicat::slice(c, g);
    let lift = &s.identity_lift;
    r.push(Check::new(
        "slice-identities",
        lift.passes(),
        if lift.base_has_identities {
            format!(
                "slice has identities: {}, lifted from the base: {}",
                lift.slice_has_identities, lift.lifted_agree
            )
        } else {
            "base has no identity structure".into()
        },
    ));
    emit(r, write_semicat(&s.semicat), output)
}

fn model_of(m: ModelName) -> Box<dyn DynModel> {
    match m {
        ModelName::Syntactic => Box::new(SyntacticModel::new()),
        ModelName::Standard => Box::new(StandardModel::new()),
        ModelName::Faulted => Box::new(StandardModel::faulted()),
    }
}

/// Object-safe handle on a model for harness runs.
pub trait DynModel {
    fn harness(&self, seeds: Range<u64>) -> LawReport;
    fn slice_harness(&self, gamma0: &Expr, seeds: Range<u64>) -> Result<LawReport, String>;
}

impl<M: Interpret + Clone> DynModel for M {
    fn harness(&self, seeds: Range<u64>) -> LawReport {
        law_harness_range(self, seeds)
    }

    fn slice_harness(&self, gamma0: &Expr, seeds: Range<u64>) -> Result<LawReport, String> {
        let Expr::Con(g) = gamma0 else {
            return Err("the slicing context must be a context".into());
        };
        let s = SliceModel::new(self.clone(), g).map_err(|e| e.to_string())?;
        Ok(law_harness_range(&s, seeds))
    }
}

/// Contiguous seed ranges, one per job, merged back in seed order.
fn chunks(o: &Options) -> Vec<Range<u64>> {
    let n = o.budget as u64;
    let jobs = (o.jobs).min(n.max(1));
    let per = n.div_ceil(jobs);
    (0..jobs)
        .map(|j| {
            let lo = o.seed + (j * per).min(n);
            let hi = o.seed + ((j + 1) * per).min(n);
            lo..hi
        })
        .collect()
}

fn merge(parts: Vec<LawReport>) -> Option<LawReport> {
    parts.into_iter().reduce(LawReport::merge)
}

fn harness(o: &Options, make: impl Fn() -> Box<dyn DynModel> + Sync) -> Res<LawReport> {
    let pool = pool(o)?;
    let parts: Vec<LawReport> =
        pool.install(|| chunks(o).into_par_iter().map(|seeds| make().harness(seeds)).collect());
    merge(parts).ok_or_else(|| input("empty budget"))
}

fn push_law_report(r: &mut Report, prefix: &str, rep: &LawReport) {
    let mut push = |s: &SchemaResult| {
        r.push(
            Check::new(
                format!("{prefix}{}", s.schema),
                s.passes(),
                format!("{} checked, {} failures", s.checked, s.failures),
            )
            .with_counterexample(s.counterexample.clone()),
        );
    };
    push(&rep.sampler);
    rep.schemas.iter().for_each(&mut push);
    if let Some(s) = &rep.representability {
        push(s);
    }
}

fn slice_model_harness(m: ModelName, context_src: &str, o: &Options, r: &mut Report) -> Res<()> {
    let g0 = parse_surface(context_src).map_err(|e| input(format!("context: {e}")))?;
    let Expr::Con(g) = &g0 else {
        return Err(input("the slicing context must be a context"));
    };
    if let Err(e) = check_expr(&g0) {
        return Err(input(format!("context: {e}")));
    }
    let base = harness(o, move || model_of(m))?;
    if !base.passes() {
        push_law_report(r, "base.", &base);
        r.push(Check::new("slice", false, "the base model fails the harness"));
        return Ok(());
    }
    r.push(Check::new("base", true, format!("{} passes {} samples", base.model, base.samples)));
    let shown = g.to_string();
    let pool = pool(o)?;
    let parts: Result<Vec<LawReport>, String> = pool.install(|| {
        chunks(o)
            .into_par_iter()
            .map(|seeds| {
                let g = parse_surface(&shown).expect("printed contexts parse");
                model_of(m).slice_harness(&g, seeds)
            })
            .collect()
    });
    let rep = merge(parts.map_err(input)?).ok_or_else(|| input("empty budget"))?;
    push_law_report(r, "", &rep);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_the_budget_in_order() {
        let mut o = Cli::parse_from(["infcwf", "harness"]).options;
        o.budget = 10;
        o.seed = 5;
        o.jobs = 3;
        let c = chunks(&o);
        assert_eq!(c, vec![5..9, 9..13, 13..15]);
        o.jobs = 20;
        assert_eq!(chunks(&o).iter().map(|r| r.end - r.start).sum::<u64>(), 10);
    }
}
