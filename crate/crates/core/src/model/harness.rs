//! Checks a model against the equations of a category with families and
//! the uniqueness of context-extension tuples.

use std::ops::Range;

use serde::Serialize;

use super::{Interpret, Sample, Sampler};

/// Equation schemas in report order.
pub const SCHEMAS: [&str; 12] = [
    "assoc", "idl", "idr", "eps-eta", "ty-id", "ty-comp", "tm-id", "tm-comp", "ext-beta1",
    "ext-beta2", "ext-eta", "pair-comp",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemaResult {
    pub schema: String,
    pub checked: usize,
    pub failures: usize,
    /// The first failing sample, printed.
    pub counterexample: Option<String>,
}

impl SchemaResult {
    fn new(schema: &str) -> Self {
        SchemaResult {
            schema: schema.to_string(),
            checked: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(witness());
            }
        }
    }

    pub fn passes(&self) -> bool {
        self.failures == 0
    }

    fn merge(&mut self, other: SchemaResult) {
        self.checked += other.checked;
        self.failures += other.failures;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub model: String,
    pub samples: usize,
    /// Samples that are not well-formed or not morphisms of the model.
    pub sampler: SchemaResult,
    pub schemas: Vec<SchemaResult>,
    /// Absent when the model cannot decide uniqueness.
    pub representability: Option<SchemaResult>,
}

impl LawReport {
    fn empty(model: String) -> Self {
        LawReport {
            model,
            samples: 0,
            sampler: SchemaResult::new("samples"),
            schemas: SCHEMAS.iter().map(|s| SchemaResult::new(s)).collect(),
            representability: None,
        }
    }

    pub fn passes(&self) -> bool {
        self.sampler.passes()
            && self.schemas.iter().all(SchemaResult::passes)
            && self.representability.as_ref().is_none_or(SchemaResult::passes)
    }

    pub fn schema(&self, name: &str) -> Option<&SchemaResult> {
        self.schemas.iter().find(|s| s.schema == name)
    }

    /// Combine reports over disjoint seed ranges, in range order.
    pub fn merge(mut self, other: LawReport) -> LawReport {
        self.samples += other.samples;
        self.sampler.merge(other.sampler);
        for (a, b) in self.schemas.iter_mut().zip(other.schemas) {
            a.merge(b);
        }
        self.representability = match (self.representability, other.representability) {
            (Some(mut a), Some(b)) => {
                a.merge(b);
                Some(a)
            }
            (a, b) => a.or(b),
        };
        self
    }
}

/// Run every schema on `samples` samples drawn from seeds
/// `seed, seed + 1, …`.
pub fn law_harness<M: Interpret>(m: &M, samples: usize, seed: u64) -> LawReport {
    law_harness_range(m, seed..seed.saturating_add(samples as u64))
}

pub fn law_harness_range<M: Interpret>(m: &M, seeds: Range<u64>) -> LawReport {
    let sampler = Sampler::new(&m.base_context());
    let mut report = LawReport::empty(m.name());
    for seed in seeds {
        let sample = sampler.sample(seed);
        report.samples += 1;
        check_sample(m, &sample, &mut report);
    }
    report
}

fn check_sample<M: Interpret>(m: &M, x: &Sample, report: &mut LawReport) {
    let shown = || x.to_string();
    if let Err(e) = x.check() {
        report.sampler.record(false, || format!("{e}\n{x}"));
        return;
    }
    let theta = m.con(&x.theta);
    let xi = m.con(&x.xi);
    let delta = m.con(&x.delta);
    let gamma = m.con(&x.gamma);
    let nu = m.sub(&x.nu);
    let dl = m.sub(&x.dl);
    let sg = m.sub(&x.sg);
    let to_base = m.sub(&x.to_base);
    let morphisms = m.is_morphism(&theta, &xi, &nu)
        && m.is_morphism(&xi, &delta, &dl)
        && m.is_morphism(&delta, &gamma, &sg)
        && m.is_morphism(&delta, &m.empty(), &to_base);
    report.sampler.record(morphisms, shown);
    if !morphisms {
        return;
    }

    let a = m.ty(&x.gamma, &x.a);
    let t = m.tm(&x.delta, &x.t);
    let u = m.tm(&x.gamma, &x.u);
    let ga = m.ext(&gamma, &a);
    let sd = m.comp(&sg, &dl);
    let a_sd = m.sub_ty(&a, &sd);
    let a_sg = m.sub_ty(&a, &sg);
    let pair = m.pair(&sg, &a, &t);

    let verdicts = [
        m.eq_sub(
            &theta,
            &m.comp(&sd, &nu),
            &m.comp(&sg, &m.comp(&dl, &nu)),
        ),
        m.eq_sub(&delta, &m.comp(&m.id(&gamma), &sg), &sg),
        m.eq_sub(&delta, &m.comp(&sg, &m.id(&delta)), &sg),
        m.eq_sub(&delta, &to_base, &m.eps(&delta)),
        m.eq_ty(&gamma, &m.sub_ty(&a, &m.id(&gamma)), &a),
        m.eq_ty(&xi, &a_sd, &m.sub_ty(&a_sg, &dl)),
        m.eq_tm(&gamma, &a, &m.sub_tm(&u, &m.id(&gamma)), &u),
        m.eq_tm(
            &xi,
            &a_sd,
            &m.sub_tm(&u, &sd),
            &m.sub_tm(&m.sub_tm(&u, &sg), &dl),
        ),
        m.eq_sub(&delta, &m.comp(&m.p(&gamma, &a), &pair), &sg),
        m.eq_tm(&delta, &a_sg, &m.sub_tm(&m.q(&gamma, &a), &pair), &t),
        m.eq_sub(
            &ga,
            &m.pair(&m.p(&gamma, &a), &a, &m.q(&gamma, &a)),
            &m.id(&ga),
        ),
        m.eq_sub(
            &xi,
            &m.comp(&pair, &dl),
            &m.pair(&sd, &a, &m.sub_tm(&t, &dl)),
        ),
    ];
    for (result, ok) in report.schemas.iter_mut().zip(verdicts) {
        result.record(ok, shown);
    }

    if let Some(outcome) = m.unique_extension(x) {
        let entry = report
            .representability
            .get_or_insert_with(|| SchemaResult::new("representability"));
        match outcome {
            Ok(()) => entry.record(true, String::new),
            Err(e) => entry.record(false, || format!("{e}\n{x}")),
        }
    }
}
