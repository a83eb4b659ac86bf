//! Models of the CwF signature: an abstract interface, the syntactic model,
//! the finite standard model, slice models and a law harness.

mod harness;
mod slice;
mod standard;
mod syntactic;

use std::fmt;

use thiserror::Error;

use crate::syntax::{
    check_sub, check_tm, check_ty, con_len, conv_con, Con, Generator, RCon, RSub, RTm, RTy, Sub,
    Tm, Ty,
};

pub use harness::{law_harness, law_harness_range, LawReport, SchemaResult, SCHEMAS};
pub use slice::{slice_model, SliceModel};
pub use standard::{
    eval_con, eval_sub, eval_ty, eval_tm, semantic_equal, Code, Env, SemCon, SemFam, SemSub, SemTm,
    SemTy, StandardModel, Value, ENUM_CAP,
};
pub use syntactic::SyntacticModel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("too many values to enumerate (more than {0})")]
    TooLarge(usize),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("ill-formed input: {0}")]
    IllFormed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// The operations of a category with families. Equality is supplied per
/// carrier; terms and types are compared in a context.
pub trait CwfModel {
    type Con: Clone;
    type Sub: Clone;
    type Ty: Clone;
    type Tm: Clone;

    fn name(&self) -> String;

    fn empty(&self) -> Self::Con;
    fn ext(&self, g: &Self::Con, a: &Self::Ty) -> Self::Con;
    fn id(&self, g: &Self::Con) -> Self::Sub;
    fn comp(&self, s: &Self::Sub, d: &Self::Sub) -> Self::Sub;
    fn eps(&self, g: &Self::Con) -> Self::Sub;
    fn p(&self, g: &Self::Con, a: &Self::Ty) -> Self::Sub;
    fn q(&self, g: &Self::Con, a: &Self::Ty) -> Self::Tm;
    fn pair(&self, s: &Self::Sub, a: &Self::Ty, t: &Self::Tm) -> Self::Sub;
    fn sub_ty(&self, a: &Self::Ty, s: &Self::Sub) -> Self::Ty;
    fn sub_tm(&self, t: &Self::Tm, s: &Self::Sub) -> Self::Tm;

    fn eq_con(&self, g: &Self::Con, d: &Self::Con) -> bool;
    /// Both substitutions have source `src`.
    fn eq_sub(&self, src: &Self::Con, s: &Self::Sub, d: &Self::Sub) -> bool;
    fn eq_ty(&self, g: &Self::Con, a: &Self::Ty, b: &Self::Ty) -> bool;
    fn eq_tm(&self, g: &Self::Con, a: &Self::Ty, t: &Self::Tm, u: &Self::Tm) -> bool;
}

/// A model receiving the syntax: every well-formed expression over
/// [`Interpret::base_context`] has an interpretation.
pub trait Interpret: CwfModel {
    /// Contexts handed to this model extend this one.
    fn base_context(&self) -> RCon {
        Con::empty()
    }

    fn con(&self, g: &RCon) -> Self::Con;
    fn sub(&self, s: &RSub) -> Self::Sub;
    fn ty(&self, g: &RCon, a: &RTy) -> Self::Ty;
    fn tm(&self, g: &RCon, t: &RTm) -> Self::Tm;

    /// Whether `s` is a morphism `src -> tgt` of this model.
    fn is_morphism(&self, _src: &Self::Con, _tgt: &Self::Con, _s: &Self::Sub) -> bool {
        true
    }

    /// Uniqueness of the extension tuple for the sample's `(σ, t)`, or
    /// `None` when this model cannot decide it.
    fn unique_extension(&self, _sample: &Sample) -> Option<Result<(), String>> {
        None
    }
}

/// Syntactic data for one round of the law harness:
/// `ν : Θ -> Ξ`, `δ : Ξ -> Δ`, `σ : Δ -> Γ`, `A` over `Γ`, `t : A[σ]` over
/// `Δ`, `u : A` over `Γ`, and `e : Δ -> base`.
#[derive(Debug, Clone)]
pub struct Sample {
    pub seed: u64,
    pub base: RCon,
    pub theta: RCon,
    pub xi: RCon,
    pub delta: RCon,
    pub gamma: RCon,
    pub nu: RSub,
    pub dl: RSub,
    pub sg: RSub,
    pub a: RTy,
    pub t: RTm,
    pub u: RTm,
    pub to_base: RSub,
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        writeln!(f, "  base = {}", self.base)?;
        writeln!(f, "  Θ = {}", self.theta)?;
        writeln!(f, "  Ξ = {}", self.xi)?;
        writeln!(f, "  Δ = {}", self.delta)?;
        writeln!(f, "  Γ = {}", self.gamma)?;
        writeln!(f, "  ν = {}", self.nu)?;
        writeln!(f, "  δ = {}", self.dl)?;
        writeln!(f, "  σ = {}", self.sg)?;
        writeln!(f, "  A = {}", self.a)?;
        writeln!(f, "  t = {}", self.t)?;
        writeln!(f, "  u = {}", self.u)?;
        write!(f, "  e = {}", self.to_base)
    }
}

impl Sample {
    /// Re-check every component with the syntax checker.
    pub fn check(&self) -> Result<(), String> {
        let sub = |s: &RSub, src: &RCon, tgt: &RCon, name: &str| -> Result<(), String> {
            let (a, b) = check_sub(s).map_err(|e| format!("{name}: {e}"))?;
            if conv_con(&a, src).unwrap_or(false)
                && conv_con(&b, tgt).unwrap_or(false)
            {
                Ok(())
            } else {
                Err(format!("{name}: wrong endpoints"))
            }
        };
        sub(&self.nu, &self.theta, &self.xi, "ν")?;
        sub(&self.dl, &self.xi, &self.delta, "δ")?;
        sub(&self.sg, &self.delta, &self.gamma, "σ")?;
        check_ty(&self.gamma, &self.a).map_err(|e| format!("A: {e}"))?;
        check_tm(&self.delta, &Ty::sub(&self.a, &self.sg), &self.t)
            .map_err(|e| format!("t: {e}"))?;
        check_tm(&self.gamma, &self.a, &self.u).map_err(|e| format!("u: {e}"))?;
        sub(&self.to_base, &self.delta, &self.base, "e")?;
        Ok(())
    }
}

/// Draws [`Sample`]s whose contexts extend `base` and whose substitutions
/// fix `base`.
pub struct Sampler {
    base: RCon,
    size: usize,
}

impl Sampler {
    pub fn new(base: &RCon) -> Self {
        Sampler {
            base: base.clone(),
            size: 6,
        }
    }

    pub fn with_size(mut self, size: usize) -> Self {
        self.size = size.max(1);
        self
    }

    pub fn sample(&self, seed: u64) -> Sample {
        let mut gen = Generator::new(seed);
        for _ in 0..16 {
            if let Some(s) = self.attempt(&mut gen, seed) {
                return s;
            }
        }
        self.fallback(seed)
    }

    fn attempt(&self, gen: &mut Generator, seed: u64) -> Option<Sample> {
        let k = con_len(&self.base);
        let n = self.size;
        let gamma = gen.gen_con_over(&self.base, 2, n);
        let delta = gen.gen_con_over(&self.base, 2, n);
        let xi = gen.gen_con_over(&self.base, 2, n);
        let theta = gen.gen_con_over(&self.base, 2, n);
        let sg = gen.gen_sub_over(&delta, &gamma, k, n)?;
        let dl = gen.gen_sub_over(&xi, &delta, k, n)?;
        let nu = gen.gen_sub_over(&theta, &xi, k, n)?;
        let to_base = gen.gen_sub_over(&delta, &self.base, k, n)?;
        for _ in 0..4 {
            let a = gen.gen_ty(&gamma, n.min(4));
            let t = gen.gen_tm(&delta, &Ty::sub(&a, &sg), n);
            let u = gen.gen_tm(&gamma, &a, n);
            if let (Some(t), Some(u)) = (t, u) {
                return Some(Sample {
                    seed,
                    base: self.base.clone(),
                    theta,
                    xi,
                    delta,
                    gamma,
                    nu,
                    dl,
                    sg,
                    a,
                    t,
                    u,
                    to_base,
                });
            }
        }
        None
    }

    fn fallback(&self, seed: u64) -> Sample {
        let g = self.base.clone();
        let a = Ty::bool();
        Sample {
            seed,
            base: g.clone(),
            theta: g.clone(),
            xi: g.clone(),
            delta: g.clone(),
            gamma: g.clone(),
            nu: Sub::id(&g),
            dl: Sub::id(&g),
            sg: Sub::id(&g),
            a,
            t: Tm::tru(),
            u: Tm::fls(),
            to_base: Sub::id(&g),
        }
    }
}
