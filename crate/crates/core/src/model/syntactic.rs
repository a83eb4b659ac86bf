//! The syntax as a model: carriers are expressions, equality is conversion.

use super::{CwfModel, Interpret, Sample};
use crate::syntax::{
    conv_con, conv_sub, conv_tm, conv_ty, rewrite_step, Con, Direction, Expr, Generator, RCon,
    RSub, RTm, RTy, Rule, Sub, Tm, Ty,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyntacticModel {
    /// Competitors tried per representability check.
    pub competitors: usize,
}

impl Default for SyntacticModel {
    fn default() -> Self {
        SyntacticModel::new()
    }
}

impl SyntacticModel {
    pub fn new() -> Self {
        SyntacticModel { competitors: 4 }
    }

    /// Rewrite a competitor `γ` into `(p ∘ γ, q[γ])` through
    /// `γ = id ∘ γ = (p, q) ∘ γ = (p ∘ γ, q[γ])`, then compare components
    /// with `σ` and `t`.
    pub fn derive_uniqueness(gamma: &RSub, sg: &RSub, t: &RTm) -> Result<RSub, String> {
        let step = |e: &Expr, rule: Rule, pos: &[usize], d: Direction| {
            rewrite_step(e, rule, pos, d).map_err(|e| format!("{}: {e}", rule.name()))
        };
        let e = Expr::Sub(gamma.clone());
        let e = step(&e, Rule::Idl, &[], Direction::RightToLeft)?;
        let e = step(&e, Rule::ExtEta, &[0], Direction::RightToLeft)?;
        let e = step(&e, Rule::PairComp, &[], Direction::LeftToRight)?;
        let Expr::Sub(out) = e else {
            return Err("derivation left the sort of substitutions".into());
        };
        let Sub::Pair(first, _, second) = &*out else {
            return Err(format!("derivation ended in {out}, not a pair"));
        };
        if !conv_sub(first, sg).unwrap_or(false) {
            return Err(format!("p ∘ γ = {first} is not σ"));
        }
        let (src, _) = crate::syntax::check_sub(gamma).map_err(|e| e.to_string())?;
        if !conv_tm(&src, second, t).unwrap_or(false) {
            return Err(format!("q[γ] = {second} is not t"));
        }
        Ok(out)
    }
}

impl CwfModel for SyntacticModel {
    type Con = RCon;
    type Sub = RSub;
    type Ty = RTy;
    type Tm = RTm;

    fn name(&self) -> String {
        "syntactic".into()
    }

    fn empty(&self) -> RCon {
        Con::empty()
    }
    fn ext(&self, g: &RCon, a: &RTy) -> RCon {
        Con::ext(g, a)
    }
    fn id(&self, g: &RCon) -> RSub {
        Sub::id(g)
    }
    fn comp(&self, s: &RSub, d: &RSub) -> RSub {
        Sub::comp(s, d)
    }
    fn eps(&self, g: &RCon) -> RSub {
        Sub::eps(g)
    }
    fn p(&self, g: &RCon, a: &RTy) -> RSub {
        Sub::p(g, a)
    }
    fn q(&self, g: &RCon, a: &RTy) -> RTm {
        Tm::q(g, a)
    }
    fn pair(&self, s: &RSub, a: &RTy, t: &RTm) -> RSub {
        Sub::pair(s, a, t)
    }
    fn sub_ty(&self, a: &RTy, s: &RSub) -> RTy {
        Ty::sub(a, s)
    }
    fn sub_tm(&self, t: &RTm, s: &RSub) -> RTm {
        Tm::sub(t, s)
    }

    fn eq_con(&self, g: &RCon, d: &RCon) -> bool {
        conv_con(g, d).unwrap_or(false)
    }
    fn eq_sub(&self, _src: &RCon, s: &RSub, d: &RSub) -> bool {
        conv_sub(s, d).unwrap_or(false)
    }
    fn eq_ty(&self, g: &RCon, a: &RTy, b: &RTy) -> bool {
        conv_ty(g, a, b).unwrap_or(false)
    }
    fn eq_tm(&self, g: &RCon, _a: &RTy, t: &RTm, u: &RTm) -> bool {
        conv_tm(g, t, u).unwrap_or(false)
    }
}

impl Interpret for SyntacticModel {
    fn con(&self, g: &RCon) -> RCon {
        g.clone()
    }
    fn sub(&self, s: &RSub) -> RSub {
        s.clone()
    }
    fn ty(&self, _g: &RCon, a: &RTy) -> RTy {
        a.clone()
    }
    fn tm(&self, _g: &RCon, t: &RTm) -> RTm {
        t.clone()
    }

    /// Competitors are drawn by rewriting `(σ, t)`; each must satisfy the
    /// two equations and then be forced equal to `(σ, t)`.
    fn unique_extension(&self, sample: &Sample) -> Option<Result<(), String>> {
        let canonical = Sub::pair(&sample.sg, &sample.a, &sample.t);
        let gamma = &sample.gamma;
        let a = &sample.a;
        let mut gen = Generator::new(sample.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0x5eed);
        for i in 0..self.competitors.max(1) {
            let (e, _) = gen.chain(&Expr::Sub(canonical.clone()), 2 + 2 * i, &Rule::ALL);
            let Expr::Sub(tau) = e else { unreachable!() };
            let p_tau = Sub::comp(&Sub::p(gamma, a), &tau);
            let q_tau = Tm::sub(&Tm::q(gamma, a), &tau);
            if !conv_sub(&p_tau, &sample.sg).unwrap_or(false)
                || !conv_tm(&sample.delta, &q_tau, &sample.t).unwrap_or(false)
            {
                return Some(Err(format!("rewritten tuple {tau} does not lie over (σ, t)")));
            }
            let derived = match Self::derive_uniqueness(&tau, &sample.sg, &sample.t) {
                Ok(d) => d,
                Err(e) => return Some(Err(format!("competitor {tau}: {e}"))),
            };
            if !conv_sub(&derived, &canonical).unwrap_or(false)
                || !conv_sub(&tau, &canonical).unwrap_or(false)
            {
                return Some(Err(format!("competitor {tau} differs from (σ, t)")));
            }
        }
        Some(Ok(()))
    }
}
