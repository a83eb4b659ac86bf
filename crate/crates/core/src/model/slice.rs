//! Slice models: contexts over a fixed context `Γ₀` of a base model.

use super::{law_harness, CwfModel, Interpret, ModelError, Sample};
use crate::syntax::{check_con, con_len, projection, RCon, RSub, RTm, RTy};

/// Contexts are pairs `(Δ, δ : Δ -> Γ₀)`; a morphism `(Δ, δ) -> (Φ, φ)` is
/// a base substitution `f` with `φ ∘ f = δ`. Types, terms and all other
/// operations are those of the base, except `• = (Γ₀, id)` and
/// `ε_(Δ, δ) = δ`.
pub struct SliceModel<M: Interpret> {
    base: M,
    gamma0: RCon,
    gamma0_len: usize,
}

impl<M: Interpret> SliceModel<M> {
    /// `gamma0` must extend the base model's own base context.
    pub fn new(base: M, gamma0: &RCon) -> Result<Self, ModelError> {
        check_con(gamma0).map_err(|e| ModelError::IllFormed(e.to_string()))?;
        let inner = base.base_context();
        let (k0, k) = (con_len(&inner), con_len(gamma0));
        if k < k0 || !crate::syntax::conv_con(&crate::syntax::prefix(gamma0, k - k0), &inner)
            .unwrap_or(false)
        {
            return Err(ModelError::Precondition(format!(
                "{gamma0} does not extend the base context {inner}"
            )));
        }
        Ok(SliceModel {
            base,
            gamma0: gamma0.clone(),
            gamma0_len: k,
        })
    }

    pub fn base(&self) -> &M {
        &self.base
    }
}

/// Slice `base` by `gamma0` after the base passes the law harness on
/// `budget` samples.
pub fn slice_model<M: Interpret>(
    base: M,
    gamma0: &RCon,
    budget: usize,
    seed: u64,
) -> Result<SliceModel<M>, ModelError> {
    let report = law_harness(&base, budget, seed);
    if !report.passes() {
        return Err(ModelError::Precondition(format!(
            "the {} model fails the law harness",
            base.name()
        )));
    }
    SliceModel::new(base, gamma0)
}

impl<M: Interpret> CwfModel for SliceModel<M> {
    type Con = (M::Con, M::Sub);
    type Sub = M::Sub;
    type Ty = M::Ty;
    type Tm = M::Tm;

    fn name(&self) -> String {
        format!("{} / {}", self.base.name(), self.gamma0)
    }

    fn empty(&self) -> Self::Con {
        let g0 = self.base.con(&self.gamma0);
        let id = self.base.id(&g0);
        (g0, id)
    }

    fn ext(&self, g: &Self::Con, a: &M::Ty) -> Self::Con {
        let (d, dl) = g;
        (self.base.ext(d, a), self.base.comp(dl, &self.base.p(d, a)))
    }

    fn id(&self, g: &Self::Con) -> M::Sub {
        self.base.id(&g.0)
    }

    fn comp(&self, s: &M::Sub, d: &M::Sub) -> M::Sub {
        self.base.comp(s, d)
    }

    fn eps(&self, g: &Self::Con) -> M::Sub {
        g.1.clone()
    }

    fn p(&self, g: &Self::Con, a: &M::Ty) -> M::Sub {
        self.base.p(&g.0, a)
    }

    fn q(&self, g: &Self::Con, a: &M::Ty) -> M::Tm {
        self.base.q(&g.0, a)
    }

    fn pair(&self, s: &M::Sub, a: &M::Ty, t: &M::Tm) -> M::Sub {
        self.base.pair(s, a, t)
    }

    fn sub_ty(&self, a: &M::Ty, s: &M::Sub) -> M::Ty {
        self.base.sub_ty(a, s)
    }

    fn sub_tm(&self, t: &M::Tm, s: &M::Sub) -> M::Tm {
        self.base.sub_tm(t, s)
    }

    fn eq_con(&self, g: &Self::Con, d: &Self::Con) -> bool {
        self.base.eq_con(&g.0, &d.0) && self.base.eq_sub(&g.0, &g.1, &d.1)
    }

    fn eq_sub(&self, src: &Self::Con, s: &M::Sub, d: &M::Sub) -> bool {
        self.base.eq_sub(&src.0, s, d)
    }

    fn eq_ty(&self, g: &Self::Con, a: &M::Ty, b: &M::Ty) -> bool {
        self.base.eq_ty(&g.0, a, b)
    }

    fn eq_tm(&self, g: &Self::Con, a: &M::Ty, t: &M::Tm, u: &M::Tm) -> bool {
        self.base.eq_tm(&g.0, a, t, u)
    }
}

impl<M: Interpret> Interpret for SliceModel<M> {
    fn base_context(&self) -> RCon {
        self.gamma0.clone()
    }

    fn con(&self, g: &RCon) -> Self::Con {
        let k = con_len(g).saturating_sub(self.gamma0_len);
        (self.base.con(g), self.base.sub(&projection(g, k)))
    }

    fn sub(&self, s: &RSub) -> M::Sub {
        self.base.sub(s)
    }

    fn ty(&self, g: &RCon, a: &RTy) -> M::Ty {
        self.base.ty(g, a)
    }

    fn tm(&self, g: &RCon, t: &RTm) -> M::Tm {
        self.base.tm(g, t)
    }

    fn is_morphism(&self, src: &Self::Con, tgt: &Self::Con, s: &M::Sub) -> bool {
        self.base.is_morphism(&src.0, &tgt.0, s)
            && self.base.eq_sub(&src.0, &self.base.comp(&tgt.1, s), &src.1)
    }

    fn unique_extension(&self, sample: &Sample) -> Option<Result<(), String>> {
        self.base.unique_extension(sample)
    }
}
