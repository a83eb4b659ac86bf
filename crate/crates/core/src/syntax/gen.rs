//! Seeded generation of well-formed expressions and random rewrite chains.
//!
//! Every generated type has at most [`CARD_CAP`] closed values and every
//! generated context at most [`ENV_CAP`] environments, so the finite standard
//! model can evaluate everything exhaustively.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::check::{con_len, con_types, infer_in, sub_ends};
use super::nbe::{card_bound, embed_ty, eq_con, nf_con, nf_ty, NfTy};
use super::rewrite::{redexes, rewrite_step, Redex, Rule};
use super::{Con, Expr, RCon, RSub, RTm, RTy, Sub, Tm, Ty};

pub const CARD_CAP: u64 = 16;
pub const ENV_CAP: u64 = 256;
const MAX_CON_LEN: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sort {
    Con,
    Sub,
    Ty,
    Tm,
}

pub struct Generator {
    rng: ChaCha8Rng,
}

/// Upper bound on the number of environments of a context.
pub(crate) fn env_bound(g: &Con) -> u64 {
    nf_con(g)
        .iter()
        .fold(1u64, |acc, a| acc.saturating_mul(card_bound(a)))
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    fn split(&mut self, budget: usize) -> usize {
        if budget <= 1 {
            0
        } else {
            self.rng.gen_range(0..budget)
        }
    }

    /// A context extending `base` by up to `extra` types, within the caps.
    pub fn gen_con_over(&mut self, base: &RCon, extra: usize, budget: usize) -> RCon {
        let mut g = base.clone();
        let n = self.rng.gen_range(0..=extra);
        for _ in 0..n {
            if con_types(&g).len() >= MAX_CON_LEN {
                break;
            }
            let a = self.gen_ty(&g, budget.min(6));
            let ext = Con::ext(&g, &a);
            if env_bound(&ext) <= ENV_CAP {
                g = ext;
            }
        }
        g
    }

    pub fn gen_con(&mut self, budget: usize) -> RCon {
        self.gen_con_over(&Con::empty(), 3, budget)
    }

    pub fn gen_ty(&mut self, g: &RCon, budget: usize) -> RTy {
        for _ in 0..4 {
            let a = self.gen_ty_raw(g, budget);
            if card_bound(&nf_ty(g, &a)) <= CARD_CAP {
                return a;
            }
        }
        Ty::bool()
    }

    fn base_ty(&mut self) -> RTy {
        match self.below(5) {
            0 => Ty::unit(),
            1 => Ty::univ(),
            _ => Ty::bool(),
        }
    }

    fn gen_ty_raw(&mut self, g: &RCon, budget: usize) -> RTy {
        if budget <= 1 {
            return self.base_ty();
        }
        let rest = budget - 1;
        match self.below(10) {
            0..=1 => self.base_ty(),
            2 => {
                let code = self.gen_tm(g, &Ty::univ(), rest).unwrap_or_else(Tm::bool_code);
                Ty::el(&code)
            }
            3..=4 => {
                let k = self.split(rest);
                let a = self.gen_ty_raw(g, k.min(3));
                let b = self.gen_ty_raw(&Con::ext(g, &a), rest - k);
                Ty::pi(&a, &b)
            }
            5..=6 => {
                let k = self.split(rest);
                let a = self.gen_ty_raw(g, k);
                let b = self.gen_ty_raw(&Con::ext(g, &a), rest - k);
                Ty::sigma(&a, &b)
            }
            _ => {
                let k = self.split(rest);
                let (s, tgt) = self.gen_sub_from(g, k);
                let a = self.gen_ty_raw(&tgt, rest - k);
                Ty::sub(&a, &s)
            }
        }
    }

    fn vars_of_type(&self, g: &RCon, nf: &NfTy) -> Vec<RTm> {
        let n = con_types(g).len();
        (0..n)
            .filter_map(|i| {
                let v = Tm::var(g, i)?;
                let ty = infer_in(g, &v).ok()?;
                (nf_ty(g, &ty) == *nf).then_some(v)
            })
            .collect()
    }

    /// A term of type `a` in `g`, or `None` when none is found (only
    /// possible for `El` of a neutral code).
    pub fn gen_tm(&mut self, g: &RCon, a: &RTy, budget: usize) -> Option<RTm> {
        let nf = nf_ty(g, a);
        let vars = self.vars_of_type(g, &nf);
        if budget <= 1 {
            return self.minimal_tm(g, &nf, &vars);
        }
        let rest = budget - 1;
        for _ in 0..3 {
            let choice = self.below(16);
            if let Some(t) = self.try_tm(g, a, &nf, &vars, rest, choice) {
                return Some(t);
            }
        }
        self.minimal_tm(g, &nf, &vars)
    }

    fn try_tm(
        &mut self,
        g: &RCon,
        a: &RTy,
        nf: &NfTy,
        vars: &[RTm],
        rest: usize,
        choice: usize,
    ) -> Option<RTm> {
        match choice {
            0..=2 if !vars.is_empty() => Some(vars[self.below(vars.len())].clone()),
            3..=7 => self.intro_tm(g, nf, rest),
            8 => self.gen_tm(g, a, rest).map(|t| Tm::sub(&t, &Sub::id(g))),
            9..=10 => {
                // weaken by a fresh type, then instantiate it
                let k = self.split(rest);
                let c = self.gen_ty(g, k.min(4));
                let u = self.gen_tm(g, &c, k)?;
                let ext = Con::ext(g, &c);
                let t = self.gen_tm(&ext, &Ty::sub(a, &Sub::p(g, &c)), rest - k)?;
                Some(Tm::sub(&t, &Sub::pair(&Sub::id(g), &c, &u)))
            }
            11 => {
                let t = self.gen_tm(g, a, rest)?;
                Some(Tm::sub(&Tm::q(g, a), &Sub::pair(&Sub::id(g), a, &t)))
            }
            12 => {
                let k = self.split(rest);
                let c = self.gen_ty(g, k.min(3));
                let u = self.gen_tm(g, &c, k)?;
                let t = self.gen_tm(g, a, rest - k)?;
                let s = Sub::comp(&Sub::p(g, &c), &Sub::pair(&Sub::id(g), &c, &u));
                Some(Tm::sub(&t, &s))
            }
            13 => {
                // (λx. t) u with a constant codomain
                let k = self.split(rest);
                let c = self.gen_ty(g, k.min(3));
                let u = self.gen_tm(g, &c, k)?;
                let b = Ty::sub(a, &Sub::p(g, &c));
                let body = self.gen_tm(&Con::ext(g, &c), &b, rest - k)?;
                Some(Tm::app(&c, &b, &Tm::lam(&c, &b, &body), &u))
            }
            14 => {
                let k = self.split(rest);
                let t = self.gen_tm(g, a, k)?;
                let f = self.gen_tm(g, a, rest - k)?;
                let b = self.gen_tm(g, &Ty::bool(), 2)?;
                Some(Tm::bool_rec(&Ty::sub(a, &Sub::p(g, &Ty::bool())), &t, &f, &b))
            }
            _ => {
                // first projection out of a pair
                let k = self.split(rest);
                let ext = Con::ext(g, a);
                let b = self.gen_ty(&ext, k.min(3));
                let x = self.gen_tm(g, a, rest - k)?;
                let y = self.gen_tm(g, &Ty::sub(&b, &Sub::pair(&Sub::id(g), a, &x)), k)?;
                Some(Tm::fst(a, &b, &Tm::pair(a, &b, &x, &y)))
            }
        }
    }

    fn minimal_tm(&mut self, g: &RCon, nf: &NfTy, vars: &[RTm]) -> Option<RTm> {
        if !vars.is_empty() && self.chance(0.5) {
            return Some(vars[self.below(vars.len())].clone());
        }
        match nf {
            NfTy::El(_) => vars.first().cloned(),
            _ => self.intro_tm(g, nf, 0).or_else(|| vars.first().cloned()),
        }
    }

    fn intro_tm(&mut self, g: &RCon, nf: &NfTy, budget: usize) -> Option<RTm> {
        match nf {
            NfTy::Unit => Some(Tm::tt()),
            NfTy::Bool => {
                if budget >= 3 && self.chance(0.3) {
                    let b = self.gen_tm(g, &Ty::bool(), budget / 3)?;
                    let t = self.gen_tm(g, &Ty::bool(), budget / 3)?;
                    let f = self.gen_tm(g, &Ty::bool(), budget / 3)?;
                    Some(Tm::bool_rec(&Ty::bool(), &t, &f, &b))
                } else if self.chance(0.5) {
                    Some(Tm::tru())
                } else {
                    Some(Tm::fls())
                }
            }
            NfTy::Univ => Some(if self.chance(0.5) {
                Tm::bool_code()
            } else {
                Tm::unit_code()
            }),
            NfTy::Pi(a, b) => {
                let ea = embed_ty(g, a);
                let ext = Con::ext(g, &ea);
                let eb = embed_ty(&ext, b);
                let body = self.gen_tm(&ext, &eb, budget.saturating_sub(1))?;
                Some(Tm::lam(&ea, &eb, &body))
            }
            NfTy::Sigma(a, b) => {
                let ea = embed_ty(g, a);
                let eb = embed_ty(&Con::ext(g, &ea), b);
                let k = budget / 2;
                let x = self.gen_tm(g, &ea, k)?;
                let y = self.gen_tm(g, &Ty::sub(&eb, &Sub::pair(&Sub::id(g), &ea, &x)), k)?;
                Some(Tm::pair(&ea, &eb, &x, &y))
            }
            NfTy::El(_) => None,
        }
    }

    /// A term of some type, with that type.
    pub fn gen_any_tm(&mut self, g: &RCon, budget: usize) -> (RTm, RTy) {
        for _ in 0..8 {
            let k = self.split(budget).min(4);
            let a = self.gen_ty(g, k);
            if let Some(t) = self.gen_tm(g, &a, budget.saturating_sub(k)) {
                return (t, a);
            }
        }
        (Tm::tt(), Ty::unit())
    }

    /// A substitution out of `g`, with its target.
    pub fn gen_sub_from(&mut self, g: &RCon, budget: usize) -> (RSub, RCon) {
        let s = self.gen_sub_from_raw(g, budget);
        let (_, tgt) = sub_ends(&s);
        (s, tgt)
    }

    fn gen_sub_from_raw(&mut self, g: &RCon, budget: usize) -> RSub {
        let last = match &**g {
            Con::Ext(prev, a) => Some((prev.clone(), a.clone())),
            Con::Empty => None,
        };
        if budget <= 1 {
            return match (&last, self.below(3)) {
                (Some((prev, a)), 0) => Sub::p(prev, a),
                (_, 1) => Sub::eps(g),
                _ => Sub::id(g),
            };
        }
        let rest = budget - 1;
        match self.below(8) {
            0 => Sub::id(g),
            1 => Sub::eps(g),
            2 => match last {
                Some((prev, a)) => Sub::p(&prev, &a),
                None => Sub::id(g),
            },
            3..=5 => {
                let k = self.split(rest);
                let (s, tgt) = self.gen_sub_from(g, k);
                if con_types(&tgt).len() >= MAX_CON_LEN {
                    return s;
                }
                let a = self.gen_ty(&tgt, (rest - k).min(4));
                if env_bound(&Con::ext(&tgt, &a)) > ENV_CAP {
                    return s;
                }
                match self.gen_tm(g, &Ty::sub(&a, &s), rest - k) {
                    Some(t) => {
                        if nf_ty(&tgt, &a).is_closed() && self.chance(0.25) {
                            Sub::pair_unannotated(&s, &t)
                        } else {
                            Sub::pair(&s, &a, &t)
                        }
                    }
                    None => s,
                }
            }
            _ => {
                let k = self.split(rest);
                let (first, mid) = self.gen_sub_from(g, k);
                let (second, _) = self.gen_sub_from(&mid, rest - k);
                Sub::comp(&second, &first)
            }
        }
    }

    /// A substitution `g -> d`, or `None` when some component type has no
    /// generated inhabitant.
    pub fn gen_sub_to(&mut self, g: &RCon, d: &RCon, budget: usize) -> Option<RSub> {
        if budget > 1 {
            let rest = budget - 1;
            match self.below(6) {
                0 => {
                    let k = self.split(rest);
                    let (first, mid) = self.gen_sub_from(g, k.min(3));
                    if let Some(second) = self.gen_sub_to(&mid, d, rest - k) {
                        return Some(Sub::comp(&second, &first));
                    }
                }
                1 => {
                    if let Con::Ext(prev, a) = &**g {
                        if let Some(s) = self.gen_sub_to(prev, d, rest) {
                            return Some(Sub::comp(&s, &Sub::p(prev, a)));
                        }
                    }
                }
                2 if eq_con(g, d) => {
                    return Some(if self.chance(0.5) {
                        Sub::id(g)
                    } else {
                        Sub::comp(&Sub::id(d), &Sub::id(g))
                    })
                }
                _ => {}
            }
        }
        match &**d {
            Con::Empty => Some(Sub::eps(g)),
            Con::Ext(prev, a) => {
                if eq_con(g, d) && self.chance(0.3) {
                    return Some(Sub::id(g));
                }
                let k = budget / 2;
                let s = self.gen_sub_to(g, prev, k)?;
                let t = self.gen_tm(g, &Ty::sub(a, &s), budget - k)?;
                Some(Sub::pair(&s, a, &t))
            }
        }
    }

    /// A substitution `g -> d` commuting with the projections of both onto
    /// their common prefix of length `base_len`.
    pub fn gen_sub_over(
        &mut self,
        g: &RCon,
        d: &RCon,
        base_len: usize,
        budget: usize,
    ) -> Option<RSub> {
        let (glen, dlen) = (con_len(g), con_len(d));
        if budget > 1 {
            let rest = budget - 1;
            match self.below(8) {
                0 => {
                    let base = prefix(g, glen - base_len);
                    let mid = self.gen_con_over(&base, 1, 3);
                    let k = self.split(rest);
                    let first = self.gen_sub_over(g, &mid, base_len, k);
                    let second = self.gen_sub_over(&mid, d, base_len, rest - k);
                    if let (Some(first), Some(second)) = (first, second) {
                        return Some(Sub::comp(&second, &first));
                    }
                }
                1 if glen > base_len => {
                    if let Con::Ext(prev, a) = &**g {
                        if let Some(s) = self.gen_sub_over(prev, d, base_len, rest) {
                            return Some(Sub::comp(&s, &Sub::p(prev, a)));
                        }
                    }
                }
                2 if eq_con(g, d) => return Some(Sub::id(g)),
                _ => {}
            }
        }
        if dlen == base_len {
            return Some(projection(g, glen - base_len));
        }
        let Con::Ext(prev, a) = &**d else {
            unreachable!("target shorter than the base")
        };
        let k = budget / 2;
        let s = self.gen_sub_over(g, prev, base_len, k)?;
        let t = self.gen_tm(g, &Ty::sub(a, &s), budget - k)?;
        Some(Sub::pair(&s, a, &t))
    }

    pub fn gen_expr(&mut self, sort: Sort, g: &RCon, budget: usize) -> Expr {
        match sort {
            Sort::Con => Expr::Con(self.gen_con_over(g, 2, budget)),
            Sort::Sub => Expr::Sub(self.gen_sub_from(g, budget).0),
            Sort::Ty => Expr::Ty(g.clone(), self.gen_ty(g, budget)),
            Sort::Tm => Expr::Tm(g.clone(), self.gen_any_tm(g, budget).0),
        }
    }

    /// Apply up to `len` random rewrites; returns the endpoint and the steps.
    pub fn chain(&mut self, e: &Expr, len: usize, rules: &[Rule]) -> (Expr, Vec<Redex>) {
        let mut cur = e.clone();
        let mut steps = Vec::new();
        for _ in 0..len {
            let options = redexes(&cur, rules);
            if options.is_empty() {
                break;
            }
            let r = options[self.below(options.len())].clone();
            cur = rewrite_step(&cur, r.rule, &r.position, r.direction)
                .expect("listed redexes apply");
            steps.push(r);
        }
        (cur, steps)
    }
}

/// `g` without its last `k` types.
pub fn prefix(g: &RCon, k: usize) -> RCon {
    let mut cur = g.clone();
    for _ in 0..k {
        let Con::Ext(prev, _) = &*cur else { break };
        let prev = prev.clone();
        cur = prev;
    }
    cur
}

/// The weakening `p ∘ … ∘ p` dropping the last `k` types of `g`; the empty
/// composite is `id`, or `ε` when nothing remains.
pub fn projection(g: &RCon, k: usize) -> RSub {
    if k == con_len(g) {
        return Sub::eps(g);
    }
    let mut s: Option<RSub> = None;
    let mut cur = g.clone();
    for _ in 0..k {
        let Con::Ext(prev, a) = &*cur else { unreachable!() };
        let p = Sub::p(prev, a);
        s = Some(match s {
            None => p,
            Some(s) => Sub::comp(&p, &s),
        });
        cur = prev.clone();
    }
    s.unwrap_or_else(|| Sub::id(g))
}

/// Deterministic in `seed`.
pub fn random_wellformed(seed: u64, budget: usize, sort: Sort, context: &RCon) -> Expr {
    Generator::new(seed).gen_expr(sort, context, budget.max(1))
}

pub fn random_chain(seed: u64, e: &Expr, len: usize, rules: &[Rule]) -> (Expr, Vec<Redex>) {
    Generator::new(seed).chain(e, len, rules)
}
