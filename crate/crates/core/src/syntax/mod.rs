//! Explicit-substitution syntax for categories with families, with `Unit`,
//! `Bool`, `Π`, `Σ` and a two-code universe.
//!
//! Raw expressions are fully annotated and checked extrinsically. Terms and
//! types are checked relative to an ambient context; substitutions carry
//! their own source and target.

mod check;
mod gen;
mod nbe;
mod rewrite;

use std::fmt;
use std::rc::Rc;

use thiserror::Error;

pub use check::{check_con, check_expr, check_sub, check_tm, check_ty, con_len, infer_tm};
pub use gen::{
    prefix, projection, random_chain, random_wellformed, Generator, Sort, CARD_CAP, ENV_CAP,
};
pub use nbe::{
    card_bound, conv_con, conv_sub, conv_tm, conv_ty, convertible, embed_con, embed_ne,
    embed_sub, embed_tm, embed_ty, normalize, normalize_con, normalize_sub, normalize_tm,
    normalize_ty, NfCon, NfNe, NfSub, NfTm, NfTy,
};
pub use rewrite::{
    lift, redexes, rewrite_step, Direction, Redex, RewriteError, Rule, CWF_RULES,
};

pub type RCon = Rc<Con>;
pub type RSub = Rc<Sub>;
pub type RTy = Rc<Ty>;
pub type RTm = Rc<Tm>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Con {
    Empty,
    Ext(RCon, RTy),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Sub {
    Id(RCon),
    Comp(RSub, RSub),
    Eps(RCon),
    P(RCon, RTy),
    /// `(σ, t)`; the type of `t` over the target of `σ` may be left for the
    /// checker to infer when it is closed.
    Pair(RSub, Option<RTy>, RTm),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ty {
    SubT(RTy, RSub),
    Unit,
    Bool,
    Pi(RTy, RTy),
    Sigma(RTy, RTy),
    Univ,
    El(RTm),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tm {
    SubTm(RTm, RSub),
    Q(RCon, RTy),
    Tt,
    True,
    False,
    /// Motive over `Γ ▷ Bool`, branches, scrutinee.
    BoolRec(RTy, RTm, RTm, RTm),
    Lam(RTy, RTy, RTm),
    App(RTy, RTy, RTm, RTm),
    PairTm(RTy, RTy, RTm, RTm),
    Fst(RTy, RTy, RTm),
    Snd(RTy, RTy, RTm),
    BoolCode,
    UnitCode,
}

/// An expression of any sort; types and terms come with their context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Con(RCon),
    Sub(RSub),
    Ty(RCon, RTy),
    Tm(RCon, RTm),
}

impl Expr {
    pub fn sort(&self) -> Sort {
        match self {
            Expr::Con(_) => Sort::Con,
            Expr::Sub(_) => Sort::Sub,
            Expr::Ty(..) => Sort::Ty,
            Expr::Tm(..) => Sort::Tm,
        }
    }
}

impl Con {
    pub fn empty() -> RCon {
        Rc::new(Con::Empty)
    }
    pub fn ext(g: &RCon, a: &RTy) -> RCon {
        Rc::new(Con::Ext(g.clone(), a.clone()))
    }
    /// `• ▷ A₁ ▷ … ▷ Aₙ`.
    pub fn telescope(types: &[RTy]) -> RCon {
        types.iter().fold(Con::empty(), |g, a| Con::ext(&g, a))
    }
}

impl Sub {
    pub fn id(g: &RCon) -> RSub {
        Rc::new(Sub::Id(g.clone()))
    }
    pub fn comp(s: &RSub, d: &RSub) -> RSub {
        Rc::new(Sub::Comp(s.clone(), d.clone()))
    }
    pub fn eps(g: &RCon) -> RSub {
        Rc::new(Sub::Eps(g.clone()))
    }
    pub fn p(g: &RCon, a: &RTy) -> RSub {
        Rc::new(Sub::P(g.clone(), a.clone()))
    }
    pub fn pair(s: &RSub, a: &RTy, t: &RTm) -> RSub {
        Rc::new(Sub::Pair(s.clone(), Some(a.clone()), t.clone()))
    }
    pub fn pair_unannotated(s: &RSub, t: &RTm) -> RSub {
        Rc::new(Sub::Pair(s.clone(), None, t.clone()))
    }
}

impl Ty {
    pub fn sub(a: &RTy, s: &RSub) -> RTy {
        Rc::new(Ty::SubT(a.clone(), s.clone()))
    }
    pub fn unit() -> RTy {
        Rc::new(Ty::Unit)
    }
    pub fn bool() -> RTy {
        Rc::new(Ty::Bool)
    }
    pub fn univ() -> RTy {
        Rc::new(Ty::Univ)
    }
    pub fn pi(a: &RTy, b: &RTy) -> RTy {
        Rc::new(Ty::Pi(a.clone(), b.clone()))
    }
    pub fn sigma(a: &RTy, b: &RTy) -> RTy {
        Rc::new(Ty::Sigma(a.clone(), b.clone()))
    }
    pub fn el(t: &RTm) -> RTy {
        Rc::new(Ty::El(t.clone()))
    }
}

impl Tm {
    pub fn sub(t: &RTm, s: &RSub) -> RTm {
        Rc::new(Tm::SubTm(t.clone(), s.clone()))
    }
    pub fn q(g: &RCon, a: &RTy) -> RTm {
        Rc::new(Tm::Q(g.clone(), a.clone()))
    }
    pub fn tt() -> RTm {
        Rc::new(Tm::Tt)
    }
    pub fn tru() -> RTm {
        Rc::new(Tm::True)
    }
    pub fn fls() -> RTm {
        Rc::new(Tm::False)
    }
    pub fn bool_code() -> RTm {
        Rc::new(Tm::BoolCode)
    }
    pub fn unit_code() -> RTm {
        Rc::new(Tm::UnitCode)
    }
    pub fn bool_rec(p: &RTy, t: &RTm, f: &RTm, b: &RTm) -> RTm {
        Rc::new(Tm::BoolRec(p.clone(), t.clone(), f.clone(), b.clone()))
    }
    pub fn lam(a: &RTy, b: &RTy, body: &RTm) -> RTm {
        Rc::new(Tm::Lam(a.clone(), b.clone(), body.clone()))
    }
    pub fn app(a: &RTy, b: &RTy, f: &RTm, x: &RTm) -> RTm {
        Rc::new(Tm::App(a.clone(), b.clone(), f.clone(), x.clone()))
    }
    pub fn pair(a: &RTy, b: &RTy, x: &RTm, y: &RTm) -> RTm {
        Rc::new(Tm::PairTm(a.clone(), b.clone(), x.clone(), y.clone()))
    }
    pub fn fst(a: &RTy, b: &RTy, p: &RTm) -> RTm {
        Rc::new(Tm::Fst(a.clone(), b.clone(), p.clone()))
    }
    pub fn snd(a: &RTy, b: &RTy, p: &RTm) -> RTm {
        Rc::new(Tm::Snd(a.clone(), b.clone(), p.clone()))
    }

    /// The variable with de Bruijn index `index` in `g`, written `q[p]…[p]`.
    pub fn var(g: &RCon, index: usize) -> Option<RTm> {
        let mut stack = Vec::new();
        let mut cur = g.clone();
        for _ in 0..index {
            let Con::Ext(prev, a) = &*cur else { return None };
            stack.push((prev.clone(), a.clone()));
            cur = prev.clone();
        }
        let Con::Ext(prev, a) = &*cur else { return None };
        let mut t = Tm::q(prev, a);
        for (prev, a) in stack.into_iter().rev() {
            t = Tm::sub(&t, &Sub::p(&prev, &a));
        }
        Some(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("ill-formed at {}: {message}", show_path(.path))]
    IllFormed { path: Vec<String>, message: String },
    #[error("type mismatch at {}: expected {expected}, found {found}", show_path(.path))]
    TypeMismatch {
        path: Vec<String>,
        expected: String,
        found: String,
    },
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
}

fn show_path(path: &[String]) -> String {
    if path.is_empty() {
        "root".into()
    } else {
        path.join("/")
    }
}

impl SyntaxError {
    pub(crate) fn ill(message: impl Into<String>) -> Self {
        SyntaxError::IllFormed {
            path: Vec::new(),
            message: message.into(),
        }
    }

    pub(crate) fn within(mut self, step: &str) -> Self {
        match &mut self {
            SyntaxError::IllFormed { path, .. } | SyntaxError::TypeMismatch { path, .. } => {
                path.insert(0, step.to_string())
            }
            SyntaxError::IndexMismatch(_) => {}
        }
        self
    }
}

impl fmt::Display for Con {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Con::Empty => write!(f, "empty"),
            Con::Ext(g, a) => write!(f, "(ext {g} {a})"),
        }
    }
}

impl fmt::Display for Sub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sub::Id(g) => write!(f, "(id {g})"),
            Sub::Comp(s, d) => write!(f, "(comp {s} {d})"),
            Sub::Eps(g) => write!(f, "(eps {g})"),
            Sub::P(g, a) => write!(f, "(p {g} {a})"),
            Sub::Pair(s, Some(a), t) => write!(f, "(pair {s} {a} {t})"),
            Sub::Pair(s, None, t) => write!(f, "(pair {s} {t})"),
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::SubT(a, s) => write!(f, "(subT {a} {s})"),
            Ty::Unit => write!(f, "unit"),
            Ty::Bool => write!(f, "bool"),
            Ty::Pi(a, b) => write!(f, "(pi {a} {b})"),
            Ty::Sigma(a, b) => write!(f, "(sigma {a} {b})"),
            Ty::Univ => write!(f, "u"),
            Ty::El(t) => write!(f, "(el {t})"),
        }
    }
}

impl fmt::Display for Tm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tm::SubTm(t, s) => write!(f, "(subt {t} {s})"),
            Tm::Q(g, a) => write!(f, "(q {g} {a})"),
            Tm::Tt => write!(f, "tt"),
            Tm::True => write!(f, "true"),
            Tm::False => write!(f, "false"),
            Tm::BoolRec(p, t, e, b) => write!(f, "(boolrec {p} {t} {e} {b})"),
            Tm::Lam(a, b, t) => write!(f, "(lam {a} {b} {t})"),
            Tm::App(a, b, t, u) => write!(f, "(app {a} {b} {t} {u})"),
            Tm::PairTm(a, b, t, u) => write!(f, "(mkpair {a} {b} {t} {u})"),
            Tm::Fst(a, b, t) => write!(f, "(fst {a} {b} {t})"),
            Tm::Snd(a, b, t) => write!(f, "(snd {a} {b} {t})"),
            Tm::BoolCode => write!(f, "bool-code"),
            Tm::UnitCode => write!(f, "unit-code"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Con(g) => write!(f, "{g}"),
            Expr::Sub(s) => write!(f, "{s}"),
            Expr::Ty(_, a) => write!(f, "{a}"),
            Expr::Tm(_, t) => write!(f, "{t}"),
        }
    }
}
