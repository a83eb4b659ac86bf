//! Normalization by evaluation.
//!
//! Expressions are evaluated into a domain of values with closures; context
//! variables are neutral values indexed by de Bruijn level. Readback is
//! type-directed and produces β-normal, η-long forms (η for `Π`, `Σ` and
//! `Unit`, none for `Bool`).

use std::fmt;
use std::rc::Rc;

use super::check::{check_con, check_sub, check_ty, con_len, con_types, infer_tm};
use super::{Con, Expr, RCon, RTm, RTy, Sub, SyntaxError, Tm, Ty};

#[derive(Clone)]
pub(crate) struct Closure<T> {
    env: Env,
    body: T,
}

pub(crate) type Env = Vec<Val>;

#[derive(Clone)]
pub(crate) enum Val {
    Ne(Rc<Ne>),
    Tt,
    True,
    False,
    UnitCode,
    BoolCode,
    Lam(Rc<Closure<RTm>>),
    Pair(Rc<(Val, Val)>),
    Unit,
    Bool,
    Univ,
    Pi(Rc<Val>, Rc<Closure<RTy>>),
    Sigma(Rc<Val>, Rc<Closure<RTy>>),
    El(Rc<Ne>),
}

pub(crate) enum Ne {
    Var(usize),
    App { fun: Rc<Ne>, fun_ty: Val, arg: Val },
    Fst { pair: Rc<Ne>, ty: Val },
    Snd { pair: Rc<Ne>, ty: Val },
    BoolRec {
        motive: Rc<Closure<RTy>>,
        on_true: Val,
        on_false: Val,
        scrut: Rc<Ne>,
    },
}

fn ill_typed(what: &str) -> ! {
    panic!("evaluation of an ill-typed {what}; check before normalizing")
}

pub(crate) fn vars(n: usize) -> Env {
    (0..n).map(|i| Val::Ne(Rc::new(Ne::Var(i)))).collect()
}

pub(crate) fn eval_sub(s: &Sub, env: &Env) -> Env {
    match s {
        Sub::Id(_) => env.clone(),
        Sub::Comp(s, d) => eval_sub(s, &eval_sub(d, env)),
        Sub::Eps(_) => Vec::new(),
        Sub::P(..) => {
            let mut e = env.clone();
            e.pop();
            e
        }
        Sub::Pair(s, _, t) => {
            let mut e = eval_sub(s, env);
            e.push(eval_tm(t, env));
            e
        }
    }
}

pub(crate) fn eval_ty(a: &Ty, env: &Env) -> Val {
    match a {
        Ty::SubT(a, s) => eval_ty(a, &eval_sub(s, env)),
        Ty::Unit => Val::Unit,
        Ty::Bool => Val::Bool,
        Ty::Univ => Val::Univ,
        Ty::Pi(a, b) => Val::Pi(
            Rc::new(eval_ty(a, env)),
            Rc::new(Closure {
                env: env.clone(),
                body: b.clone(),
            }),
        ),
        Ty::Sigma(a, b) => Val::Sigma(
            Rc::new(eval_ty(a, env)),
            Rc::new(Closure {
                env: env.clone(),
                body: b.clone(),
            }),
        ),
        Ty::El(t) => el(eval_tm(t, env)),
    }
}

fn el(code: Val) -> Val {
    match code {
        Val::UnitCode => Val::Unit,
        Val::BoolCode => Val::Bool,
        Val::Ne(n) => Val::El(n),
        _ => ill_typed("El"),
    }
}

fn apply_ty(c: &Closure<RTy>, v: Val) -> Val {
    let mut env = c.env.clone();
    env.push(v);
    eval_ty(&c.body, &env)
}

fn apply_tm(c: &Closure<RTm>, v: Val) -> Val {
    let mut env = c.env.clone();
    env.push(v);
    eval_tm(&c.body, &env)
}

fn app(f: Val, arg: Val, fun_ty: Val) -> Val {
    match f {
        Val::Lam(c) => apply_tm(&c, arg),
        Val::Ne(n) => Val::Ne(Rc::new(Ne::App { fun: n, fun_ty, arg })),
        _ => ill_typed("application"),
    }
}

fn fst(p: Val, ty: Val) -> Val {
    match p {
        Val::Pair(pr) => pr.0.clone(),
        Val::Ne(n) => Val::Ne(Rc::new(Ne::Fst { pair: n, ty })),
        _ => ill_typed("projection"),
    }
}

fn snd(p: Val, ty: Val) -> Val {
    match p {
        Val::Pair(pr) => pr.1.clone(),
        Val::Ne(n) => Val::Ne(Rc::new(Ne::Snd { pair: n, ty })),
        _ => ill_typed("projection"),
    }
}

pub(crate) fn eval_tm(t: &Tm, env: &Env) -> Val {
    match t {
        Tm::SubTm(t, s) => eval_tm(t, &eval_sub(s, env)),
        Tm::Q(..) => env.last().cloned().unwrap_or_else(|| ill_typed("variable")),
        Tm::Tt => Val::Tt,
        Tm::True => Val::True,
        Tm::False => Val::False,
        Tm::UnitCode => Val::UnitCode,
        Tm::BoolCode => Val::BoolCode,
        Tm::BoolRec(p, on_true, on_false, b) => match eval_tm(b, env) {
            Val::True => eval_tm(on_true, env),
            Val::False => eval_tm(on_false, env),
            Val::Ne(n) => Val::Ne(Rc::new(Ne::BoolRec {
                motive: Rc::new(Closure {
                    env: env.clone(),
                    body: p.clone(),
                }),
                on_true: eval_tm(on_true, env),
                on_false: eval_tm(on_false, env),
                scrut: n,
            })),
            _ => ill_typed("boolean eliminator"),
        },
        Tm::Lam(_, _, body) => Val::Lam(Rc::new(Closure {
            env: env.clone(),
            body: body.clone(),
        })),
        Tm::App(a, b, f, x) => {
            let ty = eval_ty(&Ty::Pi(a.clone(), b.clone()), env);
            app(eval_tm(f, env), eval_tm(x, env), ty)
        }
        Tm::PairTm(_, _, x, y) => Val::Pair(Rc::new((eval_tm(x, env), eval_tm(y, env)))),
        Tm::Fst(a, b, p) => fst(eval_tm(p, env), eval_ty(&Ty::Sigma(a.clone(), b.clone()), env)),
        Tm::Snd(a, b, p) => snd(eval_tm(p, env), eval_ty(&Ty::Sigma(a.clone(), b.clone()), env)),
    }
}

/// Normal types. Variables are de Bruijn indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NfTy {
    Unit,
    Bool,
    Univ,
    El(Box<NfNe>),
    Pi(Box<NfTy>, Box<NfTy>),
    Sigma(Box<NfTy>, Box<NfTy>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NfTm {
    Tt,
    True,
    False,
    UnitCode,
    BoolCode,
    Lam(NfTy, NfTy, Box<NfTm>),
    Pair(NfTy, NfTy, Box<NfTm>, Box<NfTm>),
    Ne(NfNe),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NfNe {
    Var(usize),
    App(NfTy, NfTy, Box<NfNe>, Box<NfTm>),
    Fst(NfTy, NfTy, Box<NfNe>),
    Snd(NfTy, NfTy, Box<NfNe>),
    BoolRec(NfTy, Box<NfTm>, Box<NfTm>, Box<NfNe>),
}

/// Each type normalized in its own prefix.
pub type NfCon = Vec<NfTy>;

/// A substitution as the tuple of its components, with both endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NfSub {
    pub src: NfCon,
    pub tgt: NfCon,
    pub entries: Vec<NfTm>,
}

fn fresh(l: usize) -> Val {
    Val::Ne(Rc::new(Ne::Var(l)))
}

pub(crate) fn read_ty(l: usize, ty: &Val) -> NfTy {
    match ty {
        Val::Unit => NfTy::Unit,
        Val::Bool => NfTy::Bool,
        Val::Univ => NfTy::Univ,
        Val::El(n) => NfTy::El(Box::new(read_ne(l, n))),
        Val::Pi(a, b) => NfTy::Pi(
            Box::new(read_ty(l, a)),
            Box::new(read_ty(l + 1, &apply_ty(b, fresh(l)))),
        ),
        Val::Sigma(a, b) => NfTy::Sigma(
            Box::new(read_ty(l, a)),
            Box::new(read_ty(l + 1, &apply_ty(b, fresh(l)))),
        ),
        _ => ill_typed("type"),
    }
}

pub(crate) fn read_tm(l: usize, ty: &Val, v: &Val) -> NfTm {
    match ty {
        Val::Unit => NfTm::Tt,
        Val::Pi(a, b) => {
            let x = fresh(l);
            let body = app(v.clone(), x.clone(), ty.clone());
            let cod = apply_ty(b, x);
            NfTm::Lam(
                read_ty(l, a),
                read_ty(l + 1, &cod),
                Box::new(read_tm(l + 1, &cod, &body)),
            )
        }
        Val::Sigma(a, b) => {
            let x = fst(v.clone(), ty.clone());
            let y = snd(v.clone(), ty.clone());
            let cod = apply_ty(b, x.clone());
            NfTm::Pair(
                read_ty(l, a),
                read_ty(l + 1, &apply_ty(b, fresh(l))),
                Box::new(read_tm(l, a, &x)),
                Box::new(read_tm(l, &cod, &y)),
            )
        }
        _ => match v {
            Val::True => NfTm::True,
            Val::False => NfTm::False,
            Val::UnitCode => NfTm::UnitCode,
            Val::BoolCode => NfTm::BoolCode,
            Val::Tt => NfTm::Tt,
            Val::Ne(n) => NfTm::Ne(read_ne(l, n)),
            _ => ill_typed("term"),
        },
    }
}

fn read_pi_parts(l: usize, ty: &Val) -> (NfTy, NfTy) {
    match ty {
        Val::Pi(a, b) | Val::Sigma(a, b) => (read_ty(l, a), read_ty(l + 1, &apply_ty(b, fresh(l)))),
        _ => ill_typed("eliminator annotation"),
    }
}

fn pi_dom(ty: &Val) -> &Val {
    match ty {
        Val::Pi(a, _) => a,
        _ => ill_typed("application"),
    }
}

pub(crate) fn read_ne(l: usize, n: &Ne) -> NfNe {
    match n {
        Ne::Var(k) => NfNe::Var(l - 1 - k),
        Ne::App { fun, fun_ty, arg } => {
            let (a, b) = read_pi_parts(l, fun_ty);
            NfNe::App(
                a,
                b,
                Box::new(read_ne(l, fun)),
                Box::new(read_tm(l, pi_dom(fun_ty), arg)),
            )
        }
        Ne::Fst { pair, ty } => {
            let (a, b) = read_pi_parts(l, ty);
            NfNe::Fst(a, b, Box::new(read_ne(l, pair)))
        }
        Ne::Snd { pair, ty } => {
            let (a, b) = read_pi_parts(l, ty);
            NfNe::Snd(a, b, Box::new(read_ne(l, pair)))
        }
        Ne::BoolRec {
            motive,
            on_true,
            on_false,
            scrut,
        } => NfNe::BoolRec(
            read_ty(l + 1, &apply_ty(motive, fresh(l))),
            Box::new(read_tm(l, &apply_ty(motive, Val::True), on_true)),
            Box::new(read_tm(l, &apply_ty(motive, Val::False), on_false)),
            Box::new(read_ne(l, scrut)),
        ),
    }
}

// Unchecked normalizers: the input must already be well-formed.

pub(crate) fn nf_ty(g: &Con, a: &Ty) -> NfTy {
    let n = con_len(g);
    read_ty(n, &eval_ty(a, &vars(n)))
}

pub(crate) fn nf_tm(g: &Con, ty: &Ty, t: &Tm) -> NfTm {
    let n = con_len(g);
    let env = vars(n);
    read_tm(n, &eval_ty(ty, &env), &eval_tm(t, &env))
}

pub(crate) fn nf_con(g: &Con) -> NfCon {
    con_types(g)
        .iter()
        .enumerate()
        .map(|(i, a)| read_ty(i, &eval_ty(a, &vars(i))))
        .collect()
}

pub(crate) fn nf_sub_entries(src: &Con, tgt: &Con, s: &Sub) -> Vec<NfTm> {
    let n = con_len(src);
    let values = eval_sub(s, &vars(n));
    let types = con_types(tgt);
    let mut out = Vec::with_capacity(values.len());
    for (i, (a, v)) in types.iter().zip(&values).enumerate() {
        let ty = eval_ty(a, &values[..i].to_vec());
        out.push(read_tm(n, &ty, v));
    }
    out
}

pub(crate) fn eq_ty(g: &Con, a: &Ty, b: &Ty) -> bool {
    a == b || nf_ty(g, a) == nf_ty(g, b)
}

pub(crate) fn eq_con(g: &Con, d: &Con) -> bool {
    if g == d {
        return true;
    }
    match (g, d) {
        (Con::Empty, Con::Empty) => true,
        (Con::Ext(g1, a1), Con::Ext(g2, a2)) => eq_con(g1, g2) && eq_ty(g1, a1, a2),
        _ => false,
    }
}

// Checked API.

pub fn normalize_con(g: &RCon) -> Result<NfCon, SyntaxError> {
    check_con(g)?;
    Ok(nf_con(g))
}

pub fn normalize_ty(g: &RCon, a: &RTy) -> Result<NfTy, SyntaxError> {
    check_con(g)?;
    check_ty(g, a)?;
    Ok(nf_ty(g, a))
}

/// The normal form of a term together with the normal form of its type.
pub fn normalize_tm(g: &RCon, t: &RTm) -> Result<(NfTm, NfTy), SyntaxError> {
    check_con(g)?;
    let ty = infer_tm(g, t)?;
    Ok((nf_tm(g, &ty, t), nf_ty(g, &ty)))
}

pub fn normalize_sub(s: &super::RSub) -> Result<NfSub, SyntaxError> {
    let (src, tgt) = check_sub(s)?;
    Ok(NfSub {
        src: nf_con(&src),
        tgt: nf_con(&tgt),
        entries: nf_sub_entries(&src, &tgt, s),
    })
}

pub fn conv_con(g: &RCon, d: &RCon) -> Result<bool, SyntaxError> {
    Ok(normalize_con(g)? == normalize_con(d)?)
}

pub fn conv_ty(g: &RCon, a: &RTy, b: &RTy) -> Result<bool, SyntaxError> {
    Ok(normalize_ty(g, a)? == normalize_ty(g, b)?)
}

pub fn conv_tm(g: &RCon, t: &RTm, u: &RTm) -> Result<bool, SyntaxError> {
    let (nt, at) = normalize_tm(g, t)?;
    let (nu, au) = normalize_tm(g, u)?;
    if at != au {
        return Err(SyntaxError::IndexMismatch(format!(
            "terms have types {} and {}",
            show_ty(&at),
            show_ty(&au)
        )));
    }
    Ok(nt == nu)
}

pub fn conv_sub(s: &super::RSub, d: &super::RSub) -> Result<bool, SyntaxError> {
    let ns = normalize_sub(s)?;
    let nd = normalize_sub(d)?;
    if ns.src != nd.src || ns.tgt != nd.tgt {
        return Err(SyntaxError::IndexMismatch(
            "substitutions have different source or target".into(),
        ));
    }
    Ok(ns.entries == nd.entries)
}

/// Conversion of two expressions of the same sort over the same indices.
pub fn convertible(e1: &Expr, e2: &Expr) -> Result<bool, SyntaxError> {
    match (e1, e2) {
        (Expr::Con(g), Expr::Con(d)) => conv_con(g, d),
        (Expr::Sub(s), Expr::Sub(d)) => conv_sub(s, d),
        (Expr::Ty(g, a), Expr::Ty(d, b)) => {
            if normalize_con(g)? != normalize_con(d)? {
                return Err(SyntaxError::IndexMismatch("types live in different contexts".into()));
            }
            conv_ty(g, a, b)
        }
        (Expr::Tm(g, t), Expr::Tm(d, u)) => {
            if normalize_con(g)? != normalize_con(d)? {
                return Err(SyntaxError::IndexMismatch("terms live in different contexts".into()));
            }
            conv_tm(g, t, u)
        }
        _ => Err(SyntaxError::IndexMismatch("expressions of different sorts".into())),
    }
}

/// Normalize and embed the normal form back into the syntax.
pub fn normalize(e: &Expr) -> Result<Expr, SyntaxError> {
    Ok(match e {
        Expr::Con(g) => Expr::Con(embed_con(&normalize_con(g)?)),
        Expr::Sub(s) => {
            let nf = normalize_sub(s)?;
            Expr::Sub(embed_sub(&nf))
        }
        Expr::Ty(g, a) => {
            let nf = normalize_ty(g, a)?;
            let g = embed_con(&nf_con(g));
            Expr::Ty(g.clone(), embed_ty(&g, &nf))
        }
        Expr::Tm(g, t) => {
            let (nf, _) = normalize_tm(g, t)?;
            let g = embed_con(&nf_con(g));
            Expr::Tm(g.clone(), embed_tm(&g, &nf))
        }
    })
}

/// A saturating upper bound on the number of closed values of a type.
pub fn card_bound(a: &NfTy) -> u64 {
    match a {
        NfTy::Unit => 1,
        NfTy::Bool | NfTy::Univ | NfTy::El(_) => 2,
        NfTy::Pi(a, b) => {
            let (ca, cb) = (card_bound(a), card_bound(b));
            if ca >= 64 && cb > 1 {
                u64::MAX
            } else {
                cb.checked_pow(ca as u32).unwrap_or(u64::MAX)
            }
        }
        NfTy::Sigma(a, b) => card_bound(a).saturating_mul(card_bound(b)),
    }
}

impl NfTy {
    /// No free variables.
    pub fn is_closed(&self) -> bool {
        self.max_free(0).is_none()
    }

    fn max_free(&self, depth: usize) -> Option<usize> {
        match self {
            NfTy::Unit | NfTy::Bool | NfTy::Univ => None,
            NfTy::El(n) => n.max_free(depth),
            NfTy::Pi(a, b) | NfTy::Sigma(a, b) => a.max_free(depth).max(b.max_free(depth + 1)),
        }
    }
}

impl NfTm {
    fn max_free(&self, depth: usize) -> Option<usize> {
        match self {
            NfTm::Tt | NfTm::True | NfTm::False | NfTm::UnitCode | NfTm::BoolCode => None,
            NfTm::Lam(a, b, t) => a
                .max_free(depth)
                .max(b.max_free(depth + 1))
                .max(t.max_free(depth + 1)),
            NfTm::Pair(a, b, x, y) => a
                .max_free(depth)
                .max(b.max_free(depth + 1))
                .max(x.max_free(depth))
                .max(y.max_free(depth)),
            NfTm::Ne(n) => n.max_free(depth),
        }
    }
}

impl NfNe {
    fn max_free(&self, depth: usize) -> Option<usize> {
        match self {
            NfNe::Var(i) => (*i >= depth).then(|| i - depth),
            NfNe::App(a, b, f, x) => a
                .max_free(depth)
                .max(b.max_free(depth + 1))
                .max(f.max_free(depth))
                .max(x.max_free(depth)),
            NfNe::Fst(a, b, p) | NfNe::Snd(a, b, p) => a
                .max_free(depth)
                .max(b.max_free(depth + 1))
                .max(p.max_free(depth)),
            NfNe::BoolRec(m, t, f, b) => m
                .max_free(depth + 1)
                .max(t.max_free(depth))
                .max(f.max_free(depth))
                .max(b.max_free(depth)),
        }
    }
}

pub fn embed_con(g: &NfCon) -> RCon {
    let mut out = Con::empty();
    for a in g {
        let ty = embed_ty(&out, a);
        out = Con::ext(&out, &ty);
    }
    out
}

pub fn embed_ty(g: &RCon, a: &NfTy) -> RTy {
    match a {
        NfTy::Unit => Ty::unit(),
        NfTy::Bool => Ty::bool(),
        NfTy::Univ => Ty::univ(),
        NfTy::El(n) => Ty::el(&embed_ne(g, n)),
        NfTy::Pi(a, b) => {
            let ea = embed_ty(g, a);
            Ty::pi(&ea, &embed_ty(&Con::ext(g, &ea), b))
        }
        NfTy::Sigma(a, b) => {
            let ea = embed_ty(g, a);
            Ty::sigma(&ea, &embed_ty(&Con::ext(g, &ea), b))
        }
    }
}

pub fn embed_tm(g: &RCon, t: &NfTm) -> RTm {
    match t {
        NfTm::Tt => Tm::tt(),
        NfTm::True => Tm::tru(),
        NfTm::False => Tm::fls(),
        NfTm::UnitCode => Tm::unit_code(),
        NfTm::BoolCode => Tm::bool_code(),
        NfTm::Lam(a, b, body) => {
            let ea = embed_ty(g, a);
            let ext = Con::ext(g, &ea);
            Tm::lam(&ea, &embed_ty(&ext, b), &embed_tm(&ext, body))
        }
        NfTm::Pair(a, b, x, y) => {
            let ea = embed_ty(g, a);
            let ext = Con::ext(g, &ea);
            Tm::pair(&ea, &embed_ty(&ext, b), &embed_tm(g, x), &embed_tm(g, y))
        }
        NfTm::Ne(n) => embed_ne(g, n),
    }
}

fn embed_binder(g: &RCon, a: &NfTy, b: &NfTy) -> (RTy, RTy) {
    let ea = embed_ty(g, a);
    let eb = embed_ty(&Con::ext(g, &ea), b);
    (ea, eb)
}

pub fn embed_ne(g: &RCon, n: &NfNe) -> RTm {
    match n {
        NfNe::Var(i) => Tm::var(g, *i).expect("variable in scope"),
        NfNe::App(a, b, f, x) => {
            let (ea, eb) = embed_binder(g, a, b);
            Tm::app(&ea, &eb, &embed_ne(g, f), &embed_tm(g, x))
        }
        NfNe::Fst(a, b, p) => {
            let (ea, eb) = embed_binder(g, a, b);
            Tm::fst(&ea, &eb, &embed_ne(g, p))
        }
        NfNe::Snd(a, b, p) => {
            let (ea, eb) = embed_binder(g, a, b);
            Tm::snd(&ea, &eb, &embed_ne(g, p))
        }
        NfNe::BoolRec(m, t, f, b) => {
            let em = embed_ty(&Con::ext(g, &Ty::bool()), m);
            Tm::bool_rec(&em, &embed_tm(g, t), &embed_tm(g, f), &embed_ne(g, b))
        }
    }
}

/// `(…(ε, u₁)…, uₙ)`.
pub fn embed_sub(nf: &NfSub) -> super::RSub {
    let src = embed_con(&nf.src);
    let mut tgt = Con::empty();
    let mut out = Sub::eps(&src);
    for (a, u) in nf.tgt.iter().zip(&nf.entries) {
        let ea = embed_ty(&tgt, a);
        out = Sub::pair(&out, &ea, &embed_tm(&src, u));
        tgt = Con::ext(&tgt, &ea);
    }
    out
}

pub(crate) fn show_ty(a: &NfTy) -> String {
    a.to_string()
}

impl fmt::Display for NfTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NfTy::Unit => write!(f, "unit"),
            NfTy::Bool => write!(f, "bool"),
            NfTy::Univ => write!(f, "u"),
            NfTy::El(n) => write!(f, "(el {n})"),
            NfTy::Pi(a, b) => write!(f, "(pi {a} {b})"),
            NfTy::Sigma(a, b) => write!(f, "(sigma {a} {b})"),
        }
    }
}

impl fmt::Display for NfTm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NfTm::Tt => write!(f, "tt"),
            NfTm::True => write!(f, "true"),
            NfTm::False => write!(f, "false"),
            NfTm::UnitCode => write!(f, "unit-code"),
            NfTm::BoolCode => write!(f, "bool-code"),
            NfTm::Lam(a, b, t) => write!(f, "(lam {a} {b} {t})"),
            NfTm::Pair(a, b, x, y) => write!(f, "(mkpair {a} {b} {x} {y})"),
            NfTm::Ne(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for NfNe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NfNe::Var(i) => write!(f, "#{i}"),
            NfNe::App(a, b, g, x) => write!(f, "(app {a} {b} {g} {x})"),
            NfNe::Fst(a, b, p) => write!(f, "(fst {a} {b} {p})"),
            NfNe::Snd(a, b, p) => write!(f, "(snd {a} {b} {p})"),
            NfNe::BoolRec(m, t, e, b) => write!(f, "(boolrec {m} {t} {e} {b})"),
        }
    }
}
