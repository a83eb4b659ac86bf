//! The standard model at finite types: contexts are finite sets of
//! environments, types are families of finite semantic types, and terms and
//! substitutions are functions on environments.

use std::fmt;
use std::rc::Rc;

use super::{CwfModel, Interpret, ModelError, Sample};
use crate::syntax::{check_expr, check_sub, conv_con, Con, Expr, RCon, RSub, RTm, RTy, Sub, Tm, Ty};

/// Largest enumeration the model will build.
pub const ENUM_CAP: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Code {
    Unit,
    Bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Star,
    Bool(bool),
    Code(Code),
    /// A function table indexed by the enumeration of the domain.
    Fun(Vec<Value>),
    Pair(Box<Value>, Box<Value>),
    /// Produced only by ill-typed evaluation, e.g. in a faulted model.
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SemTy {
    Unit,
    Bool,
    Univ,
    /// Domain and one codomain per domain value.
    Pi(Box<SemTy>, Vec<SemTy>),
    Sigma(Box<SemTy>, Vec<SemTy>),
    Invalid,
}

pub type Env = Vec<Value>;

impl SemTy {
    /// Number of values, saturating.
    pub fn card(&self) -> usize {
        match self {
            SemTy::Unit => 1,
            SemTy::Bool | SemTy::Univ => 2,
            SemTy::Pi(_, cods) => cods
                .iter()
                .fold(1usize, |acc, c| acc.saturating_mul(c.card())),
            SemTy::Sigma(_, cods) => cods
                .iter()
                .fold(0usize, |acc, c| acc.saturating_add(c.card())),
            SemTy::Invalid => 0,
        }
    }

    /// The `i`-th value in the fixed enumeration; `i < card()`.
    pub fn value(&self, i: usize) -> Value {
        match self {
            SemTy::Unit => Value::Star,
            SemTy::Bool => Value::Bool(i == 1),
            SemTy::Univ => Value::Code(if i == 0 { Code::Unit } else { Code::Bool }),
            SemTy::Pi(_, cods) => {
                let mut rest = i;
                let mut table = Vec::with_capacity(cods.len());
                for c in cods {
                    let n = c.card().max(1);
                    table.push(c.value(rest % n));
                    rest /= n;
                }
                Value::Fun(table)
            }
            SemTy::Sigma(dom, cods) => {
                let mut rest = i;
                for (j, c) in cods.iter().enumerate() {
                    if rest < c.card() {
                        return Value::Pair(Box::new(dom.value(j)), Box::new(c.value(rest)));
                    }
                    rest -= c.card();
                }
                Value::Invalid
            }
            SemTy::Invalid => Value::Invalid,
        }
    }

    /// Position of `v` in the enumeration, if it is a value of this type.
    pub fn index_of(&self, v: &Value) -> Option<usize> {
        match (self, v) {
            (SemTy::Unit, Value::Star) => Some(0),
            (SemTy::Bool, Value::Bool(b)) => Some(*b as usize),
            (SemTy::Univ, Value::Code(Code::Unit)) => Some(0),
            (SemTy::Univ, Value::Code(Code::Bool)) => Some(1),
            (SemTy::Pi(_, cods), Value::Fun(table)) if table.len() == cods.len() => {
                let mut idx = 0usize;
                let mut weight = 1usize;
                for (c, x) in cods.iter().zip(table) {
                    idx = idx.checked_add(c.index_of(x)?.checked_mul(weight)?)?;
                    weight = weight.checked_mul(c.card())?;
                }
                Some(idx)
            }
            (SemTy::Sigma(dom, cods), Value::Pair(x, y)) => {
                let j = dom.index_of(x)?;
                let off: usize = cods[..j].iter().map(SemTy::card).sum();
                Some(off + cods.get(j)?.index_of(y)?)
            }
            _ => None,
        }
    }

    pub fn values(&self) -> Result<Vec<Value>, ModelError> {
        let n = self.card();
        if n > ENUM_CAP {
            return Err(ModelError::TooLarge(ENUM_CAP));
        }
        Ok((0..n).map(|i| self.value(i)).collect())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Star => write!(f, "tt"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Code(Code::Unit) => write!(f, "unit-code"),
            Value::Code(Code::Bool) => write!(f, "bool-code"),
            Value::Fun(table) => {
                write!(f, "[")?;
                for (i, v) in table.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
            Value::Pair(x, y) => write!(f, "<{x}, {y}>"),
            Value::Invalid => write!(f, "?"),
        }
    }
}

impl fmt::Display for SemTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let family = |f: &mut fmt::Formatter<'_>, cods: &[SemTy]| -> fmt::Result {
            write!(f, "[")?;
            for (i, c) in cods.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")
        };
        match self {
            SemTy::Unit => write!(f, "unit"),
            SemTy::Bool => write!(f, "bool"),
            SemTy::Univ => write!(f, "u"),
            SemTy::Pi(d, cods) => {
                write!(f, "(pi {d} ")?;
                family(f, cods)?;
                write!(f, ")")
            }
            SemTy::Sigma(d, cods) => {
                write!(f, "(sigma {d} ")?;
                family(f, cods)?;
                write!(f, ")")
            }
            SemTy::Invalid => write!(f, "?"),
        }
    }
}

/// A context: its environments in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemCon {
    envs: Rc<Vec<Env>>,
}

impl SemCon {
    pub fn new(envs: Vec<Env>) -> Self {
        SemCon {
            envs: Rc::new(envs),
        }
    }

    pub fn envs(&self) -> &[Env] {
        &self.envs
    }

    pub fn len(&self) -> usize {
        self.envs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.envs.is_empty()
    }
}

pub type SemFam = Rc<dyn Fn(&Env) -> SemTy>;
pub type SemTm = Rc<dyn Fn(&Env) -> Value>;
pub type SemSub = Rc<dyn Fn(&Env) -> Env>;

/// The finite standard model. The faulted variant makes context extension
/// of substitutions prepend instead of append, breaking the laws.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StandardModel {
    pair_prepends: bool,
}

impl StandardModel {
    pub fn new() -> Self {
        StandardModel::default()
    }

    pub fn faulted() -> Self {
        StandardModel {
            pair_prepends: true,
        }
    }

    fn extend(self, mut env: Env, v: Value) -> Env {
        if self.pair_prepends {
            env.insert(0, v);
        } else {
            env.push(v);
        }
        env
    }

    pub fn eval_con(self, g: &Con) -> Result<Vec<Env>, ModelError> {
        match g {
            Con::Empty => Ok(vec![Vec::new()]),
            Con::Ext(d, a) => {
                let mut out = Vec::new();
                for env in self.eval_con(d)? {
                    for v in self.eval_ty(a, &env).values()? {
                        if out.len() >= ENUM_CAP {
                            return Err(ModelError::TooLarge(ENUM_CAP));
                        }
                        let mut e = env.clone();
                        e.push(v);
                        out.push(e);
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn eval_sub(self, s: &Sub, env: &Env) -> Env {
        match s {
            Sub::Id(_) => env.clone(),
            Sub::Comp(s, d) => self.eval_sub(s, &self.eval_sub(d, env)),
            Sub::Eps(_) => Vec::new(),
            Sub::P(..) => {
                let mut e = env.clone();
                e.pop();
                e
            }
            Sub::Pair(s, _, t) => self.extend(self.eval_sub(s, env), self.eval_tm(t, env)),
        }
    }

    fn family(self, dom: &SemTy, b: &Ty, env: &Env) -> Vec<SemTy> {
        if dom.card() > ENUM_CAP {
            return Vec::new();
        }
        (0..dom.card())
            .map(|i| {
                let mut e = env.clone();
                e.push(dom.value(i));
                self.eval_ty(b, &e)
            })
            .collect()
    }

    pub fn eval_ty(self, a: &Ty, env: &Env) -> SemTy {
        match a {
            Ty::SubT(a, s) => self.eval_ty(a, &self.eval_sub(s, env)),
            Ty::Unit => SemTy::Unit,
            Ty::Bool => SemTy::Bool,
            Ty::Univ => SemTy::Univ,
            Ty::Pi(a, b) => {
                let dom = self.eval_ty(a, env);
                let cods = self.family(&dom, b, env);
                SemTy::Pi(Box::new(dom), cods)
            }
            Ty::Sigma(a, b) => {
                let dom = self.eval_ty(a, env);
                let cods = self.family(&dom, b, env);
                SemTy::Sigma(Box::new(dom), cods)
            }
            Ty::El(t) => match self.eval_tm(t, env) {
                Value::Code(Code::Unit) => SemTy::Unit,
                Value::Code(Code::Bool) => SemTy::Bool,
                _ => SemTy::Invalid,
            },
        }
    }

    pub fn eval_tm(self, t: &Tm, env: &Env) -> Value {
        match t {
            Tm::SubTm(t, s) => self.eval_tm(t, &self.eval_sub(s, env)),
            Tm::Q(..) => env.last().cloned().unwrap_or(Value::Invalid),
            Tm::Tt => Value::Star,
            Tm::True => Value::Bool(true),
            Tm::False => Value::Bool(false),
            Tm::UnitCode => Value::Code(Code::Unit),
            Tm::BoolCode => Value::Code(Code::Bool),
            Tm::BoolRec(_, on_true, on_false, b) => match self.eval_tm(b, env) {
                Value::Bool(true) => self.eval_tm(on_true, env),
                Value::Bool(false) => self.eval_tm(on_false, env),
                _ => Value::Invalid,
            },
            Tm::Lam(a, _, body) => {
                let dom = self.eval_ty(a, env);
                if dom.card() > ENUM_CAP {
                    return Value::Invalid;
                }
                Value::Fun(
                    (0..dom.card())
                        .map(|i| {
                            let mut e = env.clone();
                            e.push(dom.value(i));
                            self.eval_tm(body, &e)
                        })
                        .collect(),
                )
            }
            Tm::App(a, _, f, x) => {
                let dom = self.eval_ty(a, env);
                match (self.eval_tm(f, env), dom.index_of(&self.eval_tm(x, env))) {
                    (Value::Fun(table), Some(i)) => table.get(i).cloned().unwrap_or(Value::Invalid),
                    _ => Value::Invalid,
                }
            }
            Tm::PairTm(_, _, x, y) => Value::Pair(
                Box::new(self.eval_tm(x, env)),
                Box::new(self.eval_tm(y, env)),
            ),
            Tm::Fst(_, _, p) => match self.eval_tm(p, env) {
                Value::Pair(x, _) => *x,
                _ => Value::Invalid,
            },
            Tm::Snd(_, _, p) => match self.eval_tm(p, env) {
                Value::Pair(_, y) => *y,
                _ => Value::Invalid,
            },
        }
    }

    fn con_checked(self, g: &RCon) -> SemCon {
        SemCon::new(
            self.eval_con(g)
                .unwrap_or_else(|e| panic!("context {g} cannot be enumerated: {e}")),
        )
    }
}

/// All environments of a well-formed context.
pub fn eval_con(g: &Con) -> Result<Vec<Env>, ModelError> {
    StandardModel::new().eval_con(g)
}

pub fn eval_ty(a: &Ty, env: &Env) -> SemTy {
    StandardModel::new().eval_ty(a, env)
}

pub fn eval_tm(t: &Tm, env: &Env) -> Value {
    StandardModel::new().eval_tm(t, env)
}

pub fn eval_sub(s: &Sub, env: &Env) -> Env {
    StandardModel::new().eval_sub(s, env)
}

/// Agreement of two expressions on every environment of their common
/// context (of the common source, for substitutions).
pub fn semantic_equal(e1: &Expr, e2: &Expr) -> Result<bool, ModelError> {
    let ill = |e: crate::syntax::SyntaxError| ModelError::IllFormed(e.to_string());
    check_expr(e1).map_err(ill)?;
    check_expr(e2).map_err(ill)?;
    let same = |g: &RCon, d: &RCon| -> Result<(), ModelError> {
        if conv_con(g, d).map_err(ill)? {
            Ok(())
        } else {
            Err(ModelError::IndexMismatch(format!("contexts {g} and {d} differ")))
        }
    };
    match (e1, e2) {
        (Expr::Con(g), Expr::Con(d)) => Ok(eval_con(g)? == eval_con(d)?),
        (Expr::Sub(s), Expr::Sub(d)) => {
            let (src, _) = check_sub(s).map_err(ill)?;
            let (src2, _) = check_sub(d).map_err(ill)?;
            same(&src, &src2)?;
            Ok(eval_con(&src)?
                .iter()
                .all(|env| eval_sub(s, env) == eval_sub(d, env)))
        }
        (Expr::Ty(g, a), Expr::Ty(d, b)) => {
            same(g, d)?;
            Ok(eval_con(g)?
                .iter()
                .all(|env| eval_ty(a, env) == eval_ty(b, env)))
        }
        (Expr::Tm(g, t), Expr::Tm(d, u)) => {
            same(g, d)?;
            Ok(eval_con(g)?
                .iter()
                .all(|env| eval_tm(t, env) == eval_tm(u, env)))
        }
        _ => Err(ModelError::IndexMismatch(
            "expressions of different sorts".into(),
        )),
    }
}

impl CwfModel for StandardModel {
    type Con = SemCon;
    type Sub = SemSub;
    type Ty = SemFam;
    type Tm = SemTm;

    fn name(&self) -> String {
        if self.pair_prepends {
            "standard (faulted)".into()
        } else {
            "standard".into()
        }
    }

    fn empty(&self) -> SemCon {
        SemCon::new(vec![Vec::new()])
    }

    fn ext(&self, g: &SemCon, a: &SemFam) -> SemCon {
        let mut out = Vec::new();
        for env in g.envs() {
            let ty = a(env);
            for i in 0..ty.card().min(ENUM_CAP) {
                let mut e = env.clone();
                e.push(ty.value(i));
                out.push(e);
            }
        }
        SemCon::new(out)
    }

    fn id(&self, _g: &SemCon) -> SemSub {
        Rc::new(|env| env.clone())
    }

    fn comp(&self, s: &SemSub, d: &SemSub) -> SemSub {
        let (s, d) = (s.clone(), d.clone());
        Rc::new(move |env| s(&d(env)))
    }

    fn eps(&self, _g: &SemCon) -> SemSub {
        Rc::new(|_| Vec::new())
    }

    fn p(&self, _g: &SemCon, _a: &SemFam) -> SemSub {
        Rc::new(|env| env[..env.len().saturating_sub(1)].to_vec())
    }

    fn q(&self, _g: &SemCon, _a: &SemFam) -> SemTm {
        Rc::new(|env| env.last().cloned().unwrap_or(Value::Invalid))
    }

    fn pair(&self, s: &SemSub, _a: &SemFam, t: &SemTm) -> SemSub {
        let (s, t, m) = (s.clone(), t.clone(), *self);
        Rc::new(move |env| m.extend(s(env), t(env)))
    }

    fn sub_ty(&self, a: &SemFam, s: &SemSub) -> SemFam {
        let (a, s) = (a.clone(), s.clone());
        Rc::new(move |env| a(&s(env)))
    }

    fn sub_tm(&self, t: &SemTm, s: &SemSub) -> SemTm {
        let (t, s) = (t.clone(), s.clone());
        Rc::new(move |env| t(&s(env)))
    }

    fn eq_con(&self, g: &SemCon, d: &SemCon) -> bool {
        g == d
    }

    fn eq_sub(&self, src: &SemCon, s: &SemSub, d: &SemSub) -> bool {
        src.envs().iter().all(|env| s(env) == d(env))
    }

    fn eq_ty(&self, g: &SemCon, a: &SemFam, b: &SemFam) -> bool {
        g.envs().iter().all(|env| a(env) == b(env))
    }

    fn eq_tm(&self, g: &SemCon, _a: &SemFam, t: &SemTm, u: &SemTm) -> bool {
        g.envs().iter().all(|env| t(env) == u(env))
    }
}

impl Interpret for StandardModel {
    fn con(&self, g: &RCon) -> SemCon {
        self.con_checked(g)
    }

    fn sub(&self, s: &RSub) -> SemSub {
        let (s, m) = (s.clone(), *self);
        Rc::new(move |env| m.eval_sub(&s, env))
    }

    fn ty(&self, _g: &RCon, a: &RTy) -> SemFam {
        let (a, m) = (a.clone(), *self);
        Rc::new(move |env| m.eval_ty(&a, env))
    }

    fn tm(&self, _g: &RCon, t: &RTm) -> SemTm {
        let (t, m) = (t.clone(), *self);
        Rc::new(move |env| m.eval_tm(&t, env))
    }

    /// Counts, for every environment of `Δ`, the environments of `Γ ▷ A`
    /// lying over `(σ, t)`; a substitution is a choice of one per
    /// environment, so it is unique iff every count is one.
    fn unique_extension(&self, sample: &Sample) -> Option<Result<(), String>> {
        let delta = self.con(&sample.delta);
        let gamma = self.con(&sample.gamma);
        let a = self.ty(&sample.gamma, &sample.a);
        let ext = self.ext(&gamma, &a);
        let p = self.p(&gamma, &a);
        let q = self.q(&gamma, &a);
        let s = Interpret::sub(self, &sample.sg);
        let t = self.tm(&sample.delta, &sample.t);
        for (i, env) in delta.envs().iter().enumerate() {
            let (target, value) = (s(env), t(env));
            let count = ext
                .envs()
                .iter()
                .filter(|e| p(e) == target && q(e) == value)
                .count();
            if count != 1 {
                return Some(Err(format!(
                    "environment {i} of Δ has {count} extensions over (σ, t)"
                )));
            }
        }
        Some(Ok(()))
    }
}
