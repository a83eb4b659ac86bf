//! One-step rewriting with the equations of the theory, used as an
//! independent oracle for conversion.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use super::check::{infer_in, sub_ends};
use super::nbe::{embed_ty, nf_ty, NfTy};
use super::{Con, Expr, RCon, RSub, RTm, RTy, Sub, Tm, Ty};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    Assoc,
    Idl,
    Idr,
    EpsEta,
    TyId,
    TyComp,
    TmId,
    TmComp,
    ExtBeta1,
    ExtBeta2,
    ExtEta,
    PairComp,
    PiBeta,
    PiEta,
    SigmaBeta1,
    SigmaBeta2,
    SigmaEta,
    UnitEta,
    BoolBetaTrue,
    BoolBetaFalse,
    ElUnit,
    ElBool,
    SubUnit,
    SubBool,
    SubUniv,
    SubEl,
    SubPi,
    SubSigma,
    SubTt,
    SubTrue,
    SubFalse,
    SubUnitCode,
    SubBoolCode,
    SubLam,
    SubApp,
    SubPairTm,
    SubFst,
    SubSnd,
    SubBoolRec,
}

/// The twelve equations of a category with families.
pub const CWF_RULES: [Rule; 12] = [
    Rule::Assoc,
    Rule::Idl,
    Rule::Idr,
    Rule::EpsEta,
    Rule::TyId,
    Rule::TyComp,
    Rule::TmId,
    Rule::TmComp,
    Rule::ExtBeta1,
    Rule::ExtBeta2,
    Rule::ExtEta,
    Rule::PairComp,
];

impl Rule {
    pub const ALL: [Rule; 39] = [
        Rule::Assoc,
        Rule::Idl,
        Rule::Idr,
        Rule::EpsEta,
        Rule::TyId,
        Rule::TyComp,
        Rule::TmId,
        Rule::TmComp,
        Rule::ExtBeta1,
        Rule::ExtBeta2,
        Rule::ExtEta,
        Rule::PairComp,
        Rule::PiBeta,
        Rule::PiEta,
        Rule::SigmaBeta1,
        Rule::SigmaBeta2,
        Rule::SigmaEta,
        Rule::UnitEta,
        Rule::BoolBetaTrue,
        Rule::BoolBetaFalse,
        Rule::ElUnit,
        Rule::ElBool,
        Rule::SubUnit,
        Rule::SubBool,
        Rule::SubUniv,
        Rule::SubEl,
        Rule::SubPi,
        Rule::SubSigma,
        Rule::SubTt,
        Rule::SubTrue,
        Rule::SubFalse,
        Rule::SubUnitCode,
        Rule::SubBoolCode,
        Rule::SubLam,
        Rule::SubApp,
        Rule::SubPairTm,
        Rule::SubFst,
        Rule::SubSnd,
        Rule::SubBoolRec,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Assoc => "assoc",
            Rule::Idl => "idl",
            Rule::Idr => "idr",
            Rule::EpsEta => "eps-eta",
            Rule::TyId => "ty-id",
            Rule::TyComp => "ty-comp",
            Rule::TmId => "tm-id",
            Rule::TmComp => "tm-comp",
            Rule::ExtBeta1 => "ext-beta1",
            Rule::ExtBeta2 => "ext-beta2",
            Rule::ExtEta => "ext-eta",
            Rule::PairComp => "pair-comp",
            Rule::PiBeta => "pi-beta",
            Rule::PiEta => "pi-eta",
            Rule::SigmaBeta1 => "sigma-beta1",
            Rule::SigmaBeta2 => "sigma-beta2",
            Rule::SigmaEta => "sigma-eta",
            Rule::UnitEta => "unit-eta",
            Rule::BoolBetaTrue => "bool-beta-true",
            Rule::BoolBetaFalse => "bool-beta-false",
            Rule::ElUnit => "el-unit",
            Rule::ElBool => "el-bool",
            Rule::SubUnit => "sub-unit",
            Rule::SubBool => "sub-bool",
            Rule::SubUniv => "sub-univ",
            Rule::SubEl => "sub-el",
            Rule::SubPi => "sub-pi",
            Rule::SubSigma => "sub-sigma",
            Rule::SubTt => "sub-tt",
            Rule::SubTrue => "sub-true",
            Rule::SubFalse => "sub-false",
            Rule::SubUnitCode => "sub-unit-code",
            Rule::SubBoolCode => "sub-bool-code",
            Rule::SubLam => "sub-lam",
            Rule::SubApp => "sub-app",
            Rule::SubPairTm => "sub-mkpair",
            Rule::SubFst => "sub-fst",
            Rule::SubSnd => "sub-snd",
            Rule::SubBoolRec => "sub-boolrec",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("no subexpression at position {0:?}")]
    BadPosition(Vec<usize>),
    #[error("{rule} ({direction:?}) does not match at position {position:?}")]
    NoMatch {
        rule: Rule,
        direction: Direction,
        position: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Redex {
    pub position: Vec<usize>,
    pub rule: Rule,
    pub direction: Direction,
}

/// Immediate subexpressions, each with its own context, keyed by a stable
/// child index.
fn children(e: &Expr) -> Vec<(usize, Expr)> {
    match e {
        Expr::Con(g) => match &**g {
            Con::Empty => vec![],
            Con::Ext(d, a) => vec![(0, Expr::Con(d.clone())), (1, Expr::Ty(d.clone(), a.clone()))],
        },
        Expr::Sub(s) => match &**s {
            Sub::Id(g) | Sub::Eps(g) => vec![(0, Expr::Con(g.clone()))],
            Sub::Comp(s, d) => vec![(0, Expr::Sub(s.clone())), (1, Expr::Sub(d.clone()))],
            Sub::P(g, a) => vec![(0, Expr::Con(g.clone())), (1, Expr::Ty(g.clone(), a.clone()))],
            Sub::Pair(s, a, t) => {
                let (src, tgt) = sub_ends(s);
                let mut out = vec![(0, Expr::Sub(s.clone()))];
                if let Some(a) = a {
                    out.push((1, Expr::Ty(tgt, a.clone())));
                }
                out.push((2, Expr::Tm(src, t.clone())));
                out
            }
        },
        Expr::Ty(g, a) => match &**a {
            Ty::SubT(a, s) => {
                let (_, tgt) = sub_ends(s);
                vec![(0, Expr::Ty(tgt, a.clone())), (1, Expr::Sub(s.clone()))]
            }
            Ty::Unit | Ty::Bool | Ty::Univ => vec![],
            Ty::Pi(a, b) | Ty::Sigma(a, b) => vec![
                (0, Expr::Ty(g.clone(), a.clone())),
                (1, Expr::Ty(Con::ext(g, a), b.clone())),
            ],
            Ty::El(t) => vec![(0, Expr::Tm(g.clone(), t.clone()))],
        },
        Expr::Tm(g, t) => match &**t {
            Tm::SubTm(t, s) => {
                let (_, tgt) = sub_ends(s);
                vec![(0, Expr::Tm(tgt, t.clone())), (1, Expr::Sub(s.clone()))]
            }
            Tm::Q(d, a) => vec![(0, Expr::Con(d.clone())), (1, Expr::Ty(d.clone(), a.clone()))],
            Tm::BoolRec(p, x, y, b) => vec![
                (0, Expr::Ty(Con::ext(g, &Ty::bool()), p.clone())),
                (1, Expr::Tm(g.clone(), x.clone())),
                (2, Expr::Tm(g.clone(), y.clone())),
                (3, Expr::Tm(g.clone(), b.clone())),
            ],
            Tm::Lam(a, b, body) => {
                let ext = Con::ext(g, a);
                vec![
                    (0, Expr::Ty(g.clone(), a.clone())),
                    (1, Expr::Ty(ext.clone(), b.clone())),
                    (2, Expr::Tm(ext, body.clone())),
                ]
            }
            Tm::App(a, b, x, y) | Tm::PairTm(a, b, x, y) => vec![
                (0, Expr::Ty(g.clone(), a.clone())),
                (1, Expr::Ty(Con::ext(g, a), b.clone())),
                (2, Expr::Tm(g.clone(), x.clone())),
                (3, Expr::Tm(g.clone(), y.clone())),
            ],
            Tm::Fst(a, b, p) | Tm::Snd(a, b, p) => vec![
                (0, Expr::Ty(g.clone(), a.clone())),
                (1, Expr::Ty(Con::ext(g, a), b.clone())),
                (2, Expr::Tm(g.clone(), p.clone())),
            ],
            Tm::Tt | Tm::True | Tm::False | Tm::BoolCode | Tm::UnitCode => vec![],
        },
    }
}

fn as_con(e: Expr) -> RCon {
    match e {
        Expr::Con(g) => g,
        _ => unreachable!("child sort is fixed"),
    }
}
fn as_sub(e: Expr) -> RSub {
    match e {
        Expr::Sub(s) => s,
        _ => unreachable!("child sort is fixed"),
    }
}
fn as_ty(e: Expr) -> RTy {
    match e {
        Expr::Ty(_, a) => a,
        _ => unreachable!("child sort is fixed"),
    }
}
fn as_tm(e: Expr) -> RTm {
    match e {
        Expr::Tm(_, t) => t,
        _ => unreachable!("child sort is fixed"),
    }
}

fn replace_child(e: &Expr, idx: usize, new: Expr) -> Expr {
    use std::rc::Rc;
    match e {
        Expr::Con(g) => match &**g {
            Con::Ext(d, a) => Expr::Con(match idx {
                0 => Con::ext(&as_con(new), a),
                _ => Con::ext(d, &as_ty(new)),
            }),
            Con::Empty => unreachable!(),
        },
        Expr::Sub(s) => Expr::Sub(match &**s {
            Sub::Id(_) => Sub::id(&as_con(new)),
            Sub::Eps(_) => Sub::eps(&as_con(new)),
            Sub::Comp(s, d) => match idx {
                0 => Sub::comp(&as_sub(new), d),
                _ => Sub::comp(s, &as_sub(new)),
            },
            Sub::P(g, a) => match idx {
                0 => Sub::p(&as_con(new), a),
                _ => Sub::p(g, &as_ty(new)),
            },
            Sub::Pair(s, a, t) => match idx {
                0 => Rc::new(Sub::Pair(as_sub(new), a.clone(), t.clone())),
                1 => Rc::new(Sub::Pair(s.clone(), Some(as_ty(new)), t.clone())),
                _ => Rc::new(Sub::Pair(s.clone(), a.clone(), as_tm(new))),
            },
        }),
        Expr::Ty(g, a) => Expr::Ty(
            g.clone(),
            match &**a {
                Ty::SubT(a, s) => match idx {
                    0 => Ty::sub(&as_ty(new), s),
                    _ => Ty::sub(a, &as_sub(new)),
                },
                Ty::Pi(a, b) => match idx {
                    0 => Ty::pi(&as_ty(new), b),
                    _ => Ty::pi(a, &as_ty(new)),
                },
                Ty::Sigma(a, b) => match idx {
                    0 => Ty::sigma(&as_ty(new), b),
                    _ => Ty::sigma(a, &as_ty(new)),
                },
                Ty::El(_) => Ty::el(&as_tm(new)),
                Ty::Unit | Ty::Bool | Ty::Univ => unreachable!(),
            },
        ),
        Expr::Tm(g, t) => {
            let mut parts: Vec<Expr> = children(e).into_iter().map(|(_, c)| c).collect();
            let pos = children(e).iter().position(|(i, _)| *i == idx).unwrap();
            parts[pos] = new;
            let mut it = parts.into_iter();
            let mut next = || it.next().unwrap();
            Expr::Tm(
                g.clone(),
                match &**t {
                    Tm::SubTm(..) => {
                        let x = as_tm(next());
                        Tm::sub(&x, &as_sub(next()))
                    }
                    Tm::Q(..) => {
                        let d = as_con(next());
                        Tm::q(&d, &as_ty(next()))
                    }
                    Tm::BoolRec(..) => {
                        let (p, x, y, b) = (as_ty(next()), as_tm(next()), as_tm(next()), as_tm(next()));
                        Tm::bool_rec(&p, &x, &y, &b)
                    }
                    Tm::Lam(..) => {
                        let (a, b, body) = (as_ty(next()), as_ty(next()), as_tm(next()));
                        Tm::lam(&a, &b, &body)
                    }
                    Tm::App(..) => {
                        let (a, b, x, y) = (as_ty(next()), as_ty(next()), as_tm(next()), as_tm(next()));
                        Tm::app(&a, &b, &x, &y)
                    }
                    Tm::PairTm(..) => {
                        let (a, b, x, y) = (as_ty(next()), as_ty(next()), as_tm(next()), as_tm(next()));
                        Tm::pair(&a, &b, &x, &y)
                    }
                    Tm::Fst(..) => {
                        let (a, b, p) = (as_ty(next()), as_ty(next()), as_tm(next()));
                        Tm::fst(&a, &b, &p)
                    }
                    Tm::Snd(..) => {
                        let (a, b, p) = (as_ty(next()), as_ty(next()), as_tm(next()));
                        Tm::snd(&a, &b, &p)
                    }
                    _ => unreachable!(),
                },
            )
        }
    }
}

/// `σ↑ = (σ ∘ p, q) : Γ ▷ A[σ] → Δ ▷ A` for `σ : Γ → Δ`.
pub fn lift(g: &RCon, s: &RSub, a: &RTy) -> RSub {
    let a_s = Ty::sub(a, s);
    Sub::pair(&Sub::comp(s, &Sub::p(g, &a_s)), a, &Tm::q(g, &a_s))
}

fn ltr(d: Direction) -> bool {
    d == Direction::LeftToRight
}

fn apply_sub(s: &RSub, rule: Rule, d: Direction) -> Option<RSub> {
    use Rule::*;
    match (rule, &**s) {
        (Assoc, Sub::Comp(l, nu)) if ltr(d) => match &**l {
            Sub::Comp(sg, de) => Some(Sub::comp(sg, &Sub::comp(de, nu))),
            _ => None,
        },
        (Assoc, Sub::Comp(sg, r)) => match &**r {
            Sub::Comp(de, nu) => Some(Sub::comp(&Sub::comp(sg, de), nu)),
            _ => None,
        },
        (Idl, Sub::Comp(i, x)) if ltr(d) && matches!(&**i, Sub::Id(_)) => Some(x.clone()),
        (Idl, _) if !ltr(d) => Some(Sub::comp(&Sub::id(&sub_ends(s).1), s)),
        (Idr, Sub::Comp(x, i)) if ltr(d) && matches!(&**i, Sub::Id(_)) => Some(x.clone()),
        (Idr, _) if !ltr(d) => Some(Sub::comp(s, &Sub::id(&sub_ends(s).0))),
        (EpsEta, Sub::Eps(g)) if !ltr(d) => Some(Sub::comp(&Sub::eps(&Con::empty()), &Sub::eps(g))),
        (EpsEta, Sub::Eps(_)) => None,
        (EpsEta, _) if ltr(d) => {
            let (src, tgt) = sub_ends(s);
            matches!(&*tgt, Con::Empty).then(|| Sub::eps(&src))
        }
        (ExtBeta1, Sub::Comp(p, pr)) if ltr(d) => match (&**p, &**pr) {
            (Sub::P(..), Sub::Pair(sg, _, _)) => Some(sg.clone()),
            _ => None,
        },
        (ExtBeta1, _) if !ltr(d) => {
            let (_, tgt) = sub_ends(s);
            let unit = Ty::unit();
            Some(Sub::comp(&Sub::p(&tgt, &unit), &Sub::pair(s, &unit, &Tm::tt())))
        }
        (ExtEta, Sub::Pair(p, _, q)) if ltr(d) => match (&**p, &**q) {
            (Sub::P(g, a), Tm::Q(..)) => Some(Sub::id(&Con::ext(g, a))),
            _ => None,
        },
        (ExtEta, Sub::Id(ext)) if !ltr(d) => match &**ext {
            Con::Ext(g, a) => Some(Sub::pair(&Sub::p(g, a), a, &Tm::q(g, a))),
            Con::Empty => None,
        },
        (PairComp, Sub::Comp(pr, nu)) if ltr(d) => match &**pr {
            Sub::Pair(sg, a, t) => Some(std::rc::Rc::new(Sub::Pair(
                Sub::comp(sg, nu),
                a.clone(),
                Tm::sub(t, nu),
            ))),
            _ => None,
        },
        (PairComp, Sub::Pair(c, a, t)) if !ltr(d) => match (&**c, &**t) {
            (Sub::Comp(sg, nu), Tm::SubTm(t0, nu2)) if nu == nu2 => Some(Sub::comp(
                &std::rc::Rc::new(Sub::Pair(sg.clone(), a.clone(), t0.clone())),
                nu,
            )),
            _ => None,
        },
        _ => None,
    }
}

fn apply_ty(g: &RCon, a: &RTy, rule: Rule, d: Direction) -> Option<RTy> {
    use Rule::*;
    match (rule, &**a) {
        (TyId, Ty::SubT(x, i)) if ltr(d) && matches!(&**i, Sub::Id(_)) => Some(x.clone()),
        (TyId, _) if !ltr(d) => Some(Ty::sub(a, &Sub::id(g))),
        (TyComp, Ty::SubT(inner, de)) if ltr(d) => match &**inner {
            Ty::SubT(x, sg) => Some(Ty::sub(x, &Sub::comp(sg, de))),
            _ => None,
        },
        (TyComp, Ty::SubT(x, c)) => match &**c {
            Sub::Comp(sg, de) => Some(Ty::sub(&Ty::sub(x, sg), de)),
            _ => None,
        },
        (ElUnit, Ty::El(t)) if ltr(d) && matches!(&**t, Tm::UnitCode) => Some(Ty::unit()),
        (ElUnit, Ty::Unit) if !ltr(d) => Some(Ty::el(&Tm::unit_code())),
        (ElBool, Ty::El(t)) if ltr(d) && matches!(&**t, Tm::BoolCode) => Some(Ty::bool()),
        (ElBool, Ty::Bool) if !ltr(d) => Some(Ty::el(&Tm::bool_code())),
        (SubUnit | SubBool | SubUniv | SubEl | SubPi | SubSigma, Ty::SubT(x, s)) if ltr(d) => {
            match (rule, &**x) {
                (SubUnit, Ty::Unit) => Some(Ty::unit()),
                (SubBool, Ty::Bool) => Some(Ty::bool()),
                (SubUniv, Ty::Univ) => Some(Ty::univ()),
                (SubEl, Ty::El(t)) => Some(Ty::el(&Tm::sub(t, s))),
                (SubPi, Ty::Pi(p, q)) => Some(Ty::pi(&Ty::sub(p, s), &Ty::sub(q, &lift(g, s, p)))),
                (SubSigma, Ty::Sigma(p, q)) => {
                    Some(Ty::sigma(&Ty::sub(p, s), &Ty::sub(q, &lift(g, s, p))))
                }
                _ => None,
            }
        }
        _ => None,
    }
}

fn type_of(g: &RCon, t: &RTm) -> Option<(RTy, NfTy)> {
    let ty = infer_in(g, t).ok()?;
    let nf = nf_ty(g, &ty);
    Some((ty, nf))
}

fn binder_types(g: &RCon, nf: &NfTy) -> Option<(RTy, RTy)> {
    match nf {
        NfTy::Pi(a, b) | NfTy::Sigma(a, b) => {
            let ea = embed_ty(g, a);
            let eb = embed_ty(&Con::ext(g, &ea), b);
            Some((ea, eb))
        }
        _ => None,
    }
}

fn apply_tm(g: &RCon, t: &RTm, rule: Rule, d: Direction) -> Option<RTm> {
    use Rule::*;
    match (rule, &**t) {
        (TmId, Tm::SubTm(x, i)) if ltr(d) && matches!(&**i, Sub::Id(_)) => Some(x.clone()),
        (TmId, _) if !ltr(d) => Some(Tm::sub(t, &Sub::id(g))),
        (TmComp, Tm::SubTm(inner, de)) if ltr(d) => match &**inner {
            Tm::SubTm(x, sg) => Some(Tm::sub(x, &Sub::comp(sg, de))),
            _ => None,
        },
        (TmComp, Tm::SubTm(x, c)) => match &**c {
            Sub::Comp(sg, de) => Some(Tm::sub(&Tm::sub(x, sg), de)),
            _ => None,
        },
        (ExtBeta2, Tm::SubTm(q, pr)) if ltr(d) => match (&**q, &**pr) {
            (Tm::Q(..), Sub::Pair(_, _, x)) => Some(x.clone()),
            _ => None,
        },
        (ExtBeta2, _) if !ltr(d) => {
            let (ty, _) = type_of(g, t)?;
            Some(Tm::sub(&Tm::q(g, &ty), &Sub::pair(&Sub::id(g), &ty, t)))
        }
        (PiBeta, Tm::App(a, _, f, x)) if ltr(d) => match &**f {
            Tm::Lam(_, _, body) => Some(Tm::sub(body, &Sub::pair(&Sub::id(g), a, x))),
            _ => None,
        },
        (PiEta, Tm::Lam(_, _, body)) if ltr(d) => match &**body {
            Tm::App(_, _, fp, q) => match (&**fp, &**q) {
                (Tm::SubTm(f, p), Tm::Q(..)) if matches!(&**p, Sub::P(..)) => Some(f.clone()),
                _ => None,
            },
            _ => None,
        },
        (PiEta, _) if !ltr(d) => {
            let (_, nf) = type_of(g, t)?;
            if !matches!(nf, NfTy::Pi(..)) {
                return None;
            }
            let (a, b) = binder_types(g, &nf)?;
            let ext = Con::ext(g, &a);
            let p = Sub::p(g, &a);
            let a_p = Ty::sub(&a, &p);
            let b_up = Ty::sub(&b, &lift(&ext, &p, &a));
            Some(Tm::lam(&a, &b, &Tm::app(&a_p, &b_up, &Tm::sub(t, &p), &Tm::q(g, &a))))
        }
        (SigmaBeta1, Tm::Fst(_, _, p)) if ltr(d) => match &**p {
            Tm::PairTm(_, _, x, _) => Some(x.clone()),
            _ => None,
        },
        (SigmaBeta2, Tm::Snd(_, _, p)) if ltr(d) => match &**p {
            Tm::PairTm(_, _, _, y) => Some(y.clone()),
            _ => None,
        },
        (SigmaEta, Tm::PairTm(_, _, x, y)) if ltr(d) => match (&**x, &**y) {
            (Tm::Fst(_, _, p), Tm::Snd(_, _, p2)) if p == p2 => Some(p.clone()),
            _ => None,
        },
        (SigmaEta, _) if !ltr(d) => {
            let (_, nf) = type_of(g, t)?;
            if !matches!(nf, NfTy::Sigma(..)) {
                return None;
            }
            let (a, b) = binder_types(g, &nf)?;
            Some(Tm::pair(&a, &b, &Tm::fst(&a, &b, t), &Tm::snd(&a, &b, t)))
        }
        (UnitEta, Tm::Tt) => None,
        (UnitEta, _) if ltr(d) => {
            let (_, nf) = type_of(g, t)?;
            (nf == NfTy::Unit).then(Tm::tt)
        }
        (BoolBetaTrue, Tm::BoolRec(_, x, _, b)) if ltr(d) && matches!(&**b, Tm::True) => Some(x.clone()),
        (BoolBetaFalse, Tm::BoolRec(_, _, y, b)) if ltr(d) && matches!(&**b, Tm::False) => {
            Some(y.clone())
        }
        (
            SubTt | SubTrue | SubFalse | SubUnitCode | SubBoolCode | SubLam | SubApp | SubPairTm
            | SubFst | SubSnd | SubBoolRec,
            Tm::SubTm(x, s),
        ) if ltr(d) => match (rule, &**x) {
            (SubTt, Tm::Tt) => Some(Tm::tt()),
            (SubTrue, Tm::True) => Some(Tm::tru()),
            (SubFalse, Tm::False) => Some(Tm::fls()),
            (SubUnitCode, Tm::UnitCode) => Some(Tm::unit_code()),
            (SubBoolCode, Tm::BoolCode) => Some(Tm::bool_code()),
            (SubLam, Tm::Lam(a, b, body)) => {
                let up = lift(g, s, a);
                Some(Tm::lam(&Ty::sub(a, s), &Ty::sub(b, &up), &Tm::sub(body, &up)))
            }
            (SubApp, Tm::App(a, b, f, y)) => Some(Tm::app(
                &Ty::sub(a, s),
                &Ty::sub(b, &lift(g, s, a)),
                &Tm::sub(f, s),
                &Tm::sub(y, s),
            )),
            (SubPairTm, Tm::PairTm(a, b, u, v)) => Some(Tm::pair(
                &Ty::sub(a, s),
                &Ty::sub(b, &lift(g, s, a)),
                &Tm::sub(u, s),
                &Tm::sub(v, s),
            )),
            (SubFst, Tm::Fst(a, b, p)) => Some(Tm::fst(
                &Ty::sub(a, s),
                &Ty::sub(b, &lift(g, s, a)),
                &Tm::sub(p, s),
            )),
            (SubSnd, Tm::Snd(a, b, p)) => Some(Tm::snd(
                &Ty::sub(a, s),
                &Ty::sub(b, &lift(g, s, a)),
                &Tm::sub(p, s),
            )),
            (SubBoolRec, Tm::BoolRec(p, u, v, b)) => Some(Tm::bool_rec(
                &Ty::sub(p, &lift(g, s, &Ty::bool())),
                &Tm::sub(u, s),
                &Tm::sub(v, s),
                &Tm::sub(b, s),
            )),
            _ => None,
        },
        _ => None,
    }
}

fn apply_here(e: &Expr, rule: Rule, d: Direction) -> Option<Expr> {
    match e {
        Expr::Con(_) => None,
        Expr::Sub(s) => apply_sub(s, rule, d).map(Expr::Sub),
        Expr::Ty(g, a) => apply_ty(g, a, rule, d).map(|a| Expr::Ty(g.clone(), a)),
        Expr::Tm(g, t) => apply_tm(g, t, rule, d).map(|t| Expr::Tm(g.clone(), t)),
    }
}

/// Rewrite the subexpression at `position` (a path of child indices) with
/// one equation. The input must be well-formed; so is the output.
pub fn rewrite_step(
    e: &Expr,
    rule: Rule,
    position: &[usize],
    direction: Direction,
) -> Result<Expr, RewriteError> {
    fn go(
        e: &Expr,
        rule: Rule,
        rest: &[usize],
        direction: Direction,
        full: &[usize],
    ) -> Result<Expr, RewriteError> {
        match rest.split_first() {
            None => apply_here(e, rule, direction).ok_or_else(|| RewriteError::NoMatch {
                rule,
                direction,
                position: full.to_vec(),
            }),
            Some((&idx, tail)) => {
                let child = children(e)
                    .into_iter()
                    .find(|(i, _)| *i == idx)
                    .map(|(_, c)| c)
                    .ok_or_else(|| RewriteError::BadPosition(full.to_vec()))?;
                let new = go(&child, rule, tail, direction, full)?;
                Ok(replace_child(e, idx, new))
            }
        }
    }
    go(e, rule, position, direction, position)
}

/// Every position, rule and direction that applies, in a fixed order.
pub fn redexes(e: &Expr, rules: &[Rule]) -> Vec<Redex> {
    fn go(e: &Expr, rules: &[Rule], pos: &mut Vec<usize>, out: &mut Vec<Redex>) {
        for &rule in rules {
            for direction in [Direction::LeftToRight, Direction::RightToLeft] {
                if apply_here(e, rule, direction).is_some() {
                    out.push(Redex {
                        position: pos.clone(),
                        rule,
                        direction,
                    });
                }
            }
        }
        for (i, child) in children(e) {
            pos.push(i);
            go(&child, rules, pos, out);
            pos.pop();
        }
    }
    let mut out = Vec::new();
    go(e, rules, &mut Vec::new(), &mut out);
    out
}
