//! Syntax-directed well-formedness checking and type inference.

use super::nbe::{embed_ty, eq_con, eq_ty, nf_ty};
use super::{Con, Expr, RCon, RSub, RTm, RTy, Sub, SyntaxError, Tm, Ty};

pub fn con_len(g: &Con) -> usize {
    match g {
        Con::Empty => 0,
        Con::Ext(g, _) => con_len(g) + 1,
    }
}

/// The types of a context, outermost first.
pub(crate) fn con_types(g: &Con) -> Vec<RTy> {
    let mut out = Vec::new();
    let mut cur = g;
    while let Con::Ext(prev, a) = cur {
        out.push(a.clone());
        cur = prev;
    }
    out.reverse();
    out
}

fn at(step: &'static str) -> impl Fn(SyntaxError) -> SyntaxError {
    move |e| e.within(step)
}

fn same_con(expected: &Con, found: &Con) -> Result<(), SyntaxError> {
    if eq_con(expected, found) {
        Ok(())
    } else {
        Err(SyntaxError::ill(format!(
            "context mismatch: expected {expected}, found {found}"
        )))
    }
}

pub fn check_con(g: &RCon) -> Result<(), SyntaxError> {
    match &**g {
        Con::Empty => Ok(()),
        Con::Ext(d, a) => {
            check_con(d).map_err(at("ext.0"))?;
            check_ty_in(d, a).map_err(at("ext.1"))
        }
    }
}

/// Check `a` in `g`; `g` itself is checked too.
pub fn check_ty(g: &RCon, a: &RTy) -> Result<(), SyntaxError> {
    check_con(g)?;
    check_ty_in(g, a)
}

pub(crate) fn check_ty_in(g: &RCon, a: &RTy) -> Result<(), SyntaxError> {
    match &**a {
        Ty::SubT(a, s) => {
            let (src, tgt) = check_sub(s).map_err(at("subT.1"))?;
            same_con(g, &src).map_err(at("subT.1"))?;
            check_ty_in(&tgt, a).map_err(at("subT.0"))
        }
        Ty::Unit | Ty::Bool | Ty::Univ => Ok(()),
        Ty::Pi(a, b) => binder(g, a, b).map(|_| ()).map_err(at("pi")),
        Ty::Sigma(a, b) => binder(g, a, b).map(|_| ()).map_err(at("sigma")),
        Ty::El(t) => check_tm_in(g, &Ty::univ(), t).map_err(at("el.0")),
    }
}

/// Check `t : a` in `g`; `g` and `a` are checked too.
pub fn check_tm(g: &RCon, a: &RTy, t: &RTm) -> Result<(), SyntaxError> {
    check_ty(g, a)?;
    check_tm_in(g, a, t)
}

pub(crate) fn check_tm_in(g: &RCon, a: &RTy, t: &RTm) -> Result<(), SyntaxError> {
    let found = infer_in(g, t)?;
    if eq_ty(g, a, &found) {
        Ok(())
    } else {
        Err(SyntaxError::TypeMismatch {
            path: Vec::new(),
            expected: nf_ty(g, a).to_string(),
            found: nf_ty(g, &found).to_string(),
        })
    }
}

/// The type of `t` in `g`, after checking `g` and `t`.
pub fn infer_tm(g: &RCon, t: &RTm) -> Result<RTy, SyntaxError> {
    check_con(g)?;
    infer_in(g, t)
}

fn binder(g: &RCon, a: &RTy, b: &RTy) -> Result<RCon, SyntaxError> {
    check_ty_in(g, a).map_err(at("0"))?;
    let ext = Con::ext(g, a);
    check_ty_in(&ext, b).map_err(at("1"))?;
    Ok(ext)
}

/// `(id Γ, A, t)`.
pub(crate) fn inst(g: &RCon, a: &RTy, t: &RTm) -> RSub {
    Sub::pair(&Sub::id(g), a, t)
}

pub(crate) fn infer_in(g: &RCon, t: &RTm) -> Result<RTy, SyntaxError> {
    match &**t {
        Tm::SubTm(t, s) => {
            let (src, tgt) = check_sub(s).map_err(at("subt.1"))?;
            same_con(g, &src).map_err(at("subt.1"))?;
            let a = infer_in(&tgt, t).map_err(at("subt.0"))?;
            Ok(Ty::sub(&a, s))
        }
        Tm::Q(d, a) => {
            check_con(d).map_err(at("q.0"))?;
            check_ty_in(d, a).map_err(at("q.1"))?;
            same_con(g, &Con::ext(d, a))?;
            Ok(Ty::sub(a, &Sub::p(d, a)))
        }
        Tm::Tt => Ok(Ty::unit()),
        Tm::True | Tm::False => Ok(Ty::bool()),
        Tm::UnitCode | Tm::BoolCode => Ok(Ty::univ()),
        Tm::BoolRec(p, on_true, on_false, b) => {
            let bool_ty = Ty::bool();
            check_ty_in(&Con::ext(g, &bool_ty), p).map_err(at("boolrec.0"))?;
            check_tm_in(g, &Ty::sub(p, &inst(g, &bool_ty, &Tm::tru())), on_true)
                .map_err(at("boolrec.1"))?;
            check_tm_in(g, &Ty::sub(p, &inst(g, &bool_ty, &Tm::fls())), on_false)
                .map_err(at("boolrec.2"))?;
            check_tm_in(g, &bool_ty, b).map_err(at("boolrec.3"))?;
            Ok(Ty::sub(p, &inst(g, &bool_ty, b)))
        }
        Tm::Lam(a, b, body) => {
            let ext = binder(g, a, b).map_err(at("lam"))?;
            check_tm_in(&ext, b, body).map_err(at("lam.2"))?;
            Ok(Ty::pi(a, b))
        }
        Tm::App(a, b, f, x) => {
            binder(g, a, b).map_err(at("app"))?;
            check_tm_in(g, &Ty::pi(a, b), f).map_err(at("app.2"))?;
            check_tm_in(g, a, x).map_err(at("app.3"))?;
            Ok(Ty::sub(b, &inst(g, a, x)))
        }
        Tm::PairTm(a, b, x, y) => {
            binder(g, a, b).map_err(at("mkpair"))?;
            check_tm_in(g, a, x).map_err(at("mkpair.2"))?;
            check_tm_in(g, &Ty::sub(b, &inst(g, a, x)), y).map_err(at("mkpair.3"))?;
            Ok(Ty::sigma(a, b))
        }
        Tm::Fst(a, b, p) => {
            binder(g, a, b).map_err(at("fst"))?;
            check_tm_in(g, &Ty::sigma(a, b), p).map_err(at("fst.2"))?;
            Ok(a.clone())
        }
        Tm::Snd(a, b, p) => {
            binder(g, a, b).map_err(at("snd"))?;
            check_tm_in(g, &Ty::sigma(a, b), p).map_err(at("snd.2"))?;
            Ok(Ty::sub(b, &inst(g, a, &Tm::fst(a, b, p))))
        }
    }
}

/// Check a substitution and return its source and target.
pub fn check_sub(s: &RSub) -> Result<(RCon, RCon), SyntaxError> {
    match &**s {
        Sub::Id(g) => {
            check_con(g).map_err(at("id.0"))?;
            Ok((g.clone(), g.clone()))
        }
        Sub::Comp(s, d) => {
            let (mid, tgt) = check_sub(s).map_err(at("comp.0"))?;
            let (src, mid2) = check_sub(d).map_err(at("comp.1"))?;
            same_con(&mid, &mid2).map_err(at("comp"))?;
            Ok((src, tgt))
        }
        Sub::Eps(g) => {
            check_con(g).map_err(at("eps.0"))?;
            Ok((g.clone(), Con::empty()))
        }
        Sub::P(g, a) => {
            check_con(g).map_err(at("p.0"))?;
            check_ty_in(g, a).map_err(at("p.1"))?;
            Ok((Con::ext(g, a), g.clone()))
        }
        Sub::Pair(s, a, t) => {
            let (src, tgt) = check_sub(s).map_err(at("pair.0"))?;
            let a = match a {
                Some(a) => {
                    check_ty_in(&tgt, a).map_err(at("pair.1"))?;
                    check_tm_in(&src, &Ty::sub(a, s), t).map_err(at("pair.2"))?;
                    a.clone()
                }
                None => {
                    let found = infer_in(&src, t).map_err(at("pair.2"))?;
                    let nf = nf_ty(&src, &found);
                    if !nf.is_closed() {
                        return Err(SyntaxError::ill(format!(
                            "cannot infer the type of {t} over the target; annotate it as (pair σ A t)"
                        )));
                    }
                    embed_ty(&tgt, &nf)
                }
            };
            Ok((src, Con::ext(&tgt, &a)))
        }
    }
}

/// The target context of a substitution, which must already be well-formed.
pub(crate) fn sub_ends(s: &RSub) -> (RCon, RCon) {
    check_sub(s).expect("substitution checked beforehand")
}

pub fn check_expr(e: &Expr) -> Result<(), SyntaxError> {
    match e {
        Expr::Con(g) => check_con(g),
        Expr::Sub(s) => check_sub(s).map(|_| ()),
        Expr::Ty(g, a) => check_ty(g, a),
        Expr::Tm(g, t) => infer_tm(g, t).map(|_| ()),
    }
}
