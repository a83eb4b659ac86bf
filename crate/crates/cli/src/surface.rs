//! Parenthesised prefix syntax for expressions of the calculus.
//!
//! A source file is a sequence of forms. `(def name e)` binds `name` for the
//! rest of the file; the last other form is the subject of the file. Types
//! and terms live in the empty context unless wrapped as `(in Γ e)`.
//! Comments run from `;` to the end of the line.

use std::collections::HashMap;
use std::fmt;

use infcwf_core::syntax::{Con, Expr, RCon, RSub, RTm, RTy, Sub, Tm, Ty};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

impl Pos {
    fn error(self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone)]
enum SExp {
    Atom(String, Pos),
    List(Vec<SExp>, Pos),
}

impl SExp {
    fn pos(&self) -> Pos {
        match self {
            SExp::Atom(_, p) | SExp::List(_, p) => *p,
        }
    }
}

fn read_sexps(text: &str) -> Result<Vec<SExp>, ParseError> {
    let mut stack: Vec<(Vec<SExp>, Pos)> = Vec::new();
    let mut top = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    let mut atom: Option<(String, Pos)> = None;

    fn push(stack: &mut [(Vec<SExp>, Pos)], top: &mut Vec<SExp>, e: SExp) {
        match stack.last_mut() {
            Some((items, _)) => items.push(e),
            None => top.push(e),
        }
    }

    while let Some(c) = chars.next() {
        let here = Pos { line, col };
        let delimiter = c.is_whitespace() || c == '(' || c == ')' || c == ';';
        if delimiter {
            if let Some((a, p)) = atom.take() {
                push(&mut stack, &mut top, SExp::Atom(a, p));
            }
        }
        match c {
            '(' => stack.push((Vec::new(), here)),
            ')' => {
                let (items, p) = stack.pop().ok_or_else(|| here.error("unmatched ')'"))?;
                push(&mut stack, &mut top, SExp::List(items, p));
            }
            ';' => {
                while let Some(&d) = chars.peek() {
                    if d == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            c if c.is_whitespace() => {}
            c => match &mut atom {
                Some((a, _)) => a.push(c),
                None => atom = Some((c.to_string(), here)),
            },
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    if let Some((a, p)) = atom.take() {
        push(&mut stack, &mut top, SExp::Atom(a, p));
    }
    if let Some((_, open)) = stack.last() {
        return Err(Pos { line, col }.error(format!(
            "unexpected end of input: '(' at {}:{} is not closed",
            open.line, open.col
        )));
    }
    Ok(top)
}

/// A parsed expression before it is placed in a context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Con(RCon),
    Sub(RSub),
    Ty(RTy),
    Tm(RTm),
}

impl Item {
    fn sort_name(&self) -> &'static str {
        match self {
            Item::Con(_) => "context",
            Item::Sub(_) => "substitution",
            Item::Ty(_) => "type",
            Item::Tm(_) => "term",
        }
    }
}

const KEYWORDS: &[&str] = &[
    "empty", "ext", "id", "comp", "eps", "p", "pair", "subT", "unit", "bool", "pi", "sigma", "u",
    "el", "subt", "q", "tt", "true", "false", "boolrec", "lam", "app", "mkpair", "fst", "snd",
    "unit-code", "bool-code", "def", "in",
];

#[derive(Default)]
struct Scope {
    defs: HashMap<String, Item>,
}

impl Scope {
    fn item(&self, e: &SExp) -> Result<Item, ParseError> {
        match e {
            SExp::Atom(a, p) => match a.as_str() {
                "empty" => Ok(Item::Con(Con::empty())),
                "unit" => Ok(Item::Ty(Ty::unit())),
                "bool" => Ok(Item::Ty(Ty::bool())),
                "u" => Ok(Item::Ty(Ty::univ())),
                "tt" => Ok(Item::Tm(Tm::tt())),
                "true" => Ok(Item::Tm(Tm::tru())),
                "false" => Ok(Item::Tm(Tm::fls())),
                "unit-code" => Ok(Item::Tm(Tm::unit_code())),
                "bool-code" => Ok(Item::Tm(Tm::bool_code())),
                name => self
                    .defs
                    .get(name)
                    .cloned()
                    .ok_or_else(|| p.error(format!("unknown name {name:?}"))),
            },
            SExp::List(items, p) => {
                let Some(SExp::Atom(head, _)) = items.first() else {
                    return Err(p.error("expected an operator after '('"));
                };
                let args = &items[1..];
                let arity = |n: usize| {
                    if args.len() == n {
                        Ok(())
                    } else {
                        Err(p.error(format!(
                            "{head} takes {n} argument{}, found {}",
                            if n == 1 { "" } else { "s" },
                            args.len()
                        )))
                    }
                };
                let item = match head.as_str() {
                    "ext" => {
                        arity(2)?;
                        Item::Con(Con::ext(&self.con(&args[0])?, &self.ty(&args[1])?))
                    }
                    "id" => {
                        arity(1)?;
                        Item::Sub(Sub::id(&self.con(&args[0])?))
                    }
                    "comp" => {
                        arity(2)?;
                        Item::Sub(Sub::comp(&self.sub(&args[0])?, &self.sub(&args[1])?))
                    }
                    "eps" => {
                        arity(1)?;
                        Item::Sub(Sub::eps(&self.con(&args[0])?))
                    }
                    "p" => {
                        arity(2)?;
                        Item::Sub(Sub::p(&self.con(&args[0])?, &self.ty(&args[1])?))
                    }
                    "pair" => match args.len() {
                        2 => Item::Sub(Sub::pair_unannotated(
                            &self.sub(&args[0])?,
                            &self.tm(&args[1])?,
                        )),
                        3 => Item::Sub(Sub::pair(
                            &self.sub(&args[0])?,
                            &self.ty(&args[1])?,
                            &self.tm(&args[2])?,
                        )),
                        n => {
                            return Err(p.error(format!("pair takes 2 or 3 arguments, found {n}")))
                        }
                    },
                    "subT" => {
                        arity(2)?;
                        Item::Ty(Ty::sub(&self.ty(&args[0])?, &self.sub(&args[1])?))
                    }
                    "pi" => {
                        arity(2)?;
                        Item::Ty(Ty::pi(&self.ty(&args[0])?, &self.ty(&args[1])?))
                    }
                    "sigma" => {
                        arity(2)?;
                        Item::Ty(Ty::sigma(&self.ty(&args[0])?, &self.ty(&args[1])?))
                    }
                    "el" => {
                        arity(1)?;
                        Item::Ty(Ty::el(&self.tm(&args[0])?))
                    }
                    "subt" => {
                        arity(2)?;
                        Item::Tm(Tm::sub(&self.tm(&args[0])?, &self.sub(&args[1])?))
                    }
                    "q" => {
                        arity(2)?;
                        Item::Tm(Tm::q(&self.con(&args[0])?, &self.ty(&args[1])?))
                    }
                    "boolrec" => {
                        arity(4)?;
                        Item::Tm(Tm::bool_rec(
                            &self.ty(&args[0])?,
                            &self.tm(&args[1])?,
                            &self.tm(&args[2])?,
                            &self.tm(&args[3])?,
                        ))
                    }
                    "lam" => {
                        arity(3)?;
                        Item::Tm(Tm::lam(&self.ty(&args[0])?, &self.ty(&args[1])?, &self.tm(&args[2])?))
                    }
                    "app" | "mkpair" => {
                        arity(4)?;
                        let (a, b) = (self.ty(&args[0])?, self.ty(&args[1])?);
                        let (t, u) = (self.tm(&args[2])?, self.tm(&args[3])?);
                        Item::Tm(if head == "app" {
                            Tm::app(&a, &b, &t, &u)
                        } else {
                            Tm::pair(&a, &b, &t, &u)
                        })
                    }
                    "fst" | "snd" => {
                        arity(3)?;
                        let (a, b, t) = (self.ty(&args[0])?, self.ty(&args[1])?, self.tm(&args[2])?);
                        Item::Tm(if head == "fst" {
                            Tm::fst(&a, &b, &t)
                        } else {
                            Tm::snd(&a, &b, &t)
                        })
                    }
                    "def" | "in" => {
                        return Err(p.error(format!("{head} is only allowed at the top level")))
                    }
                    other => return Err(p.error(format!("unknown operator {other:?}"))),
                };
                Ok(item)
            }
        }
    }

    fn expect(&self, e: &SExp, want: &str) -> Result<Item, ParseError> {
        let item = self.item(e)?;
        if item.sort_name() == want {
            Ok(item)
        } else {
            Err(e.pos().error(format!("expected a {want}, found a {}", item.sort_name())))
        }
    }

    fn con(&self, e: &SExp) -> Result<RCon, ParseError> {
        match self.expect(e, "context")? {
            Item::Con(g) => Ok(g),
            _ => unreachable!(),
        }
    }

    fn sub(&self, e: &SExp) -> Result<RSub, ParseError> {
        match self.expect(e, "substitution")? {
            Item::Sub(s) => Ok(s),
            _ => unreachable!(),
        }
    }

    fn ty(&self, e: &SExp) -> Result<RTy, ParseError> {
        match self.expect(e, "type")? {
            Item::Ty(a) => Ok(a),
            _ => unreachable!(),
        }
    }

    fn tm(&self, e: &SExp) -> Result<RTm, ParseError> {
        match self.expect(e, "term")? {
            Item::Tm(t) => Ok(t),
            _ => unreachable!(),
        }
    }

    fn subject(&self, e: &SExp) -> Result<Expr, ParseError> {
        if let SExp::List(items, p) = e {
            if let Some(SExp::Atom(head, _)) = items.first() {
                if head == "in" {
                    if items.len() != 3 {
                        return Err(p.error(format!("in takes 2 arguments, found {}", items.len() - 1)));
                    }
                    let g = self.con(&items[1])?;
                    return match self.item(&items[2])? {
                        Item::Ty(a) => Ok(Expr::Ty(g, a)),
                        Item::Tm(t) => Ok(Expr::Tm(g, t)),
                        other => Err(items[2].pos().error(format!(
                            "in expects a type or term, found a {}",
                            other.sort_name()
                        ))),
                    };
                }
            }
        }
        Ok(match self.item(e)? {
            Item::Con(g) => Expr::Con(g),
            Item::Sub(s) => Expr::Sub(s),
            Item::Ty(a) => Expr::Ty(Con::empty(), a),
            Item::Tm(t) => Expr::Tm(Con::empty(), t),
        })
    }
}

/// Parse a source file down to its subject expression.
pub fn parse_surface(text: &str) -> Result<Expr, ParseError> {
    let forms = read_sexps(text)?;
    let mut scope = Scope::default();
    let mut subject = None;
    let mut last_def = None;
    for form in &forms {
        if let SExp::List(items, p) = form {
            if let Some(SExp::Atom(head, _)) = items.first() {
                if head == "def" {
                    let [_, name, body] = items.as_slice() else {
                        return Err(p.error(format!("def takes 2 arguments, found {}", items.len() - 1)));
                    };
                    let SExp::Atom(name, np) = name else {
                        return Err(name.pos().error("def expects a name"));
                    };
                    if KEYWORDS.contains(&name.as_str()) {
                        return Err(np.error(format!("{name:?} is reserved")));
                    }
                    if scope.defs.contains_key(name) {
                        return Err(np.error(format!("{name:?} is already defined")));
                    }
                    let item = scope.item(body)?;
                    scope.defs.insert(name.clone(), item);
                    last_def = Some(body);
                    continue;
                }
            }
        }
        if subject.is_some() {
            return Err(form.pos().error("more than one expression; bind earlier ones with def"));
        }
        subject = Some(scope.subject(form)?);
    }
    match (subject, last_def) {
        (Some(e), _) => Ok(e),
        (None, Some(body)) => scope.subject(body),
        (None, None) => Err(ParseError {
            line: 1,
            col: 1,
            message: "no expression in input".into(),
        }),
    }
}

/// Print an expression so that [`parse_surface`] reads it back unchanged.
pub fn print_surface(e: &Expr) -> String {
    Surface(e).to_string()
}

struct Surface<'a>(&'a Expr);

impl fmt::Display for Surface<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Expr::Ty(g, a) if !matches!(**g, Con::Empty) => write!(f, "(in {g} {a})"),
            Expr::Tm(g, t) if !matches!(**g, Con::Empty) => write!(f, "(in {g} {t})"),
            e => write!(f, "{e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unannotated_pair() {
        let e = parse_surface("(pair (eps empty) true)").unwrap();
        assert_eq!(e, Expr::Sub(Sub::pair_unannotated(&Sub::eps(&Con::empty()), &Tm::tru())));
    }

    #[test]
    fn substituted_type() {
        let e = parse_surface("(subT bool (id empty))").unwrap();
        assert_eq!(e, Expr::Ty(Con::empty(), Ty::sub(&Ty::bool(), &Sub::id(&Con::empty()))));
    }

    #[test]
    fn unclosed_input() {
        let err = parse_surface("(pair").unwrap_err();
        assert!(err.message.contains("end of input"), "{err}");
        assert_eq!((err.line, err.col), (1, 6));
    }

    #[test]
    fn error_positions() {
        let err = parse_surface("(def g (ext empty bool))\n(id (p g bool))").unwrap_err();
        assert_eq!((err.line, err.col), (2, 5));
        assert!(err.message.contains("expected a context, found a substitution"));
        let err = parse_surface("(comp (id empty))").unwrap_err();
        assert_eq!((err.line, err.col), (1, 1));
        let err = parse_surface("x").unwrap_err();
        assert!(err.message.contains("unknown name"));
        assert!(parse_surface(")").is_err());
        assert!(parse_surface("true false").is_err());
        assert!(parse_surface("(def true bool)").is_err());
    }

    #[test]
    fn definitions_and_contexts() {
        let src = "; a variable\n(def g (ext empty bool))\n(in g (q empty bool))";
        let e = parse_surface(src).unwrap();
        let g = Con::ext(&Con::empty(), &Ty::bool());
        assert_eq!(e, Expr::Tm(g, Tm::q(&Con::empty(), &Ty::bool())));
        let e = parse_surface("(def g (ext empty unit))").unwrap();
        assert_eq!(e, Expr::Con(Con::ext(&Con::empty(), &Ty::unit())));
    }
}
