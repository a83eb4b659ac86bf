//! Identities as idempotent equivalences.

use serde::Serialize;

use super::{FinSemicat, SemicatError};

fn is_bijection(domain: &[usize], codomain: &[usize], f: impl Fn(usize) -> usize) -> bool {
    if domain.len() != codomain.len() {
        return false;
    }
    let mut hit = vec![false; codomain.len()];
    for &x in domain {
        let y = f(x);
        let Some(pos) = codomain.iter().position(|&c| c == y) else {
            return false;
        };
        if hit[pos] {
            return false;
        }
        hit[pos] = true;
    }
    true
}

/// Pre- and post-composition with `e : x -> y` are bijections on every hom set.
pub fn is_equivalence(c: &FinSemicat, e: usize) -> bool {
    let (x, y) = (c.src(e), c.dst(e));
    (0..c.object_count()).all(|z| {
        is_bijection(&c.hom(y, z), &c.hom(x, z), |g| c.compose(g, e).unwrap())
            && is_bijection(&c.hom(z, x), &c.hom(z, y), |f| c.compose(e, f).unwrap())
    })
}

/// Idempotent equivalences `x -> x`.
pub fn good_identities(c: &FinSemicat, x: usize) -> Vec<usize> {
    c.hom(x, x)
        .into_iter()
        .filter(|&i| c.compose(i, i) == Some(i) && is_equivalence(c, i))
        .collect()
}

/// The unique good identity of every object, when there is one.
///
/// Panics if some object has two good identities, which would contradict
/// their uniqueness.
pub fn identity_structure(c: &FinSemicat) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(c.object_count());
    let mut complete = true;
    for x in 0..c.object_count() {
        let ids = good_identities(c, x);
        assert!(
            ids.len() <= 1,
            "internal consistency failure: object {} has {} good identities",
            c.objects()[x],
            ids.len()
        );
        match ids.first() {
            Some(&i) => out.push(i),
            None => complete = false,
        }
    }
    complete.then_some(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdCounterexample {
    pub morphism: String,
    pub good_identity: bool,
    pub neutral: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct IdCharacterisationReport {
    pub checked: usize,
    pub counterexamples: Vec<IdCounterexample>,
}

impl IdCharacterisationReport {
    pub fn passes(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn is_neutral(c: &FinSemicat, i: usize) -> bool {
    let x = c.src(i);
    (0..c.morphism_count()).all(|f| {
        (c.dst(f) != x || c.compose(i, f) == Some(f)) && (c.src(f) != x || c.compose(f, i) == Some(f))
    })
}

/// A self-map is a good identity exactly when it is neutral on both sides.
pub fn check_id_characterisation(c: &FinSemicat) -> IdCharacterisationReport {
    let mut report = IdCharacterisationReport::default();
    for i in 0..c.morphism_count() {
        if c.src(i) != c.dst(i) {
            continue;
        }
        report.checked += 1;
        let good = c.compose(i, i) == Some(i) && is_equivalence(c, i);
        let neutral = is_neutral(c, i);
        if good != neutral {
            report.counterexamples.push(IdCounterexample {
                morphism: c.name(i).to_string(),
                good_identity: good,
                neutral,
            });
        }
    }
    report
}

/// The preimage of `e` under `e ∘ −` on `hom(x, x)`.
pub fn i_of(c: &FinSemicat, e: usize) -> Result<usize, SemicatError> {
    if !is_equivalence(c, e) {
        return Err(SemicatError::NotEquivalence(c.name(e).to_string()));
    }
    let x = c.src(e);
    let mut found = c.hom(x, x).into_iter().filter(|&i| c.compose(e, i) == Some(e));
    let i = found
        .next()
        .ok_or_else(|| SemicatError::Internal(format!("no preimage for {}", c.name(e))))?;
    if found.next().is_some() {
        return Err(SemicatError::Internal(format!(
            "preimage for {} is not unique",
            c.name(e)
        )));
    }
    if !(c.compose(i, i) == Some(i) && is_equivalence(c, i)) {
        return Err(SemicatError::Internal(format!(
            "I({}) = {} is not a good identity",
            c.name(e),
            c.name(i)
        )));
    }
    Ok(i)
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn equivalences() {
        let c = z2();
        assert!(is_equivalence(&c, 0) && is_equivalence(&c, 1));
        assert!(!is_equivalence(&constant(), 0));
        assert!(is_equivalence(&trivial(), 0));
    }

    #[test]
    fn good_identity_examples() {
        assert_eq!(good_identities(&z2(), 0), vec![0]);
        assert!(good_identities(&constant(), 0).is_empty());
        assert_eq!(good_identities(&trivial(), 0), vec![0]);
        assert_eq!(identity_structure(&z2()), Some(vec![0]));
        assert_eq!(identity_structure(&constant()), None);
        let cd = codiscrete2();
        let s = identity_structure(&cd).unwrap();
        assert_eq!(cd.name(s[0]), "xx");
        assert_eq!(cd.name(s[1]), "yy");
    }

    #[test]
    fn characterisation_examples() {
        assert!(check_id_characterisation(&z2()).passes());
        assert_eq!(check_id_characterisation(&z2()).checked, 2);
        assert!(check_id_characterisation(&FinSemicat::empty()).passes());
        assert!(check_id_characterisation(&constant()).passes());
    }

    #[test]
    fn i_of_examples() {
        let c = z2();
        assert_eq!(i_of(&c, 1), Ok(0));
        assert_eq!(i_of(&c, 0), Ok(0));
        assert_eq!(i_of(&trivial(), 0), Ok(0));
        assert!(matches!(i_of(&constant(), 0), Err(SemicatError::NotEquivalence(_))));
    }
}
