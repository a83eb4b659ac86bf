//! Line-oriented instance files. Blank lines and text after `#` are ignored.
//!
//! `.semicat`:
//! ```text
//! objects x y
//! hom x y f          # source, target, name
//! comp g f h         # g ∘ f = h, one line per composable pair
//! ```
//! `.sset`:
//! ```text
//! max-level 2
//! cell 0 x
//! cell 1 f y x       # faces in order, by name, from the level below
//! ```
//! `.functor` (paths are relative to the file):
//! ```text
//! semicat base.semicat
//! carrier x a b      # elements of F x
//! action f b a       # F f on the elements of its source carrier, in order
//! ```
//! `.map`:
//! ```text
//! source total.sset
//! target base.sset
//! map 1 f g          # level, source cell, target cell
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use infcwf_core::semicat::{FinSemicat, FinSetFunctor, Morphism};
use infcwf_core::sset::{FinSSet, SSetMap};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Whole(String),
    #[error("{path}: {message}")]
    File { path: PathBuf, message: String },
}

fn at(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        message: message.into(),
    }
}

/// Numbered, comment-stripped, non-empty lines split into words.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let words: Vec<&str> = l.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|e| FormatError::File {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn relative(base: &Path, target: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(target)
}

pub fn parse_semicat(text: &str) -> Result<FinSemicat, FormatError> {
    let mut objects: Vec<String> = Vec::new();
    let mut homs: Vec<Morphism> = Vec::new();
    let mut comps: Vec<(usize, String, String, String)> = Vec::new();
    for (n, words) in lines(text) {
        match words.as_slice() {
            ["objects", names @ ..] => {
                for name in names {
                    if objects.iter().any(|o| o == name) {
                        return Err(at(n, format!("duplicate object {name:?}")));
                    }
                    objects.push(name.to_string());
                }
            }
            ["hom", s, d, name] => {
                let obj = |o: &str| {
                    objects
                        .iter()
                        .position(|x| x == o)
                        .ok_or_else(|| at(n, format!("unknown object {o:?}")))
                };
                if homs.iter().any(|h| h.name == *name) {
                    return Err(at(n, format!("duplicate morphism {name:?}")));
                }
                homs.push(Morphism {
                    name: name.to_string(),
                    src: obj(s)?,
                    dst: obj(d)?,
                });
            }
            ["comp", g, f, h] => comps.push((n, g.to_string(), f.to_string(), h.to_string())),
            _ => {
                return Err(at(
                    n,
                    "expected `objects NAME...`, `hom SRC DST NAME` or `comp G F H`",
                ))
            }
        }
    }
    let m = homs.len();
    let mor = |line: usize, name: &str| {
        homs.iter()
            .position(|h| h.name == name)
            .ok_or_else(|| at(line, format!("unknown morphism {name:?}")))
    };
    let mut table = vec![None; m * m];
    for (line, g, f, h) in &comps {
        let (gi, fi, hi) = (mor(*line, g)?, mor(*line, f)?, mor(*line, h)?);
        if table[gi * m + fi].replace(hi).is_some() {
            return Err(at(*line, format!("composite {g} ∘ {f} is given twice")));
        }
    }
    FinSemicat::from_table(objects, homs, table).map_err(|e| FormatError::Whole(e.to_string()))
}

pub fn write_semicat(c: &FinSemicat) -> String {
    c.to_string()
}

pub fn parse_sset(text: &str) -> Result<FinSSet, FormatError> {
    let mut it = lines(text);
    let max_level = match it.next() {
        Some((_, w)) if w.len() == 2 && w[0] == "max-level" => {
            w[1].parse::<usize>().map_err(|e| at(1, format!("max-level: {e}")))?
        }
        Some((n, _)) => return Err(at(n, "the first line must be `max-level N`")),
        None => return Err(FormatError::Whole("empty sset file".into())),
    };
    let mut a = FinSSet::new(max_level);
    let mut index: Vec<HashMap<String, usize>> = vec![HashMap::new(); max_level + 1];
    for (n, words) in it {
        let ["cell", level, name, faces @ ..] = words.as_slice() else {
            return Err(at(n, "expected `cell LEVEL NAME FACE...`"));
        };
        let level: usize = level.parse().map_err(|e| at(n, format!("level: {e}")))?;
        if level > max_level {
            return Err(at(n, format!("level {level} exceeds max-level {max_level}")));
        }
        let faces = faces
            .iter()
            .map(|f| {
                level
                    .checked_sub(1)
                    .and_then(|below| index[below].get(*f).copied())
                    .ok_or_else(|| at(n, format!("no cell {f:?} at level {}", level.saturating_sub(1))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let i = a
            .push_cell(level, *name, faces)
            .map_err(|e| at(n, e.to_string()))?;
        index[level].insert(name.to_string(), i);
    }
    Ok(a)
}

pub fn write_sset(a: &FinSSet) -> String {
    let mut out = format!("max-level {}\n", a.max_level());
    for (level, cells) in a.levels().iter().enumerate() {
        for c in cells {
            write!(out, "cell {level} {}", c.name).unwrap();
            for &f in &c.faces {
                write!(out, " {}", a.name(level - 1, f)).unwrap();
            }
            out.push('\n');
        }
    }
    out
}

/// `path` locates the files a functor file refers to.
pub fn parse_functor(text: &str, path: &Path) -> Result<FinSetFunctor, FormatError> {
    let mut base = None;
    let mut carriers: HashMap<String, (usize, Vec<String>)> = HashMap::new();
    let mut actions: HashMap<String, (usize, Vec<String>)> = HashMap::new();
    for (n, words) in lines(text) {
        match words.as_slice() {
            ["semicat", file] => {
                let p = relative(path, file);
                base = Some(parse_semicat(&read_file(&p)?).map_err(|e| FormatError::File {
                    path: p,
                    message: e.to_string(),
                })?);
            }
            ["carrier", obj, elems @ ..] => {
                let v = elems.iter().map(|s| s.to_string()).collect();
                if carriers.insert(obj.to_string(), (n, v)).is_some() {
                    return Err(at(n, format!("carrier of {obj:?} given twice")));
                }
            }
            ["action", mor, images @ ..] => {
                let v = images.iter().map(|s| s.to_string()).collect();
                if actions.insert(mor.to_string(), (n, v)).is_some() {
                    return Err(at(n, format!("action of {mor:?} given twice")));
                }
            }
            _ => {
                return Err(at(
                    n,
                    "expected `semicat FILE`, `carrier OBJ ELEM...` or `action MOR ELEM...`",
                ))
            }
        }
    }
    let base = base.ok_or_else(|| FormatError::Whole("missing `semicat FILE` line".into()))?;
    for (obj, (n, _)) in &carriers {
        if base.find_object(obj).is_none() {
            return Err(at(*n, format!("unknown object {obj:?}")));
        }
    }
    for (mor, (n, _)) in &actions {
        if base.find_morphism(mor).is_none() {
            return Err(at(*n, format!("unknown morphism {mor:?}")));
        }
    }
    let carrier_list: Vec<Vec<String>> = base
        .objects()
        .iter()
        .map(|o| carriers.get(o).map(|c| c.1.clone()).unwrap_or_default())
        .collect();
    let mut action_list = Vec::new();
    for f in 0..base.morphism_count() {
        let name = base.name(f);
        let target = &carrier_list[base.dst(f)];
        let images = match actions.get(name) {
            Some((n, v)) => v
                .iter()
                .map(|y| {
                    target
                        .iter()
                        .position(|t| t == y)
                        .ok_or_else(|| at(*n, format!("{y:?} is not in the carrier of the target of {name}")))
                })
                .collect::<Result<Vec<_>, _>>()?,
            None => Vec::new(),
        };
        action_list.push(images);
    }
    FinSetFunctor::new(base, carrier_list, action_list).map_err(|e| FormatError::Whole(e.to_string()))
}

pub fn parse_map(text: &str, path: &Path) -> Result<SSetMap, FormatError> {
    let mut source = None;
    let mut target = None;
    let mut pairs = Vec::new();
    for (n, words) in lines(text) {
        match words.as_slice() {
            ["source", file] | ["target", file] => {
                let p = relative(path, file);
                let a = parse_sset(&read_file(&p)?).map_err(|e| FormatError::File {
                    path: p,
                    message: e.to_string(),
                })?;
                if words[0] == "source" {
                    source = Some(a);
                } else {
                    target = Some(a);
                }
            }
            ["map", level, s, t] => {
                let level: usize = level.parse().map_err(|e| at(n, format!("level: {e}")))?;
                pairs.push((n, level, s.to_string(), t.to_string()));
            }
            _ => return Err(at(n, "expected `source FILE`, `target FILE` or `map LEVEL SRC TGT`")),
        }
    }
    let source = source.ok_or_else(|| FormatError::Whole("missing `source FILE` line".into()))?;
    let target = target.ok_or_else(|| FormatError::Whole("missing `target FILE` line".into()))?;
    let top = source.max_level().min(target.max_level());
    let mut maps: Vec<Vec<Option<usize>>> = (0..=top).map(|l| vec![None; source.count(l)]).collect();
    for (n, level, s, t) in pairs {
        if level > top {
            return Err(at(n, format!("level {level} is above the common max level {top}")));
        }
        let si = source
            .find(level, &s)
            .ok_or_else(|| at(n, format!("no source cell {s:?} at level {level}")))?;
        let ti = target
            .find(level, &t)
            .ok_or_else(|| at(n, format!("no target cell {t:?} at level {level}")))?;
        if maps[level][si].replace(ti).is_some() {
            return Err(at(n, format!("{s:?} is mapped twice")));
        }
    }
    let level_maps = maps
        .into_iter()
        .enumerate()
        .map(|(l, m)| {
            m.into_iter()
                .enumerate()
                .map(|(i, t)| {
                    t.ok_or_else(|| {
                        FormatError::Whole(format!("source cell {:?} at level {l} is not mapped", source.name(l, i)))
                    })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    SSetMap::new(source, target, level_maps).map_err(|e| FormatError::Whole(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use infcwf_core::semicat::examples::{codiscrete2, z2};
    use infcwf_core::semicat::nerve;

    #[test]
    fn semicat_round_trip() {
        for c in [z2(), codiscrete2()] {
            assert_eq!(parse_semicat(&write_semicat(&c)).unwrap(), c);
        }
    }

    #[test]
    fn sset_round_trip() {
        let a = nerve(&z2(), 3);
        let b = parse_sset(&write_sset(&a)).unwrap();
        assert_eq!(b.levels(), a.levels());
    }

    #[test]
    fn semicat_errors_have_lines() {
        let err = parse_semicat("objects x\nhom x y f").unwrap_err();
        assert_eq!(err, at(2, "unknown object \"y\""));
        let err = parse_semicat("objects x\nhom x x f\n").unwrap_err();
        assert!(err.to_string().contains("missing"), "{err}");
        assert!(parse_semicat("bogus").is_err());
    }

    #[test]
    fn sset_errors_have_lines() {
        assert!(parse_sset("cell 0 x").is_err());
        let err = parse_sset("max-level 1\ncell 0 x\ncell 1 f x y").unwrap_err();
        assert_eq!(err, at(3, "no cell \"y\" at level 0"));
        let err = parse_sset("max-level 1\ncell 2 t").unwrap_err();
        assert!(matches!(err, FormatError::Line { line: 2, .. }));
    }
}
