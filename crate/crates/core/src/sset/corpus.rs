//! Small hand-built semisimplicial sets, positive and negative, for
//! exercising the Segal checks. Each is given by vertices, edges and
//! 2-cells and then completed coskeletally to level 3.

use super::FinSSet;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub sset: FinSSet,
    /// Whether the Segal condition holds through level 3.
    pub segal: bool,
}

/// `edges` are `(name, source, target)`; `triangles` are `(g, f, g∘f)`.
pub fn from_triangles(
    vertices: &[&str],
    edges: &[(&str, &str, &str)],
    triangles: &[(&str, &str, &str)],
) -> FinSSet {
    let mut a = FinSSet::new(2);
    for v in vertices {
        a.push_cell(0, *v, vec![]).expect("vertex");
    }
    let vertex = |a: &FinSSet, v: &str| a.find(0, v).unwrap_or_else(|| panic!("no vertex {v}"));
    for (name, s, t) in edges {
        let faces = vec![vertex(&a, t), vertex(&a, s)];
        a.push_cell(1, *name, faces).expect("edge");
    }
    let edge = |a: &FinSSet, e: &str| a.find(1, e).unwrap_or_else(|| panic!("no edge {e}"));
    for (i, (g, f, gf)) in triangles.iter().enumerate() {
        let faces = vec![edge(&a, g), edge(&a, gf), edge(&a, f)];
        a.push_cell(2, format!("t{i}"), faces).expect("triangle");
    }
    a.extend_coskeletal()
}

fn entry(
    name: &'static str,
    segal: bool,
    vertices: &[&str],
    edges: &[(&str, &str, &str)],
    triangles: &[(&str, &str, &str)],
) -> CorpusEntry {
    CorpusEntry {
        name,
        sset: from_triangles(vertices, edges, triangles),
        segal,
    }
}

/// All 2-cells `(g, f, table(g, f))` of a one-object table.
fn loops(names: &[&'static str], table: impl Fn(usize, usize) -> usize) -> Vec<(&'static str, &'static str, &'static str)> {
    let mut out = Vec::new();
    for g in 0..names.len() {
        for f in 0..names.len() {
            out.push((names[g], names[f], names[table(g, f)]));
        }
    }
    out
}

pub fn segal_corpus() -> Vec<CorpusEntry> {
    let one = |name: &'static str, segal: bool, names: &[&'static str], tri: Vec<(&'static str, &'static str, &'static str)>| {
        let edges: Vec<(&str, &str, &str)> = names.iter().map(|n| (*n, "x", "x")).collect();
        entry(name, segal, &["x"], &edges, &tri)
    };
    let ab = ["a", "b"];
    let abc = ["a", "b", "c"];
    let mut dup_idem = loops(&["e"], |_, _| 0);
    dup_idem.push(("e", "e", "e"));
    let mut z2_dup = loops(&ab, |g, f| g ^ f);
    z2_dup.push(("b", "b", "b"));
    let mut z2_missing = loops(&ab, |g, f| g ^ f);
    z2_missing.retain(|t| *t != ("a", "b", "b"));
    let mut rz_dup = loops(&abc, |_, f| f);
    rz_dup.push(("c", "a", "b"));

    let arrow_edges = [("ix", "x", "x"), ("iy", "y", "y"), ("f", "x", "y")];
    let arrow_tri = [
        ("ix", "ix", "ix"),
        ("iy", "iy", "iy"),
        ("f", "ix", "f"),
        ("iy", "f", "f"),
    ];
    let chain_edges = [("f", "x", "y"), ("g", "y", "z"), ("h", "x", "z")];
    let codiscrete_edges = [("xx", "x", "x"), ("xy", "x", "y"), ("yx", "y", "x"), ("yy", "y", "y")];
    let codiscrete_tri: Vec<(&str, &str, &str)> = {
        let name = |s: &str, t: &str| -> &'static str {
            match (s, t) {
                ("x", "x") => "xx",
                ("x", "y") => "xy",
                ("y", "x") => "yx",
                _ => "yy",
            }
        };
        let ends = [("xx", "x", "x"), ("xy", "x", "y"), ("yx", "y", "x"), ("yy", "y", "y")];
        let mut out = Vec::new();
        for (g, gs, gt) in ends {
            for (f, fs, ft) in ends {
                if ft == gs {
                    out.push((g, f, name(fs, gt)));
                }
            }
        }
        out
    };

    vec![
        entry("empty", true, &[], &[], &[]),
        entry("point", true, &["x"], &[], &[]),
        entry("two-points", true, &["x", "y"], &[], &[]),
        entry("edge", true, &["x", "y"], &[("f", "x", "y")], &[]),
        entry("parallel-edges", true, &["x", "y"], &[("f", "x", "y"), ("g", "x", "y")], &[]),
        one("idempotent", true, &["e"], loops(&["e"], |_, _| 0)),
        one("loop-without-composite", false, &["e"], vec![]),
        one("idempotent-duplicated", false, &["e"], dup_idem),
        one("z2", true, &ab, loops(&ab, |g, f| g ^ f)),
        one("z2-duplicated", false, &ab, z2_dup),
        one("z2-missing", false, &ab, z2_missing),
        one("z3", true, &abc, loops(&abc, |g, f| (g + f) % 3)),
        one("left-zero", true, &abc, loops(&abc, |g, _| g)),
        one("right-zero", true, &abc, loops(&abc, |_, f| f)),
        one("right-zero-duplicated", false, &abc, rz_dup),
        one("constant", true, &ab, loops(&ab, |_, _| 0)),
        one("negation", false, &ab, loops(&ab, |g, _| 1 - g)),
        one("flip-argument", false, &ab, loops(&ab, |_, f| 1 - f)),
        one("max", true, &ab, loops(&ab, |g, f| g.max(f))),
        entry(
            "composable-pair",
            true,
            &["x", "y", "z"],
            &chain_edges,
            &[("g", "f", "h")],
        ),
        entry("composable-pair-missing", false, &["x", "y", "z"], &chain_edges, &[]),
        entry(
            "composable-pair-two-composites",
            false,
            &["x", "y", "z"],
            &[("f", "x", "y"), ("g", "y", "z"), ("h", "x", "z"), ("k", "x", "z")],
            &[("g", "f", "h"), ("g", "f", "k")],
        ),
        entry("arrow", true, &["x", "y"], &arrow_edges, &arrow_tri),
        entry(
            "arrow-missing",
            false,
            &["x", "y"],
            &arrow_edges,
            &arrow_tri[..3],
        ),
        entry("codiscrete", true, &["x", "y"], &codiscrete_edges, &codiscrete_tri),
    ]
}
