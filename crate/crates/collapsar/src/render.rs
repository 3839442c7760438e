//! Graphviz export.

use std::fmt::Write;

use collapsar_core::{AcyclicCategory, DeltaComplex};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per object and one edge per non-identity morphism, so parallel
/// morphisms show up as parallel edges. With `poset` set, parallel
/// morphisms collapse to one edge and only the covering relation of `P(A)`
/// is drawn.
pub fn category_dot(cat: &AcyclicCategory, poset: bool) -> String {
    let mut out = String::from("digraph category {\n  rankdir=BT;\n");
    for x in cat.object_ids() {
        writeln!(out, "  {};", quote(cat.object_name(x))).unwrap();
    }
    if poset {
        let p = cat.underlying_poset();
        for m in p.morphism_ids() {
            let (x, y) = (p.source(m), p.target(m));
            let covered = p.object_ids().any(|z| z != x && z != y && p.precedes(x, z) && p.precedes(z, y));
            if !covered {
                writeln!(out, "  {} -> {};", quote(p.object_name(x)), quote(p.object_name(y))).unwrap();
            }
        }
    } else {
        for m in cat.morphism_ids() {
            let (x, y) = (cat.source(m), cat.target(m));
            writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(cat.object_name(x)),
                quote(cat.object_name(y)),
                quote(cat.morphism_name(m))
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// The codimension-one face relation: an edge from `d_v σ` to `σ`
/// labelled `v` for every face slot.
pub fn complex_dot(x: &DeltaComplex) -> String {
    let mut out = String::from("digraph complex {\n  rankdir=BT;\n");
    for s in x.simplex_ids() {
        writeln!(out, "  {} [label={}];", quote(x.name(s)), quote(&format!("{} ({})", x.name(s), x.dim(s)))).unwrap();
    }
    for s in x.simplex_ids() {
        for (&v, &f) in x.vertex_set(s).iter().zip(x.faces(s)) {
            writeln!(out, "  {} -> {} [label={}];", quote(x.name(f)), quote(x.name(s)), quote(x.name(v))).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
