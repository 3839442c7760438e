//! Small named instances used throughout tests and examples.

use crate::category::{AcyclicCategory, RawCategory};
use crate::delta::{DeltaComplex, RawComplex};

/// The poset `0 < 1 < 2`: morphisms `f: 0 → 1`, `g: 1 → 2`, `c = g ∘ f`.
pub fn chain3() -> AcyclicCategory {
    RawCategory::new()
        .object("0")
        .object("1")
        .object("2")
        .morphism("f", "0", "1")
        .morphism("g", "1", "2")
        .morphism("c", "0", "2")
        .composite("g", "f", "c")
        .validate()
        .expect("valid fixture")
}

/// Two objects `x`, `y` and two parallel morphisms `f, g: x → y`. Its
/// classifying space is the circle with two vertices and two edges.
pub fn circle_category() -> AcyclicCategory {
    RawCategory::new()
        .object("x")
        .object("y")
        .morphism("f", "x", "y")
        .morphism("g", "x", "y")
        .validate()
        .expect("valid fixture")
}

/// Two objects `p`, `q` and no morphisms.
pub fn discrete_pair() -> AcyclicCategory {
    RawCategory::new().object("p").object("q").validate().expect("valid fixture")
}

/// The single-object category.
pub fn point_category() -> AcyclicCategory {
    RawCategory::new().object("*").validate().expect("valid fixture")
}

fn edge(raw: RawComplex, id: &str, u: &str, v: &str) -> RawComplex {
    raw.simplex(id, &[u, v]).face(id, u, v).face(id, v, u)
}

fn triangle(raw: RawComplex, id: &str, [opp_a, opp_b, opp_c]: [&str; 3]) -> RawComplex {
    raw.simplex(id, &["a", "b", "c"]).face(id, "a", opp_a).face(id, "b", opp_b).face(id, "c", opp_c)
}

/// Circle with vertices `a`, `b` and edges `e1`, `e2`, both spanning `{a, b}`.
pub fn circle_complex() -> DeltaComplex {
    let raw = RawComplex::new().vertex("a").vertex("b");
    let raw = edge(raw, "e1", "a", "b");
    edge(raw, "e2", "a", "b").validate().expect("valid fixture")
}

/// Sphere: triangles `T1`, `T2` glued along the boundary `ab`, `ac`, `bc`.
pub fn sphere_complex() -> DeltaComplex {
    let mut raw = RawComplex::new().vertex("a").vertex("b").vertex("c");
    for (e, u, v) in [("ab", "a", "b"), ("ac", "a", "c"), ("bc", "b", "c")] {
        raw = edge(raw, e, u, v);
    }
    raw = triangle(raw, "T1", ["bc", "ac", "ab"]);
    triangle(raw, "T2", ["bc", "ac", "ab"]).validate().expect("valid fixture")
}

/// Disc: triangles `T1`, `T2` sharing `ab` and `ac`, with `T1` on `bc` and
/// `T2` on the parallel edge `bc2`.
pub fn disc_complex() -> DeltaComplex {
    let mut raw = RawComplex::new().vertex("a").vertex("b").vertex("c");
    for (e, u, v) in [("ab", "a", "b"), ("ac", "a", "c"), ("bc", "b", "c"), ("bc2", "b", "c")] {
        raw = edge(raw, e, u, v);
    }
    raw = triangle(raw, "T1", ["bc", "ac", "ab"]);
    triangle(raw, "T2", ["bc2", "ac", "ab"]).validate().expect("valid fixture")
}

/// The full 2-simplex on `a`, `b`, `c`.
pub fn full_triangle() -> DeltaComplex {
    DeltaComplex::from_simplicial_complex(&[alloc::vec!["a", "b", "c"]])
}

/// One edge `a,b` with its endpoints.
pub fn single_edge() -> DeltaComplex {
    DeltaComplex::from_simplicial_complex(&[alloc::vec!["a", "b"]])
}

/// A single vertex `a`.
pub fn point_complex() -> DeltaComplex {
    DeltaComplex::from_simplicial_complex(&[alloc::vec!["a"]])
}
