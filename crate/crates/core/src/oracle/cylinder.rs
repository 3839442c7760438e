//! Mapping-cylinder ladders between isomorphic instances.
//!
//! Fix an isomorphism `F: A → B` and an order `a₁, …, aₘ` of the objects of
//! `A` in which morphisms only go forward. Stage `i` replaces `a₁, …, aᵢ` by
//! their images under `F`. The cylinder `Cᵢ` holds both `aᵢ` and `Faᵢ`,
//! joined by a morphism `k`, and collapses onto stage `i` by removing `aᵢ`
//! and onto stage `i - 1` by removing `Faᵢ`. The Δ-complex ladder has the
//! same shape with cones over the simplices through `vᵢ`.
//!
//! Names are chosen so that the collapses reproduce the stages exactly:
//! objects and simplices of `A` (`X`) get the prefix `A:` (`X:`), those of
//! `B` (`Y`) the prefix `B:` (`Y:`), and morphisms running from the `B` part
//! to the `A` part get `X:` (`f'` in the usual notation).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::OracleError;
use crate::category::{
    AcyclicCategory, Arrow, BeatWitness, CategoryIsomorphism, Direction, MorphismId, ObjectId, RawCategory,
    RawComposite, RawMorphism,
};
use crate::delta::{DeltaComplex, DeltaIsomorphism, RawComplex, RawFace, RawSimplex, SimplexId};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Side {
    B,
    A,
}

type Node = (Side, ObjectId);

/// A category whose objects are `Fa_k` for positions `k ≤ b_upto` and
/// `a_k` for positions `k ≥ a_from` (1-based), with `A(a_k, a_j)` as the
/// morphisms between any two of them unless that would run from the `A`
/// part back to the `B` part.
fn cat_window(
    a: &AcyclicCategory,
    b: &AcyclicCategory,
    iso: &CategoryIsomorphism,
    order: &[ObjectId],
    b_upto: usize,
    a_from: usize,
) -> AcyclicCategory {
    let m = order.len();
    let mut position = alloc::vec![0; m];
    for (k, x) in order.iter().enumerate() {
        position[x.0] = k + 1;
    }
    let mut nodes: Vec<Node> = Vec::new();
    for &x in order {
        if position[x.0] <= b_upto {
            nodes.push((Side::B, x));
        }
        if position[x.0] >= a_from {
            nodes.push((Side::A, x));
        }
    }
    let object_name = |(side, x): Node| match side {
        Side::B => format!("B:{}", b.object_name(iso.objects[x.0])),
        Side::A => format!("A:{}", a.object_name(x)),
    };
    let morphism_name = |from: Side, to: Side, arrow: Arrow| match (from, to, arrow) {
        (_, _, Arrow::Identity(_)) => String::from("k"),
        (Side::B, Side::B, Arrow::Morphism(f)) => format!("B:{}", b.morphism_name(iso.morphisms[f.0])),
        (Side::A, Side::A, Arrow::Morphism(f)) => format!("A:{}", a.morphism_name(f)),
        (_, _, Arrow::Morphism(f)) => format!("X:{}", a.morphism_name(f)),
    };
    // Morphisms of the window, keyed by their endpoints and underlying arrow.
    let mut edges: BTreeMap<(Node, Node, Arrow), String> = BTreeMap::new();
    for &from in &nodes {
        for &to in &nodes {
            if from == to || (from.0 == Side::A && to.0 == Side::B) {
                continue;
            }
            for arrow in a.arrows(from.1, to.1) {
                edges.insert((from, to, arrow), morphism_name(from.0, to.0, arrow));
            }
        }
    }
    let mut raw = RawCategory { objects: nodes.iter().map(|&n| object_name(n)).collect(), ..RawCategory::default() };
    for ((from, to, _), name) in &edges {
        raw.morphisms.push(RawMorphism { id: name.clone(), source: object_name(*from), target: object_name(*to) });
    }
    for ((x, y, f), f_name) in &edges {
        for ((y2, z, g), g_name) in edges.range((*y, (Side::B, ObjectId(0)), Arrow::Identity(ObjectId(0)))..) {
            if y2 != y {
                break;
            }
            let gf = a.compose_arrows(*g, *f).expect("composable in A");
            let result = &edges[&(*x, *z, gf)];
            raw.compose.push(RawComposite { g: g_name.clone(), f: f_name.clone(), result: result.clone() });
        }
    }
    raw.validate().expect("cylinder window is an acyclic category")
}

fn check_cat_inputs(
    a: &AcyclicCategory,
    b: &AcyclicCategory,
    iso: &CategoryIsomorphism,
) -> Result<Vec<ObjectId>, OracleError> {
    if !iso.check(a, b) {
        return Err(OracleError::NotIsomorphism);
    }
    Ok(a.linear_extension())
}

/// Stage `i` of the ladder: `Fa₁, …, Faᵢ, aᵢ₊₁, …, aₘ`. Stage 0 is `A`
/// and stage `m` is `B`, both with prefixed names.
pub fn cat_stage(
    a: &AcyclicCategory,
    b: &AcyclicCategory,
    iso: &CategoryIsomorphism,
    i: usize,
) -> Result<AcyclicCategory, OracleError> {
    let order = check_cat_inputs(a, b, iso)?;
    if i > order.len() {
        return Err(OracleError::RungOutOfRange { rung: i, max: order.len() });
    }
    Ok(cat_window(a, b, iso, &order, i, i + 1))
}

/// The cylinder `Cᵢ` with the two objects joined by `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderCat {
    pub category: AcyclicCategory,
    /// `aᵢ`, a down beat object via `k`.
    pub a_i: ObjectId,
    /// `Faᵢ`, an up beat object via `k`.
    pub fa_i: ObjectId,
    pub k: MorphismId,
}

impl CylinderCat {
    pub fn down_witness(&self) -> BeatWitness {
        BeatWitness { object: self.a_i, direction: Direction::Down, morphism: self.k }
    }

    pub fn up_witness(&self) -> BeatWitness {
        BeatWitness { object: self.fa_i, direction: Direction::Up, morphism: self.k }
    }
}

pub fn cylinder_cat(
    a: &AcyclicCategory,
    b: &AcyclicCategory,
    iso: &CategoryIsomorphism,
    i: usize,
) -> Result<CylinderCat, OracleError> {
    let order = check_cat_inputs(a, b, iso)?;
    if i == 0 || i > order.len() {
        return Err(OracleError::RungOutOfRange { rung: i, max: order.len() });
    }
    let category = cat_window(a, b, iso, &order, i, i);
    let x = order[i - 1];
    let a_i = category.object_by_name(&format!("A:{}", a.object_name(x))).expect("aᵢ");
    let fa_i = category.object_by_name(&format!("B:{}", b.object_name(iso.objects[x.0]))).expect("Faᵢ");
    let k = category.morphism_by_name("k").expect("k");
    Ok(CylinderCat { category, a_i, fa_i, k })
}

/// Outcome of walking a ladder rung by rung.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderReport {
    pub rungs: usize,
    /// First failing check, if any.
    pub failure: Option<String>,
}

impl LadderReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks every rung: both beat witnesses, both collapses landing exactly
/// on the neighbouring stages, and equal strong equivalence type of the
/// neighbours. The ends are compared with `A` and `B` up to isomorphism.
pub fn verify_cat_ladder(
    a: &AcyclicCategory,
    b: &AcyclicCategory,
    iso: &CategoryIsomorphism,
) -> Result<LadderReport, OracleError> {
    let m = a.object_count();
    let fail = |rung: usize, what: &str| Ok(LadderReport { rungs: m, failure: Some(format!("rung {rung}: {what}")) });
    let mut previous = cat_stage(a, b, iso, 0)?;
    if previous.isomorphism_to(a).is_none() {
        return fail(0, "stage 0 is not isomorphic to the source");
    }
    for i in 1..=m {
        let c = cylinder_cat(a, b, iso, i)?;
        let stage = cat_stage(a, b, iso, i)?;
        if !c.category.is_beat_witness(&c.down_witness()) {
            return fail(i, "aᵢ is not a down beat object via k");
        }
        if !c.category.is_beat_witness(&c.up_witness()) {
            return fail(i, "Faᵢ is not an up beat object via k");
        }
        if c.category.remove_object(c.a_i) != stage {
            return fail(i, "removing aᵢ does not give stage i");
        }
        if c.category.remove_object(c.fa_i) != previous {
            return fail(i, "removing Faᵢ does not give stage i - 1");
        }
        if !previous.same_strong_equivalence_type(&stage) {
            return fail(i, "neighbouring stages differ in strong equivalence type");
        }
        previous = stage;
    }
    if previous.isomorphism_to(b).is_none() {
        return fail(m, "last stage is not isomorphic to the target");
    }
    Ok(LadderReport { rungs: m, failure: None })
}

/// Name of `σ` once the vertices at positions `≤ stage` are moved to `Y`.
fn staged_name(x: &DeltaComplex, y: &DeltaComplex, iso: &DeltaIsomorphism, stage: usize, s: SimplexId) -> String {
    let moved = x.vertex_set(s).iter().filter(|v| v.0 < stage).count();
    if moved == 0 {
        format!("X:{}", x.name(s))
    } else if moved == x.dim(s) + 1 {
        format!("Y:{}", y.name(iso.simplices[s.0]))
    } else {
        format!("M{moved}:{}", x.name(s))
    }
}

fn push_stage(
    raw: &mut RawComplex,
    x: &DeltaComplex,
    y: &DeltaComplex,
    iso: &DeltaIsomorphism,
    stage: usize,
    skip: &mut BTreeMap<String, ()>,
) {
    for s in x.simplex_ids() {
        let name = staged_name(x, y, iso, stage, s);
        if skip.insert(name.clone(), ()).is_some() {
            continue;
        }
        raw.simplices.push(RawSimplex {
            id: name.clone(),
            dimension: x.dim(s),
            vertices: x.vertex_set(s).iter().map(|&v| staged_name(x, y, iso, stage, v)).collect(),
        });
        for (&v, &f) in x.vertex_set(s).iter().zip(x.faces(s)) {
            raw.faces.push(RawFace {
                simplex: name.clone(),
                vertex: staged_name(x, y, iso, stage, v),
                result: staged_name(x, y, iso, stage, f),
            });
        }
    }
}

fn check_delta_inputs(x: &DeltaComplex, y: &DeltaComplex, iso: &DeltaIsomorphism) -> Result<(), OracleError> {
    if !iso.check(x, y) {
        return Err(OracleError::NotIsomorphism);
    }
    Ok(())
}

/// Stage `i`: `X` with its first `i` vertices (identifier order) replaced
/// by their images in `Y`, every simplex carried along.
pub fn delta_stage(
    x: &DeltaComplex,
    y: &DeltaComplex,
    iso: &DeltaIsomorphism,
    i: usize,
) -> Result<DeltaComplex, OracleError> {
    check_delta_inputs(x, y, iso)?;
    if i > x.vertex_count() {
        return Err(OracleError::RungOutOfRange { rung: i, max: x.vertex_count() });
    }
    let mut raw = RawComplex::new();
    push_stage(&mut raw, x, y, iso, i, &mut BTreeMap::new());
    Ok(raw.validate().expect("relabelled copy is valid"))
}

/// The cylinder `Z(i)` over stages `i - 1` and `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderDelta {
    pub complex: DeltaComplex,
    /// `vᵢ`, dominated by `φ(vᵢ)`.
    pub v_i: SimplexId,
    /// `φ(vᵢ)`, dominated by `vᵢ`.
    pub phi_v_i: SimplexId,
}

/// Builds `Z(i)`: stages `i - 1` and `i` glued along their common part,
/// plus a cone `C:σ` over every simplex `σ` of stage `i - 1` through `vᵢ`.
/// The cone has faces `σ` opposite `φ(vᵢ)`, the stage-`i` copy of `σ`
/// opposite `vᵢ`, and the cone over `d_w σ` opposite any other `w`.
pub fn cylinder_delta(
    x: &DeltaComplex,
    y: &DeltaComplex,
    iso: &DeltaIsomorphism,
    i: usize,
) -> Result<CylinderDelta, OracleError> {
    check_delta_inputs(x, y, iso)?;
    if i == 0 || i > x.vertex_count() {
        return Err(OracleError::RungOutOfRange { rung: i, max: x.vertex_count() });
    }
    let v = SimplexId(i - 1);
    let mut raw = RawComplex::new();
    let mut seen = BTreeMap::new();
    push_stage(&mut raw, x, y, iso, i - 1, &mut seen);
    push_stage(&mut raw, x, y, iso, i, &mut seen);
    let before = |s: SimplexId| staged_name(x, y, iso, i - 1, s);
    let after = |s: SimplexId| staged_name(x, y, iso, i, s);
    let cone = |s: SimplexId| format!("C:{}", x.name(s));
    let (v_name, phi_name) = (before(v), after(v));
    for &s in x.relation().up_set(v) {
        let mut vertices: Vec<String> = x.vertex_set(s).iter().map(|&w| before(w)).collect();
        vertices.push(phi_name.clone());
        raw.simplices.push(RawSimplex { id: cone(s), dimension: x.dim(s) + 1, vertices });
        raw.faces.push(RawFace { simplex: cone(s), vertex: phi_name.clone(), result: before(s) });
        raw.faces.push(RawFace { simplex: cone(s), vertex: v_name.clone(), result: after(s) });
        for (&w, &f) in x.vertex_set(s).iter().zip(x.faces(s)) {
            if w != v {
                raw.faces.push(RawFace { simplex: cone(s), vertex: before(w), result: cone(f) });
            }
        }
    }
    let complex = raw.validate().expect("mapping cylinder satisfies the face conditions");
    let v_i = complex.by_name(&v_name).expect("vᵢ");
    let phi_v_i = complex.by_name(&phi_name).expect("φ(vᵢ)");
    Ok(CylinderDelta { complex, v_i, phi_v_i })
}

/// Δ-complex analogue of [`verify_cat_ladder`].
pub fn verify_delta_ladder(
    x: &DeltaComplex,
    y: &DeltaComplex,
    iso: &DeltaIsomorphism,
) -> Result<LadderReport, OracleError> {
    let m = x.vertex_count();
    let fail = |rung: usize, what: &str| Ok(LadderReport { rungs: m, failure: Some(format!("rung {rung}: {what}")) });
    let mut previous = delta_stage(x, y, iso, 0)?;
    if previous.isomorphism_to(x).is_none() {
        return fail(0, "stage 0 is not isomorphic to the source");
    }
    for i in 1..=m {
        let z = cylinder_delta(x, y, iso, i)?;
        let stage = delta_stage(x, y, iso, i)?;
        if z.complex.dominated_by(z.v_i, z.phi_v_i).is_none() {
            return fail(i, "vᵢ is not dominated by φ(vᵢ)");
        }
        if z.complex.dominated_by(z.phi_v_i, z.v_i).is_none() {
            return fail(i, "φ(vᵢ) is not dominated by vᵢ");
        }
        if z.complex.remove_vertex(z.v_i) != stage {
            return fail(i, "removing vᵢ does not give stage i");
        }
        if z.complex.remove_vertex(z.phi_v_i) != previous {
            return fail(i, "removing φ(vᵢ) does not give stage i - 1");
        }
        if !previous.same_strong_homotopy_type(&stage) {
            return fail(i, "neighbouring stages differ in strong homotopy type");
        }
        previous = stage;
    }
    if previous.isomorphism_to(y).is_none() {
        return fail(m, "last stage is not isomorphic to the target");
    }
    Ok(LadderReport { rungs: m, failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::{relabel_category, relabel_complex};

    #[test]
    fn two_chain_cylinder() {
        let a = fixtures::circle_category().underlying_poset();
        let iso = CategoryIsomorphism::identity(&a);
        let c = cylinder_cat(&a, &a, &iso, 1).unwrap();
        assert_eq!(c.category.object_count(), 3);
        assert!(c.category.is_beat_witness(&c.down_witness()));
        assert!(c.category.is_beat_witness(&c.up_witness()));
        let left = c.category.remove_object(c.a_i);
        let right = c.category.remove_object(c.fa_i);
        assert!(left.isomorphism_to(&right).is_some());
        assert!(verify_cat_ladder(&a, &a, &iso).unwrap().holds());
    }

    #[test]
    fn circle_category_ladder_to_a_relabelled_copy() {
        let a = fixtures::circle_category();
        let b = relabel_category(&a, 3);
        let iso = a.isomorphism_to(&b).unwrap();
        let report = verify_cat_ladder(&a, &b, &iso).unwrap();
        assert_eq!(report.failure, None);
    }

    #[test]
    fn edge_cylinder_dominations() {
        let x = fixtures::single_edge();
        let iso = x.isomorphism_to(&x).unwrap();
        for i in 1..=2 {
            let z = cylinder_delta(&x, &x, &iso, i).unwrap();
            assert!(z.complex.dominated_by(z.v_i, z.phi_v_i).is_some());
            assert!(z.complex.dominated_by(z.phi_v_i, z.v_i).is_some());
        }
        assert!(verify_delta_ladder(&x, &x, &iso).unwrap().holds());
    }

    #[test]
    fn fixture_ladders() {
        for x in [
            fixtures::circle_complex(),
            fixtures::sphere_complex(),
            fixtures::disc_complex(),
            fixtures::full_triangle(),
        ] {
            let y = relabel_complex(&x, 11);
            let iso = x.isomorphism_to(&y).unwrap();
            for i in 1..=x.vertex_count() {
                cylinder_delta(&x, &y, &iso, i).unwrap();
            }
            assert_eq!(verify_delta_ladder(&x, &y, &iso).unwrap().failure, None);
        }
    }

    #[test]
    fn bad_inputs() {
        let a = fixtures::chain3();
        let iso = CategoryIsomorphism::identity(&a);
        assert_eq!(cylinder_cat(&a, &a, &iso, 0).unwrap_err().tag(), "RungOutOfRange");
        let s1 = fixtures::circle_category();
        let bogus = CategoryIsomorphism::identity(&s1);
        assert_eq!(cylinder_cat(&a, &s1, &bogus, 1).unwrap_err().tag(), "NotIsomorphism");
    }
}
