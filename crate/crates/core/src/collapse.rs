//! Free faces and elementary simple collapses.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::delta::{DeltaComplex, DominationWitness};

/// Removal of a free face together with its unique coface. Simplices are
/// named so a step stays meaningful across complexes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SimpleCollapseStep {
    pub face: String,
    pub coface: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SimpleCollapseError {
    #[error("simplex `{0}` is not in the complex")]
    UnknownSimplex(String),
    #[error("`{face}` is not a free face of `{coface}`")]
    StaleStep { face: String, coface: String },
    #[error("witness does not certify a dominated vertex of this complex")]
    InvalidWitness,
}

impl SimpleCollapseError {
    pub fn tag(&self) -> &'static str {
        match self {
            SimpleCollapseError::UnknownSimplex(_) => "UnknownSimplex",
            SimpleCollapseError::StaleStep { .. } => "StaleStep",
            SimpleCollapseError::InvalidWitness => "InvalidWitness",
        }
    }
}

/// Every `(σ, τ)` where `τ` is the only simplex strictly above `σ`, in
/// identifier order of `σ`.
pub fn free_faces(x: &DeltaComplex) -> Vec<SimpleCollapseStep> {
    x.simplex_ids()
        .filter_map(|s| match x.relation().up_set(s) {
            &[a, b] => {
                let t = if a == s { b } else { a };
                Some(SimpleCollapseStep { face: x.name(s).into(), coface: x.name(t).into() })
            }
            _ => None,
        })
        .collect()
}

/// Removes a free face and its coface.
pub fn elementary_simple_collapse(
    x: &DeltaComplex,
    step: &SimpleCollapseStep,
) -> Result<DeltaComplex, SimpleCollapseError> {
    let s = x.by_name(&step.face).ok_or_else(|| SimpleCollapseError::UnknownSimplex(step.face.clone()))?;
    let t = x.by_name(&step.coface).ok_or_else(|| SimpleCollapseError::UnknownSimplex(step.coface.clone()))?;
    let up = x.relation().up_set(s);
    if up.len() != 2 || !up.contains(&t) || s == t {
        return Err(SimpleCollapseError::StaleStep { face: step.face.clone(), coface: step.coface.clone() });
    }
    Ok(x.subcomplex(|u| u != s && u != t))
}

/// Expands the strong collapse of a dominated vertex `v` into simple
/// collapses: while `v` lies in more than its dominated edge, take a maximal
/// simplex `τ ∋ v` (highest dimension, then identifier order) and collapse
/// `d_{v′} τ` into `τ`; finish with `v` into the edge.
pub fn strong_to_simple(
    x: &DeltaComplex,
    w: &DominationWitness,
) -> Result<Vec<SimpleCollapseStep>, SimpleCollapseError> {
    if !x.is_domination_witness(w) {
        return Err(SimpleCollapseError::InvalidWitness);
    }
    let (v_name, w_name) = (String::from(x.name(w.vertex)), String::from(x.name(w.dominating)));
    let mut current = x.clone();
    let mut steps = Vec::new();
    loop {
        let v = current.by_name(&v_name).expect("v survives until the last step");
        let dominating = current.by_name(&w_name).expect("v′ is never removed");
        let up = current.relation().up_set(v);
        let step = if up.len() == 2 {
            SimpleCollapseStep { face: v_name.clone(), coface: current.name(up[1]).into() }
        } else {
            let top = up
                .iter()
                .copied()
                .filter(|&t| current.is_maximal(t))
                .max_by_key(|&t| (current.dim(t), core::cmp::Reverse(t)))
                .expect("v lies in a maximal simplex");
            let face = current.face(top, dominating).ok_or(SimpleCollapseError::InvalidWitness)?;
            SimpleCollapseStep { face: current.name(face).into(), coface: current.name(top).into() }
        };
        current = elementary_simple_collapse(&current, &step)?;
        let done = step.face == v_name;
        steps.push(step);
        if done {
            return Ok(steps);
        }
    }
}

/// Applies `steps` in order.
pub fn replay_simple(x: &DeltaComplex, steps: &[SimpleCollapseStep]) -> Result<DeltaComplex, SimpleCollapseError> {
    let mut current = x.clone();
    for step in steps {
        current = elementary_simple_collapse(&current, step)?;
    }
    Ok(current)
}

pub fn euler_characteristic(x: &DeltaComplex) -> i64 {
    x.euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn step(face: &str, coface: &str) -> SimpleCollapseStep {
        SimpleCollapseStep { face: face.into(), coface: coface.into() }
    }

    #[test]
    fn free_faces_of_fixtures() {
        assert_eq!(
            free_faces(&fixtures::full_triangle()),
            [step("a,b", "a,b,c"), step("a,c", "a,b,c"), step("b,c", "a,b,c")]
        );
        assert!(free_faces(&fixtures::circle_complex()).is_empty());
        assert!(free_faces(&fixtures::point_complex()).is_empty());
    }

    #[test]
    fn collapsing_a_triangle_edge() {
        let t = fixtures::full_triangle();
        let r = elementary_simple_collapse(&t, &step("b,c", "a,b,c")).unwrap();
        let names: Vec<&str> = r.simplex_ids().map(|s| r.name(s)).collect();
        assert_eq!(names, ["a", "b", "c", "a,b", "a,c"]);
        assert_eq!(euler_characteristic(&r), euler_characteristic(&t));
        let err = elementary_simple_collapse(&t, &step("a", "a,b")).unwrap_err();
        assert_eq!(err.tag(), "StaleStep");
    }

    #[test]
    fn disc_expansion_follows_the_maximal_simplices() {
        let d = fixtures::disc_complex();
        let w = d.find_domination(d.by_name("b").unwrap()).unwrap();
        let steps = strong_to_simple(&d, &w).unwrap();
        assert_eq!(steps, [step("bc", "T1"), step("bc2", "T2"), step("b", "ab")]);
        assert_eq!(replay_simple(&d, &steps).unwrap(), d.remove_vertex(w.vertex));
    }

    #[test]
    fn full_triangle_expansion_has_two_steps() {
        let t = fixtures::full_triangle();
        let w = t.dominated_by(t.by_name("a").unwrap(), t.by_name("b").unwrap()).unwrap();
        let steps = strong_to_simple(&t, &w).unwrap();
        assert_eq!(steps, [step("a,c", "a,b,c"), step("a", "a,b")]);
        let r = replay_simple(&t, &steps).unwrap();
        assert_eq!(r, t.remove_vertex(w.vertex));
        assert_eq!(r.simplex_count(), 3);
    }

    #[test]
    fn leaf_vertex_is_a_single_step() {
        let e = fixtures::single_edge();
        let w = e.find_domination(e.by_name("a").unwrap()).unwrap();
        assert_eq!(strong_to_simple(&e, &w).unwrap(), [step("a", "a,b")]);
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&fixtures::point_complex()), 1);
        assert_eq!(euler_characteristic(&fixtures::circle_complex()), 0);
        assert_eq!(euler_characteristic(&fixtures::sphere_complex()), 2);
    }
}
