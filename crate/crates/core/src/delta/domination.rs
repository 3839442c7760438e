//! Dominated vertices, strong collapses and cores of Δ-complexes.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use super::{ComplexError, DeltaComplex, DeltaMap, SimplexId};
use crate::digest::Digest;

/// Certificate that `vertex` is dominated by `dominating`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationWitness {
    pub vertex: SimplexId,
    pub dominating: SimplexId,
    /// The unique edge spanning both vertices.
    pub edge: SimplexId,
    /// `(σ, τ(σ))` for every simplex `σ` containing `vertex`, sorted by `σ`.
    pub cofaces: Vec<(SimplexId, SimplexId)>,
}

impl DominationWitness {
    pub fn coface(&self, s: SimplexId) -> Option<SimplexId> {
        self.cofaces.binary_search_by_key(&s, |&(s, _)| s).ok().map(|i| self.cofaces[i].1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaCollapseStep {
    /// Digest of the complex before this step.
    pub snapshot: Digest,
    pub witness: DominationWitness,
    pub vertex_name: String,
    pub dominating_name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaCollapseSequence {
    pub steps: Vec<DeltaCollapseStep>,
    pub result: DeltaComplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DeltaReplayError {
    #[error("step {0}: snapshot digest does not match")]
    SnapshotMismatch(usize),
    #[error("step {0}: witness does not certify a dominated vertex")]
    InvalidWitness(usize),
    #[error("replay does not reproduce the recorded result")]
    ResultMismatch,
}

impl DeltaCollapseSequence {
    pub fn replay(&self, start: &DeltaComplex) -> Result<DeltaComplex, DeltaReplayError> {
        let mut current = start.clone();
        for (i, step) in self.steps.iter().enumerate() {
            if current.digest() != step.snapshot {
                return Err(DeltaReplayError::SnapshotMismatch(i));
            }
            if !current.is_domination_witness(&step.witness) {
                return Err(DeltaReplayError::InvalidWitness(i));
            }
            current = current.remove_vertex(step.witness.vertex);
        }
        if current != self.result {
            return Err(DeltaReplayError::ResultMismatch);
        }
        Ok(current)
    }

    pub fn removed_vertices(&self) -> impl Iterator<Item = &str> {
        self.steps.iter().map(|s| s.vertex_name.as_str())
    }
}

impl DeltaComplex {
    /// The unique `τ ⪰ σ` with `V(τ) = V(σ) ∪ {v′}`, if exactly one exists.
    pub fn unique_coface_extension(&self, s: SimplexId, v: SimplexId) -> Option<SimplexId> {
        if self.contains_vertex(s, v) {
            return Some(s);
        }
        let mut target: Vec<SimplexId> = self.vertex_set(s).to_vec();
        let pos = target.binary_search(&v).unwrap_err();
        target.insert(pos, v);
        let mut found = self.simplices_with_vertex_set(&target).iter().copied().filter(|&t| self.le(s, t));
        let t = found.next()?;
        found.next().is_none().then_some(t)
    }

    /// Witness that `v` is dominated by `w`, if it is.
    pub fn dominated_by(&self, v: SimplexId, w: SimplexId) -> Option<DominationWitness> {
        if v == w || self.dim(v) != 0 || self.dim(w) != 0 {
            return None;
        }
        let mut cofaces = Vec::new();
        for &s in self.relation().up_set(v) {
            cofaces.push((s, self.unique_coface_extension(s, w)?));
        }
        let edge = cofaces[0].1;
        debug_assert_eq!(cofaces[0].0, v);
        Some(DominationWitness { vertex: v, dominating: w, edge, cofaces })
    }

    /// First vertex dominating `v` in identifier order.
    pub fn find_domination(&self, v: SimplexId) -> Option<DominationWitness> {
        // A dominating vertex shares an edge with v.
        let mut neighbours = BTreeSet::new();
        for &e in self.relation().cofaces(v) {
            neighbours.extend(self.vertex_set(e).iter().copied().filter(|&u| u != v));
        }
        neighbours.into_iter().find_map(|w| self.dominated_by(v, w))
    }

    pub fn is_domination_witness(&self, w: &DominationWitness) -> bool {
        w.vertex.0 < self.simplex_count()
            && w.dominating.0 < self.simplex_count()
            && self.dominated_by(w.vertex, w.dominating).as_ref() == Some(w)
    }

    /// First dominated vertex in identifier order.
    pub fn first_dominated(&self) -> Option<DominationWitness> {
        self.vertices().find_map(|v| self.find_domination(v))
    }

    /// No vertex is dominated.
    pub fn is_minimal(&self) -> bool {
        self.first_dominated().is_none()
    }

    /// Deletes every simplex containing `v`.
    pub fn remove_vertex(&self, v: SimplexId) -> DeltaComplex {
        self.subcomplex(|s| !self.contains_vertex(s, v))
    }

    /// The retraction `r_v: X → X∖v` of a domination witness.
    pub fn retraction_map(&self, w: &DominationWitness) -> (DeltaComplex, DeltaMap) {
        let sub = self.remove_vertex(w.vertex);
        let images = self
            .simplex_ids()
            .map(|s| {
                let target = match w.coface(s) {
                    None => s,
                    Some(t) => self.face(t, w.vertex).expect("τ(σ) contains v"),
                };
                sub.by_name(self.name(target)).expect("image avoids v")
            })
            .collect();
        (sub, DeltaMap { images })
    }

    /// `inclusion ∘ r_v` as a self-map of `X`.
    pub fn retraction_endomap(&self, w: &DominationWitness) -> DeltaMap {
        let (sub, r) = self.retraction_map(w);
        DeltaMap::inclusion(&sub, self).expect("subcomplex").after(&r)
    }

    /// Greedy strong collapse: remove the first dominated vertex in
    /// identifier order until the complex is minimal.
    pub fn core(&self) -> Result<(DeltaComplex, DeltaCollapseSequence), ComplexError> {
        if self.is_empty() {
            return Err(ComplexError::EmptyComplex);
        }
        let mut current = self.clone();
        let mut steps = Vec::new();
        // Domination of v only depends on simplices containing v, so removing
        // a vertex that shares no edge with v leaves its status unchanged.
        let mut known_minimal: BTreeSet<String> = BTreeSet::new();
        loop {
            let mut found = None;
            for v in current.vertices() {
                if known_minimal.contains(current.name(v)) {
                    continue;
                }
                match current.find_domination(v) {
                    Some(w) => {
                        found = Some(w);
                        break;
                    }
                    None => {
                        known_minimal.insert(current.name(v).into());
                    }
                }
            }
            let Some(w) = found else { break };
            for &e in current.relation().cofaces(w.vertex) {
                for &u in current.vertex_set(e) {
                    known_minimal.remove(current.name(u));
                }
            }
            steps.push(DeltaCollapseStep {
                snapshot: current.digest(),
                vertex_name: current.name(w.vertex).into(),
                dominating_name: current.name(w.dominating).into(),
                witness: w.clone(),
            });
            current = current.remove_vertex(w.vertex);
        }
        Ok((current.clone(), DeltaCollapseSequence { steps, result: current }))
    }

    /// The core is a single vertex. False for the empty complex.
    pub fn is_strongly_collapsible(&self) -> bool {
        matches!(self.core(), Ok((c, _)) if c.simplex_count() == 1)
    }

    /// Cores are isomorphic. Two empty complexes count as equivalent.
    pub fn same_strong_homotopy_type(&self, other: &DeltaComplex) -> bool {
        match (self.core(), other.core()) {
            (Ok((a, _)), Ok((b, _))) => a.isomorphism_to(&b).is_some(),
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// Classical domination test for simplicial complexes: every maximal
    /// simplex containing `v` also contains `w`.
    pub fn maximal_simplices_criterion(&self, v: SimplexId, w: SimplexId) -> bool {
        v != w && self.relation().up_set(v).iter().filter(|&&s| self.is_maximal(s)).all(|&s| self.contains_vertex(s, w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::is_contiguous;
    use crate::fixtures;

    fn id(x: &DeltaComplex, n: &str) -> SimplexId {
        x.by_name(n).unwrap()
    }

    #[test]
    fn circle_vertex_extension_is_ambiguous() {
        let s1 = fixtures::circle_complex();
        assert_eq!(s1.unique_coface_extension(id(&s1, "a"), id(&s1, "b")), None);
        assert!(s1.find_domination(id(&s1, "a")).is_none());
        assert!(s1.find_domination(id(&s1, "b")).is_none());
        // Both maximal simplices contain both vertices, yet nothing is dominated.
        assert!(s1.maximal_simplices_criterion(id(&s1, "a"), id(&s1, "b")));
    }

    #[test]
    fn full_triangle_edge_extends_to_the_triangle() {
        let t = fixtures::full_triangle();
        assert_eq!(t.unique_coface_extension(id(&t, "a,b"), id(&t, "c")), Some(id(&t, "a,b,c")));
        let w = t.find_domination(id(&t, "a")).unwrap();
        assert_eq!(w.dominating, id(&t, "b"));
        assert_eq!(t.find_domination(id(&t, "c")).unwrap().dominating, id(&t, "a"));
    }

    #[test]
    fn disc_extensions_and_domination() {
        let d = fixtures::disc_complex();
        assert_eq!(d.unique_coface_extension(id(&d, "bc"), id(&d, "a")), Some(id(&d, "T1")));
        let w = d.find_domination(id(&d, "b")).unwrap();
        assert_eq!(w.dominating, id(&d, "a"));
        assert_eq!(w.edge, id(&d, "ab"));
        assert_eq!(w.coface(id(&d, "bc")), Some(id(&d, "T1")));
        assert_eq!(w.coface(id(&d, "bc2")), Some(id(&d, "T2")));
        assert!(d.is_domination_witness(&w));
    }

    #[test]
    fn remove_vertex_examples() {
        let d = fixtures::disc_complex();
        let r = d.remove_vertex(id(&d, "b"));
        let names: Vec<&str> = r.simplex_ids().map(|s| r.name(s)).collect();
        assert_eq!(names, ["a", "c", "ac"]);
        let s1 = fixtures::circle_complex();
        let r = s1.remove_vertex(id(&s1, "a"));
        assert_eq!(r.simplex_count(), 1);
        assert_eq!(r.name(SimplexId(0)), "b");
    }

    #[test]
    fn disc_retraction_sends_bc_to_ac() {
        let d = fixtures::disc_complex();
        let w = d.find_domination(id(&d, "b")).unwrap();
        let (sub, r) = d.retraction_map(&w);
        assert!(r.is_valid(&d, &sub));
        assert_eq!(sub.name(r.image(id(&d, "bc"))), "ac");
        let endo = d.retraction_endomap(&w);
        assert!(is_contiguous(&d, &d, &endo, &DeltaMap::identity(&d)));
        // Identity on the subcomplex.
        for s in sub.simplex_ids() {
            assert_eq!(endo.image(id(&d, sub.name(s))), id(&d, sub.name(s)));
        }
    }

    #[test]
    fn cores() {
        let t = fixtures::full_triangle();
        let (c, seq) = t.core().unwrap();
        assert_eq!(c.simplex_count(), 1);
        assert_eq!(seq.replay(&t).unwrap(), c);

        let s1 = fixtures::circle_complex();
        assert_eq!(s1.core().unwrap().0, s1);
        assert!(!s1.is_strongly_collapsible());

        let d = fixtures::disc_complex();
        let (c, seq) = d.core().unwrap();
        assert_eq!(c.simplex_count(), 1);
        assert_eq!(seq.steps[0].vertex_name, "b");
        assert_eq!(seq.replay(&d).unwrap(), c);

        let s2 = fixtures::sphere_complex();
        assert!(s2.is_minimal());
        assert!(!s2.is_strongly_collapsible());
        assert!(fixtures::point_complex().is_strongly_collapsible());
        assert_eq!(DeltaComplex::empty().core().unwrap_err(), ComplexError::EmptyComplex);
    }

    #[test]
    fn tampered_sequence_fails_replay() {
        let d = fixtures::disc_complex();
        let (_, mut seq) = d.core().unwrap();
        seq.steps[0].snapshot = Digest(0);
        assert_eq!(seq.replay(&d), Err(DeltaReplayError::SnapshotMismatch(0)));
    }

    #[test]
    fn circle_is_not_equivalent_to_its_subdivision() {
        let s1 = fixtures::circle_complex();
        let square = DeltaComplex::from_simplicial_complex(&[
            alloc::vec!["a", "x"],
            alloc::vec!["x", "b"],
            alloc::vec!["b", "y"],
            alloc::vec!["y", "a"],
        ]);
        assert!(!s1.same_strong_homotopy_type(&square));
        assert!(s1.same_strong_homotopy_type(&s1));
        assert!(fixtures::full_triangle().same_strong_homotopy_type(&fixtures::point_complex()));
    }
}
