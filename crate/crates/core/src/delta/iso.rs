//! Isomorphism search between Δ-complexes.

use alloc::vec::Vec;

use super::{DeltaComplex, DeltaMap, SimplexId};

/// A dimension-preserving simplex bijection commuting with all face maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaIsomorphism {
    pub simplices: Vec<SimplexId>,
}

impl DeltaIsomorphism {
    pub fn as_map(&self) -> DeltaMap {
        DeltaMap { images: self.simplices.clone() }
    }

    pub fn check(&self, x: &DeltaComplex, y: &DeltaComplex) -> bool {
        if x.simplex_count() != y.simplex_count() || self.simplices.len() != x.simplex_count() {
            return false;
        }
        let mut seen = alloc::vec![false; y.simplex_count()];
        for s in &self.simplices {
            if s.0 >= seen.len() || core::mem::replace(&mut seen[s.0], true) {
                return false;
            }
        }
        x.simplex_ids().all(|s| {
            let t = self.simplices[s.0];
            x.dim(s) == y.dim(t)
                && x.vertex_set(s)
                    .iter()
                    .zip(x.faces(s))
                    .all(|(&v, &f)| y.face(t, self.simplices[v.0]) == Some(self.simplices[f.0]))
        }) && self.as_map().is_valid(x, y)
    }
}

/// Number of simplices of each dimension containing `v`.
fn signature(x: &DeltaComplex, v: SimplexId) -> Vec<usize> {
    let mut counts = Vec::new();
    for &s in x.relation().up_set(v) {
        let d = x.dim(s);
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
    }
    counts
}

struct Search<'a> {
    x: &'a DeltaComplex,
    y: &'a DeltaComplex,
    candidates: Vec<Vec<SimplexId>>,
    map: Vec<Option<SimplexId>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn edge_count(c: &DeltaComplex, a: SimplexId, b: SimplexId) -> usize {
        let key = if a < b { [a, b] } else { [b, a] };
        c.simplices_with_vertex_set(&key).len()
    }

    fn vertex(&mut self, i: usize) -> bool {
        if i == self.x.vertex_count() {
            return self.simplex(i);
        }
        let v = SimplexId(i);
        for k in 0..self.candidates[i].len() {
            let w = self.candidates[i][k];
            if self.used[w.0] {
                continue;
            }
            let ok = (0..i).all(|j| {
                let image = self.map[j].expect("assigned");
                Self::edge_count(self.x, v, SimplexId(j)) == Self::edge_count(self.y, w, image)
            });
            if !ok {
                continue;
            }
            self.map[i] = Some(w);
            self.used[w.0] = true;
            if self.vertex(i + 1) {
                return true;
            }
            self.map[i] = None;
            self.used[w.0] = false;
        }
        false
    }

    fn simplex(&mut self, i: usize) -> bool {
        if i == self.x.simplex_count() {
            return true;
        }
        let s = SimplexId(i);
        let mut vs: Vec<SimplexId> = self.x.vertex_set(s).iter().map(|v| self.map[v.0].expect("vertex")).collect();
        vs.sort_unstable();
        let options: Vec<SimplexId> = self.y.simplices_with_vertex_set(&vs).to_vec();
        for t in options {
            if self.used[t.0] {
                continue;
            }
            let faces_ok = self.x.vertex_set(s).iter().zip(self.x.faces(s)).all(|(&v, &f)| {
                self.y.face(t, self.map[v.0].expect("vertex")) == Some(self.map[f.0].expect("lower dimension first"))
            });
            if !faces_ok {
                continue;
            }
            self.map[i] = Some(t);
            self.used[t.0] = true;
            if self.simplex(i + 1) {
                return true;
            }
            self.map[i] = None;
            self.used[t.0] = false;
        }
        false
    }
}

impl DeltaComplex {
    /// Searches for an isomorphism `self → other`: a vertex bijection,
    /// pruned by per-dimension degree signatures, extended simplex by simplex.
    pub fn isomorphism_to(&self, other: &DeltaComplex) -> Option<DeltaIsomorphism> {
        if self.simplex_count() != other.simplex_count() {
            return None;
        }
        let top = self.dimension().unwrap_or(0).max(other.dimension().unwrap_or(0));
        if (0..=top).any(|d| self.count_of_dim(d) != other.count_of_dim(d)) {
            return None;
        }
        let theirs: Vec<Vec<usize>> = other.vertices().map(|w| signature(other, w)).collect();
        let candidates: Vec<Vec<SimplexId>> = self
            .vertices()
            .map(|v| {
                let sig = signature(self, v);
                other.vertices().filter(|w| theirs[w.0] == sig).collect()
            })
            .collect();
        if candidates.iter().any(Vec::is_empty) {
            return None;
        }
        let mut search = Search {
            x: self,
            y: other,
            candidates,
            map: alloc::vec![None; self.simplex_count()],
            used: alloc::vec![false; other.simplex_count()],
        };
        if !search.vertex(0) {
            return None;
        }
        let iso = DeltaIsomorphism { simplices: search.map.into_iter().map(|s| s.expect("complete")).collect() };
        debug_assert!(iso.check(self, other));
        Some(iso)
    }
}

/// Convenience wrapper for [`DeltaComplex::isomorphism_to`].
pub fn are_isomorphic_delta(x: &DeltaComplex, y: &DeltaComplex) -> Option<DeltaIsomorphism> {
    x.isomorphism_to(y)
}
