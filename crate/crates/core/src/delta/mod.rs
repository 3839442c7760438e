//! Unordered Δ-complexes.
//!
//! A Δ-complex is a graded set of simplices. Every `n`-simplex carries a set
//! of `n + 1` vertices and, for each of those vertices `v`, a face `d_v` of
//! dimension `n - 1` whose vertex set omits `v`. Faces commute:
//! `d_w d_v σ = d_v d_w σ`. Unlike a simplicial complex, distinct simplices
//! may share a vertex set, so simplices are identified by opaque names.

mod domination;
mod iso;
mod map;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::digest::{Digest, DigestWriter};

pub use domination::{DeltaCollapseSequence, DeltaCollapseStep, DeltaReplayError, DominationWitness};
pub use iso::{are_isomorphic_delta, DeltaIsomorphism};
pub use map::{contiguity_witness, is_contiguous, DeltaMap, DeltaMapError};

/// Index of a simplex inside one particular [`DeltaComplex`]. Vertices come
/// first, so a vertex's index is also its position among the vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexId(pub usize);

/// Unvalidated description of a Δ-complex, keyed by names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawComplex {
    pub simplices: Vec<RawSimplex>,
    pub faces: Vec<RawFace>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RawSimplex {
    pub id: String,
    pub dimension: usize,
    pub vertices: Vec<String>,
}

/// Face table entry `d_vertex(simplex) = result`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RawFace {
    pub simplex: String,
    pub vertex: String,
    pub result: String,
}

impl RawComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        let id = id.into();
        self.simplices.push(RawSimplex { id: id.clone(), dimension: 0, vertices: alloc::vec![id] });
        self
    }

    /// Adds a simplex of dimension `vertices.len() - 1`.
    pub fn simplex(mut self, id: impl Into<String>, vertices: &[&str]) -> Self {
        self.simplices.push(RawSimplex {
            id: id.into(),
            dimension: vertices.len().saturating_sub(1),
            vertices: vertices.iter().map(|&v| v.into()).collect(),
        });
        self
    }

    pub fn face(mut self, simplex: impl Into<String>, vertex: impl Into<String>, result: impl Into<String>) -> Self {
        self.faces.push(RawFace { simplex: simplex.into(), vertex: vertex.into(), result: result.into() });
        self
    }

    pub fn validate(&self) -> Result<DeltaComplex, ComplexError> {
        DeltaComplex::validate(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("duplicate simplex `{0}`")]
    DuplicateSimplex(String),
    #[error("simplex `{simplex}` refers to unknown vertex `{vertex}`")]
    UnknownVertex { simplex: String, vertex: String },
    #[error("simplex `{0}` does not have dimension + 1 distinct vertices")]
    VertexSetSizeMismatch(String),
    #[error("vertex `{0}` must have itself as its only vertex")]
    VertexNotOwnVertex(String),
    #[error("face of `{simplex}` at `{vertex}` is missing")]
    MissingFace { simplex: String, vertex: String },
    #[error("face entry of `{simplex}` at `{vertex}` does not belong to any face slot")]
    UnexpectedFace { simplex: String, vertex: String },
    #[error("conflicting face entries for `{simplex}` at `{vertex}`")]
    ConflictingFace { simplex: String, vertex: String },
    #[error("face of `{simplex}` at `{vertex}` does not delete exactly `{vertex}`")]
    Condition1Violation { simplex: String, vertex: String },
    #[error("faces of `{simplex}` at `{v}` and `{w}` do not commute")]
    Condition2Violation { simplex: String, v: String, w: String },
    #[error("the complex is empty")]
    EmptyComplex,
}

impl ComplexError {
    /// Stable tag naming the error kind.
    pub fn tag(&self) -> &'static str {
        match self {
            ComplexError::DuplicateSimplex(_) => "DuplicateSimplex",
            ComplexError::UnknownVertex { .. } => "UnknownVertex",
            ComplexError::VertexSetSizeMismatch(_) => "VertexSetSizeMismatch",
            ComplexError::VertexNotOwnVertex(_) => "VertexNotOwnVertex",
            ComplexError::MissingFace { .. } => "MissingFace",
            ComplexError::UnexpectedFace { .. } => "UnexpectedFace",
            ComplexError::ConflictingFace { .. } => "ConflictingFace",
            ComplexError::Condition1Violation { .. } => "Condition1Violation",
            ComplexError::Condition2Violation { .. } => "Condition2Violation",
            ComplexError::EmptyComplex => "EmptyComplex",
        }
    }
}

/// The codimension-one face relation `σ ≺₁ τ` and its reflexive-transitive
/// closure `σ ⪯ τ`, precomputed once per complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRelation {
    cofaces: Vec<Vec<SimplexId>>,
    up: Vec<Vec<SimplexId>>,
}

impl FaceRelation {
    fn build(dims: &[usize], faces: &[Vec<SimplexId>]) -> Self {
        let n = dims.len();
        let mut cofaces = alloc::vec![Vec::new(); n];
        for (t, fs) in faces.iter().enumerate() {
            for &s in fs {
                cofaces[s.0].push(SimplexId(t));
            }
        }
        for c in &mut cofaces {
            c.sort_unstable();
            c.dedup();
        }
        // Simplices are sorted by dimension, so walking backwards visits every
        // coface before its faces.
        let mut up: Vec<Vec<SimplexId>> = alloc::vec![Vec::new(); n];
        for s in (0..n).rev() {
            let mut set = BTreeSet::new();
            set.insert(SimplexId(s));
            for &t in &cofaces[s] {
                set.extend(up[t.0].iter().copied());
            }
            up[s] = set.into_iter().collect();
        }
        FaceRelation { cofaces, up }
    }

    /// Simplices `τ` with `σ ≺₁ τ`.
    pub fn cofaces(&self, s: SimplexId) -> &[SimplexId] {
        &self.cofaces[s.0]
    }

    /// All `τ` with `σ ⪯ τ`, `σ` included, in index order.
    pub fn up_set(&self, s: SimplexId) -> &[SimplexId] {
        &self.up[s.0]
    }

    pub fn le(&self, s: SimplexId, t: SimplexId) -> bool {
        self.up[s.0].binary_search(&t).is_ok()
    }
}

/// A validated Δ-complex. Simplices are sorted by `(dimension, name)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplex {
    names: Vec<String>,
    dims: Vec<usize>,
    vertex_sets: Vec<Vec<SimplexId>>,
    /// `faces[σ][i]` is the face of `σ` opposite `vertex_sets[σ][i]`.
    faces: Vec<Vec<SimplexId>>,
    dim_starts: Vec<usize>,
    name_index: BTreeMap<String, SimplexId>,
    by_vertex_set: BTreeMap<Vec<SimplexId>, Vec<SimplexId>>,
    relation: FaceRelation,
    simplicial: bool,
}

impl DeltaComplex {
    pub fn validate(raw: &RawComplex) -> Result<Self, ComplexError> {
        let mut order: Vec<&RawSimplex> = raw.simplices.iter().collect();
        order.sort_by(|a, b| (a.dimension, &a.id).cmp(&(b.dimension, &b.id)));
        let mut name_index = BTreeMap::new();
        for (i, s) in order.iter().enumerate() {
            if name_index.insert(s.id.clone(), SimplexId(i)).is_some() {
                return Err(ComplexError::DuplicateSimplex(s.id.clone()));
            }
        }
        let n = order.len();
        let mut vertex_sets = Vec::with_capacity(n);
        for (i, s) in order.iter().enumerate() {
            let mut set = Vec::with_capacity(s.vertices.len());
            for v in &s.vertices {
                match name_index.get(v) {
                    Some(&id) if order[id.0].dimension == 0 => set.push(id),
                    _ => return Err(ComplexError::UnknownVertex { simplex: s.id.clone(), vertex: v.clone() }),
                }
            }
            set.sort_unstable();
            set.dedup();
            if set.len() != s.dimension + 1 {
                return Err(ComplexError::VertexSetSizeMismatch(s.id.clone()));
            }
            if s.dimension == 0 && set[0] != SimplexId(i) {
                return Err(ComplexError::VertexNotOwnVertex(s.id.clone()));
            }
            vertex_sets.push(set);
        }

        let mut faces: Vec<Vec<Option<SimplexId>>> = order
            .iter()
            .map(|s| if s.dimension == 0 { Vec::new() } else { alloc::vec![None; s.dimension + 1] })
            .collect();
        for entry in &raw.faces {
            let unexpected =
                || ComplexError::UnexpectedFace { simplex: entry.simplex.clone(), vertex: entry.vertex.clone() };
            let s = *name_index.get(&entry.simplex).ok_or_else(unexpected)?;
            let v = *name_index.get(&entry.vertex).ok_or_else(unexpected)?;
            let slot = vertex_sets[s.0].binary_search(&v).map_err(|_| unexpected())?;
            if faces[s.0].is_empty() {
                return Err(unexpected());
            }
            let result = *name_index.get(&entry.result).ok_or_else(|| ComplexError::MissingFace {
                simplex: entry.simplex.clone(),
                vertex: entry.vertex.clone(),
            })?;
            match faces[s.0][slot] {
                Some(prev) if prev != result => {
                    return Err(ComplexError::ConflictingFace {
                        simplex: entry.simplex.clone(),
                        vertex: entry.vertex.clone(),
                    })
                }
                _ => faces[s.0][slot] = Some(result),
            }
        }
        let mut resolved = Vec::with_capacity(n);
        for (s, fs) in faces.into_iter().enumerate() {
            let mut row = Vec::with_capacity(fs.len());
            for (slot, f) in fs.into_iter().enumerate() {
                let f = f.ok_or_else(|| ComplexError::MissingFace {
                    simplex: order[s].id.clone(),
                    vertex: order[vertex_sets[s][slot].0].id.clone(),
                })?;
                row.push(f);
            }
            resolved.push(row);
        }

        for s in 0..n {
            for (&v, &f) in vertex_sets[s].iter().zip(&resolved[s]) {
                let expected: Vec<SimplexId> = vertex_sets[s].iter().copied().filter(|&w| w != v).collect();
                if vertex_sets[f.0] != expected {
                    return Err(ComplexError::Condition1Violation {
                        simplex: order[s].id.clone(),
                        vertex: order[v.0].id.clone(),
                    });
                }
            }
        }
        let face_at = |s: SimplexId, v: SimplexId| -> SimplexId {
            let slot = vertex_sets[s.0].binary_search(&v).expect("vertex of simplex");
            resolved[s.0][slot]
        };
        for s in 0..n {
            if order[s].dimension < 2 {
                continue;
            }
            let vs = &vertex_sets[s];
            for (i, &v) in vs.iter().enumerate() {
                for &w in &vs[i + 1..] {
                    let s = SimplexId(s);
                    if face_at(face_at(s, v), w) != face_at(face_at(s, w), v) {
                        return Err(ComplexError::Condition2Violation {
                            simplex: order[s.0].id.clone(),
                            v: order[v.0].id.clone(),
                            w: order[w.0].id.clone(),
                        });
                    }
                }
            }
        }

        let names = order.iter().map(|s| s.id.clone()).collect();
        let dims = order.iter().map(|s| s.dimension).collect();
        Ok(Self::from_parts(names, dims, vertex_sets, resolved))
    }

    /// Assembles the lookup tables from parts already sorted by
    /// `(dimension, name)` and satisfying the face conditions.
    pub(crate) fn from_parts(
        names: Vec<String>,
        dims: Vec<usize>,
        vertex_sets: Vec<Vec<SimplexId>>,
        faces: Vec<Vec<SimplexId>>,
    ) -> Self {
        let top = dims.last().copied();
        let mut dim_starts = Vec::new();
        if let Some(top) = top {
            for d in 0..=top + 1 {
                dim_starts.push(dims.partition_point(|&x| x < d));
            }
        }
        let name_index = names.iter().enumerate().map(|(i, n)| (n.clone(), SimplexId(i))).collect();
        let mut by_vertex_set: BTreeMap<Vec<SimplexId>, Vec<SimplexId>> = BTreeMap::new();
        for (i, vs) in vertex_sets.iter().enumerate() {
            by_vertex_set.entry(vs.clone()).or_default().push(SimplexId(i));
        }
        let simplicial = by_vertex_set.values().all(|v| v.len() == 1);
        let relation = FaceRelation::build(&dims, &faces);
        DeltaComplex { names, dims, vertex_sets, faces, dim_starts, name_index, by_vertex_set, relation, simplicial }
    }

    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new(), Vec::new(), Vec::new())
    }

    /// The simplicial complex generated by `facets`: one simplex per nonempty
    /// subset of a facet, named by its sorted vertex names joined with `,`.
    pub fn from_simplicial_complex<S: AsRef<str>>(facets: &[Vec<S>]) -> DeltaComplex {
        let mut sets: BTreeSet<Vec<String>> = BTreeSet::new();
        for facet in facets {
            let mut vs: Vec<String> = facet.iter().map(|v| String::from(v.as_ref())).collect();
            vs.sort();
            vs.dedup();
            assert!(vs.len() < usize::BITS as usize, "facet too large");
            for mask in 1u64..(1u64 << vs.len()) {
                sets.insert(
                    vs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v.clone()).collect(),
                );
            }
        }
        let name = |vs: &[String]| vs.join(",");
        let mut raw = RawComplex::new();
        for vs in &sets {
            raw.simplices.push(RawSimplex { id: name(vs), dimension: vs.len() - 1, vertices: vs.clone() });
            if vs.len() > 1 {
                for v in vs {
                    let rest: Vec<String> = vs.iter().filter(|w| *w != v).cloned().collect();
                    raw.faces.push(RawFace { simplex: name(vs), vertex: v.clone(), result: name(&rest) });
                }
            }
        }
        raw.validate().expect("downward closure is a simplicial complex")
    }

    pub fn simplex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.count_of_dim(0)
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Highest simplex dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.dims.last().copied()
    }

    pub fn count_of_dim(&self, d: usize) -> usize {
        self.simplices_of_dim(d).len()
    }

    pub fn simplices_of_dim(&self, d: usize) -> core::ops::Range<usize> {
        if d + 1 < self.dim_starts.len() {
            self.dim_starts[d]..self.dim_starts[d + 1]
        } else {
            0..0
        }
    }

    pub fn simplex_ids(&self) -> impl DoubleEndedIterator<Item = SimplexId> + ExactSizeIterator {
        (0..self.names.len()).map(SimplexId)
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = SimplexId> + ExactSizeIterator {
        (0..self.vertex_count()).map(SimplexId)
    }

    pub fn name(&self, s: SimplexId) -> &str {
        &self.names[s.0]
    }

    pub fn by_name(&self, name: &str) -> Option<SimplexId> {
        self.name_index.get(name).copied()
    }

    pub fn dim(&self, s: SimplexId) -> usize {
        self.dims[s.0]
    }

    /// Sorted vertex set `V(σ)`.
    pub fn vertex_set(&self, s: SimplexId) -> &[SimplexId] {
        &self.vertex_sets[s.0]
    }

    pub fn contains_vertex(&self, s: SimplexId, v: SimplexId) -> bool {
        self.vertex_sets[s.0].binary_search(&v).is_ok()
    }

    /// `d_v(σ)` for a vertex `v` of `σ` with `dim σ ≥ 1`.
    pub fn face(&self, s: SimplexId, v: SimplexId) -> Option<SimplexId> {
        let slot = self.vertex_sets[s.0].binary_search(&v).ok()?;
        self.faces[s.0].get(slot).copied()
    }

    /// Faces of `σ`, aligned with [`vertex_set`](Self::vertex_set).
    pub fn faces(&self, s: SimplexId) -> &[SimplexId] {
        &self.faces[s.0]
    }

    pub fn relation(&self) -> &FaceRelation {
        &self.relation
    }

    /// `σ ⪯ τ` in the face poset.
    pub fn le(&self, s: SimplexId, t: SimplexId) -> bool {
        self.relation.le(s, t)
    }

    /// Simplices whose vertex set is exactly `vertices` (sorted).
    pub fn simplices_with_vertex_set(&self, vertices: &[SimplexId]) -> &[SimplexId] {
        self.by_vertex_set.get(vertices).map(Vec::as_slice).unwrap_or(&[])
    }

    /// True when no two simplices share a vertex set.
    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    pub fn is_maximal(&self, s: SimplexId) -> bool {
        self.relation.cofaces(s).is_empty()
    }

    /// `χ(X)` Euler characteristic: alternating count of simplices by dimension.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|&d| if d % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// The subcomplex on the simplices selected by `keep`, which must be
    /// closed under taking faces.
    pub fn subcomplex(&self, keep: impl Fn(SimplexId) -> bool) -> DeltaComplex {
        let mut map = alloc::vec![None; self.names.len()];
        let mut kept = Vec::new();
        for s in self.simplex_ids() {
            if keep(s) {
                map[s.0] = Some(SimplexId(kept.len()));
                kept.push(s);
            }
        }
        let relabel = |s: &SimplexId| map[s.0].expect("subcomplex is closed under faces");
        let names = kept.iter().map(|s| self.names[s.0].clone()).collect();
        let dims = kept.iter().map(|s| self.dims[s.0]).collect();
        let vertex_sets = kept.iter().map(|s| self.vertex_sets[s.0].iter().map(relabel).collect()).collect();
        let faces = kept.iter().map(|s| self.faces[s.0].iter().map(relabel).collect()).collect();
        Self::from_parts(names, dims, vertex_sets, faces)
    }

    pub fn to_raw(&self) -> RawComplex {
        let mut raw = RawComplex::new();
        for s in self.simplex_ids() {
            raw.simplices.push(RawSimplex {
                id: self.names[s.0].clone(),
                dimension: self.dims[s.0],
                vertices: self.vertex_sets[s.0].iter().map(|v| self.names[v.0].clone()).collect(),
            });
            for (v, f) in self.vertex_sets[s.0].iter().zip(&self.faces[s.0]) {
                raw.faces.push(RawFace {
                    simplex: self.names[s.0].clone(),
                    vertex: self.names[v.0].clone(),
                    result: self.names[f.0].clone(),
                });
            }
        }
        raw
    }

    pub fn digest(&self) -> Digest {
        let mut w = DigestWriter::new("complex");
        w.num(self.names.len());
        for s in self.simplex_ids() {
            w.str(&self.names[s.0]);
            w.num(self.dims[s.0]);
            for (v, f) in
                self.vertex_sets[s.0].iter().zip(self.faces[s.0].iter().map(Some).chain(core::iter::repeat(None)))
            {
                w.num(v.0);
                w.num(f.map_or(usize::MAX, |f| f.0));
            }
        }
        w.finish()
    }
}
