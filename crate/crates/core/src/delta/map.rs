//! Δ-maps and contiguity.

use alloc::vec::Vec;

use thiserror::Error;

use super::{DeltaComplex, SimplexId};

/// A Δ-map `f: X → Y`, stored as the image of every simplex of `X`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaMap {
    pub images: Vec<SimplexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DeltaMapError {
    #[error("map has {found} images, source has {expected} simplices")]
    WrongLength { expected: usize, found: usize },
    #[error("image of `{0}` is not a simplex of the target")]
    UnknownSimplex(usize),
    #[error("image of vertex `{0}` is not a vertex")]
    VertexImageNotVertex(usize),
    #[error("image of `{0}` has higher dimension")]
    DimensionIncrease(usize),
    #[error("vertices of the image of `{0}` are not the images of its vertices")]
    VertexSetMismatch(usize),
    #[error("face of `{simplex}` at vertex `{vertex}` is not mapped compatibly")]
    FaceMismatch { simplex: usize, vertex: usize },
}

impl DeltaMapError {
    pub fn tag(&self) -> &'static str {
        match self {
            DeltaMapError::WrongLength { .. } => "WrongLength",
            DeltaMapError::UnknownSimplex(_) => "UnknownSimplex",
            DeltaMapError::VertexImageNotVertex(_) => "VertexImageNotVertex",
            DeltaMapError::DimensionIncrease(_) => "DimensionIncrease",
            DeltaMapError::VertexSetMismatch(_) => "VertexSetMismatch",
            DeltaMapError::FaceMismatch { .. } => "FaceMismatch",
        }
    }
}

impl DeltaMap {
    pub fn identity(x: &DeltaComplex) -> Self {
        DeltaMap { images: x.simplex_ids().collect() }
    }

    /// Constant map onto vertex `v` of `y`.
    pub fn constant(x: &DeltaComplex, v: SimplexId) -> Self {
        DeltaMap { images: alloc::vec![v; x.simplex_count()] }
    }

    /// Inclusion of `sub` into `x`, matching simplices by name.
    pub fn inclusion(sub: &DeltaComplex, x: &DeltaComplex) -> Option<Self> {
        let images = sub.simplex_ids().map(|s| x.by_name(sub.name(s))).collect::<Option<Vec<_>>>()?;
        Some(DeltaMap { images })
    }

    pub fn image(&self, s: SimplexId) -> SimplexId {
        self.images[s.0]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &DeltaMap) -> DeltaMap {
        DeltaMap { images: first.images.iter().map(|s| self.images[s.0]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, s)| s.0 == i)
    }

    /// Checks the Δ-map conditions for `self: x → y`.
    ///
    /// Vertices go to vertices, `V(fσ) = f(V(σ))`, and for each vertex `w`
    /// of `σ`: if `f(w)` has a single preimage among the vertices of `σ`
    /// then `f(d_w σ) = d_{f(w)} f(σ)`, otherwise `f(d_w σ) = f(σ)`.
    pub fn validate(&self, x: &DeltaComplex, y: &DeltaComplex) -> Result<(), DeltaMapError> {
        if self.images.len() != x.simplex_count() {
            return Err(DeltaMapError::WrongLength { expected: x.simplex_count(), found: self.images.len() });
        }
        if let Some(i) = self.images.iter().position(|s| s.0 >= y.simplex_count()) {
            return Err(DeltaMapError::UnknownSimplex(i));
        }
        for v in x.vertices() {
            if y.dim(self.image(v)) != 0 {
                return Err(DeltaMapError::VertexImageNotVertex(v.0));
            }
        }
        let mut buf = Vec::new();
        for s in x.simplex_ids() {
            let fs = self.image(s);
            if y.dim(fs) > x.dim(s) {
                return Err(DeltaMapError::DimensionIncrease(s.0));
            }
            buf.clear();
            buf.extend(x.vertex_set(s).iter().map(|&v| self.image(v)));
            buf.sort_unstable();
            buf.dedup();
            if buf.as_slice() != y.vertex_set(fs) {
                return Err(DeltaMapError::VertexSetMismatch(s.0));
            }
            if x.dim(s) == 0 {
                continue;
            }
            for (&w, &face) in x.vertex_set(s).iter().zip(x.faces(s)) {
                let fw = self.image(w);
                let preimages = x.vertex_set(s).iter().filter(|&&u| self.image(u) == fw).count();
                let expected = if preimages == 1 { y.face(fs, fw) } else { Some(fs) };
                if expected != Some(self.image(face)) {
                    return Err(DeltaMapError::FaceMismatch { simplex: s.0, vertex: w.0 });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, x: &DeltaComplex, y: &DeltaComplex) -> bool {
        self.validate(x, y).is_ok()
    }
}

/// The unique `τ ⪰ fσ, gσ` with `V(τ) = V(fσ) ∪ V(gσ)`, if there is one.
pub fn contiguity_witness(y: &DeltaComplex, f: &DeltaMap, g: &DeltaMap, s: SimplexId) -> Option<SimplexId> {
    let (fs, gs) = (f.image(s), g.image(s));
    let mut union: Vec<SimplexId> = y.vertex_set(fs).iter().chain(y.vertex_set(gs)).copied().collect();
    union.sort_unstable();
    union.dedup();
    let mut found = y.simplices_with_vertex_set(&union).iter().copied().filter(|&t| y.le(fs, t) && y.le(gs, t));
    let t = found.next()?;
    found.next().is_none().then_some(t)
}

/// `f` and `g` are contiguous: every simplex admits a contiguity witness.
pub fn is_contiguous(x: &DeltaComplex, y: &DeltaComplex, f: &DeltaMap, g: &DeltaMap) -> bool {
    x.simplex_ids().all(|s| contiguity_witness(y, f, g, s).is_some())
}
