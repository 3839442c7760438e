//! Finite acyclic categories.
//!
//! An acyclic category is a category whose only endomorphisms are identities
//! and in which no two distinct objects have morphisms in both directions.
//! It is a poset that is allowed to carry several parallel morphisms, so the
//! composition table is genuine data and has to be supplied explicitly.
//!
//! Identities are never stored. Composites of stored morphisms are stored
//! morphisms again, because acyclicity rules out a composite landing on an
//! identity.

mod beat;
mod functor;
mod iso;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::digest::{Digest, DigestWriter};

pub use beat::{BeatWitness, CatCollapseSequence, CatCollapseStep, Direction, ReplayError, Retraction, SliceCategory};
pub use functor::{
    check_adjunction, check_descending, check_natural_transformation, find_natural_transformation, Arrow, FunctorData,
    FunctorError, NaturalTransformationData,
};
pub use iso::{are_isomorphic_cat, CategoryIsomorphism};

/// Index of an object inside one particular [`AcyclicCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub usize);

/// Index of a stored (non-identity) morphism inside one particular [`AcyclicCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorphismId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismRecord {
    pub name: String,
    pub source: ObjectId,
    pub target: ObjectId,
}

/// Unvalidated description of a category, keyed by names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub compose: Vec<RawComposite>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RawMorphism {
    pub id: String,
    pub source: String,
    pub target: String,
}

/// A composition table entry `g ∘ f = result`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RawComposite {
    pub g: String,
    pub f: String,
    pub result: String,
}

impl RawCategory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, name: impl Into<String>) -> Self {
        self.objects.push(name.into());
        self
    }

    pub fn morphism(mut self, id: impl Into<String>, source: impl Into<String>, target: impl Into<String>) -> Self {
        self.morphisms.push(RawMorphism { id: id.into(), source: source.into(), target: target.into() });
        self
    }

    pub fn composite(mut self, g: impl Into<String>, f: impl Into<String>, result: impl Into<String>) -> Self {
        self.compose.push(RawComposite { g: g.into(), f: f.into(), result: result.into() });
        self
    }

    pub fn validate(&self) -> Result<AcyclicCategory, CategoryError> {
        AcyclicCategory::validate(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism `{0}`")]
    DuplicateMorphism(String),
    #[error("morphism `{morphism}` refers to unknown object `{object}`")]
    DanglingEndpoint { morphism: String, object: String },
    #[error("loop between `{from}` and `{to}`")]
    LoopDetected { from: String, to: String },
    #[error("composition table refers to unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("`{g}` and `{f}` are not composable")]
    NotComposable { g: String, f: String },
    #[error("composite of `{g}` after `{f}` cannot be `{result}`: endpoints differ")]
    CompositeEndpointMismatch { g: String, f: String, result: String },
    #[error("conflicting composites recorded for `{g}` after `{f}`")]
    ConflictingComposite { g: String, f: String },
    #[error("composition is not closed: `{g}` after `{f}` is missing")]
    CompositionNotClosed { g: String, f: String },
    #[error("composition is not associative on `{h}`, `{g}`, `{f}`")]
    NotAssociative { h: String, g: String, f: String },
}

impl CategoryError {
    /// Stable tag naming the error kind.
    pub fn tag(&self) -> &'static str {
        match self {
            CategoryError::DuplicateObject(_) => "DuplicateObject",
            CategoryError::DuplicateMorphism(_) => "DuplicateMorphism",
            CategoryError::DanglingEndpoint { .. } => "DanglingEndpoint",
            CategoryError::LoopDetected { .. } => "LoopDetected",
            CategoryError::UnknownMorphism(_) => "UnknownMorphism",
            CategoryError::NotComposable { .. } => "NotComposable",
            CategoryError::CompositeEndpointMismatch { .. } => "CompositeEndpointMismatch",
            CategoryError::ConflictingComposite { .. } => "ConflictingComposite",
            CategoryError::CompositionNotClosed { .. } => "CompositionNotClosed",
            CategoryError::NotAssociative { .. } => "NotAssociative",
        }
    }
}

/// A validated finite acyclic category.
///
/// Objects are kept sorted by name and morphisms sorted by name, so the
/// index order of [`ObjectId`] and [`MorphismId`] is the identifier order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicCategory {
    objects: Vec<String>,
    morphisms: Vec<MorphismRecord>,
    composition: BTreeMap<(MorphismId, MorphismId), MorphismId>,
    incoming: Vec<Vec<MorphismId>>,
    outgoing: Vec<Vec<MorphismId>>,
    hom: BTreeMap<(ObjectId, ObjectId), Vec<MorphismId>>,
}

impl AcyclicCategory {
    pub fn validate(raw: &RawCategory) -> Result<Self, CategoryError> {
        let mut objects = raw.objects.clone();
        objects.sort();
        for pair in objects.windows(2) {
            if pair[0] == pair[1] {
                return Err(CategoryError::DuplicateObject(pair[0].clone()));
            }
        }
        let object_ix = |name: &str| objects.binary_search_by(|o| o.as_str().cmp(name)).ok().map(ObjectId);

        let mut raw_morphisms: Vec<&RawMorphism> = raw.morphisms.iter().collect();
        raw_morphisms.sort_by(|a, b| a.id.cmp(&b.id));
        let mut morphisms = Vec::with_capacity(raw_morphisms.len());
        for (i, m) in raw_morphisms.iter().enumerate() {
            if i > 0 && raw_morphisms[i - 1].id == m.id {
                return Err(CategoryError::DuplicateMorphism(m.id.clone()));
            }
            let endpoint = |name: &str| {
                object_ix(name)
                    .ok_or_else(|| CategoryError::DanglingEndpoint { morphism: m.id.clone(), object: name.into() })
            };
            let source = endpoint(&m.source)?;
            let target = endpoint(&m.target)?;
            if source == target {
                return Err(CategoryError::LoopDetected { from: m.source.clone(), to: m.target.clone() });
            }
            morphisms.push(MorphismRecord { name: m.id.clone(), source, target });
        }

        let mut directed = BTreeSet::new();
        for m in &morphisms {
            directed.insert((m.source, m.target));
        }
        for &(s, t) in &directed {
            if directed.contains(&(t, s)) {
                return Err(CategoryError::LoopDetected { from: objects[s.0].clone(), to: objects[t.0].clone() });
            }
        }

        let morphism_ix = |name: &str| {
            morphisms
                .binary_search_by(|m| m.name.as_str().cmp(name))
                .map(MorphismId)
                .map_err(|_| CategoryError::UnknownMorphism(name.into()))
        };
        let mut composition = BTreeMap::new();
        for entry in &raw.compose {
            let g = morphism_ix(&entry.g)?;
            let f = morphism_ix(&entry.f)?;
            let r = morphism_ix(&entry.result)?;
            if morphisms[f.0].target != morphisms[g.0].source {
                return Err(CategoryError::NotComposable { g: entry.g.clone(), f: entry.f.clone() });
            }
            if morphisms[r.0].source != morphisms[f.0].source || morphisms[r.0].target != morphisms[g.0].target {
                return Err(CategoryError::CompositeEndpointMismatch {
                    g: entry.g.clone(),
                    f: entry.f.clone(),
                    result: entry.result.clone(),
                });
            }
            if let Some(prev) = composition.insert((g, f), r) {
                if prev != r {
                    return Err(CategoryError::ConflictingComposite { g: entry.g.clone(), f: entry.f.clone() });
                }
            }
        }

        let cat = Self::from_parts(objects, morphisms, composition);
        for f in cat.morphism_ids() {
            for &g in cat.outgoing(cat.target(f)) {
                if cat.compose(g, f).is_none() {
                    return Err(CategoryError::CompositionNotClosed {
                        g: cat.morphism_name(g).into(),
                        f: cat.morphism_name(f).into(),
                    });
                }
            }
        }
        for f in cat.morphism_ids() {
            for &g in cat.outgoing(cat.target(f)) {
                let gf = cat.composition[&(g, f)];
                for &h in cat.outgoing(cat.target(g)) {
                    let hg = cat.composition[&(h, g)];
                    if cat.composition[&(h, gf)] != cat.composition[&(hg, f)] {
                        return Err(CategoryError::NotAssociative {
                            h: cat.morphism_name(h).into(),
                            g: cat.morphism_name(g).into(),
                            f: cat.morphism_name(f).into(),
                        });
                    }
                }
            }
        }
        Ok(cat)
    }

    /// Assembles the lookup tables. `objects` and `morphisms` must already be
    /// sorted by name and describe a valid acyclic category.
    pub(crate) fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<MorphismRecord>,
        composition: BTreeMap<(MorphismId, MorphismId), MorphismId>,
    ) -> Self {
        let n = objects.len();
        let mut incoming = alloc::vec![Vec::new(); n];
        let mut outgoing = alloc::vec![Vec::new(); n];
        let mut hom: BTreeMap<(ObjectId, ObjectId), Vec<MorphismId>> = BTreeMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            incoming[m.target.0].push(MorphismId(i));
            outgoing[m.source.0].push(MorphismId(i));
            hom.entry((m.source, m.target)).or_default().push(MorphismId(i));
        }
        AcyclicCategory { objects, morphisms, composition, incoming, outgoing, hom }
    }

    /// The category with no objects.
    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new(), BTreeMap::new())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_ids(&self) -> impl DoubleEndedIterator<Item = ObjectId> + ExactSizeIterator {
        (0..self.objects.len()).map(ObjectId)
    }

    pub fn morphism_ids(&self) -> impl DoubleEndedIterator<Item = MorphismId> + ExactSizeIterator {
        (0..self.morphisms.len()).map(MorphismId)
    }

    pub fn object_name(&self, x: ObjectId) -> &str {
        &self.objects[x.0]
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjectId> {
        self.objects.binary_search_by(|o| o.as_str().cmp(name)).ok().map(ObjectId)
    }

    pub fn morphism(&self, m: MorphismId) -> &MorphismRecord {
        &self.morphisms[m.0]
    }

    pub fn morphism_name(&self, m: MorphismId) -> &str {
        &self.morphisms[m.0].name
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorphismId> {
        self.morphisms.binary_search_by(|m| m.name.as_str().cmp(name)).ok().map(MorphismId)
    }

    pub fn source(&self, m: MorphismId) -> ObjectId {
        self.morphisms[m.0].source
    }

    pub fn target(&self, m: MorphismId) -> ObjectId {
        self.morphisms[m.0].target
    }

    /// Stored morphisms `x → y`.
    pub fn hom(&self, x: ObjectId, y: ObjectId) -> &[MorphismId] {
        self.hom.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn incoming(&self, x: ObjectId) -> &[MorphismId] {
        &self.incoming[x.0]
    }

    pub fn outgoing(&self, x: ObjectId) -> &[MorphismId] {
        &self.outgoing[x.0]
    }

    /// `g ∘ f`, when `f` ends where `g` starts.
    pub fn compose(&self, g: MorphismId, f: MorphismId) -> Option<MorphismId> {
        self.composition.get(&(g, f)).copied()
    }

    /// Composition table entries `((g, f), g ∘ f)`.
    pub fn composition_entries(&self) -> impl Iterator<Item = ((MorphismId, MorphismId), MorphismId)> + '_ {
        self.composition.iter().map(|(&k, &v)| (k, v))
    }

    /// True when every hom-set has at most one element.
    pub fn is_poset(&self) -> bool {
        self.hom.values().all(|h| h.len() <= 1)
    }

    /// `x ≤ y` in the underlying poset: some arrow (possibly the identity) `x → y`.
    pub fn precedes(&self, x: ObjectId, y: ObjectId) -> bool {
        x == y || !self.hom(x, y).is_empty()
    }

    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| RawMorphism {
                    id: m.name.clone(),
                    source: self.objects[m.source.0].clone(),
                    target: self.objects[m.target.0].clone(),
                })
                .collect(),
            compose: self
                .composition
                .iter()
                .map(|(&(g, f), &r)| RawComposite {
                    g: self.morphism_name(g).into(),
                    f: self.morphism_name(f).into(),
                    result: self.morphism_name(r).into(),
                })
                .collect(),
        }
    }

    pub fn digest(&self) -> Digest {
        let mut w = DigestWriter::new("category");
        w.num(self.objects.len());
        for o in &self.objects {
            w.str(o);
        }
        w.num(self.morphisms.len());
        for m in &self.morphisms {
            w.str(&m.name);
            w.num(m.source.0);
            w.num(m.target.0);
        }
        for (&(g, f), &r) in &self.composition {
            w.num(g.0);
            w.num(f.0);
            w.num(r.0);
        }
        w.finish()
    }

    /// The full subcategory on the objects selected by `keep`.
    pub fn full_subcategory(&self, keep: impl Fn(ObjectId) -> bool) -> AcyclicCategory {
        let mut object_map = alloc::vec![None; self.objects.len()];
        let mut objects = Vec::new();
        for x in self.object_ids() {
            if keep(x) {
                object_map[x.0] = Some(ObjectId(objects.len()));
                objects.push(self.objects[x.0].clone());
            }
        }
        let mut morphism_map = alloc::vec![None; self.morphisms.len()];
        let mut morphisms = Vec::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            if let (Some(s), Some(t)) = (object_map[m.source.0], object_map[m.target.0]) {
                morphism_map[i] = Some(MorphismId(morphisms.len()));
                morphisms.push(MorphismRecord { name: m.name.clone(), source: s, target: t });
            }
        }
        let mut composition = BTreeMap::new();
        for (&(g, f), &r) in &self.composition {
            if let (Some(g), Some(f)) = (morphism_map[g.0], morphism_map[f.0]) {
                // Endpoints of the composite are endpoints of g and f, so it survives too.
                composition.insert((g, f), morphism_map[r.0].expect("composite of kept morphisms is kept"));
            }
        }
        Self::from_parts(objects, morphisms, composition)
    }

    /// The full subcategory on every object except `x`.
    pub fn remove_object(&self, x: ObjectId) -> AcyclicCategory {
        self.full_subcategory(|o| o != x)
    }

    /// The underlying poset: one morphism `x<y` whenever some morphism `x → y` exists.
    pub fn underlying_poset(&self) -> AcyclicCategory {
        let mut raw = RawCategory { objects: self.objects.clone(), ..RawCategory::default() };
        let name = |x: ObjectId, y: ObjectId| format!("{}<{}", self.objects[x.0], self.objects[y.0]);
        for &(x, y) in self.hom.keys() {
            raw.morphisms.push(RawMorphism {
                id: name(x, y),
                source: self.objects[x.0].clone(),
                target: self.objects[y.0].clone(),
            });
        }
        for &(x, y) in self.hom.keys() {
            for z in self.object_ids() {
                if !self.hom(y, z).is_empty() {
                    raw.compose.push(RawComposite { g: name(y, z), f: name(x, y), result: name(x, z) });
                }
            }
        }
        AcyclicCategory::validate(&raw).expect("underlying poset of a valid category is valid")
    }

    /// The opposite category. Morphisms keep their names.
    pub fn opposite(&self) -> AcyclicCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| MorphismRecord { name: m.name.clone(), source: m.target, target: m.source })
            .collect();
        let composition = self.composition.iter().map(|(&(g, f), &r)| ((f, g), r)).collect();
        Self::from_parts(self.objects.clone(), morphisms, composition)
    }

    /// Objects ordered so that every morphism goes forward. Ties are broken by
    /// identifier order.
    pub fn linear_extension(&self) -> Vec<ObjectId> {
        let mut indegree: Vec<usize> = self
            .object_ids()
            .map(|x| self.incoming(x).iter().map(|&m| self.source(m)).collect::<BTreeSet<_>>().len())
            .collect();
        let mut ready: BTreeSet<ObjectId> = self.object_ids().filter(|x| indegree[x.0] == 0).collect();
        let mut order = Vec::with_capacity(self.objects.len());
        while let Some(x) = ready.pop_first() {
            order.push(x);
            let successors: BTreeSet<ObjectId> = self.outgoing(x).iter().map(|&m| self.target(m)).collect();
            for y in successors {
                indegree[y.0] -= 1;
                if indegree[y.0] == 0 {
                    ready.insert(y);
                }
            }
        }
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn chain_and_circle_validate() {
        let chain = fixtures::chain3();
        assert_eq!(chain.object_count(), 3);
        assert_eq!(chain.morphism_count(), 3);
        let s1 = fixtures::circle_category();
        assert_eq!(s1.object_count(), 2);
        assert_eq!(s1.morphism_count(), 2);
        assert!(!s1.is_poset());
    }

    #[test]
    fn opposite_hom_sets_swap() {
        let s1 = fixtures::circle_category();
        let x = s1.object_by_name("x").unwrap();
        let y = s1.object_by_name("y").unwrap();
        let op = s1.opposite();
        assert_eq!(op.hom(y, x).len(), 2);
        assert!(op.hom(x, y).is_empty());
        assert_eq!(op.opposite(), s1);
    }

    #[test]
    fn two_way_hom_is_a_loop() {
        let raw = RawCategory::new().object("x").object("y").morphism("f", "x", "y").morphism("g", "y", "x");
        assert_eq!(raw.validate().unwrap_err().tag(), "LoopDetected");
    }

    #[test]
    fn endomorphism_is_a_loop() {
        let raw = RawCategory::new().object("x").morphism("e", "x", "x");
        assert_eq!(raw.validate().unwrap_err().tag(), "LoopDetected");
    }

    #[test]
    fn missing_composite_is_rejected() {
        let raw =
            RawCategory::new().object("0").object("1").object("2").morphism("f", "0", "1").morphism("g", "1", "2");
        assert_eq!(raw.validate().unwrap_err().tag(), "CompositionNotClosed");
    }

    #[test]
    fn dangling_endpoint_is_rejected() {
        let raw = RawCategory::new().object("0").morphism("f", "0", "9");
        assert_eq!(raw.validate().unwrap_err().tag(), "DanglingEndpoint");
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // 0 -f-> 1 -g-> 2 -h-> 3 with two parallel 0 -> 3 morphisms chosen inconsistently.
        let raw = RawCategory::new()
            .object("0")
            .object("1")
            .object("2")
            .object("3")
            .morphism("f", "0", "1")
            .morphism("g", "1", "2")
            .morphism("h", "2", "3")
            .morphism("gf", "0", "2")
            .morphism("hg", "1", "3")
            .morphism("p", "0", "3")
            .morphism("q", "0", "3")
            .composite("g", "f", "gf")
            .composite("h", "g", "hg")
            .composite("h", "gf", "p")
            .composite("hg", "f", "q");
        assert_eq!(raw.validate().unwrap_err().tag(), "NotAssociative");
    }

    #[test]
    fn composite_with_wrong_endpoints_is_rejected() {
        let raw = RawCategory::new()
            .object("0")
            .object("1")
            .object("2")
            .morphism("f", "0", "1")
            .morphism("g", "1", "2")
            .composite("g", "f", "f");
        assert_eq!(raw.validate().unwrap_err().tag(), "CompositeEndpointMismatch");
    }

    #[test]
    fn underlying_poset_of_circle_is_two_chain() {
        let p = fixtures::circle_category().underlying_poset();
        assert_eq!(p.object_count(), 2);
        assert_eq!(p.morphism_count(), 1);
        assert!(p.is_poset());
    }

    #[test]
    fn underlying_poset_is_idempotent_on_posets() {
        let p = fixtures::chain3().underlying_poset();
        assert_eq!(p.object_count(), 3);
        assert_eq!(p.morphism_count(), 3);
        assert_eq!(p.underlying_poset(), p);
    }

    #[test]
    fn removing_middle_of_chain_keeps_composite() {
        let chain = fixtures::chain3();
        let rest = chain.remove_object(chain.object_by_name("1").unwrap());
        assert_eq!(rest.object_count(), 2);
        assert_eq!(rest.morphism_count(), 1);
        assert_eq!(rest.morphism_name(MorphismId(0)), "c");
    }

    #[test]
    fn removing_last_object_gives_empty_category() {
        let point = RawCategory::new().object("p").validate().unwrap();
        let empty = point.remove_object(ObjectId(0));
        assert_eq!(empty, AcyclicCategory::empty());
    }

    #[test]
    fn removing_isolated_object_leaves_the_rest() {
        let raw = fixtures::chain3().to_raw();
        let with_iso = AcyclicCategory::validate(&RawCategory {
            objects: [raw.objects.clone(), alloc::vec!["z".into()]].concat(),
            ..raw
        })
        .unwrap();
        let back = with_iso.remove_object(with_iso.object_by_name("z").unwrap());
        assert_eq!(back, fixtures::chain3());
    }

    #[test]
    fn linear_extension_respects_morphisms() {
        let a = fixtures::chain3();
        let order = a.linear_extension();
        let pos = |x: ObjectId| order.iter().position(|&o| o == x).unwrap();
        for m in a.morphism_ids() {
            assert!(pos(a.source(m)) < pos(a.target(m)));
        }
    }

    #[test]
    fn to_raw_round_trips() {
        let a = fixtures::chain3();
        assert_eq!(a.to_raw().validate().unwrap(), a);
    }
}
