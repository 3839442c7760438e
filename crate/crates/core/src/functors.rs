//! Passing between acyclic categories and Δ-complexes.
//!
//! The classifying space `B(A)` has the chains of composable non-identity
//! morphisms as simplices. The face poset `χ(X)` has the simplices of `X`
//! as objects. Both act on maps, and composing them gives the barycentric
//! subdivisions `sd(A) = χ(B(A))` and `sd(X) = B(χ(X))`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::category::{
    check_natural_transformation, AcyclicCategory, Arrow, FunctorData, MorphismId, NaturalTransformationData, ObjectId,
    RawCategory, RawComposite, RawMorphism,
};
use crate::delta::{contiguity_witness, DeltaComplex, DeltaMap, RawComplex, RawFace, RawSimplex, SimplexId};

/// A chain `a₀ → a₁ → … → aₙ` of composable non-identity morphisms.
/// A vertex is the chain of length zero at `start`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainSimplex {
    pub start: ObjectId,
    pub morphisms: Vec<MorphismId>,
}

impl ChainSimplex {
    pub fn objects(&self, cat: &AcyclicCategory) -> Vec<ObjectId> {
        let mut out = alloc::vec![self.start];
        out.extend(self.morphisms.iter().map(|&m| cat.target(m)));
        out
    }
}

/// `B(A)` together with the chain behind every simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyingSpace {
    pub complex: DeltaComplex,
    /// Indexed by [`SimplexId`].
    pub chains: Vec<ChainSimplex>,
    simplex_of_chain: BTreeMap<ChainSimplex, SimplexId>,
}

impl ClassifyingSpace {
    pub fn simplex(&self, chain: &ChainSimplex) -> Option<SimplexId> {
        self.simplex_of_chain.get(chain).copied()
    }

    pub fn vertex_of_object(&self, x: ObjectId) -> SimplexId {
        self.simplex_of_chain[&ChainSimplex { start: x, morphisms: Vec::new() }]
    }

    pub fn object_of_vertex(&self, v: SimplexId) -> ObjectId {
        self.chains[v.0].start
    }
}

/// `χ(X)` together with the simplex behind every object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePoset {
    pub category: AcyclicCategory,
    /// Indexed by [`SimplexId`].
    pub object_of_simplex: Vec<ObjectId>,
    /// Indexed by [`ObjectId`].
    pub simplex_of_object: Vec<SimplexId>,
}

impl FacePoset {
    /// The arrow `σ → τ` for `σ ⪯ τ`.
    pub fn arrow(&self, s: SimplexId, t: SimplexId) -> Option<Arrow> {
        let (x, y) = (self.object_of_simplex[s.0], self.object_of_simplex[t.0]);
        if x == y {
            return Some(Arrow::Identity(x));
        }
        self.category.hom(x, y).first().map(|&m| Arrow::Morphism(m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FunctorsError {
    #[error("map does not preserve the face order at `{0}`")]
    OrderViolation(String),
    #[error("maps are not contiguous at `{0}`")]
    NotContiguous(String),
}

impl FunctorsError {
    pub fn tag(&self) -> &'static str {
        match self {
            FunctorsError::OrderViolation(_) => "OrderViolation",
            FunctorsError::NotContiguous(_) => "NotContiguous",
        }
    }
}

/// Appends primes to later duplicates so every name is distinct.
fn disambiguate(taken: &mut BTreeSet<String>, mut name: String) -> String {
    while taken.contains(&name) {
        name.push('\'');
    }
    taken.insert(name.clone());
    name
}

/// The classifying space `B(A)`. Vertices keep the object names; a chain of
/// positive length is named `(f1,f2,…)` after its morphisms.
pub fn classifying_space(cat: &AcyclicCategory) -> ClassifyingSpace {
    let mut chains: Vec<ChainSimplex> =
        cat.object_ids().map(|x| ChainSimplex { start: x, morphisms: Vec::new() }).collect();
    let mut layer: Vec<ChainSimplex> =
        cat.morphism_ids().map(|m| ChainSimplex { start: cat.source(m), morphisms: alloc::vec![m] }).collect();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for c in &layer {
            let end = cat.target(*c.morphisms.last().expect("nonempty"));
            for &m in cat.outgoing(end) {
                let mut morphisms = c.morphisms.clone();
                morphisms.push(m);
                next.push(ChainSimplex { start: c.start, morphisms });
            }
        }
        chains.append(&mut layer);
        layer = next;
    }

    let mut taken = BTreeSet::new();
    let names: Vec<String> = chains
        .iter()
        .map(|c| {
            let name = if c.morphisms.is_empty() {
                String::from(cat.object_name(c.start))
            } else {
                let parts: Vec<&str> = c.morphisms.iter().map(|&m| cat.morphism_name(m)).collect();
                format!("({})", parts.join(","))
            };
            disambiguate(&mut taken, name)
        })
        .collect();
    let index: BTreeMap<&ChainSimplex, usize> = chains.iter().enumerate().map(|(i, c)| (c, i)).collect();

    let mut raw = RawComplex::new();
    for (i, c) in chains.iter().enumerate() {
        let objects = c.objects(cat);
        raw.simplices.push(RawSimplex {
            id: names[i].clone(),
            dimension: c.morphisms.len(),
            vertices: objects.iter().map(|&x| String::from(cat.object_name(x))).collect(),
        });
        let n = c.morphisms.len();
        if n == 0 {
            continue;
        }
        for (pos, &x) in objects.iter().enumerate() {
            let face = if pos == 0 {
                ChainSimplex { start: objects[1], morphisms: c.morphisms[1..].to_vec() }
            } else if pos == n {
                ChainSimplex { start: c.start, morphisms: c.morphisms[..n - 1].to_vec() }
            } else {
                let (f, g) = (c.morphisms[pos - 1], c.morphisms[pos]);
                let gf = cat.compose(g, f).expect("composition table is closed");
                let mut morphisms = c.morphisms[..pos - 1].to_vec();
                morphisms.push(gf);
                morphisms.extend_from_slice(&c.morphisms[pos + 1..]);
                ChainSimplex { start: c.start, morphisms }
            };
            raw.faces.push(RawFace {
                simplex: names[i].clone(),
                vertex: String::from(cat.object_name(x)),
                result: names[index[&face]].clone(),
            });
        }
    }
    let complex = raw.validate().expect("classifying space satisfies the face conditions");
    let mut ordered = alloc::vec![None; chains.len()];
    for (i, c) in chains.into_iter().enumerate() {
        ordered[complex.by_name(&names[i]).expect("named simplex").0] = Some(c);
    }
    let chains: Vec<ChainSimplex> = ordered.into_iter().map(|c| c.expect("bijection")).collect();
    let simplex_of_chain = chains.iter().enumerate().map(|(i, c)| (c.clone(), SimplexId(i))).collect();
    ClassifyingSpace { complex, chains, simplex_of_chain }
}

/// `B(F)`: the image chain with identities removed.
pub fn classifying_map(source: &ClassifyingSpace, target: &ClassifyingSpace, functor: &FunctorData) -> DeltaMap {
    let images = source
        .chains
        .iter()
        .map(|c| {
            let morphisms = c
                .morphisms
                .iter()
                .filter_map(|&m| match functor.arrow(Arrow::Morphism(m)) {
                    Arrow::Identity(_) => None,
                    Arrow::Morphism(n) => Some(n),
                })
                .collect();
            let image = ChainSimplex { start: functor.object(c.start), morphisms };
            target.simplex(&image).expect("functor maps chains to chains")
        })
        .collect();
    DeltaMap { images }
}

/// The face poset `χ(X)`. Objects keep the simplex names; the morphism
/// `σ → τ` is named `σ<τ`.
pub fn face_poset_category(x: &DeltaComplex) -> FacePoset {
    let mut raw =
        RawCategory { objects: x.simplex_ids().map(|s| String::from(x.name(s))).collect(), ..RawCategory::default() };
    let mut taken = BTreeSet::new();
    let mut names: BTreeMap<(SimplexId, SimplexId), String> = BTreeMap::new();
    for s in x.simplex_ids() {
        for &t in x.relation().up_set(s) {
            if s != t {
                let name = disambiguate(&mut taken, format!("{}<{}", x.name(s), x.name(t)));
                raw.morphisms.push(RawMorphism {
                    id: name.clone(),
                    source: x.name(s).into(),
                    target: x.name(t).into(),
                });
                names.insert((s, t), name);
            }
        }
    }
    for (&(s, t), st) in &names {
        for &u in x.relation().up_set(t) {
            if u != t {
                raw.compose.push(RawComposite {
                    g: names[&(t, u)].clone(),
                    f: st.clone(),
                    result: names[&(s, u)].clone(),
                });
            }
        }
    }
    let category = raw.validate().expect("face poset is a poset");
    let object_of_simplex: Vec<ObjectId> =
        x.simplex_ids().map(|s| category.object_by_name(x.name(s)).expect("object per simplex")).collect();
    let mut simplex_of_object = alloc::vec![SimplexId(0); object_of_simplex.len()];
    for (s, o) in object_of_simplex.iter().enumerate() {
        simplex_of_object[o.0] = SimplexId(s);
    }
    FacePoset { category, object_of_simplex, simplex_of_object }
}

fn functor_from_simplex_map(
    x: &DeltaComplex,
    source: &FacePoset,
    target: &FacePoset,
    image: impl Fn(SimplexId) -> SimplexId,
) -> Result<FunctorData, FunctorsError> {
    let objects = source.simplex_of_object.iter().map(|&s| target.object_of_simplex[image(s).0]).collect();
    let mut morphisms = Vec::with_capacity(source.category.morphism_count());
    for m in source.category.morphism_ids() {
        let s = source.simplex_of_object[source.category.source(m).0];
        let t = source.simplex_of_object[source.category.target(m).0];
        let arrow = target.arrow(image(s), image(t)).ok_or_else(|| FunctorsError::OrderViolation(x.name(s).into()))?;
        morphisms.push(arrow);
    }
    Ok(FunctorData { objects, morphisms })
}

/// `χ(f)`: the order-preserving map `σ ↦ f(σ)` between face posets.
pub fn face_poset_map(
    x: &DeltaComplex,
    source: &FacePoset,
    target: &FacePoset,
    map: &DeltaMap,
) -> Result<FunctorData, FunctorsError> {
    functor_from_simplex_map(x, source, target, |s| map.image(s))
}

/// The map `h: χ(X) → χ(Y)` sending `σ` to the simplex joining `f(σ)` and
/// `g(σ)`, along with the transformations `χ(f) ⇒ h` and `χ(g) ⇒ h`.
pub fn contiguity_join(
    x: &DeltaComplex,
    y: &DeltaComplex,
    source: &FacePoset,
    target: &FacePoset,
    f: &DeltaMap,
    g: &DeltaMap,
) -> Result<ContiguityJoin, FunctorsError> {
    let mut join = Vec::with_capacity(x.simplex_count());
    for s in x.simplex_ids() {
        join.push(contiguity_witness(y, f, g, s).ok_or_else(|| FunctorsError::NotContiguous(x.name(s).into()))?);
    }
    let h = functor_from_simplex_map(x, source, target, |s| join[s.0])?;
    let transformation = |m: &DeltaMap| -> Result<NaturalTransformationData, FunctorsError> {
        let components = source
            .simplex_of_object
            .iter()
            .map(|&s| {
                target.arrow(m.image(s), join[s.0]).ok_or_else(|| FunctorsError::OrderViolation(x.name(s).into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NaturalTransformationData { components })
    };
    let from_f = transformation(f)?;
    let from_g = transformation(g)?;
    Ok(ContiguityJoin { join: h, from_f, from_g })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContiguityJoin {
    pub join: FunctorData,
    pub from_f: NaturalTransformationData,
    pub from_g: NaturalTransformationData,
}

impl ContiguityJoin {
    /// Checks both transformations against `χ(f)` and `χ(g)`.
    pub fn verify(&self, source: &FacePoset, target: &FacePoset, chi_f: &FunctorData, chi_g: &FunctorData) -> bool {
        let (a, b) = (&source.category, &target.category);
        self.join.check(a, b).is_ok()
            && check_natural_transformation(a, b, chi_f, &self.join, &self.from_f)
            && check_natural_transformation(a, b, chi_g, &self.join, &self.from_g)
    }
}

/// `sd(A) = χ(B(A))`.
pub fn sd_category(cat: &AcyclicCategory) -> AcyclicCategory {
    face_poset_category(&classifying_space(cat).complex).category
}

/// `sd(X) = B(χ(X))`.
pub fn sd_delta(x: &DeltaComplex) -> DeltaComplex {
    classifying_space(&face_poset_category(x).category).complex
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn classifying_space_of_two_chain_is_an_edge() {
        let b = classifying_space(&fixtures::circle_category().underlying_poset()).complex;
        assert_eq!((b.count_of_dim(0), b.count_of_dim(1), b.simplex_count()), (2, 1, 3));
    }

    #[test]
    fn classifying_space_of_circle_category_is_the_circle() {
        let b = classifying_space(&fixtures::circle_category()).complex;
        assert!(b.isomorphism_to(&fixtures::circle_complex()).is_some());
    }

    #[test]
    fn classifying_space_of_chain_is_full_triangle() {
        let a = fixtures::chain3();
        let b = classifying_space(&a);
        assert!(b.complex.isomorphism_to(&fixtures::full_triangle()).is_some());
        let top = b.complex.by_name("(f,g)").unwrap();
        assert_eq!(b.complex.dim(top), 2);
        let one = b.vertex_of_object(a.object_by_name("1").unwrap());
        assert_eq!(b.complex.name(b.complex.face(top, one).unwrap()), "(c)");
    }

    #[test]
    fn names_colliding_with_objects_are_primed() {
        let a = RawCategory::new().object("(f)").object("y").morphism("f", "(f)", "y").validate().unwrap();
        let b = classifying_space(&a).complex;
        assert_eq!(b.simplex_count(), 3);
        assert!(b.by_name("(f)'").is_some());
    }

    #[test]
    fn classifying_map_of_identity_and_constants() {
        let s1 = fixtures::circle_category();
        let b = classifying_space(&s1);
        assert!(classifying_map(&b, &b, &FunctorData::identity(&s1)).is_identity());
        let s0 = fixtures::discrete_pair();
        let b0 = classifying_space(&s0);
        let x = s1.object_by_name("x").unwrap();
        let m = classifying_map(&b0, &b, &FunctorData::constant(&s0, x));
        assert!(m.is_valid(&b0.complex, &b.complex));
        assert_eq!(m, DeltaMap::constant(&b0.complex, b.vertex_of_object(x)));
    }

    #[test]
    fn face_posets() {
        let edge = face_poset_category(&fixtures::single_edge()).category;
        assert_eq!((edge.object_count(), edge.morphism_count()), (3, 2));
        let circle = face_poset_category(&fixtures::circle_complex()).category;
        assert_eq!((circle.object_count(), circle.morphism_count()), (4, 4));
        assert!(circle.is_minimal());
        let sphere = face_poset_category(&fixtures::sphere_complex()).category;
        assert_eq!(sphere.object_count(), 8);
        assert!(sphere.is_poset());
    }

    #[test]
    fn face_poset_map_of_identity_and_constant() {
        let x = fixtures::disc_complex();
        let p = face_poset_category(&x);
        assert!(face_poset_map(&x, &p, &p, &DeltaMap::identity(&x)).unwrap().is_identity());
        let a = x.by_name("a").unwrap();
        let c = face_poset_map(&x, &p, &p, &DeltaMap::constant(&x, a)).unwrap();
        assert_eq!(c, FunctorData::constant(&p.category, p.object_of_simplex[a.0]));
    }

    #[test]
    fn contiguity_join_on_the_disc() {
        let x = fixtures::disc_complex();
        let p = face_poset_category(&x);
        let w = x.find_domination(x.by_name("b").unwrap()).unwrap();
        let f = x.retraction_endomap(&w);
        let g = DeltaMap::identity(&x);
        let join = contiguity_join(&x, &x, &p, &p, &f, &g).unwrap();
        let bc = x.by_name("bc").unwrap();
        assert_eq!(join.join.object(p.object_of_simplex[bc.0]), p.object_of_simplex[x.by_name("T1").unwrap().0]);
        let chi_f = face_poset_map(&x, &p, &p, &f).unwrap();
        let chi_g = face_poset_map(&x, &p, &p, &g).unwrap();
        assert!(join.verify(&p, &p, &chi_f, &chi_g));
        let same = contiguity_join(&x, &x, &p, &p, &g, &g).unwrap();
        assert_eq!(same.join, chi_g);
    }

    #[test]
    fn non_contiguous_pair_is_rejected() {
        let s1 = fixtures::circle_complex();
        let p = face_poset_category(&s1);
        let a = s1.by_name("a").unwrap();
        let err = contiguity_join(&s1, &s1, &p, &p, &DeltaMap::identity(&s1), &DeltaMap::constant(&s1, a)).unwrap_err();
        assert_eq!(err.tag(), "NotContiguous");
    }

    #[test]
    fn subdivisions() {
        let edge = sd_category(&fixtures::circle_category().underlying_poset());
        assert_eq!(edge.object_count(), 3);
        let circle = sd_category(&fixtures::circle_category());
        assert_eq!((circle.object_count(), circle.morphism_count()), (4, 4));
        assert_eq!(sd_category(&fixtures::point_category()).object_count(), 1);

        let path = sd_delta(&fixtures::single_edge());
        assert_eq!((path.count_of_dim(0), path.count_of_dim(1), path.simplex_count()), (3, 2, 5));
        let square = sd_delta(&fixtures::circle_complex());
        assert_eq!((square.count_of_dim(0), square.count_of_dim(1), square.simplex_count()), (4, 4, 8));
        assert!(square.is_simplicial());
    }
}
