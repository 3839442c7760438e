//! Functors and natural transformations between finite acyclic categories.

use alloc::vec::Vec;

use thiserror::Error;

use super::{AcyclicCategory, MorphismId, ObjectId};

/// A morphism of a category including identities, which are not stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arrow {
    Identity(ObjectId),
    Morphism(MorphismId),
}

impl Arrow {
    pub fn source(self, cat: &AcyclicCategory) -> ObjectId {
        match self {
            Arrow::Identity(x) => x,
            Arrow::Morphism(m) => cat.source(m),
        }
    }

    pub fn target(self, cat: &AcyclicCategory) -> ObjectId {
        match self {
            Arrow::Identity(x) => x,
            Arrow::Morphism(m) => cat.target(m),
        }
    }

    pub fn is_identity(self) -> bool {
        matches!(self, Arrow::Identity(_))
    }
}

impl AcyclicCategory {
    /// `g ∘ f` for arrows, or `None` when they do not compose.
    pub fn compose_arrows(&self, g: Arrow, f: Arrow) -> Option<Arrow> {
        if f.target(self) != g.source(self) {
            return None;
        }
        match (g, f) {
            (Arrow::Identity(_), f) => Some(f),
            (g, Arrow::Identity(_)) => Some(g),
            (Arrow::Morphism(g), Arrow::Morphism(f)) => self.compose(g, f).map(Arrow::Morphism),
        }
    }

    /// All arrows `x → y`, the identity included when `x == y`.
    pub fn arrows(&self, x: ObjectId, y: ObjectId) -> Vec<Arrow> {
        if x == y {
            alloc::vec![Arrow::Identity(x)]
        } else {
            self.hom(x, y).iter().copied().map(Arrow::Morphism).collect()
        }
    }

    pub fn arrow_is_valid(&self, a: Arrow) -> bool {
        match a {
            Arrow::Identity(x) => x.0 < self.object_count(),
            Arrow::Morphism(m) => m.0 < self.morphism_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("object map has {found} entries, expected {expected}")]
    ObjectMapLength { expected: usize, found: usize },
    #[error("morphism map has {found} entries, expected {expected}")]
    MorphismMapLength { expected: usize, found: usize },
    #[error("image of object {0:?} is not an object of the target")]
    UnknownObject(ObjectId),
    #[error("image of morphism {0:?} is not an arrow of the target")]
    UnknownArrow(MorphismId),
    #[error("image of morphism {0:?} has the wrong endpoints")]
    EndpointMismatch(MorphismId),
    #[error("composite of {g:?} after {f:?} is not preserved")]
    CompositionNotPreserved { g: MorphismId, f: MorphismId },
    #[error("functor is not an endofunctor of the category")]
    NotEndofunctor,
    #[error("functor is not descending")]
    NotDescending,
}

/// A functor given by its action on objects and on stored morphisms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FunctorData {
    pub objects: Vec<ObjectId>,
    pub morphisms: Vec<Arrow>,
}

impl FunctorData {
    pub fn identity(cat: &AcyclicCategory) -> Self {
        FunctorData {
            objects: cat.object_ids().collect(),
            morphisms: cat.morphism_ids().map(Arrow::Morphism).collect(),
        }
    }

    /// The functor collapsing everything onto `target_object`.
    pub fn constant(source: &AcyclicCategory, target_object: ObjectId) -> Self {
        FunctorData {
            objects: alloc::vec![target_object; source.object_count()],
            morphisms: alloc::vec![Arrow::Identity(target_object); source.morphism_count()],
        }
    }

    pub fn object(&self, x: ObjectId) -> ObjectId {
        self.objects[x.0]
    }

    pub fn arrow(&self, a: Arrow) -> Arrow {
        match a {
            Arrow::Identity(x) => Arrow::Identity(self.objects[x.0]),
            Arrow::Morphism(m) => self.morphisms[m.0],
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &FunctorData) -> FunctorData {
        FunctorData {
            objects: other.objects.iter().map(|&x| self.object(x)).collect(),
            morphisms: other.morphisms.iter().map(|&a| self.arrow(a)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.objects.iter().enumerate().all(|(i, x)| x.0 == i)
            && self.morphisms.iter().enumerate().all(|(i, a)| *a == Arrow::Morphism(MorphismId(i)))
    }

    /// Checks that this is a functor `source → target`.
    pub fn check(&self, source: &AcyclicCategory, target: &AcyclicCategory) -> Result<(), FunctorError> {
        if self.objects.len() != source.object_count() {
            return Err(FunctorError::ObjectMapLength { expected: source.object_count(), found: self.objects.len() });
        }
        if self.morphisms.len() != source.morphism_count() {
            return Err(FunctorError::MorphismMapLength {
                expected: source.morphism_count(),
                found: self.morphisms.len(),
            });
        }
        for x in source.object_ids() {
            if self.object(x).0 >= target.object_count() {
                return Err(FunctorError::UnknownObject(x));
            }
        }
        for m in source.morphism_ids() {
            let image = self.morphisms[m.0];
            if !target.arrow_is_valid(image) {
                return Err(FunctorError::UnknownArrow(m));
            }
            if image.source(target) != self.object(source.source(m))
                || image.target(target) != self.object(source.target(m))
            {
                return Err(FunctorError::EndpointMismatch(m));
            }
        }
        for ((g, f), gf) in source.composition_entries() {
            let composed = target.compose_arrows(self.morphisms[g.0], self.morphisms[f.0]);
            if composed != Some(self.morphisms[gf.0]) {
                return Err(FunctorError::CompositionNotPreserved { g, f });
            }
        }
        Ok(())
    }
}

/// Components `t_a : F(a) → G(a)` of a natural transformation `F ⇒ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalTransformationData {
    pub components: Vec<Arrow>,
}

impl NaturalTransformationData {
    pub fn identity(functor: &FunctorData) -> Self {
        NaturalTransformationData { components: functor.objects.iter().map(|&x| Arrow::Identity(x)).collect() }
    }
}

/// True iff `t` is a natural transformation `F ⇒ G` between functors `A → B`.
pub fn check_natural_transformation(
    a: &AcyclicCategory,
    b: &AcyclicCategory,
    f: &FunctorData,
    g: &FunctorData,
    t: &NaturalTransformationData,
) -> bool {
    if t.components.len() != a.object_count() {
        return false;
    }
    for x in a.object_ids() {
        let c = t.components[x.0];
        if !b.arrow_is_valid(c) || c.source(b) != f.object(x) || c.target(b) != g.object(x) {
            return false;
        }
    }
    a.morphism_ids().all(|m| naturality_square(a, b, f, g, &t.components, m))
}

fn naturality_square(
    a: &AcyclicCategory,
    b: &AcyclicCategory,
    f: &FunctorData,
    g: &FunctorData,
    components: &[Arrow],
    m: MorphismId,
) -> bool {
    let (s, t) = (a.source(m), a.target(m));
    let left = b.compose_arrows(g.morphisms[m.0], components[s.0]);
    let right = b.compose_arrows(components[t.0], f.morphisms[m.0]);
    left.is_some() && left == right
}

/// Searches for a natural transformation `F ⇒ G` between functors `A → B`.
///
/// Components are chosen object by object in identifier order; every
/// naturality square is checked as soon as both of its corners are fixed.
pub fn find_natural_transformation(
    a: &AcyclicCategory,
    b: &AcyclicCategory,
    f: &FunctorData,
    g: &FunctorData,
) -> Option<NaturalTransformationData> {
    let candidates: Vec<Vec<Arrow>> = a.object_ids().map(|x| b.arrows(f.object(x), g.object(x))).collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut chosen: Vec<Arrow> = Vec::with_capacity(a.object_count());
    fn extend(
        a: &AcyclicCategory,
        b: &AcyclicCategory,
        f: &FunctorData,
        g: &FunctorData,
        candidates: &[Vec<Arrow>],
        chosen: &mut Vec<Arrow>,
    ) -> bool {
        let x = ObjectId(chosen.len());
        if x.0 == candidates.len() {
            return true;
        }
        for &c in &candidates[x.0] {
            chosen.push(c);
            let ok = a.incoming(x).iter().chain(a.outgoing(x)).all(|&m| {
                let other = if a.source(m) == x { a.target(m) } else { a.source(m) };
                if other.0 > x.0 {
                    return true;
                }
                naturality_square(a, b, f, g, chosen, m)
            });
            if ok && extend(a, b, f, g, candidates, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if extend(a, b, f, g, &candidates, &mut chosen) {
        Some(NaturalTransformationData { components: chosen })
    } else {
        None
    }
}

/// Decides whether `F` is a descending functor: `F² = F` and some `t : F ⇒ 1`
/// exists. Returns the transformation found, or `None` when `F` is an
/// endofunctor that is not descending.
pub fn check_descending(
    a: &AcyclicCategory,
    f: &FunctorData,
) -> Result<Option<NaturalTransformationData>, FunctorError> {
    f.check(a, a).map_err(|_| FunctorError::NotEndofunctor)?;
    if f.after(f) != *f {
        return Ok(None);
    }
    Ok(find_natural_transformation(a, a, f, &FunctorData::identity(a)))
}

/// Checks that a descending functor `F : A → F(A)` is right adjoint to the
/// inclusion: for all `x, y`, applying `F` is a bijection
/// `A(Fy, x) → F(A)(Fy, Fx)` whose inverse is composition with `t_x`.
///
/// Fails with [`FunctorError::NotDescending`] when the precondition does not hold.
pub fn check_adjunction(a: &AcyclicCategory, f: &FunctorData) -> Result<bool, FunctorError> {
    let t = check_descending(a, f)?.ok_or(FunctorError::NotDescending)?;
    for y in a.object_ids() {
        let fy = f.object(y);
        for x in a.object_ids() {
            let fx = f.object(x);
            let domain = a.arrows(fy, x);
            let codomain: Vec<Arrow> = a.arrows(fy, fx).into_iter().filter(|&u| f.arrow(u) == u).collect();
            for &h in &domain {
                let image = f.arrow(h);
                if !codomain.contains(&image) {
                    return Ok(false);
                }
                if a.compose_arrows(t.components[x.0], image) != Some(h) {
                    return Ok(false);
                }
            }
            for &u in &codomain {
                let Some(back) = a.compose_arrows(t.components[x.0], u) else {
                    return Ok(false);
                };
                if !domain.contains(&back) || f.arrow(back) != u {
                    return Ok(false);
                }
            }
            if domain.len() != codomain.len() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::RawCategory;
    use crate::fixtures;

    #[test]
    fn identity_functor_is_descending_with_identity_components() {
        let a = fixtures::chain3();
        let id = FunctorData::identity(&a);
        let t = check_descending(&a, &id).unwrap().unwrap();
        assert_eq!(t, NaturalTransformationData::identity(&id));
        assert!(check_adjunction(&a, &id).unwrap());
    }

    #[test]
    fn constant_onto_non_terminal_object_of_antichain_is_not_descending() {
        let a = RawCategory::new().object("p").object("q").validate().unwrap();
        let f = FunctorData::constant(&a, ObjectId(0));
        assert_eq!(check_descending(&a, &f).unwrap(), None);
    }

    #[test]
    fn non_functor_is_rejected_as_not_endofunctor() {
        let a = fixtures::chain3();
        let mut f = FunctorData::identity(&a);
        f.objects[0] = ObjectId(2);
        assert_eq!(check_descending(&a, &f), Err(FunctorError::NotEndofunctor));
    }

    #[test]
    fn non_idempotent_endofunctor_fails_adjunction_precondition() {
        // On the three-element chain, shift 0 -> 1 -> 2 -> 2 is a functor but not idempotent.
        let a = fixtures::chain3();
        let (f, g, c) =
            (a.morphism_by_name("f").unwrap(), a.morphism_by_name("g").unwrap(), a.morphism_by_name("c").unwrap());
        let mut shift =
            FunctorData { objects: alloc::vec![ObjectId(1), ObjectId(2), ObjectId(2)], morphisms: alloc::vec![] };
        shift.morphisms = alloc::vec![Arrow::Identity(ObjectId(0)); 3];
        shift.morphisms[f.0] = Arrow::Morphism(g);
        shift.morphisms[g.0] = Arrow::Identity(ObjectId(2));
        shift.morphisms[c.0] = Arrow::Morphism(g);
        shift.check(&a, &a).unwrap();
        assert_eq!(check_descending(&a, &shift).unwrap(), None);
        assert_eq!(check_adjunction(&a, &shift), Err(FunctorError::NotDescending));
    }

    #[test]
    fn identity_transformation_is_natural() {
        let a = fixtures::circle_category();
        let id = FunctorData::identity(&a);
        assert!(check_natural_transformation(&a, &a, &id, &id, &NaturalTransformationData::identity(&id)));
    }

    #[test]
    fn components_with_wrong_endpoints_are_rejected() {
        let a = fixtures::chain3();
        let id = FunctorData::identity(&a);
        let mut t = NaturalTransformationData::identity(&id);
        t.components[1] = Arrow::Morphism(a.morphism_by_name("f").unwrap());
        assert!(!check_natural_transformation(&a, &a, &id, &id, &t));
    }

    #[test]
    fn constants_into_circle_are_joined_by_either_parallel_morphism() {
        let s0 = fixtures::discrete_pair();
        let s1 = fixtures::circle_category();
        let x = s1.object_by_name("x").unwrap();
        let y = s1.object_by_name("y").unwrap();
        let cx = FunctorData::constant(&s0, x);
        let cy = FunctorData::constant(&s0, y);
        cx.check(&s0, &s1).unwrap();
        let t = find_natural_transformation(&s0, &s1, &cx, &cy).unwrap();
        assert!(check_natural_transformation(&s0, &s1, &cx, &cy, &t));
        assert!(find_natural_transformation(&s0, &s1, &cy, &cx).is_none());
    }
}
