//! Beat objects, their retractions, and strong collapses to a core.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use super::functor::{Arrow, FunctorData, NaturalTransformationData};
use super::{AcyclicCategory, MorphismId, ObjectId, RawCategory, RawComposite, RawMorphism};
use crate::digest::Digest;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// The punctured over-category has a terminal object `f : y → x`.
    Down,
    /// The punctured under-category has an initial object `f : x → y`.
    Up,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Down => "down",
            Direction::Up => "up",
        }
    }
}

/// Certificate that `object` is a beat object, with its beat morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BeatWitness {
    pub object: ObjectId,
    pub direction: Direction,
    pub morphism: MorphismId,
}

impl BeatWitness {
    /// The other endpoint of the beat morphism.
    pub fn partner(&self, cat: &AcyclicCategory) -> ObjectId {
        match self.direction {
            Direction::Down => cat.source(self.morphism),
            Direction::Up => cat.target(self.morphism),
        }
    }
}

/// A punctured over- or under-category, remembering where its objects and
/// morphisms came from.
#[derive(Clone, Debug)]
pub struct SliceCategory {
    pub category: AcyclicCategory,
    /// For each slice object, the morphism of the ambient category it stands for.
    pub object_morphisms: Vec<MorphismId>,
    /// For each slice morphism, the connecting morphism of the ambient category.
    pub morphism_labels: Vec<MorphismId>,
}

impl SliceCategory {
    /// The slice object that is terminal, if any.
    pub fn terminal_object(&self) -> Option<ObjectId> {
        let c = &self.category;
        let mut found = c.object_ids().filter(|&t| c.object_ids().all(|o| o == t || c.hom(o, t).len() == 1));
        let t = found.next();
        debug_assert!(found.next().is_none(), "terminal objects of an acyclic category are unique");
        t
    }

    /// The slice object that is initial, if any.
    pub fn initial_object(&self) -> Option<ObjectId> {
        let c = &self.category;
        let mut found = c.object_ids().filter(|&i| c.object_ids().all(|o| o == i || c.hom(i, o).len() == 1));
        let i = found.next();
        debug_assert!(found.next().is_none(), "initial objects of an acyclic category are unique");
        i
    }
}

/// The functor of an elementary strong collapse, with its transformation to
/// (down) or from (up) the identity.
#[derive(Clone, Debug)]
pub struct Retraction {
    pub functor: FunctorData,
    pub transformation: NaturalTransformationData,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatCollapseStep {
    /// Digest of the category before this step.
    pub snapshot: Digest,
    /// Witness relative to the category before this step.
    pub witness: BeatWitness,
    pub object_name: String,
    pub morphism_name: String,
}

/// A replayable sequence of elementary strong collapses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatCollapseSequence {
    pub steps: Vec<CatCollapseStep>,
    pub result: AcyclicCategory,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("step {0}: snapshot digest does not match")]
    SnapshotMismatch(usize),
    #[error("step {0}: witness does not certify a beat object")]
    InvalidWitness(usize),
    #[error("replay does not reproduce the recorded result")]
    ResultMismatch,
}

impl CatCollapseSequence {
    /// Replays every step from `start`, checking each witness on the way.
    pub fn replay(&self, start: &AcyclicCategory) -> Result<AcyclicCategory, ReplayError> {
        let mut current = start.clone();
        for (i, step) in self.steps.iter().enumerate() {
            if current.digest() != step.snapshot {
                return Err(ReplayError::SnapshotMismatch(i));
            }
            if !current.is_beat_witness(&step.witness) {
                return Err(ReplayError::InvalidWitness(i));
            }
            current = current.remove_object(step.witness.object);
        }
        if current != self.result {
            return Err(ReplayError::ResultMismatch);
        }
        Ok(current)
    }

    pub fn removed_objects(&self) -> impl Iterator<Item = &str> {
        self.steps.iter().map(|s| s.object_name.as_str())
    }
}

impl AcyclicCategory {
    /// Morphisms `h` with `f ∘ h = g`.
    fn factorizations_through(&self, g: MorphismId, f: MorphismId) -> impl Iterator<Item = MorphismId> + '_ {
        self.hom(self.source(g), self.source(f)).iter().copied().filter(move |&h| self.compose(f, h) == Some(g))
    }

    /// Morphisms `h` with `h ∘ f = g`.
    fn cofactorizations_through(&self, g: MorphismId, f: MorphismId) -> impl Iterator<Item = MorphismId> + '_ {
        self.hom(self.target(f), self.target(g)).iter().copied().filter(move |&h| self.compose(h, f) == Some(g))
    }

    /// The down beat morphism into `x`: the incoming `f` through which every
    /// other incoming morphism factors uniquely.
    pub fn down_beat(&self, x: ObjectId) -> Option<MorphismId> {
        let incoming = self.incoming(x);
        let mut terminal = incoming
            .iter()
            .copied()
            .filter(|&f| incoming.iter().all(|&g| g == f || self.factorizations_through(g, f).count() == 1));
        let f = terminal.next();
        debug_assert!(terminal.next().is_none(), "down beat morphism must be unique");
        f
    }

    /// The up beat morphism out of `x`, dual to [`down_beat`](Self::down_beat).
    pub fn up_beat(&self, x: ObjectId) -> Option<MorphismId> {
        let outgoing = self.outgoing(x);
        let mut initial = outgoing
            .iter()
            .copied()
            .filter(|&f| outgoing.iter().all(|&g| g == f || self.cofactorizations_through(g, f).count() == 1));
        let f = initial.next();
        debug_assert!(initial.next().is_none(), "up beat morphism must be unique");
        f
    }

    /// A beat witness at `x`, trying the down direction first.
    pub fn find_beat(&self, x: ObjectId) -> Option<BeatWitness> {
        if let Some(morphism) = self.down_beat(x) {
            return Some(BeatWitness { object: x, direction: Direction::Down, morphism });
        }
        self.up_beat(x).map(|morphism| BeatWitness { object: x, direction: Direction::Up, morphism })
    }

    pub fn is_beat_witness(&self, w: &BeatWitness) -> bool {
        if w.object.0 >= self.object_count() || w.morphism.0 >= self.morphism_count() {
            return false;
        }
        match w.direction {
            Direction::Down => self.down_beat(w.object) == Some(w.morphism),
            Direction::Up => self.up_beat(w.object) == Some(w.morphism),
        }
    }

    /// The first beat object in identifier order.
    pub fn first_beat(&self) -> Option<BeatWitness> {
        self.object_ids().find_map(|x| self.find_beat(x))
    }

    /// No object is a beat object.
    pub fn is_minimal(&self) -> bool {
        self.first_beat().is_none()
    }

    /// The over-category of `x` with the identity of `x` removed. Objects are
    /// the morphisms into `x`; a morphism from `f` to `g` is an `h` with
    /// `g ∘ h = f`.
    pub fn punctured_over_category(&self, x: ObjectId) -> SliceCategory {
        let objects: Vec<MorphismId> = self.incoming(x).to_vec();
        let mut raw = RawCategory {
            objects: objects.iter().map(|&m| String::from(self.morphism_name(m))).collect(),
            ..RawCategory::default()
        };
        // Each slice morphism is determined by (h, g); f = g ∘ h.
        let mut labels: BTreeMap<String, MorphismId> = BTreeMap::new();
        let label = |h: MorphismId, g: MorphismId| format!("{}/{}", self.morphism_name(h), self.morphism_name(g));
        for &g in &objects {
            for &h in self.incoming(self.source(g)) {
                let f = self.compose(g, h).expect("composition is closed");
                raw.morphisms.push(RawMorphism {
                    id: label(h, g),
                    source: self.morphism_name(f).into(),
                    target: self.morphism_name(g).into(),
                });
                labels.insert(label(h, g), h);
            }
        }
        // (k: g → e) ∘ (h: f → g) = (k ∘ h: f → e).
        for &e in &objects {
            for &k in self.incoming(self.source(e)) {
                let g = self.compose(e, k).expect("composition is closed");
                for &h in self.incoming(self.source(g)) {
                    let kh = self.compose(k, h).expect("composition is closed");
                    raw.compose.push(RawComposite { g: label(k, e), f: label(h, g), result: label(kh, e) });
                }
            }
        }
        let category = AcyclicCategory::validate(&raw).expect("punctured over-category is acyclic");
        let object_morphisms = category
            .object_ids()
            .map(|o| self.morphism_by_name(category.object_name(o)).expect("object is a morphism"))
            .collect();
        let morphism_labels = category.morphism_ids().map(|m| labels[category.morphism_name(m)]).collect();
        SliceCategory { category, object_morphisms, morphism_labels }
    }

    /// The under-category of `x` with the identity removed, built as the
    /// opposite of the punctured over-category in the opposite category.
    pub fn punctured_under_category(&self, x: ObjectId) -> SliceCategory {
        let over = self.opposite().punctured_over_category(x);
        SliceCategory { category: over.category.opposite(), ..over }
    }

    /// The retraction functor onto `A ∖ x` induced by a beat witness at `x`.
    ///
    /// For a down witness `f : y → x` the transformation is `F ⇒ 1` with
    /// `t_x = f`; for an up witness `f : x → y` it is `1 ⇒ F`.
    pub fn retraction_functor(&self, w: &BeatWitness) -> Retraction {
        let x = w.object;
        let f = w.morphism;
        let y = w.partner(self);
        let mut objects: Vec<ObjectId> = self.object_ids().collect();
        objects[x.0] = y;
        let morphisms = self
            .morphism_ids()
            .map(|g| {
                let (a, b) = (self.source(g), self.target(g));
                if a != x && b != x {
                    return Arrow::Morphism(g);
                }
                if g == f {
                    return Arrow::Identity(y);
                }
                match (w.direction, a == x) {
                    (Direction::Down, true) => Arrow::Morphism(self.compose(g, f).expect("composition is closed")),
                    (Direction::Down, false) => {
                        Arrow::Morphism(self.factorizations_through(g, f).next().expect("beat morphism factors g"))
                    }
                    (Direction::Up, false) => Arrow::Morphism(self.compose(f, g).expect("composition is closed")),
                    (Direction::Up, true) => {
                        Arrow::Morphism(self.cofactorizations_through(g, f).next().expect("beat morphism factors g"))
                    }
                }
            })
            .collect();
        let functor = FunctorData { objects, morphisms };
        let mut components: Vec<Arrow> = self.object_ids().map(Arrow::Identity).collect();
        components[x.0] = Arrow::Morphism(f);
        Retraction { functor, transformation: NaturalTransformationData { components }, direction: w.direction }
    }

    /// Greedy strong collapse to a core: repeatedly remove the first beat
    /// object in identifier order until none is left.
    pub fn core(&self) -> (AcyclicCategory, CatCollapseSequence) {
        let mut current = self.clone();
        let mut steps = Vec::new();
        // Removing x can only change the beat status of objects sharing a
        // morphism with x, so a negative answer stays valid otherwise.
        let mut known_not_beat: BTreeMap<String, ()> = BTreeMap::new();
        loop {
            let mut found = None;
            for x in current.object_ids() {
                if known_not_beat.contains_key(current.object_name(x)) {
                    continue;
                }
                match current.find_beat(x) {
                    Some(w) => {
                        found = Some(w);
                        break;
                    }
                    None => {
                        known_not_beat.insert(current.object_name(x).into(), ());
                    }
                }
            }
            let Some(w) = found else { break };
            for &m in current.incoming(w.object) {
                known_not_beat.remove(current.object_name(current.source(m)));
            }
            for &m in current.outgoing(w.object) {
                known_not_beat.remove(current.object_name(current.target(m)));
            }
            steps.push(CatCollapseStep {
                snapshot: current.digest(),
                witness: w,
                object_name: current.object_name(w.object).into(),
                morphism_name: current.morphism_name(w.morphism).into(),
            });
            current = current.remove_object(w.object);
        }
        (current.clone(), CatCollapseSequence { steps, result: current })
    }

    /// Collapses to a single object.
    pub fn is_strongly_collapsible(&self) -> bool {
        self.core().0.object_count() == 1
    }

    /// Same strong equivalence type: the cores are isomorphic.
    pub fn same_strong_equivalence_type(&self, other: &AcyclicCategory) -> bool {
        self.core().0.isomorphism_to(&other.core().0).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::functor::{check_adjunction, check_descending, check_natural_transformation};
    use crate::fixtures;

    fn names<'a>(cat: &'a AcyclicCategory, ms: &[MorphismId]) -> Vec<&'a str> {
        ms.iter().map(|&m| cat.morphism_name(m)).collect()
    }

    #[test]
    fn punctured_over_category_of_chain_top() {
        let a = fixtures::chain3();
        let over = a.punctured_over_category(a.object_by_name("2").unwrap());
        let c = &over.category;
        assert_eq!(names(&a, &over.object_morphisms), ["c", "g"]);
        assert_eq!(c.morphism_count(), 1);
        let m = MorphismId(0);
        assert_eq!(c.object_name(c.source(m)), "c");
        assert_eq!(c.object_name(c.target(m)), "g");
        assert_eq!(a.morphism_name(over.morphism_labels[0]), "f");
        assert_eq!(over.terminal_object().map(|o| c.object_name(o)), Some("g"));
    }

    #[test]
    fn punctured_over_category_of_source_is_empty() {
        let a = fixtures::chain3();
        let over = a.punctured_over_category(a.object_by_name("0").unwrap());
        assert_eq!(over.category.object_count(), 0);
        assert_eq!(over.terminal_object(), None);
    }

    #[test]
    fn punctured_over_category_of_circle_is_discrete_pair() {
        let s1 = fixtures::circle_category();
        let over = s1.punctured_over_category(s1.object_by_name("y").unwrap());
        assert_eq!(over.category.object_count(), 2);
        assert_eq!(over.category.morphism_count(), 0);
        assert_eq!(over.terminal_object(), None);
    }

    #[test]
    fn chain_middle_is_down_beat() {
        let a = fixtures::chain3();
        let w = a.find_beat(a.object_by_name("1").unwrap()).unwrap();
        assert_eq!(w.direction, Direction::Down);
        assert_eq!(a.morphism_name(w.morphism), "f");
    }

    #[test]
    fn chain_top_is_down_beat_through_g() {
        let a = fixtures::chain3();
        let w = a.find_beat(a.object_by_name("2").unwrap()).unwrap();
        assert_eq!(w.direction, Direction::Down);
        assert_eq!(a.morphism_name(w.morphism), "g");
    }

    #[test]
    fn circle_has_no_beat_object() {
        let s1 = fixtures::circle_category();
        assert!(s1.object_ids().all(|x| s1.find_beat(x).is_none()));
        assert!(s1.is_minimal());
    }

    #[test]
    fn retraction_of_chain_middle() {
        let a = fixtures::chain3();
        let one = a.object_by_name("1").unwrap();
        let w = a.find_beat(one).unwrap();
        let r = a.retraction_functor(&w);
        let (f, g, c) =
            (a.morphism_by_name("f").unwrap(), a.morphism_by_name("g").unwrap(), a.morphism_by_name("c").unwrap());
        assert_eq!(r.functor.object(one), a.object_by_name("0").unwrap());
        assert_eq!(r.functor.morphisms[g.0], Arrow::Morphism(c));
        assert_eq!(r.functor.morphisms[f.0], Arrow::Identity(ObjectId(0)));
        assert_eq!(r.transformation.components[one.0], Arrow::Morphism(f));
        r.functor.check(&a, &a).unwrap();
        assert_eq!(r.functor.after(&r.functor), r.functor);
        let id = FunctorData::identity(&a);
        assert!(check_natural_transformation(&a, &a, &r.functor, &id, &r.transformation));
        assert!(check_descending(&a, &r.functor).unwrap().is_some());
        assert!(check_adjunction(&a, &r.functor).unwrap());
    }

    #[test]
    fn retraction_at_maximal_beat_fixes_other_objects() {
        let a = fixtures::chain3();
        let top = a.object_by_name("2").unwrap();
        let r = a.retraction_functor(&a.find_beat(top).unwrap());
        for x in a.object_ids().filter(|&x| x != top) {
            assert_eq!(r.functor.object(x), x);
        }
    }

    #[test]
    fn up_retraction_has_transformation_from_identity() {
        let a = fixtures::chain3();
        let zero = a.object_by_name("0").unwrap();
        assert_eq!(a.down_beat(zero), None);
        let w = a.find_beat(zero).unwrap();
        assert_eq!(w.direction, Direction::Up);
        let r = a.retraction_functor(&w);
        r.functor.check(&a, &a).unwrap();
        let id = FunctorData::identity(&a);
        assert!(check_natural_transformation(&a, &a, &id, &r.functor, &r.transformation));
    }

    #[test]
    fn core_of_chain_is_a_point() {
        let (core, seq) = fixtures::chain3().core();
        assert_eq!(core.object_count(), 1);
        assert_eq!(seq.steps.len(), 2);
        assert_eq!(seq.replay(&fixtures::chain3()).unwrap(), core);
    }

    #[test]
    fn core_of_circle_is_itself() {
        let s1 = fixtures::circle_category();
        let (core, seq) = s1.core();
        assert_eq!(core, s1);
        assert!(seq.steps.is_empty());
        assert!(!s1.is_strongly_collapsible());
        assert!(s1.underlying_poset().is_strongly_collapsible());
    }

    #[test]
    fn point_is_strongly_collapsible() {
        let point = RawCategory::new().object("p").validate().unwrap();
        assert!(point.is_strongly_collapsible());
        assert!(!AcyclicCategory::empty().is_strongly_collapsible());
        assert!(AcyclicCategory::empty().is_minimal());
    }

    #[test]
    fn chains_of_different_length_share_a_type() {
        let two = fixtures::circle_category().underlying_poset();
        assert!(two.same_strong_equivalence_type(&fixtures::chain3()));
        let point = RawCategory::new().object("p").validate().unwrap();
        assert!(!fixtures::circle_category().same_strong_equivalence_type(&point));
    }

    #[test]
    fn tampered_sequence_fails_replay() {
        let a = fixtures::chain3();
        let (_, mut seq) = a.core();
        seq.steps[0].snapshot = Digest(0);
        assert_eq!(seq.replay(&a), Err(ReplayError::SnapshotMismatch(0)));
    }
}
