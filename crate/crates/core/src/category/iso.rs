//! Backtracking isomorphism search between acyclic categories.

use alloc::vec::Vec;

use super::{AcyclicCategory, MorphismId, ObjectId};

/// An isomorphism given by object and morphism bijections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryIsomorphism {
    pub objects: Vec<ObjectId>,
    pub morphisms: Vec<MorphismId>,
}

impl CategoryIsomorphism {
    pub fn identity(cat: &AcyclicCategory) -> Self {
        CategoryIsomorphism { objects: cat.object_ids().collect(), morphisms: cat.morphism_ids().collect() }
    }

    /// Checks that this is an isomorphism `a → b`.
    pub fn check(&self, a: &AcyclicCategory, b: &AcyclicCategory) -> bool {
        if a.object_count() != b.object_count()
            || a.morphism_count() != b.morphism_count()
            || self.objects.len() != a.object_count()
            || self.morphisms.len() != a.morphism_count()
        {
            return false;
        }
        if !is_permutation(self.objects.iter().map(|o| o.0), b.object_count())
            || !is_permutation(self.morphisms.iter().map(|m| m.0), b.morphism_count())
        {
            return false;
        }
        let endpoints_ok = a.morphism_ids().all(|m| {
            let image = self.morphisms[m.0];
            b.source(image) == self.objects[a.source(m).0] && b.target(image) == self.objects[a.target(m).0]
        });
        endpoints_ok
            && a.composition_entries()
                .all(|((g, f), gf)| b.compose(self.morphisms[g.0], self.morphisms[f.0]) == Some(self.morphisms[gf.0]))
    }

    pub fn inverse(&self) -> CategoryIsomorphism {
        let mut objects = alloc::vec![ObjectId(0); self.objects.len()];
        for (i, o) in self.objects.iter().enumerate() {
            objects[o.0] = ObjectId(i);
        }
        let mut morphisms = alloc::vec![MorphismId(0); self.morphisms.len()];
        for (i, m) in self.morphisms.iter().enumerate() {
            morphisms[m.0] = MorphismId(i);
        }
        CategoryIsomorphism { objects, morphisms }
    }
}

fn is_permutation(items: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = alloc::vec![false; n];
    for i in items {
        if i >= n || core::mem::replace(&mut seen[i], true) {
            return false;
        }
    }
    true
}

/// Per-object invariant: sorted hom-set sizes into and out of the object.
fn signature(cat: &AcyclicCategory, x: ObjectId) -> (Vec<usize>, Vec<usize>) {
    let mut ins: Vec<usize> = cat.object_ids().map(|y| cat.hom(y, x).len()).filter(|&n| n > 0).collect();
    let mut outs: Vec<usize> = cat.object_ids().map(|y| cat.hom(x, y).len()).filter(|&n| n > 0).collect();
    ins.sort_unstable();
    outs.sort_unstable();
    (ins, outs)
}

struct Search<'a> {
    a: &'a AcyclicCategory,
    b: &'a AcyclicCategory,
    candidates: Vec<Vec<ObjectId>>,
    objects: Vec<Option<ObjectId>>,
    used_objects: Vec<bool>,
    morphisms: Vec<Option<MorphismId>>,
    used_morphisms: Vec<bool>,
    /// Composition entries of `a` grouped by the largest morphism index involved.
    triples_by_last: Vec<Vec<(MorphismId, MorphismId, MorphismId)>>,
}

impl Search<'_> {
    fn assign_object(&mut self, i: usize) -> bool {
        if i == self.objects.len() {
            return self.assign_morphism(0);
        }
        let x = ObjectId(i);
        for k in 0..self.candidates[i].len() {
            let y = self.candidates[i][k];
            if self.used_objects[y.0] {
                continue;
            }
            let consistent = (0..i).all(|j| {
                let (p, q) = (ObjectId(j), self.objects[j].expect("assigned"));
                self.a.hom(x, p).len() == self.b.hom(y, q).len() && self.a.hom(p, x).len() == self.b.hom(q, y).len()
            });
            if !consistent {
                continue;
            }
            self.objects[i] = Some(y);
            self.used_objects[y.0] = true;
            if self.assign_object(i + 1) {
                return true;
            }
            self.objects[i] = None;
            self.used_objects[y.0] = false;
        }
        false
    }

    fn assign_morphism(&mut self, i: usize) -> bool {
        if i == self.morphisms.len() {
            return true;
        }
        let m = MorphismId(i);
        let s = self.objects[self.a.source(m).0].expect("objects assigned");
        let t = self.objects[self.a.target(m).0].expect("objects assigned");
        for k in 0..self.b.hom(s, t).len() {
            let n = self.b.hom(s, t)[k];
            if self.used_morphisms[n.0] {
                continue;
            }
            self.morphisms[i] = Some(n);
            self.used_morphisms[n.0] = true;
            let ok = self.triples_by_last[i].iter().all(|&(g, f, gf)| {
                let (g, f, gf) =
                    (self.morphisms[g.0].unwrap(), self.morphisms[f.0].unwrap(), self.morphisms[gf.0].unwrap());
                self.b.compose(g, f) == Some(gf)
            });
            if ok && self.assign_morphism(i + 1) {
                return true;
            }
            self.morphisms[i] = None;
            self.used_morphisms[n.0] = false;
        }
        false
    }
}

impl AcyclicCategory {
    /// Searches for an isomorphism `self → other`. Object candidates are
    /// pruned by hom-set size signatures; the search order is deterministic.
    pub fn isomorphism_to(&self, other: &AcyclicCategory) -> Option<CategoryIsomorphism> {
        if self.object_count() != other.object_count() || self.morphism_count() != other.morphism_count() {
            return None;
        }
        let other_signatures: Vec<_> = other.object_ids().map(|y| signature(other, y)).collect();
        let candidates: Vec<Vec<ObjectId>> = self
            .object_ids()
            .map(|x| {
                let sig = signature(self, x);
                other.object_ids().filter(|y| other_signatures[y.0] == sig).collect()
            })
            .collect();
        if candidates.iter().any(Vec::is_empty) {
            return None;
        }
        let mut triples_by_last = alloc::vec![Vec::new(); self.morphism_count()];
        for ((g, f), gf) in self.composition_entries() {
            let last = g.0.max(f.0).max(gf.0);
            triples_by_last[last].push((g, f, gf));
        }
        let mut search = Search {
            a: self,
            b: other,
            candidates,
            objects: alloc::vec![None; self.object_count()],
            used_objects: alloc::vec![false; other.object_count()],
            morphisms: alloc::vec![None; self.morphism_count()],
            used_morphisms: alloc::vec![false; other.morphism_count()],
            triples_by_last,
        };
        if !search.assign_object(0) {
            return None;
        }
        let iso = CategoryIsomorphism {
            objects: search.objects.into_iter().map(|o| o.expect("complete")).collect(),
            morphisms: search.morphisms.into_iter().map(|m| m.expect("complete")).collect(),
        };
        debug_assert!(iso.check(self, other));
        Some(iso)
    }
}

/// Convenience wrapper for [`AcyclicCategory::isomorphism_to`].
pub fn are_isomorphic_cat(a: &AcyclicCategory, b: &AcyclicCategory) -> Option<CategoryIsomorphism> {
    a.isomorphism_to(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::RawCategory;
    use crate::fixtures;

    #[test]
    fn self_isomorphism_is_identity() {
        let a = fixtures::chain3();
        assert_eq!(a.isomorphism_to(&a), Some(CategoryIsomorphism::identity(&a)));
    }

    #[test]
    fn circle_is_not_a_two_chain() {
        let s1 = fixtures::circle_category();
        assert_eq!(s1.isomorphism_to(&s1.underlying_poset()), None);
    }

    #[test]
    fn relabelled_chain_is_found() {
        let b = RawCategory::new()
            .object("c")
            .object("a")
            .object("b")
            .morphism("u", "c", "a")
            .morphism("v", "a", "b")
            .morphism("w", "c", "b")
            .composite("v", "u", "w")
            .validate()
            .unwrap();
        let a = fixtures::chain3();
        let iso = a.isomorphism_to(&b).unwrap();
        assert!(iso.check(&a, &b));
        assert!(iso.inverse().check(&b, &a));
    }

    #[test]
    fn composition_distinguishes_otherwise_equal_shapes() {
        // Two parallel 0 -> 1 morphisms, one 1 -> 2, and two 0 -> 2 composites
        // versus the same shape where both composites coincide with a third 0 -> 2.
        let base = || {
            RawCategory::new()
                .object("0")
                .object("1")
                .object("2")
                .morphism("p", "0", "1")
                .morphism("q", "0", "1")
                .morphism("g", "1", "2")
                .morphism("r", "0", "2")
                .morphism("s", "0", "2")
        };
        let distinct = base().composite("g", "p", "r").composite("g", "q", "s").validate().unwrap();
        let merged = base().composite("g", "p", "r").composite("g", "q", "r").validate().unwrap();
        assert!(distinct.isomorphism_to(&merged).is_none());
        assert!(are_isomorphic_cat(&merged, &merged).is_some());
    }
}
