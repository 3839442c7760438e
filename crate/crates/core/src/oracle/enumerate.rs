//! Exhaustive enumeration of Δ-maps and functors, and bounded zig-zag search.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::{Budget, OracleError};
use crate::category::{
    find_natural_transformation, AcyclicCategory, Arrow, FunctorData, MorphismId, NaturalTransformationData,
};
use crate::delta::{DeltaComplex, DeltaMap, SimplexId};

/// Every Δ-map `x → y`: all vertex maps, each extended to all simplex
/// assignments that meet the vertex-set and face conditions.
pub fn enumerate_delta_maps<B: Budget>(
    x: &DeltaComplex,
    y: &DeltaComplex,
    budget: &mut B,
) -> Result<Vec<DeltaMap>, OracleError> {
    let mut out = Vec::new();
    if x.is_empty() {
        out.push(DeltaMap { images: Vec::new() });
        return Ok(out);
    }
    if y.vertex_count() == 0 {
        return Ok(out);
    }
    let mut images = alloc::vec![SimplexId(0); x.simplex_count()];
    extend(x, y, 0, &mut images, &mut out, budget)?;
    Ok(out)
}

fn extend<B: Budget>(
    x: &DeltaComplex,
    y: &DeltaComplex,
    i: usize,
    images: &mut Vec<SimplexId>,
    out: &mut Vec<DeltaMap>,
    budget: &mut B,
) -> Result<(), OracleError> {
    budget.charge(1)?;
    if i == x.simplex_count() {
        let map = DeltaMap { images: images.clone() };
        debug_assert!(map.is_valid(x, y));
        out.push(map);
        return Ok(());
    }
    let s = SimplexId(i);
    if x.dim(s) == 0 {
        for w in y.vertices() {
            images[i] = w;
            extend(x, y, i + 1, images, out, budget)?;
        }
        return Ok(());
    }
    let mut vs: Vec<SimplexId> = x.vertex_set(s).iter().map(|v| images[v.0]).collect();
    vs.sort_unstable();
    vs.dedup();
    if vs.len() > x.dim(s) + 1 {
        return Ok(());
    }
    for &t in y.simplices_with_vertex_set(&vs) {
        let ok = x.vertex_set(s).iter().zip(x.faces(s)).all(|(&w, &face)| {
            let fw = images[w.0];
            let preimages = x.vertex_set(s).iter().filter(|&&u| images[u.0] == fw).count();
            let expected = if preimages == 1 { y.face(t, fw) } else { Some(t) };
            expected == Some(images[face.0])
        });
        if ok {
            images[i] = t;
            extend(x, y, i + 1, images, out, budget)?;
        }
    }
    Ok(())
}

/// Every functor `a → b`.
pub fn enumerate_functors<B: Budget>(
    a: &AcyclicCategory,
    b: &AcyclicCategory,
    budget: &mut B,
) -> Result<Vec<FunctorData>, OracleError> {
    let mut triples_by_last = alloc::vec![Vec::new(); a.morphism_count()];
    for ((g, f), gf) in a.composition_entries() {
        triples_by_last[g.0.max(f.0).max(gf.0)].push((g, f, gf));
    }
    let mut search = FunctorSearch {
        a,
        b,
        triples_by_last,
        objects: Vec::with_capacity(a.object_count()),
        morphisms: Vec::with_capacity(a.morphism_count()),
        out: Vec::new(),
    };
    search.objects(budget)?;
    Ok(search.out)
}

struct FunctorSearch<'a> {
    a: &'a AcyclicCategory,
    b: &'a AcyclicCategory,
    triples_by_last: Vec<Vec<(MorphismId, MorphismId, MorphismId)>>,
    objects: Vec<crate::category::ObjectId>,
    morphisms: Vec<Arrow>,
    out: Vec<FunctorData>,
}

impl FunctorSearch<'_> {
    fn objects<B: Budget>(&mut self, budget: &mut B) -> Result<(), OracleError> {
        budget.charge(1)?;
        let i = self.objects.len();
        if i == self.a.object_count() {
            return self.morphisms(budget);
        }
        for y in self.b.object_ids() {
            self.objects.push(y);
            // Any morphism between already-assigned objects needs a target arrow.
            let x = crate::category::ObjectId(i);
            let feasible = (0..i).all(|j| {
                let p = crate::category::ObjectId(j);
                let q = self.objects[j];
                (self.a.hom(p, x).is_empty() || !self.b.arrows(q, y).is_empty())
                    && (self.a.hom(x, p).is_empty() || !self.b.arrows(y, q).is_empty())
            });
            if feasible {
                self.objects(budget)?;
            }
            self.objects.pop();
        }
        Ok(())
    }

    fn morphisms<B: Budget>(&mut self, budget: &mut B) -> Result<(), OracleError> {
        budget.charge(1)?;
        let i = self.morphisms.len();
        if i == self.a.morphism_count() {
            let f = FunctorData { objects: self.objects.clone(), morphisms: self.morphisms.clone() };
            debug_assert!(f.check(self.a, self.b).is_ok());
            self.out.push(f);
            return Ok(());
        }
        let m = MorphismId(i);
        let (s, t) = (self.objects[self.a.source(m).0], self.objects[self.a.target(m).0]);
        for arrow in self.b.arrows(s, t) {
            self.morphisms.push(arrow);
            let ok = self.triples_by_last[i].iter().all(|&(g, f, gf)| {
                self.b.compose_arrows(self.morphisms[g.0], self.morphisms[f.0]) == Some(self.morphisms[gf.0])
            });
            if ok {
                self.morphisms(budget)?;
            }
            self.morphisms.pop();
        }
        Ok(())
    }
}

/// One link of a zig-zag: a transformation from the previous functor to
/// the next (`forward`) or from the next to the previous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigZagStep {
    pub forward: bool,
    pub transformation: NaturalTransformationData,
}

/// Functors `H₀, …, Hₙ` joined by natural transformations in either direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigZag {
    pub functors: Vec<FunctorData>,
    pub steps: Vec<ZigZagStep>,
}

/// Breadth-first search for a zig-zag of at most `max_len` transformations
/// joining `f` and `g`. `None` only means nothing was found within the bound.
pub fn homotopic_functors_bounded<B: Budget>(
    a: &AcyclicCategory,
    b: &AcyclicCategory,
    f: &FunctorData,
    g: &FunctorData,
    max_len: usize,
    budget: &mut B,
) -> Result<Option<ZigZag>, OracleError> {
    if f == g {
        return Ok(Some(ZigZag { functors: alloc::vec![f.clone()], steps: Vec::new() }));
    }
    let all = enumerate_functors(a, b, budget)?;
    let index: BTreeMap<&FunctorData, usize> = all.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let (Some(&start), Some(&goal)) = (index.get(f), index.get(g)) else {
        return Ok(None);
    };
    let mut parent: Vec<Option<(usize, ZigZagStep)>> = alloc::vec![None; all.len()];
    let mut depth = alloc::vec![usize::MAX; all.len()];
    depth[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if u == goal {
            break;
        }
        if depth[u] == max_len {
            continue;
        }
        for v in 0..all.len() {
            if depth[v] != usize::MAX {
                continue;
            }
            budget.charge(1)?;
            let step = match find_natural_transformation(a, b, &all[u], &all[v]) {
                Some(t) => Some(ZigZagStep { forward: true, transformation: t }),
                None => find_natural_transformation(a, b, &all[v], &all[u])
                    .map(|t| ZigZagStep { forward: false, transformation: t }),
            };
            if let Some(step) = step {
                depth[v] = depth[u] + 1;
                parent[v] = Some((u, step));
                queue.push_back(v);
            }
        }
    }
    if depth[goal] == usize::MAX {
        return Ok(None);
    }
    let mut functors = alloc::vec![all[goal].clone()];
    let mut steps = Vec::new();
    let mut at = goal;
    while let Some((p, step)) = parent[at].clone() {
        functors.push(all[p].clone());
        steps.push(step);
        at = p;
    }
    functors.reverse();
    steps.reverse();
    Ok(Some(ZigZag { functors, steps }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::check_natural_transformation;
    use crate::fixtures;
    use crate::functors::classifying_space;
    use crate::oracle::Unlimited;

    #[test]
    fn four_maps_from_two_points_to_the_circle() {
        let b0 = classifying_space(&fixtures::discrete_pair()).complex;
        let b1 = classifying_space(&fixtures::circle_category()).complex;
        let maps = enumerate_delta_maps(&b0, &b1, &mut Unlimited).unwrap();
        assert_eq!(maps.len(), 4);
    }

    #[test]
    fn maps_to_and_from_a_point() {
        let p = fixtures::point_complex();
        for x in [fixtures::disc_complex(), fixtures::sphere_complex(), fixtures::circle_complex()] {
            assert_eq!(enumerate_delta_maps(&x, &p, &mut Unlimited).unwrap().len(), 1);
        }
        assert_eq!(enumerate_delta_maps(&p, &fixtures::circle_complex(), &mut Unlimited).unwrap().len(), 2);
    }

    #[test]
    fn circle_self_maps() {
        // Four edge assignments over each of the two vertex bijections, plus two constants.
        let s1 = fixtures::circle_complex();
        let maps = enumerate_delta_maps(&s1, &s1, &mut Unlimited).unwrap();
        assert_eq!(maps.len(), 10);
        assert!(maps.iter().all(|m| m.is_valid(&s1, &s1)));
    }

    #[test]
    fn functor_counts() {
        let chain = fixtures::chain3();
        // Order-preserving self-maps of a 3-chain: C(5, 3) = 10.
        assert_eq!(enumerate_functors(&chain, &chain, &mut Unlimited).unwrap().len(), 10);
        let s0 = fixtures::discrete_pair();
        let s1 = fixtures::circle_category();
        assert_eq!(enumerate_functors(&s0, &s1, &mut Unlimited).unwrap().len(), 4);
        // Four ways to send the parallel pair to itself, plus two constants.
        assert_eq!(enumerate_functors(&s1, &s1, &mut Unlimited).unwrap().len(), 6);
    }

    #[test]
    fn zig_zags() {
        let s0 = fixtures::discrete_pair();
        let s1 = fixtures::circle_category();
        let x = s1.object_by_name("x").unwrap();
        let y = s1.object_by_name("y").unwrap();
        let (cx, cy) = (FunctorData::constant(&s0, x), FunctorData::constant(&s0, y));
        let same = homotopic_functors_bounded(&s0, &s1, &cx, &cx, 0, &mut Unlimited).unwrap().unwrap();
        assert!(same.steps.is_empty());
        let z = homotopic_functors_bounded(&s0, &s1, &cx, &cy, 1, &mut Unlimited).unwrap().unwrap();
        assert_eq!(z.steps.len(), 1);
        assert!(z.steps[0].forward);
        assert!(check_natural_transformation(&s0, &s1, &cx, &cy, &z.steps[0].transformation));

        let p = fixtures::discrete_pair();
        let point = fixtures::point_category();
        let (cp, cq) = (
            FunctorData::constant(&point, p.object_by_name("p").unwrap()),
            FunctorData::constant(&point, p.object_by_name("q").unwrap()),
        );
        assert!(homotopic_functors_bounded(&point, &p, &cp, &cq, 5, &mut Unlimited).unwrap().is_none());
    }
}
