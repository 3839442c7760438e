//! Seeded random instances.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{AcyclicCategory, RawCategory, RawComposite, RawMorphism};
use crate::delta::{DeltaComplex, RawComplex, RawFace, RawSimplex, SimplexId};

/// Knobs shared by both generators. Identical parameters give identical output.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorParams {
    pub seed: u64,
    /// Upper bound on objects or vertices; the actual count is drawn from `1..=max_size`.
    pub max_size: usize,
    /// Most parallel generators between two objects, or copies of one boundary.
    pub max_parallel: usize,
    /// Highest simplex dimension.
    pub max_dim: usize,
    /// Probability of a generator between two objects, or of attaching a simplex.
    pub density: f64,
    /// Probability of identifying a composite with another parallel morphism.
    pub quotient: f64,
    /// Probability of each extra parallel copy.
    pub multiplicity: f64,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            seed: 0,
            max_size: 6,
            max_parallel: 2,
            max_dim: 3,
            density: 0.5,
            quotient: 0.6,
            multiplicity: 0.3,
        }
    }
}

impl GeneratorParams {
    pub fn with_seed(seed: u64) -> Self {
        GeneratorParams { seed, ..Self::default() }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn copies(&self, rng: &mut ChaCha8Rng) -> usize {
        let mut n = 1;
        while n < self.max_parallel && rng.gen_bool(self.multiplicity.clamp(0.0, 1.0)) {
            n += 1;
        }
        n
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi] = lo;
        true
    }
}

/// A random acyclic category: generators along a random DAG, all their
/// paths as the free category, then random identifications of composites
/// with parallel morphisms closed up to a congruence.
pub fn random_acyclic_category(p: &GeneratorParams) -> AcyclicCategory {
    let mut rng = p.rng();
    let n = rng.gen_range(1..=p.max_size.max(1));
    let density = p.density.clamp(0.0, 1.0);
    let mut generators: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                for _ in 0..p.copies(&mut rng) {
                    generators.push((i, j));
                }
            }
        }
    }
    let mut out_gens: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for (g, &(i, _)) in generators.iter().enumerate() {
        out_gens[i].push(g);
    }

    // Paths of generators, shortest first.
    let mut paths: Vec<Vec<usize>> = (0..generators.len()).map(|g| alloc::vec![g]).collect();
    let mut start = 0;
    while start < paths.len() {
        let end = paths.len();
        for k in start..end {
            let last = generators[*paths[k].last().expect("nonempty")].1;
            for &g in &out_gens[last] {
                let mut next = paths[k].clone();
                next.push(g);
                paths.push(next);
            }
        }
        start = end;
    }
    let index: BTreeMap<Vec<usize>, usize> = paths.iter().enumerate().map(|(i, q)| (q.clone(), i)).collect();
    let endpoints = |q: &[usize]| (generators[q[0]].0, generators[*q.last().expect("nonempty")].1);

    let mut uf = UnionFind((0..paths.len()).collect());
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let close = |uf: &mut UnionFind, pending: &mut Vec<(usize, usize)>| {
        while let Some((a, b)) = pending.pop() {
            if !uf.union(a, b) {
                continue;
            }
            let (pa, pb) = (&paths[a], &paths[b]);
            let (s, t) = endpoints(pa);
            for &g in &out_gens[t] {
                let (mut x, mut y) = (pa.clone(), pb.clone());
                x.push(g);
                y.push(g);
                pending.push((index[&x], index[&y]));
            }
            for (g, &(_, gt)) in generators.iter().enumerate() {
                if gt == s {
                    let x: Vec<usize> = core::iter::once(g).chain(pa.iter().copied()).collect();
                    let y: Vec<usize> = core::iter::once(g).chain(pb.iter().copied()).collect();
                    pending.push((index[&x], index[&y]));
                }
            }
        }
    };
    let quotient = p.quotient.clamp(0.0, 1.0);
    for k in 0..paths.len() {
        if paths[k].len() < 2 || !rng.gen_bool(quotient) {
            continue;
        }
        let ends = endpoints(&paths[k]);
        let parallel: Vec<usize> = (0..paths.len()).filter(|&j| j != k && endpoints(&paths[j]) == ends).collect();
        if let Some(&j) = parallel.choose(&mut rng) {
            pending.push((k, j));
            close(&mut uf, &mut pending);
        }
    }

    let mut class_name: BTreeMap<usize, String> = BTreeMap::new();
    for k in 0..paths.len() {
        let r = uf.find(k);
        let next = class_name.len();
        class_name.entry(r).or_insert_with(|| format!("m{next}"));
    }
    let object = |i: usize| format!("o{i}");
    let mut raw = RawCategory { objects: (0..n).map(object).collect(), ..RawCategory::default() };
    for (&r, name) in &class_name {
        let (s, t) = endpoints(&paths[r]);
        raw.morphisms.push(RawMorphism { id: name.clone(), source: object(s), target: object(t) });
    }
    for (&rf, f_name) in &class_name {
        let t = endpoints(&paths[rf]).1;
        for (&rg, g_name) in &class_name {
            if endpoints(&paths[rg]).0 != t {
                continue;
            }
            let joined: Vec<usize> = paths[rf].iter().chain(&paths[rg]).copied().collect();
            let r = uf.find(index[&joined]);
            raw.compose.push(RawComposite { g: g_name.clone(), f: f_name.clone(), result: class_name[&r].clone() });
        }
    }
    raw.validate().expect("quotient of a free category by a congruence is acyclic")
}

/// A random Δ-complex grown dimension by dimension. A vertex set is
/// admissible when some choice of existing faces satisfies both face
/// conditions; each attachment picks such a boundary, possibly several times.
pub fn random_delta_complex(p: &GeneratorParams) -> DeltaComplex {
    let mut rng = p.rng();
    let n = rng.gen_range(1..=p.max_size.max(1));
    let density = p.density.clamp(0.0, 1.0);
    let mut raw = RawComplex::new();
    for i in 0..n {
        raw = raw.vertex(format!("v{i}"));
    }
    let mut complex = raw.validate().expect("vertices only");
    for d in 1..=p.max_dim {
        let mut added = false;
        for set in subsets(n, d + 1) {
            let mut ids: Vec<SimplexId> =
                set.iter().map(|&i| complex.by_name(&format!("v{i}")).expect("vertex")).collect();
            ids.sort_unstable();
            let patterns = boundary_patterns(&complex, &ids);
            if patterns.is_empty() || !rng.gen_bool(density) {
                continue;
            }
            for _ in 0..p.copies(&mut rng) {
                let pattern = patterns.choose(&mut rng).expect("nonempty");
                let name = format!("{}{}", simplex_prefix(d), raw.simplices.len() - n);
                raw.simplices.push(RawSimplex {
                    id: name.clone(),
                    dimension: d,
                    vertices: ids.iter().map(|v| complex.name(*v).into()).collect(),
                });
                for (v, f) in ids.iter().zip(pattern) {
                    raw.faces.push(RawFace {
                        simplex: name.clone(),
                        vertex: complex.name(*v).into(),
                        result: complex.name(*f).into(),
                    });
                }
                added = true;
            }
        }
        if !added {
            break;
        }
        complex = raw.validate().expect("admissible attachments keep the face conditions");
    }
    complex
}

fn simplex_prefix(d: usize) -> String {
    match d {
        1 => "e".into(),
        2 => "t".into(),
        _ => format!("s{d}_"),
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(n: usize, k: usize, from: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in from..n {
            current.push(i);
            go(n, k, i + 1, current, out);
            current.pop();
        }
    }
    go(n, k, 0, &mut current, &mut out);
    out
}

/// Choices of faces `f_v` (one per vertex `v` of `vertices`, with vertex
/// set `vertices ∖ v`) satisfying `d_w f_v = d_v f_w`.
fn boundary_patterns(x: &DeltaComplex, vertices: &[SimplexId]) -> Vec<Vec<SimplexId>> {
    let options: Vec<Vec<SimplexId>> = vertices
        .iter()
        .map(|&v| {
            let rest: Vec<SimplexId> = vertices.iter().copied().filter(|&w| w != v).collect();
            x.simplices_with_vertex_set(&rest).to_vec()
        })
        .collect();
    if options.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(vertices.len());
    fn go(
        x: &DeltaComplex,
        vertices: &[SimplexId],
        options: &[Vec<SimplexId>],
        chosen: &mut Vec<SimplexId>,
        out: &mut Vec<Vec<SimplexId>>,
    ) {
        let i = chosen.len();
        if i == vertices.len() {
            out.push(chosen.clone());
            return;
        }
        for &f in &options[i] {
            let ok = (0..i).all(|j| {
                // Faces of a vertex set of size two are vertices; nothing to check.
                vertices.len() < 3 || x.face(f, vertices[j]) == x.face(chosen[j], vertices[i])
            });
            if ok {
                chosen.push(f);
                go(x, vertices, options, chosen, out);
                chosen.pop();
            }
        }
    }
    go(x, vertices, &options, &mut chosen, &mut out);
    out
}

/// An isomorphic copy of `cat` with fresh names `p:` + a shuffled index.
pub fn relabel_category(cat: &AcyclicCategory, seed: u64) -> AcyclicCategory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut objects: Vec<usize> = (0..cat.object_count()).collect();
    objects.shuffle(&mut rng);
    let mut morphisms: Vec<usize> = (0..cat.morphism_count()).collect();
    morphisms.shuffle(&mut rng);
    let oname = |x: crate::category::ObjectId| format!("p{}", objects[x.0]);
    let mname = |m: crate::category::MorphismId| format!("q{}", morphisms[m.0]);
    let mut raw = RawCategory { objects: cat.object_ids().map(oname).collect(), ..RawCategory::default() };
    for m in cat.morphism_ids() {
        raw.morphisms.push(RawMorphism { id: mname(m), source: oname(cat.source(m)), target: oname(cat.target(m)) });
    }
    for ((g, f), r) in cat.composition_entries() {
        raw.compose.push(RawComposite { g: mname(g), f: mname(f), result: mname(r) });
    }
    raw.validate().expect("relabelling preserves validity")
}

/// An isomorphic copy of `x` with fresh names `w` + a shuffled index.
pub fn relabel_complex(x: &DeltaComplex, seed: u64) -> DeltaComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..x.simplex_count()).collect();
    perm.shuffle(&mut rng);
    let name = |s: SimplexId| format!("w{}", perm[s.0]);
    let mut raw = RawComplex::new();
    for s in x.simplex_ids() {
        raw.simplices.push(RawSimplex {
            id: name(s),
            dimension: x.dim(s),
            vertices: x.vertex_set(s).iter().map(|&v| name(v)).collect(),
        });
        for (&v, &f) in x.vertex_set(s).iter().zip(x.faces(s)) {
            raw.faces.push(RawFace { simplex: name(s), vertex: name(v), result: name(f) });
        }
    }
    raw.validate().expect("relabelling preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_density_gives_discrete_category() {
        for seed in 0..20 {
            let cat = random_acyclic_category(&GeneratorParams { seed, density: 0.0, ..Default::default() });
            assert_eq!(cat.morphism_count(), 0);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let p = GeneratorParams::with_seed(42);
        assert_eq!(random_acyclic_category(&p), random_acyclic_category(&p));
        assert_eq!(random_delta_complex(&p), random_delta_complex(&p));
    }

    #[test]
    fn generated_instances_validate() {
        for seed in 0..300 {
            let p = GeneratorParams::with_seed(seed);
            let cat = random_acyclic_category(&p);
            assert_eq!(cat.to_raw().validate().as_ref(), Ok(&cat));
            let x = random_delta_complex(&p);
            assert_eq!(x.to_raw().validate().as_ref(), Ok(&x));
        }
    }

    #[test]
    fn one_dimensional_complexes_include_multi_edges() {
        let found = (0..200).any(|seed| {
            let x =
                random_delta_complex(&GeneratorParams { seed, max_dim: 1, multiplicity: 0.8, ..Default::default() });
            x.vertices().any(|a| x.vertices().any(|b| a < b && x.simplices_with_vertex_set(&[a, b]).len() > 1))
        });
        assert!(found);
    }

    #[test]
    fn relabelled_copies_are_isomorphic() {
        for seed in 0..20 {
            let p = GeneratorParams::with_seed(seed);
            let cat = random_acyclic_category(&p);
            assert!(cat.isomorphism_to(&relabel_category(&cat, seed + 1)).is_some());
            let x = random_delta_complex(&p);
            assert!(x.isomorphism_to(&relabel_complex(&x, seed + 1)).is_some());
        }
    }
}
