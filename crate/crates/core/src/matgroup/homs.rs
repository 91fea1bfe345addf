//! Homomorphism search by backtracking over generator images.
//!
//! The source is a Cayley graph over a greedily minimized generating set.
//! A generator assignment is a homomorphism iff every non-tree edge relator
//! evaluates to the identity; relators are checked as soon as all their
//! letters are assigned, shortest first.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matgroup::cayley::CayleyGraph;
use crate::matgroup::perm::Perm;

/// A group in which candidate images live.
pub trait Target {
    type Elem: Clone + Eq;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

pub struct Symmetric(pub usize);

impl Target for Symmetric {
    type Elem = Perm;
    fn identity(&self) -> Perm {
        Perm::identity(self.0)
    }
    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.compose(b)
    }
    fn inv(&self, a: &Perm) -> Perm {
        a.inverse()
    }
}

impl Target for CayleyGraph {
    type Elem = u32;
    fn identity(&self) -> u32 {
        0
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        CayleyGraph::mul(self, *a, *b)
    }
    fn inv(&self, a: &u32) -> u32 {
        CayleyGraph::inverse(self, *a)
    }
}

/// A source group prepared for homomorphism search.
pub struct HomSource {
    graph: CayleyGraph,
    /// Source element index of each element of `graph`.
    to_source: Vec<u32>,
    /// Relators grouped by their largest generator letter.
    levels: Vec<Vec<Vec<(u8, bool)>>>,
}

impl HomSource {
    pub fn new(source: &CayleyGraph) -> Result<Self> {
        let all: Vec<u32> = (0..source.ngens()).map(|g| source.generator(g)).collect();
        let gens = source.greedy_generators(&all);
        let (graph, to_source) = source.regenerate(&gens)?;
        let mut levels: Vec<Vec<Vec<(u8, bool)>>> = vec![Vec::new(); graph.ngens()];
        for r in graph.relations() {
            let w = graph.relator(&r);
            let top = w.iter().map(|&(g, _)| g).max().expect("nonempty relator");
            levels[top as usize].push(w);
        }
        for l in &mut levels {
            l.sort_by_key(Vec::len);
        }
        Ok(HomSource {
            graph,
            to_source,
            levels,
        })
    }

    pub fn ngens(&self) -> usize {
        self.graph.ngens()
    }

    /// Order of the `i`-th search generator.
    pub fn generator_order(&self, i: usize) -> u32 {
        self.graph.element_order(self.graph.generator(i))
    }

    /// Calls `visit` for every generator assignment (drawn from
    /// `candidates[i]`) that extends to a homomorphism. Stops early when
    /// `visit` returns false.
    pub fn search<T: Target>(
        &self,
        target: &T,
        candidates: &[Vec<T::Elem>],
        visit: &mut dyn FnMut(&[T::Elem]) -> bool,
    ) {
        let mut images: Vec<T::Elem> = Vec::with_capacity(self.ngens());
        let mut inverses: Vec<T::Elem> = Vec::with_capacity(self.ngens());
        self.descend(target, candidates, &mut images, &mut inverses, visit);
    }

    fn descend<T: Target>(
        &self,
        target: &T,
        candidates: &[Vec<T::Elem>],
        images: &mut Vec<T::Elem>,
        inverses: &mut Vec<T::Elem>,
        visit: &mut dyn FnMut(&[T::Elem]) -> bool,
    ) -> bool {
        let level = images.len();
        if level == self.ngens() {
            return visit(images);
        }
        for c in &candidates[level] {
            images.push(c.clone());
            inverses.push(target.inv(c));
            let ok = self.levels[level].iter().all(|w| {
                let mut p = target.identity();
                for &(g, inv) in w {
                    let x = if inv { &inverses[g as usize] } else { &images[g as usize] };
                    p = target.mul(&p, x);
                }
                p == target.identity()
            });
            let keep_going = !ok || self.descend(target, candidates, images, inverses, visit);
            images.pop();
            inverses.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }

    /// Extends a generator assignment to every source element, indexed by
    /// the original source numbering.
    pub fn extend<T: Target>(&self, target: &T, images: &[T::Elem]) -> Vec<T::Elem> {
        let n = self.graph.order();
        let mut local: Vec<T::Elem> = Vec::with_capacity(n);
        local.push(target.identity());
        for x in 1..n as u32 {
            let (p, g) = self.graph.tree_edge(x).expect("non-identity");
            // BFS numbering puts parents first.
            local.push(target.mul(&local[p as usize], &images[g]));
        }
        let mut out = vec![target.identity(); n];
        for (x, v) in local.into_iter().enumerate() {
            out[self.to_source[x] as usize] = v;
        }
        out
    }
}

/// A homomorphism to `Sym(k)`, stored on every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermHom {
    pub degree: usize,
    pub images: Vec<Perm>,
}

impl PermHom {
    /// Elements fixing `point`.
    pub fn stabilizer(&self, point: usize) -> Vec<u32> {
        (0..self.images.len() as u32)
            .filter(|&x| self.images[x as usize].apply(point) == point)
            .collect()
    }
}

fn is_transitive(images: &[Perm], k: usize) -> bool {
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for p in images {
            let j = p.apply(i);
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Lexicographically least relabeling `s p s^-1` of a generator tuple.
fn canonical_relabeling(images: &[Perm], all: &[Perm]) -> Vec<Perm> {
    all.iter()
        .map(|s| {
            let si = s.inverse();
            images.iter().map(|p| s.compose(p).compose(&si)).collect::<Vec<_>>()
        })
        .min()
        .expect("nonempty symmetric group")
}

/// Transitive homomorphisms `G -> Sym(k)` up to relabeling points. Every
/// subgroup of index `k` is the stabilizer of point 0 for some result.
pub fn enumerate_transitive_homs(graph: &CayleyGraph, k: usize, cap: usize) -> Result<Vec<PermHom>> {
    if graph.order() > cap {
        return Err(Error::CapExceeded { cap });
    }
    if !(1..=crate::matgroup::perm::MAX_POINTS).contains(&k) {
        return Err(Error::InvalidParameter(format!("degree {k} out of range")));
    }
    let src = HomSource::new(graph)?;
    let all = Perm::all(k);
    let candidates: Vec<Vec<Perm>> = (0..src.ngens())
        .map(|i| {
            let ord = src.generator_order(i) as u64;
            all.iter().copied().filter(|p| ord.is_multiple_of(p.order())).collect()
        })
        .collect();
    let mut found: BTreeSet<Vec<Perm>> = BTreeSet::new();
    let target = Symmetric(k);
    src.search(&target, &candidates, &mut |imgs| {
        if is_transitive(imgs, k) {
            found.insert(canonical_relabeling(imgs, &all));
        }
        true
    });
    Ok(found
        .into_iter()
        .map(|imgs| PermHom {
            degree: k,
            images: src.extend(&target, &imgs),
        })
        .collect())
}

/// An isomorphism `a -> b` as an element map, if one exists.
pub fn find_isomorphism(a: &CayleyGraph, b: &CayleyGraph, cap: usize) -> Result<Option<Vec<u32>>> {
    if a.order() > cap || b.order() > cap {
        return Err(Error::CapExceeded { cap });
    }
    if a.order() != b.order() {
        return Ok(None);
    }
    let src = HomSource::new(a)?;
    let candidates: Vec<Vec<u32>> = (0..src.ngens())
        .map(|i| {
            let ord = src.generator_order(i);
            (0..b.order() as u32).filter(|&y| b.element_order(y) == ord).collect()
        })
        .collect();
    let mut witness: Option<Vec<u32>> = None;
    src.search(b, &candidates, &mut |imgs| {
        if b.subgroup_generated(imgs).len() == b.order() {
            witness = Some(imgs.to_vec());
            false
        } else {
            true
        }
    });
    Ok(witness.map(|imgs| src.extend(b, &imgs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::cayley::closure;

    fn graph(gens: &[Perm]) -> CayleyGraph {
        closure(Perm::identity(gens[0].degree()), gens, |a, b| a.compose(b), 10_000)
            .unwrap()
            .1
    }

    fn cyclic(n: usize) -> CayleyGraph {
        let cycle: Vec<usize> = (0..n).collect();
        graph(&[Perm::from_cycles(n, &[&cycle]).unwrap()])
    }

    #[test]
    fn cyclic_five_has_no_index_two_subgroup() {
        assert!(enumerate_transitive_homs(&cyclic(5), 2, 100).unwrap().is_empty());
    }

    #[test]
    fn cyclic_six_onto_three_points() {
        let homs = enumerate_transitive_homs(&cyclic(6), 3, 100).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].stabilizer(0).len(), 2);
    }

    #[test]
    fn symmetric_four_on_three_and_four_points() {
        let s4 = graph(&[
            Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
        ]);
        // index 4: point stabilizers S3 (one conjugacy class); index 3: D8
        assert_eq!(enumerate_transitive_homs(&s4, 4, 100).unwrap().len(), 1);
        assert_eq!(enumerate_transitive_homs(&s4, 3, 100).unwrap().len(), 1);
        // index 2: A4
        let h2 = enumerate_transitive_homs(&s4, 2, 100).unwrap();
        assert_eq!(h2.len(), 1);
        assert_eq!(h2[0].stabilizer(0).len(), 12);
        for h in enumerate_transitive_homs(&s4, 4, 100).unwrap() {
            for x in 0..24u32 {
                for y in (0..24u32).step_by(5) {
                    assert_eq!(
                        h.images[s4.mul(x, y) as usize],
                        h.images[x as usize].compose(&h.images[y as usize])
                    );
                }
            }
        }
    }

    #[test]
    fn cap_applies() {
        assert_eq!(
            enumerate_transitive_homs(&cyclic(6), 2, 5).err(),
            Some(Error::CapExceeded { cap: 5 })
        );
    }

    #[test]
    fn isomorphism_between_models_of_a5() {
        let a = graph(&[
            Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
        ]);
        let b = graph(&[
            Perm::from_cycles(5, &[&[0, 1], &[2, 3]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 2, 4]]).unwrap(),
        ]);
        let iso = find_isomorphism(&a, &b, 100).unwrap().expect("isomorphic");
        for x in 0..60u32 {
            for y in (0..60u32).step_by(7) {
                assert_eq!(iso[a.mul(x, y) as usize], b.mul(iso[x as usize], iso[y as usize]));
            }
        }
        let s4 = graph(&[
            Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
        ]);
        assert!(find_isomorphism(&a, &s4, 100).unwrap().is_none());
        assert!(find_isomorphism(&s4, &s4, 100).unwrap().is_some());
    }

    #[test]
    fn non_isomorphic_groups_of_equal_order() {
        let c4 = cyclic(4);
        let v4 = graph(&[
            Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(4, &[&[2, 3]]).unwrap(),
        ]);
        assert!(find_isomorphism(&c4, &v4, 100).unwrap().is_none());
    }
}
