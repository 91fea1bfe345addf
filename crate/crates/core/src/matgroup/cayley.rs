//! Right Cayley graphs of finite groups given by a multiplication table
//! against a generating list.
//!
//! Element 0 is the identity. Element numbering is the BFS discovery order
//! from the identity, scanning generators in list order.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const NO_GEN: u8 = u8::MAX;

/// One non-tree edge: `word(from) * gen = word(to)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relation {
    pub from: u32,
    pub gen: u8,
    pub to: u32,
}

#[derive(Clone, Debug)]
pub struct CayleyGraph {
    ngens: usize,
    /// `table[x * ngens + g] = x * g`.
    table: Vec<u32>,
    /// `table_inv[x * ngens + g] = x * g^-1`.
    table_inv: Vec<u32>,
    parent: Vec<u32>,
    parent_gen: Vec<u8>,
    depth: Vec<u32>,
    /// Generator exponent counts of each BFS word.
    exponents: Vec<i64>,
    inverses: OnceLock<Vec<u32>>,
    orders: OnceLock<Vec<u32>>,
}

/// BFS closure of `gens` under right multiplication. Returns the elements
/// in discovery order and the Cayley graph. Fails once more than `cap`
/// elements are found.
pub fn closure<T, M>(identity: T, gens: &[T], mul: M, cap: usize) -> Result<(Vec<T>, CayleyGraph)>
where
    T: Clone + Eq + Hash,
    M: Fn(&T, &T) -> T,
{
    if gens.len() >= NO_GEN as usize {
        return Err(Error::InvalidParameter(format!("too many generators ({})", gens.len())));
    }
    let ngens = gens.len();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<T, u32> = HashMap::new();
    index.insert(identity, 0);
    let mut table: Vec<u32> = Vec::new();
    let mut next = 0usize;
    while next < elements.len() {
        for g in gens {
            let y = mul(&elements[next], g);
            let id = match index.get(&y) {
                Some(&id) => id,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    let id = elements.len() as u32;
                    index.insert(y.clone(), id);
                    elements.push(y);
                    id
                }
            };
            table.push(id);
        }
        next += 1;
    }
    let graph = CayleyGraph::from_table(ngens, table)?;
    Ok((elements, graph))
}

impl CayleyGraph {
    /// Builds the graph from a complete right-multiplication table with
    /// element 0 the identity.
    pub fn from_table(ngens: usize, table: Vec<u32>) -> Result<Self> {
        let n = table.len().checked_div(ngens).unwrap_or(1);
        if ngens > 0 && !table.len().is_multiple_of(ngens) {
            return Err(Error::internal("ragged Cayley table"));
        }
        let mut table_inv = vec![u32::MAX; table.len()];
        for x in 0..n {
            for g in 0..ngens {
                let y = table[x * ngens + g] as usize;
                if y >= n {
                    return Err(Error::internal("Cayley table entry out of range"));
                }
                table_inv[y * ngens + g] = x as u32;
            }
        }
        if table_inv.contains(&u32::MAX) {
            return Err(Error::internal("generator does not act bijectively"));
        }
        let mut parent = vec![u32::MAX; n];
        let mut parent_gen = vec![NO_GEN; n];
        let mut depth = vec![0u32; n];
        let mut exponents = vec![0i64; n * ngens];
        parent[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        let mut seen = 1;
        while let Some(x) = queue.pop_front() {
            for g in 0..ngens {
                let y = table[x * ngens + g] as usize;
                if parent[y] == u32::MAX {
                    parent[y] = x as u32;
                    parent_gen[y] = g as u8;
                    depth[y] = depth[x] + 1;
                    for k in 0..ngens {
                        exponents[y * ngens + k] = exponents[x * ngens + k];
                    }
                    exponents[y * ngens + g] += 1;
                    queue.push_back(y);
                    seen += 1;
                }
            }
        }
        if seen != n {
            return Err(Error::internal("Cayley table is not connected"));
        }
        Ok(CayleyGraph {
            ngens,
            table,
            table_inv,
            parent,
            parent_gen,
            depth,
            exponents,
            inverses: OnceLock::new(),
            orders: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Element index of generator `g`.
    pub fn generator(&self, g: usize) -> u32 {
        self.table[g]
    }

    pub fn mul_gen(&self, x: u32, g: usize) -> u32 {
        self.table[x as usize * self.ngens + g]
    }

    pub fn mul_gen_inv(&self, x: u32, g: usize) -> u32 {
        self.table_inv[x as usize * self.ngens + g]
    }

    pub fn depth(&self, x: u32) -> u32 {
        self.depth[x as usize]
    }

    /// Shortest generator word of `x`, first letter applied first.
    pub fn word(&self, x: u32) -> Vec<u8> {
        let mut w = Vec::with_capacity(self.depth[x as usize] as usize);
        let mut y = x as usize;
        while y != 0 {
            w.push(self.parent_gen[y]);
            y = self.parent[y] as usize;
        }
        w.reverse();
        w
    }

    /// The BFS tree edge into `x`: `(parent, gen)`; `None` for the identity.
    pub fn tree_edge(&self, x: u32) -> Option<(u32, usize)> {
        (x != 0).then(|| (self.parent[x as usize], self.parent_gen[x as usize] as usize))
    }

    pub fn exponent_vector(&self, x: u32) -> &[i64] {
        let n = self.ngens;
        &self.exponents[x as usize * n..(x as usize + 1) * n]
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let mut z = x;
        for g in self.word(y) {
            z = self.mul_gen(z, g as usize);
        }
        z
    }

    pub fn inverse(&self, x: u32) -> u32 {
        self.inverses()[x as usize]
    }

    fn inverses(&self) -> &[u32] {
        self.inverses.get_or_init(|| {
            (0..self.order() as u32)
                .map(|x| {
                    let mut z = 0;
                    for g in self.word(x).into_iter().rev() {
                        z = self.mul_gen_inv(z, g as usize);
                    }
                    z
                })
                .collect()
        })
    }

    pub fn element_order(&self, x: u32) -> u32 {
        self.orders()[x as usize]
    }

    pub fn orders(&self) -> &[u32] {
        self.orders.get_or_init(|| {
            (0..self.order() as u32)
                .map(|x| {
                    let w = self.word(x);
                    let mut k = 1;
                    let mut p = x;
                    while p != 0 {
                        for &g in &w {
                            p = self.mul_gen(p, g as usize);
                        }
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    /// `h^-1 x h`.
    pub fn conjugate(&self, x: u32, h: u32) -> u32 {
        self.mul(self.mul(self.inverse(h), x), h)
    }

    /// Orbits under conjugation, ordered by least element; each class sorted.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let n = self.order();
        let gens: Vec<u32> = (0..self.ngens).map(|g| self.generator(g)).collect();
        let gen_invs: Vec<u32> = gens.iter().map(|&g| self.inverse(g)).collect();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n as u32 {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut class = vec![start];
            class_of[start as usize] = id;
            let mut i = 0;
            while i < class.len() {
                let x = class[i];
                for (g, &gi) in gen_invs.iter().enumerate() {
                    let y = self.mul_gen(self.mul(gi, x), g);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = id;
                        class.push(y);
                    }
                }
                i += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Elements of the subgroup generated by `gens`, in BFS order.
    pub fn subgroup_generated(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &h in gens {
                let y = self.mul(x, h);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// Smallest normal subgroup containing `subset`.
    pub fn normal_closure(&self, subset: &[u32]) -> Vec<u32> {
        let gens: Vec<u32> = (0..self.ngens).map(|g| self.generator(g)).collect();
        let mut conj: Vec<u32> = subset.to_vec();
        let mut seen = vec![false; self.order()];
        for &x in subset {
            seen[x as usize] = true;
        }
        let mut i = 0;
        while i < conj.len() {
            let x = conj[i];
            for &g in &gens {
                let y = self.conjugate(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    conj.push(y);
                }
            }
            i += 1;
        }
        self.subgroup_generated(&conj)
    }

    pub fn center(&self) -> Vec<u32> {
        let gens: Vec<u32> = (0..self.ngens).map(|g| self.generator(g)).collect();
        (0..self.order() as u32)
            .filter(|&x| {
                gens.iter()
                    .enumerate()
                    .all(|(gi, &g)| self.mul(g, x) == self.mul_gen(x, gi))
            })
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        let n = self.order();
        if n == 1 {
            return false;
        }
        self.conjugacy_classes()
            .iter()
            .filter(|c| c[0] != 0)
            .all(|c| self.subgroup_generated(c).len() == n)
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<u32> = (0..self.ngens).map(|g| self.generator(g)).collect();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Every non-tree edge. Together with the tree these determine the
    /// multiplication table.
    pub fn relations(&self) -> Vec<Relation> {
        let mut out = Vec::with_capacity(self.table.len());
        for x in 0..self.order() {
            for g in 0..self.ngens {
                let y = self.table[x * self.ngens + g];
                let tree = self.parent[y as usize] as usize == x && self.parent_gen[y as usize] as usize == g;
                if !tree {
                    out.push(Relation {
                        from: x as u32,
                        gen: g as u8,
                        to: y,
                    });
                }
            }
        }
        out
    }

    /// The relator `word(from) gen word(to)^-1` as signed letters:
    /// `(g, false)` is `g`, `(g, true)` is `g^-1`.
    pub fn relator(&self, r: &Relation) -> Vec<(u8, bool)> {
        let mut w: Vec<(u8, bool)> = self.word(r.from).into_iter().map(|g| (g, false)).collect();
        w.push((r.gen, false));
        w.extend(self.word(r.to).into_iter().rev().map(|g| (g, true)));
        w
    }

    /// A subset of `candidates` generating the same subgroup, chosen greedily
    /// in order.
    pub fn greedy_generators(&self, candidates: &[u32]) -> Vec<u32> {
        let target = self.subgroup_generated(candidates).len();
        let mut chosen: Vec<u32> = Vec::new();
        let mut size = 1;
        for &c in candidates {
            if size == target {
                break;
            }
            let mut trial = chosen.clone();
            trial.push(c);
            let s = self.subgroup_generated(&trial).len();
            if s > size {
                chosen = trial;
                size = s;
            }
        }
        chosen
    }

    /// The Cayley graph of the subgroup generated by `gens` with respect to
    /// those generators, and the map from its element indices to ours.
    pub fn regenerate(&self, gens: &[u32]) -> Result<(CayleyGraph, Vec<u32>)> {
        let (elements, graph) = closure(0u32, gens, |&x, &h| self.mul(x, h), self.order())?;
        Ok((graph, elements))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::perm::Perm;

    fn perm_graph(gens: &[Perm]) -> (Vec<Perm>, CayleyGraph) {
        let id = Perm::identity(gens[0].degree());
        closure(id, gens, |a, b| a.compose(b), 10_000).unwrap()
    }

    fn a5() -> (Vec<Perm>, CayleyGraph) {
        perm_graph(&[
            Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
        ])
    }

    #[test]
    fn alternating_group_basics() {
        let (elems, g) = a5();
        assert_eq!(elems.len(), 60);
        assert_eq!(g.conjugacy_classes().len(), 5);
        assert!(g.is_simple());
        assert_eq!(g.center(), vec![0]);
        for x in 0..60u32 {
            assert_eq!(
                elems[g.mul(x, g.inverse(x)) as usize],
                Perm::identity(5)
            );
            assert_eq!(elems[x as usize].order() as u32, g.element_order(x));
        }
    }

    #[test]
    fn multiplication_matches_underlying_group() {
        let (elems, g) = a5();
        for x in (0..60u32).step_by(7) {
            for y in (0..60u32).step_by(11) {
                assert_eq!(elems[g.mul(x, y) as usize], elems[x as usize].compose(&elems[y as usize]));
            }
        }
    }

    #[test]
    fn relations_hold() {
        let (elems, g) = a5();
        let gens = [elems[g.generator(0) as usize], elems[g.generator(1) as usize]];
        let rels = g.relations();
        assert_eq!(rels.len(), 60 * 2 - 59);
        for r in &rels {
            let mut p = Perm::identity(5);
            for (letter, inv) in g.relator(r) {
                let q = gens[letter as usize];
                p = p.compose(&if inv { q.inverse() } else { q });
            }
            assert!(p.is_identity());
        }
    }

    #[test]
    fn symmetric_group_structure() {
        let (_, g) = perm_graph(&[
            Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
        ]);
        assert_eq!(g.order(), 24);
        assert_eq!(g.conjugacy_classes().len(), 5);
        assert!(!g.is_simple());
        assert_eq!(g.normal_closure(&[g.generator(0)]).len(), 24);
        let three_cycle = g.mul(g.generator(0), g.generator(1));
        assert_eq!(g.element_order(three_cycle), 3);
        assert_eq!(g.normal_closure(&[three_cycle]).len(), 12);
    }

    #[test]
    fn cyclic_group_classes_are_singletons() {
        let (_, g) = perm_graph(&[Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()]);
        let classes = g.conjugacy_classes();
        assert_eq!(classes.len(), 3);
        assert!(classes.iter().all(|c| c.len() == 1));
        assert!(g.is_abelian());
    }

    #[test]
    fn cap_is_enforced() {
        let gens = [Perm::from_cycles(5, &[&[0, 1]]).unwrap(), Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap()];
        let r = closure(Perm::identity(5), &gens, |a, b| a.compose(b), 100);
        assert_eq!(r.err(), Some(Error::CapExceeded { cap: 100 }));
    }

    #[test]
    fn regeneration_over_new_generators() {
        let (_, g) = a5();
        let gens = g.greedy_generators(&(1..60).collect::<Vec<_>>());
        assert!(gens.len() <= 3);
        let (h, map) = g.regenerate(&gens).unwrap();
        assert_eq!(h.order(), 60);
        for x in 0..60u32 {
            for k in 0..h.ngens() {
                assert_eq!(map[h.mul_gen(x, k) as usize], g.mul(map[x as usize], gens[k]));
            }
        }
    }
}
