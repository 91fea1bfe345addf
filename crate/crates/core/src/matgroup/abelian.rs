use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, Lattice};
use crate::matgroup::cayley::CayleyGraph;

/// `G^ab = Z/d_1 + ... + Z/d_r` with `1 < d_1 | d_2 | ...`, and the image of
/// each generator in those coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub invariants: Vec<u64>,
    pub generator_images: Vec<Vec<u64>>,
}

impl Abelianization {
    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariants.iter().fold(1, |a, &d| a.lcm(&d))
    }
}

/// Abelianization from the relation lattice. Every non-tree Cayley edge
/// contributes its exponent vector; commutator words have exponent vector
/// zero and add nothing.
pub fn abelianization(graph: &CayleyGraph) -> Result<Abelianization> {
    let n = graph.ngens();
    if n == 0 {
        return Ok(Abelianization {
            invariants: vec![],
            generator_images: vec![],
        });
    }
    let mut lattice = Lattice::new(n);
    let mut v = vec![0i64; n];
    for r in graph.relations() {
        let from = graph.exponent_vector(r.from);
        let to = graph.exponent_vector(r.to);
        for k in 0..n {
            v[k] = from[k] - to[k];
        }
        v[r.gen as usize] += 1;
        if v.iter().any(|&x| x != 0) {
            lattice.insert(&v);
        }
    }
    let snf = smith_normal_form(&lattice.basis());
    if snf.free_rank != 0 {
        return Err(Error::internal(format!(
            "abelianization has free rank {}",
            snf.free_rank
        )));
    }
    let vmat = &snf.col_transform;
    let mut invariants = Vec::new();
    let mut columns = Vec::new();
    for (i, d) in snf.invariants.iter().enumerate() {
        if *d > BigInt::from(1) {
            invariants.push(d.to_u64().ok_or_else(|| Error::internal("huge invariant"))?);
            columns.push(i);
        }
    }
    let generator_images = (0..n)
        .map(|j| {
            columns
                .iter()
                .zip(&invariants)
                .map(|(&i, &d)| {
                    vmat.get(j, i)
                        .mod_floor(&BigInt::from(d))
                        .to_u64()
                        .expect("reduced")
                })
                .collect()
        })
        .collect();
    Ok(Abelianization {
        invariants,
        generator_images,
    })
}

/// A homomorphism `G -> C_modulus`, `g_j -> E(modulus)^gen_exponents[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearCharacter {
    modulus: u32,
    gen_exponents: Vec<u32>,
}

impl LinearCharacter {
    pub fn new(modulus: u32, gen_exponents: Vec<u32>) -> Self {
        let modulus = modulus.max(1);
        LinearCharacter {
            gen_exponents: gen_exponents.into_iter().map(|c| c % modulus).collect(),
            modulus,
        }
    }

    pub fn trivial(ngens: usize) -> Self {
        Self::new(1, vec![0; ngens])
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn gen_exponents(&self) -> &[u32] {
        &self.gen_exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.gen_exponents.iter().all(|&c| c == 0)
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u32 {
        let g = self
            .gen_exponents
            .iter()
            .fold(self.modulus, |acc, &c| acc.gcd(&c));
        self.modulus / g
    }

    pub fn gen_value(&self, j: usize) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.modulus, self.gen_exponents[j] as i64)
    }

    /// `k` with `lambda(x) = E(modulus)^k`.
    pub fn exponent_at(&self, graph: &CayleyGraph, x: u32) -> u32 {
        let m = self.modulus as i64;
        let s: i64 = graph
            .exponent_vector(x)
            .iter()
            .zip(&self.gen_exponents)
            .map(|(&e, &c)| e * c as i64)
            .sum();
        s.rem_euclid(m) as u32
    }

    pub fn value(&self, graph: &CayleyGraph, x: u32) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.modulus, self.exponent_at(graph, x) as i64)
    }

    /// Whether every relator evaluates to 1.
    pub fn respects_relations(&self, graph: &CayleyGraph) -> bool {
        let m = self.modulus as i64;
        graph.relations().iter().all(|r| {
            let from = self.exponent_at(graph, r.from) as i64;
            let to = self.exponent_at(graph, r.to) as i64;
            (from + self.gen_exponents[r.gen as usize] as i64 - to).rem_euclid(m) == 0
        })
    }
}

/// All linear characters, one per element of the dual of `G^ab`, sorted by
/// generator exponents with the trivial character first.
pub fn linear_characters(graph: &CayleyGraph) -> Result<Vec<LinearCharacter>> {
    let ab = abelianization(graph)?;
    Ok(characters_of(&ab, graph.ngens()))
}

pub fn characters_of(ab: &Abelianization, ngens: usize) -> Vec<LinearCharacter> {
    let e = ab.exponent();
    let mut out = Vec::with_capacity(ab.order() as usize);
    let mut t = vec![0u64; ab.invariants.len()];
    loop {
        let exps: Vec<u32> = (0..ngens)
            .map(|j| {
                let s: u64 = t
                    .iter()
                    .zip(&ab.invariants)
                    .zip(&ab.generator_images[j])
                    .map(|((&ti, &d), &vji)| ti * vji % d * (e / d))
                    .sum();
                (s % e) as u32
            })
            .collect();
        out.push(LinearCharacter::new(e as u32, exps));
        // Next t in mixed radix.
        let mut k = 0;
        while k < t.len() {
            t[k] += 1;
            if t[k] < ab.invariants[k] {
                break;
            }
            t[k] = 0;
            k += 1;
        }
        if k == t.len() {
            break;
        }
    }
    out.sort();
    out
}

impl std::fmt::Display for LinearCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (j, c) in self.gen_exponents.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            if c.is_zero() {
                write!(f, "1")?;
            } else {
                write!(f, "E({})^{}", self.modulus, c)?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::cayley::closure;
    use crate::matgroup::perm::Perm;

    fn graph(gens: &[Perm]) -> CayleyGraph {
        closure(Perm::identity(gens[0].degree()), gens, |a, b| a.compose(b), 10_000)
            .unwrap()
            .1
    }

    #[test]
    fn perfect_group_has_trivial_abelianization() {
        let g = graph(&[
            Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
        ]);
        let ab = abelianization(&g).unwrap();
        assert!(ab.invariants.is_empty());
        assert_eq!(linear_characters(&g).unwrap().len(), 1);
    }

    #[test]
    fn symmetric_group_sign() {
        let g = graph(&[
            Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
        ]);
        let ab = abelianization(&g).unwrap();
        assert_eq!(ab.invariants, vec![2]);
        let chars = linear_characters(&g).unwrap();
        assert_eq!(chars.len(), 2);
        assert!(chars[0].is_trivial());
        assert_eq!(chars[1].order(), 2);
        assert!(chars.iter().all(|c| c.respects_relations(&g)));
    }

    #[test]
    fn klein_times_cyclic() {
        // <(01), (23), (456)> = C2 x C2 x C3 = C2 x C6
        let g = graph(&[
            Perm::from_cycles(7, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(7, &[&[2, 3]]).unwrap(),
            Perm::from_cycles(7, &[&[4, 5, 6]]).unwrap(),
        ]);
        let ab = abelianization(&g).unwrap();
        assert_eq!(ab.invariants, vec![2, 6]);
        let chars = linear_characters(&g).unwrap();
        assert_eq!(chars.len(), 12);
        let distinct: std::collections::HashSet<_> = chars.iter().collect();
        assert_eq!(distinct.len(), 12);
        for ch in &chars {
            assert!(ch.respects_relations(&g));
            // order of value divides element order
            for x in 0..g.order() as u32 {
                let k = ch.exponent_at(&g, x);
                let ord = ch.modulus() / num_integer::gcd(ch.modulus(), k);
                assert_eq!(g.element_order(x) % ord, 0);
            }
        }
    }
}
