use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::matgroup::cayley::{closure, CayleyGraph, Relation};
use crate::matgroup::proj::ProjGroup;
use crate::CycMatrix;

pub const DEFAULT_CLOSURE_CAP: usize = 25_000;

/// A finite matrix group, closed from its generators.
///
/// Element `i` is the `i`-th matrix found by BFS from the identity; the
/// numbering is deterministic given the generator list.
#[derive(Clone, Debug)]
pub struct MatGroup {
    dim: usize,
    generators: Vec<CycMatrix>,
    elements: Vec<CycMatrix>,
    index: HashMap<CycMatrix, u32>,
    graph: CayleyGraph,
    traces: Vec<Cyclotomic>,
    classes: OnceLock<Vec<Vec<u32>>>,
    projective: OnceLock<ProjGroup>,
}

impl MatGroup {
    pub fn close(generators: Vec<CycMatrix>, cap: usize) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidParameter("at least one generator is required".into()));
        };
        let dim = first.rows();
        for (i, g) in generators.iter().enumerate() {
            if !g.is_square() || g.rows() != dim {
                return Err(Error::Shape(format!(
                    "generator {i} is {}x{}, expected {dim}x{dim}",
                    g.rows(),
                    g.cols()
                )));
            }
            if g.determinant()?.is_zero() {
                return Err(Error::Singular);
            }
        }
        let identity = CycMatrix::identity(dim);
        let (elements, graph) = closure(identity, &generators, |a, b| a * b, cap)?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        let traces = elements
            .iter()
            .map(|m| m.trace().expect("square"))
            .collect();
        Ok(MatGroup {
            dim,
            generators,
            elements,
            index,
            graph,
            traces,
            classes: OnceLock::new(),
            projective: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[CycMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &CycMatrix {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, m: &CycMatrix) -> Option<u32> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &CycMatrix) -> bool {
        self.index.contains_key(m)
    }

    pub fn graph(&self) -> &CayleyGraph {
        &self.graph
    }

    pub fn traces(&self) -> &[Cyclotomic] {
        &self.traces
    }

    pub fn trace(&self, i: u32) -> &Cyclotomic {
        &self.traces[i as usize]
    }

    pub fn relations(&self) -> Vec<Relation> {
        self.graph.relations()
    }

    pub fn element_order(&self, i: u32) -> u32 {
        self.graph.element_order(i)
    }

    pub fn inverse(&self, i: u32) -> u32 {
        self.graph.inverse(i)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.graph.mul(a, b)
    }

    /// Indices of scalar matrices.
    pub fn scalar_subgroup(&self) -> Vec<u32> {
        (0..self.order() as u32)
            .filter(|&i| self.elements[i as usize].as_scalar().is_some())
            .collect()
    }

    pub fn center(&self) -> Vec<u32> {
        self.graph.center()
    }

    pub fn conjugacy_classes(&self) -> &[Vec<u32>] {
        self.classes.get_or_init(|| self.graph.conjugacy_classes())
    }

    pub fn is_abelian(&self) -> bool {
        self.graph.is_abelian()
    }

    pub fn projective(&self) -> &ProjGroup {
        self.projective.get_or_init(|| ProjGroup::new(self))
    }

    /// The subgroup generated by the given elements, closed as its own group.
    /// Generators are reduced greedily.
    pub fn subgroup_generated(&self, elements: &[u32]) -> Result<MatGroup> {
        let gens = self.graph.greedy_generators(elements);
        let mats: Vec<CycMatrix> = if gens.is_empty() {
            vec![CycMatrix::identity(self.dim)]
        } else {
            gens.iter().map(|&i| self.elements[i as usize].clone()).collect()
        };
        MatGroup::close(mats, self.order())
    }

    /// The subgroup with the given element set (which must be closed).
    pub fn subgroup_from_elements(&self, elements: &[u32]) -> Result<MatGroup> {
        let h = self.subgroup_generated(elements)?;
        if h.order() != elements.len() {
            return Err(Error::internal("element set is not a subgroup"));
        }
        Ok(h)
    }

    /// Closure of the generators together with `extra`.
    pub fn with_generators(&self, extra: &[CycMatrix], cap: usize) -> Result<MatGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        MatGroup::close(gens, cap)
    }

    /// `M G M^-1`, closed from the conjugated generators.
    pub fn conjugated_by(&self, m: &CycMatrix, cap: usize) -> Result<MatGroup> {
        let inv = m.inverse()?;
        let gens = self.generators.iter().map(|g| &(m * g) * &inv).collect();
        MatGroup::close(gens, cap)
    }

    /// Evaluates a relator word on the generator matrices.
    pub fn evaluate_word(&self, word: &[(u8, bool)]) -> Result<CycMatrix> {
        let mut acc = CycMatrix::identity(self.dim);
        for &(g, inv) in word {
            let m = &self.generators[g as usize];
            acc = if inv { &acc * &m.inverse()? } else { &acc * m };
        }
        Ok(acc)
    }

    pub fn has_determinant_one(&self) -> Result<bool> {
        for g in &self.generators {
            if !g.determinant()?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
