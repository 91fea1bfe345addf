use std::collections::HashMap;

use crate::matgroup::cayley::CayleyGraph;
use crate::matgroup::closure::MatGroup;
use crate::CycMatrix;

/// The image of a matrix group in `PGL_N`.
///
/// Projective elements are keyed by the matrix scaled so its first nonzero
/// row-major entry is 1, numbered by first occurrence in the parent group.
#[derive(Clone, Debug)]
pub struct ProjGroup {
    keys: Vec<CycMatrix>,
    index: HashMap<CycMatrix, u32>,
    /// Projective class of each parent element.
    proj_of: Vec<u32>,
    representative: Vec<u32>,
    graph: CayleyGraph,
}

impl ProjGroup {
    pub fn new(g: &MatGroup) -> Self {
        let mut keys = Vec::new();
        let mut index = HashMap::new();
        let mut proj_of = Vec::with_capacity(g.order());
        let mut representative = Vec::new();
        for (i, m) in g.elements().iter().enumerate() {
            let key = m.projective_normal_form();
            let next = keys.len() as u32;
            let p = *index.entry(key.clone()).or_insert_with(|| {
                keys.push(key);
                representative.push(i as u32);
                next
            });
            proj_of.push(p);
        }
        let ngens = g.generators().len();
        let gg = g.graph();
        let mut table = Vec::with_capacity(representative.len() * ngens);
        for &x in &representative {
            for k in 0..ngens {
                table.push(proj_of[gg.mul_gen(x, k) as usize]);
            }
        }
        let graph = CayleyGraph::from_table(ngens, table).expect("quotient of a closed group");
        ProjGroup {
            keys,
            index,
            proj_of,
            representative,
            graph,
        }
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn graph(&self) -> &CayleyGraph {
        &self.graph
    }

    pub fn key(&self, p: u32) -> &CycMatrix {
        &self.keys[p as usize]
    }

    pub fn index_of(&self, m: &CycMatrix) -> Option<u32> {
        self.index.get(&m.projective_normal_form()).copied()
    }

    pub fn proj_of(&self, element: u32) -> u32 {
        self.proj_of[element as usize]
    }

    pub fn representative(&self, p: u32) -> u32 {
        self.representative[p as usize]
    }

    pub fn is_simple(&self) -> bool {
        self.graph.is_simple()
    }
}
