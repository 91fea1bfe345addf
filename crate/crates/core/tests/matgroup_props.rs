use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wexc::catalog::{catalog_get, list, Params};
use wexc::matgroup::{abelianization, enumerate_transitive_homs, linear_characters, MatGroup};
use wexc::CycMatrix;

fn small_catalog(max: usize) -> Vec<(String, MatGroup)> {
    list()
        .into_iter()
        .filter(|e| !e.is_slot())
        .filter_map(|e| {
            let g = e.build(&Params::new()).ok()?;
            (g.order() <= max).then(|| (e.name.clone(), g))
        })
        .collect()
}

fn evaluate(word: &[(u8, bool)], images: &[CycMatrix], inverses: &[CycMatrix]) -> CycMatrix {
    let mut m = CycMatrix::identity(images[0].rows());
    for &(x, inv) in word {
        m = &m * if inv { &inverses[x as usize] } else { &images[x as usize] };
    }
    m
}

#[test]
fn lagrange_for_scalars_center_and_stabilizers() {
    for (name, g) in small_catalog(700) {
        let n = g.order();
        assert_eq!(n % g.scalar_subgroup().len(), 0, "{name}");
        assert_eq!(n % g.center().len(), 0, "{name}");
        assert!(g.scalar_subgroup().iter().all(|s| g.center().contains(s)), "{name}");
        for x in 0..n as u32 {
            assert_eq!(n as u32 % g.element_order(x), 0, "{name}");
        }
        for k in 2..=4 {
            for h in enumerate_transitive_homs(g.graph(), k, 100_000).unwrap() {
                let stab = h.stabilizer(0);
                assert_eq!(n, stab.len() * k, "{name}: orbit-stabilizer on {k} points");
            }
        }
    }
}

#[test]
fn every_relation_multiplies_to_the_identity() {
    for (name, g) in small_catalog(500) {
        let gens = g.generators().to_vec();
        let inverses: Vec<CycMatrix> = gens.iter().map(|m| m.inverse().unwrap()).collect();
        let relations = g.relations();
        assert_eq!(relations.len(), g.order() * (gens.len() - 1) + 1, "{name}: non-tree edge count");
        for r in &relations {
            let word = g.graph().relator(r);
            assert!(evaluate(&word, &gens, &inverses).is_identity(), "{name}: {r:?}");
        }
    }
}

/// Extends generator images along the BFS tree; `None` unless every
/// recorded relation holds.
fn extend(g: &MatGroup, images: &[u32]) -> Option<Vec<u32>> {
    let graph = g.graph();
    let mut phi = vec![0u32; g.order()];
    for x in 1..g.order() as u32 {
        let (parent, gen) = graph.tree_edge(x).expect("non-identity element has a parent");
        phi[x as usize] = g.mul(phi[parent as usize], images[gen]);
    }
    for r in g.relations() {
        if g.mul(phi[r.from as usize], images[r.gen as usize]) != phi[r.to as usize] {
            return None;
        }
    }
    Some(phi)
}

#[test]
fn relations_present_the_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["sl3/typeC", "sl3/typeD", "sl3/A5"] {
        let g = catalog_get(name, &Params::new()).unwrap();
        let k = g.generators().len();
        let n = g.order() as u64;
        let total = n.pow(k as u32);
        let mut accepted = 0u64;
        for code in 0..total {
            let images: Vec<u32> = (0..k).map(|i| ((code / n.pow(i as u32)) % n) as u32).collect();
            let Some(phi) = extend(&g, &images) else { continue };
            accepted += 1;
            for _ in 0..100 {
                let a = rng.gen_range(0..n as u32);
                let b = rng.gen_range(0..n as u32);
                assert_eq!(phi[g.mul(a, b) as usize], g.mul(phi[a as usize], phi[b as usize]), "{name}: {images:?}");
            }
        }
        // The identity assignment always extends; the trivial one too.
        let gen_index: Vec<u32> = g.generators().iter().map(|m| g.index_of(m).unwrap()).collect();
        assert!(extend(&g, &gen_index).is_some());
        assert!(extend(&g, &vec![0; k]).is_some());
        assert!(accepted >= 2 && accepted < total, "{name}: {accepted} of {total}");
    }
}

#[test]
fn sym_square_images_satisfy_the_relations() {
    for name in ["sl3/G648", "sl4/eg-imprim", "sl4/a5sym3"] {
        let g = catalog_get(name, &Params::new()).unwrap();
        let images: Vec<CycMatrix> = g
            .generators()
            .iter()
            .map(|m| wexc::repthy::sym_power_matrix(m, 2).unwrap())
            .collect();
        let inverses: Vec<CycMatrix> = images.iter().map(|m| m.inverse().unwrap()).collect();
        for r in g.relations().iter().step_by(11) {
            let word = g.graph().relator(r);
            assert!(evaluate(&word, &images, &inverses).is_identity(), "{name}");
        }
    }
}

#[test]
fn linear_characters_count_the_abelianization() {
    for (name, g) in small_catalog(700) {
        let ab = abelianization(g.graph()).unwrap();
        let chars = linear_characters(g.graph()).unwrap();
        assert_eq!(chars.len() as u64, ab.order(), "{name}");
        assert!(chars.iter().all(|c| c.respects_relations(g.graph())), "{name}");
    }
}

#[test]
fn projective_order_times_scalars() {
    for (name, g) in small_catalog(2000) {
        assert_eq!(g.projective().order() * g.scalar_subgroup().len(), g.order(), "{name}");
    }
}
