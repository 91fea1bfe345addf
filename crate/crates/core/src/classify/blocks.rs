use num_traits::Zero;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::eigenspace;
use crate::matgroup::{enumerate_transitive_homs, linear_characters, MatGroup};
use crate::repthy::inner_product_values;
use crate::{CycMatrix, CycSubspace};

/// Whether every generator maps every block onto some block, and the blocks
/// together span the whole space as a direct sum.
pub fn is_block_system(g: &MatGroup, blocks: &[CycSubspace]) -> Result<bool> {
    let n = g.dim();
    let mut total = CycSubspace::zero(n);
    let mut dims = 0;
    for b in blocks {
        if b.ambient() != n || b.is_zero() || b.is_full() {
            return Ok(false);
        }
        total = total.sum(b)?;
        dims += b.dim();
    }
    if dims != n || !total.is_full() {
        return Ok(false);
    }
    for m in g.generators() {
        let mut hit = vec![false; blocks.len()];
        for b in blocks {
            let img = b.image(m)?;
            match blocks.iter().position(|c| *c == img) {
                Some(k) if !hit[k] => hit[k] = true,
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

fn require_irreducible(g: &MatGroup) -> Result<()> {
    let norm = inner_product_values(g.traces(), g.traces())?;
    if norm != num_rational::BigRational::from_integer(1.into()) {
        return Err(Error::InvalidParameter("the action is not transitive".into()));
    }
    Ok(())
}

fn check_cap(g: &MatGroup, cap: usize) -> Result<()> {
    if g.order() > cap {
        return Err(Error::CapExceeded { cap });
    }
    Ok(())
}

/// Eigenvalues of a finite-order matrix with multiplicity.
fn eigenvalues(m: &CycMatrix, order: u32) -> Result<Vec<Cyclotomic>> {
    let mut out = Vec::new();
    for j in 0..order as i64 {
        let z = Cyclotomic::root_of_unity(order, j);
        let dim = eigenspace(m, &z)?.dim();
        out.extend(std::iter::repeat_n(z, dim));
    }
    Ok(out)
}

/// A system of two complementary 2-dimensional subspaces permuted by `g`,
/// for a transitive 4-dimensional action.
///
/// Blocks exist iff `chi` vanishes off some index-2 subgroup `H`. They are
/// then the two isotypic halves of `V` restricted to `H`, read off as
/// eigenspaces of `H`-class sums.
pub fn has_two_block_system(g: &MatGroup, class_cap: usize) -> Result<Option<Vec<CycSubspace>>> {
    if g.dim() != 4 {
        return Err(Error::InvalidParameter("two-block systems are checked in dimension 4".into()));
    }
    require_irreducible(g)?;
    check_cap(g, class_cap)?;
    let graph = g.graph();
    for lambda in linear_characters(graph)? {
        if lambda.order() != 2 {
            continue;
        }
        let inside: Vec<bool> = (0..g.order() as u32)
            .map(|x| lambda.exponent_at(graph, x) == 0)
            .collect();
        let vanishes = (0..g.order()).all(|x| inside[x] || g.traces()[x].is_zero());
        if !vanishes {
            continue;
        }
        let elems: Vec<u32> = (0..g.order() as u32).filter(|&x| inside[x as usize]).collect();
        let h = g.subgroup_from_elements(&elems)?;
        let j = (0..g.generators().len())
            .find(|&j| lambda.gen_exponents()[j] != 0)
            .expect("nontrivial character moves a generator");
        let outside = &g.generators()[j];
        match split_restriction(g, &h, outside)? {
            Some(blocks) => return Ok(Some(blocks)),
            None => {
                return Err(Error::internal(
                    "induced action without a recoverable block decomposition",
                ))
            }
        }
    }
    Ok(None)
}

fn split_restriction(g: &MatGroup, h: &MatGroup, outside: &CycMatrix) -> Result<Option<Vec<CycSubspace>>> {
    for class in h.conjugacy_classes() {
        let rep = class[0];
        if h.element(rep).is_identity() {
            continue;
        }
        let mut z = CycMatrix::zero(4, 4);
        for &x in class {
            z = z.add(h.element(x))?;
        }
        let ev = eigenvalues(h.element(rep), h.element_order(rep))?;
        let size = Cyclotomic::from_integer(class.len() as i64);
        let half = Cyclotomic::from_fraction(1, 2);
        let mut tried: Vec<Cyclotomic> = Vec::new();
        for a in 0..ev.len() {
            for b in a + 1..ev.len() {
                let s = &(&size * &(&ev[a] + &ev[b])) * &half;
                if tried.contains(&s) {
                    continue;
                }
                let w = eigenspace(&z, &s)?;
                tried.push(s);
                if w.dim() != 2 {
                    continue;
                }
                let mut ok = true;
                for m in h.generators() {
                    if !w.is_invariant_under(m)? {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                let blocks = vec![w.clone(), w.image(outside)?];
                if is_block_system(g, &blocks)? {
                    return Ok(Some(blocks));
                }
            }
        }
    }
    Ok(None)
}

/// A system of `N` lines permuted by `g`, for a transitive action.
///
/// Such lines exist iff `V = Ind_H^G psi` for a point stabilizer `H` of a
/// transitive action on `N` points and a linear character `psi` of `H`,
/// i.e. iff `psi` occurs in `V` restricted to `H`.
pub fn is_monomial(g: &MatGroup, class_cap: usize) -> Result<Option<Vec<CycSubspace>>> {
    require_irreducible(g)?;
    check_cap(g, class_cap)?;
    let n = g.dim();
    if n == 1 {
        return Ok(Some(vec![CycSubspace::full(1)]));
    }
    for hom in enumerate_transitive_homs(g.graph(), n, class_cap)? {
        let h = g.subgroup_from_elements(&hom.stabilizer(0))?;
        let hgraph = h.graph();
        for psi in linear_characters(hgraph)? {
            let values: Vec<Cyclotomic> = (0..h.order() as u32).map(|x| psi.value(hgraph, x)).collect();
            if inner_product_values(h.traces(), &values)?.is_zero() {
                continue;
            }
            let mut line = CycSubspace::full(n);
            for (j, m) in h.generators().iter().enumerate() {
                line = line.intersect(&eigenspace(m, &psi.gen_value(j))?)?;
            }
            if line.dim() != 1 {
                return Err(Error::internal(format!(
                    "character of a stabilizer occurs with multiplicity {}",
                    line.dim()
                )));
            }
            let mut lines = Vec::with_capacity(n);
            for point in 0..n {
                let x = (0..g.order() as u32)
                    .find(|&x| hom.images[x as usize].apply(0) == point)
                    .expect("transitive");
                lines.push(line.image(g.element(x))?);
            }
            if !is_block_system(g, &lines)? {
                return Err(Error::internal("induced lines are not permuted by the group"));
            }
            return Ok(Some(lines));
        }
    }
    Ok(None)
}
