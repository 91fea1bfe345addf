use num_traits::Zero;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::kernel;
use crate::matgroup::{linear_characters, LinearCharacter, MatGroup};
use crate::repthy::poly::{monomial_count, sym_power_matrix, Polynomial};
use crate::{CycMatrix, CycSubspace};

/// Degree-`d` polynomials `f` with `g.f = lambda(g) f` for all `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiInvariantSpace {
    pub character: LinearCharacter,
    pub space: CycSubspace,
    pub basis: Vec<Polynomial>,
}

impl SemiInvariantSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.space.contains(f.coeffs())
    }
}

/// `v` restricted to `span(basis)`: the vectors `sum c_i b_i` with
/// `(m - value I) sum c_i b_i = 0`.
fn restrict(m: &CycMatrix, value: &Cyclotomic, basis: &[Vec<Cyclotomic>]) -> Result<Vec<Vec<Cyclotomic>>> {
    let n = m.rows();
    let k = basis.len();
    let mut cols = Vec::with_capacity(k);
    for b in basis {
        let mut image = m.apply(b)?;
        for (x, y) in image.iter_mut().zip(b) {
            *x = &*x - &(value * y);
        }
        cols.push(image);
    }
    let mut kmat = CycMatrix::zero(n, k);
    for (j, col) in cols.into_iter().enumerate() {
        for (i, x) in col.into_iter().enumerate() {
            if !x.is_zero() {
                kmat.set(i, j, x);
            }
        }
    }
    let coeffs = kernel(&kmat);
    Ok(coeffs
        .basis()
        .iter()
        .map(|c| {
            let mut v = vec![Cyclotomic::zero(); n];
            for (ci, b) in c.iter().zip(basis) {
                if ci.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(b) {
                    *x = &*x + &(ci * y);
                }
            }
            v
        })
        .collect())
}

fn standard_basis(n: usize) -> Vec<Vec<Cyclotomic>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Cyclotomic::zero(); n];
            v[i] = Cyclotomic::from_integer(1);
            v
        })
        .collect()
}

/// Every linear character with a nonzero degree-`d` eigenspace, with an
/// echelon basis of that space, ordered by character.
pub fn semi_invariants(g: &MatGroup, d: u32) -> Result<Vec<SemiInvariantSpace>> {
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    let chars = linear_characters(g.graph())?;
    let syms = g
        .generators()
        .iter()
        .map(|m| sym_power_matrix(m, d))
        .collect::<Result<Vec<_>>>()?;
    let size = monomial_count(g.dim(), d);
    let values: Vec<Vec<Cyclotomic>> = chars
        .iter()
        .map(|l| (0..syms.len()).map(|j| l.gen_value(j)).collect())
        .collect();

    // Characters sharing a prefix of generator values share the kernel of
    // that prefix; walk the prefix trie depth first.
    let mut spaces: Vec<Option<Vec<Vec<Cyclotomic>>>> = vec![None; chars.len()];
    let all: Vec<usize> = (0..chars.len()).collect();
    descend(&syms, &values, &all, 0, standard_basis(size), &mut spaces)?;

    let mut out = Vec::new();
    for (l, space) in chars.into_iter().zip(spaces) {
        let Some(vectors) = space else { continue };
        let space = CycSubspace::span(size, vectors)?;
        for b in space.basis() {
            for (j, m) in syms.iter().enumerate() {
                let image = m.apply(b)?;
                let value = l.gen_value(j);
                if image.iter().zip(b).any(|(x, y)| x != &(&value * y)) {
                    return Err(Error::internal(format!("semi-invariant for {l} fails generator {j}")));
                }
            }
        }
        let basis = space
            .basis()
            .iter()
            .map(|b| Polynomial::new(g.dim(), d, b.clone()))
            .collect::<Result<Vec<_>>>()?;
        out.push(SemiInvariantSpace {
            character: l,
            space,
            basis,
        });
    }
    Ok(out)
}

fn descend(
    syms: &[CycMatrix],
    values: &[Vec<Cyclotomic>],
    members: &[usize],
    level: usize,
    basis: Vec<Vec<Cyclotomic>>,
    out: &mut [Option<Vec<Vec<Cyclotomic>>>],
) -> Result<()> {
    if basis.is_empty() {
        return Ok(());
    }
    if level == syms.len() {
        for &i in members {
            out[i] = Some(basis.clone());
        }
        return Ok(());
    }
    let mut groups: Vec<(&Cyclotomic, Vec<usize>)> = Vec::new();
    for &i in members {
        let v = &values[i][level];
        match groups.iter_mut().find(|(w, _)| *w == v) {
            Some((_, list)) => list.push(i),
            None => groups.push((v, vec![i])),
        }
    }
    for (v, list) in groups {
        let next = restrict(&syms[level], v, &basis)?;
        descend(syms, values, &list, level + 1, next, out)?;
    }
    Ok(())
}

/// Least `d <= dmax` with a semi-invariant of degree `d`, with the spaces
/// found in that degree.
pub fn min_semi_invariant(g: &MatGroup, dmax: u32) -> Result<Option<(u32, Vec<SemiInvariantSpace>)>> {
    for d in 1..=dmax {
        let spaces = semi_invariants(g, d)?;
        if !spaces.is_empty() {
            return Ok(Some((d, spaces)));
        }
    }
    Ok(None)
}

pub fn min_semi_invariant_degree(g: &MatGroup, dmax: u32) -> Result<Option<u32>> {
    Ok(min_semi_invariant(g, dmax)?.map(|(d, _)| d))
}

/// The basis polynomial with fewest terms, normalized; ties go to the
/// earliest.
pub fn sparsest_witness(spaces: &[SemiInvariantSpace]) -> Option<Polynomial> {
    spaces
        .iter()
        .flat_map(|s| s.basis.iter())
        .min_by_key(|p| p.coeffs().iter().filter(|c| !c.is_zero()).count())
        .map(Polynomial::normalized)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    fn type_c() -> MatGroup {
        let t = CycMatrix::from_rows(vec![
            vec![c(0), c(1), c(0)],
            vec![c(0), c(0), c(1)],
            vec![c(1), c(0), c(0)],
        ])
        .unwrap();
        MatGroup::close(
            vec![
                CycMatrix::diagonal(vec![c(1), c(-1), c(-1)]),
                CycMatrix::diagonal(vec![c(-1), c(1), c(-1)]),
                t,
            ],
            1000,
        )
        .unwrap()
    }

    #[test]
    fn type_c_conic() {
        let g = type_c();
        let spaces = semi_invariants(&g, 2).unwrap();
        let conic = Polynomial::from_terms(
            3,
            2,
            &[(c(1), vec![2, 0, 0]), (c(1), vec![0, 2, 0]), (c(1), vec![0, 0, 2])],
        )
        .unwrap();
        assert!(spaces.iter().any(|s| s.contains(&conic).unwrap()));
        assert_eq!(min_semi_invariant_degree(&g, 2).unwrap(), Some(2));
        assert!(semi_invariants(&g, 1).unwrap().is_empty());
    }

    #[test]
    fn trivial_group_everything_invariant() {
        let g = MatGroup::close(vec![CycMatrix::identity(2)], 1).unwrap();
        let spaces = semi_invariants(&g, 3).unwrap();
        assert_eq!(spaces.len(), 1);
        assert_eq!(spaces[0].dim(), 4);
        assert!(spaces[0].character.is_trivial());
    }

    #[test]
    fn cyclic_diagonal_splits_by_weight() {
        // diag(i, -i): x^a y^b has weight i^(b-a)
        let i = Cyclotomic::root_of_unity(4, 1);
        let g = MatGroup::close(vec![CycMatrix::diagonal(vec![i.clone(), -i])], 10).unwrap();
        let spaces = semi_invariants(&g, 2).unwrap();
        let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
        assert_eq!(dims.iter().sum::<usize>(), 3);
        assert_eq!(spaces.len(), 2);
        let w = sparsest_witness(&spaces).unwrap();
        assert_eq!(w.coeffs().iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn zero_degree_rejected() {
        assert!(semi_invariants(&type_c(), 0).is_err());
    }
}
