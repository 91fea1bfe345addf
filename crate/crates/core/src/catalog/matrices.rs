//! Named generator matrices.

use num_traits::{One, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::repthy::{sym_cube_2x2, sym_power_matrix};
use crate::CycMatrix;

pub(crate) fn c(n: i64) -> Cyclotomic {
    Cyclotomic::from_integer(n)
}

pub(crate) fn e(n: u32, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, k)
}

pub(crate) fn rows(r: Vec<Vec<Cyclotomic>>) -> CycMatrix {
    CycMatrix::from_rows(r).expect("rectangular literal")
}

pub(crate) fn diag(d: Vec<Cyclotomic>) -> CycMatrix {
    CycMatrix::diagonal(d)
}

/// Permutation matrix with `P e_j = e_{p[j]}`.
pub(crate) fn perm_matrix(p: &[usize]) -> CycMatrix {
    let n = p.len();
    let mut m = CycMatrix::zero(n, n);
    for (j, &i) in p.iter().enumerate() {
        m.set(i, j, Cyclotomic::one());
    }
    m
}

pub(crate) fn sqrt2() -> Cyclotomic {
    e(8, 1) - e(8, 3)
}

pub(crate) fn sqrt_minus3() -> Cyclotomic {
    c(1) + c(2) * e(3, 1)
}

pub(crate) fn sqrt5() -> Cyclotomic {
    c(1) + c(2) * e(5, 1) + c(2) * e(5, 4)
}

pub(crate) fn sqrt_minus7() -> Cyclotomic {
    let b = |k| e(7, k);
    b(1) + b(2) + b(4) - b(3) - b(5) - b(6)
}

fn omega(k: i64) -> Cyclotomic {
    e(3, k)
}

// Three-dimensional matrices, omega = E(3).

pub fn s() -> CycMatrix {
    diag(vec![c(1), omega(1), omega(2)])
}

pub fn t() -> CycMatrix {
    rows(vec![
        vec![c(0), c(1), c(0)],
        vec![c(0), c(0), c(1)],
        vec![c(1), c(0), c(0)],
    ])
}

pub fn v() -> CycMatrix {
    let k = sqrt_minus3().inv().expect("nonzero");
    rows(vec![
        vec![c(1), c(1), c(1)],
        vec![c(1), omega(1), omega(2)],
        vec![c(1), omega(2), omega(1)],
    ])
    .scale(&k)
}

/// `epsilon^3 = omega^2` with `epsilon = E(9)^2`.
pub fn u() -> CycMatrix {
    let eps = e(9, 2);
    diag(vec![eps.clone(), eps.clone(), &eps * &omega(1)])
}

pub fn p() -> CycMatrix {
    let k = sqrt_minus3().inv().expect("nonzero");
    rows(vec![
        vec![c(1), c(1), omega(2)],
        vec![c(1), omega(1), omega(1)],
        vec![omega(1), c(1), omega(1)],
    ])
    .scale(&k)
}

pub fn w() -> CycMatrix {
    CycMatrix::scalar(3, omega(1))
}

pub fn q(a: Cyclotomic, b: Cyclotomic, cc: Cyclotomic) -> CycMatrix {
    let z = Cyclotomic::zero;
    rows(vec![vec![a, z(), z()], vec![z(), z(), b], vec![z(), cc, z()]])
}

/// Klein's group in `SL_3` over `Q(E(7))`: `diag(b, b^2, b^4)`, `T` and
/// the order-2 matrix with rows the cyclic shifts of
/// `(b^4 - b^3, b^2 - b^5, b - b^6)` scaled by `-1/sqrt(-7)`.
pub fn klein() -> Vec<CycMatrix> {
    let b = |k| e(7, k);
    let x = b(4) - b(3);
    let y = b(2) - b(5);
    let z = b(1) - b(6);
    let k = -sqrt_minus7().inv().expect("nonzero");
    let r = rows(vec![
        vec![x.clone(), y.clone(), z.clone()],
        vec![y.clone(), z.clone(), x.clone()],
        vec![z, x, y],
    ])
    .scale(&k);
    vec![diag(vec![b(1), b(2), b(4)]), t(), r]
}

// Two-dimensional building blocks for the binary polyhedral groups.

/// Image of `(12)(34)` in the binary tetrahedral group.
pub fn tet_a() -> CycMatrix {
    diag(vec![e(4, 1), e(4, 3)])
}

/// Image of `(14)(23)`.
pub fn tet_b() -> CycMatrix {
    rows(vec![vec![c(0), c(1)], vec![c(-1), c(0)]])
}

/// Image of the 3-cycle.
pub fn tet_c() -> CycMatrix {
    let k = sqrt2().inv().expect("nonzero");
    rows(vec![vec![e(8, 7), e(8, 7)], vec![e(8, 5), e(8, 1)]]).scale(&k)
}

/// Image of the transposition in the binary octahedral group.
pub fn oct_o() -> CycMatrix {
    rows(vec![vec![c(0), e(8, 1)], vec![-e(8, 7), c(0)]])
}

/// `diag(E(2k), E(2k)^-1)`, projectively of order `k`.
pub fn dihedral_a(k: u32) -> CycMatrix {
    diag(vec![e(2 * k, 1), e(2 * k, -1)])
}

/// Binary icosahedral generators: a 5-cycle lift of determinant 1 and the
/// `(12)(34)` lift.
pub fn icosa() -> Vec<CycMatrix> {
    let z = |k| e(5, k);
    let a = diag(vec![z(3), z(2)]);
    let k = sqrt5().inv().expect("nonzero");
    let b = rows(vec![
        vec![z(4) - z(1), z(2) - z(3)],
        vec![z(2) - z(3), z(1) - z(4)],
    ])
    .scale(&k);
    vec![a, b]
}

/// Icosahedral group in `SO_3` via the symmetric square.
pub fn icosa_3d() -> Vec<CycMatrix> {
    icosa()
        .iter()
        .map(|m| sym_power_matrix(m, 2).expect("invertible"))
        .collect()
}

pub fn icosa_sym3() -> Vec<CycMatrix> {
    icosa().iter().map(|m| sym_cube_2x2(m).expect("2x2")).collect()
}

/// `[A, B] : X -> A X B^T` on `(x, y, u, v)`.
pub fn pair(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    a.kron(b)
}

/// Transposition of the matrix form, scaled into `SL_4`.
pub fn ruling_swap() -> CycMatrix {
    perm_matrix(&[0, 2, 1, 3]).scale(&e(8, 1))
}

/// `E(8)` times the transposition of coordinates `i` and `i + 1`.
pub fn scaled_transposition(i: usize) -> CycMatrix {
    let mut p = [0, 1, 2, 3];
    p.swap(i, i + 1);
    perm_matrix(&p).scale(&e(8, 1))
}
