//! Integer matrices, Hermite lattices and Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} integer matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(
            rows.len(),
            c,
            rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape("integer matrix product".into()));
        }
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    *out.at(i, j) += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a <- s row_a + t row_b ; row_b <- u row_a + v row_b.
    fn combine_rows(&mut self, a: usize, b: usize, [s, t, u, v]: [&BigInt; 4]) {
        for j in 0..self.cols {
            let (x, y) = (self.get(a, j).clone(), self.get(b, j).clone());
            *self.at(a, j) = s * &x + t * &y;
            *self.at(b, j) = u * &x + v * &y;
        }
    }

    fn combine_cols(&mut self, a: usize, b: usize, [s, t, u, v]: [&BigInt; 4]) {
        for i in 0..self.rows {
            let (x, y) = (self.get(i, a).clone(), self.get(i, b).clone());
            *self.at(i, a) = s * &x + t * &y;
            *self.at(i, b) = u * &x + v * &y;
        }
    }
}

/// `U M V = D` with `D` diagonal, `d_1 | d_2 | ...`, all `d_i > 0`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries, including leading ones.
    pub invariants: Vec<BigInt>,
    /// `cols - rank`.
    pub free_rank: usize,
    /// Unimodular column transform, `cols x cols`.
    pub col_transform: IntMatrix,
}

impl SmithForm {
    /// Divisors greater than one.
    pub fn nontrivial_invariants(&self) -> Vec<BigInt> {
        self.invariants.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// A unimodular `[s, t, u, v]` sending `(p, x)` to `(gcd, 0)`. A plain
/// subtraction when `p | x`, so an existing pivot is never disturbed.
fn bezout_step(p: &BigInt, x: &BigInt) -> [BigInt; 4] {
    if x.is_multiple_of(p) {
        return [BigInt::one(), BigInt::zero(), -(x / p), BigInt::one()];
    }
    let eg = p.extended_gcd(x);
    [eg.x, eg.y, -(x / &eg.gcd), p / &eg.gcd]
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let mut v = IntMatrix::identity(m.cols);
    let (rows, cols) = (m.rows, m.cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry in the lower-right block becomes the pivot.
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a.get(i, j).is_zero())
            .min_by_key(|&(i, j)| a.get(i, j).abs())
        else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let (p, x) = (a.get(t, t).clone(), a.get(i, t).clone());
                let coeffs = bezout_step(&p, &x);
                let refs = [&coeffs[0], &coeffs[1], &coeffs[2], &coeffs[3]];
                a.combine_rows(t, i, refs);
                changed = true;
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let (p, x) = (a.get(t, t).clone(), a.get(t, j).clone());
                let coeffs = bezout_step(&p, &x);
                let refs = [&coeffs[0], &coeffs[1], &coeffs[2], &coeffs[3]];
                a.combine_cols(t, j, refs);
                v.combine_cols(t, j, refs);
                changed = true;
            }
            if !changed {
                // Enforce divisibility of the remaining block by the pivot.
                let p = a.get(t, t).clone();
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a.get(i, j).is_multiple_of(&p));
                match bad {
                    Some((i, _)) => {
                        let one = BigInt::one();
                        let zero = BigInt::zero();
                        a.combine_rows(t, i, [&one, &one, &zero, &one]);
                    }
                    None => break,
                }
            }
        }
        if a.get(t, t).is_negative() {
            for j in 0..cols {
                let x = -a.get(t, j);
                *a.at(t, j) = x;
            }
        }
        t += 1;
    }
    let invariants: Vec<BigInt> = (0..t).map(|i| a.get(i, i).clone()).collect();
    SmithForm {
        free_rank: cols - invariants.len(),
        invariants,
        col_transform: v,
    }
}

/// Row lattice in `Z^n` kept in Hermite normal form, reduced modulo its
/// determinant once it has full rank.
#[derive(Clone, Debug)]
pub struct Lattice {
    n: usize,
    /// `rows[c]` has pivot in column `c`, positive, zeros to its left.
    rows: Vec<Option<Vec<BigInt>>>,
    modulus: Option<BigInt>,
}

impl Lattice {
    pub fn new(n: usize) -> Self {
        Lattice {
            n,
            rows: vec![None; n],
            modulus: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    pub fn insert(&mut self, vector: &[i64]) {
        assert_eq!(vector.len(), self.n, "lattice vector length");
        let mut v: Vec<BigInt> = vector.iter().map(|&x| BigInt::from(x)).collect();
        self.reduce_mod(&mut v);
        for c in 0..self.n {
            if v[c].is_zero() {
                continue;
            }
            match self.rows[c].take() {
                None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.rows[c] = Some(v);
                    break;
                }
                Some(row) => {
                    let (a, b) = (row[c].clone(), v[c].clone());
                    let eg = a.extended_gcd(&b);
                    let (ag, bg) = (&a / &eg.gcd, &b / &eg.gcd);
                    let mut new_row: Vec<BigInt> =
                        row.iter().zip(&v).map(|(r, x)| &eg.x * r + &eg.y * x).collect();
                    let mut rest: Vec<BigInt> =
                        row.iter().zip(&v).map(|(r, x)| &ag * x - &bg * r).collect();
                    if new_row[c].is_negative() {
                        new_row.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.reduce_tail(&mut new_row);
                    self.reduce_mod(&mut rest);
                    self.rows[c] = Some(new_row);
                    v = rest;
                }
            }
        }
        if self.modulus.is_none() && self.rank() == self.n {
            let d: BigInt = self
                .rows
                .iter()
                .enumerate()
                .map(|(c, r)| r.as_ref().expect("full rank")[c].clone())
                .product();
            self.modulus = Some(d);
            let mut rows = std::mem::take(&mut self.rows);
            for r in rows.iter_mut().flatten() {
                self.reduce_tail(r);
            }
            self.rows = rows;
        }
    }

    fn reduce_mod(&self, v: &mut [BigInt]) {
        if let Some(d) = &self.modulus {
            for x in v.iter_mut() {
                *x = x.mod_floor(d);
            }
        }
    }

    /// Reduces entries right of the pivot; the pivot itself divides the modulus.
    fn reduce_tail(&self, v: &mut [BigInt]) {
        if let Some(d) = &self.modulus {
            let p = v.iter().position(|x| !x.is_zero()).unwrap_or(v.len());
            for x in v.iter_mut().skip(p + 1) {
                *x = x.mod_floor(d);
            }
        }
    }

    /// The lattice basis as a matrix, one row per pivot.
    pub fn basis(&self) -> IntMatrix {
        let rows: Vec<&Vec<BigInt>> = self.rows.iter().flatten().collect();
        let mut entries = Vec::with_capacity(rows.len() * self.n);
        for r in &rows {
            entries.extend(r.iter().cloned());
        }
        IntMatrix::new(rows.len(), self.n, entries).expect("consistent shape")
    }
}
