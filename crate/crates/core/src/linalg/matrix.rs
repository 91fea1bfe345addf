use std::fmt;
use std::ops::{Index, Mul};

use crate::error::{Error, Result};
use crate::linalg::echelon;
use crate::linalg::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrices must have at least one row and column".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, F::one())
    }

    pub fn scalar(n: usize, s: F) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = s.clone();
        }
        m
    }

    pub fn diagonal(diag: Vec<F>) -> Self {
        let n = diag.len();
        let mut m = Self::zero(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<F> {
        self.entries
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let (n, k, m) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![F::zero(); n * m];
        for i in 0..n {
            for l in 0..k {
                let a = &self.entries[i * k + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let b = &rhs.entries[l * m + j];
                    if !b.is_zero() {
                        let t = a.mul_ref(b);
                        let slot = &mut out[i * m + j];
                        *slot = slot.add_ref(&t);
                    }
                }
            }
        }
        Ok(Matrix {
            rows: n,
            cols: m,
            entries: out,
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, F::add_ref)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, F::sub_ref)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&F, &F) -> F) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.mul_ref(s))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Matrix-vector product `M v` with `v` a column.
    pub fn apply(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect())
    }

    pub fn trace(&self) -> Result<F> {
        self.require_square()?;
        Ok((0..self.rows).fold(F::zero(), |acc, i| acc.add_ref(&self[(i, i)])))
    }

    /// Kronecker product. On row-major `vec(X)` the product of `A` and `B`
    /// acts as `X -> A X B^T`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..self.rows {
            for k in 0..rhs.rows {
                for j in 0..self.cols {
                    let a = &self[(i, j)];
                    for l in 0..rhs.cols {
                        entries.push(a.mul_ref(&rhs[(k, l)]));
                    }
                }
            }
        }
        Matrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn determinant(&self) -> Result<F> {
        self.require_square()?;
        Ok(echelon::determinant(self.row_vecs()))
    }

    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let augmented: Vec<Vec<F>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
                r
            })
            .collect();
        let (reduced, pivots) = echelon::rref(augmented, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Self::new(n, n, reduced.into_iter().flat_map(|r| r.into_iter().skip(n)).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.entries.iter().enumerate().all(|(idx, x)| {
                if idx / self.cols == idx % self.cols {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
    }

    /// The scalar `s` when the matrix equals `s I`.
    pub fn as_scalar(&self) -> Option<F> {
        if !self.is_square() {
            return None;
        }
        let s = &self.entries[0];
        let ok = self.entries.iter().enumerate().all(|(idx, x)| {
            if idx / self.cols == idx % self.cols {
                x == s
            } else {
                x.is_zero()
            }
        });
        ok.then(|| s.clone())
    }

    /// Normalizes so the first nonzero entry in row-major order is 1; equal
    /// results characterize matrices up to a nonzero scalar.
    pub fn projective_normal_form(&self) -> Self {
        match self.entries.iter().find(|x| !x.is_zero()) {
            Some(lead) if !lead.is_one() => {
                let inv = lead.inv().expect("nonzero lead");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        self.require_square()?;
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Shape(format!("{}x{} matrix is not square", self.rows, self.cols)))
        }
    }
}

pub(crate) fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add_ref(&x.mul_ref(y));
        }
    }
    acc
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

/// Panics on a shape mismatch; see [`Matrix::checked_mul`].
impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl<F: Field> Mul for Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: Matrix<F>) -> Matrix<F> {
        &self * &rhs
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Cyclotomic;

    type M = Matrix<Cyclotomic>;

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    fn omega(k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(3, k)
    }

    fn t3() -> M {
        M::from_rows(vec![
            vec![c(0), c(1), c(0)],
            vec![c(0), c(0), c(1)],
            vec![c(1), c(0), c(0)],
        ])
        .unwrap()
    }

    #[test]
    fn three_cycle_has_determinant_one() {
        assert_eq!(t3().determinant().unwrap(), c(1));
    }

    #[test]
    fn diagonal_cube_roots_have_trace_zero() {
        let s = M::diagonal(vec![c(1), omega(1), omega(2)]);
        assert_eq!(s.trace().unwrap(), c(0));
    }

    #[test]
    fn kron_acts_as_left_right_multiplication() {
        // [[0,1],[-1,0]] (x) I2 on (x,y,u,v) gives (u,v,-x,-y).
        let a = M::from_rows(vec![vec![c(0), c(1)], vec![c(-1), c(0)]]).unwrap();
        let k = a.kron(&M::identity(2));
        let v: Vec<Cyclotomic> = (1..=4).map(c).collect();
        assert_eq!(k.apply(&v).unwrap(), vec![c(3), c(4), c(-1), c(-2)]);
    }

    #[test]
    fn kron_matches_a_x_bt() {
        let a = M::from_rows(vec![vec![c(1), c(2)], vec![c(3), c(4)]]).unwrap();
        let b = M::from_rows(vec![vec![c(0), c(5)], vec![c(6), c(7)]]).unwrap();
        let x = M::from_rows(vec![vec![c(1), c(-1)], vec![c(2), c(3)]]).unwrap();
        let expected = &(&a * &x) * &b.transpose();
        let got = a.kron(&b).apply(x.entries()).unwrap();
        assert_eq!(got, expected.entries());
    }

    #[test]
    fn inverse_and_singular() {
        let s = M::diagonal(vec![c(1), omega(1), omega(2)]);
        let g = &t3() * &s;
        assert!((&g * &g.inverse().unwrap()).is_identity());
        let sing = M::from_rows(vec![vec![c(1), c(2)], vec![c(2), c(4)]]).unwrap();
        assert_eq!(sing.inverse(), Err(Error::Singular));
        assert_eq!(sing.determinant().unwrap(), c(0));
    }

    #[test]
    fn shape_errors() {
        let a = M::zero(2, 3);
        assert!(matches!(a.checked_mul(&a), Err(Error::Shape(_))));
        assert!(matches!(a.trace(), Err(Error::Shape(_))));
        assert!(matches!(M::new(2, 2, vec![c(1)]), Err(Error::Shape(_))));
    }

    #[test]
    fn three_cycle_sends_e1_to_e3() {
        let e1 = vec![c(1), c(0), c(0)];
        assert_eq!(t3().apply(&e1).unwrap(), vec![c(0), c(0), c(1)]);
    }

    #[test]
    fn scalar_detection_and_projective_form() {
        let w = M::scalar(3, omega(1));
        assert_eq!(w.as_scalar(), Some(omega(1)));
        assert!(w.projective_normal_form().is_identity());
        assert_eq!(t3().as_scalar(), None);
        assert_eq!(t3().pow(3).unwrap(), M::identity(3));
    }
}
