use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::echelon::{null_space_from_rref, rref, rref_fraction_free};
use crate::linalg::matrix::dot;
use crate::linalg::{Field, Matrix};

/// A linear subspace of `F^n` stored by its reduced row echelon basis.
///
/// Two subspaces are equal iff their bases are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::<F>::identity(ambient).row_vecs(),
        }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<F>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::Shape(format!(
                "vector of length {} in ambient dimension {ambient}",
                v.len()
            )));
        }
        let (basis, _) = rref(vectors, ambient);
        Ok(Subspace { ambient, basis })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn contains(&self, v: &[F]) -> Result<bool> {
        self.check_len(v.len())?;
        // Reduce v by the echelon basis.
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(y));
                }
            }
        }
        Ok(w.iter().all(|x| x.is_zero()))
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self::span(self.ambient, rows)
    }

    /// `{ w : <v, w> = 0 for all v in self }` under the bilinear dot product.
    pub fn annihilator(&self) -> Self {
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero basis row"))
            .collect();
        let ns = null_space_from_rref(&self.basis, &pivots, self.ambient);
        Self::span(self.ambient, ns).expect("consistent lengths")
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// `{ M v : v in self }` with vectors as columns.
    pub fn image(&self, m: &Matrix<F>) -> Result<Self> {
        if m.cols() != self.ambient {
            return Err(Error::Shape(format!(
                "{}x{} matrix on ambient dimension {}",
                m.rows(),
                m.cols(),
                self.ambient
            )));
        }
        let rows = self
            .basis
            .iter()
            .map(|v| m.apply(v))
            .collect::<Result<Vec<_>>>()?;
        Self::span(m.rows(), rows)
    }

    pub fn is_invariant_under(&self, m: &Matrix<F>) -> Result<bool> {
        let img = self.image(m)?;
        Ok(img == *self)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        self.check_len(other.ambient)
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n == self.ambient {
            Ok(())
        } else {
            Err(Error::Shape(format!("ambient dimension {n} vs {}", self.ambient)))
        }
    }
}

/// Null space `{ v : M v = 0 }`, by fraction-free elimination.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let (reduced, pivots) = rref_fraction_free(m.row_vecs(), m.cols());
    let ns = null_space_from_rref(&reduced, &pivots, m.cols());
    Subspace::span(m.cols(), ns).expect("consistent lengths")
}

/// Rank of M.
pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref_fraction_free(m.row_vecs(), m.cols()).1.len()
}

/// `kernel(g - zeta I)`.
pub fn eigenspace<F: Field>(g: &Matrix<F>, zeta: &F) -> Result<Subspace<F>> {
    if !g.is_square() {
        return Err(Error::Shape("eigenspace of a non-square matrix".into()));
    }
    let shifted = g.sub(&Matrix::scalar(g.rows(), zeta.clone()))?;
    Ok(kernel(&shifted))
}

/// Whether `v` is an eigenvector of `m`, returning the eigenvalue.
pub fn eigenvalue_of<F: Field>(m: &Matrix<F>, v: &[F]) -> Result<Option<F>> {
    let w = m.apply(v)?;
    let Some(p) = v.iter().position(|x| !x.is_zero()) else {
        return Ok(None);
    };
    let lambda = w[p].div_ref(&v[p]).expect("nonzero");
    let ok = w.iter().zip(v).all(|(a, b)| *a == lambda.mul_ref(b));
    Ok(ok.then_some(lambda))
}

impl<F: Field> fmt::Display for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, v) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `<a, b>` without conjugation.
pub fn dot_product<F: Field>(a: &[F], b: &[F]) -> F {
    dot(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Cyclotomic;

    type S = Subspace<Cyclotomic>;

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    fn e(i: usize, n: usize) -> Vec<Cyclotomic> {
        (0..n).map(|j| c((i == j) as i64)).collect()
    }

    #[test]
    fn kernel_of_diagonal_shift() {
        let w = Cyclotomic::root_of_unity(3, 1);
        let s = Matrix::diagonal(vec![c(1), w.clone(), &w * &w]);
        let k = eigenspace(&s, &c(1)).unwrap();
        assert_eq!(k, S::span(3, vec![e(0, 3)]).unwrap());
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let k = kernel(&Matrix::<Cyclotomic>::zero(3, 3));
        assert_eq!(k.dim(), 3);
        assert!(k.is_full());
    }

    #[test]
    fn eigenspace_of_identity() {
        assert!(eigenspace(&Matrix::<Cyclotomic>::identity(4), &c(1)).unwrap().is_full());
    }

    #[test]
    fn eigenspace_picks_the_first_coordinate() {
        let z = Cyclotomic::root_of_unity(3, 1);
        let g = Matrix::diagonal(vec![z.clone(), c(1), c(1), z.inv().unwrap()]);
        assert_eq!(eigenspace(&g, &z).unwrap(), S::span(4, vec![e(0, 4)]).unwrap());
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let u = S::span(3, vec![e(0, 3), e(1, 3)]).unwrap();
        let v = S::span(3, vec![e(1, 3), e(2, 3)]).unwrap();
        assert_eq!(u.intersect(&v).unwrap(), S::span(3, vec![e(1, 3)]).unwrap());
        assert!(u.sum(&v).unwrap().is_full());
    }

    #[test]
    fn image_and_containment() {
        let t = Matrix::from_rows(vec![
            vec![c(0), c(1), c(0)],
            vec![c(0), c(0), c(1)],
            vec![c(1), c(0), c(0)],
        ])
        .unwrap();
        let line = S::span(3, vec![e(0, 3)]).unwrap();
        assert_eq!(line.image(&t).unwrap(), S::span(3, vec![e(2, 3)]).unwrap());
        let ones = S::span(3, vec![vec![c(1), c(1), c(1)]]).unwrap();
        assert!(ones.is_invariant_under(&t).unwrap());
        assert!(ones.contains(&[c(2), c(2), c(2)]).unwrap());
        assert!(!ones.contains(&[c(2), c(2), c(1)]).unwrap());
    }

    #[test]
    fn ambient_mismatch() {
        let a = S::full(2);
        let b = S::full(3);
        assert!(matches!(a.sum(&b), Err(Error::Shape(_))));
        assert!(matches!(a.intersect(&b), Err(Error::Shape(_))));
    }

    #[test]
    fn eigenvalue_detection() {
        let m = Matrix::diagonal(vec![c(2), c(3)]);
        assert_eq!(eigenvalue_of(&m, &[c(0), c(5)]).unwrap(), Some(c(3)));
        assert_eq!(eigenvalue_of(&m, &[c(1), c(1)]).unwrap(), None);
    }
}
