//! Homogeneous polynomials on the degree-`d` monomial basis in lexicographic
//! order, variables `x > y > z` (three variables) or `x > y > u > v` (four).

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::CycMatrix;

/// Exponent tuples of all degree-`d` monomials in `n` variables, lex
/// descending.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `C(n + d - 1, d)`.
pub fn monomial_count(n: usize, d: u32) -> usize {
    let mut c: u128 = 1;
    for k in 0..d as u128 {
        c = c * (n as u128 + k) / (k + 1);
    }
    c as usize
}

pub fn variable_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        4 => vec!["x".into(), "y".into(), "u".into(), "v".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    degree: u32,
    coeffs: Vec<Cyclotomic>,
}

impl Polynomial {
    pub fn new(nvars: usize, degree: u32, coeffs: Vec<Cyclotomic>) -> Result<Self> {
        let expected = monomial_count(nvars, degree);
        if coeffs.len() != expected {
            return Err(Error::Shape(format!(
                "degree {degree} in {nvars} variables needs {expected} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Polynomial { nvars, degree, coeffs })
    }

    /// Sum of `coeff * monomial` terms given by exponent tuples.
    pub fn from_terms(nvars: usize, degree: u32, terms: &[(Cyclotomic, Vec<u32>)]) -> Result<Self> {
        let basis = monomials(nvars, degree);
        let index: HashMap<&[u32], usize> = basis.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let mut coeffs = vec![Cyclotomic::zero(); basis.len()];
        for (c, e) in terms {
            let &i = index
                .get(e.as_slice())
                .ok_or_else(|| Error::Shape(format!("monomial {e:?} is not of degree {degree}")))?;
            coeffs[i] = &coeffs[i] + c;
        }
        Self::new(nvars, degree, coeffs)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Scaled so the leading (first nonzero) coefficient is 1.
    pub fn normalized(&self) -> Self {
        let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()) else {
            return self.clone();
        };
        let inv = lead.inv().expect("nonzero");
        Polynomial {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
        }
    }

    /// Equal up to a nonzero scalar.
    pub fn proportional_to(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.degree == other.degree && self.normalized() == other.normalized()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = variable_names(self.nvars);
        let mut first = true;
        for (c, e) in self.coeffs.iter().zip(monomials(self.nvars, self.degree)) {
            if c.is_zero() {
                continue;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&names)
                .filter(|(&a, _)| a > 0)
                .map(|(&a, n)| if a == 1 { n.clone() } else { format!("{n}^{a}") })
                .collect();
            let mono = mono.join("*");
            let text = c.to_string();
            let simple = c.is_rational();
            let (sign, body) = if simple && text.starts_with('-') {
                ("-", text[1..].to_string())
            } else {
                ("+", text)
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            first = false;
            let unit = simple && body == "1";
            match (mono.is_empty(), unit, simple) {
                (true, _, true) => write!(f, "{body}")?,
                (true, _, false) => write!(f, "({body})")?,
                (false, true, _) => write!(f, "{mono}")?,
                (false, false, true) => write!(f, "{body}*{mono}")?,
                (false, false, false) => write!(f, "({body})*{mono}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense product expansion helper over the monomial bases of successive
/// degrees.
struct Expander {
    n: usize,
    index: Vec<HashMap<Vec<u32>, usize>>,
    bases: Vec<Vec<Vec<u32>>>,
}

impl Expander {
    fn new(n: usize, d: u32) -> Self {
        let bases: Vec<Vec<Vec<u32>>> = (0..=d).map(|k| monomials(n, k)).collect();
        let index = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();
        Expander { n, index, bases }
    }

    /// `p * (sum_j l_j x_j)` with `p` of degree `k`.
    fn times_linear(&self, p: &[Cyclotomic], k: usize, l: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let mut out = vec![Cyclotomic::zero(); self.bases[k + 1].len()];
        for (c, m) in p.iter().zip(&self.bases[k]) {
            if c.is_zero() {
                continue;
            }
            for (j, lj) in l.iter().enumerate() {
                if lj.is_zero() {
                    continue;
                }
                let mut e = m.clone();
                e[j] += 1;
                let i = self.index[k + 1][&e];
                out[i] = &out[i] + &(c * lj);
            }
        }
        out
    }

    /// Coefficients of `prod_i (row_i . x)^{e_i}`.
    fn substitute(&self, rows: &[Vec<Cyclotomic>], e: &[u32]) -> Vec<Cyclotomic> {
        let mut p = vec![Cyclotomic::one()];
        let mut k = 0;
        for (i, &a) in e.iter().enumerate() {
            for _ in 0..a {
                p = self.times_linear(&p, k, &rows[i]);
                k += 1;
            }
        }
        debug_assert_eq!(rows.len(), self.n);
        p
    }
}

/// Matrix of `f -> f(g^-1 x)` on degree-`d` polynomials, acting on
/// coefficient columns. Multiplicative in `g`.
pub fn sym_power_matrix(g: &CycMatrix, d: u32) -> Result<CycMatrix> {
    let inv = g.inverse()?;
    substitution_matrix(&inv, d)
}

/// Matrix of `f -> f(a x)`: column `j` holds the expansion of monomial `j`
/// after substituting `x_i -> (a x)_i`.
fn substitution_matrix(a: &CycMatrix, d: u32) -> Result<CycMatrix> {
    if !a.is_square() {
        return Err(Error::Shape("substitution by a non-square matrix".into()));
    }
    let n = a.rows();
    let ex = Expander::new(n, d);
    let rows = a.row_vecs();
    let basis = &ex.bases[d as usize];
    let size = basis.len();
    let mut m = CycMatrix::zero(size, size);
    for (j, e) in basis.iter().enumerate() {
        for (i, c) in ex.substitute(&rows, e).into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// The twisted-cubic lift of a `2 x 2` matrix: the matrix `S(a)` with
/// `nu(a w) = S(a) nu(w)` for `nu(x, y) = (x^3, x^2 y, x y^2, y^3)`.
pub fn sym_cube_2x2(a: &CycMatrix) -> Result<CycMatrix> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::Shape("expected a 2x2 matrix".into()));
    }
    // Row i lists the coefficients of X^(3-i) Y^i, where (X,Y) = a (x,y).
    let sub = substitution_matrix(a, 3)?;
    Ok(sub.transpose())
}
