//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! An element is stored in the power basis `1, z, .., z^(phi(n)-1)` of the
//! smallest cyclotomic field containing it, `z = E(n) = exp(2 pi i / n)`.
//! Every constructor and operation returns this canonical form, so equality
//! and hashing are plain structural comparisons.

mod parse;
pub(crate) mod tables;

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
pub use parse::parse_cyclotomic;
use tables::{cyclotomic_poly, euler_phi, lcm, mod_inverse, prime_factors};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn rational(q: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    /// `E(n)^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1, "root of unity of order 0");
        let e = k.rem_euclid(n as i64) as usize;
        let mut expanded = vec![BigRational::zero(); n as usize];
        expanded[e] = BigRational::one();
        Self::from_expanded(n, expanded)
    }

    /// Builds `sum_i c_i E(n)^i` from coefficients on arbitrary (not
    /// necessarily reduced) exponents `0..len`.
    pub fn from_expanded(n: u32, expanded: Vec<BigRational>) -> Self {
        let reduced = reduce_expanded(n, expanded);
        canonicalize(n, reduced)
    }

    /// Builds an element from power-basis coefficients at conductor `n`;
    /// the result is canonicalized.
    pub fn from_power_basis(n: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("conductor 0".into()));
        }
        if coeffs.len() != euler_phi(n) {
            return Err(Error::Shape(format!(
                "conductor {n} needs {} coefficients, got {}",
                euler_phi(n),
                coeffs.len()
            )));
        }
        Ok(canonicalize(n, coeffs))
    }

    /// The smallest `n` (never `2 mod 4`) with the element in `Q(E(n))`.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Power-basis coefficients at a multiple `n` of the conductor.
    pub fn coeffs_at(&self, n: u32) -> Result<Vec<BigRational>> {
        if n == 0 || !n.is_multiple_of(self.conductor) {
            return Err(Error::InvalidParameter(format!(
                "{n} is not a multiple of conductor {}",
                self.conductor
            )));
        }
        Ok(self.lift(n))
    }

    fn lift(&self, n: u32) -> Vec<BigRational> {
        if n == self.conductor {
            return self.coeffs.clone();
        }
        let step = (n / self.conductor) as usize;
        let mut expanded = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                expanded[i * step] = c.clone();
            }
        }
        reduce_expanded(n, expanded)
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -rhs } else { rhs.clone() };
        }
        let n = lcm(self.conductor as u64, rhs.conductor as u64) as u32;
        let mut a = self.lift(n);
        let b = rhs.lift(n);
        for (x, y) in a.iter_mut().zip(b) {
            if negate {
                *x -= y;
            } else {
                *x += y;
            }
        }
        canonicalize(n, a)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some(q) = self.as_rational() {
            return rhs.scale(q);
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale(q);
        }
        let n = lcm(self.conductor as u64, rhs.conductor as u64) as u32;
        let a = self.lift(n);
        let b = rhs.lift(n);
        let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        canonicalize(n, reduce_expanded(n, prod))
    }

    /// Multiplication by a rational; keeps the conductor.
    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::rational(q.recip()));
        }
        let n = self.conductor;
        let modulus: Vec<BigRational> = cyclotomic_poly(n)
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        let inverse = poly_inverse_mod(&self.coeffs, &modulus)
            .ok_or_else(|| Error::internal("element not invertible modulo cyclotomic polynomial"))?;
        Ok(Self::from_expanded(n, inverse))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        let mut base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
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

    /// The Galois automorphism `E(n) -> E(n)^k` for `n` the conductor;
    /// `k` must be coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor;
        if n == 1 {
            return self.clone();
        }
        let k = k.rem_euclid(n as i64) as usize;
        debug_assert_eq!(tables::gcd(k as u64, n as u64), 1);
        let mut expanded = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                expanded[(i * k) % n as usize] += c;
            }
        }
        Self::from_expanded(n, expanded)
    }

    /// Complex conjugation `E(n) -> E(n)^(n-1)`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1)
    }

    /// Floating-point value; used for diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * i as f64 / n;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }

    /// If the element is a root of unity, returns `(n, k)` with value `E(n)^k`
    /// and `n` its exact multiplicative order.
    pub fn as_root_of_unity(&self) -> Option<(u32, u32)> {
        let c = self.conductor;
        // Roots of unity in Q(E(c)) have order dividing lcm(2, c).
        let m = lcm(2, c as u64) as u32;
        (0..m)
            .find(|&k| *self == Self::root_of_unity(m, k as i64))
            .map(|k| {
                let g = tables::gcd(k as u64, m as u64) as u32;
                (m / g, k / g)
            })
    }
}

/// Reduces coefficients on exponents `0..len` modulo `x^n - 1` and then
/// modulo `Phi_n`, yielding `phi(n)` power-basis coefficients.
fn reduce_expanded(n: u32, mut v: Vec<BigRational>) -> Vec<BigRational> {
    let n_us = n as usize;
    if v.len() > n_us {
        let tail = v.split_off(n_us);
        for (i, c) in tail.into_iter().enumerate() {
            if !c.is_zero() {
                v[i % n_us] += c;
            }
        }
    }
    let phi_poly = cyclotomic_poly(n);
    let phi = phi_poly.len() - 1;
    if v.len() < phi {
        v.resize(phi, BigRational::zero());
    }
    for k in (phi..v.len()).rev() {
        if v[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[k]);
        for (j, &pj) in phi_poly[..phi].iter().enumerate() {
            if pj != 0 {
                v[k - phi + j] -= &c * BigInt::from(pj);
            }
        }
    }
    v.truncate(phi);
    v
}

/// Descends to the minimal conductor. `coeffs` are the `phi(n)`
/// power-basis coefficients at conductor `n`.
fn canonicalize(mut n: u32, mut coeffs: Vec<BigRational>) -> Cyclotomic {
    if coeffs.iter().all(|c| c.is_zero()) {
        return Cyclotomic::zero();
    }
    'outer: loop {
        for p in prime_factors(n) {
            if let Some(down) = descend(n, p, &coeffs) {
                n /= p;
                coeffs = down;
                continue 'outer;
            }
        }
        break;
    }
    Cyclotomic {
        conductor: n,
        coeffs,
    }
}

/// Tries to express an element of `Q(E(n))` inside `Q(E(n/p))`.
fn descend(n: u32, p: u32, coeffs: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = n / p;
    let phi_m = euler_phi(m);
    if m.is_multiple_of(p) {
        // Phi_n(x) = Phi_m(x^p): the basis E(n)^r, r < p, is a relative basis
        // and reduction preserves exponent residues mod p.
        let ok = coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % p as usize == 0 || c.is_zero());
        return ok.then(|| (0..phi_m).map(|j| coeffs[j * p as usize].clone()).collect());
    }
    // p exactly divides n: E(n)^i = E(m)^(i u) E(p)^(i v), and E(p)^1..E(p)^(p-1)
    // is a basis of Q(E(n)) over Q(E(m)).
    let u = mod_inverse(p as u64 % m.max(1) as u64, m as u64) as usize;
    let v = mod_inverse(m as u64 % p as u64, p as u64) as usize;
    let (m_us, p_us) = (m as usize, p as usize);
    let mut parts: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); m_us]; p_us];
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            parts[(i * v) % p_us][(i * u) % m_us] += c;
        }
    }
    let parts: Vec<Vec<BigRational>> = parts.into_iter().map(|e| reduce_expanded(m, e)).collect();
    if parts[2..].iter().any(|r| *r != parts[1]) {
        return None;
    }
    Some(
        parts[0]
            .iter()
            .zip(&parts[1])
            .map(|(a, b)| a - b)
            .collect(),
    )
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = &rem[k] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[k - db + j] -= &c * bj;
            }
        }
        quot[k - db] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Extended Euclid: `s` with `s * a = 1 mod m`, or `None` if not coprime.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<BigRational> = vec![];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, mut r) = poly_divmod(&r0, &r1);
        let mut s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        // Monic remainders keep the coefficients small.
        if let Some(lead) = r.last().cloned() {
            let inv = lead.recip();
            r.iter_mut().for_each(|x| *x *= &inv);
            s2.iter_mut().for_each(|x| *x *= &inv);
        }
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    Some(s0.into_iter().map(|x| x * &c).collect())
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

impl From<BigInt> for Cyclotomic {
    fn from(n: BigInt) -> Self {
        Self::rational(BigRational::from_integer(n))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                let f: fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic = $body;
                f(self, rhs)
            }
        }
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
// Panics on a zero divisor; use `checked_div` for a Result.
forward_binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero"));

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Cyclotomic> for Cyclotomic {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl Product for Cyclotomic {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

/// Canonical text form: ascending powers of `E(n)` at the minimal conductor,
/// e.g. `-1/2+3*E(8)^3`. The output parses back to the same value.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if negative {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let root = match i {
                0 => None,
                1 => Some(format!("E({})", self.conductor)),
                _ => Some(format!("E({})^{}", self.conductor, i)),
            };
            match root {
                None => write!(f, "{abs}")?,
                Some(r) if abs.is_one() => write!(f, "{r}")?,
                Some(r) => write!(f, "{abs}*{r}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    fn int(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    #[test]
    fn eighth_root_to_the_fourth_is_minus_one() {
        assert_eq!(e(8, 4), int(-1));
        assert!(e(8, 4).is_rational());
    }

    #[test]
    fn nontrivial_cube_roots_sum_to_minus_one() {
        assert_eq!(e(3, 1) + e(3, 2), int(-1));
    }

    #[test]
    fn sixth_root_descends_to_conductor_three() {
        let z6 = e(6, 1);
        assert_eq!(z6.conductor(), 3);
        assert_eq!(z6, e(3, 1) + int(1));
    }

    #[test]
    fn root_consistency_across_conductors() {
        // E(ab)^a = E(b)
        for (a, b) in [(2, 3), (3, 4), (5, 8), (4, 9), (6, 10)] {
            assert_eq!(e(a * b, a as i64), e(b, 1), "a={a} b={b}");
        }
    }

    #[test]
    fn surd_identities() {
        assert_eq!((int(1) + int(2) * e(3, 1)).pow(2).unwrap(), int(-3));
        assert_eq!((e(8, 1) - e(8, 3)).pow(2).unwrap(), int(2));
        let sqrt5 = int(1) + int(2) * e(5, 1) + int(2) * e(5, 4);
        assert_eq!(sqrt5.pow(2).unwrap(), int(5));
        let sqrt_m7 = e(7, 1) + e(7, 2) + e(7, 4) - e(7, 3) - e(7, 5) - e(7, 6);
        assert_eq!(sqrt_m7.pow(2).unwrap(), int(-7));
    }

    #[test]
    fn inverse_of_root_of_unity() {
        assert_eq!(e(5, 1).inv().unwrap(), e(5, 4));
        assert_eq!(int(0).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_of_general_element() {
        let a = int(3) + e(12, 1) - Cyclotomic::from_fraction(1, 2) * e(12, 5);
        assert_eq!(&a * &a.inv().unwrap(), int(1));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(e(8, 1).conjugate(), e(8, 7));
        let q = Cyclotomic::from_fraction(3, 2);
        assert_eq!(q.conjugate(), q);
        assert_eq!((int(1) + int(2) * e(3, 1)).conjugate(), int(-1) - int(2) * e(3, 1));
    }

    #[test]
    fn i_squared() {
        assert_eq!(e(4, 1) * e(4, 1), int(-1));
        assert_eq!(e(8, 2), e(4, 1));
    }

    #[test]
    fn cyclotomic_polynomial_vanishes_at_its_root() {
        for n in 1..=60u32 {
            let z = e(n, 1);
            let poly = cyclotomic_poly(n);
            let mut acc = Cyclotomic::zero();
            let mut power = Cyclotomic::one();
            for &c in poly.iter() {
                acc = acc + &power * &int(c);
                power = &power * &z;
            }
            assert!(acc.is_zero(), "Phi_{n}(E({n})) != 0");
        }
    }

    #[test]
    fn mixed_conductor_sum_descends() {
        // E(15) in terms of E(3) E(5); (E(15) + x) - E(15) must be x again.
        let x = e(5, 2) - e(3, 1);
        let y = (&x + &e(15, 1)) - e(15, 1);
        assert_eq!(y, x);
        assert_eq!(y.conductor(), 15);
        assert_eq!((e(5, 1) + e(3, 1) - e(3, 1)).conductor(), 5);
    }

    #[test]
    fn display_format() {
        let a = Cyclotomic::from_fraction(-1, 2) + int(3) * e(8, 3);
        assert_eq!(a.to_string(), "-1/2+3*E(8)^3");
        assert_eq!(e(4, 1).to_string(), "E(4)");
        assert_eq!((-e(3, 1)).to_string(), "-E(3)");
        assert_eq!(int(0).to_string(), "0");
    }

    #[test]
    fn root_of_unity_detection() {
        assert_eq!(e(6, 1).as_root_of_unity(), Some((6, 1)));
        assert_eq!(int(-1).as_root_of_unity(), Some((2, 1)));
        assert_eq!(e(8, 6).as_root_of_unity(), Some((4, 3)));
        assert_eq!(int(2).as_root_of_unity(), None);
    }

    #[test]
    fn complex_approximation() {
        let (re, im) = e(4, 1).to_complex();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
    }
}
