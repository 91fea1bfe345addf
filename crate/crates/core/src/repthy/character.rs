use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::matgroup::{LinearCharacter, MatGroup};

/// Class function given by its value on every group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    values: Vec<Cyclotomic>,
}

impl Character {
    pub fn from_values(values: Vec<Cyclotomic>) -> Self {
        Character { values }
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, i: u32) -> &Cyclotomic {
        &self.values[i as usize]
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }
}

/// Traces of the defining representation.
pub fn natural_character(g: &MatGroup) -> Character {
    Character::from_values(g.traces().to_vec())
}

pub fn linear_character_values(g: &MatGroup, lambda: &LinearCharacter) -> Character {
    let graph = g.graph();
    Character::from_values((0..g.order() as u32).map(|x| lambda.value(graph, x)).collect())
}

/// `(1/|G|) sum a(g) conj(b(g))`; must be rational.
pub fn inner_product(a: &Character, b: &Character) -> Result<BigRational> {
    inner_product_values(&a.values, &b.values)
}

pub fn inner_product_values(a: &[Cyclotomic], b: &[Cyclotomic]) -> Result<BigRational> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Shape("characters of different groups".into()));
    }
    // Few distinct value pairs occur; multiply each once.
    let mut counts: HashMap<(&Cyclotomic, &Cyclotomic), i64> = HashMap::new();
    for pair in a.iter().zip(b) {
        *counts.entry(pair).or_insert(0) += 1;
    }
    let mut total = Cyclotomic::zero();
    for ((x, y), k) in counts {
        total = total + (x * &y.conjugate()) * Cyclotomic::from_integer(k);
    }
    let n = Cyclotomic::from_integer(a.len() as i64);
    let q = total.checked_div(&n)?;
    q.as_rational()
        .cloned()
        .ok_or_else(|| Error::internal(format!("character inner product {q} is not rational")))
}
