//! Transitivity, imprimitivity and the weak-exceptionality verdict.

mod blocks;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::matgroup::MatGroup;
use crate::repthy::{inner_product_values, min_semi_invariant, sparsest_witness, Polynomial};
use crate::CycSubspace;

pub use blocks::{has_two_block_system, is_block_system, is_monomial};
pub use crate::matgroup::DEFAULT_CLASS_CAP;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transitivity {
    pub transitive: bool,
    /// `<chi, chi>`.
    pub norm: BigRational,
    /// A proper invariant subspace when intransitive.
    pub witness: Option<CycSubspace>,
}

/// Smallest `g`-invariant subspace containing `v`: the span of its orbit.
pub fn orbit_span(g: &MatGroup, v: &[Cyclotomic]) -> Result<CycSubspace> {
    let mut w = CycSubspace::span(g.dim(), vec![v.to_vec()])?;
    loop {
        let mut next = w.clone();
        for m in g.generators() {
            next = next.sum(&w.image(m)?)?;
        }
        if next == w {
            return Ok(w);
        }
        w = next;
    }
}

/// Transitive iff irreducible iff `<chi, chi> = 1`.
pub fn is_transitive(g: &MatGroup) -> Result<Transitivity> {
    let norm = inner_product_values(g.traces(), g.traces())?;
    if norm.is_one() {
        return Ok(Transitivity {
            transitive: true,
            norm,
            witness: None,
        });
    }
    let n = g.dim();
    let mut probes: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|i| {
            let mut e = vec![Cyclotomic::zero(); n];
            e[i] = Cyclotomic::one();
            e
        })
        .collect();
    probes.push(vec![Cyclotomic::one(); n]);
    let mut witness = None;
    for v in probes {
        let w = orbit_span(g, &v)?;
        if !w.is_full() {
            witness = Some(w);
            break;
        }
    }
    Ok(Transitivity {
        transitive: false,
        norm,
        witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionTag {
    Intransitive,
    ImprimitiveMonomial,
    ImprimitiveNonMonomial,
    Primitive,
}

impl ActionTag {
    pub const ALL: [ActionTag; 4] = [
        ActionTag::Intransitive,
        ActionTag::ImprimitiveMonomial,
        ActionTag::ImprimitiveNonMonomial,
        ActionTag::Primitive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ActionTag::Intransitive => "Intransitive",
            ActionTag::ImprimitiveMonomial => "ImprimitiveMonomial",
            ActionTag::ImprimitiveNonMonomial => "ImprimitiveNonMonomial",
            ActionTag::Primitive => "Primitive",
        }
    }

    pub fn is_transitive(self) -> bool {
        self != ActionTag::Intransitive
    }

    pub fn is_imprimitive(self) -> bool {
        matches!(self, ActionTag::ImprimitiveMonomial | ActionTag::ImprimitiveNonMonomial)
    }
}

impl fmt::Display for ActionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ActionTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ActionTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown action class `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionClass {
    Intransitive(Option<CycSubspace>),
    /// `N` lines permuted by the group.
    ImprimitiveMonomial(Vec<CycSubspace>),
    /// Two planes permuted by the group.
    ImprimitiveNonMonomial(Vec<CycSubspace>),
    Primitive,
}

impl ActionClass {
    pub fn tag(&self) -> ActionTag {
        match self {
            ActionClass::Intransitive(_) => ActionTag::Intransitive,
            ActionClass::ImprimitiveMonomial(_) => ActionTag::ImprimitiveMonomial,
            ActionClass::ImprimitiveNonMonomial(_) => ActionTag::ImprimitiveNonMonomial,
            ActionClass::Primitive => ActionTag::Primitive,
        }
    }

    pub fn blocks(&self) -> &[CycSubspace] {
        match self {
            ActionClass::ImprimitiveMonomial(b) | ActionClass::ImprimitiveNonMonomial(b) => b,
            _ => &[],
        }
    }
}

/// Intransitive, else monomial, else (dimension 4) two-block, else
/// primitive. In dimension 3 every imprimitive action is monomial.
pub fn classify_action(g: &MatGroup, class_cap: usize) -> Result<ActionClass> {
    let t = is_transitive(g)?;
    if !t.transitive {
        return Ok(ActionClass::Intransitive(t.witness));
    }
    if g.order() > class_cap {
        return Err(Error::CapExceeded { cap: class_cap });
    }
    if let Some(lines) = is_monomial(g, class_cap)? {
        return Ok(ActionClass::ImprimitiveMonomial(lines));
    }
    if g.dim() == 4 {
        if let Some(blocks) = has_two_block_system(g, class_cap)? {
            return Ok(ActionClass::ImprimitiveNonMonomial(blocks));
        }
    }
    Ok(ActionClass::Primitive)
}

/// Projective image of order 60 and simple, hence isomorphic to `A5`.
pub fn is_a5_family(g: &MatGroup) -> bool {
    let p = g.projective();
    p.order() == 60 && p.is_simple()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    None,
    InvariantSubspace(CycSubspace),
    SemiInvariant(Polynomial),
    A5Family,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::None => f.write_str("none"),
            Witness::InvariantSubspace(s) => write!(f, "invariant subspace {s}"),
            Witness::SemiInvariant(p) => write!(f, "semi-invariant {p}"),
            Witness::A5Family => f.write_str("projective image is A5"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub dim: usize,
    pub order: usize,
    pub transitive: bool,
    /// Least degree of a semi-invariant, searched up to `N - 1`.
    pub min_semi_invariant_degree: Option<u32>,
    /// Evaluated in dimension 4 once the group is transitive with no
    /// semi-invariant of degree at most 3.
    pub a5_flag: Option<bool>,
    pub weakly_exceptional: bool,
    pub witness: Witness,
}

/// `weakly_exceptional = transitive && no semi-invariant of degree < N &&
/// !(N = 4 && projectively A5)`.
pub fn check_weakly_exceptional(g: &MatGroup, n: usize) -> Result<Verdict> {
    if n != 3 && n != 4 {
        return Err(Error::InvalidParameter(format!("dimension {n} is not 3 or 4")));
    }
    if g.dim() != n {
        return Err(Error::Shape(format!("group acts in dimension {}, not {n}", g.dim())));
    }
    let t = is_transitive(g)?;
    let semi = min_semi_invariant(g, n as u32 - 1)?;
    let degree = semi.as_ref().map(|(d, _)| *d);
    let a5_flag = (n == 4 && t.transitive && semi.is_none()).then(|| is_a5_family(g));
    let weakly_exceptional = t.transitive && semi.is_none() && a5_flag != Some(true);
    let witness = if let Some(w) = t.witness.clone() {
        Witness::InvariantSubspace(w)
    } else if let Some(p) = semi.as_ref().and_then(|(_, spaces)| sparsest_witness(spaces)) {
        Witness::SemiInvariant(p)
    } else if a5_flag == Some(true) {
        Witness::A5Family
    } else {
        Witness::None
    };
    Ok(Verdict {
        dim: n,
        order: g.order(),
        transitive: t.transitive,
        min_semi_invariant_degree: degree,
        a5_flag,
        weakly_exceptional,
        witness,
    })
}
