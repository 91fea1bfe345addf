use std::collections::BTreeMap;
use std::fmt;

use crate::catalog::{preset_class, CatalogEntry, Params};
use crate::classify::{
    check_weakly_exceptional, classify_action, has_two_block_system, is_block_system, is_transitive, ActionClass,
    ActionTag, Verdict,
};
use crate::cyclotomic::Cyclotomic;
use crate::error::Result;
use crate::matgroup::MatGroup;
use crate::repthy::{min_semi_invariant_degree, semi_invariants, Polynomial, SemiInvariantSpace};
use crate::CycSubspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactSource {
    /// Stated for this group in the literature.
    Literature,
    /// Obtained by running this library; recorded to catch regressions.
    Computed,
}

impl fmt::Display for FactSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactSource::Literature => "literature",
            FactSource::Computed => "computed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fact {
    Order(usize),
    ProjectiveOrder(usize),
    ProjectivelySimple(bool),
    Transitive(bool),
    Class(ActionTag),
    TwoBlockSystem(bool),
    WeaklyExceptional(bool),
    MinSemiInvariantDegree { max: u32, degree: Option<u32> },
    HasSemiInvariant(u32),
    A5Flag(bool),
    /// Lies in the span of the semi-invariants of its degree for one
    /// character.
    SemiInvariant(Polynomial),
    /// Equals the verdict's witness up to a scalar.
    VerdictWitness(Polynomial),
    /// Spanned by the given integer vectors.
    InvariantSubspace(Vec<Vec<i64>>),
    PermutedSubspaces(Vec<Vec<Vec<i64>>>),
}

fn vectors(v: &[Vec<i64>]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|x| format!("({})", x.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("span{{{}}}", parts.join(", "))
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::Order(n) => write!(f, "order = {n}"),
            Fact::ProjectiveOrder(n) => write!(f, "projective order = {n}"),
            Fact::ProjectivelySimple(b) => write!(f, "projectively simple = {b}"),
            Fact::Transitive(b) => write!(f, "transitive = {b}"),
            Fact::Class(t) => write!(f, "action class = {t}"),
            Fact::TwoBlockSystem(b) => write!(f, "two-block system = {b}"),
            Fact::WeaklyExceptional(b) => write!(f, "weakly exceptional = {b}"),
            Fact::MinSemiInvariantDegree { max, degree } => match degree {
                Some(d) => write!(f, "least semi-invariant degree (<= {max}) = {d}"),
                None => write!(f, "no semi-invariant of degree <= {max}"),
            },
            Fact::HasSemiInvariant(d) => write!(f, "has a semi-invariant of degree {d}"),
            Fact::A5Flag(b) => write!(f, "projectively A5 = {b}"),
            Fact::SemiInvariant(p) => write!(f, "semi-invariant {p}"),
            Fact::VerdictWitness(p) => write!(f, "verdict witness ~ {p}"),
            Fact::InvariantSubspace(v) => write!(f, "invariant subspace {}", vectors(v)),
            Fact::PermutedSubspaces(bs) => {
                let parts: Vec<String> = bs.iter().map(|b| vectors(b)).collect();
                write!(f, "permuted subspaces {}", parts.join(" "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedFact {
    pub fact: Fact,
    pub source: FactSource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactCheck {
    pub passed: bool,
    pub observed: String,
}

/// Checks facts against one group, sharing expensive results.
pub struct FactChecker<'a> {
    g: &'a MatGroup,
    class_cap: usize,
    verdict: Option<Verdict>,
    class: Option<ActionClass>,
    semi: BTreeMap<u32, Vec<SemiInvariantSpace>>,
}

fn subspace(n: usize, v: &[Vec<i64>]) -> Result<CycSubspace> {
    CycSubspace::span(n, v.iter().map(|x| x.iter().map(|&a| Cyclotomic::from_integer(a)).collect()).collect())
}

impl<'a> FactChecker<'a> {
    pub fn new(g: &'a MatGroup, class_cap: usize) -> Self {
        FactChecker {
            g,
            class_cap,
            verdict: None,
            class: None,
            semi: BTreeMap::new(),
        }
    }

    pub fn verdict(&mut self) -> Result<&Verdict> {
        if self.verdict.is_none() {
            self.verdict = Some(check_weakly_exceptional(self.g, self.g.dim())?);
        }
        Ok(self.verdict.as_ref().expect("set"))
    }

    pub fn class(&mut self) -> Result<&ActionClass> {
        if self.class.is_none() {
            self.class = Some(classify_action(self.g, self.class_cap)?);
        }
        Ok(self.class.as_ref().expect("set"))
    }

    fn semi(&mut self, d: u32) -> Result<&[SemiInvariantSpace]> {
        if !self.semi.contains_key(&d) {
            let s = semi_invariants(self.g, d)?;
            self.semi.insert(d, s);
        }
        Ok(&self.semi[&d])
    }

    pub fn check(&mut self, fact: &Fact) -> Result<FactCheck> {
        let g = self.g;
        let (passed, observed) = match fact {
            Fact::Order(n) => (g.order() == *n, g.order().to_string()),
            Fact::ProjectiveOrder(n) => {
                let o = g.projective().order();
                (o == *n, o.to_string())
            }
            Fact::ProjectivelySimple(b) => {
                let s = g.projective().is_simple();
                (s == *b, s.to_string())
            }
            Fact::Transitive(b) => {
                let t = is_transitive(g)?.transitive;
                (t == *b, t.to_string())
            }
            Fact::Class(t) => {
                let c = self.class()?.tag();
                (c == *t, c.to_string())
            }
            Fact::TwoBlockSystem(b) => {
                let found = has_two_block_system(g, self.class_cap)?.is_some();
                (found == *b, found.to_string())
            }
            Fact::WeaklyExceptional(b) => {
                let w = self.verdict()?.weakly_exceptional;
                (w == *b, w.to_string())
            }
            Fact::MinSemiInvariantDegree { max, degree } => {
                let d = if *max + 1 == g.dim() as u32 {
                    self.verdict()?.min_semi_invariant_degree
                } else {
                    min_semi_invariant_degree(g, *max)?
                };
                (d == *degree, d.map_or("none".into(), |d| d.to_string()))
            }
            Fact::HasSemiInvariant(d) => {
                let dims: Vec<usize> = self.semi(*d)?.iter().map(SemiInvariantSpace::dim).collect();
                (!dims.is_empty(), format!("space dimensions {dims:?}"))
            }
            Fact::A5Flag(b) => {
                let a = self.verdict()?.a5_flag;
                (a == Some(*b), a.map_or("not evaluated".into(), |a| a.to_string()))
            }
            Fact::SemiInvariant(p) => {
                let spaces = self.semi(p.degree())?;
                let mut hit = None;
                for s in spaces {
                    if s.contains(p)? {
                        hit = Some(s.character.to_string());
                        break;
                    }
                }
                (hit.is_some(), hit.map_or("not semi-invariant".into(), |c| format!("character {c}")))
            }
            Fact::VerdictWitness(p) => {
                let w = self.verdict()?.witness.clone();
                let ok = matches!(&w, crate::classify::Witness::SemiInvariant(q) if q.proportional_to(p));
                (ok, w.to_string())
            }
            Fact::InvariantSubspace(v) => {
                let w = subspace(g.dim(), v)?;
                let mut ok = !w.is_zero() && !w.is_full();
                for m in g.generators() {
                    ok = ok && w.is_invariant_under(m)?;
                }
                (ok, if ok { "invariant".into() } else { "not invariant".into() })
            }
            Fact::PermutedSubspaces(bs) => {
                let blocks = bs.iter().map(|b| subspace(g.dim(), b)).collect::<Result<Vec<_>>>()?;
                let ok = is_block_system(g, &blocks)?;
                (ok, if ok { "permuted".into() } else { "not permuted".into() })
            }
        };
        Ok(FactCheck { passed, observed })
    }
}

fn poly(n: usize, d: u32, terms: &[(i64, &[u32])]) -> Polynomial {
    let t: Vec<(Cyclotomic, Vec<u32>)> = terms.iter().map(|(c, e)| (Cyclotomic::from_integer(*c), e.to_vec())).collect();
    Polynomial::from_terms(n, d, &t).expect("well-formed literal")
}

fn conic() -> Polynomial {
    poly(3, 2, &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])])
}

fn quadric() -> Polynomial {
    poly(4, 2, &[(1, &[1, 0, 0, 1]), (-1, &[0, 1, 1, 0])])
}

fn diagonal_cubic() -> Polynomial {
    poly(4, 3, &[(1, &[3, 0, 0, 0]), (1, &[0, 3, 0, 0]), (1, &[0, 0, 3, 0]), (1, &[0, 0, 0, 3])])
}

pub(crate) fn expected_facts(entry: &CatalogEntry, params: &Params) -> Vec<ExpectedFact> {
    use Fact::*;
    use FactSource::{Computed as C, Literature as L};
    let f = |fact, source| ExpectedFact { fact, source };
    let none3 = MinSemiInvariantDegree { max: 2, degree: None };
    let deg2 = MinSemiInvariantDegree { max: 2, degree: Some(2) };
    let four_lines = PermutedSubspaces(vec![
        vec![vec![1, 0, 0, 1]],
        vec![vec![1, 0, 0, -1]],
        vec![vec![0, 1, 1, 0]],
        vec![vec![0, 1, -1, 0]],
    ]);
    let default_params = entry
        .params
        .iter()
        .all(|(n, d)| params.get(*n).copied().unwrap_or(*d) == *d);
    let mut out = match entry.name.as_str() {
        "sl3/E108" => vec![
            f(Order(108), L),
            f(Class(ActionTag::Primitive), L),
            f(none3, L),
            f(WeaklyExceptional(true), L),
        ],
        "sl3/F216" => vec![
            f(Order(216), L),
            f(Class(ActionTag::Primitive), L),
            f(none3, L),
            f(WeaklyExceptional(true), L),
        ],
        "sl3/G648" => vec![
            f(Order(648), L),
            f(Class(ActionTag::Primitive), L),
            f(none3, L),
            f(WeaklyExceptional(true), L),
        ],
        "sl3/heis27" => vec![
            f(Order(27), C),
            f(Class(ActionTag::ImprimitiveMonomial), L),
            f(none3, C),
            f(WeaklyExceptional(true), L),
        ],
        "sl3/typeC" => vec![
            f(Order(12), C),
            f(Class(ActionTag::ImprimitiveMonomial), L),
            f(deg2, L),
            f(VerdictWitness(conic()), L),
            f(WeaklyExceptional(false), L),
        ],
        "sl3/typeD" => {
            let mut v = vec![
                f(Class(ActionTag::ImprimitiveMonomial), L),
                f(deg2, L),
                f(VerdictWitness(conic()), L),
                f(WeaklyExceptional(false), L),
            ];
            if default_params {
                v.insert(0, f(Order(24), C));
            }
            v
        }
        "sl3/A5" => vec![
            f(Order(60), C),
            f(ProjectivelySimple(true), C),
            f(Transitive(true), C),
            f(Class(ActionTag::Primitive), L),
            f(deg2, L),
            f(WeaklyExceptional(false), L),
        ],
        "sl3/K168" => vec![
            f(Order(168), C),
            f(ProjectivelySimple(true), C),
            f(Transitive(true), C),
            f(Class(ActionTag::Primitive), L),
            f(none3, L),
            f(WeaklyExceptional(true), L),
        ],
        "sl3/J180" => vec![
            f(Order(180), C),
            f(ProjectiveOrder(60), C),
            f(Class(ActionTag::Primitive), L),
            f(deg2, L),
            f(WeaklyExceptional(false), L),
        ],
        "sl3/K504" => vec![
            f(Order(504), C),
            f(ProjectiveOrder(168), C),
            f(Class(ActionTag::Primitive), L),
            f(none3, L),
            f(WeaklyExceptional(true), L),
        ],
        "sl4/eg-intrans" => {
            let mut v = vec![
                f(Transitive(false), L),
                f(Class(ActionTag::Intransitive), L),
                f(InvariantSubspace(vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0]]), L),
                f(InvariantSubspace(vec![vec![1, 0, 0, 0], vec![0, 0, 0, 1]]), L),
                f(SemiInvariant(quadric()), L),
            ];
            if default_params {
                v.insert(0, f(Order(72), C));
            }
            v
        }
        "sl4/eg-trans" => {
            let mut v = vec![
                f(Transitive(true), L),
                f(Class(ActionTag::ImprimitiveMonomial), L),
                f(SemiInvariant(quadric()), L),
                f(WeaklyExceptional(false), L),
            ];
            if default_params {
                v.insert(0, f(Order(72), C));
            }
            v
        }
        "sl4/eg-imprim" => vec![
            f(Order(192), C),
            f(Transitive(true), L),
            f(four_lines, L),
            f(Class(ActionTag::ImprimitiveMonomial), L),
            f(TwoBlockSystem(false), C),
            f(SemiInvariant(quadric()), L),
            f(WeaklyExceptional(false), L),
        ],
        "sl4/eg-prim" => vec![
            f(Order(576), C),
            f(Transitive(true), L),
            f(Class(ActionTag::Primitive), L),
            f(TwoBlockSystem(false), L),
            f(SemiInvariant(quadric()), L),
            f(WeaklyExceptional(false), L),
        ],
        "sl4/eg-imprim-mono" => vec![
            f(Order(384), C),
            f(Transitive(true), L),
            f(four_lines, L),
            f(Class(ActionTag::ImprimitiveMonomial), L),
            f(SemiInvariant(quadric()), L),
            f(WeaklyExceptional(false), L),
        ],
        "sl4/eg-imprim-nonmono" => {
            let mut v = vec![
                f(Transitive(true), L),
                f(
                    PermutedSubspaces(vec![
                        vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
                        vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]],
                    ]),
                    L,
                ),
                f(TwoBlockSystem(true), L),
                f(Class(ActionTag::ImprimitiveNonMonomial), L),
                f(SemiInvariant(quadric()), L),
                f(WeaklyExceptional(false), L),
            ];
            if default_params {
                v.insert(0, f(Order(144), C));
            }
            v
        }
        "sl4/cubic-mono-1" => vec![
            f(Order(864), C),
            f(Transitive(true), L),
            f(Class(ActionTag::ImprimitiveMonomial), L),
            f(MinSemiInvariantDegree { max: 3, degree: Some(3) }, L),
            f(SemiInvariant(diagonal_cubic()), L),
            f(WeaklyExceptional(false), L),
        ],
        "sl4/cubic-mono-2" => vec![
            f(Order(2592), C),
            f(Transitive(true), L),
            f(Class(ActionTag::ImprimitiveMonomial), L),
            f(MinSemiInvariantDegree { max: 3, degree: Some(3) }, L),
            f(SemiInvariant(diagonal_cubic()), L),
            f(WeaklyExceptional(false), L),
        ],
        "sl4/S5-cubic" => vec![
            f(Order(480), C),
            f(ProjectiveOrder(120), L),
            f(Transitive(true), L),
            f(Class(ActionTag::Primitive), L),
            f(HasSemiInvariant(3), L),
            f(MinSemiInvariantDegree { max: 3, degree: Some(2) }, C),
            f(WeaklyExceptional(false), L),
        ],
        "sl4/fermat" => {
            let mut v = vec![
                f(Transitive(true), L),
                f(MinSemiInvariantDegree { max: 3, degree: None }, L),
                f(MinSemiInvariantDegree { max: 4, degree: Some(4) }, L),
                f(SemiInvariant(poly(4, 4, &[(1, &[1, 1, 1, 1])])), L),
                f(A5Flag(false), L),
                f(WeaklyExceptional(true), L),
            ];
            if default_params {
                v.insert(0, f(Order(12000), C));
            }
            v
        }
        "sl4/a5sym3" => vec![
            f(Order(120), C),
            f(ProjectiveOrder(60), C),
            f(Transitive(true), L),
            f(MinSemiInvariantDegree { max: 3, degree: None }, L),
            f(A5Flag(true), L),
            f(WeaklyExceptional(false), L),
        ],
        _ => Vec::new(),
    };
    if let Some(class) = preset_class(&entry.name) {
        let transitive = class.is_transitive();
        out.push(f(Transitive(transitive), L));
        out.push(f(Class(class), L));
        out.push(f(SemiInvariant(quadric()), L));
        if transitive {
            out.push(f(MinSemiInvariantDegree { max: 3, degree: Some(2) }, L));
            out.push(f(WeaklyExceptional(false), L));
        }
    }
    out
}
