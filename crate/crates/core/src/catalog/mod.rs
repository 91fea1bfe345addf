//! Built-in groups with their recorded facts, the quadric family builder
//! and the group file format.

mod facts;
mod groupfile;
pub mod matrices;
mod quadric;

use std::collections::BTreeMap;

use crate::classify::{ActionTag, DEFAULT_CLASS_CAP};
use crate::error::{Error, Result};
use crate::matgroup::{MatGroup, DEFAULT_CLOSURE_CAP};
use crate::CycMatrix;

pub use facts::{Fact, FactCheck, FactChecker, FactSource, ExpectedFact};
pub use groupfile::{parse_group_file, write_group_file, GroupFile};
pub use quadric::{build_quadric_family, preset_spec, quadric_preset, QuadricFamilySpec, QuadricPreset, QUADRIC_PRESETS};

use matrices::*;

pub type Params = BTreeMap<String, i64>;

type Builder = fn(&dyn Fn(&str) -> i64) -> Result<Vec<CycMatrix>>;

#[derive(Clone, Copy, Debug)]
enum Source {
    Fixed(Builder),
    Quadric(&'static QuadricPreset),
    /// Known to exist, but generators must be supplied by the user.
    Slot,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub dim: usize,
    pub params: &'static [(&'static str, i64)],
    pub summary: &'static str,
    class_cap: usize,
    source: Source,
}

const QUADRIC_PREFIX: &str = "sl4/quadric/";

impl CatalogEntry {
    fn fixed(name: &'static str, dim: usize, summary: &'static str, build: Builder) -> Self {
        CatalogEntry {
            name: name.to_string(),
            dim,
            params: &[],
            summary,
            class_cap: DEFAULT_CLASS_CAP,
            source: Source::Fixed(build),
        }
    }

    fn with_params(mut self, params: &'static [(&'static str, i64)]) -> Self {
        self.params = params;
        self
    }

    fn with_class_cap(mut self, cap: usize) -> Self {
        self.class_cap = cap;
        self
    }

    pub fn is_slot(&self) -> bool {
        matches!(self.source, Source::Slot)
    }

    /// Defaults merged with `params`; unknown names are rejected.
    pub fn resolve_params(&self, params: &Params) -> Result<Params> {
        for k in params.keys() {
            if !self.params.iter().any(|(n, _)| n == k) {
                return Err(Error::InvalidParameter(format!("`{}` takes no parameter `{k}`", self.name)));
            }
        }
        Ok(self
            .params
            .iter()
            .map(|(n, d)| (n.to_string(), params.get(*n).copied().unwrap_or(*d)))
            .collect())
    }

    /// Closure cap sized to the entry.
    pub fn closure_cap(&self, params: &Params) -> usize {
        match self.name.as_str() {
            "sl4/fermat" => {
                let m = params.get("m").copied().unwrap_or(5).clamp(1, 1000) as usize;
                DEFAULT_CLOSURE_CAP.max(96 * m * m * m + 1)
            }
            _ => DEFAULT_CLOSURE_CAP,
        }
    }

    /// Classification cap sized to the entry.
    pub fn class_cap(&self) -> usize {
        self.class_cap
    }

    pub fn generators(&self, params: &Params) -> Result<Vec<CycMatrix>> {
        let p = self.resolve_params(params)?;
        let get = |k: &str| p.get(k).copied().unwrap_or(0);
        match self.source {
            Source::Fixed(build) => build(&get),
            Source::Quadric(preset) => {
                let spec = preset_spec(preset.name, &get)?;
                Ok(build_quadric_family(&spec, self.closure_cap(&p))?.generators().to_vec())
            }
            Source::Slot => Err(Error::InvalidParameter(format!(
                "`{}` has no built-in generators; supply them in a group file",
                self.name
            ))),
        }
    }

    pub fn build(&self, params: &Params) -> Result<MatGroup> {
        let p = self.resolve_params(params)?;
        self.build_with_cap(&p, self.closure_cap(&p))
    }

    pub fn build_with_cap(&self, params: &Params, cap: usize) -> Result<MatGroup> {
        if let Source::Quadric(preset) = self.source {
            let p = self.resolve_params(params)?;
            let get = |k: &str| p.get(k).copied().unwrap_or(0);
            return build_quadric_family(&preset_spec(preset.name, &get)?, cap);
        }
        MatGroup::close(self.generators(params)?, cap)
    }

    pub fn expected_facts(&self, params: &Params) -> Result<Vec<ExpectedFact>> {
        let p = self.resolve_params(params)?;
        Ok(facts::expected_facts(self, &p))
    }
}

fn odd(value: i64, name: &str, min: i64) -> Result<u32> {
    if value < min || value > 999 || value % 2 == 0 {
        return Err(Error::InvalidParameter(format!("{name} = {value} must be an odd integer >= {min}")));
    }
    Ok(value as u32)
}

fn fixed_entries() -> Vec<CatalogEntry> {
    use CatalogEntry as E;
    vec![
        E::fixed("sl3/E108", 3, "<S, T, V>, order 108", |_| Ok(vec![s(), t(), v()])),
        E::fixed("sl3/F216", 3, "<S, T, V, P> with P = U V U^-1, order 216", |_| {
            Ok(vec![s(), t(), v(), p()])
        }),
        E::fixed("sl3/G648", 3, "Hessian group <S, T, V, U>, order 648", |_| {
            Ok(vec![s(), t(), v(), u()])
        }),
        E::fixed("sl3/heis27", 3, "<S, T>, order 27", |_| Ok(vec![s(), t()])),
        E::fixed("sl3/typeC", 3, "<diag(1,-1,-1), diag(-1,1,-1), T>", |_| Ok(type_c())),
        E::fixed("sl3/typeD", 3, "type C together with Q(a, b, c), abc = -1", |get| {
            let (a, b, cc) = (get("a"), get("b"), get("c"));
            if a * b * cc != -1 {
                return Err(Error::InvalidParameter(format!("abc = {} is not -1", a * b * cc)));
            }
            let mut g = type_c();
            g.push(q(c(a), c(b), c(cc)));
            Ok(g)
        })
        .with_params(&[("a", 1), ("b", 1), ("c", -1)]),
        E::fixed("sl3/A5", 3, "icosahedral group, symmetric square of the binary icosahedral lift", |_| {
            Ok(icosa_3d())
        }),
        E::fixed("sl3/K168", 3, "Klein's simple group of order 168 over Q(E(7))", |_| Ok(klein())),
        E::fixed("sl3/J180", 3, "sl3/A5 together with W", |_| {
            let mut g = icosa_3d();
            g.push(w());
            Ok(g)
        }),
        E::fixed("sl3/K504", 3, "sl3/K168 together with W", |_| {
            let mut g = klein();
            g.push(w());
            Ok(g)
        }),
        CatalogEntry {
            name: "sl3/L1080".to_string(),
            dim: 3,
            params: &[],
            summary: "order 1080 with quotient A6 by <W>; generators not built in",
            class_cap: DEFAULT_CLASS_CAP,
            source: Source::Slot,
        },
        E::fixed("sl4/eg-intrans", 4, "(Cn x Cm) : D4, preserving x=v=0 and y=u=0", |get| {
            let (n, m) = (odd(get("n"), "n", 1)?, odd(get("m"), "m", 1)?);
            let (an, am) = (dihedral_a(2 * n), dihedral_a(2 * m));
            let id = CycMatrix::identity(2);
            let b = tet_b();
            Ok(vec![
                pair(&an.pow(2)?, &id),
                pair(&id, &am.pow(2)?),
                pair(&an.pow(n as u64)?, &am.pow(m as u64)?),
                pair(&b, &b),
            ])
        })
        .with_params(&[("n", 3), ("m", 3)]),
        E::fixed("sl4/eg-trans", 4, "(Cn x Cm) : D4, transitive", |get| {
            let (n, m) = (odd(get("n"), "n", 3)?, odd(get("m"), "m", 3)?);
            let (an, am) = (dihedral_a(2 * n), dihedral_a(2 * m));
            let id = CycMatrix::identity(2);
            let b = tet_b();
            Ok(vec![
                pair(&an.pow(2)?, &id),
                pair(&id, &am.pow(2)?),
                pair(&an.pow(n as u64)?, &b),
                pair(&b, &am.pow(m as u64)?),
            ])
        })
        .with_params(&[("n", 3), ("m", 3)]),
        E::fixed("sl4/eg-imprim", 4, "(V4 x V4) : S3, permuting four lines", |_| Ok(eg_imprim())),
        E::fixed("sl4/eg-prim", 4, "(A4 x A4) : C2, primitive", |_| {
            let mut g = eg_imprim();
            g.push(pair(&tet_c(), &CycMatrix::identity(2)));
            Ok(g)
        }),
        E::fixed("sl4/eg-imprim-mono", 4, "((V4 x V4) : C3) : C2 with the ruling swap", |_| {
            let (a, b, cc) = (tet_a(), tet_b(), tet_c());
            let id = CycMatrix::identity(2);
            Ok(vec![
                ruling_swap(),
                pair(&a, &id),
                pair(&b, &id),
                pair(&id, &a),
                pair(&id, &b),
                pair(&cc, &cc),
            ])
        }),
        E::fixed("sl4/eg-imprim-nonmono", 4, "(Cn x A4) : C2, permuting x=y=0 and u=v=0", |get| {
            let n = get("n");
            if !(2..=1000).contains(&n) {
                return Err(Error::InvalidParameter(format!("n = {n} must lie in 2..=1000")));
            }
            let id = CycMatrix::identity(2);
            Ok(vec![
                pair(&id, &tet_a()),
                pair(&id, &tet_b()),
                pair(&id, &tet_c()),
                pair(&dihedral_a(n as u32), &id),
                pair(&tet_b(), &oct_o()),
            ])
        })
        .with_params(&[("n", 3)]),
        E::fixed("sl4/cubic-mono-1", 4, "((C3)^3 : C2) : C2, semi-invariant x^3+y^3+u^3+v^3", |_| {
            let z = |k| e(3, k);
            Ok(vec![
                diag(vec![z(1), c(1), c(1), z(-1)]),
                diag(vec![c(1), z(1), c(1), z(-1)]),
                diag(vec![c(1), c(1), z(1), z(-1)]),
                scaled_transposition(0),
                perm_matrix(&[2, 3, 0, 1]),
            ])
        }),
        E::fixed("sl4/cubic-mono-2", 4, "(C3)^3 : S4, semi-invariant x^3+y^3+u^3+v^3", |_| {
            let z = |k| e(3, k);
            Ok(vec![
                diag(vec![z(1), c(1), c(1), z(-1)]),
                diag(vec![c(1), z(1), c(1), z(-1)]),
                diag(vec![c(1), c(1), z(1), z(-1)]),
                scaled_transposition(0),
                scaled_transposition(1),
                scaled_transposition(2),
            ])
        })
        .with_class_cap(3000),
        E::fixed("sl4/S5-cubic", 4, "S5 on the diagonal cubic surface", |_| {
            let z = e(8, 1);
            let a = rows(vec![
                vec![c(-1), c(1), c(0), c(0)],
                vec![c(0), c(1), c(0), c(0)],
                vec![c(0), c(0), c(1), c(0)],
                vec![c(0), c(0), c(0), c(1)],
            ])
            .scale(&z);
            let b = rows(vec![
                vec![c(1), c(0), c(0), c(0)],
                vec![c(1), c(0), c(0), c(-1)],
                vec![c(0), c(1), c(0), c(-1)],
                vec![c(0), c(0), c(1), c(-1)],
            ])
            .scale(&z.pow(7)?);
            Ok(vec![a, b])
        }),
        E::fixed("sl4/fermat", 4, "lift of the automorphism group of x^m+y^m+u^m+v^m", |get| {
            let m = get("m");
            if !(5..=1000).contains(&m) {
                return Err(Error::InvalidParameter(format!("m = {m} must be at least 5")));
            }
            Ok(fermat(m as u32))
        })
        .with_params(&[("m", 5)]),
        E::fixed("sl4/a5sym3", 4, "twisted cubic lift of the binary icosahedral group", |_| Ok(icosa_sym3())),
    ]
}

fn type_c() -> Vec<CycMatrix> {
    vec![diag(vec![c(1), c(-1), c(-1)]), diag(vec![c(-1), c(1), c(-1)]), t()]
}

fn eg_imprim() -> Vec<CycMatrix> {
    let (a, b, cc, o) = (tet_a(), tet_b(), tet_c(), oct_o());
    let id = CycMatrix::identity(2);
    vec![
        pair(&a, &id),
        pair(&b, &id),
        pair(&id, &a),
        pair(&id, &b),
        pair(&cc, &cc),
        pair(&o, &o),
    ]
}

/// Diagonal scalings with product 1 (lifted through `E(4m)` for even `m`)
/// and the scaled adjacent transpositions.
fn fermat(m: u32) -> Vec<CycMatrix> {
    let mut g = Vec::new();
    if m % 2 == 1 {
        let z = |k| e(m, k);
        g.push(diag(vec![z(1), z(-1), c(1), c(1)]));
        g.push(diag(vec![c(1), z(1), z(-1), c(1)]));
        g.push(diag(vec![c(1), c(1), z(1), z(-1)]));
    } else {
        let z = |k| e(4 * m, k);
        for i in 0..3 {
            let mut d = vec![z(-1); 4];
            d[i] = z(3);
            g.push(diag(d));
        }
    }
    g.extend((0..3).map(scaled_transposition));
    g
}

/// Every entry in listing order, quadric presets last.
pub fn list() -> Vec<CatalogEntry> {
    let mut out = fixed_entries();
    for preset in QUADRIC_PRESETS {
        out.push(CatalogEntry {
            name: format!("{QUADRIC_PREFIX}{}", preset.name),
            dim: 4,
            params: preset.params,
            summary: preset.summary,
            class_cap: DEFAULT_CLASS_CAP,
            source: Source::Quadric(preset),
        });
    }
    out
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    list()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// The closed group of a catalog entry.
pub fn catalog_get(name: &str, params: &Params) -> Result<MatGroup> {
    entry(name)?.build(params)
}

/// Action class recorded for a preset.
pub fn preset_class(name: &str) -> Option<ActionTag> {
    quadric_preset(name.strip_prefix(QUADRIC_PREFIX)?).map(|p| p.class)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn get(name: &str) -> MatGroup {
        catalog_get(name, &Params::new()).unwrap()
    }

    #[test]
    fn names_are_unique() {
        let names: std::collections::HashSet<_> = list().into_iter().map(|e| e.name).collect();
        assert_eq!(names.len(), list().len());
        assert!(entry("sl4/quadric/mono-s4v4").is_ok());
        assert_eq!(entry("nope").err(), Some(Error::UnknownEntry("nope".into())));
    }

    #[test]
    fn small_orders() {
        assert_eq!(get("sl3/heis27").order(), 27);
        assert_eq!(get("sl3/typeC").order(), 12);
        assert_eq!(get("sl3/A5").order(), 60);
        assert_eq!(get("sl3/K168").order(), 168);
    }

    #[test]
    fn parameters_are_validated() {
        let mut p = Params::new();
        p.insert("n".into(), 4);
        assert!(matches!(catalog_get("sl4/eg-intrans", &p), Err(Error::InvalidParameter(_))));
        p.clear();
        p.insert("q".into(), 1);
        assert!(matches!(catalog_get("sl3/E108", &p), Err(Error::InvalidParameter(_))));
        p.clear();
        p.insert("m".into(), 4);
        assert!(catalog_get("sl4/fermat", &p).is_err());
        p.clear();
        p.insert("c".into(), 1);
        assert!(catalog_get("sl3/typeD", &p).is_err());
        assert!(catalog_get("sl3/L1080", &Params::new()).is_err());
    }

    #[test]
    fn example_groups_agree_with_presets() {
        let same = |a: &MatGroup, b: &MatGroup| a.order() == b.order() && a.elements().iter().all(|m| b.contains(m));
        assert!(same(&get("sl4/eg-trans"), &get("sl4/quadric/trans-d4m-d4n")));
        assert!(same(&get("sl4/eg-imprim"), &get("sl4/quadric/mono-s4v4")));
        assert!(same(&get("sl4/eg-imprim-mono"), &get("sl4/quadric/mono-a4v4-tau")));
        assert!(same(&get("sl4/eg-imprim-nonmono"), &get("sl4/quadric/nonmono-d2m-s4")));
        assert!(same(&get("sl4/eg-intrans"), &get("sl4/quadric/intrans-d4m-d4n")));
    }
}
