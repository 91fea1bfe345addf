//! Groups preserving the quadric `xv - yu = 0`, acting on `2 x 2` matrices
//! `X` by `X -> A X B^T` and optionally by transposition.

use crate::catalog::matrices::{dihedral_a, oct_o, pair, ruling_swap, tet_a, tet_b, tet_c};
use crate::classify::ActionTag;
use crate::error::{Error, Result};
use crate::matgroup::MatGroup;
use crate::CycMatrix;

/// `(H1, K1, H2, K2)_alpha`, optionally extended by the ruling swap.
///
/// `K1` acts as `[k, 1]`, `K2` as `[1, k]`, and each gluing pair `(a, b)`
/// as `[a, b]`; `H1` is generated by `K1` and the first components of the
/// pairs, `H2` likewise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricFamilySpec {
    pub k1: Vec<CycMatrix>,
    pub k2: Vec<CycMatrix>,
    pub alpha: Vec<(CycMatrix, CycMatrix)>,
    pub tau: bool,
}

fn projective_order(gens: &[CycMatrix], cap: usize) -> Result<usize> {
    if gens.is_empty() {
        return Ok(1);
    }
    Ok(MatGroup::close(gens.to_vec(), cap)?.projective().order())
}

fn is_normal_in(k: &[CycMatrix], h: &[CycMatrix], cap: usize) -> Result<bool> {
    if k.is_empty() {
        return Ok(true);
    }
    let kg = MatGroup::close(k.to_vec(), cap)?;
    let kp = kg.projective();
    for x in h {
        let xi = x.inverse()?;
        for y in k {
            let conj = &(x * y) * &xi;
            if kp.index_of(&conj.projective_normal_form()).is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The group of the family, after checking `K_i` normal in `H_i` and that
/// the gluing is a well-defined isomorphism `H1/K1 -> H2/K2`: the
/// ruling-preserving part must have projective order `|H1| |K2| = |K1| |H2|`.
pub fn build_quadric_family(spec: &QuadricFamilySpec, cap: usize) -> Result<MatGroup> {
    for m in spec.k1.iter().chain(&spec.k2).chain(spec.alpha.iter().flat_map(|(a, b)| [a, b])) {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::Shape("quadric building blocks are 2x2".into()));
        }
    }
    let id = CycMatrix::identity(2);
    let mut h1 = spec.k1.clone();
    h1.extend(spec.alpha.iter().map(|(a, _)| a.clone()));
    let mut h2 = spec.k2.clone();
    h2.extend(spec.alpha.iter().map(|(_, b)| b.clone()));
    if !is_normal_in(&spec.k1, &h1, cap)? || !is_normal_in(&spec.k2, &h2, cap)? {
        return Err(Error::InvalidParameter("K_i is not normal in H_i".into()));
    }

    let mut gens: Vec<CycMatrix> = Vec::new();
    gens.extend(spec.k1.iter().map(|k| pair(k, &id)));
    gens.extend(spec.k2.iter().map(|k| pair(&id, k)));
    gens.extend(spec.alpha.iter().map(|(a, b)| pair(a, b)));
    if gens.is_empty() {
        gens.push(CycMatrix::identity(4));
    }
    let ruling = MatGroup::close(gens.clone(), cap)?;
    let order = ruling.projective().order();
    let (oh1, ok1) = (projective_order(&h1, cap)?, projective_order(&spec.k1, cap)?);
    let (oh2, ok2) = (projective_order(&h2, cap)?, projective_order(&spec.k2, cap)?);
    if order != oh1 * ok2 || order != ok1 * oh2 {
        return Err(Error::InvalidParameter(format!(
            "gluing is not an isomorphism: projective order {order}, |H1||K2| = {}, |K1||H2| = {}",
            oh1 * ok2,
            ok1 * oh2
        )));
    }
    if !spec.tau {
        return Ok(ruling);
    }
    gens.push(ruling_swap());
    MatGroup::close(gens, cap)
}

/// A named family of quadric-preserving groups with its action class.
#[derive(Clone, Copy, Debug)]
pub struct QuadricPreset {
    pub name: &'static str,
    pub params: &'static [(&'static str, i64)],
    pub class: ActionTag,
    /// Intransitive presets exist for testing only.
    pub transitive: bool,
    pub summary: &'static str,
}

pub const QUADRIC_PRESETS: &[QuadricPreset] = &[
    QuadricPreset {
        name: "prim-s4a4",
        params: &[],
        class: ActionTag::Primitive,
        transitive: true,
        summary: "1/2[S4 x S4] = (A4 x A4) : 2",
    },
    QuadricPreset {
        name: "nonmono-d2m-s4",
        params: &[("m", 3)],
        class: ActionTag::ImprimitiveNonMonomial,
        transitive: true,
        summary: "1/2[D2m x S4] = (Cm x A4) : 2",
    },
    QuadricPreset {
        name: "nonmono-d4m-s4",
        params: &[("m", 2)],
        class: ActionTag::ImprimitiveNonMonomial,
        transitive: true,
        summary: "1/2[D4m x S4] = (D2m x A4) : 2",
    },
    QuadricPreset {
        name: "nonmono-d6m-s4",
        params: &[("m", 2)],
        class: ActionTag::ImprimitiveNonMonomial,
        transitive: true,
        summary: "1/6[D6m x S4] = (Cm x V4) : S3",
    },
    QuadricPreset {
        name: "mono-s4v4",
        params: &[],
        class: ActionTag::ImprimitiveMonomial,
        transitive: true,
        summary: "1/6[S4 x S4] = (V4 x V4) : S3",
    },
    QuadricPreset {
        name: "mono-a4v4",
        params: &[],
        class: ActionTag::ImprimitiveMonomial,
        transitive: true,
        summary: "1/3[A4 x A4] = (V4 x V4) : C3",
    },
    QuadricPreset {
        name: "mono-d2m-d4n",
        params: &[("m", 3), ("n", 2)],
        class: ActionTag::ImprimitiveMonomial,
        transitive: true,
        summary: "1/2[D2m x D4n] = (Cm x D2n) : 2",
    },
    QuadricPreset {
        name: "trans-d4m-d4n",
        params: &[("m", 3), ("n", 3)],
        class: ActionTag::ImprimitiveMonomial,
        transitive: true,
        summary: "1/4[D4m x D4n]_alpha = (Cm x Cn) : D4",
    },
    QuadricPreset {
        name: "mono-d4m-d4n-half",
        params: &[("m", 2), ("n", 2)],
        class: ActionTag::ImprimitiveMonomial,
        transitive: true,
        summary: "1/2[D4m x D4n] = (D2m x D2n) : 2",
    },
    QuadricPreset {
        name: "mono-a4v4-tau",
        params: &[],
        class: ActionTag::ImprimitiveMonomial,
        transitive: true,
        summary: "((V4 x V4) : C3) : 2 with the ruling swap",
    },
    QuadricPreset {
        name: "intrans-d4m-d4n",
        params: &[("m", 3), ("n", 3)],
        class: ActionTag::Intransitive,
        transitive: false,
        summary: "(Cn x Cm) : D4 glued diagonally; preserves x=v=0 and y=u=0",
    },
];

pub fn quadric_preset(name: &str) -> Option<&'static QuadricPreset> {
    QUADRIC_PRESETS.iter().find(|p| p.name == name)
}

fn positive(value: i64, name: &str, min: i64) -> Result<u32> {
    if value < min || value > 1000 {
        return Err(Error::InvalidParameter(format!("{name} = {value} must lie in {min}..=1000")));
    }
    Ok(value as u32)
}

// `x^m` and `x^2` generate `<x>` only for odd `m`.
fn odd(value: i64, name: &str, min: i64) -> Result<u32> {
    let v = positive(value, name, min)?;
    if v % 2 == 0 {
        return Err(Error::InvalidParameter(format!("{name} = {value} must be odd")));
    }
    Ok(v)
}

/// The family data of a preset for the given parameter values.
pub fn preset_spec(name: &str, get: &dyn Fn(&str) -> i64) -> Result<QuadricFamilySpec> {
    let (a, b, c, o) = (tet_a(), tet_b(), tet_c(), oct_o());
    let v = |k1: Vec<CycMatrix>, k2: Vec<CycMatrix>, alpha: Vec<(CycMatrix, CycMatrix)>, tau: bool| {
        QuadricFamilySpec { k1, k2, alpha, tau }
    };
    let pw = |m: &CycMatrix, k: u32| m.pow(k as u64).expect("square");
    Ok(match name {
        "prim-s4a4" => v(vec![a.clone(), c.clone()], vec![a, c], vec![(o.clone(), o)], false),
        "nonmono-d2m-s4" => {
            let m = positive(get("m"), "m", 2)?;
            v(vec![dihedral_a(m)], vec![a, c], vec![(b, o)], false)
        }
        "nonmono-d4m-s4" => {
            let m = positive(get("m"), "m", 2)?;
            let am = dihedral_a(2 * m);
            v(vec![pw(&am, 2), b], vec![a, c], vec![(am, o)], false)
        }
        "nonmono-d6m-s4" => {
            let m = positive(get("m"), "m", 2)?;
            let am = dihedral_a(3 * m);
            v(vec![pw(&am, 3)], vec![a, b.clone()], vec![(am, c), (b, o)], false)
        }
        "mono-s4v4" => v(
            vec![a.clone(), b.clone()],
            vec![a, b],
            vec![(c.clone(), c), (o.clone(), o)],
            false,
        ),
        "mono-a4v4" | "mono-a4v4-tau" => v(
            vec![a.clone(), b.clone()],
            vec![a, b],
            vec![(c.clone(), c)],
            name.ends_with("tau"),
        ),
        "mono-d2m-d4n" => {
            let m = positive(get("m"), "m", 2)?;
            let n = positive(get("n"), "n", 2)?;
            let an = dihedral_a(2 * n);
            v(vec![dihedral_a(m)], vec![pw(&an, 2), b.clone()], vec![(b, an)], false)
        }
        "trans-d4m-d4n" => {
            let m = odd(get("m"), "m", 3)?;
            let n = odd(get("n"), "n", 3)?;
            let (am, an) = (dihedral_a(2 * m), dihedral_a(2 * n));
            v(
                vec![pw(&am, 2)],
                vec![pw(&an, 2)],
                vec![(pw(&am, m), b.clone()), (b, pw(&an, n))],
                false,
            )
        }
        "mono-d4m-d4n-half" => {
            let m = positive(get("m"), "m", 2)?;
            let n = positive(get("n"), "n", 2)?;
            let (am, an) = (dihedral_a(2 * m), dihedral_a(2 * n));
            v(
                vec![pw(&am, 2), b.clone()],
                vec![pw(&an, 2), b],
                vec![(am, an)],
                false,
            )
        }
        "intrans-d4m-d4n" => {
            let m = odd(get("m"), "m", 1)?;
            let n = odd(get("n"), "n", 1)?;
            let (am, an) = (dihedral_a(2 * m), dihedral_a(2 * n));
            v(
                vec![pw(&am, 2)],
                vec![pw(&an, 2)],
                vec![(pw(&am, m), pw(&an, n)), (b.clone(), b)],
                false,
            )
        }
        _ => return Err(Error::UnknownEntry(format!("quadric preset {name}"))),
    })
}
