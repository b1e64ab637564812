//! Named arrangements and one-parameter families with their known invariants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::freeness::{is_free_with, s_membership};
use crate::geometry::{Arrangement, Line};
use crate::io::parse_scalar_in;
use crate::lattice::{compute_lattice, Exponents};
use crate::moduli::Family;
use crate::scalar::{rat_int, FieldCtx, Poly, Quad, Scalar};
use crate::search::is_inductively_free;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassTag {
    #[serde(rename = "IF")]
    InductivelyFree,
    /// Free, not inductively free, and without any free deletion.
    #[serde(rename = "S-exceptional")]
    SExceptional,
    /// Free, not inductively free, with some free deletion.
    #[serde(rename = "free")]
    Free,
    #[serde(rename = "not-free")]
    NotFree,
    /// A family member with the parameter left symbolic.
    #[serde(rename = "family")]
    Family,
}

impl ClassTag {
    pub fn of(a: &Arrangement) -> ClassTag {
        if a.ctx().is_parametric() {
            return ClassTag::Family;
        }
        let lat = compute_lattice(a);
        let r = is_free_with(a, &lat);
        if !r.is_free() {
            ClassTag::NotFree
        } else if is_inductively_free(a).is_some() {
            ClassTag::InductivelyFree
        } else if s_membership(&lat, &r) == Ok(true) {
            ClassTag::SExceptional
        } else {
            ClassTag::Free
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogInfo {
    pub name: &'static str,
    pub field: &'static str,
    pub parametric: bool,
    pub description: &'static str,
}

const ENTRIES: [CatalogInfo; 7] = [
    CatalogInfo {
        name: "dual_hesse",
        field: "Q(√-3)",
        parametric: false,
        description: "9 lines of (x³−y³)(y³−z³)(z³−x³)",
    },
    CatalogInfo {
        name: "pentagonal",
        field: "Q(√5)",
        parametric: false,
        description: "sides and diagonals of a regular pentagon plus the line at infinity",
    },
    CatalogInfo {
        name: "g443",
        field: "Q(√-1)",
        parametric: false,
        description: "12 lines of (x⁴−y⁴)(y⁴−z⁴)(z⁴−x⁴)",
    },
    CatalogInfo {
        name: "eleven_if",
        field: "Q",
        parametric: false,
        description: "inductively free 11 lines sharing the pentagonal profile",
    },
    CatalogInfo {
        name: "family13",
        field: "Q",
        parametric: true,
        description: "13 lines depending on λ, rational form",
    },
    CatalogInfo {
        name: "family13_sqrt3",
        field: "Q(√3)",
        parametric: true,
        description: "13 lines depending on λ, with the rotational symmetry visible",
    },
    CatalogInfo {
        name: "family15",
        field: "Q",
        parametric: true,
        description: "15 lines depending on t, free with exponents (1,7,7) generically",
    },
];

pub fn catalog_list() -> &'static [CatalogInfo] {
    &ENTRIES
}

fn info(name: &str) -> Result<&'static CatalogInfo> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCatalog(name.to_string()))
}

fn cone_from(ctx: FieldCtx, rows: &[[&str; 3]]) -> Arrangement {
    let s = |e: &str| parse_scalar_in(e, ctx).expect("catalog literal");
    let affine: Vec<[Scalar; 3]> = rows.iter().map(|r| r.map(s)).collect();
    Arrangement::cone(ctx, &affine).expect("catalog arrangement")
}

fn dual_hesse() -> Arrangement {
    let k = FieldCtx::quadratic(-3).unwrap();
    let w = "(-1+sqrt(-3))/2";
    let w2 = "(-1-sqrt(-3))/2";
    let nw2 = "(1+sqrt(-3))/2";
    cone_from(
        k,
        &[
            ["1", "0", "0"],
            ["1", "0", "-1"],
            ["0", "1", "0"],
            ["0", "1", "-1"],
            [w, "1", "0"],
            [w, "1", w2],
            [nw2, "1", "-1"],
            [nw2, "1", w2],
        ],
    )
}

fn pentagonal() -> Arrangement {
    let k = FieldCtx::quadratic(5).unwrap();
    let z = "(1+sqrt(5))/2";
    let nz = "-(1+sqrt(5))/2";
    cone_from(
        k,
        &[
            ["1", "0", "0"],
            ["1", "1", "-1"],
            ["0", "1", "-1"],
            ["1", nz, z],
            ["0", "1", "0"],
            ["1", nz, "0"],
            [z, "-1", "0"],
            [z, "-1", nz],
            ["1", "0", "-1"],
            ["1", "1", "-(3+sqrt(5))/2"],
        ],
    )
}

fn g443() -> Arrangement {
    let k = FieldCtx::quadratic(-1).unwrap();
    let s = |e: &str| parse_scalar_in(e, k).expect("catalog literal");
    let rows = [
        ["1", "0", "0"],
        ["1", "0", "-1"],
        ["1", "0", "-i"],
        ["1", "0", "-1-i"],
        ["0", "1", "0"],
        ["0", "1", "-1"],
        ["0", "1", "-i"],
        ["0", "1", "-1-i"],
        ["1", "-1", "0"],
        ["1", "-i", "-1"],
        ["1", "1", "-1-i"],
        ["1", "i", "-i"],
    ];
    let lines = rows.iter().map(|r| Line::new(r.map(s)).unwrap()).collect();
    Arrangement::new(k, lines).unwrap()
}

fn eleven_if() -> Arrangement {
    Arrangement::from_ints(
        FieldCtx::RATIONAL,
        &[
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 0, -1],
            [1, 0, 1],
            [0, 1, -1],
            [0, 1, 1],
            [1, -1, 0],
            [1, 1, 0],
            [1, -1, 1],
            [1, -1, 2],
        ],
    )
    .unwrap()
}

fn ip(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

/// The 13-line family; with `sqrt3` the `x` coefficients carry a factor
/// `√3`, otherwise `x` is rescaled so that everything is rational.
fn family13(sqrt3: bool) -> Family {
    let x = |c: &[i64]| {
        let p = ip(c);
        if sqrt3 {
            p.mul(&Poly::constant(Quad::new(rat_int(0), rat_int(1))), 3)
        } else {
            p
        }
    };
    let quad_const = [-1, 1, -1];
    let lines = vec![
        [x(&[-1]), ip(&[-1]), ip(&[1, 1])],
        [x(&[]), ip(&[2]), ip(&[1, 1])],
        [x(&[1]), ip(&[-1]), ip(&[1, 1])],
        [x(&[1]), ip(&[-1]), ip(&[-2, 1])],
        [x(&[-1]), ip(&[-1]), ip(&[-2, 1])],
        [x(&[]), ip(&[2]), ip(&[-2, 1])],
        [x(&[]), ip(&[2]), ip(&[1, -2])],
        [x(&[1]), ip(&[-1]), ip(&[1, -2])],
        [x(&[-1]), ip(&[-1]), ip(&[1, -2])],
        [x(&[1, -1]), ip(&[1, 1]), ip(&quad_const)],
        [x(&[0, 1]), ip(&[-2, 1]), ip(&quad_const)],
        [x(&[-1]), ip(&[1, -2]), ip(&quad_const)],
        [ip(&[]), ip(&[]), ip(&[1])],
    ];
    let (name, base) = if sqrt3 {
        ("family13_sqrt3", FieldCtx::quadratic(3).unwrap())
    } else {
        ("family13", FieldCtx::RATIONAL)
    };
    Family::new(name, base, lines).expect("family13")
}

fn family15() -> Family {
    Family::from_int_polys(
        "family15",
        &[
            [&[1], &[], &[]],
            [&[1], &[1], &[]],
            [&[1], &[], &[1]],
            [&[1], &[1], &[1]],
            [&[1], &[0, 1], &[1]],
            [&[], &[1], &[]],
            [&[2], &[1], &[1]],
            [&[1, 1], &[0, 1], &[1]],
            [&[1, 1], &[1], &[1]],
            [&[0, 2], &[0, 1], &[1]],
            [&[1], &[1, -1], &[1]],
            [&[1, -3], &[1, -3, 1], &[0, -1]],
            [&[-1, 3], &[0, 1], &[0, 1]],
            [&[1, -3], &[0, 0, -1], &[0, -1]],
            [&[-1, 3], &[-1, 2], &[0, 1]],
        ],
    )
}

/// The family behind a parametric entry.
pub fn catalog_family(name: &str) -> Result<Family> {
    match info(name)?.name {
        "family13" => Ok(family13(false)),
        "family13_sqrt3" => Ok(family13(true)),
        "family15" => Ok(family15()),
        other => Err(Error::BadParameter(format!("`{other}` takes no parameter"))),
    }
}

/// Builds a catalog entry. Families take an optional parameter; without one
/// the parameter stays symbolic. Coinciding lines at a special parameter are
/// kept once.
pub fn catalog_get(name: &str, param: Option<&Scalar>) -> Result<Arrangement> {
    let e = info(name)?;
    if !e.parametric {
        if param.is_some() {
            return Err(Error::BadParameter(format!("`{name}` takes no parameter")));
        }
        return Ok(match name {
            "dual_hesse" => dual_hesse(),
            "pentagonal" => pentagonal(),
            "g443" => g443(),
            _ => eleven_if(),
        });
    }
    let f = catalog_family(name)?;
    match param {
        None => f.symbolic(),
        Some(x) => Ok(f.specialize(x)?.arrangement),
    }
}

/// What an entry is known to look like. `None` fields are not checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub size: Option<usize>,
    pub profile: Option<Vec<usize>>,
    pub exponents: Option<Exponents>,
    pub class: Option<ClassTag>,
    pub degenerate: Option<bool>,
    /// Whether the labeled lattice equals the family's generic one.
    pub generic_lattice: Option<bool>,
}

fn exp(size: usize, profile: &[usize], exponents: Exponents, class: ClassTag) -> Expected {
    Expected {
        size: Some(size),
        profile: Some(profile.to_vec()),
        exponents: Some(exponents),
        class: Some(class),
        degenerate: Some(false),
        generic_lattice: None,
    }
}

/// Whether `x` is a root of the integer polynomial with ascending
/// coefficients `c`.
fn is_root(x: &Scalar, c: &[i64]) -> bool {
    let ctx = x.ctx();
    c.iter()
        .rev()
        .fold(ctx.zero(), |acc, &k| &(&acc * x) + &ctx.int(k))
        .is_zero()
}

fn expected(name: &str, param: Option<&Scalar>) -> Expected {
    use ClassTag::*;
    match (name, param) {
        ("dual_hesse", _) => exp(9, &[0, 12], [1, 4, 4], SExceptional),
        ("pentagonal", _) => exp(11, &[10, 5, 5], [1, 5, 5], SExceptional),
        ("g443", _) => exp(12, &[0, 16, 3], [1, 5, 6], SExceptional),
        ("eleven_if", _) => exp(11, &[10, 5, 5], [1, 5, 5], InductivelyFree),
        ("family13" | "family13_sqrt3", None) => Expected {
            generic_lattice: Some(true),
            ..exp(13, &[21, 3, 3, 3], [1, 6, 6], Family)
        },
        ("family13" | "family13_sqrt3", Some(x)) => {
            if [&[0, 1][..], &[-1, 1], &[1, -1, 1]].iter().any(|c| is_root(x, c)) {
                Expected {
                    degenerate: Some(true),
                    ..Expected::default()
                }
            } else if [&[1, 1][..], &[-2, 1], &[-1, 2]].iter().any(|c| is_root(x, c)) {
                Expected {
                    generic_lattice: Some(false),
                    ..exp(13, &[18, 4, 3, 3], [1, 5, 7], InductivelyFree)
                }
            } else {
                Expected {
                    generic_lattice: Some(true),
                    ..exp(13, &[21, 3, 3, 3], [1, 6, 6], SExceptional)
                }
            }
        }
        ("family15", None) => Expected {
            size: Some(15),
            exponents: Some([1, 7, 7]),
            class: Some(Family),
            degenerate: Some(false),
            generic_lattice: Some(true),
            profile: None,
        },
        ("family15", Some(x)) => {
            if [&[0, 1][..], &[-1, 1], &[-1, 2]].iter().any(|c| is_root(x, c)) {
                Expected {
                    degenerate: Some(true),
                    ..Expected::default()
                }
            } else if [&[1, -3, 1][..], &[-1, 1, 1]].iter().any(|c| is_root(x, c)) {
                Expected {
                    size: Some(15),
                    exponents: Some([1, 5, 9]),
                    degenerate: Some(false),
                    generic_lattice: Some(false),
                    ..Expected::default()
                }
            } else {
                Expected {
                    size: Some(15),
                    exponents: Some([1, 7, 7]),
                    degenerate: Some(false),
                    generic_lattice: Some(true),
                    ..Expected::default()
                }
            }
        }
        _ => Expected::default(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfCheckReport {
    pub name: String,
    pub param: Option<String>,
    pub size: usize,
    pub profile: Vec<usize>,
    pub exponents: Option<Exponents>,
    pub class: ClassTag,
    pub degenerate: bool,
    pub generic_lattice: Option<bool>,
    pub expected: Expected,
}

/// Rebuilds an entry, recomputes its invariants and compares them with the
/// known values; the first mismatch is returned as [`Error::SelfCheck`].
pub fn catalog_selfcheck(name: &str, param: Option<&Scalar>) -> Result<SelfCheckReport> {
    let e = info(name)?;
    let (a, degenerate, generic_lattice) = if e.parametric {
        let f = catalog_family(name)?;
        let generic = compute_lattice(&f.symbolic()?);
        match param {
            None => (f.symbolic()?, false, Some(true)),
            Some(x) => {
                let s = f.specialize(x)?;
                let same = !s.is_degenerate() && compute_lattice(&s.arrangement).same_labeled(&generic);
                let degenerate = s.is_degenerate();
                (s.arrangement, degenerate, Some(same))
            }
        }
    } else {
        (catalog_get(name, param)?, false, None)
    };
    let lat = compute_lattice(&a);
    let r = is_free_with(&a, &lat);
    let report = SelfCheckReport {
        name: name.to_string(),
        param: param.map(|x| x.to_string()),
        size: a.len(),
        profile: lat.profile.clone(),
        exponents: r.exponents,
        class: ClassTag::of(&a),
        degenerate,
        generic_lattice,
        expected: expected(name, param),
    };
    let x = &report.expected;
    let fail = |what: &str, want: String, got: String| {
        Err(Error::SelfCheck(format!("{name}: {what} expected {want}, found {got}")))
    };
    if let Some(d) = x.degenerate {
        if d != report.degenerate {
            return fail("degeneration", d.to_string(), report.degenerate.to_string());
        }
    }
    if let Some(s) = x.size {
        if s != report.size {
            return fail("size", s.to_string(), report.size.to_string());
        }
    }
    if let Some(p) = &x.profile {
        if *p != report.profile {
            return fail("profile", format!("{p:?}"), format!("{:?}", report.profile));
        }
    }
    if x.exponents.is_some() && x.exponents != report.exponents {
        return fail(
            "exponents",
            format!("{:?}", x.exponents),
            format!("{:?}", report.exponents),
        );
    }
    if let Some(c) = x.class {
        if c != report.class {
            return fail("class", format!("{c:?}"), format!("{:?}", report.class));
        }
    }
    if x.generic_lattice.is_some() && x.generic_lattice != report.generic_lattice {
        return fail(
            "generic lattice",
            format!("{:?}", x.generic_lattice),
            format!("{:?}", report.generic_lattice),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_names() {
        assert_eq!(catalog_get("nope", None), Err(Error::UnknownCatalog("nope".into())));
        assert!(catalog_get("dual_hesse", Some(&FieldCtx::RATIONAL.one())).is_err());
    }

    #[test]
    fn fixed_entries_pass() {
        for name in ["dual_hesse", "pentagonal", "g443", "eleven_if"] {
            let r = catalog_selfcheck(name, None).unwrap();
            assert!(!r.degenerate, "{name}");
        }
    }

    #[test]
    fn family13_regimes() {
        let q = FieldCtx::RATIONAL;
        assert_eq!(
            catalog_selfcheck("family13", Some(&q.int(3))).unwrap().class,
            ClassTag::SExceptional
        );
        let r = catalog_selfcheck("family13", Some(&q.int(1))).unwrap();
        assert!(r.degenerate && r.size < 13);
        let r = catalog_selfcheck("family13", Some(&q.rat(1, 2))).unwrap();
        assert_eq!(r.exponents, Some([1, 5, 7]));
    }

    #[test]
    fn sqrt3_form_has_same_lattice() {
        let q = FieldCtx::RATIONAL;
        let a = compute_lattice(&catalog_get("family13", Some(&q.int(3))).unwrap());
        let b = compute_lattice(&catalog_get("family13_sqrt3", Some(&q.int(3))).unwrap());
        assert!(a.same_labeled(&b));
        assert!(catalog_selfcheck("family13_sqrt3", Some(&q.int(5))).is_ok());
    }
}
