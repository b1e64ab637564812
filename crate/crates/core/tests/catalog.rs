use linarr::catalog::{catalog_get, catalog_list, catalog_selfcheck, ClassTag};
use linarr::io::parse_scalar_in;
use linarr::lattice::{compute_lattice, lattice_isomorphic};
use linarr::{Arrangement, FieldCtx, Line};

/// `x − ζᵏy`, `y − ζᵏz`, `z − ζᵏx` for the `m` powers of a root of unity `ζ`.
fn fermat(k: FieldCtx, roots: &[&str]) -> Arrangement {
    let s = |e: &str| parse_scalar_in(e, k).unwrap();
    let mut lines = Vec::new();
    for r in roots {
        let c = -s(r);
        lines.push(Line::new([s("1"), c.clone(), s("0")]).unwrap());
        lines.push(Line::new([s("0"), s("1"), c.clone()]).unwrap());
        lines.push(Line::new([c, s("0"), s("1")]).unwrap());
    }
    Arrangement::new(k, lines).unwrap()
}

#[test]
fn dual_hesse_matches_cubic_fermat_arrangement() {
    let k = FieldCtx::quadratic(-3).unwrap();
    let direct = fermat(k, &["1", "(-1+sqrt(-3))/2", "(-1-sqrt(-3))/2"]);
    let cat = catalog_get("dual_hesse", None).unwrap();
    assert_eq!(direct.len(), 9);
    assert!(lattice_isomorphic(&compute_lattice(&direct), &compute_lattice(&cat)));
}

#[test]
fn g443_matches_quartic_fermat_arrangement() {
    let k = FieldCtx::quadratic(-1).unwrap();
    let direct = fermat(k, &["1", "i", "-1", "-i"]);
    let cat = catalog_get("g443", None).unwrap();
    assert_eq!(direct.len(), 12);
    assert!(lattice_isomorphic(&compute_lattice(&direct), &compute_lattice(&cat)));
}

#[test]
fn conjugate_realizations_share_the_lattice() {
    for name in ["dual_hesse", "pentagonal", "g443"] {
        let a = catalog_get(name, None).unwrap();
        let b = a.conjugate().unwrap();
        assert!(compute_lattice(&a).same_labeled(&compute_lattice(&b)), "{name}");
    }
}

#[test]
fn every_fixed_entry_passes_selfcheck() {
    for info in catalog_list() {
        if info.parametric {
            continue;
        }
        let rep = catalog_selfcheck(info.name, None).unwrap();
        assert_eq!(rep.size, catalog_get(info.name, None).unwrap().len());
    }
}

#[test]
fn class_tags() {
    let tag = |n: &str| ClassTag::of(&catalog_get(n, None).unwrap());
    assert_eq!(tag("dual_hesse"), ClassTag::SExceptional);
    assert_eq!(tag("eleven_if"), ClassTag::InductivelyFree);
}
