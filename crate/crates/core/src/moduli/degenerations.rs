use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::Family;
use crate::error::{Error, Result};
use crate::geometry::Arrangement;
use crate::lattice::{compute_lattice, LatticeData};
use crate::scalar::roots::roots_low_degree;
use crate::scalar::{FieldCtx, Poly, Quad, Rat, Scalar};

/// The incidence whose failure a condition polynomial detects.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConditionKind {
    /// All three coefficients of a line vanish.
    Vanishing { line: usize },
    /// Two lines become proportional.
    Coincidence { lines: [usize; 2] },
    /// Three generically non-concurrent lines meet in a point.
    Concurrency { lines: [usize; 3] },
}

impl ConditionKind {
    pub fn drops_size(&self) -> bool {
        !matches!(self, ConditionKind::Concurrency { .. })
    }

    fn to_json(&self) -> Value {
        match self {
            ConditionKind::Vanishing { line } => json!({"kind": "vanishing", "lines": [line + 1]}),
            ConditionKind::Coincidence { lines } => {
                json!({"kind": "coincidence", "lines": lines.map(|i| i + 1)})
            }
            ConditionKind::Concurrency { lines } => {
                json!({"kind": "concurrency", "lines": lines.map(|i| i + 1)})
            }
        }
    }
}

/// A monic polynomial in `t` together with every incidence it governs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub poly: Poly,
    pub sources: Vec<ConditionKind>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericLattice {
    pub arrangement: Arrangement,
    pub lattice: LatticeData,
    pub conditions: Vec<Condition>,
}

fn det2(a: &Poly, b: &Poly, c: &Poly, e: &Poly, d: i64) -> Poly {
    a.mul(e, d).sub(&b.mul(c, d))
}

fn minors(p: &[Poly; 3], q: &[Poly; 3], d: i64) -> [Poly; 3] {
    [
        det2(&p[1], &p[2], &q[1], &q[2], d),
        det2(&p[0], &p[2], &q[0], &q[2], d),
        det2(&p[0], &p[1], &q[0], &q[1], d),
    ]
}

fn det3(p: &[Poly; 3], q: &[Poly; 3], r: &[Poly; 3], d: i64) -> Poly {
    let m = minors(q, r, d);
    p[0].mul(&m[0], d).sub(&p[1].mul(&m[1], d)).add(&p[2].mul(&m[2], d))
}

fn gcd_all(ps: &[Poly], d: i64) -> Poly {
    ps.iter().fold(Poly::zero(), |g, p| g.gcd(p, d))
}

/// The lattice of the family with `t` symbolic, and the polynomial
/// conditions under which a specialization departs from it.
///
/// Vanishing and coincidence conditions are gcds of coefficients and of
/// `2×2` minors; concurrency conditions are the `3×3` determinants of triples
/// that are not concurrent identically in `t`. A matroid of rank three is
/// determined by its dependent triples, so these conditions are complete.
pub fn generic_lattice(f: &Family) -> Result<GenericLattice> {
    let d = f.base().d();
    let polys = f.polys();
    let mut by_poly: BTreeMap<Poly, Vec<ConditionKind>> = BTreeMap::new();
    let mut push = |p: Poly, kind| {
        if !p.is_constant() {
            by_poly.entry(p.monic(d)).or_default().push(kind);
        }
    };
    for (i, l) in polys.iter().enumerate() {
        let g = gcd_all(l, d);
        if g.is_zero() {
            return Err(Error::Invalid(format!("line {} vanishes identically", i + 1)));
        }
        push(g, ConditionKind::Vanishing { line: i });
    }
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let g = gcd_all(&minors(&polys[i], &polys[j], d), d);
            if g.is_zero() {
                return Err(Error::Invalid(format!(
                    "lines {} and {} coincide identically",
                    i + 1,
                    j + 1
                )));
            }
            push(g, ConditionKind::Coincidence { lines: [i, j] });
        }
    }
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            for k in j + 1..polys.len() {
                let det = det3(&polys[i], &polys[j], &polys[k], d);
                if !det.is_zero() {
                    push(det, ConditionKind::Concurrency { lines: [i, j, k] });
                }
            }
        }
    }
    let arrangement = f.symbolic()?;
    let lattice = compute_lattice(&arrangement);
    let conditions = by_poly
        .into_iter()
        .map(|(poly, sources)| Condition { poly, sources })
        .collect();
    Ok(GenericLattice {
        arrangement,
        lattice,
        conditions,
    })
}

/// A root of a condition polynomial: rational, or `center + offset·√disc`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootValue {
    Rational(Rat),
    Quadratic { disc: i64, center: Rat, offset: Rat },
}

impl RootValue {
    /// The value as a scalar in the smallest field containing it and `base`,
    /// if there is one.
    pub fn scalar(&self, base: FieldCtx) -> Option<Scalar> {
        match self {
            RootValue::Rational(r) => Some(base.from_rat(r.clone())),
            RootValue::Quadratic { disc, center, offset } => {
                let ctx = FieldCtx::new(Some(*disc), false).ok()?.join(&base).ok()?;
                Some(ctx.quad_parts(center.clone(), offset.clone()))
            }
        }
    }

    /// Monic minimal polynomial over `Q`.
    pub fn minimal_poly(&self) -> Poly {
        match self {
            RootValue::Rational(r) => Poly::from_rats(&[-r, Rat::from_integer(1.into())]),
            RootValue::Quadratic { disc, center, offset } => {
                let c0 = center * center - offset * offset * Rat::from_integer((*disc).into());
                Poly::from_rats(&[c0, -(center + center), Rat::from_integer(1.into())])
            }
        }
    }
}

impl std::fmt::Display for RootValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootValue::Rational(r) => write!(f, "{r}"),
            RootValue::Quadratic { disc, center, offset } => {
                write!(f, "{}", Quad::new(center.clone(), offset.clone()).fmt_with(*disc))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Effect {
    SizeDrop {
        size: usize,
    },
    /// Same number of lines, different labeled lattice.
    LatticeChange {
        profile: Vec<usize>,
    },
    /// The value needs a square root the family's field cannot host.
    OutsideField,
    /// Specializing reproduces the generic lattice.
    Unchanged,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalValue {
    pub value: RootValue,
    /// Indices into [`ExceptionalReport::conditions`] vanishing here.
    pub causes: Vec<usize>,
    pub effect: Effect,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalReport {
    pub base: FieldCtx,
    pub generic_size: usize,
    pub generic_profile: Vec<usize>,
    pub conditions: Vec<Condition>,
    pub values: Vec<ExceptionalValue>,
    /// Condition factors whose roots were not extracted.
    pub unresolved: Vec<Poly>,
}

impl ExceptionalReport {
    pub fn contains(&self, v: &RootValue) -> bool {
        self.values.iter().any(|e| e.value == *v)
    }

    /// Whether a parameter is a root of one of the conditions.
    pub fn is_exceptional(&self, x: &Scalar) -> bool {
        let d = x.ctx().d();
        let Some(q) = x.as_quad() else { return false };
        let comparable = |p: &Poly| p.is_rational() || x.ctx().disc() == self.base.disc();
        self.conditions
            .iter()
            .any(|c| comparable(&c.poly) && c.poly.eval(q, d).is_zero())
    }

    pub fn to_json(&self) -> Value {
        let d = self.base.d();
        let effect = |e: &Effect| match e {
            Effect::SizeDrop { size } => json!({"kind": "size_drop", "size": size}),
            Effect::LatticeChange { profile } => json!({"kind": "lattice_change", "profile": profile}),
            Effect::OutsideField => json!({"kind": "outside_field"}),
            Effect::Unchanged => json!({"kind": "unchanged"}),
        };
        json!({
            "generic_size": self.generic_size,
            "generic_profile": self.generic_profile,
            "conditions": self.conditions.iter().map(|c| json!({
                "poly": c.poly.fmt_with(d, "t"),
                "sources": c.sources.iter().map(ConditionKind::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "values": self.values.iter().map(|v| json!({
                "value": v.value.to_string(),
                "minimal_poly": v.value.minimal_poly().fmt_with(0, "t"),
                "causes": v.causes,
                "effect": effect(&v.effect),
            })).collect::<Vec<_>>(),
            "unresolved": self.unresolved.iter().map(|p| p.fmt_with(d, "t")).collect::<Vec<_>>(),
        })
    }
}

/// Roots of a condition polynomial over `Q(√d)`. Irrational conditions are
/// multiplied by their conjugate first and the candidate roots filtered back.
fn condition_roots(p: &Poly, d: i64) -> (Vec<RootValue>, Vec<Poly>) {
    let m = p.monic(d);
    let (rational, filter) = if m.is_rational() {
        (m, false)
    } else {
        (m.mul(&m.conj(), d), true)
    };
    let Some(report) = roots_low_degree(&rational) else {
        return (Vec::new(), vec![p.clone()]);
    };
    let vanishes = |q: &Quad| !filter || p.eval(q, d).is_zero();
    let mut roots = Vec::new();
    let mut unresolved: Vec<Poly> = report.residual.into_iter().map(|(f, _)| f).collect();
    for (r, _) in report.linear {
        if vanishes(&Quad::from_rat(r.clone())) {
            roots.push(RootValue::Rational(r));
        }
    }
    for q in report.quadratic {
        if filter && q.disc != d {
            unresolved.push(q.poly());
            continue;
        }
        for (sign, root) in q.roots().into_iter().enumerate() {
            if vanishes(&root) {
                let offset = if sign == 0 { q.offset.clone() } else { -&q.offset };
                roots.push(RootValue::Quadratic {
                    disc: q.disc,
                    center: q.center.clone(),
                    offset,
                });
            }
        }
    }
    (roots, unresolved)
}

/// Every parameter value at which the family loses a line or changes its
/// lattice, each confirmed by specializing.
pub fn exceptional_values(f: &Family) -> Result<ExceptionalReport> {
    let g = generic_lattice(f)?;
    let d = f.base().d();
    let mut causes: BTreeMap<RootValue, Vec<usize>> = BTreeMap::new();
    let mut unresolved = Vec::new();
    for (ci, c) in g.conditions.iter().enumerate() {
        let (roots, rest) = condition_roots(&c.poly, d);
        for r in roots {
            causes.entry(r).or_default().push(ci);
        }
        unresolved.extend(rest);
    }
    unresolved.sort();
    unresolved.dedup();
    let mut values = Vec::new();
    for (value, causes) in causes {
        let effect = match value.scalar(f.base()) {
            None => Effect::OutsideField,
            Some(x) => classify_value(f, &g.lattice, &x)?,
        };
        values.push(ExceptionalValue { value, causes, effect });
    }
    Ok(ExceptionalReport {
        base: f.base(),
        generic_size: f.len(),
        generic_profile: g.lattice.profile.clone(),
        conditions: g.conditions,
        values,
        unresolved,
    })
}

fn classify_value(f: &Family, generic: &LatticeData, x: &Scalar) -> Result<Effect> {
    let s = f.specialize(x)?;
    if s.is_degenerate() {
        return Ok(Effect::SizeDrop {
            size: s.arrangement.len(),
        });
    }
    let lat = compute_lattice(&s.arrangement);
    Ok(if lat.same_labeled(generic) {
        Effect::Unchanged
    } else {
        Effect::LatticeChange { profile: lat.profile }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn pencil() -> Family {
        // x, y, x + t·y, x + y + z, z
        Family::from_int_polys(
            "pencil",
            &[
                [&[1], &[], &[]],
                [&[], &[1], &[]],
                [&[1], &[0, 1], &[]],
                [&[1], &[1], &[1]],
                [&[], &[], &[1]],
            ],
        )
    }

    #[test]
    fn pencil_conditions() {
        let rep = exceptional_values(&pencil()).unwrap();
        let vals: Vec<_> = rep.values.iter().map(|v| (v.value.clone(), v.effect.clone())).collect();
        // t = 0: x + t·y = x; t = 1: x + y, x + y + z and z concurrent
        assert_eq!(
            vals,
            vec![
                (RootValue::Rational(rat(0, 1)), Effect::SizeDrop { size: 4 }),
                (
                    RootValue::Rational(rat(1, 1)),
                    Effect::LatticeChange { profile: vec![4, 2] }
                ),
            ]
        );
        assert!(rep.unresolved.is_empty());
    }

    #[test]
    fn constant_family_has_no_conditions() {
        let f = Family::from_int_polys("const", &[[&[1], &[], &[]], [&[], &[1], &[]], [&[], &[], &[1]]]);
        let g = generic_lattice(&f).unwrap();
        assert!(g.conditions.is_empty());
        assert!(exceptional_values(&f).unwrap().values.is_empty());
    }

    #[test]
    fn identical_lines_rejected() {
        let f = Family::from_int_polys("bad", &[[&[0, 1], &[], &[]], [&[0, 2], &[], &[]]]);
        assert!(generic_lattice(&f).is_err());
    }

    #[test]
    fn quadratic_roots_and_minimal_polys() {
        // x, y, z, x + y + (t² − 2)·z: the last line passes through (1:-1:0)
        // which lies on no other line, so only concurrency with x, y at
        // t² = 2 matters.
        let f = Family::from_int_polys(
            "q",
            &[
                [&[1], &[], &[]],
                [&[], &[1], &[]],
                [&[], &[], &[1]],
                [&[1], &[1], &[-2, 0, 1]],
            ],
        );
        let rep = exceptional_values(&f).unwrap();
        assert_eq!(rep.values.len(), 2);
        for v in &rep.values {
            assert_eq!(v.value.minimal_poly(), Poly::from_ints(&[-2, 0, 1]));
            assert!(matches!(v.effect, Effect::LatticeChange { .. }));
        }
        assert_eq!(rep.values[1].value.to_string(), "√2");
    }

    #[test]
    fn roots_outside_a_quadratic_base() {
        let k = FieldCtx::quadratic(3).unwrap();
        let f = Family::new(
            "k",
            k,
            vec![
                [Poly::from_ints(&[1]), Poly::zero(), Poly::zero()],
                [Poly::zero(), Poly::from_ints(&[1]), Poly::zero()],
                [Poly::zero(), Poly::zero(), Poly::from_ints(&[1])],
                [
                    Poly::from_ints(&[1]),
                    Poly::from_ints(&[1]),
                    Poly::from_ints(&[-2, 0, 1]),
                ],
            ],
        )
        .unwrap();
        let rep = exceptional_values(&f).unwrap();
        assert!(rep.values.iter().all(|v| v.effect == Effect::OutsideField));
    }
}
