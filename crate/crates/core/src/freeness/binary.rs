//! Rank-2 multiarrangements: binary forms in `(u, v)`, logarithmic
//! derivations with multiplicities, their exponents and Saito's determinant
//! test.

use serde::Serialize;

use super::linalg::kernel;
use crate::error::{Error, Result};
use crate::scalar::{FieldCtx, Scalar};

/// Homogeneous polynomial in `u, v`; `coeffs[j]` multiplies `u^(deg−j) v^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinForm {
    coeffs: Vec<Scalar>,
}

impl BinForm {
    pub fn new(coeffs: Vec<Scalar>) -> Result<BinForm> {
        let Some(first) = coeffs.first() else {
            return Err(Error::Invalid("binary form needs a degree".into()));
        };
        let ctx = first.ctx();
        if coeffs.iter().any(|c| c.ctx() != ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(BinForm { coeffs })
    }

    pub fn zero(ctx: FieldCtx, deg: usize) -> BinForm {
        BinForm {
            coeffs: vec![ctx.zero(); deg + 1],
        }
    }

    /// `a·u + b·v`.
    pub fn linear(a: Scalar, b: Scalar) -> BinForm {
        BinForm { coeffs: vec![a, b] }
    }

    pub fn from_ints(ctx: FieldCtx, c: &[i64]) -> BinForm {
        BinForm {
            coeffs: c.iter().map(|&x| ctx.int(x)).collect(),
        }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.coeffs[0].ctx()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, o: &BinForm) -> BinForm {
        let mut out = BinForm::zero(self.ctx(), self.degree() + o.degree());
        for (i, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in o.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out.coeffs[i + j] = &out.coeffs[i + j] + &(x * y);
            }
        }
        out
    }

    pub fn sub(&self, o: &BinForm) -> Result<BinForm> {
        if self.degree() != o.degree() {
            return Err(Error::Invalid("degree mismatch".into()));
        }
        Ok(BinForm {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    fn lin_comb(a: &Scalar, f: &BinForm, b: &Scalar, g: &BinForm) -> BinForm {
        BinForm {
            coeffs: f
                .coeffs
                .iter()
                .zip(&g.coeffs)
                .map(|(x, y)| &(a * x) + &(b * y))
                .collect(),
        }
    }

    pub fn pow(&self, e: usize) -> BinForm {
        let mut acc = BinForm {
            coeffs: vec![self.ctx().one()],
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Whether `(a·u + b·v)^m` divides this form, checked by repeated
    /// synthetic division of the dehomogenization `g(1, v)`.
    pub fn divisible_by_power(&self, form: &[Scalar; 2], m: usize) -> bool {
        if self.is_zero() || m == 0 {
            return true;
        }
        let [a, b] = form;
        let d = self.degree();
        if b.is_zero() {
            // power of u: the m lowest powers of u must be absent
            return m <= d && self.coeffs[d + 1 - m..].iter().all(Scalar::is_zero);
        }
        let root = -&(a / b);
        let mut p: Vec<Scalar> = self.coeffs.clone();
        while p.last().is_some_and(Scalar::is_zero) {
            p.pop();
        }
        for _ in 0..m {
            if p.is_empty() {
                return false;
            }
            // divide p(v) by (v − root), ascending coefficients
            let mut q = vec![root.ctx().zero(); p.len() - 1];
            let mut carry = root.ctx().zero();
            for j in (0..p.len()).rev() {
                let cur = &p[j] + &(&carry * &root);
                if j == 0 {
                    if !cur.is_zero() {
                        return false;
                    }
                } else {
                    q[j - 1] = cur.clone();
                }
                carry = cur;
            }
            p = q;
        }
        true
    }
}

/// A logarithmic vector field `f_u ∂_u + f_v ∂_v` with homogeneous
/// components of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derivation2 {
    pub f_u: BinForm,
    pub f_v: BinForm,
}

impl Derivation2 {
    pub fn new(f_u: BinForm, f_v: BinForm) -> Result<Derivation2> {
        if f_u.degree() != f_v.degree() || f_u.ctx() != f_v.ctx() {
            return Err(Error::Invalid("components of different degree".into()));
        }
        Ok(Derivation2 { f_u, f_v })
    }

    pub fn degree(&self) -> usize {
        self.f_u.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.f_u.is_zero() && self.f_v.is_zero()
    }

    /// `θ(a·u + b·v) = a·f_u + b·f_v`.
    pub fn apply(&self, form: &[Scalar; 2]) -> BinForm {
        BinForm::lin_comb(&form[0], &self.f_u, &form[1], &self.f_v)
    }
}

/// Rank-2 multiarrangement: pairwise non-proportional binary linear forms
/// with positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiArr2 {
    ctx: FieldCtx,
    forms: Vec<[Scalar; 2]>,
    mult: Vec<usize>,
}

fn normalize_form(f: [Scalar; 2]) -> Result<[Scalar; 2]> {
    let [a, b] = f;
    if !a.is_zero() {
        let b = &b / &a;
        Ok([a.ctx().one(), b])
    } else if !b.is_zero() {
        Ok([a, b.ctx().one()])
    } else {
        Err(Error::ZeroVector)
    }
}

impl MultiArr2 {
    /// Builds a multiarrangement, merging proportional forms by adding their
    /// multiplicities. Entries with multiplicity zero are dropped.
    pub fn new(ctx: FieldCtx, entries: Vec<([Scalar; 2], usize)>) -> Result<MultiArr2> {
        let mut forms: Vec<[Scalar; 2]> = Vec::new();
        let mut mult = Vec::new();
        for (f, m) in entries {
            if f.iter().any(|s| s.ctx() != ctx) {
                return Err(Error::ContextMismatch);
            }
            let f = normalize_form(f)?;
            if m == 0 {
                continue;
            }
            match forms.iter().position(|g| *g == f) {
                Some(i) => mult[i] += m,
                None => {
                    forms.push(f);
                    mult.push(m);
                }
            }
        }
        Ok(MultiArr2 { ctx, forms, mult })
    }

    pub fn from_ints(ctx: FieldCtx, entries: &[([i64; 2], usize)]) -> Result<MultiArr2> {
        MultiArr2::new(
            ctx,
            entries
                .iter()
                .map(|&([a, b], m)| ([ctx.int(a), ctx.int(b)], m))
                .collect(),
        )
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn forms(&self) -> &[[Scalar; 2]] {
        &self.forms
    }

    pub fn mult(&self) -> &[usize] {
        &self.mult
    }

    /// `|m|`.
    pub fn total(&self) -> usize {
        self.mult.iter().sum()
    }

    /// `∏ α^m(α)` as a binary form of degree `|m|`.
    pub fn defining_form(&self) -> BinForm {
        self.forms.iter().zip(&self.mult).fold(
            BinForm {
                coeffs: vec![self.ctx.one()],
            },
            |acc, (f, &m)| acc.mul(&BinForm::linear(f[0].clone(), f[1].clone()).pow(m)),
        )
    }

    /// Whether `θ(α)` is divisible by `α^m(α)` for every form.
    pub fn contains(&self, theta: &Derivation2) -> bool {
        self.forms
            .iter()
            .zip(&self.mult)
            .all(|(f, &m)| theta.apply(f).divisible_by_power(f, m))
    }

    /// Linear conditions on the coefficient vector `(f_u, f_v)` of a degree-`d`
    /// derivation expressing membership in `D(M)`.
    fn constraints(&self, d: usize) -> Vec<Vec<Scalar>> {
        let ctx = self.ctx;
        let width = 2 * (d + 1);
        let mut rows = Vec::new();
        for ([a, b], &m) in self.forms.iter().zip(&self.mult) {
            if b.is_zero() {
                for j in (d + 1).saturating_sub(m)..=d {
                    let mut row = vec![ctx.zero(); width];
                    row[j] = a.clone();
                    rows.push(row);
                }
                continue;
            }
            // Taylor coefficients of g(1, v) at v₀ = −a/b, orders below m
            let v0 = -&(a / b);
            let powers: Vec<Scalar> = (0..=d).map(|e| v0.pow(e as u32)).collect();
            for k in 0..m.min(d + 1) {
                let mut row = vec![ctx.zero(); width];
                let mut binom: i64 = 1;
                for j in k..=d {
                    if j > k {
                        binom = binom * j as i64 / (j - k) as i64;
                    }
                    let w = &ctx.int(binom) * &powers[j - k];
                    row[j] = a * &w;
                    row[d + 1 + j] = b * &w;
                }
                rows.push(row);
            }
        }
        rows
    }

    /// Basis of the degree-`d` part of `D(M)`.
    pub fn derivations_of_degree(&self, d: usize) -> Vec<Derivation2> {
        kernel(self.ctx, self.constraints(d), 2 * (d + 1))
            .into_iter()
            .map(|mut v| {
                let f_v = v.split_off(d + 1);
                Derivation2 {
                    f_u: BinForm { coeffs: v },
                    f_v: BinForm { coeffs: f_v },
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiExponents {
    /// `(e₁, e₂)` with `e₁ ≤ e₂` and `e₁ + e₂ = |m|`.
    pub exponents: (usize, usize),
    /// A nonzero derivation of degree `e₁`.
    pub witness: Derivation2,
}

/// Exponents of a rank-2 multiarrangement, by locating the lowest degree in
/// which `D(M)` is nonzero.
pub fn multi_exponents(m: &MultiArr2) -> MultiExponents {
    let total = m.total();
    for d in 0..=total / 2 {
        if let Some(theta) = m.derivations_of_degree(d).into_iter().next() {
            debug_assert!(m.contains(&theta));
            return MultiExponents {
                exponents: (d, total - d),
                witness: theta,
            };
        }
    }
    unreachable!("a rank-2 multiarrangement has e₁ ≤ |m|/2")
}

/// Saito's criterion in rank 2: both derivations lie in `D(M)`, their degrees
/// add up to `|m|`, and their determinant is a nonzero multiple of the
/// defining form.
pub fn saito_verify_rank2(m: &MultiArr2, t1: &Derivation2, t2: &Derivation2) -> bool {
    if t1.degree() + t2.degree() != m.total() || !m.contains(t1) || !m.contains(t2) {
        return false;
    }
    let Ok(det) = t1.f_u.mul(&t2.f_v).sub(&t1.f_v.mul(&t2.f_u)) else {
        return false;
    };
    let q = m.defining_form();
    let Some(j) = q.coeffs.iter().position(|c| !c.is_zero()) else {
        return false;
    };
    if det.coeffs[j].is_zero() {
        return false;
    }
    let c = &det.coeffs[j] / &q.coeffs[j];
    det.coeffs.iter().zip(&q.coeffs).all(|(x, y)| *x == &c * y)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldCtx = FieldCtx::RATIONAL;

    fn uvw(m: usize) -> MultiArr2 {
        MultiArr2::from_ints(Q, &[([1, 0], m), ([0, 1], m), ([1, 1], m)]).unwrap()
    }

    #[test]
    fn three_triple_points() {
        let e = multi_exponents(&uvw(3));
        assert_eq!(e.exponents, (4, 5));
        assert!(uvw(3).contains(&e.witness));
        assert!(!e.witness.is_zero());
    }

    #[test]
    fn two_points() {
        let m = MultiArr2::from_ints(Q, &[([1, 0], 2), ([0, 1], 3)]).unwrap();
        assert_eq!(multi_exponents(&m).exponents, (2, 3));
        let m = MultiArr2::from_ints(Q, &[([1, 0], 4)]).unwrap();
        assert_eq!(multi_exponents(&m).exponents, (0, 4));
        let m = MultiArr2::new(Q, vec![]).unwrap();
        assert_eq!(multi_exponents(&m).exponents, (0, 0));
    }

    #[test]
    fn simple_arrangement_has_euler_degree_one() {
        // four distinct lines with multiplicity one: exponents (1, 3)
        let m = MultiArr2::from_ints(Q, &[([1, 0], 1), ([0, 1], 1), ([1, 1], 1), ([1, 2], 1)]).unwrap();
        assert_eq!(multi_exponents(&m).exponents, (1, 3));
    }

    #[test]
    fn proportional_forms_merge() {
        let m = MultiArr2::from_ints(Q, &[([2, 4], 1), ([1, 2], 2)]).unwrap();
        assert_eq!(m.forms().len(), 1);
        assert_eq!(m.total(), 3);
    }

    #[test]
    fn saito_on_published_basis() {
        // (u+2v)u³∂_u − (2u+v)v³∂_v and (u+3v)vu³∂_u + (3u+v)uv³∂_v
        let t1 = Derivation2::new(
            BinForm::from_ints(Q, &[1, 2, 0, 0, 0]),
            BinForm::from_ints(Q, &[0, 0, 0, -2, -1]),
        )
        .unwrap();
        let t2 = Derivation2::new(
            BinForm::from_ints(Q, &[0, 1, 3, 0, 0, 0]),
            BinForm::from_ints(Q, &[0, 0, 0, 3, 1, 0]),
        )
        .unwrap();
        assert!(saito_verify_rank2(&uvw(3), &t1, &t2));
        assert!(!saito_verify_rank2(&uvw(3), &t1, &t1));
    }

    #[test]
    fn saito_small_cases() {
        let m = MultiArr2::from_ints(Q, &[([1, 0], 1), ([0, 1], 1)]).unwrap();
        let du = Derivation2::new(BinForm::from_ints(Q, &[1, 0]), BinForm::from_ints(Q, &[0, 0])).unwrap();
        let dv = Derivation2::new(BinForm::from_ints(Q, &[0, 0]), BinForm::from_ints(Q, &[0, 1])).unwrap();
        assert!(saito_verify_rank2(&m, &du, &dv));
        assert!(!saito_verify_rank2(&m, &du, &du));
    }

    #[test]
    fn divisibility_by_synthetic_division() {
        // (u + v)² u = u³ + 2u²v + uv²
        let g = BinForm::from_ints(Q, &[1, 2, 1, 0]);
        let w = [Q.one(), Q.one()];
        assert!(g.divisible_by_power(&w, 2));
        assert!(!g.divisible_by_power(&w, 3));
        assert!(g.divisible_by_power(&[Q.one(), Q.zero()], 1));
        assert!(!g.divisible_by_power(&[Q.one(), Q.zero()], 2));
        assert!(!g.divisible_by_power(&[Q.zero(), Q.one()], 1));
    }
}
