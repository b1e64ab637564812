//! One-parameter families of arrangements: specialization, degeneration
//! conditions, exceptional parameter values and per-sample classification,
//! plus the enumeration of admissible multiplicity profiles.

mod degenerations;
mod profiles;
mod scan;

pub use degenerations::{
    exceptional_values, generic_lattice, Condition, ConditionKind, Effect, ExceptionalReport, ExceptionalValue,
    GenericLattice, RootValue,
};
pub use profiles::{classify_profiles, ProfileTriple};
pub use scan::{scan_family, ScanOptions, ScanRow, ScanTable};

use crate::error::{Error, Result};
use crate::geometry::{Arrangement, Line};
use crate::scalar::{FieldCtx, Poly, Scalar};

/// Lines whose coefficients are polynomials in a parameter `t` over a base
/// field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: String,
    base: FieldCtx,
    lines: Vec<[Poly; 3]>,
}

/// A family member at a concrete parameter value. Coinciding lines are kept
/// once and lines with all coefficients zero are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    pub arrangement: Arrangement,
    /// Family index of each line of `arrangement`.
    pub kept: Vec<usize>,
    /// `(i, j)`: family line `i` coincides with the earlier family line `j`.
    pub duplicates: Vec<(usize, usize)>,
    pub vanished: Vec<usize>,
}

impl Specialization {
    pub fn is_degenerate(&self) -> bool {
        !self.duplicates.is_empty() || !self.vanished.is_empty()
    }
}

impl Family {
    pub fn new(name: impl Into<String>, base: FieldCtx, lines: Vec<[Poly; 3]>) -> Result<Family> {
        if base.is_parametric() {
            return Err(Error::Invalid("family base field must not be parametric".into()));
        }
        for l in &lines {
            if base.disc().is_none() && l.iter().any(|p| !p.is_rational()) {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(Family {
            name: name.into(),
            base,
            lines,
        })
    }

    /// Builds a family over `Q` from ascending integer coefficient lists.
    pub fn from_int_polys(name: impl Into<String>, lines: &[[&[i64]; 3]]) -> Family {
        let lines = lines.iter().map(|l| l.map(Poly::from_ints)).collect();
        Family::new(name, FieldCtx::RATIONAL, lines).expect("rational family")
    }

    pub fn base(&self) -> FieldCtx {
        self.base
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn polys(&self) -> &[[Poly; 3]] {
        &self.lines
    }

    /// The family over `Q(√d)(t)` with `t` kept symbolic.
    pub fn symbolic(&self) -> Result<Arrangement> {
        let ctx = self.base.with_param();
        let lines = self
            .lines
            .iter()
            .map(|l| {
                let c = [
                    ctx.poly(l[0].clone())?,
                    ctx.poly(l[1].clone())?,
                    ctx.poly(l[2].clone())?,
                ];
                Line::new(c)
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(ctx, lines)
    }

    /// Substitutes `t = x`; the result lives in the smallest field containing
    /// both `x` and the base field.
    pub fn specialize(&self, x: &Scalar) -> Result<Specialization> {
        if x.ctx().is_parametric() {
            return Err(Error::BadParameter("parameter must not involve t".into()));
        }
        let ctx = x
            .ctx()
            .join(&self.base)
            .map_err(|_| Error::BadParameter(format!("parameter field {} incompatible with {}", x.ctx(), self.base)))?;
        let x = x.embed(ctx)?;
        let pctx = self.base.with_param();
        let mut lines: Vec<Line> = Vec::new();
        let mut kept = Vec::new();
        let mut duplicates = Vec::new();
        let mut vanished = Vec::new();
        for (i, l) in self.lines.iter().enumerate() {
            let c = [0, 1, 2].map(|k| pctx.poly(l[k].clone()).and_then(|s| s.specialize(&x)));
            let [a, b, cc] = c;
            let coeffs = [a?.embed(ctx)?, b?.embed(ctx)?, cc?.embed(ctx)?];
            match Line::new(coeffs) {
                Err(Error::ZeroVector) => vanished.push(i),
                Err(e) => return Err(e),
                Ok(line) => match lines.iter().position(|m| *m == line) {
                    Some(j) => duplicates.push((i, kept[j])),
                    None => {
                        lines.push(line);
                        kept.push(i);
                    }
                },
            }
        }
        Ok(Specialization {
            arrangement: Arrangement::new(ctx, lines)?,
            kept,
            duplicates,
            vanished,
        })
    }
}
