//! Lines and points of the projective plane over a [`Scalar`] field, and
//! arrangements as ordered duplicate-free sets of lines.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldCtx, Scalar};

/// Homogeneous triple normalized so that its first nonzero entry is 1.
fn normalize(v: [Scalar; 3]) -> Result<[Scalar; 3]> {
    let ctx = v[0].ctx();
    if v.iter().any(|s| s.ctx() != ctx) {
        return Err(Error::ContextMismatch);
    }
    let pivot = v.iter().position(|s| !s.is_zero()).ok_or(Error::ZeroVector)?;
    if v[pivot].is_one() {
        return Ok(v);
    }
    let inv = v[pivot].inv()?;
    Ok(v.map(|s| if s.is_zero() { s } else { &s * &inv }))
}

fn cross(a: &[Scalar; 3], b: &[Scalar; 3]) -> [Scalar; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

fn dot(a: &[Scalar; 3], b: &[Scalar; 3]) -> Scalar {
    let mut acc = &a[0] * &b[0];
    if !a[1].is_zero() && !b[1].is_zero() {
        acc = &acc + &(&a[1] * &b[1]);
    }
    if !a[2].is_zero() && !b[2].is_zero() {
        acc = &acc + &(&a[2] * &b[2]);
    }
    acc
}

/// Determinant of three coefficient triples; zero iff the three lines are
/// concurrent (or the three points collinear).
pub fn det3(a: &[Scalar; 3], b: &[Scalar; 3], c: &[Scalar; 3]) -> Scalar {
    dot(a, &cross(b, c))
}

/// The linear form `c₀x + c₁y + c₂z`, normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    coeffs: [Scalar; 3],
}

/// A point `(p₀ : p₁ : p₂)`, normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: [Scalar; 3],
}

impl Line {
    pub fn new(coeffs: [Scalar; 3]) -> Result<Line> {
        Ok(Line {
            coeffs: normalize(coeffs)?,
        })
    }

    pub fn from_ints(ctx: FieldCtx, c: [i64; 3]) -> Line {
        Line::new(c.map(|x| ctx.int(x))).expect("nonzero integer line")
    }

    pub fn coeffs(&self) -> &[Scalar; 3] {
        &self.coeffs
    }

    pub fn ctx(&self) -> FieldCtx {
        self.coeffs[0].ctx()
    }

    pub fn eval(&self, p: &Point) -> Scalar {
        dot(&self.coeffs, &p.coords)
    }

    pub fn conjugate(&self) -> Result<Line> {
        let [a, b, c] = &self.coeffs;
        Line::new([a.conjugate()?, b.conjugate()?, c.conjugate()?])
    }

    pub fn embed(&self, ctx: FieldCtx) -> Result<Line> {
        let [a, b, c] = &self.coeffs;
        Line::new([a.embed(ctx)?, b.embed(ctx)?, c.embed(ctx)?])
    }

    /// The line at infinity `z = 0` of the affine chart.
    pub fn infinity(ctx: FieldCtx) -> Line {
        Line::from_ints(ctx, [0, 0, 1])
    }
}

impl Point {
    pub fn new(coords: [Scalar; 3]) -> Result<Point> {
        Ok(Point {
            coords: normalize(coords)?,
        })
    }

    pub fn from_ints(ctx: FieldCtx, c: [i64; 3]) -> Point {
        Point::new(c.map(|x| ctx.int(x))).expect("nonzero integer point")
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.coords
    }

    pub fn ctx(&self) -> FieldCtx {
        self.coords[0].ctx()
    }

    /// Affine coordinates in the chart `z = 1`, if the point is finite.
    pub fn affine(&self) -> Option<(Scalar, Scalar)> {
        let z = &self.coords[2];
        if z.is_zero() {
            return None;
        }
        Some((&self.coords[0] / z, &self.coords[1] / z))
    }
}

/// The intersection point of two distinct lines.
pub fn meet(l1: &Line, l2: &Line) -> Result<Point> {
    if l1.ctx() != l2.ctx() {
        return Err(Error::ContextMismatch);
    }
    if l1 == l2 {
        return Err(Error::EqualLines);
    }
    Point::new(cross(&l1.coeffs, &l2.coeffs))
}

/// The line through two distinct points.
pub fn join(p1: &Point, p2: &Point) -> Result<Line> {
    if p1.ctx() != p2.ctx() {
        return Err(Error::ContextMismatch);
    }
    if p1 == p2 {
        return Err(Error::EqualPoints);
    }
    Line::new(cross(&p1.coords, &p2.coords))
}

pub fn incident(p: &Point, l: &Line) -> bool {
    l.eval(p).is_zero()
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coeffs;
        write!(f, "[{a}, {b}, {c}]")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coords;
        write!(f, "({a} : {b} : {c})")
    }
}

/// Ordered set of pairwise distinct lines over one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrangement {
    ctx: FieldCtx,
    lines: Vec<Line>,
}

/// Order-independent identity of an arrangement: its sorted lines.
pub type CanonicalKey = Vec<Line>;

impl Arrangement {
    pub fn new(ctx: FieldCtx, lines: Vec<Line>) -> Result<Arrangement> {
        for (i, l) in lines.iter().enumerate() {
            if l.ctx() != ctx {
                return Err(Error::ContextMismatch);
            }
            if lines[..i].contains(l) {
                return Err(Error::DuplicateLine(i));
            }
        }
        Ok(Arrangement { ctx, lines })
    }

    pub fn empty(ctx: FieldCtx) -> Arrangement {
        Arrangement { ctx, lines: vec![] }
    }

    pub fn from_ints(ctx: FieldCtx, lines: &[[i64; 3]]) -> Result<Arrangement> {
        Arrangement::new(ctx, lines.iter().map(|&c| Line::from_ints(ctx, c)).collect())
    }

    /// Homogenizes affine lines `a·x + b·y + c = 0` with `z` and appends the
    /// line at infinity as the last element.
    pub fn cone(ctx: FieldCtx, affine: &[[Scalar; 3]]) -> Result<Arrangement> {
        let mut lines = Vec::with_capacity(affine.len() + 1);
        for (i, [a, b, c]) in affine.iter().enumerate() {
            if a.is_zero() && b.is_zero() {
                return Err(Error::Invalid(format!("affine line {i} has no linear part")));
            }
            lines.push(Line::new([a.clone(), b.clone(), c.clone()])?);
        }
        lines.push(Line::infinity(ctx));
        Arrangement::new(ctx, lines)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> Result<&Line> {
        self.lines.get(i).ok_or(Error::InvalidIndex(i))
    }

    pub fn index_of(&self, l: &Line) -> Option<usize> {
        self.lines.iter().position(|x| x == l)
    }

    pub fn contains(&self, l: &Line) -> bool {
        self.lines.contains(l)
    }

    pub fn with_line(&self, l: Line) -> Result<Arrangement> {
        if l.ctx() != self.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.contains(&l) {
            return Err(Error::DuplicateLine(self.len()));
        }
        let mut lines = self.lines.clone();
        lines.push(l);
        Ok(Arrangement { ctx: self.ctx, lines })
    }

    pub fn without(&self, i: usize) -> Result<Arrangement> {
        if i >= self.len() {
            return Err(Error::InvalidIndex(i));
        }
        let mut lines = self.lines.clone();
        lines.remove(i);
        Ok(Arrangement { ctx: self.ctx, lines })
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        let mut k = self.lines.clone();
        k.sort();
        k
    }

    /// Applies Galois conjugation to every line.
    pub fn conjugate(&self) -> Result<Arrangement> {
        let lines = self.lines.iter().map(Line::conjugate).collect::<Result<_>>()?;
        Arrangement::new(self.ctx, lines)
    }

    pub fn embed(&self, ctx: FieldCtx) -> Result<Arrangement> {
        let lines = self.lines.iter().map(|l| l.embed(ctx)).collect::<Result<_>>()?;
        Arrangement::new(ctx, lines)
    }

    /// Reorders lines by a permutation: line `i` of the result is line
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Arrangement> {
        let lines = perm
            .iter()
            .map(|&i| self.line(i).cloned())
            .collect::<Result<Vec<_>>>()?;
        if lines.len() != self.len() {
            return Err(Error::Invalid("permutation length".into()));
        }
        Arrangement::new(self.ctx, lines)
    }
}
