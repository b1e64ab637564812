//! Exact arithmetic tower: `Q`, a quadratic extension `Q(√d)`, and the
//! rational-function field `Q(√d)(t)` layered on top of it.
//!
//! Every [`Scalar`] carries its [`FieldCtx`]. Arithmetic between scalars of
//! different contexts is a logic error: the operator impls panic, the
//! `try_*` methods report [`Error::ContextMismatch`].

mod poly;
mod quad;
pub mod roots;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use poly::Poly;
pub use quad::{rat, rat_int, squarefree_split, Quad, Rat};

use crate::error::{Error, Result};

/// The field a scalar lives in: an optional squarefree discriminant `d` and
/// whether the indeterminate `t` is adjoined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldCtx {
    disc: Option<i64>,
    parametric: bool,
}

impl FieldCtx {
    pub const RATIONAL: FieldCtx = FieldCtx {
        disc: None,
        parametric: false,
    };

    pub fn new(disc: Option<i64>, parametric: bool) -> Result<Self> {
        if let Some(d) = disc {
            let (_, s) = squarefree_split(&BigInt::from(d));
            if d == 0 || d == 1 || s != BigInt::from(d) {
                return Err(Error::BadDiscriminant(d));
            }
        }
        Ok(FieldCtx { disc, parametric })
    }

    /// `Q(√d)`; the discriminant is reduced to its squarefree part first, so
    /// `quadratic(12)` is `Q(√3)`. A perfect square gives `Q`.
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadDiscriminant(d));
        }
        let (_, s) = squarefree_split(&BigInt::from(d));
        let s: i64 = s.try_into().map_err(|_| Error::BadDiscriminant(d))?;
        if s == 1 {
            return Ok(FieldCtx::RATIONAL);
        }
        FieldCtx::new(Some(s), false)
    }

    pub fn disc(&self) -> Option<i64> {
        self.disc
    }

    /// Discriminant as used by the low-level arithmetic (`0` for `Q`).
    pub fn d(&self) -> i64 {
        self.disc.unwrap_or(0)
    }

    pub fn is_parametric(&self) -> bool {
        self.parametric
    }

    pub fn with_param(self) -> FieldCtx {
        FieldCtx {
            parametric: true,
            ..self
        }
    }

    pub fn without_param(self) -> FieldCtx {
        FieldCtx {
            parametric: false,
            ..self
        }
    }

    /// Whether every scalar of `other` embeds into `self`.
    pub fn contains(&self, other: &FieldCtx) -> bool {
        (other.disc.is_none() || other.disc == self.disc) && (!other.parametric || self.parametric)
    }

    /// Smallest context containing both, if one exists.
    pub fn join(&self, other: &FieldCtx) -> Result<FieldCtx> {
        let disc = match (self.disc, other.disc) {
            (Some(a), Some(b)) if a != b => return Err(Error::ContextMismatch),
            (a, b) => a.or(b),
        };
        Ok(FieldCtx {
            disc,
            parametric: self.parametric || other.parametric,
        })
    }

    pub fn zero(&self) -> Scalar {
        self.quad(Quad::zero())
    }

    pub fn one(&self) -> Scalar {
        self.quad(Quad::one())
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.quad(Quad::from_int(n))
    }

    pub fn rat(&self, n: i64, d: i64) -> Scalar {
        self.quad(Quad::from_rat(rat(n, d)))
    }

    pub fn from_rat(&self, r: Rat) -> Scalar {
        self.quad(Quad::from_rat(r))
    }

    /// Embeds a field element; panics if it has an irrational part in a
    /// context without a discriminant.
    pub fn quad(&self, q: Quad) -> Scalar {
        assert!(
            self.disc.is_some() || q.b.is_zero(),
            "irrational element in a rational context"
        );
        let v = if self.parametric {
            Value::Frac(RatFn::from_poly(Poly::constant(q)))
        } else {
            Value::Quad(q)
        };
        Scalar { ctx: *self, v }
    }

    /// `a + b√d`.
    pub fn quad_parts(&self, a: Rat, b: Rat) -> Scalar {
        self.quad(Quad::new(a, b))
    }

    /// The square root `√d`; errors in a context without a discriminant.
    pub fn sqrt_d(&self) -> Result<Scalar> {
        if self.disc.is_none() {
            return Err(Error::NotQuadratic);
        }
        Ok(self.quad(Quad::new(Rat::zero(), Rat::one())))
    }

    /// The indeterminate `t`; errors in a non-parametric context.
    pub fn t(&self) -> Result<Scalar> {
        self.poly(Poly::t())
    }

    pub fn poly(&self, p: Poly) -> Result<Scalar> {
        if !self.parametric {
            return Err(Error::NotParametric);
        }
        self.check_poly(&p)?;
        Ok(Scalar {
            ctx: *self,
            v: Value::Frac(RatFn::from_poly(p)),
        })
    }

    pub fn ratfn(&self, num: Poly, den: Poly) -> Result<Scalar> {
        if !self.parametric {
            return Err(Error::NotParametric);
        }
        self.check_poly(&num)?;
        self.check_poly(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar {
            ctx: *self,
            v: Value::Frac(RatFn::reduce(num, den, self.d())),
        })
    }

    fn check_poly(&self, p: &Poly) -> Result<()> {
        if self.disc.is_none() && !p.is_rational() {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.disc {
            None => write!(f, "Q")?,
            Some(d) => write!(f, "Q(√{d})")?,
        }
        if self.parametric {
            write!(f, "(t)")?;
        }
        Ok(())
    }
}

/// Reduced fraction of polynomials with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    fn from_poly(p: Poly) -> RatFn {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    fn reduce(num: Poly, den: Poly, d: i64) -> RatFn {
        if num.is_zero() {
            return RatFn::from_poly(Poly::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den, d);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g, d).unwrap(), den.exact_div(&g, d).unwrap())
            }
        };
        let l = den.lead().unwrap().clone();
        if l.is_one() {
            return RatFn { num, den };
        }
        let li = l.inv(d).unwrap();
        RatFn {
            num: num.scale(&li, d),
            den: den.scale(&li, d),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    fn add(&self, o: &RatFn, d: i64) -> RatFn {
        if self.den == o.den {
            if self.den.is_one() {
                return RatFn::from_poly(self.num.add(&o.num));
            }
            return RatFn::reduce(self.num.add(&o.num), self.den.clone(), d);
        }
        RatFn::reduce(
            self.num.mul(&o.den, d).add(&o.num.mul(&self.den, d)),
            self.den.mul(&o.den, d),
            d,
        )
    }

    fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn mul(&self, o: &RatFn, d: i64) -> RatFn {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFn::from_poly(Poly::zero());
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFn::from_poly(self.num.mul(&o.num, d));
        }
        let g1 = self.num.gcd(&o.den, d);
        let g2 = o.num.gcd(&self.den, d);
        let n1 = self.num.exact_div(&g1, d).unwrap();
        let d2 = o.den.exact_div(&g1, d).unwrap();
        let n2 = o.num.exact_div(&g2, d).unwrap();
        let d1 = self.den.exact_div(&g2, d).unwrap();
        let num = n1.mul(&n2, d);
        let den = d1.mul(&d2, d);
        let l = den.lead().unwrap().clone();
        if l.is_one() {
            RatFn { num, den }
        } else {
            let li = l.inv(d).unwrap();
            RatFn {
                num: num.scale(&li, d),
                den: den.scale(&li, d),
            }
        }
    }

    fn inv(&self, d: i64) -> Option<RatFn> {
        if self.num.is_zero() {
            return None;
        }
        Some(RatFn::reduce(self.den.clone(), self.num.clone(), d))
    }

    fn conj(&self) -> RatFn {
        RatFn {
            num: self.num.conj(),
            den: self.den.conj(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Value {
    Quad(Quad),
    Frac(RatFn),
}

/// An exact element of `Q`, `Q(√d)` or `Q(√d)(t)`, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    ctx: FieldCtx,
    v: Value,
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ctx.cmp(&other.ctx).then_with(|| self.v.cmp(&other.v))
    }
}

impl Scalar {
    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        match &self.v {
            Value::Quad(q) => q.is_zero(),
            Value::Frac(f) => f.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.v {
            Value::Quad(q) => q.is_one(),
            Value::Frac(f) => f.num.is_one() && f.den.is_one(),
        }
    }

    /// The field element if this scalar does not involve `t`.
    pub fn as_quad(&self) -> Option<&Quad> {
        match &self.v {
            Value::Quad(q) => Some(q),
            Value::Frac(f) if f.den.is_one() && f.num.is_constant() => {
                static ZERO: std::sync::OnceLock<Quad> = std::sync::OnceLock::new();
                Some(f.num.coeffs().first().unwrap_or_else(|| ZERO.get_or_init(Quad::zero)))
            }
            Value::Frac(_) => None,
        }
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.as_quad().filter(|q| q.is_rational()).map(|q| &q.a)
    }

    pub fn as_ratfn(&self) -> Option<&RatFn> {
        match &self.v {
            Value::Frac(f) => Some(f),
            Value::Quad(_) => None,
        }
    }

    /// Numerator and denominator as polynomials in `t` (a non-parametric
    /// scalar is its own numerator over `1`).
    pub fn num_den(&self) -> (Poly, Poly) {
        match &self.v {
            Value::Quad(q) => (Poly::constant(q.clone()), Poly::one()),
            Value::Frac(f) => (f.num.clone(), f.den.clone()),
        }
    }

    fn check(&self, o: &Scalar) -> Result<()> {
        if self.ctx != o.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar> {
        self.check(o)?;
        let d = self.ctx.d();
        let v = match (&self.v, &o.v) {
            (Value::Quad(a), Value::Quad(b)) => Value::Quad(a.add(b)),
            (Value::Frac(a), Value::Frac(b)) => Value::Frac(a.add(b, d)),
            _ => unreachable!("context fixes the representation"),
        };
        Ok(Scalar { ctx: self.ctx, v })
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar> {
        self.try_add(&o.neg_ref())
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar> {
        self.check(o)?;
        let d = self.ctx.d();
        let v = match (&self.v, &o.v) {
            (Value::Quad(a), Value::Quad(b)) => Value::Quad(a.mul(b, d)),
            (Value::Frac(a), Value::Frac(b)) => Value::Frac(a.mul(b, d)),
            _ => unreachable!("context fixes the representation"),
        };
        Ok(Scalar { ctx: self.ctx, v })
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar> {
        self.check(o)?;
        self.try_mul(&o.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        let d = self.ctx.d();
        let v = match &self.v {
            Value::Quad(q) => Value::Quad(q.inv(d).ok_or(Error::DivisionByZero)?),
            Value::Frac(f) => Value::Frac(f.inv(d).ok_or(Error::DivisionByZero)?),
        };
        Ok(Scalar { ctx: self.ctx, v })
    }

    fn neg_ref(&self) -> Scalar {
        let v = match &self.v {
            Value::Quad(q) => Value::Quad(q.neg()),
            Value::Frac(f) => Value::Frac(f.neg()),
        };
        Scalar { ctx: self.ctx, v }
    }

    /// Decidable equality that reports a context mismatch instead of
    /// silently answering `false`.
    pub fn try_eq(&self, o: &Scalar) -> Result<bool> {
        self.check(o)?;
        Ok(self == o)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.ctx.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Galois conjugation `a + b√d ↦ a − b√d`, coefficient-wise through
    /// polynomials and fractions.
    pub fn conjugate(&self) -> Result<Scalar> {
        if self.ctx.disc.is_none() {
            return Err(Error::NotQuadratic);
        }
        let v = match &self.v {
            Value::Quad(q) => Value::Quad(q.conj()),
            Value::Frac(f) => Value::Frac(f.conj()),
        };
        Ok(Scalar { ctx: self.ctx, v })
    }

    /// Re-expresses this scalar in a larger context.
    pub fn embed(&self, ctx: FieldCtx) -> Result<Scalar> {
        if self.ctx == ctx {
            return Ok(self.clone());
        }
        if !ctx.contains(&self.ctx) {
            return Err(Error::ContextMismatch);
        }
        match &self.v {
            Value::Quad(q) => Ok(ctx.quad(q.clone())),
            Value::Frac(f) => Ok(Scalar {
                ctx,
                v: Value::Frac(f.clone()),
            }),
        }
    }

    /// Substitutes `t = x` in a parametric scalar. The result lives in the
    /// context of `x`, which must contain the base field of `self`.
    pub fn specialize(&self, x: &Scalar) -> Result<Scalar> {
        if x.ctx.parametric {
            return Err(Error::ContextMismatch);
        }
        let base = self.ctx.without_param();
        let target = x.ctx.join(&base)?;
        let x = x.embed(target)?;
        let (num, den) = self.num_den();
        let n = eval_poly(&num, &x)?;
        let dv = eval_poly(&den, &x)?;
        n.try_div(&dv)
    }

    /// Real value for drawing (positive square root for `d > 0`).
    pub fn to_f64(&self) -> Option<f64> {
        self.as_quad()?.to_f64(self.ctx.d())
    }
}

fn eval_poly(p: &Poly, x: &Scalar) -> Result<Scalar> {
    let ctx = x.ctx;
    let mut acc = ctx.zero();
    for c in p.coeffs().iter().rev() {
        if !c.is_rational() && ctx.disc.is_none() {
            return Err(Error::ContextMismatch);
        }
        acc = &(&acc * x) + &ctx.quad(c.clone());
    }
    Ok(acc)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.ctx.d();
        match &self.v {
            Value::Quad(q) => write!(f, "{}", q.fmt_with(d)),
            Value::Frac(r) if r.den.is_one() => write!(f, "{}", r.num.fmt_with(d, "t")),
            Value::Frac(r) => write!(f, "({})/({})", r.num.fmt_with(d, "t"), r.den.fmt_with(d, "t")),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, o: &Scalar) -> Scalar {
                match self.$try(o) {
                    Ok(v) => v,
                    Err(e) => panic!("scalar {}: {e}", stringify!($method)),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, o: Scalar) -> Scalar {
                (&self).$method(&o)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, o: &Scalar) -> Scalar {
                (&self).$method(o)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

/// Integer helper used across the crate for exact `Rat → i64` conversions.
pub fn rat_to_i64(r: &Rat) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    r.to_integer().try_into().ok()
}
