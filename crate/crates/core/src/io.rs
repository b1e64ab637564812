//! JSON encodings of scalars and arrangements, and a small parser for
//! scalar expressions such as `(1+sqrt(5))/2` used on the command line.
//!
//! Scalars are encoded as `"p/q"` when rational, `{"a": "p/q", "b": "p/q"}`
//! for `a + b√d`, and `{"num": [...], "den": [...]}` (ascending
//! coefficients) when they involve `t`. On input any string that is not a
//! plain rational is parsed as an expression in the file's field. An arrangement file is
//! `{"field": {"sqrt": d, "param": bool}, "lines": [[s, s, s], ...]}`, with
//! `"affine": true` meaning two coefficients plus a constant per line and an
//! appended line at infinity.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::geometry::{Arrangement, Line, Point};
use crate::scalar::{squarefree_split, FieldCtx, Poly, Quad, Rat, Scalar};

fn quad_to_json(q: &Quad) -> Value {
    if q.b.is_zero() {
        Value::String(q.a.to_string())
    } else {
        json!({"a": q.a.to_string(), "b": q.b.to_string()})
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    if let Some(q) = s.as_quad() {
        if !s.ctx().is_parametric() {
            return quad_to_json(q);
        }
    }
    let (num, den) = s.num_den();
    let enc = |p: &Poly| Value::Array(p.coeffs().iter().map(quad_to_json).collect());
    json!({"num": enc(&num), "den": enc(&den)})
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        scalar_to_json(self).serialize(ser)
    }
}

fn serialize_triple<S: Serializer>(v: &[Scalar; 3], ser: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = ser.serialize_seq(Some(3))?;
    for s in v {
        seq.serialize_element(s)?;
    }
    seq.end()
}

impl Serialize for Line {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_triple(self.coeffs(), ser)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_triple(self.coords(), ser)
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rat::from_integer(i.into()))
            .ok_or_else(|| Error::Parse(format!("non-integer JSON number {n}; use \"p/q\""))),
        _ => Err(Error::Parse(format!("expected a rational, found {v}"))),
    }
}

fn quad_from_json(ctx: FieldCtx, v: &Value) -> Result<Quad> {
    let q = match v {
        Value::Object(m) if m.contains_key("a") || m.contains_key("b") => {
            let part = |k: &str| m.get(k).map(rat_from_json).unwrap_or_else(|| Ok(Rat::zero()));
            Quad::new(part("a")?, part("b")?)
        }
        _ => Quad::from_rat(rat_from_json(v)?),
    };
    if !q.b.is_zero() && ctx.disc().is_none() {
        return Err(Error::ContextMismatch);
    }
    Ok(q)
}

pub fn scalar_from_json(ctx: FieldCtx, v: &Value) -> Result<Scalar> {
    if let Value::Object(m) = v {
        if m.contains_key("num") {
            if !ctx.is_parametric() {
                return Err(Error::ContextMismatch);
            }
            let poly = |key: &str| -> Result<Poly> {
                match m.get(key) {
                    None => Ok(Poly::one()),
                    Some(Value::Array(cs)) => Ok(Poly::new(
                        cs.iter().map(|c| quad_from_json(ctx, c)).collect::<Result<_>>()?,
                    )),
                    Some(other) => Err(Error::Parse(format!("expected coefficient list, found {other}"))),
                }
            };
            return ctx.ratfn(poly("num")?, poly("den")?);
        }
    }
    // strings that are not plain rationals are read as expressions, e.g. "(1+sqrt(5))/2"
    if let Value::String(text) = v {
        if parse_rat(text).is_err() {
            return parse_scalar_in(text, ctx);
        }
    }
    Ok(ctx.quad(quad_from_json(ctx, v)?))
}

pub fn field_to_json(ctx: FieldCtx) -> Value {
    let mut m = Map::new();
    if let Some(d) = ctx.disc() {
        m.insert("sqrt".into(), json!(d));
    }
    m.insert("param".into(), json!(ctx.is_parametric()));
    Value::Object(m)
}

pub fn field_from_json(v: &Value) -> Result<FieldCtx> {
    let disc = match v.get("sqrt") {
        None | Some(Value::Null) => None,
        Some(d) => Some(
            d.as_i64()
                .ok_or_else(|| Error::Parse("field.sqrt must be an integer".into()))?,
        ),
    };
    let param = v.get("param").and_then(Value::as_bool).unwrap_or(false);
    let base = match disc {
        None => FieldCtx::RATIONAL,
        Some(d) => FieldCtx::quadratic(d)?,
    };
    Ok(if param { base.with_param() } else { base })
}

pub fn arrangement_to_json(a: &Arrangement) -> Value {
    json!({
        "field": field_to_json(a.ctx()),
        "lines": a.lines().iter().map(|l| l.coeffs().iter().map(scalar_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn arrangement_from_json(v: &Value) -> Result<Arrangement> {
    let ctx = field_from_json(v.get("field").unwrap_or(&Value::Null))?;
    let lines = v
        .get("lines")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing `lines` array".into()))?;
    let triples = lines
        .iter()
        .map(|l| {
            let cs = l
                .as_array()
                .filter(|c| c.len() == 3)
                .ok_or_else(|| Error::Parse(format!("each line needs three coefficients, found {l}")))?;
            let s = cs
                .iter()
                .map(|c| scalar_from_json(ctx, c))
                .collect::<Result<Vec<_>>>()?;
            Ok([s[0].clone(), s[1].clone(), s[2].clone()])
        })
        .collect::<Result<Vec<_>>>()?;
    if v.get("affine").and_then(Value::as_bool).unwrap_or(false) {
        Arrangement::cone(ctx, &triples)
    } else {
        Arrangement::new(ctx, triples.into_iter().map(Line::new).collect::<Result<_>>()?)
    }
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    arrangement_from_json(&v)
}

/// Parses a scalar expression built from integers, `sqrt(n)`, `i`, `t`,
/// parentheses and `+ - * /`. The field is the smallest one containing every
/// square root used (at most one quadratic extension), made parametric if `t`
/// occurs.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let toks = tokenize(text)?;
    let mut disc: Option<i64> = None;
    let mut param = false;
    for (i, t) in toks.iter().enumerate() {
        match t {
            Tok::Ident(s) if s == "t" => param = true,
            Tok::Ident(s) if s == "i" => merge_disc(&mut disc, -1)?,
            Tok::Ident(s) if s == "sqrt" => {
                if let (Some(Tok::LParen), Some(Tok::Num(n)), Some(Tok::RParen)) =
                    (toks.get(i + 1), toks.get(i + 2), toks.get(i + 3))
                {
                    let (_, s) = squarefree_split(n);
                    if !s.is_one() {
                        let s: i64 = s.try_into().map_err(|_| Error::Parse("radicand too large".into()))?;
                        merge_disc(&mut disc, s)?;
                    }
                } else if let (Some(Tok::LParen), Some(Tok::Minus), Some(Tok::Num(n)), Some(Tok::RParen)) =
                    (toks.get(i + 1), toks.get(i + 2), toks.get(i + 3), toks.get(i + 4))
                {
                    let (_, s) = squarefree_split(&-n);
                    let s: i64 = s.try_into().map_err(|_| Error::Parse("radicand too large".into()))?;
                    merge_disc(&mut disc, s)?;
                } else {
                    return Err(Error::Parse("sqrt takes an integer literal".into()));
                }
            }
            _ => {}
        }
    }
    let base = match disc {
        None => FieldCtx::RATIONAL,
        Some(d) => FieldCtx::quadratic(d)?,
    };
    parse_scalar_in(text, if param { base.with_param() } else { base })
}

/// Parses a scalar expression in a given field.
pub fn parse_scalar_in(text: &str, ctx: FieldCtx) -> Result<Scalar> {
    let toks = tokenize(text)?;
    let mut p = ExprParser { toks, pos: 0, ctx };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{text}`")));
    }
    Ok(v)
}

fn merge_disc(disc: &mut Option<i64>, d: i64) -> Result<()> {
    match *disc {
        Some(e) if e != d => Err(Error::Parse(format!("two different square roots √{e} and √{d}"))),
        _ => {
            *disc = Some(d);
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Tok::Plus),
            '-' | '−' => out.push(Tok::Minus),
            '*' | '·' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            '0'..='9' => {
                let start = i;
                while i + 1 < cs.len() && cs[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = cs[start..=i].iter().collect();
                out.push(Tok::Num(lit.parse().unwrap()));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i + 1 < cs.len() && cs[i + 1].is_ascii_alphabetic() {
                    i += 1;
                }
                let id: String = cs[start..=i].iter().collect();
                if !matches!(id.as_str(), "sqrt" | "i" | "t") {
                    return Err(Error::Parse(format!("unknown identifier `{id}`")));
                }
                out.push(Tok::Ident(id));
            }
            _ => return Err(Error::Parse(format!("unexpected character `{c}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct ExprParser {
    toks: Vec<Tok>,
    pos: usize,
    ctx: FieldCtx,
}

impl ExprParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {t:?}")))
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat(&Tok::Minus) {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.try_mul(&self.factor()?)?;
            } else if self.eat(&Tok::Slash) {
                acc = acc.try_div(&self.factor()?)?;
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::LParen)) {
                // implicit product, as in `2sqrt(5)` or `3t`
                acc = acc.try_mul(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar> {
        if self.eat(&Tok::Minus) {
            return Ok(-&self.factor()?);
        }
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(self.ctx.from_rat(Rat::from_integer(n))),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(v)
            }
            Tok::Ident(id) => match id.as_str() {
                "t" => self.ctx.t(),
                "i" => self.sqrt(&BigInt::from(-1)),
                _ => {
                    self.expect(&Tok::LParen)?;
                    let neg = self.eat(&Tok::Minus);
                    let Some(Tok::Num(n)) = self.peek().cloned() else {
                        return Err(Error::Parse("sqrt takes an integer literal".into()));
                    };
                    self.pos += 1;
                    self.expect(&Tok::RParen)?;
                    self.sqrt(&if neg { -n } else { n })
                }
            },
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn sqrt(&self, n: &BigInt) -> Result<Scalar> {
        let (k, s) = squarefree_split(n);
        let k = self.ctx.from_rat(Rat::from_integer(k));
        if s.is_one() {
            return Ok(k);
        }
        if self.ctx.disc().map(BigInt::from) != Some(s.clone()) {
            return Err(Error::ContextMismatch);
        }
        Ok(&k * &self.ctx.sqrt_d()?)
    }
}
