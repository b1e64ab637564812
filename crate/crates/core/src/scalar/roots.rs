//! Factorization of rational univariate polynomials into linear factors,
//! irreducible quadratic factors with symbolic roots `c ± k√d`, and an
//! undecided residual.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{squarefree_split, Poly, Quad, Rat};

/// Monic irreducible quadratic `t² + c1·t + c0` with roots `center ± offset·√disc`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticFactor {
    #[serde(serialize_with = "ser_rats")]
    pub coeffs: [Rat; 3],
    pub disc: i64,
    #[serde(serialize_with = "ser_rat")]
    pub center: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub offset: Rat,
    pub multiplicity: usize,
}

impl QuadraticFactor {
    pub fn poly(&self) -> Poly {
        Poly::from_rats(&self.coeffs)
    }

    /// The two roots as elements of `Q(√disc)`, `+` root first.
    pub fn roots(&self) -> [Quad; 2] {
        [
            Quad::new(self.center.clone(), self.offset.clone()),
            Quad::new(self.center.clone(), -&self.offset),
        ]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RootReport {
    #[serde(serialize_with = "ser_rat")]
    pub lead: Rat,
    /// Rational roots with multiplicity, ascending.
    #[serde(serialize_with = "ser_rat_mults")]
    pub linear: Vec<(Rat, usize)>,
    pub quadratic: Vec<QuadraticFactor>,
    /// Monic factors of degree ≥ 3 (or whose quadratic split was not
    /// attempted) with multiplicity.
    #[serde(serialize_with = "ser_residual")]
    pub residual: Vec<(Poly, usize)>,
}

impl RootReport {
    /// Product of all emitted factors including the leading unit.
    pub fn product(&self) -> Poly {
        let mut acc = Poly::constant(Quad::from_rat(self.lead.clone()));
        for (r, m) in &self.linear {
            let f = Poly::from_rats(&[-r, Rat::one()]);
            acc = acc.mul(&f.pow(*m, 0), 0);
        }
        for q in &self.quadratic {
            acc = acc.mul(&q.poly().pow(q.multiplicity, 0), 0);
        }
        for (p, m) in &self.residual {
            acc = acc.mul(&p.pow(*m, 0), 0);
        }
        acc
    }
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_rats<S: serde::Serializer>(r: &[Rat; 3], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(|x| x.to_string()))
}

fn ser_rat_mults<S: serde::Serializer>(r: &[(Rat, usize)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(|(x, m)| (x.to_string(), *m)))
}

fn ser_residual<S: serde::Serializer>(r: &[(Poly, usize)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(|(p, m)| (p.fmt_with(0, "t"), *m)))
}

/// Splits a nonzero polynomial with rational coefficients. Returns `None`
/// for the zero polynomial or irrational coefficients.
pub fn roots_low_degree(p: &Poly) -> Option<RootReport> {
    if p.is_zero() || !p.is_rational() {
        return None;
    }
    let mut report = RootReport {
        lead: p.lead().unwrap().a.clone(),
        ..Default::default()
    };
    for (factor, mult) in squarefree_decomposition(&p.monic(0)) {
        let (roots, rest) = split_rational_roots(&factor);
        report.linear.extend(roots.into_iter().map(|r| (r, mult)));
        let (quads, rest) = split_quadratics(&rest);
        for q in quads {
            report.quadratic.push(quadratic_factor(&q, mult));
        }
        if rest.degree().unwrap_or(0) > 0 {
            report.residual.push((rest, mult));
        }
    }
    report.linear.sort();
    report.quadratic.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
    Some(report)
}

/// Yun's algorithm over Q; input monic, output monic squarefree factors.
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let mut a = f.gcd(&df, 0);
    let mut b = f.exact_div(&a, 0).unwrap();
    let mut c = df.exact_div(&a, 0).unwrap();
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    loop {
        a = b.gcd(&d, 0);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a, 0).unwrap();
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = d.exact_div(&a, 0).unwrap();
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Clears denominators and content: a primitive integer polynomial with
/// positive leading coefficient.
fn primitive_integer(f: &Poly) -> Vec<BigInt> {
    let l = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.a.denom()));
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (&c.a * Rat::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().unwrap().is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

const FACTOR_LIMIT: u64 = 1 << 40;

/// Positive divisors of `n ≠ 0`, or `None` if `n` is too large to factor by
/// trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut m = n.abs();
    if m > BigInt::from(FACTOR_LIMIT) {
        return None;
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

fn split_rational_roots(f: &Poly) -> (Vec<Rat>, Poly) {
    let mut rest = f.clone();
    let mut roots = Vec::new();
    if rest.coeff(0).is_zero() {
        roots.push(Rat::zero());
        rest = rest.exact_div(&Poly::t(), 0).unwrap();
    }
    if rest.degree().unwrap_or(0) == 0 {
        return (roots, rest);
    }
    let g = primitive_integer(&rest);
    let (Some(ps), Some(qs)) = (divisors(&g[0]), divisors(g.last().unwrap())) else {
        return (roots, rest);
    };
    for p in &ps {
        for q in &qs {
            if !p.gcd(q).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let r = Rat::new(p * sign, q.clone());
                let lin = Poly::from_rats(&[-&r, Rat::one()]);
                if rest.degree().unwrap_or(0) == 0 {
                    break;
                }
                if let Some(qt) = rest.exact_div(&lin, 0) {
                    rest = qt;
                    roots.push(r);
                }
            }
        }
    }
    (roots, rest)
}

const KRONECKER_LIMIT: usize = 2_000_000;

/// Extracts irreducible quadratic factors from a squarefree polynomial with
/// no rational roots. Degree-3 remainders are irreducible and returned as is.
fn split_quadratics(f: &Poly) -> (Vec<Poly>, Poly) {
    let mut rest = f.clone();
    let mut out = Vec::new();
    loop {
        match rest.degree() {
            Some(2) => {
                out.push(rest);
                return (out, Poly::one());
            }
            Some(n) if n >= 4 => match kronecker_quadratic(&rest) {
                Some(q) => {
                    rest = rest.exact_div(&q, 0).unwrap();
                    out.push(q);
                }
                None => return (out, rest),
            },
            _ => return (out, rest),
        }
    }
}

fn kronecker_quadratic(f: &Poly) -> Option<Poly> {
    let g = Poly::from_rats(
        &primitive_integer(f)
            .into_iter()
            .map(Rat::from_integer)
            .collect::<Vec<_>>(),
    );
    let xs = [0i64, 1, -1];
    let vals: Vec<BigInt> = xs
        .iter()
        .map(|&x| g.eval(&Quad::from_int(x), 0).a.to_integer())
        .collect();
    let divs: Vec<Vec<BigInt>> = vals.iter().map(divisors).collect::<Option<_>>()?;
    let combos = divs.iter().map(|d| 2 * d.len()).product::<usize>() / 2;
    if combos > KRONECKER_LIMIT {
        return None;
    }
    for e0 in &divs[0] {
        for d1 in &divs[1] {
            for s1 in [1, -1] {
                let e1 = d1 * s1;
                for d2 in &divs[2] {
                    for s2 in [1, -1] {
                        let e2 = d2 * s2;
                        // h(0)=e0, h(1)=e1, h(-1)=e2 → h = a t² + b t + c
                        let c = e0.clone();
                        let two_a: BigInt = &e1 + &e2 - &c * 2;
                        let two_b: BigInt = &e1 - &e2;
                        if two_a.is_zero() || two_a.is_odd() || two_b.is_odd() {
                            continue;
                        }
                        let h = Poly::from_rats(&[
                            Rat::from_integer(c),
                            Rat::from_integer(two_b / 2),
                            Rat::from_integer(two_a / 2),
                        ]);
                        if g.exact_div(&h, 0).is_some() {
                            return Some(h.monic(0));
                        }
                    }
                }
            }
        }
    }
    None
}

fn quadratic_factor(q: &Poly, multiplicity: usize) -> QuadraticFactor {
    let c0 = q.coeff(0).a;
    let c1 = q.coeff(1).a;
    let two = Rat::from_integer(BigInt::from(2));
    let four = Rat::from_integer(BigInt::from(4));
    let delta = &c1 * &c1 - &c0 * &four;
    // √(r/s) = √(r·s)/s = k√d / s
    let (k, d) = squarefree_split(&(delta.numer() * delta.denom()));
    let d: i64 = d.try_into().expect("small discriminant");
    QuadraticFactor {
        coeffs: [c0, c1.clone(), Rat::one()],
        disc: d,
        center: -&c1 / &two,
        offset: Rat::new(k, delta.denom() * BigInt::from(2)),
        multiplicity,
    }
}
