use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Element `a + b·√d` of a quadratic field. The discriminant is not stored;
/// every operation that depends on it takes `d` explicitly (`d = 0` means the
/// ground field is Q and `b` must be zero).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quad {
    pub a: Rat,
    pub b: Rat,
}

impl Quad {
    pub fn new(a: Rat, b: Rat) -> Self {
        Quad { a, b }
    }

    pub fn from_rat(a: Rat) -> Self {
        Quad { a, b: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Quad::from_rat(rat_int(n))
    }

    pub fn zero() -> Self {
        Quad::default()
    }

    pub fn one() -> Self {
        Quad::from_rat(Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, o: &Quad) -> Quad {
        Quad {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    pub fn sub(&self, o: &Quad) -> Quad {
        Quad {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    pub fn neg(&self) -> Quad {
        Quad {
            a: -&self.a,
            b: -&self.b,
        }
    }

    pub fn mul(&self, o: &Quad, d: i64) -> Quad {
        if self.b.is_zero() {
            if o.b.is_zero() {
                return Quad::from_rat(&self.a * &o.a);
            }
            return Quad {
                a: &self.a * &o.a,
                b: &self.a * &o.b,
            };
        }
        if o.b.is_zero() {
            return Quad {
                a: &self.a * &o.a,
                b: &self.b * &o.a,
            };
        }
        let bb = &self.b * &o.b;
        Quad {
            a: &self.a * &o.a + bb * rat_int(d),
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn scale(&self, r: &Rat) -> Quad {
        Quad {
            a: &self.a * r,
            b: &self.b * r,
        }
    }

    /// Field norm `a² − d·b²`; nonzero for nonzero elements since `d` is not a
    /// rational square.
    pub fn norm(&self, d: i64) -> Rat {
        &self.a * &self.a - &self.b * &self.b * rat_int(d)
    }

    pub fn inv(&self, d: i64) -> Option<Quad> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(Quad::from_rat(self.a.recip()));
        }
        let n = self.norm(d);
        Some(Quad {
            a: &self.a / &n,
            b: -&self.b / &n,
        })
    }

    pub fn conj(&self) -> Quad {
        Quad {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Real value for drawing, using the positive square root. `None` for
    /// imaginary quadratic fields with a nonzero irrational part.
    pub fn to_f64(&self, d: i64) -> Option<f64> {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64()?;
        if self.b.is_zero() {
            return Some(a);
        }
        if d < 0 {
            return None;
        }
        Some(a + self.b.to_f64()? * (d as f64).sqrt())
    }

    pub fn fmt_with(&self, d: i64) -> String {
        let root = format!("√{d}");
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => self.a.to_string(),
            (true, false) => format!("{}{}", coeff_str(&self.b), root),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                format!("{}{}{}{}", self.a, sign, coeff_str(&self.b.abs()), root)
            }
        }
    }
}

fn coeff_str(r: &Rat) -> String {
    if r.is_one() {
        String::new()
    } else if *r == -Rat::one() {
        "-".to_string()
    } else {
        format!("{r}·")
    }
}

/// Splits `n = k²·s` with `s` squarefree (sign kept on `s`).
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut k = BigInt::one();
    let mut s = BigInt::one();
    let mut m = n.abs();
    let mut p = BigInt::from(2u32);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            k *= &p;
        }
        if e % 2 == 1 {
            s *= &p;
        }
        p += 1;
    }
    s *= m;
    if n.is_negative() {
        s = -s;
    }
    (k, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_relation() {
        // ζ = (1+√5)/2 satisfies ζ² − ζ − 1 = 0
        let z = Quad::new(rat(1, 2), rat(1, 2));
        let r = z.mul(&z, 5).sub(&z).sub(&Quad::one());
        assert!(r.is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let x = Quad::new(rat(3, 7), rat(-2, 5));
        let y = x.inv(-3).unwrap();
        assert!(x.mul(&y, -3).is_one());
        assert!(Quad::zero().inv(2).is_none());
    }

    #[test]
    fn squarefree() {
        let (k, s) = squarefree_split(&BigInt::from(12));
        assert_eq!((k, s), (BigInt::from(2), BigInt::from(3)));
        let (k, s) = squarefree_split(&BigInt::from(-4));
        assert_eq!((k, s), (BigInt::from(2), BigInt::from(-1)));
        let (k, s) = squarefree_split(&BigInt::from(8));
        assert_eq!((k, s), (BigInt::from(2), BigInt::from(2)));
    }
}
