use num_traits::Zero;

use super::quad::{Quad, Rat};

/// Univariate polynomial over `Q(√d)`, coefficients in ascending degree.
/// The zero polynomial has no coefficients; there is never a trailing zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Quad>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Quad>) -> Self {
        while coeffs.last().is_some_and(Quad::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_rats(coeffs: &[Rat]) -> Self {
        Poly::new(coeffs.iter().cloned().map(Quad::from_rat).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Quad::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Quad::one())
    }

    pub fn constant(c: Quad) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Poly::new(vec![Quad::zero(), Quad::one()])
    }

    pub fn coeffs(&self) -> &[Quad] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Quad {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Quad> {
        self.coeffs.last()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(Quad::is_rational)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(Quad::neg).collect(),
        }
    }

    pub fn mul(&self, o: &Poly, d: i64) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Quad::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y, d));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Quad, d: i64) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x.mul(c, d)).collect())
    }

    pub fn pow(&self, e: usize, d: i64) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self, d);
        }
        acc
    }

    /// Euclidean division; panics if `o` is zero.
    pub fn div_rem(&self, o: &Poly, d: i64) -> (Poly, Poly) {
        let lead_inv = o
            .lead()
            .expect("polynomial division by zero")
            .inv(d)
            .expect("nonzero leading coefficient");
        let od = o.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= od {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Quad::zero(); r.len() - od];
        for k in (0..q.len()).rev() {
            let c = r[k + od].mul(&lead_inv, d);
            if c.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(y, d));
            }
            q[k] = c;
        }
        r.truncate(od);
        (Poly::new(q), Poly::new(r))
    }

    pub fn exact_div(&self, o: &Poly, d: i64) -> Option<Poly> {
        let (q, r) = self.div_rem(o, d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self, d: i64) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv(d).unwrap(), d),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Poly, d: i64) -> Poly {
        let mut a = self.monic(d);
        let mut b = o.monic(d);
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b, d);
            a = b;
            b = r.monic(d);
        }
        a
    }

    pub fn eval(&self, x: &Quad, d: i64) -> Quad {
        let mut acc = Quad::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x, d).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&super::quad::rat_int(i as i64)))
                .collect(),
        )
    }

    pub fn conj(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(Quad::conj).collect())
    }

    pub fn fmt_with(&self, d: i64, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.fmt_with(d);
            let cs = if c.b.is_zero() { cs } else { format!("({cs})") };
            terms.push(match i {
                0 => cs,
                _ => {
                    let mon = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if c.is_one() {
                        mon
                    } else if *c == Quad::one().neg() {
                        format!("-{mon}")
                    } else {
                        format!("{cs}*{mon}")
                    }
                }
            });
        }
        terms.join(" + ").replace("+ -", "- ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn division_identity() {
        let a = Poly::from_ints(&[-1, 0, 0, 2, 5]);
        let b = Poly::from_ints(&[3, 1, 2]);
        let (q, r) = a.div_rem(&b, 0);
        assert_eq!(q.mul(&b, 0).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = Poly::from_ints(&[-1, 1]); // t - 1
        let a = f.mul(&Poly::from_ints(&[2, 1]), 0);
        let b = f.mul(&Poly::from_ints(&[0, 0, 3]), 0);
        assert_eq!(a.gcd(&b, 0), f);
        assert_eq!(Poly::zero().gcd(&Poly::zero(), 0), Poly::zero());
    }

    #[test]
    fn gcd_over_quadratic_field() {
        // (t - √2)(t + 1) and (t - √2)(t - 3) over Q(√2)
        let s = Poly::new(vec![Quad::new(Rat::zero(), -Rat::one()), Quad::one()]);
        let a = s.mul(&Poly::from_ints(&[1, 1]), 2);
        let b = s.mul(&Poly::from_ints(&[-3, 1]), 2);
        assert_eq!(a.gcd(&b, 2), s);
    }
}
