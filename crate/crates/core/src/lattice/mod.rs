//! Rank-2 part of the intersection lattice: the multiple points of an
//! arrangement together with their incidences, multiplicity profiles and the
//! characteristic polynomial.

mod aut;

pub use aut::{find_isomorphism, lattice_automorphisms, lattice_isomorphic, preserves, AutGroup};

use serde::Serialize;

use crate::geometry::{incident, meet, Arrangement, Point};

/// Exponents `(1, a, b)` with `a ≤ b`; the empty arrangement has `(0, 0, 0)`.
pub type Exponents = [u64; 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatPoint {
    #[serde(skip)]
    pub point: Point,
    pub incident: Vec<usize>,
}

impl FlatPoint {
    /// `μ_P = |A_P| − 1`.
    pub fn mu(&self) -> usize {
        self.incident.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineStats {
    /// Number of lattice points on the line.
    pub n: usize,
    /// Sum of `μ_P` over the lattice points on the line.
    pub mu: usize,
    /// `F_H`: entry `i − 1` counts points on `H` with `μ_P = i`.
    pub profile: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeData {
    pub n_lines: usize,
    pub points: Vec<FlatPoint>,
    pub mu_total: usize,
    /// `F(A)`: entry `i − 1` counts points with `μ_P = i`, trimmed.
    pub profile: Vec<usize>,
    pub lines: Vec<LineStats>,
    #[serde(skip)]
    pair: Vec<usize>,
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn profile_of(mus: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut f = Vec::new();
    for m in mus {
        if f.len() < m {
            f.resize(m, 0);
        }
        f[m - 1] += 1;
    }
    trim(f)
}

/// Compares two profiles with implicit zero padding.
pub fn profile_eq(a: &[usize], b: &[usize]) -> bool {
    let n = a.len().max(b.len());
    (0..n).all(|i| a.get(i).unwrap_or(&0) == b.get(i).unwrap_or(&0))
}

pub fn compute_lattice(a: &Arrangement) -> LatticeData {
    let n = a.len();
    let lines = a.lines();
    let mut pair = vec![usize::MAX; n * n];
    let mut raw: Vec<FlatPoint> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if pair[i * n + j] != usize::MAX {
                continue;
            }
            let p = meet(&lines[i], &lines[j]).expect("arrangement lines are distinct");
            let inc: Vec<usize> = (0..n)
                .filter(|&k| k == i || k == j || incident(&p, &lines[k]))
                .collect();
            let id = raw.len();
            for (x, &u) in inc.iter().enumerate() {
                for &v in &inc[x + 1..] {
                    pair[u * n + v] = id;
                    pair[v * n + u] = id;
                }
            }
            raw.push(FlatPoint {
                point: p,
                incident: inc,
            });
        }
    }

    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&x, &y| raw[x].point.cmp(&raw[y].point));
    let mut rank = vec![0; raw.len()];
    for (r, &o) in order.iter().enumerate() {
        rank[o] = r;
    }
    for e in pair.iter_mut().filter(|e| **e != usize::MAX) {
        *e = rank[*e];
    }
    let mut slots: Vec<Option<FlatPoint>> = raw.into_iter().map(Some).collect();
    let points: Vec<FlatPoint> = order.iter().map(|&o| slots[o].take().unwrap()).collect();

    let mu_total = points.iter().map(FlatPoint::mu).sum();
    let profile = profile_of(points.iter().map(FlatPoint::mu));
    let mut on_line: Vec<Vec<usize>> = vec![Vec::new(); n];
    for p in &points {
        for &h in &p.incident {
            on_line[h].push(p.mu());
        }
    }
    let lines = on_line
        .into_iter()
        .map(|mus| LineStats {
            n: mus.len(),
            mu: mus.iter().sum(),
            profile: profile_of(mus.into_iter()),
        })
        .collect();

    LatticeData {
        n_lines: n,
        points,
        mu_total,
        profile,
        lines,
        pair,
    }
}

impl LatticeData {
    /// Index of the lattice point where lines `i ≠ j` meet.
    pub fn flat_of(&self, i: usize, j: usize) -> usize {
        assert_ne!(i, j);
        self.pair[i * self.n_lines + j]
    }

    pub fn n(&self, h: usize) -> usize {
        self.lines[h].n
    }

    pub fn max_n(&self) -> usize {
        self.lines.iter().map(|l| l.n).max().unwrap_or(0)
    }

    /// Indices of the lattice points lying on line `h`.
    pub fn points_on(&self, h: usize) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&p| self.points[p].incident.contains(&h))
            .collect()
    }

    /// The incident-set system, sorted, as an order-independent fingerprint
    /// of the labeled lattice.
    pub fn incidence_sets(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.points.iter().map(|p| p.incident.clone()).collect();
        v.sort();
        v
    }

    /// Same labeled lattice (identical incident-set systems).
    pub fn same_labeled(&self, other: &LatticeData) -> bool {
        self.n_lines == other.n_lines && self.incidence_sets() == other.incidence_sets()
    }

    pub fn char_poly(&self) -> CharPoly {
        CharPoly::from_counts(self.n_lines as i64, self.mu_total as i64)
    }
}

/// `χ(A, t) = t³ + c₂t² + c₁t + c₀` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    /// Ascending coefficients `[c₀, c₁, c₂, 1]`.
    pub coeffs: [i64; 4],
    pub factored: Option<Exponents>,
}

impl CharPoly {
    /// `(t − 1)(t² − (n − 1)t + μ − n + 1)`, or `t³` for the empty arrangement.
    pub fn from_counts(n: i64, mu: i64) -> CharPoly {
        let coeffs = if n == 0 {
            [0, 0, 0, 1]
        } else {
            [-(mu - n + 1), mu, -n, 1]
        };
        let mut c = CharPoly { coeffs, factored: None };
        c.factored = exponents_from_charpoly(&c);
        c
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// Sum `a + b` of the roots of the quadratic cofactor.
    pub fn root_sum(&self) -> i64 {
        -self.coeffs[2] - 1
    }

    /// Product `ab` of the roots of the quadratic cofactor.
    pub fn root_product(&self) -> i64 {
        -self.coeffs[0]
    }

    /// Discriminant of the quadratic cofactor; the roots are real iff it is
    /// nonnegative.
    pub fn discriminant(&self) -> i64 {
        let s = self.root_sum();
        s * s - 4 * self.root_product()
    }

    /// Lower root `min(a, b)` when real, as an exact comparison helper:
    /// returns whether `x > min(a, b)`.
    pub fn exceeds_min_root(&self, x: i64) -> Option<bool> {
        let disc = self.discriminant();
        if disc < 0 {
            return None;
        }
        // x > (s − √disc)/2  ⟺  √disc > s − 2x
        let rhs = self.root_sum() - 2 * x;
        Some(rhs < 0 || disc > rhs * rhs)
    }

    pub fn to_string_factored(&self) -> String {
        match self.factored {
            Some([0, 0, 0]) => "t^3".into(),
            Some([_, a, b]) => format!("(t-1)(t-{a})(t-{b})"),
            None => {
                let s = self.root_sum();
                let p = self.root_product();
                format!("(t-1)(t^2-{s}t+{p})").replace("+-", "-").replace("--", "+")
            }
        }
    }
}

fn isqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt() as i64;
    (r.saturating_sub(1)..=r + 1).find(|&x| x >= 0 && x * x == n)
}

/// Exponents `(1, a, b)` if `χ` splits as `(t − 1)(t − a)(t − b)` with
/// nonnegative integers `a ≤ b`.
pub fn exponents_from_charpoly(c: &CharPoly) -> Option<Exponents> {
    if c.coeffs == [0, 0, 0, 1] {
        return Some([0, 0, 0]);
    }
    if c.eval(1) != 0 {
        return None;
    }
    let s = c.root_sum();
    let r = isqrt(c.discriminant())?;
    if (s + r) % 2 != 0 {
        return None;
    }
    let (a, b) = ((s - r) / 2, (s + r) / 2);
    (a >= 0).then_some([1, a as u64, b as u64])
}

pub fn char_poly(a: &Arrangement) -> CharPoly {
    compute_lattice(a).char_poly()
}
