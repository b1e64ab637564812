//! Freeness certification for rank-3 arrangements.
//!
//! [`is_free`] runs three stages in order: the factorization gate on `χ(A,t)`,
//! the pivot-line test (a line meeting the others in more than `min(a, b)`
//! points decides freeness by itself), and otherwise the comparison of the
//! Ziegler restriction's exponents with the product `ab`.

mod binary;
mod linalg;

pub use binary::{multi_exponents, saito_verify_rank2, BinForm, Derivation2, MultiArr2, MultiExponents};
pub use linalg::kernel;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Arrangement;
use crate::lattice::{compute_lattice, CharPoly, Exponents, LatticeData};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Free,
    NonFree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// The empty arrangement, free by convention.
    Empty,
    ChiGate,
    Abt,
    Yoshinaga,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    None,
    /// `χ` has no factorization over the nonnegative integers.
    Chi {
        coeffs: [i64; 4],
    },
    /// A line with `n_{A,H} > min(a, b)`.
    Pivot {
        line: usize,
        n: usize,
    },
    /// Exponents of the Ziegler restriction onto `line`, with a derivation
    /// of the lower degree.
    Restriction {
        line: usize,
        d1: usize,
        d2: usize,
        ab: i64,
        derivation: Derivation2,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessResult {
    pub verdict: Verdict,
    pub route: Route,
    pub witness: Witness,
    pub exponents: Option<Exponents>,
    /// Set when `d₁d₂ = ab` although `χ` has no integer factorization.
    pub anomaly: bool,
}

impl FreenessResult {
    pub fn is_free(&self) -> bool {
        self.verdict == Verdict::Free
    }
}

/// A basis `(e₁, e₂)` of the plane `α_H = 0`, chosen from the normalized
/// coefficients of `H`.
fn kernel_basis(c: &[Scalar; 3]) -> [[Scalar; 3]; 2] {
    let ctx = c[0].ctx();
    let (o, z) = (ctx.one(), ctx.zero());
    if !c[0].is_zero() {
        [[-&c[1], o.clone(), z.clone()], [-&c[2], z, o]]
    } else if !c[1].is_zero() {
        [[o.clone(), z.clone(), z.clone()], [z, -&c[2], o]]
    } else {
        [[o.clone(), z.clone(), z.clone()], [z, o, ctx.zero()]]
    }
}

fn dot(a: &[Scalar; 3], b: &[Scalar; 3]) -> Scalar {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

/// The multiarrangement induced on line `h`: each point of `h` met by other
/// lines becomes a binary form whose multiplicity is the number of those
/// lines through it.
pub fn ziegler_restriction(a: &Arrangement, h: usize) -> Result<MultiArr2> {
    let basis = kernel_basis(a.line(h)?.coeffs());
    let entries = a
        .lines()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != h)
        .map(|(_, l)| ([dot(l.coeffs(), &basis[0]), dot(l.coeffs(), &basis[1])], 1))
        .collect();
    MultiArr2::new(a.ctx(), entries)
}

/// The pivot-line test; `None` when no line has more than `min(a, b)` points
/// or the roots of `χ` are not real.
pub fn abt_test(lat: &LatticeData, chi: &CharPoly) -> Option<FreenessResult> {
    let (line, n) = lat
        .lines
        .iter()
        .enumerate()
        .map(|(i, s)| (i, s.n))
        .max_by(|x, y| x.1.cmp(&y.1).then(y.0.cmp(&x.0)))?;
    if !chi.exceeds_min_root(n as i64)? {
        return None;
    }
    let free = matches!(chi.factored, Some([_, a, b]) if n as u64 == a + 1 || n as u64 == b + 1);
    Some(FreenessResult {
        verdict: if free { Verdict::Free } else { Verdict::NonFree },
        route: Route::Abt,
        witness: Witness::Pivot { line, n },
        exponents: if free { chi.factored } else { None },
        anomaly: false,
    })
}

/// Compares the exponents of the Ziegler restriction onto line `h` with the
/// constant term of the quadratic cofactor of `χ`.
pub fn yoshinaga_test(a: &Arrangement, chi: &CharPoly, h: usize) -> Result<FreenessResult> {
    let m = ziegler_restriction(a, h)?;
    let e = multi_exponents(&m);
    let (d1, d2) = e.exponents;
    let ab = chi.root_product();
    let matches = (d1 * d2) as i64 == ab;
    let free = matches && chi.factored.is_some();
    Ok(FreenessResult {
        verdict: if free { Verdict::Free } else { Verdict::NonFree },
        route: Route::Yoshinaga,
        witness: Witness::Restriction {
            line: h,
            d1,
            d2,
            ab,
            derivation: e.witness,
        },
        exponents: if free { chi.factored } else { None },
        anomaly: matches && chi.factored.is_none(),
    })
}

/// The line maximizing `n_{A,H}`, ties broken by the canonical line order.
pub fn default_restriction_line(a: &Arrangement, lat: &LatticeData) -> usize {
    let lines = a.lines();
    (0..a.len())
        .max_by(|&i, &j| lat.n(i).cmp(&lat.n(j)).then_with(|| lines[j].cmp(&lines[i])))
        .expect("nonempty arrangement")
}

pub fn is_free(a: &Arrangement) -> FreenessResult {
    is_free_with(a, &compute_lattice(a))
}

/// [`is_free`] with a precomputed lattice of `a`.
pub fn is_free_with(a: &Arrangement, lat: &LatticeData) -> FreenessResult {
    let chi = lat.char_poly();
    if a.is_empty() {
        return FreenessResult {
            verdict: Verdict::Free,
            route: Route::Empty,
            witness: Witness::None,
            exponents: Some([0, 0, 0]),
            anomaly: false,
        };
    }
    if chi.factored.is_none() {
        return FreenessResult {
            verdict: Verdict::NonFree,
            route: Route::ChiGate,
            witness: Witness::Chi { coeffs: chi.coeffs },
            exponents: None,
            anomaly: false,
        };
    }
    if let Some(r) = abt_test(lat, &chi) {
        return r;
    }
    let h = default_restriction_line(a, lat);
    yoshinaga_test(a, &chi, h).expect("valid restriction line")
}

/// Whether a free arrangement has no line with more than `min(a, b)` points.
pub fn s_membership(lat: &LatticeData, r: &FreenessResult) -> Result<bool> {
    match (r.verdict, r.exponents) {
        (Verdict::Free, Some([_, a, _])) => Ok(lat.max_n() as u64 <= a),
        _ => Err(Error::NotFree),
    }
}
