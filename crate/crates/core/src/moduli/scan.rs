use serde::Serialize;
use serde_json::{json, Value};

use super::{exceptional_values, ExceptionalReport, Family};
use crate::error::Result;
use crate::freeness::{is_free_with, Route, Verdict};
use crate::geometry::Arrangement;
use crate::lattice::{compute_lattice, Exponents};
use crate::scalar::Scalar;
use crate::search::{default_max_size, is_inductively_free, recursive_freeness_bounded, RecursiveVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub inductive: bool,
    pub recursive: bool,
    /// Size bound for the recursive search; `|A| + 3` when unset.
    pub max_size: Option<usize>,
    pub symbolic: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            inductive: true,
            recursive: true,
            max_size: None,
            symbolic: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub param: String,
    pub size: usize,
    pub degenerate: bool,
    pub exceptional: bool,
    pub generic_lattice: bool,
    pub profile: Vec<usize>,
    pub chi: [i64; 4],
    pub verdict: Verdict,
    pub route: Route,
    pub exponents: Option<Exponents>,
    pub inductively_free: Option<bool>,
    /// `"yes"`, `"no"` or `"unknown"`.
    pub recursive: Option<String>,
    /// Number of moves in the recursive chain, when one was found.
    pub chain_moves: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanTable {
    pub family: String,
    pub exceptional: ExceptionalReport,
    pub rows: Vec<ScanRow>,
    pub symbolic: Option<ScanRow>,
}

impl ScanTable {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "exceptional": self.exceptional.to_json(),
            "rows": self.rows,
            "symbolic": self.symbolic,
        })
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# {}\n\n", self.family);
        let values: Vec<String> = self.exceptional.values.iter().map(|v| v.value.to_string()).collect();
        s += &format!("Exceptional values: {{{}}}\n\n", values.join(", "));
        s += "| λ | lines | F | exponents | free | route | IF | recursive |\n";
        s += "|---|---|---|---|---|---|---|---|\n";
        let opt = |o: Option<bool>| o.map_or("-".to_string(), |b| if b { "yes" } else { "no" }.to_string());
        for r in self.rows.iter().chain(&self.symbolic) {
            let exps = r
                .exponents
                .map_or("-".to_string(), |e| format!("({}, {}, {})", e[0], e[1], e[2]));
            s += &format!(
                "| {} | {} | {:?} | {} | {} | {} | {} | {} |\n",
                r.param,
                r.size,
                r.profile,
                exps,
                if r.verdict == Verdict::Free { "yes" } else { "no" },
                serde_json::to_value(r.route).unwrap().as_str().unwrap_or(""),
                opt(r.inductively_free),
                r.recursive.as_deref().unwrap_or("-"),
            );
        }
        s
    }
}

fn classify(
    param: String,
    a: &Arrangement,
    degenerate: bool,
    exceptional: bool,
    generic_lattice: bool,
    opts: &ScanOptions,
) -> Result<ScanRow> {
    let lat = compute_lattice(a);
    let r = is_free_with(a, &lat);
    let searches = r.is_free() && !a.ctx().is_parametric();
    let inductively_free = (searches && opts.inductive).then(|| is_inductively_free(a).is_some());
    let mut recursive = None;
    let mut chain_moves = None;
    if searches && opts.recursive {
        let bound = opts.max_size.unwrap_or_else(|| default_max_size(a)).max(a.len());
        let v = recursive_freeness_bounded(a, bound)?;
        recursive = Some(
            match &v {
                RecursiveVerdict::Yes(c) => {
                    chain_moves = Some(c.moves.len());
                    "yes"
                }
                RecursiveVerdict::No { .. } => "no",
                RecursiveVerdict::Unknown { .. } => "unknown",
            }
            .to_string(),
        );
    }
    Ok(ScanRow {
        param,
        size: a.len(),
        degenerate,
        exceptional,
        generic_lattice,
        profile: lat.profile.clone(),
        chi: lat.char_poly().coeffs,
        verdict: r.verdict,
        route: r.route,
        exponents: r.exponents,
        inductively_free,
        recursive,
        chain_moves,
    })
}

/// Classifies the family at every sample and, optionally, with the parameter
/// left symbolic.
pub fn scan_family(f: &Family, samples: &[Scalar], opts: &ScanOptions) -> Result<ScanTable> {
    let exceptional = exceptional_values(f)?;
    let generic = compute_lattice(&f.symbolic()?);
    let mut rows = Vec::with_capacity(samples.len());
    for x in samples {
        let s = f.specialize(x)?;
        let same = !s.is_degenerate() && compute_lattice(&s.arrangement).same_labeled(&generic);
        rows.push(classify(
            x.to_string(),
            &s.arrangement,
            s.is_degenerate(),
            exceptional.is_exceptional(x),
            same,
            opts,
        )?);
    }
    let symbolic = if opts.symbolic {
        Some(classify("t".into(), &f.symbolic()?, false, false, true, opts)?)
    } else {
        None
    };
    Ok(ScanTable {
        family: f.name.clone(),
        exceptional,
        rows,
        symbolic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldCtx;

    #[test]
    fn braid_pencil_scan() {
        // x, y, z, x − y, y − z, x − t·z: the braid arrangement at t = 1
        let f = Family::from_int_polys(
            "braid",
            &[
                [&[1], &[], &[]],
                [&[], &[1], &[]],
                [&[], &[], &[1]],
                [&[1], &[-1], &[]],
                [&[], &[1], &[-1]],
                [&[1], &[], &[0, -1]],
            ],
        );
        let q = FieldCtx::RATIONAL;
        let t = scan_family(&f, &[q.int(1), q.int(5)], &ScanOptions::default()).unwrap();
        let one = &t.rows[0];
        assert!(one.exceptional && !one.generic_lattice);
        assert_eq!(one.exponents, Some([1, 2, 3]));
        assert_eq!(one.inductively_free, Some(true));
        assert_eq!(one.recursive.as_deref(), Some("yes"));
        let five = &t.rows[1];
        assert!(!five.exceptional && five.generic_lattice);
        assert_eq!(five.verdict, Verdict::NonFree);
        let sym = t.symbolic.as_ref().unwrap();
        assert_eq!(sym.verdict, five.verdict);
        assert_eq!(sym.profile, five.profile);
        assert!(t.to_markdown().contains("| 1 | 6 |"));
    }
}
