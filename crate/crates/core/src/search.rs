//! Free one-line moves, inductive freeness and bounded search for
//! recursive-freeness chains.
//!
//! Candidate additions to a free arrangement `A` with exponents `(1, d₁, d₂)`
//! fall into finitely many classes: lines through two or more lattice points
//! (enumerated as joins), a generic line of the pencil through each lattice
//! point, and one generic line. For a candidate `L`, `χ(A ∪ L)` depends only
//! on `n = |A ∩ L|`, and `A ∪ L` is free exactly when `n ∈ {1 + d₁, 1 + d₂}`.
//! Candidates passing that test are confirmed with [`is_free`]; the others
//! are reported with their `n` and `χ` as refutations.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freeness::{is_free, is_free_with, FreenessResult};
use crate::geometry::{incident, join, Arrangement, CanonicalKey, Line, Point};
use crate::io::scalar_to_json;
use crate::lattice::{compute_lattice, CharPoly, Exponents, LatticeData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeDeletion {
    pub index: usize,
    pub n: usize,
    pub exponents: Exponents,
}

fn require_free(a: &Arrangement, lat: &LatticeData) -> Result<FreenessResult> {
    let r = is_free_with(a, lat);
    if r.is_free() {
        Ok(r)
    } else {
        Err(Error::NotFree)
    }
}

/// Every line whose removal leaves a free arrangement, each confirmed by
/// running [`is_free`] on the deletion.
pub fn free_deletions(a: &Arrangement) -> Result<Vec<FreeDeletion>> {
    let lat = compute_lattice(a);
    require_free(a, &lat)?;
    Ok(deletions_unchecked(a, &lat))
}

fn deletions_unchecked(a: &Arrangement, lat: &LatticeData) -> Vec<FreeDeletion> {
    (0..a.len())
        .filter_map(|i| {
            let b = a.without(i).expect("index in range");
            let r = is_free(&b);
            r.exponents.filter(|_| r.is_free()).map(|exponents| FreeDeletion {
                index: i,
                n: lat.n(i),
                exponents,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CandidateKind {
    /// Passes through the listed lattice points (at least two).
    Join { points: Vec<usize> },
    /// Generic member of the pencil through one lattice point.
    Pencil { point: usize },
    /// Meets every line of `A` in a distinct new point.
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub line: Line,
    pub kind: CandidateKind,
    /// `|A ∩ L|`, the number of distinct points `L` shares with `A`.
    pub n: usize,
    /// `χ(A ∪ L)`.
    pub chi: CharPoly,
    /// Exponents of `A ∪ L` when it is free.
    pub exponents: Option<Exponents>,
}

impl Candidate {
    pub fn is_free(&self) -> bool {
        self.exponents.is_some()
    }
}

/// The lattice points of `lat` lying on `l`.
fn points_on(lat: &LatticeData, l: &Line) -> Vec<usize> {
    (0..lat.points.len())
        .filter(|&p| incident(&lat.points[p].point, l))
        .collect()
}

fn n_of(a: &Arrangement, lat: &LatticeData, on: &[usize]) -> usize {
    a.len() - on.iter().map(|&p| lat.points[p].mu()).sum::<usize>()
}

/// A member of the pencil through `p` that avoids every other lattice point
/// and every line of `a`.
fn pencil_representative(a: &Arrangement, lat: &LatticeData, p: usize) -> Line {
    let ctx = a.ctx();
    let pt = &lat.points[p].point;
    let k = (0..3).rev().find(|&k| !pt.coords()[k].is_zero()).unwrap();
    let (i, j) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    for s in 0i64.. {
        let mut q = [ctx.zero(), ctx.zero(), ctx.zero()];
        q[i] = ctx.one();
        q[j] = ctx.int(s);
        let l = join(pt, &Point::new(q).unwrap()).expect("distinct points");
        if !a.contains(&l) && points_on(lat, &l) == [p] {
            return l;
        }
    }
    unreachable!()
}

/// A line avoiding all lattice points and all lines of `a`.
fn generic_representative(a: &Arrangement, lat: &LatticeData) -> Line {
    let ctx = a.ctx();
    for s in 1i64.. {
        let l = Line::from_ints(ctx, [1, s, s * s]);
        if !a.contains(&l) && points_on(lat, &l).is_empty() {
            return l;
        }
    }
    unreachable!()
}

/// Every candidate class for a one-line addition, with its `n`.
fn candidates(a: &Arrangement, lat: &LatticeData) -> Vec<(Line, CandidateKind, usize)> {
    let mut out = Vec::new();
    let mut seen: HashSet<Line> = HashSet::new();
    let pts = &lat.points;
    for p in 0..pts.len() {
        for q in p + 1..pts.len() {
            let l = join(&pts[p].point, &pts[q].point).expect("distinct lattice points");
            if a.contains(&l) || !seen.insert(l.clone()) {
                continue;
            }
            let on = points_on(lat, &l);
            let n = n_of(a, lat, &on);
            out.push((l, CandidateKind::Join { points: on }, n));
        }
    }
    for (p, fp) in pts.iter().enumerate() {
        let l = pencil_representative(a, lat, p);
        out.push((l, CandidateKind::Pencil { point: p }, a.len() - fp.mu()));
    }
    if !a.is_empty() {
        out.push((generic_representative(a, lat), CandidateKind::Generic, a.len()));
    }
    out
}

/// All candidate additions, each with its verdict.
pub fn addition_candidates(a: &Arrangement) -> Result<Vec<Candidate>> {
    let lat = compute_lattice(a);
    let r = require_free(a, &lat)?;
    Ok(classify_candidates(a, &lat, &r, false))
}

fn classify_candidates(a: &Arrangement, lat: &LatticeData, r: &FreenessResult, exhaustive: bool) -> Vec<Candidate> {
    let [_, d1, d2] = r.exponents.expect("free arrangement has exponents");
    candidates(a, lat)
        .into_iter()
        .map(|(line, kind, n)| {
            let chi = CharPoly::from_counts(a.len() as i64 + 1, (lat.mu_total + n) as i64);
            let promising = n as u64 == d1 + 1 || n as u64 == d2 + 1;
            let exponents = if promising || exhaustive {
                let b = a.with_line(line.clone()).expect("candidate not in A");
                let rb = is_free(&b);
                rb.exponents.filter(|_| rb.is_free())
            } else {
                None
            };
            Candidate {
                line,
                kind,
                n,
                chi,
                exponents,
            }
        })
        .collect()
}

/// The free one-line additions to a free arrangement, one per candidate class.
pub fn free_additions(a: &Arrangement) -> Result<Vec<Candidate>> {
    Ok(addition_candidates(a)?.into_iter().filter(Candidate::is_free).collect())
}

/// Like [`addition_candidates`] but confirming every verdict with
/// [`is_free`], including those settled by `n` alone.
pub fn addition_candidates_exhaustive(a: &Arrangement) -> Result<Vec<Candidate>> {
    let lat = compute_lattice(a);
    let r = require_free(a, &lat)?;
    Ok(classify_candidates(a, &lat, &r, true))
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Move {
    Add(Line),
    /// Index of the removed line in the arrangement just before the move.
    Delete(usize),
}

/// A sequence of single-line moves from an arrangement down to the empty
/// one, with the exponents of every stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub start: Arrangement,
    pub moves: Vec<Move>,
    /// `exponents[k]` belongs to the stage after `k` moves.
    pub exponents: Vec<Exponents>,
}

impl Chain {
    pub fn additions(&self) -> usize {
        self.moves.iter().filter(|m| matches!(m, Move::Add(_))).count()
    }

    /// The arrangements visited, starting with `start`.
    pub fn stages(&self) -> Result<Vec<Arrangement>> {
        let mut cur = self.start.clone();
        let mut out = vec![cur.clone()];
        for m in &self.moves {
            cur = match m {
                Move::Add(l) => cur.with_line(l.clone())?,
                Move::Delete(i) => cur.without(*i)?,
            };
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// Re-checks the chain from scratch: every stage is free with the
    /// recorded exponents, consecutive stages differ by one line, and the
    /// last stage is empty.
    pub fn verify(&self) -> Result<()> {
        let stages = self.stages()?;
        if stages.len() != self.exponents.len() {
            return Err(Error::Invalid("exponent list length".into()));
        }
        for (k, (s, e)) in stages.iter().zip(&self.exponents).enumerate() {
            let r = is_free(s);
            if !r.is_free() {
                return Err(Error::Invalid(format!("stage {k} is not free")));
            }
            if r.exponents != Some(*e) {
                return Err(Error::Invalid(format!("stage {k} has exponents {:?}", r.exponents)));
            }
        }
        if !stages.last().unwrap().is_empty() {
            return Err(Error::Invalid("chain does not end at the empty arrangement".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let stages = self.stages().unwrap_or_default();
        let line_json = |l: &Line| Value::Array(l.coeffs().iter().map(scalar_to_json).collect());
        let moves: Vec<Value> = self
            .moves
            .iter()
            .enumerate()
            .map(|(k, m)| match m {
                Move::Add(l) => json!({"add": line_json(l), "exponents": self.exponents[k + 1]}),
                Move::Delete(i) => json!({
                    "delete": i,
                    "line": stages.get(k).and_then(|s| s.line(*i).ok()).map(line_json),
                    "exponents": self.exponents[k + 1],
                }),
            })
            .collect();
        json!({
            "start_size": self.start.len(),
            "start_exponents": self.exponents.first(),
            "moves": moves,
        })
    }
}

/// Decides inductive freeness by depth-first search over free deletions,
/// remembering arrangements already known not to be inductively free.
pub fn is_inductively_free(a: &Arrangement) -> Option<Chain> {
    let mut memo: HashSet<CanonicalKey> = HashSet::new();
    let mut moves = Vec::new();
    let mut exps = Vec::new();
    if if_dfs(a, &mut memo, &mut moves, &mut exps) {
        Some(Chain {
            start: a.clone(),
            moves,
            exponents: exps,
        })
    } else {
        None
    }
}

fn if_dfs(a: &Arrangement, memo: &mut HashSet<CanonicalKey>, moves: &mut Vec<Move>, exps: &mut Vec<Exponents>) -> bool {
    let lat = compute_lattice(a);
    let r = is_free_with(a, &lat);
    let Some(e) = r.exponents.filter(|_| r.is_free()) else {
        return false;
    };
    exps.push(e);
    if a.is_empty() {
        return true;
    }
    let key = a.canonical_key();
    if !memo.contains(&key) {
        for d in deletions_unchecked(a, &lat) {
            moves.push(Move::Delete(d.index));
            if if_dfs(&a.without(d.index).unwrap(), memo, moves, exps) {
                return true;
            }
            moves.pop();
        }
        memo.insert(key);
    }
    exps.pop();
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecursiveVerdict {
    Yes(Chain),
    /// No free move leaves the arrangement, so it cannot be the end of a
    /// chain through free arrangements.
    No {
        additions: Vec<Candidate>,
        deletions_checked: usize,
    },
    Unknown {
        size_bound: usize,
        explored: usize,
    },
}

impl RecursiveVerdict {
    pub fn to_json(&self) -> Value {
        match self {
            RecursiveVerdict::Yes(c) => json!({"verdict": "yes", "chain": c.to_json()}),
            RecursiveVerdict::No {
                additions,
                deletions_checked,
            } => json!({
                "verdict": "no",
                "free_deletions": [],
                "deletions_checked": deletions_checked,
                "addition_candidates": additions.iter().map(|c| json!({
                    "line": c.line,
                    "kind": c.kind,
                    "n": c.n,
                    "chi": c.chi.coeffs,
                    "free": c.is_free(),
                })).collect::<Vec<_>>(),
            }),
            RecursiveVerdict::Unknown { size_bound, explored } => {
                json!({"verdict": "unknown", "size_bound": size_bound, "explored": explored})
            }
        }
    }
}

pub fn default_max_size(a: &Arrangement) -> usize {
    a.len() + 3
}

struct Node {
    arr: Arrangement,
    parent: Option<(usize, Move)>,
    exponents: Exponents,
}

/// Breadth-first search over free arrangements reachable from `a` by single
/// free additions and deletions, never exceeding `max_size` lines. The goal
/// is any inductively free arrangement, whose deletion chain then finishes
/// the path down to the empty arrangement.
pub fn recursive_freeness_bounded(a: &Arrangement, max_size: usize) -> Result<RecursiveVerdict> {
    let lat = compute_lattice(a);
    let r = require_free(a, &lat)?;
    if max_size < a.len() {
        return Err(Error::BadParameter(format!(
            "max_size {max_size} below |A| = {}",
            a.len()
        )));
    }
    if !a.is_empty() {
        let dels = deletions_unchecked(a, &lat);
        if dels.is_empty() {
            let cands = classify_candidates(a, &lat, &r, false);
            if !cands.iter().any(Candidate::is_free) {
                return Ok(RecursiveVerdict::No {
                    additions: cands,
                    deletions_checked: a.len(),
                });
            }
        }
    }

    let mut nodes = vec![Node {
        arr: a.clone(),
        parent: None,
        exponents: r.exponents.unwrap(),
    }];
    let mut visited: HashMap<CanonicalKey, usize> = HashMap::new();
    visited.insert(a.canonical_key(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let cur = nodes[id].arr.clone();
        if let Some(tail) = is_inductively_free(&cur) {
            return Ok(RecursiveVerdict::Yes(assemble(a, &nodes, id, tail)));
        }
        let lat = compute_lattice(&cur);
        let mut next: Vec<(Move, Arrangement, Exponents)> = deletions_unchecked(&cur, &lat)
            .into_iter()
            .map(|d| (Move::Delete(d.index), cur.without(d.index).unwrap(), d.exponents))
            .collect();
        if cur.len() < max_size {
            let r = is_free_with(&cur, &lat);
            let mut adds: Vec<Candidate> = classify_candidates(&cur, &lat, &r, false)
                .into_iter()
                .filter(Candidate::is_free)
                .collect();
            adds.sort_by(|x, y| y.n.cmp(&x.n).then_with(|| x.line.cmp(&y.line)));
            for c in adds {
                let b = cur.with_line(c.line.clone()).unwrap();
                next.push((Move::Add(c.line), b, c.exponents.unwrap()));
            }
        }
        for (m, b, e) in next {
            let key = b.canonical_key();
            if visited.contains_key(&key) {
                continue;
            }
            let nid = nodes.len();
            visited.insert(key, nid);
            nodes.push(Node {
                arr: b,
                parent: Some((id, m)),
                exponents: e,
            });
            queue.push_back(nid);
        }
    }
    Ok(RecursiveVerdict::Unknown {
        size_bound: max_size,
        explored: nodes.len(),
    })
}

fn assemble(start: &Arrangement, nodes: &[Node], goal: usize, tail: Chain) -> Chain {
    let mut path = Vec::new();
    let mut exps = Vec::new();
    let mut id = goal;
    while let Some((p, m)) = &nodes[id].parent {
        path.push(m.clone());
        exps.push(nodes[id].exponents);
        id = *p;
    }
    path.reverse();
    exps.reverse();
    let mut exponents = vec![nodes[0].exponents];
    exponents.extend(exps);
    exponents.extend(tail.exponents.into_iter().skip(1));
    path.extend(tail.moves);
    Chain {
        start: start.clone(),
        moves: path,
        exponents,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldCtx;

    const Q: FieldCtx = FieldCtx::RATIONAL;

    fn braid() -> Arrangement {
        Arrangement::from_ints(
            Q,
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [0, 1, -1], [1, 0, -1]],
        )
        .unwrap()
    }

    #[test]
    fn braid_is_inductively_free() {
        let c = is_inductively_free(&braid()).unwrap();
        assert_eq!(c.moves.len(), 6);
        assert_eq!(c.exponents[0], [1, 2, 3]);
        c.verify().unwrap();
    }

    #[test]
    fn non_free_input_is_rejected() {
        let a = Arrangement::from_ints(Q, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]).unwrap();
        assert_eq!(free_deletions(&a), Err(Error::NotFree));
        assert_eq!(free_additions(&a).unwrap_err(), Error::NotFree);
        assert!(is_inductively_free(&a).is_none());
    }

    #[test]
    fn triangle_additions() {
        // exponents (1,1,1): an added line must meet the triangle in 2 points,
        // i.e. pass through one vertex
        let a = Arrangement::from_ints(Q, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let adds = free_additions(&a).unwrap();
        assert_eq!(adds.len(), 3);
        assert!(adds
            .iter()
            .all(|c| matches!(c.kind, CandidateKind::Pencil { .. }) && c.n == 2));
        let all = addition_candidates_exhaustive(&a).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.iter().any(|c| c.kind == CandidateKind::Generic && !c.is_free()));
    }

    #[test]
    fn shortcut_agrees_with_exhaustive_check() {
        let a = braid();
        let fast = addition_candidates(&a).unwrap();
        let slow = addition_candidates_exhaustive(&a).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn chain_verification_detects_tampering() {
        let mut c = is_inductively_free(&braid()).unwrap();
        c.exponents[1] = [1, 1, 1];
        assert!(c.verify().is_err());
    }

    #[test]
    fn recursive_search_on_inductively_free_input() {
        let v = recursive_freeness_bounded(&braid(), 7).unwrap();
        match v {
            RecursiveVerdict::Yes(c) => c.verify().unwrap(),
            other => panic!("{other:?}"),
        }
    }
}
