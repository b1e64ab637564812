use serde::Serialize;

use super::LatticeData;

/// The automorphism group of a lattice, acting on line indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutGroup {
    pub order: u64,
    /// Each generator maps line `i` to `g[i]`.
    pub generators: Vec<Vec<usize>>,
}

type Signature = (usize, Vec<usize>);

struct Side<'a> {
    lat: &'a LatticeData,
    sizes: Vec<usize>,
    sig: Vec<Signature>,
}

impl<'a> Side<'a> {
    fn new(lat: &'a LatticeData) -> Self {
        Side {
            lat,
            sizes: lat.points.iter().map(|p| p.incident.len()).collect(),
            sig: lat.lines.iter().map(|s| (s.n, s.profile.clone())).collect(),
        }
    }

    fn flat(&self, i: usize, j: usize) -> usize {
        self.lat.flat_of(i, j)
    }
}

/// Backtracking search for a line bijection `σ` carrying the flats of `a`
/// onto those of `b`. Lines are assigned in index order; a candidate image
/// must agree on the invariant signature, on the size of every flat it shares
/// with an already assigned line, and on concurrency of every triple.
struct Matcher<'a> {
    a: Side<'a>,
    b: Side<'a>,
    assign: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Matcher<'a> {
    fn new(a: &'a LatticeData, b: &'a LatticeData) -> Self {
        let n = a.n_lines;
        Matcher {
            a: Side::new(a),
            b: Side::new(b),
            assign: Vec::with_capacity(n),
            used: vec![false; n],
        }
    }

    fn consistent(&self, x: usize) -> bool {
        let k = self.assign.len();
        if self.used[x] || self.a.sig[k] != self.b.sig[x] {
            return false;
        }
        for i in 0..k {
            let si = self.assign[i];
            let f = self.a.flat(i, k);
            let g = self.b.flat(si, x);
            if self.a.sizes[f] != self.b.sizes[g] {
                return false;
            }
            for j in 0..i {
                let on_a = self.a.flat(i, j) == f;
                let on_b = self.b.flat(si, self.assign[j]) == g;
                if on_a != on_b {
                    return false;
                }
            }
        }
        true
    }

    fn push(&mut self, x: usize) {
        self.assign.push(x);
        self.used[x] = true;
    }

    fn pop(&mut self) {
        let x = self.assign.pop().unwrap();
        self.used[x] = false;
    }

    fn extend(&mut self) -> bool {
        let n = self.a.lat.n_lines;
        if self.assign.len() == n {
            return true;
        }
        for x in 0..n {
            if self.consistent(x) {
                self.push(x);
                if self.extend() {
                    return true;
                }
                self.pop();
            }
        }
        false
    }

    /// Searches for a bijection extending the given prefix.
    fn search_from(&mut self, prefix: &[usize]) -> Option<Vec<usize>> {
        self.assign.clear();
        self.used.iter_mut().for_each(|u| *u = false);
        for &x in prefix {
            if !self.consistent(x) {
                return None;
            }
            self.push(x);
        }
        self.extend().then(|| self.assign.clone())
    }
}

fn sorted_sigs(l: &LatticeData) -> Vec<Signature> {
    let mut v: Vec<Signature> = l.lines.iter().map(|s| (s.n, s.profile.clone())).collect();
    v.sort();
    v
}

/// A line bijection mapping the flats of `a` onto the flats of `b`, if any.
pub fn find_isomorphism(a: &LatticeData, b: &LatticeData) -> Option<Vec<usize>> {
    if a.n_lines != b.n_lines
        || a.points.len() != b.points.len()
        || !super::profile_eq(&a.profile, &b.profile)
        || sorted_sigs(a) != sorted_sigs(b)
    {
        return None;
    }
    let sigma = Matcher::new(a, b).search_from(&[])?;
    debug_assert!(maps_onto(a, b, &sigma));
    Some(sigma)
}

pub fn lattice_isomorphic(a: &LatticeData, b: &LatticeData) -> bool {
    find_isomorphism(a, b).is_some()
}

fn maps_onto(a: &LatticeData, b: &LatticeData, perm: &[usize]) -> bool {
    let mut image: Vec<Vec<usize>> = a
        .points
        .iter()
        .map(|p| {
            let mut s: Vec<usize> = p.incident.iter().map(|&i| perm[i]).collect();
            s.sort_unstable();
            s
        })
        .collect();
    image.sort();
    image == b.incidence_sets()
}

/// Whether `perm` maps the incident-set system of `l` onto itself.
pub fn preserves(l: &LatticeData, perm: &[usize]) -> bool {
    let n = l.n_lines;
    let mut seen = vec![false; n];
    perm.len() == n && perm.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true)) && maps_onto(l, l, perm)
}

/// Computes `Aut(L)` by the orbit–stabilizer chain along the base
/// `0, 1, …, n − 1`: the order is the product of the basic orbit lengths and
/// one coset representative per non-trivial orbit element is kept as a
/// generator.
pub fn lattice_automorphisms(l: &LatticeData) -> AutGroup {
    let n = l.n_lines;
    let mut m = Matcher::new(l, l);
    let mut order: u64 = 1;
    let mut generators = Vec::new();
    let mut prefix: Vec<usize> = Vec::with_capacity(n);
    for k in 0..n {
        let mut orbit = 1u64;
        for x in k + 1..n {
            prefix.push(x);
            if let Some(sigma) = m.search_from(&prefix) {
                debug_assert!(preserves(l, &sigma));
                orbit += 1;
                generators.push(sigma);
            }
            prefix.pop();
        }
        order *= orbit;
        prefix.push(k);
    }
    AutGroup { order, generators }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Arrangement;
    use crate::lattice::compute_lattice;
    use crate::scalar::FieldCtx;

    const Q: FieldCtx = FieldCtx::RATIONAL;

    fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
        b.iter().map(|&x| a[x]).collect()
    }

    #[test]
    fn triangle_group_is_s3() {
        let a = Arrangement::from_ints(Q, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let g = lattice_automorphisms(&compute_lattice(&a));
        assert_eq!(g.order, 6);
    }

    #[test]
    fn braid_arrangement() {
        // xyz(x−y)(y−z)(x−z): four triple points, Aut ≅ S₄
        let a = Arrangement::from_ints(
            Q,
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [0, 1, -1], [1, 0, -1]],
        )
        .unwrap();
        let l = compute_lattice(&a);
        let g = lattice_automorphisms(&l);
        assert_eq!(g.order, 24);
        for x in &g.generators {
            assert!(preserves(&l, x));
            for y in &g.generators {
                assert!(preserves(&l, &compose(x, y)));
            }
        }
    }

    #[test]
    fn isomorphism_detects_relabeling() {
        let a = Arrangement::from_ints(Q, &[[1, 0, 0], [0, 1, 0], [1, -1, 0], [0, 0, 1], [1, 1, -1]]).unwrap();
        let b = a.permuted(&[3, 1, 4, 0, 2]).unwrap();
        let la = compute_lattice(&a);
        let lb = compute_lattice(&b);
        assert!(lattice_isomorphic(&la, &lb));
        let c = Arrangement::from_ints(Q, &[[1, 0, 0], [0, 1, 0], [1, -1, 0], [0, 0, 1], [1, 2, -1]]).unwrap();
        assert_eq!(compute_lattice(&c).profile, vec![7, 1]);
        assert!(lattice_isomorphic(&la, &compute_lattice(&c)));
        let generic = Arrangement::from_ints(Q, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]]).unwrap();
        assert!(!lattice_isomorphic(&la, &compute_lattice(&generic)));
    }
}
