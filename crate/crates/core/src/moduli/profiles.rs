use serde::Serialize;

/// `(ℓ, a, F)`: a line count, a candidate smaller exponent and a profile
/// `F = [F₁, …, F_{a−2}]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ProfileTriple {
    pub ell: usize,
    pub a: usize,
    pub profile: Vec<usize>,
}

impl ProfileTriple {
    /// Checks the three counting identities a free arrangement without a
    /// free deletion has to satisfy.
    pub fn is_admissible(&self) -> bool {
        let (l, a) = (self.ell, self.a);
        if a < 2 || self.profile.len() != a - 2 {
            return false;
        }
        let sum =
            |w: &dyn Fn(usize) -> usize| -> usize { self.profile.iter().enumerate().map(|(k, &f)| w(k + 1) * f).sum() };
        let lhs = (l - 1) * (a + 1);
        lhs >= a * a
            && sum(&|i| i) == lhs - a * a
            && sum(&|i| i + 1) <= a * l
            && sum(&|i| i * (i + 1) / 2) == l * (l - 1) / 2
    }
}

/// All admissible triples with `7 ≤ ℓ ≤ ell_max`, in lexicographic order.
pub fn classify_profiles(ell_max: usize) -> Vec<ProfileTriple> {
    let mut out = Vec::new();
    for ell in 7..=ell_max {
        for a in 2..=(ell - 1) / 2 {
            let Some(target) = ((ell - 1) * (a + 1)).checked_sub(a * a) else {
                continue;
            };
            let mut f = vec![0; a - 2];
            search(ell, a, a - 2, target, ell * (ell - 1) / 2, &mut f, &mut out);
        }
    }
    out.sort();
    out
}

/// Fills `f[..k]` from the top index down so that the linear and quadratic
/// sums hit their targets exactly.
fn search(
    ell: usize,
    a: usize,
    k: usize,
    linear: usize,
    quadratic: usize,
    f: &mut Vec<usize>,
    out: &mut Vec<ProfileTriple>,
) {
    if k == 0 {
        if linear == 0 && quadratic == 0 {
            let t = ProfileTriple {
                ell,
                a,
                profile: f.clone(),
            };
            if t.is_admissible() {
                out.push(t);
            }
        }
        return;
    }
    let i = k;
    let w = i * (i + 1) / 2;
    for c in 0..=(linear / i).min(quadratic / w) {
        f[k - 1] = c;
        search(ell, a, k - 1, linear - c * i, quadratic - c * w, f, out);
    }
    f[k - 1] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(ell: usize, a: usize, profile: &[usize]) -> ProfileTriple {
        ProfileTriple {
            ell,
            a,
            profile: profile.to_vec(),
        }
    }

    #[test]
    fn up_to_twelve() {
        assert_eq!(
            classify_profiles(12),
            vec![
                t(9, 4, &[0, 12]),
                t(11, 5, &[1, 14, 2]),
                t(11, 5, &[4, 11, 3]),
                t(11, 5, &[7, 8, 4]),
                t(11, 5, &[10, 5, 5]),
                t(12, 5, &[0, 16, 3]),
            ]
        );
    }

    #[test]
    fn small_sizes_are_empty() {
        assert!(classify_profiles(8).is_empty());
        assert!(classify_profiles(2).is_empty());
        assert!(classify_profiles(10).iter().all(|t| t.ell != 10));
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(!t(9, 4, &[0, 12, 0]).is_admissible());
        assert!(!t(9, 4, &[1, 12]).is_admissible());
    }

    proptest! {
        #[test]
        fn every_output_is_admissible(ell_max in 7usize..16) {
            for t in classify_profiles(ell_max) {
                prop_assert!(t.is_admissible());
                prop_assert!(t.ell <= ell_max && 2 * t.a < t.ell);
            }
        }
    }
}
