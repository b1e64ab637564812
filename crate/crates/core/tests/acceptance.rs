use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linarr::catalog::{catalog_family, catalog_get};
use linarr::freeness::{
    abt_test, is_free, is_free_with, multi_exponents, s_membership, saito_verify_rank2, yoshinaga_test, BinForm,
    Derivation2, MultiArr2, Route, Verdict, Witness,
};
use linarr::io::parse_scalar;
use linarr::lattice::{compute_lattice, lattice_automorphisms, lattice_isomorphic, LatticeData};
use linarr::moduli::{classify_profiles, exceptional_values, scan_family, Effect, RootValue, ScanOptions};
use linarr::scalar::rat;
use linarr::search::{
    free_additions, free_deletions, is_inductively_free, recursive_freeness_bounded, RecursiveVerdict,
};
use linarr::{Arrangement, Error, FieldCtx, Line, Scalar};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn s(e: Error) -> String {
    e.to_string()
}

fn param(text: &str) -> Scalar {
    parse_scalar(text).expect("valid parameter")
}

fn at(name: &str, p: &str) -> Result<Arrangement, String> {
    catalog_get(name, Some(&param(p))).map_err(s)
}

fn fixed(name: &str) -> Result<Arrangement, String> {
    catalog_get(name, None).map_err(s)
}

fn exps(a: &Arrangement) -> Option<[u64; 3]> {
    let r = is_free(a);
    r.exponents.filter(|_| r.is_free())
}

fn recursive_yes(a: &Arrangement, bound: usize) -> Check {
    match recursive_freeness_bounded(a, bound).map_err(s)? {
        RecursiveVerdict::Yes(chain) => chain.verify().map_err(|e| format!("chain does not re-verify: {e}")),
        other => Err(format!("expected a chain, got {}", other.to_json()["verdict"])),
    }
}

fn quad(disc: i64, c: (i64, i64), o: (i64, i64)) -> RootValue {
    RootValue::Quadratic {
        disc,
        center: rat(c.0, c.1),
        offset: rat(o.0, o.1),
    }
}

fn conj_pair(disc: i64, c: (i64, i64), o: (i64, i64)) -> [RootValue; 2] {
    [quad(disc, c, o), quad(disc, c, (-o.0, o.1))]
}

fn show(set: &BTreeSet<RootValue>) -> String {
    let v: Vec<String> = set.iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

fn c1_profiles() -> Check {
    let got: Vec<(usize, usize, Vec<usize>)> = classify_profiles(12)
        .into_iter()
        .map(|t| (t.ell, t.a, t.profile))
        .collect();
    let want = vec![
        (9, 4, vec![0, 12]),
        (11, 5, vec![1, 14, 2]),
        (11, 5, vec![4, 11, 3]),
        (11, 5, vec![7, 8, 4]),
        (11, 5, vec![10, 5, 5]),
        (12, 5, vec![0, 16, 3]),
    ];
    ensure!(got == want, "classify_profiles(12) = {got:?}");
    ensure!(classify_profiles(8).is_empty(), "ℓ ≤ 8 not empty");
    ensure!(got.iter().all(|t| t.0 != 10), "ℓ = 10 has a triple");
    Ok(())
}

fn c2_dual_hesse() -> Check {
    let a = fixed("dual_hesse")?;
    let lat = compute_lattice(&a);
    ensure!(lat.profile == [0, 12], "F = {:?}", lat.profile);
    let chi = lat.char_poly();
    ensure!(chi.coeffs == [-16, 24, -9, 1], "χ = {:?}", chi.coeffs);
    let r = is_free_with(&a, &lat);
    ensure!(
        r.is_free() && r.exponents == Some([1, 4, 4]),
        "freeness {:?}",
        r.exponents
    );
    ensure!(s_membership(&lat, &r) == Ok(true), "not in S");
    ensure!(is_inductively_free(&a).is_none(), "reported inductively free");
    let adds = free_additions(&a).map_err(s)?;
    ensure!(adds.len() == 12, "{} free additions", adds.len());
    for c in &adds {
        let b = a.with_line(c.line.clone()).map_err(s)?;
        ensure!(b.len() == 10, "addition has {} lines", b.len());
        ensure!(exps(&b) == Some([1, 4, 5]), "addition exponents {:?}", exps(&b));
        let chain = is_inductively_free(&b).ok_or("addition not inductively free")?;
        chain.verify().map_err(s)?;
    }
    recursive_yes(&a, 10)
}

fn c3_pentagonal() -> Check {
    let a = fixed("pentagonal")?;
    let lat = compute_lattice(&a);
    ensure!(lat.profile == [10, 5, 5], "F = {:?}", lat.profile);
    ensure!(exps(&a) == Some([1, 5, 5]), "exponents {:?}", exps(&a));
    ensure!(is_inductively_free(&a).is_none(), "reported inductively free");
    let b = a.with_line(Line::from_ints(a.ctx(), [1, -1, 0])).map_err(s)?;
    ensure!(exps(&b) == Some([1, 5, 6]), "A ∪ {{x − y}} exponents {:?}", exps(&b));
    recursive_yes(&a, a.len() + 3)?;

    let e = fixed("eleven_if")?;
    let elat = compute_lattice(&e);
    ensure!(elat.profile == [10, 5, 5], "eleven_if F = {:?}", elat.profile);
    let chain = is_inductively_free(&e).ok_or("eleven_if is not inductively free")?;
    chain.verify().map_err(s)?;
    ensure!(
        !lattice_isomorphic(&lat, &elat),
        "the two [10,5,5] lattices are isomorphic"
    );
    Ok(())
}

fn c4_g443() -> Check {
    let a = fixed("g443")?;
    let lat = compute_lattice(&a);
    ensure!(lat.profile == [0, 16, 3], "F = {:?}", lat.profile);
    let r = is_free_with(&a, &lat);
    ensure!(r.exponents == Some([1, 5, 6]), "exponents {:?}", r.exponents);
    ensure!(s_membership(&lat, &r) == Ok(true), "not in S");
    let inf = Line::infinity(a.ctx());
    ensure!(!a.contains(&inf), "H∞ already present");
    let b = a.with_line(inf.clone()).map_err(s)?;
    let h = b.index_of(&inf).ok_or("H∞ missing after addition")?;
    let blat = compute_lattice(&b);
    ensure!(blat.n(h) == 6, "n on H∞ = {}", blat.n(h));
    ensure!(exps(&b) == Some([1, 5, 7]), "A ∪ H∞ exponents {:?}", exps(&b));
    recursive_yes(&a, a.len() + 3)
}

fn c5_family13() -> Check {
    let f = catalog_family("family13").map_err(s)?;
    let rep = exceptional_values(&f).map_err(s)?;
    let got: BTreeSet<RootValue> = rep.values.iter().map(|v| v.value.clone()).collect();
    let mut want: BTreeSet<RootValue> = [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2)]
        .into_iter()
        .map(|(n, d)| RootValue::Rational(rat(n, d)))
        .collect();
    want.extend(conj_pair(-3, (1, 2), (1, 2)));
    ensure!(got == want, "exceptional set {}", show(&got));
    ensure!(rep.unresolved.is_empty(), "unresolved condition factors");

    for p in ["-1", "2", "1/2"] {
        let a = at("family13", p)?;
        let lat = compute_lattice(&a);
        ensure!(lat.profile == [18, 4, 3, 3], "λ = {p}: F = {:?}", lat.profile);
        ensure!(exps(&a) == Some([1, 5, 7]), "λ = {p}: exponents {:?}", exps(&a));
        is_inductively_free(&a)
            .ok_or(format!("λ = {p}: not inductively free"))?
            .verify()
            .map_err(s)?;
    }

    let a = at("family13", "3")?;
    let lat = compute_lattice(&a);
    ensure!(lat.profile == [21, 3, 3, 3], "λ = 3: F = {:?}", lat.profile);
    ensure!(lat.lines.iter().all(|l| l.n == 6), "λ = 3: some n ≠ 6");
    let chi = lat.char_poly();
    ensure!(abt_test(&lat, &chi).is_none(), "λ = 3: ABT applies");
    let y = yoshinaga_test(&a, &chi, 0).map_err(s)?;
    let Witness::Restriction { d1, d2, .. } = y.witness else {
        return Err("λ = 3: no restriction witness".into());
    };
    ensure!(
        y.verdict == Verdict::Free && d1 * d2 == 36,
        "λ = 3: yoshinaga {:?} with {d1}·{d2}",
        y.verdict
    );
    let r = is_free_with(&a, &lat);
    ensure!(
        r.route == Route::Yoshinaga && r.exponents == Some([1, 6, 6]),
        "λ = 3: {:?} {:?}",
        r.route,
        r.exponents
    );
    ensure!(free_additions(&a).map_err(s)?.is_empty(), "λ = 3: free additions exist");
    ensure!(free_deletions(&a).map_err(s)?.is_empty(), "λ = 3: free deletions exist");
    match recursive_freeness_bounded(&a, a.len() + 3).map_err(s)? {
        RecursiveVerdict::No { .. } => {}
        other => return Err(format!("λ = 3: verdict {}", other.to_json()["verdict"])),
    }

    for p in ["(1+sqrt(5))/2", "sqrt(-1)"] {
        let a = at("family13", p)?;
        ensure!(a.len() == 13, "λ = {p}: {} lines", a.len());
        recursive_yes(&a, a.len() + 3).map_err(|e| format!("λ = {p}: {e}"))?;
    }
    Ok(())
}

fn c6_saito() -> Check {
    let q = FieldCtx::RATIONAL;
    let m = MultiArr2::from_ints(q, &[([1, 0], 3), ([0, 1], 3), ([1, 1], 3)]).map_err(s)?;
    let e = multi_exponents(&m);
    ensure!(e.exponents == (4, 5), "exponents {:?}", e.exponents);
    let t1 = Derivation2::new(
        BinForm::from_ints(q, &[1, 2, 0, 0, 0]),
        BinForm::from_ints(q, &[0, 0, 0, -2, -1]),
    )
    .map_err(s)?;
    let t2 = Derivation2::new(
        BinForm::from_ints(q, &[0, 1, 3, 0, 0, 0]),
        BinForm::from_ints(q, &[0, 0, 0, 3, 1, 0]),
    )
    .map_err(s)?;
    ensure!(saito_verify_rank2(&m, &t1, &t2), "basis rejected");
    Ok(())
}

/// The literal set stated for family15. The computed set replaces
/// `3/2 ± √2` by `(3 ± √5)/2`; see the decisions ledger.
fn c7a_family15_set() -> Check {
    let f = catalog_family("family15").map_err(s)?;
    let rep = exceptional_values(&f).map_err(s)?;
    let got: BTreeSet<RootValue> = rep.values.iter().map(|v| v.value.clone()).collect();
    let mut want: BTreeSet<RootValue> = [(0, 1), (1, 1), (1, 2)]
        .into_iter()
        .map(|(n, d)| RootValue::Rational(rat(n, d)))
        .collect();
    want.extend(conj_pair(2, (3, 2), (1, 1)));
    want.extend(conj_pair(5, (-1, 2), (1, 2)));
    ensure!(got == want, "computed {}", show(&got));
    Ok(())
}

fn c7b_family15() -> Check {
    let f = catalog_family("family15").map_err(s)?;
    let opts = ScanOptions {
        inductive: false,
        recursive: false,
        max_size: None,
        symbolic: true,
    };
    let table = scan_family(&f, &[], &opts).map_err(s)?;
    let row = table.symbolic.as_ref().ok_or("no symbolic row")?;
    ensure!(
        row.verdict == Verdict::Free && row.exponents == Some([1, 7, 7]),
        "symbolic row {:?} {:?}",
        row.verdict,
        row.exponents
    );

    let rep = exceptional_values(&f).map_err(s)?;
    ensure!(!rep.is_exceptional(&param("5")), "λ = 5 is exceptional");
    let a = at("family15", "5")?;
    ensure!(exps(&a) == Some([1, 7, 7]), "λ = 5: exponents {:?}", exps(&a));
    ensure!(is_inductively_free(&a).is_none(), "λ = 5: inductively free");
    ensure!(free_additions(&a).map_err(s)?.is_empty(), "λ = 5: free additions exist");
    ensure!(free_deletions(&a).map_err(s)?.is_empty(), "λ = 5: free deletions exist");
    match recursive_freeness_bounded(&a, a.len() + 3).map_err(s)? {
        RecursiveVerdict::No { .. } => {}
        other => return Err(format!("λ = 5: verdict {}", other.to_json()["verdict"])),
    }

    let a = at("family15", "2")?;
    let b = a.with_line(Line::from_ints(a.ctx(), [2, 0, 1])).map_err(s)?;
    ensure!(b.len() == 16, "λ = 2: {} lines after addition", b.len());
    ensure!(exps(&b) == Some([1, 7, 8]), "λ = 2: exponents {:?}", exps(&b));
    is_inductively_free(&b)
        .ok_or("λ = 2: 16-line arrangement not inductively free")?
        .verify()
        .map_err(s)?;

    let g = linarr::moduli::generic_lattice(&f).map_err(s)?;
    let a = at("family15", "(-1+sqrt(5))/2")?;
    let lat = compute_lattice(&a);
    ensure!(a.len() == 15, "golden λ: {} lines", a.len());
    ensure!(!lat.same_labeled(&g.lattice), "golden λ: generic lattice");
    ensure!(exps(&a) == Some([1, 5, 9]), "golden λ: exponents {:?}", exps(&a));
    let effect = rep
        .values
        .iter()
        .find(|v| v.value == quad(5, (-1, 2), (1, 2)))
        .map(|v| &v.effect);
    ensure!(
        matches!(effect, Some(Effect::LatticeChange { .. })),
        "golden λ effect {effect:?}"
    );
    Ok(())
}

fn c8_automorphisms() -> Check {
    let l0 = compute_lattice(&at("family13", "3")?);
    let o = lattice_automorphisms(&l0).order;
    ensure!(o == 18, "|Aut L₀| = {o}");
    let f = catalog_family("family15").map_err(s)?;
    let g = linarr::moduli::generic_lattice(&f).map_err(s)?;
    let o = lattice_automorphisms(&g.lattice).order;
    ensure!(o == 48, "|Aut| of the 15-line generic lattice = {o}");
    Ok(())
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn profile_identities(a: &Arrangement, lat: &LatticeData) -> Check {
    let l = a.len();
    let f = |i: usize| lat.profile.get(i - 1).copied().unwrap_or(0);
    let top = lat.profile.len();
    let sum = |g: &dyn Fn(usize) -> usize| (1..=top).map(|i| g(i) * f(i)).sum::<usize>();
    ensure!(sum(&|i| i) == lat.mu_total, "Σ i·F_i ≠ μ");
    let n_sum: usize = lat.lines.iter().map(|h| h.n).sum();
    ensure!(sum(&|i| i + 1) == n_sum, "Σ (i+1)·F_i ≠ Σ n_H");
    ensure!(sum(&|i| binom2(i + 1)) == binom2(l), "Σ C(i+1,2)·F_i ≠ C(ℓ,2)");
    for (k, h) in lat.lines.iter().enumerate() {
        let fh = |i: usize| h.profile.get(i - 1).copied().unwrap_or(0);
        let total: usize = h.profile.iter().sum();
        ensure!(total == h.n, "line {k}: Σ F_H,i ≠ n_H");
        let weighted: usize = (1..=h.profile.len()).map(|i| i * fh(i)).sum();
        ensure!(weighted + 1 == l, "line {k}: Σ i·F_H,i ≠ ℓ − 1");
    }
    for i in 1..=top {
        let across: usize = lat
            .lines
            .iter()
            .map(|h| h.profile.get(i - 1).copied().unwrap_or(0))
            .sum();
        ensure!(across == (i + 1) * f(i), "Σ_H F_H,{i} ≠ (i+1)·F_{i}");
    }
    Ok(())
}

fn random_arrangement(rng: &mut ChaCha8Rng) -> Arrangement {
    let q = FieldCtx::RATIONAL;
    let size = rng.gen_range(1..=10);
    let span = if rng.gen_bool(0.6) { 1 } else { 2 };
    let mut a = Arrangement::empty(q);
    while a.len() < size {
        let c = [0; 3].map(|_| rng.gen_range(-span..=span));
        if c == [0, 0, 0] {
            continue;
        }
        let l = Line::from_ints(q, c);
        if !a.contains(&l) {
            a = a.with_line(l).expect("fresh line");
        }
    }
    a
}

#[derive(Default)]
struct Tally {
    instances: usize,
    free: usize,
    both_applicable: usize,
    chains: usize,
    le4: usize,
}

fn c9_properties() -> Result<Tally, String> {
    let hesse = compute_lattice(&fixed("dual_hesse")?);
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_d1e4);
    let mut t = Tally::default();
    for k in 0..240 {
        let a = random_arrangement(&mut rng);
        let lat = compute_lattice(&a);
        let chi = lat.char_poly();
        t.instances += 1;
        profile_identities(&a, &lat).map_err(|e| format!("instance {k}: {e}"))?;

        let verdicts: BTreeSet<bool> = (0..a.len())
            .map(|h| yoshinaga_test(&a, &chi, h).map(|r| r.is_free()))
            .collect::<Result<_, _>>()
            .map_err(s)?;
        ensure!(verdicts.len() == 1, "instance {k}: yoshinaga depends on the line");
        let y_free = verdicts.contains(&true);

        if let Some(r) = abt_test(&lat, &chi) {
            t.both_applicable += 1;
            ensure!(r.is_free() == y_free, "instance {k}: ABT and Yoshinaga disagree");
        }

        let r = is_free_with(&a, &lat);
        ensure!(r.is_free() == y_free, "instance {k}: pipeline disagrees with Yoshinaga");
        if !r.is_free() {
            continue;
        }
        t.free += 1;
        let chain = is_inductively_free(&a);
        if let Some(c) = &chain {
            c.verify().map_err(|e| format!("instance {k}: {e}"))?;
            t.chains += 1;
        } else if let RecursiveVerdict::Yes(c) = recursive_freeness_bounded(&a, a.len() + 1).map_err(s)? {
            c.verify().map_err(|e| format!("instance {k}: {e}"))?;
            t.chains += 1;
        }
        let [_, lo, _] = r.exponents.expect("free has exponents");
        if lo <= 4 {
            t.le4 += 1;
            ensure!(
                chain.is_some() || lattice_isomorphic(&lat, &hesse),
                "instance {k}: min exponent {lo} but neither inductively free nor dual Hesse"
            );
        }
    }
    Ok(t)
}

struct Runner {
    failures: Vec<String>,
    documented: Vec<String>,
}

impl Runner {
    fn run(&mut self, id: &str, label: &str, limit: Duration, known: Option<&str>, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let res = f();
        let dt = start.elapsed();
        let timing = format!("{:.2}s, limit {}s", dt.as_secs_f64(), limit.as_secs());
        let res = res.and_then(|()| {
            if dt > limit {
                Err(format!("took {:.1}s", dt.as_secs_f64()))
            } else {
                Ok(())
            }
        });
        match (res, known) {
            (Ok(()), _) => println!("PASS {id:<4} {label} ({timing})"),
            (Err(e), Some(note)) => {
                println!("FAIL {id:<4} {label} ({timing}): {e} [documented deviation: {note}]");
                self.documented.push(id.to_string());
            }
            (Err(e), None) => {
                println!("FAIL {id:<4} {label} ({timing}): {e}");
                self.failures.push(id.to_string());
            }
        }
    }
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut r = Runner {
        failures: Vec::new(),
        documented: Vec::new(),
    };
    r.run("1", "profile classification up to 12 lines", secs(1), None, c1_profiles);
    r.run("2", "dual Hesse arrangement", secs(10), None, c2_dual_hesse);
    r.run(
        "3",
        "pentagonal arrangement and its inductively free twin",
        secs(10),
        None,
        c3_pentagonal,
    );
    r.run("4", "G(4,4,3) arrangement", secs(10), None, c4_g443);
    r.run("5", "13-line family", secs(120), None, c5_family13);
    r.run("6", "rank-2 exponents and basis check", secs(1), None, c6_saito);
    r.run(
        "7a",
        "15-line family exceptional set, literal",
        secs(60),
        Some("concurrency conditions give t² − 3t + 1, not 4t² − 12t + 1"),
        c7a_family15_set,
    );
    r.run(
        "7b",
        "15-line family symbolic row and samples",
        secs(300),
        None,
        c7b_family15,
    );
    r.run("8", "lattice automorphism orders", secs(30), None, c8_automorphisms);
    r.run("9", "randomized property suite", secs(120), None, || {
        let t = c9_properties()?;
        ensure!(t.instances >= 200, "only {} instances", t.instances);
        println!(
            "     {} instances, {} free, {} with ABT applicable, {} chains verified, {} with min exponent ≤ 4",
            t.instances, t.free, t.both_applicable, t.chains, t.le4
        );
        Ok(())
    });

    println!(
        "{} failed, {} documented deviations",
        r.failures.len(),
        r.documented.len()
    );
    if r.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
