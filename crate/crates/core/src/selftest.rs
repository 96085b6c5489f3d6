//! The acceptance suite as a library: nine criteria, each with a time
//! budget, run against the brute-force oracles in [`crate::oracle`].
//!
//! `scale` multiplies the sample sizes; `1.0` is the full suite.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bass_serre::{classify, common_fixed_vertex, export_ball, fixes_vertex, Classification, TreeVertex};
use crate::fusion::{decompose_self_inverse, exchange_partners, isomorphic, BimoduleSum, Irreducible, RootOfUnity};
use crate::group::{abelianization_image, normalize, parse_word, BsPresentation, GroupWord, NormalForm};
use crate::hecke::{centralizes, coset_profile, f_set_member, qc_member};
use crate::oracle;
use crate::rigidity::{canonicalize, is_isomorphic, sign_witness, theorem_b_obstruction, RigidityVerdict};
use crate::sample::{insert_at_random, random_identity_word, random_word, random_word_exact, relator_conjugate};

#[derive(Debug, Clone, Copy)]
pub struct SelftestConfig {
    pub seed: u64,
    pub scale: f64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig { seed: 0x5eed, scale: 1.0 }
    }
}

impl SelftestConfig {
    fn count(&self, full: usize) -> usize {
        ((full as f64 * self.scale).ceil() as usize).max(1)
    }

    fn rng(&self, id: u8) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ u64::from(id))
    }
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {} ({:.2}s / {}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

type Check = fn(&SelftestConfig, &mut ChaCha8Rng) -> Result<String, String>;

pub const CRITERIA: [(u8, &str, u64); 9] = [
    (1, "word problem soundness", 10),
    (2, "coset profiles", 5),
    (3, "index set coverage", 5),
    (4, "self-inverse decomposition", 5),
    (5, "exchange partners", 10),
    (6, "rigidity matrix", 1),
    (7, "isomorphism criterion", 1),
    (8, "tree actions", 10),
    (9, "quasi-centralizer", 5),
];

const CHECKS: [Check; 9] = [
    word_problem,
    profiles,
    index_set,
    self_inverse,
    exchange,
    rigidity_matrix,
    isomorphism,
    tree_actions,
    quasi_centralizer,
];

pub fn run_criterion(id: u8, cfg: &SelftestConfig) -> Option<CriterionReport> {
    let idx = CRITERIA.iter().position(|c| c.0 == id)?;
    let (_, name, budget) = CRITERIA[idx];
    let budget = Duration::from_secs(budget);
    let mut rng = cfg.rng(id);
    let start = Instant::now();
    let outcome = CHECKS[idx](cfg, &mut rng);
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed && elapsed > budget {
        passed = false;
        detail = format!("over time budget; {detail}");
    }
    Some(CriterionReport {
        id,
        name,
        passed,
        detail,
        elapsed,
        budget,
    })
}

pub fn run_all(cfg: &SelftestConfig) -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .filter_map(|c| run_criterion(c.0, cfg))
        .collect()
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn bs(n: i64, m: i64) -> BsPresentation {
    BsPresentation::new(n, m).expect("nonzero parameters")
}

fn nf(text: &str, g: &BsPresentation) -> NormalForm {
    normalize(&parse_word(text).expect("valid word"), g)
}

/// `2 <= n <= |m| <= 6`, both signs of `m`.
fn chamber_pairs() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for n in 2..=6 {
        for m in n..=6 {
            out.push((n, m));
            out.push((n, -m));
        }
    }
    out
}

fn word_problem(cfg: &SelftestConfig, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let per_group = cfg.count(10_000);
    let mut identities = 0usize;
    for (n, m) in [(2, 3), (2, -2), (3, 6), (1, 2)] {
        let g = bs(n, m);
        for i in 0..per_group {
            let w = random_word(rng, 6, 1_000_000);
            let x = normalize(&w, &g);
            ensure!(normalize(&x.to_word(), &g) == x, "{g}: normalize not idempotent on {w}");

            let reduced = oracle::pinch_reduce(&w, n, m, rng);
            ensure!(
                reduced.b_count() == BigInt::from(x.b_length()),
                "{g}: b-length of {w} is {} but the oracle finds {}",
                x.b_length(),
                reduced.b_count()
            );
            ensure!(reduced.is_empty() == x.is_identity(), "{g}: identity test disagrees on {w}");
            let diff = w.concat(&x.to_word().inverse());
            ensure!(oracle::is_identity(&diff, n, m, rng), "{g}: {w} and its normal form {x} differ");

            let relator = relator_conjugate(rng, &g, 2, 5);
            let w2 = insert_at_random(rng, &w, &relator);
            ensure!(normalize(&w2, &g) == x, "{g}: relator insertion changed the normal form of {w}");

            let image = abelianization_image(&w, &g);
            ensure!(
                image == abelianization_image(&x.to_word(), &g) && image == abelianization_image(&w2, &g),
                "{g}: abelianization contradicted on {w}"
            );

            if i % 10 == 0 {
                let id = random_identity_word(rng, &g, 3, 3, 50);
                ensure!(normalize(&id, &g).is_identity(), "{g}: relator product {id} not reduced to e");
                ensure!(oracle::is_identity(&id, n, m, rng), "{g}: oracle rejects relator product {id}");
                identities += 1;
            }
        }
    }
    Ok(format!(
        "{} random words in each of 4 groups agree with the oracle; {identities} relator products reduce to e",
        per_group
    ))
}

fn verify_profile(x: &NormalForm, g: &BsPresentation) -> Result<(), String> {
    let p = coset_profile(x, g);
    let lhs = x
        .mul(&NormalForm::a_power(p.signed_l.clone()), g)
        .mul(&x.inverse(g), g);
    ensure!(lhs == NormalForm::a_power(p.r.clone()), "{g}: {x} a^{} {x}^-1 != a^{}", p.signed_l, p.r);
    ensure!(p.l == p.signed_l.abs(), "{g}: |L| != l for {x}");
    Ok(())
}

fn profiles(cfg: &SelftestConfig, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let pairs = chamber_pairs();
    for &(n, m) in &pairs {
        let g = bs(n, m);
        let pb = coset_profile(&nf("b", &g), &g);
        let expected = (BigInt::from(n), BigInt::from(m.abs()), BigInt::from(m.signum() * n));
        ensure!((pb.l.clone(), pb.r.clone(), pb.signed_l.clone()) == expected, "{g}: profile(b) = {pb}");
        let pbi = coset_profile(&nf("b^-1", &g), &g);
        let expected = (BigInt::from(m.abs()), BigInt::from(n), BigInt::from(m));
        ensure!((pbi.l.clone(), pbi.r.clone(), pbi.signed_l.clone()) == expected, "{g}: profile(b^-1) = {pbi}");
    }

    let groups = [bs(2, 3), bs(2, -3), bs(3, 6), bs(2, -2), bs(4, 6)];
    let count = cfg.count(1_000);
    for i in 0..count {
        let g = &groups[i % groups.len()];
        let x = normalize(&random_word(rng, 5, 1_000), g);
        let xi = x.inverse(g);
        let (p, q) = (coset_profile(&x, g), coset_profile(&xi, g));
        ensure!(p.l == q.r && p.r == q.l, "{g}: l/r not swapped by inversion at {x}");
        verify_profile(&x, g)?;
        verify_profile(&xi, g)?;
    }

    let brute = cfg.count(100);
    for i in 0..brute {
        let (n, m) = if i % 2 == 0 { (2, 3) } else { (2, -3) };
        let g = bs(n, m);
        let w = random_word(rng, 2, 6);
        let p = coset_profile(&normalize(&w, &g), &g);
        let expected = oracle::brute_profile(&w, n, m, 40, rng).ok_or_else(|| format!("{g}: brute search failed on {w}"))?;
        ensure!(
            (BigInt::from(expected.0), BigInt::from(expected.1), expected.2.clone()) == (p.l.clone(), p.r.clone(), p.signed_l.clone()),
            "{g}: profile {p} of {w} disagrees with exhaustive search {expected:?}"
        );
    }
    Ok(format!(
        "b and b^-1 over {} groups; {count} inversions verified; {brute} profiles match exhaustive search",
        pairs.len()
    ))
}

/// Every word `a^{x0} b^{e1} ... b^{ek} a^{xk}` with `k <= max_b` and
/// `x_i` in `exps`.
fn enumerate_words(max_b: usize, exps: &[i64]) -> Vec<GroupWord> {
    let mut level = vec![GroupWord::identity()];
    let mut all = Vec::new();
    for k in 0..=max_b {
        let closed: Vec<GroupWord> = level
            .iter()
            .flat_map(|w| exps.iter().map(move |&x| w.concat(&GroupWord::a(x))))
            .collect();
        all.extend(closed.iter().cloned());
        if k == max_b {
            break;
        }
        level = closed
            .iter()
            .flat_map(|w| [1, -1].into_iter().map(move |e| w.concat(&GroupWord::b(e))))
            .collect();
    }
    all
}

fn index_set(cfg: &SelftestConfig, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let g = bs(2, 3);
    let mut words = enumerate_words(4, &[0, 1, 2]);
    for _ in 0..cfg.count(2_000) {
        words.push(random_word(rng, 4, 50));
    }
    let mut seen = BTreeSet::new();
    for w in &words {
        let l = coset_profile(&normalize(w, &g), &g).l;
        if !seen.contains(&l) {
            ensure!(
                l == BigInt::from(1) || f_set_member(&l, &g).map_err(|e| e.to_string())?,
                "l = {l} of {w} lies outside the index set"
            );
            seen.insert(l);
        }
    }
    for v in [1, 2, 3, 4, 6, 9] {
        ensure!(seen.contains(&BigInt::from(v)), "l = {v} never observed");
    }
    let shown: Vec<String> = seen.iter().map(|x| x.to_string()).collect();
    Ok(format!("{} words; l-values {{{}}}", words.len(), shown.join(",")))
}

fn self_inverse(cfg: &SelftestConfig, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let count = cfg.count(100);
    let mut terms = 0usize;
    for (n, m) in [(2, 3), (2, -3)] {
        let g = bs(n, m);
        for _ in 0..count {
            let x = normalize(&random_word(rng, 4, 20), &g);
            let p = coset_profile(&x, &g);
            let d = decompose_self_inverse(&x, &g).map_err(|e| e.to_string())?;
            let lr = &p.l * &p.r;
            ensure!(d.left_dim() == lr && d.right_dim() == lr, "{g}: dimensions of K_{x} (x) K_{x}^-1 are off");
            let t = d.terms();
            for i in 0..t.len() {
                for j in i + 1..t.len() {
                    ensure!(!isomorphic(&t[i], &t[j]), "{g}: repeated summand {} for {x}", t[i]);
                }
            }
            terms += t.len();
        }
    }
    let g = bs(2, 3);
    let got = decompose_self_inverse(&nf("b", &g), &g).map_err(|e| e.to_string())?;
    let root = |p: i64, q: i64| RootOfUnity::new(p, q).expect("nonzero");
    let expected = BimoduleSum::new([
        Irreducible::Char(RootOfUnity::trivial()),
        Irreducible::Char(root(1, 3)),
        Irreducible::Char(root(2, 3)),
        Irreducible::of_element(&nf("b a b^-1", &g), &g),
    ]);
    ensure!(got == expected, "K_b (x) K_b^-1 = {got}");
    Ok(format!("{} elements, {terms} summands, all multiplicity free; K_b case = {got}", 2 * count))
}

fn exchange(cfg: &SelftestConfig, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let g = bs(2, 3);
    let max_den = 216;
    let candidates = oracle::omega_elements(g.k(), g.n0(), g.m0(), max_den);
    let bound = BigInt::from(max_den);
    let count = cfg.count(50);
    let mut matched = 0usize;
    for _ in 0..count {
        let w = candidates.choose(rng).expect("nonempty").clone();
        let x = normalize(&random_word(rng, 3, 10), &g);
        let p = coset_profile(&x, &g);
        let fast: BTreeSet<BigRational> = exchange_partners(&RootOfUnity::from_angle(w.clone()), &x, &g)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|mu| mu.den() <= &bound)
            .map(|mu| mu.angle().clone())
            .collect();
        let brute: BTreeSet<BigRational> = oracle::brute_exchange(&w, &p.r, &p.signed_l, &candidates)
            .into_iter()
            .collect();
        ensure!(fast == brute, "w = {w}, g = {x}: {} fast vs {} brute solutions", fast.len(), brute.len());
        matched += brute.len();
    }
    ensure!(matched > 0, "no solutions inside the enumeration window");
    Ok(format!("{count} pairs over {} candidates; {matched} solutions matched", candidates.len()))
}

/// Witness check with plain fraction arithmetic.
fn witness_holds(n: i64, m: i64, omega: &RootOfUnity, mu: &RootOfUnity) -> bool {
    let (n, m) = (BigInt::from(n), BigInt::from(m));
    let lhs = omega.angle() * BigRational::from_integer(n);
    let rhs = mu.angle() * BigRational::from_integer(m.clone());
    let twice = mu.angle() * BigRational::from_integer(BigInt::from(2) * m);
    (lhs - rhs).is_integer() && !twice.is_integer()
}

fn rigidity_matrix(_cfg: &SelftestConfig, _rng: &mut ChaCha8Rng) -> Result<String, String> {
    let pairs = chamber_pairs();
    let mut signs = 0usize;
    for &(n1, m1) in &pairs {
        for &(n2, m2) in &pairs {
            let v = theorem_b_obstruction(n1, m1, n2, m2).map_err(|e| e.to_string())?;
            let expected = if n1 != n2 {
                "n_mismatch"
            } else if m1.abs() != m2.abs() {
                "abs_m_mismatch"
            } else if n1 != m1.abs() && m1 != m2 {
                "sign_mismatch"
            } else {
                "no_obstruction"
            };
            ensure!(v.tag() == expected, "({n1},{m1}) vs ({n2},{m2}): {} instead of {expected}", v.tag());
            if let Some(w) = v.witness() {
                ensure!(witness_holds(n1, m1, &w.omega, &w.mu), "({n1},{m1}): witness {w} fails");
                signs += 1;
            }
        }
    }
    let v = theorem_b_obstruction(2, 3, 2, -3).map_err(|e| e.to_string())?;
    let w = v.witness().ok_or("(2,3) vs (2,-3) not separated")?;
    let root = |p: i64, q: i64| RootOfUnity::new(p, q).expect("nonzero");
    ensure!(w.t == 1 && w.omega == root(1, 12) && w.mu == root(1, 18), "(2,3) witness is {w}");
    ensure!(w.omega.pow(&2.into()) == w.mu.pow(&3.into()), "omega^2 != mu^3");
    ensure!(!w.mu.pow(&6.into()).is_trivial(), "mu^6 = 1");
    ensure!(
        theorem_b_obstruction(2, 2, 2, -2).map_err(|e| e.to_string())? == RigidityVerdict::NoObstruction,
        "(2,2) vs (2,-2) obstructed"
    );
    ensure!(sign_witness(2, 2).is_err(), "witness produced for (2,2)");
    Ok(format!("{} ordered pairs, {signs} sign witnesses verified", pairs.len() * pairs.len()))
}

fn isomorphism(_cfg: &SelftestConfig, _rng: &mut ChaCha8Rng) -> Result<String, String> {
    let values: Vec<i64> = (-6..=6).filter(|&x| x != 0).collect();
    let mut grid = Vec::new();
    for &n in &values {
        for &m in &values {
            grid.push((n, m));
        }
    }
    let multiset = |a: (i64, i64), b: (i64, i64)| {
        let mut x = [a.0, a.1];
        x.sort_unstable();
        [1, -1].iter().any(|&eps| {
            let mut y = [eps * b.0, eps * b.1];
            y.sort_unstable();
            x == y
        })
    };
    let mut classes = BTreeSet::new();
    for &p in &grid {
        let c = canonicalize(p.0, p.1).map_err(|e| e.to_string())?;
        ensure!(1 <= c.0 && c.0 <= c.1.abs(), "canonicalize{p:?} = {c:?} outside the chamber");
        ensure!(canonicalize(c.0, c.1).map_err(|e| e.to_string())? == c, "canonicalize not idempotent at {p:?}");
        ensure!(multiset(p, c), "canonicalize{p:?} = {c:?} is not isomorphic to the input");
        classes.insert(c);
        for &q in &grid {
            let iso = is_isomorphic(p.0, p.1, q.0, q.1).map_err(|e| e.to_string())?;
            ensure!(iso == multiset(p, q), "is_isomorphic{p:?}{q:?} = {iso}");
        }
    }
    Ok(format!("{} pairs, {} isomorphism classes", grid.len() * grid.len(), classes.len()))
}

fn random_elliptic(rng: &mut ChaCha8Rng, h: &GroupWord, g: &BsPresentation) -> NormalForm {
    let s = rng.gen_range(1..=12) * if rng.gen_bool(0.5) { 1 } else { -1 };
    normalize(&h.concat(&GroupWord::a(s)).concat(&h.inverse()), g)
}

fn tree_actions(cfg: &SelftestConfig, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let g = bs(2, 3);
    ensure!(
        classify(&nf("b", &g), &g) == Classification::Hyperbolic { translation_length: 1 },
        "classify(b) = {}",
        classify(&nf("b", &g), &g)
    );
    let c = classify(&nf("b a b^-1", &g), &g);
    ensure!(c == Classification::Elliptic { witness: nf("b", &g) }, "classify(b a b^-1) = {c}");

    for &(n, m) in chamber_pairs().iter().chain([(1, 2), (2, 3)].iter()) {
        let h = bs(n, m);
        let ball = export_ball(&TreeVertex::base(), 1, &h);
        let expected = (1 + n + m.abs()) as usize;
        ensure!(ball.vertices.len() == expected, "{h}: radius-1 ball has {} vertices", ball.vertices.len());
    }

    let count = cfg.count(100);
    let mut hyperbolic = 0usize;
    let mut common = 0usize;
    for _ in 0..count {
        let k = rng.gen_range(1..=6);
        let x = normalize(&random_word_exact(rng, k, 20), &g);
        match classify(&x, &g) {
            Classification::Elliptic { witness } => {
                let core = witness.conjugate(&x, &g);
                ensure!(core.b_length() == 0, "elliptic {x} with bad witness {witness}");
                ensure!(fixes_vertex(&x, &crate::bass_serre::vertex_of(&witness, &g), &g), "{x} moves its witness vertex");
            }
            Classification::Hyperbolic { translation_length } => {
                hyperbolic += 1;
                for z in [2i64, 3, -1, -2] {
                    let c = classify(&x.pow(z, &g), &g);
                    let want = Classification::Hyperbolic {
                        translation_length: translation_length * z.unsigned_abs() as usize,
                    };
                    ensure!(c == want, "{x}^{z} classified as {c}");
                }
            }
        }

        let h = random_word(rng, 3, 5);
        let u = random_word(rng, 2, 3);
        let x = random_elliptic(rng, &h, &g);
        let y = random_elliptic(rng, &h.concat(&u), &g);
        if classify(&x.mul(&y, &g), &g).is_elliptic() {
            let found = common_fixed_vertex(&[x.clone(), y.clone()], &g, 8).map_err(|e| e.to_string())?;
            let (v, _) = found.ok_or_else(|| format!("no common fixed vertex for {x} and {y} within radius 8"))?;
            ensure!(fixes_vertex(&x, &v, &g) && fixes_vertex(&y, &v, &g), "reported vertex {v:?} not fixed");
            common += 1;
        }
    }
    ensure!(hyperbolic > 0 && common > 0, "degenerate sample: {hyperbolic} hyperbolic, {common} elliptic pairs");
    Ok(format!(
        "{hyperbolic} hyperbolic powers checked; {common} elliptic pairs with elliptic product share a vertex"
    ))
}

fn quasi_centralizer(cfg: &SelftestConfig, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let g = bs(2, -2);
    ensure!(!qc_member(&nf("b", &g), &g), "b in QC");
    ensure!(qc_member(&nf("b^2", &g), &g), "b^2 not in QC");

    let count = cfg.count(100);
    let b = nf("b", &g);
    let two = BigInt::from(2);
    let even = |w: &GroupWord| (abelianization_image(w, &g).b_sum % BigInt::from(2)).is_zero();
    let mut members = Vec::new();
    for _ in 0..count {
        let w = random_word(rng, 6, 30);
        let x = normalize(&w, &g);
        let inside = qc_member(&x, &g);
        ensure!(inside == even(&w), "QC membership of {x} disagrees with the b-exponent parity");
        let c1 = centralizes(&x, &two, &g);
        let c2 = centralizes(&x.mul(&b, &g), &two, &g);
        ensure!(c1 != c2, "{x}: g and gb both {} centralize a^2", if c1 { "do" } else { "do not" });
        if inside {
            members.push(x);
        }
    }
    ensure!(members.len() >= 2, "too few QC samples");
    for i in 0..members.len() {
        let x = &members[i];
        let y = &members[(i * 7 + 3) % members.len()];
        let h = normalize(&random_word(rng, 4, 30), &g);
        ensure!(qc_member(&x.inverse(&g), &g), "QC not closed under inverse at {x}");
        ensure!(qc_member(&x.mul(y, &g), &g), "QC not closed under products at {x}, {y}");
        ensure!(qc_member(&h.conjugate(x, &g), &g), "QC not normal: {h}^-1 {x} {h}");
    }
    Ok(format!("{count} samples; {} QC members closed under products, inverses and conjugation", members.len()))
}
