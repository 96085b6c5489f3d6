//! Brute-force reference procedures used to cross-check the fast paths.
//!
//! Nothing here touches the normal-form machinery: words are rewritten by
//! eliminating pinches `b a^s b^-1` (`n | s`) and `b^-1 a^s b` (`m | s`) in
//! a random order until none remain. By Britton's lemma the result is a
//! reduced expression, so its emptiness decides the word problem and its
//! b-letter count is the b-length.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::group::{GroupWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedExpression {
    pub syllables: Vec<(Letter, BigInt)>,
}

impl ReducedExpression {
    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn b_count(&self) -> BigInt {
        self.syllables
            .iter()
            .filter(|(l, _)| *l == Letter::B)
            .map(|(_, e)| e.abs())
            .sum()
    }

    /// `Some(E)` when the expression is the single power `a^E` (or empty).
    pub fn as_a_power(&self) -> Option<BigInt> {
        match self.syllables.as_slice() {
            [] => Some(BigInt::zero()),
            [(Letter::A, e)] => Some(e.clone()),
            _ => None,
        }
    }
}

fn merge(syl: Vec<(Letter, BigInt)>) -> Vec<(Letter, BigInt)> {
    let mut out: Vec<(Letter, BigInt)> = Vec::with_capacity(syl.len());
    for (l, e) in syl {
        if e.is_zero() {
            continue;
        }
        if let Some(last) = out.last_mut() {
            if last.0 == l {
                last.1 += e;
                if last.1.is_zero() {
                    out.pop();
                }
                continue;
            }
        }
        out.push((l, e));
    }
    out
}

/// Eliminates pinches in a random order until the expression is reduced.
pub fn pinch_reduce<R: Rng + ?Sized>(w: &GroupWord, n: i64, m: i64, rng: &mut R) -> ReducedExpression {
    let big_n = BigInt::from(n);
    let big_m = BigInt::from(m);
    let mut syl: Vec<(Letter, BigInt)> = merge(
        w.syllables()
            .iter()
            .map(|s| (s.letter, s.exp.clone()))
            .collect(),
    );
    loop {
        let mut sites = Vec::new();
        for i in 0..syl.len().saturating_sub(2) {
            let (l0, e0) = &syl[i];
            let (l1, s) = &syl[i + 1];
            let (l2, e2) = &syl[i + 2];
            if *l0 != Letter::B || *l1 != Letter::A || *l2 != Letter::B {
                continue;
            }
            let up = e0.is_positive() && e2.is_negative() && s.is_multiple_of(&big_n);
            let down = e0.is_negative() && e2.is_positive() && s.is_multiple_of(&big_m);
            if up || down {
                sites.push(i);
            }
        }
        if sites.is_empty() {
            return ReducedExpression { syllables: syl };
        }
        let i = sites[rng.gen_range(0..sites.len())];
        let e0 = syl[i].1.clone();
        let s = syl[i + 1].1.clone();
        let e2 = syl[i + 2].1.clone();
        let (new_e0, image, new_e2) = if e0.is_positive() {
            (e0 - 1, &s / &big_n * &big_m, e2 + 1)
        } else {
            (e0 + 1, &s / &big_m * &big_n, e2 - 1)
        };
        let mut next = syl[..i].to_vec();
        next.push((Letter::B, new_e0));
        next.push((Letter::A, image));
        next.push((Letter::B, new_e2));
        next.extend_from_slice(&syl[i + 3..]);
        syl = merge(next);
    }
}

pub fn is_identity<R: Rng + ?Sized>(w: &GroupWord, n: i64, m: i64, rng: &mut R) -> bool {
    pinch_reduce(w, n, m, rng).is_empty()
}

pub fn b_length<R: Rng + ?Sized>(w: &GroupWord, n: i64, m: i64, rng: &mut R) -> BigInt {
    pinch_reduce(w, n, m, rng).b_count()
}

/// Smallest `z` in `1..=bound` with `x a^z x^-1` a power of `a`, returned
/// with that power.
fn smallest_conjugate_power<R: Rng + ?Sized>(
    x: &GroupWord,
    n: i64,
    m: i64,
    bound: u64,
    rng: &mut R,
) -> Option<(u64, BigInt)> {
    let xi = x.inverse();
    (1..=bound).find_map(|z| {
        let w = x.concat(&GroupWord::a(z)).concat(&xi);
        pinch_reduce(&w, n, m, rng).as_a_power().map(|e| (z, e))
    })
}

/// `(l, r, L)` by exhaustive search: `l` is the least `z > 0` with
/// `g a^z g^-1` in `<a>`, `r` the least `y > 0` with `g^-1 a^y g` in `<a>`.
pub fn brute_profile<R: Rng + ?Sized>(
    g: &GroupWord,
    n: i64,
    m: i64,
    bound: u64,
    rng: &mut R,
) -> Option<(u64, u64, BigInt)> {
    let (l, image) = smallest_conjugate_power(g, n, m, bound, rng)?;
    let (r, _) = smallest_conjugate_power(&g.inverse(), n, m, bound, rng)?;
    let signed = if image.is_negative() {
        -BigInt::from(l)
    } else {
        BigInt::from(l)
    };
    Some((l, r, signed))
}

/// Searches `a^i g a^j = h` over `|i|, |j| <= range`.
pub fn in_double_coset_window<R: Rng + ?Sized>(
    g: &GroupWord,
    h: &GroupWord,
    n: i64,
    m: i64,
    range: i64,
    rng: &mut R,
) -> bool {
    let hi = h.inverse();
    for i in -range..=range {
        for j in -range..=range {
            let w = GroupWord::a(i).concat(g).concat(&GroupWord::a(j)).concat(&hi);
            if is_identity(&w, n, m, rng) {
                return true;
            }
        }
    }
    false
}

/// Angle `p/q` in `[0, 1)`.
pub fn angle(p: i64, q: i64) -> BigRational {
    let x = BigRational::new(BigInt::from(p), BigInt::from(q));
    let f = x.floor();
    x - f
}

/// All angles `p/q` (`0 <= p < q <= max_den`, reduced) whose denominator
/// divides `k * n0^s * |m0|^t` for some `s + t > 0`, i.e. the roots of
/// unity of bounded order whose order divides a coset index.
pub fn omega_elements(k: i64, n0: i64, m0: i64, max_den: i64) -> Vec<BigRational> {
    let (a, b) = (n0.unsigned_abs() as i128, m0.unsigned_abs() as i128);
    let s_max = if a == 1 { 1 } else { 40 };
    let t_max = if b == 1 { 1 } else { 40 };
    let mut index_set = Vec::new();
    for s in 0..=s_max {
        for t in 0..=t_max {
            if s + t == 0 {
                continue;
            }
            let f = (k as i128)
                .checked_mul(a.checked_pow(s).unwrap_or(i128::MAX))
                .and_then(|x| x.checked_mul(b.checked_pow(t).unwrap_or(i128::MAX)));
            if let Some(f) = f {
                index_set.push(f);
            }
        }
    }
    let mut values = Vec::new();
    for q in 1..=max_den {
        if !index_set.iter().any(|f| f % q as i128 == 0) {
            continue;
        }
        for p in 0..q {
            if p.gcd(&q) == 1 {
                values.push(angle(p, q));
            }
        }
    }
    values
}

/// Every angle `mu` among `candidates` with `mu * big_l == w * r (mod 1)`.
pub fn brute_exchange(w: &BigRational, r: &BigInt, big_l: &BigInt, candidates: &[BigRational]) -> Vec<BigRational> {
    let target = w * BigRational::from(r.clone());
    candidates
        .iter()
        .filter(|mu| {
            let diff = *mu * BigRational::from(big_l.clone()) - &target;
            diff.is_integer()
        })
        .cloned()
        .collect()
}
