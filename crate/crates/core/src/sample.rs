//! Random words for property checks and the self-test.

use num_bigint::BigInt;
use rand::Rng;

use crate::group::{BsPresentation, GroupWord, Letter};

/// A random word `a^{x_0} b^{e_1} a^{x_1} ... b^{e_k} a^{x_k}` with
/// `k <= max_b` unit b-letters and `|x_i| <= max_a`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, max_b: usize, max_a: i64) -> GroupWord {
    let k = rng.gen_range(0..=max_b);
    random_word_exact(rng, k, max_a)
}

pub fn random_word_exact<R: Rng + ?Sized>(rng: &mut R, b_letters: usize, max_a: i64) -> GroupWord {
    let mut w = GroupWord::identity();
    w.push(Letter::A, BigInt::from(rng.gen_range(-max_a..=max_a)));
    for _ in 0..b_letters {
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        w.push(Letter::B, BigInt::from(e));
        w.push(Letter::A, BigInt::from(rng.gen_range(-max_a..=max_a)));
    }
    w
}

/// A conjugate `x r^{+-1} x^-1` of the defining relator `b a^n b^-1 a^-m`.
pub fn relator_conjugate<R: Rng + ?Sized>(rng: &mut R, g: &BsPresentation, max_b: usize, max_a: i64) -> GroupWord {
    let relator = GroupWord::from_syllables([
        (Letter::B, BigInt::from(1)),
        (Letter::A, BigInt::from(g.n())),
        (Letter::B, BigInt::from(-1)),
        (Letter::A, BigInt::from(-g.m())),
    ]);
    let r = if rng.gen_bool(0.5) {
        relator
    } else {
        relator.inverse()
    };
    let x = random_word(rng, max_b, max_a);
    x.concat(&r).concat(&x.inverse())
}

/// Splits `w` at a random syllable boundary and inserts `insert`.
pub fn insert_at_random<R: Rng + ?Sized>(rng: &mut R, w: &GroupWord, insert: &GroupWord) -> GroupWord {
    let syl = w.syllables();
    let cut = rng.gen_range(0..=syl.len());
    let head = GroupWord::from_syllables(syl[..cut].iter().map(|s| (s.letter, s.exp.clone())));
    let rest = GroupWord::from_syllables(syl[cut..].iter().map(|s| (s.letter, s.exp.clone())));
    head.concat(insert).concat(&rest)
}

/// A product of `count` relator conjugates: always the identity.
pub fn random_identity_word<R: Rng + ?Sized>(
    rng: &mut R,
    g: &BsPresentation,
    count: usize,
    max_b: usize,
    max_a: i64,
) -> GroupWord {
    let mut w = GroupWord::identity();
    for _ in 0..count {
        let r = relator_conjugate(rng, g, max_b, max_a);
        w = insert_at_random(rng, &w, &r);
    }
    w
}
