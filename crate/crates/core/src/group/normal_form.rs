//! Unique right-pushed normal forms and the word problem.
//!
//! Every element of BS(n,m) is written uniquely as
//! `a^{s_1} b^{e_1} a^{s_2} b^{e_2} ... a^{s_k} b^{e_k} a^{tail}` where
//! `0 <= s_i < |m|` when `e_i = +1`, `0 <= s_i < |n|` when `e_i = -1`, and no
//! `b^{e} a^0 b^{-e}` pinch appears. Surplus a-powers are pushed rightward
//! through each b-letter with `a^{jm} b = b a^{jn}` and
//! `a^{jn} b^-1 = b^-1 a^{jm}`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::presentation::BsPresentation;
use super::word::{GroupWord, Letter};

/// Direction of a stable letter: `b` or `b^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orient {
    Pos,
    Neg,
}

impl Orient {
    pub fn sign(self) -> i64 {
        match self {
            Orient::Pos => 1,
            Orient::Neg => -1,
        }
    }

    pub fn flip(self) -> Orient {
        match self {
            Orient::Pos => Orient::Neg,
            Orient::Neg => Orient::Pos,
        }
    }
}

/// One `a^{shift} b^{orient}` block of a normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crossing {
    pub shift: BigInt,
    pub orient: Orient,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    prefix: Vec<Crossing>,
    tail: BigInt,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm::default()
    }

    pub fn a_power(exp: impl Into<BigInt>) -> Self {
        NormalForm {
            prefix: Vec::new(),
            tail: exp.into(),
        }
    }

    pub fn prefix(&self) -> &[Crossing] {
        &self.prefix
    }

    pub fn tail(&self) -> &BigInt {
        &self.tail
    }

    /// Number of b-letters, which is the b-length of the element.
    pub fn b_length(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_identity(&self) -> bool {
        self.prefix.is_empty() && self.tail.is_zero()
    }

    /// The same element with its trailing a-power removed. This is the
    /// canonical representative of the left coset `g<a>`.
    pub fn without_tail(&self) -> NormalForm {
        NormalForm {
            prefix: self.prefix.clone(),
            tail: BigInt::zero(),
        }
    }

    pub(crate) fn with_tail(&self, tail: BigInt) -> NormalForm {
        NormalForm {
            prefix: self.prefix.clone(),
            tail,
        }
    }

    pub fn to_word(&self) -> GroupWord {
        let mut w = GroupWord::identity();
        for c in &self.prefix {
            w.push(Letter::A, c.shift.clone());
            w.push(Letter::B, BigInt::from(c.orient.sign()));
        }
        w.push(Letter::A, self.tail.clone());
        w
    }

    pub fn inverse(&self, g: &BsPresentation) -> NormalForm {
        normalize(&self.to_word().inverse(), g)
    }

    pub fn mul(&self, other: &NormalForm, g: &BsPresentation) -> NormalForm {
        let mut r = Reducer::resume(g, self.clone());
        r.push_word(&other.to_word());
        r.finish()
    }

    pub fn mul_word(&self, other: &GroupWord, g: &BsPresentation) -> NormalForm {
        let mut r = Reducer::resume(g, self.clone());
        r.push_word(other);
        r.finish()
    }

    pub fn pow(&self, z: i64, g: &BsPresentation) -> NormalForm {
        let base = if z < 0 { self.inverse(g) } else { self.clone() };
        let mut out = NormalForm::identity();
        for _ in 0..z.unsigned_abs() {
            out = out.mul(&base, g);
        }
        out
    }

    /// `self^-1 * x * self`.
    pub fn conjugate(&self, x: &NormalForm, g: &BsPresentation) -> NormalForm {
        self.inverse(g).mul(x, g).mul(self, g)
    }
}

impl Ord for NormalForm {
    /// Orders by b-length, then crossing fields, then tail.
    fn cmp(&self, other: &Self) -> Ordering {
        self.prefix
            .len()
            .cmp(&other.prefix.len())
            .then_with(|| self.prefix.cmp(&other.prefix))
            .then_with(|| self.tail.cmp(&other.tail))
    }
}

impl PartialOrd for NormalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

/// Left-to-right stack machine producing normal forms.
struct Reducer<'g> {
    g: &'g BsPresentation,
    abs_n: BigInt,
    abs_m: BigInt,
    stack: Vec<Crossing>,
    tail: BigInt,
}

impl<'g> Reducer<'g> {
    fn resume(g: &'g BsPresentation, start: NormalForm) -> Self {
        Reducer {
            g,
            abs_n: BigInt::from(g.n().abs()),
            abs_m: BigInt::from(g.m().abs()),
            stack: start.prefix,
            tail: start.tail,
        }
    }

    fn push_word(&mut self, w: &GroupWord) {
        for s in w.syllables() {
            match s.letter {
                Letter::A => self.tail += &s.exp,
                Letter::B => {
                    let orient = if s.exp.is_positive() {
                        Orient::Pos
                    } else {
                        Orient::Neg
                    };
                    let mut count = s.exp.abs();
                    while count.is_positive() {
                        self.push_b(orient);
                        count -= 1;
                    }
                }
            }
        }
    }

    fn push_b(&mut self, orient: Orient) {
        let n = BigInt::from(self.g.n());
        let m = BigInt::from(self.g.m());
        if let Some(top) = self.stack.last() {
            if top.orient == orient.flip() {
                // b a^t b^-1 with n | t, or b^-1 a^t b with m | t.
                let (divisor, image) = match top.orient {
                    Orient::Pos => (&n, &m),
                    Orient::Neg => (&m, &n),
                };
                if self.tail.is_multiple_of(divisor) {
                    let top = self.stack.pop().expect("nonempty");
                    self.tail = top.shift + (&self.tail / divisor) * image;
                    return;
                }
            }
        }
        let (modulus, sign, carry) = match orient {
            Orient::Pos => (&self.abs_m, self.g.m().signum(), &n),
            Orient::Neg => (&self.abs_n, self.g.n().signum(), &m),
        };
        let (q, s) = self.tail.div_mod_floor(modulus);
        self.tail = q * sign * carry;
        self.stack.push(Crossing { shift: s, orient });
    }

    fn finish(self) -> NormalForm {
        NormalForm {
            prefix: self.stack,
            tail: self.tail,
        }
    }
}

/// The unique normal form of `w` in `g`.
pub fn normalize(w: &GroupWord, g: &BsPresentation) -> NormalForm {
    let mut r = Reducer::resume(g, NormalForm::identity());
    r.push_word(w);
    r.finish()
}

pub fn is_identity(w: &GroupWord, g: &BsPresentation) -> bool {
    normalize(w, g).is_identity()
}

pub fn multiply(u: &NormalForm, v: &NormalForm, g: &BsPresentation) -> NormalForm {
    u.mul(v, g)
}

pub fn invert(u: &NormalForm, g: &BsPresentation) -> NormalForm {
    u.inverse(g)
}

pub fn b_length(w: &GroupWord, g: &BsPresentation) -> usize {
    normalize(w, g).b_length()
}

/// Conjugates `g` to a cyclically reduced element.
///
/// Returns `(conjugator, core)` with `conjugator^-1 * g * conjugator = core`.
/// A rotation is taken only when the wrap-around syllable closes a pinch,
/// so each step removes two b-letters.
pub fn cyclically_reduce(x: &NormalForm, g: &BsPresentation) -> (NormalForm, NormalForm) {
    let n = BigInt::from(g.n());
    let m = BigInt::from(g.m());
    let mut conjugator = NormalForm::identity();
    let mut core = x.clone();
    while core.prefix.len() >= 2 {
        let first = &core.prefix[0];
        let last = &core.prefix[core.prefix.len() - 1];
        if last.orient != first.orient.flip() {
            break;
        }
        let wrap = &core.tail + &first.shift;
        let divisor = match last.orient {
            Orient::Pos => &n,
            Orient::Neg => &m,
        };
        if !wrap.is_multiple_of(divisor) {
            break;
        }
        let step = NormalForm {
            prefix: vec![first.clone()],
            tail: BigInt::zero(),
        };
        core = step.conjugate(&core, g);
        conjugator = conjugator.mul(&step, g);
    }
    (conjugator, core)
}

/// Image of an element in the abelianization `Z (b) x Z/(m-n) (a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianImage {
    pub b_sum: BigInt,
    pub a_residue: BigInt,
    /// `|m - n|`; zero means the a-part is free.
    pub modulus: BigInt,
}

impl AbelianImage {
    pub fn is_trivial(&self) -> bool {
        self.b_sum.is_zero() && self.a_residue.is_zero()
    }
}

impl fmt::Display for AbelianImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus.is_zero() {
            write!(f, "({}, {})", self.b_sum, self.a_residue)
        } else {
            write!(f, "({}, {} mod {})", self.b_sum, self.a_residue, self.modulus)
        }
    }
}

pub fn abelianization_image(w: &GroupWord, g: &BsPresentation) -> AbelianImage {
    let modulus = BigInt::from((g.m() - g.n()).abs());
    let mut b_sum = BigInt::zero();
    let mut a_sum = BigInt::zero();
    for s in w.syllables() {
        match s.letter {
            Letter::A => a_sum += &s.exp,
            Letter::B => b_sum += &s.exp,
        }
    }
    let a_residue = if modulus.is_zero() {
        a_sum
    } else {
        a_sum.mod_floor(&modulus)
    };
    AbelianImage {
        b_sum,
        a_residue,
        modulus,
    }
}
