//! Symbolic bookkeeping for the irreducible bimodules of the Hecke pair.
//!
//! Two kinds of irreducibles appear: coset bimodules `K_g`, labelled by a
//! double coset and carrying dimensions `(l(g), r(g))`, and one-dimensional
//! character twists `K_w` labelled by a root of unity `w`. Roots of unity
//! are exact angles in `[0, 1)`; no floating point is involved anywhere.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{BsPresentation, NormalForm};
use crate::hecke::{coset_profile, double_coset, DoubleCoset};
use crate::json;

/// `e^{2 pi i p/q}` stored as the reduced angle `p/q` with `0 <= p < q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    angle: BigRational,
}

impl RootOfUnity {
    pub fn trivial() -> Self {
        RootOfUnity {
            angle: BigRational::zero(),
        }
    }

    pub fn from_angle(x: BigRational) -> Self {
        let angle = &x - x.floor();
        RootOfUnity { angle }
    }

    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Self::from_angle(BigRational::new(num.into(), den)))
    }

    pub fn angle(&self) -> &BigRational {
        &self.angle
    }

    pub fn num(&self) -> &BigInt {
        self.angle.numer()
    }

    /// The multiplicative order.
    pub fn den(&self) -> &BigInt {
        self.angle.denom()
    }

    pub fn is_trivial(&self) -> bool {
        self.angle.is_zero()
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        Self::from_angle(&self.angle + &other.angle)
    }

    pub fn inverse(&self) -> RootOfUnity {
        Self::from_angle(-self.angle.clone())
    }

    pub fn pow(&self, z: &BigInt) -> RootOfUnity {
        Self::from_angle(&self.angle * BigRational::from_integer(z.clone()))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.angle.numer(), self.angle.denom())
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    /// Parses `p/q` (or a bare integer, read as `p/1`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("expected a fraction p/q, got {s:?}"));
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if !q.is_positive() {
            return Err(bad());
        }
        RootOfUnity::new(p, q)
    }
}

/// Whether the order of `w` divides some coset index `k n0^s |m0|^t`.
pub fn omega_member(w: &RootOfUnity, g: &BsPresentation) -> Result<bool> {
    g.require_standing()?;
    let mut rest = w.den().clone();
    let primes = BigInt::from(g.n0().abs() * g.m0().abs());
    loop {
        let d = rest.gcd(&primes);
        if d.is_one() {
            break;
        }
        rest /= d;
    }
    Ok(BigInt::from(g.k()).is_multiple_of(&rest))
}

/// The character `w_g = e^{2 pi i / r(g)}`.
pub fn char_of(x: &NormalForm, g: &BsPresentation) -> RootOfUnity {
    let r = coset_profile(x, g).r;
    RootOfUnity::from_angle(BigRational::new(BigInt::one(), r))
}

pub fn char_product(w: &RootOfUnity, u: &RootOfUnity) -> RootOfUnity {
    w.mul(u)
}

#[derive(Debug, Clone)]
pub enum Irreducible {
    Coset(DoubleCoset),
    Char(RootOfUnity),
    /// `K_w (x) K_g`: a coset bimodule with its left action twisted by the
    /// character `w`. Only `w` modulo the `r(g)`-th roots matters.
    Twisted { twist: RootOfUnity, coset: DoubleCoset },
}

/// Isomorphism class of an irreducible: the double coset (absent for
/// characters) and the twist reduced modulo the `r`-th roots of unity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Char(RootOfUnity),
    Coset(DoubleCoset, RootOfUnity),
}

impl Irreducible {
    /// The coset bimodule of `<a> x <a>`; the trivial double coset is
    /// spelled as the trivial character.
    pub fn coset(d: DoubleCoset) -> Irreducible {
        if d.is_trivial() {
            Irreducible::Char(RootOfUnity::trivial())
        } else {
            Irreducible::Coset(d)
        }
    }

    pub fn of_element(x: &NormalForm, g: &BsPresentation) -> Irreducible {
        Irreducible::coset(double_coset(x, g))
    }

    /// `K_w (x) K_d` in canonical spelling.
    pub fn twisted(twist: RootOfUnity, d: DoubleCoset) -> Irreducible {
        let r = BigRational::from_integer(d.profile().r.clone());
        let scaled = twist.angle() * &r;
        let reduced = RootOfUnity::from_angle((scaled.clone() - scaled.floor()) / r);
        if d.is_trivial() {
            Irreducible::Char(reduced)
        } else if reduced.is_trivial() {
            Irreducible::Coset(d)
        } else {
            Irreducible::Twisted { twist: reduced, coset: d }
        }
    }

    fn key(&self) -> Key {
        match self {
            Irreducible::Char(w) => Key::Char(w.clone()),
            Irreducible::Coset(d) => Irreducible::twisted(RootOfUnity::trivial(), d.clone()).key_canonical(),
            Irreducible::Twisted { twist, coset } => Irreducible::twisted(twist.clone(), coset.clone()).key_canonical(),
        }
    }

    fn key_canonical(&self) -> Key {
        match self {
            Irreducible::Char(w) => Key::Char(w.clone()),
            Irreducible::Coset(d) => Key::Coset(d.clone(), RootOfUnity::trivial()),
            Irreducible::Twisted { twist, coset } => Key::Coset(coset.clone(), twist.clone()),
        }
    }

    fn sort_key(&self) -> (Option<String>, Key) {
        let key = self.key();
        let label = match &key {
            Key::Char(_) => None,
            Key::Coset(d, _) => Some(d.to_string()),
        };
        (label, key)
    }

    fn canonical(&self) -> Irreducible {
        match self {
            Irreducible::Char(_) => self.clone(),
            Irreducible::Coset(d) => Irreducible::coset(d.clone()),
            Irreducible::Twisted { twist, coset } => Irreducible::twisted(twist.clone(), coset.clone()),
        }
    }

    pub fn left_dim(&self) -> BigInt {
        match self {
            Irreducible::Coset(d) | Irreducible::Twisted { coset: d, .. } => d.profile().l.clone(),
            Irreducible::Char(_) => BigInt::one(),
        }
    }

    pub fn right_dim(&self) -> BigInt {
        match self {
            Irreducible::Coset(d) | Irreducible::Twisted { coset: d, .. } => d.profile().r.clone(),
            Irreducible::Char(_) => BigInt::one(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Irreducible::Char(w) => json!({"char": w.to_string()}),
            Irreducible::Coset(d) => json!({
                "coset": d.to_string(),
                "l": json::int(&d.profile().l),
                "r": json::int(&d.profile().r),
            }),
            Irreducible::Twisted { twist, coset } => json!({
                "coset": coset.to_string(),
                "twist": twist.to_string(),
                "l": json::int(&coset.profile().l),
                "r": json::int(&coset.profile().r),
            }),
        }
    }
}

impl fmt::Display for Irreducible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irreducible::Coset(d) => write!(f, "K[{d}]"),
            Irreducible::Char(w) => write!(f, "K<{w}>"),
            Irreducible::Twisted { twist, coset } => write!(f, "K<{twist}>K[{coset}]"),
        }
    }
}

/// Isomorphism of irreducibles: equal double cosets with twists agreeing
/// modulo the `r`-th roots of unity, or equal characters. A coset bimodule
/// is never a character except for the trivial one.
pub fn isomorphic(x: &Irreducible, y: &Irreducible) -> bool {
    x.key() == y.key()
}

impl PartialEq for Irreducible {
    fn eq(&self, other: &Self) -> bool {
        isomorphic(self, other)
    }
}

impl Eq for Irreducible {}

impl Ord for Irreducible {
    /// Characters by angle, then cosets by their printed representative
    /// and twist.
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Irreducible {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A direct sum of irreducibles, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BimoduleSum {
    terms: Vec<Irreducible>,
}

impl BimoduleSum {
    pub fn new(terms: impl IntoIterator<Item = Irreducible>) -> Self {
        let mut terms: Vec<Irreducible> = terms.into_iter().map(|t| t.canonical()).collect();
        terms.sort_by_cached_key(Irreducible::sort_key);
        BimoduleSum { terms }
    }

    pub fn terms(&self) -> &[Irreducible] {
        &self.terms
    }

    pub fn left_dim(&self) -> BigInt {
        self.terms.iter().map(Irreducible::left_dim).sum()
    }

    pub fn right_dim(&self) -> BigInt {
        self.terms.iter().map(Irreducible::right_dim).sum()
    }

    /// True when no two summands are isomorphic.
    pub fn is_multiplicity_free(&self) -> bool {
        self.terms
            .iter()
            .enumerate()
            .all(|(i, x)| self.terms[i + 1..].iter().all(|y| !isomorphic(x, y)))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(Irreducible::to_json).collect())
    }
}

impl fmt::Display for BimoduleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            t.fmt(f)?;
        }
        Ok(())
    }
}

/// Dimensions of a relative tensor product: both sides multiply.
pub fn tensor_dims(x: &BimoduleSum, y: &BimoduleSum) -> (BigInt, BigInt) {
    (x.left_dim() * y.left_dim(), x.right_dim() * y.right_dim())
}

/// Decomposition of `K_g (x) K_{g^-1}` into irreducibles.
///
/// The summand through `g a^0 g^-1` splits into the `r(g)` characters
/// `w_g^i`. For `1 <= i < l(g)` the summand through `h = g a^i g^-1` is
/// `K_h` only when `l(h) = r(g)`; in general `h` centralizes `a^{r(g)}`,
/// `l(h)` divides `r(g)`, and the summand is the sum of the twists
/// `K_{w_g^j} (x) K_h` for `j < r(g) / l(h)`.
pub fn decompose_self_inverse(x: &NormalForm, g: &BsPresentation) -> Result<BimoduleSum> {
    g.require_standing()?;
    let p = coset_profile(x, g);
    let r = p.r.to_u64().ok_or_else(|| Error::InvalidArgument(format!("r = {} too large", p.r)))?;
    let l = p.l.to_u64().ok_or_else(|| Error::InvalidArgument(format!("l = {} too large", p.l)))?;
    let root = |j: u64| RootOfUnity::from_angle(BigRational::new(BigInt::from(j), p.r.clone()));
    let mut terms: Vec<Irreducible> = (0..r).map(|i| Irreducible::Char(root(i))).collect();
    let xi = x.inverse(g);
    for i in 1..l {
        let h = x.mul(&NormalForm::a_power(i), g).mul(&xi, g);
        let d = double_coset(&h, g);
        let lh = &d.profile().l;
        if !p.r.is_multiple_of(lh) {
            return Err(Error::InternalCheck(format!("l({h}) = {lh} does not divide r({x}) = {}", p.r)));
        }
        let copies = (&p.r / lh).to_u64().expect("bounded by r");
        terms.extend((0..copies).map(|j| Irreducible::twisted(root(j), d.clone())));
    }
    Ok(BimoduleSum::new(terms))
}

/// Every `mu` in the root group with `mu^{L(g)} = w^{r(g)}`.
pub fn exchange_partners(w: &RootOfUnity, x: &NormalForm, g: &BsPresentation) -> Result<BTreeSet<RootOfUnity>> {
    if !omega_member(w, g)? {
        return Err(Error::InvalidArgument(format!("{w} is outside the root group")));
    }
    let p = coset_profile(x, g);
    let target = w.angle() * BigRational::from_integer(p.r.clone());
    let target = if p.signed_l.is_negative() { -target } else { target };
    let count = p.l.to_u64().ok_or_else(|| Error::InvalidArgument(format!("l = {} too large", p.l)))?;
    let mut out = BTreeSet::new();
    for j in 0..count {
        let mu = RootOfUnity::from_angle(
            (&target + BigRational::from_integer(BigInt::from(j))) / BigRational::from_integer(p.l.clone()),
        );
        if omega_member(&mu, g)? {
            out.insert(mu);
        }
    }
    Ok(out)
}
