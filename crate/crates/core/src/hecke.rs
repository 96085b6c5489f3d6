//! Hecke-pair combinatorics of `<a> <= BS(n,m)`.
//!
//! For an element `g`, `l(g)` is the least positive `z` with
//! `g a^z g^-1` in `<a>` and `r(g) = l(g^-1)`; the signed exponent `L(g)`
//! satisfies `g a^{L(g)} g^-1 = a^{r(g)}`. Double cosets `<a> g <a>` are
//! canonicalized through the left cosets `a^i g <a>` they contain.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{normalize, parse_terms, BsPresentation, GroupWord, Letter, NormalForm, Orient};
use crate::json;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetProfile {
    /// Number of cosets `<a> x` in the double coset; always positive.
    pub l: BigInt,
    /// Number of cosets `x <a>` in the double coset; always positive.
    pub r: BigInt,
    /// `L` with `g a^L g^-1 = a^r`; `|L| = l`.
    pub signed_l: BigInt,
}

impl CosetProfile {
    pub fn trivial() -> Self {
        CosetProfile {
            l: BigInt::one(),
            r: BigInt::one(),
            signed_l: BigInt::one(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "l": json::int(&self.l),
            "r": json::int(&self.r),
            "L": json::int(&self.signed_l),
        })
    }
}

impl fmt::Display for CosetProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l={} r={} L={}", self.l, self.r, self.signed_l)
    }
}

/// Computes `(l, r, L)` in one right-to-left pass over the b-letters.
///
/// Invariant of the pass: the suffix `s` read so far satisfies
/// `s a^A s^-1 = a^E` with `A` minimal. Crossing `b` requires `n | E`,
/// crossing `b^-1` requires `m | E`.
pub fn coset_profile(x: &NormalForm, g: &BsPresentation) -> CosetProfile {
    let n = BigInt::from(g.n());
    let m = BigInt::from(g.m());
    let mut a = BigInt::one();
    let mut e = BigInt::one();
    for c in x.prefix().iter().rev() {
        let (divisor, image) = match c.orient {
            Orient::Pos => (&n, &m),
            Orient::Neg => (&m, &n),
        };
        let constraint = divisor.abs();
        let j = &constraint / constraint.gcd(&e);
        a *= &j;
        e = e * j / divisor * image;
    }
    let signed_l = if e.is_negative() { -a.clone() } else { a.clone() };
    CosetProfile {
        l: a,
        r: e.abs(),
        signed_l,
    }
}

/// `(1 <= s + t)`-generated index set `F = { k n0^s |m0|^t }`.
pub fn f_set_member(z: &BigInt, g: &BsPresentation) -> Result<bool> {
    g.require_standing()?;
    if !z.is_positive() {
        return Err(Error::InvalidArgument(format!("index {z} must be positive")));
    }
    let k = BigInt::from(g.k());
    if !z.is_multiple_of(&k) {
        return Ok(false);
    }
    let mut q = z / &k;
    let mut exponents = 0u64;
    for base in [g.n0().abs(), g.m0().abs()] {
        if base == 1 {
            // a unit base can always supply the required positive exponent
            exponents += 1;
            continue;
        }
        let base = BigInt::from(base);
        while q.is_multiple_of(&base) {
            q /= &base;
            exponents += 1;
        }
    }
    Ok(q.is_one() && exponents > 0)
}

/// All members of `F` with `s + t <= depth`.
pub fn f_set(depth: u32, g: &BsPresentation) -> Result<BTreeSet<BigInt>> {
    g.require_standing()?;
    let k = BigInt::from(g.k());
    let n0 = BigInt::from(g.n0().abs());
    let m0 = BigInt::from(g.m0().abs());
    let mut out = BTreeSet::new();
    for s in 0..=depth {
        for t in 0..=(depth - s) {
            if s + t > 0 {
                out.insert(&k * num_traits::pow(n0.clone(), s as usize) * num_traits::pow(m0.clone(), t as usize));
            }
        }
    }
    Ok(out)
}

/// A double coset `<a> g <a>` with its canonical representative.
#[derive(Debug, Clone)]
pub struct DoubleCoset {
    representative: NormalForm,
    profile: CosetProfile,
}

impl DoubleCoset {
    pub fn representative(&self) -> &NormalForm {
        &self.representative
    }

    pub fn profile(&self) -> &CosetProfile {
        &self.profile
    }

    pub fn is_trivial(&self) -> bool {
        self.representative.is_identity()
    }

    /// Whether `x` lies in this double coset.
    pub fn contains(&self, x: &NormalForm, g: &BsPresentation) -> bool {
        x.b_length() == self.representative.b_length() && double_coset(x, g) == *self
    }
}

impl PartialEq for DoubleCoset {
    fn eq(&self, other: &Self) -> bool {
        self.representative == other.representative
    }
}

impl Eq for DoubleCoset {}

impl std::hash::Hash for DoubleCoset {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.representative.hash(state);
    }
}

impl PartialOrd for DoubleCoset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DoubleCoset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.representative.cmp(&other.representative)
    }
}

impl fmt::Display for DoubleCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.representative.fmt(f)
    }
}

/// Canonical form of `<a> x <a>`: the least tail-free normal form among
/// the `r(x)` left cosets `a^i x <a>`.
pub fn double_coset(x: &NormalForm, g: &BsPresentation) -> DoubleCoset {
    let profile = coset_profile(x, g);
    let base = x.without_tail();
    let count = profile
        .r
        .to_u64()
        .expect("double coset too large to canonicalize");
    let representative = (0..count)
        .map(|i| NormalForm::a_power(i).mul(&base, g).without_tail())
        .min()
        .expect("r >= 1");
    DoubleCoset {
        representative,
        profile,
    }
}

pub fn same_double_coset(x: &NormalForm, y: &NormalForm, g: &BsPresentation) -> bool {
    x.b_length() == y.b_length() && double_coset(x, g) == double_coset(y, g)
}

/// Membership in the quasi-centralizer of `<a>`: `g a^l g^-1 = a^l`.
pub fn qc_member(x: &NormalForm, g: &BsPresentation) -> bool {
    let p = coset_profile(x, g);
    p.signed_l == p.l && p.r == p.l
}

/// Whether `x` commutes with `a^z`.
pub fn centralizes(x: &NormalForm, z: &BigInt, g: &BsPresentation) -> bool {
    let az = NormalForm::a_power(z.clone());
    x.mul(&az, g).mul(&x.inverse(g), g) == az
}

/// Least common multiple of `l` over a nonempty set of elements.
pub fn lcm_l_values(xs: &[NormalForm], g: &BsPresentation) -> Result<BigInt> {
    if xs.is_empty() {
        return Err(Error::InvalidArgument("lcm over an empty set".into()));
    }
    Ok(xs
        .iter()
        .map(|x| coset_profile(x, g).l)
        .fold(BigInt::one(), |acc, l| acc.lcm(&l)))
}

/// Letters of the amalgam `<c, d | c^n = d^m>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmalgamLetter {
    C,
    D,
}

/// Parses a word over `{c, d, C, D}` with the same grammar as group words.
pub fn parse_amalgam_word(text: &str) -> Result<Vec<(AmalgamLetter, BigInt)>> {
    parse_terms(text, |ch| match ch {
        'c' => Some(Some((AmalgamLetter::C, false))),
        'C' => Some(Some((AmalgamLetter::C, true))),
        'd' => Some(Some((AmalgamLetter::D, false))),
        'D' => Some(Some((AmalgamLetter::D, true))),
        _ => None,
    })
}

/// The substitution `c -> a`, `d -> b^-1 a b` into BS(n,m).
///
/// Only defined for `2 <= n <= |m|` with `|m| != 2`, where it embeds the
/// amalgam `Z *_Z Z` into the centralizer of `a^n`.
pub fn amalgam_embed(w: &[(AmalgamLetter, BigInt)], g: &BsPresentation) -> Result<GroupWord> {
    g.require_standing()?;
    if g.m().abs() == 2 {
        return Err(Error::InvalidArgument(format!(
            "amalgam embedding needs |m| != 2, got {g}"
        )));
    }
    let mut out = GroupWord::identity();
    for (letter, exp) in w {
        match letter {
            AmalgamLetter::C => out.push(Letter::A, exp.clone()),
            AmalgamLetter::D => {
                out.push(Letter::B, -BigInt::one());
                out.push(Letter::A, exp.clone());
                out.push(Letter::B, BigInt::one());
            }
        }
    }
    Ok(out)
}

/// Finite integer combination of double-coset basis elements `T_D`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HeckeElement {
    terms: BTreeMap<DoubleCoset, BigInt>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement::default()
    }

    pub fn basis(d: DoubleCoset) -> Self {
        let mut h = HeckeElement::zero();
        h.add_term(d, BigInt::one());
        h
    }

    pub fn unit() -> Self {
        HeckeElement::basis(DoubleCoset {
            representative: NormalForm::identity(),
            profile: CosetProfile::trivial(),
        })
    }

    pub fn add_term(&mut self, d: DoubleCoset, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(d.clone()).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DoubleCoset, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &DoubleCoset) -> BigInt {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum c_F * l(F)`; multiplicative under convolution.
    pub fn left_degree(&self) -> BigInt {
        self.terms.iter().map(|(d, c)| c * &d.profile.l).sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(d, c)| json!({"coset": d.to_string(), "coeff": json::int(c)}))
                .collect(),
        )
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*T[{d}]")?;
        }
        Ok(())
    }
}

fn small(x: &BigInt, what: &str) -> u64 {
    x.to_u64()
        .unwrap_or_else(|| panic!("{what} = {x} is too large to enumerate"))
}

/// `T_D * T_E` for two double cosets.
///
/// Writing `E = disjoint union of <a> e a^j` over `j < l(e)`, the coefficient
/// of `T_F` is the number of `j` with `f (e a^j)^-1` in `D`. The support is
/// found among the double cosets of `d a^j e`, `j < l(d)`.
pub fn convolve_basis(d: &DoubleCoset, e: &DoubleCoset, g: &BsPresentation) -> HeckeElement {
    let dr = &d.representative;
    let er = &e.representative;
    let support: BTreeSet<DoubleCoset> = (0..small(&d.profile.l, "l(d)"))
        .map(|j| double_coset(&dr.mul(&NormalForm::a_power(j), g).mul(er, g), g))
        .collect();
    let e_cosets: Vec<NormalForm> = (0..small(&e.profile.l, "l(e)"))
        .map(|j| er.mul(&NormalForm::a_power(j), g).inverse(g))
        .collect();
    let mut out = HeckeElement::zero();
    for f in support {
        let count = e_cosets
            .iter()
            .filter(|inv| d.contains(&f.representative.mul(inv, g), g))
            .count();
        out.add_term(f, BigInt::from(count));
    }
    out
}

pub fn hecke_convolve(x: &HeckeElement, y: &HeckeElement, g: &BsPresentation) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (d, cd) in &x.terms {
        for (e, ce) in &y.terms {
            let prod = convolve_basis(d, e, g);
            for (f, cf) in prod.terms {
                out.add_term(f, cf * cd * ce);
            }
        }
    }
    out
}

/// Convenience: the double coset of a parsed word.
pub fn double_coset_of_word(w: &GroupWord, g: &BsPresentation) -> DoubleCoset {
    double_coset(&normalize(w, g), g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{is_identity, parse_word};

    fn bs(n: i64, m: i64) -> BsPresentation {
        BsPresentation::new(n, m).unwrap()
    }

    fn nf(text: &str, g: &BsPresentation) -> NormalForm {
        normalize(&parse_word(text).unwrap(), g)
    }

    fn profile(text: &str, g: &BsPresentation) -> (i64, i64, i64) {
        let p = coset_profile(&nf(text, g), g);
        (
            p.l.to_i64().unwrap(),
            p.r.to_i64().unwrap(),
            p.signed_l.to_i64().unwrap(),
        )
    }

    #[test]
    fn profile_examples() {
        for (n, m) in [(2, 3), (2, -3), (3, 6), (4, -6), (2, 2), (2, -2)] {
            let g = bs(n, m);
            assert_eq!(profile("b^-1", &g), (m.abs(), n, m), "b^-1 in {g}");
            assert_eq!(profile("b", &g), (n, m.abs(), m.signum() * n), "b in {g}");
        }
        let g = bs(2, 3);
        assert_eq!(profile("a^5", &g), (1, 1, 1));
        assert_eq!(profile("b a b^-1", &g), (3, 3, 3));
        assert_eq!(profile("b^2", &g), (4, 9, 4));
    }

    #[test]
    fn profile_relation_holds() {
        let g = bs(2, -3);
        for text in ["b a b", "b^-1 a b^-1 a^2 b", "b^3", "a b^-2 a b a"] {
            let x = nf(text, &g);
            let p = coset_profile(&x, &g);
            let w = x
                .to_word()
                .concat(&GroupWord::a(p.signed_l.clone()))
                .concat(&x.to_word().inverse())
                .concat(&GroupWord::a(-p.r.clone()));
            assert!(is_identity(&w, &g), "{text}");
        }
    }

    #[test]
    fn f_set_examples() {
        let g = bs(2, 3);
        assert!(f_set_member(&2.into(), &g).unwrap());
        assert!(!f_set_member(&5.into(), &g).unwrap());
        assert!(!f_set_member(&1.into(), &g).unwrap());
        assert!(f_set_member(&BigInt::from(6), &bs(4, 6)).unwrap());
        assert!(f_set_member(&0.into(), &g).is_err());
        assert!(f_set_member(&(-4).into(), &g).is_err());
        assert!(f_set_member(&2.into(), &bs(1, 2)).is_err());
        // BS(2,4): k = 2, n0 = 1 so k itself is an index.
        assert!(f_set_member(&2.into(), &bs(2, 4)).unwrap());
        assert!(!f_set_member(&1.into(), &bs(2, 4)).unwrap());
        assert!(f_set_member(&2.into(), &bs(2, -2)).unwrap());
        assert!(!f_set_member(&4.into(), &bs(2, -2)).unwrap());
        let set = f_set(2, &g).unwrap();
        let expected: BTreeSet<BigInt> = [2, 3, 4, 6, 9].into_iter().map(BigInt::from).collect();
        assert_eq!(set, expected);
    }

    #[test]
    fn double_coset_examples() {
        let g = bs(2, 3);
        assert_eq!(double_coset(&nf("a^2 b a^5", &g), &g).to_string(), "b");
        assert!(!same_double_coset(&nf("b", &g), &nf("b^-1", &g), &g));
        let x = nf("b a^-1 b a^4 b^-1 a", &g);
        let y = nf("a", &g).mul(&x, &g).mul(&nf("a^-1", &g), &g);
        assert!(same_double_coset(&x, &y, &g));
        assert!(double_coset(&nf("a^9", &g), &g).is_trivial());
    }

    #[test]
    fn qc_examples() {
        assert!(qc_member(&nf("a^4", &bs(2, 3)), &bs(2, 3)));
        assert!(qc_member(&nf("b", &bs(2, 2)), &bs(2, 2)));
        assert!(!qc_member(&nf("b", &bs(2, -2)), &bs(2, -2)));
        assert!(qc_member(&nf("b^2", &bs(2, -2)), &bs(2, -2)));
        assert!(qc_member(&nf("b a b^-1", &bs(2, 3)), &bs(2, 3)));
    }

    #[test]
    fn centralizer_examples() {
        let g = bs(2, 3);
        assert!(centralizes(&nf("a", &g), &7.into(), &g));
        assert!(!centralizes(&nf("b", &g), &2.into(), &g));
        let g = bs(2, -2);
        assert!(centralizes(&nf("b^2", &g), &2.into(), &g));
        assert!(!centralizes(&nf("b", &g), &2.into(), &g));
    }

    #[test]
    fn amalgam_examples() {
        let g = bs(2, 3);
        let emb = |t: &str| amalgam_embed(&parse_amalgam_word(t).unwrap(), &g).unwrap();
        assert_eq!(emb("c^2").to_string(), "a^2");
        assert_eq!(emb("d").to_string(), "b^-1 a b");
        // c^n = d^m maps to the identity
        assert!(is_identity(&emb("c^2 d^-3"), &g));
        assert!(!is_identity(&emb("c d"), &g));
        assert!(parse_amalgam_word("c a").is_err());
        assert!(amalgam_embed(&[], &bs(2, -2)).is_err());
        assert!(amalgam_embed(&[], &bs(1, 3)).is_err());
    }

    #[test]
    fn lcm_examples() {
        let g = bs(2, 3);
        assert_eq!(lcm_l_values(&[nf("a", &g)], &g).unwrap(), BigInt::one());
        assert_eq!(lcm_l_values(&[nf("b", &g), nf("b^-1", &g)], &g).unwrap(), 6.into());
        assert_eq!(lcm_l_values(&[nf("b a b^-1", &g)], &g).unwrap(), 3.into());
        assert!(lcm_l_values(&[], &g).is_err());
    }

    /// Independent route: coefficient of `T_F` as `#{i < r(d) : (a^i d)^-1 f in E}`.
    fn convolve_by_left_cosets(d: &DoubleCoset, e: &DoubleCoset, g: &BsPresentation) -> HeckeElement {
        let support = convolve_basis(d, e, g);
        let mut out = HeckeElement::zero();
        for (f, _) in support.terms() {
            let count = (0..d.profile().r.to_u64().unwrap())
                .filter(|&i| {
                    let x = NormalForm::a_power(i).mul(d.representative(), g).inverse(g);
                    e.contains(&x.mul(f.representative(), g), g)
                })
                .count();
            out.add_term(f.clone(), count.into());
        }
        out
    }

    #[test]
    fn convolution_examples() {
        let g = bs(2, 3);
        let b = double_coset(&nf("b", &g), &g);
        let bi = double_coset(&nf("b^-1", &g), &g);
        let unit = HeckeElement::unit();
        let tb = HeckeElement::basis(b.clone());
        assert_eq!(hecke_convolve(&unit, &tb, &g), tb);
        assert_eq!(hecke_convolve(&tb, &unit, &g), tb);

        let prod = convolve_basis(&b, &bi, &g);
        let e = double_coset(&NormalForm::identity(), &g);
        let bab = double_coset(&nf("b a b^-1", &g), &g);
        assert_eq!(prod.coefficient(&e), BigInt::from(3));
        assert_eq!(prod.coefficient(&bab), BigInt::from(1));
        assert_eq!(prod.len(), 2);
        assert_eq!(prod, convolve_by_left_cosets(&b, &bi, &g));
        assert_eq!(prod.left_degree(), BigInt::from(6));
    }

    #[test]
    fn convolution_degree_and_routes_agree() {
        let g = bs(2, 3);
        let words = ["b", "b^-1", "b a b^-1", "b^2", "a b^-1 a b", "b^-1 a b^-1"];
        for x in words {
            for y in words {
                let d = double_coset(&nf(x, &g), &g);
                let e = double_coset(&nf(y, &g), &g);
                let prod = convolve_basis(&d, &e, &g);
                assert_eq!(prod.left_degree(), &d.profile().l * &e.profile().l, "{x} * {y}");
                let right: BigInt = prod.terms().map(|(f, c)| c * &f.profile().r).sum();
                assert_eq!(right, &d.profile().r * &e.profile().r, "{x} * {y}");
                assert_eq!(prod, convolve_by_left_cosets(&d, &e, &g), "{x} * {y}");
            }
        }
    }

    #[test]
    fn json_rendering() {
        let g = bs(2, 3);
        let p = coset_profile(&nf("b", &g), &g);
        assert_eq!(p.to_json().to_string(), r#"{"l":2,"r":3,"L":2}"#);
        let h = HeckeElement::basis(double_coset(&nf("b", &g), &g));
        assert_eq!(h.to_json().to_string(), r#"[{"coset":"b","coeff":1}]"#);
    }
}
