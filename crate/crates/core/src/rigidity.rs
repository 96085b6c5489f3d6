//! Classification data: isomorphism of the groups, amenability, recovery of
//! `(n, |m|)` from coset profiles, and the obstruction verdict for stable
//! isomorphism of the crossed products together with its sign witness.
//!
//! Verdicts are one-directional. `NoObstruction` only says that none of the
//! invariants checked here separates the two pairs.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fusion::{omega_member, RootOfUnity};
use crate::group::{BsPresentation, NormalForm};
use crate::hecke::coset_profile;

/// Moves `(n, m)` into the chamber `1 <= n <= |m|` using `(n, m) ~ (-n, -m)`
/// and `(n, m) ~ (m, n)`.
pub fn canonicalize(n: i64, m: i64) -> Result<(i64, i64)> {
    if n == 0 || m == 0 {
        return Err(Error::ZeroParameter { n, m });
    }
    let (n, m) = if n.abs() <= m.abs() { (n, m) } else { (m, n) };
    Ok(if n < 0 { (-n, -m) } else { (n, m) })
}

pub fn is_isomorphic(n1: i64, m1: i64, n2: i64, m2: i64) -> Result<bool> {
    Ok(canonicalize(n1, m1)? == canonicalize(n2, m2)?)
}

pub fn is_amenable(n: i64, m: i64) -> Result<bool> {
    if n == 0 || m == 0 {
        return Err(Error::ZeroParameter { n, m });
    }
    Ok(n.abs() == 1 || m.abs() == 1)
}

/// Reads `n` and `|m|` off a sample of `(l, r)` values: `n` is the least
/// `l > 1`, and `n / |m|` generates the group of ratios `l / r`.
pub fn recover_parameters(profiles: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    if profiles.iter().any(|(l, r)| !l.is_positive() || !r.is_positive()) {
        return Err(Error::InvalidArgument("profile entries must be positive".into()));
    }
    let n = profiles
        .iter()
        .map(|(l, _)| l)
        .filter(|l| !l.is_one())
        .min()
        .cloned()
        .ok_or_else(|| Error::InvalidArgument("no profile with l > 1".into()))?;

    // Euclid on exponents: gcd of rho^a and rho^b is rho^gcd(a, b).
    let mut generator: Option<BigRational> = None;
    for (l, r) in profiles {
        let mut q = BigRational::new(l.clone(), r.clone());
        if q.is_one() {
            continue;
        }
        if q < BigRational::one() {
            q = q.recip();
        }
        let mut g = match generator.take() {
            None => q,
            Some(g) => ratio_gcd(g, q)?,
        };
        if g < BigRational::one() {
            g = g.recip();
        }
        generator = Some(g);
    }
    let abs_m = match generator {
        None => n.clone(),
        Some(g) => {
            // rho = 1 / g < 1
            let m = BigRational::from_integer(n.clone()) * g;
            if !m.is_integer() {
                return Err(Error::InvalidArgument(format!(
                    "ratio generator {} does not divide n = {n}",
                    m.recip() * BigRational::from_integer(n.clone())
                )));
            }
            m.to_integer()
        }
    };
    Ok((n, abs_m))
}

/// Largest `c > 1` with both `x` and `y` integer powers of `c`, given
/// `x, y > 1` that are powers of a common rational.
fn ratio_gcd(mut x: BigRational, mut y: BigRational) -> Result<BigRational> {
    for _ in 0..10_000 {
        if x < y {
            std::mem::swap(&mut x, &mut y);
        }
        if x == y {
            return Ok(x);
        }
        let q = &x / &y;
        if q <= BigRational::one() {
            break;
        }
        x = q;
    }
    Err(Error::InvalidArgument("profile ratios are not powers of a common ratio".into()))
}

/// `(t, omega, mu)` with `omega^n = mu^m` and `mu^{2m} != 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignWitness {
    pub t: u32,
    pub omega: RootOfUnity,
    pub mu: RootOfUnity,
}

impl SignWitness {
    pub fn to_json(&self) -> Value {
        json!({"t": self.t, "omega": self.omega.to_string(), "mu": self.mu.to_string()})
    }
}

impl fmt::Display for SignWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={} omega={} mu={}", self.t, self.omega, self.mu)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObstructionReason {
    NMismatch,
    AbsMMismatch,
    SignMismatch { witness: SignWitness },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RigidityVerdict {
    NoObstruction,
    Obstructed(ObstructionReason),
}

impl RigidityVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            RigidityVerdict::NoObstruction => "no_obstruction",
            RigidityVerdict::Obstructed(ObstructionReason::NMismatch) => "n_mismatch",
            RigidityVerdict::Obstructed(ObstructionReason::AbsMMismatch) => "abs_m_mismatch",
            RigidityVerdict::Obstructed(ObstructionReason::SignMismatch { .. }) => "sign_mismatch",
        }
    }

    pub fn witness(&self) -> Option<&SignWitness> {
        match self {
            RigidityVerdict::Obstructed(ObstructionReason::SignMismatch { witness }) => Some(witness),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self.witness() {
            Some(w) => json!({"verdict": self.tag(), "witness": w.to_json()}),
            None => json!({"verdict": self.tag()}),
        }
    }
}

impl fmt::Display for RigidityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness() {
            Some(w) => write!(f, "{} ({w})", self.tag()),
            None => f.write_str(self.tag()),
        }
    }
}

fn chamber(n: i64, m: i64) -> Result<BsPresentation> {
    let g = BsPresentation::new(n, m)?;
    g.require_standing()?;
    Ok(g)
}

pub fn theorem_b_obstruction(n1: i64, m1: i64, n2: i64, m2: i64) -> Result<RigidityVerdict> {
    chamber(n1, m1)?;
    chamber(n2, m2)?;
    let reason = if n1 != n2 {
        ObstructionReason::NMismatch
    } else if m1.abs() != m2.abs() {
        ObstructionReason::AbsMMismatch
    } else if n1 != m1.abs() && m1 != m2 {
        ObstructionReason::SignMismatch {
            witness: sign_witness(n1, m1)?,
        }
    } else {
        return Ok(RigidityVerdict::NoObstruction);
    };
    Ok(RigidityVerdict::Obstructed(reason))
}

/// The pair `omega = 1/(k n0^{t+1} m0^t)`, `mu = 1/(k n0^t m0^{t+1})` for
/// the least `t` with `|n0 m0|^t > 2`, using the signed `m0`.
pub fn sign_witness(n: i64, m: i64) -> Result<SignWitness> {
    let g = chamber(n, m)?;
    if n == m.abs() {
        return Err(Error::InvalidArgument(format!(
            "no sign witness for {g}: n = |m|"
        )));
    }
    let (k, n0, m0) = (BigInt::from(g.k()), BigInt::from(g.n0()), BigInt::from(g.m0()));
    let base = (&n0 * &m0).abs();
    let two = BigInt::from(2);
    let mut t = 1u32;
    while num_traits::pow(base.clone(), t as usize) <= two {
        t += 1;
    }
    let pn = |e: u32| num_traits::pow(n0.clone(), e as usize);
    let pm = |e: u32| num_traits::pow(m0.clone(), e as usize);
    let omega = RootOfUnity::from_angle(BigRational::new(BigInt::one(), &k * pn(t + 1) * pm(t)));
    let mu = RootOfUnity::from_angle(BigRational::new(BigInt::one(), &k * pn(t) * pm(t + 1)));
    let w = SignWitness { t, omega, mu };
    verify_witness(&w, &g)?;
    Ok(w)
}

fn verify_witness(w: &SignWitness, g: &BsPresentation) -> Result<()> {
    let n = BigInt::from(g.n());
    let m = BigInt::from(g.m());
    if w.omega.pow(&n) != w.mu.pow(&m) {
        return Err(Error::InternalCheck(format!("{w}: omega^n != mu^m in {g}")));
    }
    if w.mu.pow(&(BigInt::from(2) * &m)).is_trivial() {
        return Err(Error::InternalCheck(format!("{w}: mu^(2m) = 1 in {g}")));
    }
    let small = (g.n0() * g.m0()).unsigned_abs().to_u128().and_then(|b| b.checked_pow(w.t));
    if small.is_some_and(|p| p <= 2) {
        return Err(Error::InternalCheck(format!("{w}: |n0^t m0^t| <= 2 in {g}")));
    }
    if !omega_member(&w.omega, g)? || !omega_member(&w.mu, g)? {
        return Err(Error::InternalCheck(format!("{w}: witness outside the root group of {g}")));
    }
    Ok(())
}

/// `w^{r(x)} = u^{L(x)}`.
pub fn w_relation(w: &RootOfUnity, u: &RootOfUnity, x: &NormalForm, g: &BsPresentation) -> bool {
    let p = coset_profile(x, g);
    w.pow(&p.r) == u.pow(&p.signed_l)
}

/// `theorem_b_obstruction` on arbitrary pairs after canonicalizing both.
pub fn obstruction_any(n1: i64, m1: i64, n2: i64, m2: i64) -> Result<RigidityVerdict> {
    let (a, b) = canonicalize(n1, m1)?;
    let (c, d) = canonicalize(n2, m2)?;
    theorem_b_obstruction(a, b, c, d)
}
