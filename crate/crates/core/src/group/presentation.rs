use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// The one-relator presentation `<a, b | b a^n b^-1 = a^m>`.
///
/// Stores the parameters together with `k = gcd(|n|, |m|)` and the reduced
/// pair `n = k*n0`, `m = k*m0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BsPresentation {
    n: i64,
    m: i64,
    k: i64,
    n0: i64,
    m0: i64,
}

impl BsPresentation {
    pub fn new(n: i64, m: i64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::ZeroParameter { n, m });
        }
        let k = n.abs().gcd(&m.abs());
        Ok(BsPresentation {
            n,
            m,
            k,
            n0: n / k,
            m0: m / k,
        })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn n0(&self) -> i64 {
        self.n0
    }

    pub fn m0(&self) -> i64 {
        self.m0
    }

    /// True iff `2 <= n <= |m|`.
    pub fn standing_hypothesis(&self) -> bool {
        2 <= self.n && self.n <= self.m.abs()
    }

    pub fn require_standing(&self) -> Result<()> {
        if self.standing_hypothesis() {
            Ok(())
        } else {
            Err(Error::StandingHypothesis {
                n: self.n,
                m: self.m,
            })
        }
    }
}

impl fmt::Display for BsPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BS({},{})", self.n, self.m)
    }
}
