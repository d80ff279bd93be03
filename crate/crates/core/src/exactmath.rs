//! Exact unbounded-integer and rational arithmetic.
//!
//! Everything here works on [`BigUint`] / [`BigInt`]. Fixed-width integers
//! overflow after a few dozen levels of an all-ones path, so there is no
//! fast path.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

/// Violated precondition of an arithmetic operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("domain error: {0}")]
pub struct DomainError(pub String);

impl DomainError {
    pub(crate) fn new(msg: impl Into<String>) -> Self {
        DomainError(msg.into())
    }
}

/// Greatest common divisor, with `gcd(n, 0) = n`.
///
/// `gcd(0, 0)` is rejected: no encoding ever produces it.
pub fn gcd(a: &BigUint, b: &BigUint) -> Result<BigUint, DomainError> {
    if a.is_zero() && b.is_zero() {
        return Err(DomainError::new("gcd(0, 0) is undefined"));
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    Ok(x)
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
///
/// The coefficients are the ones produced by back-substitution through the
/// quotient sequence, which is the minimal-magnitude Bézout pair. For equal
/// inputs the pair `(1, 0)` is returned.
pub fn ext_gcd(a: &BigUint, b: &BigUint) -> Result<(BigUint, BigInt, BigInt), DomainError> {
    if a.is_zero() && b.is_zero() {
        return Err(DomainError::new("ext_gcd(0, 0) is undefined"));
    }
    if a == b {
        return Ok((a.clone(), BigInt::one(), BigInt::zero()));
    }
    // Invariant: old_r = a*old_s + b*old_t and r = a*s + b*t.
    let (mut old_r, mut r) = (BigInt::from(a.clone()), BigInt::from(b.clone()));
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    let g = old_r
        .to_biguint()
        .expect("gcd of nonnegative inputs is nonnegative");
    Ok((g, old_s, old_t))
}

/// Quotients of the Euclidean algorithm on `(a, b)`, run until the remainder
/// vanishes. Requires `a >= b >= 1` and `gcd(a, b) = 1`.
pub fn euclid_quotients(a: &BigUint, b: &BigUint) -> Result<Vec<BigUint>, DomainError> {
    if b.is_zero() || a < b {
        return Err(DomainError::new(format!(
            "euclid_quotients needs a >= b >= 1, got ({a}, {b})"
        )));
    }
    if !gcd(a, b)?.is_one() {
        return Err(DomainError::new(format!("{a} and {b} are not coprime")));
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    let mut out = Vec::new();
    while !y.is_zero() {
        let (q, r) = x.div_rem(&y);
        out.push(q);
        x = y;
        y = r;
    }
    Ok(out)
}

/// Exact nonnegative rational in lowest terms.
///
/// `1/0` is a sentinel for +infinity; it only appears as the open upper end
/// of the root interval.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: BigUint,
    den: BigUint,
}

impl Ratio {
    /// Builds `num/den`, reducing to lowest terms. `den` must be nonzero.
    pub fn new(num: BigUint, den: BigUint) -> Result<Self, DomainError> {
        if den.is_zero() {
            return Err(DomainError::new("zero denominator"));
        }
        let g = gcd(&num, &den)?;
        if g.is_one() {
            Ok(Ratio { num, den })
        } else {
            Ok(Ratio {
                num: num / &g,
                den: den / &g,
            })
        }
    }

    pub fn from_u64(num: u64, den: u64) -> Result<Self, DomainError> {
        Ratio::new(BigUint::from(num), BigUint::from(den))
    }

    pub fn integer(n: BigUint) -> Self {
        Ratio {
            num: n,
            den: BigUint::one(),
        }
    }

    pub fn infinity() -> Self {
        Ratio {
            num: BigUint::one(),
            den: BigUint::zero(),
        }
    }

    /// Caller guarantees `gcd(num, den) = 1` and not both zero.
    pub(crate) fn from_coprime(num: BigUint, den: BigUint) -> Self {
        debug_assert!(gcd(&num, &den).map(|g| g.is_one()).unwrap_or(false));
        if den.is_zero() {
            return Ratio::infinity();
        }
        Ratio { num, den }
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }
}

/// Total order by cross-multiplication; infinity is above every finite value.
pub fn ratio_cmp(p: &Ratio, q: &Ratio) -> Ordering {
    match (p.is_infinite(), q.is_infinite()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => (&p.num * &q.den).cmp(&(&q.num * &p.den)),
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        ratio_cmp(self, other)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a decimal digit string with no sign or whitespace.
pub(crate) fn parse_natural(s: &str) -> Result<BigUint, DomainError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(DomainError::new(format!(
            "not a nonnegative integer: {s:?}"
        )));
    }
    BigUint::from_str(s).map_err(|e| DomainError::new(format!("bad integer {s:?}: {e}")))
}

impl FromStr for Ratio {
    type Err = DomainError;

    /// Accepts `"n/d"` (any terms, normalized), a bare integer `"n"`, or `"inf"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Ratio::infinity());
        }
        match s.split_once('/') {
            Some((n, d)) => Ratio::new(parse_natural(n.trim())?, parse_natural(d.trim())?),
            None => Ok(Ratio::integer(parse_natural(s)?)),
        }
    }
}
