//! Tree-node encodings and the navigation algebra on them.
//!
//! A node is addressed five equivalent ways:
//!
//! * a materialized [`Path`] of positive sibling indices, e.g. `3.12.5.1.21`;
//! * the simple continued fraction with those terms, i.e. a [`Ratio`] label;
//! * a [`MobiusMatrix`] `[[a, b], [c, d]]`, the product of the primitive
//!   factors `[[q, 1], [1, 0]]`, standing for `(a*x + b) / (c*x + d)`;
//! * the [`NestedInterval`] that function sweeps as `x` ranges over `[1, inf)`.
//!
//! The matrix is the node identity. Two paths that differ only by a trailing
//! `1` (`[.., q, 1]` versus `[.., q + 1]`) share a rational label but have
//! distinct matrices and disjoint intervals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{CheckedSub, One, Zero};
use thiserror::Error;

use crate::exactmath::{euclid_quotients, ext_gcd, parse_natural, DomainError, Ratio};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("not a path matrix: {0}")]
    NotPathMatrix(String),
    #[error("not an encoding interval: {0}")]
    NotEncodingInterval(String),
    #[error("not a descendant: {0}")]
    NotDescendant(String),
    #[error("{0} is a first sibling")]
    FirstSibling(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Materialized path: sibling indices from the root, each at least 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    components: Vec<BigUint>,
}

impl Path {
    pub fn root() -> Self {
        Path::default()
    }

    pub fn new(components: Vec<BigUint>) -> Result<Self, EncodingError> {
        if components.iter().any(Zero::is_zero) {
            return Err(DomainError::new("path components must be >= 1").into());
        }
        Ok(Path { components })
    }

    /// Convenience for literals. Panics on a zero component.
    pub fn from_slice(components: &[u64]) -> Self {
        Path::new(components.iter().map(|&q| BigUint::from(q)).collect())
            .expect("path components must be >= 1")
    }

    pub fn components(&self) -> &[BigUint] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn last(&self) -> Option<&BigUint> {
        self.components.last()
    }

    /// Path with the last component dropped; `None` for the root.
    pub fn parent(&self) -> Option<Path> {
        let (_, init) = self.components.split_last()?;
        Some(Path {
            components: init.to_vec(),
        })
    }

    pub fn child(&self, index: BigUint) -> Result<Path, EncodingError> {
        if index.is_zero() {
            return Err(DomainError::new("child index must be >= 1").into());
        }
        let mut components = self.components.clone();
        components.push(index);
        Ok(Path { components })
    }

    pub fn join(&self, tail: &Path) -> Path {
        let mut components = self.components.clone();
        components.extend_from_slice(&tail.components);
        Path { components }
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.components.starts_with(&self.components)
    }

    /// Empty, `[1]`, or ending in a component of at least 2.
    pub fn is_canonical(&self) -> bool {
        self.components.len() <= 1 || !self.components.last().is_some_and(One::is_one)
    }

    /// Rewrites a trailing `[.., q, 1]` to `[.., q + 1]`; same rational label.
    pub fn canonicalize(&self) -> Path {
        if self.is_canonical() {
            return self.clone();
        }
        let mut components = self.components.clone();
        components.pop();
        *components.last_mut().expect("len >= 2") += 1u32;
        Path { components }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{q}")?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = EncodingError;

    /// Dot-separated decimal components; the empty string is the root.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Path::root());
        }
        let components = s
            .split('.')
            .map(|part| parse_natural(part).map_err(|e| EncodingError::Parse(e.0)))
            .collect::<Result<Vec<_>, _>>()?;
        Path::new(components).map_err(|_| EncodingError::Parse(format!("zero component in {s:?}")))
    }
}

/// `[[a, b], [c, d]]` with nonnegative entries and determinant `±1`, standing
/// for the Möbius transform `(a*x + b) / (c*x + d)`.
///
/// Every value of this type factors into primitive matrices `[[q, 1], [1, 0]]`
/// with `q >= 1`; the public constructors enforce it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MobiusMatrix {
    a: BigUint,
    b: BigUint,
    c: BigUint,
    d: BigUint,
}

impl MobiusMatrix {
    pub fn identity() -> Self {
        MobiusMatrix::raw(
            BigUint::one(),
            BigUint::zero(),
            BigUint::zero(),
            BigUint::one(),
        )
    }

    /// The single-component factor `[[q, 1], [1, 0]]`.
    pub fn primitive(q: BigUint) -> Result<Self, EncodingError> {
        if q.is_zero() {
            return Err(DomainError::new("primitive factor needs q >= 1").into());
        }
        Ok(MobiusMatrix::raw(
            q,
            BigUint::one(),
            BigUint::one(),
            BigUint::zero(),
        ))
    }

    /// Validates that the entries form a path matrix.
    pub fn new(a: BigUint, b: BigUint, c: BigUint, d: BigUint) -> Result<Self, EncodingError> {
        let m = MobiusMatrix::raw(a, b, c, d);
        matrix_to_path(&m)?;
        Ok(m)
    }

    pub fn from_u64(a: u64, b: u64, c: u64, d: u64) -> Result<Self, EncodingError> {
        MobiusMatrix::new(a.into(), b.into(), c.into(), d.into())
    }

    pub(crate) fn raw(a: BigUint, b: BigUint, c: BigUint, d: BigUint) -> Self {
        MobiusMatrix { a, b, c, d }
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }

    pub fn c(&self) -> &BigUint {
        &self.c
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    /// Sign of `a*d - b*c`: `Greater` for +1, `Less` for -1, `Equal` if singular.
    fn det_order(&self) -> Ordering {
        (&self.a * &self.d).cmp(&(&self.b * &self.c))
    }

    /// `a*d - b*c`. Always `±1` for a valid matrix.
    pub fn determinant(&self) -> BigInt {
        BigInt::from(&self.a * &self.d) - BigInt::from(&self.b * &self.c)
    }

    /// `true` when the determinant is -1, i.e. the path has odd length and the
    /// transform is decreasing on `[1, inf)`.
    pub fn is_decreasing(&self) -> bool {
        self.det_order() == Ordering::Less
    }

    /// Rational label `a/c`; `None` for the root.
    pub fn label(&self) -> Option<Ratio> {
        if self.c.is_zero() {
            None
        } else {
            Some(Ratio::from_coprime(self.a.clone(), self.c.clone()))
        }
    }

    fn product(&self, rhs: &MobiusMatrix) -> MobiusMatrix {
        MobiusMatrix::raw(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }
}

impl Mul for &MobiusMatrix {
    type Output = MobiusMatrix;

    fn mul(self, rhs: &MobiusMatrix) -> MobiusMatrix {
        self.product(rhs)
    }
}

impl Mul for MobiusMatrix {
    type Output = MobiusMatrix;

    fn mul(self, rhs: MobiusMatrix) -> MobiusMatrix {
        self.product(&rhs)
    }
}

impl fmt::Display for MobiusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for MobiusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for MobiusMatrix {
    type Err = EncodingError;

    /// Row-major `"a,b,c,d"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.trim().split(',').map(str::trim).collect();
        let [a, b, c, d] = parts.as_slice() else {
            return Err(EncodingError::Parse(format!(
                "matrix needs four comma-separated entries, got {s:?}"
            )));
        };
        let entry = |t: &str| parse_natural(t).map_err(|e| EncodingError::Parse(e.0));
        MobiusMatrix::new(entry(a)?, entry(b)?, entry(c)?, entry(d)?)
    }
}

/// Which endpoint of a [`NestedInterval`] belongs to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedEnd {
    Low,
    High,
}

/// Half-open interval with exact endpoints; exactly one end is closed.
///
/// The closed end is the transform's value at `x = 1`, `(a+b)/(c+d)`; the
/// open end is its limit at infinity, `a/c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NestedInterval {
    lo: Ratio,
    hi: Ratio,
    closed_end: ClosedEnd,
}

impl NestedInterval {
    pub fn lo(&self) -> &Ratio {
        &self.lo
    }

    pub fn hi(&self) -> &Ratio {
        &self.hi
    }

    pub fn closed_end(&self) -> ClosedEnd {
        self.closed_end
    }

    /// The endpoint reached at `x = 1`.
    pub fn closed_endpoint(&self) -> &Ratio {
        match self.closed_end {
            ClosedEnd::Low => &self.lo,
            ClosedEnd::High => &self.hi,
        }
    }

    /// The limit endpoint `a/c`.
    pub fn open_endpoint(&self) -> &Ratio {
        match self.closed_end {
            ClosedEnd::Low => &self.hi,
            ClosedEnd::High => &self.lo,
        }
    }

    pub fn contains(&self, p: &Ratio) -> bool {
        (&self.lo < p && p < &self.hi) || p == self.closed_endpoint()
    }

    /// Set inclusion `other ⊆ self`, honouring which ends are closed.
    pub fn contains_interval(&self, other: &NestedInterval) -> bool {
        let lo_ok = match other.lo.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => {
                self.closed_end == ClosedEnd::Low || other.closed_end == ClosedEnd::High
            }
            Ordering::Less => false,
        };
        let hi_ok = match other.hi.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => {
                self.closed_end == ClosedEnd::High || other.closed_end == ClosedEnd::Low
            }
            Ordering::Greater => false,
        };
        lo_ok && hi_ok
    }

    /// `true` when the two intervals share no point.
    pub fn is_disjoint(&self, other: &NestedInterval) -> bool {
        let (first, second) = if self.lo <= other.lo {
            (self, other)
        } else {
            (other, self)
        };
        match first.hi.cmp(&second.lo) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => {
                !(first.closed_end == ClosedEnd::High && second.closed_end == ClosedEnd::Low)
            }
        }
    }
}

impl fmt::Display for NestedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.closed_end {
            ClosedEnd::Low => write!(f, "[{}, {})", self.lo, self.hi),
            ClosedEnd::High => write!(f, "({}, {}]", self.lo, self.hi),
        }
    }
}

impl FromStr for NestedInterval {
    type Err = EncodingError;

    /// `"(lo, hi]"` or `"[lo, hi)"`. Only checks shape and `lo < hi`; use
    /// [`interval_to_matrix`] to check that it encodes a node.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad =
            || EncodingError::Parse(format!("expected \"(lo, hi]\" or \"[lo, hi)\", got {s:?}"));
        let s = s.trim();
        let closed_end = if s.starts_with('(') && s.ends_with(']') {
            ClosedEnd::High
        } else if s.starts_with('[') && s.ends_with(')') {
            ClosedEnd::Low
        } else {
            return Err(bad());
        };
        let inner = &s[1..s.len() - 1];
        let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
        let parse = |t: &str| t.parse::<Ratio>().map_err(|e| EncodingError::Parse(e.0));
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo >= hi {
            return Err(EncodingError::Parse(format!("empty interval {s:?}")));
        }
        Ok(NestedInterval { lo, hi, closed_end })
    }
}

/// Product of the primitive factors of `p`, left to right.
pub fn path_to_matrix(p: &Path) -> MobiusMatrix {
    p.components
        .iter()
        .fold(MobiusMatrix::identity(), |m, q| child_unchecked(&m, q))
}

/// Unique factorization of `m` into primitive factors.
///
/// Each step peels `q = floor(a/c)` when `d = 0`, else
/// `min(floor(a/c), floor(b/d))`, and checks the remainder stays a
/// nonnegative matrix.
pub fn matrix_to_path(m: &MobiusMatrix) -> Result<Path, EncodingError> {
    let not_path = |why: &str| EncodingError::NotPathMatrix(format!("{m}: {why}"));
    if !m.determinant().magnitude().is_one() {
        return Err(not_path("determinant is not ±1"));
    }
    let (mut a, mut b, mut c, mut d) = (m.a.clone(), m.b.clone(), m.c.clone(), m.d.clone());
    let mut components = Vec::new();
    loop {
        if a.is_one() && b.is_zero() && c.is_zero() && d.is_one() {
            break;
        }
        if c.is_zero() {
            return Err(not_path("zero lower-left entry"));
        }
        let q = if d.is_zero() {
            &a / &c
        } else {
            (&a / &c).min(&b / &d)
        };
        if q.is_zero() {
            return Err(not_path("zero quotient"));
        }
        let qc = &q * &c;
        let qd = &q * &d;
        if qc > a || qd > b {
            return Err(not_path("negative remainder"));
        }
        let next_c = a - qc;
        let next_d = b - qd;
        a = std::mem::replace(&mut c, next_c);
        b = std::mem::replace(&mut d, next_d);
        components.push(q);
    }
    Ok(Path { components })
}

/// Value of the continued fraction `q1 + 1/(q2 + 1/(...))`.
pub fn path_to_ratio(p: &Path) -> Result<Ratio, EncodingError> {
    let (last, init) = p
        .components
        .split_last()
        .ok_or_else(|| DomainError::new("the root has no rational label"))?;
    // Evaluate bottom-up: num/den = q + den'/num'.
    let (mut num, mut den) = (last.clone(), BigUint::one());
    for q in init.iter().rev() {
        let next = q * &num + &den;
        den = std::mem::replace(&mut num, next);
    }
    Ok(Ratio::from_coprime(num, den))
}

fn check_label(r: &Ratio) -> Result<(), DomainError> {
    if r.is_infinite() || r.denom().is_zero() || r.numer() < r.denom() {
        return Err(DomainError::new(format!(
            "node labels need num >= den >= 1, got {r}"
        )));
    }
    Ok(())
}

/// Canonical path of a label, via the Euclidean quotients.
pub fn ratio_to_path(r: &Ratio) -> Result<Path, EncodingError> {
    check_label(r)?;
    Ok(Path {
        components: euclid_quotients(r.numer(), r.denom())?,
    })
}

/// Canonical matrix of a label, recovered from the Bézout coefficients.
///
/// The second column is one of the two solutions `(b, d)` / `(a - b, c - d)`
/// of `b*c - a*d = ±1` with `0 <= d <= c`; the one whose determinant matches
/// the parity of the canonical path length is selected.
pub fn ratio_to_matrix(r: &Ratio) -> Result<MobiusMatrix, EncodingError> {
    check_label(r)?;
    let (a, c) = (r.numer().clone(), r.denom().clone());
    if c.is_one() {
        // Path [a]: [[a, 1], [1, 0]], except [1] which has the same shape.
        return MobiusMatrix::primitive(a);
    }
    let (_, x, _) = ext_gcd(&a, &c)?;
    // a*x + c*y = 1, so b*c - a*d = 1 with d = -x (mod c), b = (1 + a*d) / c.
    let c_int = BigInt::from(c.clone());
    let d = (-x)
        .mod_floor(&c_int)
        .to_biguint()
        .expect("mod_floor is nonnegative");
    let b = (&a * &d + 1u32) / &c;
    let odd_depth = euclid_quotients(&a, &c)?.len() % 2 == 1;
    // The candidate above has det(m) = a*d - b*c = -1.
    let m = if odd_depth {
        MobiusMatrix::raw(a, b, c, d)
    } else {
        let (b2, d2) = (&a - &b, &c - &d);
        MobiusMatrix::raw(a, b2, c, d2)
    };
    debug_assert!(matrix_to_path(&m).is_ok());
    Ok(m)
}

/// Interval swept by the transform for `x` in `[1, inf)`.
pub fn matrix_to_interval(m: &MobiusMatrix) -> NestedInterval {
    let open = Ratio::from_coprime(m.a.clone(), m.c.clone());
    let closed = Ratio::from_coprime(&m.a + &m.b, &m.c + &m.d);
    if m.is_decreasing() {
        NestedInterval {
            lo: open,
            hi: closed,
            closed_end: ClosedEnd::High,
        }
    } else {
        NestedInterval {
            lo: closed,
            hi: open,
            closed_end: ClosedEnd::Low,
        }
    }
}

/// Inverse of [`matrix_to_interval`].
pub fn interval_to_matrix(iv: &NestedInterval) -> Result<MobiusMatrix, EncodingError> {
    let not_enc = |why: &str| EncodingError::NotEncodingInterval(format!("{iv}: {why}"));
    let open = iv.open_endpoint();
    let closed = iv.closed_endpoint();
    let (a, c) = (open.numer().clone(), open.denom().clone());
    if closed.numer() < &a || closed.denom() < &c {
        return Err(not_enc("negative second column"));
    }
    let b = closed.numer() - &a;
    let d = closed.denom() - &c;
    let m = MobiusMatrix::new(a, b, c, d)
        .map_err(|_| not_enc("endpoints do not form a path matrix"))?;
    if matrix_to_interval(&m) != *iv {
        return Err(not_enc("orientation does not match the determinant"));
    }
    Ok(m)
}

/// Membership of a point in an interval.
pub fn interval_contains(iv: &NestedInterval, p: &Ratio) -> bool {
    iv.contains(p)
}

/// Drops the last path component; `None` for the root.
///
/// The parent's first column is `(b, d)`. Its second column follows from the
/// last component `q = floor(a/b)`, except for parents with `b = 1`, which
/// are the root or the path `[1]`.
pub fn parent(m: &MobiusMatrix) -> Option<MobiusMatrix> {
    if m.is_identity() {
        return None;
    }
    if m.d.is_zero() {
        return Some(MobiusMatrix::identity());
    }
    if m.b.is_one() && m.d.is_one() {
        return Some(MobiusMatrix::raw(
            BigUint::one(),
            BigUint::one(),
            BigUint::one(),
            BigUint::zero(),
        ));
    }
    let q = &m.a / &m.b;
    let p = MobiusMatrix::raw(m.b.clone(), &m.a - &q * &m.b, m.d.clone(), &m.c - &q * &m.d);
    debug_assert_eq!(child_unchecked(&p, &q), *m);
    Some(p)
}

/// Same path with the last component incremented.
pub fn next_sibling(m: &MobiusMatrix) -> Result<MobiusMatrix, EncodingError> {
    if m.is_identity() {
        return Err(DomainError::new("the root has no siblings").into());
    }
    Ok(MobiusMatrix::raw(
        &m.a + &m.b,
        m.b.clone(),
        &m.c + &m.d,
        m.d.clone(),
    ))
}

/// Same path with the last component decremented.
pub fn prev_sibling(m: &MobiusMatrix) -> Result<MobiusMatrix, EncodingError> {
    if m.is_identity() {
        return Err(DomainError::new("the root has no siblings").into());
    }
    let candidate =
        m.a.checked_sub(&m.b)
            .zip(m.c.checked_sub(&m.d))
            .map(|(a, c)| MobiusMatrix::raw(a, m.b.clone(), c, m.d.clone()));
    match candidate {
        // Last component q >= 2 leaves a - b >= b and c - d >= 1; q = 1 never does.
        Some(prev) if !prev.c.is_zero() && prev.a >= prev.b => Ok(prev),
        _ => Err(EncodingError::FirstSibling(m.to_string())),
    }
}

fn child_unchecked(m: &MobiusMatrix, n: &BigUint) -> MobiusMatrix {
    MobiusMatrix::raw(n * &m.a + &m.b, m.a.clone(), n * &m.c + &m.d, m.c.clone())
}

/// `m · [[n, 1], [1, 0]]`: the `n`-th child.
pub fn child(m: &MobiusMatrix, n: &BigUint) -> Result<MobiusMatrix, EncodingError> {
    if n.is_zero() {
        return Err(DomainError::new("child index must be >= 1").into());
    }
    Ok(child_unchecked(m, n))
}

/// Path concatenation: the matrix product `m1 · m2`.
pub fn concat(m1: &MobiusMatrix, m2: &MobiusMatrix) -> MobiusMatrix {
    m1 * m2
}

/// Solves `anc · X = desc` for the path fragment `X` leading from `anc` down
/// to `desc`.
pub fn relative(anc: &MobiusMatrix, desc: &MobiusMatrix) -> Result<MobiusMatrix, EncodingError> {
    let not_desc = || EncodingError::NotDescendant(format!("{desc} is not under {anc}"));
    let int = |v: &BigUint| BigInt::from(v.clone());
    let (a, b, c, d) = (int(&anc.a), int(&anc.b), int(&anc.c), int(&anc.d));
    let (p, q, r, s) = (int(&desc.a), int(&desc.b), int(&desc.c), int(&desc.d));
    // anc^-1 = det(anc) * [[d, -b], [-c, a]]
    let entries = [
        &d * &p - &b * &r,
        &d * &q - &b * &s,
        &a * &r - &c * &p,
        &a * &s - &c * &q,
    ];
    let flip = anc.is_decreasing();
    let mut out = Vec::with_capacity(4);
    for e in entries {
        let e = if flip { -e } else { e };
        out.push(e.to_biguint().ok_or_else(not_desc)?);
    }
    let [x11, x12, x21, x22]: [BigUint; 4] = out.try_into().expect("four entries");
    MobiusMatrix::new(x11, x12, x21, x22).map_err(|_| not_desc())
}

/// Strict ancestry by matrix algebra.
pub fn is_ancestor(anc: &MobiusMatrix, desc: &MobiusMatrix) -> bool {
    anc != desc && relative(anc, desc).is_ok()
}

/// Strict ancestry by interval inclusion; agrees with [`is_ancestor`].
pub fn is_ancestor_by_interval(anc: &MobiusMatrix, desc: &MobiusMatrix) -> bool {
    anc != desc && matrix_to_interval(anc).contains_interval(&matrix_to_interval(desc))
}

/// Continued-fraction convergents of `r`: the labels of its canonical
/// ancestors, ending with `r`.
pub fn convergents(r: &Ratio) -> Result<Vec<Ratio>, EncodingError> {
    let path = ratio_to_path(r)?;
    // h_k = q_k h_{k-1} + h_{k-2}, same for k.
    let (mut h_prev, mut h) = (BigUint::zero(), BigUint::one());
    let (mut k_prev, mut k) = (BigUint::one(), BigUint::zero());
    let mut out = Vec::with_capacity(path.len());
    for q in path.components() {
        let h_next = q * &h + &h_prev;
        let k_next = q * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        out.push(Ratio::from_coprime(h.clone(), k.clone()));
    }
    Ok(out)
}

/// Path length; the root has depth 0.
pub fn depth(m: &MobiusMatrix) -> usize {
    matrix_to_path(m).map(|p| p.len()).unwrap_or(0)
}
