//! Endpoint numbers: ordered floating-point values with directed-rounded
//! arithmetic, in several interchangeable precisions.
//!
//! Each precision family (hardware binary32/binary64, software `BigFloat`)
//! implements the [`EndpointFamily`] trait; the families are registered by
//! name and selected at runtime, e.g. from a CLI `--endpoint bigfloat:256`
//! flag. All kernels take the rounding direction as an explicit argument —
//! nothing here touches the processor rounding mode, so every operation is
//! reentrant and thread-safe.

use crate::bigfloat::BigFloat;
use crate::ieee;
use crate::limbs::Limbs;
use std::cmp::Ordering;
use std::fmt;

/// Rounding direction for a directed operation.
///
/// `Down` yields a result no greater than the exact value, `Up` no smaller.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Round {
    Down,
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// Domain errors of the endpoint kernels. Anything else (mixed precisions,
/// NaN operands) is a caller bug and panics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("undefined operation: {0}")]
    UndefinedOperation(&'static str),
    #[error("division by zero")]
    DivisionByZero,
}

/// Identifies an endpoint format: a family plus, for software floats, the
/// significand width in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Precision {
    Binary32,
    Binary64,
    Big(u32),
}

impl Precision {
    /// Significand width in bits.
    pub fn bits(self) -> u32 {
        match self {
            Precision::Binary32 => 24,
            Precision::Binary64 => 53,
            Precision::Big(n) => n,
        }
    }

    fn rank(self) -> (u32, u8) {
        match self {
            Precision::Binary32 => (24, 0),
            Precision::Binary64 => (53, 1),
            Precision::Big(n) => (n, 2),
        }
    }

    /// The wider of two precisions; the common target when mixing operands.
    pub fn widest(self, other: Precision) -> Precision {
        if self.rank() >= other.rank() {
            self
        } else {
            other
        }
    }

    pub fn family(self) -> &'static dyn EndpointFamily {
        match self {
            Precision::Binary32 => &Binary32Family,
            Precision::Binary64 => &Binary64Family,
            Precision::Big(_) => &BigFloatFamily,
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Binary32 => write!(f, "binary32"),
            Precision::Binary64 => write!(f, "binary64"),
            Precision::Big(n) => write!(f, "bigfloat:{n}"),
        }
    }
}

/// An endpoint value in one of the registered families.
#[derive(Clone, Debug)]
pub enum Endpoint {
    F32(f32),
    F64(f64),
    Big(BigFloat),
}

pub(crate) enum Parts {
    Zero,
    NegInf,
    PosInf,
    Finite { neg: bool, mant: Limbs, exp: i64 },
}

impl Endpoint {
    pub fn from_f64(x: f64) -> Endpoint {
        Endpoint::F64(x)
    }

    pub fn zero(prec: Precision) -> Endpoint {
        match prec {
            Precision::Binary32 => Endpoint::F32(0.0),
            Precision::Binary64 => Endpoint::F64(0.0),
            Precision::Big(n) => Endpoint::Big(BigFloat::zero(n)),
        }
    }

    pub fn pos_inf(prec: Precision) -> Endpoint {
        match prec {
            Precision::Binary32 => Endpoint::F32(f32::INFINITY),
            Precision::Binary64 => Endpoint::F64(f64::INFINITY),
            Precision::Big(n) => Endpoint::Big(BigFloat::pos_inf(n)),
        }
    }

    pub fn neg_inf(prec: Precision) -> Endpoint {
        match prec {
            Precision::Binary32 => Endpoint::F32(f32::NEG_INFINITY),
            Precision::Binary64 => Endpoint::F64(f64::NEG_INFINITY),
            Precision::Big(n) => Endpoint::Big(BigFloat::neg_inf(n)),
        }
    }

    pub fn precision(&self) -> Precision {
        match self {
            Endpoint::F32(_) => Precision::Binary32,
            Endpoint::F64(_) => Precision::Binary64,
            Endpoint::Big(b) => Precision::Big(b.precision()),
        }
    }

    pub fn family(&self) -> &'static dyn EndpointFamily {
        self.precision().family()
    }

    pub fn is_nan(&self) -> bool {
        match self {
            Endpoint::F32(x) => x.is_nan(),
            Endpoint::F64(x) => x.is_nan(),
            Endpoint::Big(_) => false,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Endpoint::F32(x) => x.is_finite(),
            Endpoint::F64(x) => x.is_finite(),
            Endpoint::Big(b) => b.is_finite(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_nan() && !self.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Endpoint::F32(x) => *x == 0.0,
            Endpoint::F64(x) => *x == 0.0,
            Endpoint::Big(b) => b.is_zero(),
        }
    }

    /// Sign of the value: Less for negative, Equal for zero.
    pub fn sign(&self) -> Ordering {
        match self {
            Endpoint::F32(x) => x.partial_cmp(&0.0).expect("NaN endpoint"),
            Endpoint::F64(x) => x.partial_cmp(&0.0).expect("NaN endpoint"),
            Endpoint::Big(b) => b.sign(),
        }
    }

    pub fn neg(&self) -> Endpoint {
        match self {
            Endpoint::F32(x) => Endpoint::F32(-x),
            Endpoint::F64(x) => Endpoint::F64(-x),
            Endpoint::Big(b) => Endpoint::Big(b.neg()),
        }
    }

    pub fn abs(&self) -> Endpoint {
        if self.sign() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub(crate) fn parts(&self) -> Parts {
        match self {
            Endpoint::F32(x) if *x == 0.0 => Parts::Zero,
            Endpoint::F64(x) if *x == 0.0 => Parts::Zero,
            Endpoint::F32(x) if x.is_infinite() => {
                if *x > 0.0 {
                    Parts::PosInf
                } else {
                    Parts::NegInf
                }
            }
            Endpoint::F64(x) if x.is_infinite() => {
                if *x > 0.0 {
                    Parts::PosInf
                } else {
                    Parts::NegInf
                }
            }
            Endpoint::F32(x) => {
                let (neg, mant, exp) = ieee::f64_parts(*x as f64);
                Parts::Finite { neg, mant, exp }
            }
            Endpoint::F64(x) => {
                let (neg, mant, exp) = ieee::f64_parts(*x);
                Parts::Finite { neg, mant, exp }
            }
            Endpoint::Big(b) => match b.to_parts() {
                None => {
                    if b.is_zero() {
                        Parts::Zero
                    } else if b.is_negative() {
                        Parts::NegInf
                    } else {
                        Parts::PosInf
                    }
                }
                Some((neg, limbs, exp)) => Parts::Finite {
                    neg,
                    mant: Limbs::from_limbs(&limbs),
                    exp,
                },
            },
        }
    }

    /// Exact value comparison, valid across precisions and families.
    pub fn cmp_value(&self, other: &Endpoint) -> Ordering {
        match (self, other) {
            (Endpoint::F64(a), Endpoint::F64(b)) => a.partial_cmp(b).expect("NaN endpoint"),
            (Endpoint::F32(a), Endpoint::F32(b)) => a.partial_cmp(b).expect("NaN endpoint"),
            (Endpoint::F32(a), Endpoint::F64(b)) => {
                (*a as f64).partial_cmp(b).expect("NaN endpoint")
            }
            (Endpoint::F64(a), Endpoint::F32(b)) => {
                a.partial_cmp(&(*b as f64)).expect("NaN endpoint")
            }
            _ => {
                let a = self.to_bigfloat();
                let b = other.to_bigfloat();
                a.cmp_value(&b)
            }
        }
    }

    /// Exact widening into a `BigFloat` of at least the native width.
    pub fn to_bigfloat(&self) -> BigFloat {
        match self {
            Endpoint::F32(x) => BigFloat::from_f64(*x as f64, 24, Round::Down).0,
            Endpoint::F64(x) => BigFloat::from_f64(*x, 53, Round::Down).0,
            Endpoint::Big(b) => b.clone(),
        }
    }

    /// Directed rounding to f64; exact when the value is representable.
    pub fn to_f64(&self, dir: Round) -> f64 {
        match self {
            Endpoint::F32(x) => *x as f64,
            Endpoint::F64(x) => *x,
            Endpoint::Big(b) => b.to_f64(dir).0,
        }
    }

    /// Directed conversion into a target precision. Widening within a family
    /// is exact; the flag reports exactness.
    pub fn convert(&self, target: Precision, dir: Round) -> (Endpoint, bool) {
        if self.precision() == target {
            return (self.clone(), true);
        }
        match self.parts() {
            Parts::Zero => (Endpoint::zero(target), true),
            Parts::PosInf => (Endpoint::pos_inf(target), true),
            Parts::NegInf => (Endpoint::neg_inf(target), true),
            Parts::Finite { neg, mant, exp } => {
                from_parts_rounded(target, neg, &mant, exp, false, dir)
            }
        }
    }

    pub fn add(&self, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        self.family().add(self, b, dir)
    }

    pub fn sub(&self, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        self.family().sub(self, b, dir)
    }

    pub fn mul(&self, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        self.family().mul(self, b, dir)
    }

    pub fn div(&self, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        self.family().div(self, b, dir)
    }

    pub fn sqrt(&self, dir: Round) -> Result<Endpoint, KernelError> {
        self.family().sqrt(self, dir)
    }

    pub fn fma(&self, b: &Endpoint, c: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        self.family().fma(self, b, c, dir)
    }

    pub fn next_up(&self) -> Endpoint {
        self.family().next_up(self)
    }

    pub fn next_down(&self) -> Endpoint {
        self.family().next_down(self)
    }

    pub fn min_value(self, other: Endpoint) -> Endpoint {
        if self.cmp_value(&other) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn max_value(self, other: Endpoint) -> Endpoint {
        if self.cmp_value(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

impl PartialEq for Endpoint {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

/// Directed conversion of `±mant * 2^exp` (plus sticky tail) into a target
/// precision; reports exactness.
pub(crate) fn from_parts_rounded(
    target: Precision,
    neg: bool,
    mant: &Limbs,
    exp: i64,
    sticky: bool,
    dir: Round,
) -> (Endpoint, bool) {
    match target {
        Precision::Binary64 => {
            let (v, exact) = ieee::round_to_f64(neg, mant, exp, sticky, dir);
            (Endpoint::F64(v), exact)
        }
        Precision::Binary32 => {
            let (v, exact) = ieee::round_to_f32(neg, mant, exp, sticky, dir);
            (Endpoint::F32(v), exact)
        }
        Precision::Big(n) => {
            let (v, exact) = BigFloat::round_parts(neg, mant, exp, sticky, n, dir);
            (Endpoint::Big(v), exact)
        }
    }
}

/// Largest finite value of a precision.
pub fn max_finite(prec: Precision) -> Endpoint {
    match prec {
        Precision::Binary32 => Endpoint::F32(f32::MAX),
        Precision::Binary64 => Endpoint::F64(f64::MAX),
        Precision::Big(n) => Endpoint::Big(BigFloat::max_finite(n)),
    }
}

/// Round-to-nearest-even midpoint of two finite endpoints of the same
/// precision; the exact mean is formed dyadically and rounded once.
pub(crate) fn midpoint_nearest(lo: &Endpoint, hi: &Endpoint, target: Precision) -> Endpoint {
    let half = |neg: bool, mant: &Limbs, exp: i64, sticky: bool| match target {
        Precision::Binary64 => Endpoint::F64(ieee::nearest_to_f64(neg, mant, exp - 1, sticky)),
        Precision::Binary32 => Endpoint::F32(ieee::nearest_to_f32(neg, mant, exp - 1, sticky)),
        Precision::Big(n) => {
            Endpoint::Big(BigFloat::round_parts_nearest(neg, mant, exp - 1, sticky, n))
        }
    };
    match (lo.parts(), hi.parts()) {
        (Parts::Zero, Parts::Zero) => Endpoint::zero(target),
        (Parts::Zero, Parts::Finite { neg, mant, exp })
        | (Parts::Finite { neg, mant, exp }, Parts::Zero) => half(neg, &mant, exp, false),
        (
            Parts::Finite {
                neg: n1,
                mant: m1,
                exp: e1,
            },
            Parts::Finite {
                neg: n2,
                mant: m2,
                exp: e2,
            },
        ) => {
            let (neg, m, e, sticky) =
                crate::bigfloat::sum_parts(n1, &m1, e1, n2, &m2, e2, target.bits());
            half(neg, &m, e, sticky)
        }
        _ => panic!("midpoint of non-finite endpoints"),
    }
}

/// Correctly rounded conversion of the rational p/q; reports exactness.
pub fn from_rational(target: Precision, p: i64, q: u64, dir: Round) -> (Endpoint, bool) {
    assert!(q > 0, "denominator must be positive");
    from_rational_big(
        target,
        p < 0,
        &Limbs::from_u64(p.unsigned_abs()),
        &Limbs::from_u64(q),
        dir,
    )
}

pub(crate) fn from_rational_big(
    target: Precision,
    neg: bool,
    p: &Limbs,
    q: &Limbs,
    dir: Round,
) -> (Endpoint, bool) {
    assert!(!q.is_zero(), "denominator must be positive");
    if p.is_zero() {
        return (Endpoint::zero(target), true);
    }
    // Enough quotient bits that everything below the target's last place is
    // covered by the division remainder's sticky flag.
    let shift = target.bits() as u64 + 8 + q.bit_len().saturating_sub(p.bit_len());
    let (quot, rem) = p.shl(shift).div_rem(q);
    from_parts_rounded(target, neg, &quot, -(shift as i64), !rem.is_zero(), dir)
}

/// One precision family of endpoint arithmetic. Implementations are
/// registered in [`families`] and chosen by name at runtime.
pub trait EndpointFamily: Send + Sync {
    fn name(&self) -> &'static str;

    /// Parses a precision spec for this family, e.g. "bigfloat:256".
    fn parse_spec(&self, spec: &str) -> Option<Precision>;

    fn default_precision(&self) -> Precision;

    fn add(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError>;
    fn sub(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError>;
    fn mul(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError>;
    fn div(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError>;
    fn sqrt(&self, a: &Endpoint, dir: Round) -> Result<Endpoint, KernelError>;
    fn fma(
        &self,
        a: &Endpoint,
        b: &Endpoint,
        c: &Endpoint,
        dir: Round,
    ) -> Result<Endpoint, KernelError>;
    fn next_up(&self, a: &Endpoint) -> Endpoint;
    fn next_down(&self, a: &Endpoint) -> Endpoint;
}

/// The registered endpoint families.
pub fn families() -> &'static [&'static dyn EndpointFamily] {
    &[&Binary64Family, &Binary32Family, &BigFloatFamily]
}

/// Looks up a family by its registered name.
pub fn lookup_family(name: &str) -> Option<&'static dyn EndpointFamily> {
    families().iter().copied().find(|f| f.name() == name)
}

/// Parses an endpoint spec such as "binary64" or "bigfloat:128".
pub fn parse_precision(spec: &str) -> Option<Precision> {
    let family_name = spec.split(':').next().unwrap_or(spec);
    lookup_family(family_name)?.parse_spec(spec)
}

pub struct Binary64Family;
pub struct Binary32Family;
pub struct BigFloatFamily;

fn f64_of(e: &Endpoint) -> f64 {
    match e {
        Endpoint::F64(x) => *x,
        _ => panic!("binary64 kernel applied to a foreign endpoint"),
    }
}

impl EndpointFamily for Binary64Family {
    fn name(&self) -> &'static str {
        "binary64"
    }

    fn parse_spec(&self, spec: &str) -> Option<Precision> {
        (spec == "binary64").then_some(Precision::Binary64)
    }

    fn default_precision(&self) -> Precision {
        Precision::Binary64
    }

    fn add(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        ieee::dir_add_f64(f64_of(a), f64_of(b), dir).map(Endpoint::F64)
    }

    fn sub(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        ieee::dir_sub_f64(f64_of(a), f64_of(b), dir).map(Endpoint::F64)
    }

    fn mul(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        ieee::dir_mul_f64(f64_of(a), f64_of(b), dir).map(Endpoint::F64)
    }

    fn div(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        ieee::dir_div_f64(f64_of(a), f64_of(b), dir).map(Endpoint::F64)
    }

    fn sqrt(&self, a: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        ieee::dir_sqrt_f64(f64_of(a), dir).map(Endpoint::F64)
    }

    fn fma(
        &self,
        a: &Endpoint,
        b: &Endpoint,
        c: &Endpoint,
        dir: Round,
    ) -> Result<Endpoint, KernelError> {
        ieee::dir_fma_f64(f64_of(a), f64_of(b), f64_of(c), dir).map(Endpoint::F64)
    }

    fn next_up(&self, a: &Endpoint) -> Endpoint {
        Endpoint::F64(f64_of(a).next_up())
    }

    fn next_down(&self, a: &Endpoint) -> Endpoint {
        Endpoint::F64(f64_of(a).next_down())
    }
}

fn f32_big(e: &Endpoint) -> BigFloat {
    match e {
        Endpoint::F32(x) => BigFloat::from_f64(*x as f64, 64, Round::Down).0,
        _ => panic!("binary32 kernel applied to a foreign endpoint"),
    }
}

fn back_to_f32(v: BigFloat, dir: Round) -> Endpoint {
    match v.to_parts() {
        None => {
            if v.is_zero() {
                Endpoint::F32(0.0)
            } else if v.is_negative() {
                Endpoint::F32(f32::NEG_INFINITY)
            } else {
                Endpoint::F32(f32::INFINITY)
            }
        }
        Some((neg, limbs, exp)) => {
            let (x, _) = ieee::round_to_f32(neg, &Limbs::from_limbs(&limbs), exp, false, dir);
            Endpoint::F32(x)
        }
    }
}

// binary32 rides on the exact software path; it is a genericity
// demonstration, not a performance target.
impl EndpointFamily for Binary32Family {
    fn name(&self) -> &'static str {
        "binary32"
    }

    fn parse_spec(&self, spec: &str) -> Option<Precision> {
        (spec == "binary32").then_some(Precision::Binary32)
    }

    fn default_precision(&self) -> Precision {
        Precision::Binary32
    }

    fn add(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        f32_big(a).add(&f32_big(b), dir).map(|v| back_to_f32(v, dir))
    }

    fn sub(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        f32_big(a).sub(&f32_big(b), dir).map(|v| back_to_f32(v, dir))
    }

    fn mul(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        f32_big(a).mul(&f32_big(b), dir).map(|v| back_to_f32(v, dir))
    }

    fn div(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        f32_big(a).div(&f32_big(b), dir).map(|v| back_to_f32(v, dir))
    }

    fn sqrt(&self, a: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        f32_big(a).sqrt(dir).map(|v| back_to_f32(v, dir))
    }

    fn fma(
        &self,
        a: &Endpoint,
        b: &Endpoint,
        c: &Endpoint,
        dir: Round,
    ) -> Result<Endpoint, KernelError> {
        f32_big(a)
            .fma(&f32_big(b), &f32_big(c), dir)
            .map(|v| back_to_f32(v, dir))
    }

    fn next_up(&self, a: &Endpoint) -> Endpoint {
        match a {
            Endpoint::F32(x) => Endpoint::F32(x.next_up()),
            _ => panic!("binary32 kernel applied to a foreign endpoint"),
        }
    }

    fn next_down(&self, a: &Endpoint) -> Endpoint {
        match a {
            Endpoint::F32(x) => Endpoint::F32(x.next_down()),
            _ => panic!("binary32 kernel applied to a foreign endpoint"),
        }
    }
}

fn big_of<'a>(e: &'a Endpoint) -> &'a BigFloat {
    match e {
        Endpoint::Big(b) => b,
        _ => panic!("bigfloat kernel applied to a foreign endpoint"),
    }
}

fn same_prec(a: &BigFloat, b: &BigFloat) {
    assert_eq!(
        a.precision(),
        b.precision(),
        "bigfloat operands must share a precision; promote first"
    );
}

impl EndpointFamily for BigFloatFamily {
    fn name(&self) -> &'static str {
        "bigfloat"
    }

    fn parse_spec(&self, spec: &str) -> Option<Precision> {
        if spec == "bigfloat" {
            return Some(self.default_precision());
        }
        let rest = spec.strip_prefix("bigfloat:")?;
        let bits: u32 = rest.parse().ok()?;
        (2..=crate::bigfloat::MAX_PRECISION)
            .contains(&bits)
            .then_some(Precision::Big(bits))
    }

    fn default_precision(&self) -> Precision {
        Precision::Big(256)
    }

    fn add(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        let (a, b) = (big_of(a), big_of(b));
        same_prec(a, b);
        a.add(b, dir).map(Endpoint::Big)
    }

    fn sub(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        let (a, b) = (big_of(a), big_of(b));
        same_prec(a, b);
        a.sub(b, dir).map(Endpoint::Big)
    }

    fn mul(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        let (a, b) = (big_of(a), big_of(b));
        same_prec(a, b);
        a.mul(b, dir).map(Endpoint::Big)
    }

    fn div(&self, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        let (a, b) = (big_of(a), big_of(b));
        same_prec(a, b);
        a.div(b, dir).map(Endpoint::Big)
    }

    fn sqrt(&self, a: &Endpoint, dir: Round) -> Result<Endpoint, KernelError> {
        big_of(a).sqrt(dir).map(Endpoint::Big)
    }

    fn fma(
        &self,
        a: &Endpoint,
        b: &Endpoint,
        c: &Endpoint,
        dir: Round,
    ) -> Result<Endpoint, KernelError> {
        let (a, b, c) = (big_of(a), big_of(b), big_of(c));
        same_prec(a, b);
        same_prec(a, c);
        a.fma(b, c, dir).map(Endpoint::Big)
    }

    fn next_up(&self, a: &Endpoint) -> Endpoint {
        Endpoint::Big(big_of(a).next_up())
    }

    fn next_down(&self, a: &Endpoint) -> Endpoint {
        Endpoint::Big(big_of(a).next_down())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        assert_eq!(parse_precision("binary64"), Some(Precision::Binary64));
        assert_eq!(parse_precision("binary32"), Some(Precision::Binary32));
        assert_eq!(parse_precision("bigfloat"), Some(Precision::Big(256)));
        assert_eq!(parse_precision("bigfloat:128"), Some(Precision::Big(128)));
        assert_eq!(parse_precision("bigfloat:1"), None);
        assert_eq!(parse_precision("decimal"), None);
        assert_eq!(families().len(), 3);
    }

    #[test]
    fn promotion_rank() {
        assert_eq!(
            Precision::Binary32.widest(Precision::Binary64),
            Precision::Binary64
        );
        assert_eq!(
            Precision::Binary64.widest(Precision::Big(256)),
            Precision::Big(256)
        );
        assert_eq!(
            Precision::Big(24).widest(Precision::Binary32),
            Precision::Big(24)
        );
    }

    #[test]
    fn rational_conversions() {
        let (half, exact) = from_rational(Precision::Binary64, 1, 2, Round::Down);
        assert!(exact);
        assert_eq!(half.to_f64(Round::Down), 0.5);

        let (third_dn, exact) = from_rational(Precision::Binary64, 1, 3, Round::Down);
        assert!(!exact);
        assert_eq!(third_dn.to_f64(Round::Down), 1.0 / 3.0);
        let (third_up, _) = from_rational(Precision::Binary64, 1, 3, Round::Up);
        assert_eq!(third_up, third_dn.next_up());

        let (neg_third_up, _) = from_rational(Precision::Binary64, -1, 3, Round::Up);
        assert_eq!(neg_third_up, third_dn.neg());
    }

    #[test]
    fn convert_widening_exact() {
        let (third, _) = from_rational(Precision::Binary64, 1, 3, Round::Down);
        let (wide, exact) = third.convert(Precision::Big(256), Round::Up);
        assert!(exact);
        assert_eq!(wide.cmp_value(&third), Ordering::Equal);
        let (back, exact) = wide.convert(Precision::Binary64, Round::Down);
        assert!(exact);
        assert_eq!(back.to_f64(Round::Down), 1.0 / 3.0);
    }

    #[test]
    fn convert_infinities() {
        let inf = Endpoint::pos_inf(Precision::Binary64);
        for target in [Precision::Binary32, Precision::Big(256)] {
            let (v, exact) = inf.convert(target, Round::Down);
            assert!(exact && v.is_infinite());
        }
    }

    #[test]
    fn cross_precision_compare() {
        let a = Endpoint::F64(0.1);
        let (b, _) = a.convert(Precision::Big(256), Round::Down);
        assert_eq!(a.cmp_value(&b), Ordering::Equal);
        assert_eq!(
            Endpoint::F32(0.1f32).cmp_value(&a),
            Ordering::Greater // 0.1f32 is above the f64 value of 0.1
        );
    }
}
