//! Software floating point with an N-bit significand and directed rounding.
//!
//! A finite nonzero value is `±mant * 2^exp` where `mant` holds exactly
//! `prec` bits with the top bit set. Every arithmetic operation rounds to
//! `prec` bits in the requested direction, so a Down/Up pair brackets the
//! exact real result. There are no NaNs and no signed zeros; infinities are
//! explicit variants. The exponent of the leading bit is clamped to
//! `±EXP_LIMIT`, far beyond any hardware format.

use crate::endpoint::{KernelError, Round};
use crate::limbs::Limbs;
use std::cmp::Ordering;

/// Bound on the exponent of the most significant bit.
pub const EXP_LIMIT: i64 = 1 << 40;

/// Largest supported significand width in bits.
pub const MAX_PRECISION: u32 = 1 << 20;

#[derive(Clone, Debug)]
enum Repr {
    Zero,
    Finite { neg: bool, exp: i64, mant: Limbs },
    NegInf,
    PosInf,
}

#[derive(Clone, Debug)]
pub struct BigFloat {
    prec: u32,
    repr: Repr,
}

fn rounds_away(neg: bool, dir: Round) -> bool {
    match dir {
        Round::Up => !neg,
        Round::Down => neg,
    }
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        check_prec(prec);
        BigFloat {
            prec,
            repr: Repr::Zero,
        }
    }

    pub fn pos_inf(prec: u32) -> Self {
        check_prec(prec);
        BigFloat {
            prec,
            repr: Repr::PosInf,
        }
    }

    pub fn neg_inf(prec: u32) -> Self {
        check_prec(prec);
        BigFloat {
            prec,
            repr: Repr::NegInf,
        }
    }

    pub fn max_finite(prec: u32) -> Self {
        check_prec(prec);
        let mant = Limbs::from_u64(1).shl(prec as u64).sub(&Limbs::from_u64(1));
        BigFloat {
            prec,
            repr: Repr::Finite {
                neg: false,
                exp: EXP_LIMIT - prec as i64 + 1,
                mant,
            },
        }
    }

    pub fn min_positive(prec: u32) -> Self {
        check_prec(prec);
        BigFloat {
            prec,
            repr: Repr::Finite {
                neg: false,
                exp: -EXP_LIMIT - prec as i64 + 1,
                mant: Limbs::from_u64(1).shl(prec as u64 - 1),
            },
        }
    }

    /// Rounds `±mant * 2^exp` (plus an unrepresented positive tail when
    /// `sticky`) to `prec` bits. Returns the value and whether it is exact.
    pub(crate) fn round_parts(
        neg: bool,
        mant: &Limbs,
        exp: i64,
        sticky: bool,
        prec: u32,
        dir: Round,
    ) -> (Self, bool) {
        check_prec(prec);
        let bits = mant.bit_len();
        if bits == 0 {
            debug_assert!(!sticky, "sticky tail with no leading bit");
            return (BigFloat::zero(prec), true);
        }
        if bits == prec as u64 && !sticky && (exp + prec as i64 - 1).abs() <= EXP_LIMIT {
            return (
                BigFloat {
                    prec,
                    repr: Repr::Finite {
                        neg,
                        exp,
                        mant: mant.clone(),
                    },
                },
                true,
            );
        }
        let (mut m, mut e, mut sticky) = (mant.clone(), exp, sticky);
        if bits > prec as u64 {
            let drop = bits - prec as u64;
            let (hi, s) = m.split_sticky(drop);
            m = hi;
            sticky |= s;
            e += drop as i64;
        } else if bits < prec as u64 {
            let raise = prec as u64 - bits;
            m = m.shl(raise);
            e -= raise as i64;
        }
        if sticky && rounds_away(neg, dir) {
            m = m.add_u64(1);
            if m.bit_len() > prec as u64 {
                m = m.shr(1);
                e += 1;
            }
        }
        let msb = e + prec as i64 - 1;
        if msb > EXP_LIMIT {
            let v = if rounds_away(neg, dir) {
                if neg {
                    BigFloat::neg_inf(prec)
                } else {
                    BigFloat::pos_inf(prec)
                }
            } else {
                let mut m = BigFloat::max_finite(prec);
                if neg {
                    m = m.neg();
                }
                m
            };
            return (v, false);
        }
        if msb < -EXP_LIMIT {
            let v = if rounds_away(neg, dir) {
                let mut m = BigFloat::min_positive(prec);
                if neg {
                    m = m.neg();
                }
                m
            } else {
                BigFloat::zero(prec)
            };
            return (v, false);
        }
        (
            BigFloat {
                prec,
                repr: Repr::Finite { neg, exp: e, mant: m },
            },
            !sticky,
        )
    }

    /// Round-to-nearest-even variant used for interval midpoints. A sticky
    /// tail is only honored beyond the guard bit, matching how `sum_parts`
    /// produces it.
    pub(crate) fn round_parts_nearest(
        neg: bool,
        mant: &Limbs,
        exp: i64,
        sticky: bool,
        prec: u32,
    ) -> Self {
        check_prec(prec);
        let bits = mant.bit_len();
        if bits == 0 {
            return BigFloat::zero(prec);
        }
        let (mut m, mut e);
        if bits > prec as u64 {
            let drop = bits - prec as u64;
            let guard = mant.bit(drop - 1);
            let rest = mant.low_bits_nonzero(drop - 1) || sticky;
            m = mant.shr(drop);
            e = exp + drop as i64;
            if guard && (rest || m.bit(0)) {
                m = m.add_u64(1);
                if m.bit_len() > prec as u64 {
                    m = m.shr(1);
                    e += 1;
                }
            }
        } else {
            let raise = prec as u64 - bits;
            m = mant.shl(raise);
            e = exp - raise as i64;
        }
        let msb = e + prec as i64 - 1;
        if msb > EXP_LIMIT {
            let v = BigFloat::max_finite(prec);
            return if neg { v.neg() } else { v };
        }
        if msb < -EXP_LIMIT {
            return BigFloat::zero(prec);
        }
        BigFloat {
            prec,
            repr: Repr::Finite { neg, exp: e, mant: m },
        }
    }

    pub fn from_f64(x: f64, prec: u32, dir: Round) -> (Self, bool) {
        assert!(!x.is_nan(), "NaN is not an endpoint value");
        if x == 0.0 {
            return (BigFloat::zero(prec), true);
        }
        if x.is_infinite() {
            return (
                if x > 0.0 {
                    BigFloat::pos_inf(prec)
                } else {
                    BigFloat::neg_inf(prec)
                },
                true,
            );
        }
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        Self::round_parts(neg, &Limbs::from_u64(mant), exp, false, prec, dir)
    }

    pub fn from_u64(v: u64, prec: u32, dir: Round) -> (Self, bool) {
        Self::round_parts(false, &Limbs::from_u64(v), 0, false, prec, dir)
    }

    pub fn from_i64(v: i64, prec: u32, dir: Round) -> (Self, bool) {
        Self::round_parts(
            v < 0,
            &Limbs::from_u64(v.unsigned_abs()),
            0,
            false,
            prec,
            dir,
        )
    }

    pub fn to_f64(&self, dir: Round) -> (f64, bool) {
        match &self.repr {
            Repr::Zero => (0.0, true),
            Repr::PosInf => (f64::INFINITY, true),
            Repr::NegInf => (f64::NEG_INFINITY, true),
            Repr::Finite { neg, exp, mant } => {
                crate::ieee::round_to_f64(*neg, mant, *exp, false, dir)
            }
        }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Exponent of the leading significand bit; None for zero and
    /// infinities.
    pub fn msb_exp(&self) -> Option<i64> {
        match &self.repr {
            Repr::Finite { exp, .. } => Some(exp + self.prec as i64 - 1),
            _ => None,
        }
    }

    /// Directed re-rounding to a new significand width.
    pub fn with_precision(&self, prec: u32, dir: Round) -> (Self, bool) {
        match &self.repr {
            Repr::Zero => (BigFloat::zero(prec), true),
            Repr::PosInf => (BigFloat::pos_inf(prec), true),
            Repr::NegInf => (BigFloat::neg_inf(prec), true),
            Repr::Finite { neg, exp, mant } => {
                Self::round_parts(*neg, mant, *exp, false, prec, dir)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.repr, Repr::Zero | Repr::Finite { .. })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.repr, Repr::PosInf | Repr::NegInf)
    }

    pub fn is_negative(&self) -> bool {
        match &self.repr {
            Repr::Zero => false,
            Repr::Finite { neg, .. } => *neg,
            Repr::NegInf => true,
            Repr::PosInf => false,
        }
    }

    pub fn sign(&self) -> Ordering {
        match &self.repr {
            Repr::Zero => Ordering::Equal,
            Repr::Finite { neg: true, .. } | Repr::NegInf => Ordering::Less,
            _ => Ordering::Greater,
        }
    }

    /// Raw view: `(negative, significand limbs, exponent of the lowest bit)`.
    /// None for zero and infinities.
    pub fn to_parts(&self) -> Option<(bool, Vec<u64>, i64)> {
        match &self.repr {
            Repr::Finite { neg, exp, mant } => Some((*neg, mant.as_limbs().to_vec(), *exp)),
            _ => None,
        }
    }

    pub fn neg(&self) -> Self {
        let repr = match &self.repr {
            Repr::Zero => Repr::Zero,
            Repr::PosInf => Repr::NegInf,
            Repr::NegInf => Repr::PosInf,
            Repr::Finite { neg, exp, mant } => Repr::Finite {
                neg: !neg,
                exp: *exp,
                mant: mant.clone(),
            },
        };
        BigFloat {
            prec: self.prec,
            repr,
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact scaling by a power of two.
    pub fn mul_pow2(&self, k: i64) -> Self {
        match &self.repr {
            Repr::Finite { neg, exp, mant } => {
                let msb = exp + k + self.prec as i64 - 1;
                assert!(
                    msb.abs() <= EXP_LIMIT,
                    "power-of-two scale outside exponent range"
                );
                BigFloat {
                    prec: self.prec,
                    repr: Repr::Finite {
                        neg: *neg,
                        exp: exp + k,
                        mant: mant.clone(),
                    },
                }
            }
            _ => self.clone(),
        }
    }

    /// Exact value comparison; works across precisions.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        use Repr::*;
        match (&self.repr, &other.repr) {
            (NegInf, NegInf) | (PosInf, PosInf) | (Zero, Zero) => Ordering::Equal,
            (NegInf, _) => Ordering::Less,
            (_, NegInf) => Ordering::Greater,
            (PosInf, _) => Ordering::Greater,
            (_, PosInf) => Ordering::Less,
            (Zero, Finite { neg, .. }) => {
                if *neg {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (Finite { neg, .. }, Zero) => {
                if *neg {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (
                Finite {
                    neg: n1,
                    exp: e1,
                    mant: m1,
                },
                Finite {
                    neg: n2,
                    exp: e2,
                    mant: m2,
                },
            ) => {
                if n1 != n2 {
                    return if *n1 { Ordering::Less } else { Ordering::Greater };
                }
                let mag = {
                    let msb1 = e1 + m1.bit_len() as i64 - 1;
                    let msb2 = e2 + m2.bit_len() as i64 - 1;
                    if msb1 != msb2 {
                        msb1.cmp(&msb2)
                    } else {
                        // Align the lowest bits and compare the mantissas.
                        let lsb = (*e1).min(*e2);
                        let a = m1.shl((e1 - lsb) as u64);
                        let b = m2.shl((e2 - lsb) as u64);
                        a.cmp(&b)
                    }
                };
                if *n1 {
                    mag.reverse()
                } else {
                    mag
                }
            }
        }
    }

    pub fn add(&self, other: &Self, dir: Round) -> Result<Self, KernelError> {
        self.add_round(other, self.prec, dir)
    }

    /// Addition with an explicit result precision; operands may differ in
    /// width, which the exact alignment path handles naturally.
    pub fn add_round(&self, other: &Self, prec: u32, dir: Round) -> Result<Self, KernelError> {
        use Repr::*;
        match (&self.repr, &other.repr) {
            (PosInf, NegInf) | (NegInf, PosInf) => Err(KernelError::UndefinedOperation(
                "sum of opposite infinities",
            )),
            (PosInf, _) | (_, PosInf) => Ok(BigFloat::pos_inf(prec)),
            (NegInf, _) | (_, NegInf) => Ok(BigFloat::neg_inf(prec)),
            (Zero, _) => Ok(other.with_precision(prec, dir).0),
            (_, Zero) => Ok(self.with_precision(prec, dir).0),
            (
                Finite {
                    neg: n1,
                    exp: e1,
                    mant: m1,
                },
                Finite {
                    neg: n2,
                    exp: e2,
                    mant: m2,
                },
            ) => Ok(add_triples(*n1, m1, *e1, *n2, m2, *e2, prec, dir)),
        }
    }

    pub fn sub(&self, other: &Self, dir: Round) -> Result<Self, KernelError> {
        self.add(&other.neg(), dir)
    }

    pub fn mul(&self, other: &Self, dir: Round) -> Result<Self, KernelError> {
        self.mul_round(other, self.prec, dir)
    }

    pub fn mul_round(&self, other: &Self, prec: u32, dir: Round) -> Result<Self, KernelError> {
        use Repr::*;
        match (&self.repr, &other.repr) {
            (Zero, PosInf | NegInf) | (PosInf | NegInf, Zero) => Err(
                KernelError::UndefinedOperation("product of zero and infinity"),
            ),
            (Zero, _) | (_, Zero) => Ok(BigFloat::zero(prec)),
            (PosInf | NegInf, _) | (_, PosInf | NegInf) => {
                let neg = self.is_negative() != other.is_negative();
                Ok(if neg {
                    BigFloat::neg_inf(prec)
                } else {
                    BigFloat::pos_inf(prec)
                })
            }
            (
                Finite {
                    neg: n1,
                    exp: e1,
                    mant: m1,
                },
                Finite {
                    neg: n2,
                    exp: e2,
                    mant: m2,
                },
            ) => {
                let m = m1.mul(m2);
                Ok(Self::round_parts(n1 != n2, &m, e1 + e2, false, prec, dir).0)
            }
        }
    }

    pub fn div(&self, other: &Self, dir: Round) -> Result<Self, KernelError> {
        self.div_round(other, self.prec, dir)
    }

    pub fn div_round(&self, other: &Self, prec: u32, dir: Round) -> Result<Self, KernelError> {
        use Repr::*;
        match (&self.repr, &other.repr) {
            (_, Zero) => Err(KernelError::DivisionByZero),
            (PosInf | NegInf, PosInf | NegInf) => Err(KernelError::UndefinedOperation(
                "ratio of infinities",
            )),
            (Zero, _) => Ok(BigFloat::zero(prec)),
            (_, PosInf | NegInf) => Ok(BigFloat::zero(prec)),
            (PosInf | NegInf, _) => {
                let neg = self.is_negative() != other.is_negative();
                Ok(if neg {
                    BigFloat::neg_inf(prec)
                } else {
                    BigFloat::pos_inf(prec)
                })
            }
            (
                Finite {
                    neg: n1,
                    exp: e1,
                    mant: m1,
                },
                Finite {
                    neg: n2,
                    exp: e2,
                    mant: m2,
                },
            ) => {
                let shift = prec as u64 + 2 + m2.bit_len().saturating_sub(m1.bit_len());
                let (q, r) = m1.shl(shift).div_rem(m2);
                let exp = e1 - e2 - shift as i64;
                Ok(Self::round_parts(n1 != n2, &q, exp, !r.is_zero(), prec, dir).0)
            }
        }
    }

    pub fn div_u64(&self, d: u64, dir: Round) -> Result<Self, KernelError> {
        if d == 0 {
            return Err(KernelError::DivisionByZero);
        }
        match &self.repr {
            Repr::Zero => Ok(BigFloat::zero(self.prec)),
            Repr::PosInf | Repr::NegInf => Ok(self.clone()),
            Repr::Finite { neg, exp, mant } => {
                // Quotient keeps at least prec + 2 significant bits.
                let (q, r) = mant.shl(66).div_rem_u64(d);
                Ok(Self::round_parts(*neg, &q, exp - 66, r != 0, self.prec, dir).0)
            }
        }
    }

    pub fn mul_u64(&self, k: u64, dir: Round) -> Result<Self, KernelError> {
        match &self.repr {
            Repr::Zero => Ok(BigFloat::zero(self.prec)),
            Repr::PosInf | Repr::NegInf => {
                if k == 0 {
                    Err(KernelError::UndefinedOperation(
                        "product of zero and infinity",
                    ))
                } else {
                    Ok(self.clone())
                }
            }
            Repr::Finite { neg, exp, mant } => {
                if k == 0 {
                    return Ok(BigFloat::zero(self.prec));
                }
                let m = mant.mul_u64_add(k, 0);
                Ok(Self::round_parts(*neg, &m, *exp, false, self.prec, dir).0)
            }
        }
    }

    pub fn sqrt(&self, dir: Round) -> Result<Self, KernelError> {
        use Repr::*;
        match &self.repr {
            Zero => Ok(BigFloat::zero(self.prec)),
            PosInf => Ok(BigFloat::pos_inf(self.prec)),
            NegInf => Err(KernelError::UndefinedOperation("sqrt of a negative value")),
            Finite { neg: true, .. } => {
                Err(KernelError::UndefinedOperation("sqrt of a negative value"))
            }
            Finite {
                neg: false,
                exp,
                mant,
            } => {
                let mut k = self.prec as i64 + 4;
                if (exp - k) & 1 != 0 {
                    k += 1;
                }
                let (root, inexact) = mant.shl(k as u64).isqrt_rem();
                Ok(Self::round_parts(false, &root, (exp - k) / 2, inexact, self.prec, dir).0)
            }
        }
    }

    pub fn fma(&self, b: &Self, c: &Self, dir: Round) -> Result<Self, KernelError> {
        use Repr::*;
        // Infinities and zeros reduce to the multiply/add special cases.
        if !self.is_finite() || !b.is_finite() || !c.is_finite() {
            let p = self.mul(b, dir)?;
            return p.add(c, dir);
        }
        match (&self.repr, &b.repr) {
            (Zero, _) | (_, Zero) => Ok(c.with_precision(self.prec, dir).0),
            (
                Finite {
                    neg: n1,
                    exp: e1,
                    mant: m1,
                },
                Finite {
                    neg: n2,
                    exp: e2,
                    mant: m2,
                },
            ) => {
                let pm = m1.mul(m2);
                let pe = e1 + e2;
                let pneg = n1 != n2;
                match &c.repr {
                    Zero => Ok(Self::round_parts(pneg, &pm, pe, false, self.prec, dir).0),
                    Finite { neg, exp, mant } => Ok(add_triples(
                        pneg, &pm, pe, *neg, mant, *exp, self.prec, dir,
                    )),
                    _ => unreachable!(),
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn next_up(&self) -> Self {
        match &self.repr {
            Repr::PosInf => BigFloat::pos_inf(self.prec),
            Repr::NegInf => BigFloat::max_finite(self.prec).neg(),
            Repr::Zero => BigFloat::min_positive(self.prec),
            Repr::Finite { neg: false, .. } => self.step_away(),
            Repr::Finite { neg: true, .. } => self.step_toward_zero(),
        }
    }

    pub fn next_down(&self) -> Self {
        self.neg().next_up().neg()
    }

    /// One ulp away from zero; magnitude grows.
    fn step_away(&self) -> Self {
        let Repr::Finite { neg, exp, mant } = &self.repr else {
            unreachable!()
        };
        let mut m = mant.add_u64(1);
        let mut e = *exp;
        if m.bit_len() > self.prec as u64 {
            m = m.shr(1);
            e += 1;
        }
        if e + self.prec as i64 - 1 > EXP_LIMIT {
            return if *neg {
                BigFloat::neg_inf(self.prec)
            } else {
                BigFloat::pos_inf(self.prec)
            };
        }
        BigFloat {
            prec: self.prec,
            repr: Repr::Finite {
                neg: *neg,
                exp: e,
                mant: m,
            },
        }
    }

    /// One ulp toward zero; magnitude shrinks.
    fn step_toward_zero(&self) -> Self {
        let Repr::Finite { neg, exp, mant } = &self.repr else {
            unreachable!()
        };
        let one = Limbs::from_u64(1);
        let lowered = mant.sub(&one);
        if lowered.bit_len() == self.prec as u64 {
            return BigFloat {
                prec: self.prec,
                repr: Repr::Finite {
                    neg: *neg,
                    exp: *exp,
                    mant: lowered,
                },
            };
        }
        // Crossed a binade: all ones one exponent lower.
        if exp - 1 + self.prec as i64 - 1 < -EXP_LIMIT {
            return BigFloat::zero(self.prec);
        }
        let m = mant.shl(1).sub(&one);
        BigFloat {
            prec: self.prec,
            repr: Repr::Finite {
                neg: *neg,
                exp: exp - 1,
                mant: m,
            },
        }
    }
}

/// Signed sum of two exact dyadic values as `(neg, mant, exp, sticky)`.
/// When the exponent gap exceeds `keep_bits` plus the wider operand's width,
/// the small operand collapses into a sticky tail (the true value then lies
/// strictly between `mant*2^exp` and `(mant+1)*2^exp`).
pub(crate) fn sum_parts(
    n1: bool,
    m1: &Limbs,
    e1: i64,
    n2: bool,
    m2: &Limbs,
    e2: i64,
    keep_bits: u32,
) -> (bool, Limbs, i64, bool) {
    debug_assert!(!m1.is_zero() && !m2.is_zero());
    let msb1 = e1 + m1.bit_len() as i64 - 1;
    let msb2 = e2 + m2.bit_len() as i64 - 1;
    let (nh, mh, eh, nl, ml, el, msb_h, msb_l) = if msb1 >= msb2 {
        (n1, m1, e1, n2, m2, e2, msb1, msb2)
    } else {
        (n2, m2, e2, n1, m1, e1, msb2, msb1)
    };
    let cap = mh.bit_len() as i64 + keep_bits as i64 + 8;
    if msb_h - msb_l > cap {
        return if nh == nl {
            (nh, mh.clone(), eh, true)
        } else {
            (nh, mh.shl(3).sub(&Limbs::from_u64(1)), eh - 3, true)
        };
    }
    let lsb = eh.min(el);
    let a = mh.shl((eh - lsb) as u64);
    let b = ml.shl((el - lsb) as u64);
    if nh == nl {
        (nh, a.add(&b), lsb, false)
    } else {
        match a.cmp(&b) {
            Ordering::Equal => (false, Limbs::zero(), 0, false),
            Ordering::Greater => (nh, a.sub(&b), lsb, false),
            Ordering::Less => (nl, b.sub(&a), lsb, false),
        }
    }
}

/// Rounded sum of two exact dyadic values.
#[allow(clippy::too_many_arguments)]
fn add_triples(
    n1: bool,
    m1: &Limbs,
    e1: i64,
    n2: bool,
    m2: &Limbs,
    e2: i64,
    prec: u32,
    dir: Round,
) -> BigFloat {
    let (neg, m, e, sticky) = sum_parts(n1, m1, e1, n2, m2, e2, prec);
    BigFloat::round_parts(neg, &m, e, sticky, prec, dir).0
}

fn check_prec(prec: u32) {
    assert!(
        (2..=MAX_PRECISION).contains(&prec),
        "significand width out of range: {prec}"
    );
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}
