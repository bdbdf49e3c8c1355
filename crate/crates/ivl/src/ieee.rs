//! Directed rounding for hardware floats.
//!
//! The kernels run on round-to-nearest hardware and recover the rounding
//! error of each operation with error-free transformations (twoSum, Dekker's
//! twoProduct), then nudge the result one ulp when the requested direction
//! calls for it. No rounding-mode register is ever touched, so the kernels
//! are reentrant. Near the over/underflow boundaries, where the error terms
//! stop being representable, they fall back to exact software arithmetic.

use crate::bigfloat::BigFloat;
use crate::endpoint::{KernelError, Round};
use crate::limbs::Limbs;

const SPLIT: f64 = 134_217_729.0; // 2^27 + 1

/// Magnitudes outside this window take the exact fallback path.
const SAFE_LO: f64 = 1e-280;
const SAFE_HI: f64 = 1e280;

#[inline]
fn two_sum(a: f64, b: f64, s: f64) -> f64 {
    let bv = s - a;
    let av = s - bv;
    (b - bv) + (a - av)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let ca = SPLIT * a;
    let ah = ca - (ca - a);
    let al = a - ah;
    let cb = SPLIT * b;
    let bh = cb - (cb - b);
    let bl = b - bh;
    let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, e)
}

#[inline]
fn nudge(value: f64, err_sign: std::cmp::Ordering, dir: Round) -> f64 {
    use std::cmp::Ordering::*;
    match (err_sign, dir) {
        (Greater, Round::Up) => value.next_up(),
        (Less, Round::Down) => value.next_down(),
        _ => value,
    }
}

fn exact64(x: f64) -> BigFloat {
    BigFloat::from_f64(x, 64, Round::Down).0
}

pub fn dir_add_f64(a: f64, b: f64, dir: Round) -> Result<f64, KernelError> {
    debug_assert!(!a.is_nan() && !b.is_nan());
    if a.is_infinite() || b.is_infinite() {
        if a.is_infinite() && b.is_infinite() && a.signum() != b.signum() {
            return Err(KernelError::UndefinedOperation(
                "sum of opposite infinities",
            ));
        }
        return Ok(if a.is_infinite() { a } else { b });
    }
    let s = a + b;
    if !s.is_finite() {
        return Ok(exact64(a).add(&exact64(b), dir)?.to_f64(dir).0);
    }
    let e = two_sum(a, b, s);
    Ok(nudge(s, e.partial_cmp(&0.0).unwrap(), dir))
}

pub fn dir_sub_f64(a: f64, b: f64, dir: Round) -> Result<f64, KernelError> {
    dir_add_f64(a, -b, dir)
}

pub fn dir_mul_f64(a: f64, b: f64, dir: Round) -> Result<f64, KernelError> {
    debug_assert!(!a.is_nan() && !b.is_nan());
    if a.is_infinite() || b.is_infinite() {
        if a == 0.0 || b == 0.0 {
            return Err(KernelError::UndefinedOperation(
                "product of zero and infinity",
            ));
        }
        return Ok(if a.signum() == b.signum() {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        });
    }
    if a == 0.0 || b == 0.0 {
        return Ok(0.0);
    }
    let p = a * b;
    if !p.is_finite() || p.abs() < SAFE_LO || a.abs() > SAFE_HI || b.abs() > SAFE_HI {
        return Ok(exact64(a).mul(&exact64(b), dir)?.to_f64(dir).0);
    }
    let (p, e) = two_prod(a, b);
    Ok(nudge(p, e.partial_cmp(&0.0).unwrap(), dir))
}

pub fn dir_div_f64(a: f64, b: f64, dir: Round) -> Result<f64, KernelError> {
    debug_assert!(!a.is_nan() && !b.is_nan());
    if b == 0.0 {
        return Err(KernelError::DivisionByZero);
    }
    if a.is_infinite() {
        if b.is_infinite() {
            return Err(KernelError::UndefinedOperation("ratio of infinities"));
        }
        return Ok(if a.signum() == b.signum() {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        });
    }
    if b.is_infinite() || a == 0.0 {
        return Ok(0.0);
    }
    let q = a / b;
    let in_range = q.is_finite()
        && q != 0.0
        && q.abs() >= SAFE_LO
        && q.abs() <= SAFE_HI
        && a.abs() >= SAFE_LO
        && a.abs() <= SAFE_HI
        && b.abs() >= SAFE_LO
        && b.abs() <= SAFE_HI;
    if !in_range {
        return Ok(exact64(a).div(&exact64(b), dir)?.to_f64(dir).0);
    }
    // Residual r = q*b - a is exact here; exact quotient differs from q
    // in the direction of -r/b.
    let (p, e) = two_prod(q, b);
    let r = (p - a) + e;
    let err_sign = if r == 0.0 {
        std::cmp::Ordering::Equal
    } else if (r > 0.0) != (b > 0.0) {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Less
    };
    Ok(nudge(q, err_sign, dir))
}

pub fn dir_sqrt_f64(a: f64, dir: Round) -> Result<f64, KernelError> {
    debug_assert!(!a.is_nan());
    if a < 0.0 {
        return Err(KernelError::UndefinedOperation("sqrt of a negative value"));
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    if a.is_infinite() {
        return Ok(f64::INFINITY);
    }
    if a < SAFE_LO {
        return Ok(exact64(a).sqrt(dir)?.to_f64(dir).0);
    }
    let s = a.sqrt();
    let (p, e) = two_prod(s, s);
    let r = (p - a) + e;
    let err_sign = if r == 0.0 {
        std::cmp::Ordering::Equal
    } else if r > 0.0 {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Greater
    };
    Ok(nudge(s, err_sign, dir))
}

pub fn dir_fma_f64(a: f64, b: f64, c: f64, dir: Round) -> Result<f64, KernelError> {
    debug_assert!(!a.is_nan() && !b.is_nan() && !c.is_nan());
    Ok(exact64(a)
        .fma(&exact64(b), &exact64(c), dir)?
        .to_f64(dir)
        .0)
}

enum Sig {
    Zero { exact: bool },
    Value { m: u64, lsb: i64, exact: bool },
}

/// Rounds `mant * 2^exp` (plus sticky tail) to a `p`-bit significand with
/// the least significant bit no lower than `emin_lsb`.
fn round_sig(mant: &Limbs, exp: i64, sticky: bool, away: bool, p: u32, emin_lsb: i64) -> Sig {
    let bits = mant.bit_len();
    if bits == 0 {
        debug_assert!(!sticky);
        return Sig::Zero { exact: !sticky };
    }
    let msb = exp + bits as i64 - 1;
    let target_lsb = (msb - (p as i64 - 1)).max(emin_lsb);
    let (mut m, mut sticky, mut lsb) = if target_lsb > exp {
        let (hi, s) = mant.split_sticky((target_lsb - exp) as u64);
        (hi, sticky || s, target_lsb)
    } else {
        (mant.shl((exp - target_lsb) as u64), sticky, target_lsb)
    };
    if sticky && away {
        m = m.add_u64(1);
        if m.bit_len() > p as u64 {
            m = m.shr(1);
            lsb += 1;
        }
    }
    if m.is_zero() {
        return Sig::Zero { exact: !sticky };
    }
    Sig::Value {
        m: m.to_u64().expect("rounded significand fits a limb"),
        lsb,
        exact: !sticky,
    }
}

pub fn round_to_f64(neg: bool, mant: &Limbs, exp: i64, sticky: bool, dir: Round) -> (f64, bool) {
    let away = match dir {
        Round::Up => !neg,
        Round::Down => neg,
    };
    let signed = |x: f64| if neg { -x } else { x };
    match round_sig(mant, exp, sticky, away, 53, -1074) {
        Sig::Zero { exact } => (0.0, exact),
        Sig::Value { m, lsb, exact } => {
            let msb = lsb + 64 - m.leading_zeros() as i64 - 1;
            if msb > 1023 {
                return if away {
                    (signed(f64::INFINITY), false)
                } else {
                    (signed(f64::MAX), false)
                };
            }
            let bits = if m >= 1 << 52 {
                let biased = (lsb + 1075) as u64;
                debug_assert!((1..=2046).contains(&biased));
                (biased << 52) | (m & ((1 << 52) - 1))
            } else {
                debug_assert_eq!(lsb, -1074);
                m
            };
            (signed(f64::from_bits(bits)), exact)
        }
    }
}

pub fn round_to_f32(neg: bool, mant: &Limbs, exp: i64, sticky: bool, dir: Round) -> (f32, bool) {
    let away = match dir {
        Round::Up => !neg,
        Round::Down => neg,
    };
    let signed = |x: f32| if neg { -x } else { x };
    match round_sig(mant, exp, sticky, away, 24, -149) {
        Sig::Zero { exact } => (0.0, exact),
        Sig::Value { m, lsb, exact } => {
            let msb = lsb + 64 - m.leading_zeros() as i64 - 1;
            if msb > 127 {
                return if away {
                    (signed(f32::INFINITY), false)
                } else {
                    (signed(f32::MAX), false)
                };
            }
            let m = m as u32;
            let bits = if m >= 1 << 23 {
                let biased = (lsb + 150) as u32;
                debug_assert!((1..=254).contains(&biased));
                (biased << 23) | (m & ((1 << 23) - 1))
            } else {
                debug_assert_eq!(lsb, -149);
                m
            };
            (signed(f32::from_bits(bits)), exact)
        }
    }
}

/// Round-to-nearest-even variant used for interval midpoints. A sticky
/// tail is only honored when it lies beyond the guard bit (which is how
/// `sum_parts` produces it); overflow saturates to the largest finite value.
pub(crate) fn nearest_to_f64(neg: bool, mant: &Limbs, exp: i64, sticky: bool) -> f64 {
    let signed = |x: f64| if neg { -x } else { x };
    match nearest_sig(mant, exp, sticky, 53, -1074) {
        Sig::Zero { .. } => 0.0,
        Sig::Value { m, lsb, .. } => {
            let msb = lsb + 64 - m.leading_zeros() as i64 - 1;
            if msb > 1023 {
                return signed(f64::MAX);
            }
            let bits = if m >= 1 << 52 {
                (((lsb + 1075) as u64) << 52) | (m & ((1 << 52) - 1))
            } else {
                m
            };
            signed(f64::from_bits(bits))
        }
    }
}

pub(crate) fn nearest_to_f32(neg: bool, mant: &Limbs, exp: i64, sticky: bool) -> f32 {
    let signed = |x: f32| if neg { -x } else { x };
    match nearest_sig(mant, exp, sticky, 24, -149) {
        Sig::Zero { .. } => 0.0,
        Sig::Value { m, lsb, .. } => {
            let msb = lsb + 64 - m.leading_zeros() as i64 - 1;
            if msb > 127 {
                return signed(f32::MAX);
            }
            let m = m as u32;
            let bits = if m >= 1 << 23 {
                (((lsb + 150) as u32) << 23) | (m & ((1 << 23) - 1))
            } else {
                m
            };
            signed(f32::from_bits(bits))
        }
    }
}

fn nearest_sig(mant: &Limbs, exp: i64, sticky: bool, p: u32, emin_lsb: i64) -> Sig {
    let bits = mant.bit_len();
    if bits == 0 {
        return Sig::Zero { exact: !sticky };
    }
    let msb = exp + bits as i64 - 1;
    let target_lsb = (msb - (p as i64 - 1)).max(emin_lsb);
    if target_lsb <= exp {
        // Finer grid than the input: no guard information, truncate.
        return Sig::Value {
            m: mant
                .shl((exp - target_lsb) as u64)
                .to_u64()
                .expect("significand fits a limb"),
            lsb: target_lsb,
            exact: !sticky,
        };
    }
    let drop = (target_lsb - exp) as u64;
    let guard = mant.bit(drop - 1);
    let rest = mant.low_bits_nonzero(drop - 1) || sticky;
    let mut m = mant.shr(drop);
    let mut lsb = target_lsb;
    if guard && (rest || m.bit(0)) {
        m = m.add_u64(1);
        if m.bit_len() > p as u64 {
            m = m.shr(1);
            lsb += 1;
        }
    }
    if m.is_zero() {
        return Sig::Zero { exact: false };
    }
    Sig::Value {
        m: m.to_u64().expect("significand fits a limb"),
        lsb,
        exact: !(guard || rest),
    }
}

/// Exact decomposition of a finite nonzero f64 into `±mant * 2^exp`.
pub fn f64_parts(x: f64) -> (bool, Limbs, i64) {
    debug_assert!(x.is_finite() && x != 0.0);
    let bits = x.to_bits();
    let neg = bits >> 63 == 1;
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, exp) = if biased == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), biased - 1075)
    };
    (neg, Limbs::from_u64(mant), exp)
}
