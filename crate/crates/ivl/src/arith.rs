//! Containment-correct interval arithmetic.
//!
//! Every operation returns the tightest representable enclosure of the
//! exact set image (lower endpoints rounded down, upper rounded up) and
//! absorbs the empty set. Operands of different precisions are promoted to
//! the widest one first. The sign-class case analysis keeps the endpoint
//! kernels away from undefined forms like `0 * inf`, so the `Result`s from
//! the kernel layer are unwrapped here by construction.

use crate::endpoint::{Endpoint, Precision, Round};
use crate::interval::Interval;
use std::cmp::Ordering;

fn ok(r: Result<Endpoint, crate::endpoint::KernelError>) -> Endpoint {
    r.expect("interval invariants keep kernels in their domain")
}

/// Sign class of a nonempty interval.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Class {
    /// Entirely zero: `[0, 0]`.
    Zero,
    /// Nonnegative with some positive part: `lo >= 0`, `hi > 0`.
    Pos,
    /// Nonpositive with some negative part: `lo < 0`, `hi <= 0`.
    Neg,
    /// Straddles zero strictly: `lo < 0 < hi`.
    Mixed,
}

fn classify(lo: &Endpoint, hi: &Endpoint) -> Class {
    match (lo.sign(), hi.sign()) {
        (Ordering::Equal, Ordering::Equal) => Class::Zero,
        (Ordering::Less, Ordering::Greater) => Class::Mixed,
        (_, Ordering::Greater) => Class::Pos,
        _ => Class::Neg,
    }
}

pub fn neg(x: &Interval) -> Interval {
    match x.bounds() {
        None => x.clone(),
        Some((lo, hi)) => Interval::from_bounds_unchecked(hi.neg(), lo.neg()),
    }
}

pub fn add(x: &Interval, y: &Interval) -> Interval {
    let (x, y) = x.promoted_pair(y);
    match (x.bounds(), y.bounds()) {
        (Some((a1, a2)), Some((b1, b2))) => Interval::from_bounds_unchecked(
            ok(a1.add(b1, Round::Down)),
            ok(a2.add(b2, Round::Up)),
        ),
        _ => Interval::empty(x.precision()),
    }
}

pub fn sub(x: &Interval, y: &Interval) -> Interval {
    let (x, y) = x.promoted_pair(y);
    match (x.bounds(), y.bounds()) {
        (Some((a1, a2)), Some((b1, b2))) => Interval::from_bounds_unchecked(
            ok(a1.sub(b2, Round::Down)),
            ok(a2.sub(b1, Round::Up)),
        ),
        _ => Interval::empty(x.precision()),
    }
}

/// The endpoint pairs whose products bound the set `{a*b}`; at most two
/// candidates per bound (only the mixed/mixed case needs both).
fn mul_candidates<'a>(
    a1: &'a Endpoint,
    a2: &'a Endpoint,
    ca: Class,
    b1: &'a Endpoint,
    b2: &'a Endpoint,
    cb: Class,
) -> (
    [Option<(&'a Endpoint, &'a Endpoint)>; 2],
    [Option<(&'a Endpoint, &'a Endpoint)>; 2],
) {
    use Class::*;
    match (ca, cb) {
        (Zero, _) | (_, Zero) => unreachable!("zero operands handled by the caller"),
        (Pos, Pos) => ([Some((a1, b1)), None], [Some((a2, b2)), None]),
        (Pos, Neg) => ([Some((a2, b1)), None], [Some((a1, b2)), None]),
        (Pos, Mixed) => ([Some((a2, b1)), None], [Some((a2, b2)), None]),
        (Neg, Pos) => ([Some((a1, b2)), None], [Some((a2, b1)), None]),
        (Neg, Neg) => ([Some((a2, b2)), None], [Some((a1, b1)), None]),
        (Neg, Mixed) => ([Some((a1, b2)), None], [Some((a1, b1)), None]),
        (Mixed, Pos) => ([Some((a1, b2)), None], [Some((a2, b2)), None]),
        (Mixed, Neg) => ([Some((a2, b1)), None], [Some((a1, b1)), None]),
        (Mixed, Mixed) => (
            [Some((a1, b2)), Some((a2, b1))],
            [Some((a1, b1)), Some((a2, b2))],
        ),
    }
}

pub fn mul(x: &Interval, y: &Interval) -> Interval {
    let (x, y) = x.promoted_pair(y);
    let prec = x.precision();
    let (Some((a1, a2)), Some((b1, b2))) = (x.bounds(), y.bounds()) else {
        return Interval::empty(prec);
    };
    let (ca, cb) = (classify(a1, a2), classify(b1, b2));
    if ca == Class::Zero || cb == Class::Zero {
        // The image of {0} times anything nonempty is {0}.
        return Interval::point(Endpoint::zero(prec)).unwrap();
    }
    let (lo_pairs, hi_pairs) = mul_candidates(a1, a2, ca, b1, b2, cb);
    let mut lo: Option<Endpoint> = None;
    for (u, v) in lo_pairs.into_iter().flatten() {
        let p = ok(u.mul(v, Round::Down));
        lo = Some(match lo {
            None => p,
            Some(cur) => cur.min_value(p),
        });
    }
    let mut hi: Option<Endpoint> = None;
    for (u, v) in hi_pairs.into_iter().flatten() {
        let p = ok(u.mul(v, Round::Up));
        hi = Some(match hi {
            None => p,
            Some(cur) => cur.max_value(p),
        });
    }
    Interval::from_bounds_unchecked(lo.unwrap(), hi.unwrap())
}

pub fn div(x: &Interval, y: &Interval) -> Interval {
    let (x, y) = x.promoted_pair(y);
    let prec = x.precision();
    let (Some((a1, a2)), Some((b1, b2))) = (x.bounds(), y.bounds()) else {
        return Interval::empty(prec);
    };
    let (ca, cb) = (classify(a1, a2), classify(b1, b2));
    if cb == Class::Zero {
        return Interval::empty(prec);
    }
    if ca == Class::Zero {
        return Interval::point(Endpoint::zero(prec)).unwrap();
    }
    if cb == Class::Mixed {
        return Interval::entire(prec);
    }
    let pos_inf = Endpoint::pos_inf(prec);
    let neg_inf = Endpoint::neg_inf(prec);
    let dn = |u: &Endpoint, v: &Endpoint| ok(u.div(v, Round::Down));
    let up = |u: &Endpoint, v: &Endpoint| ok(u.div(v, Round::Up));
    let (lo, hi) = if cb == Class::Pos {
        if b1.is_zero() {
            // Divisor (0, b2].
            match ca {
                Class::Pos => (dn(a1, b2), pos_inf),
                Class::Neg => (neg_inf, up(a2, b2)),
                Class::Mixed => return Interval::entire(prec),
                Class::Zero => unreachable!(),
            }
        } else {
            match ca {
                Class::Pos => (dn(a1, b2), up(a2, b1)),
                Class::Neg => (dn(a1, b1), up(a2, b2)),
                Class::Mixed => (dn(a1, b1), up(a2, b1)),
                Class::Zero => unreachable!(),
            }
        }
    } else {
        // cb == Neg
        if b2.is_zero() {
            // Divisor [b1, 0).
            match ca {
                Class::Pos => (neg_inf, up(a1, b1)),
                Class::Neg => (dn(a2, b1), pos_inf),
                Class::Mixed => return Interval::entire(prec),
                Class::Zero => unreachable!(),
            }
        } else {
            match ca {
                Class::Pos => (dn(a2, b2), up(a1, b1)),
                Class::Neg => (dn(a2, b1), up(a1, b2)),
                Class::Mixed => (dn(a2, b2), up(a1, b2)),
                Class::Zero => unreachable!(),
            }
        }
    };
    Interval::from_bounds_unchecked(lo, hi)
}

/// Extended division: the up-to-two maximal intervals enclosing
/// `{a/b : a in x, b in y, b != 0}`. The second slot is empty when one
/// interval suffices.
pub fn div_to_pair(x: &Interval, y: &Interval) -> (Interval, Interval) {
    let (x, y) = x.promoted_pair(y);
    let prec = x.precision();
    let empty = Interval::empty(prec);
    let (Some((a1, a2)), Some((b1, b2))) = (x.bounds(), y.bounds()) else {
        return (empty.clone(), empty);
    };
    let (ca, cb) = (classify(a1, a2), classify(b1, b2));
    if cb == Class::Zero {
        return (empty.clone(), empty);
    }
    if ca == Class::Zero {
        return (Interval::point(Endpoint::zero(prec)).unwrap(), empty);
    }
    if cb != Class::Mixed {
        return (div(&x, &y), empty);
    }
    // Divisor straddles zero strictly.
    match ca {
        Class::Mixed | Class::Zero => (Interval::entire(prec), empty),
        Class::Pos => {
            // (-inf, a1/b1] and [a1/b2, +inf)
            let left = Interval::from_bounds_unchecked(
                Endpoint::neg_inf(prec),
                ok(a1.div(b1, Round::Up)),
            );
            let right = Interval::from_bounds_unchecked(
                ok(a1.div(b2, Round::Down)),
                Endpoint::pos_inf(prec),
            );
            (left, right)
        }
        Class::Neg => {
            // (-inf, a2/b2] and [a2/b1, +inf)
            let left = Interval::from_bounds_unchecked(
                Endpoint::neg_inf(prec),
                ok(a2.div(b2, Round::Up)),
            );
            let right = Interval::from_bounds_unchecked(
                ok(a2.div(b1, Round::Down)),
                Endpoint::pos_inf(prec),
            );
            (left, right)
        }
    }
}

/// Tightest enclosure of `{a*b + c}` using the fused kernel per endpoint.
pub fn fma(x: &Interval, y: &Interval, z: &Interval) -> Interval {
    let prec = x
        .precision()
        .widest(y.precision())
        .widest(z.precision());
    let (x, y, z) = (x.promote(prec), y.promote(prec), z.promote(prec));
    let (Some((a1, a2)), Some((b1, b2)), Some((c1, c2))) = (x.bounds(), y.bounds(), z.bounds())
    else {
        return Interval::empty(prec);
    };
    let (ca, cb) = (classify(a1, a2), classify(b1, b2));
    if ca == Class::Zero || cb == Class::Zero {
        return z.clone();
    }
    let (lo_pairs, hi_pairs) = mul_candidates(a1, a2, ca, b1, b2, cb);
    let mut lo: Option<Endpoint> = None;
    for (u, v) in lo_pairs.into_iter().flatten() {
        let p = ok(u.fma(v, c1, Round::Down));
        lo = Some(match lo {
            None => p,
            Some(cur) => cur.min_value(p),
        });
    }
    let mut hi: Option<Endpoint> = None;
    for (u, v) in hi_pairs.into_iter().flatten() {
        let p = ok(u.fma(v, c2, Round::Up));
        hi = Some(match hi {
            None => p,
            Some(cur) => cur.max_value(p),
        });
    }
    Interval::from_bounds_unchecked(lo.unwrap(), hi.unwrap())
}

/// Image of the square: `[mig^2, mag^2]`, not `x*x`.
pub fn sqr(x: &Interval) -> Interval {
    let Some(_) = x.bounds() else {
        return x.clone();
    };
    let lo = x.mig().unwrap();
    let hi = x.mag().unwrap();
    let lo2 = ok(lo.mul(&lo, Round::Down));
    let hi2 = if hi.is_infinite() {
        Endpoint::pos_inf(x.precision())
    } else {
        ok(hi.mul(&hi, Round::Up))
    };
    Interval::from_bounds_unchecked(lo2, hi2)
}

/// Square root over `x` intersected with `[0, inf)`.
pub fn sqrt(x: &Interval) -> Interval {
    let prec = x.precision();
    let clipped = x.intersection(&Interval::make(
        Endpoint::zero(prec),
        Endpoint::pos_inf(prec),
    )
    .unwrap());
    match clipped.bounds() {
        None => Interval::empty(prec),
        Some((lo, hi)) => Interval::from_bounds_unchecked(
            ok(lo.sqrt(Round::Down)),
            ok(hi.sqrt(Round::Up)),
        ),
    }
}

/// Absolute-value image: `[mig, mag]`.
pub fn abs(x: &Interval) -> Interval {
    match x.bounds() {
        None => x.clone(),
        Some(_) => Interval::from_bounds_unchecked(x.mig().unwrap(), x.mag().unwrap()),
    }
}

/// Integer power by parity-aware monotonicity; correctly rounded endpoints.
pub fn pown(x: &Interval, p: i32) -> Interval {
    let prec = x.precision();
    let Some((lo, hi)) = x.bounds() else {
        return Interval::empty(prec);
    };
    if p == 0 {
        let one = crate::endpoint::from_rational(prec, 1, 1, Round::Down).0;
        return Interval::point(one).unwrap();
    }
    if p == 1 {
        return x.clone();
    }
    let q = p.unsigned_abs();
    let recip = p < 0;
    if !recip {
        if q % 2 == 1 {
            return Interval::from_bounds_unchecked(
                pow_endpoint(lo, q, false, Round::Down),
                pow_endpoint(hi, q, false, Round::Up),
            );
        }
        let mig = x.mig().unwrap();
        let mag = x.mag().unwrap();
        return Interval::from_bounds_unchecked(
            pow_endpoint(&mig, q, false, Round::Down),
            pow_endpoint(&mag, q, false, Round::Up),
        );
    }
    // Negative exponent: reciprocal of the power, split like division.
    let cls = classify(lo, hi);
    if cls == Class::Zero {
        return Interval::empty(prec);
    }
    let pos_inf = Endpoint::pos_inf(prec);
    let neg_inf = Endpoint::neg_inf(prec);
    if q % 2 == 0 {
        let mig = x.mig().unwrap();
        let mag = x.mag().unwrap();
        let lo_b = if mag.is_infinite() {
            Endpoint::zero(prec)
        } else {
            pow_endpoint(&mag, q, true, Round::Down)
        };
        let hi_b = if mig.is_zero() {
            pos_inf
        } else {
            pow_endpoint(&mig, q, true, Round::Up)
        };
        return Interval::from_bounds_unchecked(lo_b, hi_b);
    }
    match cls {
        Class::Mixed => Interval::entire(prec),
        Class::Pos => {
            let lo_b = if hi.is_infinite() {
                Endpoint::zero(prec)
            } else {
                pow_endpoint(hi, q, true, Round::Down)
            };
            let hi_b = if lo.is_zero() {
                pos_inf
            } else {
                pow_endpoint(lo, q, true, Round::Up)
            };
            Interval::from_bounds_unchecked(lo_b, hi_b)
        }
        Class::Neg => {
            let lo_b = if hi.is_zero() {
                neg_inf
            } else {
                pow_endpoint(hi, q, true, Round::Down)
            };
            let hi_b = if lo.is_infinite() {
                Endpoint::zero(prec)
            } else {
                pow_endpoint(lo, q, true, Round::Up)
            };
            Interval::from_bounds_unchecked(lo_b, hi_b)
        }
        Class::Zero => unreachable!(),
    }
}

/// Correctly rounded `a^q` (or its reciprocal) for a finite endpoint. The
/// power is formed exactly in integer arithmetic whenever it stays below a
/// size cap, then rounded once; beyond the cap it falls back to iterated
/// directed multiplication (still a valid enclosure bound).
fn pow_endpoint(a: &Endpoint, q: u32, recip: bool, dir: Round) -> Endpoint {
    use crate::endpoint::Parts;
    let prec = a.precision();
    match a.parts() {
        Parts::Zero => {
            debug_assert!(!recip);
            return Endpoint::zero(prec);
        }
        Parts::PosInf => {
            return if recip {
                Endpoint::zero(prec)
            } else {
                Endpoint::pos_inf(prec)
            };
        }
        Parts::NegInf => {
            return if recip {
                Endpoint::zero(prec)
            } else if q % 2 == 1 {
                Endpoint::neg_inf(prec)
            } else {
                Endpoint::pos_inf(prec)
            };
        }
        Parts::Finite { neg, mant, exp } => {
            let bits = mant.bit_len() * q as u64;
            let out_neg = neg && q % 2 == 1;
            if bits <= 1 << 16 {
                let m = mant.pow_u32(q);
                let e = exp * q as i64;
                if !recip {
                    return crate::endpoint::from_parts_rounded(prec, out_neg, &m, e, false, dir).0;
                }
                // 1 / (m * 2^e): fold the power of two into the numerator.
                let one = crate::limbs::Limbs::from_u64(1);
                return if e >= 0 {
                    crate::endpoint::from_rational_big(prec, out_neg, &one, &m.shl(e as u64), dir).0
                } else {
                    crate::endpoint::from_rational_big(
                        prec,
                        out_neg,
                        &one.shl((-e) as u64),
                        &m,
                        dir,
                    )
                    .0
                };
            }
            // Huge powers: iterate square-and-multiply with directed
            // rounding; monotone in the right direction at each step.
            let mdir = if out_neg == recip { dir } else { dir.flip() };
            let mut base = a.abs();
            let mut acc: Option<Endpoint> = None;
            let mut e = q;
            while e > 0 {
                if e & 1 == 1 {
                    acc = Some(match acc {
                        None => base.clone(),
                        Some(c) => ok(c.mul(&base, mdir)),
                    });
                }
                e >>= 1;
                if e > 0 {
                    base = ok(base.mul(&base, mdir));
                }
            }
            let mut r = acc.unwrap();
            if recip {
                let one = crate::endpoint::from_rational(prec, 1, 1, Round::Down).0;
                r = ok(one.div(&r, if out_neg { dir.flip() } else { dir }));
            }
            if out_neg {
                r = r.neg();
            }
            r
        }
    }
}

/// Power with a real-interval exponent; defined on nonnegative bases.
pub fn pow(x: &Interval, y: &Interval) -> Interval {
    crate::elem::pow_interval(x, y)
}

/// The tightest `z` with `y + z` containing `x`; `[entire]` when undefined
/// (unbounded operands or `x` narrower than `y`).
pub fn cancel_minus(x: &Interval, y: &Interval) -> Interval {
    let (x, y) = x.promoted_pair(y);
    let prec = x.precision();
    match (x.bounds(), y.bounds()) {
        (None, None) => Interval::empty(prec),
        (None, Some(_)) => Interval::empty(prec),
        (Some(_), None) => Interval::entire(prec),
        (Some((a1, a2)), Some((b1, b2))) => {
            if a1.is_infinite() || a2.is_infinite() || b1.is_infinite() || b2.is_infinite() {
                return Interval::entire(prec);
            }
            match exact_width_cmp(a1, a2, b1, b2) {
                Some(Ordering::Less) | None => Interval::entire(prec),
                _ => Interval::from_bounds_unchecked(
                    ok(a1.sub(b1, Round::Down)),
                    ok(a2.sub(b2, Round::Up)),
                ),
            }
        }
    }
}

pub fn cancel_plus(x: &Interval, y: &Interval) -> Interval {
    cancel_minus(x, &neg(y))
}

/// Exact comparison of `wid([a1,a2])` with `wid([b1,b2])`, i.e. of
/// `a2 + b1` with `b2 + a1`. None when the operands' exponents are so far
/// apart that forming the sums is unreasonable (callers treat that as
/// undefined, which is always sound).
fn exact_width_cmp(
    a1: &Endpoint,
    a2: &Endpoint,
    b1: &Endpoint,
    b2: &Endpoint,
) -> Option<Ordering> {
    use crate::bigfloat::sum_parts;
    use crate::endpoint::Parts;
    const GAP_LIMIT: i64 = 1 << 24;
    let side = |p: &Endpoint, q: &Endpoint| -> Option<(Ordering, crate::limbs::Limbs, i64)> {
        match (p.parts(), q.parts()) {
            (Parts::Zero, Parts::Zero) => Some((Ordering::Equal, crate::limbs::Limbs::zero(), 0)),
            (Parts::Finite { neg, mant, exp }, Parts::Zero)
            | (Parts::Zero, Parts::Finite { neg, mant, exp }) => Some((
                if neg { Ordering::Less } else { Ordering::Greater },
                mant,
                exp,
            )),
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
                let msb1 = e1 + m1.bit_len() as i64;
                let msb2 = e2 + m2.bit_len() as i64;
                if (msb1 - msb2).abs() > GAP_LIMIT || (e1 - e2).abs() > GAP_LIMIT {
                    return None;
                }
                let (neg, m, e, sticky) =
                    sum_parts(n1, &m1, e1, n2, &m2, e2, (msb1 - msb2).unsigned_abs() as u32 + 4);
                debug_assert!(!sticky);
                let sign = if m.is_zero() {
                    Ordering::Equal
                } else if neg {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
                Some((sign, m, e))
            }
            _ => unreachable!("infinite endpoints handled by the caller"),
        }
    };
    // wid(a) - wid(b) = (a2 + b1) - (b2 + a1)
    let (s_left, m_left, e_left) = side(a2, b1)?;
    let (s_right, m_right, e_right) = side(b2, a1)?;
    if s_left != s_right {
        return Some(s_left.cmp(&s_right));
    }
    if s_left == Ordering::Equal {
        return Some(Ordering::Equal);
    }
    let msb_l = e_left + m_left.bit_len() as i64;
    let msb_r = e_right + m_right.bit_len() as i64;
    if (msb_l - msb_r).abs() > GAP_LIMIT {
        let mag = msb_l.cmp(&msb_r);
        return Some(if s_left == Ordering::Less {
            mag.reverse()
        } else {
            mag
        });
    }
    let lsb = e_left.min(e_right);
    let l = m_left.shl((e_left - lsb) as u64);
    let r = m_right.shl((e_right - lsb) as u64);
    let mag = l.cmp(&r);
    Some(if s_left == Ordering::Less {
        mag.reverse()
    } else {
        mag
    })
}

/// Enclosure of `{x in x0 : x^2 in c}`.
pub fn sqr_rev(c: &Interval, x0: &Interval) -> Interval {
    let root = sqrt(c);
    x0.intersection(&root).hull(&x0.intersection(&neg(&root)))
}

/// Enclosure of `{x in x0 : |x| in c}`.
pub fn abs_rev(c: &Interval, x0: &Interval) -> Interval {
    let prec = c.precision().widest(x0.precision());
    let nonneg = Interval::make(Endpoint::zero(prec), Endpoint::pos_inf(prec)).unwrap();
    let c1 = c.intersection(&nonneg);
    x0.intersection(&c1).hull(&x0.intersection(&neg(&c1)))
}

/// Enclosure of `{x in x0 : x^p in c}`.
pub fn pown_rev(c: &Interval, x0: &Interval, p: i32) -> Interval {
    let prec = c.precision().widest(x0.precision());
    if c.is_empty() || x0.is_empty() {
        return Interval::empty(prec);
    }
    if p == 0 {
        let one = crate::endpoint::from_rational(prec, 1, 1, Round::Down).0;
        return if c.contains(&one) {
            x0.clone()
        } else {
            Interval::empty(prec)
        };
    }
    if p == 1 {
        return x0.intersection(c);
    }
    // Solutions of x^p = t: for odd p the signed |t|^(1/p); for even p the
    // symmetric pair. Negative p maps c through the reciprocal first.
    let c_eff = if p < 0 { pown(c, -1) } else { c.clone() };
    let q = p.unsigned_abs();
    if q % 2 == 1 {
        let r = crate::elem::nth_root_signed(&c_eff, q);
        x0.intersection(&r)
    } else {
        let nonneg = Interval::make(Endpoint::zero(prec), Endpoint::pos_inf(prec)).unwrap();
        let r = crate::elem::nth_root_signed(&c_eff.intersection(&nonneg), q);
        x0.intersection(&r).hull(&x0.intersection(&neg(&r)))
    }
}

/// Coefficients of the solution branches of the simple periodic
/// equations: enclosures are unions of `base + k*period` translates.
/// Scanning is capped; past the cap the result falls back to `x0`
/// intersected with the natural domain (valid, not tight).
const PERIOD_SCAN_CAP: i64 = 1 << 16;

/// Enclosure of `{x in x0 : sin x in c}`.
pub fn sin_rev(c: &Interval, x0: &Interval) -> Interval {
    let prec = c.precision().widest(x0.precision());
    let c1 = c.intersection(&unit(prec));
    if c1.is_empty() || x0.is_empty() {
        return Interval::empty(prec);
    }
    // Branches: k*pi + (-1)^k asin(c), i.e. alternately asin(c) and
    // pi - asin(c) shifted by 2k*pi.
    let base = crate::elem::asin(&c1);
    let pi = crate::elem::pi_interval(prec);
    let alt = sub(&pi, &base);
    periodic_union(x0, &[base, alt], &mul(&pi, &two(prec)), prec)
}

/// Enclosure of `{x in x0 : cos x in c}`.
pub fn cos_rev(c: &Interval, x0: &Interval) -> Interval {
    let prec = c.precision().widest(x0.precision());
    let c1 = c.intersection(&unit(prec));
    if c1.is_empty() || x0.is_empty() {
        return Interval::empty(prec);
    }
    let base = crate::elem::acos(&c1);
    let pi = crate::elem::pi_interval(prec);
    periodic_union(x0, &[base.clone(), neg(&base)], &mul(&pi, &two(prec)), prec)
}

/// Enclosure of `{x in x0 : tan x in c}`.
pub fn tan_rev(c: &Interval, x0: &Interval) -> Interval {
    let prec = c.precision().widest(x0.precision());
    if c.is_empty() || x0.is_empty() {
        return Interval::empty(prec);
    }
    let base = crate::elem::atan(c);
    let pi = crate::elem::pi_interval(prec);
    periodic_union(x0, &[base], &pi, prec)
}

/// Enclosure of `{x in x0 : cosh x in c}`.
pub fn cosh_rev(c: &Interval, x0: &Interval) -> Interval {
    let prec = c.precision().widest(x0.precision());
    let one_inf = Interval::make(
        crate::endpoint::from_rational(prec, 1, 1, Round::Down).0,
        Endpoint::pos_inf(prec),
    )
    .unwrap();
    let c1 = c.intersection(&one_inf);
    if c1.is_empty() || x0.is_empty() {
        return Interval::empty(prec);
    }
    let r = crate::elem::acosh(&c1);
    x0.intersection(&r).hull(&x0.intersection(&neg(&r)))
}

fn unit(prec: Precision) -> Interval {
    Interval::make(
        crate::endpoint::from_rational(prec, -1, 1, Round::Down).0,
        crate::endpoint::from_rational(prec, 1, 1, Round::Up).0,
    )
    .unwrap()
}

fn two(prec: Precision) -> Interval {
    Interval::point(crate::endpoint::from_rational(prec, 2, 1, Round::Down).0).unwrap()
}

/// Hull of `x0` intersected with the translates `branch + k*period` for
/// every k whose translate can touch `x0`.
fn periodic_union(
    x0: &Interval,
    branches: &[Interval],
    period: &Interval,
    prec: Precision,
) -> Interval {
    let Some((xl, xh)) = x0.bounds() else {
        return Interval::empty(prec);
    };
    if xl.is_infinite() || xh.is_infinite() {
        // Unboundedly many branches: their hull meets every period.
        return x0.clone();
    }
    let p_lo = period.inf().unwrap().to_f64(Round::Down);
    let (xl_f, xh_f) = (xl.to_f64(Round::Down), xh.to_f64(Round::Up));
    // Conservative k range from f64 estimates, then verified by exact
    // interval intersection below.
    let k_min = ((xl_f - 8.0) / p_lo).floor();
    let k_max = ((xh_f + 8.0) / p_lo).ceil();
    if !k_min.is_finite()
        || !k_max.is_finite()
        || k_max - k_min > PERIOD_SCAN_CAP as f64
    {
        return x0.clone();
    }
    let (k_min, k_max) = (k_min as i64, k_max as i64);
    let mut acc = Interval::empty(prec);
    for k in k_min..=k_max {
        let kf = Interval::point(crate::endpoint::from_rational(prec, k, 1, Round::Down).0)
            .unwrap();
        let shift = mul(period, &kf);
        for b in branches {
            let t = x0.intersection(&add(b, &shift));
            acc = acc.hull(&t);
        }
    }
    acc
}

/// Enclosure of `{x in x0 : exists b in b0 with b*x in c}`.
pub fn mul_rev(b0: &Interval, c: &Interval, x0: &Interval) -> Interval {
    let prec = b0
        .precision()
        .widest(c.precision())
        .widest(x0.precision());
    if b0.is_empty() || c.is_empty() || x0.is_empty() {
        return Interval::empty(prec);
    }
    if b0.contains_zero() && c.contains_zero() {
        return x0.clone();
    }
    let (p1, p2) = div_to_pair(c, b0);
    x0.intersection(&p1).hull(&x0.intersection(&p2))
}
