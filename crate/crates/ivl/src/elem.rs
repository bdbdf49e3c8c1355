//! Containment-tight elementary functions over intervals.
//!
//! Strategy: each scalar bound is evaluated as a tiny software-float
//! interval at a working precision a few words above the operand's, then
//! rounded outward to the operand precision. When the outward roundings of
//! the working enclosure disagree, the working precision is doubled until
//! they settle (or a cap is reached, which still yields a valid, at most
//! one-ulp-loose bound). Argument reduction for the trigonometric
//! functions runs against a cached enclosure of pi whose width scales with
//! the argument's exponent, so quadrant decisions are certified, never
//! point-trusted.

use crate::bigfloat::BigFloat;
use crate::endpoint::{Endpoint, Precision, Round};
use crate::interval::Interval;
use crate::limbs::Limbs;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

// ---------------------------------------------------------------------------
// Working-precision interval scalar.

#[derive(Clone, Debug)]
struct BigIval {
    lo: BigFloat,
    hi: BigFloat,
}

fn kernel_ok(r: Result<BigFloat, crate::endpoint::KernelError>) -> BigFloat {
    r.expect("working-precision operands stay in the kernels' domain")
}

impl BigIval {
    fn point(b: BigFloat) -> Self {
        BigIval { lo: b.clone(), hi: b }
    }

    fn zero(wp: u32) -> Self {
        BigIval::point(BigFloat::zero(wp))
    }

    fn from_u64(v: u64, wp: u32) -> Self {
        let (b, exact) = BigFloat::from_u64(v, wp, Round::Down);
        debug_assert!(exact);
        BigIval::point(b)
    }

    fn from_endpoint(e: &Endpoint, wp: u32) -> Self {
        let b = e.to_bigfloat();
        let (v, exact) = b.with_precision(wp, Round::Down);
        debug_assert!(exact, "working precision below operand precision");
        BigIval::point(v)
    }

    fn prec(&self) -> u32 {
        self.lo.precision()
    }

    fn neg(&self) -> Self {
        BigIval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    fn add(&self, o: &Self) -> Self {
        BigIval {
            lo: kernel_ok(self.lo.add(&o.lo, Round::Down)),
            hi: kernel_ok(self.hi.add(&o.hi, Round::Up)),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        BigIval {
            lo: kernel_ok(self.lo.sub(&o.hi, Round::Down)),
            hi: kernel_ok(self.hi.sub(&o.lo, Round::Up)),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let (a1, a2, b1, b2) = (&self.lo, &self.hi, &o.lo, &o.hi);
        let sa = (a1.sign(), a2.sign());
        let sb = (b1.sign(), b2.sign());
        use Ordering::*;
        // Zero operands first so infinities never meet zeros in a kernel.
        if (sa.0 == Equal && sa.1 == Equal) || (sb.0 == Equal && sb.1 == Equal) {
            return BigIval::zero(self.prec());
        }
        let dn = |u: &BigFloat, v: &BigFloat| kernel_ok(u.mul(v, Round::Down));
        let up = |u: &BigFloat, v: &BigFloat| kernel_ok(u.mul(v, Round::Up));
        let min = |x: BigFloat, y: BigFloat| {
            if x.cmp_value(&y) == Greater {
                y
            } else {
                x
            }
        };
        let max = |x: BigFloat, y: BigFloat| {
            if x.cmp_value(&y) == Less {
                y
            } else {
                x
            }
        };
        let a_cls = match (sa.0, sa.1) {
            (Less, Greater) => 0i8, // mixed
            (_, Greater) => 1,      // nonneg
            _ => -1,                // nonpos
        };
        let b_cls = match (sb.0, sb.1) {
            (Less, Greater) => 0i8,
            (_, Greater) => 1,
            _ => -1,
        };
        let (lo, hi) = match (a_cls, b_cls) {
            (1, 1) => (dn(a1, b1), up(a2, b2)),
            (1, -1) => (dn(a2, b1), up(a1, b2)),
            (1, 0) => (dn(a2, b1), up(a2, b2)),
            (-1, 1) => (dn(a1, b2), up(a2, b1)),
            (-1, -1) => (dn(a2, b2), up(a1, b1)),
            (-1, 0) => (dn(a1, b2), up(a1, b1)),
            (0, 1) => (dn(a1, b2), up(a2, b2)),
            (0, -1) => (dn(a2, b1), up(a1, b1)),
            _ => (
                min(dn(a1, b2), dn(a2, b1)),
                max(up(a1, b1), up(a2, b2)),
            ),
        };
        BigIval { lo, hi }
    }

    /// Division; a divisor enclosing zero yields the whole line.
    fn div(&self, o: &Self) -> Self {
        use Ordering::*;
        let wp = self.prec();
        let (b1s, b2s) = (o.lo.sign(), o.hi.sign());
        if b1s != Greater && b2s != Less {
            // Divisor contains zero.
            return BigIval {
                lo: BigFloat::neg_inf(wp),
                hi: BigFloat::pos_inf(wp),
            };
        }
        let (a1, a2, b1, b2) = (&self.lo, &self.hi, &o.lo, &o.hi);
        let sa = (a1.sign(), a2.sign());
        if sa.0 == Equal && sa.1 == Equal {
            return BigIval::zero(wp);
        }
        let dn = |u: &BigFloat, v: &BigFloat| kernel_ok(u.div(v, Round::Down));
        let up = |u: &BigFloat, v: &BigFloat| kernel_ok(u.div(v, Round::Up));
        let a_cls = match sa {
            (Less, Greater) => 0i8,
            (_, Greater) => 1,
            _ => -1,
        };
        let (lo, hi) = if b1s == Greater {
            match a_cls {
                1 => (dn(a1, b2), up(a2, b1)),
                -1 => (dn(a1, b1), up(a2, b2)),
                _ => (dn(a1, b1), up(a2, b1)),
            }
        } else {
            match a_cls {
                1 => (dn(a2, b2), up(a1, b1)),
                -1 => (dn(a2, b1), up(a1, b2)),
                _ => (dn(a2, b2), up(a1, b2)),
            }
        };
        BigIval { lo, hi }
    }

    fn mul_u64(&self, k: u64) -> Self {
        BigIval {
            lo: kernel_ok(self.lo.mul_u64(k, Round::Down)),
            hi: kernel_ok(self.hi.mul_u64(k, Round::Up)),
        }
    }

    fn div_u64(&self, k: u64) -> Self {
        BigIval {
            lo: kernel_ok(self.lo.div_u64(k, Round::Down)),
            hi: kernel_ok(self.hi.div_u64(k, Round::Up)),
        }
    }

    fn mul_pow2(&self, k: i64) -> Self {
        BigIval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
        }
    }

    fn sqrt(&self) -> Self {
        // Clip a slightly negative lower bound (outward-rounding debris).
        let lo = if self.lo.sign() == Ordering::Less {
            BigFloat::zero(self.prec())
        } else {
            self.lo.clone()
        };
        BigIval {
            lo: kernel_ok(lo.sqrt(Round::Down)),
            hi: kernel_ok(self.hi.sqrt(Round::Up)),
        }
    }

    /// Upper bound of the magnitude.
    fn mag(&self) -> BigFloat {
        let (a, b) = (self.lo.abs(), self.hi.abs());
        if a.cmp_value(&b) == Ordering::Less {
            b
        } else {
            a
        }
    }

    /// Symmetric widening by `±m`, used for series truncation tails.
    fn widen(&self, m: &BigFloat) -> Self {
        debug_assert!(m.sign() != Ordering::Less);
        BigIval {
            lo: kernel_ok(self.lo.sub(m, Round::Down)),
            hi: kernel_ok(self.hi.add(m, Round::Up)),
        }
    }

    /// True once the magnitude drops below 2^-bits (series cutoff test).
    fn below_pow2(&self, bits: i64) -> bool {
        match self.mag().msb_exp() {
            None => true,
            Some(e) => e < -bits,
        }
    }
}

// ---------------------------------------------------------------------------
// Cached constants.

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Cst {
    Pi,
    Ln2,
    Ln10,
}

fn constant(c: Cst, wp: u32) -> BigIval {
    static CACHE: OnceLock<Mutex<HashMap<(Cst, u32), BigIval>>> = OnceLock::new();
    // Quantize the precision so nearby requests share one entry.
    let slot = (wp + 63) & !63;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let hit = cache.lock().unwrap().get(&(c, slot)).cloned();
    let v = match hit {
        Some(v) => v,
        None => {
            let v = compute_constant(c, slot);
            cache.lock().unwrap().insert((c, slot), v.clone());
            v
        }
    };
    BigIval {
        lo: v.lo.with_precision(wp, Round::Down).0,
        hi: v.hi.with_precision(wp, Round::Up).0,
    }
}

fn compute_constant(c: Cst, wp: u32) -> BigIval {
    let wpi = wp + 32;
    match c {
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239).
        Cst::Pi => atan_recip(5, wpi)
            .mul_pow2(4)
            .sub(&atan_recip(239, wpi).mul_pow2(2)),
        // ln 2 = 2 atanh(1/3).
        Cst::Ln2 => atanh_recip(3, wpi).mul_pow2(1),
        // ln 10 = 3 ln 2 + 2 atanh(1/9)   (ln(10/8) = 2 atanh(1/9)).
        Cst::Ln10 => constant(Cst::Ln2, wpi)
            .mul_u64(3)
            .add(&atanh_recip(9, wpi).mul_pow2(1)),
    }
}

// Reduction tables: ln(1 + j/32) for j in 0..=32, atan(j/16) for j in
// 0..=16, and 2^(j/32) for j in 0..=31. Computed once per precision slot
// from the slow series paths, they let the hot paths run tiny series.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Table {
    LnNear1,
    AtanSixteenths,
    Pow2Thirtyseconds,
}

fn table(t: Table, wp: u32) -> std::sync::Arc<Vec<BigIval>> {
    use std::sync::Arc;
    static CACHE: OnceLock<Mutex<HashMap<(Table, u32), Arc<Vec<BigIval>>>>> = OnceLock::new();
    let slot = (wp + 63) & !63;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(t, slot)) {
        return v.clone();
    }
    let wpi = slot + 32;
    let v: Vec<BigIval> = match t {
        Table::LnNear1 => (0..=32)
            .map(|j| {
                if j == 0 {
                    return BigIval::zero(slot);
                }
                // ln((32+j)/32) = 2 atanh(j / (64 + j)).
                let u = BigIval::from_u64(j, wpi).div_u64(64 + j);
                trim(series_atanh(&u, wpi).mul_pow2(1), slot)
            })
            .collect(),
        Table::AtanSixteenths => (0..=16)
            .map(|j| {
                if j == 0 {
                    return BigIval::zero(slot);
                }
                let u = BigIval::from_u64(j, wpi).div_u64(16);
                trim(atan_by_halving(&u, wpi), slot)
            })
            .collect(),
        Table::Pow2Thirtyseconds => {
            let ln2 = constant(Cst::Ln2, wpi);
            (0..32)
                .map(|j| {
                    if j == 0 {
                        return BigIval::from_u64(1, slot);
                    }
                    let r = ln2.mul_u64(j).div_u64(32);
                    trim(series_exp(&r, wpi), slot)
                })
                .collect()
        }
    };
    let v = Arc::new(v);
    cache.lock().unwrap().insert((t, slot), v.clone());
    v
}

fn trim(v: BigIval, wp: u32) -> BigIval {
    BigIval {
        lo: v.lo.with_precision(wp, Round::Down).0,
        hi: v.hi.with_precision(wp, Round::Up).0,
    }
}

/// atan(1/n) for integer n >= 2, by the alternating Gregory series.
fn atan_recip(n: u64, wp: u32) -> BigIval {
    let one = BigIval::from_u64(1, wp);
    let base = one.div_u64(n);
    let n2 = n * n;
    let mut power = base.clone();
    let mut sum = base;
    let mut k = 1u64;
    loop {
        power = power.div_u64(n2);
        let term = power.div_u64(2 * k + 1);
        if term.below_pow2(wp as i64 + 8) {
            return sum.widen(&term.mag());
        }
        sum = if k % 2 == 1 {
            sum.sub(&term)
        } else {
            sum.add(&term)
        };
        k += 1;
    }
}

/// atanh(1/n) for integer n >= 2, by the positive series.
fn atanh_recip(n: u64, wp: u32) -> BigIval {
    let one = BigIval::from_u64(1, wp);
    let base = one.div_u64(n);
    let n2 = n * n;
    let mut power = base.clone();
    let mut sum = base;
    let mut k = 1u64;
    loop {
        power = power.div_u64(n2);
        let term = power.div_u64(2 * k + 1);
        if term.below_pow2(wp as i64 + 8) {
            // Tail of the geometric-dominated series is under twice the
            // next term for n >= 3.
            return sum.widen(&term.mag().mul_pow2(1));
        }
        sum = sum.add(&term);
        k += 1;
    }
}

// ---------------------------------------------------------------------------
// Series on small arguments.
//
// The sums run in plain (Down-rounded) scalar arithmetic on the lower
// endpoint of the argument enclosure; the result is then widened by three
// certified allowances: the truncation tail, a rounding budget of a few
// ulps per term at the series' magnitude bound, and a Lipschitz term
// covering the width of the argument enclosure. All series are called with
// arguments bounded by small constants (asserted via the magnitude bounds
// below), so per-operation errors never amplify.

struct SeriesGuard {
    /// Ceil of log2 of every intermediate magnitude.
    mag_exp: i64,
    /// Ceil of log2 of the derivative bound over the argument range.
    lip_exp: i64,
}

fn dn(r: Result<BigFloat, crate::endpoint::KernelError>) -> BigFloat {
    r.expect("finite series operands")
}

/// Wraps a computed point value into a certified enclosure.
fn enclose_series(
    value: BigFloat,
    terms: u64,
    tail: &BigFloat,
    guard: &SeriesGuard,
    arg: &BigIval,
    wp: u32,
) -> BigIval {
    let rounding = BigFloat::from_u64(6 * terms + 24, 32, Round::Up)
        .0
        .mul_pow2(guard.mag_exp + 1 - wp as i64);
    let mut w = dn(rounding.add(tail, Round::Up));
    let rad = dn(arg.hi.sub(&arg.lo, Round::Up));
    if !rad.is_zero() {
        w = dn(w.add(&rad.mul_pow2(guard.lip_exp), Round::Up));
    }
    BigIval {
        lo: dn(value.sub(&w, Round::Down)),
        hi: dn(value.add(&w, Round::Up)),
    }
}

/// Shared driver: sums `scale * sum_k term_k` where
/// `term_{k+1} = term_k * y * num(k) / den(k)`, alternating when asked.
#[allow(clippy::too_many_arguments)]
fn run_series(
    arg: &BigIval,
    wp: u32,
    square_arg: bool,
    scale_by_arg: bool,
    num: fn(u64) -> u64,
    den: fn(u64) -> u64,
    alternating: bool,
    tail_factor: i64,
    guard: SeriesGuard,
) -> BigIval {
    if arg.lo.is_zero() && arg.hi.is_zero() {
        return if scale_by_arg {
            BigIval::zero(wp)
        } else {
            BigIval::from_u64(1, wp)
        };
    }
    let m = &arg.lo;
    let y = if square_arg {
        dn(m.mul(m, Round::Down))
    } else {
        m.clone()
    };
    let one = BigFloat::from_u64(1, wp, Round::Down).0;
    let mut sum = one.clone();
    let mut term = one;
    let mut k = 1u64;
    let cutoff = wp as i64 + 8;
    loop {
        term = dn(term.mul(&y, Round::Down));
        let n = num(k);
        if n != 1 {
            term = dn(term.mul_u64(n, Round::Down));
        }
        term = dn(term.div_u64(den(k), Round::Down));
        if term.msb_exp().map_or(true, |e| e < -cutoff) {
            let tail = term.abs().mul_pow2(tail_factor);
            let mut value = sum;
            if scale_by_arg {
                value = dn(value.mul(m, Round::Down));
            }
            return enclose_series(value, k, &tail, &guard, arg, wp);
        }
        sum = if alternating && k % 2 == 1 {
            dn(sum.sub(&term, Round::Down))
        } else {
            dn(sum.add(&term, Round::Down))
        };
        k += 1;
    }
}

/// exp on |r| <= 2.6 (one extra quadrant-style slack tolerated).
fn series_exp(r: &BigIval, wp: u32) -> BigIval {
    run_series(
        r,
        wp,
        false,
        false,
        |_| 1,
        |k| k,
        false,
        2,
        SeriesGuard {
            mag_exp: 5,
            lip_exp: 4,
        },
    )
}

/// sin on |r| <= 2.6: r * S(r^2), alternating.
fn series_sin(r: &BigIval, wp: u32) -> BigIval {
    run_series(
        r,
        wp,
        true,
        true,
        |_| 1,
        |k| (2 * k) * (2 * k + 1),
        true,
        1,
        SeriesGuard {
            mag_exp: 4,
            lip_exp: 0,
        },
    )
}

/// cos on |r| <= 2.6, alternating.
fn series_cos(r: &BigIval, wp: u32) -> BigIval {
    run_series(
        r,
        wp,
        true,
        false,
        |_| 1,
        |k| (2 * k - 1) * (2 * k),
        true,
        1,
        SeriesGuard {
            mag_exp: 4,
            lip_exp: 0,
        },
    )
}

/// atan on |u| <= 0.26, alternating. The term recurrence needs the power
/// and the 1/(2k+1) factor separately, so it gets its own loop.
fn series_atan(u: &BigIval, wp: u32) -> BigIval {
    odd_coefficient_series(u, wp, true)
}

/// atanh on |u| <= 0.34, positive series.
fn series_atanh(u: &BigIval, wp: u32) -> BigIval {
    odd_coefficient_series(u, wp, false)
}

/// sum of u^{2k+1}/(2k+1) with optional alternation.
fn odd_coefficient_series(u: &BigIval, wp: u32, alternating: bool) -> BigIval {
    if u.lo.is_zero() && u.hi.is_zero() {
        return BigIval::zero(wp);
    }
    let m = &u.lo;
    let y = dn(m.mul(m, Round::Down));
    let mut power = BigFloat::from_u64(1, wp, Round::Down).0;
    let mut sum = power.clone();
    let mut k = 1u64;
    let cutoff = wp as i64 + 8;
    loop {
        power = dn(power.mul(&y, Round::Down));
        let term = dn(power.div_u64(2 * k + 1, Round::Down));
        if term.msb_exp().map_or(true, |e| e < -cutoff) {
            let value = dn(sum.mul(m, Round::Down));
            let tail = term.abs().mul_pow2(1);
            return enclose_series(
                value,
                k,
                &tail,
                &SeriesGuard {
                    mag_exp: 1,
                    lip_exp: 1,
                },
                u,
                wp,
            );
        }
        sum = if alternating && k % 2 == 1 {
            dn(sum.sub(&term, Round::Down))
        } else {
            dn(sum.add(&term, Round::Down))
        };
        k += 1;
    }
}

/// asinh on |x| <= 0.3, alternating.
fn series_asinh(x: &BigIval, wp: u32) -> BigIval {
    run_series(
        x,
        wp,
        true,
        true,
        |k| (2 * k - 1) * (2 * k - 1),
        |k| (2 * k) * (2 * k + 1),
        true,
        1,
        SeriesGuard {
            mag_exp: 1,
            lip_exp: 0,
        },
    )
}

/// sinh on |x| <= 0.55, positive odd series.
fn series_sinh(x: &BigIval, wp: u32) -> BigIval {
    run_series(
        x,
        wp,
        true,
        true,
        |_| 1,
        |k| (2 * k) * (2 * k + 1),
        false,
        2,
        SeriesGuard {
            mag_exp: 1,
            lip_exp: 1,
        },
    )
}

/// cosh on |x| <= 0.55, positive even series.
fn series_cosh(x: &BigIval, wp: u32) -> BigIval {
    run_series(
        x,
        wp,
        true,
        false,
        |_| 1,
        |k| (2 * k - 1) * (2 * k),
        false,
        2,
        SeriesGuard {
            mag_exp: 1,
            lip_exp: 0,
        },
    )
}

// ---------------------------------------------------------------------------
// Integer helpers for argument reduction.

/// Floor of a finite value as a signed big integer.
fn floor_to_int(b: &BigFloat) -> (bool, Limbs) {
    match b.to_parts() {
        None => (false, Limbs::zero()),
        Some((neg, limbs, exp)) => {
            let mant = Limbs::from_limbs(&limbs);
            if exp >= 0 {
                (neg, mant.shl(exp as u64))
            } else {
                let (int, frac) = mant.split_sticky((-exp) as u64);
                if neg && frac {
                    (true, int.add_u64(1))
                } else {
                    (neg && !int.is_zero(), int)
                }
            }
        }
    }
}

/// Nearest integer to a finite value (ties toward +inf; any choice keeps
/// the reduction sound).
fn nearest_int(b: &BigFloat) -> (bool, Limbs) {
    let half = BigFloat::from_f64(0.5, b.precision().max(2), Round::Down).0;
    floor_to_int(&kernel_ok(b.add(&half, Round::Down)))
}

/// `a - b` for small signed big integers, when it fits an i64.
fn int_delta(a: &(bool, Limbs), b: &(bool, Limbs)) -> Option<i64> {
    let val = |x: &(bool, Limbs)| -> Option<i64> {
        let m = x.1.to_u64()?;
        let m = i64::try_from(m).ok()?;
        Some(if x.0 { -m } else { m })
    };
    match (val(a), val(b)) {
        (Some(x), Some(y)) => x.checked_sub(y),
        _ => {
            // Large but possibly close: subtract magnitudes when the signs
            // agree.
            if a.0 != b.0 {
                return None;
            }
            let (big, small, negate) = match a.1.cmp(&b.1) {
                Ordering::Less => (&b.1, &a.1, !a.0),
                _ => (&a.1, &b.1, a.0),
            };
            let d = big.sub(small).to_u64()?;
            let d = i64::try_from(d).ok()?;
            Some(if negate { -d } else { d })
        }
    }
}

/// Residue of a signed big integer modulo `m` (result in 0..m).
fn int_mod(x: &(bool, Limbs), m: u64) -> u64 {
    let (_, r) = x.1.div_rem_u64(m);
    if x.0 && r != 0 {
        m - r
    } else {
        r
    }
}

/// Quadrant reduction: x = n * pi/2 + r with |r| <~ pi/4 (up to one extra
/// quadrant when the cheap index estimate is off by one, which the series
/// absorb). Returns n (as a signed big integer), n mod 4, and a certified
/// enclosure of r.
fn reduce_pi_over_2(x: &BigFloat, wp: u32) -> ((bool, Limbs), u8, BigIval) {
    if x.is_zero() {
        return ((false, Limbs::zero()), 0, BigIval::zero(wp));
    }
    let extra = x.msb_exp().unwrap_or(0).max(0) as u32;
    let wp2 = wp + extra + 16;
    let pi2 = constant(Cst::Pi, wp2).mul_pow2(-1);
    let xi = BigIval::point(x.with_precision(wp2, Round::Down).0);
    // The index needs no precision: an estimate off by one merely grows
    // the reduced argument. f64 covers exponents up to 50 bits; the exact
    // big-integer division is the rare wide path.
    let n = if extra <= 50 {
        let est = (x.to_f64(Round::Down).0 * std::f64::consts::FRAC_2_PI).round();
        (
            est < 0.0,
            Limbs::from_u64(est.abs() as u64),
        )
    } else {
        nearest_int(&xi.div(&pi2).lo)
    };
    let nb = BigFloat::round_parts(n.0, &n.1, 0, false, wp2, Round::Down).0;
    let n_pi2 = pi2.mul(&BigIval::point(nb));
    let r = xi.sub(&n_pi2);
    let m4 = int_mod(&n, 4) as u8;
    let r = BigIval {
        lo: r.lo.with_precision(wp, Round::Down).0,
        hi: r.hi.with_precision(wp, Round::Up).0,
    };
    (n, m4, r)
}

// ---------------------------------------------------------------------------
// Point cores: enclosures of f at one exact software-float argument.

fn exp_point(x: &BigFloat, wp: u32) -> BigIval {
    if x.is_zero() {
        return BigIval::from_u64(1, wp);
    }
    let (est, _) = x.to_f64(Round::Down);
    if est > 7.0e11 {
        return BigIval {
            lo: BigFloat::max_finite(wp),
            hi: BigFloat::pos_inf(wp),
        };
    }
    if est < -7.0e11 {
        return BigIval {
            lo: BigFloat::zero(wp),
            hi: BigFloat::min_positive(wp),
        };
    }
    // x = (32k + j) * ln2/32 + r with |r| <= ln2/64; the series then needs
    // only a dozen terms and the table restores the 2^(j/32) factor.
    let t = est / std::f64::consts::LN_2;
    let k32 = (t * 32.0).round();
    let (mut k, mut j) = ((k32 / 32.0).floor() as i64, (k32 as i64).rem_euclid(32));
    if k32.abs() > 4.4e12 {
        // Fallback for arguments near the exponent guard.
        k = (t.round()) as i64;
        j = 0;
    }
    let ln2 = constant(Cst::Ln2, wp + 64);
    let xi = BigIval::point(x.with_precision(wp + 64, Round::Down).0);
    let steps = BigFloat::from_i64(k * 32 + j, wp + 64, Round::Down).0;
    let r = xi.sub(&ln2.mul(&BigIval::point(steps)).div_u64(32));
    let r = trim(r, wp);
    let s = series_exp(&r, wp);
    let s = if j == 0 {
        s
    } else {
        s.mul(&table(Table::Pow2Thirtyseconds, wp)[j as usize])
    };
    s.mul_pow2(k)
}

/// ln of the normalized significand m in [1, 2): table step to within
/// 1/64 of 1, then a short atanh series.
fn ln_mantissa(m: BigFloat, wp: u32) -> BigIval {
    let j = (((m.to_f64(Round::Down).0 - 1.0) * 32.0).round() as i64).clamp(0, 32) as usize;
    let mi = BigIval::point(m);
    let w = if j == 0 {
        mi
    } else {
        // c = (32 + j)/32 is exact in six bits.
        let c = BigFloat::from_u64(32 + j as u64, wp, Round::Down).0.mul_pow2(-5);
        mi.div(&BigIval::point(c))
    };
    let one = BigIval::from_u64(1, wp);
    let u = w.sub(&one).div(&w.add(&one));
    let ln_w = series_atanh(&u, wp).mul_pow2(1);
    if j == 0 {
        ln_w
    } else {
        ln_w.add(&table(Table::LnNear1, wp)[j])
    }
}

/// Natural log of a positive finite value.
fn ln_point(x: &BigFloat, wp: u32) -> BigIval {
    debug_assert!(x.sign() == Ordering::Greater);
    let e = x.msb_exp().expect("positive finite");
    let m = x.with_precision(wp, Round::Down).0.mul_pow2(-e);
    let ln_m = ln_mantissa(m, wp);
    if e == 0 {
        return ln_m;
    }
    let ln2 = constant(Cst::Ln2, wp + 64);
    let eb = BigIval::point(BigFloat::from_i64(e, wp + 64, Round::Down).0);
    ln_m.add(&trim(ln2.mul(&eb), wp))
}

/// log2 as e + ln(m)/ln2, so exact powers of two come out exact.
fn log2_point(x: &BigFloat, wp: u32) -> BigIval {
    let e0 = x.msb_exp().expect("positive finite");
    let m = x.with_precision(wp, Round::Down).0.mul_pow2(-e0);
    let frac = ln_mantissa(m, wp).div(&constant(Cst::Ln2, wp));
    let eb = BigIval::point(BigFloat::from_i64(e0, wp, Round::Down).0);
    eb.add(&frac)
}

fn log10_point(x: &BigFloat, wp: u32) -> BigIval {
    ln_point(x, wp + 32).div(&constant(Cst::Ln10, wp + 32))
}

fn sin_point(x: &BigFloat, wp: u32) -> BigIval {
    let (_, m4, r) = reduce_pi_over_2(x, wp);
    match m4 {
        0 => series_sin(&r, wp),
        1 => series_cos(&r, wp),
        2 => series_sin(&r, wp).neg(),
        _ => series_cos(&r, wp).neg(),
    }
}

fn cos_point(x: &BigFloat, wp: u32) -> BigIval {
    let (_, m4, r) = reduce_pi_over_2(x, wp);
    match m4 {
        0 => series_cos(&r, wp),
        1 => series_sin(&r, wp).neg(),
        2 => series_cos(&r, wp).neg(),
        _ => series_sin(&r, wp),
    }
}

fn tan_point(x: &BigFloat, wp: u32) -> BigIval {
    let (_, m4, r) = reduce_pi_over_2(x, wp);
    let s = series_sin(&r, wp);
    let c = series_cos(&r, wp);
    match m4 {
        0 | 2 => s.div(&c),
        _ => c.div(&s).neg(),
    }
}

/// Bootstrap atan used to build the sixteenths table: halve until the
/// series argument is small, u' = u / (1 + sqrt(1+u^2)).
fn atan_by_halving(u: &BigIval, wp: u32) -> BigIval {
    let mut v = u.clone();
    let mut halvings = 0;
    let one = BigIval::from_u64(1, wp);
    while v.mag().to_f64(Round::Up).0 > 0.25 && halvings < 80 {
        let denom = one.add(&one.add(&v.mul(&v)).sqrt());
        v = v.div(&denom);
        halvings += 1;
    }
    series_atan(&v, wp).mul_pow2(halvings)
}

/// atan of a (small) enclosure; |u| may be anything finite or infinite on
/// one side. Arguments above one go through the reciprocal identity; the
/// remainder steps to the nearest sixteenth, atan(v) = atan(c) +
/// atan((v-c)/(1+vc)), leaving a series argument within 1/32.
fn atan_ival(v: &BigIval, wp: u32) -> BigIval {
    let est = v.lo.to_f64(Round::Down).0;
    if !v.lo.is_finite() || !v.hi.is_finite() {
        // Unreachable from the point cores; stay total with the
        // quarter-circle bound.
        let half_pi = constant(Cst::Pi, wp).mul_pow2(-1);
        return BigIval {
            lo: half_pi.neg().lo,
            hi: half_pi.hi,
        };
    }
    if est.abs() > 1.0 {
        // atan(v) = sign(v) * pi/2 - atan(1/v).
        let one = BigIval::from_u64(1, wp);
        let inner = atan_small(&one.div(v), wp);
        let half_pi = constant(Cst::Pi, wp).mul_pow2(-1);
        return if est > 0.0 {
            half_pi.sub(&inner)
        } else {
            half_pi.neg().sub(&inner)
        };
    }
    atan_small(v, wp)
}

/// atan for |v| <= 1 (plus rounding slack).
fn atan_small(v: &BigIval, wp: u32) -> BigIval {
    let est = v.lo.to_f64(Round::Down).0;
    let j = ((est * 16.0).round() as i64).clamp(-16, 16);
    if j == 0 {
        return series_atan(v, wp);
    }
    let c = BigFloat::from_i64(j, wp, Round::Down).0.mul_pow2(-4);
    let ci = BigIval::point(c);
    let one = BigIval::from_u64(1, wp);
    // Same-sign step keeps 1 + v*c bounded away from zero.
    let w = v.sub(&ci).div(&one.add(&v.mul(&ci)));
    let base = &table(Table::AtanSixteenths, wp)[j.unsigned_abs() as usize];
    let base = if j < 0 { base.neg() } else { base.clone() };
    base.add(&series_atan(&w, wp))
}

fn pick_min(a: &BigFloat, b: &BigFloat) -> BigFloat {
    if a.cmp_value(b) == Ordering::Greater {
        b.clone()
    } else {
        a.clone()
    }
}

fn pick_max(a: &BigFloat, b: &BigFloat) -> BigFloat {
    if a.cmp_value(b) == Ordering::Less {
        b.clone()
    } else {
        a.clone()
    }
}

fn atan_point(x: &BigFloat, wp: u32) -> BigIval {
    atan_ival(&BigIval::point(x.with_precision(wp, Round::Down).0), wp)
}

fn asin_point(x: &BigFloat, wp: u32) -> BigIval {
    let one = BigFloat::from_u64(1, wp, Round::Down).0;
    let mag_one = x.abs().cmp_value(&one) == Ordering::Equal;
    if mag_one {
        let half_pi = constant(Cst::Pi, wp).mul_pow2(-1);
        return if x.sign() == Ordering::Less {
            half_pi.neg()
        } else {
            half_pi
        };
    }
    let xi = BigIval::point(x.with_precision(wp + 32, Round::Down).0);
    let onei = BigIval::from_u64(1, wp + 32);
    let s = onei.sub(&xi.mul(&xi)).sqrt();
    let t = xi.div(&s);
    let t = BigIval {
        lo: t.lo.with_precision(wp, Round::Down).0,
        hi: t.hi.with_precision(wp, Round::Up).0,
    };
    atan_ival(&t, wp)
}

fn acos_point(x: &BigFloat, wp: u32) -> BigIval {
    let one = BigFloat::from_u64(1, wp, Round::Down).0;
    if x.cmp_value(&one) == Ordering::Equal {
        return BigIval::zero(wp);
    }
    if x.cmp_value(&one.neg()) == Ordering::Equal {
        return constant(Cst::Pi, wp);
    }
    let wpe = wp + 32;
    let half_pi = constant(Cst::Pi, wpe).mul_pow2(-1);
    let r = half_pi.sub(&asin_point(x, wpe));
    BigIval {
        lo: r.lo.with_precision(wp, Round::Down).0,
        hi: r.hi.with_precision(wp, Round::Up).0,
    }
}

fn sinh_point(x: &BigFloat, wp: u32) -> BigIval {
    let xa = x.abs();
    let small = xa.msb_exp().map_or(true, |e| e < -1);
    let r = if small {
        series_sinh(&BigIval::point(xa.with_precision(wp, Round::Down).0), wp)
    } else {
        let e = exp_point(&xa, wp + 8);
        let inv = BigIval::from_u64(1, wp + 8).div(&e);
        let r = e.sub(&inv).mul_pow2(-1);
        BigIval {
            lo: r.lo.with_precision(wp, Round::Down).0,
            hi: r.hi.with_precision(wp, Round::Up).0,
        }
    };
    if x.sign() == Ordering::Less {
        r.neg()
    } else {
        r
    }
}

fn cosh_point(x: &BigFloat, wp: u32) -> BigIval {
    let xa = x.abs();
    if xa.msb_exp().map_or(true, |e| e < -1) {
        return series_cosh(&BigIval::point(xa.with_precision(wp, Round::Down).0), wp);
    }
    let e = exp_point(&xa, wp + 8);
    let inv = BigIval::from_u64(1, wp + 8).div(&e);
    let r = e.add(&inv).mul_pow2(-1);
    BigIval {
        lo: r.lo.with_precision(wp, Round::Down).0,
        hi: r.hi.with_precision(wp, Round::Up).0,
    }
}

fn tanh_point(x: &BigFloat, wp: u32) -> BigIval {
    let xa = x.abs();
    let r = if xa.msb_exp().map_or(true, |e| e < -1) {
        // tanh = s / sqrt(1 + s^2) with s = sinh: one series suffices.
        let xi = BigIval::point(xa.with_precision(wp + 8, Round::Down).0);
        let s = series_sinh(&xi, wp + 8);
        let r = s.div(&BigIval::from_u64(1, wp + 8).add(&s.mul(&s)).sqrt());
        BigIval {
            lo: r.lo.with_precision(wp, Round::Down).0,
            hi: r.hi.with_precision(wp, Round::Up).0,
        }
    } else {
        // 1 - 2 / (e^{2x} + 1); saturating exp keeps this sound for huge x.
        let e2 = exp_point(&xa.mul_pow2(1), wp + 8);
        let one = BigIval::from_u64(1, wp + 8);
        let r = one.sub(&BigIval::from_u64(2, wp + 8).div(&e2.add(&one)));
        BigIval {
            lo: r.lo.with_precision(wp, Round::Down).0,
            hi: r.hi.with_precision(wp, Round::Up).0,
        }
    };
    if x.sign() == Ordering::Less {
        r.neg()
    } else {
        r
    }
}

fn asinh_point(x: &BigFloat, wp: u32) -> BigIval {
    let xa = x.abs();
    let r = if xa.msb_exp().map_or(true, |e| e < -2) {
        series_asinh(&BigIval::point(xa.with_precision(wp, Round::Down).0), wp)
    } else {
        // ln(x + sqrt(x^2 + 1)), no cancellation for |x| >= 1/4.
        let xi = BigIval::point(xa.with_precision(wp + 8, Round::Down).0);
        let s = xi.mul(&xi).add(&BigIval::from_u64(1, wp + 8)).sqrt();
        let arg = xi.add(&s);
        let r = ln_span(&arg, wp + 8);
        BigIval {
            lo: r.lo.with_precision(wp, Round::Down).0,
            hi: r.hi.with_precision(wp, Round::Up).0,
        }
    };
    if x.sign() == Ordering::Less {
        r.neg()
    } else {
        r
    }
}

fn acosh_point(x: &BigFloat, wp: u32) -> BigIval {
    let one = BigIval::from_u64(1, wp + 8);
    let xi = BigIval::point(x.with_precision(wp + 8, Round::Down).0);
    // sqrt((x-1)(x+1)) keeps accuracy near 1.
    let s = xi.sub(&one).mul(&xi.add(&one)).sqrt();
    let r = ln_span(&xi.add(&s), wp + 8);
    BigIval {
        lo: r.lo.with_precision(wp, Round::Down).0,
        hi: r.hi.with_precision(wp, Round::Up).0,
    }
}

fn atanh_point(x: &BigFloat, wp: u32) -> BigIval {
    let xa = x.abs();
    let r = if xa.msb_exp().map_or(true, |e| e < -2) {
        series_atanh(&BigIval::point(xa.with_precision(wp, Round::Down).0), wp)
    } else {
        // atanh x = ln((1+x)/(1-x)) / 2.
        let one = BigIval::from_u64(1, wp + 8);
        let xi = BigIval::point(xa.with_precision(wp + 8, Round::Down).0);
        let ratio = one.add(&xi).div(&one.sub(&xi));
        let r = ln_span(&ratio, wp + 8).mul_pow2(-1);
        BigIval {
            lo: r.lo.with_precision(wp, Round::Down).0,
            hi: r.hi.with_precision(wp, Round::Up).0,
        }
    };
    if x.sign() == Ordering::Less {
        r.neg()
    } else {
        r
    }
}

/// ln over a positive enclosure. Thin inputs (the internal case) get one
/// point evaluation widened by the slope bound 1/lo; wide ones evaluate
/// both endpoints.
fn ln_span(x: &BigIval, wp: u32) -> BigIval {
    if x.lo.cmp_value(&x.hi) == Ordering::Equal {
        return ln_point(&x.lo, wp);
    }
    let lo_f = x.lo.to_f64(Round::Down).0;
    let hi_f = x.hi.to_f64(Round::Up).0;
    if hi_f - lo_f < lo_f * 1e-6 {
        let base = ln_point(&x.lo, wp);
        let slope_width = kernel_ok(
            kernel_ok(x.hi.sub(&x.lo, Round::Up)).div(&x.lo, Round::Up),
        );
        return BigIval {
            lo: base.lo,
            hi: kernel_ok(base.hi.add(&slope_width, Round::Up)),
        };
    }
    BigIval {
        lo: ln_point(&x.lo, wp).lo,
        hi: ln_point(&x.hi, wp).hi,
    }
}

// ---------------------------------------------------------------------------
// Directed target-precision bounds with escalation.

fn big_to_endpoint(b: &BigFloat, target: Precision, dir: Round) -> Endpoint {
    Endpoint::Big(b.clone()).convert(target, dir).0
}

/// Evaluates `core` at growing working precisions until the two outward
/// roundings of the enclosure coincide (the bound is then correctly
/// rounded); gives up at the cap with a one-sided, still-valid bound.
fn ziv_bound(core: impl Fn(u32) -> BigIval, target: Precision, dir: Round) -> Endpoint {
    let (dn, up) = ziv_pair(core, target);
    match dir {
        Round::Down => dn,
        Round::Up => up,
    }
}

/// Both directed roundings of a point enclosure from one escalation loop.
fn ziv_pair(core: impl Fn(u32) -> BigIval, target: Precision) -> (Endpoint, Endpoint) {
    let bits = target.bits();
    let mut wp = bits + 32;
    let cap = 4 * bits + 512;
    loop {
        let enc = core(wp);
        let dn_a = big_to_endpoint(&enc.lo, target, Round::Down);
        let dn_b = big_to_endpoint(&enc.hi, target, Round::Down);
        let up_a = big_to_endpoint(&enc.lo, target, Round::Up);
        let up_b = big_to_endpoint(&enc.hi, target, Round::Up);
        let dn_ok = dn_a.cmp_value(&dn_b) == Ordering::Equal;
        let up_ok = up_a.cmp_value(&up_b) == Ordering::Equal;
        if (dn_ok && up_ok) || wp >= cap {
            return (dn_a, up_b);
        }
        wp *= 2;
    }
}

// ---------------------------------------------------------------------------
// Public surface.

/// The elementary functions, as runtime-selectable values (the CLI
/// registry and the benchmarks pick them by name).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElemFn {
    Exp,
    Log,
    Log2,
    Log10,
    Sin,
    Cos,
    Tan,
    Asin,
    Acos,
    Atan,
    Sinh,
    Cosh,
    Tanh,
    Asinh,
    Acosh,
    Atanh,
}

impl ElemFn {
    pub const ALL: [ElemFn; 16] = [
        ElemFn::Exp,
        ElemFn::Log,
        ElemFn::Log2,
        ElemFn::Log10,
        ElemFn::Sin,
        ElemFn::Cos,
        ElemFn::Tan,
        ElemFn::Asin,
        ElemFn::Acos,
        ElemFn::Atan,
        ElemFn::Sinh,
        ElemFn::Cosh,
        ElemFn::Tanh,
        ElemFn::Asinh,
        ElemFn::Acosh,
        ElemFn::Atanh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ElemFn::Exp => "exp",
            ElemFn::Log => "log",
            ElemFn::Log2 => "log2",
            ElemFn::Log10 => "log10",
            ElemFn::Sin => "sin",
            ElemFn::Cos => "cos",
            ElemFn::Tan => "tan",
            ElemFn::Asin => "asin",
            ElemFn::Acos => "acos",
            ElemFn::Atan => "atan",
            ElemFn::Sinh => "sinh",
            ElemFn::Cosh => "cosh",
            ElemFn::Tanh => "tanh",
            ElemFn::Asinh => "asinh",
            ElemFn::Acosh => "acosh",
            ElemFn::Atanh => "atanh",
        }
    }

    pub fn from_name(name: &str) -> Option<ElemFn> {
        ElemFn::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn apply(self, x: &Interval) -> Interval {
        match self {
            ElemFn::Exp => exp(x),
            ElemFn::Log => log(x),
            ElemFn::Log2 => log2(x),
            ElemFn::Log10 => log10(x),
            ElemFn::Sin => sin(x),
            ElemFn::Cos => cos(x),
            ElemFn::Tan => tan(x),
            ElemFn::Asin => asin(x),
            ElemFn::Acos => acos(x),
            ElemFn::Atan => atan(x),
            ElemFn::Sinh => sinh(x),
            ElemFn::Cosh => cosh(x),
            ElemFn::Tanh => tanh(x),
            ElemFn::Asinh => asinh(x),
            ElemFn::Acosh => acosh(x),
            ElemFn::Atanh => atanh(x),
        }
    }
}

/// Monotone scaffolding: domain, direction, limits at the edges.
struct MonoSpec {
    core: fn(&BigFloat, u32) -> BigIval,
    /// Natural domain as closed rational bounds; None = unbounded side.
    dom_lo: Option<(i64, bool)>, // (value, open)
    dom_hi: Option<(i64, bool)>,
    increasing: bool,
}

fn mono_spec(f: ElemFn) -> MonoSpec {
    use ElemFn::*;
    let (core, dom_lo, dom_hi, increasing): (
        fn(&BigFloat, u32) -> BigIval,
        Option<(i64, bool)>,
        Option<(i64, bool)>,
        bool,
    ) = match f {
        Exp => (exp_point, None, None, true),
        Log => (ln_point, Some((0, true)), None, true),
        Log2 => (log2_point, Some((0, true)), None, true),
        Log10 => (log10_point, Some((0, true)), None, true),
        Atan => (atan_point, None, None, true),
        Asin => (asin_point, Some((-1, false)), Some((1, false)), true),
        Acos => (acos_point, Some((-1, false)), Some((1, false)), false),
        Sinh => (sinh_point, None, None, true),
        Cosh => (cosh_point, None, None, true), // handled specially
        Tanh => (tanh_point, None, None, true),
        Asinh => (asinh_point, None, None, true),
        Acosh => (acosh_point, Some((1, false)), None, true),
        Atanh => (atanh_point, Some((-1, true)), Some((1, true)), true),
        Sin | Cos | Tan => unreachable!("not monotone"),
    };
    MonoSpec {
        core,
        dom_lo,
        dom_hi,
        increasing,
    }
}

/// Value approached at an infinite argument, as a directed bound.
fn limit_at_infinity(f: ElemFn, positive: bool, target: Precision, dir: Round) -> Endpoint {
    use ElemFn::*;
    match (f, positive) {
        (Exp, true) | (Log, true) | (Log2, true) | (Log10, true) => Endpoint::pos_inf(target),
        (Exp, false) => Endpoint::zero(target),
        (Sinh, p) | (Asinh, p) => {
            if p {
                Endpoint::pos_inf(target)
            } else {
                Endpoint::neg_inf(target)
            }
        }
        (Cosh, _) | (Acosh, true) => Endpoint::pos_inf(target),
        (Tanh, p) => crate::endpoint::from_rational(target, if p { 1 } else { -1 }, 1, dir).0,
        (Atan, p) => {
            let b = ziv_bound(
                |wp| {
                    let h = constant(Cst::Pi, wp).mul_pow2(-1);
                    if p {
                        h
                    } else {
                        h.neg()
                    }
                },
                target,
                dir,
            );
            b
        }
        _ => unreachable!("no infinite limit for {f:?} toward {positive}"),
    }
}

fn apply_monotone(x: &Interval, f: ElemFn) -> Interval {
    let prec = x.precision();
    let spec = mono_spec(f);
    let Some(_) = x.bounds() else {
        return Interval::empty(prec);
    };
    // Clip to the natural domain.
    let dlo = spec
        .dom_lo
        .map(|(v, _)| crate::endpoint::from_rational(prec, v, 1, Round::Down).0)
        .unwrap_or_else(|| Endpoint::neg_inf(prec));
    let dhi = spec
        .dom_hi
        .map(|(v, _)| crate::endpoint::from_rational(prec, v, 1, Round::Up).0)
        .unwrap_or_else(|| Endpoint::pos_inf(prec));
    let domain = Interval::make(dlo.clone(), dhi.clone()).unwrap();
    let clipped = x.intersection(&domain);
    let Some((lo, hi)) = clipped.bounds() else {
        return Interval::empty(prec);
    };
    let lo_open = spec.dom_lo.map_or(false, |(_, open)| open)
        && lo.cmp_value(&dlo) == Ordering::Equal;
    let hi_open = spec.dom_hi.map_or(false, |(_, open)| open)
        && hi.cmp_value(&dhi) == Ordering::Equal;
    // A degenerate interval at an open edge has an empty image.
    if lo_open && lo.cmp_value(hi) == Ordering::Equal {
        return Interval::empty(prec);
    }
    if hi_open && lo.cmp_value(hi) == Ordering::Equal {
        return Interval::empty(prec);
    }

    let bound = |src: &Endpoint, at_open_edge: bool, toward_dom_lo: bool, dir: Round| -> Endpoint {
        if at_open_edge {
            // Limit at the open domain edge.
            let going_down = toward_dom_lo == spec.increasing;
            return if going_down {
                Endpoint::neg_inf(prec)
            } else {
                Endpoint::pos_inf(prec)
            };
        }
        if src.is_infinite() {
            return limit_at_infinity(f, src.sign() == Ordering::Greater, prec, dir);
        }
        let xb = src.to_bigfloat();
        ziv_bound(|wp| (spec.core)(&xb.with_precision(wp, Round::Down).0, wp), prec, dir)
    };

    if f == ElemFn::Cosh {
        // Even function with minimum 1 at 0.
        let mig = clipped.mig().unwrap();
        let mag = clipped.mag().unwrap();
        let lo_b = bound(&mig, false, true, Round::Down);
        let hi_b = if mag.is_infinite() {
            Endpoint::pos_inf(prec)
        } else {
            bound(&mag, false, false, Round::Up)
        };
        return Interval::from_bounds_unchecked(lo_b, hi_b);
    }

    let (lo_src, lo_from_dom_lo, hi_src, hi_from_dom_lo) = if spec.increasing {
        (lo, true, hi, false)
    } else {
        (hi, false, lo, true)
    };
    let lo_b = bound(
        lo_src,
        if spec.increasing { lo_open } else { hi_open },
        lo_from_dom_lo,
        Round::Down,
    );
    let hi_b = bound(
        hi_src,
        if spec.increasing { hi_open } else { lo_open },
        hi_from_dom_lo,
        Round::Up,
    );
    Interval::from_bounds_unchecked(lo_b, hi_b)
}

pub fn exp(x: &Interval) -> Interval {
    apply_monotone(x, ElemFn::Exp)
}

pub fn log(x: &Interval) -> Interval {
    apply_monotone(x, ElemFn::Log)
}

pub fn log2(x: &Interval) -> Interval {
    apply_monotone(x, ElemFn::Log2)
}

pub fn log10(x: &Interval) -> Interval {
    apply_monotone(x, ElemFn::Log10)
}

pub fn atan(x: &Interval) -> Interval {
    apply_monotone(x, ElemFn::Atan)
}

pub fn asin(x: &Interval) -> Interval {
    apply_monotone(x, ElemFn::Asin)
}

pub fn acos(x: &Interval) -> Interval {
    apply_monotone(x, ElemFn::Acos)
}

pub fn sinh(x: &Interval) -> Interval {
    apply_monotone(x, ElemFn::Sinh)
}

pub fn cosh(x: &Interval) -> Interval {
    apply_monotone(x, ElemFn::Cosh)
}

pub fn tanh(x: &Interval) -> Interval {
    apply_monotone(x, ElemFn::Tanh)
}

pub fn asinh(x: &Interval) -> Interval {
    apply_monotone(x, ElemFn::Asinh)
}

pub fn acosh(x: &Interval) -> Interval {
    apply_monotone(x, ElemFn::Acosh)
}

pub fn atanh(x: &Interval) -> Interval {
    apply_monotone(x, ElemFn::Atanh)
}

/// `[-1, 1]` at a precision (exact endpoints).
fn unit_interval(prec: Precision) -> Interval {
    Interval::make(
        crate::endpoint::from_rational(prec, -1, 1, Round::Down).0,
        crate::endpoint::from_rational(prec, 1, 1, Round::Up).0,
    )
    .unwrap()
}

fn clamp_unit(x: Interval, prec: Precision) -> Interval {
    x.intersection(&unit_interval(prec))
}

/// Shared sin/cos evaluation; `phase` rotates cos onto the sin machinery
/// (cos x = sin(x + pi/2) amounts to shifting the quadrant index by 1).
fn sin_like(x: &Interval, phase: u8) -> Interval {
    let prec = x.precision();
    let Some((lo, hi)) = x.bounds() else {
        return Interval::empty(prec);
    };
    if lo.is_infinite() || hi.is_infinite() {
        return unit_interval(prec);
    }
    let width_est = x.wid().unwrap().to_f64(Round::Up);
    if width_est > 7.0 {
        return unit_interval(prec);
    }
    let wp0 = prec.bits() + 32;
    let (na, _, ra) = reduce_pi_over_2(&lo.to_bigfloat(), wp0);
    let (nb, _, rb) = reduce_pi_over_2(&hi.to_bigfloat(), wp0);
    let Some(delta) = int_delta(&nb, &na) else {
        return unit_interval(prec);
    };
    if !(0..=8).contains(&delta) {
        return unit_interval(prec);
    }
    let na_m4 = int_mod(&na, 4);
    // Quadrant boundary m (indexing n) hosts a maximum of the phased sine
    // when (m + phase) % 4 == 1, a minimum when == 3.
    let boundary_hit = |residue_target: u64| -> bool {
        for d in 0..=delta {
            let m_res = (na_m4 + d as u64 + phase as u64) % 4;
            if m_res != residue_target {
                continue;
            }
            let at_left = d == 0;
            let at_right = d == delta;
            let left_ok = !at_left || ra.lo.sign() != Ordering::Greater;
            let right_ok = !at_right || rb.hi.sign() != Ordering::Less;
            if left_ok && right_ok {
                return true;
            }
        }
        false
    };
    let has_max = boundary_hit(1);
    let has_min = boundary_hit(3);

    let eval_pair = |e: &Endpoint| -> (Endpoint, Endpoint) {
        let xb = e.to_bigfloat();
        ziv_pair(
            |wp| {
                let (_, m4, r) = reduce_pi_over_2(&xb.with_precision(wp, Round::Down).0, wp);
                match (m4 + phase) % 4 {
                    0 => series_sin(&r, wp),
                    1 => series_cos(&r, wp),
                    2 => series_sin(&r, wp).neg(),
                    _ => series_cos(&r, wp).neg(),
                }
            },
            prec,
        )
    };
    let (a_dn, a_up) = eval_pair(lo);
    let (b_dn, b_up) = if lo.cmp_value(hi) == Ordering::Equal {
        (a_dn.clone(), a_up.clone())
    } else {
        eval_pair(hi)
    };

    let one = crate::endpoint::from_rational(prec, 1, 1, Round::Down).0;
    let hi_b = if has_max { one.clone() } else { a_up.max_value(b_up) };
    let lo_b = if has_min {
        one.neg()
    } else {
        a_dn.min_value(b_dn)
    };
    clamp_unit(
        Interval::from_bounds_unchecked(lo_b, hi_b),
        prec,
    )
}

pub fn sin(x: &Interval) -> Interval {
    sin_like(x, 0)
}

pub fn cos(x: &Interval) -> Interval {
    sin_like(x, 1)
}

pub fn tan(x: &Interval) -> Interval {
    let prec = x.precision();
    let Some((lo, hi)) = x.bounds() else {
        return Interval::empty(prec);
    };
    if lo.is_infinite() || hi.is_infinite() {
        return Interval::entire(prec);
    }
    if x.wid().unwrap().to_f64(Round::Up) > 3.2 {
        return Interval::entire(prec);
    }
    let wp0 = prec.bits() + 32;
    let (na, _, ra) = reduce_pi_over_2(&lo.to_bigfloat(), wp0);
    let (nb, _, rb) = reduce_pi_over_2(&hi.to_bigfloat(), wp0);
    let Some(delta) = int_delta(&nb, &na) else {
        return Interval::entire(prec);
    };
    if !(0..=4).contains(&delta) {
        return Interval::entire(prec);
    }
    // Poles sit at odd multiples of pi/2; boundary index m is a pole when
    // m is odd.
    let na_m4 = int_mod(&na, 4);
    for d in 0..=delta {
        if (na_m4 + d as u64) % 2 != 1 {
            continue;
        }
        let at_left = d == 0;
        let at_right = d == delta;
        let left_ok = !at_left || ra.lo.sign() != Ordering::Greater;
        let right_ok = !at_right || rb.hi.sign() != Ordering::Less;
        if left_ok && right_ok {
            return Interval::entire(prec);
        }
    }
    let eval = |e: &Endpoint, dir: Round| -> Endpoint {
        let xb = e.to_bigfloat();
        ziv_bound(
            |wp| tan_point(&xb.with_precision(wp, Round::Down).0, wp),
            prec,
            dir,
        )
    };
    Interval::from_bounds_unchecked(eval(lo, Round::Down), eval(hi, Round::Up))
}

/// Certified enclosure of `f` at a single finite point, evaluated at an
/// explicit working precision in bits. None when the point lies outside
/// the function's natural domain.
pub fn point_enclosure(f: ElemFn, x: &Endpoint, bits: u32) -> Option<Interval> {
    if !x.is_finite() {
        return None;
    }
    let xb = x.to_bigfloat().with_precision(bits.max(x.precision().bits()), Round::Down).0;
    let one = BigFloat::from_u64(1, bits, Round::Down).0;
    let in_closed_unit = xb.abs().cmp_value(&one) != Ordering::Greater;
    let enc = match f {
        ElemFn::Sin => sin_point(&xb, bits),
        ElemFn::Cos => cos_point(&xb, bits),
        ElemFn::Tan => tan_point(&xb, bits),
        ElemFn::Exp => exp_point(&xb, bits),
        ElemFn::Log | ElemFn::Log2 | ElemFn::Log10 => {
            if xb.sign() != Ordering::Greater {
                return None;
            }
            match f {
                ElemFn::Log => ln_point(&xb, bits),
                ElemFn::Log2 => log2_point(&xb, bits),
                _ => log10_point(&xb, bits),
            }
        }
        ElemFn::Asin | ElemFn::Acos => {
            if !in_closed_unit {
                return None;
            }
            if f == ElemFn::Asin {
                asin_point(&xb, bits)
            } else {
                acos_point(&xb, bits)
            }
        }
        ElemFn::Atan => atan_point(&xb, bits),
        ElemFn::Sinh => sinh_point(&xb, bits),
        ElemFn::Cosh => cosh_point(&xb, bits),
        ElemFn::Tanh => tanh_point(&xb, bits),
        ElemFn::Asinh => asinh_point(&xb, bits),
        ElemFn::Acosh => {
            if xb.cmp_value(&one) == Ordering::Less {
                return None;
            }
            acosh_point(&xb, bits)
        }
        ElemFn::Atanh => {
            if !in_closed_unit || xb.abs().cmp_value(&one) == Ordering::Equal {
                return None;
            }
            atanh_point(&xb, bits)
        }
    };
    Some(Interval::make(Endpoint::Big(enc.lo), Endpoint::Big(enc.hi)).expect("ordered enclosure"))
}

/// Certified enclosure of pi at a precision.
pub fn pi_interval(prec: Precision) -> Interval {
    let lo = ziv_bound(|wp| constant(Cst::Pi, wp), prec, Round::Down);
    let hi = ziv_bound(|wp| constant(Cst::Pi, wp), prec, Round::Up);
    Interval::make(lo, hi).unwrap()
}

/// Integer value of a point-interval endpoint, when it is one.
fn endpoint_as_i32(e: &Endpoint) -> Option<i32> {
    use crate::endpoint::Parts;
    match e.parts() {
        Parts::Zero => Some(0),
        Parts::Finite { neg, mant, exp } => {
            let int = if exp >= 0 {
                if mant.bit_len() + exp as u64 > 31 {
                    return None;
                }
                mant.shl(exp as u64)
            } else {
                if mant.low_bits_nonzero((-exp) as u64) {
                    return None;
                }
                let v = mant.shr((-exp) as u64);
                if v.bit_len() > 31 {
                    return None;
                }
                v
            };
            let v = int.to_u64()? as i32;
            Some(if neg { -v } else { v })
        }
        _ => None,
    }
}

/// Power with a real exponent over nonnegative bases:
/// `exp(y * log(x ∩ [0, inf)))` with zero handled as a limit point.
pub fn pow_interval(x: &Interval, y: &Interval) -> Interval {
    let prec = x.precision().widest(y.precision());
    let (x, y) = (x.promote(prec), y.promote(prec));
    if x.is_empty() || y.is_empty() {
        return Interval::empty(prec);
    }
    let nonneg = Interval::make(Endpoint::zero(prec), Endpoint::pos_inf(prec)).unwrap();
    let xc = x.intersection(&nonneg);
    let Some((xl, xh)) = xc.bounds() else {
        return Interval::empty(prec);
    };
    let (yl, yh) = y.bounds().unwrap();

    // Integer point exponent: delegate to the exact integer power.
    if yl.cmp_value(yh) == Ordering::Equal {
        if let Some(n) = endpoint_as_i32(yl) {
            return crate::arith::pown(&xc, n);
        }
    }

    if xh.is_zero() {
        // Base is exactly {0}.
        return if yh.sign() == Ordering::Greater {
            Interval::point(Endpoint::zero(prec)).unwrap()
        } else {
            Interval::empty(prec)
        };
    }

    // Working precision absorbs the exponent magnitude so the final
    // enclosure still rounds to within an ulp or two.
    let ymag_bits = y
        .mag()
        .map(|m| m.to_f64(Round::Up).abs().log2().max(0.0).min(64.0) as u32)
        .unwrap_or(0);
    let wp = prec.bits() + 64 + ymag_bits;

    let log_lo = if xl.is_zero() {
        BigFloat::neg_inf(wp)
    } else {
        ln_point(&xl.to_bigfloat().with_precision(wp, Round::Down).0, wp).lo
    };
    let log_hi = if xh.is_infinite() {
        BigFloat::pos_inf(wp)
    } else {
        ln_point(&xh.to_bigfloat().with_precision(wp, Round::Down).0, wp).hi
    };
    let l = BigIval {
        lo: log_lo,
        hi: log_hi,
    };
    let yb = BigIval {
        lo: to_big_wp(yl, wp),
        hi: to_big_wp(yh, wp),
    };
    let p = yb.mul(&l);
    let r_lo = if p.lo.is_infinite() {
        BigFloat::zero(wp)
    } else {
        exp_point(&p.lo, wp).lo
    };
    let r_hi = if p.hi.is_infinite() && p.hi.sign() == Ordering::Greater {
        BigFloat::pos_inf(wp)
    } else {
        exp_point(&p.hi, wp).hi
    };
    Interval::from_bounds_unchecked(
        big_to_endpoint(&r_lo, prec, Round::Down),
        big_to_endpoint(&r_hi, prec, Round::Up),
    )
}

fn to_big_wp(e: &Endpoint, wp: u32) -> BigFloat {
    if e.is_infinite() {
        return if e.sign() == Ordering::Greater {
            BigFloat::pos_inf(wp)
        } else {
            BigFloat::neg_inf(wp)
        };
    }
    e.to_bigfloat().with_precision(wp, Round::Down).0
}

/// Sign-preserving q-th root of every endpoint (odd-root semantics when
/// applied to negative values).
pub fn nth_root_signed(c: &Interval, q: u32) -> Interval {
    let prec = c.precision();
    let Some((lo, hi)) = c.bounds() else {
        return Interval::empty(prec);
    };
    debug_assert!(q >= 1);
    let root_bound = |e: &Endpoint, dir: Round| -> Endpoint {
        if e.is_zero() {
            return Endpoint::zero(prec);
        }
        if e.is_infinite() {
            return e.clone();
        }
        let neg = e.sign() == Ordering::Less;
        let mag = e.abs().to_bigfloat();
        let core = |wp: u32| -> BigIval {
            let l = ln_point(&mag.with_precision(wp, Round::Down).0, wp);
            let scaled = l.div_u64(q as u64);
            let r = BigIval {
                lo: exp_point(&scaled.lo, wp).lo,
                hi: exp_point(&scaled.hi, wp).hi,
            };
            if neg {
                r.neg()
            } else {
                r
            }
        };
        ziv_bound(core, prec, dir)
    };
    Interval::from_bounds_unchecked(root_bound(lo, Round::Down), root_bound(hi, Round::Up))
}
