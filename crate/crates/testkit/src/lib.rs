//! Oracles for testing the interval crates.
//!
//! Everything here is deliberately independent of the implementation paths
//! it checks: exact values come from `num-rational` big rationals, and
//! high-precision function values come from `astro-float`. The library
//! under test only supplies raw mantissa/exponent views of its values.

use astro_float::{BigFloat as AstroFloat, Consts, RoundingMode, Sign};
use ivl::{Endpoint, Round};
use num_bigint::{BigInt, Sign as IntSign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cell::RefCell;
use std::cmp::Ordering;

pub type Rat = BigRational;

pub fn rat_pow2(e: i64) -> Rat {
    let two = BigInt::from(2u32);
    if e >= 0 {
        Rat::from_integer(two.pow(e as u32))
    } else {
        Rat::new(BigInt::one(), two.pow((-e) as u32))
    }
}

pub fn rat_of_f64(x: f64) -> Rat {
    assert!(x.is_finite());
    if x == 0.0 {
        return Rat::zero();
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
    let mut r = Rat::from_integer(BigInt::from(mant)) * rat_pow2(exp);
    if neg {
        r = -r;
    }
    r
}

/// Exact rational value of a finite endpoint; None for infinities.
pub fn rat_of_endpoint(e: &Endpoint) -> Option<Rat> {
    if !e.is_finite() {
        return None;
    }
    if e.is_zero() {
        return Some(Rat::zero());
    }
    match e {
        Endpoint::F32(x) => Some(rat_of_f64(*x as f64)),
        Endpoint::F64(x) => Some(rat_of_f64(*x)),
        Endpoint::Big(b) => {
            let (neg, limbs, exp) = b.to_parts().expect("finite");
            let mut m = BigInt::zero();
            for &limb in limbs.iter().rev() {
                m = (m << 64) | BigInt::from(limb);
            }
            let mut r = Rat::from_integer(m) * rat_pow2(exp);
            if neg {
                r = -r;
            }
            Some(r)
        }
    }
}

/// Compares an endpoint with an exact rational, treating infinities as
/// beyond every rational.
pub fn cmp_endpoint_rat(e: &Endpoint, r: &Rat) -> Ordering {
    match rat_of_endpoint(e) {
        Some(v) => v.cmp(r),
        None => {
            if e.sign() == Ordering::Greater {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
    }
}

/// Asserts that `down`/`up` are the correctly rounded directed values of
/// `exact`: each brackets the value and sits one step from crossing it.
pub fn assert_correctly_rounded(down: &Endpoint, up: &Endpoint, exact: &Rat, what: &str) {
    assert!(
        cmp_endpoint_rat(down, exact) != Ordering::Greater,
        "{what}: Down result above the exact value"
    );
    assert!(
        cmp_endpoint_rat(up, exact) != Ordering::Less,
        "{what}: Up result below the exact value"
    );
    assert!(
        cmp_endpoint_rat(&down.next_up(), exact) == Ordering::Greater
            || !down.is_finite(),
        "{what}: Down result not the tightest representable"
    );
    assert!(
        cmp_endpoint_rat(&up.next_down(), exact) == Ordering::Less || !up.is_finite(),
        "{what}: Up result not the tightest representable"
    );
}

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants"));
}

/// Point functions the high-precision oracle can evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleFn {
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
    Sqrt,
}

impl OracleFn {
    pub fn name(self) -> &'static str {
        match self {
            OracleFn::Exp => "exp",
            OracleFn::Log => "log",
            OracleFn::Log2 => "log2",
            OracleFn::Log10 => "log10",
            OracleFn::Sin => "sin",
            OracleFn::Cos => "cos",
            OracleFn::Tan => "tan",
            OracleFn::Asin => "asin",
            OracleFn::Acos => "acos",
            OracleFn::Atan => "atan",
            OracleFn::Sinh => "sinh",
            OracleFn::Cosh => "cosh",
            OracleFn::Tanh => "tanh",
            OracleFn::Asinh => "asinh",
            OracleFn::Acosh => "acosh",
            OracleFn::Atanh => "atanh",
            OracleFn::Sqrt => "sqrt",
        }
    }
}

fn astro_of_rat(r: &Rat, prec: usize, rm: RoundingMode) -> AstroFloat {
    let (nsign, numer) = (r.numer().sign(), r.numer().magnitude());
    let num_words: Vec<u64> = numer.to_u64_digits();
    let den_words: Vec<u64> = r.denom().magnitude().to_u64_digits();
    let n = AstroFloat::from_words(
        &num_words,
        if nsign == IntSign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        },
        (num_words.len() * 64) as i32,
    );
    let d = AstroFloat::from_words(&den_words, Sign::Pos, (den_words.len() * 64) as i32);
    n.div(&d, prec, rm)
}

fn rat_of_astro(x: &AstroFloat) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    let (words, prec, sign, exp, _inexact) = x.as_raw_parts().expect("finite oracle value");
    let _ = prec;
    let mut m = BigInt::zero();
    for &w in words.iter().rev() {
        m = (m << 64) | BigInt::from(w);
    }
    let mut r = Rat::from_integer(m) * rat_pow2(exp as i64 - (words.len() as i64) * 64);
    if sign == Sign::Neg {
        r = -r;
    }
    r
}

/// Evaluates `f` at the exact rational `x`, returning rational bounds that
/// bracket the true value at `prec` bits.
pub fn oracle_bracket(f: OracleFn, x: &Rat, prec: usize) -> Option<(Rat, Rat)> {
    let lo = oracle_directed(f, x, prec, RoundingMode::Down)?;
    let hi = oracle_directed(f, x, prec, RoundingMode::Up)?;
    Some((lo, hi))
}

fn oracle_directed(f: OracleFn, x: &Rat, prec: usize, rm: RoundingMode) -> Option<Rat> {
    // The argument conversion must not round; give it enough bits.
    let need = x.numer().bits() + x.denom().bits() + 8;
    let arg_prec = (prec + need as usize).max(prec + 64);
    let arg = astro_of_rat(x, arg_prec, RoundingMode::None);
    let v = CONSTS.with(|cc| {
        let cc = &mut *cc.borrow_mut();
        match f {
            OracleFn::Exp => arg.exp(prec, rm, cc),
            OracleFn::Log => arg.ln(prec, rm, cc),
            OracleFn::Log2 => arg.log2(prec, rm, cc),
            OracleFn::Log10 => arg.log10(prec, rm, cc),
            OracleFn::Sin => arg.sin(prec, rm, cc),
            OracleFn::Cos => arg.cos(prec, rm, cc),
            OracleFn::Tan => arg.tan(prec, rm, cc),
            OracleFn::Asin => arg.asin(prec, rm, cc),
            OracleFn::Acos => arg.acos(prec, rm, cc),
            OracleFn::Atan => arg.atan(prec, rm, cc),
            OracleFn::Sinh => arg.sinh(prec, rm, cc),
            OracleFn::Cosh => arg.cosh(prec, rm, cc),
            OracleFn::Tanh => arg.tanh(prec, rm, cc),
            OracleFn::Asinh => arg.asinh(prec, rm, cc),
            OracleFn::Acosh => arg.acosh(prec, rm, cc),
            OracleFn::Atanh => arg.atanh(prec, rm, cc),
            OracleFn::Sqrt => arg.sqrt(prec, rm),
        }
    });
    if v.is_nan() || v.is_inf() {
        return None;
    }
    Some(rat_of_astro(&v))
}

/// Exact value of pi bracketed at `prec` bits.
pub fn oracle_pi(prec: usize) -> (Rat, Rat) {
    let lo = CONSTS.with(|cc| cc.borrow_mut().pi(prec, RoundingMode::Down));
    let hi = CONSTS.with(|cc| cc.borrow_mut().pi(prec, RoundingMode::Up));
    (rat_of_astro(&lo), rat_of_astro(&hi))
}


/// Approximate f64 of a rational; good to an ulp, for tolerance checks.
pub fn rat_to_f64_lossy(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    if r.is_zero() {
        return 0.0;
    }
    let neg = r.is_negative();
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    let e = n.bits() as i64 - d.bits() as i64;
    let s = 60 - e;
    let (num, den) = if s >= 0 {
        (n << s as u64, d.clone())
    } else {
        (n.clone(), d << (-s) as u64)
    };
    let q = (num / den).to_f64().unwrap_or(f64::INFINITY);
    let v = q * 2f64.powi((-s).clamp(-2000, 2000) as i32);
    if neg {
        -v
    } else {
        v
    }
}

/// True when the interval contains the whole rational bracket [lo, hi].
pub fn contains_bracket(x: &ivl::Interval, lo: &Rat, hi: &Rat) -> bool {
    let Some((a, b)) = x.bounds() else {
        return false;
    };
    cmp_endpoint_rat(a, lo) != Ordering::Greater && cmp_endpoint_rat(b, hi) != Ordering::Less
}
