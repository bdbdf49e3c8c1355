//! Elementary functions against an independent high-precision oracle.
//!
//! Containment: oracle point values must land inside interval results.
//! Tightness: result endpoints sit within two ulps of the correctly
//! rounded image bounds. The acceptance suite reruns containment at full
//! scale; this file is the per-build cross-validation.

use ivl::{elem, ElemFn, Interval, Round};
use ivl_testkit::{contains_bracket, oracle_bracket, rat_of_f64, OracleFn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn oracle_of(f: ElemFn) -> OracleFn {
    match f {
        ElemFn::Exp => OracleFn::Exp,
        ElemFn::Log => OracleFn::Log,
        ElemFn::Log2 => OracleFn::Log2,
        ElemFn::Log10 => OracleFn::Log10,
        ElemFn::Sin => OracleFn::Sin,
        ElemFn::Cos => OracleFn::Cos,
        ElemFn::Tan => OracleFn::Tan,
        ElemFn::Asin => OracleFn::Asin,
        ElemFn::Acos => OracleFn::Acos,
        ElemFn::Atan => OracleFn::Atan,
        ElemFn::Sinh => OracleFn::Sinh,
        ElemFn::Cosh => OracleFn::Cosh,
        ElemFn::Tanh => OracleFn::Tanh,
        ElemFn::Asinh => OracleFn::Asinh,
        ElemFn::Acosh => OracleFn::Acosh,
        ElemFn::Atanh => OracleFn::Atanh,
    }
}

/// Sample domain per function, wide enough to exercise reductions.
fn domain_of(f: ElemFn) -> (f64, f64) {
    match f {
        ElemFn::Asin | ElemFn::Acos | ElemFn::Atanh => (-1.0, 1.0),
        ElemFn::Log | ElemFn::Log2 | ElemFn::Log10 => (1e-9, 1e3),
        ElemFn::Acosh => (1.0, 1e3),
        ElemFn::Exp | ElemFn::Sinh | ElemFn::Cosh => (-500.0, 500.0),
        _ => (-1e3, 1e3),
    }
}

fn rand_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let t: f64 = rng.gen_range(0.0..=1.0);
    lo + t * (hi - lo)
}

fn bounds_f64(x: &Interval) -> (f64, f64) {
    let (a, b) = x.bounds().unwrap();
    (a.to_f64(Round::Down), b.to_f64(Round::Up))
}

fn ulps(a: f64, b: f64) -> u64 {
    if a == b {
        0
    } else {
        a.to_bits().abs_diff(b.to_bits())
    }
}

const INTERVALS: usize = 250;
const POINTS: usize = 12;
const ORACLE_BITS: usize = 192;

#[test]
fn containment_against_oracle() {
    for f in ElemFn::ALL {
        let of = oracle_of(f);
        let (dlo, dhi) = domain_of(f);
        let mut rng = ChaCha8Rng::seed_from_u64(0xE1E & (f as u64) << 8 | 0x11);
        for _ in 0..INTERVALS {
            let a = rand_in(&mut rng, dlo, dhi);
            let w = rng.gen_range(0.0..2.0f64).powi(3);
            let b = (a + w).min(dhi);
            let x = Interval::from_f64s(a, b).unwrap();
            let r = f.apply(&x);
            for i in 0..POINTS {
                let p = match i {
                    0 => a,
                    1 => b,
                    _ => rand_in(&mut rng, a, b),
                };
                let Some((olo, ohi)) = oracle_bracket(of, &rat_of_f64(p), ORACLE_BITS) else {
                    continue; // outside the oracle's domain view
                };
                assert!(
                    contains_bracket(&r, &olo, &ohi),
                    "{} not contained for {}({p}) in {:?}",
                    f.name(),
                    f.name(),
                    bounds_f64(&r),
                );
            }
        }
    }
}

#[test]
fn tightness_against_oracle() {
    // Monotone functions: the image bounds sit at the operand endpoints.
    for f in ElemFn::ALL {
        if matches!(f, ElemFn::Sin | ElemFn::Cos | ElemFn::Tan) {
            continue;
        }
        let of = oracle_of(f);
        let (dlo, dhi) = domain_of(f);
        let mut rng = ChaCha8Rng::seed_from_u64(0x7168 ^ (f as u64) << 16);
        for _ in 0..INTERVALS {
            let a = rand_in(&mut rng, dlo, dhi);
            let b = rand_in(&mut rng, a, dhi.min(a + 10.0));
            let x = Interval::from_f64s(a, b).unwrap();
            let r = f.apply(&x);
            if r.is_empty() {
                continue;
            }
            let (rl, rh) = bounds_f64(&r);
            let (ea, eb) = (oracle_bracket(of, &rat_of_f64(a), ORACLE_BITS), {
                oracle_bracket(of, &rat_of_f64(b), ORACLE_BITS)
            });
            let (Some(ea), Some(eb)) = (ea, eb) else {
                continue;
            };
            // Image bounds as f64 brackets (the rational bound is within
            // one oracle ulp, far below an f64 ulp at these widths).
            let vals = [
                ivl_testkit::rat_to_f64_lossy(&ea.0),
                ivl_testkit::rat_to_f64_lossy(&eb.0),
            ];
            let lo_true = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi_true = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            assert!(
                ulps(rl, lo_true) <= 2,
                "{}: lower endpoint {rl} vs {lo_true}",
                f.name()
            );
            assert!(
                ulps(rh, hi_true) <= 2,
                "{}: upper endpoint {rh} vs {hi_true}",
                f.name()
            );
        }
    }
}

#[test]
fn trig_tightness_and_extrema() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51CC);
    for _ in 0..INTERVALS {
        let a = rand_in(&mut rng, -1e3, 1e3);
        let b = a + rng.gen_range(0.0..6.0);
        let x = Interval::from_f64s(a, b).unwrap();
        for (f, of) in [(ElemFn::Sin, OracleFn::Sin), (ElemFn::Cos, OracleFn::Cos)] {
            let r = f.apply(&x);
            let (rl, rh) = bounds_f64(&r);
            assert!((-1.0..=1.0).contains(&rl) && (-1.0..=1.0).contains(&rh));
            // Endpoint values from the oracle; interior extrema are exact.
            let va = ivl_testkit::rat_to_f64_lossy(&oracle_bracket(of, &rat_of_f64(a), 192).unwrap().0);
            let vb = ivl_testkit::rat_to_f64_lossy(&oracle_bracket(of, &rat_of_f64(b), 192).unwrap().0);
            let lo_end = va.min(vb);
            let hi_end = va.max(vb);
            assert!(rl <= lo_end + 1e-15 && rh >= hi_end - 1e-15);
            if rh < 1.0 {
                assert!(ulps(rh, hi_end) <= 2, "{}: sup {rh} vs {hi_end}", f.name());
            }
            if rl > -1.0 {
                assert!(ulps(rl, lo_end) <= 2, "{}: inf {rl} vs {lo_end}", f.name());
            }
        }
    }
    // A maximizer inside the operand pins the supremum at one.
    let r = elem::sin(&Interval::from_f64s(1.5, 1.6).unwrap());
    assert_eq!(bounds_f64(&r).1, 1.0);
    let r = elem::cos(&Interval::from_f64s(3.0, 3.3).unwrap());
    assert_eq!(bounds_f64(&r).0, -1.0);
}

#[test]
fn large_argument_reduction_sin() {
    // Exactly representable huge arguments still reduce tightly.
    for exp10 in [10, 15, 100, 300] {
        let x = 10f64.powi(exp10);
        let r = elem::sin(&Interval::from_f64s(x, x).unwrap());
        let (rl, rh) = bounds_f64(&r);
        assert!(ulps(rl, rh) <= 4, "width at 1e{exp10}: {rl}..{rh}");
        let (olo, ohi) = oracle_bracket(OracleFn::Sin, &rat_of_f64(x), 256).unwrap();
        assert!(contains_bracket(&r, &olo, &ohi), "containment at 1e{exp10}");
    }
}

#[test]
fn pow_against_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9049);
    for _ in 0..400 {
        let xl = rand_in(&mut rng, 0.01, 50.0);
        let xh = xl + rng.gen_range(0.0..5.0);
        let yl = rand_in(&mut rng, -8.0, 8.0);
        let yh = yl + rng.gen_range(0.0..2.0);
        let x = Interval::from_f64s(xl, xh).unwrap();
        let y = Interval::from_f64s(yl, yh).unwrap();
        let r = elem::pow_interval(&x, &y);
        for _ in 0..8 {
            let a = rand_in(&mut rng, xl, xh);
            let t = rand_in(&mut rng, yl, yh);
            // a^t = exp(t ln a) through the oracle.
            let ln_a = oracle_bracket(OracleFn::Log, &rat_of_f64(a), 224).unwrap();
            let prod = rat_of_f64(t) * ln_a.0;
            let v = oracle_bracket(OracleFn::Exp, &prod, 224).unwrap();
            assert!(
                contains_bracket(&r, &v.0, &v.1),
                "pow({a},{t}) escaped {:?}",
                bounds_f64(&r)
            );
        }
    }
}

#[test]
fn trig_reverse_soundness() {
    use ivl::arith;
    let mut rng = ChaCha8Rng::seed_from_u64(0x4E7);
    for _ in 0..300 {
        let cl = rand_in(&mut rng, -1.2, 1.2);
        let c = Interval::from_f64s(cl, cl + rng.gen_range(0.0..0.5)).unwrap();
        let xl = rand_in(&mut rng, -50.0, 50.0);
        let x0 = Interval::from_f64s(xl, xl + rng.gen_range(0.0..30.0)).unwrap();
        let srev = arith::sin_rev(&c, &x0);
        let crev = arith::cos_rev(&c, &x0);
        let trev = arith::tan_rev(&c, &x0);
        let chrev = arith::cosh_rev(&c, &x0);
        let (l0, h0) = bounds_f64(&x0);
        for _ in 0..16 {
            let p = rand_in(&mut rng, l0, h0);
            let rp = rat_of_f64(p);
            let e = ivl::Endpoint::F64(p);
            let sin_p = oracle_bracket(OracleFn::Sin, &rp, 160).unwrap();
            if contains_bracket(&c, &sin_p.0, &sin_p.1) {
                assert!(srev.contains(&e), "sin_rev misses {p}");
            }
            let cos_p = oracle_bracket(OracleFn::Cos, &rp, 160).unwrap();
            if contains_bracket(&c, &cos_p.0, &cos_p.1) {
                assert!(crev.contains(&e), "cos_rev misses {p}");
            }
            let tan_p = oracle_bracket(OracleFn::Tan, &rp, 160);
            if let Some(tan_p) = tan_p {
                if contains_bracket(&c, &tan_p.0, &tan_p.1) {
                    assert!(trev.contains(&e), "tan_rev misses {p}");
                }
            }
            let cosh_p = oracle_bracket(OracleFn::Cosh, &rp, 160).unwrap();
            if contains_bracket(&c, &cosh_p.0, &cosh_p.1) {
                assert!(chrev.contains(&e), "cosh_rev misses {p}");
            }
        }
    }
}
