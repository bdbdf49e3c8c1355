//! Set-level properties of the interval arithmetic, checked against exact
//! rational point arithmetic. The acceptance suite reruns the containment
//! fuzz at full scale; these are the per-build versions.

use ivl::{arith, Endpoint, Interval, Precision, Round};
use ivl_testkit::{rat_of_endpoint, rat_of_f64, Rat};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

const SETS: usize = 1500;
const SAMPLES: usize = 16;

fn random_value(rng: &mut ChaCha8Rng) -> f64 {
    match rng.gen_range(0..12u32) {
        0 => 0.0,
        1 => f64::INFINITY,
        2 => f64::NEG_INFINITY,
        3..=6 => rng.gen_range(-100.0..100.0),
        _ => {
            let m: f64 = rng.gen_range(-2.0..2.0);
            m * 2f64.powi(rng.gen_range(-60..60))
        }
    }
}

fn random_interval(rng: &mut ChaCha8Rng) -> Interval {
    loop {
        let a = random_value(rng);
        let b = random_value(rng);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if let Ok(iv) = Interval::from_f64s(lo, hi) {
            return iv;
        }
    }
}

fn bounded_interval(rng: &mut ChaCha8Rng) -> Interval {
    loop {
        let iv = random_interval(rng);
        let (lo, hi) = iv.bounds().unwrap();
        if lo.is_finite() && hi.is_finite() {
            return iv;
        }
    }
}

/// A random finite point of the interval, as an exact f64 member.
fn sample(rng: &mut ChaCha8Rng, x: &Interval) -> f64 {
    let (lo, hi) = x.bounds().unwrap();
    let lo = lo.to_f64(Round::Down).max(-1e300);
    let hi = hi.to_f64(Round::Up).min(1e300);
    let p = match rng.gen_range(0..8u32) {
        0 => lo,
        1 => hi,
        _ => {
            let t: f64 = rng.gen_range(0.0..=1.0);
            lo + t * (hi - lo)
        }
    };
    p.clamp(lo, hi)
}

fn contains_rat(x: &Interval, v: &Rat) -> bool {
    let Some((lo, hi)) = x.bounds() else {
        return false;
    };
    let lo_ok = match rat_of_endpoint(lo) {
        Some(l) => &l <= v,
        None => true, // -inf
    };
    let hi_ok = match rat_of_endpoint(hi) {
        Some(h) => v <= &h,
        None => true, // +inf
    };
    lo_ok && hi_ok
}

#[test]
fn containment_binary_ops() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0117A1);
    for _ in 0..SETS {
        let x = random_interval(&mut rng);
        let y = random_interval(&mut rng);
        let sum = arith::add(&x, &y);
        let dif = arith::sub(&x, &y);
        let prd = arith::mul(&x, &y);
        let quo = arith::div(&x, &y);
        let (p1, p2) = arith::div_to_pair(&x, &y);
        for _ in 0..SAMPLES {
            let a = sample(&mut rng, &x);
            let b = sample(&mut rng, &y);
            let (ra, rb) = (rat_of_f64(a), rat_of_f64(b));
            assert!(contains_rat(&sum, &(&ra + &rb)), "add {a} {b}");
            assert!(contains_rat(&dif, &(&ra - &rb)), "sub {a} {b}");
            assert!(contains_rat(&prd, &(&ra * &rb)), "mul {a} {b}");
            if !rb.is_zero() {
                let q = &ra / &rb;
                assert!(contains_rat(&quo, &q), "div {a} {b}");
                assert!(
                    contains_rat(&p1, &q) || contains_rat(&p2, &q),
                    "div_to_pair {a} {b}"
                );
            }
        }
    }
}

#[test]
fn containment_fma_sqr_pown() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF00D);
    for _ in 0..SETS {
        let x = random_interval(&mut rng);
        let y = random_interval(&mut rng);
        let z = random_interval(&mut rng);
        let fused = arith::fma(&x, &y, &z);
        let squared = arith::sqr(&x);
        let cubed = arith::pown(&x, 3);
        let recip2 = arith::pown(&x, -2);
        let absed = arith::abs(&x);
        for _ in 0..SAMPLES {
            let a = sample(&mut rng, &x);
            let b = sample(&mut rng, &y);
            let c = sample(&mut rng, &z);
            let (ra, rb, rc) = (rat_of_f64(a), rat_of_f64(b), rat_of_f64(c));
            assert!(contains_rat(&fused, &(&ra * &rb + &rc)), "fma {a} {b} {c}");
            assert!(contains_rat(&squared, &(&ra * &ra)), "sqr {a}");
            assert!(contains_rat(&cubed, &(&ra * &ra * &ra)), "pown3 {a}");
            if !ra.is_zero() {
                let r2 = Rat::from_integer(1.into()) / (&ra * &ra);
                assert!(contains_rat(&recip2, &r2), "pown-2 {a}");
            }
            let abs_a = if ra < Rat::zero() { -ra } else { ra };
            assert!(contains_rat(&absed, &abs_a), "abs {a}");
        }
    }
}

#[test]
fn containment_sqrt_via_squares() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x50F7);
    for _ in 0..SETS {
        let x = random_interval(&mut rng);
        let r = arith::sqrt(&x);
        for _ in 0..SAMPLES {
            let a = sample(&mut rng, &x);
            if a < 0.0 {
                continue;
            }
            // sqrt(a) is a member iff r.lo^2 <= a <= r.hi^2.
            let (lo, hi) = r.bounds().expect("nonnegative part was sampled");
            let ra = rat_of_f64(a);
            if let Some(l) = rat_of_endpoint(lo) {
                assert!(&l * &l <= ra, "sqrt lower {a}");
            }
            match rat_of_endpoint(hi) {
                Some(h) => assert!(&h * &h >= ra, "sqrt upper {a}"),
                None => {}
            }
        }
    }
}

/// Endpoints of +,-,*,/ are the correctly rounded set bounds (exact
/// equality against rational corner arithmetic).
#[test]
fn tightness_of_basic_ops() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7168);
    for _ in 0..SETS {
        let x = bounded_interval(&mut rng);
        let y = bounded_interval(&mut rng);
        let corners = |f: &dyn Fn(&Rat, &Rat) -> Rat| -> (Rat, Rat) {
            let (xl, xh) = x.bounds().unwrap();
            let (yl, yh) = y.bounds().unwrap();
            let vals: Vec<Rat> = [(xl, yl), (xl, yh), (xh, yl), (xh, yh)]
                .iter()
                .map(|(a, b)| {
                    f(
                        &rat_of_endpoint(a).unwrap(),
                        &rat_of_endpoint(b).unwrap(),
                    )
                })
                .collect();
            (
                vals.iter().min().unwrap().clone(),
                vals.iter().max().unwrap().clone(),
            )
        };
        let check = |r: &Interval, exact_lo: &Rat, exact_hi: &Rat, what: &str| {
            use ivl_testkit::cmp_endpoint_rat;
            let (lo, hi) = r.bounds().unwrap();
            assert!(
                cmp_endpoint_rat(lo, exact_lo) != Ordering::Greater,
                "{what}: lower bound above the exact set bound"
            );
            assert!(
                cmp_endpoint_rat(&lo.next_up(), exact_lo) == Ordering::Greater,
                "{what}: lower bound not the correctly rounded one"
            );
            assert!(
                cmp_endpoint_rat(hi, exact_hi) != Ordering::Less,
                "{what}: upper bound below the exact set bound"
            );
            assert!(
                cmp_endpoint_rat(&hi.next_down(), exact_hi) == Ordering::Less,
                "{what}: upper bound not the correctly rounded one"
            );
        };
        let (lo, hi) = corners(&|a, b| a + b);
        check(&arith::add(&x, &y), &lo, &hi, "add");
        let (lo, hi) = corners(&|a, b| a - b);
        check(&arith::sub(&x, &y), &lo, &hi, "sub");
        let (lo, hi) = corners(&|a, b| a * b);
        check(&arith::mul(&x, &y), &lo, &hi, "mul");
        if !y.contains_zero() {
            let (lo, hi) = corners(&|a, b| a / b);
            check(&arith::div(&x, &y), &lo, &hi, "div");
        }
    }
}

#[test]
fn algebraic_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1DEA);
    for _ in 0..SETS {
        let x = random_interval(&mut rng);
        let y = random_interval(&mut rng);
        assert!(arith::sub(&x, &y).set_eq(&arith::add(&x, &arith::neg(&y))));
        assert!(arith::sub(&x, &x).contains_zero());
        if !y.contains_zero() && !y.is_empty() && !x.is_empty() {
            let back = arith::mul(&arith::div(&x, &y), &y);
            assert!(x.subset(&back), "div-mul inflation");
        }
    }
}

#[test]
fn cancellation_recovers_addition() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xCA9CE1);
    for _ in 0..SETS {
        let y = bounded_interval(&mut rng);
        let z = bounded_interval(&mut rng);
        let sum = arith::add(&y, &z);
        let (sl, sh) = sum.bounds().unwrap();
        if !sl.is_finite() || !sh.is_finite() {
            continue;
        }
        let rec = arith::cancel_minus(&sum, &y);
        assert!(z.subset(&rec), "cancel_minus must recover the addend");
        if rec.is_entire() {
            continue;
        }
        // Each recovered endpoint drifts by at most the two roundings it
        // went through, i.e. a couple of ulps at the summands' magnitude.
        let (rl, rh) = rec.bounds().unwrap();
        let (zl, zh) = z.bounds().unwrap();
        let (yl, yh) = y.bounds().unwrap();
        let mag = [sl, sh, yl, yh]
            .iter()
            .map(|e| e.to_f64(Round::Up).abs())
            .fold(f64::MIN_POSITIVE, f64::max);
        let tol = 4.0 * f64::EPSILON * mag;
        assert!(
            (rl.to_f64(Round::Down) - zl.to_f64(Round::Down)).abs() <= tol,
            "lower endpoint drift"
        );
        assert!(
            (rh.to_f64(Round::Up) - zh.to_f64(Round::Up)).abs() <= tol,
            "upper endpoint drift"
        );
    }
}

#[test]
fn lattice_laws_and_hull_minimality() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1A77);
    for _ in 0..SETS {
        let x = random_interval(&mut rng);
        let y = random_interval(&mut rng);
        let inter = x.intersection(&y);
        let hull = x.hull(&y);
        assert!(inter.subset(&x) && inter.subset(&y));
        assert!(x.subset(&hull) && y.subset(&hull));

        if let Some((lo, hi)) = hull.bounds() {
            if lo.is_finite() {
                let shrunk = Interval::make(lo.next_up(), hi.clone());
                if let Ok(shrunk) = shrunk {
                    assert!(
                        !(x.subset(&shrunk) && y.subset(&shrunk)),
                        "hull lower endpoint not minimal"
                    );
                }
            }
            if hi.is_finite() {
                let shrunk = Interval::make(lo.clone(), hi.next_down());
                if let Ok(shrunk) = shrunk {
                    assert!(
                        !(x.subset(&shrunk) && y.subset(&shrunk)),
                        "hull upper endpoint not minimal"
                    );
                }
            }
        }
    }
}

#[test]
fn promotion_preserves_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9607);
    for _ in 0..2000 {
        let x = random_interval(&mut rng);
        for target in [Precision::Big(256), Precision::Big(64), Precision::Binary32] {
            let p = x.promote(target);
            let (xl, xh) = x.bounds().unwrap();
            let (pl, ph) = p.bounds().unwrap();
            assert!(pl.cmp_value(xl) != Ordering::Greater);
            assert!(ph.cmp_value(xh) != Ordering::Less);
        }
    }
}

#[test]
fn reverse_soundness_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for _ in 0..SETS {
        let c = random_interval(&mut rng);
        let x0 = random_interval(&mut rng);
        let srev = arith::sqr_rev(&c, &x0);
        let arev = arith::abs_rev(&c, &x0);
        let prev3 = arith::pown_rev(&c, &x0, 3);
        let b0 = random_interval(&mut rng);
        let mrev = arith::mul_rev(&b0, &c, &x0);
        if x0.is_empty() {
            continue;
        }
        for _ in 0..SAMPLES {
            let p = sample(&mut rng, &x0);
            let rp = rat_of_f64(p);
            let e = Endpoint::F64(p);
            if contains_rat(&c, &(&rp * &rp)) {
                assert!(srev.contains(&e), "sqr_rev misses {p}");
            }
            let abs_rp = if rp < Rat::zero() { -rp.clone() } else { rp.clone() };
            if contains_rat(&c, &abs_rp) {
                assert!(arev.contains(&e), "abs_rev misses {p}");
            }
            if contains_rat(&c, &(&rp * &rp * &rp)) {
                assert!(prev3.contains(&e), "pown_rev misses {p}");
            }
            if !b0.is_empty() {
                let b = sample(&mut rng, &b0);
                if contains_rat(&c, &(rat_of_f64(b) * &rp)) {
                    assert!(mrev.contains(&e), "mul_rev misses x={p} b={b}");
                }
            }
        }
    }
}

#[test]
fn bigfloat_interval_ops_contain_rationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB16);
    let prec = Precision::Big(256);
    for _ in 0..500 {
        let x = random_interval(&mut rng).promote(prec);
        let y = random_interval(&mut rng).promote(prec);
        let sum = arith::add(&x, &y);
        let prd = arith::mul(&x, &y);
        for _ in 0..SAMPLES {
            let a = sample(&mut rng, &x);
            let b = sample(&mut rng, &y);
            let (ra, rb) = (rat_of_f64(a), rat_of_f64(b));
            assert!(contains_rat(&sum, &(&ra + &rb)));
            assert!(contains_rat(&prd, &(&ra * &rb)));
        }
    }
}
