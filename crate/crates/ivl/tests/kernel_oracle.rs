//! Directed kernels against an exact rational oracle.
//!
//! For random operand pairs the Down/Up results must be the correctly
//! rounded directed values of the exact real result: sandwich, tightness,
//! and (for inexact results) one-ulp adjacency. The full-scale run lives in
//! the acceptance suite; this is the per-build regression version.

use ivl::{from_rational, Endpoint, Precision, Round};
use ivl_testkit::{assert_correctly_rounded, cmp_endpoint_rat, rat_of_endpoint, Rat};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

const CASES: usize = 4000;

fn random_f64(rng: &mut ChaCha8Rng) -> f64 {
    // Mix of wide-exponent values, ordinary magnitudes, and special values.
    match rng.gen_range(0..10u32) {
        0 => 0.0,
        1 => {
            // Raw bit patterns cover subnormals and extreme exponents.
            loop {
                let x = f64::from_bits(rng.gen::<u64>());
                if !x.is_nan() {
                    return x;
                }
            }
        }
        2..=4 => rng.gen_range(-1e6..1e6),
        _ => {
            let m: f64 = rng.gen_range(-2.0..2.0);
            let e: i32 = rng.gen_range(-80..80);
            m * 2f64.powi(e)
        }
    }
}

fn endpoints_f64(rng: &mut ChaCha8Rng) -> (Endpoint, Endpoint) {
    (
        Endpoint::F64(random_f64(rng)),
        Endpoint::F64(random_f64(rng)),
    )
}

fn random_big(rng: &mut ChaCha8Rng, prec: u32) -> Endpoint {
    let x = random_f64(rng);
    if !x.is_finite() {
        return Endpoint::F64(x).convert(Precision::Big(prec), Round::Down).0;
    }
    // Random mantissa at full precision, random moderate exponent.
    let (v, _) = Endpoint::F64(x).convert(Precision::Big(prec), Round::Down);
    let jitter = from_rational(
        Precision::Big(prec),
        rng.gen::<i64>() >> 12,
        rng.gen_range(1..u64::MAX >> 12),
        Round::Down,
    )
    .0;
    v.add(&jitter, Round::Down).unwrap_or(v)
}

fn exact_binary(op: &str, a: &Rat, b: &Rat) -> Option<Rat> {
    match op {
        "add" => Some(a + b),
        "sub" => Some(a - b),
        "mul" => Some(a * b),
        "div" => {
            if b.is_zero() {
                None
            } else {
                Some(a / b)
            }
        }
        _ => unreachable!(),
    }
}

fn apply(op: &str, a: &Endpoint, b: &Endpoint, dir: Round) -> Result<Endpoint, ivl::KernelError> {
    match op {
        "add" => a.add(b, dir),
        "sub" => a.sub(b, dir),
        "mul" => a.mul(b, dir),
        "div" => a.div(b, dir),
        _ => unreachable!(),
    }
}

fn check_binary_ops(make: impl Fn(&mut ChaCha8Rng) -> (Endpoint, Endpoint), seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for op in ["add", "sub", "mul", "div"] {
        for case in 0..CASES {
            let (a, b) = make(&mut rng);
            let dn = apply(op, &a, &b, Round::Down);
            let up = apply(op, &a, &b, Round::Up);
            let (Some(ra), Some(rb)) = (rat_of_endpoint(&a), rat_of_endpoint(&b)) else {
                // Infinite operands follow extended-real conventions; spot
                // checked in unit tests.
                continue;
            };
            let Some(exact) = exact_binary(op, &ra, &rb) else {
                assert!(dn.is_err() && up.is_err(), "division by zero must error");
                continue;
            };
            let (dn, up) = (dn.unwrap(), up.unwrap());
            assert_correctly_rounded(&dn, &up, &exact, &format!("{op} case {case}"));
        }
    }
}

#[test]
fn binary64_kernels_correctly_rounded() {
    check_binary_ops(endpoints_f64, 0xA11CE);
}

#[test]
fn bigfloat_kernels_correctly_rounded() {
    for prec in [16u32, 53, 64, 128, 256] {
        check_binary_ops(
            |rng| (random_big(rng, prec), random_big(rng, prec)),
            0xB0B + prec as u64,
        );
    }
}

#[test]
fn sqrt_kernels_bracket_squares() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5097);
    for _ in 0..CASES {
        let a = random_f64(&mut rng).abs();
        let e = Endpoint::F64(a);
        let dn = e.sqrt(Round::Down).unwrap();
        let up = e.sqrt(Round::Up).unwrap();
        if !a.is_finite() {
            continue;
        }
        let (rd, ru) = (
            rat_of_endpoint(&dn).unwrap(),
            rat_of_endpoint(&up).unwrap(),
        );
        let ra = rat_of_endpoint(&e).unwrap();
        assert!(&rd * &rd <= ra && ra <= &ru * &ru, "sqrt bracket");
        if rd != ru {
            assert_eq!(
                cmp_endpoint_rat(&dn.next_up(), &rat_of_endpoint(&up).unwrap()),
                Ordering::Equal,
                "sqrt adjacency"
            );
        }
    }
}

#[test]
fn fma_kernel_correctly_rounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF41A);
    for case in 0..CASES {
        let (a, b) = endpoints_f64(&mut rng);
        let c = Endpoint::F64(random_f64(&mut rng));
        let dn = a.fma(&b, &c, Round::Down);
        let up = a.fma(&b, &c, Round::Up);
        let (Some(ra), Some(rb), Some(rc)) = (
            rat_of_endpoint(&a),
            rat_of_endpoint(&b),
            rat_of_endpoint(&c),
        ) else {
            continue;
        };
        let exact = &ra * &rb + &rc;
        assert_correctly_rounded(
            &dn.unwrap(),
            &up.unwrap(),
            &exact,
            &format!("fma case {case}"),
        );
    }
}

#[test]
fn rational_conversion_correctly_rounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FE);
    for prec in [Precision::Binary32, Precision::Binary64, Precision::Big(96)] {
        for _ in 0..CASES {
            let p: i64 = rng.gen();
            let q: u64 = rng.gen_range(1..u64::MAX);
            let (dn, dn_exact) = from_rational(prec, p, q, Round::Down);
            let (up, up_exact) = from_rational(prec, p, q, Round::Up);
            let exact = Rat::new(p.into(), q.into());
            assert_correctly_rounded(&dn, &up, &exact, "from_rational");
            assert_eq!(dn_exact, up_exact);
            assert_eq!(dn_exact, rat_of_endpoint(&dn) == Some(exact));
        }
    }
}

