//! Validated polynomial root finding and the barycentric conditioning
//! machinery built on it.
//!
//! The solver runs the interval Newton contraction `N(X) = m - p(m)/p'(X)`
//! with extended division, bisecting when a step makes no progress. Every
//! returned enclosure provably contains all roots it was refined from;
//! the `unique` flag is set only when a step mapped the box strictly into
//! its own interior with a zero-free derivative, which certifies existence
//! and uniqueness of the root inside.

use crate::arith;
use crate::endpoint::{Endpoint, Precision, Round};
use crate::interval::Interval;
use std::cmp::Ordering;

/// Polynomial with interval coefficients; index k holds the coefficient
/// of `t^k`.
#[derive(Clone, Debug)]
pub struct IntervalPolynomial {
    coeffs: Vec<Interval>,
}

impl IntervalPolynomial {
    pub fn new(coeffs: Vec<Interval>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial needs coefficients");
        IntervalPolynomial { coeffs }
    }

    pub fn from_f64_coeffs(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Interval::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Interval] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// An interval certified to contain every root it was refined from, with
/// a uniqueness certificate when the Newton step contracted strictly.
#[derive(Clone, Debug)]
pub struct RootEnclosure {
    pub interval: Interval,
    pub unique: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NewtonError {
    #[error("box budget exhausted after {max_boxes} boxes")]
    ResourceLimit { max_boxes: usize },
    #[error("invalid solver input: {0}")]
    InvalidInput(&'static str),
}

/// Simultaneous Horner evaluation of the polynomial and its derivative
/// over `t`: `d <- d*t + v; v <- v*t + c_k`.
pub fn horner_eval(p: &IntervalPolynomial, t: &Interval) -> (Interval, Interval) {
    let prec = t.precision();
    let zero = Interval::point(Endpoint::zero(prec)).unwrap();
    let n = p.coeffs.len();
    let mut value = p.coeffs[n - 1].clone();
    let mut deriv = zero;
    for k in (0..n - 1).rev() {
        deriv = arith::add(&arith::mul(&deriv, t), &value);
        value = arith::add(&arith::mul(&value, t), &p.coeffs[k]);
    }
    (value, deriv)
}

/// Default work-list budget.
pub const DEFAULT_MAX_BOXES: usize = 1_000_000;

/// Encloses every root of every coefficient selection of `p` inside
/// `domain`. Enclosures are emitted once their width drops to `tol` and
/// are sorted by lower endpoint; touching enclosures are not merged.
pub fn newton_solve(
    p: &IntervalPolynomial,
    domain: &Interval,
    tol: f64,
    max_boxes: usize,
) -> Result<Vec<RootEnclosure>, NewtonError> {
    if !(tol > 0.0) {
        return Err(NewtonError::InvalidInput("tolerance must be positive"));
    }
    let Some((dlo, dhi)) = domain.bounds() else {
        return Err(NewtonError::InvalidInput("domain must be nonempty"));
    };
    if dlo.is_infinite() || dhi.is_infinite() {
        return Err(NewtonError::InvalidInput("domain must be bounded"));
    }

    let mut work: Vec<(Interval, bool)> = vec![(domain.clone(), false)];
    let mut out: Vec<RootEnclosure> = Vec::new();
    let mut pops = 0usize;

    while let Some((x, inherited_unique)) = work.pop() {
        pops += 1;
        if pops > max_boxes {
            return Err(NewtonError::ResourceLimit { max_boxes });
        }
        let (v_box, d_box) = horner_eval(p, &x);
        if !v_box.contains_zero() {
            continue; // certified root-free
        }
        let width = x.wid().unwrap().to_f64(Round::Up);
        if width <= tol {
            out.push(RootEnclosure {
                interval: x,
                unique: inherited_unique,
            });
            continue;
        }

        let m = x.mid().unwrap();
        let mi = Interval::point(m).expect("midpoint of a bounded box is finite");
        let (v_mid, _) = horner_eval(p, &mi);
        let (piece1, piece2) = arith::div_to_pair(&v_mid, &d_box);
        let step1 = arith::sub(&mi, &piece1);
        let step2 = arith::sub(&mi, &piece2);
        let child1 = step1.intersection(&x);
        let child2 = step2.intersection(&x);

        let single = !child1.is_empty() && child2.is_empty();
        let fresh_certificate = single && !d_box.contains_zero() && step1.interior(&x);

        let mut children: Vec<(Interval, bool)> = Vec::new();
        for child in [child1, child2] {
            if child.is_empty() {
                continue;
            }
            children.push((child, inherited_unique || fresh_certificate));
        }

        match children.len() {
            0 => {}
            1 => {
                let (child, unique) = children.pop().unwrap();
                let cw = child.wid().unwrap().to_f64(Round::Up);
                if cw > width / 2.0 {
                    bisect_into(&child, &mut work, unique);
                } else {
                    work.push((child, unique));
                }
            }
            _ => {
                // The extended division split the box; both pieces go back
                // without certificates of their own.
                for (child, _) in children {
                    work.push((child, false));
                }
            }
        }
    }

    out.sort_by(|a, b| {
        a.interval
            .inf()
            .unwrap()
            .cmp_value(&b.interval.inf().unwrap())
    });
    Ok(out)
}

/// Splits a box at its midpoint (nudged by a quarter width when the
/// midpoint degenerates onto an endpoint). Bisection forfeits any
/// uniqueness certificate, since existence per half is unknown.
fn bisect_into(x: &Interval, work: &mut Vec<(Interval, bool)>, keep_unique: bool) {
    let (lo, hi) = x.bounds().unwrap();
    let mut m = x.mid().unwrap();
    if m.cmp_value(lo) == Ordering::Equal || m.cmp_value(hi) == Ordering::Equal {
        // Degenerate midpoint: offset the split point.
        let quarter = x
            .wid()
            .unwrap()
            .mul(
                &crate::endpoint::from_rational(x.precision(), 1, 4, Round::Down).0,
                Round::Down,
            )
            .unwrap_or_else(|_| Endpoint::zero(x.precision()));
        m = lo.add(&quarter, Round::Up).unwrap_or_else(|_| m.clone());
        if m.cmp_value(lo) == Ordering::Equal || m.cmp_value(hi) != Ordering::Less {
            // The box is a blob of adjacent values; keep it whole.
            work.push((x.clone(), keep_unique));
            return;
        }
    }
    let left = Interval::make(lo.clone(), m.clone()).unwrap();
    let right = Interval::make(m, hi.clone()).unwrap();
    work.push((left, false));
    work.push((right, false));
}

// ---------------------------------------------------------------------------
// Barycentric conditioning machinery.

/// Inputs of the conditioning-ratio evaluation: interpolation nodes,
/// interval weights, and the evaluation point.
#[derive(Clone, Debug)]
pub struct LebesgueProblem {
    nodes: Vec<Endpoint>,
    weights: Vec<Interval>,
    t: Interval,
}

impl LebesgueProblem {
    pub fn new(nodes: Vec<Endpoint>, weights: Vec<Interval>, t: Interval) -> Self {
        assert_eq!(nodes.len(), weights.len(), "one weight per node");
        assert!(nodes.len() >= 2, "at least two nodes");
        let increasing = nodes[0].cmp_value(&nodes[1]) == Ordering::Less;
        for w in nodes.windows(2) {
            let ord = w[0].cmp_value(&w[1]);
            assert!(
                ord == if increasing {
                    Ordering::Less
                } else {
                    Ordering::Greater
                },
                "nodes must be strictly monotone"
            );
        }
        LebesgueProblem { nodes, weights, t }
    }

    pub fn with_point(&self, t: Interval) -> Self {
        LebesgueProblem {
            nodes: self.nodes.clone(),
            weights: self.weights.clone(),
            t,
        }
    }

    pub fn nodes(&self) -> &[Endpoint] {
        &self.nodes
    }

    /// True when the evaluation point touches a node (the ratio then
    /// degenerates by division semantics).
    pub fn t_touches_node(&self) -> bool {
        self.nodes.iter().any(|x| self.t.contains(x))
    }

    /// The conditioning ratio at an explicit point, reusing this
    /// problem's nodes and weights.
    pub fn eval_at(&self, t: &Interval) -> Interval {
        let prec = t.precision();
        let zero = Interval::point(Endpoint::zero(prec)).unwrap();
        let mut numer = zero.clone();
        let mut denom_sum = zero;
        for (x_k, w_k) in self.nodes.iter().zip(&self.weights) {
            let node = Interval::point(x_k.clone()).expect("finite node");
            let diff = arith::sub(t, &node);
            let term = arith::div(w_k, &diff);
            numer = arith::add(&numer, &arith::abs(&term));
            denom_sum = arith::add(&denom_sum, &term);
        }
        arith::div(&numer, &arith::abs(&denom_sum))
    }
}

/// Enclosure of `sum |w_k/(t - x_k)| / |sum w_k/(t - x_k)|`.
pub fn lebesgue_eval(prob: &LebesgueProblem) -> Interval {
    prob.eval_at(&prob.t)
}

/// Extrema-of-cosine nodes on [-1, 1]: `x_k = cos(k pi / (n-1))` for
/// `k = 0..n`, strictly decreasing from 1 to -1. Each node is the nearest
/// value at `prec` to a certified enclosure of the exact point.
pub fn chebyshev_nodes(n: usize, prec: Precision) -> Vec<Endpoint> {
    assert!(n >= 2, "need at least two nodes");
    let work = Precision::Big(prec.bits() + 32);
    let pi = crate::elem::pi_interval(work);
    // Compute the upper half and mirror: the cosine symmetry makes
    // x_{n-1-k} = -x_k, and the middle node of an odd count exactly zero.
    let mut out = vec![Endpoint::zero(prec); n];
    for k in 0..n / 2 {
        let num = arith::mul(
            &pi,
            &Interval::point(crate::endpoint::from_rational(work, k as i64, 1, Round::Down).0)
                .unwrap(),
        );
        let arg = arith::div(
            &num,
            &Interval::point(
                crate::endpoint::from_rational(work, (n - 1) as i64, 1, Round::Down).0,
            )
            .unwrap(),
        );
        let c = crate::elem::cos(&arg);
        let node = c.promote(prec).mid().expect("cosine enclosure is nonempty");
        out[n - 1 - k] = node.neg();
        out[k] = node;
    }
    out
}

/// Alternating-sign weights with halved ends: `w_k = (-1)^k d_k`,
/// `d_k = 1/2` at the two ends and 1 otherwise, as exact point intervals.
pub fn barycentric_weights(n: usize, prec: Precision) -> Vec<Interval> {
    assert!(n >= 2);
    (0..n)
        .map(|k| {
            let (p, q) = if k == 0 || k == n - 1 { (1, 2) } else { (1, 1) };
            let sign = if k % 2 == 0 { 1 } else { -1 };
            Interval::point(crate::endpoint::from_rational(prec, sign * p, q, Round::Down).0)
                .unwrap()
        })
        .collect()
}
