//! The interval value type: `[lo, hi]` over the extended reals with
//! `-inf <= lo <= hi <= +inf`, or the empty set. An interval's endpoints
//! share a precision; the empty set still carries one so that promotion
//! and formatting stay total.

use crate::endpoint::{self, Endpoint, Precision, Round};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("invalid interval endpoints: {0}")]
    InvalidEndpoints(&'static str),
}

#[derive(Clone, Debug)]
enum Repr {
    Empty(Precision),
    Bounds(Endpoint, Endpoint),
}

/// A closed connected subset of the extended reals, or the empty set.
#[derive(Clone, Debug)]
pub struct Interval {
    repr: Repr,
}

/// The sixteen positional relations between two intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverlapState {
    BothEmpty,
    FirstEmpty,
    SecondEmpty,
    Before,
    Meets,
    Overlaps,
    Starts,
    ContainedBy,
    Finishes,
    Equals,
    FinishedBy,
    Contains,
    StartedBy,
    OverlappedBy,
    MetBy,
    After,
}

impl OverlapState {
    /// The state of the pair with its arguments swapped.
    pub fn transpose(self) -> OverlapState {
        use OverlapState::*;
        match self {
            BothEmpty => BothEmpty,
            FirstEmpty => SecondEmpty,
            SecondEmpty => FirstEmpty,
            Before => After,
            Meets => MetBy,
            Overlaps => OverlappedBy,
            Starts => StartedBy,
            ContainedBy => Contains,
            Finishes => FinishedBy,
            Equals => Equals,
            FinishedBy => Finishes,
            Contains => ContainedBy,
            StartedBy => Starts,
            OverlappedBy => Overlaps,
            MetBy => Meets,
            After => Before,
        }
    }
}

impl Interval {
    /// Builds `[lo, hi]`, promoting mixed precisions to the widest one.
    pub fn make(lo: Endpoint, hi: Endpoint) -> Result<Interval, IntervalError> {
        if lo.is_nan() || hi.is_nan() {
            return Err(IntervalError::InvalidEndpoints("NaN endpoint"));
        }
        let common = lo.precision().widest(hi.precision());
        let lo = lo.convert(common, Round::Down).0;
        let hi = hi.convert(common, Round::Up).0;
        if lo.cmp_value(&hi) == Ordering::Greater {
            return Err(IntervalError::InvalidEndpoints(
                "lower endpoint above upper",
            ));
        }
        if lo.is_infinite() && lo.sign() == Ordering::Greater {
            return Err(IntervalError::InvalidEndpoints("lower endpoint is +inf"));
        }
        if hi.is_infinite() && hi.sign() == Ordering::Less {
            return Err(IntervalError::InvalidEndpoints("upper endpoint is -inf"));
        }
        Ok(Interval {
            repr: Repr::Bounds(lo, hi),
        })
    }

    pub fn from_f64s(lo: f64, hi: f64) -> Result<Interval, IntervalError> {
        Interval::make(Endpoint::F64(lo), Endpoint::F64(hi))
    }

    /// The point interval `[v, v]`; infinite values are rejected.
    pub fn point(v: Endpoint) -> Result<Interval, IntervalError> {
        Interval::make(v.clone(), v)
    }

    /// Tightest interval around the rational p/q at the given precision.
    pub fn from_rational(prec: Precision, p: i64, q: u64) -> Interval {
        let (lo, _) = endpoint::from_rational(prec, p, q, Round::Down);
        let (hi, _) = endpoint::from_rational(prec, p, q, Round::Up);
        Interval {
            repr: Repr::Bounds(lo, hi),
        }
    }

    pub fn empty(prec: Precision) -> Interval {
        Interval {
            repr: Repr::Empty(prec),
        }
    }

    pub fn entire(prec: Precision) -> Interval {
        Interval {
            repr: Repr::Bounds(Endpoint::neg_inf(prec), Endpoint::pos_inf(prec)),
        }
    }

    pub(crate) fn from_bounds_unchecked(lo: Endpoint, hi: Endpoint) -> Interval {
        debug_assert_eq!(lo.precision(), hi.precision());
        debug_assert!(lo.cmp_value(&hi) != Ordering::Greater);
        Interval {
            repr: Repr::Bounds(lo, hi),
        }
    }

    pub fn precision(&self) -> Precision {
        match &self.repr {
            Repr::Empty(p) => *p,
            Repr::Bounds(lo, _) => lo.precision(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.repr, Repr::Empty(_))
    }

    pub fn is_entire(&self) -> bool {
        match &self.repr {
            Repr::Empty(_) => false,
            Repr::Bounds(lo, hi) => lo.is_infinite() && hi.is_infinite(),
        }
    }

    /// Both endpoints, when nonempty.
    pub fn bounds(&self) -> Option<(&Endpoint, &Endpoint)> {
        match &self.repr {
            Repr::Empty(_) => None,
            Repr::Bounds(lo, hi) => Some((lo, hi)),
        }
    }

    pub fn inf(&self) -> Option<Endpoint> {
        self.bounds().map(|(lo, _)| lo.clone())
    }

    pub fn sup(&self) -> Option<Endpoint> {
        self.bounds().map(|(_, hi)| hi.clone())
    }

    /// Midpoint rounded to nearest; 0 for the entire line, the outermost
    /// finite value for half-infinite intervals.
    pub fn mid(&self) -> Option<Endpoint> {
        let (lo, hi) = self.bounds()?;
        let prec = self.precision();
        Some(match (lo.is_finite(), hi.is_finite()) {
            (true, true) => endpoint::midpoint_nearest(lo, hi, prec),
            (false, false) => Endpoint::zero(prec),
            (false, true) => endpoint::max_finite(prec).neg(),
            (true, false) => endpoint::max_finite(prec),
        })
    }

    /// Upper bound of the width `hi - lo`.
    pub fn wid(&self) -> Option<Endpoint> {
        let (lo, hi) = self.bounds()?;
        Some(match hi.sub(lo, Round::Up) {
            Ok(w) => w,
            // Entire: both endpoints infinite.
            Err(_) => Endpoint::pos_inf(self.precision()),
        })
    }

    /// Smallest representable radius covering the interval from `mid`.
    pub fn rad(&self) -> Option<Endpoint> {
        let m = self.mid()?;
        let (lo, hi) = self.bounds()?;
        let inf = Endpoint::pos_inf(self.precision());
        let left = m.sub(lo, Round::Up).unwrap_or_else(|_| inf.clone());
        let right = hi.sub(&m, Round::Up).unwrap_or(inf);
        Some(left.max_value(right))
    }

    /// Largest absolute value of the set.
    pub fn mag(&self) -> Option<Endpoint> {
        let (lo, hi) = self.bounds()?;
        Some(lo.abs().max_value(hi.abs()))
    }

    /// Smallest absolute value of the set.
    pub fn mig(&self) -> Option<Endpoint> {
        let (lo, hi) = self.bounds()?;
        if self.contains_zero() {
            return Some(Endpoint::zero(self.precision()));
        }
        Some(lo.abs().min_value(hi.abs()))
    }

    /// Membership of a point; NaN is never a member.
    pub fn contains(&self, p: &Endpoint) -> bool {
        if p.is_nan() {
            return false;
        }
        match self.bounds() {
            None => false,
            Some((lo, hi)) => {
                lo.cmp_value(p) != Ordering::Greater && hi.cmp_value(p) != Ordering::Less
            }
        }
    }

    pub fn contains_zero(&self) -> bool {
        match self.bounds() {
            None => false,
            Some((lo, hi)) => lo.sign() != Ordering::Greater && hi.sign() != Ordering::Less,
        }
    }

    pub fn subset(&self, other: &Interval) -> bool {
        match (self.bounds(), other.bounds()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((a1, a2)), Some((b1, b2))) => {
                b1.cmp_value(a1) != Ordering::Greater && a2.cmp_value(b2) != Ordering::Greater
            }
        }
    }

    /// Containment in the topological interior (with the convention that an
    /// infinite bound is interior to the same infinite bound).
    pub fn interior(&self, other: &Interval) -> bool {
        match (self.bounds(), other.bounds()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((a1, a2)), Some((b1, b2))) => {
                let left = b1.cmp_value(a1) == Ordering::Less
                    || (b1.is_infinite() && b1.sign() == Ordering::Less);
                let right = a2.cmp_value(b2) == Ordering::Less
                    || (b2.is_infinite() && b2.sign() == Ordering::Greater);
                left && right
            }
        }
    }

    pub fn disjoint(&self, other: &Interval) -> bool {
        match (self.bounds(), other.bounds()) {
            (None, _) | (_, None) => true,
            (Some((a1, a2)), Some((b1, b2))) => {
                a2.cmp_value(b1) == Ordering::Less || b2.cmp_value(a1) == Ordering::Less
            }
        }
    }

    /// Set equality (precision tags are ignored).
    pub fn set_eq(&self, other: &Interval) -> bool {
        match (self.bounds(), other.bounds()) {
            (None, None) => true,
            (Some((a1, a2)), Some((b1, b2))) => {
                a1.cmp_value(b1) == Ordering::Equal && a2.cmp_value(b2) == Ordering::Equal
            }
            _ => false,
        }
    }

    /// Exact set intersection at the widest operand precision.
    pub fn intersection(&self, other: &Interval) -> Interval {
        let common = self.precision().widest(other.precision());
        let (x, y) = (self.promote(common), other.promote(common));
        match (x.bounds(), y.bounds()) {
            (None, _) | (_, None) => Interval::empty(common),
            (Some((a1, a2)), Some((b1, b2))) => {
                let lo = a1.clone().max_value(b1.clone());
                let hi = a2.clone().min_value(b2.clone());
                if lo.cmp_value(&hi) == Ordering::Greater {
                    Interval::empty(common)
                } else {
                    Interval::from_bounds_unchecked(lo, hi)
                }
            }
        }
    }

    /// Tightest interval containing both operands, at the widest precision.
    pub fn hull(&self, other: &Interval) -> Interval {
        let common = self.precision().widest(other.precision());
        let (x, y) = (self.promote(common), other.promote(common));
        match (x.bounds(), y.bounds()) {
            (None, _) => y.clone(),
            (_, None) => x.clone(),
            (Some((a1, a2)), Some((b1, b2))) => Interval::from_bounds_unchecked(
                a1.clone().min_value(b1.clone()),
                a2.clone().max_value(b2.clone()),
            ),
        }
    }

    /// Directed conversion of the whole set into another precision; the
    /// result always contains `self`, exactly when widening.
    pub fn promote(&self, target: Precision) -> Interval {
        if self.precision() == target {
            return self.clone();
        }
        match self.bounds() {
            None => Interval::empty(target),
            Some((lo, hi)) => Interval::from_bounds_unchecked(
                lo.convert(target, Round::Down).0,
                hi.convert(target, Round::Up).0,
            ),
        }
    }

    /// Promotes both operands to their common (widest) precision.
    pub fn promoted_pair(&self, other: &Interval) -> (Interval, Interval) {
        let common = self.precision().widest(other.precision());
        (self.promote(common), other.promote(common))
    }

    /// The positional relation between two intervals.
    pub fn overlap(&self, other: &Interval) -> OverlapState {
        use OverlapState::*;
        let (a, b) = match (self.bounds(), other.bounds()) {
            (None, None) => return BothEmpty,
            (None, Some(_)) => return FirstEmpty,
            (Some(_), None) => return SecondEmpty,
            (Some(a), Some(b)) => (a, b),
        };
        let (a1, a2, b1, b2) = (a.0, a.1, b.0, b.1);
        let c11 = a1.cmp_value(b1);
        let c12 = a1.cmp_value(b2);
        let c21 = a2.cmp_value(b1);
        let c22 = a2.cmp_value(b2);
        if c21 == Ordering::Less {
            return Before;
        }
        if c12 == Ordering::Greater {
            return After;
        }
        if c11 == Ordering::Less && c21 == Ordering::Equal && c22 == Ordering::Less {
            return Meets;
        }
        if c11 == Ordering::Greater && c12 == Ordering::Equal && c22 == Ordering::Greater {
            return MetBy;
        }
        match (c11, c22) {
            (Ordering::Equal, Ordering::Equal) => Equals,
            (Ordering::Equal, Ordering::Less) => Starts,
            (Ordering::Equal, Ordering::Greater) => StartedBy,
            (Ordering::Greater, Ordering::Equal) => Finishes,
            (Ordering::Less, Ordering::Equal) => FinishedBy,
            (Ordering::Greater, Ordering::Less) => ContainedBy,
            (Ordering::Less, Ordering::Greater) => Contains,
            (Ordering::Less, Ordering::Less) => Overlaps,
            (Ordering::Greater, Ordering::Greater) => OverlappedBy,
        }
    }
}

/// Left fold of binary hull over any number of operands; empty input is the
/// empty set at the given precision.
pub fn hull_all(prec: Precision, items: &[Interval]) -> Interval {
    items
        .iter()
        .fold(Interval::empty(prec), |acc, x| acc.hull(x))
}

/// Left fold of binary intersection; empty input is the entire line.
pub fn intersection_all(prec: Precision, items: &[Interval]) -> Interval {
    items
        .iter()
        .fold(Interval::entire(prec), |acc, x| acc.intersection(x))
}

impl From<f64> for Interval {
    /// The point interval `[x, x]`; f64 values are exactly representable.
    fn from(x: f64) -> Interval {
        Interval::point(Endpoint::F64(x)).expect("finite point interval")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endpoint::from_rational;

    fn ivl(lo: f64, hi: f64) -> Interval {
        Interval::from_f64s(lo, hi).unwrap()
    }

    fn f(e: Option<Endpoint>) -> f64 {
        e.unwrap().to_f64(Round::Down)
    }

    #[test]
    fn construction_rules() {
        assert!(Interval::from_f64s(2.0, 3.0).is_ok());
        assert!(Interval::from_f64s(3.0, 2.0).is_err());
        assert!(Interval::from_f64s(f64::NAN, 2.0).is_err());
        assert!(Interval::from_f64s(f64::INFINITY, f64::INFINITY).is_err());
        assert!(Interval::from_f64s(f64::NEG_INFINITY, f64::NEG_INFINITY).is_err());
        let entire = Interval::from_f64s(f64::NEG_INFINITY, f64::INFINITY).unwrap();
        assert!(entire.is_entire());
        assert!(Interval::point(Endpoint::F64(f64::INFINITY)).is_err());
    }

    #[test]
    fn numeric_functions() {
        let x = ivl(1.0, 2.0);
        assert_eq!(f(x.mid()), 1.5);
        assert_eq!(f(x.wid()), 1.0);
        assert_eq!(f(x.rad()), 0.5);
        let y = ivl(-3.0, 2.0);
        assert_eq!(f(y.mag()), 3.0);
        assert_eq!(f(y.mig()), 0.0);
        assert_eq!(f(ivl(-3.0, -2.0).mig()), 2.0);

        let prec = Precision::Binary64;
        assert_eq!(f(Interval::entire(prec).mid()), 0.0);
        assert!(Interval::empty(prec).mid().is_none());
        assert_eq!(
            f(Interval::make(Endpoint::neg_inf(prec), Endpoint::F64(5.0))
                .unwrap()
                .mid()),
            -f64::MAX
        );
        assert_eq!(
            f(Interval::make(Endpoint::F64(5.0), Endpoint::pos_inf(prec))
                .unwrap()
                .mid()),
            f64::MAX
        );
        assert_eq!(f(Interval::entire(prec).wid()), f64::INFINITY);

        // Ties round to even: mid([1, 1+ulp]) = 1.
        let x = ivl(1.0, 1.0 + f64::EPSILON);
        assert_eq!(f(x.mid()), 1.0);
        // Midpoint of a huge symmetric interval must not overflow.
        let x = ivl(-f64::MAX, f64::MAX);
        assert_eq!(f(x.mid()), 0.0);
        assert_eq!(f(x.rad()), f64::MAX);
        assert_eq!(f(x.wid()), f64::INFINITY);
    }

    #[test]
    fn predicates() {
        let e = Interval::empty(Precision::Binary64);
        assert!(ivl(1.0, 2.0).subset(&ivl(0.0, 3.0)));
        assert!(!ivl(1.0, 2.0).interior(&ivl(1.0, 3.0)));
        assert!(ivl(1.0, 2.0).interior(&ivl(0.0, 3.0)));
        assert!(e.interior(&ivl(1.0, 2.0)));
        assert!(e.disjoint(&Interval::entire(Precision::Binary64)));
        assert!(ivl(1.0, 2.0).interior(&Interval::entire(Precision::Binary64)));
        assert!(ivl(1.0, 2.0).contains(&Endpoint::F64(1.5)));
        assert!(!ivl(1.0, 2.0).contains(&Endpoint::F64(f64::NAN)));
        assert!(Interval::entire(Precision::Binary64).contains(&Endpoint::F64(f64::INFINITY)));
        assert!(ivl(1.0, 2.0).set_eq(&ivl(1.0, 2.0)));
        assert!(!ivl(1.0, 2.0).set_eq(&e));
    }

    #[test]
    fn set_operations() {
        assert!(ivl(1.0, 3.0).intersection(&ivl(2.0, 5.0)).set_eq(&ivl(2.0, 3.0)));
        assert!(ivl(1.0, 2.0).intersection(&ivl(3.0, 4.0)).is_empty());
        assert!(ivl(1.0, 2.0).hull(&ivl(4.0, 5.0)).set_eq(&ivl(1.0, 5.0)));
        assert!(Interval::empty(Precision::Binary64)
            .hull(&ivl(1.0, 2.0))
            .set_eq(&ivl(1.0, 2.0)));

        // Widening promotion is exact, so mixed-precision intersection is too.
        let wide = ivl(0.5, 4.0).promote(Precision::Big(256));
        let got = ivl(-1.0, 2.0).intersection(&wide);
        assert_eq!(got.precision(), Precision::Big(256));
        assert!(got.set_eq(&ivl(0.5, 2.0)));

        let h = hull_all(
            Precision::Binary64,
            &[ivl(-1.0, 2.0), Interval::from(0.3)],
        );
        assert!(h.set_eq(&ivl(-1.0, 2.0)));
    }

    #[test]
    fn promotion_containment() {
        let x = ivl(1.0, 2.0);
        let up = x.promote(Precision::Big(256));
        assert!(x.set_eq(&up));

        let third = Interval::from_rational(Precision::Big(256), 1, 3);
        let down = third.promote(Precision::Binary64);
        assert!(third.subset(&down));
        assert_eq!(down.inf().unwrap().to_f64(Round::Down), 1.0 / 3.0);
        assert!(Interval::empty(Precision::Big(256))
            .promote(Precision::Binary64)
            .is_empty());

        let (lo, _) = from_rational(Precision::Binary64, 1, 3, Round::Down);
        let (hi, _) = from_rational(Precision::Binary64, 2, 3, Round::Up);
        let narrow = Interval::make(lo, hi).unwrap();
        assert!(narrow.promote(Precision::Big(256)).set_eq(&narrow));
    }

    /// Direct transcription of the sixteen state definitions, on f64 bounds.
    fn classify_reference(a: Option<(f64, f64)>, b: Option<(f64, f64)>) -> OverlapState {
        use OverlapState::*;
        let (a, b) = match (a, b) {
            (None, None) => return BothEmpty,
            (None, Some(_)) => return FirstEmpty,
            (Some(_), None) => return SecondEmpty,
            (Some(a), Some(b)) => (a, b),
        };
        let (a1, a2) = a;
        let (b1, b2) = b;
        if a2 < b1 {
            Before
        } else if a1 < b1 && a2 == b1 && a2 < b2 {
            Meets
        } else if a1 < b1 && b1 < a2 && a2 < b2 {
            Overlaps
        } else if a1 == b1 && a2 < b2 {
            Starts
        } else if b1 < a1 && a2 < b2 {
            ContainedBy
        } else if b1 < a1 && a2 == b2 {
            Finishes
        } else if a1 == b1 && a2 == b2 {
            Equals
        } else if a1 < b1 && a2 == b2 {
            FinishedBy
        } else if a1 < b1 && b2 < a2 {
            Contains
        } else if a1 == b1 && b2 < a2 {
            StartedBy
        } else if b1 < a1 && a1 < b2 && b2 < a2 {
            OverlappedBy
        } else if b1 < a1 && a1 == b2 && b2 < a2 {
            MetBy
        } else {
            assert!(a1 > b2);
            After
        }
    }

    #[test]
    fn overlap_examples() {
        use OverlapState::*;
        assert_eq!(ivl(1.0, 2.0).overlap(&ivl(1.0, 2.0)), Equals);
        assert_eq!(ivl(1.0, 2.0).overlap(&ivl(3.0, 4.0)), Before);
        assert_eq!(ivl(1.0, 2.0).overlap(&ivl(2.0, 4.0)), Meets);
    }

    #[test]
    fn overlap_matches_brute_force_exhaustively() {
        let values = [-1.0, 0.0, 1.0, 2.0];
        let mut cases: Vec<Option<(f64, f64)>> = vec![None];
        for &lo in &values {
            for &hi in &values {
                if lo <= hi {
                    cases.push(Some((lo, hi)));
                }
            }
        }
        for &a in &cases {
            for &b in &cases {
                let ia = a.map_or(Interval::empty(Precision::Binary64), |(l, h)| ivl(l, h));
                let ib = b.map_or(Interval::empty(Precision::Binary64), |(l, h)| ivl(l, h));
                let got = ia.overlap(&ib);
                assert_eq!(got, classify_reference(a, b), "a={a:?} b={b:?}");
                assert_eq!(got.transpose(), ib.overlap(&ia), "transpose a={a:?} b={b:?}");
            }
        }
    }
}
