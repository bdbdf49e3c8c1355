//! Name-indexed registry of interval functions for the expression
//! evaluator. Every entry is a trait object; the benchmarks and the
//! parser resolve functions by name at runtime.

use ivl::{arith, elem, ElemFn, Interval};
use std::sync::OnceLock;

pub trait IntervalFn: Send + Sync {
    fn name(&self) -> &'static str;
    fn arity(&self) -> usize;
    fn apply(&self, args: &[Interval]) -> Interval;
}

struct Elem(ElemFn);

impl IntervalFn for Elem {
    fn name(&self) -> &'static str {
        self.0.name()
    }

    fn arity(&self) -> usize {
        1
    }

    fn apply(&self, args: &[Interval]) -> Interval {
        self.0.apply(&args[0])
    }
}

struct Named {
    name: &'static str,
    arity: usize,
    f: fn(&[Interval]) -> Interval,
}

impl IntervalFn for Named {
    fn name(&self) -> &'static str {
        self.name
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn apply(&self, args: &[Interval]) -> Interval {
        (self.f)(args)
    }
}

pub fn registry() -> &'static [Box<dyn IntervalFn>] {
    static REG: OnceLock<Vec<Box<dyn IntervalFn>>> = OnceLock::new();
    REG.get_or_init(|| {
        let mut v: Vec<Box<dyn IntervalFn>> = Vec::new();
        for f in ElemFn::ALL {
            v.push(Box::new(Elem(f)));
        }
        v.push(Box::new(Named {
            name: "sqrt",
            arity: 1,
            f: |a| arith::sqrt(&a[0]),
        }));
        v.push(Box::new(Named {
            name: "sqr",
            arity: 1,
            f: |a| arith::sqr(&a[0]),
        }));
        v.push(Box::new(Named {
            name: "abs",
            arity: 1,
            f: |a| arith::abs(&a[0]),
        }));
        v.push(Box::new(Named {
            name: "neg",
            arity: 1,
            f: |a| arith::neg(&a[0]),
        }));
        v.push(Box::new(Named {
            name: "pow",
            arity: 2,
            f: |a| elem::pow_interval(&a[0], &a[1]),
        }));
        v.push(Box::new(Named {
            name: "hull",
            arity: 2,
            f: |a| a[0].hull(&a[1]),
        }));
        v.push(Box::new(Named {
            name: "intersection",
            arity: 2,
            f: |a| a[0].intersection(&a[1]),
        }));
        v.push(Box::new(Named {
            name: "fma",
            arity: 3,
            f: |a| arith::fma(&a[0], &a[1], &a[2]),
        }));
        v.push(Box::new(Named {
            name: "cancelminus",
            arity: 2,
            f: |a| arith::cancel_minus(&a[0], &a[1]),
        }));
        v.push(Box::new(Named {
            name: "cancelplus",
            arity: 2,
            f: |a| arith::cancel_plus(&a[0], &a[1]),
        }));
        v
    })
}

pub fn lookup(name: &str) -> Option<&'static dyn IntervalFn> {
    registry().iter().find(|f| f.name() == name).map(|b| &**b)
}
