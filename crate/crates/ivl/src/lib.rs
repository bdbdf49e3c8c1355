//! Validated interval arithmetic with directed rounding over generic
//! endpoint precisions.
//!
//! The crate provides closed intervals over the extended reals whose
//! endpoints live in one of several precision families — hardware binary64
//! (and binary32) or a software float with an N-bit significand — together
//! with a containment-correct arithmetic and elementary-function surface,
//! interval text I/O, and validated root finding. Every operation rounds
//! outward, so the computed interval always contains the exact set result.
//!
//! Directed rounding is realized per operation (error-free transformations
//! over round-to-nearest hardware, integer arithmetic for the software
//! endpoints); the processor rounding mode is never changed and all values
//! are immutable, so everything is safe to use across threads.

pub(crate) mod limbs;

pub mod bigfloat;
pub mod endpoint;
pub(crate) mod ieee;

pub mod arith;
pub mod elem;
pub mod interval;
pub mod newton;
pub mod textio;

pub use bigfloat::BigFloat;
pub use elem::ElemFn;
pub use textio::{Accuracy, Format, Notation, TextError};
pub use interval::{hull_all, intersection_all, Interval, IntervalError, OverlapState};
pub use endpoint::{
    families, from_rational, lookup_family, parse_precision, Endpoint, EndpointFamily,
    KernelError, Precision, Round,
};
