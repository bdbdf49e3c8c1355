//! Interval text I/O.
//!
//! Parsing accepts endpoint pairs `[a,b]`, points `[a]`, the special forms
//! `[]`/`[empty]`/`[entire]`, and the uncertain form `m?d(u|d)?e±k`.
//! Endpoint tokens may be decimal numbers, rationals `p/q`, signed
//! infinities, or hexadecimal floats. Conversion is outward with directed
//! rounding and an [`Accuracy`] verdict. Formatting always prints a
//! superset of the interval: the lower endpoint's decimal digits round
//! toward minus infinity, the upper's toward plus infinity; hexadecimal
//! output is bit-exact and reads back as the identical interval.

use crate::endpoint::{self, Endpoint, Precision, Round};
use crate::interval::Interval;
use crate::limbs::Limbs;
use std::cmp::Ordering;
use std::fmt;
use std::io::{BufRead, Write};

/// How faithfully a conversion represents the denoted set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Accuracy {
    /// Unparseable input.
    Invalid,
    /// A correct enclosure, not necessarily the tightest.
    Valid,
    /// The tightest representable enclosure, but not the exact set.
    Tight,
    /// The interval equals the denoted set.
    Exact,
}

impl Accuracy {
    /// The weaker of two verdicts.
    pub fn meet(self, other: Accuracy) -> Accuracy {
        self.min(other)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Notation {
    Fixed,
    Scientific,
    Hex,
    Auto,
}

/// Rendering configuration for intervals.
#[derive(Clone, Debug)]
pub struct Format {
    /// Digit count: significant digits in `Auto`, digits after the point
    /// in `Fixed` and `Scientific`.
    pub precision: usize,
    pub notation: Notation,
    /// Keep trailing fractional zeros up to the full digit count.
    pub pad: bool,
    /// Spaces inside the brackets.
    pub border_slack: usize,
    /// Spaces after the comma.
    pub center_slack: usize,
}

impl Default for Format {
    fn default() -> Self {
        Format {
            precision: 6,
            notation: Notation::Auto,
            pad: false,
            border_slack: 0,
            center_slack: 0,
        }
    }
}

impl Format {
    pub fn with_precision(mut self, p: usize) -> Self {
        self.precision = p.max(1);
        self
    }

    pub fn with_notation(mut self, n: Notation) -> Self {
        self.notation = n;
        self
    }
}

#[derive(Debug, thiserror::Error)]
pub enum TextError {
    #[error("not an interval literal: {0:?}")]
    InvalidLiteral(String),
    #[error("line {line}: malformed interval")]
    MalformedLine { line: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

// ---------------------------------------------------------------------------
// Exact literal values.

/// A parsed endpoint before rounding: an exact rational or an infinity.
enum ExactVal {
    NegInf,
    PosInf,
    /// (negative, numerator, denominator); denominator nonzero.
    Rat(bool, Limbs, Limbs),
}

impl ExactVal {
    fn to_endpoint(&self, prec: Precision, dir: Round) -> (Endpoint, bool) {
        match self {
            ExactVal::NegInf => (Endpoint::neg_inf(prec), true),
            ExactVal::PosInf => (Endpoint::pos_inf(prec), true),
            ExactVal::Rat(neg, p, q) => endpoint::from_rational_big(prec, *neg, p, q, dir),
        }
    }

    fn cmp(&self, other: &ExactVal) -> Ordering {
        use ExactVal::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
            (Rat(n1, p1, q1), Rat(n2, p2, q2)) => {
                let s1 = if p1.is_zero() { 0 } else if *n1 { -1 } else { 1 };
                let s2 = if p2.is_zero() { 0 } else if *n2 { -1 } else { 1 };
                if s1 != s2 {
                    return s1.cmp(&s2);
                }
                let mag = p1.mul(q2).cmp(&p2.mul(q1));
                if s1 < 0 {
                    mag.reverse()
                } else {
                    mag
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Lexical helpers.

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            s: s.as_bytes(),
            i: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.i += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn eat_keyword_ci(&mut self, kw: &str) -> bool {
        let bytes = kw.as_bytes();
        if self.s.len() - self.i >= bytes.len()
            && self.s[self.i..self.i + bytes.len()]
                .iter()
                .zip(bytes)
                .all(|(a, b)| a.eq_ignore_ascii_case(b))
        {
            self.i += bytes.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a [u8]> {
        let start = self.i;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.i += 1;
        }
        if self.i > start {
            Some(&self.s[start..self.i])
        } else {
            None
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.i == self.s.len()
    }
}

fn limbs_from_decimal(digits: &[u8]) -> Limbs {
    let mut v = Limbs::zero();
    for &d in digits {
        v = v.mul_u64_add(10, (d - b'0') as u64);
    }
    v
}

fn limbs_from_hex(digits: &[u8]) -> Limbs {
    let mut v = Limbs::zero();
    for &d in digits {
        let x = (d as char).to_digit(16).unwrap() as u64;
        v = v.mul_u64_add(16, x);
    }
    v
}

/// Largest tolerated |decimal exponent| in literals.
const MAX_DEC_EXP: i64 = 200_000;

/// (negative, integer digits scaled, power-of-ten offset): the value is
/// `±m * 10^e10`.
struct DecimalParts {
    neg: bool,
    mant: Limbs,
    e10: i64,
}

impl DecimalParts {
    fn to_exact(&self) -> Option<ExactVal> {
        if self.e10.abs() > MAX_DEC_EXP {
            return None;
        }
        // 10^e = 2^e * 5^e keeps the rational small.
        let (p, q) = if self.e10 >= 0 {
            let e = self.e10 as u64;
            (
                self.mant.mul(&Limbs::from_u64(5).pow_u32(e as u32)).shl(e),
                Limbs::from_u64(1),
            )
        } else {
            let e = (-self.e10) as u64;
            (
                self.mant.clone(),
                Limbs::from_u64(5).pow_u32(e as u32).shl(e),
            )
        };
        Some(ExactVal::Rat(self.neg, p, q))
    }
}

/// `[+-]? digits [. digits]? ([eE] [+-]? digits)?` or `.digits` forms;
/// `allow_exp = false` leaves a trailing exponent untouched (uncertain
/// form attaches it after the `?`).
fn parse_decimal(cur: &mut Cursor, allow_exp: bool) -> Option<DecimalParts> {
    let neg = if cur.eat(b'-') {
        true
    } else {
        cur.eat(b'+');
        false
    };
    let int_digits = cur.digits();
    let mut mant = match int_digits {
        Some(d) => limbs_from_decimal(d),
        None => Limbs::zero(),
    };
    let mut frac_len = 0i64;
    if cur.eat(b'.') {
        if let Some(d) = cur.digits() {
            frac_len = d.len() as i64;
            for &c in d {
                mant = mant.mul_u64_add(10, (c - b'0') as u64);
            }
        }
        if int_digits.is_none() && frac_len == 0 {
            return None;
        }
    } else if int_digits.is_none() {
        return None;
    }
    let mut e10 = -frac_len;
    if allow_exp && matches!(cur.peek(), Some(b'e') | Some(b'E')) {
        let save = cur.i;
        cur.bump();
        let eneg = if cur.eat(b'-') {
            true
        } else {
            cur.eat(b'+');
            false
        };
        match cur.digits() {
            Some(d) if d.len() <= 18 => {
                let v: i64 = std::str::from_utf8(d).unwrap().parse().unwrap();
                e10 += if eneg { -v } else { v };
            }
            Some(_) => return None,
            None => {
                cur.i = save;
            }
        }
    }
    Some(DecimalParts { neg, mant, e10 })
}

/// One endpoint token: decimal, rational, hex float, or signed infinity.
fn parse_endpoint_token(cur: &mut Cursor) -> Option<ExactVal> {
    cur.skip_ws();
    let save = cur.i;
    // Signed infinity.
    {
        let neg = if cur.eat(b'-') {
            true
        } else {
            cur.eat(b'+');
            false
        };
        if cur.eat_keyword_ci("infinity") || cur.eat_keyword_ci("inf") {
            return Some(if neg {
                ExactVal::NegInf
            } else {
                ExactVal::PosInf
            });
        }
        cur.i = save;
    }
    // Hex float.
    {
        let neg = if cur.eat(b'-') {
            true
        } else {
            cur.eat(b'+');
            false
        };
        if cur.eat_keyword_ci("0x") {
            let int_digits = {
                let start = cur.i;
                while cur.peek().map_or(false, |c| c.is_ascii_hexdigit()) {
                    cur.i += 1;
                }
                cur.s[start..cur.i].to_vec()
            };
            let mut mant = limbs_from_hex(&int_digits);
            let mut frac_bits = 0i64;
            if cur.eat(b'.') {
                let start = cur.i;
                while cur.peek().map_or(false, |c| c.is_ascii_hexdigit()) {
                    cur.i += 1;
                }
                let frac = &cur.s[start..cur.i];
                if int_digits.is_empty() && frac.is_empty() {
                    return None;
                }
                for &c in frac {
                    mant = mant.mul_u64_add(16, (c as char).to_digit(16).unwrap() as u64);
                }
                frac_bits = 4 * frac.len() as i64;
            } else if int_digits.is_empty() {
                return None;
            }
            if !(cur.eat(b'p') || cur.eat(b'P')) {
                return None;
            }
            let eneg = if cur.eat(b'-') {
                true
            } else {
                cur.eat(b'+');
                false
            };
            let d = cur.digits()?;
            if d.len() > 15 {
                return None;
            }
            let e: i64 = std::str::from_utf8(d).unwrap().parse().unwrap();
            let e = if eneg { -e } else { e } - frac_bits;
            // m * 2^e as a rational.
            return Some(if e >= 0 {
                ExactVal::Rat(neg, mant.shl(e as u64), Limbs::from_u64(1))
            } else {
                ExactVal::Rat(neg, mant, Limbs::from_u64(1).shl((-e) as u64))
            });
        }
        cur.i = save;
    }
    // Decimal or rational.
    let dec = parse_decimal(cur, true)?;
    if cur.eat(b'/') {
        // Rational p/q with integer parts only.
        if dec.e10 != 0 {
            return None;
        }
        let den = cur.digits()?;
        let q = limbs_from_decimal(den);
        if q.is_zero() {
            return None;
        }
        return Some(ExactVal::Rat(dec.neg, dec.mant, q));
    }
    dec.to_exact()
}

fn parse_uncertain(text: &str, prec: Precision) -> Option<(Interval, Accuracy)> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    // Mantissa without exponent; the exponent trails the uncertainty.
    let start = cur.i;
    let dec = parse_decimal(&mut cur, false)?;
    let frac_len = {
        let lexeme = &cur.s[start..cur.i];
        match lexeme.iter().position(|&c| c == b'.') {
            Some(p) => (lexeme.len() - p - 1) as i64,
            None => 0,
        }
    };
    if !cur.eat(b'?') {
        return None;
    }
    // Radius in last-place units; absent means half a unit.
    let (rad_num, rad_den_extra) = match cur.digits() {
        Some(d) => {
            if d.len() > 15 {
                return None;
            }
            (limbs_from_decimal(d), 0u32)
        }
        None => (Limbs::from_u64(1), 1),
    };
    let direction = if cur.eat(b'u') || cur.eat(b'U') {
        Some(Round::Up)
    } else if cur.eat(b'd') || cur.eat(b'D') {
        Some(Round::Down)
    } else {
        None
    };
    let mut e10 = 0i64;
    if matches!(cur.peek(), Some(b'e') | Some(b'E')) {
        cur.bump();
        let eneg = if cur.eat(b'-') {
            true
        } else {
            cur.eat(b'+');
            false
        };
        let d = cur.digits()?;
        if d.len() > 15 {
            return None;
        }
        let v: i64 = std::str::from_utf8(d).unwrap().parse().unwrap();
        e10 = if eneg { -v } else { v };
    }
    if !cur.at_end() {
        return None;
    }
    if (e10 - frac_len).abs() > MAX_DEC_EXP {
        return None;
    }

    // Value m and radius r as rationals over the common denominator
    // 10^(frac_len - e10) (times 2 for the half-unit default).
    let scale10 = frac_len - e10;
    let (num_scale, den) = if scale10 >= 0 {
        (
            Limbs::from_u64(1),
            Limbs::from_u64(5).pow_u32(scale10 as u32).shl(scale10 as u64),
        )
    } else {
        (
            Limbs::from_u64(5)
                .pow_u32((-scale10) as u32)
                .shl((-scale10) as u64),
            Limbs::from_u64(1),
        )
    };
    let m_num = dec.mant.mul(&num_scale);
    let r_num = rad_num.mul(&num_scale);
    // Signed arithmetic over the common denominator.
    let m_signed = |num: &Limbs| (dec.neg && !num.is_zero(), num.clone());
    let (m_neg, m_mag) = m_signed(&m_num);
    let add_signed = |aneg: bool, a: &Limbs, bneg: bool, b: &Limbs| -> (bool, Limbs) {
        if aneg == bneg {
            (aneg, a.add(b))
        } else {
            match a.cmp(b) {
                Ordering::Equal => (false, Limbs::zero()),
                Ordering::Greater => (aneg, a.sub(b)),
                Ordering::Less => (bneg, b.sub(a)),
            }
        }
    };
    let scale_half = |l: &Limbs, halves: u32| {
        if halves > 0 {
            l.clone()
        } else {
            l.shl(1)
        }
    };
    // Work in half-units so the default half-ulp radius stays integral.
    let den2 = den.shl(1);
    let m2 = (m_neg, scale_half(&m_mag, 0));
    let r2 = (false, scale_half(&r_num, rad_den_extra));
    let (lo, hi) = match direction {
        None => (
            add_signed(m2.0, &m2.1, true, &r2.1),
            add_signed(m2.0, &m2.1, false, &r2.1),
        ),
        Some(Round::Up) => ((m2.0, m2.1.clone()), add_signed(m2.0, &m2.1, false, &r2.1)),
        Some(Round::Down) => (add_signed(m2.0, &m2.1, true, &r2.1), (m2.0, m2.1.clone())),
    };
    let lo_val = ExactVal::Rat(lo.0, lo.1, den2.clone());
    let hi_val = ExactVal::Rat(hi.0, hi.1, den2);
    finish_pair(lo_val, hi_val, prec)
}

fn finish_pair(lo: ExactVal, hi: ExactVal, prec: Precision) -> Option<(Interval, Accuracy)> {
    if lo.cmp(&hi) == Ordering::Greater {
        return None;
    }
    if matches!(lo, ExactVal::PosInf) || matches!(hi, ExactVal::NegInf) {
        return None;
    }
    let (lo_e, lo_exact) = lo.to_endpoint(prec, Round::Down);
    let (hi_e, hi_exact) = hi.to_endpoint(prec, Round::Up);
    let interval = Interval::make(lo_e, hi_e).ok()?;
    let acc = if lo_exact && hi_exact {
        Accuracy::Exact
    } else {
        Accuracy::Tight
    };
    Some((interval, acc))
}

/// Parses an interval literal; never fails — unparseable text yields the
/// empty interval tagged [`Accuracy::Invalid`].
pub fn try_parse(text: &str, prec: Precision) -> (Interval, Accuracy) {
    match parse_inner(text, prec) {
        Some(pair) => pair,
        None => (Interval::empty(prec), Accuracy::Invalid),
    }
}

/// Parse-or-fail constructor form.
pub fn parse(text: &str, prec: Precision) -> Result<Interval, TextError> {
    match parse_inner(text, prec) {
        Some((i, _)) => Ok(i),
        None => Err(TextError::InvalidLiteral(text.to_string())),
    }
}

fn parse_inner(text: &str, prec: Precision) -> Option<(Interval, Accuracy)> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if !cur.eat(b'[') {
        return parse_uncertain(text, prec);
    }
    cur.skip_ws();
    if cur.eat(b']') {
        return cur.at_end().then(|| (Interval::empty(prec), Accuracy::Exact));
    }
    if cur.eat_keyword_ci("empty") {
        cur.skip_ws();
        if cur.eat(b']') && cur.at_end() {
            return Some((Interval::empty(prec), Accuracy::Exact));
        }
        return None;
    }
    if cur.eat_keyword_ci("entire") {
        cur.skip_ws();
        if cur.eat(b']') && cur.at_end() {
            return Some((Interval::entire(prec), Accuracy::Exact));
        }
        return None;
    }
    let first = parse_endpoint_token(&mut cur)?;
    cur.skip_ws();
    if cur.eat(b']') {
        if !cur.at_end() {
            return None;
        }
        // Point interval [a].
        let hi = match &first {
            ExactVal::NegInf => return None,
            ExactVal::PosInf => return None,
            ExactVal::Rat(n, p, q) => ExactVal::Rat(*n, p.clone(), q.clone()),
        };
        return finish_pair(first, hi, prec);
    }
    if !cur.eat(b',') {
        return None;
    }
    let second = parse_endpoint_token(&mut cur)?;
    cur.skip_ws();
    if !cur.eat(b']') || !cur.at_end() {
        return None;
    }
    finish_pair(first, second, prec)
}

// ---------------------------------------------------------------------------
// Formatting.

/// Decimal digits of |v| rounded at `10^pos` in the given direction
/// (`away` = round magnitudes up). Returns the digit string and whether
/// any information was discarded.
fn decimal_digits_at(mant: &Limbs, exp: i64, pos: i64, away: bool) -> (Limbs, bool) {
    // |v| / 10^pos = mant * 2^exp / (2^pos 5^pos)
    let mut num = mant.clone();
    let mut den = Limbs::from_u64(1);
    let e2 = exp - pos;
    if e2 >= 0 {
        num = num.shl(e2 as u64);
    } else {
        den = den.shl((-e2) as u64);
    }
    if pos > 0 {
        den = den.mul(&Limbs::from_u64(5).pow_u32(pos as u32));
    } else if pos < 0 {
        num = num.mul(&Limbs::from_u64(5).pow_u32((-pos) as u32));
    }
    let (q, r) = num.div_rem(&den);
    let sticky = !r.is_zero();
    if sticky && away {
        (q.add_u64(1), true)
    } else {
        (q, sticky)
    }
}

/// Floor of log10(|v|) for v = mant * 2^exp, exact.
fn dec_exponent(mant: &Limbs, exp: i64) -> i64 {
    debug_assert!(!mant.is_zero());
    let msb = exp + mant.bit_len() as i64 - 1;
    // log10(2) = 0.30102999566...; the estimate is within one.
    let mut e10 = (msb as f64 * std::f64::consts::LOG10_2).floor() as i64;
    // Correct against exact comparisons with 10^e10 and 10^(e10+1).
    while cmp_pow10(mant, exp, e10) == Ordering::Less {
        e10 -= 1;
    }
    while cmp_pow10(mant, exp, e10 + 1) != Ordering::Less {
        e10 += 1;
    }
    e10
}

/// Compares `mant * 2^exp` with `10^k`.
fn cmp_pow10(mant: &Limbs, exp: i64, k: i64) -> Ordering {
    let mut lhs = mant.clone();
    let mut rhs = Limbs::from_u64(1);
    let e2 = exp - k;
    if e2 >= 0 {
        lhs = lhs.shl(e2 as u64);
    } else {
        rhs = rhs.shl((-e2) as u64);
    }
    if k >= 0 {
        rhs = rhs.mul(&Limbs::from_u64(5).pow_u32(k as u32));
    } else {
        lhs = lhs.mul(&Limbs::from_u64(5).pow_u32((-k) as u32));
    }
    lhs.cmp(&rhs)
}

fn digits_string(n: &Limbs) -> String {
    if n.is_zero() {
        return "0".into();
    }
    let mut digits = Vec::new();
    let mut cur = n.clone();
    while !cur.is_zero() {
        let (q, r) = cur.div_rem_u64(10);
        digits.push(b'0' + r as u8);
        cur = q;
    }
    digits.reverse();
    String::from_utf8(digits).unwrap()
}

/// Decimal exponents beyond this fall back to exact hex output.
const MAX_FMT_EXP2: i64 = 1 << 21;

fn format_finite_decimal(e: &Endpoint, f: &Format, dir: Round) -> String {
    use crate::endpoint::Parts;
    let (neg, mant, exp) = match e.parts() {
        Parts::Zero => {
            return format_zero(f);
        }
        Parts::Finite { neg, mant, exp } => (neg, mant, exp),
        _ => unreachable!("infinities handled by the caller"),
    };
    if (exp + mant.bit_len() as i64).abs() > MAX_FMT_EXP2 {
        return format_hex_endpoint(e);
    }
    let away = matches!((neg, dir), (false, Round::Up) | (true, Round::Down));
    let p = f.precision.max(1) as i64;
    let mut e10 = dec_exponent(&mant, exp);
    // Rounding away can carry into one more digit (9.99 -> 10.0); retry
    // with the bumped exponent when that happens.
    loop {
        // Scientific presentation keeps `sig` significant digits; fixed
        // presentation keeps `after` digits past the point.
        enum Layout {
            Sci { sig: i64 },
            Fix { after: i64 },
        }
        let layout = match f.notation {
            Notation::Fixed => Layout::Fix { after: p },
            Notation::Scientific => Layout::Sci { sig: p + 1 },
            Notation::Auto | Notation::Hex => {
                if e10 < -4 || e10 >= p {
                    Layout::Sci { sig: p }
                } else {
                    Layout::Fix { after: p - 1 - e10 }
                }
            }
        };
        let (pos, frac_width) = match layout {
            Layout::Sci { sig } => (e10 - (sig - 1), sig - 1),
            Layout::Fix { after } => (-after, after),
        };
        let (d, _) = decimal_digits_at(&mant, exp, pos, away);
        let s = digits_string(&d);
        // Carry check: in scientific layouts the digit count is fixed; in
        // auto-fixed the integer part may not grow past e10 + 1 digits.
        let carried = match layout {
            Layout::Sci { sig } => s.len() as i64 > sig,
            Layout::Fix { after } => {
                f.notation != Notation::Fixed && s.len() as i64 > (e10 + 1 + after).max(1)
            }
        };
        if carried {
            e10 += 1;
            continue;
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        match layout {
            Layout::Sci { .. } => {
                let mut it = s.chars();
                out.push(it.next().unwrap());
                let frac: String = it.collect();
                let frac = trim_or_pad(&frac, f.pad, frac_width);
                if !frac.is_empty() {
                    out.push('.');
                    out.push_str(&frac);
                }
                out.push('e');
                out.push_str(&e10.to_string());
            }
            Layout::Fix { after } => {
                let (int_part, frac_part) = if s.len() as i64 <= after {
                    let mut frac = "0".repeat((after - s.len() as i64) as usize);
                    frac.push_str(&s);
                    (String::from("0"), frac)
                } else {
                    let split = s.len() - after as usize;
                    (s[..split].to_string(), s[split..].to_string())
                };
                out.push_str(&int_part);
                let frac = trim_or_pad(&frac_part, f.pad, frac_width);
                if !frac.is_empty() {
                    out.push('.');
                    out.push_str(&frac);
                }
            }
        }
        return out;
    }
}

fn trim_or_pad(frac: &str, pad: bool, width: i64) -> String {
    let mut s = frac.to_string();
    if pad {
        while (s.len() as i64) < width {
            s.push('0');
        }
    } else {
        while s.ends_with('0') {
            s.pop();
        }
    }
    s
}

fn format_zero(f: &Format) -> String {
    if f.pad {
        match f.notation {
            Notation::Scientific => {
                let mut s = String::from("0.");
                for _ in 0..f.precision {
                    s.push('0');
                }
                s.push_str("e0");
                s
            }
            _ => {
                let mut s = String::from("0.");
                for _ in 0..f.precision {
                    s.push('0');
                }
                s
            }
        }
    } else {
        "0".into()
    }
}

/// Exact hexadecimal rendering `±0x1.<frac>p<exp>`.
fn format_hex_endpoint(e: &Endpoint) -> String {
    use crate::endpoint::Parts;
    match e.parts() {
        Parts::Zero => "0x0p0".into(),
        Parts::PosInf => "inf".into(),
        Parts::NegInf => "-inf".into(),
        Parts::Finite { neg, mant, exp } => {
            let bits = mant.bit_len();
            let msb = exp + bits as i64 - 1;
            // Fraction bits below the leading 1, padded to whole nibbles.
            let frac_bits = bits - 1;
            let nibbles = frac_bits.div_ceil(4);
            let frac = mant.shl(nibbles * 4 - frac_bits);
            // The low 4*nibbles bits are the padded fraction; the leading
            // 1 sits just above them.
            let mut digits = Vec::with_capacity(nibbles as usize);
            for i in (0..nibbles).rev() {
                let nib = (frac.shr(4 * i).as_limbs().first().copied().unwrap_or(0) & 0xf) as u32;
                digits.push(std::char::from_digit(nib, 16).unwrap());
            }
            let frac_str: String = digits.into_iter().collect();
            let frac_str = frac_str.trim_end_matches('0');
            let mut out = String::new();
            if neg {
                out.push('-');
            }
            out.push_str("0x1");
            if !frac_str.is_empty() {
                out.push('.');
                out.push_str(frac_str);
            }
            out.push('p');
            out.push_str(&msb.to_string());
            out
        }
    }
}

/// Bit-exact hexadecimal rendering of a single endpoint.
pub fn endpoint_to_hex(e: &Endpoint) -> String {
    format_hex_endpoint(e)
}

fn format_endpoint(e: &Endpoint, f: &Format, dir: Round) -> String {
    if e.is_infinite() {
        return if e.sign() == Ordering::Less {
            "-inf".into()
        } else {
            "inf".into()
        };
    }
    match f.notation {
        Notation::Hex => format_hex_endpoint(e),
        _ => format_finite_decimal(e, f, dir),
    }
}

/// Renders an interval; the printed set always contains the argument.
pub fn format_interval(x: &Interval, f: &Format) -> String {
    if x.is_empty() {
        return "[empty]".into();
    }
    if x.is_entire() {
        return "[entire]".into();
    }
    let (lo, hi) = x.bounds().unwrap();
    let slack = " ".repeat(f.border_slack);
    let center = " ".repeat(f.center_slack);
    format!(
        "[{slack}{},{center}{}{slack}]",
        format_endpoint(lo, f, Round::Down),
        format_endpoint(hi, f, Round::Up)
    )
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_interval(self, &Format::default()))
    }
}

// ---------------------------------------------------------------------------
// Sequence I/O: one interval per line, `#` comments ignored.

pub fn write_sequence<W: Write>(
    xs: &[Interval],
    sink: &mut W,
    f: &Format,
) -> Result<usize, TextError> {
    for x in xs {
        writeln!(sink, "{}", format_interval(x, f))?;
    }
    Ok(xs.len())
}

pub fn read_sequence<R: BufRead>(
    source: R,
    prec: Precision,
) -> Result<(Vec<Interval>, Accuracy), TextError> {
    let mut out = Vec::new();
    let mut acc = Accuracy::Exact;
    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (iv, a) = try_parse(trimmed, prec);
        if a == Accuracy::Invalid {
            return Err(TextError::MalformedLine { line: idx + 1 });
        }
        acc = acc.meet(a);
        out.push(iv);
    }
    Ok((out, acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P64: Precision = Precision::Binary64;

    fn parsed(s: &str) -> (Interval, Accuracy) {
        try_parse(s, P64)
    }

    fn f64s(x: &Interval) -> (f64, f64) {
        let (a, b) = x.bounds().unwrap();
        (a.to_f64(Round::Down), b.to_f64(Round::Up))
    }

    #[test]
    fn parse_taxonomy() {
        let (x, a) = parsed("[1,2]");
        assert_eq!(a, Accuracy::Exact);
        assert_eq!(f64s(&x), (1.0, 2.0));

        let (x, a) = parsed("[1/3,2/3]");
        assert_eq!(a, Accuracy::Tight);
        let (lo, hi) = f64s(&x);
        assert_eq!(lo, 1.0 / 3.0);
        assert!(hi > 2.0 / 3.0 - 1e-15 && hi >= 2.0 / 3.0);

        let (x, a) = parsed("Am I an interval?");
        assert_eq!(a, Accuracy::Invalid);
        assert!(x.is_empty());

        let (x, a) = parsed("disaster");
        assert_eq!(a, Accuracy::Invalid);
        assert!(x.is_empty());

        let (x, a) = parsed("[-inf,4]");
        assert_eq!(a, Accuracy::Exact);
        let (lo, hi) = f64s(&x);
        assert_eq!((lo, hi), (f64::NEG_INFINITY, 4.0));

        let (x, a) = parsed("5?");
        assert_eq!(a, Accuracy::Exact);
        assert_eq!(f64s(&x), (4.5, 5.5));
    }

    #[test]
    fn parse_special_forms() {
        assert!(parsed("[]").0.is_empty());
        assert_eq!(parsed("[]").1, Accuracy::Exact);
        assert!(parsed("[empty]").0.is_empty());
        assert!(parsed("[EMPTY]").0.is_empty());
        assert!(parsed("[entire]").0.is_entire());
        assert!(parsed(" [ 1 , 2 ] ").1 == Accuracy::Exact);
        assert_eq!(f64s(&parsed("[0.5]").0), (0.5, 0.5));
        assert!(parsed("[-infinity, inf]").0.is_entire());
        assert_eq!(parsed("[+infinity, inf]").1, Accuracy::Invalid);
    }

    #[test]
    fn parse_rejects() {
        for bad in [
            "[3,2]",
            "[1,2",
            "1,2]",
            "[1,,2]",
            "[1/0,2]",
            "[inf,inf]",
            "[-inf]",
            "[1 2]",
            "[0x1.gp0,1]",
            "[1e999999,2e999999]",
            "",
            "?",
            "nan",
        ] {
            let (x, a) = parsed(bad);
            assert_eq!(a, Accuracy::Invalid, "{bad:?} should not parse");
            assert!(x.is_empty());
        }
        assert!(parse("disaster", P64).is_err());
    }

    #[test]
    fn uncertain_forms() {
        assert_eq!(f64s(&parsed("5?").0), (4.5, 5.5));
        assert_eq!(f64s(&parsed("5?2").0), (3.0, 7.0));
        assert_eq!(f64s(&parsed("5?2u").0), (5.0, 7.0));
        assert_eq!(f64s(&parsed("5?2d").0), (3.0, 5.0));
        assert_eq!(f64s(&parsed("5?u").0), (5.0, 5.5));
        assert_eq!(f64s(&parsed("12.3?1e1").0), (122.0, 124.0));
        // -3.55 and -3.45 are not representable; outward rounding applies.
        let (lo, hi) = f64s(&parsed("-3.5?").0);
        assert!(lo <= -3.55 && -3.45 <= hi);
        assert_eq!(lo, (-3.55f64).next_down());
        assert_eq!(hi, (-3.45f64).next_up());
        let (x, a) = parsed("2.5?");
        assert_eq!(a, Accuracy::Tight);
        let (lo, hi) = f64s(&x);
        assert!(lo <= 2.45 && 2.55 <= hi);
        assert_eq!(lo, 2.45f64.next_down());
        assert_eq!(hi, 2.55f64.next_up());
        // Width is one unit in the last place.
        let (lo, hi) = f64s(&parsed("0.001?").0);
        assert!((hi - lo - 0.001).abs() < 1e-12);
    }

    #[test]
    fn parse_hex_and_rationals() {
        let (x, a) = parsed("[0x1.8p0, 0x1.8p1]");
        assert_eq!(a, Accuracy::Exact);
        assert_eq!(f64s(&x), (1.5, 3.0));
        let (x, a) = parsed("[0x0.8p0]");
        assert_eq!(a, Accuracy::Exact);
        assert_eq!(f64s(&x), (0.5, 0.5));
        let (x, a) = parsed("[-2/4, 3/6]");
        assert_eq!(a, Accuracy::Exact);
        assert_eq!(f64s(&x), (-0.5, 0.5));
        // Ordered by true value even when rounding could mask it.
        let (_, a) = parsed("[0.33333333333333337, 1/3]");
        assert_eq!(a, Accuracy::Invalid);
    }

    #[test]
    fn format_golden_shapes() {
        let x = Interval::from_f64s(-0.5929439995970066, 0.3454648713412841).unwrap();
        assert_eq!(format_interval(&x, &Format::default()), "[-0.592944,0.345465]");
        let sci = Format::default()
            .with_precision(10)
            .with_notation(Notation::Scientific);
        assert_eq!(
            format_interval(&x, &sci),
            "[-5.929439996e-1,3.4546487135e-1]"
        );
        let padded = Format {
            pad: true,
            border_slack: 2,
            center_slack: 1,
            ..sci
        };
        assert_eq!(
            format_interval(&x, &padded),
            "[  -5.9294399960e-1, 3.4546487135e-1  ]"
        );
    }

    #[test]
    fn format_basics() {
        let f = Format::default();
        assert_eq!(format_interval(&Interval::empty(P64), &f), "[empty]");
        assert_eq!(format_interval(&Interval::entire(P64), &f), "[entire]");
        let x = Interval::from_f64s(1.0, 2.0).unwrap();
        assert_eq!(format_interval(&x, &f), "[1,2]");
        let x = Interval::from_f64s(-1.0 / 3.0, 1e22).unwrap();
        assert_eq!(format_interval(&x, &f), "[-0.333334,1e22]");
        // The f64 nearest to 0.05 lies above the decimal 0.05, so the
        // outward upper rendering must not print the bare "0.05".
        let x = Interval::from_f64s(0.0, 0.05).unwrap();
        assert_eq!(format_interval(&x, &f), "[0,0.0500001]");
        let x = Interval::from_f64s(0.05f64.next_down(), 0.05).unwrap();
        assert_eq!(format_interval(&x, &f), "[0.0499999,0.0500001]");
        let x = Interval::from_f64s(f64::NEG_INFINITY, 4.0).unwrap();
        assert_eq!(format_interval(&x, &f), "[-inf,4]");
    }

    #[test]
    fn printed_interval_contains_value() {
        let f = Format::default().with_precision(3);
        let x = Interval::from_f64s(0.12345, 0.12345).unwrap();
        let s = format_interval(&x, &f);
        assert_eq!(s, "[0.123,0.124]");
        let (back, _) = try_parse(&s, P64);
        assert!(x.subset(&back));
    }

    #[test]
    fn hex_round_trip_exact() {
        let values = [
            Interval::from_f64s(-0.1, 0.3).unwrap(),
            Interval::from_f64s(1.5, 3.0).unwrap(),
            Interval::from_f64s(f64::MIN_POSITIVE / 8.0, f64::MAX).unwrap(),
            Interval::from_f64s(f64::NEG_INFINITY, 5e-324).unwrap(),
            Interval::empty(P64),
            Interval::entire(P64),
        ];
        let f = Format::default().with_notation(Notation::Hex);
        for x in &values {
            let s = format_interval(x, &f);
            let (back, acc) = try_parse(&s, P64);
            assert_eq!(acc, Accuracy::Exact, "{s}");
            assert!(back.set_eq(x), "{s}");
            // Idempotent text.
            assert_eq!(format_interval(&back, &f), s);
        }
    }

    #[test]
    fn sequence_io() {
        let xs = vec![
            Interval::from_f64s(1.0, 2.0).unwrap(),
            Interval::empty(P64),
            Interval::from_f64s(-0.25, 0.75).unwrap(),
        ];
        let mut buf = Vec::new();
        let n = write_sequence(&xs, &mut buf, &Format::default().with_notation(Notation::Hex))
            .unwrap();
        assert_eq!(n, 3);
        let (back, acc) = read_sequence(&buf[..], P64).unwrap();
        assert_eq!(acc, Accuracy::Exact);
        assert_eq!(back.len(), 3);
        for (a, b) in xs.iter().zip(&back) {
            assert!(a.set_eq(b));
        }

        let text = b"# comment\n[1,2]\n\n[1/3,2/3]\n";
        let (_, acc) = read_sequence(&text[..], P64).unwrap();
        assert_eq!(acc, Accuracy::Tight);

        let bad = b"[1,2]\n[3,4]\n???\n";
        match read_sequence(&bad[..], P64) {
            Err(TextError::MalformedLine { line }) => assert_eq!(line, 3),
            other => panic!("expected malformed line, got {other:?}"),
        }
    }

    #[test]
    fn bigfloat_precision_parsing() {
        let p = Precision::Big(256);
        let (x, a) = try_parse("[1/3,2/3]", p);
        assert_eq!(a, Accuracy::Tight);
        assert_eq!(x.precision(), p);
        // Much tighter than the binary64 version.
        let w = x.wid().unwrap().to_f64(Round::Up);
        assert!(w >= 1.0 / 3.0 && w <= (1.0f64 / 3.0).next_up());
        let f = Format::default().with_notation(Notation::Hex);
        let s = format_interval(&x, &f);
        let (back, acc) = try_parse(&s, p);
        assert_eq!(acc, Accuracy::Exact);
        assert!(back.set_eq(&x));
    }
}
