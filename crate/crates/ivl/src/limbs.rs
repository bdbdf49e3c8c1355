//! Unsigned big integers on little-endian 64-bit limbs.
//!
//! Mantissa arithmetic for the software endpoints lives here. Values up to
//! 512 bits stay on the stack; wider ones spill to the heap. The invariant
//! throughout is that the top limb is nonzero (zero is the empty vector).

use smallvec::SmallVec;
use std::cmp::Ordering;

type LimbVec = SmallVec<[u64; 8]>;

#[derive(Clone, Debug, Default)]
pub(crate) struct Limbs {
    v: LimbVec,
}

impl Limbs {
    pub fn zero() -> Self {
        Limbs { v: LimbVec::new() }
    }

    pub fn from_u64(x: u64) -> Self {
        let mut v = LimbVec::new();
        if x != 0 {
            v.push(x);
        }
        Limbs { v }
    }

    pub fn from_u128(x: u128) -> Self {
        let mut v = LimbVec::new();
        if x != 0 {
            v.push(x as u64);
            let hi = (x >> 64) as u64;
            if hi != 0 {
                v.push(hi);
            }
        }
        Limbs { v }
    }

    pub fn from_limbs(limbs: &[u64]) -> Self {
        let mut v: LimbVec = limbs.into();
        while v.last() == Some(&0) {
            v.pop();
        }
        Limbs { v }
    }

    pub fn as_limbs(&self) -> &[u64] {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_empty()
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.v.len() {
            0 => Some(0),
            1 => Some(self.v[0]),
            _ => None,
        }
    }

    /// Number of significant bits; 0 for zero.
    pub fn bit_len(&self) -> u64 {
        match self.v.last() {
            None => 0,
            Some(&top) => 64 * (self.v.len() as u64 - 1) + (64 - top.leading_zeros() as u64),
        }
    }

    pub fn bit(&self, i: u64) -> bool {
        let limb = (i / 64) as usize;
        limb < self.v.len() && (self.v[limb] >> (i % 64)) & 1 == 1
    }

    fn trim(&mut self) {
        while self.v.last() == Some(&0) {
            self.v.pop();
        }
    }

    pub fn cmp(&self, other: &Self) -> Ordering {
        match self.v.len().cmp(&other.v.len()) {
            Ordering::Equal => {
                for i in (0..self.v.len()).rev() {
                    match self.v[i].cmp(&other.v[i]) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = if self.v.len() >= other.v.len() {
            (&self.v, &other.v)
        } else {
            (&other.v, &self.v)
        };
        let mut out = LimbVec::with_capacity(a.len() + 1);
        let mut carry = 0u64;
        for i in 0..a.len() {
            let bi = b.get(i).copied().unwrap_or(0);
            let (s1, c1) = a[i].overflowing_add(bi);
            let (s2, c2) = s1.overflowing_add(carry);
            out.push(s2);
            carry = (c1 as u64) + (c2 as u64);
        }
        if carry != 0 {
            out.push(carry);
        }
        Limbs { v: out }
    }

    /// `self - other`; caller guarantees `self >= other`.
    pub fn sub(&self, other: &Self) -> Self {
        debug_assert!(self.cmp(other) != Ordering::Less);
        let mut out = LimbVec::with_capacity(self.v.len());
        let mut borrow = 0u64;
        for i in 0..self.v.len() {
            let bi = other.v.get(i).copied().unwrap_or(0);
            let (d1, b1) = self.v[i].overflowing_sub(bi);
            let (d2, b2) = d1.overflowing_sub(borrow);
            out.push(d2);
            borrow = (b1 as u64) + (b2 as u64);
        }
        debug_assert_eq!(borrow, 0);
        let mut r = Limbs { v: out };
        r.trim();
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Limbs::zero();
        }
        let mut out: LimbVec = SmallVec::new();
        out.resize(self.v.len() + other.v.len(), 0);
        for (i, &ai) in self.v.iter().enumerate() {
            let mut carry = 0u128;
            for (j, &bj) in other.v.iter().enumerate() {
                let t = out[i + j] as u128 + ai as u128 * bj as u128 + carry;
                out[i + j] = t as u64;
                carry = t >> 64;
            }
            let mut k = i + other.v.len();
            while carry != 0 {
                let t = out[k] as u128 + carry;
                out[k] = t as u64;
                carry = t >> 64;
                k += 1;
            }
        }
        let mut r = Limbs { v: out };
        r.trim();
        r
    }

    /// `self * m + a`, used when accumulating decimal digits.
    pub fn mul_u64_add(&self, m: u64, a: u64) -> Self {
        let mut out = LimbVec::with_capacity(self.v.len() + 1);
        let mut carry = a as u128;
        for &x in &self.v {
            let t = x as u128 * m as u128 + carry;
            out.push(t as u64);
            carry = t >> 64;
        }
        if carry != 0 {
            out.push(carry as u64);
        }
        let mut r = Limbs { v: out };
        r.trim();
        r
    }

    pub fn shl(&self, n: u64) -> Self {
        if self.is_zero() || n == 0 {
            return self.clone();
        }
        let limb_shift = (n / 64) as usize;
        let bit_shift = (n % 64) as u32;
        let mut out: LimbVec = SmallVec::new();
        out.resize(self.v.len() + limb_shift + 1, 0);
        for (i, &x) in self.v.iter().enumerate() {
            if bit_shift == 0 {
                out[i + limb_shift] = x;
            } else {
                out[i + limb_shift] |= x << bit_shift;
                out[i + limb_shift + 1] |= x >> (64 - bit_shift);
            }
        }
        let mut r = Limbs { v: out };
        r.trim();
        r
    }

    pub fn shr(&self, n: u64) -> Self {
        let limb_shift = (n / 64) as usize;
        if limb_shift >= self.v.len() {
            return Limbs::zero();
        }
        let bit_shift = (n % 64) as u32;
        let mut out = LimbVec::with_capacity(self.v.len() - limb_shift);
        for i in limb_shift..self.v.len() {
            let mut x = self.v[i] >> bit_shift;
            if bit_shift != 0 && i + 1 < self.v.len() {
                x |= self.v[i + 1] << (64 - bit_shift);
            }
            out.push(x);
        }
        let mut r = Limbs { v: out };
        r.trim();
        r
    }

    /// True when any of the low `n` bits is set.
    pub fn low_bits_nonzero(&self, n: u64) -> bool {
        let full = (n / 64) as usize;
        let rest = (n % 64) as u32;
        for i in 0..full.min(self.v.len()) {
            if self.v[i] != 0 {
                return true;
            }
        }
        if rest != 0 && full < self.v.len() && self.v[full] << (64 - rest) != 0 {
            return true;
        }
        false
    }

    /// Drops the low `n` bits, reporting whether any were set.
    pub fn split_sticky(&self, n: u64) -> (Self, bool) {
        (self.shr(n), self.low_bits_nonzero(n))
    }

    pub fn add_u64(&self, a: u64) -> Self {
        self.mul_u64_add(1, a)
    }

    pub fn div_rem_u64(&self, d: u64) -> (Self, u64) {
        assert!(d != 0);
        let mut out = LimbVec::with_capacity(self.v.len());
        out.resize(self.v.len(), 0);
        if d <= u32::MAX as u64 {
            // Half-limb steps keep the division in hardware-width u64.
            let d = d as u64;
            let mut rem = 0u64;
            for i in (0..self.v.len()).rev() {
                let limb = self.v[i];
                let hi_cur = (rem << 32) | (limb >> 32);
                let q_hi = hi_cur / d;
                rem = hi_cur % d;
                let lo_cur = (rem << 32) | (limb & 0xffff_ffff);
                let q_lo = lo_cur / d;
                rem = lo_cur % d;
                out[i] = (q_hi << 32) | q_lo;
            }
            let mut q = Limbs { v: out };
            q.trim();
            return (q, rem);
        }
        let mut rem = 0u128;
        for i in (0..self.v.len()).rev() {
            let cur = (rem << 64) | self.v[i] as u128;
            out[i] = (cur / d as u128) as u64;
            rem = cur % d as u128;
        }
        let mut q = Limbs { v: out };
        q.trim();
        (q, rem as u64)
    }

    /// Schoolbook long division (Knuth's algorithm D).
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero");
        if self.cmp(d) == Ordering::Less {
            return (Limbs::zero(), self.clone());
        }
        if d.v.len() == 1 {
            let (q, r) = self.div_rem_u64(d.v[0]);
            return (q, Limbs::from_u64(r));
        }

        let shift = d.v.last().unwrap().leading_zeros() as u64;
        let u_norm = self.shl(shift);
        let v_norm = d.shl(shift);
        let n = v_norm.v.len();
        let mut u: LimbVec = u_norm.v.clone();
        // Guarantee an extra high limb for the multiply-subtract window.
        u.push(0);
        let m = u.len() - 1 - n;
        let v = &v_norm.v;
        let vtop = v[n - 1];
        let vnext = v[n - 2];

        let mut q: LimbVec = SmallVec::new();
        q.resize(m + 1, 0);

        for j in (0..=m).rev() {
            let numer = ((u[j + n] as u128) << 64) | u[j + n - 1] as u128;
            let mut qhat = numer / vtop as u128;
            let mut rhat = numer % vtop as u128;
            while qhat >= 1u128 << 64
                || qhat * vnext as u128 > ((rhat << 64) | u[j + n - 2] as u128)
            {
                qhat -= 1;
                rhat += vtop as u128;
                if rhat >= 1u128 << 64 {
                    break;
                }
            }
            // u[j..j+n] -= qhat * v
            let mut borrow = 0i128;
            let mut carry = 0u128;
            for i in 0..n {
                let p = qhat * v[i] as u128 + carry;
                carry = p >> 64;
                let t = u[j + i] as i128 - (p as u64) as i128 + borrow;
                u[j + i] = t as u64;
                borrow = t >> 64;
            }
            let t = u[j + n] as i128 - carry as i128 + borrow;
            u[j + n] = t as u64;
            if t < 0 {
                // qhat was one too large; add the divisor back.
                qhat -= 1;
                let mut carry = 0u128;
                for i in 0..n {
                    let t = u[j + i] as u128 + v[i] as u128 + carry;
                    u[j + i] = t as u64;
                    carry = t >> 64;
                }
                u[j + n] = u[j + n].wrapping_add(carry as u64);
            }
            q[j] = qhat as u64;
        }

        let mut quot = Limbs { v: q };
        quot.trim();
        u.truncate(n);
        let mut rem = Limbs { v: u };
        rem.trim();
        let rem = rem.shr(shift);
        (quot, rem)
    }

    /// Floor square root plus a flag for a nonzero remainder.
    pub fn isqrt_rem(&self) -> (Self, bool) {
        if self.is_zero() {
            return (Limbs::zero(), false);
        }
        let bits = self.bit_len();
        if bits <= 126 {
            let mut x: u128 = (self.v[0] as u128) | self.v.get(1).map_or(0, |&h| (h as u128) << 64);
            let mut r = (x as f64).sqrt() as u128;
            while r.checked_mul(r).map_or(true, |sq| sq > x) {
                r -= 1;
            }
            while (r + 1).checked_mul(r + 1).map_or(false, |sq| sq <= x) {
                r += 1;
            }
            x -= r * r;
            return (Limbs::from_u128(r), x != 0);
        }
        // Newton iteration from an upper bound.
        let sh = {
            let raw = bits - 126;
            raw + (raw & 1)
        };
        let (top, _) = self.split_sticky(sh);
        let t: u128 = (top.v[0] as u128) | top.v.get(1).map_or(0, |&h| (h as u128) << 64);
        let mut r0 = (t as f64).sqrt() as u128 + (1 << 12);
        while r0.checked_mul(r0).is_none() {
            r0 -= 1;
        }
        let mut x = Limbs::from_u128(r0).shl(sh / 2);
        loop {
            let y = x.add(&self.div_rem(&x).0).shr(1);
            if y.cmp(&x) != Ordering::Less {
                break;
            }
            x = y;
        }
        // x may still be one off in either direction.
        while x.mul(&x).cmp(self) == Ordering::Greater {
            x = x.sub(&Limbs::from_u64(1));
        }
        loop {
            let x1 = x.add_u64(1);
            if x1.mul(&x1).cmp(self) != Ordering::Greater {
                x = x1;
            } else {
                break;
            }
        }
        let rem_zero = x.mul(&x).cmp(self) == Ordering::Equal;
        (x, !rem_zero)
    }

    pub fn pow_u32(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Limbs::from_u64(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn pow10(e: u32) -> Self {
        Limbs::from_u64(10).pow_u32(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn to_big(l: &Limbs) -> BigUint {
        let mut b = BigUint::default();
        for &limb in l.as_limbs().iter().rev() {
            b = (b << 64u32) | BigUint::from(limb);
        }
        b
    }

    fn from_big(b: &BigUint) -> Limbs {
        let digits = b.to_u64_digits();
        Limbs::from_limbs(&digits)
    }

    fn arb_limbs() -> impl Strategy<Value = Limbs> {
        proptest::collection::vec(any::<u64>(), 0..12).prop_map(|v| Limbs::from_limbs(&v))
    }

    #[test]
    fn basics() {
        assert!(Limbs::zero().is_zero());
        assert_eq!(Limbs::from_u64(1).bit_len(), 1);
        assert_eq!(Limbs::from_u64(255).bit_len(), 8);
        assert_eq!(Limbs::from_u128(1u128 << 100).bit_len(), 101);
        let x = Limbs::from_u64(1).shl(200);
        assert_eq!(x.bit_len(), 201);
        assert_eq!(x.shr(200).to_u64(), Some(1));
        assert!(x.bit(200));
        assert!(!x.bit(199));
    }

    #[test]
    fn sticky_bits() {
        let x = Limbs::from_u64(0b1011).shl(70);
        assert!(!x.low_bits_nonzero(70));
        assert!(x.low_bits_nonzero(71));
        let (hi, sticky) = x.split_sticky(72);
        assert!(sticky);
        assert_eq!(hi.to_u64(), Some(0b10));
    }

    #[test]
    fn division_small() {
        let x = Limbs::from_u128(12345678901234567890123456789);
        let (q, r) = x.div_rem_u64(10);
        assert_eq!(r, 9);
        assert_eq!(to_big(&q), to_big(&x) / 10u32);
    }

    #[test]
    fn pow10_matches() {
        assert_eq!(to_big(&Limbs::pow10(30)), BigUint::from(10u32).pow(30));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]

        #[test]
        fn add_sub_roundtrip(a in arb_limbs(), b in arb_limbs()) {
            let s = a.add(&b);
            prop_assert_eq!(to_big(&s), to_big(&a) + to_big(&b));
            prop_assert_eq!(to_big(&s.sub(&a)), to_big(&b));
        }

        #[test]
        fn mul_matches(a in arb_limbs(), b in arb_limbs()) {
            prop_assert_eq!(to_big(&a.mul(&b)), to_big(&a) * to_big(&b));
        }

        #[test]
        fn shifts_match(a in arb_limbs(), n in 0u64..300) {
            prop_assert_eq!(to_big(&a.shl(n)), to_big(&a) << n as usize);
            prop_assert_eq!(to_big(&a.shr(n)), to_big(&a) >> n as usize);
            prop_assert_eq!(a.low_bits_nonzero(n), to_big(&a) != (to_big(&a) >> n as usize) << n as usize);
        }

        #[test]
        fn div_rem_matches(a in arb_limbs(), b in arb_limbs()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(to_big(&q), to_big(&a) / to_big(&b));
            prop_assert_eq!(to_big(&r), to_big(&a) % to_big(&b));
        }

        #[test]
        fn isqrt_matches(a in arb_limbs()) {
            let (root, inexact) = a.isqrt_rem();
            let nb = to_big(&a);
            let rb = nb.sqrt();
            prop_assert_eq!(to_big(&root), rb.clone());
            prop_assert_eq!(inexact, rb.clone() * rb != nb);
        }

        #[test]
        fn cmp_matches(a in arb_limbs(), b in arb_limbs()) {
            prop_assert_eq!(a.cmp(&b), to_big(&a).cmp(&to_big(&b)));
        }

        #[test]
        fn mul_u64_add_matches(a in arb_limbs(), m in any::<u64>(), c in any::<u64>()) {
            prop_assert_eq!(to_big(&a.mul_u64_add(m, c)), to_big(&a) * m + c);
        }

        #[test]
        fn roundtrip_big(limbs in proptest::collection::vec(any::<u64>(), 0..12)) {
            let l = Limbs::from_limbs(&limbs);
            prop_assert_eq!(to_big(&from_big(&to_big(&l))), to_big(&l));
        }
    }
}
