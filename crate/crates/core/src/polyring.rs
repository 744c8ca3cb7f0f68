//! Polynomials over GF(2), packed as multi-word bitmasks, and the minimal /
//! generator polynomial construction on top of them.
//!
//! Divisibility checks against x^n - 1 go up to n = 65535, hence the
//! multi-word representation; the polynomials we multiply are tiny.

use crate::cyclotomic::coset;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use std::ops::{Add, Mul};

/// A polynomial over GF(2). Bit i of the packed words is the coefficient of
/// x^i; the word vector carries no trailing zero words (zero = empty).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinPoly {
    words: Vec<u64>,
}

impl BinPoly {
    pub fn zero() -> Self {
        BinPoly { words: Vec::new() }
    }

    pub fn one() -> Self {
        BinPoly::from_mask(1)
    }

    /// Polynomial from the low 64 coefficient bits.
    pub fn from_mask(mask: u64) -> Self {
        let mut p = BinPoly { words: vec![mask] };
        p.normalize();
        p
    }

    /// x^deg.
    pub fn monomial(deg: usize) -> Self {
        let mut words = vec![0u64; deg / 64 + 1];
        words[deg / 64] = 1 << (deg % 64);
        BinPoly { words }
    }

    /// x^n + 1, i.e. x^n - 1 over GF(2).
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut p = BinPoly::monomial(n);
        p.flip(0);
        p
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    fn flip(&mut self, i: usize) {
        if i / 64 >= self.words.len() {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] ^= 1 << (i % 64);
        self.normalize();
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + (63 - last.leading_zeros() as usize))
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    /// The coefficient bitmask, when the degree fits in one word.
    pub fn mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// Coefficient mask as lowercase hex (constant term in the lowest bit).
    pub fn hex(&self) -> String {
        if self.words.is_empty() {
            return "0".to_string();
        }
        let mut s = format!("{:x}", self.words.last().unwrap());
        for w in self.words.iter().rev().skip(1) {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    fn xor_shifted(&mut self, other: &BinPoly, shift: usize) {
        let (wshift, bshift) = (shift / 64, shift % 64);
        let needed = other.words.len() + wshift + 1;
        if self.words.len() < needed {
            self.words.resize(needed, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + wshift] ^= w << bshift;
            if bshift != 0 {
                self.words[i + wshift + 1] ^= w >> (64 - bshift);
            }
        }
        self.normalize();
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divmod(&self, div: &BinPoly) -> Result<(BinPoly, BinPoly)> {
        let db = div.degree().ok_or(Error::ZeroPolyDivisor)?;
        let mut rem = self.clone();
        let mut quot = BinPoly::zero();
        while let Some(da) = rem.degree() {
            if da < db {
                break;
            }
            quot.flip(da - db);
            rem.xor_shifted(div, da - db);
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, div: &BinPoly) -> Result<BinPoly> {
        Ok(self.divmod(div)?.1)
    }

    pub fn divides(&self, other: &BinPoly) -> bool {
        match other.rem(self) {
            Ok(r) => r.is_zero(),
            Err(_) => false,
        }
    }

    pub fn gcd(&self, other: &BinPoly) -> BinPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    /// lcm(a, b); zero if either is zero.
    pub fn lcm2(&self, other: &BinPoly) -> BinPoly {
        if self.is_zero() || other.is_zero() {
            return BinPoly::zero();
        }
        let g = self.gcd(other);
        let (q, r) = self.divmod(&g).expect("gcd nonzero");
        debug_assert!(r.is_zero());
        &q * other
    }

    /// lcm of a list; one for the empty list.
    pub fn lcm(polys: &[BinPoly]) -> BinPoly {
        polys.iter().fold(BinPoly::one(), |acc, p| acc.lcm2(p))
    }

    /// Evaluates the polynomial at a GF(2^m) element by Horner's rule.
    pub fn eval(&self, ctx: &FieldCtx, x: FieldElement) -> FieldElement {
        let Some(deg) = self.degree() else {
            return 0;
        };
        let mut acc: FieldElement = 0;
        for i in (0..=deg).rev() {
            acc = ctx.mul(acc, x);
            if self.coeff(i) {
                acc ^= 1;
            }
        }
        acc
    }
}

impl Add for &BinPoly {
    type Output = BinPoly;

    fn add(self, rhs: &BinPoly) -> BinPoly {
        let mut out = self.clone();
        out.xor_shifted(rhs, 0);
        out
    }
}

impl Mul for &BinPoly {
    type Output = BinPoly;

    fn mul(self, rhs: &BinPoly) -> BinPoly {
        let mut out = BinPoly::zero();
        let (small, big) = if self.degree() <= rhs.degree() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if let Some(d) = small.degree() {
            for i in 0..=d {
                if small.coeff(i) {
                    out.xor_shifted(big, i);
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for BinPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BinPoly(0x{})", self.hex())
    }
}

/// Minimal polynomial of alpha^s over GF(2): the product of (x - alpha^j)
/// over the coset C_s, expanded in GF(2^m). Every expanded coefficient must
/// land in {0, 1}; anything else signals a field-arithmetic bug.
pub fn minimal_poly(ctx: &FieldCtx, s: u64) -> Result<BinPoly> {
    let n = ctx.n() as u64;
    assert!(s < n, "exponent out of range");
    let c = coset(s, n);
    // coeffs[i] is the GF(2^m) coefficient of x^i.
    let mut coeffs: Vec<FieldElement> = vec![1];
    for &j in c.elements() {
        let root = ctx.antilog(j);
        let mut next = vec![0; coeffs.len() + 1];
        for (i, &a) in coeffs.iter().enumerate() {
            next[i + 1] ^= a;
            next[i] ^= ctx.mul(root, a);
        }
        coeffs = next;
    }
    let mut p = BinPoly::zero();
    for (i, &a) in coeffs.iter().enumerate() {
        match a {
            0 => {}
            1 => p.flip(i),
            _ => {
                return Err(Error::Inconsistency(format!(
                    "minimal polynomial of alpha^{s} has coefficient {a:#x} outside GF(2)"
                )))
            }
        }
    }
    debug_assert_eq!(p.degree(), Some(c.len()));
    Ok(p)
}

/// The generator polynomial M_alpha(x) * M_{alpha^{1+2^e}}(x) for the
/// two-coset defining set; checks coprimality and divisibility of x^n - 1.
pub fn generator_poly(ctx: &FieldCtx, e: u32) -> Result<BinPoly> {
    let m = ctx.m();
    if e == 0 || 2 * e > m {
        return Err(Error::ExponentOutOfRange { m, e });
    }
    let n = ctx.n() as u64;
    let u = (1 + (1u64 << e)) % n;
    let m1 = minimal_poly(ctx, 1)?;
    let mu = minimal_poly(ctx, u)?;
    if m1.gcd(&mu) != BinPoly::one() {
        return Err(Error::Inconsistency(format!(
            "minimal polynomials for cosets C_1 and C_{u} are not coprime"
        )));
    }
    let g = &m1 * &mu;
    if !g.divides(&BinPoly::x_pow_minus_one(n as usize)) {
        return Err(Error::Inconsistency(format!(
            "generator polynomial 0x{} does not divide x^{n} - 1",
            g.hex()
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn square_of_x_plus_one() {
        let p = BinPoly::from_mask(0b11);
        assert_eq!((&p * &p).mask(), Some(0b101));
    }

    #[test]
    fn divmod_example() {
        // (x^4+x+1) / (x^2+x+1) = x^2+x remainder 1
        let a = BinPoly::from_mask(0b10011);
        let b = BinPoly::from_mask(0b111);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q.mask(), Some(0b110));
        assert_eq!(r.mask(), Some(1));
        assert!(matches!(
            a.divmod(&BinPoly::zero()),
            Err(Error::ZeroPolyDivisor)
        ));
    }

    #[test]
    fn lcm_is_idempotent() {
        let p = BinPoly::from_mask(0b111);
        assert_eq!(BinPoly::lcm(&[p.clone(), p.clone()]), p);
        assert_eq!(BinPoly::lcm(&[]), BinPoly::one());
    }

    #[test]
    fn minimal_polys_at_m4() {
        let ctx = FieldCtx::new(4).unwrap();
        assert_eq!(minimal_poly(&ctx, 0).unwrap().mask(), Some(0b11));
        assert_eq!(minimal_poly(&ctx, 1).unwrap().mask(), Some(0x13));
        // alpha^5 lies in the F_4 subfield.
        assert_eq!(minimal_poly(&ctx, 5).unwrap().mask(), Some(0b111));
    }

    #[test]
    fn minimal_poly_vanishes_on_its_coset() {
        for m in [4u32, 6] {
            let ctx = FieldCtx::new(m).unwrap();
            let n = ctx.n() as u64;
            for &s in &crate::cyclotomic::coset_leaders(n).unwrap() {
                let p = minimal_poly(&ctx, s).unwrap();
                let c = coset(s, n);
                assert_eq!(p.degree(), Some(c.len()));
                for &j in c.elements() {
                    assert_eq!(p.eval(&ctx, ctx.antilog(j)), 0, "M_{s}(alpha^{j})");
                }
                assert!(p.divides(&BinPoly::x_pow_minus_one(n as usize)));
            }
        }
    }

    #[test]
    fn generator_polys() {
        let ctx = FieldCtx::new(4).unwrap();
        let g = generator_poly(&ctx, 2).unwrap();
        // (x^4+x+1)(x^2+x+1) = x^6+x^5+x^4+x^3+1
        assert_eq!(g.mask(), Some(0x79));
        assert_eq!(g.degree(), Some(6));

        let ctx8 = FieldCtx::new(8).unwrap();
        let g8 = generator_poly(&ctx8, 2).unwrap();
        assert_eq!(g8.degree(), Some(16));
        assert!(g8.divides(&BinPoly::x_pow_minus_one(255)));

        let ctx6 = FieldCtx::new(6).unwrap();
        assert_eq!(generator_poly(&ctx6, 2).unwrap().degree(), Some(12));
        assert_eq!(generator_poly(&ctx6, 3).unwrap().degree(), Some(9));
        assert!(matches!(
            generator_poly(&ctx6, 4),
            Err(Error::ExponentOutOfRange { .. })
        ));
    }

    #[test]
    fn hex_roundtrips_across_word_boundaries() {
        let p = BinPoly::monomial(100);
        assert_eq!(p.hex(), format!("{:x}", 1u128 << 100));
        assert_eq!(BinPoly::zero().hex(), "0");
        assert_eq!(BinPoly::from_mask(0x79).hex(), "79");
    }

    fn poly_strategy() -> impl Strategy<Value = BinPoly> {
        prop::collection::vec(any::<u64>(), 0..3).prop_map(|mut words| {
            let mut p = BinPoly::zero();
            for (i, w) in words.drain(..).enumerate() {
                p.xor_shifted(&BinPoly::from_mask(w), i * 64);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn divmod_reconstructs(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            if let Some(dr) = r.degree() {
                prop_assert!(dr < b.degree().unwrap());
            }
        }

        #[test]
        fn gcd_divides_both(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = a.gcd(&b);
            prop_assert!(!g.is_zero());
            prop_assert!(a.is_zero() || g.divides(&a));
            prop_assert!(b.is_zero() || g.divides(&b));
            prop_assert_eq!(a.gcd(&b), b.gcd(&a));
        }

        #[test]
        fn mul_degree_adds(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let p = &a * &b;
            prop_assert_eq!(p.degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }
    }
}
