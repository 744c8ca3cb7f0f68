//! Exact GF(2^m) arithmetic for 2 <= m <= 16 via log/antilog tables.
//!
//! Elements are integers in [0, 2^m) read as coordinate vectors in the
//! polynomial basis; the generator alpha is the residue of x, so the table
//! construction itself certifies primitivity of the modulus.

use crate::error::{Error, Result};

/// A field element: the polynomial-basis bitmask, always `< 2^m`.
pub type FieldElement = u32;

/// Default primitive polynomial per extension degree (index by `m`).
/// These are the conventional minimum-weight choices, e.g. x^4+x+1 for m=4,
/// x^8+x^4+x^3+x^2+1 for m=8, x^12+x^6+x^4+x+1 for m=12.
const DEFAULT_POLYS: [u32; 17] = [
    0, 0,       // m = 0, 1 unused
    0x7,     // m = 2
    0xB,     // m = 3
    0x13,    // m = 4
    0x25,    // m = 5
    0x43,    // m = 6
    0x89,    // m = 7
    0x11D,   // m = 8
    0x211,   // m = 9
    0x409,   // m = 10
    0x805,   // m = 11
    0x1053,  // m = 12
    0x201B,  // m = 13
    0x4443,  // m = 14
    0x8003,  // m = 15
    0x1100B, // m = 16
];

/// Default primitive polynomial mask for `m`, if supported.
pub fn default_poly(m: u32) -> Option<u32> {
    (2..=16).contains(&m).then(|| DEFAULT_POLYS[m as usize])
}

/// Arithmetic context for GF(2^m). Immutable after construction; all
/// operations are pure table lookups and safe to share across threads.
#[derive(Clone)]
pub struct FieldCtx {
    m: u32,
    poly: u32,
    n: u32,
    log: Vec<u32>,     // log[x] for x != 0; log[0] is a sentinel
    antilog: Vec<u32>, // antilog[i] = alpha^i for 0 <= i < n
}

impl FieldCtx {
    /// Builds GF(2^m) with the default primitive polynomial.
    pub fn new(m: u32) -> Result<FieldCtx> {
        let poly = default_poly(m).ok_or(Error::DegreeOutOfRange { m })?;
        FieldCtx::with_poly(m, poly)
    }

    /// Builds GF(2^m) with an explicit modulus, validating that it is
    /// irreducible and primitive.
    pub fn with_poly(m: u32, poly: u32) -> Result<FieldCtx> {
        if !(2..=16).contains(&m) {
            return Err(Error::DegreeOutOfRange { m });
        }
        if poly >> m != 1 {
            return Err(Error::WrongPolyDegree {
                m,
                poly: poly as u64,
            });
        }
        if let Some(factor) = find_factor(poly as u64, m) {
            return Err(Error::ReduciblePoly {
                poly: poly as u64,
                factor,
            });
        }
        let n = (1u32 << m) - 1;
        let mut antilog = vec![0u32; n as usize];
        let mut log = vec![u32::MAX; 1 << m];
        let mut v: u32 = 1;
        for i in 0..n {
            if v == 1 && i > 0 {
                // Returned to 1 early: the root of an irreducible but
                // non-primitive modulus.
                return Err(Error::NonPrimitivePoly {
                    poly: poly as u64,
                    order: i as u64,
                    expected: n as u64,
                });
            }
            antilog[i as usize] = v;
            log[v as usize] = i;
            v <<= 1;
            if v >> m != 0 {
                v ^= poly;
            }
        }
        debug_assert_eq!(v, 1, "alpha^n must be 1 in a field");
        Ok(FieldCtx {
            m,
            poly,
            n,
            log,
            antilog,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// The multiplicative group order 2^m - 1.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of field elements, 2^m.
    pub fn size(&self) -> u32 {
        1 << self.m
    }

    /// The generator alpha (the residue of x).
    pub fn alpha(&self) -> FieldElement {
        2
    }

    /// alpha^i, with i reduced mod n.
    pub fn antilog(&self, i: u64) -> FieldElement {
        self.antilog[(i % self.n as u64) as usize]
    }

    /// Discrete log base alpha; `None` for zero.
    pub fn log(&self, x: FieldElement) -> Option<u32> {
        debug_assert!(x < self.size());
        (x != 0).then(|| self.log[x as usize])
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        debug_assert!(x < self.size() && y < self.size());
        x ^ y
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        debug_assert!(x < self.size() && y < self.size());
        if x == 0 || y == 0 {
            return 0;
        }
        let i = self.log[x as usize] as u64 + self.log[y as usize] as u64;
        self.antilog[(i % self.n as u64) as usize]
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        debug_assert!(x < self.size());
        if x == 0 {
            return Err(Error::ZeroInverse);
        }
        let i = (self.n - self.log[x as usize]) % self.n;
        Ok(self.antilog[i as usize])
    }

    /// x^k, with the convention x^0 = 1 (including 0^0 = 1).
    pub fn pow(&self, x: FieldElement, k: u64) -> FieldElement {
        debug_assert!(x < self.size());
        if k == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        let i = self.log[x as usize] as u64 * (k % self.n as u64);
        self.antilog[(i % self.n as u64) as usize]
    }

    /// The Frobenius power x^(2^e); e is reduced mod m.
    pub fn frob_pow(&self, x: FieldElement, e: u32) -> FieldElement {
        debug_assert!(x < self.size());
        if x == 0 {
            return 0;
        }
        let e = e % self.m;
        let i = (self.log[x as usize] as u64) << e;
        self.antilog[(i % self.n as u64) as usize]
    }

    /// All field elements, 0 first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        0..self.size()
    }
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldCtx(GF(2^{}), poly {:#x})", self.m, self.poly)
    }
}

/// Remainder of a by b over GF(2), both as bitmasks.
fn mod2_rem(mut a: u64, b: u64) -> u64 {
    debug_assert!(b != 0);
    let db = 63 - b.leading_zeros() as i32;
    while a != 0 {
        let da = 63 - a.leading_zeros() as i32;
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Smallest nontrivial factor of `poly` (degree m) among masks of degree
/// 1..=m/2, or `None` when irreducible. The first divisor found in ascending
/// order necessarily has minimal degree and is itself irreducible.
fn find_factor(poly: u64, m: u32) -> Option<u64> {
    (2..(2u64 << (m / 2))).find(|&d| mod2_rem(poly, d) == 0)
}
