use std::fmt;

use crate::error::{Error, Result};

/// The prime field `F_p` for a prime `p < 2^16`.
///
/// Elements are represented by their canonical residues in `[0, p)` stored as
/// `u32`. The bound on `p` guarantees that `a * b + c` never overflows a `u32`
/// for reduced `a`, `b`, `c`, which the elimination kernels rely on.
#[derive(Clone, Copy)]
pub struct PrimeField {
    p: u32,
    // ceil(2^64 / p), used for Lemire's fast remainder.
    magic: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1 << 16)).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let p = p as u32;
        Ok(Self {
            p,
            magic: (u64::MAX / p as u64).wrapping_add(1),
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: u32) -> u32 {
        let low = self.magic.wrapping_mul(a as u64);
        ((low as u128 * self.p as u128) >> 64) as u32
    }

    #[inline]
    pub fn reduce_u64(&self, a: u64) -> u32 {
        (a % self.p as u64) as u32
    }

    pub fn from_i64(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// Centered representative in `(-p/2, p/2]`, handy for printing signs.
    pub fn to_i64(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(a * b)
    }

    /// `a * b + c` with a single reduction.
    #[inline]
    pub fn mul_add(&self, a: u32, b: u32, c: u32) -> u32 {
        self.reduce(a * b + c)
    }

    /// `(-1)^k` as a field element.
    #[inline]
    pub fn sign(&self, k: usize) -> u32 {
        if k % 2 == 0 {
            1
        } else {
            self.p - 1
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.from_i64(t0)
    }
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

impl std::hash::Hash for PrimeField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state)
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
