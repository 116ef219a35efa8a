//! Prime-field arithmetic backed by dense lookup tables.
//!
//! Every enumeration kernel in the crate works over `F_p` for small `p`, so
//! inverses, square roots and the quadratic character are tabulated once at
//! construction and looked up in O(1) afterwards.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest supported modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 20;

const NO_ROOT: u32 = u32::MAX;

/// Deterministic trial-division primality test. Inputs here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Primes in `lo..=hi`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// The field `Z/pZ` with precomputed inverse, square-root and character tables.
///
/// Values are immutable after construction and can be shared freely across
/// threads.
#[derive(Clone)]
pub struct PrimeField {
    p: u32,
    inv_table: Vec<u32>,
    chi_table: Vec<i8>,
    sqrt_table: Vec<u32>,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        let p32 = p as u32;
        let n = p as usize;

        let mut sqrt_table = vec![NO_ROOT; n];
        let mut chi_table = vec![-1i8; n];
        chi_table[0] = 0;
        for b in 0..p {
            let sq = (b * b % p) as usize;
            // keep the smaller root so the table is deterministic
            if sqrt_table[sq] == NO_ROOT {
                sqrt_table[sq] = b as u32;
            }
            if sq != 0 {
                chi_table[sq] = 1;
            }
        }

        // inv[a] = -(p / a) * inv[p mod a]
        let mut inv_table = vec![0u32; n];
        if n > 1 {
            inv_table[1] = 1;
        }
        for a in 2..p {
            let q = p / a;
            let r = (p % a) as usize;
            let v = (p - q) * inv_table[r] as u64 % p;
            inv_table[a as usize] = v as u32;
        }

        Ok(Self {
            p: p32,
            inv_table,
            chi_table,
            sqrt_table,
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p as u64
    }

    /// Fails with [`Error::BadPrime`] for `p` in `{2, 3}`.
    pub fn require_good(&self) -> Result<()> {
        if self.p < 5 {
            Err(Error::BadPrime(self.p as u64))
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
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
        (a as u64 * b as u64 % self.p as u64) as u32
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.inv_table[a as usize])
        }
    }

    /// Inverse of a residue known to be nonzero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inv_table[a as usize]
    }

    /// Quadratic character of an in-range residue, without the range check.
    #[inline]
    pub fn chi(&self, a: u32) -> i8 {
        self.chi_table[a as usize]
    }

    /// Legendre symbol `(a / p)` in `{-1, 0, 1}`.
    pub fn legendre(&self, a: u64) -> Result<i8> {
        if a >= self.p as u64 {
            return Err(Error::OutOfRange {
                value: a,
                p: self.p as u64,
            });
        }
        Ok(self.chi_table[a as usize])
    }

    /// Smallest square root of `a`, if one exists.
    #[inline]
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        match self.sqrt_table[a as usize] {
            NO_ROOT => None,
            r => Some(r),
        }
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// True when `-1` is a square, i.e. `p ≡ 1 mod 4` (or `p = 2`).
    pub fn minus_one_is_square(&self) -> bool {
        self.chi(self.neg(1)) == 1
    }
}

/// Minimal field interface shared by `F_p` and `Q`, so the birational maps can
/// be evaluated over either.
pub trait FieldOps {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn sum<'a, I>(&self, it: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        it.into_iter().fold(self.zero(), |acc, v| self.add(&acc, v))
    }

    fn product<'a, I>(&self, it: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        it.into_iter().fold(self.one(), |acc, v| self.mul(&acc, v))
    }
}

impl FieldOps for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce(v)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        PrimeField::add(self, *a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        PrimeField::sub(self, *a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        PrimeField::mul(self, *a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        PrimeField::neg(self, *a)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        PrimeField::inv(self, *a)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
}

/// The rational numbers, with arbitrary-precision elements.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl FieldOps for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}
