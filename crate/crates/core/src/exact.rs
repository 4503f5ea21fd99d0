//! Exact scalars: the prime fields F_p for small p, plus the generic field
//! trait used for branch-point coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Num;

use crate::error::{Error, Result};

/// Largest prime modulus accepted by [`Prime::new`].
pub const MAX_PRIME: u32 = 97;

/// A validated small prime, `2 <= p <= 97`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub const TWO: Prime = Prime(2);
    pub const THREE: Prime = Prime(3);

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    /// Inverse of a residue by the extended Euclidean algorithm.
    pub fn inv(self, v: u32) -> Result<u32> {
        let p = self.0 as i64;
        let a = (v as i64).rem_euclid(p);
        if a == 0 {
            return Err(Error::ZeroInverse(self.0));
        }
        let (mut r0, mut r1) = (p, a);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(p) as u32)
    }

    /// `base^exp mod p` by square-and-multiply.
    pub fn pow(self, base: u32, mut exp: u64) -> u32 {
        let p = self.0 as u64;
        let mut b = base as u64 % p;
        let mut acc = 1u64 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc as u32
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    value: u32,
    modulus: Prime,
}

impl FieldScalar {
    pub fn new(value: i64, modulus: Prime) -> Self {
        FieldScalar {
            value: modulus.reduce(value),
            modulus,
        }
    }

    pub fn zero(modulus: Prime) -> Self {
        FieldScalar { value: 0, modulus }
    }

    pub fn one(modulus: Prime) -> Self {
        FieldScalar { value: 1, modulus }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Result<Self> {
        fp_inverse(self)
    }
}

/// Multiplicative inverse in F_p; `Error::ZeroInverse` for zero.
pub fn fp_inverse(x: FieldScalar) -> Result<FieldScalar> {
    Ok(FieldScalar {
        value: x.modulus.inv(x.value)?,
        modulus: x.modulus,
    })
}

impl Add for FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        FieldScalar {
            value: (self.value + rhs.value) % self.modulus.0,
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> Self {
        FieldScalar {
            value: (self.modulus.0 - self.value) % self.modulus.0,
            modulus: self.modulus,
        }
    }
}

impl Mul for FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        FieldScalar {
            value: ((self.value as u64 * rhs.value as u64) % self.modulus.0 as u64) as u32,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Coordinate field for branch points. Implemented for any exact or
/// approximate `num_traits` field; the crate only ever instantiates it with
/// exact rationals.
pub trait FieldElement: Clone + PartialEq + fmt::Debug + Num + Neg<Output = Self> {}

impl<T> FieldElement for T where T: Clone + PartialEq + fmt::Debug + Num + Neg<Output = T> {}

/// Horner evaluation; `coeffs` run from the constant term upward.
pub fn rational_eval_poly<T: FieldElement>(coeffs: &[T], x: &T) -> T {
    coeffs
        .iter()
        .rev()
        .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// `x^n` for a field element (non-negative exponent).
pub fn field_pow<T: FieldElement>(x: &T, n: u64) -> T {
    let mut acc = T::one();
    let mut base = x.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    acc
}

/// `(-1)^n` in any field.
pub fn sign_pow<T: FieldElement>(n: u64) -> T {
    if n.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

/// Coefficients (constant term first) of `prod (t - a_i)^{k_i}`.
pub fn poly_from_roots<T: FieldElement>(roots: &[(T, u32)]) -> Vec<T> {
    let mut poly = vec![T::one()];
    for (a, k) in roots {
        for _ in 0..*k {
            let mut next = vec![T::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + c.clone();
                next[i] = next[i].clone() - c.clone() * a.clone();
            }
            poly = next;
        }
    }
    poly
}
