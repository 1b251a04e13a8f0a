//! Coefficient rings: the integers and the prime fields.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// A commutative ring of coefficients.
///
/// Everything in the crate is written against this trait. The integers are
/// `i64`; the prime fields are [`Fp`].
pub trait Coeff:
    Copy
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<Output = Self>
    + AddAssign
    + Send
    + Sync
    + 'static
{
    /// 0 for the integers, p for the field with p elements.
    const CHARACTERISTIC: u64;

    fn from_i64(n: i64) -> Self;

    /// `(-1)^parity`.
    fn sign(parity: usize) -> Self {
        if parity.is_multiple_of(2) {
            Self::one()
        } else {
            -Self::one()
        }
    }

    /// Representative in the symmetric range, used when printing signed sums.
    fn to_signed(self) -> i64;
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Coeff {
    fn inv(self) -> Self;
}

impl Coeff for i64 {
    const CHARACTERISTIC: u64 = 0;

    fn from_i64(n: i64) -> Self {
        n
    }

    fn to_signed(self) -> i64 {
        self
    }
}

/// The field with `P` elements. `P` must be prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const fn new(n: u64) -> Self {
        Fp(n % P)
    }

    pub const fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;

    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Coeff for Fp<P> {
    const CHARACTERISTIC: u64 = P;

    fn from_i64(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u64)
    }

    fn to_signed(self) -> i64 {
        if self.0 > P / 2 {
            self.0 as i64 - P as i64
        } else {
            self.0 as i64
        }
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_{P}");
        self.pow(P - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        type F7 = Fp<7>;
        let a = F7::new(3);
        assert_eq!(a * a.inv(), F7::one());
        assert_eq!(-a + a, F7::zero());
        assert_eq!(F7::from_i64(-1), F7::new(6));
        assert_eq!(F7::new(6).to_signed(), -1);
        assert_eq!(<Fp<2> as Coeff>::sign(3), Fp::<2>::one());
        assert_eq!(<i64 as Coeff>::sign(3), -1);
    }
}
