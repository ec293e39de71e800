use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactla::fp::inv_mod;

/// Coefficient ring for coinvariant arithmetic.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    const RING: &'static str;

    fn from_bigint(x: &BigInt) -> Self;

    fn from_i64(x: i64) -> Self {
        Self::from_bigint(&BigInt::from(x))
    }

    /// Image of a rational number, if it lies in the ring.
    fn from_rational(x: &BigRational) -> Option<Self>;

    /// `self / n`, available only over the rationals.
    fn div_integer(&self, n: i64) -> Option<Self>;
}

impl Scalar for BigInt {
    const RING: &'static str = "Z";

    fn from_bigint(x: &BigInt) -> Self {
        x.clone()
    }

    fn from_rational(x: &BigRational) -> Option<Self> {
        x.is_integer().then(|| x.to_integer())
    }

    fn div_integer(&self, _n: i64) -> Option<Self> {
        None
    }
}

impl Scalar for BigRational {
    const RING: &'static str = "Q";

    fn from_bigint(x: &BigInt) -> Self {
        BigRational::from_integer(x.clone())
    }

    fn from_rational(x: &BigRational) -> Option<Self> {
        Some(x.clone())
    }

    fn div_integer(&self, n: i64) -> Option<Self> {
        (n != 0).then(|| self / BigRational::from_integer(BigInt::from(n)))
    }
}

/// Element of the prime field `F_P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(x: i64) -> Self {
        Fp(x.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
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

impl<const P: u64> Scalar for Fp<P> {
    const RING: &'static str = "F_p";

    fn from_bigint(x: &BigInt) -> Self {
        let p = BigInt::from(P);
        let r = ((x % &p) + &p) % &p;
        Fp(u64::try_from(&r).unwrap())
    }

    fn from_rational(x: &BigRational) -> Option<Self> {
        let d = Self::from_bigint(x.denom());
        if d.is_zero() {
            return None;
        }
        Some(Self::from_bigint(x.numer()) * Fp(inv_mod(d.0, P)))
    }

    fn div_integer(&self, _n: i64) -> Option<Self> {
        None
    }
}
