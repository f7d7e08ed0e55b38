//! Exact scalars: rationals in lowest terms, or residues modulo an odd prime.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Prime used for finite-field work unless the caller picks another one.
pub const DEFAULT_PRIME: u32 = 101;

/// The coefficient field a computation lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Rational,
    Prime(u32),
}

impl Domain {
    /// Finite field `F_p`; `p` must be an odd prime below 2^31.
    pub fn prime(p: u32) -> Result<Self, Error> {
        if !(3..1 << 31).contains(&p) || !is_prime(u64::from(p)) {
            return Err(Error::input(alloc::format!("{p} is not an odd prime below 2^31")));
        }
        Ok(Domain::Prime(p))
    }

    pub fn default_prime() -> Self {
        Domain::Prime(DEFAULT_PRIME)
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Domain::Rational => 0,
            Domain::Prime(p) => *p,
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `Q` or of `F_p`.
///
/// Field elements carry their modulus so that every binary operation can
/// check that both sides live in the same field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u32, prime: u32 },
}

impl Scalar {
    pub fn zero(domain: Domain) -> Self {
        Self::from_i64(domain, 0)
    }

    pub fn one(domain: Domain) -> Self {
        Self::from_i64(domain, 1)
    }

    pub fn from_i64(domain: Domain, n: i64) -> Self {
        match domain {
            Domain::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Domain::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(i64::from(p)) as u32,
                prime: p,
            },
        }
    }

    /// `num / den`, reduced into the domain. Fails when `den` vanishes there.
    pub fn from_ratio(domain: Domain, num: i64, den: i64) -> Result<Self, Error> {
        let d = Self::from_i64(domain, den);
        let inv = d.inverse().ok_or_else(|| Error::input("zero denominator"))?;
        Ok(Self::from_i64(domain, num) * inv)
    }

    /// Maps an exact rational into the domain (reduction mod p when needed).
    pub fn from_big_rational(domain: Domain, q: &BigRational) -> Result<Self, Error> {
        match domain {
            Domain::Rational => Ok(Scalar::Rational(q.clone())),
            Domain::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| -> u32 {
                    let r = x % &pb;
                    let r = if r.is_negative() { r + &pb } else { r };
                    r.to_u32().unwrap_or(0)
                };
                let num = Scalar::Mod { value: reduce(q.numer()), prime: p };
                let den = Scalar::Mod { value: reduce(q.denom()), prime: p };
                let inv = den
                    .inverse()
                    .ok_or_else(|| Error::input(alloc::format!("denominator divisible by {p}")))?;
                Ok(num * inv)
            }
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rational(_) => Domain::Rational,
            Scalar::Mod { prime, .. } => Domain::Prime(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod { value, prime } => Scalar::Mod {
                value: pow_mod(u64::from(*value), u64::from(*prime) - 2, u64::from(*prime)) as u32,
                prime: *prime,
            },
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.domain());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Serialized coefficient: `"num/den"` (or `"num"` for integers) over Q,
    /// the canonical residue in decimal over F_p.
    pub fn to_coeff_string(&self) -> String {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    alloc::format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { value, .. } => value.to_string(),
        }
    }

    /// Inverse of [`Scalar::to_coeff_string`]; accepts `"a"` and `"a/b"` in
    /// either domain.
    pub fn parse_coeff(domain: Domain, s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let parse = |t: &str| -> Result<BigInt, Error> {
            t.parse::<BigInt>()
                .map_err(|_| Error::input(alloc::format!("bad coefficient `{s}`")))
        };
        let (n, d) = (parse(num)?, parse(den)?);
        if d.is_zero() {
            return Err(Error::input(alloc::format!("zero denominator in `{s}`")));
        }
        Self::from_big_rational(domain, &BigRational::new(n, d))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar domain mismatch: {:?} vs {:?}", a.domain(), b.domain())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, prime: p }, Scalar::Mod { value: b, prime: q }) if p == q => {
                Scalar::Mod {
                    value: ((u64::from(*a) + u64::from(*b)) % u64::from(*p)) as u32,
                    prime: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, prime: p }, Scalar::Mod { value: b, prime: q }) if p == q => {
                Scalar::Mod {
                    value: (u64::from(*a) * u64::from(*b) % u64::from(*p)) as u32,
                    prime: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, prime } => Scalar::Mod {
                value: if *value == 0 { 0 } else { prime - value },
                prime: *prime,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_coeff_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let a = Scalar::from_ratio(Domain::Rational, 6, -4).unwrap();
        assert_eq!(a.to_coeff_string(), "-3/2");
        let b = Scalar::parse_coeff(Domain::Rational, "10/4").unwrap();
        assert_eq!(b.to_coeff_string(), "5/2");
        assert!((a + b).is_one());
    }

    #[test]
    fn prime_field_canonical_representative() {
        let p = Domain::prime(7).unwrap();
        assert_eq!(Scalar::from_i64(p, -1).to_coeff_string(), "6");
        let half = Scalar::from_ratio(p, 1, 2).unwrap();
        assert_eq!(half.to_coeff_string(), "4");
        assert!((&half * &Scalar::from_i64(p, 2)).is_one());
        assert_eq!(Scalar::parse_coeff(p, "3/2").unwrap().to_coeff_string(), "5");
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(Domain::prime(2).is_err());
        assert!(Domain::prime(9).is_err());
        assert!(Domain::prime(101).is_ok());
        assert!(Scalar::from_ratio(Domain::prime(5).unwrap(), 1, 10).is_err());
    }

    #[test]
    #[should_panic(expected = "domain mismatch")]
    fn mixing_domains_panics() {
        let _ = Scalar::one(Domain::Rational) + Scalar::one(Domain::default_prime());
    }
}
