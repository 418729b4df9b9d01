use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Coefficient field: the rationals, or a prime field F_p with p < 2^16.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u16),
}

fn is_prime(p: u16) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    let p = p as u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Prime field constructor; rejects composites and 0/1.
    pub fn prime(p: u16) -> Result<Field, Error> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::Malformed(format!("{p} is not a prime")))
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p as u32,
        }
    }

    pub fn zero(self) -> Scalar {
        self.integer(0)
    }

    pub fn one(self) -> Scalar {
        self.integer(1)
    }

    /// The image of an integer in this field.
    pub fn integer(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from(BigInt::from(n))),
            Field::Prime(p) => {
                let m = (n % p as i64 + p as i64) % p as i64;
                Scalar::Prime { p, value: m as u16 }
            }
        }
    }

    /// Parses an exact scalar literal: `a` or `a/b` over Q, a signed integer
    /// over F_p (reduced mod p).
    pub fn parse(self, text: &str) -> Result<Scalar, Error> {
        let bad = |t: &str| Error::Malformed(format!("cannot parse scalar {t:?}"));
        match self {
            Field::Rational => {
                if let Some((num, den)) = text.split_once('/') {
                    let n: BigInt = num.trim().parse().map_err(|_| bad(text))?;
                    let d: BigInt = den.trim().parse().map_err(|_| bad(text))?;
                    if d.is_zero() {
                        return Err(Error::Malformed(format!("zero denominator in {text:?}")));
                    }
                    Ok(Scalar::Rational(BigRational::new(n, d)))
                } else {
                    let n: BigInt = text.trim().parse().map_err(|_| bad(text))?;
                    Ok(Scalar::Rational(BigRational::from(n)))
                }
            }
            Field::Prime(p) => {
                let n: BigInt = text.trim().parse().map_err(|_| bad(text))?;
                let p_big = BigInt::from(p);
                let mut r = n % &p_big;
                if r.is_negative() {
                    r += &p_big;
                }
                let (_, digits) = r.to_u32_digits();
                let value = digits.first().copied().unwrap_or(0) as u16;
                Ok(Scalar::Prime { p, value })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Exact field element. Rationals are kept in lowest terms with positive
/// denominator (BigRational maintains that on construction); prime-field
/// values are residues in [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { p: u16, value: u16 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; None for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Prime { p, value } => {
                if *value == 0 {
                    None
                } else {
                    // Extended Euclid on (value, p); p is prime so the gcd is 1.
                    let (mut r0, mut r1) = (*value as i64, *p as i64);
                    let (mut s0, mut s1) = (1i64, 0i64);
                    while r1 != 0 {
                        let q = r0 / r1;
                        (r0, r1) = (r1, r0 - q * r1);
                        (s0, s1) = (s1, s0 - q * s1);
                    }
                    debug_assert_eq!(r0, 1);
                    let inv = ((s0 % *p as i64) + *p as i64) % *p as i64;
                    Some(Scalar::Prime { p: *p, value: inv as u16 })
                }
            }
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert!(
            self.field() == other.field(),
            "scalar arithmetic across fields: {} vs {}",
            self.field(),
            other.field()
        );
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                p: *p,
                value: ((*a as u32 + *b as u32) % *p as u32) as u16,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                p: *p,
                value: ((*a as u32 * *b as u32) % *p as u32) as u16,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { p, value } => Scalar::Prime {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}
