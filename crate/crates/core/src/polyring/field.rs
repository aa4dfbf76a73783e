use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field of every ring in a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

/// A field element. `P` residues are always kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    P(u32),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rational => Coeff::Q(BigRational::zero()),
            Field::Prime(_) => Coeff::P(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Field::Rational => Coeff::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Coeff::P(v.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            Field::Rational => Coeff::Q(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Coeff::P(r.to_u32().expect("residue fits"))
            }
        }
    }

    /// Maps a rational into the field; fails in characteristic p when p divides the denominator.
    pub fn from_rational(&self, v: &BigRational) -> Option<Coeff> {
        match self {
            Field::Rational => Some(Coeff::Q(v.clone())),
            Field::Prime(_) => {
                let n = self.from_bigint(v.numer());
                let d = self.from_bigint(v.denom());
                if self.is_zero(&d) {
                    None
                } else {
                    Some(self.mul(&n, &self.inv(&d)))
                }
            }
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(q) => q.is_zero(),
            Coeff::P(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(q) => q.is_one(),
            Coeff::P(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, self) {
            (Coeff::Q(x), Coeff::Q(y), _) => Coeff::Q(x + y),
            (Coeff::P(x), Coeff::P(y), Field::Prime(p)) => Coeff::P(((*x as u64 + *y as u64) % *p as u64) as u32),
            _ => panic!("coefficient from a different field"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (a, self) {
            (Coeff::Q(x), _) => Coeff::Q(-x),
            (Coeff::P(0), _) => Coeff::P(0),
            (Coeff::P(x), Field::Prime(p)) => Coeff::P(p - x),
            _ => panic!("coefficient from a different field"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, self) {
            (Coeff::Q(x), Coeff::Q(y), _) => Coeff::Q(x * y),
            (Coeff::P(x), Coeff::P(y), Field::Prime(p)) => Coeff::P(((*x as u64 * *y as u64) % *p as u64) as u32),
            _ => panic!("coefficient from a different field"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        assert!(!self.is_zero(a), "inverse of zero");
        match (a, self) {
            (Coeff::Q(x), _) => Coeff::Q(x.recip()),
            (Coeff::P(x), Field::Prime(p)) => Coeff::P(pow_mod(*x as u64, *p as u64 - 2, *p as u64) as u32),
            _ => panic!("coefficient from a different field"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }
}

impl Coeff {
    /// Sign used by the printer: residues are printed as nonnegative integers.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_negative(),
            Coeff::P(_) => false,
        }
    }

    pub fn abs_string(&self) -> String {
        match self {
            Coeff::Q(q) => {
                let a = q.abs();
                if a.is_integer() {
                    a.numer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                }
            }
            Coeff::P(v) => v.to_string(),
        }
    }

    pub fn is_abs_one(&self) -> bool {
        match self {
            Coeff::Q(q) => q.abs().is_one(),
            Coeff::P(v) => *v == 1,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            write!(f, "-")?;
        }
        write!(f, "{}", self.abs_string())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
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
