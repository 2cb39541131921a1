//! Ground fields: a prime field `F_p` or the rationals.
//!
//! Every [`Scalar`] remembers which field it lives in. Arithmetic between
//! scalars of different fields is a programming error and panics; the
//! containers built on top ([`crate::linalg::Mat`], [`crate::algebra::Algebra`])
//! check field agreement at construction time and report it as an error.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::linalg::LinalgError;

/// The field all objects of one session are defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u32),
    Rational,
}

impl Field {
    /// A prime field. `p` must be prime and below 2^31.
    pub fn prime(p: u32) -> Result<Field, LinalgError> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod { v: 0, p: *p },
            Field::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        match self {
            Field::Prime(p) => {
                let m = *p as i64;
                Scalar::Mod { v: n.rem_euclid(m) as u32, p: *p }
            }
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// `num / den`, failing when `den` vanishes in the field.
    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        let d = self.int(den);
        Ok(&self.int(num) * &d.inv()?)
    }

    /// Every element of a prime field, in order; `None` for the rationals.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match self {
            Field::Prime(p) => {
                let p = *p;
                Some((0..p).map(move |v| Scalar::Mod { v, p }))
            }
            Field::Rational => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod { v: u32, p: u32 },
    Rat(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod { p, .. } => Field::Prime(*p),
            Scalar::Rat(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { v, .. } => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { v, .. } => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn inv(&self) -> Result<Scalar, LinalgError> {
        if self.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Mod { v, p } => Scalar::Mod { v: pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32, p: *p },
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
        })
    }

    /// Integer numerator and denominator of a rational scalar.
    pub fn as_ratio(&self) -> Option<(BigInt, BigInt)> {
        match self {
            Scalar::Rat(r) => Some((r.numer().clone(), r.denom().clone())),
            Scalar::Mod { .. } => None,
        }
    }

    /// Canonical residue in `0..p` for prime-field scalars.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Mod { v, .. } => Some(*v),
            Scalar::Rat(_) => None,
        }
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Rat(r)
    }

    /// Rough size, used to keep rational searches bounded.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Mod { v, .. } => *v as u64,
            Scalar::Rat(r) => {
                let n = r.numer().abs().to_u64().unwrap_or(u64::MAX);
                let d = r.denom().to_u64().unwrap_or(u64::MAX);
                n.max(d)
            }
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

#[track_caller]
fn same_prime(p: u32, q: u32) {
    assert_eq!(p, q, "scalars from different fields");
}

impl Add for &Scalar {
    type Output = Scalar;
    #[track_caller]
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Mod { v, p }, Scalar::Mod { v: w, p: q }) => {
                same_prime(*p, *q);
                Scalar::Mod { v: ((*v as u64 + *w as u64) % *p as u64) as u32, p: *p }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    #[track_caller]
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Mod { v, p }, Scalar::Mod { v: w, p: q }) => {
                same_prime(*p, *q);
                Scalar::Mod { v: ((*v as u64 + *p as u64 - *w as u64) % *p as u64) as u32, p: *p }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    #[track_caller]
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Mod { v, p }, Scalar::Mod { v: w, p: q }) => {
                same_prime(*p, *q);
                Scalar::Mod { v: (*v as u64 * *w as u64 % *p as u64) as u32, p: *p }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { v, p } => Scalar::Mod { v: (*p - *v) % *p, p: *p },
            Scalar::Rat(a) => Scalar::Rat(-a),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            #[track_caller]
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
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
        match self {
            Scalar::Mod { v, .. } => write!(f, "{v}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}
