//! Coefficient domains and exact scalar arithmetic.
//!
//! Three domains are supported: the integers (arbitrary precision), the
//! rationals (always kept reduced), and prime fields F_p with canonical
//! residues in 0..p. A scalar does not know its modulus, so every
//! operation goes through the domain.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffDomain {
    Integers,
    Rationals,
    /// Prime field F_p. The modulus is checked for primality on construction.
    PrimeField(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Int(BigInt),
    Rat(BigRational),
    /// Canonical residue in 0..p.
    Mod(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |dd| dd <= p) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

impl CoeffDomain {
    pub fn prime_field(p: u64) -> Option<CoeffDomain> {
        if is_prime(p) {
            Some(CoeffDomain::PrimeField(p))
        } else {
            None
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoeffDomain::Integers)
    }

    pub fn zero(&self) -> Coeff {
        match self {
            CoeffDomain::Integers => Coeff::Int(BigInt::zero()),
            CoeffDomain::Rationals => Coeff::Rat(BigRational::zero()),
            CoeffDomain::PrimeField(_) => Coeff::Mod(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            CoeffDomain::Integers => Coeff::Int(BigInt::one()),
            CoeffDomain::Rationals => Coeff::Rat(BigRational::one()),
            CoeffDomain::PrimeField(p) => Coeff::Mod(1 % p),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            CoeffDomain::Integers => Coeff::Int(n.clone()),
            CoeffDomain::Rationals => Coeff::Rat(BigRational::from_integer(n.clone())),
            CoeffDomain::PrimeField(p) => {
                let p_big = BigInt::from(*p);
                let mut r = n.mod_floor(&p_big);
                if r.sign() == Sign::Minus {
                    r += &p_big;
                }
                let (_, digits) = r.to_u64_digits();
                Coeff::Mod(digits.first().copied().unwrap_or(0))
            }
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        self.from_bigint(&BigInt::from(n))
    }

    fn expect_pair<'a>(&self, a: &'a Coeff, b: &'a Coeff) -> (&'a Coeff, &'a Coeff) {
        debug_assert!(self.owns(a) && self.owns(b), "coefficient from foreign domain");
        (a, b)
    }

    pub fn owns(&self, c: &Coeff) -> bool {
        matches!(
            (self, c),
            (CoeffDomain::Integers, Coeff::Int(_))
                | (CoeffDomain::Rationals, Coeff::Rat(_))
                | (CoeffDomain::PrimeField(_), Coeff::Mod(_))
        )
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self.expect_pair(a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x + y),
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (Coeff::Mod(x), Coeff::Mod(y)) => {
                let p = self.modulus();
                Coeff::Mod((x + y) % p)
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self.expect_pair(a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x * y),
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (Coeff::Mod(x), Coeff::Mod(y)) => Coeff::Mod(mod_mul(*x, *y, self.modulus())),
            _ => unreachable!(),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match a {
            Coeff::Int(x) => Coeff::Int(-x),
            Coeff::Rat(x) => Coeff::Rat(-x),
            Coeff::Mod(x) => {
                let p = self.modulus();
                Coeff::Mod(if *x == 0 { 0 } else { p - x })
            }
        }
    }

    /// Multiplicative inverse. None for zero, and for non-units over the integers.
    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        match a {
            Coeff::Int(x) => {
                if x.is_one() || (-x).is_one() {
                    Some(Coeff::Int(x.clone()))
                } else {
                    None
                }
            }
            Coeff::Rat(x) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Coeff::Rat(x.recip()))
                }
            }
            Coeff::Mod(x) => {
                let p = self.modulus();
                if *x == 0 {
                    None
                } else {
                    Some(Coeff::Mod(mod_pow(*x, p - 2, p)))
                }
            }
        }
    }

    /// Exact division. None when b is zero or does not divide a.
    pub fn div_exact(&self, a: &Coeff, b: &Coeff) -> Option<Coeff> {
        match self.expect_pair(a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => {
                if y.is_zero() {
                    None
                } else {
                    let (q, r) = x.div_rem(y);
                    if r.is_zero() {
                        Some(Coeff::Int(q))
                    } else {
                        None
                    }
                }
            }
            _ => self.inv(b).map(|bi| self.mul(a, &bi)),
        }
    }

    pub fn modulus(&self) -> u64 {
        match self {
            CoeffDomain::PrimeField(p) => *p,
            _ => panic!("modulus of a characteristic-zero domain"),
        }
    }

    /// Multiply by an integer scalar (used by differentiation).
    pub fn scale_int(&self, a: &Coeff, n: u64) -> Coeff {
        self.mul(a, &self.from_bigint(&BigInt::from(n)))
    }
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Int(x) => x.is_zero(),
            Coeff::Rat(x) => x.is_zero(),
            Coeff::Mod(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Int(x) => x.is_one(),
            Coeff::Rat(x) => x.is_one(),
            Coeff::Mod(x) => *x == 1,
        }
    }

    /// True when the canonical sign is negative (never for residues).
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Int(x) => x.is_negative(),
            Coeff::Rat(x) => x.is_negative(),
            Coeff::Mod(_) => false,
        }
    }

    pub fn abs(&self) -> Coeff {
        match self {
            Coeff::Int(x) => Coeff::Int(x.abs()),
            Coeff::Rat(x) => Coeff::Rat(x.abs()),
            Coeff::Mod(x) => Coeff::Mod(*x),
        }
    }

    /// Report-facing form: integers as-is, rationals as "num/den", residues as canonical
    /// representatives.
    pub fn to_report_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CoeffDomain {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffDomain::Integers => write!(out, "ZZ"),
            CoeffDomain::Rationals => write!(out, "QQ"),
            CoeffDomain::PrimeField(p) => write!(out, "GF({})", p),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Int(x) => write!(out, "{}", x),
            Coeff::Rat(x) => {
                if x.denom().is_one() {
                    write!(out, "{}", x.numer())
                } else {
                    write!(out, "{}/{}", x.numer(), x.denom())
                }
            }
            Coeff::Mod(x) => write!(out, "{}", x),
        }
    }
}
