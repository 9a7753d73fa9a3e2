use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Coefficient field descriptor: the rationals or a prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    /// A prime field, validating primality.
    pub fn prime(p: u64) -> crate::Result<Field> {
        if !is_prime(p) {
            return Err(crate::Error::Input(format!("{p} is not prime")));
        }
        Ok(Field::Fp(p))
    }

    pub fn zero(self) -> FieldElem {
        FieldElem::from_i64(0, self)
    }

    pub fn one(self) -> FieldElem {
        FieldElem::from_i64(1, self)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element: a residue mod p, or a reduced big rational.
/// All arithmetic is exact; there is no floating point anywhere.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldElem {
    Fp { v: u64, p: u64 },
    Rat(BigRational),
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Fp { p, .. } => Field::Fp(*p),
            FieldElem::Rat(_) => Field::Q,
        }
    }

    pub fn from_i64(n: i64, field: Field) -> FieldElem {
        match field {
            Field::Q => FieldElem::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                FieldElem::Fp { v: r, p }
            }
        }
    }

    pub fn from_bigint(n: &BigInt, field: Field) -> FieldElem {
        match field {
            Field::Q => FieldElem::Rat(BigRational::from_integer(n.clone())),
            Field::Fp(p) => {
                let r = n.mod_floor_u64(p);
                FieldElem::Fp { v: r, p }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Fp { v, .. } => *v == 0,
            FieldElem::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Fp { v, .. } => *v == 1,
            FieldElem::Rat(r) => r.is_one(),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> FieldElem {
        match self {
            FieldElem::Fp { v, p } => {
                assert!(*v != 0, "inverse of zero in F{p}");
                // Fermat: v^(p-2) mod p.
                FieldElem::Fp { v: pow_mod(*v, *p - 2, *p), p: *p }
            }
            FieldElem::Rat(r) => {
                assert!(!r.is_zero(), "inverse of zero rational");
                FieldElem::Rat(r.recip())
            }
        }
    }

    /// As a rational, when in the Q backend.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rat(r) => Some(r),
            FieldElem::Fp { .. } => None,
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        let (_, digits) = m.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => unreachable!("residue below u64 modulus"),
        }
    }
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut sq = b as u128;
    let pp = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * sq % pp;
        }
        sq = sq * sq % pp;
        e >>= 1;
    }
    acc as u64
}

fn assert_same_field(a: &FieldElem, b: &FieldElem) {
    assert!(
        a.field() == b.field(),
        "mixed coefficient fields: {} vs {}",
        a.field(),
        b.field()
    );
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        assert_same_field(self, rhs);
        match (self, rhs) {
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, .. }) => {
                FieldElem::Fp { v: (a + b) % p, p: *p }
            }
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            _ => unreachable!(),
        }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        assert_same_field(self, rhs);
        match (self, rhs) {
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, .. }) => {
                FieldElem::Fp { v: (a + p - b) % p, p: *p }
            }
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a - b),
            _ => unreachable!(),
        }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        assert_same_field(self, rhs);
        match (self, rhs) {
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, .. }) => {
                let prod = (*a as u128 * *b as u128 % *p as u128) as u64;
                FieldElem::Fp { v: prod, p: *p }
            }
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            _ => unreachable!(),
        }
    }
}

impl Div for &FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self * &rhs.inv()
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Fp { v: 0, p } => FieldElem::Fp { v: 0, p: *p },
            FieldElem::Fp { v, p } => FieldElem::Fp { v: p - v, p: *p },
            FieldElem::Rat(r) => FieldElem::Rat(-r),
        }
    }
}

macro_rules! forward_owned {
    ($($t:ident :: $m:ident),*) => {$(
        impl $t for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Fp { v, .. } => write!(f, "{v}"),
            FieldElem::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl FieldElem {
    /// Signed display preference for rationals used when printing polynomials.
    pub fn is_negative_rat(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_negative(),
            FieldElem::Fp { .. } => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let f = Field::Fp(13);
        let a = FieldElem::from_i64(9, f);
        let b = FieldElem::from_i64(7, f);
        assert_eq!(&a + &b, FieldElem::from_i64(3, f));
        assert_eq!(&a * &b, FieldElem::from_i64(63 % 13, f));
        assert_eq!(&a - &b, FieldElem::from_i64(2, f));
        assert!((&a * &a.inv()).is_one());
        assert_eq!(-&FieldElem::from_i64(0, f), FieldElem::from_i64(0, f));
    }

    #[test]
    fn negative_representatives_reduce() {
        let f = Field::Fp(5);
        assert_eq!(FieldElem::from_i64(-1, f), FieldElem::from_i64(4, f));
        assert_eq!(FieldElem::from_i64(-10, f), FieldElem::from_i64(0, f));
    }

    #[test]
    fn rational_exactness() {
        let f = Field::Q;
        let third = &FieldElem::from_i64(1, f) / &FieldElem::from_i64(3, f);
        let sum = &(&third + &third) + &third;
        assert!(sum.is_one());
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(9));
        assert!(Field::prime(9).is_err());
    }

    #[test]
    #[should_panic(expected = "mixed coefficient fields")]
    fn field_mismatch_panics() {
        let _ = &FieldElem::from_i64(1, Field::Fp(3)) + &FieldElem::from_i64(1, Field::Fp(5));
    }
}
