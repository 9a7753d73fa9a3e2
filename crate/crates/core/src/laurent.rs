use crate::field::{Field, FieldElem};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Laurent polynomial over a fixed coefficient field, stored densely as a
/// minimum exponent plus a coefficient run whose first and last entries are
/// nonzero. The zero polynomial is the empty run with `min = 0`.
///
/// Degree always means the span max exponent minus min exponent, so it is
/// invariant under multiplication by units c·t^j. The zero polynomial has no
/// degree (`None`), deliberately distinct from degree 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    field: Field,
    min: i64,
    coeffs: Vec<FieldElem>,
}

impl LaurentPoly {
    pub fn zero(field: Field) -> Self {
        LaurentPoly { field, min: 0, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElem) -> Self {
        let field = c.field();
        Self::from_run(field, 0, vec![c])
    }

    pub fn monomial(c: FieldElem, exp: i64) -> Self {
        let field = c.field();
        Self::from_run(field, exp, vec![c])
    }

    /// `t^exp`.
    pub fn t_power(field: Field, exp: i64) -> Self {
        Self::monomial(field.one(), exp)
    }

    /// Build from (exponent, integer coefficient) pairs; repeated exponents sum.
    pub fn from_pairs(field: Field, pairs: &[(i64, i64)]) -> Self {
        let mut acc = Self::zero(field);
        for &(e, c) in pairs {
            acc = &acc + &Self::monomial(FieldElem::from_i64(c, field), e);
        }
        acc
    }

    /// Parse integer Laurent polynomials like `1 - 2t + 3t^2` or `t^-1 + 1`.
    /// Accepts the same shape `Display` emits; spaces are optional.
    pub fn parse(text: &str, field: Field) -> crate::Result<Self> {
        let raw: Vec<char> = text.trim().chars().collect();
        for (i, c) in raw.iter().enumerate() {
            if c.is_whitespace() {
                let prev = raw[..i].iter().rev().find(|x| !x.is_whitespace());
                let next = raw[i..].iter().find(|x| !x.is_whitespace());
                let sign = |x: Option<&char>| matches!(x, Some('+') | Some('-'));
                if !sign(prev) && !sign(next) {
                    return Err(crate::Error::Parse {
                        line: 1,
                        col: i + 1,
                        msg: "whitespace inside a polynomial term".into(),
                    });
                }
            }
        }
        let s: Vec<char> = raw.into_iter().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(crate::Error::Input("empty polynomial".into()));
        }
        let bad = |i: usize| crate::Error::Parse {
            line: 1,
            col: i + 1,
            msg: "malformed polynomial term".into(),
        };
        let mut pairs: Vec<(i64, i64)> = Vec::new();
        let mut i = 0;
        while i < s.len() {
            let mut sign = 1i64;
            if s[i] == '+' || s[i] == '-' {
                if s[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if !pairs.is_empty() {
                return Err(bad(i));
            }
            let digits_start = i;
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i64 = if digits_start == i {
                1
            } else {
                s[digits_start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| bad(digits_start))?
            };
            let exp: i64 = if i < s.len() && s[i] == 't' {
                i += 1;
                if i < s.len() && s[i] == '^' {
                    i += 1;
                    let exp_start = i;
                    if i < s.len() && s[i] == '-' {
                        i += 1;
                    }
                    while i < s.len() && s[i].is_ascii_digit() {
                        i += 1;
                    }
                    s[exp_start..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| bad(exp_start))?
                } else {
                    1
                }
            } else {
                if digits_start == i {
                    return Err(bad(i));
                }
                0
            };
            pairs.push((exp, sign * coeff));
        }
        Ok(Self::from_pairs(field, &pairs))
    }

    /// Construct trimming leading/trailing zeros; normalizes the zero run.
    fn from_run(field: Field, min: i64, mut coeffs: Vec<FieldElem>) -> Self {
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead_zeros);
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            LaurentPoly { field, min: 0, coeffs }
        } else {
            LaurentPoly { field, min: min + lead_zeros as i64, coeffs }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// A unit of F[t±1]: a single nonzero term.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min + self.coeffs.len() as i64 - 1)
    }

    /// Span degree max − min; `None` for the zero polynomial (semantically
    /// distinct from any integer, never conflated with 0 or −1).
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> FieldElem {
        let idx = exp - self.min;
        if self.is_zero() || idx < 0 || idx >= self.coeffs.len() as i64 {
            self.field.zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Coefficient of the highest exponent. Panics on zero.
    pub fn leading(&self) -> &FieldElem {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    /// Coefficient of the lowest exponent. Panics on zero.
    pub fn trailing(&self) -> &FieldElem {
        self.coeffs.first().expect("trailing coefficient of zero polynomial")
    }

    /// Ascending coefficients from `min_exp`, without trailing zeros.
    pub fn coeff_run(&self) -> (&[FieldElem], i64) {
        (&self.coeffs, self.min)
    }

    /// The canonical representative of the unit class {c·t^j·f}: minimum
    /// exponent 0 and leading coefficient 1. Zero maps to zero.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let scale = self.leading().inv();
        let coeffs = self.coeffs.iter().map(|c| c * &scale).collect();
        LaurentPoly { field: self.field, min: 0, coeffs }
    }

    pub fn is_canonical(&self) -> bool {
        self.is_zero() || (self.min == 0 && self.leading().is_one())
    }

    pub fn shifted(&self, exp: i64) -> Self {
        if self.is_zero() {
            self.clone()
        } else {
            LaurentPoly { field: self.field, min: self.min + exp, coeffs: self.coeffs.clone() }
        }
    }

    pub fn scaled(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        Self::from_run(self.field, self.min, coeffs)
    }

    /// Substitute t ↦ t^{-1}.
    pub fn reversed(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        let max = self.min + self.coeffs.len() as i64 - 1;
        LaurentPoly { field: self.field, min: -max, coeffs }
    }

    /// Substitute t ↦ t^d for d ≥ 1 (used by the φ-scaling homogeneity checks).
    pub fn inflated(&self, d: i64) -> Self {
        assert!(d >= 1, "inflation exponent must be positive");
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); (self.coeffs.len() - 1) * d as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * d as usize] = c.clone();
        }
        LaurentPoly { field: self.field, min: self.min * d, coeffs }
    }

    pub fn evaluate(&self, x: &FieldElem) -> FieldElem {
        // Horner over the ordinary part; Laurent shift needs x invertible.
        let field = self.field;
        assert!(field == x.field(), "evaluation point in wrong field");
        if self.is_zero() {
            return field.zero();
        }
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        let shift = if self.min >= 0 {
            pow(x, self.min as u64)
        } else {
            pow(&x.inv(), (-self.min) as u64)
        };
        &acc * &shift
    }

    /// Division with remainder under the span-degree Euclidean function:
    /// a = q·b + r with r = 0 or span(r) < span(b).
    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "division by zero polynomial");
        assert!(self.field == b.field, "mixed fields in division");
        if self.is_zero() {
            return (Self::zero(self.field), Self::zero(self.field));
        }
        // Work on ordinary representatives (min exponent shifted to 0).
        let mut rem: Vec<FieldElem> = self.coeffs.clone();
        let div: &[FieldElem] = &b.coeffs;
        let dn = div.len();
        if rem.len() < dn {
            return (Self::zero(self.field), self.clone());
        }
        let mut quo = vec![self.field.zero(); rem.len() - dn + 1];
        let lead_inv = b.leading().inv();
        for i in (0..quo.len()).rev() {
            let c = &rem[i + dn - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in div.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * d);
            }
            quo[i] = c;
        }
        let q = Self::from_run(self.field, self.min - b.min, quo);
        let r = Self::from_run(self.field, self.min, rem);
        (q, r)
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, b: &Self) -> Self {
        let (q, r) = self.div_rem(b);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Euclidean gcd, returned canonical.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.canonical()
    }

    /// For rational-coefficient polynomials: clear denominators and divide by
    /// the content, returning ascending primitive integer coefficients from
    /// `min_exp` with positive leading coefficient. `None` outside the Q
    /// backend or for the zero polynomial.
    pub fn primitive_integer_coeffs(&self) -> Option<(i64, Vec<BigInt>)> {
        if self.field != Field::Q || self.is_zero() {
            return None;
        }
        let rats: Vec<_> = self.coeffs.iter().map(|c| c.as_rational().unwrap()).collect();
        let mut denom_lcm = BigInt::one();
        for r in &rats {
            denom_lcm = denom_lcm.lcm(r.denom());
        }
        let mut ints: Vec<BigInt> = rats
            .iter()
            .map(|r| (r.numer() * &denom_lcm) / r.denom())
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        for c in &mut ints {
            *c = &*c / &content;
        }
        Some((self.min, ints))
    }
}

fn pow(x: &FieldElem, e: u64) -> FieldElem {
    let mut acc = x.field().one();
    for _ in 0..e {
        acc = &acc * x;
    }
    acc
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert!(self.field == rhs.field, "mixed fields in addition");
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let min = self.min.min(rhs.min);
        let max = (self.min + self.coeffs.len() as i64).max(rhs.min + rhs.coeffs.len() as i64);
        let mut coeffs = vec![self.field.zero(); (max - min) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min - min) as usize + i] = c.clone();
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(rhs.min - min) as usize + i];
            *slot = &*slot + c;
        }
        LaurentPoly::from_run(self.field, min, coeffs)
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        LaurentPoly { field: self.field, min: self.min, coeffs }
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert!(self.field == rhs.field, "mixed fields in multiplication");
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let slot = &mut coeffs[i + j];
                *slot = &*slot + &(a * b);
            }
        }
        LaurentPoly::from_run(self.field, self.min + rhs.min, coeffs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.min + i as i64;
            let (sign_neg, mag) = if c.is_negative_rat() { (true, -c) } else { (false, c.clone()) };
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = mag.is_one();
            match (coeff_is_one, e) {
                (true, 0) => write!(f, "1")?,
                (false, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "t")?,
                (false, 1) => write!(f, "{mag}t")?,
                (true, _) => write!(f, "t^{e}")?,
                (false, _) => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}
