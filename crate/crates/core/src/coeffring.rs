//! Exact rationals and the coefficient ring `Q[ħ]`.
//!
//! `ħ` is a formal variable; numeric evaluation sends it to `1 - q`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a finite decimal like `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches('-'), fp);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let r = Rational::new(n, d);
        return Some(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator overflowed f64; scale both down
        let n = r.numer();
        let d = r.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(1000);
        let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Polynomial in `ħ` with rational coefficients, stored densely by degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HPoly {
    coeffs: Vec<Rational>,
}

impl HPoly {
    pub fn zero() -> Self {
        HPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn hbar() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    /// `c·ħ^deg`
    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: usize) -> Rational {
        self.coeffs.get(deg).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    /// The constant value when the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplication by `ħ^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        HPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at `ħ = 1 - q`.
    pub fn eval(&self, q: &Rational) -> Rational {
        let h = Rational::one() - q;
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &h + c)
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        let h = 1.0 - q;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * h + rational_to_f64(c))
    }

    /// Sum of absolute values of `coeff_i · h^i`, an upper bound on `|p(1-q)|`.
    pub fn abs_bound_f64(&self, q: f64) -> f64 {
        let h = (1.0 - q).abs();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * h + rational_to_f64(&c.abs()))
    }

    /// Whether `ħ` divides `p`, together with the quotient when it does.
    pub fn hbar_divides(&self) -> (bool, Option<HPoly>) {
        match self.hbar_quotient(1) {
            Some(qt) => (true, Some(qt)),
            None => (false, None),
        }
    }

    /// `p / ħ^k` when exact.
    pub fn hbar_quotient(&self, k: usize) -> Option<HPoly> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(HPoly {
            coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec(),
        })
    }

    /// Whether every coefficient is an integer and the polynomial is constant.
    pub fn is_integer_constant(&self) -> bool {
        match self.as_constant() {
            Some(c) => c.is_integer(),
            None => false,
        }
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if d == 1 {
                        write!(f, "hbar")?;
                    } else {
                        write!(f, "hbar^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPoly({self})")
    }
}

impl From<Rational> for HPoly {
    fn from(c: Rational) -> Self {
        HPoly::constant(c)
    }
}

impl<'a> Add<&'a HPoly> for &HPoly {
    type Output = HPoly;
    fn add(self, rhs: &'a HPoly) -> HPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        HPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a HPoly> for &HPoly {
    type Output = HPoly;
    fn sub(self, rhs: &'a HPoly) -> HPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        HPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a HPoly> for &HPoly {
    type Output = HPoly;
    fn mul(self, rhs: &'a HPoly) -> HPoly {
        if self.is_zero() || rhs.is_zero() {
            return HPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HPoly::from_coeffs(out)
    }
}

impl Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        HPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        -&self
    }
}

impl AddAssign<&HPoly> for HPoly {
    fn add_assign(&mut self, rhs: &HPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl SubAssign<&HPoly> for HPoly {
    fn sub_assign(&mut self, rhs: &HPoly) {
        *self += &(-rhs);
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<HPoly> for HPoly {
            type Output = HPoly;
            fn $m(self, rhs: HPoly) -> HPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a HPoly> for HPoly {
            type Output = HPoly;
            fn $m(self, rhs: &'a HPoly) -> HPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(c: &[i64]) -> HPoly {
        HPoly::from_coeffs(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn eval_examples() {
        assert_eq!(HPoly::hbar().eval(&rat(1, 2)), rat(1, 2));
        assert_eq!(HPoly::one().eval(&rat(3, 7)), int(1));
        // ħ² + 2 at q = 1/3
        assert_eq!(hp(&[2, 0, 1]).eval(&rat(1, 3)), rat(22, 9));
    }

    #[test]
    fn hbar_divides_examples() {
        assert_eq!(HPoly::hbar().hbar_divides(), (true, Some(HPoly::one())));
        assert_eq!(hp(&[1, 1]).hbar_divides(), (false, None));
        assert_eq!(hp(&[0, 3, 2]).hbar_divides(), (true, Some(hp(&[3, 2]))));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = hp(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!((&p - &p).is_zero());
        assert_eq!((&p - &p).degree(), None);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/2"), Some(rat(1, 2)));
        assert_eq!(parse_rational("0.25"), Some(rat(1, 4)));
        assert_eq!(parse_rational("-3"), Some(int(-3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn display() {
        assert_eq!(hp(&[0, -1, 3]).to_string(), "-hbar + 3*hbar^2");
        assert_eq!(HPoly::from_coeffs(vec![rat(1, 2)]).to_string(), "1/2");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly() -> impl Strategy<Value = HPoly> {
            proptest::collection::vec((-5i64..=5, 1i64..=4), 0..4).prop_map(|v| {
                HPoly::from_coeffs(v.into_iter().map(|(n, d)| rat(n, d)).collect())
            })
        }

        proptest! {
            #[test]
            fn eval_is_ring_hom(p in small_poly(), r in small_poly(), qn in 1i64..9) {
                let q = rat(qn, 10);
                prop_assert_eq!((&p * &r).eval(&q), p.eval(&q) * r.eval(&q));
                prop_assert_eq!((&p + &r).eval(&q), p.eval(&q) + r.eval(&q));
            }

            #[test]
            fn divisibility_iff_vanishes_at_q_one(p in small_poly()) {
                let (flag, quot) = p.hbar_divides();
                prop_assert_eq!(flag, p.eval(&int(1)).is_zero());
                if let Some(qt) = quot {
                    prop_assert_eq!(&qt * &HPoly::hbar(), p);
                }
            }
        }
    }
}
