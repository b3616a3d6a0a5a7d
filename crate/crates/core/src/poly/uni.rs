//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{fmt_rat, Rat};

/// A polynomial in one variable, stored by ascending exponent.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and `coeffs.len() - 1` is the degree otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn monomial(c: Rat, exp: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); exp + 1];
        coeffs[exp] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Ascending integer coefficients, e.g. `[-1, 0, 1]` is `t^2 - 1`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    /// `Π (t - r)` over the given integer roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, &r| &acc * &Self::from_ints(&[-r, 1]))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> Rat {
        self.coeffs.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides through by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `t^deg · p(1/t)` for a stated `deg >= degree(p)`: the same binary form
    /// read in the opposite chart.
    pub fn reverse(&self, deg: usize) -> Self {
        assert!(
            self.degree().is_none_or(|d| d <= deg),
            "reverse: degree exceeds the form degree"
        );
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[deg - i] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    /// `p(t + shift)`.
    pub fn translate(&self, shift: &Rat) -> Self {
        let lin = Self::from_coeffs(vec![shift.clone(), Rat::one()]);
        self.compose(&lin)
    }

    /// `p(q(t))`.
    pub fn compose(&self, q: &UniPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * q) + &Self::constant(c.clone()))
    }

    /// Largest power of `t` dividing `self` (zero polynomial: `None`).
    pub fn trailing_zeros(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// `Some(self / divisor)` when the division is exact.
    pub fn exact_div(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Common denominator cleared and integer content removed; the sign is
    /// chosen so the leading coefficient is positive. Zero maps to empty.
    pub(crate) fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        primitive(ints)
    }

    pub(crate) fn from_integer_coeffs(ints: Vec<BigInt>) -> Self {
        Self::from_coeffs(ints.into_iter().map(Rat::from_integer).collect())
    }

    /// Formats with the given variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (exp, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match exp {
                0 => String::new(),
                1 => var.to_string(),
                e => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rat(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rat(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

/// Divides out the gcd of the entries and makes the last entry positive.
pub(crate) fn primitive(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    if ints.is_empty() {
        return ints;
    }
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
    }
    ints
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}
