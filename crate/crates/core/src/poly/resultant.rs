//! Binary forms in `(z0, z1)` with coefficients in ℚ[t], their resultants, and
//! fraction-free determinants over ℚ[t].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rat::Rat;
use super::uni::UniPoly;

/// `Σ_j coeffs[j] · z0^(degree-j) · z1^j`.
///
/// The stated degree is part of the value: leading entries may vanish, which is
/// how a root at `z = (1:0)` is represented without a chart change.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<UniPoly>,
}

impl BinaryForm {
    pub fn new(degree: usize, mut coeffs: Vec<UniPoly>) -> Self {
        assert!(coeffs.len() <= degree + 1, "more coefficients than the degree allows");
        coeffs.resize(degree + 1, UniPoly::zero());
        BinaryForm { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(UniPoly::is_zero)
    }

    pub fn derivative_t(&self) -> Self {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(UniPoly::derivative).collect(),
        }
    }

    pub fn scale(&self, c: &UniPoly) -> Self {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The form in `z` obtained by fixing `t`.
    pub fn at(&self, t: &super::Rat) -> Vec<super::Rat> {
        self.coeffs.iter().map(|c| c.eval(t)).collect()
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("({c})*z0^{}*z1^{j}", self.degree - j))
            .collect();
        write!(f, "BinaryForm[{}]({})", self.degree, parts.join(" + "))
    }
}

/// Determinant of the Sylvester matrix built from the stated degrees.
///
/// Vanishes identically exactly when the forms share a factor of positive
/// degree in `z` over ℚ(t), or one of them is zero.
pub fn binary_resultant(f: &BinaryForm, g: &BinaryForm) -> UniPoly {
    let (m, n) = (f.degree, g.degree);
    let size = m + n;
    if size == 0 {
        return UniPoly::one();
    }
    let mut rows = vec![vec![UniPoly::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.coeffs.iter().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.coeffs.iter().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    determinant(rows)
}

/// Determinant over ℚ[t].
///
/// Rows are scaled to integer coefficients, the matrix is evaluated at enough
/// integer points to pin down the result, each value is found by fraction-free
/// Bareiss elimination over ℤ, and Newton interpolation recovers the polynomial.
pub fn determinant(m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return UniPoly::one();
    }
    let mut scale = BigInt::one();
    let mut int_rows: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(n);
    let mut bound = 0usize;
    for row in &m {
        let den = row
            .iter()
            .flat_map(|p| p.coeffs().iter())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        scale *= &den;
        bound += row.iter().filter_map(UniPoly::degree).max().unwrap_or(0);
        int_rows.push(
            row.iter()
                .map(|p| p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect())
                .collect(),
        );
    }
    let half = (bound / 2) as i64;
    let xs: Vec<BigInt> = (0..=bound as i64).map(|i| BigInt::from(i - half)).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|x| {
            let values = int_rows
                .iter()
                .map(|row| row.iter().map(|p| horner(p, x)).collect())
                .collect();
            bareiss(values)
        })
        .collect();
    let det = newton(&xs, ys);
    det.scale(&Rat::new(BigInt::one(), scale))
}

fn horner(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Interpolating polynomial through `(xs[i], ys[i])`.
fn newton(xs: &[BigInt], ys: Vec<BigInt>) -> UniPoly {
    let n = xs.len();
    let mut dd: Vec<Rat> = ys.into_iter().map(Rat::from_integer).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let span = Rat::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = (&dd[i] - &dd[i - 1]) / span;
        }
    }
    // Horner in Newton form: acc = acc * (t - xs[i]) + dd[i]
    let mut acc: Vec<Rat> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let x = Rat::from_integer(xs[i].clone());
        let mut next = vec![Rat::zero(); acc.len() + 1];
        for (j, c) in acc.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * &x;
        }
        next[0] += &dd[i];
        acc = next;
    }
    UniPoly::from_coeffs(acc)
}
