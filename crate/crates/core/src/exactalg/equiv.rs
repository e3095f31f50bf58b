use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{int, Rational};

/// Default cap on the `t`-degree kept by [`EquivCoeff`] products.
pub const DEFAULT_T_DEGREE: usize = 2;

/// Polynomial in the equivariant parameter `t` with exact coefficients.
///
/// Trailing zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TPoly {
    coeffs: Vec<Rational>,
}

impl TPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn t() -> Self {
        Self::monomial(int(1), 1)
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Drops every term of degree above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::new(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    fn mul_truncated(&self, rhs: &TPoly, max_degree: usize) -> TPoly {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero();
        }
        let len = (self.coeffs.len() + rhs.coeffs.len() - 1).min(max_degree + 1);
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        TPoly::new(coeffs)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        self.mul_truncated(rhs, self.coeffs.len().saturating_add(rhs.coeffs.len()))
    }
}

/// Element `scalar + omega * ω` of `Q[t]·{1, ω}` with `ω² = 0`.
///
/// `ω` stands for `c₁(ω_C)` on the genus-`g` curve; its degree `2g - 2` is
/// only applied by [`EquivCoeff::integrate_over_curve`]. Products keep terms
/// up to `t^max_t_degree`.
#[derive(Clone, Debug)]
pub struct EquivCoeff {
    scalar: TPoly,
    omega: TPoly,
    max_t_degree: usize,
}

impl PartialEq for EquivCoeff {
    fn eq(&self, other: &Self) -> bool {
        self.scalar == other.scalar && self.omega == other.omega
    }
}

impl Eq for EquivCoeff {}

impl EquivCoeff {
    pub fn new(scalar: TPoly, omega: TPoly) -> Self {
        Self::with_t_degree(scalar, omega, DEFAULT_T_DEGREE)
    }

    pub fn with_t_degree(scalar: TPoly, omega: TPoly, max_t_degree: usize) -> Self {
        Self {
            scalar: scalar.truncate(max_t_degree),
            omega: omega.truncate(max_t_degree),
            max_t_degree,
        }
    }

    pub fn zero() -> Self {
        Self::new(TPoly::zero(), TPoly::zero())
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(TPoly::constant(c), TPoly::zero())
    }

    pub fn t() -> Self {
        Self::new(TPoly::t(), TPoly::zero())
    }

    /// The class `ω = c₁(ω_C)`.
    pub fn omega() -> Self {
        Self::new(TPoly::zero(), TPoly::constant(int(1)))
    }

    pub fn scalar_part(&self) -> &TPoly {
        &self.scalar
    }

    pub fn omega_part(&self) -> &TPoly {
        &self.omega
    }

    pub fn max_t_degree(&self) -> usize {
        self.max_t_degree
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.omega.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            scalar: self.scalar.scale(c),
            omega: self.omega.scale(c),
            max_t_degree: self.max_t_degree,
        }
    }

    /// Degree against the fundamental class of the curve: `∫ω = 2g - 2`,
    /// `∫1 = 0`.
    pub fn integrate_over_curve(&self, genus: u32) -> TPoly {
        self.omega.scale(&int(2 * genus as i64 - 2))
    }

    /// Cap product with a point class of the curve, which kills `ω`.
    pub fn restrict_to_point(&self) -> TPoly {
        self.scalar.clone()
    }
}

impl fmt::Display for EquivCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.scalar.is_zero(), self.omega.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}", self.scalar),
            (true, false) => write!(f, "({})ω", self.omega),
            (false, false) => write!(f, "{} + ({})ω", self.scalar, self.omega),
        }
    }
}

impl Add for &EquivCoeff {
    type Output = EquivCoeff;
    fn add(self, rhs: &EquivCoeff) -> EquivCoeff {
        EquivCoeff::with_t_degree(
            &self.scalar + &rhs.scalar,
            &self.omega + &rhs.omega,
            self.max_t_degree.min(rhs.max_t_degree),
        )
    }
}

impl Sub for &EquivCoeff {
    type Output = EquivCoeff;
    fn sub(self, rhs: &EquivCoeff) -> EquivCoeff {
        EquivCoeff::with_t_degree(
            &self.scalar - &rhs.scalar,
            &self.omega - &rhs.omega,
            self.max_t_degree.min(rhs.max_t_degree),
        )
    }
}

impl Neg for &EquivCoeff {
    type Output = EquivCoeff;
    fn neg(self) -> EquivCoeff {
        EquivCoeff {
            scalar: -&self.scalar,
            omega: -&self.omega,
            max_t_degree: self.max_t_degree,
        }
    }
}

impl Mul for &EquivCoeff {
    type Output = EquivCoeff;
    fn mul(self, rhs: &EquivCoeff) -> EquivCoeff {
        equiv_mul(self, rhs)
    }
}

/// Product in `Q[t]·{1, ω}`; the `ω²` term is annihilated.
pub fn equiv_mul(a: &EquivCoeff, b: &EquivCoeff) -> EquivCoeff {
    let cap = a.max_t_degree.min(b.max_t_degree);
    let scalar = a.scalar.mul_truncated(&b.scalar, cap);
    let omega = &a.scalar.mul_truncated(&b.omega, cap) + &a.omega.mul_truncated(&b.scalar, cap);
    EquivCoeff {
        scalar,
        omega,
        max_t_degree: cap,
    }
}
