use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::Zero;

use super::{int, EquivCoeff};

/// Lowest `z`-exponent kept by default. Poles of order three and higher
/// cannot pair with a one-dimensional fixed locus, so they are discarded.
pub const DEFAULT_MIN_Z_EXPONENT: i32 = -2;

/// Finite Laurent polynomial in `z` with [`EquivCoeff`] coefficients.
///
/// Terms with exponent below `min_exponent` are dropped on construction and
/// after every product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZLaurent {
    terms: BTreeMap<i32, EquivCoeff>,
    min_exponent: i32,
}

impl Default for ZLaurent {
    fn default() -> Self {
        Self::zero(DEFAULT_MIN_Z_EXPONENT)
    }
}

impl ZLaurent {
    pub fn zero(min_exponent: i32) -> Self {
        Self {
            terms: BTreeMap::new(),
            min_exponent,
        }
    }

    pub fn one(min_exponent: i32) -> Self {
        Self::from_terms([(0, EquivCoeff::one())], min_exponent)
    }

    pub fn from_terms<I>(terms: I, min_exponent: i32) -> Self
    where
        I: IntoIterator<Item = (i32, EquivCoeff)>,
    {
        let mut out = Self::zero(min_exponent);
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub fn min_exponent(&self) -> i32 {
        self.min_exponent
    }

    /// Coefficient of `z^exp`, if nonzero.
    pub fn term(&self, exp: i32) -> Option<&EquivCoeff> {
        self.terms.get(&exp)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &EquivCoeff)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn residue(&self) -> EquivCoeff {
        self.term(-1).cloned().unwrap_or_else(EquivCoeff::zero)
    }

    fn add_term(&mut self, exp: i32, c: &EquivCoeff) {
        if exp < self.min_exponent || c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&exp) {
            Some(prev) => prev + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, sum);
        }
    }

    /// `(1 + x z^{-1})^n` for any integer `n`, expanded with generalized
    /// binomial coefficients down to `z^{min_exponent}`.
    ///
    /// With `x = c₁(L)/(-m)` this is the equivariant Euler class of
    /// `n·L ⊗ z^{-m}` normalised by its rank factor.
    pub fn binomial_power(x: &EquivCoeff, n: i64, min_exponent: i32) -> Self {
        let depth = (-min_exponent).max(0) as i64;
        let mut out = Self::zero(min_exponent);
        let mut binom = int(1);
        let mut power = EquivCoeff::one();
        for k in 0..=depth {
            if k > 0 {
                binom = binom * int(n - k + 1) / int(k);
                power = &power * x;
            }
            if binom.is_zero() {
                break;
            }
            out.add_term(-(k as i32), &power.scale(&binom));
        }
        out
    }
}

impl Add for &ZLaurent {
    type Output = ZLaurent;
    fn add(self, rhs: &ZLaurent) -> ZLaurent {
        let mut out = ZLaurent::zero(self.min_exponent.max(rhs.min_exponent));
        for (e, c) in self.terms().chain(rhs.terms()) {
            out.add_term(e, c);
        }
        out
    }
}

impl Mul for &ZLaurent {
    type Output = ZLaurent;
    fn mul(self, rhs: &ZLaurent) -> ZLaurent {
        let mut out = ZLaurent::zero(self.min_exponent.max(rhs.min_exponent));
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl fmt::Display for ZLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| format!("[{c}]z^{e}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Coefficient of `z^{-1}`; zero when there is no simple pole.
pub fn laurent_residue(f: &ZLaurent) -> EquivCoeff {
    f.residue()
}
