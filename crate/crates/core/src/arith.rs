//! Divisors, divisor sums, torsion orders and the Chern-character system on
//! the elliptic curve.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{rat, Rational};

/// Class `(rank component, degree component)` in `H^ev(E, Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChernClass {
    pub u1: i64,
    pub u2: i64,
}

impl ChernClass {
    pub const fn new(u1: i64, u2: i64) -> Self {
        Self { u1, u2 }
    }

    pub fn is_zero(&self) -> bool {
        self.u1 == 0 && self.u2 == 0
    }
}

impl std::ops::Add for ChernClass {
    type Output = ChernClass;
    fn add(self, rhs: ChernClass) -> ChernClass {
        ChernClass::new(self.u1 + rhs.u1, self.u2 + rhs.u2)
    }
}

impl std::fmt::Display for ChernClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.u1, self.u2)
    }
}

/// The degree-`w` part `w̌` of the Chern character of the universal sheaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CheckW {
    pub w1: i64,
    pub w2: i64,
}

/// One invariant request: rank `r`, degree `d` on `C`, degree `a` on `E`,
/// quasimap degree `w`, genus `g` of `C`, and the universal-family
/// normalisation `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InvariantQuery {
    r: u32,
    d: i64,
    a: u32,
    w: u64,
    g: u32,
    u: ChernClass,
}

impl InvariantQuery {
    /// Validates and builds a query.
    ///
    /// `u` may be omitted when `a = 1`, in which case `u = (1, 0)`. Any
    /// supplied `u` must satisfy `χ(v·u) = 1` for `v = (r, a)`.
    pub fn new(r: u32, d: i64, a: u32, w: u64, g: u32, u: Option<ChernClass>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidQuery("rank must be positive".into()));
        }
        if a >= r && !(r == 1 && a == 0) {
            return Err(Error::InvalidQuery(format!(
                "degree a = {a} must lie in [0, {r})"
            )));
        }
        if g < 2 {
            return Err(Error::InvalidQuery(format!(
                "genus must be at least 2, got {g}"
            )));
        }
        if r.gcd(&a) != 1 {
            return Err(Error::InvalidQuery(format!(
                "gcd(r, a) = gcd({r}, {a}) must be 1"
            )));
        }
        let u = match u {
            Some(u) => u,
            None if a == 1 => ChernClass::new(1, 0),
            None => {
                return Err(Error::InvalidQuery(format!(
                    "a = {a}: a normalisation class u with chi(v.u) = 1 must be supplied"
                )))
            }
        };
        let v = ChernClass::new(r as i64, a as i64);
        let chi = chi_pairing_e(&v, &u);
        if chi != 1 {
            return Err(Error::InvalidQuery(format!(
                "chi(v.u) = {chi} for v = {v}, u = {u}; expected 1"
            )));
        }
        Ok(Self { r, d, a, w, g, u })
    }

    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn d(&self) -> i64 {
        self.d
    }
    pub fn a(&self) -> u32 {
        self.a
    }
    pub fn w(&self) -> u64 {
        self.w
    }
    pub fn g(&self) -> u32 {
        self.g
    }
    pub fn u(&self) -> ChernClass {
        self.u
    }

    /// `v = (r, a)`.
    pub fn v(&self) -> ChernClass {
        ChernClass::new(self.r as i64, self.a as i64)
    }

    /// Same query at a different degree.
    pub fn with_w(&self, w: u64) -> Self {
        Self { w, ..*self }
    }

    /// Same query at a different genus.
    pub fn with_genus(&self, g: u32) -> Result<Self> {
        Self::new(self.r, self.d, self.a, self.w, g, Some(self.u))
    }

    /// Whether `w ≡ d·a (mod r)`.
    pub fn degree_congruence_holds(&self) -> bool {
        let r = self.r as i64;
        (self.w as i64 - self.d * self.a as i64).mod_floor(&r) == 0
    }
}

/// Positive divisors of `w` in increasing order.
pub fn divisors(w: u64) -> Result<Vec<u64>> {
    if w == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut m = 1u64;
    while m * m <= w {
        if w.is_multiple_of(m) {
            small.push(m);
            if m * m != w {
                large.push(w / m);
            }
        }
        m += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// `σ_{-1}(w) = Σ_{m | w} 1/m`.
pub fn sigma_minus_one(w: u64) -> Result<Rational> {
    Ok(divisors(w)?
        .into_iter()
        .fold(Rational::zero(), |acc, m| acc + rat(1, m as i64)))
}

/// `χ(v·u)` on the elliptic curve, where the Todd correction vanishes:
/// `v.u1·u.u2 + v.u2·u.u1`.
pub fn chi_pairing_e(v: &ChernClass, u: &ChernClass) -> i64 {
    v.u1 * u.u2 + v.u2 * u.u1
}

/// Solves `w̌₁·u₂ + w̌₂·u₁ = 0`, `w̌₁·a − w̌₂·r = w` over the integers.
pub fn solve_check_w(q: &InvariantQuery) -> Result<CheckW> {
    let (r, a, w) = (q.r as i64, q.a as i64, q.w as i64);
    let ChernClass { u1, u2 } = q.u;
    let det = -u2 * r - u1 * a;
    if det == 0 {
        return Err(Error::UnsolvableNormalization(format!(
            "singular system for u = {}",
            q.u
        )));
    }
    let n1 = -u1 * w;
    let n2 = u2 * w;
    if n1 % det != 0 || n2 % det != 0 {
        return Err(Error::UnsolvableNormalization(format!(
            "non-integral solution ({n1}/{det}, {n2}/{det})"
        )));
    }
    let sol = CheckW {
        w1: n1 / det,
        w2: n2 / det,
    };
    if sol.w1 * u2 + sol.w2 * u1 != 0 || sol.w1 * a - sol.w2 * r != w {
        return Err(Error::UnsolvableNormalization(
            "solution failed re-substitution".into(),
        ));
    }
    Ok(sol)
}

/// `|E[n]| = n²`.
pub fn torsion_order(n: u64) -> u128 {
    (n as u128) * (n as u128)
}

/// Whether `n` is prime.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;
    use proptest::prelude::*;

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(6).unwrap(), vec![1, 2, 3, 6]);
        assert_eq!(divisors(9).unwrap(), vec![1, 3, 9]);
        assert_eq!(divisors(0), Err(Error::ZeroArgument));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_minus_one(1).unwrap(), int(1));
        assert_eq!(sigma_minus_one(6).unwrap(), int(2));
        assert_eq!(sigma_minus_one(4).unwrap(), rat(7, 4));
        assert_eq!(sigma_minus_one(0), Err(Error::ZeroArgument));
    }

    #[test]
    fn sigma_times_w_is_divisor_sum() {
        for w in (1..=2000u64).chain((2001..=10_000).step_by(37)) {
            let sigma1: u64 = (1..=w).filter(|m| w % m == 0).sum();
            assert_eq!(
                sigma_minus_one(w).unwrap() * int(w as i64),
                int(sigma1 as i64),
                "w = {w}"
            );
        }
    }

    #[test]
    fn chi_examples() {
        assert_eq!(
            chi_pairing_e(&ChernClass::new(2, 1), &ChernClass::new(1, 0)),
            1
        );
        assert_eq!(
            chi_pairing_e(&ChernClass::new(5, 3), &ChernClass::new(0, 0)),
            0
        );
        assert_eq!(
            chi_pairing_e(&ChernClass::new(3, 1), &ChernClass::new(1, 0)),
            1
        );
    }

    #[test]
    fn check_w_examples() {
        let q = InvariantQuery::new(2, 1, 1, 3, 2, None).unwrap();
        assert_eq!(solve_check_w(&q).unwrap(), CheckW { w1: 3, w2: 0 });
        assert_eq!(
            solve_check_w(&q.with_w(0)).unwrap(),
            CheckW { w1: 0, w2: 0 }
        );
        let q = InvariantQuery::new(3, 1, 1, 5, 2, None).unwrap();
        assert_eq!(solve_check_w(&q).unwrap(), CheckW { w1: 5, w2: 0 });
    }

    #[test]
    fn check_w_with_general_normalisation() {
        // (r, a) = (5, 2), u = (3, -1): 5·(-1) + 2·3 = 1.
        let q = InvariantQuery::new(5, 1, 2, 4, 2, Some(ChernClass::new(3, -1))).unwrap();
        assert_eq!(solve_check_w(&q).unwrap(), CheckW { w1: 12, w2: 4 });
    }

    #[test]
    fn query_validation() {
        assert!(InvariantQuery::new(2, 1, 1, 1, 1, None).is_err());
        assert!(InvariantQuery::new(4, 1, 2, 1, 2, None).is_err());
        assert!(InvariantQuery::new(5, 1, 2, 1, 2, None).is_err());
        assert!(InvariantQuery::new(5, 1, 2, 1, 2, Some(ChernClass::new(1, 0))).is_err());
        assert!(InvariantQuery::new(2, 1, 2, 1, 2, None).is_err());
        assert!(InvariantQuery::new(0, 1, 0, 1, 2, None).is_err());
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(torsion_order(1), 1);
        assert_eq!(torsion_order(3), 9);
        assert_eq!(torsion_order(10), 100);
    }

    #[test]
    fn congruence() {
        let q = InvariantQuery::new(2, 1, 1, 3, 2, None).unwrap();
        assert!(q.degree_congruence_holds());
        assert!(!q.with_w(2).degree_congruence_holds());
        let q = InvariantQuery::new(3, -1, 1, 2, 2, None).unwrap();
        assert!(q.degree_congruence_holds());
    }

    /// Normalisation classes `u` with `r·u2 + a·u1 = 1`, found by search.
    fn normalisation(r: i64, a: i64) -> Option<ChernClass> {
        (-20..=20)
            .flat_map(|u1| (-20..=20).map(move |u2| ChernClass::new(u1, u2)))
            .find(|u| r * u.u2 + a * u.u1 == 1)
    }

    proptest! {
        #[test]
        fn check_w_resubstitutes(r in 1u32..12, a in 0u32..12, w in 0u64..5000, shift in -3i64..3) {
            prop_assume!(a < r && r.gcd(&a) == 1);
            let base = normalisation(r as i64, a as i64).unwrap();
            // Shifting u by multiples of (r, -a) keeps chi(v.u) = 1.
            let u = ChernClass::new(base.u1 + shift * r as i64, base.u2 - shift * a as i64);
            let q = InvariantQuery::new(r, 0, a, w, 2, Some(u)).unwrap();
            let c = solve_check_w(&q).unwrap();
            prop_assert_eq!(c.w1 * u.u2 + c.w2 * u.u1, 0);
            prop_assert_eq!(c.w1 * a as i64 - c.w2 * r as i64, w as i64);
        }

        #[test]
        fn sigma_is_multiplicative(a in 1u64..400, b in 1u64..400) {
            prop_assume!(a.gcd(&b) == 1);
            prop_assert_eq!(sigma_minus_one(a * b).unwrap(), sigma_minus_one(a).unwrap() * sigma_minus_one(b).unwrap());
        }
    }
}
