//! Quot-scheme wall components and their residue contributions.
//!
//! Crossing the single nontrivial wall `ε = 1/w` picks up one Quot scheme
//! `Quot(a, u_m)` for every divisor `m | w`. Each component is a fibration
//! over the Jacobian whose fibre is a slice of the `Φ_a` action, so its
//! orbifold Euler characteristic is `e(slice) / |stabiliser|`. Two shapes of
//! quotient class are analysed:
//!
//! * `u = (r - 1, k)`: the slice is `P^{dim-1}` and the stabiliser is
//!   `E[dim]`, of order `dim²`;
//! * `u = (0, k)`: the slice Euler characteristic comes from torus
//!   localisation over ordered splittings of `u` into `r` line-bundle
//!   quotients, and the stabiliser has order `r²k²`.
//!
//! Anything else is rejected in [`Mode::Strict`] and evaluated with the
//! uniform `1/dim` guess, flagged conjectural, in [`Mode::Permissive`].

use num_integer::Integer;

use crate::arith::{divisors, solve_check_w, torsion_order, ChernClass, InvariantQuery};
use crate::error::{Error, Result};
use crate::exactalg::{
    int, laurent_residue, rat, EquivCoeff, Rational, TPoly, ZLaurent, DEFAULT_MIN_Z_EXPONENT,
};

/// Treatment of quotient classes outside the analysed cases.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    #[default]
    Strict,
    Permissive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    /// `u = (r - 1, k)`.
    Projective,
    /// `u = (0, k)`.
    Torsion,
    /// Any other rank component; only reachable in permissive mode.
    Unanalysed,
}

/// One Quot-scheme component of the wall at `ε = 1/w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallComponent {
    pub m: u64,
    pub h_m: i64,
    pub u_m: ChernClass,
    pub dim: u64,
    pub stab_order: u128,
    pub euler_slice: i64,
    pub kind: ComponentKind,
}

impl WallComponent {
    pub fn is_conjectural(&self) -> bool {
        self.kind == ComponentKind::Unanalysed
    }

    /// `e(T_[Quot/Φ]) = e(slice) / |Γ|`.
    pub fn euler_quotient(&self) -> Rational {
        Rational::new(self.euler_slice.into(), self.stab_order.into())
    }
}

/// One torus-fixed component of the determinant slice of `Quot(a, (0, k))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedLocusDecomposition {
    pub parts: Vec<ChernClass>,
    pub euler_contribution: i64,
}

impl FixedLocusDecomposition {
    fn from_degrees(degrees: &[i64]) -> Self {
        let nonzero: Vec<i64> = degrees.iter().copied().filter(|&k| k != 0).collect();
        // Two or more nonzero parts carry a free E-action; a single part is P^{k-1}.
        let euler_contribution = match nonzero.as_slice() {
            [k] => *k,
            _ => 0,
        };
        Self {
            parts: degrees.iter().map(|&k| ChernClass::new(0, k)).collect(),
            euler_contribution,
        }
    }

    pub fn total(&self) -> ChernClass {
        self.parts
            .iter()
            .fold(ChernClass::new(0, 0), |acc, p| acc + *p)
    }
}

/// Ordered splittings `k = k_1 + … + k_r` with `k_i ≥ 0`, in lexicographic
/// order.
#[derive(Clone, Debug)]
pub struct FixedLocus {
    current: Option<Vec<i64>>,
}

impl FixedLocus {
    pub fn new(r: u32, k: i64) -> Self {
        let current = (r > 0 && k >= 0).then(|| {
            let mut v = vec![0; r as usize];
            v[r as usize - 1] = k;
            v
        });
        Self { current }
    }
}

impl Iterator for FixedLocus {
    type Item = FixedLocusDecomposition;

    fn next(&mut self) -> Option<Self::Item> {
        let cur = self.current.as_mut()?;
        let out = FixedLocusDecomposition::from_degrees(cur);
        let n = cur.len();
        match (1..n).rev().find(|&i| cur[i] > 0) {
            Some(i) => {
                let rest = cur[i] - 1;
                cur[i - 1] += 1;
                cur[i] = 0;
                cur[n - 1] = rest;
            }
            None => self.current = None,
        }
        Some(out)
    }
}

/// `dim Quot(a, u) = χ(K^∨·Q) = r·u₂ − a·u₁`.
pub fn quot_dimension(r: u32, a: u32, u: &ChernClass) -> Result<u64> {
    let dim = r as i64 * u.u2 - a as i64 * u.u1;
    u64::try_from(dim)
        .map_err(|_| Error::InvalidComponent(format!("class {u} has negative dimension {dim}")))
}

fn classify(r: u32, u: &ChernClass) -> ComponentKind {
    if u.u1 == r as i64 - 1 {
        ComponentKind::Projective
    } else if u.u1 == 0 {
        ComponentKind::Torsion
    } else {
        ComponentKind::Unanalysed
    }
}

/// Order of the finite stabiliser `Γ_k ⊂ Φ_a` of the slice:
/// `dim²` for `u = (r − 1, k)` and `r²k²` for `u = (0, k)`.
pub fn stabilizer_order(r: u32, a: u32, u: &ChernClass) -> Result<u128> {
    match classify(r, u) {
        ComponentKind::Projective => Ok(torsion_order(quot_dimension(r, a, u)?)),
        ComponentKind::Torsion => {
            let k =
                u64::try_from(u.u2).map_err(|_| Error::InvalidComponent(format!("class {u}")))?;
            Ok(torsion_order(r as u64 * k))
        }
        ComponentKind::Unanalysed => Err(Error::UnsupportedComponent {
            r,
            u1: u.u1,
            u2: u.u2,
        }),
    }
}

/// Stabiliser order under the uniform conjectural rule `dim²`.
pub fn conjectural_stabilizer_order(dim: u64) -> u128 {
    torsion_order(dim)
}

/// All torus-fixed components of the determinant slice of `Quot(a, (0, k))`.
pub fn fixed_locus(r: u32, k: i64) -> FixedLocus {
    FixedLocus::new(r, k)
}

/// Euler characteristic of the slice `Quot(a, (0, k))_0` by summing the
/// torus-fixed components.
pub fn euler_slice_bruteforce(r: u32, u: &ChernClass) -> Result<i64> {
    if u.u1 != 0 {
        return Err(Error::InvalidComponent(format!(
            "slice enumeration needs u = (0, k), got {u}"
        )));
    }
    match u.u2 {
        0 => return Err(Error::DegenerateQuotient),
        k if k < 0 => return Err(Error::InvalidComponent(format!("negative degree in {u}"))),
        _ => {}
    }
    if r == 0 {
        return Err(Error::InvalidQuery("rank must be positive".into()));
    }
    Ok(fixed_locus(r, u.u2).map(|c| c.euler_contribution).sum())
}

/// `e(T_[Quot/Φ]) = e(P^{dim−1}) / |Γ_k| = dim / dim²` for `u = (r − 1, k)`.
pub fn euler_quotient_projective(r: u32, a: u32, u: &ChernClass) -> Result<Rational> {
    if classify(r, u) != ComponentKind::Projective {
        return Err(Error::UnsupportedComponent {
            r,
            u1: u.u1,
            u2: u.u2,
        });
    }
    let dim = quot_dimension(r, a, u)?;
    if dim == 0 {
        return Err(Error::DegenerateQuotient);
    }
    Ok(Rational::new(dim.into(), stabilizer_order(r, a, u)?.into()))
}

/// Builds the wall components `Quot(a, u_m)`, one per divisor `m | w`.
pub fn enumerate_wall_components(q: &InvariantQuery, mode: Mode) -> Result<Vec<WallComponent>> {
    let (r, a) = (q.r(), q.a());
    let check = solve_check_w(q)?;
    divisors(q.w())?
        .into_iter()
        .map(|m| {
            let mi = m as i64;
            if check.w1 % mi != 0 || check.w2 % mi != 0 {
                return Err(Error::InvalidComponent(format!(
                    "w̌ = ({}, {}) not divisible by {m}",
                    check.w1, check.w2
                )));
            }
            let (x1, x2) = (check.w1 / mi, check.w2 / mi);
            let h_m = Integer::div_ceil(&x1, &(r as i64));
            let window: Vec<i64> = (h_m - 2..=h_m + 2)
                .filter(|h| (0..r as i64).contains(&(h * r as i64 - x1)))
                .collect();
            if window != [h_m] {
                return Err(Error::InvalidComponent(format!(
                    "normaliser h_m for m = {m} is not unique"
                )));
            }
            let u_m = ChernClass::new(h_m * r as i64 - x1, h_m * a as i64 - x2);
            let dim = quot_dimension(r, a, &u_m)?;
            if dim == 0 {
                return Err(Error::InvalidComponent(format!(
                    "zero-dimensional component for m = {m}"
                )));
            }
            let kind = classify(r, &u_m);
            let (stab_order, euler_slice) = match kind {
                ComponentKind::Projective => (stabilizer_order(r, a, &u_m)?, dim as i64),
                ComponentKind::Torsion => (
                    stabilizer_order(r, a, &u_m)?,
                    euler_slice_bruteforce(r, &u_m)?,
                ),
                ComponentKind::Unanalysed => match mode {
                    Mode::Strict => {
                        return Err(Error::UnsupportedComponent {
                            r,
                            u1: u_m.u1,
                            u2: u_m.u2,
                        })
                    }
                    Mode::Permissive => (conjectural_stabilizer_order(dim), dim as i64),
                },
            };
            Ok(WallComponent {
                m,
                h_m,
                u_m,
                dim,
                stab_order,
                euler_slice,
                kind,
            })
        })
        .collect()
}

/// `e(N^vir)^{-1} = Σ_k (−m z)^{−k} c_k(V)` for `V` of rank zero whose Chern
/// roots are `dim` copies of `c₁(ω_C) − t`, kept down to `z^{-2}`.
pub fn normal_bundle_inverse_expansion(m: u64, dim: u64) -> ZLaurent {
    normal_bundle_inverse_expansion_to(m, dim, DEFAULT_MIN_Z_EXPONENT)
}

/// As [`normal_bundle_inverse_expansion`], keeping exponents down to
/// `min_exponent`.
pub fn normal_bundle_inverse_expansion_to(m: u64, dim: u64, min_exponent: i32) -> ZLaurent {
    let root = &EquivCoeff::omega() - &EquivCoeff::t();
    let x = root.scale(&rat(-1, m as i64));
    ZLaurent::binomial_power(&x, dim as i64, min_exponent)
}

/// `Res_{z=0}([Quot(a, u_m)/Φ]^vir / e(N^vir))` as a polynomial in `t`.
///
/// The virtual class is `e(T_[Quot/Φ])·(c₁(ω_C) − t)` on `[Quot/Φ] × C`;
/// only its degree survives, as a multiple of a point class on `C`, so the
/// residue is paired through its `ω`-free part.
pub fn component_residue(c: &WallComponent, genus: u32) -> TPoly {
    let residue = laurent_residue(&normal_bundle_inverse_expansion(c.m, c.dim));
    let virtual_class = (&EquivCoeff::omega() - &EquivCoeff::t()).scale(&c.euler_quotient());
    let point_multiple = virtual_class.integrate_over_curve(genus);
    &residue.restrict_to_point() * &point_multiple
}

/// Coefficient of `t` in [`component_residue`]:
/// `m^{-1}·dim·(2g − 2)·e(T_[Quot/Φ])`.
pub fn component_residue_degree(c: &WallComponent, genus: u32) -> Rational {
    component_residue(c, genus).coeff(1)
}

/// `(2g − 2)/m`, the value every analysed component contributes.
pub fn expected_component_degree(m: u64, genus: u32) -> Rational {
    int(2 * genus as i64 - 2) / int(m as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(r: u32, a: u32, w: u64) -> InvariantQuery {
        InvariantQuery::new(r, 1, a, w, 2, None).unwrap()
    }

    fn summary(cs: &[WallComponent]) -> Vec<(u64, i64, ChernClass)> {
        cs.iter().map(|c| (c.m, c.h_m, c.u_m)).collect()
    }

    #[test]
    fn components_rank_two() {
        let cs = enumerate_wall_components(&q(2, 1, 3), Mode::Strict).unwrap();
        assert_eq!(
            summary(&cs),
            vec![(1, 2, ChernClass::new(1, 2)), (3, 1, ChernClass::new(1, 1))]
        );
        let cs = enumerate_wall_components(&q(2, 1, 1), Mode::Strict).unwrap();
        assert_eq!(summary(&cs), vec![(1, 1, ChernClass::new(1, 1))]);
        let cs = enumerate_wall_components(&q(2, 1, 2), Mode::Strict).unwrap();
        assert_eq!(
            summary(&cs),
            vec![(1, 1, ChernClass::new(0, 1)), (2, 1, ChernClass::new(1, 1))]
        );
    }

    #[test]
    fn zero_degree_has_no_components() {
        assert_eq!(
            enumerate_wall_components(&q(2, 1, 0), Mode::Strict),
            Err(Error::ZeroArgument)
        );
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(quot_dimension(2, 1, &ChernClass::new(1, 2)).unwrap(), 3);
        assert_eq!(quot_dimension(2, 1, &ChernClass::new(0, 1)).unwrap(), 2);
        assert_eq!(quot_dimension(3, 1, &ChernClass::new(2, 2)).unwrap(), 4);
        assert!(matches!(
            quot_dimension(2, 1, &ChernClass::new(3, 1)),
            Err(Error::InvalidComponent(_))
        ));
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(stabilizer_order(2, 1, &ChernClass::new(1, 2)).unwrap(), 9);
        assert_eq!(stabilizer_order(2, 1, &ChernClass::new(0, 1)).unwrap(), 4);
        assert_eq!(stabilizer_order(2, 1, &ChernClass::new(1, 1)).unwrap(), 1);
        assert_eq!(
            stabilizer_order(5, 2, &ChernClass::new(2, 3)),
            Err(Error::UnsupportedComponent { r: 5, u1: 2, u2: 3 })
        );
    }

    #[test]
    fn slice_examples() {
        assert_eq!(
            euler_slice_bruteforce(2, &ChernClass::new(0, 1)).unwrap(),
            2
        );
        assert_eq!(
            euler_slice_bruteforce(3, &ChernClass::new(0, 4)).unwrap(),
            12
        );
        assert_eq!(
            euler_slice_bruteforce(5, &ChernClass::new(0, 1)).unwrap(),
            5
        );
        assert_eq!(
            euler_slice_bruteforce(3, &ChernClass::new(0, 0)),
            Err(Error::DegenerateQuotient)
        );
        assert!(euler_slice_bruteforce(3, &ChernClass::new(1, 2)).is_err());
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn fixed_locus_enumerates_every_composition_once() {
        for r in 1..=5u32 {
            for k in 0..=7i64 {
                let all: Vec<_> = fixed_locus(r, k).collect();
                assert_eq!(
                    all.len() as u64,
                    binomial(k as u64 + r as u64 - 1, r as u64 - 1),
                    "r={r} k={k}"
                );
                let mut seen = std::collections::HashSet::new();
                for d in &all {
                    assert_eq!(d.parts.len(), r as usize);
                    assert_eq!(d.total(), ChernClass::new(0, k));
                    assert!(d.parts.iter().all(|p| p.u2 >= 0));
                    let nonzero = d.parts.iter().filter(|p| !p.is_zero()).count();
                    if nonzero != 1 {
                        assert_eq!(d.euler_contribution, 0);
                    }
                    assert!(seen.insert(d.parts.clone()));
                }
            }
        }
    }

    #[test]
    fn projective_euler_examples() {
        assert_eq!(
            euler_quotient_projective(2, 1, &ChernClass::new(1, 1)).unwrap(),
            int(1)
        );
        assert_eq!(
            euler_quotient_projective(2, 1, &ChernClass::new(1, 2)).unwrap(),
            rat(1, 3)
        );
        assert_eq!(
            euler_quotient_projective(3, 1, &ChernClass::new(2, 1)).unwrap(),
            int(1)
        );
        assert!(euler_quotient_projective(2, 1, &ChernClass::new(0, 1)).is_err());
    }

    #[test]
    fn expansion_examples() {
        let root = &EquivCoeff::omega() - &EquivCoeff::t();
        let f = normal_bundle_inverse_expansion(1, 1);
        assert_eq!(f.term(0), Some(&EquivCoeff::one()));
        assert_eq!(f.term(-1), Some(&root.scale(&int(-1))));
        let f = normal_bundle_inverse_expansion(3, 1);
        assert_eq!(f.term(-1), Some(&root.scale(&rat(-1, 3))));
        let f = normal_bundle_inverse_expansion(1, 0);
        assert_eq!(f, ZLaurent::one(DEFAULT_MIN_Z_EXPONENT));
    }

    #[test]
    fn residue_is_at_most_linear_in_t_after_pairing() {
        // The z^{-2} term carries (ω - t)², but the residue never sees it and the
        // paired residue has no t² term.
        let f = normal_bundle_inverse_expansion(2, 5);
        let second = f.term(-2).unwrap();
        assert_eq!(second.scalar_part().coeff(2), rat(10, 4));
        for c in enumerate_wall_components(&q(2, 1, 12), Mode::Strict).unwrap() {
            let r = component_residue(&c, 4);
            assert!(r.degree() == Some(1), "{r}");
            assert_eq!(r.coeff(0), int(0));
        }
    }

    #[test]
    fn residue_degree_examples() {
        let c = |m, u: ChernClass| {
            let dim = quot_dimension(2, 1, &u).unwrap();
            WallComponent {
                m,
                h_m: 0,
                u_m: u,
                dim,
                stab_order: stabilizer_order(2, 1, &u).unwrap(),
                euler_slice: dim as i64,
                kind: ComponentKind::Projective,
            }
        };
        assert_eq!(
            component_residue_degree(&c(1, ChernClass::new(1, 2)), 2),
            int(2)
        );
        assert_eq!(
            component_residue_degree(&c(3, ChernClass::new(1, 1)), 2),
            rat(2, 3)
        );
        assert_eq!(
            component_residue_degree(&c(2, ChernClass::new(1, 1)), 3),
            int(2)
        );
    }

    #[test]
    fn unanalysed_components_need_permissive_mode() {
        // (5, 2), u = (3, -1), w = 4: u_m for m = 1 has rank component 3.
        let q = InvariantQuery::new(5, 1, 2, 4, 2, Some(ChernClass::new(3, -1))).unwrap();
        assert!(matches!(
            enumerate_wall_components(&q, Mode::Strict),
            Err(Error::UnsupportedComponent { .. })
        ));
        let cs = enumerate_wall_components(&q, Mode::Permissive).unwrap();
        assert!(cs.iter().any(WallComponent::is_conjectural));
        for c in &cs {
            assert_eq!(
                component_residue_degree(c, 2),
                expected_component_degree(c.m, 2)
            );
        }
    }

    #[test]
    fn odd_degree_rank_two_shape() {
        for w in (1..200u64).step_by(2) {
            for c in enumerate_wall_components(&q(2, 1, w), Mode::Strict).unwrap() {
                let n = w / c.m;
                assert_eq!(c.u_m, ChernClass::new(1, (n as i64 + 1) / 2));
                assert_eq!(c.dim, n);
            }
        }
    }

    proptest! {
        #[test]
        fn slice_euler_is_rank_times_degree(r in 1u32..=6, k in 1i64..=12) {
            prop_assert_eq!(euler_slice_bruteforce(r, &ChernClass::new(0, k)).unwrap(), r as i64 * k);
        }

        #[test]
        fn analysed_components_have_unit_dim_euler_product(w in 1u64..=500, g in 2u32..=6) {
            for c in enumerate_wall_components(&q(2, 1, w), Mode::Strict).unwrap() {
                prop_assert_eq!(c.euler_quotient() * int(c.dim as i64), int(1));
                prop_assert_eq!(c.stab_order, torsion_order(c.dim));
                prop_assert_eq!(c.h_m * 2 - (w / c.m) as i64, c.u_m.u1);
                prop_assert_eq!(component_residue_degree(&c, g), expected_component_degree(c.m, g));
            }
        }

        #[test]
        fn component_dimension_is_codivisor(r in 2u32..=7, w in 1u64..=300) {
            let a = 1;
            for c in enumerate_wall_components(&q(r, a, w), Mode::Permissive).unwrap() {
                prop_assert_eq!(c.dim, w / c.m);
                prop_assert!((0..r as i64).contains(&c.u_m.u1));
            }
        }
    }
}
