//! Built-in property suites, run by `qmwall selfcheck`.

use crate::arith::{divisors, sigma_minus_one, ChernClass, InvariantQuery};
use crate::error::Result;
use crate::exactalg::{int, laurent_residue, rat, series_log_product, EquivCoeff, QSeries};
use crate::invariants::{
    qm_c, qm_constant_map, qm_e_closed, qm_e_oracle, series_identity, Identity, Method,
};
use crate::quotloc::{
    component_residue_degree, enumerate_wall_components, euler_slice_bruteforce,
    expected_component_degree, normal_bundle_inverse_expansion, Mode,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn outcome(name: &'static str, res: Result<Option<String>>) -> CheckOutcome {
    match res {
        Ok(None) => CheckOutcome {
            name,
            pass: true,
            detail: String::new(),
        },
        Ok(Some(d)) => CheckOutcome {
            name,
            pass: false,
            detail: d,
        },
        Err(e) => CheckOutcome {
            name,
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn log_product_coefficients() -> Result<Option<String>> {
    let u = series_log_product(200)?;
    for w in 1..=200u64 {
        if u.coeff(w as usize) != Some(&-sigma_minus_one(w)?) {
            return Ok(Some(format!("coefficient of q^{w}")));
        }
    }
    Ok(None)
}

fn log_product_exp() -> Result<Option<String>> {
    let n = 30;
    let mut product = QSeries::one(n);
    for k in 1..=n {
        product = &product * &(&QSeries::one(n) - &QSeries::monomial(int(1), k, n));
    }
    Ok(
        (series_log_product(n)?.exp()? != product)
            .then(|| "exp(U) differs from the product".into()),
    )
}

fn series_identities() -> Result<Option<String>> {
    for g in 2..=5 {
        for id in [Identity::A, Identity::B] {
            let c = series_identity(id, g, 50)?;
            if !c.equal {
                return Ok(Some(format!(
                    "{id:?}, g = {g}, mismatches at {:?}",
                    c.mismatches()
                )));
            }
        }
    }
    Ok(None)
}

fn oracle_equivalence() -> Result<Option<String>> {
    for d in 0..=1 {
        for g in 2..=5 {
            for w in 1..=200 {
                let q = InvariantQuery::new(2, d, 1, w, g, None)?;
                let closed = qm_e_closed(&q)?.value;
                let oracle = qm_e_oracle(&q, Mode::Strict)?.value;
                if closed != oracle {
                    return Ok(Some(format!(
                        "d = {d}, g = {g}, w = {w}: {closed} vs {oracle}"
                    )));
                }
            }
        }
    }
    Ok(None)
}

fn constant_maps() -> Result<Option<String>> {
    for r in [2u32, 3, 5] {
        for g in 2..=4u32 {
            let q = InvariantQuery::new(r, 0, 1, 0, g, None)?;
            let v = qm_c(&q, Method::Oracle, Mode::Strict)?.value;
            if v != int(r as i64).pow(2 * g as i32 - 2) || v != qm_constant_map(r, 1, g)? {
                return Ok(Some(format!("r = {r}, g = {g}: {v}")));
            }
        }
    }
    Ok(None)
}

fn slice_euler() -> Result<Option<String>> {
    for r in 1..=6u32 {
        for k in 1..=12i64 {
            let e = euler_slice_bruteforce(r, &ChernClass::new(0, k))?;
            if e != r as i64 * k {
                return Ok(Some(format!("r = {r}, k = {k}: {e}")));
            }
        }
    }
    Ok(None)
}

fn stabilizer_ledger() -> Result<Option<String>> {
    for w in 1..=500 {
        let q = InvariantQuery::new(2, 1, 1, w, 2, None)?;
        for c in enumerate_wall_components(&q, Mode::Strict)? {
            let sq = (c.dim as u128) * (c.dim as u128);
            if c.euler_quotient() * int(c.dim as i64) != int(1) || c.stab_order != sq {
                return Ok(Some(format!("w = {w}, m = {}", c.m)));
            }
        }
    }
    Ok(None)
}

fn higher_rank() -> Result<Option<String>> {
    for w in [1u64, 3, 9, 13, 27, 39] {
        for d in 0..3 {
            for g in 2..=4 {
                let q = InvariantQuery::new(3, d, 1, w, g, None)?;
                let expected = if (w as i64 - d).rem_euclid(3) == 0 {
                    int(2 * g as i64 - 2) * sigma_minus_one(w)?
                } else {
                    int(0)
                };
                let got = qm_e_oracle(&q, Mode::Strict)?;
                if got.value != expected || got.conjectural {
                    return Ok(Some(format!("w = {w}, d = {d}, g = {g}: {}", got.value)));
                }
            }
        }
    }
    Ok(None)
}

fn residue_engine() -> Result<Option<String>> {
    let root = &EquivCoeff::omega() - &EquivCoeff::t();
    for m in 1..=10u64 {
        for dim in 1..=10u64 {
            let res = laurent_residue(&normal_bundle_inverse_expansion(m, dim));
            if res != root.scale(&rat(-(dim as i64), m as i64)) {
                return Ok(Some(format!("m = {m}, dim = {dim}")));
            }
        }
    }
    for w in 1..=60 {
        let q = InvariantQuery::new(2, 1, 1, w, 3, None)?;
        for c in enumerate_wall_components(&q, Mode::Strict)? {
            if component_residue_degree(&c, 3) != expected_component_degree(c.m, 3) {
                return Ok(Some(format!("w = {w}, m = {}", c.m)));
            }
        }
        if divisors(w)?.len() != enumerate_wall_components(&q, Mode::Strict)?.len() {
            return Ok(Some(format!("component count for w = {w}")));
        }
    }
    Ok(None)
}

/// Runs every built-in check, in a fixed order.
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        outcome("log_product_divisor_sums", log_product_coefficients()),
        outcome("log_product_exp_roundtrip", log_product_exp()),
        outcome("series_identities_A_B", series_identities()),
        outcome("oracle_equivalence_rank2", oracle_equivalence()),
        outcome("constant_map", constant_maps()),
        outcome("slice_euler_characteristic", slice_euler()),
        outcome("stabilizer_dimension_ledger", stabilizer_ledger()),
        outcome("higher_rank_congruence", higher_rank()),
        outcome("residue_engine", residue_engine()),
    ]
}
