use std::collections::BTreeMap;

use qmwall::exactalg::{format_rational, int};
use qmwall::invariants::{conjecture_eval, qm_c, qm_e, series_identity, Identity};
use qmwall::selfcheck;
use qmwall::{ChernClass, Error, InvariantQuery, InvariantResult, Method, Mode};
use rayon::prelude::*;

use crate::args::{
    IdentityArg, InvariantArgs, ModeArgs, QueryArgs, RouteArg, SeriesArgs, Side, SweepArgs,
};
use crate::output::{
    breakdown_entries, decimal, CoefficientRow, ErrorRecord, IdentityCheck, InvariantRecord,
    OutputRecord, QueryEcho, SelfcheckRecord, SeriesRecord, SweepSummary,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_INVALID: i32 = 4;

const DECIMAL_DIGITS: u32 = 10;

/// A failed command: message for standard error plus exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedComponent { .. } | Error::Unsupported(_) => EXIT_UNSUPPORTED,
        Error::RouteDisagreement { .. } => EXIT_DISAGREE,
        _ => EXIT_INVALID,
    }
}

/// Records produced by a command and the exit code they imply.
pub struct Outcome {
    pub records: Vec<OutputRecord>,
    pub code: i32,
}

fn mode(m: &ModeArgs) -> Mode {
    if m.permissive {
        Mode::Permissive
    } else {
        Mode::Strict
    }
}

fn build_query(q: &QueryArgs, w: u64, g: u32) -> Result<InvariantQuery, Error> {
    InvariantQuery::new(
        q.rank,
        q.deg_d,
        q.deg_a,
        w,
        g,
        q.u.map(|(u1, u2)| ChernClass::new(u1, u2)),
    )
}

fn evaluate(
    q: &InvariantQuery,
    side: Side,
    method: Method,
    mode: Mode,
) -> Result<InvariantResult, Error> {
    match side {
        Side::E => qm_e(q, method, mode),
        Side::C => qm_c(q, method, mode),
    }
}

fn side_label(side: Side) -> String {
    match side {
        Side::E => "E".into(),
        Side::C => "C".into(),
    }
}

fn record_for(
    q: &InvariantQuery,
    side: Side,
    res: &InvariantResult,
    decimals: bool,
    raw: bool,
) -> InvariantRecord {
    InvariantRecord {
        query: q.into(),
        side: side_label(side),
        value: format_rational(&res.value),
        value_decimal: decimals.then(|| decimal(&res.value, DECIMAL_DIGITS)),
        raw: raw.then(|| res.raw().to_string()),
        breakdown: breakdown_entries(res),
        route: res.route.as_str().into(),
        conjectural: res.conjectural,
        breakdowns: None,
        identity_checks: None,
    }
}

/// Closed form and oracle side by side; the record reports the oracle value.
fn both_routes(
    q: &InvariantQuery,
    side: Side,
    mode: Mode,
    decimals: bool,
    raw: bool,
) -> Result<(InvariantRecord, bool), Error> {
    let closed = evaluate(q, side, Method::Closed, mode)?;
    let oracle = evaluate(q, side, Method::Oracle, mode)?;
    let agree = closed.value == oracle.value;
    let mut rec = record_for(q, side, &oracle, decimals, raw);
    rec.route = "both".into();
    rec.conjectural = closed.conjectural || oracle.conjectural;
    let mut map = BTreeMap::new();
    map.insert(
        closed.route.as_str().to_string(),
        breakdown_entries(&closed),
    );
    map.insert(
        oracle.route.as_str().to_string(),
        breakdown_entries(&oracle),
    );
    rec.breakdowns = Some(map);
    let detail = (!agree).then(|| {
        format!(
            "closed form {} vs wall-crossing {}",
            format_rational(&closed.value),
            format_rational(&oracle.value)
        )
    });
    rec.identity_checks = Some(vec![IdentityCheck {
        name: "routes_agree".into(),
        pass: agree,
        detail,
    }]);
    Ok((rec, agree))
}

pub fn invariant(args: &InvariantArgs, decimals: bool) -> Result<Outcome, Failure> {
    let q = build_query(&args.query, args.degree_w, args.genus)?;
    let mode = mode(&args.mode);
    let side = args.side;

    if q.w() == 0 {
        // Degree zero is always the constant-map invariant on C.
        let res = qm_c(&q, Method::Closed, mode)?;
        let rec = record_for(&q, Side::C, &res, decimals, args.raw);
        return Ok(Outcome {
            records: vec![OutputRecord::Invariant(rec)],
            code: EXIT_OK,
        });
    }

    let (rec, code) = match args.route {
        RouteArg::Closed => (
            record_for(
                &q,
                side,
                &evaluate(&q, side, Method::Closed, mode)?,
                decimals,
                args.raw,
            ),
            EXIT_OK,
        ),
        RouteArg::Oracle => (
            record_for(
                &q,
                side,
                &evaluate(&q, side, Method::Oracle, mode)?,
                decimals,
                args.raw,
            ),
            EXIT_OK,
        ),
        RouteArg::Both => {
            let (rec, agree) = both_routes(&q, side, mode, decimals, args.raw)?;
            (rec, if agree { EXIT_OK } else { EXIT_DISAGREE })
        }
        RouteArg::Conjecture => {
            let mut res = conjecture_eval(&q)?;
            if side == Side::E {
                let factor = int(q.r() as i64).pow(2 * q.g() as i32).recip();
                res.value *= &factor;
                for (_, c) in &mut res.breakdown {
                    *c *= &factor;
                }
            }
            (record_for(&q, side, &res, decimals, args.raw), EXIT_OK)
        }
    };
    Ok(Outcome {
        records: vec![OutputRecord::Invariant(rec)],
        code,
    })
}

pub fn series(args: &SeriesArgs) -> Result<Outcome, Failure> {
    let identity = match args.identity {
        IdentityArg::A => Identity::A,
        IdentityArg::B => Identity::B,
    };
    if args.genus < 2 {
        return Err(Failure {
            code: EXIT_INVALID,
            message: format!("genus must be at least 2, got {}", args.genus),
        });
    }
    let check = series_identity(identity, args.genus, args.order)?;
    let coefficients = (1..=args.order)
        .map(|w| CoefficientRow {
            w,
            lhs: format_rational(check.lhs.coeff(w).expect("within order")),
            rhs: format_rational(check.rhs.coeff(w).expect("within order")),
        })
        .collect();
    let mismatches = check.mismatches();
    let detail = (!mismatches.is_empty()).then(|| format!("mismatch at w = {mismatches:?}"));
    let rec = SeriesRecord {
        identity: format!("{identity:?}"),
        genus: args.genus,
        order: args.order,
        coefficients,
        identity_checks: vec![IdentityCheck {
            name: format!("theorem_{identity:?}"),
            pass: check.equal,
            detail,
        }],
        pass: check.equal,
    };
    let code = if check.equal { EXIT_OK } else { EXIT_DISAGREE };
    Ok(Outcome {
        records: vec![OutputRecord::Series(rec)],
        code,
    })
}

pub fn sweep(args: &SweepArgs, decimals: bool) -> Result<Outcome, Failure> {
    let ws: Vec<u64> = match (&args.w_list, args.w_max) {
        (Some(list), _) => list.clone(),
        (None, Some(max)) => (1..=max).collect(),
        (None, None) => {
            return Err(Failure {
                code: EXIT_INVALID,
                message: "one of --w-max or --w-list is required".into(),
            })
        }
    };
    let mode = mode(&args.mode);
    let grid: Vec<(u32, u64)> = args
        .genera
        .0
        .iter()
        .flat_map(|&g| ws.iter().map(move |&w| (g, w)))
        .collect();

    let results: Vec<(OutputRecord, i32, bool)> = grid
        .par_iter()
        .map(|&(g, w)| {
            let attempt = build_query(&args.query, w, g)
                .and_then(|q| both_routes(&q, Side::E, mode, decimals, false));
            match attempt {
                Ok((rec, agree)) => {
                    let code = if agree { EXIT_OK } else { EXIT_DISAGREE };
                    (OutputRecord::Invariant(rec), code, agree)
                }
                Err(e) => {
                    let query = Some(QueryEcho {
                        r: args.query.rank,
                        d: args.query.deg_d,
                        a: args.query.deg_a,
                        w,
                        g,
                        u: args.query.u.map(|(a, b)| [a, b]).unwrap_or([1, 0]),
                    });
                    let code = exit_code(&e);
                    (
                        OutputRecord::Error(ErrorRecord {
                            query,
                            message: e.to_string(),
                            exit_code: code,
                        }),
                        code,
                        false,
                    )
                }
            }
        })
        .collect();

    let total = results.len();
    let agree = results.iter().filter(|(_, _, ok)| *ok).count();
    let errors = results
        .iter()
        .filter(|(r, _, _)| matches!(r, OutputRecord::Error(_)))
        .count();
    let conjectural = results
        .iter()
        .filter(|(r, _, _)| matches!(r, OutputRecord::Invariant(rec) if rec.conjectural))
        .count();
    // Invalid input wins over unsupported, which wins over disagreement.
    let code = [EXIT_INVALID, EXIT_UNSUPPORTED, EXIT_DISAGREE]
        .into_iter()
        .find(|c| results.iter().any(|(_, code, _)| code == c))
        .unwrap_or(EXIT_OK);

    let mut records: Vec<OutputRecord> = results.into_iter().map(|(r, _, _)| r).collect();
    records.push(OutputRecord::SweepSummary(SweepSummary {
        agree,
        total,
        errors,
        conjectural,
        pass: agree == total,
    }));
    Ok(Outcome { records, code })
}

pub fn selfcheck() -> Outcome {
    let checks: Vec<IdentityCheck> = selfcheck::run_all()
        .into_iter()
        .map(|c| IdentityCheck {
            name: c.name.into(),
            pass: c.pass,
            detail: (!c.detail.is_empty()).then_some(c.detail),
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass);
    Outcome {
        records: vec![OutputRecord::Selfcheck(SelfcheckRecord {
            identity_checks: checks,
            pass,
        })],
        code: if pass { EXIT_OK } else { EXIT_DISAGREE },
    }
}
