//! Genus-1 quasimap and Vafa–Witten invariants of moduli spaces of Higgs
//! `SL_r`-bundles, computed exactly.
//!
//! Two independent routes are provided: the closed divisor-sum formulas
//! ([`invariants::qm_e_closed`]) and a wall-crossing pipeline that enumerates
//! Quot-scheme components on the elliptic curve, computes their orbifold
//! Euler characteristics and extracts residues
//! ([`invariants::qm_e_oracle`]). The generating series of the invariants are
//! checked against `log ∏(1 − q^k)` in [`invariants::series_identity`].

pub mod arith;
pub mod error;
pub mod exactalg;
pub mod invariants;
pub mod quotloc;
pub mod selfcheck;

pub use arith::{CheckW, ChernClass, InvariantQuery};
pub use error::{Error, Result};
pub use exactalg::{EquivCoeff, QSeries, Rational, TPoly, ZLaurent};
pub use invariants::{InvariantResult, Method, Route};
pub use quotloc::{Mode, WallComponent};
