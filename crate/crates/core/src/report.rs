//! Check records shared by every verification suite.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::algebra::{rational_string, ExactMatrix, Rational, Scalar};

/// Outcome of a single identity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// Which statement the check witnesses, e.g. `"flatness"`.
    pub anchor: String,
    pub parameters: BTreeMap<String, String>,
    /// `"p/q"` for exact checks, decimal otherwise.
    pub residual: String,
    pub exact: bool,
    pub pass: bool,
    /// Excluded from determinism comparisons.
    pub wall_time_ms: f64,
}

impl CheckRecord {
    /// Exact check: passes iff the residual is zero.
    pub fn exact(name: impl Into<String>, anchor: impl Into<String>, residual: &Rational) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            parameters: BTreeMap::new(),
            residual: rational_string(residual),
            exact: true,
            pass: residual.is_zero(),
            wall_time_ms: 0.0,
        }
    }

    /// Exact check on the max-abs entry of a residual matrix.
    pub fn exact_matrix(name: impl Into<String>, anchor: impl Into<String>, residual: &ExactMatrix) -> Self {
        Self::exact(name, anchor, &residual.max_abs())
    }

    /// Floating check: passes iff `residual ≤ tol` and finite.
    pub fn float(name: impl Into<String>, anchor: impl Into<String>, residual: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            parameters: BTreeMap::new(),
            residual: format!("{residual:e}"),
            exact: false,
            pass: residual.is_finite() && residual <= tol,
            wall_time_ms: 0.0,
        }
        .with("tolerance", format!("{tol:e}"))
    }

    /// A boolean fact; the residual is `0` when it holds and `1` otherwise.
    pub fn boolean(name: impl Into<String>, anchor: impl Into<String>, holds: bool) -> Self {
        let r = if holds { Rational::zero() } else { Rational::one() };
        Self::exact(name, anchor, &r)
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    /// Inverts the pass flag, for checks that must detect a violation.
    pub fn expect_failure(mut self) -> Self {
        self.pass = !self.pass;
        self.parameters.insert("expect".into(), "nonzero".into());
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        self
    }
}

/// Whether every record passed.
pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.pass)
}

/// First failing record, if any.
pub fn first_failure(records: &[CheckRecord]) -> Option<&CheckRecord> {
    records.iter().find(|r| !r.pass)
}

/// Formats a rational list as `"a,b,c"`.
pub fn rational_list(xs: &[Rational]) -> String {
    xs.iter().map(rational_string).collect::<Vec<_>>().join(",")
}
