//! Machine-readable reports. The JSON schema is versioned (`"schema": 1`);
//! multivectors are emitted as maps from basis-blade names to coefficients.
//! Serialization is deterministic: ordered maps, no timestamps, and the
//! shortest float representation that round-trips 64-bit values.

use crate::algebra::{blade_name, Multivector};
use crate::boundary::{IncisionSummary, SweepOutcome};
use serde::Serialize;
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

/// Nonzero blade coefficients of a multivector, keyed by blade name.
pub fn coeff_map(mv: &Multivector, tol: f64) -> BTreeMap<String, f64> {
    let mut map = BTreeMap::new();
    for bits in 0..mv.algebra().blade_count() {
        let c = mv.coeff(bits);
        if c.abs() > tol {
            map.insert(blade_name(bits), c);
        }
    }
    map
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleRecord {
    pub value: BTreeMap<String, f64>,
    pub cells: usize,
    pub estimated_error: f64,
    pub converged: bool,
    /// `‖extrapolated - oracle‖`.
    pub delta: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub epsilon: f64,
    pub result: BTreeMap<String, f64>,
    pub error_bound: f64,
    /// `‖result - oracle‖` at this sweep point, when an oracle ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_error_bound: Option<bool>,
}

/// Full scenario report: the extrapolated result, the incision ledger, the
/// oracle comparison, and the convergence trace over the incision sweep.
#[derive(Debug, Clone, Serialize)]
pub struct IntegrationReport {
    pub schema: u32,
    pub scenario: String,
    pub params: serde_json::Value,
    pub result: BTreeMap<String, f64>,
    /// ledger bound `ε` of the smallest swept incision.
    pub error_bound: f64,
    pub incisions: Vec<IncisionSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRecord>,
    pub sweep: Vec<SweepRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence_order: Option<f64>,
    pub error_bound_ok: bool,
}

impl IntegrationReport {
    pub fn from_sweep(outcome: &SweepOutcome) -> Self {
        let coeff_tol = 1e-14;
        let oracle = outcome.oracle.as_ref().map(|o| OracleRecord {
            value: coeff_map(&o.value, coeff_tol),
            cells: o.cells,
            estimated_error: o.estimated_error,
            converged: o.converged,
            delta: (&outcome.extrapolated - &o.value).norm(),
        });
        let sweep = outcome
            .points
            .iter()
            .map(|p| SweepRecord {
                epsilon: p.epsilon,
                result: coeff_map(&p.result, coeff_tol),
                error_bound: p.error_bound,
                delta: p.oracle_delta,
                within_error_bound: p.within_error_bound,
            })
            .collect();
        let error_bound = outcome.points.last().map(|p| p.error_bound).unwrap_or(0.0);
        Self {
            schema: SCHEMA_VERSION,
            scenario: outcome.scenario.clone(),
            params: outcome.params.clone(),
            result: coeff_map(&outcome.extrapolated, coeff_tol),
            error_bound,
            incisions: outcome.incisions.clone(),
            oracle,
            sweep,
            convergence_order: outcome.convergence_order,
            error_bound_ok: outcome.error_bound_ok,
        }
    }

    pub fn to_json_pretty(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }
}
