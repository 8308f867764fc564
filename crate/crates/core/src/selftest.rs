//! The built-in randomized property suite.

use crate::properties::{run, Outcome, Property, Settings};
use crate::{exterior, homology, linfty, observables, quantize};

pub const DEFAULT_SEED: u64 = 42;

/// A group of properties run with a common case count, once per chart.
pub struct Suite {
    pub name: &'static str,
    pub properties: Vec<Property>,
    pub cases: usize,
    /// `None` lets each case pick its own chart.
    pub charts: Vec<Option<usize>>,
    /// Upper bound on the coefficient degree used by this suite.
    pub degree_cap: u32,
}

pub fn suites() -> Vec<Suite> {
    vec![
        Suite { name: "exterior", properties: exterior::identities::properties(), cases: 200, charts: vec![None], degree_cap: 3 },
        Suite { name: "linfty", properties: linfty::identities::properties(), cases: 50, charts: vec![Some(3), Some(4)], degree_cap: 2 },
        Suite {
            name: "observables",
            properties: observables::identities::properties(),
            cases: 100,
            charts: vec![Some(3), Some(4)],
            degree_cap: 3,
        },
        Suite { name: "homology", properties: homology::identities::properties(), cases: 50, charts: vec![None], degree_cap: 3 },
        Suite { name: "quantize", properties: quantize::identities::properties(), cases: 200, charts: vec![None], degree_cap: 3 },
    ]
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub chart: Option<usize>,
    pub outcome: Outcome,
}

/// Runs every suite; `max_degree` lowers (never raises) each suite's degree cap.
pub fn run_all(seed: u64, max_degree: Option<u32>) -> Vec<SuiteOutcome> {
    let mut out = Vec::new();
    for suite in suites() {
        run_suite(&suite, seed, max_degree, |o| out.push(o));
    }
    out
}

pub fn run_suite(suite: &Suite, seed: u64, max_degree: Option<u32>, mut sink: impl FnMut(SuiteOutcome)) {
    let degree = max_degree.map_or(suite.degree_cap, |d| d.min(suite.degree_cap));
    for &chart in &suite.charts {
        let settings = Settings { max_degree: degree, chart };
        for prop in &suite.properties {
            sink(SuiteOutcome { suite: suite.name, chart, outcome: run(prop, seed, suite.cases, &settings) });
        }
    }
}
