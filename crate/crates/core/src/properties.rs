//! Randomized property runner shared by the self-test and the test suites.

use crate::random::{rng, TestRng};

/// One randomized case; `Err` carries a human-readable witness.
pub type Case = fn(&mut TestRng, &Settings) -> Result<(), String>;

#[derive(Debug, Clone)]
pub struct Settings {
    /// Cap on the total degree of random polynomial coefficients.
    pub max_degree: u32,
    /// Fixes the chart dimension of suites that otherwise alternate between `Q^3` and `Q^4`.
    pub chart: Option<usize>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { max_degree: 3, chart: None }
    }
}

impl Settings {
    /// The fixed chart dimension, or `Q^3`/`Q^4` at random.
    pub fn chart_dim(&self, rng: &mut TestRng) -> usize {
        use rand::Rng;
        self.chart.unwrap_or_else(|| if rng.gen_bool(0.5) { 3 } else { 4 })
    }
}

#[derive(Clone)]
pub struct Property {
    pub name: &'static str,
    pub case: Case,
}

impl Property {
    pub const fn new(name: &'static str, case: Case) -> Self {
        Property { name, case }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub name: String,
    pub cases: usize,
    /// Case number and witness of the first failure.
    pub failure: Option<(usize, String)>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Runs `cases` instances; case `i` draws from a generator seeded by `(seed, i)`.
pub fn run(prop: &Property, seed: u64, cases: usize, settings: &Settings) -> Outcome {
    for i in 0..cases {
        let mut r = rng(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64));
        if let Err(w) = (prop.case)(&mut r, settings) {
            return Outcome { name: prop.name.to_string(), cases: i + 1, failure: Some((i, w)) };
        }
    }
    Outcome { name: prop.name.to_string(), cases, failure: None }
}

pub(crate) fn ensure_eq<T: PartialEq + std::fmt::Display>(what: &str, lhs: &T, rhs: &T) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{what}: {lhs} != {rhs}"))
    }
}
