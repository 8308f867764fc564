//! U(1) phases with exact angles.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_q, frac, parse_q, to_f64, Q};

/// A real scale `2π·turns + radians`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scale {
    pub turns: Q,
    pub radians: Q,
}

impl Scale {
    /// `r·2π`.
    pub fn two_pi(r: Q) -> Self {
        Scale { turns: r, radians: Q::zero() }
    }

    pub fn radians(r: Q) -> Self {
        Scale { turns: Q::zero(), radians: r }
    }

    pub fn zero() -> Self {
        Scale::two_pi(Q::zero())
    }

    /// Parses `r`, `rx2pi` or `rx2pi+s` with rational `r`, `s`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("cannot read scale {s:?}; expected r, rx2pi or rx2pi+s"));
        let s = s.trim();
        match s.split_once("x2pi") {
            None => parse_q(s).map(Scale::radians).ok_or_else(bad),
            Some((r, rest)) => {
                let turns = parse_q(r).ok_or_else(bad)?;
                let radians = match rest.strip_prefix('+') {
                    None if rest.is_empty() => Q::zero(),
                    Some(x) => parse_q(x).ok_or_else(bad)?,
                    None => return Err(bad()),
                };
                Ok(Scale { turns, radians })
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.turns.is_zero() && self.radians.is_zero()
    }

    /// The phase `e^{i·scale·x}`.
    pub fn phase(&self, x: &Q) -> Phase {
        Phase::new(&self.turns * x, &self.radians * x)
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.turns.is_zero(), self.radians.is_zero()) {
            (_, true) => write!(f, "{}x2pi", format_q(&self.turns)),
            (true, false) => write!(f, "{}", format_q(&self.radians)),
            _ => write!(f, "{}x2pi+{}", format_q(&self.turns), format_q(&self.radians)),
        }
    }
}

/// `e^{2πi·turns + i·residual}` with `turns ∈ [0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Phase {
    turns: Q,
    residual: Q,
}

impl Phase {
    pub fn new(turns: Q, residual: Q) -> Self {
        Phase { turns: frac(&turns), residual }
    }

    pub fn identity() -> Self {
        Phase::new(Q::zero(), Q::zero())
    }

    pub fn of_turns(r: Q) -> Self {
        Phase::new(r, Q::zero())
    }

    pub fn turns(&self) -> &Q {
        &self.turns
    }

    pub fn residual(&self) -> &Q {
        &self.residual
    }

    pub fn is_identity(&self) -> bool {
        self.turns.is_zero() && self.residual.is_zero()
    }

    pub fn inverse(&self) -> Self {
        Phase::new(-&self.turns, -&self.residual)
    }

    /// Exact real and imaginary parts, when they are rational.
    pub fn exact_parts(&self) -> Option<(Q, Q)> {
        if !self.residual.is_zero() {
            return None;
        }
        let four = &self.turns * Q::from_integer(4.into());
        if !four.is_integer() {
            return None;
        }
        let (one, zero) = (Q::one(), Q::zero());
        Some(match four.to_integer().try_into().unwrap_or(-1i64) {
            0 => (one, zero),
            1 => (zero, one),
            2 => (-one, zero),
            3 => (zero, -one),
            _ => unreachable!("turns lie in [0, 1)"),
        })
    }

    pub fn approx(&self) -> (f64, f64) {
        let a = 2.0 * std::f64::consts::PI * to_f64(&self.turns) + to_f64(&self.residual);
        (a.cos(), a.sin())
    }
}

impl Mul for &Phase {
    type Output = Phase;
    fn mul(self, other: &Phase) -> Phase {
        Phase::new(&self.turns + &other.turns, &self.residual + &other.residual)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residual.is_zero() {
            write!(f, "e^(2πi·{})", format_q(&self.turns))
        } else {
            write!(f, "e^(i(2π·{} + {}))", format_q(&self.turns), format_q(&self.residual))
        }
    }
}

/// A finite rational combination `Σ c_φ φ` of phases, an exact complex number.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PhaseSum {
    terms: BTreeMap<Phase, Q>,
}

impl PhaseSum {
    pub fn zero() -> Self {
        PhaseSum::default()
    }

    pub fn of(phase: Phase, c: Q) -> Self {
        let mut s = PhaseSum::zero();
        s.add_term(phase, c);
        s
    }

    pub fn add_term(&mut self, phase: Phase, c: Q) {
        let e = self.terms.entry(phase).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Phase, &Q)> {
        self.terms.iter()
    }

    /// Multiplies every term by `phase`.
    pub fn rotate(&self, phase: &Phase) -> Self {
        let mut out = PhaseSum::zero();
        for (p, c) in &self.terms {
            out.add_term(p * phase, c.clone());
        }
        out
    }

    /// Exact rectangular form, when every phase has rational parts.
    pub fn exact_parts(&self) -> Option<(Q, Q)> {
        let mut re = Q::zero();
        let mut im = Q::zero();
        for (p, c) in &self.terms {
            let (a, b) = p.exact_parts()?;
            re += c * a;
            im += c * b;
        }
        Some((re, im))
    }

    pub fn approx(&self) -> (f64, f64) {
        self.terms.iter().fold((0.0, 0.0), |(re, im), (p, c)| {
            let (a, b) = p.approx();
            (re + to_f64(c) * a, im + to_f64(c) * b)
        })
    }
}

impl Add for &PhaseSum {
    type Output = PhaseSum;
    fn add(self, other: &PhaseSum) -> PhaseSum {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl Neg for &PhaseSum {
    type Output = PhaseSum;
    fn neg(self) -> PhaseSum {
        PhaseSum { terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect() }
    }
}

impl fmt::Display for PhaseSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((re, im)) = self.exact_parts() {
            return write!(f, "{} + {}i", format_q(&re), format_q(&im));
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("{}·{p}", format_q(c))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
