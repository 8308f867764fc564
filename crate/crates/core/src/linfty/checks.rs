use super::brackets::{bracket, lk_with, BracketConvention};
use super::element::UElement;
use super::plectic::Plectic;
use crate::error::{Error, Result};
use crate::exterior::{all_permutations, combinations, ext_d, koszul_sign, lie_bracket, schouten, unshuffles};
use crate::exterior::{Form, MultiVec, Permutation, Poly};

fn parity_sign(e: usize) -> i32 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn homogeneous_degrees(args: &[UElement]) -> Result<Vec<i64>> {
    args.iter()
        .enumerate()
        .map(|(i, a)| {
            a.degree()
                .map(|d| d as i64)
                .ok_or_else(|| Error::InvalidInput(format!("argument {} is not homogeneous", i + 1)))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct SkewViolation {
    pub permutation: Permutation,
    /// `l_k(x_σ(1), …, x_σ(k))`.
    pub permuted: UElement,
    /// `(−1)^σ ε(σ) l_k(x_1, …, x_k)`.
    pub expected: UElement,
}

#[derive(Debug, Clone)]
pub struct SkewReport {
    pub k: usize,
    pub checked: usize,
    pub violation: Option<SkewViolation>,
}

impl SkewReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `l_k(x_σ(1), …, x_σ(k)) = (−1)^σ ε(σ) l_k(x_1, …, x_k)` for every `σ ∈ S_k`.
pub fn check_skew(plectic: &Plectic, conv: &BracketConvention, args: &[UElement]) -> Result<SkewReport> {
    let k = args.len();
    let degrees = homogeneous_degrees(args)?;
    let base = bracket(plectic, conv, args)?;
    let perms = all_permutations(k);
    let mut checked = 0;
    for sigma in perms {
        let permuted = bracket(plectic, conv, &sigma.apply(args))?;
        let s = sigma.sign() * koszul_sign(&sigma, &degrees)?;
        let expected = base.signed(s);
        checked += 1;
        if !permuted.add(&expected.neg()).is_zero() {
            return Ok(SkewReport { k, checked, violation: Some(SkewViolation { permutation: sigma, permuted, expected }) });
        }
    }
    Ok(SkewReport { k, checked, violation: None })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobiMode {
    /// Terms `l_j(l_i(…), …)` with `i ≥ 3`, `j ≥ 2` are recorded as zero without
    /// evaluation: the inner result has first degree `i − 2 > 0`.
    Structural,
    /// Every term is evaluated.
    Paranoid,
}

#[derive(Debug, Clone)]
pub struct JacobiTerm {
    pub i: usize,
    pub j: usize,
    pub unshuffle: Permutation,
    /// `(−1)^σ ε(σ) (−1)^{i(j−1)}`.
    pub sign: i32,
    pub contribution: UElement,
    pub evaluated: bool,
}

#[derive(Debug, Clone)]
pub struct JacobiReport {
    pub m: usize,
    pub residual: UElement,
    pub terms: Vec<JacobiTerm>,
}

impl JacobiReport {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Evaluates `Σ_{i+j=m+1, σ ∈ Sh(i, m−i)} (−1)^σ ε(σ) (−1)^{i(j−1)} l_j(l_i(x_σ(1), …), …)`.
pub fn check_jacobi(plectic: &Plectic, conv: &BracketConvention, args: &[UElement], mode: JacobiMode) -> Result<JacobiReport> {
    let m = args.len();
    if m == 0 {
        return Err(Error::InvalidInput("Jacobi identity of order 0".into()));
    }
    let degrees = homogeneous_degrees(args)?;
    let mut residual = UElement::zero(plectic.n(), plectic.dim());
    let mut terms = Vec::new();
    for i in 1..=m {
        let j = m + 1 - i;
        for sigma in unshuffles(i, m - i) {
            let sign = sigma.sign() * koszul_sign(&sigma, &degrees)? * parity_sign(i * (j - 1));
            let xs = sigma.apply(args);
            if mode == JacobiMode::Structural && i >= 3 && j >= 2 {
                terms.push(JacobiTerm {
                    i,
                    j,
                    unshuffle: sigma,
                    sign,
                    contribution: UElement::zero(plectic.n(), plectic.dim()),
                    evaluated: false,
                });
                continue;
            }
            let inner = bracket(plectic, conv, &xs[..i])?;
            let mut outer_args = vec![inner];
            outer_args.extend_from_slice(&xs[i..]);
            let contribution = bracket(plectic, conv, &outer_args)?.signed(sign);
            residual = residual.add(&contribution);
            terms.push(JacobiTerm { i, j, unshuffle: sigma, sign, contribution, evaluated: true });
        }
    }
    Ok(JacobiReport { m, residual, terms })
}

#[derive(Debug, Clone)]
pub struct Lemma31Term {
    pub i: usize,
    pub j: usize,
    pub exponent: usize,
    pub value: Form,
}

#[derive(Debug, Clone)]
pub struct Lemma31Report {
    pub lhs: Form,
    pub rhs: Form,
    pub terms: Vec<Lemma31Term>,
}

impl Lemma31Report {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of
/// `d ι_{v_1∧…∧v_m} ω = Σ_{i<j} (−1)^{e(i,j)} ι([v_j, v_i] ∧ v_1 ∧ … v̂_i … v̂_j … ∧ v_m) ω`
/// with `e(i,j) = Σ_{a>j} |v_a| + (|v_j| − 1) Σ_{a<j} |v_a| + |v_i| Σ_{a<i} |v_a|`.
pub fn verify_lemma31(plectic: &Plectic, fields: &[MultiVec]) -> Result<Lemma31Report> {
    let m = fields.len();
    if m < 2 {
        return Err(Error::InvalidInput(format!("the identity needs m ≥ 2 fields, got {m}")));
    }
    for v in fields {
        plectic.check_hamiltonian_field(v)?;
    }
    let dim = plectic.dim();
    let one = MultiVec::function(Poly::one(dim));
    let wedge = fields.iter().fold(one.clone(), |acc, v| acc.wedge(v));
    let lhs = ext_d(&plectic.contract(&wedge)?);
    let deg: Vec<usize> = fields.iter().map(|v| v.degree()).collect();
    let mut rhs = Form::zero(dim, lhs.degree());
    let mut terms = Vec::new();
    for j in 0..m {
        for i in 0..j {
            let after: usize = deg[j + 1..].iter().sum();
            let before_j: usize = deg[..j].iter().sum();
            let before_i: usize = deg[..i].iter().sum();
            let exponent = after + (deg[j] + 1) * before_j + deg[i] * before_i;
            let br = schouten(&fields[j], &fields[i])?;
            let rest = fields.iter().enumerate().filter(|&(a, _)| a != i && a != j).fold(br, |acc, (_, v)| acc.wedge(v));
            let c = plectic.contract(&rest)?;
            let value = if exponent.is_multiple_of(2) { c } else { -&c };
            rhs = &rhs + &value;
            terms.push(Lemma31Term { i: i + 1, j: j + 1, exponent, value });
        }
    }
    Ok(Lemma31Report { lhs, rhs, terms })
}

#[derive(Debug, Clone)]
pub struct HeisenbergReport {
    pub subsets_checked: usize,
    /// First non-commuting pair `(i, j)`, `i < j` (1-based), with `[v_j, v_i]`.
    pub noncommuting: Option<(usize, usize, MultiVec)>,
    /// First subset (1-based) whose contraction is not closed, with `d ι ω`.
    pub not_closed: Option<(Vec<usize>, Form)>,
}

impl HeisenbergReport {
    pub fn passed(&self) -> bool {
        self.noncommuting.is_none() && self.not_closed.is_none()
    }
}

/// Checks pairwise commutation of Hamiltonian vector fields and
/// `d ι_{v_{i_1} ∧ … ∧ v_{i_k}} ω = 0` for all subsets with `2 ≤ k ≤ n`.
pub fn heisenberg_check(plectic: &Plectic, fields: &[MultiVec]) -> Result<HeisenbergReport> {
    for v in fields {
        if v.degree() != 1 {
            return Err(Error::InvalidInput(format!("vector fields expected, got degree {}", v.degree())));
        }
        plectic.check_hamiltonian_field(v)?;
    }
    let mut noncommuting = None;
    'pairs: for j in 0..fields.len() {
        for i in 0..j {
            let br = lie_bracket(&fields[j], &fields[i])?;
            if !br.is_zero() {
                noncommuting = Some((i + 1, j + 1, br));
                break 'pairs;
            }
        }
    }
    let dim = plectic.dim();
    let mut subsets_checked = 0;
    let mut not_closed = None;
    'subsets: for k in 2..=plectic.n().min(fields.len()) {
        for subset in combinations(fields.len(), k) {
            let w = subset.iter().fold(MultiVec::function(Poly::one(dim)), |acc, &a| acc.wedge(&fields[a]));
            let d = ext_d(&plectic.contract(&w)?);
            subsets_checked += 1;
            if !d.is_zero() {
                not_closed = Some((subset.iter().map(|a| a + 1).collect(), d));
                break 'subsets;
            }
        }
    }
    Ok(HeisenbergReport { subsets_checked, noncommuting, not_closed })
}

/// `l_k` of shifted elements, then the `u^{Σ j_i}` coefficient.
pub fn extract_bracket(plectic: &Plectic, args: &[UElement]) -> Result<Form> {
    let upow: usize = args.iter().flat_map(|a| a.parts().map(|p| p.upow)).sum();
    lk_with(plectic, &BracketConvention::standard(), args)?.extract_codim(upow)
}
