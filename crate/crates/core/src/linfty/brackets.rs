use std::collections::BTreeSet;

use super::element::{Part, UElement};
use super::plectic::{HamPair, Plectic};
use crate::error::{Error, Result};
use crate::exterior::{ext_d, schouten, Form, MultiVec, Poly};

/// Sign conventions of the brackets. The default is the one under which the
/// homotopy Jacobi identities hold; flipping the sign of some `l_k` gives a
/// deliberately broken structure for negative controls.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BracketConvention {
    flipped: BTreeSet<usize>,
}

impl BracketConvention {
    pub fn standard() -> Self {
        BracketConvention::default()
    }

    /// Negates `l_k` for every `k` in `ks`.
    pub fn with_flipped(ks: impl IntoIterator<Item = usize>) -> Self {
        BracketConvention { flipped: ks.into_iter().collect() }
    }

    pub fn flipped(&self) -> impl Iterator<Item = usize> + '_ {
        self.flipped.iter().copied()
    }

    pub fn is_standard(&self) -> bool {
        self.flipped.is_empty()
    }

    fn sign(&self, k: usize) -> i32 {
        if self.flipped.contains(&k) {
            -1
        } else {
            1
        }
    }
}

fn parity_sign(e: usize) -> i32 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `l_1`: `d` on parts with `deg_1 ≥ 1`, zero on `L_{0,•}`. Results landing in
/// `L_{0,•}` carry the zero Hamiltonian field.
pub fn l1(x: &UElement) -> UElement {
    l1_with(&BracketConvention::standard(), x)
}

pub fn l1_with(conv: &BracketConvention, x: &UElement) -> UElement {
    let n = x.n();
    let mut out = UElement::zero(n, x.dim());
    for p in x.parts() {
        if x.deg1(p) == 0 {
            continue;
        }
        let form = ext_d(&p.form);
        let ham = (x.deg1(p) == 1).then(|| MultiVec::zero(x.dim(), p.upow + 1));
        let y = UElement::from_part(n, form, p.upow, ham).expect("d lowers the first degree by one");
        out = out.add(&y);
    }
    out.signed(conv.sign(1))
}

/// `(−1)^{|a||b|} [v_b, v_a]`, the field of `l_2(a, b)` for parts of total degrees `da`, `db`.
fn l2_field(da: usize, va: &MultiVec, db: usize, vb: &MultiVec) -> Result<MultiVec> {
    Ok(schouten(vb, va)?.scale(&crate::rational::qi(parity_sign(da * db) as i64)))
}

/// `l_k(x_1, …, x_k)` for `k ≥ 2` under the standard convention.
pub fn lk(plectic: &Plectic, args: &[UElement]) -> Result<UElement> {
    lk_with(plectic, &BracketConvention::standard(), args)
}

/// `l_k`, multilinear over the parts of its arguments. A product of parts
/// vanishes when some part has `deg_1 > 0`; otherwise it is
/// `(−1)^{Σ (i−1)(|α_i|+1)} ι_{v_1 ∧ … ∧ v_k} ω` with u-powers added. Results of
/// `l_2` carry the field `(−1)^{|α_1||α_2|} [v_2, v_1]`.
pub fn lk_with(plectic: &Plectic, conv: &BracketConvention, args: &[UElement]) -> Result<UElement> {
    let k = args.len();
    if k < 2 {
        return Err(Error::InvalidInput(format!("l_k needs k ≥ 2 arguments, got {k}")));
    }
    let n = plectic.n();
    let dim = plectic.dim();
    let lists: Vec<Vec<&Part>> = args.iter().map(|a| a.parts().collect()).collect();
    let mut out = UElement::zero(n, dim);
    let mut choice = vec![0usize; k];
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(out);
    }
    loop {
        let parts: Vec<&Part> = choice.iter().zip(&lists).map(|(&c, l)| l[c]).collect();
        out = out.add(&bracket_parts(plectic, &parts, args)?);
        // odometer over the part choices
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out.signed(conv.sign(k)));
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < lists[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

fn bracket_parts(plectic: &Plectic, parts: &[&Part], owners: &[UElement]) -> Result<UElement> {
    let n = plectic.n();
    let dim = plectic.dim();
    let k = parts.len();
    if parts.iter().zip(owners).any(|(p, x)| x.deg1(p) > 0) {
        return Ok(UElement::zero(n, dim));
    }
    let mut fields = Vec::with_capacity(k);
    for (i, p) in parts.iter().enumerate() {
        match &p.ham {
            Some(v) => fields.push(v.clone()),
            None => {
                return Err(Error::InvalidInput(format!(
                    "argument {} of l_{k} lies in L_(0,{}) but has no Hamiltonian field",
                    i + 1,
                    p.upow
                )))
            }
        }
    }
    let total: usize = parts.iter().map(|p| p.upow + 1).sum();
    if total > n + 1 {
        return Ok(UElement::zero(n, dim));
    }
    let degrees: Vec<usize> = parts.iter().zip(owners).map(|(p, x)| x.total_degree(p)).collect();
    let exponent: usize = degrees.iter().enumerate().map(|(i, d)| i * (d + 1)).sum();
    let wedge = fields
        .iter()
        .fold(MultiVec::function(Poly::one(dim)), |acc, v| acc.wedge(v));
    let form = plectic.contract(&wedge)?;
    let form = if form.is_zero() { Form::zero(dim, n + 1 - total) } else { form };
    let form = if exponent.is_multiple_of(2) { form } else { -&form };
    let upow: usize = parts.iter().map(|p| p.upow).sum();
    let ham = if k == 2 { Some(l2_field(degrees[0], &fields[0], degrees[1], &fields[1])?) } else { None };
    let ham = ham.map(|v| if v.is_zero() { MultiVec::zero(dim, upow + 1) } else { v });
    UElement::from_part(n, form, upow, ham)
}

/// `l_k` for any `k ≥ 1`.
pub fn bracket(plectic: &Plectic, conv: &BracketConvention, args: &[UElement]) -> Result<UElement> {
    match args.len() {
        0 => Err(Error::InvalidInput("bracket with no arguments".into())),
        1 => Ok(l1_with(conv, &args[0])),
        _ => lk_with(plectic, conv, args),
    }
}

/// The Hamiltonian field of `l_2(a, b)`, `(−1)^{|a||b|} [v_b, v_a]`, verified
/// against `d l_2(a, b) = −ι_{field} ω`.
pub fn ham_of_l2(plectic: &Plectic, a: &HamPair, b: &HamPair) -> Result<MultiVec> {
    let n = plectic.n();
    let da = a.field_degree() - 1;
    let db = b.field_degree() - 1;
    let v = l2_field(da, &a.v, db, &b.v)?;
    let l2 = lk(plectic, &[super::u_shift(n, a), super::u_shift(n, b)])?;
    let form = l2.parts().next().map(|p| p.form.clone()).unwrap_or_else(|| Form::zero(plectic.dim(), 0));
    let residual = &ext_d(&form) + &plectic.contract(&v)?;
    if !residual.is_zero() {
        return Err(Error::Verification(format!("d l_2(a, b) + ι_v ω = {residual} for v = {v}")));
    }
    Ok(v)
}
