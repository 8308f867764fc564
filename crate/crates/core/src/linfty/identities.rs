//! Randomized identities of the brackets on Hamiltonian families over `Q^3` and `Q^4`.

use rand::Rng;

use super::checks::{check_jacobi, check_skew, verify_lemma31, JacobiMode};
use super::{bracket, ham_of_l2, lk, u_shift, BracketConvention, HamPair, Plectic, UElement};
use crate::exterior::{ext_d, Form, MultiVec, Poly};
use crate::properties::{ensure_eq, Property, Settings};
use crate::random::{self, TestRng};

fn err(e: crate::Error) -> String {
    e.to_string()
}

/// The volume form on `Q^3` (n = 2) or `Q^4` (n = 3), chosen at random.
fn chart(rng: &mut TestRng, s: &Settings) -> Plectic {
    Plectic::volume(s.chart_dim(rng))
}

/// A random Hamiltonian pair with a `k`-vector field whose coefficients have degree ≤ `max_degree`.
pub fn ham_pair(rng: &mut TestRng, pl: &Plectic, k: usize, max_degree: u32) -> Result<HamPair, String> {
    let alpha = random::form(rng, pl.dim(), pl.n() - k, max_degree + 1);
    let v = pl.hamiltonian_field(&alpha, k).map_err(err)?;
    HamPair::new(pl, alpha, v).map_err(err)
}

/// A random homogeneous element: mostly shifted Hamiltonian pairs, sometimes a
/// plain form of positive first degree.
fn element(rng: &mut TestRng, pl: &Plectic, max_degree: u32) -> Result<UElement, String> {
    loop {
        let x = any_element(rng, pl, max_degree)?;
        if !x.is_zero() {
            return Ok(x);
        }
    }
}

fn any_element(rng: &mut TestRng, pl: &Plectic, max_degree: u32) -> Result<UElement, String> {
    let n = pl.n();
    let j = rng.gen_range(0..n);
    let top = n - 1 - j;
    if top == 0 || rng.gen_bool(0.75) {
        let pair = ham_pair(rng, pl, j + 1, max_degree)?;
        return Ok(u_shift(n, &pair));
    }
    let p = rng.gen_range(0..top);
    let a = random::form(rng, pl.dim(), p, max_degree);
    UElement::from_part(n, a, j, None).map_err(err)
}

fn hamiltonian_element(rng: &mut TestRng, pl: &Plectic, max_degree: u32) -> Result<(HamPair, UElement), String> {
    let k = rng.gen_range(1..=pl.n());
    let pair = ham_pair(rng, pl, k, max_degree)?;
    let x = u_shift(pl.n(), &pair);
    Ok((pair, x))
}

fn bidegree(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let pl = chart(rng, s);
    let k = rng.gen_range(1..=4);
    let args: Vec<UElement> = (0..k).map(|_| element(rng, &pl, s.max_degree)).collect::<Result<_, _>>()?;
    let out = bracket(&pl, &BracketConvention::standard(), &args).map_err(err)?;
    let d1: usize = args.iter().map(|a| a.bidegree().unwrap().0).sum();
    let up: usize = args.iter().map(|a| a.bidegree().unwrap().1).sum();
    for p in out.parts().filter(|p| !p.form.is_zero()) {
        let got = (out.deg1(p) as i64, p.upow);
        let want = (d1 as i64 + k as i64 - 2, up);
        if got != want {
            return Err(format!("l_{k} of {args:?} has bidegree {got:?}, expected {want:?}"));
        }
    }
    Ok(())
}

fn skew(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let pl = chart(rng, s);
    let k = rng.gen_range(2..=4);
    let args: Vec<UElement> = (0..k).map(|_| element(rng, &pl, s.max_degree)).collect::<Result<_, _>>()?;
    let rep = check_skew(&pl, &BracketConvention::standard(), &args).map_err(err)?;
    match rep.violation {
        None => Ok(()),
        Some(v) => Err(format!("σ = {}: {} != {}", v.permutation, v.permuted, v.expected)),
    }
}

fn jacobi(rng: &mut TestRng, s: &Settings, m: usize) -> Result<(), String> {
    let pl = chart(rng, s);
    let args: Vec<UElement> = (0..m).map(|_| element(rng, &pl, s.max_degree.min(2))).collect::<Result<_, _>>()?;
    for mode in [JacobiMode::Structural, JacobiMode::Paranoid] {
        let rep = check_jacobi(&pl, &BracketConvention::standard(), &args, mode).map_err(err)?;
        if !rep.holds() {
            return Err(format!("{mode:?} residual {} for {args:?}", rep.residual));
        }
    }
    Ok(())
}

fn jacobi1(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    jacobi(rng, s, 1)
}

fn jacobi2(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    jacobi(rng, s, 2)
}

fn jacobi3(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    jacobi(rng, s, 3)
}

fn jacobi4(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    jacobi(rng, s, 4)
}

fn l2_field(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let pl = chart(rng, s);
    let (a, _) = hamiltonian_element(rng, &pl, s.max_degree)?;
    let (b, _) = hamiltonian_element(rng, &pl, s.max_degree)?;
    let v = ham_of_l2(&pl, &a, &b).map_err(err)?;
    let l2 = lk(&pl, &[u_shift(pl.n(), &a), u_shift(pl.n(), &b)]).map_err(err)?;
    let upow = a.field_degree() + b.field_degree() - 2;
    let form = l2.extract_codim(upow).map_err(err)?;
    let lhs = ext_d(&form);
    let rhs = -&pl.contract(&v).map_err(err)?;
    ensure_eq("d l_2(a, b)", &lhs, &rhs)
}

fn lemma31(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let pl = chart(rng, s);
    let m = rng.gen_range(2..=4);
    let fields: Vec<MultiVec> = (0..m)
        .map(|_| hamiltonian_element(rng, &pl, s.max_degree.min(2)).map(|(p, _)| p.v))
        .collect::<Result<_, _>>()?;
    let rep = verify_lemma31(&pl, &fields).map_err(err)?;
    ensure_eq(&format!("d ι ω for {fields:?}"), &rep.lhs, &rep.rhs)
}

/// Oracle: `(−1)^{Σ (i−1)(|α_i|+1)} ι_{v_1∧…∧v_k} ω` from the raw pairs.
fn unshifted_bracket(pl: &Plectic, pairs: &[HamPair]) -> Result<Form, String> {
    let dim = pl.dim();
    let mut exponent = 0;
    let mut w = MultiVec::function(Poly::one(dim));
    for (i, p) in pairs.iter().enumerate() {
        exponent += i * (pl.n() - 1 - p.alpha.degree() + 1);
        w = w.wedge(&p.v);
    }
    let c = pl.contract(&w).map_err(err)?;
    Ok(if exponent % 2 == 0 { c } else { -&c })
}

fn u_linearity(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let pl = chart(rng, s);
    let k = rng.gen_range(2..=4);
    let pairs: Vec<HamPair> = (0..k).map(|_| hamiltonian_element(rng, &pl, s.max_degree).map(|p| p.0)).collect::<Result<_, _>>()?;
    let args: Vec<UElement> = pairs.iter().map(|p| u_shift(pl.n(), p)).collect();
    let upow: usize = pairs.iter().map(|p| p.field_degree() - 1).sum();
    let got = lk(&pl, &args).map_err(err)?.extract_codim(upow).map_err(err)?;
    let want = unshifted_bracket(&pl, &pairs)?;
    ensure_eq(&format!("coefficient of u^{upow}"), &got, &want)
}

pub fn properties() -> Vec<Property> {
    vec![
        Property::new("bidegree of l_k", bidegree),
        Property::new("graded skew-symmetry of l_k", skew),
        Property::new("homotopy Jacobi, m = 1", jacobi1),
        Property::new("homotopy Jacobi, m = 2", jacobi2),
        Property::new("homotopy Jacobi, m = 3", jacobi3),
        Property::new("homotopy Jacobi, m = 4", jacobi4),
        Property::new("Hamiltonian field of l_2", l2_field),
        Property::new("d of a contracted wedge of Hamiltonian fields", lemma31),
        Property::new("u-linearity of l_k", u_linearity),
    ]
}
