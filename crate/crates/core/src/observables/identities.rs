//! Randomized checks of face maps and horn filling over `Q^3` and `Q^4`.

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{check_face_identity, face_map, horn_fill, AffSimplex, Horn, ObsSimplex};
use crate::exterior::{ext_d, lie_bracket, MultiVec};
use crate::linfty::Plectic;
use crate::properties::{ensure_eq, Property, Settings};
use crate::random::TestRng;
use crate::rational::{qi, Q};

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn point(rng: &mut TestRng, dim: usize) -> Vec<Q> {
    (0..dim).map(|_| qi(rng.gen_range(-2..=2))).collect()
}

fn simplex(rng: &mut TestRng, dim: usize, k: usize) -> AffSimplex {
    loop {
        if let Ok(s) = AffSimplex::new((0..=k).map(|_| point(rng, dim)).collect()) {
            return s;
        }
    }
}

/// A random observable simplex of dimension `k` with regular generators.
pub fn obs_simplex(rng: &mut TestRng, pl: &Plectic, k: usize) -> Result<ObsSimplex, String> {
    loop {
        let s = simplex(rng, pl.dim(), k);
        let gens: Vec<Vec<Q>> = (0..pl.n() - k).map(|_| point(rng, pl.dim())).collect();
        let x = ObsSimplex::new(pl, s, &gens).map_err(err)?;
        if x.is_regular() {
            return Ok(x);
        }
    }
}

fn chart(rng: &mut TestRng, s: &Settings) -> Plectic {
    Plectic::volume(s.chart_dim(rng))
}

fn hamiltonian_relation(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let pl = chart(rng, s);
    let k = rng.gen_range(0..=pl.n());
    let x = obs_simplex(rng, &pl, k)?;
    let c = pl.contract(&MultiVec::wedge_of_vectors(pl.dim(), x.generators())).map_err(err)?;
    let rhs = if x.sign() > 0 { -&c } else { c };
    ensure_eq(&format!("dα for {x}"), &ext_d(x.alpha()), &rhs)
}

fn face_relation(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let pl = chart(rng, s);
    let k = rng.gen_range(1..=pl.n());
    let x = obs_simplex(rng, &pl, k)?;
    let i = rng.gen_range(0..=k);
    let (f, eta) = face_map(&pl, &x, i).map_err(err)?;
    let de = ext_d(&eta);
    let df = ext_d(f.alpha());
    let pos = match (de.terms().next(), df.terms().next()) {
        (None, None) => true,
        (Some((idx, p)), Some(_)) => {
            let (e, c) = p.terms().next().unwrap();
            let r = df.coefficient(idx).coefficient(e) / c;
            r.is_positive() && df == de.scale(&r)
        }
        _ => false,
    };
    if pos {
        Ok(())
    } else {
        Err(format!("face {i} of {x}: dη = {de}, canonical dα = {df}"))
    }
}

fn face_identities(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let pl = chart(rng, s);
    let k = rng.gen_range(2..=pl.n());
    let x = obs_simplex(rng, &pl, k)?;
    for j in 1..=k {
        for i in 0..j {
            let rep = check_face_identity(&pl, &x, i, j).map_err(err)?;
            if !rep.passed() {
                return Err(format!("(i, j) = ({i}, {j}) on {x}: {} vs {}, λ = {:?}", rep.left, rep.right, rep.lambda));
            }
        }
    }
    Ok(())
}

fn kan_round_trip(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let pl = chart(rng, s);
    let m = rng.gen_range(1..=pl.n());
    let x = obs_simplex(rng, &pl, m)?;
    let r = rng.gen_range(0..=m);
    let h = Horn::of_simplex(&pl, &x, r).map_err(err)?;
    let filler = horn_fill(&pl, &h).map_err(|e| format!("Λ^{m}_{r} of {x}: {e}"))?;
    for (&k, f) in h.faces() {
        let (got, _) = face_map(&pl, &filler, k).map_err(err)?;
        if got != *f {
            return Err(format!("face {k} of filler {filler}: {got} != {f}"));
        }
    }
    Ok(())
}

fn canonical_idempotent(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let pl = chart(rng, s);
    let k = rng.gen_range(0..pl.n());
    let x = obs_simplex(rng, &pl, k)?;
    let mut own = x.generators().to_vec();
    if x.sign() < 0 {
        own[0] = own[0].iter().map(|c| -c).collect();
    }
    let y = ObsSimplex::new(&pl, x.simplex().clone(), &own).map_err(err)?;
    if y != x {
        return Err(format!("{x} re-canonicalized to {y}"));
    }
    // positive rescaling and reordering only move the sign by the permutation parity
    let mut raw: Vec<(usize, Vec<Q>)> = own.iter().cloned().enumerate().collect();
    raw.shuffle(rng);
    let parity = crate::exterior::Permutation::new(raw.iter().map(|(i, _)| *i).collect()).unwrap().sign();
    let scaled: Vec<Vec<Q>> = raw
        .iter()
        .map(|(_, v)| {
            let c = qi(rng.gen_range(1..=3));
            v.iter().map(|x| x * &c).collect()
        })
        .collect();
    let z = ObsSimplex::new(&pl, x.simplex().clone(), &scaled).map_err(err)?;
    if z.generators() != x.generators() || z.sign() != x.sign() * parity {
        return Err(format!("{x} rescaled and permuted gives {z}"));
    }
    Ok(())
}

fn generators_commute(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let pl = chart(rng, s);
    let x = obs_simplex(rng, &pl, 0)?;
    let gs: Vec<MultiVec> = x.generators().iter().map(|g| MultiVec::constant_vector(g)).collect();
    for a in &gs {
        for b in &gs {
            if !lie_bracket(a, b).map_err(err)?.is_zero() {
                return Err(format!("[{a}, {b}] ≠ 0"));
            }
        }
    }
    Ok(())
}

pub fn properties() -> Vec<Property> {
    vec![
        Property::new("Hamiltonian relation of observable simplices", hamiltonian_relation),
        Property::new("face maps solve dη = −(−1)^i ι dα", face_relation),
        Property::new("face-face identities", face_identities),
        Property::new("Kan round trip", kan_round_trip),
        Property::new("canonicalization is idempotent", canonical_idempotent),
        Property::new("generators commute", generators_commute),
    ]
}
