//! Randomized checks of integration, gerbe data and the inner product.

use rand::Rng;

use super::{cocycle_associativity, inner_product, integrate, kernel_from_theta, stokes_check, Phase, Scale, StateCochain};
use crate::exterior::homotopy_primitive;
use crate::homology::identities::random_complex;
use crate::linfty::Plectic;
use crate::observables::AffSimplex;
use crate::properties::{ensure_eq, Property, Settings};
use crate::random::{self, small_q, TestRng};
use crate::rational::{qi, Q};

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn point(rng: &mut TestRng, dim: usize) -> Vec<Q> {
    (0..dim).map(|_| qi(rng.gen_range(-2..=2))).collect()
}

/// A random nondegenerate affine simplex.
fn simplex(rng: &mut TestRng, dim: usize, k: usize) -> AffSimplex {
    loop {
        if let Ok(s) = AffSimplex::new((0..=k).map(|_| point(rng, dim)).collect()) {
            return s;
        }
    }
}

fn phase(rng: &mut TestRng) -> Phase {
    Phase::of_turns(Q::new(rng.gen_range(0..12).into(), 12.into()))
}

fn alternating(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let dim = rng.gen_range(2..=4);
    let k = rng.gen_range(1..=dim);
    let a = random::form(rng, dim, k, s.max_degree);
    let x = simplex(rng, dim, k);
    let i = rng.gen_range(0..k);
    let mut vs = x.vertices().to_vec();
    vs.swap(i, i + 1);
    let y = AffSimplex::new(vs).map_err(err)?;
    let lhs = integrate(&a, &y).map_err(err)?;
    let rhs = -integrate(&a, &x).map_err(err)?;
    ensure_eq(&format!("∫ of {a} after swapping vertices {i}, {}", i + 1), &lhs, &rhs)
}

/// Replacing each vertex in turn by the barycenter subdivides the simplex.
fn subdivision(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let dim = rng.gen_range(2..=3);
    let k = rng.gen_range(1..=dim);
    let a = random::form(rng, dim, k, s.max_degree);
    let x = simplex(rng, dim, k);
    let w = Q::new(1.into(), (k as i64 + 1).into());
    let b: Vec<Q> = (0..dim).map(|c| x.vertices().iter().fold(qi(0), |acc, v| acc + &v[c]) * &w).collect();
    let mut total = qi(0);
    for i in 0..=k {
        let mut vs = x.vertices().to_vec();
        vs[i] = b.clone();
        total += integrate(&a, &AffSimplex::new(vs).map_err(err)?).map_err(err)?;
    }
    ensure_eq("sum over the barycentric pieces", &total, &integrate(&a, &x).map_err(err)?)
}

fn stokes(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let dim = rng.gen_range(2..=4);
    let p = rng.gen_range(0..dim);
    let a = random::form(rng, dim, p, s.max_degree);
    let x = simplex(rng, dim, p + 1);
    let rep = stokes_check(&a, &x).map_err(err)?;
    ensure_eq(&format!("Stokes for {a} on {x}"), &rep.boundary, &rep.interior)
}

fn associativity(rng: &mut TestRng, _: &Settings) -> Result<(), String> {
    let pl = Plectic::volume(3);
    let theta = homotopy_primitive(pl.omega()).map_err(err)?;
    let x = simplex(rng, 3, 3);
    let scale = Scale { turns: small_q(rng), radians: if rng.gen_bool(0.3) { small_q(rng) } else { qi(0) } };
    let rep = cocycle_associativity(&pl, &theta, &x, &scale).map_err(err)?;
    if rep.stokes_holds() {
        Ok(())
    } else {
        Err(format!("product {} vs e^(i s ∫ω) = {} on {x}", rep.product, rep.expected))
    }
}

fn sesquilinearity(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let cx = random_complex(rng, s)?;
    let n = cx.plectic().n();
    let Some(k) = (0..n).find(|&k| !cx.stratum(k + 1).is_empty()) else {
        return Ok(());
    };
    let state = |rng: &mut TestRng| StateCochain { level: k, values: (0..cx.stratum(k).len()).map(|_| phase(rng)).collect() };
    let (f, i) = (state(rng), state(rng));
    let kernel = kernel_from_theta(&cx, k, &Scale::two_pi(small_q(rng))).map_err(err)?;
    let base = inner_product(&cx, &f, &i, &kernel).map_err(err)?;
    let g = phase(rng);
    let rf = inner_product(&cx, &f.rotate(&g), &i, &kernel).map_err(err)?;
    let ri = inner_product(&cx, &f, &i.rotate(&g), &kernel).map_err(err)?;
    ensure_eq("⟨gψ_f|ψ_i⟩", &rf, &base.rotate(&g.inverse()))?;
    ensure_eq("⟨ψ_f|gψ_i⟩", &ri, &base.rotate(&g))
}

pub fn properties() -> Vec<Property> {
    vec![
        Property::new("integration alternates in vertex order", alternating),
        Property::new("integration is additive under subdivision", subdivision),
        Property::new("Stokes on simplices", stokes),
        Property::new("associativity product equals e^(i s ∫ω)", associativity),
        Property::new("inner product is sesquilinear", sesquilinearity),
    ]
}
