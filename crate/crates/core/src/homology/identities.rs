//! Randomized checks of the chain complex on small generated complexes.

use rand::Rng;

use super::{boundary, build_complex, coboundary_apply, cohomology, homology, Coefficients, ObsComplex};
use crate::linfty::Plectic;
use crate::observables::{face_map, identities::obs_simplex};
use crate::properties::{ensure_eq, Property, Settings};
use crate::random::{small_q, TestRng};
use crate::rational::Q;

fn err(e: crate::Error) -> String {
    e.to_string()
}

/// A complex generated by one to three random seeds over `Q^3` or `Q^4`.
pub fn random_complex(rng: &mut TestRng, s: &Settings) -> Result<ObsComplex, String> {
    let pl = Plectic::volume(s.chart_dim(rng));
    let seeds = (0..rng.gen_range(1..=3))
        .map(|_| {
            let k = rng.gen_range(0..=pl.n());
            obs_simplex(rng, &pl, k)
        })
        .collect::<Result<Vec<_>, _>>()?;
    build_complex(&pl, &seeds).map_err(err)
}

fn boundary_squared(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let cx = random_complex(rng, s)?;
    for k in 2..=cx.plectic().n() {
        let dd = boundary(&cx, k - 1).map_err(err)?.mul(&boundary(&cx, k).map_err(err)?);
        if !dd.is_zero() {
            return Err(format!("∂_{}∂_{k} = {dd} on strata {:?}", k - 1, cx.sizes()));
        }
    }
    Ok(())
}

/// Oracle for `f(∂σ)`: faces recomputed with `face_map` and looked up by value.
fn f_of_boundary(cx: &ObsComplex, k: usize, s: usize, f: &[Q]) -> Result<Q, String> {
    let x = &cx.stratum(k)[s];
    let mut acc = Q::from_integer(0.into());
    for i in 0..=k {
        let (face, _) = face_map(cx.plectic(), x, i).map_err(err)?;
        let (fk, fs) = cx.index_of(&face).ok_or_else(|| format!("face {i} of {x} missing"))?;
        if fk != k - 1 {
            return Err(format!("face {i} of {x} filed in stratum {fk}"));
        }
        acc = if i % 2 == 0 { acc + &f[fs] } else { acc - &f[fs] };
    }
    Ok(acc)
}

fn duality(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let cx = random_complex(rng, s)?;
    for k in 0..cx.plectic().n() {
        let f: Vec<Q> = (0..cx.stratum(k).len()).map(|_| small_q(rng)).collect();
        let df = coboundary_apply(&cx, k, &f).map_err(err)?;
        for (s, v) in df.iter().enumerate() {
            let want = f_of_boundary(&cx, k + 1, s, &f)?;
            ensure_eq(&format!("δf on simplex {s} of stratum {}", k + 1), v, &want)?;
        }
        if k + 2 <= cx.plectic().n() {
            let ddf = coboundary_apply(&cx, k + 1, &df).map_err(err)?;
            if ddf.iter().any(|x| *x != Q::from_integer(0.into())) {
                return Err(format!("δδf ≠ 0 at level {k}"));
            }
        }
    }
    Ok(())
}

fn euler_characteristic(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let cx = random_complex(rng, s)?;
    let h = homology(&cx).map_err(err)?;
    let alt = |xs: &mut dyn Iterator<Item = usize>| xs.enumerate().fold(0i64, |acc, (k, x)| acc + if k % 2 == 0 { x as i64 } else { -(x as i64) });
    let chi_h = alt(&mut h.betti.iter().copied());
    let chi_c = alt(&mut cx.sizes().into_iter());
    if chi_h == chi_c {
        Ok(())
    } else {
        Err(format!("Σ(−1)^k b_k = {chi_h}, Σ(−1)^k |C_k| = {chi_c}, strata {:?}", cx.sizes()))
    }
}

fn universal_coefficients(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let cx = random_complex(rng, s)?;
    let h = homology(&cx).map_err(err)?;
    let cz = cohomology(&cx, Coefficients::Z).map_err(err)?;
    let cq = cohomology(&cx, Coefficients::Q).map_err(err)?;
    if h.betti != cq.betti || h.betti != cz.betti {
        return Err(format!("homology {:?}, cohomology over Z {:?}, over Q {:?}", h.betti, cz.betti, cq.betti));
    }
    // torsion of H^k is the torsion of H_{k−1}
    for k in 1..cz.torsion.len() {
        if cz.torsion[k] != h.torsion[k - 1] {
            return Err(format!("torsion of H^{k} {:?} vs H_{} {:?}", cz.torsion[k], k - 1, h.torsion[k - 1]));
        }
    }
    Ok(())
}

pub fn properties() -> Vec<Property> {
    vec![
        Property::new("∂∂ = 0", boundary_squared),
        Property::new("δf(σ) = f(∂σ) and δδ = 0", duality),
        Property::new("Euler characteristic", euler_characteristic),
        Property::new("universal coefficients", universal_coefficients),
    ]
}
