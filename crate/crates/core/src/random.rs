//! Seeded generators of random polynomial data.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exterior::{combinations, Form, Graded, Kind, MultiVec, Poly};
use crate::rational::{q, Q};

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small nonzero rational, mostly integers.
pub fn small_q(rng: &mut TestRng) -> Q {
    let num = loop {
        let n = rng.gen_range(-3i64..=3);
        if n != 0 {
            break n;
        }
    };
    let den = if rng.gen_bool(0.25) { rng.gen_range(2i64..=3) } else { 1 };
    q(num, den)
}

/// Random polynomial with at most `max_terms` terms of total degree ≤ `max_degree`.
pub fn poly(rng: &mut TestRng, dim: usize, max_degree: u32, max_terms: usize) -> Poly {
    let mut p = Poly::zero(dim);
    let terms = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..terms {
        let total = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; dim];
        for _ in 0..total {
            e[rng.gen_range(0..dim)] += 1;
        }
        p.add_term(e, small_q(rng));
    }
    p
}

fn graded<K: Kind>(rng: &mut TestRng, dim: usize, degree: usize, max_degree: u32) -> Graded<K> {
    let mut g = Graded::zero(dim, degree);
    let subsets = combinations(dim, degree);
    for idx in subsets {
        if rng.gen_bool(0.6) {
            g.add_term(idx, poly(rng, dim, max_degree, 2));
        }
    }
    g
}

pub fn form(rng: &mut TestRng, dim: usize, degree: usize, max_degree: u32) -> Form {
    graded(rng, dim, degree, max_degree)
}

pub fn multivec(rng: &mut TestRng, dim: usize, degree: usize, max_degree: u32) -> MultiVec {
    graded(rng, dim, degree, max_degree)
}

/// Random vector field with polynomial components.
pub fn vector_field(rng: &mut TestRng, dim: usize, max_degree: u32) -> MultiVec {
    multivec(rng, dim, 1, max_degree)
}

/// `v_1 ∧ … ∧ v_k` of random vector fields (a function when `k = 0`).
pub fn decomposable(rng: &mut TestRng, dim: usize, k: usize, max_degree: u32) -> (Vec<MultiVec>, MultiVec) {
    let fields: Vec<MultiVec> = (0..k).map(|_| vector_field(rng, dim, max_degree)).collect();
    let start = if k == 0 { MultiVec::function(poly(rng, dim, max_degree, 2)) } else { MultiVec::function(Poly::one(dim)) };
    let w = fields.iter().fold(start, |acc, v| acc.wedge(v));
    (fields, w)
}

/// Random nonzero constant integer vector with entries in `-bound..=bound`.
pub fn int_vector(rng: &mut TestRng, dim: usize, bound: i64) -> Vec<Q> {
    loop {
        let v: Vec<Q> = (0..dim).map(|_| Q::from_integer(rng.gen_range(-bound..=bound).into())).collect();
        if v.iter().any(|x| *x != Q::from_integer(0.into())) {
            return v;
        }
    }
}
