use std::collections::BTreeMap;

use super::simplex::{face_map, AffSimplex, ObsSimplex};
use super::subspace::{canonical_basis, contains, dimension, intersect, orthogonal_part, primitive};
use crate::error::{Error, Result};
use crate::linfty::Plectic;
use crate::exterior::combinations;
use crate::rational::Q;
use num_traits::Zero;

/// A horn `Λ^m_r`: the vertices of the would-be filler and every face except the `r`-th.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Horn {
    m: usize,
    r: usize,
    vertices: Vec<Vec<Q>>,
    faces: BTreeMap<usize, ObsSimplex>,
}

impl Horn {
    pub fn new(m: usize, r: usize, vertices: Vec<Vec<Q>>, faces: BTreeMap<usize, ObsSimplex>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("horns start in dimension 1".into()));
        }
        if r > m {
            return Err(Error::InvalidInput(format!("missing face {r} out of range for m = {m}")));
        }
        if vertices.len() != m + 1 {
            return Err(Error::InvalidInput(format!("a {m}-horn needs {} vertices, got {}", m + 1, vertices.len())));
        }
        let simplex = AffSimplex::new(vertices.clone())?;
        for i in (0..=m).filter(|&i| i != r) {
            let Some(f) = faces.get(&i) else {
                return Err(Error::InvalidInput(format!("face {i} is missing from the horn")));
            };
            if *f.simplex() != simplex.face(i) {
                return Err(Error::IncompatibleHorn(format!("face {i} lies on {} instead of {}", f.simplex(), simplex.face(i))));
            }
        }
        if let Some(extra) = faces.keys().find(|&&i| i == r || i > m) {
            return Err(Error::InvalidInput(format!("unexpected face {extra} in Λ^{m}_{r}")));
        }
        Ok(Horn { m, r, vertices, faces })
    }

    /// The horn of a simplex with face `r` removed.
    pub fn of_simplex(plectic: &Plectic, x: &ObsSimplex, r: usize) -> Result<Self> {
        let m = x.dim();
        let faces = (0..=m)
            .filter(|&i| i != r)
            .map(|i| face_map(plectic, x, i).map(|(f, _)| (i, f)))
            .collect::<Result<_>>()?;
        Horn::new(m, r, x.simplex().vertices().to_vec(), faces)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn missing(&self) -> usize {
        self.r
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn faces(&self) -> &BTreeMap<usize, ObsSimplex> {
        &self.faces
    }
}

/// Fills the horn: checks edge compatibility of the faces, recovers the shared
/// generators `u_1, …, u_{n−m}` and verifies every face of the filler.
pub fn horn_fill(plectic: &Plectic, h: &Horn) -> Result<ObsSimplex> {
    let n = plectic.n();
    let dim = plectic.dim();
    let m = h.m;
    if m > n {
        return Err(Error::InvalidInput(format!("horn dimension {m} exceeds n = {n}")));
    }
    // Step 1: shared edges agree
    for (&i, fi) in &h.faces {
        for (&j, fj) in h.faces.range(i + 1..) {
            if m < 2 {
                continue;
            }
            let (a, _) = face_map(plectic, fj, i)?;
            let (b, _) = face_map(plectic, fi, j - 1)?;
            if a != b {
                return Err(Error::IncompatibleHorn(format!(
                    "faces {i} and {j} disagree on their common edge {}: {a} vs {b}",
                    a.simplex()
                )));
            }
        }
    }
    let simplex = AffSimplex::new(h.vertices.clone())?;
    let normals: Vec<Vec<Q>> = h
        .faces
        .keys()
        .map(|&k| simplex.normal(k))
        .collect::<Result<_>>()?;
    let mut shared: Option<Vec<Vec<Q>>> = None;
    for f in h.faces.values() {
        shared = Some(match shared {
            None => f.generators().to_vec(),
            Some(s) => intersect(&s, f.generators(), dim),
        });
    }
    let shared = canonical_basis(&shared.expect("a horn has at least one face"), dim);
    let want = n - m;
    let d = dimension(&shared, dim);
    if d < want {
        return Err(Error::IncompatibleHorn(format!("faces share a {d}-dimensional generator span, {want} needed")));
    }
    // Step 2 and 3: the orientation is fixed by the faces
    let signs: &[i32] = if m == n { &[-1] } else { &[1, -1] };
    let mut last_err = None;
    for gens in candidate_spans(&shared, &normals, &simplex, want, dim) {
        for &s in signs {
            let filler = with_sign(plectic, simplex.clone(), &gens, s)?;
            match verify_faces(plectic, &filler, h)? {
                None => return Ok(filler),
                Some(e) => last_err = Some(e),
            }
        }
    }
    Err(Error::IncompatibleHorn(
        last_err.unwrap_or_else(|| format!("no {want}-dimensional span of shared generators")),
    ))
}

/// Spans of dimension `want` inside the shared span, most natural first. The
/// shared span itself, then its part orthogonal to the normals; when generators
/// meet the tangent space of the filler the faces do not determine it, and
/// spans of normals, edges and their sums and differences are tried.
fn candidate_spans(shared: &[Vec<Q>], normals: &[Vec<Q>], simplex: &AffSimplex, want: usize, dim: usize) -> Vec<Vec<Vec<Q>>> {
    if shared.len() == want {
        return vec![shared.to_vec()];
    }
    let mut out = Vec::new();
    let ortho = orthogonal_part(shared, normals, dim);
    if ortho.len() == want {
        out.push(ortho);
    }
    let vs = simplex.vertices();
    let mut base: Vec<Vec<Q>> = shared.to_vec();
    base.extend(normals.iter().cloned());
    for a in 0..vs.len() {
        for b in a + 1..vs.len() {
            base.push(vs[b].iter().zip(&vs[a]).map(|(x, y)| x - y).collect());
        }
    }
    let mut pool: Vec<Vec<Q>> = Vec::new();
    let mut push = |v: Vec<Q>| {
        if v.iter().all(|x| x.is_zero()) || !contains(shared, &v, dim) {
            return;
        }
        let p = primitive(&v);
        let neg: Vec<Q> = p.iter().map(|x| -x).collect();
        if !pool.contains(&p) && !pool.contains(&neg) {
            pool.push(p);
        }
    };
    for v in &base {
        push(v.clone());
    }
    for a in 0..base.len() {
        for b in a + 1..base.len() {
            push(base[a].iter().zip(&base[b]).map(|(x, y)| x + y).collect());
            push(base[a].iter().zip(&base[b]).map(|(x, y)| x - y).collect());
        }
    }
    let mut seen: Vec<Vec<Vec<Q>>> = out.iter().map(|g| canonical_basis(g, dim)).collect();
    for idx in combinations(pool.len(), want) {
        let gens: Vec<Vec<Q>> = idx.iter().map(|&i| pool[i].clone()).collect();
        if dimension(&gens, dim) != want {
            continue;
        }
        let key = canonical_basis(&gens, dim);
        if !seen.contains(&key) {
            seen.push(key);
            out.push(gens);
        }
    }
    out
}

fn with_sign(plectic: &Plectic, simplex: AffSimplex, gens: &[Vec<Q>], s: i32) -> Result<ObsSimplex> {
    let mut raw = gens.to_vec();
    if s < 0 {
        if let Some(g) = raw.first_mut() {
            *g = g.iter().map(|x| -x).collect();
        }
    }
    ObsSimplex::new(plectic, simplex, &raw)
}

fn verify_faces(plectic: &Plectic, filler: &ObsSimplex, h: &Horn) -> Result<Option<String>> {
    for (&k, f) in &h.faces {
        let (got, _) = face_map(plectic, filler, k)?;
        if got != *f {
            return Ok(Some(format!("face {k} of the filler is {got}, the horn has {f}")));
        }
    }
    Ok(None)
}
