use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::smith::{invariant_factors, rank};
use crate::error::{Error, Result};
use crate::exterior::homotopy_primitive;
use crate::linalg;
use crate::linfty::Plectic;
use crate::observables::{face_map, make_obs, AffSimplex, ObsSimplex};
use crate::quantize::integrate;
use crate::rational::Q;

type Key = (Vec<Vec<Q>>, Vec<Vec<Q>>, i32);

/// A finite family of observable simplices closed under faces.
#[derive(Debug, Clone)]
pub struct ObsComplex {
    plectic: Plectic,
    strata: Vec<Vec<ObsSimplex>>,
    /// `incidence[k][s]` lists `(i, index of d_i s in stratum k − 1)`.
    incidence: Vec<Vec<Vec<(usize, usize)>>>,
    index: BTreeMap<Key, (usize, usize)>,
    /// `(n+1)`-simplices whose faces are top observables of the complex; they
    /// carry no observable and only serve as test cells for top-level cochains.
    solids: Vec<AffSimplex>,
    /// `solid_faces[t][i]` is the index of `d_i` of solid `t` in stratum `n`.
    solid_faces: Vec<Vec<usize>>,
}

impl ObsComplex {
    pub fn plectic(&self) -> &Plectic {
        &self.plectic
    }

    /// Strata `0..=n`, possibly empty.
    pub fn strata(&self) -> &[Vec<ObsSimplex>] {
        &self.strata
    }

    pub fn stratum(&self, k: usize) -> &[ObsSimplex] {
        self.strata.get(k).map_or(&[], |s| s.as_slice())
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.strata.iter().map(|s| s.len()).collect()
    }

    pub fn faces_of(&self, k: usize, s: usize) -> &[(usize, usize)] {
        &self.incidence[k][s]
    }

    pub fn index_of(&self, x: &ObsSimplex) -> Option<(usize, usize)> {
        self.index.get(&x.key()).copied()
    }

    pub fn solids(&self) -> &[AffSimplex] {
        &self.solids
    }

    pub fn solid_faces(&self, t: usize) -> &[usize] {
        &self.solid_faces[t]
    }

    /// Highest nonempty dimension.
    pub fn top(&self) -> Option<usize> {
        self.strata.iter().rposition(|s| !s.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.top().is_none()
    }

    fn insert(&mut self, x: ObsSimplex) -> (usize, usize, bool) {
        if let Some(&(k, s)) = self.index.get(&x.key()) {
            return (k, s, false);
        }
        let k = x.dim();
        let s = self.strata[k].len();
        self.index.insert(x.key(), (k, s));
        self.strata[k].push(x);
        self.incidence[k].push(Vec::new());
        (k, s, true)
    }
}

/// The closure of `seeds` under face maps, with duplicates merged.
pub fn build_complex(plectic: &Plectic, seeds: &[ObsSimplex]) -> Result<ObsComplex> {
    build_complex_with_solids(plectic, seeds, &[])
}

/// As [`build_complex`], also seeding the top observables on the faces of each solid.
pub fn build_complex_with_solids(plectic: &Plectic, seeds: &[ObsSimplex], solids: &[AffSimplex]) -> Result<ObsComplex> {
    let n = plectic.n();
    let mut cx = ObsComplex {
        plectic: plectic.clone(),
        strata: vec![Vec::new(); n + 1],
        incidence: vec![Vec::new(); n + 1],
        index: BTreeMap::new(),
        solids: solids.to_vec(),
        solid_faces: Vec::new(),
    };
    let mut all = seeds.to_vec();
    for s in solids {
        if s.dim() != n + 1 || s.chart_dim() != plectic.dim() {
            return Err(Error::InvalidInput(format!("solid {s} is not an {}-simplex in dimension {}", n + 1, plectic.dim())));
        }
        for i in 0..=n + 1 {
            all.push(make_obs(plectic, s.face(i), &[])?);
        }
    }
    let mut queue = Vec::new();
    for x in &all {
        if x.dim() > n {
            return Err(Error::InvalidInput(format!("a {}-simplex exceeds n = {n}", x.dim())));
        }
        if x.simplex().chart_dim() != plectic.dim() {
            return Err(Error::DimensionMismatch(format!("seed {x} is not in dimension {}", plectic.dim())));
        }
        let (k, s, new) = cx.insert(x.clone());
        if new {
            queue.push((k, s));
        }
    }
    while let Some((k, s)) = queue.pop() {
        if k == 0 {
            continue;
        }
        let x = cx.strata[k][s].clone();
        for i in 0..=k {
            let (f, _) = face_map(plectic, &x, i)?;
            let (fk, fs, new) = cx.insert(f);
            debug_assert_eq!(fk, k - 1);
            cx.incidence[k][s].push((i, fs));
            if new {
                queue.push((fk, fs));
            }
        }
    }
    for s in solids {
        let faces = (0..=n + 1)
            .map(|i| Ok(cx.index_of(&make_obs(plectic, s.face(i), &[])?).expect("seeded").1))
            .collect::<Result<_>>()?;
        cx.solid_faces.push(faces);
    }
    Ok(cx)
}

/// An integer matrix from stratum `k` to stratum `k − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<BigInt>>,
}

impl BoundaryMatrix {
    fn zeros(rows: usize, cols: usize) -> Self {
        BoundaryMatrix { rows, cols, entries: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn transpose(&self) -> Self {
        let mut t = BoundaryMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.entries.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                t.entries[c][r] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &BoundaryMatrix) -> BoundaryMatrix {
        let mut out = BoundaryMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                out.entries[r][c] = (0..self.cols).fold(BigInt::zero(), |acc, j| acc + &self.entries[r][j] * &other.entries[j][c]);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_zero())
    }

    /// `M f` for a rational vector indexed by columns.
    pub fn apply(&self, f: &[Q]) -> Vec<Q> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(f).fold(Q::zero(), |acc, (a, x)| acc + Q::from_integer(a.clone()) * x))
            .collect()
    }
}

impl fmt::Display for BoundaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "{}×{} [{}]", self.rows, self.cols, rows.join(", "))
    }
}

/// `∂_k σ = Σ_i (−1)^i d_i σ`.
pub fn boundary(cx: &ObsComplex, k: usize) -> Result<BoundaryMatrix> {
    if k == 0 || k > cx.plectic.n() {
        return Err(Error::InvalidInput(format!("∂_{k} is defined for 1 ≤ k ≤ {}", cx.plectic.n())));
    }
    let mut m = BoundaryMatrix::zeros(cx.stratum(k - 1).len(), cx.stratum(k).len());
    for (s, faces) in cx.incidence[k].iter().enumerate() {
        for &(i, f) in faces {
            m.entries[f][s] += if i % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Z,
    Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    /// Invariant factors greater than one, per degree.
    pub torsion: Vec<Vec<BigInt>>,
}

fn boundaries(cx: &ObsComplex, top: usize) -> Result<Vec<BoundaryMatrix>> {
    (1..=top).map(|k| boundary(cx, k)).collect()
}

fn rational_rank(m: &BoundaryMatrix) -> usize {
    let q: linalg::Matrix = m.entries.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
    if m.rows == 0 {
        0
    } else {
        linalg::rank(&q, m.cols)
    }
}

fn torsion_of(m: &BoundaryMatrix) -> Vec<BigInt> {
    invariant_factors(&m.entries).into_iter().filter(|d| *d > BigInt::from(1)).collect()
}

/// Integral homology in degrees `0..=top`.
pub fn homology(cx: &ObsComplex) -> Result<HomologyResult> {
    let Some(top) = cx.top() else {
        return Ok(HomologyResult { betti: Vec::new(), torsion: Vec::new() });
    };
    let d = boundaries(cx, top)?;
    let ranks: Vec<usize> = d.iter().map(|m| rank(&m.entries)).collect();
    let mut betti = Vec::new();
    let mut torsion = Vec::new();
    for k in 0..=top {
        let out = if k == 0 { 0 } else { ranks[k - 1] };
        let inc = if k < top { ranks[k] } else { 0 };
        betti.push(cx.stratum(k).len() - out - inc);
        torsion.push(if k < top { torsion_of(&d[k]) } else { Vec::new() });
    }
    Ok(HomologyResult { betti, torsion })
}

/// Cohomology from the transposed boundary matrices `δ^k = ∂_{k+1}ᵀ`.
pub fn cohomology(cx: &ObsComplex, coefficients: Coefficients) -> Result<HomologyResult> {
    let Some(top) = cx.top() else {
        return Ok(HomologyResult { betti: Vec::new(), torsion: Vec::new() });
    };
    let delta: Vec<BoundaryMatrix> = boundaries(cx, top)?.iter().map(|m| m.transpose()).collect();
    let ranks: Vec<usize> = delta
        .iter()
        .map(|m| match coefficients {
            Coefficients::Z => rank(&m.entries),
            Coefficients::Q => rational_rank(m),
        })
        .collect();
    let mut betti = Vec::new();
    let mut torsion = Vec::new();
    for k in 0..=top {
        let out = if k < top { ranks[k] } else { 0 };
        let inc = if k == 0 { 0 } else { ranks[k - 1] };
        betti.push(cx.stratum(k).len() - out - inc);
        torsion.push(match coefficients {
            Coefficients::Z if k > 0 => torsion_of(&delta[k - 1]),
            _ => Vec::new(),
        });
    }
    Ok(HomologyResult { betti, torsion })
}

/// `(δf)(σ) = Σ_i (−1)^i f(d_i σ)` for a cochain on stratum `k`.
pub fn coboundary_apply(cx: &ObsComplex, k: usize, f: &[Q]) -> Result<Vec<Q>> {
    let len = cx.stratum(k).len();
    if f.len() != len {
        return Err(Error::InvalidInput(format!("cochain has {} values, stratum {k} has {len} simplices", f.len())));
    }
    let Some(inc) = cx.incidence.get(k + 1) else {
        return Ok(Vec::new());
    };
    Ok(inc
        .iter()
        .map(|faces| {
            faces.iter().fold(Q::zero(), |acc, &(i, s)| if i % 2 == 0 { acc + &f[s] } else { acc - &f[s] })
        })
        .collect())
}

/// `σ ↦ ∫_{Δ^n} σ* θ` with `θ = H(ω)`, on stratum `n`.
pub fn adiabatic_cochain(cx: &ObsComplex) -> Result<Vec<Q>> {
    let n = cx.plectic.n();
    if cx.stratum(n).is_empty() {
        return Err(Error::InvalidInput(format!("stratum {n} is empty")));
    }
    let theta = homotopy_primitive(cx.plectic.omega())?;
    cx.stratum(n).iter().map(|x| integrate(&theta, x.simplex())).collect()
}
