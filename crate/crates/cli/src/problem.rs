//! Problem files: a versioned JSON document read lazily, one section per command.

use std::collections::BTreeMap;

use plectic::exterior::{homotopy_primitive, Form, MultiVec};
use plectic::json::{read_flat_simplex, read_graded, read_obs_simplex, read_plectic, Node};
use plectic::linfty::{solve_hamiltonian, u_shift, BracketConvention, HamPair, Plectic, UElement};
use plectic::observables::{AffSimplex, Horn, ObsSimplex};
use plectic::quantize::{Chain, Phase, Scale, StateCochain};
use plectic::{Error, Result};
use serde_json::Value;

pub const SCHEMA_VERSION: u64 = 1;

pub struct Problem<'a> {
    root: Node<'a>,
    plectic: Option<Plectic>,
}

impl<'a> Problem<'a> {
    pub fn new(value: &'a Value) -> Result<Self> {
        let root = Node::root(value);
        let version = root.get("schema")?;
        if version.value.as_u64() != Some(SCHEMA_VERSION) {
            return Err(version.error(format!("unsupported schema version {}, expected {SCHEMA_VERSION}", version.value)));
        }
        let plectic = root.opt("plectic")?.map(|p| read_plectic(&p)).transpose()?;
        Ok(Problem { root, plectic })
    }

    pub fn has(&self, key: &str) -> bool {
        self.root.opt(key).ok().flatten().is_some()
    }

    pub fn plectic(&self) -> Result<&Plectic> {
        self.plectic.as_ref().ok_or_else(|| self.root.error("missing field \"plectic\""))
    }

    fn section(&self, key: &str) -> Result<Node<'a>> {
        self.root.get(key)
    }

    /// `params.<key>`, if present.
    pub fn param(&self, key: &str) -> Result<Option<Node<'a>>> {
        match self.root.opt("params")? {
            Some(p) => p.opt(key),
            None => Ok(None),
        }
    }

    pub fn param_usize(&self, key: &str) -> Result<Option<usize>> {
        self.param(key)?.map(|n| n.usize()).transpose()
    }

    pub fn param_scale(&self, key: &str) -> Result<Option<Scale>> {
        self.param(key)?.map(|n| read_scale(&n)).transpose()
    }

    fn pair_at(&self, node: &Node) -> Result<HamPair> {
        let pl = self.plectic()?;
        let field = node.get("field")?;
        let v: MultiVec = read_graded(&field, pl.dim())?;
        match node.opt("alpha")? {
            None => solve_hamiltonian(pl, &v).map_err(|e| field.error(e.to_string())),
            Some(a) => HamPair::new(pl, read_graded(&a, pl.dim())?, v).map_err(|e| node.error(e.to_string())),
        }
    }

    /// `pairs`: `{"name": {"field": <multivec>, "alpha": <form>?}}`; without
    /// `alpha` the canonical Hamiltonian form is solved for.
    pub fn pairs(&self) -> Result<BTreeMap<String, HamPair>> {
        let mut out = BTreeMap::new();
        if let Some(p) = self.root.opt("pairs")? {
            for (name, node) in p.entries()? {
                out.insert(name, self.pair_at(&node)?);
            }
        }
        Ok(out)
    }

    /// `elements`: `{"name": {"parts": [{"form", "upow", "ham"?}]}}` or `{"shift": "<pair>"}`.
    pub fn elements(&self, pairs: &BTreeMap<String, HamPair>) -> Result<BTreeMap<String, UElement>> {
        let pl = self.plectic()?;
        let (n, dim) = (pl.n(), pl.dim());
        let mut out = BTreeMap::new();
        let Some(section) = self.root.opt("elements")? else {
            return Ok(out);
        };
        for (name, node) in section.entries()? {
            let x = if let Some(s) = node.opt("shift")? {
                let key = s.str()?;
                let pair = pairs.get(key).ok_or_else(|| s.error(format!("unknown pair {key:?}")))?;
                u_shift(n, pair)
            } else {
                let mut x = UElement::zero(n, dim);
                for part in node.get("parts")?.items()? {
                    let form: Form = read_graded(&part.get("form")?, dim)?;
                    let upow = match part.opt("upow")? {
                        Some(u) => u.usize()?,
                        None => 0,
                    };
                    let ham = part.opt("ham")?.map(|h| read_graded::<plectic::exterior::VecKind>(&h, dim)).transpose()?;
                    let p = UElement::from_part(n, form, upow, ham).map_err(|e| part.error(e.to_string()))?;
                    x = x.add(&p);
                }
                x
            };
            out.insert(name, x);
        }
        Ok(out)
    }

    /// `args`: names of elements, or of pairs (taken through the u-shift).
    pub fn args(&self) -> Result<Vec<UElement>> {
        let pairs = self.pairs()?;
        let elements = self.elements(&pairs)?;
        let n = self.plectic()?.n();
        self.section("args")?
            .items()?
            .iter()
            .map(|a| {
                let key = a.str()?;
                if let Some(x) = elements.get(key) {
                    Ok(x.clone())
                } else if let Some(p) = pairs.get(key) {
                    Ok(u_shift(n, p))
                } else {
                    Err(a.error(format!("unknown element {key:?}")))
                }
            })
            .collect()
    }

    /// `convention`: `{"flip": [k, …]}` negates the listed brackets.
    pub fn convention(&self) -> Result<BracketConvention> {
        match self.root.opt("convention")? {
            None => Ok(BracketConvention::standard()),
            Some(c) => {
                let ks = match c.opt("flip")? {
                    Some(f) => f.items()?.iter().map(|k| k.usize()).collect::<Result<Vec<_>>>()?,
                    None => Vec::new(),
                };
                Ok(BracketConvention::with_flipped(ks))
            }
        }
    }

    /// `fields`: multivector fields, or names of pairs.
    pub fn fields(&self) -> Result<Vec<MultiVec>> {
        let pl = self.plectic()?;
        let pairs = self.pairs()?;
        self.section("fields")?
            .items()?
            .iter()
            .map(|f| match f.value {
                Value::String(key) => pairs.get(key).map(|p| p.v.clone()).ok_or_else(|| f.error(format!("unknown pair {key:?}"))),
                _ => read_graded(f, pl.dim()),
            })
            .collect()
    }

    pub fn simplices(&self) -> Result<Vec<ObsSimplex>> {
        let pl = self.plectic()?;
        self.section("simplices")?.items()?.iter().map(|s| read_obs_simplex(s, pl)).collect()
    }

    /// `horn`: `{"missing": r, "vertices": [...], "faces": {"i": <simplex>}}`.
    pub fn horn(&self) -> Result<Horn> {
        let pl = self.plectic()?;
        let h = self.section("horn")?;
        let r = h.get("missing")?.usize()?;
        let vertices = h.get("vertices")?;
        let vs = vertices.points()?;
        if vs.is_empty() {
            return Err(vertices.error("a horn needs vertices"));
        }
        let mut faces = BTreeMap::new();
        for (key, node) in h.get("faces")?.entries()? {
            let i: usize = key.parse().map_err(|_| node.error(format!("face key {key:?} is not an index")))?;
            faces.insert(i, read_obs_simplex(&node, pl)?);
        }
        Horn::new(vs.len() - 1, r, vs, faces).map_err(|e| h.error(e.to_string()))
    }

    /// `complex`: `{"seeds": [<simplex>], "solids": [[points]]}`.
    pub fn complex_data(&self) -> Result<(Vec<ObsSimplex>, Vec<AffSimplex>)> {
        let pl = self.plectic()?;
        let c = self.section("complex")?;
        let seeds = c.get("seeds")?.items()?.iter().map(|s| read_obs_simplex(s, pl)).collect::<Result<_>>()?;
        let solids = match c.opt("solids")? {
            Some(s) => s
                .items()?
                .iter()
                .map(|x| AffSimplex::new(x.points()?).map_err(|e| x.error(e.to_string())))
                .collect::<Result<_>>()?,
            None => Vec::new(),
        };
        Ok((seeds, solids))
    }

    /// `integrals` or `stokes`: `[{"form": <form>, "vertices": [...]}]`; flat simplices allowed.
    pub fn integrands(&self, key: &str) -> Result<Vec<(Form, AffSimplex)>> {
        let dim = self.plectic()?.dim();
        self.section(key)?
            .items()?
            .iter()
            .map(|t| Ok((read_graded(&t.get("form")?, dim)?, read_flat_simplex(&t.get("vertices")?)?)))
            .collect()
    }

    /// `cycles`: `[[{"coef": c, "vertices": [...]}]]`.
    pub fn cycles(&self) -> Result<Vec<Chain>> {
        self.section("cycles")?
            .items()?
            .iter()
            .map(|c| {
                c.items()?
                    .iter()
                    .map(|t| Ok((t.get("coef")?.i64()?, read_flat_simplex(&t.get("vertices")?)?)))
                    .collect()
            })
            .collect()
    }

    /// `theta`, or `H(ω)` by default.
    pub fn theta(&self) -> Result<Form> {
        let pl = self.plectic()?;
        match self.root.opt("theta")? {
            Some(t) => read_graded(&t, pl.dim()),
            None => homotopy_primitive(pl.omega()),
        }
    }

    pub fn tetrahedra(&self) -> Result<Vec<AffSimplex>> {
        self.section("tetrahedra")?.items()?.iter().map(read_flat_simplex).collect()
    }

    /// `states`: `{"final": <state>, "initial": <state>}`, each
    /// `{"level": k, "phases": [{"idx": i, "r": "p/q", "residual"?: "a/b"}]}` with
    /// `idx` the 0-based position in stratum `k`.
    pub fn states(&self, sizes: &[usize]) -> Result<(StateCochain, StateCochain)> {
        let s = self.section("states")?;
        Ok((read_state(&s.get("final")?, sizes)?, read_state(&s.get("initial")?, sizes)?))
    }
}

pub fn read_scale(node: &Node) -> Result<Scale> {
    match node.value {
        Value::String(s) => Scale::parse(s).map_err(|e| node.error(e.to_string())),
        _ => Ok(Scale::radians(node.q()?)),
    }
}

fn read_state(node: &Node, sizes: &[usize]) -> Result<StateCochain> {
    let level_node = node.get("level")?;
    let level = level_node.usize()?;
    let size = *sizes.get(level).ok_or_else(|| level_node.error(format!("no stratum {level} in the complex")))?;
    let mut values: Vec<Option<Phase>> = vec![None; size];
    for p in node.get("phases")?.items()? {
        let idx_node = p.get("idx")?;
        let idx = idx_node.usize()?;
        if idx >= size {
            return Err(idx_node.error(format!("index {idx} outside stratum {level} of size {size}")));
        }
        if values[idx].is_some() {
            return Err(idx_node.error(format!("index {idx} given twice")));
        }
        let residual = match p.opt("residual")? {
            Some(r) => r.q()?,
            None => plectic::Q::from_integer(0.into()),
        };
        values[idx] = Some(Phase::new(p.get("r")?.q()?, residual));
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| node.error(format!("no phase for simplex {i} of stratum {level}"))))
        .collect::<Result<_>>()?;
    Ok(StateCochain { level, values })
}

pub fn is_input_error(e: &Error) -> bool {
    matches!(e, Error::Schema { .. } | Error::InvalidInput(_) | Error::DimensionMismatch(_))
}
