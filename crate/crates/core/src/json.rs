//! JSON encoding of scalars, forms and simplices, and a reader that reports
//! errors by JSON pointer.
//!
//! Rationals are strings `"n"` or `"n/d"` (plain integers are also read).
//! Index tuples are 1-based: `{"idx": [1, 3]}` is `dx1∧dx3`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exterior::{Graded, Kind, Poly};
use crate::linfty::Plectic;
use crate::observables::{AffSimplex, ObsSimplex};
use crate::rational::{format_q, parse_q, Q};

/// A JSON value together with its pointer.
#[derive(Debug, Clone)]
pub struct Node<'a> {
    pub value: &'a Value,
    pub pointer: String,
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

impl<'a> Node<'a> {
    pub fn root(value: &'a Value) -> Self {
        Node { value, pointer: String::new() }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        let pointer = if self.pointer.is_empty() { "/".to_string() } else { self.pointer.clone() };
        Error::Schema { pointer, message: message.into() }
    }

    fn child(&self, value: &'a Value, key: &str) -> Node<'a> {
        Node { value, pointer: format!("{}/{}", self.pointer, escape(key)) }
    }

    pub fn opt(&self, key: &str) -> Result<Option<Node<'a>>> {
        let obj = self.value.as_object().ok_or_else(|| self.error("expected an object"))?;
        Ok(obj.get(key).filter(|v| !v.is_null()).map(|v| self.child(v, key)))
    }

    pub fn get(&self, key: &str) -> Result<Node<'a>> {
        self.opt(key)?.ok_or_else(|| self.error(format!("missing field {key:?}")))
    }

    pub fn items(&self) -> Result<Vec<Node<'a>>> {
        let arr = self.value.as_array().ok_or_else(|| self.error("expected an array"))?;
        Ok(arr.iter().enumerate().map(|(i, v)| self.child(v, &i.to_string())).collect())
    }

    pub fn entries(&self) -> Result<Vec<(String, Node<'a>)>> {
        let obj = self.value.as_object().ok_or_else(|| self.error("expected an object"))?;
        Ok(obj.iter().map(|(k, v)| (k.clone(), self.child(v, k))).collect())
    }

    pub fn str(&self) -> Result<&'a str> {
        self.value.as_str().ok_or_else(|| self.error("expected a string"))
    }

    pub fn usize(&self) -> Result<usize> {
        self.value
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| self.error("expected a nonnegative integer"))
    }

    pub fn i64(&self) -> Result<i64> {
        self.value.as_i64().ok_or_else(|| self.error("expected an integer"))
    }

    pub fn q(&self) -> Result<Q> {
        match self.value {
            Value::String(s) => parse_q(s).ok_or_else(|| self.error(format!("malformed rational {s:?}"))),
            Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().unwrap_or(0).into())),
            _ => Err(self.error("expected a rational string \"n/d\" or an integer")),
        }
    }

    pub fn point(&self) -> Result<Vec<Q>> {
        self.items()?.iter().map(|x| x.q()).collect()
    }

    pub fn points(&self) -> Result<Vec<Vec<Q>>> {
        self.items()?.iter().map(|x| x.point()).collect()
    }
}

pub fn q_json(x: &Q) -> Value {
    Value::String(format_q(x))
}

pub fn point_json(p: &[Q]) -> Value {
    Value::Array(p.iter().map(q_json).collect())
}

pub fn points_json(ps: &[Vec<Q>]) -> Value {
    Value::Array(ps.iter().map(|p| point_json(p)).collect())
}

pub fn poly_json(p: &Poly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!({"exp": e, "coef": q_json(c)})).collect())
}

pub fn graded_json<K: Kind>(g: &Graded<K>) -> Value {
    let terms: Vec<Value> = g
        .terms()
        .map(|(idx, p)| json!({"idx": idx.iter().map(|i| i + 1).collect::<Vec<_>>(), "poly": poly_json(p)}))
        .collect();
    json!({"degree": g.degree(), "terms": terms})
}

pub fn read_poly(node: &Node, dim: usize) -> Result<Poly> {
    let mut p = Poly::zero(dim);
    for t in node.items()? {
        let exp_node = t.get("exp")?;
        let exp: Vec<u32> = exp_node
            .items()?
            .iter()
            .map(|e| e.usize().map(|x| x as u32))
            .collect::<Result<_>>()?;
        if exp.len() != dim {
            return Err(exp_node.error(format!("exponent vector of length {} on a chart of dimension {dim}", exp.len())));
        }
        p.add_term(exp, t.get("coef")?.q()?);
    }
    Ok(p)
}

/// Reads `{"degree": p, "terms": [{"idx": [...], "poly": [...]}]}`.
pub fn read_graded<K: Kind>(node: &Node, dim: usize) -> Result<Graded<K>> {
    let degree = node.get("degree")?.usize()?;
    let mut terms = Vec::new();
    for t in node.get("terms")?.items()? {
        let idx_node = t.get("idx")?;
        let idx: Vec<usize> = idx_node.items()?.iter().map(|i| i.usize()).collect::<Result<_>>()?;
        if idx.iter().any(|&i| i == 0 || i > dim) || idx.len() != degree || idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(idx_node.error(format!("expected a strictly increasing {degree}-subset of 1..{dim}")));
        }
        let poly = read_poly(&t.get("poly")?, dim)?;
        terms.push((idx.iter().map(|i| i - 1).collect(), poly));
    }
    Graded::from_terms(dim, degree, terms).map_err(|e| node.error(e.to_string()))
}

/// Reads `{"dim": m, "omega": <form>, "samples": [...]}`; without `omega` the volume form.
pub fn read_plectic(node: &Node) -> Result<Plectic> {
    let dim = node.get("dim")?.usize()?;
    if dim < 2 {
        return Err(node.get("dim")?.error("a plectic chart needs dimension ≥ 2"));
    }
    let Some(omega) = node.opt("omega")? else {
        return Ok(Plectic::volume(dim));
    };
    let form = read_graded(&omega, dim)?;
    let samples = match node.opt("samples")? {
        Some(s) => s.points()?,
        None => Vec::new(),
    };
    Plectic::new(form, samples).map_err(|e| omega.error(e.to_string()))
}

pub fn plectic_json(pl: &Plectic) -> Value {
    json!({"dim": pl.dim(), "n": pl.n(), "omega": graded_json(pl.omega())})
}

pub fn read_simplex(node: &Node) -> Result<AffSimplex> {
    AffSimplex::new(node.points()?).map_err(|e| node.error(e.to_string()))
}

pub fn read_flat_simplex(node: &Node) -> Result<AffSimplex> {
    AffSimplex::flat(node.points()?).map_err(|e| node.error(e.to_string()))
}

/// Reads `{"vertices": [...], "generators": [...]}`; any `alpha` is recomputed.
pub fn read_obs_simplex(node: &Node, pl: &Plectic) -> Result<ObsSimplex> {
    let vertices = node.get("vertices")?;
    let simplex = read_simplex(&vertices)?;
    let generators = match node.opt("generators")? {
        Some(g) => g.points()?,
        None => Vec::new(),
    };
    ObsSimplex::new(pl, simplex, &generators).map_err(|e| node.error(e.to_string()))
}

pub fn obs_simplex_json(x: &ObsSimplex) -> Value {
    let mut m = Map::new();
    m.insert("vertices".into(), points_json(x.simplex().vertices()));
    m.insert("generators".into(), points_json(x.generators()));
    m.insert("sign".into(), json!(x.sign()));
    m.insert("alpha".into(), graded_json(x.alpha()));
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{Form, MultiVec};
    use crate::rational::{q, qi};

    #[test]
    fn round_trip_of_a_form() {
        let f = &Form::basis(3, &[0, 2]).mul_poly(&Poly::var(3, 1).scale(&q(3, 2))) + &Form::basis(3, &[1, 2]);
        let v = graded_json(&f);
        assert_eq!(read_graded::<crate::exterior::FormKind>(&Node::root(&v), 3).unwrap(), f);
        let m = MultiVec::unit(3, 1);
        let back: MultiVec = read_graded(&Node::root(&graded_json(&m)), 3).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn errors_carry_pointers() {
        let v = json!({"degree": 1, "terms": [{"idx": [1], "poly": [{"exp": [0, 0, 0], "coef": "3/"}]}]});
        let e = read_graded::<crate::exterior::FormKind>(&Node::root(&v), 3).unwrap_err();
        assert_eq!(e, Error::Schema { pointer: "/terms/0/poly/0/coef".into(), message: "malformed rational \"3/\"".into() });
        let v = json!({"degree": 1, "terms": [{"idx": [4], "poly": []}]});
        let e = read_graded::<crate::exterior::FormKind>(&Node::root(&v), 3).unwrap_err();
        assert!(matches!(e, Error::Schema { ref pointer, .. } if pointer == "/terms/0/idx"));
        assert_eq!(Node::root(&json!("7")).q().unwrap(), qi(7));
        assert_eq!(Node::root(&json!({"a": {"b/c": 1}})).get("a").unwrap().get("b/c").unwrap().pointer, "/a/b~1c");
    }
}
