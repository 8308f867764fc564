//! Randomized identities of the exterior and multivector calculus on `Q^3`.

use rand::Rng;

use super::{ext_d, interior, lie_bracket, lie_derivative, schouten, AffineMap, Form, MultiVec, Poly};
use super::{homotopy_primitive, homotopy_raw, pullback_affine};
use crate::properties::{ensure_eq, Property, Settings};
use crate::random::{self, TestRng};

const DIM: usize = 3;

fn sign(e: usize) -> i32 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn signed<K: super::Kind>(s: i32, g: &super::Graded<K>) -> super::Graded<K> {
    if s < 0 {
        -g
    } else {
        g.clone()
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn d_squared(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let p = rng.gen_range(0..=DIM);
    let a = random::form(rng, DIM, p, s.max_degree);
    let dda = ext_d(&ext_d(&a));
    if dda.is_zero() {
        Ok(())
    } else {
        Err(format!("d(d({a})) = {dda}"))
    }
}

fn d_leibniz(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let p = rng.gen_range(0..=2);
    let q = rng.gen_range(0..=DIM - p);
    let a = random::form(rng, DIM, p, s.max_degree);
    let b = random::form(rng, DIM, q, s.max_degree);
    let lhs = ext_d(&a.wedge(&b));
    let rhs = &ext_d(&a).wedge(&b) + &signed(sign(p), &a.wedge(&ext_d(&b)));
    ensure_eq(&format!("d({a} ^ {b})"), &lhs, &rhs)
}

fn wedge_commutative(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let p = rng.gen_range(0..=DIM);
    let q = rng.gen_range(0..=DIM);
    let a = random::form(rng, DIM, p, s.max_degree);
    let b = random::form(rng, DIM, q, s.max_degree);
    let lhs = a.wedge(&b);
    let rhs = signed(sign(p * q), &b.wedge(&a));
    ensure_eq(&format!("{a} ^ {b}"), &lhs, &rhs)
}

fn interior_antiderivation(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let v = random::vector_field(rng, DIM, s.max_degree);
    let p = rng.gen_range(0..=2);
    let q = rng.gen_range(0..=DIM - p);
    let a = random::form(rng, DIM, p, s.max_degree);
    let b = random::form(rng, DIM, q, s.max_degree);
    let lhs = interior(&v, &a.wedge(&b)).map_err(err)?;
    let rhs = &interior(&v, &a).map_err(err)?.wedge(&b) + &signed(sign(p), &a.wedge(&interior(&v, &b).map_err(err)?));
    ensure_eq(&format!("i_({v})({a} ^ {b})"), &lhs, &rhs)
}

/// Coordinate formula for the Lie derivative along a vector field:
/// `L_v (f dx_I) = v(f) dx_I + f Σ_r dx_{i_1} ∧ … ∧ d(v^{i_r}) ∧ … ∧ dx_{i_p}`.
fn lie_derivative_coordinates(v: &MultiVec, a: &Form) -> Form {
    let comps = v.components();
    let mut out = Form::zero(a.dim(), a.degree());
    for (idx, f) in a.terms() {
        let mut vf = Poly::zero(a.dim());
        for (i, c) in comps.iter().enumerate() {
            vf.add_assign_ref(&(c * &f.derivative(i)));
        }
        out = &out + &Form::basis(a.dim(), idx).mul_poly(&vf);
        for r in 0..idx.len() {
            let factors = idx.iter().enumerate().map(|(s, &j)| {
                if s == r {
                    ext_d(&Form::function(comps[j].clone()))
                } else {
                    Form::unit(a.dim(), j)
                }
            });
            let w = factors.fold(Form::function(f.clone()), |acc, x| acc.wedge(&x));
            out = &out + &w;
        }
    }
    out
}

fn cartan_vector(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let v = random::vector_field(rng, DIM, s.max_degree);
    let p = rng.gen_range(0..=DIM);
    let a = random::form(rng, DIM, p, s.max_degree);
    let lhs = lie_derivative(&v, &a).map_err(err)?;
    let rhs = lie_derivative_coordinates(&v, &a);
    ensure_eq(&format!("L_({v}) {a}"), &lhs, &rhs)
}

/// `d L_v = (−1)^{|v|+1} L_v d`, and the Cartan formula for decomposable `v`
/// recomputed by contracting one factor at a time.
fn cartan_multivector(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let k = rng.gen_range(1..=DIM);
    let (fields, v) = random::decomposable(rng, DIM, k, s.max_degree.min(2));
    let p = rng.gen_range(0..=DIM);
    let a = random::form(rng, DIM, p, s.max_degree);
    let lhs = ext_d(&lie_derivative(&v, &a).map_err(err)?);
    let rhs = signed(sign(k + 1), &lie_derivative(&v, &ext_d(&a)).map_err(err)?);
    ensure_eq(&format!("d L_v {a}, v = {v}"), &lhs, &rhs)?;
    // iterated contraction route for d ι_v a − (−1)^{|v|} ι_v d a
    let contract = |b: &Form| -> Result<Form, String> {
        let mut cur = b.clone();
        for f in &fields {
            cur = interior(f, &cur).map_err(err)?;
        }
        Ok(cur)
    };
    let direct = lie_derivative(&v, &a).map_err(err)?;
    let route = &ext_d(&contract(&a)?) - &signed(sign(k), &contract(&ext_d(&a))?);
    ensure_eq(&format!("L_v {a} by iterated contraction, v = {v}"), &direct, &route)
}

/// `ι_{[u,v]} a = (−1)^{(|u|−1)|v|} L_u ι_v a − ι_v L_u a`.
fn fundamental_identity(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let ku = rng.gen_range(1..=2);
    let kv = rng.gen_range(1..=2);
    let deg = s.max_degree.min(2);
    let (_, u) = random::decomposable(rng, DIM, ku, deg);
    let (_, v) = random::decomposable(rng, DIM, kv, deg);
    let p = rng.gen_range(0..=DIM);
    let a = random::form(rng, DIM, p, s.max_degree);
    let lhs = interior(&schouten(&u, &v).map_err(err)?, &a).map_err(err)?;
    let first = lie_derivative(&u, &interior(&v, &a).map_err(err)?).map_err(err)?;
    let second = interior(&v, &lie_derivative(&u, &a).map_err(err)?).map_err(err)?;
    let rhs = &signed(sign((ku - 1) * kv), &first) - &second;
    ensure_eq(&format!("i_[u,v] {a}, u = {u}, v = {v}"), &lhs, &rhs)
}

fn homogeneous(rng: &mut TestRng, s: &Settings) -> (usize, MultiVec) {
    let k = rng.gen_range(0..=DIM);
    (k, random::multivec(rng, DIM, k, s.max_degree.min(2)))
}

/// Parity of `k − 1`.
fn shift(k: usize) -> usize {
    (k + 1) % 2
}

fn schouten_antisymmetry(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let (ku, u) = homogeneous(rng, s);
    let (kv, v) = homogeneous(rng, s);
    let lhs = schouten(&u, &v).map_err(err)?;
    let rhs = -&signed(sign(shift(ku) * shift(kv)), &schouten(&v, &u).map_err(err)?);
    ensure_eq(&format!("[{u}, {v}]"), &lhs, &rhs)
}

fn schouten_jacobi(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let (ku, u) = homogeneous(rng, s);
    let (kv, v) = homogeneous(rng, s);
    let (_, w) = homogeneous(rng, s);
    let br = |a: &MultiVec, b: &MultiVec| schouten(a, b).map_err(err);
    let lhs = br(&u, &br(&v, &w)?)?;
    let rhs = &br(&br(&u, &v)?, &w)? + &signed(sign(shift(ku) * shift(kv)), &br(&v, &br(&u, &w)?)?);
    ensure_eq(&format!("[{u}, [{v}, {w}]]"), &lhs, &rhs)
}

fn schouten_leibniz(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let (ku, u) = homogeneous(rng, s);
    let (kv, v) = homogeneous(rng, s);
    let (kw, w) = homogeneous(rng, s);
    let br = |a: &MultiVec, b: &MultiVec| schouten(a, b).map_err(err);
    let lhs = br(&u, &v.wedge(&w))?;
    let rhs = &br(&u, &v)?.wedge(&w) + &signed(sign(shift(ku) * kv), &v.wedge(&br(&u, &w)?));
    ensure_eq(&format!("[{u}, {v} ^ {w}]"), &lhs, &rhs)?;
    let lhs = br(&u.wedge(&v), &w)?;
    let rhs = &u.wedge(&br(&v, &w)?) + &signed(sign(shift(kw) * kv), &br(&u, &w)?.wedge(&v));
    ensure_eq(&format!("[{u} ^ {v}, {w}]"), &lhs, &rhs)
}

/// `[u, v_1 ∧ … ∧ v_n] = Σ_i (−1)^{Σ_{a<i} |v_i||v_a|} [u, v_i] ∧ v_1 ∧ … v̂_i … ∧ v_n`,
/// against the iterated right Leibniz rule.
fn schouten_expansion(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let n = rng.gen_range(1..=4);
    let (ku, u) = {
        let k = rng.gen_range(1..=2);
        (k, random::multivec(rng, DIM, k, s.max_degree.min(2)))
    };
    let vs: Vec<(usize, MultiVec)> = (0..n)
        .map(|_| {
            let k = rng.gen_range(0..=1);
            (k, random::multivec(rng, DIM, k, s.max_degree.min(1)))
        })
        .collect();
    let br = |a: &MultiVec, b: &MultiVec| schouten(a, b).map_err(err);
    let one = MultiVec::function(Poly::one(DIM));
    let mut expansion = MultiVec::zero(DIM, 0);
    for i in 0..n {
        let exp: usize = vs[..i].iter().map(|(k, _)| k * vs[i].0).sum();
        let rest = vs.iter().enumerate().filter(|&(a, _)| a != i).fold(one.clone(), |acc, (_, (_, x))| acc.wedge(x));
        expansion = &expansion + &signed(sign(exp), &br(&u, &vs[i].1)?.wedge(&rest));
    }
    // iterated Leibniz: [u, V ∧ v] = [u, V] ∧ v + (−1)^{(|u|−1)|V|} V ∧ [u, v]
    let mut acc_v = vs[0].1.clone();
    let mut acc_deg = vs[0].0;
    let mut acc_br = br(&u, &acc_v)?;
    for (k, v) in &vs[1..] {
        acc_br = &acc_br.wedge(v) + &signed(sign((ku - 1) * acc_deg), &acc_v.wedge(&br(&u, v)?));
        acc_v = acc_v.wedge(v);
        acc_deg += k;
    }
    ensure_eq("expansion vs iterated Leibniz", &expansion, &acc_br)?;
    ensure_eq("expansion vs direct bracket", &expansion, &br(&u, &acc_v)?)
}

fn lie_bracket_is_schouten(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let u = random::vector_field(rng, DIM, s.max_degree);
    let v = random::vector_field(rng, DIM, s.max_degree);
    ensure_eq("vector bracket", &lie_bracket(&u, &v).map_err(err)?, &schouten(&u, &v).map_err(err)?)
}

fn homotopy_inverts_d(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let p = rng.gen_range(0..DIM);
    let b = random::form(rng, DIM, p, s.max_degree);
    let a = ext_d(&b);
    let h = homotopy_primitive(&a).map_err(err)?;
    ensure_eq(&format!("d H d({b})"), &ext_d(&h), &a)?;
    if p >= 1 {
        let back = &homotopy_raw(&ext_d(&b)) + &ext_d(&homotopy_raw(&b));
        ensure_eq(&format!("(Hd + dH)({b})"), &back, &b)?;
    }
    Ok(())
}

fn random_affine(rng: &mut TestRng, source: usize, target: usize) -> AffineMap {
    let matrix = (0..target).map(|_| (0..source).map(|_| random::small_q(rng)).collect()).collect();
    let offset = (0..target).map(|_| random::small_q(rng)).collect();
    AffineMap::new(matrix, offset).expect("well-formed affine map")
}

fn pullback_natural(rng: &mut TestRng, s: &Settings) -> Result<(), String> {
    let k = rng.gen_range(1..=DIM);
    let map = random_affine(rng, k, DIM);
    let p = rng.gen_range(0..=2);
    let q = rng.gen_range(0..=1);
    let a = random::form(rng, DIM, p, s.max_degree.min(2));
    let b = random::form(rng, DIM, q, s.max_degree.min(2));
    let pb = |f: &Form| pullback_affine(f, &map).map_err(err);
    ensure_eq(&format!("pullback d {a}"), &pb(&ext_d(&a))?, &ext_d(&pb(&a)?))?;
    ensure_eq(&format!("pullback {a} ^ {b}"), &pb(&a.wedge(&b))?, &pb(&a)?.wedge(&pb(&b)?))
}

/// Properties of the exterior and multivector calculus on `Q^3`.
pub fn properties() -> Vec<Property> {
    vec![
        Property::new("d^2 = 0", d_squared),
        Property::new("Leibniz rule for d", d_leibniz),
        Property::new("graded commutativity of wedge", wedge_commutative),
        Property::new("interior product is an antiderivation", interior_antiderivation),
        Property::new("Cartan formula, vector fields", cartan_vector),
        Property::new("Cartan formula, multivector fields", cartan_multivector),
        Property::new("fundamental identity", fundamental_identity),
        Property::new("Schouten graded antisymmetry", schouten_antisymmetry),
        Property::new("Schouten graded Jacobi", schouten_jacobi),
        Property::new("Schouten graded Leibniz", schouten_leibniz),
        Property::new("Schouten wedge expansion", schouten_expansion),
        Property::new("Schouten extends the Lie bracket", lie_bracket_is_schouten),
        Property::new("homotopy operator", homotopy_inverts_d),
        Property::new("pullback naturality", pullback_natural),
    ]
}
