//! Exterior derivative, interior products, Lie derivatives and brackets.

use super::{merge_sign, Form, MultiVec, Poly};
use crate::error::{Error, Result};

fn signed(p: Poly, s: i32) -> Poly {
    if s < 0 {
        -&p
    } else {
        p
    }
}

/// Exterior derivative.
pub fn ext_d(a: &Form) -> Form {
    let dim = a.dim();
    let mut out = Form::zero(dim, a.degree() + 1);
    if a.degree() >= dim {
        return out;
    }
    for (idx, f) in a.terms() {
        for i in 0..dim {
            let df = f.derivative(i);
            if df.is_zero() {
                continue;
            }
            if let Some((merged, s)) = merge_sign(&[i], idx) {
                out.add_term(merged, signed(df, s));
            }
        }
    }
    out
}

/// `ι_{∂_i}` applied to `a`, as an antiderivation.
fn contract_coordinate(i: usize, a: &Form) -> Form {
    let mut out = Form::zero(a.dim(), a.degree().saturating_sub(1));
    if a.degree() == 0 {
        return out;
    }
    for (idx, f) in a.terms() {
        if let Some(r) = idx.iter().position(|&j| j == i) {
            let mut rest = idx.clone();
            rest.remove(r);
            out.add_term(rest, signed(f.clone(), if r % 2 == 0 { 1 } else { -1 }));
        }
    }
    out
}

/// Interior product `ι_v a`, with `ι_{v_1∧…∧v_n} = ι_{v_n} ⋯ ι_{v_1}`.
///
/// A degree-0 `v` acts by multiplication. The result is zero (of degree 0)
/// when `|v| > |a|`.
pub fn interior(v: &MultiVec, a: &Form) -> Result<Form> {
    v.check_same_chart(a)?;
    let dim = a.dim();
    if v.degree() > a.degree() {
        return Ok(Form::zero(dim, 0));
    }
    let mut out = Form::zero(dim, a.degree() - v.degree());
    for (idx, f) in v.terms() {
        let mut cur = a.clone();
        for &i in idx {
            cur = contract_coordinate(i, &cur);
            if cur.is_zero() {
                break;
            }
        }
        out = &out + &cur.mul_poly(f);
    }
    Ok(out)
}

/// `L_v a = d ι_v a − (−1)^{|v|} ι_v d a`.
pub fn lie_derivative(v: &MultiVec, a: &Form) -> Result<Form> {
    v.check_same_chart(a)?;
    let first = ext_d(&interior(v, a)?);
    let second = interior(v, &ext_d(a))?;
    let out = if v.degree().is_multiple_of(2) { &first - &second } else { &first + &second };
    Ok(normalize_degree(out, (a.degree() + 1).saturating_sub(v.degree())))
}

fn normalize_degree(a: Form, degree: usize) -> Form {
    if a.is_zero() {
        Form::zero(a.dim(), degree)
    } else {
        a
    }
}

/// Lie bracket of vector fields, `[u, v]^k = u(v^k) − v(u^k)`.
pub fn lie_bracket(u: &MultiVec, v: &MultiVec) -> Result<MultiVec> {
    u.check_same_chart(v)?;
    if u.degree() != 1 || v.degree() != 1 {
        return Err(Error::InvalidInput(format!(
            "Lie bracket needs vector fields, got degrees {} and {}",
            u.degree(),
            v.degree()
        )));
    }
    let dim = u.dim();
    let uc = u.components();
    let vc = v.components();
    let mut out = MultiVec::zero(dim, 1);
    for k in 0..dim {
        let mut c = Poly::zero(dim);
        for i in 0..dim {
            c.add_assign_ref(&(&uc[i] * &vc[k].derivative(i)));
            c.add_assign_ref(&-&(&vc[i] * &uc[k].derivative(i)));
        }
        out.add_term(vec![k], c);
    }
    Ok(out)
}

/// `X(f)` for a vector field `X`.
fn apply_field(x: &MultiVec, f: &Poly) -> Poly {
    let mut out = Poly::zero(f.nvars());
    for (idx, c) in x.terms() {
        out.add_assign_ref(&(c * &f.derivative(idx[0])));
    }
    out
}

/// A decomposable piece `f ∂_{i1} ∧ ∂_{i2} ∧ …` as its vector factors, the
/// coefficient carried by the first.
fn factors(piece: &MultiVec) -> Vec<MultiVec> {
    let (idx, f) = piece.terms().next().expect("nonzero piece");
    idx.iter()
        .enumerate()
        .map(|(r, &i)| {
            let e = MultiVec::unit(piece.dim(), i);
            if r == 0 {
                e.mul_poly(f)
            } else {
                e
            }
        })
        .collect()
}

fn wedge_all(dim: usize, fs: impl Iterator<Item = MultiVec>) -> MultiVec {
    fs.fold(MultiVec::function(Poly::one(dim)), |acc, x| acc.wedge(&x))
}

/// `[P, f]` for a function `f`, by the Leibniz rule in the first slot:
/// `[X_1 ∧ R, f] = X_1 ∧ [R, f] + (−1)^{|R|} X_1(f) R`.
fn bracket_with_function(p: &MultiVec, f: &Poly) -> MultiVec {
    let dim = p.dim();
    let mut out = MultiVec::zero(dim, p.degree().saturating_sub(1));
    if p.degree() == 0 {
        return out;
    }
    for piece in p.pieces() {
        let fs = factors(&piece);
        for (r, x) in fs.iter().enumerate() {
            let xf = apply_field(x, f);
            if xf.is_zero() {
                continue;
            }
            let before = wedge_all(dim, fs[..r].iter().cloned());
            let after = wedge_all(dim, fs[r + 1..].iter().cloned());
            let sign = if (fs.len() - 1 - r).is_multiple_of(2) { 1 } else { -1 };
            let term = before.wedge(&after).mul_poly(&signed(xf, sign));
            out = &out + &term;
        }
    }
    out
}

/// Schouten–Nijenhuis bracket, via the decomposable formula
/// `Σ (−1)^{i+j} [u_i, v_j] ∧ u_1 ∧ … û_i … ∧ v_1 ∧ … v̂_j …`,
/// extended to functions by the Leibniz rule.
pub fn schouten(u: &MultiVec, v: &MultiVec) -> Result<MultiVec> {
    u.check_same_chart(v)?;
    let dim = u.dim();
    let degree = (u.degree() + v.degree()).saturating_sub(1);
    match (u.degree(), v.degree()) {
        (0, 0) => return Ok(MultiVec::zero(dim, 0)),
        (_, 0) => {
            let f = v.coefficient(&[]);
            return Ok(bracket_with_function(u, &f));
        }
        (0, q) => {
            // [f, P] = (−1)^{|P|} [P, f]
            let f = u.coefficient(&[]);
            let r = bracket_with_function(v, &f);
            return Ok(if q % 2 == 0 { r } else { -&r });
        }
        _ => {}
    }
    let mut out = MultiVec::zero(dim, degree);
    for up in u.pieces() {
        let uf = factors(&up);
        for vp in v.pieces() {
            let vf = factors(&vp);
            for (i, ui) in uf.iter().enumerate() {
                for (j, vj) in vf.iter().enumerate() {
                    let br = lie_bracket(ui, vj)?;
                    if br.is_zero() {
                        continue;
                    }
                    let rest_u = uf.iter().enumerate().filter(|&(a, _)| a != i).map(|(_, x)| x.clone());
                    let rest_v = vf.iter().enumerate().filter(|&(b, _)| b != j).map(|(_, x)| x.clone());
                    let term = wedge_all(dim, std::iter::once(br).chain(rest_u).chain(rest_v));
                    out = if (i + j) % 2 == 0 { &out + &term } else { &out - &term };
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    fn dx(i: usize) -> Form {
        Form::unit(3, i)
    }

    fn del(i: usize) -> MultiVec {
        MultiVec::unit(3, i)
    }

    #[test]
    fn d_examples() {
        assert_eq!(ext_d(&dx(1).mul_poly(&x(0))), Form::basis(3, &[0, 1]));
        assert!(ext_d(&Form::function(Poly::constant(3, qi(5)))).is_zero());
        let a = dx(2).mul_poly(&(&x(0) * &x(1)));
        let expect = &Form::basis(3, &[0, 2]).mul_poly(&x(1)) + &Form::basis(3, &[1, 2]).mul_poly(&x(0));
        assert_eq!(ext_d(&a), expect);
    }

    #[test]
    fn interior_examples() {
        let vol = Form::basis(3, &[0, 1, 2]);
        assert_eq!(interior(&del(2), &vol).unwrap(), Form::basis(3, &[0, 1]));
        let v = MultiVec::basis(3, &[0, 1]);
        assert_eq!(interior(&v, &Form::basis(3, &[0, 1])).unwrap(), Form::function(Poly::one(3)));
        // ι_{∂1∧∂2} vol = ι_{∂2} ι_{∂1} vol = ι_{∂2}(dx2∧dx3) = dx3
        assert_eq!(interior(&v, &vol).unwrap(), dx(2));
        assert!(interior(&del(0), &Form::function(x(0))).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_examples() {
        let a = dx(1).mul_poly(&x(0));
        assert_eq!(lie_derivative(&del(0), &a).unwrap(), dx(1));
        assert!(lie_derivative(&del(0), &Form::zero(3, 2)).unwrap().is_zero());
        let v = MultiVec::basis(3, &[0, 1]);
        assert!(lie_derivative(&v, &Form::basis(3, &[0, 1])).unwrap().is_zero());
    }

    #[test]
    fn lie_bracket_examples() {
        assert!(lie_bracket(&del(0), &del(1)).unwrap().is_zero());
        let u = del(1).mul_poly(&x(0));
        assert_eq!(lie_bracket(&u, &del(0)).unwrap(), -&del(1));
        assert!(lie_bracket(&u, &u).unwrap().is_zero());
        assert!(lie_bracket(&MultiVec::basis(3, &[0, 1]), &del(0)).is_err());
    }

    #[test]
    fn schouten_examples() {
        assert!(schouten(&MultiVec::basis(3, &[0, 1]), &del(2)).unwrap().is_zero());
        // [x2 ∂1∧∂3, ∂2] = (−1)^{1+1} [x2∂1, ∂2] ∧ ∂3 = −∂1∧∂3
        let u = MultiVec::basis(3, &[0, 2]).mul_poly(&x(1));
        assert_eq!(schouten(&u, &del(1)).unwrap(), -&MultiVec::basis(3, &[0, 2]));
        // vector field against a function
        let f = MultiVec::function(&x(0) * &x(1));
        assert_eq!(schouten(&del(0), &f).unwrap(), MultiVec::function(x(1)));
        assert_eq!(schouten(&f, &del(0)).unwrap(), MultiVec::function(-&x(1)));
        let half = MultiVec::function(Poly::constant(3, q(1, 2)));
        assert!(schouten(&half, &f).unwrap().is_zero());
    }

    #[test]
    fn schouten_with_function_matches_leibniz_recursion() {
        // [∂1∧∂2, f] = ∂1 ∧ [∂2, f] − [∂1, f] ∂2 = f_2 ∂1 − f_1 ∂2
        let f = &x(0) * &x(1);
        let r = schouten(&MultiVec::basis(3, &[0, 1]), &MultiVec::function(f.clone())).unwrap();
        let expect = &del(0).mul_poly(&f.derivative(1)) - &del(1).mul_poly(&f.derivative(0));
        assert_eq!(r, expect);
    }
}
