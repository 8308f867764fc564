//! The radial homotopy operator along the Euler field.

use super::{ext_d, Form, Poly};
use crate::error::{Error, Result};
use crate::rational::Q;

/// `H(a)` without the closedness check; satisfies `dH + Hd = id` on forms of
/// degree ≥ 1 and `Hd f = f − f(0)` on functions.
///
/// A monomial of total degree `s` in a `p`-form term is scaled by `1/(s+p)`
/// after contraction with `E = Σ x_i ∂_i`.
pub fn homotopy_raw(a: &Form) -> Form {
    let dim = a.dim();
    let p = a.degree();
    if p == 0 {
        return Form::zero(dim, 0);
    }
    let mut out = Form::zero(dim, p - 1);
    for (idx, f) in a.terms() {
        let mut scaled = Poly::zero(dim);
        for (e, c) in f.terms() {
            let s: u32 = e.iter().sum();
            scaled.add_term(e.clone(), c / Q::from_integer((s as i64 + p as i64).into()));
        }
        for (r, &i) in idx.iter().enumerate() {
            let mut rest = idx.clone();
            rest.remove(r);
            let term = &scaled * &Poly::var(dim, i);
            out.add_term(rest, if r % 2 == 0 { term } else { -&term });
        }
    }
    out
}

/// Canonical primitive of a closed form of positive degree: `d(H(a)) = a`.
pub fn homotopy_primitive(a: &Form) -> Result<Form> {
    if a.degree() == 0 {
        return Err(Error::InvalidInput("homotopy primitive of a function".into()));
    }
    let da = ext_d(a);
    if !da.is_zero() {
        return Err(Error::NotClosed { residual: da.to_string() });
    }
    Ok(homotopy_raw(a))
}
