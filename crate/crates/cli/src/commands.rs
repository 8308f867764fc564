use serde_json::{json, Value};

use plectic::exterior::{ext_d, interior, MultiVec};
use plectic::homology::{boundary, build_complex_with_solids, cohomology, homology, adiabatic_cochain, Coefficients, ObsComplex};
use plectic::json::{graded_json, obs_simplex_json, point_json, q_json};
use plectic::linfty::checks::{check_jacobi, check_skew, heisenberg_check, verify_lemma31, JacobiMode};
use plectic::linfty::{solve_hamiltonian, Part, UElement};
use plectic::observables::{check_face_identity, face_map, horn_fill};
use plectic::quantize::{cocycle_associativity, inner_product, integrate, kernel_from_theta, prequantum_check, stokes_check, Phase, PhaseSum, Scale};
use plectic::{Error, Result};

use crate::problem::Problem;
use crate::report::Report;

pub struct Options {
    pub verbose: bool,
    pub paranoid: bool,
}

pub fn uelement_json(x: &UElement) -> Value {
    let parts: Vec<Value> = x.parts().map(part_json).collect();
    json!({"parts": parts})
}

fn part_json(p: &Part) -> Value {
    let mut v = json!({"upow": p.upow, "form": graded_json(&p.form)});
    if let Some(h) = &p.ham {
        v["ham"] = graded_json(h);
    }
    v
}

pub fn phase_json(p: &Phase) -> Value {
    json!({"r": q_json(p.turns()), "residual": q_json(p.residual()), "text": p.to_string()})
}

pub fn phase_sum_json(s: &PhaseSum) -> Value {
    let terms: Vec<Value> = s.terms().map(|(p, c)| json!({"phase": phase_json(p), "coef": q_json(c)})).collect();
    let mut v = json!({"terms": terms, "text": s.to_string()});
    match s.exact_parts() {
        Some((re, im)) => {
            v["re"] = q_json(&re);
            v["im"] = q_json(&im);
        }
        None => {
            let (re, im) = s.approx();
            v["approx"] = json!([re, im]);
        }
    }
    v
}

/// `l_m` Jacobi identity on the first `m` arguments.
pub fn jacobi(p: &Problem, m: Option<usize>, opts: &Options) -> Result<Report> {
    let pl = p.plectic()?;
    let args = p.args()?;
    let m = m.or(p.param_usize("m")?).unwrap_or(args.len());
    if m == 0 || m > args.len() {
        return Err(Error::InvalidInput(format!("--m {m} needs between 1 and {} arguments", args.len())));
    }
    let conv = p.convention()?;
    let mode = if opts.paranoid { JacobiMode::Paranoid } else { JacobiMode::Structural };
    let rep = check_jacobi(pl, &conv, &args[..m], mode)?;
    let mut r = Report::new("jacobi");
    r.value("m", m).value("mode", format!("{mode:?}").to_lowercase()).value("residual", rep.residual.to_string());
    r.value("flipped", conv.flipped().collect::<Vec<_>>());
    if !rep.holds() {
        r.fail(json!({"residual": uelement_json(&rep.residual)}));
    }
    if opts.verbose || !rep.holds() {
        for t in rep.terms.iter().filter(|t| opts.verbose || !t.contribution.is_zero()) {
            r.ledger.push(json!({
                "i": t.i,
                "j": t.j,
                "unshuffle": t.unshuffle.to_string(),
                "sign": t.sign,
                "evaluated": t.evaluated,
                "contribution": t.contribution.to_string(),
            }));
        }
    }
    Ok(r)
}

pub fn skew(p: &Problem, _opts: &Options) -> Result<Report> {
    let pl = p.plectic()?;
    let args = p.args()?;
    let rep = check_skew(pl, &p.convention()?, &args)?;
    let mut r = Report::new("skew");
    r.value("k", rep.k).value("permutations", rep.checked);
    if let Some(v) = &rep.violation {
        r.fail(json!({
            "permutation": v.permutation.to_string(),
            "permuted": v.permuted.to_string(),
            "expected": v.expected.to_string(),
        }));
    }
    Ok(r)
}

pub fn lemma31(p: &Problem, m: Option<usize>, opts: &Options) -> Result<Report> {
    let pl = p.plectic()?;
    let fields = p.fields()?;
    let m = m.or(p.param_usize("m")?).unwrap_or(fields.len());
    if m < 2 || m > fields.len() {
        return Err(Error::InvalidInput(format!("--m {m} needs between 2 and {} fields", fields.len())));
    }
    let rep = verify_lemma31(pl, &fields[..m])?;
    let mut r = Report::new("lemma31");
    r.value("m", m).value("lhs", rep.lhs.to_string()).value("rhs", rep.rhs.to_string());
    if !rep.holds() {
        r.fail(json!({"difference": (&rep.lhs - &rep.rhs).to_string()}));
    }
    if opts.verbose || !rep.holds() {
        for t in &rep.terms {
            r.ledger.push(json!({"i": t.i, "j": t.j, "sign_exponent": t.exponent, "value": t.value.to_string()}));
        }
    }
    Ok(r)
}

pub fn heisenberg(p: &Problem, _opts: &Options) -> Result<Report> {
    let pl = p.plectic()?;
    let rep = heisenberg_check(pl, &p.fields()?)?;
    let mut r = Report::new("heisenberg");
    r.value("subsets_checked", rep.subsets_checked);
    if let Some((i, j, w)) = &rep.noncommuting {
        r.fail(json!({"pair": [i, j], "bracket": format!("[v{j}, v{i}] = {w}"), "field": graded_json(w)}));
    }
    if let Some((subset, d)) = &rep.not_closed {
        r.fail(json!({"subset": subset, "d_contraction": d.to_string()}));
    }
    Ok(r)
}

pub fn solve_ham(p: &Problem, _opts: &Options) -> Result<Report> {
    let pl = p.plectic()?;
    let mut r = Report::new("solve-ham");
    let mut out = Vec::new();
    for (i, v) in p.fields()?.iter().enumerate() {
        match solve_hamiltonian(pl, v) {
            Ok(pair) => {
                let check = &ext_d(&pair.alpha) + &pl.contract(v)?;
                if !check.is_zero() {
                    r.fail(json!({"field": i, "residual": check.to_string()}));
                }
                out.push(json!({"field": v.to_string(), "alpha": pair.alpha.to_string(), "form": graded_json(&pair.alpha)}));
            }
            Err(e @ Error::NotHamiltonian(_)) => {
                r.fail(json!({"field": i, "reason": e.to_string()}));
                out.push(json!({"field": v.to_string(), "alpha": Value::Null}));
            }
            Err(e) => return Err(e),
        }
    }
    r.value("pairs", out);
    Ok(r)
}

pub fn face(p: &Problem, _opts: &Options) -> Result<Report> {
    let pl = p.plectic()?;
    let only = p.param_usize("face")?;
    let mut r = Report::new("face");
    let mut out = Vec::new();
    for (s, x) in p.simplices()?.iter().enumerate() {
        let k = x.dim();
        if k == 0 {
            return Err(Error::InvalidInput(format!("simplex {s} is a vertex and has no faces")));
        }
        for i in (0..=k).filter(|&i| only.is_none_or(|o| o == i)) {
            let (f, eta) = face_map(pl, x, i)?;
            let v = x.face_vector(i)?;
            let c = interior(&MultiVec::constant_vector(&v), &ext_d(x.alpha()))?;
            let want = if i % 2 == 0 { -&c } else { c };
            if ext_d(&eta) != want {
                r.fail(json!({"simplex": s, "face": i, "d_eta": ext_d(&eta).to_string(), "expected": want.to_string()}));
            }
            out.push(json!({"simplex": s, "face": i, "normal": point_json(&v), "eta": eta.to_string(), "result": obs_simplex_json(&f)}));
        }
    }
    r.value("faces", out);
    Ok(r)
}

pub fn faces_check(p: &Problem, opts: &Options) -> Result<Report> {
    let pl = p.plectic()?;
    let mut r = Report::new("faces-check");
    let mut checked = 0;
    for (s, x) in p.simplices()?.iter().enumerate() {
        let k = x.dim();
        for j in 1..=k {
            for i in 0..j {
                if k < 2 {
                    continue;
                }
                let rep = check_face_identity(pl, x, i, j)?;
                checked += 1;
                let lambda = |l: &Option<plectic::Q>| l.as_ref().map_or(Value::Null, q_json);
                if opts.verbose {
                    r.ledger.push(json!({"simplex": s, "i": i, "j": j, "lambda": lambda(&rep.lambda), "lambda_pushed": lambda(&rep.lambda_pushed)}));
                }
                if !rep.passed() {
                    r.fail(json!({
                        "simplex": s,
                        "i": i,
                        "j": j,
                        "left": rep.left.to_string(),
                        "right": rep.right.to_string(),
                        "lambda": lambda(&rep.lambda),
                    }));
                }
            }
        }
    }
    r.value("identities_checked", checked);
    Ok(r)
}

pub fn horn_fill_cmd(p: &Problem, _opts: &Options) -> Result<Report> {
    let pl = p.plectic()?;
    let h = p.horn()?;
    let mut r = Report::new("horn-fill");
    r.value("horn", format!("Λ^{}_{}", h.m(), h.missing()));
    match horn_fill(pl, &h) {
        Ok(f) => {
            r.value("filler", obs_simplex_json(&f));
        }
        Err(Error::IncompatibleHorn(msg)) => r.fail(json!({"incompatible": msg})),
        Err(e) => return Err(e),
    }
    Ok(r)
}

fn complex(p: &Problem) -> Result<ObsComplex> {
    let (seeds, solids) = p.complex_data()?;
    build_complex_with_solids(p.plectic()?, &seeds, &solids)
}

pub fn homology_cmd(p: &Problem, _opts: &Options) -> Result<Report> {
    let cx = complex(p)?;
    let mut r = Report::new("homology");
    r.value("strata", cx.sizes());
    let n = cx.plectic().n();
    for k in 2..=n {
        let prod = boundary(&cx, k - 1)?.mul(&boundary(&cx, k)?);
        if !prod.is_zero() {
            r.fail(json!({"boundary_squared_nonzero_at": k, "matrix": prod.to_string()}));
        }
    }
    let h = homology(&cx)?;
    let torsion: Vec<Vec<String>> = h.torsion.iter().map(|t| t.iter().map(|x| x.to_string()).collect()).collect();
    r.value("betti", h.betti.clone()).value("torsion", json!(torsion));
    let hq = cohomology(&cx, Coefficients::Q)?;
    r.value("cohomology_betti_q", hq.betti);
    Ok(r)
}

pub fn adiabatic(p: &Problem, _opts: &Options) -> Result<Report> {
    let cx = complex(p)?;
    let values = adiabatic_cochain(&cx)?;
    let mut r = Report::new("adiabatic");
    r.value("level", cx.plectic().n()).value("cochain", values.iter().map(q_json).collect::<Vec<_>>());
    Ok(r)
}

pub fn integrate_cmd(p: &Problem, _opts: &Options) -> Result<Report> {
    let mut r = Report::new("integrate");
    let values = p.integrands("integrals")?.iter().map(|(a, s)| integrate(a, s).map(|v| q_json(&v))).collect::<Result<Vec<_>>>()?;
    r.value("integrals", values);
    Ok(r)
}

pub fn stokes(p: &Problem, opts: &Options) -> Result<Report> {
    let mut r = Report::new("stokes");
    let items = p.integrands("stokes")?;
    for (t, (a, s)) in items.iter().enumerate() {
        let rep = stokes_check(a, s)?;
        if opts.verbose {
            r.ledger.push(json!({"index": t, "boundary": q_json(&rep.boundary), "interior": q_json(&rep.interior)}));
        }
        if !rep.holds() {
            r.fail(json!({
                "index": t,
                "boundary": q_json(&rep.boundary),
                "interior": q_json(&rep.interior),
                "boundary_terms": rep.boundary_terms.iter().map(q_json).collect::<Vec<_>>(),
            }));
        }
    }
    r.value("checked", items.len());
    Ok(r)
}

fn scale_of(p: &Problem, flag: Option<&Scale>, key: &str) -> Result<Scale> {
    match flag {
        Some(s) => Ok(s.clone()),
        None => p.param_scale(key)?.ok_or_else(|| Error::InvalidInput(format!("no scale: pass a flag or set params.{key}"))),
    }
}

pub fn prequantum(p: &Problem, scale: Option<&Scale>, _opts: &Options) -> Result<Report> {
    let pl = p.plectic()?;
    let scale = scale_of(p, scale, "scale")?;
    let rep = prequantum_check(pl, &p.cycles()?, &scale)?;
    let mut r = Report::new("prequantum");
    r.value("scale", scale.to_string());
    let cycles: Vec<Value> = rep
        .cycles
        .iter()
        .map(|c| json!({"closed": c.closed, "integral": q_json(&c.integral), "multiple": q_json(&c.multiple), "residual": q_json(&c.residual), "passed": c.passed}))
        .collect();
    r.value("cycles", cycles);
    if let Some((i, m)) = rep.witness() {
        let c = &rep.cycles[i];
        r.fail(json!({"cycle": i, "integral": q_json(&c.integral), "multiple_of_2pi": q_json(m), "residual": q_json(&c.residual)}));
    }
    Ok(r)
}

pub fn gerbe_assoc(p: &Problem, scale: Option<&Scale>, _opts: &Options) -> Result<Report> {
    let pl = p.plectic()?;
    let scale = scale_of(p, scale, "scale")?;
    let theta = p.theta()?;
    let mut r = Report::new("gerbe-assoc");
    r.value("scale", scale.to_string());
    let mut out = Vec::new();
    for (t, s) in p.tetrahedra()?.iter().enumerate() {
        let rep = cocycle_associativity(pl, &theta, s, &scale)?;
        out.push(json!({
            "product": rep.product.to_string(),
            "expected": rep.expected.to_string(),
            "defect": q_json(&rep.defect),
            "trivial": rep.is_trivial(),
            "faces": rep.faces.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        }));
        if !rep.stokes_holds() {
            r.fail(json!({"tetrahedron": t, "product": rep.product.to_string(), "expected": rep.expected.to_string()}));
        }
    }
    r.value("tetrahedra", out);
    Ok(r)
}

pub fn inner_product_cmd(p: &Problem, scale: Option<&Scale>, _opts: &Options) -> Result<Report> {
    let cx = complex(p)?;
    let scale = scale_of(p, scale, "kernel_scale")?;
    let (fin, ini) = p.states(&cx.sizes())?;
    if fin.level != ini.level {
        return Err(Error::InvalidInput(format!("states at levels {} and {}", fin.level, ini.level)));
    }
    let kernel = kernel_from_theta(&cx, fin.level, &scale)?;
    let sum = inner_product(&cx, &fin, &ini, &kernel)?;
    let mut r = Report::new("inner-product");
    r.value("level", fin.level)
        .value("kernel_scale", scale.to_string())
        .value("kernel", kernel.values.iter().map(phase_json).collect::<Vec<_>>())
        .value("kernel_cocycle", kernel.cocycle)
        .value("result", phase_sum_json(&sum));
    if !kernel.cocycle {
        r.value("warning", "the kernel is not a cocycle at this scale");
    }
    Ok(r)
}
