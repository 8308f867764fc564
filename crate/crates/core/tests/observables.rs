use plectic::observables::identities;
use plectic::properties::{run, Settings};

#[test]
fn simplicial_identities_hold() {
    for prop in identities::properties() {
        let out = run(&prop, 5, 40, &Settings::default());
        assert!(out.passed(), "{}: {:?}", out.name, out.failure);
    }
}

use std::collections::BTreeMap;

use plectic::exterior::{ext_d, homotopy_primitive, interior, Form, MultiVec, Poly};
use plectic::linfty::Plectic;
use plectic::observables::{
    check_face_identity, face_map, face_normal, horn_fill, make_obs, path_shift, AffSimplex, Horn, ObsSimplex,
};
use plectic::rational::{q, qi, Q};
use plectic::Error;

fn pt(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| qi(x)).collect()
}

fn simplex(vs: &[&[i64]]) -> AffSimplex {
    AffSimplex::new(vs.iter().map(|v| pt(v)).collect()).unwrap()
}

fn triangle() -> AffSimplex {
    simplex(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])
}

fn h_vol(dim: usize) -> Form {
    homotopy_primitive(Plectic::volume(dim).omega()).unwrap()
}

#[test]
fn canonical_observables() {
    let pl = Plectic::volume(3);
    let seg = simplex(&[&[0, 0, 0], &[1, 0, 0]]);
    let x = make_obs(&pl, seg.clone(), &[pt(&[0, 0, 2])]).unwrap();
    assert_eq!(x.generators(), &[pt(&[0, 0, 1])]);
    assert_eq!(x.sign(), 1);
    let x12 = Form::basis(3, &[0, 1]);
    assert_eq!(x.alpha(), &-&homotopy_primitive(&x12).unwrap());
    let want = (&Form::unit(3, 1).mul_poly(&Poly::var(3, 0)) - &Form::unit(3, 0).mul_poly(&Poly::var(3, 1))).scale(&q(-1, 2));
    assert_eq!(x.alpha(), &want);

    let top = make_obs(&pl, triangle(), &[]).unwrap();
    assert!(top.generators().is_empty());
    assert_eq!(top.alpha(), &h_vol(3));
    assert_eq!(ext_d(top.alpha()), *pl.omega());

    // the orientation of (0,0,−3) is kept in the sign
    let y = make_obs(&pl, seg.clone(), &[pt(&[0, 0, -3])]).unwrap();
    assert_eq!(y.generators(), &[pt(&[0, 0, 1])]);
    assert_eq!(y.sign(), -1);
    assert_eq!(y.alpha(), &-x.alpha());

    assert!(make_obs(&pl, seg.clone(), &[]).is_err());
    assert!(make_obs(&pl, seg, &[pt(&[0, 1])]).is_err());
    assert!(AffSimplex::new(vec![pt(&[0, 0, 0]), pt(&[1, 1, 1]), pt(&[2, 2, 2])]).is_err());
}

#[test]
fn gradient_normals() {
    assert_eq!(face_normal(2, 1).unwrap(), pt(&[1, 0]));
    assert_eq!(face_normal(2, 0).unwrap(), pt(&[-1, -1]));
    assert_eq!(face_normal(1, 1).unwrap(), pt(&[1]));
    assert!(face_normal(2, 3).is_err());
    assert!(face_normal(0, 0).is_err());
    // an isometric simplex pushes the normals forward unchanged
    assert_eq!(triangle().normal(0).unwrap(), pt(&[-1, -1, 0]));
    // stretched edges: the normal stays orthogonal to the opposite face
    let s = simplex(&[&[0, 0, 0], &[2, 0, 0], &[1, 1, 0]]);
    let n0 = s.normal(0).unwrap();
    let edge: Vec<Q> = pt(&[-1, 1, 0]);
    assert_eq!(n0.iter().zip(&edge).fold(qi(0), |a, (x, y)| a + x * y), qi(0));
}

#[test]
fn face_maps_of_examples() {
    let pl = Plectic::volume(3);
    let top = make_obs(&pl, triangle(), &[]).unwrap();
    let (f2, eta) = face_map(&pl, &top, 2).unwrap();
    assert_eq!(f2.simplex(), &simplex(&[&[0, 0, 0], &[1, 0, 0]]));
    assert_eq!(f2.generators(), &[pt(&[0, 1, 0])]);
    // dη = −(−1)^2 ι_ṽ ω
    let v = MultiVec::constant_vector(&pt(&[0, 1, 0]));
    assert_eq!(ext_d(&eta), -&interior(&v, pl.omega()).unwrap());
    assert_eq!(ext_d(f2.alpha()), ext_d(&eta));

    let (p, eta0) = face_map(&pl, &f2, 0).unwrap();
    assert_eq!(p.dim(), 0);
    assert_eq!(p.generators().len(), 2);
    let v0 = MultiVec::constant_vector(&f2.face_vector(0).unwrap());
    assert_eq!(ext_d(&eta0), -&interior(&v0, &ext_d(f2.alpha())).unwrap());

    // the canonical face ignores how η was primitivized
    let shifted = &eta + &Form::unit(3, 2);
    assert_eq!(ext_d(&shifted), ext_d(f2.alpha()));
    assert_eq!(face_map(&pl, &top, 2).unwrap().0, f2);
}

#[test]
fn face_identity_examples() {
    let pl = Plectic::volume(3);
    let top = make_obs(&pl, triangle(), &[]).unwrap();
    let r12 = check_face_identity(&pl, &top, 1, 2).unwrap();
    assert!(r12.passed());
    assert_eq!(r12.lambda, Some(qi(1)));
    assert_eq!(r12.lambda_pushed, Some(qi(1)));
    let r01 = check_face_identity(&pl, &top, 0, 1).unwrap();
    assert!(r01.passed());
    assert_eq!(r01.lambda_pushed, Some(qi(2)));
    // the induced-metric normal of the hypotenuse is (1,−1)/2
    assert_eq!(r01.lambda, Some(qi(1)));
    assert!(check_face_identity(&pl, &top, 1, 1).is_err());

    // a generator inside the simplex plane gives the zero observable all the way down
    let pl4 = Plectic::volume(4);
    let tri4 = simplex(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let flat = make_obs(&pl4, tri4, &[pt(&[1, 1, 0, 0])]).unwrap();
    assert!(!flat.alpha().is_zero());
    let rep = check_face_identity(&pl4, &flat, 0, 2).unwrap();
    assert_eq!(rep.left.simplex(), rep.right.simplex());
    assert!(rep.left.alpha().is_zero() && rep.right.alpha().is_zero());
    assert_eq!(rep.left.alpha().degree(), 0);
    assert_eq!(rep.left, rep.right);
}

#[test]
fn horn_examples() {
    let pl = Plectic::volume(3);
    let top = make_obs(&pl, triangle(), &[]).unwrap();
    let h = Horn::of_simplex(&pl, &top, 0).unwrap();
    assert_eq!(h.faces().len(), 2);
    let filler = horn_fill(&pl, &h).unwrap();
    assert_eq!(filler, top);
    assert_eq!(filler.alpha(), &h_vol(3));

    // Λ¹₀: only the vertex face 1 is given
    let seg = make_obs(&pl, simplex(&[&[0, 0, 0], &[1, 0, 0]]), &[pt(&[0, 0, 1])]).unwrap();
    let h1 = Horn::of_simplex(&pl, &seg, 0).unwrap();
    let f1 = horn_fill(&pl, &h1).unwrap();
    assert_eq!(f1.dim(), 1);
    assert_eq!(face_map(&pl, &f1, 1).unwrap().0, h1.faces()[&1]);

    // face 2 built with a different auxiliary field u
    let pl4 = Plectic::volume(4);
    let tri = simplex(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let x = make_obs(&pl4, tri.clone(), &[pt(&[0, 0, 1, 0])]).unwrap();
    let good = Horn::of_simplex(&pl4, &x, 0).unwrap();
    assert_eq!(horn_fill(&pl4, &good).unwrap(), x);
    let mut faces: BTreeMap<usize, ObsSimplex> = good.faces().clone();
    let bad2 = make_obs(&pl4, tri.face(2), &[pt(&[0, 0, 0, 1]), pt(&[0, 1, 0, 0])]).unwrap();
    faces.insert(2, bad2);
    let bad = Horn::new(2, 0, tri.vertices().to_vec(), faces).unwrap();
    match horn_fill(&pl4, &bad) {
        Err(Error::IncompatibleHorn(msg)) => assert!(msg.contains("faces 1 and 2"), "{msg}"),
        other => panic!("expected an incompatible horn, got {other:?}"),
    }
    assert!(Horn::new(2, 3, tri.vertices().to_vec(), BTreeMap::new()).is_err());

    // a generator along edge 2: the faces fix only the plane of the triangle
    let inplane = make_obs(&pl4, tri.clone(), &[pt(&[1, 0, 0, 0])]).unwrap();
    for r in 0..=2 {
        let h = Horn::of_simplex(&pl4, &inplane, r).unwrap();
        let f = horn_fill(&pl4, &h).unwrap();
        for (&k, face) in h.faces() {
            assert_eq!(&face_map(&pl4, &f, k).unwrap().0, face);
        }
    }
    // a zero-padded dependent face pins the shared span
    let seg = make_obs(&pl, simplex(&[&[0, 0, 0], &[0, 2, 0]]), &[pt(&[0, 1, 0])]).unwrap();
    let v = face_map(&pl, &seg, 0).unwrap().0;
    assert_eq!(v.generators(), &[pt(&[0, 0, 0]), pt(&[0, 1, 0])]);
    assert!(v.alpha().is_zero());
    let f = horn_fill(&pl, &Horn::of_simplex(&pl, &seg, 1).unwrap()).unwrap();
    assert_eq!(face_map(&pl, &f, 0).unwrap().0, v);
}

#[test]
fn path_shift_examples() {
    let pl = Plectic::volume(3);
    let seg = make_obs(&pl, simplex(&[&[0, 0, 0], &[1, 0, 0]]), &[pt(&[0, 0, 1])]).unwrap();
    let p = path_shift(&pl, &seg).unwrap();
    assert!(p.holds());
    assert_eq!(p.direction, pt(&[1, 0, 0]));
    assert_eq!(p.start.face.simplex(), &simplex(&[&[0, 0, 0]]));
    assert_eq!(p.end.face.simplex(), &simplex(&[&[1, 0, 0]]));

    let along = make_obs(&pl, simplex(&[&[0, 0, 0], &[1, 0, 0]]), &[pt(&[1, 0, 0])]).unwrap();
    let p = path_shift(&pl, &along).unwrap();
    assert!(p.holds());
    assert!(p.endpoint_forms_equal());
    assert!(p.start.face.alpha().is_zero());

    let top = make_obs(&pl, triangle(), &[]).unwrap();
    let p = path_shift(&pl, &top).unwrap();
    assert!(p.holds());
    assert_eq!(p.start.face.dim(), 1);
    assert_eq!(p.end.face.dim(), 1);
}
