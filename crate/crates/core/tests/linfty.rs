use plectic::linfty::identities;
use plectic::properties::{run, Settings};

#[test]
fn bracket_identities_hold() {
    let settings = Settings { max_degree: 2, chart: None };
    for prop in identities::properties() {
        let out = run(&prop, 11, 25, &settings);
        assert!(out.passed(), "{}: {:?}", out.name, out.failure);
    }
}

use plectic::exterior::{ext_d, Form, MultiVec, Poly};
use plectic::linfty::checks::{check_jacobi, check_skew, heisenberg_check, verify_lemma31, JacobiMode};
use plectic::linfty::{ham_of_l2, l1, lk, solve_hamiltonian, u_shift, BracketConvention, HamPair, Plectic, UElement};
use plectic::rational::q;

fn x(dim: usize, i: usize) -> Poly {
    Poly::var(dim, i - 1)
}

fn dx(dim: usize, i: usize) -> Form {
    Form::unit(dim, i - 1)
}

fn del(dim: usize, i: usize) -> MultiVec {
    MultiVec::unit(dim, i - 1)
}

fn field(dim: usize, comps: &[(Poly, usize)]) -> MultiVec {
    comps.iter().fold(MultiVec::zero(dim, 1), |acc, (f, i)| &acc + &del(dim, *i).mul_poly(f))
}

fn pair(pl: &Plectic, v: MultiVec) -> HamPair {
    solve_hamiltonian(pl, &v).unwrap()
}

#[test]
fn hamiltonian_forms_of_examples() {
    let pl = Plectic::volume(3);
    let a = pair(&pl, del(3, 3));
    let want = (&dx(3, 2).mul_poly(&x(3, 1)) - &dx(3, 1).mul_poly(&x(3, 2))).scale(&q(-1, 2));
    assert_eq!(a.alpha, want);
    assert_eq!(ext_d(&a.alpha), -&Form::basis(3, &[0, 1]));

    let zero = pair(&pl, MultiVec::zero(3, 1));
    assert!(zero.alpha.is_zero());

    let sym = Plectic::volume(2);
    let b = pair(&sym, del(2, 1));
    assert_eq!(b.alpha, Form::function(-&x(2, 2)));
    assert!(solve_hamiltonian(&pl, &field(3, &[(x(3, 1), 1)])).is_err());
    assert!(solve_hamiltonian(&pl, &MultiVec::basis(3, &[0, 1, 2])).is_err());
}

#[test]
fn shifted_bidegrees() {
    let pl = Plectic::volume(3);
    let a = u_shift(2, &pair(&pl, del(3, 1)));
    assert_eq!(a.bidegree(), Some((0, 0)));
    let two = HamPair::new(&pl, Form::function(-&x(3, 3)), MultiVec::basis(3, &[0, 1])).unwrap();
    let b = u_shift(2, &two);
    assert_eq!(b.bidegree(), Some((0, 1)));
    assert_eq!(b.extract_codim(1).unwrap(), Form::function(-&x(3, 3)));
    assert!(b.extract_codim(5).unwrap().is_zero());
    let sum = a.add(&b);
    assert_eq!(sum.extract_codim(1).unwrap(), Form::function(-&x(3, 3)));
    let q4 = Plectic::volume(4);
    assert_eq!(u_shift(3, &pair(&q4, del(4, 1))).bidegree(), Some((0, 0)));
}

#[test]
fn differential_examples() {
    let pl = Plectic::volume(3);
    assert!(l1(&u_shift(2, &pair(&pl, del(3, 1)))).is_zero());
    let closed = UElement::from_part(2, dx(3, 1), 0, None).unwrap();
    assert_eq!(closed.bidegree(), Some((0, 0)));
    let f = UElement::from_part(2, Form::function(x(3, 1)), 0, None).unwrap();
    assert_eq!(l1(&f).extract_codim(0).unwrap(), dx(3, 1));
    // n = 3: x1 dx2 lies in L_(1,0)
    let g = UElement::from_part(3, dx(4, 2).mul_poly(&x(4, 1)), 0, None).unwrap();
    assert_eq!(g.bidegree(), Some((1, 0)));
    let dg = l1(&g);
    assert_eq!(dg.bidegree(), Some((0, 0)));
    assert_eq!(dg.extract_codim(0).unwrap(), Form::basis(4, &[0, 1]));
    let c = UElement::from_part(3, dx(4, 2), 0, None).unwrap();
    assert!(l1(&c).is_zero());
}

#[test]
fn binary_bracket_examples() {
    let pl = Plectic::volume(3);
    let a = u_shift(2, &pair(&pl, del(3, 1)));
    let b = u_shift(2, &pair(&pl, del(3, 2)));
    let ab = lk(&pl, &[a.clone(), b.clone()]).unwrap();
    assert_eq!(ab.extract_codim(0).unwrap(), -&dx(3, 3));
    let ba = lk(&pl, &[b.clone(), a.clone()]).unwrap();
    assert_eq!(ba.extract_codim(0).unwrap(), dx(3, 3));
    assert!(lk(&pl, &[a.clone(), a.clone()]).unwrap().is_zero());
    let f = UElement::from_part(2, Form::function(x(3, 1)), 0, None).unwrap();
    assert!(lk(&pl, &[a.clone(), f]).unwrap().is_zero());
    let bare = UElement::from_part(2, dx(3, 1), 0, None).unwrap();
    assert!(lk(&pl, &[a.clone(), bare]).is_err());

    let rep = check_skew(&pl, &BracketConvention::standard(), &[a, b]).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.checked, 2);
}

#[test]
fn hamiltonian_field_of_binary_bracket() {
    let pl = Plectic::volume(3);
    let a = pair(&pl, del(3, 1));
    let b = pair(&pl, del(3, 2));
    assert!(ham_of_l2(&pl, &a, &b).unwrap().is_zero());
    let a = pair(&pl, field(3, &[(x(3, 2), 1)]));
    assert_eq!(ham_of_l2(&pl, &a, &b).unwrap(), del(3, 1));
}

#[test]
fn jacobi_examples() {
    let pl = Plectic::volume(3);
    let conv = BracketConvention::standard();
    let f = UElement::from_part(2, Form::function(&x(3, 1) * &x(3, 2)), 1, None).unwrap();
    assert!(check_jacobi(&pl, &conv, &[f], JacobiMode::Paranoid).unwrap().holds());

    let fs = [field(3, &[(x(3, 2), 1)]), field(3, &[(x(3, 3), 2)]), field(3, &[(x(3, 1), 3)])];
    let els: Vec<UElement> = fs.iter().map(|v| u_shift(2, &pair(&pl, v.clone()))).collect();
    let rep = check_jacobi(&pl, &conv, &els[..2], JacobiMode::Paranoid).unwrap();
    assert!(rep.holds());
    assert!(rep.terms.iter().all(|t| t.contribution.is_zero()));
    for mode in [JacobiMode::Structural, JacobiMode::Paranoid] {
        let rep = check_jacobi(&pl, &conv, &els, mode).unwrap();
        assert!(rep.holds(), "{}", rep.residual);
        assert_eq!(rep.terms.len(), 3 + 3 + 1);
        assert!(rep.terms.iter().any(|t| !t.contribution.is_zero()));
    }
    let broken = BracketConvention::with_flipped([3]);
    assert!(!check_jacobi(&pl, &broken, &els, JacobiMode::Structural).unwrap().holds());
}

#[test]
fn contracted_wedge_examples() {
    let pl = Plectic::volume(3);
    let rep = verify_lemma31(&pl, &[del(3, 1), del(3, 2)]).unwrap();
    assert!(rep.lhs.is_zero() && rep.rhs.is_zero());
    let v1 = field(3, &[(x(3, 2), 1)]);
    let v2 = MultiVec::basis(3, &[1, 2]).mul_poly(&x(3, 1));
    let rep = verify_lemma31(&pl, &[v1.clone(), v2.clone()]).unwrap();
    assert!(rep.holds());
    assert_eq!(rep.terms.len(), 1);
    // e = (|v2| − 1)|v1| = 1
    assert_eq!(rep.terms[0].exponent % 2, 1);
    let br = plectic::exterior::schouten(&v2, &v1).unwrap();
    assert_eq!(rep.rhs, -&pl.contract(&br).unwrap());
    assert!(verify_lemma31(&pl, &[field(3, &[(x(3, 1), 1)]), del(3, 2)]).is_err());
}

#[test]
fn heisenberg_examples() {
    let pl = Plectic::volume(3);
    let rep = heisenberg_check(&pl, &[del(3, 1), del(3, 2), del(3, 3)]).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.subsets_checked, 3);
    let rep = heisenberg_check(&pl, &[field(3, &[(Poly::one(3), 1), (x(3, 1), 2)]), del(3, 2)]).unwrap();
    assert!(rep.passed());
    let rep = heisenberg_check(&pl, &[field(3, &[(x(3, 2), 1)]), del(3, 2)]).unwrap();
    assert!(!rep.passed());
    let (i, j, w) = rep.noncommuting.unwrap();
    assert_eq!((i, j), (1, 2));
    assert_eq!(w, del(3, 1));
}
