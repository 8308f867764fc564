use num_bigint::BigInt;
use proptest::prelude::*;

use plectic::homology::smith::invariant_factors;
use plectic::homology::{
    adiabatic_cochain, boundary, build_complex, coboundary_apply, cohomology, homology, identities, Coefficients,
};
use plectic::exterior::homotopy_primitive;
use plectic::linfty::Plectic;
use plectic::quantize::integrate;
use plectic::observables::{face_map, make_obs, AffSimplex, ObsSimplex};
use plectic::properties::{run, Settings};
use plectic::rational::{q, qi, Q};

#[test]
fn chain_complex_identities() {
    for prop in identities::properties() {
        let out = run(&prop, 17, 30, &Settings::default());
        assert!(out.passed(), "{}: {:?}", out.name, out.failure);
    }
}

fn pt(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| qi(x)).collect()
}

fn top(pl: &Plectic, vs: &[&[i64]]) -> ObsSimplex {
    make_obs(pl, AffSimplex::new(vs.iter().map(|v| pt(v)).collect()).unwrap(), &[]).unwrap()
}

fn triangle(pl: &Plectic) -> ObsSimplex {
    top(pl, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn closures_of_seeds() {
    let pl = Plectic::volume(3);
    let cx = build_complex(&pl, &[triangle(&pl)]).unwrap();
    assert_eq!(cx.sizes(), vec![3, 3, 1]);

    let other = top(&pl, &[&[1, 0, 0], &[1, 1, 0], &[0, 1, 0]]);
    let (e1, _) = face_map(&pl, &triangle(&pl), 0).unwrap();
    let (e2, _) = face_map(&pl, &other, 1).unwrap();
    assert_eq!(e1, e2);
    let cx = build_complex(&pl, &[triangle(&pl), other]).unwrap();
    assert_eq!(cx.sizes(), vec![4, 5, 2]);
    assert_eq!(homology(&cx).unwrap().betti, vec![1, 0, 0]);

    let empty = build_complex(&pl, &[]).unwrap();
    assert!(empty.is_empty());
    assert!(homology(&empty).unwrap().betti.iter().all(|&b| b == 0));
}

#[test]
fn boundary_examples() {
    let pl = Plectic::volume(3);
    let seg = make_obs(&pl, AffSimplex::new(vec![pt(&[0, 0, 0]), pt(&[1, 0, 0])]).unwrap(), &[pt(&[0, 0, 1])]).unwrap();
    let cx = build_complex(&pl, std::slice::from_ref(&seg)).unwrap();
    let d1 = boundary(&cx, 1).unwrap();
    let d0 = cx.index_of(&face_map(&pl, &seg, 0).unwrap().0).unwrap().1;
    let d1i = cx.index_of(&face_map(&pl, &seg, 1).unwrap().0).unwrap().1;
    assert_eq!(d1.entries[d0][0], BigInt::from(1));
    assert_eq!(d1.entries[d1i][0], BigInt::from(-1));
    // no 2-cells: ∂_2 is 2×0
    let d2 = boundary(&cx, 2).unwrap();
    assert_eq!((d2.rows, d2.cols), (1, 0));
    assert!(boundary(&cx, 3).is_err());

    let cx = build_complex(&pl, &[triangle(&pl)]).unwrap();
    assert!(boundary(&cx, 1).unwrap().mul(&boundary(&cx, 2).unwrap()).is_zero());
}

#[test]
fn betti_numbers() {
    let pl = Plectic::volume(3);
    let t = triangle(&pl);
    let disk = build_complex(&pl, std::slice::from_ref(&t)).unwrap();
    let h = homology(&disk).unwrap();
    assert_eq!(h.betti, vec![1, 0, 0]);
    assert!(h.torsion.iter().all(|t| t.is_empty()));

    let edges: Vec<ObsSimplex> = (0..3).map(|i| face_map(&pl, &t, i).unwrap().0).collect();
    let circle = build_complex(&pl, &edges).unwrap();
    assert_eq!(circle.sizes(), vec![3, 3, 0]);
    assert_eq!(homology(&circle).unwrap().betti, vec![1, 1]);
    assert_eq!(cohomology(&circle, Coefficients::Q).unwrap().betti, vec![1, 1]);
    assert_eq!(cohomology(&circle, Coefficients::Z).unwrap().betti, vec![1, 1]);
}

#[test]
fn coboundary_examples() {
    let pl = Plectic::volume(3);
    let cx = build_complex(&pl, &[triangle(&pl)]).unwrap();
    let c = coboundary_apply(&cx, 0, &[q(5, 2), q(5, 2), q(5, 2)]).unwrap();
    assert!(c.iter().all(|x| *x == qi(0)));

    let v = cx.index_of(&face_map(&pl, &face_map(&pl, &triangle(&pl), 1).unwrap().0, 1).unwrap().0).unwrap().1;
    let mut f = vec![qi(0); 3];
    f[v] = qi(1);
    let df = coboundary_apply(&cx, 0, &f).unwrap();
    let support: Vec<&Q> = df.iter().filter(|x| **x != qi(0)).collect();
    assert_eq!(support.len(), 2);
    assert!(support.iter().all(|x| **x == qi(1) || **x == qi(-1)));
    assert!(coboundary_apply(&cx, 1, &df).unwrap().iter().all(|x| *x == qi(0)));
    assert!(coboundary_apply(&cx, 0, &[qi(1)]).is_err());
}

#[test]
fn adiabatic_examples() {
    let pl = Plectic::volume(3);
    // θ = (x1 dx2dx3 − x2 dx1dx3 + x3 dx1dx2)/3 restricts to x3 dx1dx2 / 3 on a horizontal plane
    let cx = build_complex(&pl, &[triangle(&pl)]).unwrap();
    assert_eq!(adiabatic_cochain(&cx).unwrap(), vec![qi(0)]);
    let lifted = top(&pl, &[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1]]);
    let cx = build_complex(&pl, &[lifted]).unwrap();
    assert_eq!(adiabatic_cochain(&cx).unwrap(), vec![q(1, 6)]);
    let swapped = top(&pl, &[&[1, 0, 1], &[0, 0, 1], &[0, 1, 1]]);
    let cx = build_complex(&pl, &[swapped]).unwrap();
    assert_eq!(adiabatic_cochain(&cx).unwrap(), vec![q(-1, 6)]);

    let seg = make_obs(&pl, AffSimplex::new(vec![pt(&[0, 0, 0]), pt(&[1, 0, 0])]).unwrap(), &[pt(&[0, 0, 1])]).unwrap();
    assert!(adiabatic_cochain(&build_complex(&pl, &[seg]).unwrap()).is_err());

    // a flat triangle carries no observable; its integral vanishes
    let theta = homotopy_primitive(pl.omega()).unwrap();
    let flat = AffSimplex::flat(vec![pt(&[1, 1, 1]), pt(&[2, 3, 4]), pt(&[3, 5, 7])]).unwrap();
    assert_eq!(integrate(&theta, &flat).unwrap(), qi(0));
    assert!(make_obs(&pl, flat, &[]).is_err());
}

/// Oracle: `d_1 ⋯ d_i` is the gcd of the `i × i` minors.
fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<BigInt> {
    use num_integer::Integer;
    use plectic::exterior::combinations;
    use plectic::linalg::det;
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    for i in 1..=rows.min(cols) {
        let mut g = BigInt::from(0);
        for rs in combinations(rows, i) {
            for cs in combinations(cols, i) {
                let minor: Vec<Vec<Q>> = rs.iter().map(|&r| cs.iter().map(|&c| qi(m[r][c])).collect()).collect();
                g = g.gcd(&det(&minor).to_integer());
            }
        }
        if g == BigInt::from(0) {
            break;
        }
        out.push(g);
    }
    out
}

proptest! {
    #[test]
    fn smith_matches_minors(rows in 1usize..4, cols in 1usize..4, seed in proptest::collection::vec(-6i64..=6, 16)) {
        let m: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * 4 + c]).collect()).collect();
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let d = invariant_factors(&big);
        let dd = determinantal_divisors(&m);
        prop_assert_eq!(d.len(), dd.len());
        let mut prod = BigInt::from(1);
        for (i, f) in d.iter().enumerate() {
            prod *= f;
            prop_assert_eq!(&prod, &dd[i]);
            if i > 0 {
                prop_assert_eq!(f % &d[i - 1], BigInt::from(0));
            }
        }
    }
}

#[test]
fn smith_example() {
    let m: Vec<Vec<BigInt>> = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    assert_eq!(invariant_factors(&m), ints(&[2, 6, 12]));
}
