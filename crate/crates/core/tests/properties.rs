mod common;

use common::hull;
use diffbkk::diffpoly::{parse_poly, parse_system, DiffPolynomial, JetLayout, SystemFile};
use diffbkk::mixedvol::{mixed_volume, mixed_volume_interp};
use diffbkk::polytope::{LatticePoint, LatticePolytope};
use diffbkk::ratfunc::{RationalFunction, UniPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn layout() -> JetLayout {
    JetLayout::new(&["x", "y"], 1).unwrap()
}

fn coeff() -> impl Strategy<Value = RationalFunction> {
    (prop::collection::vec(-3i64..=3, 1..=3), prop::bool::ANY).prop_map(|(c, over)| {
        let num = RationalFunction::from_poly(UniPoly::from_ints(&c));
        if over {
            // divide by t + 1
            (&num / &RationalFunction::from_poly(UniPoly::from_ints(&[1, 1]))).unwrap()
        } else {
            num
        }
    })
}

fn poly() -> impl Strategy<Value = DiffPolynomial> {
    let s = layout().s();
    prop::collection::vec((prop::collection::vec(0u32..=2, s), coeff()), 0..=4)
        .prop_map(|terms| DiffPolynomial::from_terms(&layout(), terms).unwrap())
}

fn points(s: usize, max: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0..=max, s), 1..=5)
}

fn full_polytope(s: usize, max: i64) -> impl Strategy<Value = LatticePolytope> {
    points(s, max).prop_map(|pts| hull(&pts))
}

fn sum(a: &LatticePolytope, b: &LatticePolytope) -> LatticePolytope {
    a.minkowski_sum(b).unwrap()
}

fn mv(p: &[LatticePolytope]) -> BigRational {
    mixed_volume(p).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_obeys_leibniz(p in poly(), q in poly()) {
        let lhs = (&p * &q).total_derivative();
        let (pe, qe) = (p.embed(2).unwrap(), q.embed(2).unwrap());
        let rhs = &(&p.total_derivative() * &qe) + &(&pe * &q.total_derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_commutes_with_evaluation(p in poly(), x in prop::collection::vec(prop::collection::vec(-4i64..=4, 1..=4), 2)) {
        let x: Vec<RationalFunction> = x.iter().map(|c| RationalFunction::from_poly(UniPoly::from_ints(c))).collect();
        let lhs = p.total_derivative().evaluate_at_jet(&x).unwrap();
        let rhs = p.evaluate_at_jet(&x).unwrap().derivative();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_is_additive(p in poly(), q in poly()) {
        prop_assert_eq!((&p + &q).total_derivative(), &p.total_derivative() + &q.total_derivative());
    }

    #[test]
    fn polynomial_text_round_trips(p in poly()) {
        prop_assert_eq!(parse_poly(&p.to_string(), &layout()).unwrap(), p);
    }

    #[test]
    fn system_text_round_trips(polys in prop::collection::vec(poly(), 0..=3)) {
        let file = SystemFile { layout: layout(), polys };
        prop_assert_eq!(parse_system(&file.to_text()).unwrap(), file);
    }

    #[test]
    fn polytope_json_round_trips(pts in points(3, 4)) {
        let p = hull(&pts);
        let back = LatticePolytope::from_json_str(&p.to_json().to_string()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn minkowski_sum_commutes(a in points(3, 3), b in points(3, 3)) {
        let (a, b) = (hull(&a), hull(&b));
        prop_assert_eq!(sum(&a, &b), sum(&b, &a));
    }

    #[test]
    fn dilation_is_additive_and_scales_volume(p in full_polytope(3, 3), i in 0u64..=3, j in 0u64..=3) {
        prop_assert_eq!(sum(&p.dilate(i).unwrap(), &p.dilate(j).unwrap()), p.dilate(i + j).unwrap());
        let k = BigInt::from(i + j);
        let factor = BigRational::from_integer(&k * &k * &k);
        prop_assert_eq!(p.dilate(i + j).unwrap().volume(), p.volume() * factor);
    }

    #[test]
    fn mixed_volume_of_equal_bodies_is_volume(p in full_polytope(3, 3)) {
        prop_assert_eq!(mv(&[p.clone(), p.clone(), p.clone()]), p.volume());
    }

    #[test]
    fn mixed_volume_is_symmetric(a in full_polytope(2, 4), b in full_polytope(2, 4), c in full_polytope(2, 4)) {
        prop_assert_eq!(mv(&[a.clone(), b.clone()]), mv(&[b.clone(), a.clone()]));
        let abc = mv(&[a.clone(), b.clone(), sum(&a, &c)].map(|p| lift(&p)));
        let cab = mv(&[sum(&a, &c), a.clone(), b.clone()].map(|p| lift(&p)));
        prop_assert_eq!(abc, cab);
    }

    #[test]
    fn mixed_volume_is_multilinear(a in full_polytope(2, 3), a2 in full_polytope(2, 3), b in full_polytope(2, 3)) {
        let lhs = mv(&[sum(&a, &a2), b.clone()]);
        prop_assert_eq!(lhs, mv(&[a, b.clone()]) + mv(&[a2, b]));
    }

    #[test]
    fn mixed_volume_is_monotone(a in points(2, 4), extra in prop::collection::vec(0i64..=4, 2), b in full_polytope(2, 4)) {
        let small = hull(&a);
        let mut bigger = a.clone();
        bigger.push(extra);
        let big = hull(&bigger);
        prop_assert!(mv(&[small, b.clone()]) <= mv(&[big, b]));
    }

    #[test]
    fn interpolation_agrees_with_polarization(a in full_polytope(3, 2), b in full_polytope(3, 2), c in full_polytope(3, 2)) {
        let list = [a, b, c];
        prop_assert_eq!(mixed_volume_interp(&list).unwrap().value, mv(&list));
    }

    #[test]
    fn dilated_simplex_is_coideal(d in 1u64..=4, s in 1usize..=4) {
        let coords: Vec<usize> = (0..s).collect();
        let p = LatticePolytope::coordinate_simplex(s, &coords).unwrap().dilate(d).unwrap();
        prop_assert!(p.is_coideal().unwrap());
        prop_assert_eq!(p.total_degree(), d as i64);
    }

    #[test]
    fn down_closed_hulls_are_coideal(tops in prop::collection::vec(prop::collection::vec(0i64..=3, 3), 1..=4)) {
        let mut pts = Vec::new();
        for t in &tops {
            for mask in 0..8 {
                pts.push((0..3).map(|i| if mask >> i & 1 == 1 { t[i] } else { 0 }).collect::<Vec<_>>());
            }
        }
        prop_assert!(hull(&pts).is_coideal().unwrap());
    }
}

/// Embeds a planar polytope into `Z^3` as `P x [0,1]`.
fn lift(p: &LatticePolytope) -> LatticePolytope {
    let pts = p.vertices().iter().flat_map(|v| [0, 1].map(|h| LatticePoint(vec![v.0[0], v.0[1], h])));
    LatticePolytope::hull(pts).unwrap()
}
