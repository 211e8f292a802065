use gelfand::inference::{close, FactBase, PropertyAtom};
use gelfand::linalg::{vec_ops, Matrix};
use gelfand::pair::{gsigma_element, make_diagonal_pair, make_quadratic_ext_pair};
use gelfand::scalar::{rat, ratio, Rational};
use gelfand::sl2::{decompose_operator, theta_adapt};
use gelfand::weil::{delta_b, hilbert_symbol, weil_gamma, DiagonalQuadraticForm, EighthRoot, Place};
use proptest::prelude::*;

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![
        Just(Place::Real),
        Just(Place::Complex),
        Just(Place::PAdic(2)),
        Just(Place::PAdic(3)),
        Just(Place::PAdic(5)),
        Just(Place::PAdic(7)),
    ]
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-60i64..=-1, 1i64..=60]
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hilbert_symmetric_and_bimultiplicative(a in nonzero(), b in nonzero(), c in nonzero(), v in place()) {
        let (a, b, c) = (rat(a), rat(b), rat(c));
        prop_assert_eq!(hilbert_symbol(&a, &b, v).unwrap(), hilbert_symbol(&b, &a, v).unwrap());
        let lhs = hilbert_symbol(&(&a * &b), &c, v).unwrap();
        let rhs = hilbert_symbol(&a, &c, v).unwrap() * hilbert_symbol(&b, &c, v).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(hilbert_symbol(&a, &-a.clone(), v).unwrap(), 1);
    }

    #[test]
    fn gamma_additive_and_square_invariant(
        xs in prop::collection::vec(nonzero(), 1..4),
        ys in prop::collection::vec(nonzero(), 1..4),
        s in nonzero(),
        v in place(),
    ) {
        let f = DiagonalQuadraticForm::from_integers(&xs).unwrap();
        let g = DiagonalQuadraticForm::from_integers(&ys).unwrap();
        let sum = weil_gamma(&f.direct_sum(&g), v).unwrap();
        prop_assert_eq!(sum, weil_gamma(&f, v).unwrap().mul(weil_gamma(&g, v).unwrap()));
        prop_assert_eq!(sum.pow(8), EighthRoot::one());
        let sq = rat(s * s);
        prop_assert_eq!(delta_b(&f, &sq, v).unwrap(), EighthRoot::one());
    }

    #[test]
    fn cone_partition_and_scaling(coeffs in prop::collection::vec(small_rational(), 4), lam in nonzero()) {
        let p = make_diagonal_pair::<Rational>(2).unwrap();
        let x = Matrix::from_rows(vec![coeffs[..2].to_vec(), coeffs[2..].to_vec()]).unwrap();
        let v = gsigma_element(p.family(), &x).unwrap();
        let c = p.cone_membership(&v).unwrap();
        if c.in_q {
            prop_assert!(c.in_gamma != c.in_r);
        } else {
            prop_assert!(!c.in_gamma && !c.in_r);
        }
        let q = p.cone_membership(&c.q_projection).unwrap();
        prop_assert!(q.in_q);
        if c.in_gamma {
            let scaled = vec_ops::scale(&v, &rat(lam));
            prop_assert!(p.cone_membership(&scaled).unwrap().in_gamma);
        }
    }

    #[test]
    fn descendant_identity_on_diagonal_elements(
        a in -2i64..=2, b in -2i64..=2, c in -2i64..=2, quad in any::<bool>(),
    ) {
        let p = if quad { make_quadratic_ext_pair::<Rational>(3, 2).unwrap() } else { make_diagonal_pair(3).unwrap() };
        let x = gsigma_element(p.family(), &Matrix::diagonal(&[rat(a), rat(b), rat(c)])).unwrap();
        let d = p.descendant(&x).unwrap();
        prop_assert!(d.dimension_identity_holds());
        prop_assert_eq!(p.descendant_has_family_shape(&d), Some(true));
    }

    #[test]
    fn adapted_triples_have_symmetric_weights(i in 0usize..5) {
        let p = make_diagonal_pair::<Rational>(4).unwrap();
        let mu = &gelfand::criteria::partitions(4)[i];
        let x = gsigma_element(p.family(), &gelfand::criteria::jordan_nilpotent(mu)).unwrap();
        let t = theta_adapt(&p, &x).unwrap();
        let w = decompose_operator(&p.algebra().ad(&t.h).unwrap()).unwrap();
        prop_assert_eq!(w.module_dim(), p.dim());
        for (k, m) in &w.weight_multiplicities {
            let mirror = w.weight_multiplicities.iter().find(|(j, _)| *j == -k).map(|e| e.1);
            prop_assert_eq!(mirror, Some(*m));
        }
    }

    #[test]
    fn closure_monotone_idempotent(mask in any::<u32>(), extra in any::<u32>()) {
        let pick = |m: u32| PropertyAtom::ALL.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, a)| *a).collect::<Vec<_>>();
        let small = pick(mask);
        let mut big = small.clone();
        big.extend(pick(extra));
        let cs = close(&FactBase::from_atoms(small));
        let cb = close(&FactBase::from_atoms(big));
        prop_assert!(cs.atoms().is_subset(&cb.atoms()));
        prop_assert_eq!(close(&FactBase::from_atoms(cs.atoms())).atoms(), cs.atoms());
        prop_assert!(cs.verify());
    }
}
