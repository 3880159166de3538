mod common;

use canweight::*;
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn small_support(dim: usize, max: i64) -> impl Strategy<Value = PolynomialSupport> {
    prop::collection::btree_set(prop::collection::vec(0..=max, dim), 1..6).prop_map(move |rows| {
        let r: Vec<&[i64]> = rows.iter().map(|x| x.as_slice()).collect();
        PolynomialSupport::from_exponents(dim, &r).unwrap()
    })
}

fn facets_of(f: &PolynomialSupport) -> Vec<(Vec<i64>, i64)> {
    let np = build_newton(f).unwrap();
    let mut v: Vec<(Vec<i64>, i64)> = np.facets().iter().map(|fc| (fc.normal.coords().to_vec(), fc.offset)).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Newton membership against a brute-force hull: all supporting
    // hyperplanes through affinely independent points and directions.
    #[test]
    fn membership_matches_brute_force_hull(f in small_support(3, 4), pts in prop::collection::vec(prop::collection::vec(0i64..=6, 3), 20)) {
        let np = build_newton(&f).unwrap();
        let ineq = brute_newton_inequalities(&f);
        for a in &pts {
            let want = ineq.iter().all(|(b, c)| dot(b, a) >= *c);
            prop_assert_eq!(np.contains(a).unwrap(), want, "point {:?}", a);
        }
        // every computed facet is among the brute-force supporting hyperplanes
        for (n, c) in facets_of(&f) {
            prop_assert!(ineq.contains(&(n.clone(), c)), "facet {:?} >= {}", n, c);
        }
    }

    // Membership against the definition over all primitive q in a box whose
    // bound covers every facet normal.
    #[test]
    fn membership_matches_weight_definition(f in small_support(3, 3), pts in prop::collection::vec(prop::collection::vec(0i64..=5, 3), 12)) {
        let np = build_newton(&f).unwrap();
        let bound = np.facets().iter().flat_map(|fc| fc.normal.coords().iter().copied()).max().unwrap_or(1).max(1);
        let mut qs = Vec::new();
        for_box(3, 0, bound, |q| {
            if content(q) == 1 {
                qs.push(q.to_vec());
            }
        });
        for a in &pts {
            let want = qs.iter().all(|q| dot(q, a) >= q_of_f(q, &f));
            prop_assert_eq!(np.contains(a).unwrap(), want, "point {:?} bound {}", a, bound);
        }
    }

    #[test]
    fn support_order_independent(f in small_support(4, 4), seed in any::<u64>()) {
        let mut rows: Vec<Vec<i64>> = f.support().iter().map(|a| a.coords().to_vec()).collect();
        rows.shuffle(&mut rng(seed));
        let exps: Vec<ExponentVector> = rows.into_iter().map(|r| ExponentVector::new(r).unwrap()).collect();
        let g = PolynomialSupport::new(4, exps).unwrap();
        prop_assert_eq!(build_newton(&f).unwrap(), build_newton(&g).unwrap());
    }
}

#[test]
fn position_agrees_with_essential_cone() {
    let mut r = rng(11);
    for case in 0..150 {
        let dim = 2 + case % 3;
        let f = if case % 2 == 0 {
            let terms = r.gen_range(1..=5);
            random_support(&mut r, dim, 6, terms)
        } else {
            let extra = r.gen_range(0..=3);
            random_convenient_support(&mut r, dim, 6, extra)
        };
        let pos = position_of_one(&build_newton(&f).unwrap()).unwrap();
        let c1 = essential_cone(&f).unwrap();
        assert_eq!(pos == Position::Interior, c1.is_zero(), "{}", serialize_polynomial(&f));
        let ones = vec![1; dim];
        // the strict witness: a ray of some linearity region
        let mut witness = false;
        for a in f.minimal_exponents() {
            let mut forms = c1.hrep().to_vec();
            for b in f.support() {
                forms.push(b.coords().iter().zip(a.coords()).map(|(x, y)| x - y).collect());
            }
            let k = cone_from_inequalities(dim, &forms).unwrap();
            witness |= k.rays().iter().any(|q| q_of_f(q.coords(), &f) > dot(q.coords(), &ones));
        }
        assert_eq!(pos == Position::Outside, witness, "{}", serialize_polynomial(&f));
    }
}

#[test]
fn quasi_reduced_monotone_under_removing_noncompact_points() {
    let mut r = rng(12);
    let mut checked = 0;
    for _ in 0..200 {
        let dim = 3;
        let extra = r.gen_range(1..=4);
        let f = random_convenient_support(&mut r, dim, 6, extra);
        if !quasi_reduced(&f).unwrap() {
            continue;
        }
        let np = build_newton(&f).unwrap();
        let faces = np.compact_faces().unwrap();
        // a dominated point never lies on a compact face
        let on_compact: Vec<bool> = f
            .support()
            .iter()
            .map(|a| match np.generators().iter().position(|g| g == a) {
                Some(i) => faces.iter().any(|face| face.contains(&i)),
                None => false,
            })
            .collect();
        for (a, on) in f.support().iter().zip(on_compact) {
            if on || f.len() == 1 {
                continue;
            }
            let rest: Vec<ExponentVector> = f.support().iter().filter(|b| *b != a).cloned().collect();
            let g = PolynomialSupport::new(dim, rest).unwrap();
            assert!(quasi_reduced(&g).unwrap(), "{} minus {a}", serialize_polynomial(&f));
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn classification_examples() {
    let cases = [
        ("x0^2 + x1^2 + x2^2", 3, ClassLabel::Canonical),
        ("x0^3 + x1^4 + x2^4", 3, ClassLabel::NotLogCanonical),
        ("x0^3 + x1^3 + x2^3", 3, ClassLabel::LogCanonicalNonCanonical),
        ("x0*x1*x2*x3 + x0^3 + x1^2*x2^2 + x1^6 + x2^6 + x3^6", 4, ClassLabel::LogCanonicalNonCanonical),
        ("x0^2 + x1^3 + x2^7 + x3^43 + x0*x1*x2*x3", 4, ClassLabel::LogCanonicalNonCanonical),
    ];
    for (s, d, want) in cases {
        let c = classify(&parse_polynomial(s, d).unwrap(), false).unwrap();
        assert_eq!(c.label, want, "{s}");
    }
}

#[test]
fn face_of_one_gives_single_ray() {
    // 1 in the relative interior of a facet: the essential cone is that ray
    for (s, d, normal) in [
        ("x0^3 + x1^3 + x2^3", 3, vec![1, 1, 1]),
        ("x0^2 + x1^4 + x2^4", 3, vec![2, 1, 1]),
        ("x0^2 + x1^3 + x2^6", 3, vec![3, 2, 1]),
    ] {
        let f = parse_polynomial(s, d).unwrap();
        let face = face_containing_one(&build_newton(&f).unwrap()).unwrap();
        assert_eq!(face.dim, d - 1, "{s}");
        assert_eq!(face.normal_ray.as_ref().map(|w| w.coords().to_vec()), Some(normal.clone()));
        let c1 = essential_cone(&f).unwrap();
        assert_eq!(c1.rays().len(), 1);
        assert_eq!(c1.rays()[0].coords(), normal.as_slice());
        assert_eq!(absolutely_minimal(&c1).unwrap().unwrap().coords(), normal.as_slice());
    }
}

#[test]
fn nondegeneracy_limited_checker() {
    let nd = |s: &str, d: usize| check_nondegeneracy_limited(&parse_polynomial(s, d).unwrap()).unwrap();
    assert_eq!(nd("x0^2 + x1^4 + x2^4", 3), Nondegeneracy::NonDegenerate);
    assert_eq!(nd("x0^2 + 2*x0*x1 + x1^2 + x2^3", 3), Nondegeneracy::Degenerate);
    assert_eq!(
        nd("x0*x1*x2*x3 + x0^3 + x1^2*x2^2 + x1^6 + x2^6 + x3^6", 4),
        Nondegeneracy::Undecided
    );
}
