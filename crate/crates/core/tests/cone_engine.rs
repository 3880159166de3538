mod common;

use std::collections::HashSet;
use std::sync::Arc;

use canweight::*;
use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rays_strategy(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0i64..=5, dim), 1..=dim + 2)
        .prop_filter("nonzero rays", |rs| rs.iter().all(|r| r.iter().any(|&x| x != 0)))
}

fn weights(rays: &[Vec<i64>]) -> Vec<WeightVector> {
    rays.iter().map(|r| w(r)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn double_description_is_sound(dim in 2usize..=4, seed in any::<u64>()) {
        let mut r = rng(seed);
        let count = 1 + (seed % (dim as u64 + 2)) as usize;
        let gens: Vec<Vec<i64>> = (0..count).map(|_| random_nonneg(&mut r, dim, 5)).collect();
        let cone = cone_from_rays(dim, &weights(&gens)).unwrap();
        // every form is nonnegative on every ray and every input generator
        for f in cone.hrep() {
            for ray in cone.rays() {
                prop_assert!(dot(f, ray.coords()) >= 0);
            }
            for g in &gens {
                prop_assert!(dot(f, g) >= 0);
            }
        }
        // every extreme ray is among the generators up to scaling
        for ray in cone.rays() {
            let scaled = |g: &Vec<i64>| -> Vec<i64> {
                let c = content(g);
                g.iter().map(|x| x / c).collect()
            };
            prop_assert!(gens.iter().any(|g| scaled(g) == ray.coords()));
        }
        // every ray is needed: the others do not generate it
        let rs: Vec<Vec<i64>> = cone.rays().iter().map(|x| x.coords().to_vec()).collect();
        for i in 0..rs.len() {
            let others: Vec<Vec<i64>> = rs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect();
            prop_assert!(!in_cone_of(&others, &rs[i]), "ray {:?} is redundant", rs[i]);
        }
        // generators are members
        for g in &gens {
            prop_assert!(cone.contains(&w(g)).unwrap());
        }
    }

    #[test]
    fn inequalities_and_rays_round_trip(rays in rays_strategy(3)) {
        let a = cone_from_rays(3, &weights(&rays)).unwrap();
        let b = cone_from_inequalities(3, a.hrep()).unwrap();
        prop_assert_eq!(a.rays(), b.rays());
        prop_assert_eq!(a.hrep(), b.hrep());
    }

    #[test]
    fn hilbert_basis_matches_brute_force(rays in rays_strategy(3)) {
        let cone = cone_from_rays(3, &weights(&rays)).unwrap();
        let hi = 3 * rays.iter().flatten().copied().max().unwrap();
        let brute = brute_hilbert(3, hi, |x| cone.contains(&w(x)).unwrap());
        let got: Vec<Vec<i64>> = cone.hilbert_basis().unwrap().iter().map(|h| h.coords().to_vec()).collect();
        prop_assert_eq!(got, brute);
    }

    // every lattice point of the box inside the cone is a sum of basis
    // elements: closure of the basis under addition, restricted to the box
    #[test]
    fn box_points_decompose(rays in rays_strategy(3)) {
        let cone = cone_from_rays(3, &weights(&rays)).unwrap();
        let hb: Vec<Vec<i64>> = cone.hilbert_basis().unwrap().iter().map(|h| h.coords().to_vec()).collect();
        let hi = 8;
        let mut reach: HashSet<Vec<i64>> = HashSet::from([vec![0; 3]]);
        let mut frontier = vec![vec![0i64; 3]];
        while let Some(x) = frontier.pop() {
            for h in &hb {
                let y: Vec<i64> = x.iter().zip(h).map(|(a, b)| a + b).collect();
                if y.iter().all(|&v| v <= hi) && reach.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        for_box(3, 0, hi, |x| {
            if cone.contains(&w(x)).unwrap() {
                assert!(reach.contains(x), "{x:?} is not a sum of basis elements");
            }
        });
    }

    #[test]
    fn lattice_points_under_matches_enumeration(rays in rays_strategy(3), bound in 1i64..14) {
        prop_assume!(rays.iter().all(|r| r.iter().all(|&x| x > 0)));
        let cone = cone_from_rays(3, &weights(&rays)).unwrap();
        let got: Vec<Vec<i64>> = lattice_points_under(&cone, &[1, 1, 1], bound)
            .unwrap()
            .iter()
            .map(|x| x.coords().to_vec())
            .collect();
        let mut want = Vec::new();
        for_box(3, 0, bound, |x| {
            let s: i64 = x.iter().sum();
            if s > 0 && s <= bound && cone.contains(&w(x)).unwrap() {
                want.push(x.to_vec());
            }
        });
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn frame_duality(a in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 3)) {
        prop_assume!(rank(&a) == 3 && a.iter().all(|r| content(r) == 1));
        let frame = simplicial_frame(&weights(&a)).unwrap();
        let one = BigRational::one();
        for (i, gi) in a.iter().enumerate() {
            for (j, dual) in frame.dual_basis().iter().enumerate() {
                let v: BigRational = dual.iter().zip(gi).map(|(x, &g)| x * BigRational::from_integer(g.into())).sum();
                prop_assert_eq!(v, if i == j { one.clone() } else { BigRational::zero() });
            }
        }
        // multipliers: the least k with k * a_i^* integral, by trial
        for (dual, &r) in frame.dual_basis().iter().zip(frame.multipliers()) {
            let integral = |k: i64| dual.iter().all(|x| (x * BigRational::from_integer(k.into())).is_integer());
            prop_assert!(integral(r));
            prop_assert!((1..r).all(|k| !integral(k)));
        }
    }

    #[test]
    fn meet_closed_examples_agree_with_definition(
        rays in rays_strategy(3),
        cp in prop::collection::vec(0i64..=3, 5),
        cq in prop::collection::vec(0i64..=3, 5),
    ) {
        let cone = cone_from_rays(3, &weights(&rays)).unwrap();
        let combo = |c: &[i64]| -> Vec<i64> {
            (0..3).map(|j| rays.iter().zip(c).map(|(r, k)| r[j] * k).sum()).collect()
        };
        let (p, q) = (combo(&cp), combo(&cq));
        let m: Vec<i64> = p.iter().zip(&q).map(|(a, b)| *a.min(b)).collect();
        prop_assert_eq!(meet_closed_under(&cone, &w(&p), &w(&q)).unwrap(), cone.contains(&w(&m)).unwrap());
    }
}

#[test]
fn square_pyramid_basis() {
    let rays = vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1], vec![0, 0, 1]];
    let cone = cone_from_rays(3, &weights(&rays)).unwrap();
    let brute = brute_hilbert(3, 3, |x| cone.contains(&w(x)).unwrap());
    let got: Vec<Vec<i64>> = cone.hilbert_basis().unwrap().iter().map(|h| h.coords().to_vec()).collect();
    assert_eq!(got, brute);
}

#[test]
fn non_pointed_cone_is_rejected() {
    let c = cone_from_inequalities(3, &[vec![1, 0, 0]]).unwrap();
    assert!(!c.is_pointed());
    assert!(matches!(c.hilbert_basis(), Err(Error::NotPointed(_))));
    assert!(absolutely_minimal(&c).is_err());
}

#[test]
fn cached_basis_is_shared_across_threads() {
    let cone = Arc::new(cone_from_rays(3, &weights(&[vec![1, 0, 2], vec![0, 3, 1], vec![2, 1, 0]])).unwrap());
    let handles: Vec<_> = (0..8)
        .map(|_| {
            let c = Arc::clone(&cone);
            std::thread::spawn(move || c.hilbert_basis().unwrap())
        })
        .collect();
    let results: Vec<Vec<WeightVector>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert!(results.windows(2).all(|p| p[0] == p[1]));
    assert_eq!(results[0], cone.clone().hilbert_basis().unwrap());
}

#[test]
fn frame_multipliers_on_quadrant_subdivision() {
    // the star subdivision of the orthant at p = (2,1,2,1): each chart
    // replaces e_i by p; unimodular frames get multipliers 1
    let sub = star_subdivision(&w(&[2, 1, 2, 1])).unwrap();
    for (i, frame) in sub.frames().iter().enumerate() {
        let det = frame.determinant();
        let expect = [2, 1, 2, 1][i];
        assert_eq!(det, BigInt::from(expect));
        assert!(frame.multipliers().iter().all(|&r| r == 1 || r == expect));
    }
}
