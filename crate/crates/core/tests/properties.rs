mod common;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use polymut::ehrhart::{fit_quasi_polynomial, h_star, lattice_counts, minimal_period};
use polymut::geometry::{count_lattice_points_with, dot_int, hull, int, rat, Execution, Point, Polytope, Rational};
use polymut::plmaps::{
    apply_tropical, chi_r, chi_r_inverse, i_max, mutation_sequence_unrestricted, phi_step, xi, MutationOptions,
};
use polymut::poset::{corner_flag, is_up_set, Cell, DVector, FlagOrder, YoungDiagram};
use polymut::posetpoly::{
    chain_order_polytope, chain_polytope, gt_data_for_rectangle, gt_polytope, order_polytope, restricted_chain_order,
    restricted_order_polytope,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use common::{diagrams_up_to, random_vector, rng};

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

/// Hull of a few random rational points in dimension 1 to 3.
fn arb_polytope() -> impl Strategy<Value = Polytope> {
    (1usize..=3)
        .prop_flat_map(|dim| prop::collection::vec(prop::collection::vec((-4i64..=4, 1i64..=3), dim), 1..=5))
        .prop_map(|pts| {
            let dim = pts[0].len();
            let pts: Vec<Point> = pts.into_iter().map(|p| p.into_iter().map(|(n, d)| rat(n, d)).collect()).collect();
            hull(labels(dim), &pts).unwrap()
        })
}

fn arb_lattice_polytope() -> impl Strategy<Value = Polytope> {
    (1usize..=3).prop_flat_map(|dim| prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 1..=5)).prop_map(
        |pts| {
            let dim = pts[0].len();
            let pts: Vec<Point> = pts.into_iter().map(|p| p.into_iter().map(int).collect()).collect();
            hull(labels(dim), &pts).unwrap()
        },
    )
}

fn small_diagrams() -> Vec<YoungDiagram> {
    diagrams_up_to(6)
}

fn arb_diagram_cell() -> impl Strategy<Value = (YoungDiagram, Cell)> {
    let all = diagrams_up_to(9);
    (0..all.len()).prop_flat_map(move |i| {
        let l = all[i].clone();
        (0..l.len()).prop_map(move |j| (l.clone(), l.cells()[j]))
    })
}

/// Uniformly shuffled topological order of the cells.
fn random_linear_extension(l: &YoungDiagram, g: &mut rand_chacha::ChaCha8Rng) -> Vec<Cell> {
    let mut out = Vec::new();
    let mut placed = vec![false; l.len()];
    while out.len() < l.len() {
        let ready: Vec<Cell> = l
            .cells()
            .iter()
            .copied()
            .filter(|&c| !placed[l.index_of(c).unwrap()])
            .filter(|&c| [c.up(), c.left()].iter().all(|&q| l.index_of(q).is_none_or(|j| placed[j])))
            .collect();
        let c = *ready.choose(g).unwrap();
        placed[l.index_of(c).unwrap()] = true;
        out.push(c);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn tropical_steps_preserve_f(case in arb_diagram_cell(), seed in any::<u64>()) {
        let (l, r) = case;
        let mut g = rng(seed);
        let x = random_vector(&mut g, l.len());
        for i in 0..=i_max(r) {
            let m = phi_step(&l, r, i).unwrap();
            let y = apply_tropical(&m, &x).unwrap();
            for f in &m.f {
                prop_assert_eq!(dot_int(f, &x), dot_int(f, &y));
            }
        }
    }

    #[test]
    fn chi_inverse_round_trip(case in arb_diagram_cell(), x in prop::collection::vec(arb_rational(), 9)) {
        let (l, r) = case;
        let x = &x[..l.len()];
        let y = chi_r(&l, r, x).unwrap();
        prop_assert_eq!(chi_r_inverse(&l, r, &y).unwrap(), x.to_vec());
    }

    #[test]
    fn hull_round_trip(p in arb_polytope()) {
        let again = hull(p.ambient().to_vec(), p.vertices().unwrap()).unwrap();
        prop_assert!(again.equals(&p).unwrap());
    }

    #[test]
    fn dilate_scaling(p in arb_polytope(), k in 2i64..=3) {
        let kp = p.dilate(k).unwrap();
        let base = lattice_counts(&p, 3 * k as u64).unwrap();
        let scaled = lattice_counts(&kp, 3).unwrap();
        for n in 0..=3usize {
            prop_assert_eq!(scaled[n], base[n * k as usize]);
        }
        prop_assert!(p.denominator().unwrap().is_multiple_of(&kp.denominator().unwrap()));
    }

    #[test]
    fn fit_reproduces_counts_and_period_divides(p in arb_polytope()) {
        let q = fit_quasi_polynomial(&p).unwrap();
        prop_assert_eq!(q.modulus % minimal_period(&q), 0);
        let counts = lattice_counts(&p, q.modulus * (q.degree as u64 + 3)).unwrap();
        for (n, &c) in counts.iter().enumerate() {
            prop_assert_eq!(q.eval(n as u64), int(c as i64));
        }
        if q.degree == p.ambient_dim() {
            let lead: Vec<&Rational> = q.constituents.iter().map(|c| &c[q.degree]).collect();
            prop_assert!(lead.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn h_star_of_lattice_polytope(p in arb_lattice_polytope()) {
        prop_assert_eq!(p.denominator().unwrap(), 1.into());
        let q = fit_quasi_polynomial(&p).unwrap();
        let h = h_star(&q).unwrap();
        prop_assert_eq!(h[0], 1);
        prop_assert!(h.iter().all(|&v| v >= 0));
        let factorial: i64 = (1..=q.degree as i64).product();
        let volume = &q.constituents[0][q.degree] * int(factorial);
        prop_assert_eq!(int(h.iter().sum()), volume);
    }

    #[test]
    fn sequential_and_parallel_counts_agree(p in arb_polytope(), n in 0u64..6) {
        prop_assert_eq!(
            count_lattice_points_with(&p, n, Execution::Sequential).unwrap(),
            count_lattice_points_with(&p, n, Execution::Parallel).unwrap()
        );
    }
}

#[test]
fn vertex_count_is_independent_of_the_up_set() {
    for l in small_diagrams() {
        let expected = l.up_sets().len();
        for c in l.up_sets() {
            let p = chain_order_polytope(&l, &c).unwrap();
            assert_eq!(p.vertices().unwrap().len(), expected, "{:?} with C = {}", l.parts(), c.to_text(&l));
        }
    }
}

#[test]
fn corner_flags_are_up_sets() {
    for l in diagrams_up_to(7) {
        for order in [FlagOrder::LexLargest, FlagOrder::LexSmallest, FlagOrder::ColumnLargest] {
            for c in corner_flag(&l, order) {
                assert!(is_up_set(&l, &c.cells().collect::<Vec<_>>()).unwrap());
            }
        }
        assert_eq!(l.diags().len(), l.m1() + l.m2() - 1);
    }
}

#[test]
fn chi_sends_vertex_sets_along_the_flag() {
    for l in small_diagrams() {
        for order in [FlagOrder::LexLargest, FlagOrder::LexSmallest] {
            let flag = corner_flag(&l, order);
            for pair in flag.windows(2) {
                let r = pair[1].cells().find(|&c| !pair[0].contains(c)).unwrap();
                let before = chain_order_polytope(&l, &pair[0]).unwrap();
                let after = chain_order_polytope(&l, &pair[1]).unwrap();
                let image: Vec<Point> = before.vertices().unwrap().iter().map(|v| chi_r(&l, r, v).unwrap()).collect();
                let image = hull(l.labels(), &image).unwrap();
                assert!(image.equals(&after).unwrap(), "{:?} at {r}", l.parts());
            }
        }
    }
}

#[test]
fn tropical_steps_keep_vertex_counts() {
    for parts in [&[2, 1][..], &[2, 2], &[3, 2], &[2, 2, 1], &[3, 3]] {
        let l = YoungDiagram::from_partition(parts).unwrap();
        let trace =
            mutation_sequence_unrestricted(&l, 1, &corner_flag(&l, FlagOrder::default()), &MutationOptions::default())
                .unwrap();
        assert!(trace.all_verified());
        let expected = l.up_sets().len();
        assert!(trace.steps.iter().all(|s| s.vertex_count == expected), "{parts:?}");
    }
}

#[test]
fn xi_is_independent_of_the_linear_extension() {
    let mut g = rng(11);
    for l in diagrams_up_to(6) {
        let reference: Vec<Cell> = l.cells().to_vec();
        for _ in 0..4 {
            let x = random_vector(&mut g, l.len());
            let other = random_linear_extension(&l, &mut g);
            assert_eq!(xi(&l, &reference, &x).unwrap(), xi(&l, &other, &x).unwrap(), "{:?}", l.parts());
        }
    }
}

#[test]
fn xi_maps_order_vertices_to_chain_vertices() {
    for l in diagrams_up_to(6) {
        let order = order_polytope(&l);
        let mut image: Vec<Point> = order.vertices().unwrap().iter().map(|v| xi(&l, l.cells(), v).unwrap()).collect();
        image.sort();
        assert_eq!(image, chain_polytope(&l).vertices().unwrap(), "{:?}", l.parts());
    }
}

#[test]
fn restricted_polytope_satisfies_diagonal_sums() {
    let mut g = rng(3);
    for l in diagrams_up_to(5) {
        for k in [1, 2] {
            let d: Vec<i64> = l.diags().iter().map(|&ell| g.gen_range(0..=k * l.diagonal_len(ell) as i64)).collect();
            let d = DVector::new(&l, d).unwrap();
            let p = restricted_chain_order(&l, &polymut::poset::UpSet::empty(), &d, k).unwrap();
            let box_order = order_polytope(&l).dilate(k).unwrap();
            for v in p.vertices().unwrap() {
                assert!(box_order.contains(v).unwrap());
                for ell in l.diags() {
                    let sum: Rational = l.diagonal(ell).iter().map(|&c| v[l.index_of(c).unwrap()].clone()).sum();
                    assert_eq!(sum, int(d.get(ell)));
                }
            }
        }
    }
}

#[test]
fn rectangles_match_gelfand_tsetlin_counts() {
    let mut g = rng(5);
    for (m1, m2) in [(1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)] {
        let l = YoungDiagram::from_partition(&vec![m2; m1]).unwrap();
        for k in [1, 2] {
            for _ in 0..3 {
                let upsets = l.up_sets();
                let mut x = vec![0i64; l.len()];
                for _ in 0..k {
                    for c in upsets.choose(&mut g).unwrap().cells() {
                        x[l.index_of(c).unwrap()] += 1;
                    }
                }
                let d: Vec<i64> = l
                    .diags()
                    .iter()
                    .map(|&ell| l.diagonal(ell).iter().map(|&c| x[l.index_of(c).unwrap()]).sum())
                    .collect();
                let d = DVector::new(&l, d).unwrap();
                let restricted = restricted_order_polytope(&l, &d, k).unwrap();
                let (shape, content, _) = gt_data_for_rectangle(m1, m2, &d, k);
                let gt = gt_polytope(&shape, &content).unwrap();
                let a = lattice_counts(&restricted, 4).unwrap();
                let b = lattice_counts(&gt, 4).unwrap();
                assert_eq!(a, b, "{m1}x{m2} k={k} d={d}");
            }
        }
    }
}

#[test]
fn counts_start_at_one() {
    let p = hull(labels(2), &[vec![rat(1, 3), rat(1, 2)], vec![rat(2, 3), Rational::zero()]]).unwrap();
    let counts = lattice_counts(&p, 6).unwrap();
    assert_eq!(counts[0], 1);
    assert_eq!(p.denominator().unwrap().to_u64(), Some(6));
}
