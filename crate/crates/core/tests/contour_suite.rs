//! Randomized checks of the contour and shift constructions on sampled
//! even independent sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torus_hardcore::cutsets::{
    classify_even_odd, isoperimetry_check, sample_even_sets, size_identity,
    two_component_structure, verify_contour_properties, volume_bound,
};
use torus_hardcore::glauber::{default_burn_in, sample_from_empty};
use torus_hardcore::graph::{bitset_from, restrict_parity};
use torus_hardcore::hardcore::is_independent;
use torus_hardcore::peierls::{
    coarse_witness_u, flow_out_sum, free_sites, interior_shift, is_approximation, q_sets,
    FlowLayout,
};
use torus_hardcore::{
    gamma_family, Approximation, Direction, OccupancySet, Parity, Rational, TorusGraph,
};

const LAMBDAS: [f64; 4] = [0.5, 1.0, 2.0, 4.0];

fn samples(l: usize, count: usize, seed: u64) -> (TorusGraph, Vec<OccupancySet>) {
    let g = TorusGraph::new(l, 2).unwrap();
    let sets = sample_even_sets(&g, count, seed, &LAMBDAS, default_burn_in(g.len())).unwrap();
    (g, sets)
}

#[test]
fn every_independent_set_is_even_or_odd() {
    for l in [4, 6, 8] {
        let g = TorusGraph::new(l, 2).unwrap();
        for r in 0..60 {
            let s = sample_from_empty(&g, LAMBDAS[r % 4], 11, r as u64, 2000).unwrap();
            let labels = classify_even_odd(&g, &s).unwrap();
            assert!(labels.even || labels.odd);
        }
    }
}

#[test]
fn family_properties_hold() {
    for l in [4, 6, 8] {
        let (g, sets) = samples(l, 60, 3);
        for set in &sets {
            let fam = gamma_family(&g, set).unwrap();
            let mut covered = bitset_from(g.len(), []);
            for (i, a) in fam.cutsets.iter().enumerate() {
                assert!(a.enveloping);
                for b in &fam.cutsets[i + 1..] {
                    assert!(a.w.is_disjoint(&b.w));
                }
                covered.union_with(&a.w);
                assert!(verify_contour_properties(&g, set, a).all_hold());
                assert!(size_identity(&g, a).unwrap().holds);
                assert!(volume_bound(a, 2).holds);
                let two = two_component_structure(&g, a).unwrap();
                assert!(two.trivial_implies_clustered);
                assert!(two.dual_components_large, "{two:?}");
                assert!(two.two_components_large, "{two:?}");
            }
            assert!(restrict_parity(&g, set.bits(), Parity::Even).is_subset(&covered));
        }
    }
}

#[test]
fn shift_and_flow_hold_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for l in [4, 6] {
        let (g, sets) = samples(l, 60, 9);
        for set in &sets {
            for gamma in &gamma_family(&g, set).unwrap().cutsets {
                let a = Approximation::of_cutset(&g, gamma);
                assert!(is_approximation(&g, &a, gamma).holds());
                let (qe, qo) = q_sets(&g, &a);
                assert!(qe.is_clear() && qo.is_clear());
                for s in Direction::all(2) {
                    let r = interior_shift(&g, set, gamma, s).unwrap();
                    assert_eq!(r.free_sites, free_sites(&g, &gamma.w, s));
                    let sites: Vec<usize> = r.free_sites.ones().collect();
                    for _ in 0..5 {
                        let mut j = r.shifted.clone();
                        for &x in &sites {
                            if rng.random_bool(0.5) {
                                j.insert(g.parity_of(x), x);
                            }
                        }
                        assert!(is_independent(&g, &j).unwrap());
                    }
                    let layout = FlowLayout::new(&g, gamma, &a, s);
                    if layout.free_len() <= 16 {
                        let one = Rational::from_integer(1.into());
                        assert_eq!(
                            flow_out_sum(&Rational::new(2.into(), 5.into()), &layout).unwrap(),
                            one
                        );
                    }
                }
                let u = coarse_witness_u(&g, gamma).unwrap();
                assert!(u.covers && u.within_candidates && u.separates, "{u:?}");
            }
        }
    }
}

/// Every subset of T_{4,2} with at most half the vertices.
#[test]
fn isoperimetry_exhaustive_on_t42() {
    let g = TorusGraph::new(4, 2).unwrap();
    let mut vertex_failures = 0;
    for mask in 0u32..1 << 16 {
        if 2 * mask.count_ones() > 16 {
            continue;
        }
        let a = bitset_from(16, (0..16).filter(|v| mask >> v & 1 == 1));
        let r = isoperimetry_check(&g, &a).unwrap();
        assert!(r.edge_holds, "{mask:#x}");
        if !r.holds {
            vertex_failures += 1;
        }
    }
    assert_eq!(vertex_failures, 3456);
}

#[test]
fn isoperimetry_on_random_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (l, d) in [(4, 2), (6, 2), (4, 3), (8, 2)] {
        let g = TorusGraph::new(l, d).unwrap();
        for _ in 0..300 {
            let size = rng.random_range(0..=g.len() / 2);
            let mut verts: Vec<usize> = (0..g.len()).collect();
            for i in 0..size {
                let j = rng.random_range(i..g.len());
                verts.swap(i, j);
            }
            let a = bitset_from(g.len(), verts[..size].iter().copied());
            let r = isoperimetry_check(&g, &a).unwrap();
            assert!(r.edge_holds, "T_{{{l},{d}}} |A|={size} {r:?}");
            assert!(r.edge_boundary >= r.boundary);
        }
    }
}
