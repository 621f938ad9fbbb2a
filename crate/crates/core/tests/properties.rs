mod common;

use common::{betti_mismatch, exhaustive_bottleneck, family_complex};
use dvr_core::density::{estimate_density_all, Kernel, KernelFamily};
use dvr_core::diagram_metrics::bottleneck_finite;
use dvr_core::filtration::{
    cech_filtration_euclidean, dvr_filtration, validate_filtration, vr_filtration, DvrParams, FiltrationFamily,
};
use dvr_core::persistence::{flag_persistence, PersistenceDiagram};
use dvr_core::scaled_metric::{
    build_knn_graph, component_counts, estimated_distances, knn_edge_set, shortest_paths_from, DistanceMatrix,
};
use dvr_core::PointCloud;
use proptest::prelude::*;

fn cloud_strategy(min: usize, max: usize) -> impl Strategy<Value = PointCloud> {
    prop::collection::vec(prop::array::uniform2(-1.0f64..1.0), min..=max)
        .prop_map(|pts| PointCloud::new(pts.into_iter().map(|p| p.to_vec()).collect()).unwrap())
}

fn diagram_pairs(d: &PersistenceDiagram, dim: usize) -> Vec<(f64, f64)> {
    d.in_dim(dim).map(|p| (p.birth, p.death)).collect()
}

fn same_diagram(a: &PersistenceDiagram, b: &PersistenceDiagram, tol: f64) -> bool {
    (0..=a.max_dim).all(|dim| {
        let (pa, pb) = (diagram_pairs(a, dim), diagram_pairs(b, dim));
        let inf = |v: &[(f64, f64)]| v.iter().filter(|p| p.1.is_infinite()).map(|p| p.0).collect::<Vec<_>>();
        let fin = |v: &[(f64, f64)]| v.iter().copied().filter(|p| p.1.is_finite()).collect::<Vec<_>>();
        let (ia, ib) = (inf(&pa), inf(&pb));
        ia.len() == ib.len()
            && ia.iter().zip(&ib).all(|(x, y)| (x - y).abs() <= tol)
            && bottleneck_finite(&fin(&pa), &fin(&pb)) <= tol
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weights_invariant_under_scaling(cloud in cloud_strategy(6, 14), lambda in 0.2f64..5.0,
                                       dens in prop::collection::vec(0.1f64..3.0, 14)) {
        let f = dens[..cloud.len()].to_vec();
        let g = build_knn_graph(&cloud, 3, &f, 2).unwrap();
        let scaled = cloud.map_points(|_, p| p.iter().map(|x| x * lambda).collect()).unwrap();
        let fs: Vec<f64> = f.iter().map(|v| v / (lambda * lambda)).collect();
        let gs = build_knn_graph(&scaled, 3, &fs, 2).unwrap();
        let (e, es) = (g.edges(), gs.edges());
        prop_assert_eq!(e.len(), es.len());
        for (a, b) in e.iter().zip(&es) {
            prop_assert_eq!((a.0, a.1), (b.0, b.1));
            prop_assert!((a.2 - b.2).abs() <= 1e-9 * a.2);
        }
    }

    #[test]
    fn knn_edges_invariant_under_rigid_motion(cloud in cloud_strategy(5, 20), theta in 0.0f64..6.3,
                                              tx in -5.0f64..5.0, ty in -5.0f64..5.0, k in 1usize..4) {
        let (s, c) = theta.sin_cos();
        let moved = cloud.map_points(|_, p| vec![c * p[0] - s * p[1] + tx, s * p[0] + c * p[1] + ty]).unwrap();
        prop_assert_eq!(knn_edge_set(&cloud, k).unwrap(), knn_edge_set(&moved, k).unwrap());
    }

    #[test]
    fn estimated_distances_form_a_metric(cloud in cloud_strategy(4, 16), k in 1usize..4) {
        let f = vec![1.0; cloud.len()];
        let g = build_knn_graph(&cloud, k.min(cloud.len() - 1), &f, 1).unwrap();
        let d = estimated_distances(&g);
        let n = d.len();
        for i in 0..n {
            prop_assert_eq!(d.get(i, i), 0.0);
            for j in 0..n {
                prop_assert_eq!(d.get(i, j), d.get(j, i));
                if i != j {
                    prop_assert!(d.get(i, j) > 0.0);
                }
                for m in 0..n {
                    let via = d.get(i, m) + d.get(m, j);
                    prop_assert!(d.get(i, j) <= via * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn shortest_paths_use_at_most_n_minus_one_hops(cloud in cloud_strategy(3, 20)) {
        let f = vec![1.0; cloud.len()];
        let g = build_knn_graph(&cloud, 1, &f, 1).unwrap();
        for s in 0..cloud.len() {
            for h in shortest_paths_from(&g, s).hops.into_iter().flatten() {
                prop_assert!(h < cloud.len());
            }
        }
    }

    #[test]
    fn component_counts_nonincreasing(cloud in cloud_strategy(3, 25)) {
        let counts = component_counts(&cloud, cloud.len() - 1).unwrap();
        for w in counts.windows(2) {
            prop_assert!(w[1].1 <= w[0].1);
        }
        prop_assert_eq!(counts.last().unwrap().1, 1);
        prop_assert!(counts[0].1 <= cloud.len() / 2);
    }

    #[test]
    fn every_family_is_a_valid_filtration(cloud in cloud_strategy(5, 9)) {
        for family in FiltrationFamily::ALL {
            let (fc, _) = family_complex(&cloud, family, 1, 11).unwrap();
            prop_assert!(validate_filtration(&fc), "{family}");
        }
    }

    #[test]
    fn diagrams_match_rank_oracle_in_small_fields(cloud in cloud_strategy(4, 8)) {
        for p in [2, 3] {
            for family in FiltrationFamily::ALL {
                let (fc, d) = family_complex(&cloud, family, 1, p).unwrap();
                prop_assert_eq!(betti_mismatch(&fc, &d, 1, p).unwrap(), None);
            }
        }
    }

    #[test]
    fn euler_characteristic_matches_diagram(cloud in cloud_strategy(3, 7)) {
        // max_dim = N - 1 builds every clique, so no Betti number goes untracked
        let max_dim = cloud.len() - 1;
        let f = vr_filtration(&DistanceMatrix::euclidean(&cloud), None).unwrap();
        let d = flag_persistence(&f, max_dim, 11).unwrap();
        let fc = f.to_complex(max_dim);
        let sign = |k: usize| if k.is_multiple_of(2) { 1i64 } else { -1 };
        for r in fc.entry_values() {
            let chi: i64 = fc.at_level(r).map(|s| sign(s.dim())).sum();
            let betti: i64 = (0..=max_dim).map(|k| sign(k) * d.alive_count(k, r) as i64).sum();
            prop_assert_eq!(chi, betti);
        }
    }

    #[test]
    fn diagrams_equivariant_under_permutation(cloud in cloud_strategy(5, 12), seed in any::<u64>()) {
        let n = cloud.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut rng = dvr_core::rng::SplitMix64::new(seed);
        for i in (1..n).rev() {
            perm.swap(i, (rng.next_u64() % (i as u64 + 1)) as usize);
        }
        let moved = cloud.permuted(&perm);
        for family in [FiltrationFamily::Vr, FiltrationFamily::Dvr, FiltrationFamily::CechEuclidean] {
            let (_, a) = family_complex(&cloud, family, 1, 11).unwrap();
            let (_, b) = family_complex(&moved, family, 1, 11).unwrap();
            prop_assert!(same_diagram(&a, &b, 1e-12), "{family}");
        }
    }

    #[test]
    fn field_choice_does_not_change_planar_diagrams(cloud in cloud_strategy(5, 10)) {
        let f = vr_filtration(&DistanceMatrix::euclidean(&cloud), None).unwrap();
        let base = flag_persistence(&f, 1, 2).unwrap();
        for p in [3, 11, 101] {
            prop_assert!(same_diagram(&base, &flag_persistence(&f, 1, p).unwrap(), 0.0));
        }
    }

    #[test]
    fn vr_and_cech_share_the_one_skeleton(cloud in cloud_strategy(3, 9)) {
        let vr = vr_filtration(&DistanceMatrix::euclidean(&cloud), None).unwrap().to_complex(1);
        let cech = cech_filtration_euclidean(&cloud, 1, None).unwrap();
        let edges = |fc: &dvr_core::filtration::FilteredComplex| {
            let mut e: Vec<(Vec<usize>, f64)> = fc.simplices().iter().filter(|s| s.dim() <= 1)
                .map(|s| (s.vertices.clone(), s.value)).collect();
            e.sort_by(|a, b| a.0.cmp(&b.0));
            e
        };
        let (a, b) = (edges(&vr), edges(&cech));
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(&x.0, &y.0);
            prop_assert!((x.1 - y.1).abs() <= 1e-12 * (1.0 + x.1));
        }
    }

    #[test]
    fn constant_density_complete_graph_dvr_is_scaled_vr(cloud in cloud_strategy(4, 10), f0 in 0.1f64..10.0) {
        let n = cloud.len();
        let with_f = cloud.clone().with_density(vec![f0; n]).unwrap();
        let params = DvrParams::new(1, n - 1, KernelFamily::Biweight);
        let dvr = flag_persistence(&dvr_filtration(&with_f, &params, None).unwrap(), 1, 11).unwrap();
        let vr = flag_persistence(&vr_filtration(&DistanceMatrix::euclidean(&cloud), None).unwrap(), 1, 11).unwrap();
        let c = dvr_core::scaled_metric::alpha(n, 1) * f0;
        let pts = vr.points().iter().map(|p| dvr_core::persistence::DiagramPoint::new(p.dim, c * p.birth, c * p.death)).collect();
        let scaled = PersistenceDiagram::new(11, 1, pts);
        // complete graph: shortest paths may take detours through near-collinear points
        prop_assert!(same_diagram(&dvr, &scaled, 1e-9 * c));
    }

    #[test]
    fn density_estimate_translation_invariant(cloud in cloud_strategy(3, 15), tx in -50.0f64..50.0, ty in -50.0f64..50.0) {
        let k = Kernel::new(KernelFamily::Biweight, 2).unwrap();
        let moved = cloud.map_points(|_, p| vec![p[0] + tx, p[1] + ty]).unwrap();
        let a = estimate_density_all(&cloud, &k).unwrap().values;
        let b = estimate_density_all(&moved, &k).unwrap().values;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-9 * x.max(1.0));
        }
    }

    #[test]
    fn bottleneck_agrees_with_exhaustive_matching(
        a in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 0..5),
        b in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 0..5),
        c in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 0..5),
    ) {
        let pts = |v: &[(f64, f64)]| v.iter().map(|&(x, l)| (x, x + l)).collect::<Vec<_>>();
        let (a, b, c) = (pts(&a), pts(&b), pts(&c));
        let ab = bottleneck_finite(&a, &b);
        prop_assert!((ab - exhaustive_bottleneck(&a, &b)).abs() <= 1e-12);
        prop_assert_eq!(ab, bottleneck_finite(&b, &a));
        prop_assert_eq!(bottleneck_finite(&a, &a), 0.0);
        prop_assert!(bottleneck_finite(&a, &c) <= ab + bottleneck_finite(&b, &c) + 1e-12);
    }
}
