use sensitivity_core::graph::hypercube_graph;
use sensitivity_core::incidence::{
    dihedrant_levi, legendre, levi_graph, lps_graph, lps_quadruples, perfect_difference_set, plane_isomorphism,
    polarity_graph, y_graph, y_mixing_bound, GaloisField, ProjectivePlane,
};
use sensitivity_core::solver::{kappa_search, SearchBudget};

const ORDERS: [usize; 7] = [2, 3, 4, 5, 7, 8, 9];

#[test]
fn field_axioms() {
    for q in ORDERS {
        let f = GaloisField::new(q).unwrap();
        for x in 0..q {
            assert_eq!(f.add(x, 0), x);
            assert!((0..q).filter(|&y| f.add(x, y) == 0).count() == 1);
            if x != 0 {
                assert_eq!(f.mul(x, f.inv(x)), 1, "q = {q}");
            }
            for y in 0..q {
                assert_eq!(f.add(x, y), f.add(y, x));
                for z in (0..q).step_by(2) {
                    assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                }
            }
        }
    }
    for bad in [1, 6, 10, 12] {
        assert!(GaloisField::new(bad).is_err(), "q = {bad}");
    }
}

#[test]
fn plane_axioms() {
    for q in ORDERS {
        let pl = ProjectivePlane::new(q).unwrap();
        pl.verify_axioms().unwrap();
        let n = pl.len();
        assert_eq!(n, q * q + q + 1);
        for p in 0..n {
            assert_eq!((0..n).filter(|&l| pl.incident(p, l)).count(), q + 1);
        }
    }
}

#[test]
fn polarity_graphs() {
    let g = polarity_graph(2).unwrap();
    assert_eq!(g.n(), 7);
    let g = polarity_graph(3).unwrap();
    assert_eq!(g.n(), 13);
    for q in ORDERS {
        let g = polarity_graph(q).unwrap();
        // q + 1 absolute points carry loops; each adds one to its adjacency row.
        assert_eq!(g.loop_count(), q + 1, "q = {q}");
        for v in 0..g.n() {
            assert_eq!(g.neighbors(v).len() + g.has_loop(v) as usize, q + 1);
            assert_eq!(g.degree(v), q + 1 + g.has_loop(v) as usize);
        }
    }
    assert!(polarity_graph(6).is_err());
}

#[test]
fn levi_graphs() {
    let heawood = levi_graph(2).unwrap();
    assert_eq!((heawood.n(), heawood.m(), heawood.girth()), (14, 21, Some(6)));
    let l5 = levi_graph(5).unwrap();
    assert_eq!((l5.n(), l5.regular_degree(), l5.girth()), (62, Some(6), Some(6)));
    for q in [2, 3, 4, 5] {
        let g = levi_graph(q).unwrap();
        assert!(g.is_bipartite());
        let k = kappa_search(&g, 6, &SearchBudget::unlimited()).unwrap();
        assert_eq!(k.value, 1, "q = {q}");
        let cover = polarity_graph(q).unwrap().kronecker_double_cover();
        assert!(cover.find_isomorphism(&g).is_some(), "q = {q}");
    }
    assert!(levi_graph(2).unwrap().find_isomorphism(&hypercube_graph(3)).is_none());
}

#[test]
fn difference_sets() {
    for q in [2, 3, 4, 5, 7, 8] {
        let d = perfect_difference_set(q).unwrap();
        assert_eq!(d.len(), q + 1);
        let m = q * q + q + 1;
        let mut diffs: Vec<usize> = d.iter().flat_map(|&a| d.iter().filter(move |&&b| b != a).map(move |&b| (a + m - b) % m)).collect();
        diffs.sort_unstable();
        assert_eq!(diffs, (1..m).collect::<Vec<_>>(), "q = {q}");
    }
}

#[test]
fn dihedrants_are_levi_graphs() {
    for q in [2, 3, 4, 5] {
        let dl = dihedrant_levi(q).unwrap();
        let m = q * q + q + 1;
        assert_eq!(dl.graph.n(), 2 * m);
        let mut seen = dl.isomorphism.clone();
        seen.sort_unstable();
        assert_eq!(seen, (0..2 * m).collect::<Vec<_>>());
        for (u, v) in dl.graph.edges() {
            assert!(dl.levi.has_edge(dl.isomorphism[u], dl.isomorphism[v]), "q = {q}");
        }
        assert_eq!(dl.graph.m(), dl.levi.m());
    }
    assert!(dihedrant_levi(9).is_err());
}

#[test]
fn plane_isomorphisms_respect_incidence() {
    let pl = ProjectivePlane::new(3).unwrap();
    let n = pl.len();
    let inc: Vec<Vec<bool>> = (0..n).map(|p| (0..n).map(|l| pl.incident(p, l)).collect()).collect();
    // Relabel points by a fixed shift and check a map back is found.
    let shifted: Vec<Vec<bool>> = (0..n).map(|p| inc[(p + 5) % n].clone()).collect();
    let (pm, lm) = plane_isomorphism(&shifted, &inc).unwrap();
    for p in 0..n {
        for l in 0..n {
            assert_eq!(shifted[p][l], inc[pm[p]][lm[l]]);
        }
    }
    let q2 = ProjectivePlane::new(2).unwrap();
    let small: Vec<Vec<bool>> = (0..7).map(|p| (0..7).map(|l| q2.incident(p, l)).collect()).collect();
    assert!(plane_isomorphism(&small, &inc).is_none());
}

#[test]
fn lps_graphs() {
    assert_eq!(legendre(13, 5), -1);
    assert_eq!(legendre(5, 13), -1);
    assert_eq!(legendre(17, 13), 1);
    assert_eq!(lps_quadruples(13).len(), 14);
    assert_eq!(lps_quadruples(5).len(), 6);

    let x = lps_graph(13, 5).unwrap();
    assert_eq!(x.legendre, -1);
    let g = &x.graph;
    assert_eq!((g.n(), g.regular_degree(), g.is_bipartite(), g.is_connected()), (120, Some(14), true, true));
    assert!(x.girth_bound() > 0.0);
    assert!(y_graph(13, 5).unwrap().fingerprint() == g.fingerprint());

    let y = y_graph(17, 13).unwrap();
    let x = lps_graph(17, 13).unwrap();
    assert_eq!(x.graph.n(), 1092);
    assert!(!x.graph.is_bipartite());
    assert_eq!((y.n(), y.regular_degree(), y.is_bipartite(), y.is_connected()), (2184, Some(18), true, true));

    assert!((y_mixing_bound(5) - (3.0 - 5f64.sqrt())).abs() < 1e-12);
    assert!(lps_graph(5, 5).is_err());
    assert!(lps_graph(3, 13).is_err());
    assert!(lps_graph(5, 29).is_err());
}
