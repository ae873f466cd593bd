use proptest::prelude::*;

use sensitivity_core::group::{perm_is_even, random_connection_set, SignedPermElement};
use sensitivity_core::incidence::lps_graph;
use sensitivity_core::solver::{max_low_degree_set, SearchBudget};
use sensitivity_core::spectral::ndl_summary;
use sensitivity_core::{cayley_graph, group_make, ConnectionSet, FiniteGroup};

const SPECS: &[&str] = &[
    "dihedral:9",
    "symmetric:4",
    "alternating:5",
    "signed:3",
    "even-signed:4",
    "cyclic:12",
    "elementary:3^3",
    "pauli",
    "modular:16",
    "quasidihedral:32",
    "product:(cyclic:2,dihedral:5)",
];

fn check_axioms(g: &FiniteGroup) {
    let e = g.identity();
    assert_eq!(e, 0);
    for x in 0..g.order() {
        assert_eq!(g.mul(e, x), x);
        assert_eq!(g.mul(x, e), x);
        assert_eq!(g.inv(g.inv(x)), x);
        assert_eq!(g.mul(x, g.inv(x)), e);
    }
}

#[test]
fn group_laws_on_catalog() {
    for spec in SPECS {
        let g = group_make(spec).unwrap();
        check_axioms(&g);
        for x in (0..g.order()).step_by(3) {
            for y in (0..g.order()).step_by(5) {
                for z in (0..g.order()).step_by(7) {
                    assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)), "{spec}");
                }
            }
        }
    }
}

#[test]
fn indexing_is_deterministic() {
    for spec in SPECS {
        let a = group_make(spec).unwrap();
        let b = group_make(spec).unwrap();
        assert_eq!(a.order(), b.order());
        for x in 0..a.order() {
            assert_eq!(a.key(x), b.key(x), "{spec}");
        }
    }
}

#[test]
fn spec_examples() {
    let d9 = group_make("dihedral:9").unwrap();
    let conn = ConnectionSet::from_labels(&d9, &["a^1 b", "a^3 b", "b"]).unwrap();
    let g = cayley_graph(&d9, &conn);
    assert_eq!((g.n(), g.regular_degree(), g.is_bipartite()), (18, Some(3), true));

    let z2 = group_make("cyclic:2").unwrap();
    let k2 = cayley_graph(&z2, &ConnectionSet::new(&z2, [1]).unwrap());
    assert_eq!((k2.n(), k2.m()), (2, 1));

    let a5 = group_make("alternating:5").unwrap();
    let find = |p: [u32; 5]| a5.index_of(&p).unwrap();
    let c5 = find([1, 2, 3, 4, 0]);
    let conn = ConnectionSet::inverse_closure(&a5, [c5, find([1, 0, 3, 2, 4])]).unwrap();
    let g = cayley_graph(&a5, &conn);
    assert_eq!((g.n(), g.regular_degree()), (60, Some(3)));
    // 36 = dn/(2d − 1) is the most an induced matching can cover.
    let r = max_low_degree_set(&g, 1, &SearchBudget::unlimited());
    assert!(r.is_exact());
    assert_eq!(r.value, 36);
}

#[test]
fn connection_set_validation() {
    let s4 = group_make("symmetric:4").unwrap();
    assert!(ConnectionSet::new(&s4, [0]).is_err());
    let c4 = s4.index_of(&[1, 2, 3, 0]).unwrap();
    assert!(ConnectionSet::new(&s4, [c4]).is_err());
    assert!(ConnectionSet::inverse_closure(&s4, [c4]).unwrap().len() == 2);
    let t = s4.index_of(&[1, 0, 2, 3]).unwrap();
    let conn = ConnectionSet::new(&s4, [t]).unwrap();
    assert!(!conn.generates(&s4));
}

#[test]
fn random_connection_sets() {
    let s4 = group_make("symmetric:4").unwrap();
    let a = random_connection_set(&s4, 3, 42).unwrap();
    let b = random_connection_set(&s4, 3, 42).unwrap();
    assert_eq!(a, b);
    for &x in a.members() {
        assert!(a.members().contains(&s4.inv(x)));
    }
    let z5 = group_make("cyclic:5").unwrap();
    for seed in 0..10 {
        let c = random_connection_set(&z5, 1, seed).unwrap();
        assert_eq!(c.len(), 2);
        let (x, y) = (c.members()[0], c.members()[1]);
        assert_eq!(z5.mul(x, y), 0);
    }
}

/// Random generating sets of size about `c·log n` give expanders with high
/// probability; on PGL(2,5) nearly every seed gives a connected graph with
/// λ < d.
#[test]
fn random_cayley_graphs_on_pgl_expand() {
    let group = lps_graph(13, 5).unwrap().group;
    let size = 2 * (group.order() as f64).ln().ceil() as usize;
    let mut good = 0;
    for seed in 0..20 {
        let conn = random_connection_set(&group, size, seed).unwrap();
        let g = cayley_graph(&group, &conn);
        if !g.is_connected() {
            continue;
        }
        let s = ndl_summary(&g).unwrap();
        if s.lambda < s.d as f64 - 1e-6 {
            good += 1;
        }
    }
    assert!(good >= 18, "only {good} of 20 seeds expand");
}

#[test]
fn even_signed_subsets_are_even() {
    let g = group_make("even-signed:5").unwrap();
    assert_eq!(g.order(), 1920);
    for x in 0..g.order() {
        assert_eq!(g.key(x)[0].count_ones() % 2, 0);
    }
}

fn arb_signed(n: usize) -> impl Strategy<Value = SignedPermElement> {
    (0u32..1 << n, Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle())
        .prop_map(|(mask, perm)| SignedPermElement::from_key(&std::iter::once(mask).chain(perm).collect::<Vec<_>>()))
}

proptest! {
    /// `(A,π)·(B,τ) = (A △ π⁻¹(B), πτ)` with permutations composed left to right.
    #[test]
    fn signed_composition_law(a in arb_signed(5), b in arb_signed(5)) {
        let ka = a.to_key();
        let kb = b.to_key();
        let (ma, pa) = (ka[0], &ka[1..]);
        let (mb, pb) = (kb[0], &kb[1..]);
        let mut pa_inv = [0u32; 5];
        for (i, &x) in pa.iter().enumerate() {
            pa_inv[x as usize] = i as u32;
        }
        let preimage = (0..5).filter(|&i| mb >> i & 1 == 1).fold(0u32, |m, i| m | 1 << pa_inv[i]);
        let prod: Vec<u32> = pa.iter().map(|&i| pb[i as usize]).collect();
        let c = a.compose(&b).to_key();
        prop_assert_eq!(c[0], ma ^ preimage);
        prop_assert_eq!(&c[1..], &prod[..]);
    }

    #[test]
    fn group_product_matches_composition(x in 0usize..48, y in 0usize..48) {
        let g = group_make("signed:3").unwrap();
        let k = SignedPermElement::from_key(g.key(x)).compose(&SignedPermElement::from_key(g.key(y))).to_key();
        prop_assert_eq!(g.key(g.mul(x, y)), &k[..]);
    }

    #[test]
    fn alternating_keys_are_even(x in 0usize..360) {
        let g = group_make("alternating:6").unwrap();
        prop_assert!(perm_is_even(g.key(x)));
    }
}
