mod common;

use proptest::prelude::*;

use common::{brute_low_degree, brute_sigma};
use sensitivity_core::constructions::{
    base3_rightmost, cfgs_blocks, cfgs_subset, derangement_count, dihedrant_matching, domino_class, lattice_subset,
    star_graph, star_graph_subset, support_without_first, tight_generator, tight_group, tight_matching,
    torus_coloring, torus_subset, torus_x_pattern, z3r_subset, ArcFamily, Domino, LatticeModel,
};
use sensitivity_core::coxeter::{coxeter_system, weak_order_lattice};
use sensitivity_core::graph::{cartesian_product, cycle_graph};
use sensitivity_core::solver::{sensitivity, SearchBudget};
use sensitivity_core::verify_certificate;

fn valid_with(c: &sensitivity_core::constructions::Construction, k: usize) -> usize {
    let report = verify_certificate(&c.graph, &c.certificate);
    assert!(report.is_valid(), "{report}");
    let measured = report.measured_degree.unwrap();
    assert!(measured <= k);
    measured
}

#[test]
fn base3_examples() {
    assert_eq!(base3_rightmost(33).unwrap(), 2);
    assert_eq!(base3_rightmost(1).unwrap(), 1);
    assert_eq!(base3_rightmost(9).unwrap(), 1);
    assert!(base3_rightmost(0).is_err());
}

#[test]
fn dihedrant_small_cases() {
    let d0 = dihedrant_matching(0).unwrap();
    assert_eq!((d0.graph.n(), d0.graph.m(), d0.certificate.vertices.len()), (2, 1, 2));
    let d1 = dihedrant_matching(1).unwrap();
    assert!(d1.graph.find_isomorphism(&cycle_graph(6)).is_some());
    assert_eq!(d1.certificate.vertices.len(), 4);
    assert_eq!(valid_with(&d1, 1), 1);
    // Every 4-subset of C_6 inducing Δ ≤ 1 is two disjoint edges, and 4 is optimal.
    assert_eq!(brute_low_degree(&d1.graph, 1), 4);
    let d2 = dihedrant_matching(2).unwrap();
    assert_eq!((d2.graph.n(), d2.graph.regular_degree(), d2.certificate.vertices.len()), (18, Some(3), 10));
    assert_eq!(brute_sigma(&d2.graph), 1);
    assert!(dihedrant_matching(10).is_err());
}

#[test]
fn derangements_against_enumeration() {
    for n in 1..=8u32 {
        let count = permutations(n as usize).into_iter().filter(|p| p.iter().enumerate().all(|(i, &x)| i != x)).count();
        assert_eq!(derangement_count(n).unwrap(), count as u128, "n = {n}");
    }
    assert_eq!(derangement_count(4).unwrap(), 9);
    assert!(derangement_count(0).is_err());
    assert!(derangement_count(34).is_ok());
    assert!(derangement_count(36).is_err());
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn domino_adjacent(a: Domino, b: Domino) -> bool {
    use Domino::*;
    let idx = |d: Domino| match d {
        U1 => (0u8, 0u8),
        U2 => (0, 1),
        U3 => (0, 2),
        V1 => (1, 0),
        V2 => (1, 1),
        V3 => (1, 2),
    };
    let ((r1, c1), (r2, c2)) = (idx(a), idx(b));
    (r1 == r2 && c1.abs_diff(c2) == 1) || (c1 == c2 && r1 != r2)
}

#[test]
fn star_graph_structure() {
    for n in 3..=6 {
        let (group, g) = star_graph(n).unwrap();
        for (u, v) in g.edges() {
            let (a, b) = (group.key(u), group.key(v));
            // Supports without the first point differ in at most one element.
            assert!(support_without_first(a).abs_diff(support_without_first(b)) <= 1);
            assert!(domino_adjacent(domino_class(a), domino_class(b)), "n = {n}");
        }
    }
    let (_, nauru) = star_graph(4).unwrap();
    assert_eq!((nauru.n(), nauru.regular_degree(), nauru.girth()), (24, Some(3), Some(6)));
}

#[test]
fn star_graph_sets() {
    let s3 = star_graph_subset(3).unwrap();
    assert!(s3.graph.find_isomorphism(&cycle_graph(6)).is_some());
    assert_eq!(s3.certificate.vertices.len(), 4);
    assert_eq!(brute_low_degree(&s3.graph, 1), 4);
    assert_eq!(valid_with(&star_graph_subset(5).unwrap(), 1), 1);
    assert_eq!(star_graph_subset(5).unwrap().certificate.vertices.len(), 61);
    // The closed form n!/2 + (−1)^{n+1} agrees with n!/2 + 1 only for odd n.
    for n in 3..=7usize {
        let fact: i64 = (1..=n as i64).product();
        let closed = fact / 2 + if n % 2 == 1 { 1 } else { -1 };
        let size = star_graph_subset(n).unwrap().certificate.vertices.len() as i64;
        assert_eq!(size, fact / 2 + 1);
        assert!(size >= closed);
    }
}

#[test]
fn tight_generators_are_involutions() {
    for m in 1..=3 {
        for k in m + 1..=2 * m + 1 {
            let c = tight_generator(m, k);
            assert!((0..c.len()).all(|i| c[c[i] as usize] as usize == i));
            assert_eq!(c[k - 1] as usize, k - 1);
        }
        let (group, conn) = tight_group(m).unwrap();
        assert!(conn.generates(&group));
    }
}

#[test]
fn tight_matching_small() {
    let t1 = tight_matching(1).unwrap();
    assert!(t1.graph.find_isomorphism(&cycle_graph(6)).is_some());
    assert_eq!(t1.certificate.vertices.len(), 4);
    assert_eq!(brute_low_degree(&t1.graph, 1), 4);
    let t3 = tight_matching(3).unwrap();
    assert_eq!((t3.graph.n(), t3.certificate.vertices.len()), (5040, 2880));
    assert_eq!(valid_with(&t3, 1), 1);
    assert!(tight_matching(4).is_err());
}

#[test]
fn arc_family_parameters() {
    let f = ArcFamily::new(vec![0b0011, 0b0110, 0b1100]);
    assert_eq!(f.r(), 2);
    // {1,2} and {3,4} own private elements; adding {2,3} leaves it none.
    assert_eq!(f.t(), 2);
    assert!(f.t() <= f.t_upper_bound());
    assert_eq!(ArcFamily::new(vec![]).t(), 0);
    assert_eq!(cfgs_blocks(9).sets, vec![0b111, 0b111000, 0b111000000]);
}

#[test]
fn lattice_examples() {
    let b4 = LatticeModel::boolean(4).unwrap();
    b4.validate().unwrap();
    let sub = lattice_subset(&b4, &ArcFamily::new(vec![0b0011, 0b1100])).unwrap();
    assert!(sub.certificate.vertices.len() >= 9);
    assert_eq!(sub.certificate.k, 2);
    assert!(verify_certificate(&sub.graph, &sub.certificate).is_valid());
    assert!(verify_certificate(&sub.graph, &sub.partition).is_valid());
    assert_eq!(sub.inclusion_exclusion, Some(sub.x_size as i64));

    let empty = lattice_subset(&b4, &ArcFamily::new(vec![])).unwrap();
    assert_eq!(empty.x_size, 8);
    assert_eq!(sub.graph.induced_max_degree(&odd_members(&b4)).unwrap(), 0);

    assert!(LatticeModel::new(2, vec![0, 1]).is_err());
    assert!(lattice_subset(&b4, &ArcFamily::new(vec![1 << 7])).is_err());
}

fn odd_members(m: &LatticeModel) -> Vec<usize> {
    (0..m.members.len()).filter(|&i| m.members[i].count_ones() % 2 == 1).collect()
}

#[test]
fn weak_order_of_a2() {
    let sys = coxeter_system("A2").unwrap();
    let lattice = weak_order_lattice(&sys).unwrap();
    lattice.validate().unwrap();
    assert_eq!(lattice.members.len(), 6);
    let atom = lattice.members.iter().copied().find(|m| m.count_ones() == 1).unwrap();
    let sub = lattice_subset(&lattice, &ArcFamily::new(vec![atom])).unwrap();
    assert_eq!(sub.certificate.k, 1);
    assert!(verify_certificate(&sub.graph, &sub.certificate).is_valid());
    // Exhaustive check on the hexagon: no set larger than 4 has Δ ≤ 1.
    assert!(sub.certificate.vertices.len() <= brute_low_degree(&sub.graph, 1));
    assert_eq!(brute_low_degree(&sub.graph, 1), 4);
}

#[test]
fn cfgs_sets() {
    let c1 = cfgs_subset(1).unwrap();
    assert_eq!((c1.certificate.vertices.len(), c1.certificate.k), (2, 1));
    let c4 = cfgs_subset(4).unwrap();
    assert_eq!(c4.certificate.vertices.len(), 9);
    valid_with(&c4, 2);
    let c9 = cfgs_subset(9).unwrap();
    assert!(c9.certificate.vertices.len() >= 257);
    valid_with(&c9, 3);
    let model = LatticeModel::boolean(9).unwrap();
    let sub = lattice_subset(&model, &cfgs_blocks(9)).unwrap();
    assert_eq!(sub.inclusion_exclusion, Some(sub.x_size as i64));
    for d in 1..=14 {
        let c = cfgs_subset(d).unwrap();
        let part = verify_certificate(&c.graph, &c.extra[0]);
        assert!(part.is_valid(), "d = {d}: {part}");
        assert!(c.extra[0].size >= 2, "d = {d}");
    }
}

#[test]
fn torus_sets() {
    for j in 3..=12 {
        let col = torus_coloring(j);
        assert_eq!(col.len(), j);
        assert!(col.contains(&2));
        for v in 0..j {
            let (prev, next) = (col[(v + j - 1) % j], col[(v + 1) % j]);
            assert_ne!(col[v], next);
            if col[v] == 2 {
                assert_ne!(prev, next);
            }
        }
    }
    for i in [6, 8, 10] {
        let pat = torus_x_pattern(i);
        assert!(2 * pat.len() > i);
        assert!(cycle_graph(i).induced_max_degree(&pat).unwrap() <= 1);
    }
    let t44 = torus_subset(4, 4).unwrap();
    assert_eq!((t44.graph.n(), t44.certificate.vertices.len()), (16, 9));
    valid_with(&t44, 2);
    let t64 = torus_subset(6, 4).unwrap();
    assert!(t64.certificate.vertices.len() >= 13);
    valid_with(&t64, 2);
    let s = sensitivity(&cartesian_product(&cycle_graph(6), &cycle_graph(4)), None, &SearchBudget::unlimited());
    assert_eq!((s.value, s.is_exact()), (2, true));
    let t106 = torus_subset(10, 6).unwrap();
    assert!(t106.certificate.vertices.len() >= 31);
    valid_with(&t106, 2);
    assert!(torus_subset(5, 4).is_err());
}

#[test]
fn z3r_sets() {
    let r1 = z3r_subset(1).unwrap();
    assert_eq!((r1.graph.n(), r1.certificate.vertices.len()), (3, 2));
    let r2 = z3r_subset(2).unwrap();
    assert_eq!(r2.certificate.vertices.len(), 4);
    assert_eq!(r2.extra[0].vertices.len(), 3);
    let r4 = z3r_subset(4).unwrap();
    assert_eq!((r4.graph.n(), r4.certificate.vertices.len()), (81, 28));
    assert_eq!(valid_with(&r4, 1), 1);
    let ind = verify_certificate(&r4.graph, &r4.extra[0]);
    assert!(ind.is_valid() && ind.measured_degree == Some(0));
}

proptest! {
    #[test]
    fn base3_digit_is_last_nonzero(m in 1u64..1_000_000) {
        let mut x = m;
        while x % 3 == 0 {
            x /= 3;
        }
        prop_assert_eq!(base3_rightmost(m).unwrap() as u64, x % 3);
    }

    /// Lattice sets on Boolean lattices always meet the max{r, t} bound.
    #[test]
    fn lattice_subsets_meet_bound(n in 2usize..7, raw in proptest::collection::vec(1u128..64, 0..4)) {
        let model = LatticeModel::boolean(n).unwrap();
        let full = (1u128 << n) - 1;
        let sets: Vec<u128> = raw.into_iter().map(|s| s & full).filter(|&s| s != 0).collect();
        let fam = ArcFamily::new(sets);
        let sub = lattice_subset(&model, &fam).unwrap();
        let k = fam.r().max(fam.t());
        prop_assert!(verify_certificate(&sub.graph, &sub.partition).is_valid());
        prop_assert!(sub.graph.induced_max_degree(&sub.certificate.vertices).unwrap() <= k);
        prop_assert_eq!(sub.inclusion_exclusion, Some(sub.x_size as i64));
    }
}
