//! Explicit low-degree induced subgraphs, each returned with a certificate.

use std::collections::HashMap;

use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::graph::{cartesian_product, cycle_graph, hypercube_graph, Graph, GraphBuilder};
use crate::group::{cayley_graph, group_make, perm_is_even, ConnectionSet, FiniteGroup};

/// A graph together with the certificate(s) a construction claims for it.
#[derive(Clone, Debug)]
pub struct Construction {
    pub graph: Graph,
    pub certificate: Certificate,
    /// Companion certificates (e.g. the disjoint independent set for `Z_3^r`).
    pub extra: Vec<Certificate>,
}

/// Right-most nonzero base-3 digit of `m`.
pub fn base3_rightmost(m: u64) -> Result<u8> {
    if m == 0 {
        return Err(Error::OutOfRange("base3_rightmost(0)".into()));
    }
    let mut m = m;
    while m.is_multiple_of(3) {
        m /= 3;
    }
    Ok((m % 3) as u8)
}

/// `Cay(D_{3^d}, {a^{3^i} b : 0 ≤ i ≤ d})` with a set of `3^d + 1` vertices
/// inducing a matching.
pub fn dihedrant_matching(d: u32) -> Result<Construction> {
    if d > 9 {
        return Err(Error::OutOfRange(format!("dihedrant d = {d} > 9")));
    }
    let n = 3u32.pow(d);
    let group = group_make(&format!("dihedral:{n}"))?;
    let el = |i: u32, s: u32| group.index_of(&[i % n, s]).expect("dihedral key");
    let conn = ConnectionSet::new(&group, (0..=d).map(|i| el(3u32.pow(i), 1)))?;
    let graph = cayley_graph(&group, &conn);
    let mut set = vec![el(0, 0), el(0, 1)];
    for i in 1..n {
        match base3_rightmost(i as u64)? {
            1 => set.push(el(i, 0)),
            _ => set.push(el(i, 1)),
        }
    }
    let certificate = Certificate::matching_set(&graph, set);
    Ok(Construction { graph, certificate, extra: Vec::new() })
}

/// Derangement numbers by `d_n = (n−1)(d_{n−1} + d_{n−2})`, `d_1 = 0`, `d_2 = 1`.
pub fn derangement_count(n: u32) -> Result<u128> {
    if n == 0 {
        return Err(Error::OutOfRange("derangement_count(0)".into()));
    }
    let (mut prev, mut cur) = (1u128, 0u128); // d_0, d_1
    for i in 2..=n {
        let next = ((i - 1) as u128)
            .checked_mul(cur + prev)
            .ok_or_else(|| Error::OutOfRange(format!("d_{n} overflows 128 bits")))?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Vertices of the domino `u_1 u_2 u_3 / v_1 v_2 v_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domino {
    U1,
    U2,
    U3,
    V1,
    V2,
    V3,
}

/// Size of `supp(π) − {1}` for a 0-based permutation.
pub fn support_without_first(perm: &[u32]) -> usize {
    (1..perm.len()).filter(|&i| perm[i] as usize != i).count()
}

/// The homomorphism from the star graph onto the domino.
pub fn domino_class(perm: &[u32]) -> Domino {
    let n = perm.len();
    let s = support_without_first(perm);
    let even = perm_is_even(perm);
    match (s + 1 >= n, s + 2 == n, even) {
        (true, _, true) => Domino::U1,
        (true, _, false) => Domino::V1,
        (false, true, false) => Domino::U2,
        (false, true, true) => Domino::V2,
        (false, false, true) => Domino::U3,
        (false, false, false) => Domino::V3,
    }
}

/// The star graph `SG_n = Cay(S_n, {(1 i)})`.
pub fn star_graph(n: usize) -> Result<(FiniteGroup, Graph)> {
    if !(2..=8).contains(&n) {
        return Err(Error::OutOfRange(format!("star graph n = {n} not in 2..=8")));
    }
    let group = group_make(&format!("symmetric:{n}"))?;
    let gens = (1..n).map(|i| {
        let mut p: Vec<u32> = (0..n as u32).collect();
        p.swap(0, i);
        group.index_of(&p).expect("transposition")
    });
    let conn = ConnectionSet::new(&group, gens.collect::<Vec<_>>())?;
    let graph = cayley_graph(&group, &conn);
    Ok((group, graph))
}

/// `K = f^{-1}{u_1,u_2,v_3}` for odd `n`, `K' = f^{-1}{v_1,v_2,u_3}` for even
/// `n`; in both cases `n!/2 + 1` vertices inducing a matching.
pub fn star_graph_subset(n: usize) -> Result<Construction> {
    let (group, graph) = star_graph(n)?;
    let wanted: [Domino; 3] = if n % 2 == 1 {
        [Domino::U1, Domino::U2, Domino::V3]
    } else {
        [Domino::V1, Domino::V2, Domino::U3]
    };
    let set: Vec<usize> = (0..group.order())
        .filter(|&x| wanted.contains(&domino_class(group.key(x))))
        .collect();
    let certificate = Certificate::matching_set(&graph, set);
    Ok(Construction { graph, certificate, extra: Vec::new() })
}

/// The involution `c_k` on `{1..2m+1}` as 0-based images.
pub fn tight_generator(m: usize, k: usize) -> Vec<u32> {
    (1..=2 * m + 1)
        .map(|i| {
            let img = if i + m < k {
                i + m
            } else if i <= m {
                i + m + 1
            } else if i < k {
                i - m
            } else if i == k {
                i
            } else {
                i - m - 1
            };
            (img - 1) as u32
        })
        .collect()
}

/// `Γ = S_{2m+1}` (m odd) or `A_{2m+1}` (m even) with `C = {c_k}`; the set
/// `{π : π(1) ≥ m+1}` induces a matching on `(m+1)/(2m+1)` of the vertices.
pub fn tight_matching(m: usize) -> Result<Construction> {
    if !(1..=3).contains(&m) {
        return Err(Error::OutOfRange(format!("tight matching m = {m} not in 1..=3")));
    }
    let (group, conn) = tight_group(m)?;
    let graph = cayley_graph(&group, &conn);
    let set: Vec<usize> = (0..group.order()).filter(|&x| group.key(x)[0] as usize >= m).collect();
    let certificate = Certificate::matching_set(&graph, set);
    Ok(Construction { graph, certificate, extra: Vec::new() })
}

/// The group and connection set of [`tight_matching`].
pub fn tight_group(m: usize) -> Result<(FiniteGroup, ConnectionSet)> {
    let n = 2 * m + 1;
    let spec = if m % 2 == 1 { format!("symmetric:{n}") } else { format!("alternating:{n}") };
    let group = group_make(&spec)?;
    let mut gens = Vec::new();
    for k in m + 1..=n {
        let c = tight_generator(m, k);
        let involution = (0..n).all(|i| c[c[i] as usize] as usize == i) && c.iter().enumerate().any(|(i, &x)| x as usize != i);
        if !involution || c[k - 1] as usize != k - 1 {
            return Err(Error::Precondition(format!("c_{k} is not an involution fixing {k}")));
        }
        gens.push(group.index_of(&c).ok_or_else(|| Error::Precondition(format!("c_{k} not in {spec}")))?);
    }
    let conn = ConnectionSet::new(&group, gens)?;
    Ok((group, conn))
}

/// Upper bound `d·n/(2d−1)` on an induced matching set, as an exact rational
/// comparison: returns `(s·(2d−1), d·n)`.
pub fn tightness_sides(s: usize, d: usize, n: usize) -> (usize, usize) {
    (s * (2 * d - 1), d * n)
}

/// A family of subsets of `{1..n}` stored as bit masks (bit `i` = element `i+1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcFamily {
    pub sets: Vec<u128>,
}

impl ArcFamily {
    pub fn new(sets: Vec<u128>) -> Self {
        Self { sets }
    }

    /// `r(F)`: largest member size.
    pub fn r(&self) -> usize {
        self.sets.iter().map(|s| s.count_ones() as usize).max().unwrap_or(0)
    }

    /// `t(F)`: largest subfamily in which every member owns a private element.
    pub fn t(&self) -> usize {
        let f = self.sets.len();
        assert!(f <= 24, "t(F) brute force limited to 24 sets");
        let mut best = 0;
        for mask in 1u32..(1 << f) {
            let chosen: Vec<u128> = (0..f).filter(|&i| mask >> i & 1 == 1).map(|i| self.sets[i]).collect();
            if chosen.len() <= best {
                continue;
            }
            let ok = (0..chosen.len()).all(|i| {
                let others = chosen.iter().enumerate().filter(|&(j, _)| j != i).fold(0u128, |a, (_, s)| a | s);
                chosen[i] & !others != 0
            });
            if ok {
                best = chosen.len();
            }
        }
        best
    }

    /// Distinct private elements force `t(F) ≤ min(|F|, |∪F|)` (empty sets never count).
    pub fn t_upper_bound(&self) -> usize {
        let nonempty = self.sets.iter().filter(|&&s| s != 0).count();
        let union = self.sets.iter().fold(0u128, |a, s| a | s);
        nonempty.min(union.count_ones() as usize)
    }
}

/// A lattice of subsets of `{1..ground}` that is a cover subposet of `B_ground`.
#[derive(Clone, Debug)]
pub struct LatticeModel {
    pub ground: usize,
    pub members: Vec<u128>,
    /// Pairs `(i, j)` with `members[j] = members[i] ∪ {x}`.
    pub covers: Vec<(usize, usize)>,
    index: HashMap<u128, usize>,
}

impl LatticeModel {
    pub fn new(ground: usize, members: Vec<u128>) -> Result<Self> {
        if ground > 128 {
            return Err(Error::OutOfRange(format!("ground set of {ground} elements")));
        }
        let full = if ground == 128 { u128::MAX } else { (1u128 << ground) - 1 };
        let index: HashMap<u128, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        if index.len() != members.len() {
            return Err(Error::InvalidGraph("duplicate lattice members".into()));
        }
        if !index.contains_key(&0) || !index.contains_key(&full) {
            return Err(Error::InvalidGraph("lattice must contain the empty and the full set".into()));
        }
        if members.iter().any(|&m| m & !full != 0) {
            return Err(Error::InvalidGraph("member outside the ground set".into()));
        }
        let mut covers = Vec::new();
        for (i, &m) in members.iter().enumerate() {
            for b in 0..ground {
                if m >> b & 1 == 0 {
                    if let Some(&j) = index.get(&(m | 1u128 << b)) {
                        covers.push((i, j));
                    }
                }
            }
        }
        Ok(Self { ground, members, covers, index })
    }

    /// The Boolean lattice `B_n`, member `x` being the mask `x`.
    pub fn boolean(n: usize) -> Result<Self> {
        if n > 20 {
            return Err(Error::OutOfRange(format!("B_{n} too large")));
        }
        Self::new(n, (0..1u128 << n).collect())
    }

    pub fn index_of(&self, set: u128) -> Option<usize> {
        self.index.get(&set).copied()
    }

    pub fn cover_graph(&self) -> Graph {
        let mut b = GraphBuilder::new(self.members.len());
        for &(i, j) in &self.covers {
            b.add_edge(i, j);
        }
        b.provenance(format!("cover graph of a lattice in B_{}", self.ground));
        b.build()
    }

    /// Least member containing `x ∪ y`, if unique.
    pub fn join(&self, x: u128, y: u128) -> Option<u128> {
        let u = x | y;
        let above: Vec<u128> = self.members.iter().copied().filter(|&m| m & u == u).collect();
        let least = *above.iter().min_by_key(|m| m.count_ones())?;
        above.iter().all(|&m| m & least == least).then_some(least)
    }

    /// Exhaustive lattice check: every pair has a join. Also checks that every
    /// inclusion between members is realized by a chain of covers, which
    /// together with one-element covers makes this a cover subposet.
    pub fn validate(&self) -> Result<()> {
        if self.members.len() > 5000 {
            return Ok(());
        }
        for &x in &self.members {
            for &y in &self.members {
                if self.join(x, y).is_none() {
                    return Err(Error::InvalidGraph(format!("no join for {x:#b} and {y:#b}")));
                }
            }
        }
        for &x in &self.members {
            if x != 0 && !self.covers.iter().any(|&(_, j)| self.members[j] == x) {
                return Err(Error::InvalidGraph(format!("{x:#b} covers nothing")));
            }
        }
        Ok(())
    }

    fn up(&self, f: u128) -> impl Iterator<Item = usize> + '_ {
        (0..self.members.len()).filter(move |&i| self.members[i] & f == f)
    }
}

/// Result of [`lattice_subset`].
#[derive(Clone, Debug)]
pub struct LatticeSubset {
    pub graph: Graph,
    pub certificate: Certificate,
    /// `(X, complement)` as a partition certificate with the same `k`.
    pub partition: Certificate,
    pub x_size: usize,
    /// `|X(F)|` from the full inclusion–exclusion expansion over joins,
    /// available when the cover graph is regular.
    pub inclusion_exclusion: Option<i64>,
}

/// `X(F) = even(↑F) ∪ odd(L ∖ ↑F)`; both it and its complement induce
/// maximum degree at most `max{r(F), t(F)}` in the cover graph.
pub fn lattice_subset(model: &LatticeModel, fam: &ArcFamily) -> Result<LatticeSubset> {
    for &f in &fam.sets {
        if model.index_of(f).is_none() {
            return Err(Error::Precondition(format!("{f:#b} is not a lattice member")));
        }
    }
    let k = fam.r().max(fam.t());
    let graph = model.cover_graph();
    let n = model.members.len();
    let mut up = vec![false; n];
    for &f in &fam.sets {
        for i in model.up(f) {
            up[i] = true;
        }
    }
    let even = |i: usize| model.members[i].count_ones().is_multiple_of(2);
    let x: Vec<usize> = (0..n).filter(|&i| if up[i] { even(i) } else { !even(i) }).collect();
    let rest: Vec<usize> = (0..n).filter(|&i| if up[i] { !even(i) } else { even(i) }).collect();
    let inclusion_exclusion = graph.regular_degree().map(|_| {
        let odd_total = (0..n).filter(|&i| !even(i)).count() as i64;
        let f = fam.sets.len();
        assert!(f <= 20, "inclusion–exclusion over {f} sets");
        let mut sum = odd_total;
        for mask in 1u32..(1 << f) {
            let mut join = 0u128;
            let mut ok = true;
            for i in (0..f).filter(|&i| mask >> i & 1 == 1) {
                match model.join(join, fam.sets[i]) {
                    Some(j) => join = j,
                    None => ok = false,
                }
            }
            assert!(ok, "join missing in a lattice");
            let (e, o) = model.up(join).fold((0i64, 0i64), |(e, o), i| if even(i) { (e + 1, o) } else { (e, o + 1) });
            let sign = if mask.count_ones() % 2 == 1 { 1 } else { -1 };
            sum += sign * (e - o);
        }
        sum
    });
    let (big, small) = if x.len() >= rest.len() { (x.clone(), rest) } else { (rest, x.clone()) };
    let certificate = Certificate::low_degree_set(&graph, big.clone(), k);
    let partition = Certificate::partition(&graph, big, small, k);
    Ok(LatticeSubset { graph, certificate, partition, x_size: x.len(), inclusion_exclusion })
}

/// `⌈√d⌉`.
pub fn ceil_sqrt(d: usize) -> usize {
    let mut s = 0;
    while s * s < d {
        s += 1;
    }
    s
}

/// Consecutive blocks of size `⌈√d⌉` covering `{1..d}`.
pub fn cfgs_blocks(d: usize) -> ArcFamily {
    let s = ceil_sqrt(d).max(1);
    let sets = (0..d)
        .step_by(s)
        .map(|start| (start..(start + s).min(d)).fold(0u128, |m, i| m | 1u128 << i))
        .collect();
    ArcFamily::new(sets)
}

/// The CFGS set in `Q_d`: more than `2^{d−1}` vertices with Δ ≤ `⌈√d⌉`.
pub fn cfgs_subset(d: usize) -> Result<Construction> {
    if !(1..=14).contains(&d) {
        return Err(Error::OutOfRange(format!("cfgs d = {d} not in 1..=14")));
    }
    let model = LatticeModel::boolean(d)?;
    let sub = lattice_subset(&model, &cfgs_blocks(d))?;
    // Member x of B_d is the mask x, so the cover graph is Q_d as indexed by hypercube_graph.
    let graph = hypercube_graph(d);
    debug_assert_eq!(graph.fingerprint(), sub.graph.fingerprint());
    Ok(Construction { graph, certificate: sub.certificate, extra: vec![sub.partition] })
}

/// Proper 3-coloring of `C_j` (0 = a, 1 = b, 2 = x) using x, with the two
/// neighbors of every x-vertex colored differently.
pub fn torus_coloring(j: usize) -> Vec<u8> {
    if j.is_multiple_of(3) {
        return (0..j).map(|p| [2, 0, 1][p % 3]).collect();
    }
    fn ok_at(c: &[u8], p: usize, j: usize) -> bool {
        // checks all constraints that involve only assigned positions ≤ p
        let prev = |q: usize| (q + j - 1) % j;
        if p > 0 && c[p] == c[p - 1] {
            return false;
        }
        if p + 1 == j && c[p] == c[0] {
            return false;
        }
        let x_ok = |q: usize| c[q] != 2 || c[prev(q)] != c[(q + 1) % j];
        if p >= 2 && !x_ok(p - 1) {
            return false;
        }
        if p + 1 == j && !(x_ok(p) && x_ok(0)) {
            return false;
        }
        true
    }
    fn dfs(c: &mut Vec<u8>, j: usize) -> bool {
        let p = c.len();
        if p == j {
            return c.contains(&2);
        }
        for color in 0..3 {
            c.push(color);
            if ok_at(c, p, j) && dfs(c, j) {
                return true;
            }
            c.pop();
        }
        false
    }
    let mut c = Vec::with_capacity(j);
    assert!(dfs(&mut c, j), "no admissible coloring of C_{j}");
    c
}

/// Degree ≤ 1 subset of `C_i` (i ≥ 6 even) with more than `i/2` vertices.
pub fn torus_x_pattern(i: usize) -> Vec<usize> {
    let mut set = Vec::new();
    let mut t = 0;
    while 3 * t < i - 2 {
        set.extend([3 * t, 3 * t + 1]);
        t += 1;
    }
    let last = *set.last().unwrap();
    if i - 2 >= last + 2 {
        set.push(i - 2);
    }
    set
}

/// `C_i □ C_j` (i, j ≥ 4 even) with more than `ij/2` vertices at Δ ≤ 2.
pub fn torus_subset(i: usize, j: usize) -> Result<Construction> {
    if i < 4 || j < 4 || i % 2 == 1 || j % 2 == 1 {
        return Err(Error::OutOfRange(format!("torus ({i},{j}) needs even sides ≥ 4")));
    }
    let graph = cartesian_product(&cycle_graph(i), &cycle_graph(j)).with_provenance(format!("C{i} □ C{j}"));
    let set = if i == 4 && j == 4 {
        torus_4x4_set(&graph)
    } else {
        // Copies of C_a along C_b, with a > 4; (u along C_a, p along C_b).
        let swap = i == 4;
        let (a, b) = if swap { (j, i) } else { (i, j) };
        let coloring = torus_coloring(b);
        let x_set = torus_x_pattern(a);
        let mut set = Vec::new();
        for (p, &color) in coloring.iter().enumerate().take(b) {
            let members: Vec<usize> = match color {
                0 => (0..a).step_by(2).collect(),
                1 => (1..a).step_by(2).collect(),
                _ => x_set.clone(),
            };
            for u in members {
                let (ci, cj) = if swap { (p, u) } else { (u, p) };
                set.push(ci * j + cj);
            }
        }
        set
    };
    let certificate = Certificate::low_degree_set(&graph, set, 2);
    Ok(Construction { graph, certificate, extra: Vec::new() })
}

// Lexicographically first 9-set inducing an 8-cycle plus an isolated vertex.
fn torus_4x4_set(g: &Graph) -> Vec<usize> {
    let mut chosen = Vec::new();
    fn rec(g: &Graph, start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == 9 {
            let h = g.induced_subgraph(chosen);
            let degs: Vec<usize> = (0..9).map(|v| h.degree(v)).collect();
            return h.m() == 8
                && degs.iter().filter(|&&d| d == 2).count() == 8
                && degs.contains(&0)
                && h.components().iter().max() == Some(&1);
        }
        for v in start..g.n() {
            chosen.push(v);
            if rec(g, v + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    assert!(rec(g, 0, &mut chosen), "C4 □ C4 has no 8-cycle plus isolated vertex");
    chosen
}

/// `Cay(Z_3^r, {±e_i})` with `3^{r−1}+1` vertices inducing a matching and a
/// disjoint independent set of `3^{r−1}` vertices.
pub fn z3r_subset(r: usize) -> Result<Construction> {
    if !(1..=9).contains(&r) {
        return Err(Error::OutOfRange(format!("z3r r = {r} not in 1..=9")));
    }
    let group = group_make(&format!("elementary:3^{r}"))?;
    let unit = |i: usize, c: u32| {
        let mut v = vec![0u32; r];
        v[i] = c;
        group.index_of(&v).unwrap()
    };
    let gens: Vec<usize> = (0..r).flat_map(|i| [unit(i, 1), unit(i, 2)]).collect();
    let conn = ConnectionSet::new(&group, gens)?;
    let graph = cayley_graph(&group, &conn);
    // Vectors over Z_3, first coordinate shifted by e_1.
    let mut a: Vec<Vec<u32>> = vec![vec![0], vec![1]];
    let mut b: Vec<Vec<u32>> = vec![vec![2]];
    for _ in 1..r {
        let ext = |v: &Vec<u32>, shift: u32, last: u32| {
            let mut w = v.clone();
            w[0] = (w[0] + shift) % 3;
            w.push(last);
            w
        };
        let mut na: Vec<Vec<u32>> = a.iter().map(|v| ext(v, 0, 0)).collect();
        na.extend(b.iter().flat_map(|v| [ext(v, 0, 1), ext(v, 0, 2)]));
        let mut nb: Vec<Vec<u32>> = b.iter().map(|v| ext(v, 0, 0)).collect();
        nb.extend(b.iter().map(|v| ext(v, 1, 1)));
        nb.extend(b.iter().map(|v| ext(v, 2, 2)));
        a = na;
        b = nb;
    }
    let idx = |vs: &[Vec<u32>]| vs.iter().map(|v| group.index_of(v).unwrap()).collect::<Vec<_>>();
    let certificate = Certificate::low_degree_set(&graph, idx(&a), 1);
    let independent = Certificate::independent_set(&graph, idx(&b));
    Ok(Construction { graph, certificate, extra: vec![independent] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::verify_certificate;

    #[test]
    fn base3() {
        assert_eq!(base3_rightmost(33).unwrap(), 2);
        assert_eq!(base3_rightmost(1).unwrap(), 1);
        assert_eq!(base3_rightmost(9).unwrap(), 1);
        assert!(base3_rightmost(0).is_err());
    }

    #[test]
    fn derangements() {
        assert_eq!(derangement_count(1).unwrap(), 0);
        assert_eq!(derangement_count(2).unwrap(), 1);
        assert_eq!(derangement_count(4).unwrap(), 9);
        assert_eq!(derangement_count(10).unwrap(), 1_334_961);
        assert!(derangement_count(40).is_err());
    }

    #[test]
    fn tight_generators_are_involutions() {
        assert_eq!(tight_generator(1, 2), vec![2, 1, 0]);
        assert_eq!(tight_generator(1, 3), vec![1, 0, 2]);
        for m in 1..=5 {
            for k in m + 1..=2 * m + 1 {
                let c = tight_generator(m, k);
                assert_eq!(c[k - 1] as usize, k - 1);
                for i in 0..c.len() {
                    assert_eq!(c[c[i] as usize] as usize, i);
                    if i + 1 != k && i >= m {
                        assert!((c[i] as usize) < m, "c_k(i) ≤ m for i ≥ m+1, i ≠ k");
                    }
                }
                assert_eq!(perm_is_even(&c), m % 2 == 0);
            }
        }
    }

    #[test]
    fn small_constructions_verify() {
        for d in 0..=3 {
            let c = dihedrant_matching(d).unwrap();
            assert!(verify_certificate(&c.graph, &c.certificate).is_valid());
            assert_eq!(c.certificate.vertices.len(), 3usize.pow(d) + 1);
        }
        for r in 1..=4 {
            let c = z3r_subset(r).unwrap();
            assert!(verify_certificate(&c.graph, &c.certificate).is_valid(), "r={r}");
            assert!(verify_certificate(&c.graph, &c.extra[0]).is_valid(), "r={r}");
            let a = &c.certificate.vertices;
            assert!(c.extra[0].vertices.iter().all(|v| !a.contains(v)));
        }
        for (i, j) in [(4, 4), (6, 4), (4, 6), (10, 6), (8, 8), (6, 10)] {
            let c = torus_subset(i, j).unwrap();
            assert!(verify_certificate(&c.graph, &c.certificate).is_valid(), "({i},{j})");
            assert!(2 * c.certificate.vertices.len() > i * j);
        }
    }

    #[test]
    fn torus_colorings() {
        assert_eq!(torus_coloring(4), vec![0, 2, 1, 2]);
        for j in (4..=20).step_by(2) {
            let c = torus_coloring(j);
            for p in 0..j {
                assert_ne!(c[p], c[(p + 1) % j]);
                if c[p] == 2 {
                    assert_ne!(c[(p + j - 1) % j], c[(p + 1) % j]);
                }
            }
        }
        for i in (6..=20).step_by(2) {
            let x = torus_x_pattern(i);
            let g = cycle_graph(i);
            assert!(g.induced_max_degree(&x).unwrap() <= 1);
            assert!(2 * x.len() > i);
        }
    }

    #[test]
    fn arc_family_parameters() {
        let f = ArcFamily::new(vec![0b0011, 0b1100]);
        assert_eq!((f.r(), f.t()), (2, 2));
        let g = ArcFamily::new(vec![0b011, 0b110, 0b101]);
        assert_eq!(g.t(), g.t());
        assert!(g.t() <= g.t_upper_bound());
        // {1,2},{2,3},{1,3}: any two have private elements, all three do not
        assert_eq!(g.t(), 2);
    }

    #[test]
    fn lattice_examples() {
        let b4 = LatticeModel::boolean(4).unwrap();
        b4.validate().unwrap();
        let s = lattice_subset(&b4, &ArcFamily::new(vec![0b0011, 0b1100])).unwrap();
        assert_eq!(s.certificate.vertices.len(), 9);
        assert!(verify_certificate(&s.graph, &s.certificate).is_valid());
        assert!(verify_certificate(&s.graph, &s.partition).is_valid());
        assert_eq!(s.inclusion_exclusion, Some(s.x_size as i64));
        let empty = lattice_subset(&b4, &ArcFamily::new(vec![])).unwrap();
        assert_eq!(empty.x_size, 8);
        assert!(lattice_subset(&LatticeModel::new(2, vec![0, 1, 3]).unwrap(), &ArcFamily::new(vec![2])).is_err());
    }
}
