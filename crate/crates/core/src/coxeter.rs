//! Finite Coxeter systems realized as permutation groups on their roots.

use std::collections::VecDeque;

use crate::cert::Certificate;
use crate::constructions::{cfgs_subset, Construction, LatticeModel};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::group::{cayley_graph, group_make, perm_is_even, Carrier, ConnectionSet, FiniteGroup, MAX_ORDER};
use crate::solver::{iota, SearchBudget};

const ROOT_TOLERANCE: f64 = 1e-9;

/// One irreducible factor of a descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    /// `I_2(m)`; `I_2(1)` is `A_1`.
    I(usize),
    H3,
    H4,
    F4,
    E6,
}

impl CoxeterType {
    fn rank(self) -> usize {
        match self {
            CoxeterType::A(n) | CoxeterType::B(n) | CoxeterType::D(n) => n,
            CoxeterType::I(1) => 1,
            CoxeterType::I(_) => 2,
            CoxeterType::H3 => 3,
            CoxeterType::H4 | CoxeterType::F4 => 4,
            CoxeterType::E6 => 6,
        }
    }

    fn order(self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            CoxeterType::A(n) => fact(n + 1),
            CoxeterType::B(n) => (1u128 << n) * fact(n),
            CoxeterType::D(n) => (1u128 << (n - 1)) * fact(n),
            CoxeterType::I(m) => 2 * m as u128,
            CoxeterType::H3 => 120,
            CoxeterType::H4 => 14400,
            CoxeterType::F4 => 1152,
            CoxeterType::E6 => 51840,
        }
    }

    /// Number of reflections.
    fn reflections(self) -> usize {
        match self {
            CoxeterType::A(n) => n * (n + 1) / 2,
            CoxeterType::B(n) => n * n,
            CoxeterType::D(n) => n * (n - 1),
            CoxeterType::I(m) => m,
            CoxeterType::H3 => 15,
            CoxeterType::H4 => 60,
            CoxeterType::F4 => 24,
            CoxeterType::E6 => 36,
        }
    }

    /// Off-diagonal bonds `(i, j, m_ij)` with `m_ij ≥ 3`.
    fn bonds(self) -> Vec<(usize, usize, usize)> {
        let path = |n: usize| (1..n).map(|i| (i - 1, i, 3)).collect::<Vec<_>>();
        match self {
            CoxeterType::A(n) => path(n),
            CoxeterType::B(n) => {
                let mut b = path(n);
                b.last_mut().unwrap().2 = 4;
                b
            }
            CoxeterType::D(n) => {
                let mut b = path(n - 1);
                b.push((n - 3, n - 1, 3));
                b
            }
            CoxeterType::I(m) if m >= 3 => vec![(0, 1, m)],
            CoxeterType::I(_) => Vec::new(),
            CoxeterType::H3 => vec![(0, 1, 5), (1, 2, 3)],
            CoxeterType::H4 => vec![(0, 1, 5), (1, 2, 3), (2, 3, 3)],
            CoxeterType::F4 => vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)],
            CoxeterType::E6 => vec![(0, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (1, 3, 3)],
        }
    }
}

/// Parses a single factor such as `A3`, `I5`, `I2(5)` or `E6`.
fn parse_factor(s: &str) -> Result<CoxeterType> {
    let bad = || Error::MalformedSpec(format!("unknown Coxeter type {s:?}"));
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: usize = inner.parse().map_err(|_| bad())?;
        return parse_factor(&format!("I{m}"));
    }
    let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
    let n: usize = tail.parse().map_err(|_| bad())?;
    let t = match (head, n) {
        ("A", 1..=6) => CoxeterType::A(n),
        ("B", 2..=5) => CoxeterType::B(n),
        ("D", 4..=5) => CoxeterType::D(n),
        ("I", 1..=12) => CoxeterType::I(n),
        ("H", 3) => CoxeterType::H3,
        ("H", 4) => CoxeterType::H4,
        ("F", 4) => CoxeterType::F4,
        ("E", 6) => CoxeterType::E6,
        ("E", 7 | 8) => return Err(Error::OutOfRange(format!("{s}: order too large"))),
        _ => return Err(bad()),
    };
    Ok(t)
}

/// A finite Coxeter system with its group realized on the root system.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    pub type_name: String,
    pub factors: Vec<CoxeterType>,
    pub rank: usize,
    /// Coxeter matrix, diagonal stored as 1.
    pub matrix: Vec<Vec<usize>>,
    /// Roots in simple-root coordinates; `roots[i + r] = −roots[i]`, the first
    /// `r` being positive.
    pub roots: Vec<Vec<f64>>,
    pub generator_perms: Vec<Vec<u32>>,
    group: FiniteGroup,
    /// Element index of each simple generator.
    gens: Vec<usize>,
    /// `right[x][s] = x·s`.
    right: Vec<Vec<u32>>,
    /// `left[x][s] = s·x`.
    left: Vec<Vec<u32>>,
    length: Vec<usize>,
}

/// Builds a Coxeter system from a descriptor like `A3`, `H4` or `A3xI5xI2`.
pub fn coxeter_system(descriptor: &str) -> Result<CoxeterSystem> {
    let factors: Vec<CoxeterType> = descriptor.split('x').map(parse_factor).collect::<Result<_>>()?;
    let order: u128 = factors.iter().map(|f| f.order()).product();
    if order > MAX_ORDER as u128 {
        return Err(Error::OutOfRange(format!("{descriptor}: order {order} exceeds {MAX_ORDER}")));
    }
    let rank: usize = factors.iter().map(|f| f.rank()).sum();
    let mut matrix = vec![vec![2usize; rank]; rank];
    let mut offset = 0;
    for f in &factors {
        for (i, j, m) in f.bonds() {
            matrix[offset + i][offset + j] = m;
            matrix[offset + j][offset + i] = m;
        }
        offset += f.rank();
    }
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] = 1;
    }
    let r: usize = factors.iter().map(|f| f.reflections()).sum();
    let (roots, generator_perms) = realize_roots(&matrix, r)?;
    let gens_keys: Vec<(String, Vec<u32>)> = generator_perms
        .iter()
        .enumerate()
        .map(|(i, p)| (format!("s{i:02}"), p.clone()))
        .collect();
    let group = FiniteGroup::generated(Carrier::Permutation(2 * r), descriptor, gens_keys)?;
    if group.order() as u128 != order {
        return Err(Error::Precondition(format!(
            "{descriptor}: generated order {} differs from {order}",
            group.order()
        )));
    }
    let gens: Vec<usize> = generator_perms.iter().map(|p| group.index_of(p).unwrap()).collect();
    let n = group.order();
    let right: Vec<Vec<u32>> = (0..n).map(|x| gens.iter().map(|&s| group.mul(x, s) as u32).collect()).collect();
    let left: Vec<Vec<u32>> = (0..n).map(|x| gens.iter().map(|&s| group.mul(s, x) as u32).collect()).collect();
    let mut length = vec![usize::MAX; n];
    length[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &y in &right[x] {
            if length[y as usize] == usize::MAX {
                length[y as usize] = length[x] + 1;
                queue.push_back(y as usize);
            }
        }
    }
    Ok(CoxeterSystem {
        type_name: descriptor.to_string(),
        factors,
        rank,
        matrix,
        roots,
        generator_perms,
        group,
        gens,
        right,
        left,
        length,
    })
}

type RootData = (Vec<Vec<f64>>, Vec<Vec<u32>>);

// Tits representation: orbit of the simple roots, frozen into permutations.
fn realize_roots(matrix: &[Vec<usize>], r: usize) -> Result<RootData> {
    let n = matrix.len();
    let bilinear: Vec<Vec<f64>> = matrix
        .iter()
        .map(|row| row.iter().map(|&m| -(std::f64::consts::PI / m as f64).cos()).collect())
        .collect();
    let reflect = |i: usize, v: &[f64]| -> Vec<f64> {
        let b: f64 = (0..n).map(|j| bilinear[i][j] * v[j]).sum();
        let mut w = v.to_vec();
        w[i] -= 2.0 * b;
        w
    };
    let find = |roots: &[Vec<f64>], v: &[f64]| {
        roots.iter().position(|x| x.iter().zip(v).all(|(a, b)| (a - b).abs() < ROOT_TOLERANCE))
    };
    let mut all: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect();
    let mut head = 0;
    while head < all.len() {
        for i in 0..n {
            let w = reflect(i, &all[head]);
            if find(&all, &w).is_none() {
                all.push(w);
                if all.len() > 2 * r {
                    return Err(Error::Precondition(format!("root orbit exceeds {} roots", 2 * r)));
                }
            }
        }
        head += 1;
    }
    if all.len() != 2 * r {
        return Err(Error::Precondition(format!("found {} roots, expected {}", all.len(), 2 * r)));
    }
    let mut positive: Vec<Vec<f64>> = Vec::with_capacity(r);
    for v in &all {
        let nonneg = v.iter().all(|&x| x > -ROOT_TOLERANCE);
        let nonpos = v.iter().all(|&x| x < ROOT_TOLERANCE);
        if nonneg == nonpos {
            return Err(Error::Precondition("root with mixed signs".into()));
        }
        if nonneg {
            positive.push(v.clone());
        }
    }
    positive.sort_by(|a, b| {
        let ha: f64 = a.iter().sum();
        let hb: f64 = b.iter().sum();
        ha.partial_cmp(&hb).unwrap().then_with(|| b.partial_cmp(a).unwrap())
    });
    let mut roots = positive.clone();
    roots.extend(positive.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<f64>>()));
    let mut perms = Vec::with_capacity(n);
    for i in 0..n {
        let p: Vec<u32> = roots
            .iter()
            .map(|v| find(&roots, &reflect(i, v)).map(|j| j as u32))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Precondition("reflection leaves the root set".into()))?;
        if (0..p.len()).any(|j| p[p[j] as usize] as usize != j) {
            return Err(Error::Precondition(format!("generator {i} is not an involution")));
        }
        let flipped = (0..r).filter(|&j| p[j] as usize >= r).count();
        if flipped != 1 {
            return Err(Error::Precondition(format!("generator {i} negates {flipped} positive roots")));
        }
        perms.push(p);
    }
    Ok((roots, perms))
}

impl CoxeterSystem {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Number of reflections `r`.
    pub fn reflections(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Element indices of the simple generators, in Coxeter-matrix order.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn length(&self, w: usize) -> usize {
        self.length[w]
    }

    /// `w·s_i`.
    pub fn right_mul(&self, w: usize, i: usize) -> usize {
        self.right[w][i] as usize
    }

    /// `s_i·w`.
    pub fn left_mul(&self, w: usize, i: usize) -> usize {
        self.left[w][i] as usize
    }

    /// Whether `s_i` and `s_j` are joined in the Coxeter–Dynkin diagram.
    pub fn bonded(&self, i: usize, j: usize) -> bool {
        i != j && self.matrix[i][j] >= 3
    }

    /// Image of each element under the homomorphism sending generator `i`
    /// to `target_gens[i]`; fails if the assignment is not well defined.
    pub fn transport(&self, target: &FiniteGroup, target_gens: &[usize]) -> Result<Vec<usize>> {
        let n = self.order();
        let mut img = vec![usize::MAX; n];
        img[0] = target.identity();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (i, &t) in target_gens.iter().enumerate() {
                let y = self.right_mul(x, i);
                let v = target.mul(img[x], t);
                if img[y] == usize::MAX {
                    img[y] = v;
                    queue.push_back(y);
                } else if img[y] != v {
                    return Err(Error::Precondition("generator assignment is not a homomorphism".into()));
                }
            }
        }
        Ok(img)
    }
}

/// `Cay(W, S)`.
pub fn coxeter_cayley(sys: &CoxeterSystem) -> Graph {
    let conn = ConnectionSet::new(&sys.group, sys.gens.iter().copied()).expect("simple generators");
    cayley_graph(&sys.group, &conn).with_provenance(format!("cay({})", sys.type_name))
}

/// Largest independent set of a graph on at most 24 vertices given by adjacency masks.
fn mis_size(adj: &[u32]) -> usize {
    let n = adj.len();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|i| s >> i & 1 == 0 || adj[i] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn dynkin_masks(sys: &CoxeterSystem) -> Vec<u32> {
    (0..sys.rank)
        .map(|i| (0..sys.rank).filter(|&j| sys.bonded(i, j)).fold(0u32, |m, j| m | 1 << j))
        .collect()
}

/// `κ` as the independence number of the Coxeter–Dynkin diagram.
pub fn kappa_formula(sys: &CoxeterSystem) -> usize {
    mis_size(&dynkin_masks(sys))
}

/// Reflections (positive root indices) `t` with `ℓ(t·w) < ℓ(w)`.
pub fn inversion_set(sys: &CoxeterSystem, w: usize) -> Vec<usize> {
    let r = sys.reflections();
    let key = sys.group.key(w);
    (0..r).filter(|&i| key[i] as usize >= r).collect()
}

/// The weak order as a lattice of inversion sets.
pub fn weak_order_lattice(sys: &CoxeterSystem) -> Result<LatticeModel> {
    let r = sys.reflections();
    if r > 128 {
        return Err(Error::OutOfRange(format!("{} reflections", r)));
    }
    let members = (0..sys.order())
        .map(|w| inversion_set(sys, w).into_iter().fold(0u128, |m, i| m | 1u128 << i))
        .collect();
    LatticeModel::new(r, members)
}

/// Minimal representatives of the cosets `W_J·w` and the graph they induce.
#[derive(Clone, Debug)]
pub struct ParabolicQuotient {
    pub j: Vec<usize>,
    /// Element indices, sorted by length then index.
    pub reps: Vec<usize>,
    pub quotient_graph: Graph,
    pub layer_sizes: Vec<usize>,
    /// `|W_J|`.
    pub parabolic_order: usize,
}

/// `W^J` as left-descent-free representatives: `ℓ(j·w) > ℓ(w)` for `j ∈ J`.
/// Right multiplication by `W_J` is then a graph automorphism of `Cay(W)` and
/// `Cay(W) ⊆ Cay(W_J) □ G(W^J)`.
pub fn parabolic_quotient(sys: &CoxeterSystem, j: &[usize]) -> Result<ParabolicQuotient> {
    if j.iter().any(|&s| s >= sys.rank) {
        return Err(Error::OutOfRange(format!("J ⊆ 0..{}", sys.rank)));
    }
    let mut jset: Vec<usize> = j.to_vec();
    jset.sort_unstable();
    jset.dedup();
    let n = sys.order();
    let mut reps: Vec<usize> =
        (0..n).filter(|&w| jset.iter().all(|&s| sys.length[sys.left_mul(w, s)] > sys.length[w])).collect();
    reps.sort_by_key(|&w| (sys.length[w], w));
    let mut pos = vec![usize::MAX; n];
    for (i, &w) in reps.iter().enumerate() {
        pos[w] = i;
    }
    let mut b = GraphBuilder::new(reps.len());
    for (i, &w) in reps.iter().enumerate() {
        for s in 0..sys.rank {
            let y = sys.right_mul(w, s);
            if pos[y] != usize::MAX && sys.length[y] > sys.length[w] {
                b.add_edge(i, pos[y]);
            }
        }
    }
    b.provenance(format!("G({}^J), J = {:?}", sys.type_name, jset));
    let quotient_graph = b.build();
    let top = reps.iter().map(|&w| sys.length[w]).max().unwrap_or(0);
    let mut layer_sizes = vec![0; top + 1];
    for &w in &reps {
        layer_sizes[sys.length[w]] += 1;
    }
    let parabolic_order = crate::group::generated_size(&sys.group, &jset.iter().map(|&s| sys.gens[s]).collect::<Vec<_>>());
    if reps.len() * parabolic_order != n {
        return Err(Error::Precondition("|W^J|·|W_J| ≠ |W|".into()));
    }
    if layer_sizes.iter().ne(layer_sizes.iter().rev()) {
        return Err(Error::Precondition("quotient layers are not palindromic".into()));
    }
    let q = ParabolicQuotient { j: jset, reps, quotient_graph, layer_sizes, parabolic_order };
    if n <= 2000 {
        check_edge_partition(sys, &q)?;
    }
    Ok(q)
}

/// Splits `w = u·i` with `u ∈ W_J`, `i ∈ W^J` by stripping left descents in `J`.
pub fn coset_factor(sys: &CoxeterSystem, j: &[usize], w: usize) -> (usize, usize) {
    let mut i = w;
    let mut u = 0;
    'outer: loop {
        for &s in j {
            let y = sys.left_mul(i, s);
            if sys.length[y] < sys.length[i] {
                i = y;
                u = sys.right_mul(u, s);
                continue 'outer;
            }
        }
        return (u, i);
    }
}

// Every Cayley edge joins either two elements of one coset W_J·i or two
// elements u·i, u·i' with i ~ i' in the quotient graph.
fn check_edge_partition(sys: &CoxeterSystem, q: &ParabolicQuotient) -> Result<()> {
    let n = sys.order();
    let mut pos = vec![usize::MAX; n];
    for (i, &w) in q.reps.iter().enumerate() {
        pos[w] = i;
    }
    let factor: Vec<(usize, usize)> = (0..n).map(|w| coset_factor(sys, &q.j, w)).collect();
    for w in 0..n {
        for s in 0..sys.rank {
            let y = sys.right_mul(w, s);
            let ((u1, i1), (u2, i2)) = (factor[w], factor[y]);
            let ok = if i1 == i2 {
                true
            } else {
                u1 == u2 && q.quotient_graph.has_edge(pos[i1], pos[i2])
            };
            if !ok {
                return Err(Error::Precondition(format!("edge ({w},{y}) crosses the coset decomposition")));
            }
        }
    }
    Ok(())
}

/// `ι_0` of the quotient graph.
pub fn iota0_quotient(q: &ParabolicQuotient) -> i64 {
    if q.quotient_graph.is_connected() {
        let (even, odd) = q
            .layer_sizes
            .iter()
            .enumerate()
            .fold((0i64, 0i64), |(e, o), (l, &c)| if l % 2 == 0 { (e + c as i64, o) } else { (e, o + c as i64) });
        (even - odd).abs()
    } else {
        iota(&q.quotient_graph, 0, &SearchBudget::unlimited()).value
    }
}

/// Outcome of [`is_cube_like`].
#[derive(Clone, Debug)]
pub struct CubeLikeReport {
    /// First `J` (lexicographic over maximal independent sets) with `ι_0 > 0`.
    pub witness: Option<Vec<usize>>,
    pub iota0: i64,
    pub log: Vec<String>,
}

impl CubeLikeReport {
    pub fn is_cube_like(&self) -> bool {
        self.witness.is_some()
    }
}

/// Maximal independent sets of the Coxeter–Dynkin diagram, lexicographic.
pub fn maximal_independent_sets(sys: &CoxeterSystem) -> Vec<Vec<usize>> {
    let adj = dynkin_masks(sys);
    let n = sys.rank;
    let full = (1u32 << n) - 1;
    let mut sets: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|&s| (0..n).all(|i| s >> i & 1 == 0 || adj[i] & s == 0))
        .filter(|&s| (0..n).all(|i| s >> i & 1 == 1 || adj[i] & s != 0) || s == full)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
        .collect();
    sets.sort();
    sets
}

fn ceil_sqrt(x: usize) -> usize {
    crate::constructions::ceil_sqrt(x)
}

/// Searches for a maximal independent `J` satisfying the necessary
/// conditions and with `ι_0(G(W^J)) > 0`.
pub fn is_cube_like(sys: &CoxeterSystem) -> Result<CubeLikeReport> {
    let kappa = kappa_formula(sys);
    let r = sys.reflections();
    let mut log = Vec::new();
    for j in maximal_independent_sets(sys) {
        if ceil_sqrt(j.len()) != ceil_sqrt(kappa) {
            log.push(format!("J = {j:?}: ⌈√{}⌉ ≠ ⌈√{kappa}⌉", j.len()));
            continue;
        }
        if (r - j.len()) % 2 == 1 {
            log.push(format!("J = {j:?}: r − |J| = {} is odd", r - j.len()));
            continue;
        }
        let q = parabolic_quotient(sys, &j)?;
        let value = iota0_quotient(&q);
        if value > 0 {
            log.push(format!("J = {j:?}: ι_0 = {value}"));
            return Ok(CubeLikeReport { witness: Some(j), iota0: value, log });
        }
        log.push(format!("J = {j:?}: ι_0 = 0"));
    }
    Ok(CubeLikeReport { witness: None, iota0: 0, log })
}

/// `{u·i : (u, i) ∈ A×A' ∪ B×B'}` from the CFGS partition of the cube `W_J`
/// and the parity partition of `G(W^J)`.
pub fn cube_like_subset(sys: &CoxeterSystem, j: &[usize]) -> Result<Certificate> {
    let adj = dynkin_masks(sys);
    if j.iter().any(|&a| j.iter().any(|&b| adj[a] >> b & 1 == 1)) {
        return Err(Error::Precondition(format!("J = {j:?} is not independent")));
    }
    let q = parabolic_quotient(sys, j)?;
    if iota0_quotient(&q) <= 0 {
        return Err(Error::Precondition(format!("J = {j:?} is not a cube-like witness")));
    }
    let d = q.j.len();
    let k = ceil_sqrt(d);
    let cfgs = cfgs_subset(d)?;
    let part = &cfgs.extra[0];
    let cube_a: Vec<usize> = part.vertices.clone();
    let cube_b: Vec<usize> = part.other.clone();
    let cube_elem = |mask: usize| {
        (0..d).filter(|&b| mask >> b & 1 == 1).fold(0usize, |u, b| sys.right_mul(u, q.j[b]))
    };
    let coloring = q.quotient_graph.two_coloring().expect("quotient graphs are bipartite");
    let side0 = coloring.iter().filter(|&&c| c == 0).count();
    let big = if 2 * side0 >= coloring.len() { 0 } else { 1 };
    let mut set = Vec::new();
    for (idx, &i) in q.reps.iter().enumerate() {
        let cube_side = if coloring[idx] == big { &cube_a } else { &cube_b };
        for &mask in cube_side {
            set.push(sys.group.mul(cube_elem(mask), i));
        }
    }
    let graph = coxeter_cayley(sys);
    Ok(Certificate::low_degree_set(&graph, set, k))
}

/// `K ∪ {(A, π) ∈ U_1 : A ≠ ∅}` in the signed-permutation model of `B_n`/`D_n`,
/// with `K` the cube-like set of `A_{n−1}` on `{∅} × S_n`.
pub fn bn_dn_subset(family: char, n: usize) -> Result<Construction> {
    let spec = match (family, n) {
        ('B', 3..=5) => format!("signed:{n}"),
        ('D', 4..=5) => format!("even-signed:{n}"),
        _ => return Err(Error::OutOfRange(format!("{family}{n} not supported"))),
    };
    let group = group_make(&spec)?;
    let conn = ConnectionSet::new(&group, group.generators().to_vec())?;
    let graph = cayley_graph(&group, &conn);
    let a = coxeter_system(&format!("A{}", n - 1))?;
    let report = is_cube_like(&a)?;
    let j = report.witness.ok_or_else(|| Error::Precondition(format!("A{} not cube-like", n - 1)))?;
    let kset = cube_like_subset(&a, &j)?;
    let transpositions: Vec<usize> = (0..n - 1)
        .map(|i| {
            let mut key: Vec<u32> = std::iter::once(0).chain(0..n as u32).collect();
            key.swap(i + 1, i + 2);
            group.index_of(&key).unwrap()
        })
        .collect();
    let image = a.transport(&group, &transpositions)?;
    let mut set: Vec<usize> = kset.vertices.iter().map(|&w| image[w]).collect();
    set.extend((0..group.order()).filter(|&x| {
        let key = group.key(x);
        key[0] != 0 && (key[0].count_ones() % 2 == 0) != perm_is_even(&key[1..])
    }));
    let k = ceil_sqrt((n - 1).div_ceil(2)) + 1;
    let certificate = Certificate::low_degree_set(&graph, set, k);
    Ok(Construction { graph, certificate, extra: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::verify_certificate;

    #[test]
    fn orders_and_reflections() {
        for (d, order, r) in [
            ("A3", 24, 6),
            ("B3", 48, 9),
            ("D4", 192, 12),
            ("I5", 10, 5),
            ("I1", 2, 1),
            ("H3", 120, 15),
            ("F4", 1152, 24),
            ("A2xI2", 24, 5),
        ] {
            let s = coxeter_system(d).unwrap();
            assert_eq!((s.order(), s.reflections()), (order, r), "{d}");
        }
        assert!(coxeter_system("E7").is_err());
        assert!(coxeter_system("Q3").is_err());
    }

    #[test]
    fn cayley_shapes() {
        let i2 = coxeter_cayley(&coxeter_system("I2").unwrap());
        assert!(i2.find_isomorphism(&crate::graph::cycle_graph(4)).is_some());
        let i5 = coxeter_cayley(&coxeter_system("I5").unwrap());
        assert!(i5.find_isomorphism(&crate::graph::cycle_graph(10)).is_some());
        let a3 = coxeter_cayley(&coxeter_system("A3").unwrap());
        assert_eq!((a3.n(), a3.regular_degree()), (24, Some(3)));
        assert!(a3.is_bipartite());
    }

    #[test]
    fn inversion_sets_model_weak_order() {
        let a2 = coxeter_system("A2").unwrap();
        let w0 = (0..6).max_by_key(|&w| a2.length(w)).unwrap();
        assert_eq!(inversion_set(&a2, w0).len(), 3);
        assert!(inversion_set(&a2, 0).is_empty());
        let a3 = coxeter_system("A3").unwrap();
        let lat = weak_order_lattice(&a3).unwrap();
        lat.validate().unwrap();
        let g = coxeter_cayley(&a3);
        assert_eq!(lat.cover_graph().canonical_serialize(), g.canonical_serialize());
        for w in 0..a3.order() {
            assert_eq!(inversion_set(&a3, w).len(), a3.length(w));
        }
    }

    #[test]
    fn quotients() {
        let i5 = coxeter_system("I5").unwrap();
        let q = parabolic_quotient(&i5, &[0]).unwrap();
        assert_eq!(q.layer_sizes, vec![1; 5]);
        assert_eq!(iota0_quotient(&q), 1);
        let a2 = coxeter_system("A2").unwrap();
        assert_eq!(parabolic_quotient(&a2, &[0]).unwrap().reps.len(), 3);
        let a3 = coxeter_system("A3").unwrap();
        assert!(iota0_quotient(&parabolic_quotient(&a3, &[0, 2]).unwrap()) >= 2);
        assert_eq!(parabolic_quotient(&a3, &[]).unwrap().reps.len(), 24);
    }

    #[test]
    fn cube_like_examples() {
        for (d, expect) in [("A2", true), ("A3", true), ("A4", true), ("I3", true), ("I4", false), ("I6", false)] {
            assert_eq!(is_cube_like(&coxeter_system(d).unwrap()).unwrap().is_cube_like(), expect, "{d}");
        }
        let a3 = coxeter_system("A3").unwrap();
        let j = is_cube_like(&a3).unwrap().witness.unwrap();
        let cert = cube_like_subset(&a3, &j).unwrap();
        assert_eq!(cert.vertices.len(), 14);
        assert!(verify_certificate(&coxeter_cayley(&a3), &cert).is_valid());
        let i3 = coxeter_system("I3").unwrap();
        let cert = cube_like_subset(&i3, &[0]).unwrap();
        assert_eq!((cert.vertices.len(), cert.k), (4, 1));
    }

    #[test]
    fn bn_dn() {
        let c = bn_dn_subset('B', 3).unwrap();
        assert_eq!(c.certificate.vertices.len(), 25);
        assert_eq!(c.certificate.k, 2);
        assert!(verify_certificate(&c.graph, &c.certificate).is_valid());
    }
}
