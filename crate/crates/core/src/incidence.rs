//! Projective planes over small fields, their polarity and Levi graphs, and
//! LPS Ramanujan graphs.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::group::{cayley_graph, group_make, is_prime, mod_pow, Carrier, ConnectionSet, FiniteGroup};

/// `GF(q)` for `q ∈ {2, 3, 4, 5, 7, 8, 9}` with elements `0..q` (base-`p`
/// digits are polynomial coefficients).
#[derive(Clone, Debug)]
pub struct GaloisField {
    pub q: usize,
    pub p: usize,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
}

impl GaloisField {
    pub fn new(q: usize) -> Result<Self> {
        // Monic modulus, low coefficient first, without the leading 1.
        let (p, modulus): (usize, Vec<usize>) = match q {
            2 | 3 | 5 | 7 => (q, vec![]),
            4 => (2, vec![1, 1]),    // x² + x + 1
            8 => (2, vec![1, 1, 0]), // x³ + x + 1
            9 => (3, vec![1, 0]),    // x² + 1
            _ => return Err(Error::OutOfRange(format!("GF({q}) not supported"))),
        };
        let deg = modulus.len().max(1);
        let digits = |mut x: usize| {
            let mut d = vec![0usize; deg];
            for c in d.iter_mut() {
                *c = x % p;
                x /= p;
            }
            d
        };
        let value = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
        let mut add = vec![vec![0u8; q]; q];
        let mut mul = vec![vec![0u8; q]; q];
        for x in 0..q {
            for y in 0..q {
                let (dx, dy) = (digits(x), digits(y));
                let s: Vec<usize> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x][y] = value(&s) as u8;
                if modulus.is_empty() {
                    mul[x][y] = (x * y % q) as u8;
                    continue;
                }
                let mut prod = vec![0usize; 2 * deg - 1];
                for i in 0..deg {
                    for j in 0..deg {
                        prod[i + j] = (prod[i + j] + dx[i] * dy[j]) % p;
                    }
                }
                for top in (deg..prod.len()).rev() {
                    let c = prod[top];
                    prod[top] = 0;
                    for (i, &m) in modulus.iter().enumerate() {
                        prod[top - deg + i] = (prod[top - deg + i] + (p - m % p) * c) % p;
                    }
                }
                mul[x][y] = value(&prod[..deg]) as u8;
            }
        }
        let f = Self { q, p, add, mul };
        for x in 1..q {
            if !(1..q).any(|y| f.mul(x, y) == 1) {
                return Err(Error::Precondition(format!("GF({q}): {x} has no inverse")));
            }
        }
        Ok(f)
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x][y] as usize
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x][y] as usize
    }

    pub fn inv(&self, x: usize) -> usize {
        (1..self.q).find(|&y| self.mul(x, y) == 1).expect("nonzero element")
    }

    pub fn dot(&self, a: &[usize; 3], b: &[usize; 3]) -> usize {
        (0..3).fold(0, |s, i| self.add(s, self.mul(a[i], b[i])))
    }
}

/// `P(2, q)`: points and lines are normalized vectors of `GF(q)^3`, first
/// nonzero coordinate 1; line `j` has the same coordinates as point `j`.
#[derive(Clone, Debug)]
pub struct ProjectivePlane {
    pub q: usize,
    pub field: GaloisField,
    pub points: Vec<[usize; 3]>,
}

impl ProjectivePlane {
    pub fn new(q: usize) -> Result<Self> {
        let field = GaloisField::new(q)?;
        let mut points = Vec::with_capacity(q * q + q + 1);
        for x in 0..q {
            for y in 0..q {
                for z in 0..q {
                    let v = [x, y, z];
                    if v.iter().find(|&&c| c != 0) == Some(&1) {
                        points.push(v);
                    }
                }
            }
        }
        Ok(Self { q, field, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn incident(&self, point: usize, line: usize) -> bool {
        self.field.dot(&self.points[point], &self.points[line]) == 0
    }

    /// Exhaustive check of the plane axioms and their duals.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.len();
        let fail = |m: String| Err(Error::Precondition(m));
        if n != self.q * self.q + self.q + 1 {
            return fail(format!("{n} points"));
        }
        for l in 0..n {
            let on = (0..n).filter(|&p| self.incident(p, l)).count();
            let through = (0..n).filter(|&m| self.incident(l, m)).count();
            if on != self.q + 1 || through != self.q + 1 {
                return fail(format!("line/point {l} has {on}/{through} incidences"));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let common = (0..n).filter(|&l| self.incident(a, l) && self.incident(b, l)).count();
                let meet = (0..n).filter(|&p| self.incident(p, a) && self.incident(p, b)).count();
                if common != 1 || meet != 1 {
                    return fail(format!("points {a},{b}: {common} common lines, lines meet in {meet}"));
                }
            }
        }
        Ok(())
    }
}

const PLANE_ORDERS: [usize; 7] = [2, 3, 4, 5, 7, 8, 9];

fn plane(q: usize) -> Result<ProjectivePlane> {
    if !PLANE_ORDERS.contains(&q) {
        return Err(Error::OutOfRange(format!("q = {q} not in {PLANE_ORDERS:?}")));
    }
    ProjectivePlane::new(q)
}

/// Points adjacent when orthogonal; loops at absolute points.
pub fn polarity_graph(q: usize) -> Result<Graph> {
    let pl = plane(q)?;
    let n = pl.len();
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u..n {
            if pl.incident(u, v) {
                b.add_edge(u, v);
            }
        }
    }
    b.provenance(format!("polarity graph of P(2,{q})"));
    Ok(b.build())
}

/// Point `i` is vertex `i`, line `j` is vertex `N + j`.
pub fn levi_graph(q: usize) -> Result<Graph> {
    let pl = plane(q)?;
    let n = pl.len();
    let mut b = GraphBuilder::new(2 * n);
    for p in 0..n {
        for l in 0..n {
            if pl.incident(p, l) {
                b.add_edge(p, n + l);
            }
        }
    }
    b.provenance(format!("L_{q}"));
    Ok(b.build_transitive())
}

/// Lexicographically first perfect difference set mod `q²+q+1` containing 0 and 1.
pub fn perfect_difference_set(q: usize) -> Option<Vec<usize>> {
    let m = q * q + q + 1;
    fn extend(set: &mut Vec<usize>, used: &mut [bool], m: usize, size: usize) -> bool {
        if set.len() == size {
            return true;
        }
        for x in set.last().unwrap() + 1..m {
            let diffs: Vec<usize> = set.iter().flat_map(|&y| [(x + m - y) % m, (y + m - x) % m]).collect();
            let mut ok = diffs.iter().all(|&d| !used[d]);
            let mut seen = diffs.clone();
            seen.sort_unstable();
            ok &= seen.windows(2).all(|w| w[0] != w[1]);
            if !ok {
                continue;
            }
            for &d in &diffs {
                used[d] = true;
            }
            set.push(x);
            if extend(set, used, m, size) {
                return true;
            }
            set.pop();
            for &d in &diffs {
                used[d] = false;
            }
        }
        false
    }
    let mut set = vec![0, 1];
    let mut used = vec![false; m];
    used[1] = true;
    used[m - 1] = true;
    extend(&mut set, &mut used, m, q + 1).then_some(set)
}

/// `Cay(D_{q²+q+1}, {a^d b : d ∈ D})` and a bijection onto [`levi_graph`].
#[derive(Clone, Debug)]
pub struct DihedrantLevi {
    pub difference_set: Vec<usize>,
    pub group: FiniteGroup,
    pub graph: Graph,
    pub levi: Graph,
    /// `isomorphism[v]` is the Levi vertex of Cayley vertex `v`.
    pub isomorphism: Vec<usize>,
}

pub fn dihedrant_levi(q: usize) -> Result<DihedrantLevi> {
    if !PLANE_ORDERS.contains(&q) || q > 8 {
        return Err(Error::OutOfRange(format!("q = {q} not supported")));
    }
    let difference_set = perfect_difference_set(q)
        .ok_or_else(|| Error::SearchFailed(format!("no perfect difference set for q = {q}")))?;
    let m = q * q + q + 1;
    let group = group_make(&format!("dihedral:{m}"))?;
    let gens: Vec<usize> = difference_set.iter().map(|&d| group.index_of(&[d as u32, 1]).unwrap()).collect();
    let conn = ConnectionSet::new(&group, gens)?;
    let graph = cayley_graph(&group, &conn);
    let levi = levi_graph(q)?;
    let pl = plane(q)?;
    let n = pl.len();
    // Point i lies on line j of the cyclic plane iff j − i ∈ D.
    let mut in_d = vec![false; m];
    for &d in &difference_set {
        in_d[d] = true;
    }
    let cyclic: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| in_d[(j + m - i) % m]).collect()).collect();
    let target: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| pl.incident(i, j)).collect()).collect();
    let (pmap, lmap) = plane_isomorphism(&cyclic, &target)
        .ok_or_else(|| Error::SearchFailed(format!("no isomorphism to L_{q}")))?;
    let mut isomorphism = vec![0; 2 * m];
    for i in 0..m {
        isomorphism[group.index_of(&[i as u32, 0]).unwrap()] = pmap[i];
        isomorphism[group.index_of(&[i as u32, 1]).unwrap()] = n + lmap[i];
    }
    if !graph.is_isomorphism(&levi, &isomorphism) {
        return Err(Error::Precondition("isomorphism check failed".into()));
    }
    Ok(DihedrantLevi { difference_set, group, graph, levi, isomorphism })
}

/// An incidence-preserving bijection between two projective planes given by
/// point-line incidence matrices: `(point map, line map)`.
pub fn plane_isomorphism(src: &[Vec<bool>], dst: &[Vec<bool>]) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = src.len();
    if dst.len() != n {
        return None;
    }
    let tables = |inc: &[Vec<bool>]| {
        let mut join = vec![vec![usize::MAX; n]; n];
        let mut meet = vec![vec![usize::MAX; n]; n];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    join[a][b] = (0..n).find(|&l| inc[a][l] && inc[b][l])?;
                    meet[a][b] = (0..n).find(|&p| inc[p][a] && inc[p][b])?;
                }
            }
        }
        Some((join, meet))
    };
    let (sj, sm) = tables(src)?;
    let (dj, dm) = tables(dst)?;
    let mut st = PlaneMaps::new(n);
    st.search(&sj, &sm, &dj, &dm, src, dst).then_some((st.p, st.l))
}

#[derive(Clone)]
struct PlaneMaps {
    p: Vec<usize>,
    l: Vec<usize>,
    p_used: Vec<bool>,
    l_used: Vec<bool>,
}

impl PlaneMaps {
    fn new(n: usize) -> Self {
        Self { p: vec![usize::MAX; n], l: vec![usize::MAX; n], p_used: vec![false; n], l_used: vec![false; n] }
    }

    fn set(map: &mut [usize], used: &mut [bool], x: usize, y: usize) -> bool {
        if map[x] == y {
            return true;
        }
        if map[x] != usize::MAX || used[y] {
            return false;
        }
        map[x] = y;
        used[y] = true;
        true
    }

    // Closes the partial map under joins and meets; false on a contradiction.
    fn propagate(&mut self, sj: &[Vec<usize>], sm: &[Vec<usize>], dj: &[Vec<usize>], dm: &[Vec<usize>]) -> bool {
        let n = self.p.len();
        loop {
            let mut changed = false;
            let pts: Vec<usize> = (0..n).filter(|&a| self.p[a] != usize::MAX).collect();
            for (i, &a) in pts.iter().enumerate() {
                for &b in &pts[i + 1..] {
                    let (x, y) = (sj[a][b], dj[self.p[a]][self.p[b]]);
                    if self.l[x] != y {
                        if !Self::set(&mut self.l, &mut self.l_used, x, y) {
                            return false;
                        }
                        changed = true;
                    }
                }
            }
            let lines: Vec<usize> = (0..n).filter(|&a| self.l[a] != usize::MAX).collect();
            for (i, &a) in lines.iter().enumerate() {
                for &b in &lines[i + 1..] {
                    let (x, y) = (sm[a][b], dm[self.l[a]][self.l[b]]);
                    if self.p[x] != y {
                        if !Self::set(&mut self.p, &mut self.p_used, x, y) {
                            return false;
                        }
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(
        &mut self,
        sj: &[Vec<usize>],
        sm: &[Vec<usize>],
        dj: &[Vec<usize>],
        dm: &[Vec<usize>],
        src: &[Vec<bool>],
        dst: &[Vec<bool>],
    ) -> bool {
        let n = self.p.len();
        let Some(x) = (0..n).find(|&a| self.p[a] == usize::MAX) else {
            return (0..n).all(|a| (0..n).all(|b| src[a][b] == dst[self.p[a]][self.l[b]]));
        };
        for y in 0..n {
            if self.p_used[y] {
                continue;
            }
            let saved = self.clone();
            self.p[x] = y;
            self.p_used[y] = true;
            if self.propagate(sj, sm, dj, dm) && self.search(sj, sm, dj, dm, src, dst) {
                return true;
            }
            *self = saved;
        }
        false
    }
}

/// Legendre symbol `(a | p)` for an odd prime `p`.
pub fn legendre(a: u64, p: u64) -> i32 {
    match mod_pow(a % p, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// `X^{p,q}` with its group and Legendre symbol `(p | q)`.
#[derive(Clone, Debug)]
pub struct LpsGraph {
    pub p: u64,
    pub q: u64,
    pub legendre: i32,
    pub group: FiniteGroup,
    pub graph: Graph,
}

impl LpsGraph {
    /// The girth lower bound quoted for the construction.
    pub fn girth_bound(&self) -> f64 {
        let lp = |x: f64| x.ln() / (self.p as f64).ln();
        if self.legendre == -1 {
            4.0 * lp(self.q as f64) - (4f64).ln() / (self.q as f64).ln()
        } else {
            2.0 * lp(self.q as f64)
        }
    }
}

/// The `p + 1` quadruples with `a_0 > 0` odd and `a_1, a_2, a_3` even.
pub fn lps_quadruples(p: i64) -> Vec<[i64; 4]> {
    let r = (p as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for a0 in (1..=r).step_by(2) {
        for a1 in (-r..=r).filter(|x| x % 2 == 0) {
            for a2 in (-r..=r).filter(|x| x % 2 == 0) {
                for a3 in (-r..=r).filter(|x| x % 2 == 0) {
                    if a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p {
                        out.push([a0, a1, a2, a3]);
                    }
                }
            }
        }
    }
    out
}

/// Distinct primes `p, q ≡ 1 (mod 4)` with group order at most 3000.
pub fn lps_graph(p: u64, q: u64) -> Result<LpsGraph> {
    if p == q || !is_prime(p) || !is_prime(q) || p % 4 != 1 || q % 4 != 1 {
        return Err(Error::Precondition(format!("LPS needs distinct primes ≡ 1 mod 4, got ({p},{q})")));
    }
    let leg = legendre(p, q);
    let order = if leg == -1 { q * (q * q - 1) } else { q * (q * q - 1) / 2 };
    if order > 3000 {
        return Err(Error::OutOfRange(format!("X^{{{p},{q}}} has {order} vertices")));
    }
    let i = (1..q).find(|&x| x * x % q == q - 1).expect("q ≡ 1 mod 4");
    let carrier = Carrier::ProjectiveLinear(q as u32);
    let md = |x: i64| x.rem_euclid(q as i64) as u64;
    let mut gens = Vec::new();
    for [a0, a1, a2, a3] in lps_quadruples(p as i64) {
        let m = [
            (md(a0) + i * md(a1)) % q,
            (md(a2) + i * md(a3)) % q,
            (md(-a2) + i * md(a3)) % q,
            (md(a0) + q * q - i * md(a1)) % q,
        ];
        let raw: Vec<u32> = m.iter().map(|&x| x as u32).collect();
        let mut key = Vec::new();
        carrier.compose(&carrier.identity(), &raw, &mut key);
        gens.push((carrier.label(&key), key));
    }
    if gens.len() as u64 != p + 1 {
        return Err(Error::Precondition(format!("{} quadruples for p = {p}", gens.len())));
    }
    let spec = format!("lps:{p},{q}");
    let group = FiniteGroup::generated(carrier, &spec, gens.clone())?;
    if group.order() as u64 != order {
        return Err(Error::Precondition(format!("generated {} elements, expected {order}", group.order())));
    }
    let members: Vec<usize> = gens.iter().map(|(_, k)| group.index_of(k).unwrap()).collect();
    let mut distinct = members.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != members.len() {
        return Err(Error::Precondition(format!("generators of X^{{{p},{q}}} coincide mod q")));
    }
    let conn = ConnectionSet::new(&group, members)?;
    let graph = cayley_graph(&group, &conn).with_provenance(format!("X^{{{p},{q}}}"));
    Ok(LpsGraph { p, q, legendre: leg, group, graph })
}

/// `X^{p,q}` when bipartite, else its Kronecker double cover.
pub fn y_graph(p: u64, q: u64) -> Result<Graph> {
    let x = lps_graph(p, q)?;
    Ok(if x.legendre == -1 {
        x.graph
    } else {
        x.graph.kronecker_double_cover().with_provenance(format!("Y^{{{p},{q}}}"))
    })
}

/// `(p + 1)/2 − √p`.
pub fn y_mixing_bound(p: u64) -> f64 {
    (p as f64 + 1.0) / 2.0 - (p as f64).sqrt()
}
