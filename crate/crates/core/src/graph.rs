//! Undirected graphs with canonical serialization, products and covers.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Undirected simple graph on `0..n`. Loops are allowed (polarity graphs)
/// and count 2 towards the degree of their vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    loops: Vec<bool>,
    m: usize,
    provenance: String,
    vertex_transitive: bool,
}

/// Accumulates edges; duplicates are merged on [`GraphBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<(u32, u32)>,
    loops: Vec<u32>,
    provenance: String,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        Self { n, ..Default::default() }
    }

    /// Adds `{u, v}`; `u == v` adds a loop. Panics on out-of-range vertices.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range {}", self.n);
        if u == v {
            self.loops.push(u as u32);
        } else {
            self.edges.push((u.min(v) as u32, u.max(v) as u32));
        }
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        self.add_edge(u, v);
        Ok(())
    }

    pub fn provenance(&mut self, p: impl Into<String>) -> &mut Self {
        self.provenance = p.into();
        self
    }

    pub fn build(mut self) -> Graph {
        self.edges.sort_unstable();
        self.edges.dedup();
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        let mut loops = vec![false; self.n];
        for &v in &self.loops {
            loops[v as usize] = true;
        }
        Graph {
            adj,
            loops,
            m: self.edges.len(),
            provenance: self.provenance,
            vertex_transitive: false,
        }
    }

    /// Builds a graph known to be vertex-transitive (e.g. a Cayley graph).
    pub fn build_transitive(self) -> Graph {
        let mut g = self.build();
        g.vertex_transitive = true;
        g
    }
}

impl Graph {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.try_add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of non-loop edges.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn loop_count(&self) -> usize {
        self.loops.iter().filter(|&&l| l).count()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            self.loops[u]
        } else {
            self.adj[u].binary_search(&(v as u32)).is_ok()
        }
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len() + 2 * self.loops[v] as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Common degree when the graph is regular (loops counting 2).
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n() == 0 { 0 } else { self.degree(0) };
        (0..self.n()).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Non-loop edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, row)| {
            row.iter().filter(move |&&v| v as usize > u).map(move |&v| (u, v as usize))
        })
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = p.into();
        self
    }

    pub fn is_vertex_transitive(&self) -> bool {
        self.vertex_transitive
    }

    /// Marks the graph as vertex-transitive. Only sound when the caller knows
    /// the automorphism group acts transitively.
    pub fn assume_vertex_transitive(mut self) -> Self {
        self.vertex_transitive = true;
        self
    }

    /// `Δ(G[S])`, loops counting 2. Duplicates in `s` are ignored.
    pub fn induced_max_degree(&self, s: &[usize]) -> Result<usize> {
        let mut inside = vec![false; self.n()];
        for &v in s {
            if v >= self.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
            }
            inside[v] = true;
        }
        Ok((0..self.n())
            .filter(|&v| inside[v])
            .map(|v| {
                let d = self.adj[v].iter().filter(|&&u| inside[u as usize]).count();
                d + 2 * self.loops[v] as usize
            })
            .max()
            .unwrap_or(0))
    }

    pub fn induced_subgraph(&self, s: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in s.iter().enumerate() {
            pos[v] = i;
        }
        let mut b = GraphBuilder::new(s.len());
        for (i, &v) in s.iter().enumerate() {
            if self.loops[v] {
                b.add_edge(i, i);
            }
            for &u in &self.adj[v] {
                let j = pos[u as usize];
                if j != usize::MAX && j > i {
                    b.add_edge(i, j);
                }
            }
        }
        b.provenance(format!("induced subgraph of {}", self.provenance));
        b.build()
    }

    /// Proper 2-coloring, components colored from their least vertex which
    /// gets color 0. `None` when some component has an odd cycle or a loop.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        if self.loops.iter().any(|&l| l) {
            return None;
        }
        let mut color = vec![u8::MAX; self.n()];
        let mut queue = VecDeque::new();
        for root in 0..self.n() {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    let u = u as usize;
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        queue.push_back(u);
                    } else if color[u] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// The two color classes, or `None` when not bipartite.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let color = self.two_coloring()?;
        let (a, b): (Vec<usize>, Vec<usize>) = (0..self.n()).partition(|&v| color[v] == 0);
        Some((a, b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Component index per vertex, numbered in order of least vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut next = 0;
        let mut stack = Vec::new();
        for root in 0..self.n() {
            if comp[root] != usize::MAX {
                continue;
            }
            comp[root] = next;
            stack.push(root);
            while let Some(v) = stack.pop() {
                for &u in &self.adj[v] {
                    if comp[u as usize] == usize::MAX {
                        comp[u as usize] = next;
                        stack.push(u as usize);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Length of a shortest cycle; `None` for forests. Loops give girth 1.
    pub fn girth(&self) -> Option<usize> {
        if self.loops.iter().any(|&l| l) {
            return Some(1);
        }
        let n = self.n();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let roots: Vec<usize> = if self.vertex_transitive && n > 0 { vec![0] } else { (0..n).collect() };
        for root in roots {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                if 2 * dist[v] + 1 >= best {
                    break;
                }
                for &u in &self.adj[v] {
                    let u = u as usize;
                    if dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        parent[u] = v;
                        queue.push_back(u);
                    } else if parent[v] != u {
                        best = best.min(dist[u] + dist[v] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// `G × K_2`: vertex `(v, c)` is `v + c·n`; a loop at `v` becomes the
    /// edge `{(v,0), (v,1)}`.
    pub fn kronecker_double_cover(&self) -> Graph {
        let n = self.n();
        let mut b = GraphBuilder::new(2 * n);
        for (u, v) in self.edges() {
            b.add_edge(u, v + n);
            b.add_edge(v, u + n);
        }
        for v in (0..n).filter(|&v| self.loops[v]) {
            b.add_edge(v, v + n);
        }
        b.provenance(format!("kronecker cover of {}", self.provenance));
        let mut g = b.build();
        g.vertex_transitive = self.vertex_transitive;
        g
    }

    /// Checks that `map` is a bijection carrying edges onto edges.
    pub fn is_isomorphism(&self, other: &Graph, map: &[usize]) -> bool {
        if self.n() != other.n() || map.len() != self.n() || self.m != other.m {
            return false;
        }
        let mut hit = vec![false; other.n()];
        for &x in map {
            if x >= other.n() || std::mem::replace(&mut hit[x], true) {
                return false;
            }
        }
        (0..self.n()).all(|v| self.loops[v] == other.loops[map[v]])
            && self.edges().all(|(u, v)| other.has_edge(map[u], map[v]))
    }

    /// Backtracking isomorphism search for small graphs (at most 256
    /// vertices, node-limited). Returns `map` with `map[v]` the image of `v`.
    pub fn find_isomorphism(&self, other: &Graph) -> Option<Vec<usize>> {
        let n = self.n();
        if n != other.n() || self.m != other.m || n > 256 {
            return None;
        }
        let mut ds: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut dt: Vec<usize> = (0..n).map(|v| other.degree(v)).collect();
        ds.sort_unstable();
        dt.sort_unstable();
        if ds != dt {
            return None;
        }
        // Vertices of `self` in BFS order over all components.
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let start = order.len();
            order.push(root);
            let mut i = start;
            while i < order.len() {
                let v = order[i];
                for &u in &self.adj[v] {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        parent[u as usize] = v;
                        order.push(u as usize);
                    }
                }
                i += 1;
            }
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut nodes = 0u64;
        if self.extend_iso(other, &order, &parent, 0, &mut map, &mut used, &mut nodes) {
            Some(map)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_iso(
        &self,
        other: &Graph,
        order: &[usize],
        parent: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
        nodes: &mut u64,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        *nodes += 1;
        if *nodes > 5_000_000 {
            return false;
        }
        let v = order[depth];
        let candidates: Vec<usize> = if parent[v] == usize::MAX {
            (0..other.n()).collect()
        } else {
            other.adj[map[parent[v]]].iter().map(|&x| x as usize).collect()
        };
        for c in candidates {
            if used[c] || other.degree(c) != self.degree(v) || other.loops[c] != self.loops[v] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| self.has_edge(u, v) == other.has_edge(map[u], c));
            if !consistent {
                continue;
            }
            map[v] = c;
            used[c] = true;
            if self.extend_iso(other, order, parent, depth + 1, map, used, nodes) {
                return true;
            }
            used[c] = false;
            map[v] = usize::MAX;
        }
        false
    }

    /// The bytes whose SHA-256 is the fingerprint.
    pub fn canonical_serialize(&self) -> Vec<u8> {
        let mut s = format!("graph {} {}\n", self.n(), self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        for v in (0..self.n()).filter(|&v| self.loops[v]) {
            let _ = writeln!(s, "loop {v}");
        }
        s.into_bytes()
    }

    /// Lowercase hex SHA-256 of [`Graph::canonical_serialize`].
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_serialize()))
    }

    /// Parses the canonical `.graph` format. Edge lines may come in any order.
    pub fn parse(text: &str) -> Result<Graph> {
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty input".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 || h[0] != "graph" {
            return Err(perr(hl + 1, format!("expected `graph <n> <m>`, got `{header}`")));
        }
        let num = |s: &str, line: usize| {
            s.parse::<usize>().map_err(|_| perr(line, format!("bad integer `{s}`")))
        };
        let n = num(h[1], hl + 1)?;
        let m = num(h[2], hl + 1)?;
        let mut b = GraphBuilder::new(n);
        let mut count = 0;
        for (i, line) in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            match t.as_slice() {
                ["loop", v] => {
                    let v = num(v, i + 1)?;
                    b.try_add_edge(v, v).map_err(|e| perr(i + 1, e.to_string()))?;
                }
                [u, v] => {
                    let (u, v) = (num(u, i + 1)?, num(v, i + 1)?);
                    if u == v {
                        return Err(perr(i + 1, "self-edge must be written as `loop v`".into()));
                    }
                    b.try_add_edge(u, v).map_err(|e| perr(i + 1, e.to_string()))?;
                    count += 1;
                }
                _ => return Err(perr(i + 1, format!("unrecognized line `{line}`"))),
            }
        }
        let g = b.build();
        if g.m != m || count != m {
            return Err(Error::InvalidGraph(format!("header claims {m} edges, found {count} ({} distinct)", g.m)));
        }
        Ok(g)
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.canonical_serialize())?;
        Ok(())
    }

    pub fn read_file(path: &Path) -> Result<Graph> {
        let text = std::fs::read_to_string(path)?;
        Ok(Graph::parse(&text)?.with_provenance(path.display().to_string()))
    }

    /// Graphviz rendering; `highlight` vertices are filled.
    pub fn to_dot(&self, highlight: &[usize]) -> String {
        let mut marked = vec![false; self.n()];
        for &v in highlight {
            marked[v] = true;
        }
        let mut s = String::from("graph G {\n");
        for (v, _) in marked.iter().enumerate().filter(|(_, &m)| m) {
            let _ = writeln!(s, "  {v} [style=filled, fillcolor=gray];");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        for v in (0..self.n()).filter(|&v| self.loops[v]) {
            let _ = writeln!(s, "  {v} -- {v};");
        }
        s.push_str("}\n");
        s
    }
}

/// `G □ H` with `(u, u')` indexed `u·|V(H)| + u'`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n();
    let mut b = GraphBuilder::new(g.n() * nh);
    for u in 0..g.n() {
        for (x, y) in h.edges() {
            b.add_edge(u * nh + x, u * nh + y);
        }
    }
    for (u, v) in g.edges() {
        for x in 0..nh {
            b.add_edge(u * nh + x, v * nh + x);
        }
    }
    b.provenance(format!("({}) □ ({})", g.provenance, h.provenance));
    let mut out = b.build();
    out.vertex_transitive = g.vertex_transitive && h.vertex_transitive;
    out
}

/// Lexicographic product `G[H]`: `(u,u') ~ (v,v')` iff `u ~ v`, or `u = v`
/// and `u' ~ v'`. Indexed like [`cartesian_product`].
pub fn lexicographic_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n();
    let mut b = GraphBuilder::new(g.n() * nh);
    for u in 0..g.n() {
        for (x, y) in h.edges() {
            b.add_edge(u * nh + x, u * nh + y);
        }
    }
    for (u, v) in g.edges() {
        for x in 0..nh {
            for y in 0..nh {
                b.add_edge(u * nh + x, v * nh + y);
            }
        }
    }
    b.provenance(format!("({})[{}]", g.provenance, h.provenance));
    let mut out = b.build();
    out.vertex_transitive = g.vertex_transitive && h.vertex_transitive;
    out
}

/// Whether `map` is a surjective homomorphism that is bijective from the
/// edges at each vertex of `cover` onto the edges at its image.
pub fn is_covering_map(cover: &Graph, base: &Graph, map: &[usize]) -> bool {
    if map.len() != cover.n() || map.iter().any(|&x| x >= base.n()) {
        return false;
    }
    let mut hit = vec![false; base.n()];
    for &x in map {
        hit[x] = true;
    }
    if hit.iter().any(|&h| !h) {
        return false;
    }
    for v in 0..cover.n() {
        if cover.has_loop(v) {
            // loops would have to map onto loops; not needed by any caller
            return false;
        }
        let mut images: Vec<usize> = cover.neighbors(v).iter().map(|&u| map[u as usize]).collect();
        images.sort_unstable();
        let mut expected: Vec<usize> = base.neighbors(map[v]).iter().map(|&u| u as usize).collect();
        if base.has_loop(map[v]) {
            expected.push(map[v]);
            expected.sort_unstable();
        }
        if images != expected {
            return false;
        }
    }
    true
}

pub fn empty_graph(n: usize) -> Graph {
    GraphBuilder::new(n).build().with_provenance(format!("empty({n})"))
}

pub fn cycle_graph(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for i in 0..n {
        b.add_edge(i, (i + 1) % n);
    }
    b.provenance(format!("C{n}"));
    b.build_transitive()
}

pub fn path_graph(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for i in 1..n {
        b.add_edge(i - 1, i);
    }
    b.provenance(format!("P{n}"));
    b.build()
}

pub fn complete_graph(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            b.add_edge(u, v);
        }
    }
    b.provenance(format!("K{n}"));
    b.build_transitive()
}

/// `Q_d` on bitmasks `0..2^d`, `x ~ x ^ (1 << i)`.
pub fn hypercube_graph(d: usize) -> Graph {
    assert!(d <= 20, "hypercube dimension {d} too large");
    let n = 1usize << d;
    let mut b = GraphBuilder::new(n);
    for x in 0..n {
        for i in 0..d {
            b.add_edge(x, x ^ (1 << i));
        }
    }
    b.provenance(format!("Q{d}"));
    b.build_transitive()
}

/// `G(n, k)`: outer vertices `0..n`, inner `n..2n`.
pub fn generalized_petersen(n: usize, k: usize) -> Graph {
    let mut b = GraphBuilder::new(2 * n);
    for i in 0..n {
        b.add_edge(i, (i + 1) % n);
        b.add_edge(i, n + i);
        b.add_edge(n + i, n + (i + k) % n);
    }
    b.provenance(format!("G({n},{k})"));
    b.build()
}

pub fn petersen_graph() -> Graph {
    generalized_petersen(5, 2).assume_vertex_transitive().with_provenance("petersen")
}

pub fn desargues_graph() -> Graph {
    generalized_petersen(10, 3).assume_vertex_transitive().with_provenance("desargues")
}
