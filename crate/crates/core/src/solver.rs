//! Exact branch-and-bound for σ, Δ_β, ι_k, α and κ.
//!
//! The engine assigns each vertex to `In` or `Out`. A vertex ending in `In`
//! may have at most `k` neighbors in `In`; with `constrain_out` the same holds
//! for `Out` (used by ι_k). The objective is always `|In|`.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exact,
    LowerBoundOnly,
    UpperBoundOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub mode: SearchMode,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::unlimited()
    }
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self { node_limit: None, time_limit: None, mode: SearchMode::Exact }
    }

    pub fn nodes(n: u64) -> Self {
        Self { node_limit: Some(n), ..Self::unlimited() }
    }

    pub fn seconds(s: f64) -> Self {
        Self { time_limit: Some(Duration::from_secs_f64(s)), ..Self::unlimited() }
    }

    pub fn with_mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    /// Parses `"600s"` or `"1e7nodes"`; several may be joined with `,`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut b = Self::unlimited();
        for part in text.split(',').map(str::trim) {
            let bad = || Error::OutOfRange(format!("budget `{part}`"));
            if let Some(s) = part.strip_suffix("nodes") {
                let v: f64 = s.parse().map_err(|_| bad())?;
                if v.is_nan() || v < 1.0 {
                    return Err(bad());
                }
                b.node_limit = Some(v as u64);
            } else if let Some(s) = part.strip_suffix('s') {
                let v: f64 = s.parse().map_err(|_| bad())?;
                if !v.is_finite() || v <= 0.0 {
                    return Err(bad());
                }
                b.time_limit = Some(Duration::from_secs_f64(v));
            } else {
                return Err(bad());
            }
        }
        Ok(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Exact,
    /// `value` is attained; the optimum may be larger.
    Lower,
    /// `value` bounds the optimum from above; no witness of that size.
    Upper,
    Interval { lo: i64, hi: i64 },
    /// No feasible object exists (only ι can report this).
    Infeasible,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Exact => write!(f, "exact"),
            Status::Lower => write!(f, "lower"),
            Status::Upper => write!(f, "upper"),
            Status::Interval { lo, hi } => write!(f, "interval({lo},{hi})"),
            Status::Infeasible => write!(f, "infeasible"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub value: i64,
    pub status: Status,
    pub witness: Option<Certificate>,
    pub nodes: u64,
    pub seconds: f64,
}

impl SolveResult {
    /// `"value status nodes seconds"`.
    pub fn summary(&self) -> String {
        format!("{} {} {} {:.3}", self.value, self.status, self.nodes, self.seconds)
    }

    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }

    /// Smallest and largest values consistent with the result.
    pub fn bounds(&self) -> (i64, i64) {
        match self.status {
            Status::Exact => (self.value, self.value),
            Status::Lower => (self.value, i64::MAX),
            Status::Upper => (i64::MIN, self.value),
            Status::Interval { lo, hi } => (lo, hi),
            Status::Infeasible => (i64::MIN, i64::MIN),
        }
    }
}

/// Shared node and time accounting across the calls of one query.
struct Meter {
    start: Instant,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    nodes: u64,
}

impl Meter {
    fn new(b: &SearchBudget) -> Self {
        let start = Instant::now();
        Self { start, node_limit: b.node_limit, deadline: b.time_limit.map(|t| start + t), nodes: 0 }
    }

    fn exhausted(&self) -> bool {
        if let Some(l) = self.node_limit {
            if self.nodes >= l {
                return true;
            }
        }
        if let Some(d) = self.deadline {
            if self.nodes.is_multiple_of(256) && Instant::now() >= d {
                return true;
            }
        }
        false
    }

    fn seconds(&self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }
}

const UND: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

/// Outcome of one engine run.
struct RunOutcome {
    /// Best `|In|` found, with the assignment.
    best: Option<(usize, Vec<bool>)>,
    /// Proven upper bound on the optimum (valid whether or not aborted).
    upper: usize,
    aborted: bool,
}

struct Engine<'a> {
    adj: Vec<&'a [u32]>,
    k: u32,
    constrain_out: bool,
    status: Vec<u8>,
    cin: Vec<u32>,
    cout: Vec<u32>,
    cu: Vec<u32>,
    n_in: usize,
    n_und: usize,
    trail: Vec<u32>,
    work: Vec<u32>,
    /// Only completions with more than `best` In vertices are of interest.
    best: i64,
    best_assign: Option<Vec<bool>>,
    /// Stop as soon as `best >= stop_at`.
    stop_at: i64,
    aborted: bool,
    open_upper: i64,
    stamp: Vec<u32>,
    generation: u32,
    order: Vec<u32>,
}

impl<'a> Engine<'a> {
    fn new(g: &'a Graph, k: usize, constrain_out: bool) -> Self {
        let n = g.n();
        let adj: Vec<&[u32]> = (0..n).map(|v| g.neighbors(v)).collect();
        let cu = adj.iter().map(|r| r.len() as u32).collect();
        Self {
            adj,
            k: k as u32,
            constrain_out,
            status: vec![UND; n],
            cin: vec![0; n],
            cout: vec![0; n],
            cu,
            n_in: 0,
            n_und: n,
            trail: Vec::with_capacity(n),
            work: Vec::new(),
            best: -1,
            best_assign: None,
            stop_at: i64::MAX,
            aborted: false,
            open_upper: -1,
            stamp: vec![0; n],
            generation: 0,
            order: Vec::new(),
        }
    }

    fn set(&mut self, v: usize, side: u8) {
        self.status[v] = side;
        self.n_und -= 1;
        if side == IN {
            self.n_in += 1;
        }
        for &u in self.adj[v] {
            let u = u as usize;
            self.cu[u] -= 1;
            if side == IN {
                self.cin[u] += 1;
            } else {
                self.cout[u] += 1;
            }
        }
        self.trail.push(v as u32);
        self.work.push(v as u32);
        self.work.extend_from_slice(self.adj[v]);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap() as usize;
            let side = self.status[v];
            self.status[v] = UND;
            self.n_und += 1;
            if side == IN {
                self.n_in -= 1;
            }
            for &u in self.adj[v] {
                let u = u as usize;
                self.cu[u] += 1;
                if side == IN {
                    self.cin[u] -= 1;
                } else {
                    self.cout[u] -= 1;
                }
            }
        }
    }

    /// Assigns and closes under the forcing rules; `false` on contradiction.
    fn assign(&mut self, v: usize, side: u8) -> bool {
        self.work.clear();
        self.set(v, side);
        while let Some(y) = self.work.pop() {
            let y = y as usize;
            match self.status[y] {
                IN => {
                    if self.cin[y] > self.k {
                        return false;
                    }
                    if self.cin[y] == self.k && self.cu[y] > 0 && !self.force_neighbors(y, OUT) {
                        return false;
                    }
                }
                OUT if self.constrain_out => {
                    if self.cout[y] > self.k {
                        return false;
                    }
                    if self.cout[y] == self.k && self.cu[y] > 0 && !self.force_neighbors(y, IN) {
                        return false;
                    }
                }
                UND => {
                    let no_in = self.cin[y] > self.k;
                    let no_out = self.constrain_out && self.cout[y] > self.k;
                    match (no_in, no_out) {
                        (true, true) => return false,
                        (true, false) => self.set(y, OUT),
                        (false, true) => self.set(y, IN),
                        _ => {}
                    }
                }
                _ => {}
            }
        }
        true
    }

    fn force_neighbors(&mut self, y: usize, side: u8) -> bool {
        for i in 0..self.adj[y].len() {
            let u = self.adj[y][i] as usize;
            if self.status[u] == UND {
                self.set(u, side);
            }
        }
        true
    }

    fn need(&self, v: usize) -> u32 {
        (self.cin[v] + self.cu[v]).saturating_sub(self.k)
    }

    /// Upper bound on `|In|` over all completions.
    fn upper_bound(&mut self) -> usize {
        let open = self.n_in + self.n_und;
        let packing = self.packing_bound();
        let clique = if self.k == 0 { self.clique_bound() } else { 0 };
        open - packing.max(clique)
    }

    fn next_generation(&mut self) -> u32 {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        self.generation
    }

    // Lower bound on the number of undecided vertices that must go Out, from
    // a greedy packing of demand regions (overlaps are subtracted).
    fn packing_bound(&mut self) -> usize {
        let gen = self.next_generation();
        let mut total = 0usize;
        // In vertices: at least need(v) of N(v) ∩ U go Out.
        let n = self.status.len();
        let mut demands: Vec<(u32, u32)> = Vec::new();
        for v in 0..n {
            if self.status[v] == IN {
                let d = self.need(v);
                if d > 0 {
                    demands.push((d, v as u32));
                }
            }
        }
        demands.sort_unstable_by(|a, b| b.cmp(a));
        for &(d, v) in &demands {
            let v = v as usize;
            let mut used = 0;
            for &u in self.adj[v] {
                let u = u as usize;
                if self.status[u] == UND && self.stamp[u] == gen {
                    used += 1;
                }
            }
            if d > used {
                total += (d - used) as usize;
                for &u in self.adj[v] {
                    if self.status[u as usize] == UND {
                        self.stamp[u as usize] = gen;
                    }
                }
            }
        }
        // Undecided v: Out itself, or need(v) of its undecided neighbors Out.
        // Any region {v} ∪ R with |R| = cu − need + 1 therefore holds an Out.
        self.order.clear();
        for v in 0..n {
            if self.status[v] == UND && self.need(v) > 0 {
                self.order.push(v as u32);
            }
        }
        let order = std::mem::take(&mut self.order);
        let mut keyed: Vec<(u32, u32)> = order
            .iter()
            .map(|&v| (self.cu[v as usize] - self.need(v as usize), v))
            .collect();
        keyed.sort_unstable();
        for &(extra, v) in &keyed {
            let v = v as usize;
            if self.stamp[v] == gen {
                continue;
            }
            let want = extra as usize + 1;
            let mut fresh = 0;
            for &u in self.adj[v] {
                let u = u as usize;
                if self.status[u] == UND && self.stamp[u] != gen {
                    fresh += 1;
                }
            }
            if fresh >= want {
                total += 1;
                self.stamp[v] = gen;
                let mut taken = 0;
                for &u in self.adj[v] {
                    let u = u as usize;
                    if taken < want && self.status[u] == UND && self.stamp[u] != gen {
                        self.stamp[u] = gen;
                        taken += 1;
                    }
                }
            }
        }
        self.order = order;
        total
    }

    // k = 0: a clique of size s among undecided vertices keeps at most one.
    fn clique_bound(&mut self) -> usize {
        let gen = self.next_generation();
        let n = self.status.len();
        let mut total = 0;
        let mut clique: Vec<usize> = Vec::new();
        for v in 0..n {
            if self.status[v] != UND || self.stamp[v] == gen {
                continue;
            }
            clique.clear();
            clique.push(v);
            self.stamp[v] = gen;
            for &u in self.adj[v] {
                let u = u as usize;
                if self.status[u] != UND || self.stamp[u] == gen {
                    continue;
                }
                if clique.iter().all(|&c| c == v || self.adj[u].binary_search(&(c as u32)).is_ok()) {
                    clique.push(u);
                    self.stamp[u] = gen;
                }
            }
            total += clique.len() - 1;
        }
        total
    }

    /// Vertex to branch on, or `None` when every undecided vertex can go In.
    fn pick(&self) -> Option<usize> {
        let n = self.status.len();
        let mut best_in: Option<(u32, u32, usize)> = None;
        for v in 0..n {
            if self.status[v] == IN && self.need(v) > 0 {
                // Fewest remaining In slots first.
                let key = (self.k - self.cin[v], self.cu[v]);
                if best_in.is_none_or(|(a, b, _)| key < (a, b)) {
                    best_in = Some((key.0, key.1, v));
                }
            }
        }
        if let Some((_, _, v)) = best_in {
            return self.adj[v]
                .iter()
                .map(|&u| u as usize)
                .filter(|&u| self.status[u] == UND)
                .max_by_key(|&u| (self.cu[u], std::cmp::Reverse(u)));
        }
        (0..n)
            .filter(|&v| self.status[v] == UND && self.need(v) > 0)
            .max_by_key(|&v| (self.need(v), self.cu[v], std::cmp::Reverse(v)))
    }

    fn record_leaf(&mut self) {
        let value = (self.n_in + self.n_und) as i64;
        if value > self.best {
            self.best = value;
            self.best_assign = Some(self.status.iter().map(|&s| s != OUT).collect());
        }
    }

    fn search(&mut self, meter: &mut Meter) {
        if meter.exhausted() {
            self.aborted = true;
            return;
        }
        meter.nodes += 1;
        let ub = self.upper_bound() as i64;
        if ub <= self.best {
            return;
        }
        let Some(v) = self.pick() else {
            self.record_leaf();
            return;
        };
        for side in [IN, OUT] {
            let mark = self.trail.len();
            if self.assign(v, side) {
                self.search(meter);
            }
            self.undo(mark);
            if self.aborted {
                self.open_upper = self.open_upper.max(ub);
                return;
            }
            if self.best >= self.stop_at {
                return;
            }
        }
    }
}

/// Shared driver: maximize `|In|`, optionally stopping once `stop_at` is
/// reached, pruning everything that cannot beat `floor`.
fn run_engine(
    g: &Graph,
    k: usize,
    constrain_out: bool,
    floor: Option<(usize, Vec<bool>)>,
    stop_at: Option<usize>,
    meter: &mut Meter,
) -> RunOutcome {
    assert!(g.loop_count() == 0, "solver requires a loop-free graph");
    let mut e = Engine::new(g, k, constrain_out);
    if let Some((v, a)) = floor {
        e.best = v as i64;
        e.best_assign = Some(a);
    }
    if let Some(t) = stop_at {
        e.stop_at = t as i64;
        // Anything below the target is uninteresting.
        e.best = e.best.max(t as i64 - 1);
    }
    let n = g.n();
    if n == 0 {
        return RunOutcome { best: Some((0, Vec::new())), upper: 0, aborted: false };
    }
    let root_ub = e.upper_bound() as i64;
    // Some optimal solution has vertex 0 In when the graph is transitive.
    let feasible = if g.is_vertex_transitive() { e.assign(0, IN) } else { true };
    if feasible {
        e.search(meter);
    }
    let upper = if e.aborted { e.open_upper.max(e.best).min(root_ub) } else { e.best.min(root_ub) };
    let best = e.best_assign.map(|a| (a.iter().filter(|&&x| x).count(), a));
    RunOutcome { best, upper: upper.max(0) as usize, aborted: e.aborted }
}

/// Greedy repair plus iterated perturbation; returns a valid low-degree set.
pub fn heuristic_low_degree_set(g: &Graph, k: usize, seed: u64, rounds: usize) -> Vec<usize> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inside = vec![true; n];
    repair(g, k, &mut inside, &[]);
    fill(g, k, &mut inside, &(0..n).collect::<Vec<_>>());
    let mut best = inside.clone();
    let mut best_size = best.iter().filter(|&&x| x).count();
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..rounds {
        let mut cur = best.clone();
        let outside: Vec<usize> = (0..n).filter(|&v| !cur[v]).collect();
        if outside.is_empty() {
            break;
        }
        let forced: Vec<usize> = (0..rng.random_range(1..=3usize.min(outside.len())))
            .map(|_| outside[rng.random_range(0..outside.len())])
            .collect();
        for &f in &forced {
            cur[f] = true;
        }
        repair(g, k, &mut cur, &forced);
        order.shuffle(&mut rng);
        fill(g, k, &mut cur, &order);
        let size = cur.iter().filter(|&&x| x).count();
        if size >= best_size {
            best_size = size;
            best = cur;
        }
    }
    (0..n).filter(|&v| best[v]).collect()
}

fn in_degree(g: &Graph, inside: &[bool], v: usize) -> usize {
    g.neighbors(v).iter().filter(|&&u| inside[u as usize]).count()
}

// Removes vertices until every member has at most k members as neighbors.
fn repair(g: &Graph, k: usize, inside: &mut [bool], keep: &[usize]) {
    let n = g.n();
    loop {
        let violated: Vec<bool> = (0..n).map(|v| inside[v] && in_degree(g, inside, v) > k).collect();
        if !violated.iter().any(|&x| x) {
            return;
        }
        let score = |x: usize| {
            violated[x] as usize
                + g.neighbors(x).iter().filter(|&&u| violated[u as usize]).count()
        };
        let pick = (0..n)
            .filter(|&x| inside[x] && score(x) > 0)
            .max_by_key(|&x| (!keep.contains(&x), score(x), std::cmp::Reverse(x)))
            .unwrap();
        inside[pick] = false;
    }
}

fn fill(g: &Graph, k: usize, inside: &mut [bool], order: &[usize]) {
    for &v in order {
        if !inside[v]
            && in_degree(g, inside, v) <= k
            && g.neighbors(v).iter().all(|&u| !inside[u as usize] || in_degree(g, inside, u as usize) < k)
        {
            inside[v] = true;
        }
    }
}

fn set_from(assign: &[bool]) -> Vec<usize> {
    (0..assign.len()).filter(|&v| assign[v]).collect()
}

fn low_degree_inner(g: &Graph, k: usize, budget: &SearchBudget, meter: &mut Meter) -> SolveResult {
    let n = g.n();
    let heur = heuristic_low_degree_set(g, k, 0x5eed, 20 * n.min(500));
    let heur_assign: Vec<bool> = {
        let mut a = vec![false; n];
        heur.iter().for_each(|&v| a[v] = true);
        a
    };
    let witness = |vs: Vec<usize>| Some(if k == 0 { Certificate::independent_set(g, vs) } else { Certificate::low_degree_set(g, vs, k) });
    match budget.mode {
        SearchMode::LowerBoundOnly => {
            return SolveResult {
                value: heur.len() as i64,
                status: Status::Lower,
                witness: witness(heur),
                nodes: 0,
                seconds: meter.seconds(),
            };
        }
        SearchMode::UpperBoundOnly => {
            let mut e = Engine::new(g, k, false);
            let ub = e.upper_bound();
            return SolveResult { value: ub as i64, status: Status::Upper, witness: None, nodes: 1, seconds: meter.seconds() };
        }
        SearchMode::Exact => {}
    }
    let out = run_engine(g, k, false, Some((heur.len(), heur_assign)), None, meter);
    let (value, assign) = out.best.expect("floor always present");
    let status = if out.upper <= value { Status::Exact } else { Status::Interval { lo: value as i64, hi: out.upper as i64 } };
    SolveResult { value: value as i64, status, witness: witness(set_from(&assign)), nodes: meter.nodes, seconds: meter.seconds() }
}

/// Largest vertex set inducing maximum degree at most `k`.
pub fn max_low_degree_set(g: &Graph, k: usize, budget: &SearchBudget) -> SolveResult {
    let mut meter = Meter::new(budget);
    low_degree_inner(g, k, budget, &mut meter)
}

/// `α(G)`, i.e. [`max_low_degree_set`] with `k = 0`.
pub fn independence_number(g: &Graph, budget: &SearchBudget) -> SolveResult {
    max_low_degree_set(g, 0, budget)
}

/// Answer of "is there a set of at least `target` vertices with Δ ≤ k".
enum Decision {
    Yes(Vec<usize>),
    No,
    Unknown,
}

fn decide(g: &Graph, k: usize, target: usize, meter: &mut Meter) -> Decision {
    if target == 0 {
        return Decision::Yes(Vec::new());
    }
    let heur = heuristic_low_degree_set(g, k, 0x5eed, 10 * g.n().min(500));
    if heur.len() >= target {
        return Decision::Yes(heur);
    }
    let out = run_engine(g, k, false, None, Some(target), meter);
    match out.best {
        Some((v, a)) if v >= target => Decision::Yes(set_from(&a)),
        _ if out.upper < target => Decision::No,
        _ if !out.aborted => Decision::No,
        _ => Decision::Unknown,
    }
}

/// Sensitivity: least `k` such that some set of `α + 1` vertices has Δ ≤ k.
pub fn sensitivity(g: &Graph, alpha_hint: Option<usize>, budget: &SearchBudget) -> SolveResult {
    let mut meter = Meter::new(budget);
    let n = g.n();
    let alpha = match alpha_hint {
        // Regular bipartite graphs have a perfect matching, so α = n/2.
        Some(a) if 2 * a == n && g.regular_degree().is_some_and(|d| d > 0) && g.is_bipartite() => a,
        hint => {
            let r = low_degree_inner(g, 0, &SearchBudget { mode: SearchMode::Exact, ..*budget }, &mut meter);
            if !r.is_exact() {
                // σ is unknown without α; report the trivial degree range.
                return SolveResult {
                    value: 1,
                    status: Status::Interval { lo: 1, hi: g.max_degree() as i64 },
                    witness: None,
                    nodes: meter.nodes,
                    seconds: meter.seconds(),
                };
            }
            let a = r.value as usize;
            if let Some(h) = hint {
                assert_eq!(h, a, "alpha hint {h} disagrees with computed α = {a}");
            }
            a
        }
    };
    if alpha >= n {
        // Edgeless graph: no set exceeds α.
        return SolveResult { value: 0, status: Status::Infeasible, witness: None, nodes: meter.nodes, seconds: meter.seconds() };
    }
    let mut first_unknown: Option<usize> = None;
    for k in 1..=g.max_degree() {
        match decide(g, k, alpha + 1, &mut meter) {
            Decision::Yes(set) => {
                let witness = Some(Certificate::low_degree_set(g, set, k));
                let status = match first_unknown {
                    None => Status::Exact,
                    Some(lo) => Status::Interval { lo: lo as i64, hi: k as i64 },
                };
                return SolveResult { value: k as i64, status, witness, nodes: meter.nodes, seconds: meter.seconds() };
            }
            Decision::No => {}
            Decision::Unknown => {
                first_unknown.get_or_insert(k);
                // Without budget left, later k cannot be refuted either; the
                // full vertex set settles the upper end.
                let d = g.max_degree();
                let all: Vec<usize> = (0..n).collect();
                return SolveResult {
                    value: k as i64,
                    status: Status::Interval { lo: k as i64, hi: d as i64 },
                    witness: Some(Certificate::low_degree_set(g, all, d)),
                    nodes: meter.nodes,
                    seconds: meter.seconds(),
                };
            }
        }
    }
    unreachable!("the whole vertex set has degree max_degree")
}

/// Rational `β = num/den` in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::OutOfRange(format!("β = {num}/{den} not in (0,1]")));
        }
        Ok(Self { num, den })
    }

    /// Parses `"3/5"` or a terminating decimal such as `"0.6"`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::OutOfRange(format!("β `{s}`"));
        if let Some((a, b)) = s.split_once('/') {
            return Self::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        }
        let (int, frac) = s.trim().split_once('.').unwrap_or((s.trim(), ""));
        if frac.len() > 12 || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = int.parse().map_err(|_| bad())?;
        let frac_v: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        Self::new(int * den + frac_v, den)
    }

    /// `⌈β·n⌉`.
    pub fn ceil_times(&self, n: usize) -> usize {
        ((self.num as u128 * n as u128).div_ceil(self.den as u128)) as usize
    }
}

/// `Δ_β(G)`: least `k` such that some set of at least `⌈βn⌉` vertices has Δ ≤ k.
pub fn delta_beta(g: &Graph, beta: Ratio, budget: &SearchBudget) -> SolveResult {
    let mut meter = Meter::new(budget);
    let target = beta.ceil_times(g.n());
    let mut first_unknown: Option<usize> = None;
    for k in 0..=g.max_degree() {
        match decide(g, k, target, &mut meter) {
            Decision::Yes(set) => {
                let status = match first_unknown {
                    None => Status::Exact,
                    Some(lo) => Status::Interval { lo: lo as i64, hi: k as i64 },
                };
                let witness = Some(Certificate::low_degree_set(g, set, k));
                return SolveResult { value: k as i64, status, witness, nodes: meter.nodes, seconds: meter.seconds() };
            }
            Decision::No => {}
            Decision::Unknown => {
                first_unknown.get_or_insert(k);
            }
        }
    }
    unreachable!("the whole vertex set has degree max_degree")
}

/// `ι_k(G)`: largest `|A| − |B|` over partitions with both sides of Δ ≤ k.
pub fn iota(g: &Graph, k: usize, budget: &SearchBudget) -> SolveResult {
    let mut meter = Meter::new(budget);
    let n = g.n();
    // A proper 2-coloring is feasible for every k; orient it larger-first.
    let floor = g.two_coloring().map(|c| {
        let a: Vec<bool> = c.iter().map(|&x| x == 0).collect();
        let size = a.iter().filter(|&&x| x).count();
        if 2 * size >= n {
            (size, a)
        } else {
            (n - size, a.iter().map(|x| !x).collect())
        }
    });
    let out = if budget.mode == SearchMode::LowerBoundOnly {
        RunOutcome { best: floor.clone(), upper: n, aborted: true }
    } else {
        run_engine(g, k, true, floor, None, &mut meter)
    };
    let imbalance = |a: usize| 2 * a as i64 - n as i64;
    let (value, status, witness) = match out.best {
        None if !out.aborted => (0, Status::Infeasible, None),
        None => (imbalance(out.upper), Status::Upper, None),
        Some((a, assign)) => {
            let status = if out.upper <= a {
                Status::Exact
            } else if budget.mode == SearchMode::LowerBoundOnly {
                Status::Lower
            } else {
                Status::Interval { lo: imbalance(a), hi: imbalance(out.upper) }
            };
            let (sa, sb): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| assign[v]);
            (imbalance(a), status, Some(Certificate::partition(g, sa, sb, k)))
        }
    };
    SolveResult { value, status, witness, nodes: meter.nodes, seconds: meter.seconds() }
}

/// Largest `d ≤ d_max` such that `Q_d` is a (not necessarily induced) subgraph.
pub fn kappa_search(g: &Graph, d_max: usize, budget: &SearchBudget) -> Result<SolveResult> {
    if d_max > 6 {
        return Err(Error::OutOfRange(format!("d_max = {d_max} > 6")));
    }
    let mut meter = Meter::new(budget);
    if g.n() == 0 {
        return Ok(SolveResult { value: 0, status: Status::Infeasible, witness: None, nodes: 0, seconds: 0.0 });
    }
    let mut best = (0usize, vec![0usize]);
    let mut aborted = false;
    for d in 1..=d_max {
        match find_cube(g, d, &mut meter) {
            CubeSearch::Found(map) => best = (d, map),
            CubeSearch::Absent => break,
            CubeSearch::Aborted => {
                aborted = true;
                break;
            }
        }
    }
    let (d, map) = best;
    let status = if aborted { Status::Lower } else { Status::Exact };
    Ok(SolveResult {
        value: d as i64,
        status,
        witness: Some(Certificate::cube_embedding(g, map, d)),
        nodes: meter.nodes,
        seconds: meter.seconds(),
    })
}

enum CubeSearch {
    Found(Vec<usize>),
    Absent,
    Aborted,
}

fn find_cube(g: &Graph, d: usize, meter: &mut Meter) -> CubeSearch {
    let size = 1usize << d;
    let mut map = vec![usize::MAX; size];
    let mut used = vec![false; g.n()];
    let roots: Vec<usize> = if g.is_vertex_transitive() { vec![0] } else { (0..g.n()).collect() };
    for r in roots {
        if g.degree(r) < d {
            continue;
        }
        map[0] = r;
        used[r] = true;
        match extend_cube(g, d, 1, &mut map, &mut used, meter) {
            Some(true) => return CubeSearch::Found(map),
            None => return CubeSearch::Aborted,
            Some(false) => {}
        }
        used[r] = false;
    }
    CubeSearch::Absent
}

fn extend_cube(
    g: &Graph,
    d: usize,
    x: usize,
    map: &mut [usize],
    used: &mut [bool],
    meter: &mut Meter,
) -> Option<bool> {
    if x == map.len() {
        return Some(true);
    }
    if meter.exhausted() {
        return None;
    }
    meter.nodes += 1;
    let lower: Vec<usize> = (0..d).filter(|&j| x >> j & 1 == 1).map(|j| map[x ^ (1 << j)]).collect();
    // Coordinate symmetry: the images of the unit vectors increase.
    let min_unit = if x.is_power_of_two() && x > 1 { map[x >> 1] + 1 } else { 0 };
    let first = lower[0];
    for &c in g.neighbors(first) {
        let c = c as usize;
        if used[c] || c < min_unit || g.degree(c) < d {
            continue;
        }
        if !lower[1..].iter().all(|&l| g.has_edge(l, c)) {
            continue;
        }
        map[x] = c;
        used[c] = true;
        match extend_cube(g, d, x + 1, map, used, meter) {
            Some(true) => return Some(true),
            None => {
                used[c] = false;
                return None;
            }
            Some(false) => {}
        }
        used[c] = false;
    }
    map[x] = usize::MAX;
    Some(false)
}
