//! Certificates: claimed vertex sets, partitions and cube embeddings, with a
//! verifier that recomputes every claim from the graph alone.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertKind {
    LowDegreeSet,
    MatchingSet,
    Partition,
    CubeEmbedding,
    IndependentSet,
}

impl CertKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertKind::LowDegreeSet => "low-degree-set",
            CertKind::MatchingSet => "matching-set",
            CertKind::Partition => "partition",
            CertKind::CubeEmbedding => "cube-embedding",
            CertKind::IndependentSet => "independent-set",
        }
    }
}

impl fmt::Display for CertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CertKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "low-degree-set" => CertKind::LowDegreeSet,
            "matching-set" => CertKind::MatchingSet,
            "partition" => CertKind::Partition,
            "cube-embedding" => CertKind::CubeEmbedding,
            "independent-set" => CertKind::IndependentSet,
            _ => return Err(Error::Parse { line: 1, message: format!("unknown certificate kind `{s}`") }),
        })
    }
}

/// A verifiable claim about a concrete labeled graph.
///
/// For sets, `size` is the cardinality. For partitions it is `|A| − |B|` with
/// `vertices` = A and `other` = B. For cube embeddings `k` is the dimension,
/// `size` is `2^k`, and `vertices[x]` is the image of cube vertex `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertKind,
    pub fingerprint: String,
    pub k: usize,
    pub size: i64,
    pub vertices: Vec<usize>,
    pub other: Vec<usize>,
}

impl Certificate {
    fn set(kind: CertKind, g: &Graph, mut vertices: Vec<usize>, k: usize) -> Self {
        vertices.sort_unstable();
        Self { kind, fingerprint: g.fingerprint(), k, size: vertices.len() as i64, vertices, other: Vec::new() }
    }

    pub fn low_degree_set(g: &Graph, vertices: Vec<usize>, k: usize) -> Self {
        Self::set(CertKind::LowDegreeSet, g, vertices, k)
    }

    pub fn matching_set(g: &Graph, vertices: Vec<usize>) -> Self {
        Self::set(CertKind::MatchingSet, g, vertices, 1)
    }

    pub fn independent_set(g: &Graph, vertices: Vec<usize>) -> Self {
        Self::set(CertKind::IndependentSet, g, vertices, 0)
    }

    pub fn partition(g: &Graph, mut a: Vec<usize>, mut b: Vec<usize>, k: usize) -> Self {
        a.sort_unstable();
        b.sort_unstable();
        Self {
            kind: CertKind::Partition,
            fingerprint: g.fingerprint(),
            k,
            size: a.len() as i64 - b.len() as i64,
            vertices: a,
            other: b,
        }
    }

    pub fn cube_embedding(g: &Graph, images: Vec<usize>, dim: usize) -> Self {
        Self {
            kind: CertKind::CubeEmbedding,
            fingerprint: g.fingerprint(),
            k: dim,
            size: 1i64 << dim,
            vertices: images,
            other: Vec::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "certificate {}\nfingerprint {}\nk {}\nsize {}\n",
            self.kind, self.fingerprint, self.k, self.size
        );
        if self.kind == CertKind::Partition {
            for v in &self.vertices {
                s.push_str(&format!("A {v}\n"));
            }
            for v in &self.other {
                s.push_str(&format!("B {v}\n"));
            }
        } else {
            for v in &self.vertices {
                s.push_str(&format!("{v}\n"));
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let mut field = |name: &str| -> Result<(usize, String)> {
            let (i, l) = lines.next().ok_or_else(|| perr(0, format!("missing `{name}` line")))?;
            let rest = l
                .strip_prefix(name)
                .and_then(|r| r.strip_prefix(' '))
                .ok_or_else(|| perr(i + 1, format!("expected `{name} ...`, got `{l}`")))?;
            Ok((i + 1, rest.trim().to_string()))
        };
        let (_, kind) = field("certificate")?;
        let kind: CertKind = kind.parse()?;
        let (fl, fingerprint) = field("fingerprint")?;
        if fingerprint.len() != 64 || !fingerprint.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(perr(fl, "fingerprint must be 64 hex characters".into()));
        }
        let (kl, k) = field("k")?;
        let k = k.parse().map_err(|_| perr(kl, format!("bad k `{k}`")))?;
        let (sl, size) = field("size")?;
        let size = size.parse().map_err(|_| perr(sl, format!("bad size `{size}`")))?;
        let mut vertices = Vec::new();
        let mut other = Vec::new();
        for (i, l) in lines {
            let num = |s: &str| s.trim().parse::<usize>().map_err(|_| perr(i + 1, format!("bad vertex `{s}`")));
            if kind == CertKind::Partition {
                match l.split_once(' ') {
                    Some(("A", v)) => vertices.push(num(v)?),
                    Some(("B", v)) => other.push(num(v)?),
                    _ => return Err(perr(i + 1, format!("expected `A v` or `B v`, got `{l}`"))),
                }
            } else {
                vertices.push(num(l)?);
            }
        }
        Ok(Self { kind, fingerprint: fingerprint.to_lowercase(), k, size, vertices, other })
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

/// Outcome of [`verify_certificate`]; valid iff `failures` is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub failures: Vec<String>,
    /// Induced maximum degree recomputed by the verifier (largest side for partitions).
    pub measured_degree: Option<usize>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "VALID")
        } else {
            write!(f, "INVALID: {}", self.failures.join("; "))
        }
    }
}

// Degree of every member inside the set, from adjacency queries only.
fn induced_degrees(g: &Graph, set: &[usize]) -> usize {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    set.iter()
        .map(|&v| {
            let loops = if g.has_loop(v) { 2 } else { 0 };
            loops + g.neighbors(v).iter().filter(|&&u| inside[u as usize]).count()
        })
        .max()
        .unwrap_or(0)
}

fn check_indices(g: &Graph, name: &str, vs: &[usize], failures: &mut Vec<String>) -> bool {
    let mut seen = vec![false; g.n()];
    let mut ok = true;
    for &v in vs {
        if v >= g.n() {
            failures.push(format!("{name}: vertex {v} out of range"));
            ok = false;
        } else if std::mem::replace(&mut seen[v], true) {
            failures.push(format!("{name}: duplicate vertex {v}"));
            ok = false;
        }
    }
    ok
}

/// Re-derives every claim of `c` on `g` and lists what fails.
pub fn verify_certificate(g: &Graph, c: &Certificate) -> VerificationReport {
    let mut failures = Vec::new();
    let mut measured = None;
    if g.fingerprint() != c.fingerprint {
        failures.push("fingerprint mismatch".to_string());
    }
    let ok = check_indices(g, "vertices", &c.vertices, &mut failures);
    match c.kind {
        CertKind::LowDegreeSet | CertKind::MatchingSet | CertKind::IndependentSet => {
            if !c.other.is_empty() {
                failures.push("unexpected second vertex list".into());
            }
            if c.size != c.vertices.len() as i64 {
                failures.push(format!("size {} but {} vertices listed", c.size, c.vertices.len()));
            }
            let bound = match c.kind {
                CertKind::MatchingSet => 1,
                CertKind::IndependentSet => 0,
                _ => c.k,
            };
            if c.k > bound {
                failures.push(format!("{} claims k = {} > {bound}", c.kind, c.k));
            }
            if ok {
                let d = induced_degrees(g, &c.vertices);
                measured = Some(d);
                if d > c.k.min(bound) {
                    failures.push(format!("degree {d} > {}", c.k.min(bound)));
                }
            }
        }
        CertKind::Partition => {
            let ok_b = check_indices(g, "B", &c.other, &mut failures);
            if ok && ok_b {
                let mut side = vec![0u8; g.n()];
                for &v in &c.vertices {
                    side[v] |= 1;
                }
                for &v in &c.other {
                    side[v] |= 2;
                }
                if side.contains(&3) {
                    failures.push("A and B intersect".into());
                }
                if side.contains(&0) {
                    failures.push("A and B do not cover all vertices".into());
                }
                let da = induced_degrees(g, &c.vertices);
                let db = induced_degrees(g, &c.other);
                measured = Some(da.max(db));
                if da > c.k {
                    failures.push(format!("degree {da} > {} in A", c.k));
                }
                if db > c.k {
                    failures.push(format!("degree {db} > {} in B", c.k));
                }
            }
            let imbalance = c.vertices.len() as i64 - c.other.len() as i64;
            if imbalance != c.size {
                failures.push(format!("imbalance {imbalance} but size {} claimed", c.size));
            }
        }
        CertKind::CubeEmbedding => {
            if c.k >= 31 || c.vertices.len() != 1usize << c.k.min(30) {
                failures.push(format!("{} vertices listed for dimension {}", c.vertices.len(), c.k));
            } else if ok {
                let missing = (0..c.vertices.len())
                    .flat_map(|x| (0..c.k).map(move |j| (x, x ^ (1 << j))))
                    .filter(|&(x, y)| x < y && !g.has_edge(c.vertices[x], c.vertices[y]))
                    .count();
                if missing > 0 {
                    failures.push(format!("{missing} cube edges missing"));
                }
            }
            if c.size != 1i64 << c.k.min(62) {
                failures.push(format!("size {} is not 2^{}", c.size, c.k));
            }
        }
    }
    VerificationReport { failures, measured_degree: measured }
}
