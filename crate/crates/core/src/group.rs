//! Finite groups with deterministic element indexing, and their Cayley graphs.
//!
//! Every group is a [`Carrier`] (a concrete model whose elements are encoded
//! as small integer keys) plus an index built by breadth-first search from
//! the identity over a generator list sorted by label. Two builds of the same
//! spec therefore agree index-for-index.
//!
//! Permutations compose left to right: `(πτ)(i) = τ(π(i))`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Largest group order accepted by any constructor.
pub const MAX_ORDER: usize = 200_000;

/// Concrete model of a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    Cyclic(u32),
    /// `D_n = <a, b | a^n = b^2 = (ab)^2 = 1>`, key `[i, s]` for `a^i b^s`.
    Dihedral(u32),
    Symmetric(usize),
    Alternating(usize),
    /// `2^[n] x S_n` with `(A,π)(B,τ) = (A △ π^{-1}(B), πτ)`; key `[mask, π...]`.
    Signed(usize),
    /// Index-2 subgroup of [`Carrier::Signed`] with `|A|` even.
    EvenSigned(usize),
    Elementary { p: u32, r: usize },
    /// The 16-element group generated by the Pauli matrices.
    Pauli,
    /// `<x, y | x^n = y^2 = 1, y x = x^twist y>`, key `[r, s]` for `x^r y^s`.
    Metacyclic { n: u32, twist: u32 },
    /// Subgroup of `S_degree` given by explicit generators.
    Permutation(usize),
    /// `PGL(2, q)` for prime `q`, key is the normalized matrix `[a, b, c, d]`.
    ProjectiveLinear(u32),
    Product(Vec<Carrier>),
}

// Pauli elements are `i^k X^x Z^z`, encoded as `4k + 2x + z`.
const fn pauli_table() -> [[u8; 16]; 16] {
    let mut t = [[0u8; 16]; 16];
    let mut p = 0;
    while p < 16 {
        let mut q = 0;
        while q < 16 {
            let (k1, a, b) = (p / 4, (p / 2) % 2, p % 2);
            let (k2, c, d) = (q / 4, (q / 2) % 2, q % 2);
            // Z^b X^c = (-1)^{bc} X^c Z^b
            let k = (k1 + k2 + 2 * b * c) % 4;
            t[p][q] = (4 * k + 2 * (a ^ c) + (b ^ d)) as u8;
            q += 1;
        }
        p += 1;
    }
    t
}

/// Multiplication table of the Pauli group in the `4k + 2x + z` encoding.
pub const PAULI_TABLE: [[u8; 16]; 16] = pauli_table();

impl Carrier {
    pub fn key_len(&self) -> usize {
        match self {
            Carrier::Cyclic(_) | Carrier::Pauli => 1,
            Carrier::Dihedral(_) | Carrier::Metacyclic { .. } => 2,
            Carrier::Symmetric(n) | Carrier::Alternating(n) | Carrier::Permutation(n) => *n,
            Carrier::Signed(n) | Carrier::EvenSigned(n) => n + 1,
            Carrier::Elementary { r, .. } => *r,
            Carrier::ProjectiveLinear(_) => 4,
            Carrier::Product(fs) => fs.iter().map(Carrier::key_len).sum(),
        }
    }

    pub fn identity(&self) -> Vec<u32> {
        match self {
            Carrier::Symmetric(n) | Carrier::Alternating(n) | Carrier::Permutation(n) => {
                (0..*n as u32).collect()
            }
            Carrier::Signed(n) | Carrier::EvenSigned(n) => {
                std::iter::once(0).chain(0..*n as u32).collect()
            }
            Carrier::ProjectiveLinear(_) => vec![1, 0, 0, 1],
            Carrier::Product(fs) => fs.iter().flat_map(Carrier::identity).collect(),
            _ => vec![0; self.key_len()],
        }
    }

    /// Textbook order of the modelled group, when it is fixed by the carrier.
    pub fn expected_order(&self) -> Option<u128> {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        Some(match self {
            Carrier::Cyclic(n) => *n as u128,
            Carrier::Dihedral(n) => 2 * *n as u128,
            Carrier::Symmetric(n) => fact(*n),
            Carrier::Alternating(n) => (fact(*n) / 2).max(1),
            Carrier::Signed(n) => (1u128 << n) * fact(*n),
            Carrier::EvenSigned(n) => (1u128 << (n - 1)) * fact(*n),
            Carrier::Elementary { p, r } => (*p as u128).pow(*r as u32),
            Carrier::Pauli => 16,
            Carrier::Metacyclic { n, .. } => 2 * *n as u128,
            Carrier::Permutation(_) | Carrier::ProjectiveLinear(_) => return None,
            Carrier::Product(fs) => {
                let mut o = 1u128;
                for f in fs {
                    o = o.saturating_mul(f.expected_order()?);
                }
                o
            }
        })
    }

    pub fn compose(&self, a: &[u32], b: &[u32], out: &mut Vec<u32>) {
        out.clear();
        match self {
            Carrier::Cyclic(n) => out.push((a[0] + b[0]) % n),
            Carrier::Dihedral(n) => {
                let j = if a[1] == 0 { b[0] } else { (n - b[0]) % n };
                out.push((a[0] + j) % n);
                out.push(a[1] ^ b[1]);
            }
            Carrier::Symmetric(_) | Carrier::Alternating(_) | Carrier::Permutation(_) => {
                out.extend(a.iter().map(|&i| b[i as usize]));
            }
            Carrier::Signed(_) | Carrier::EvenSigned(_) => signed_compose(a, b, out),
            Carrier::Elementary { p, .. } => {
                out.extend(a.iter().zip(b).map(|(x, y)| (x + y) % p));
            }
            Carrier::Pauli => out.push(PAULI_TABLE[a[0] as usize][b[0] as usize] as u32),
            Carrier::Metacyclic { n, twist } => {
                let j = if a[1] == 0 {
                    b[0]
                } else {
                    ((*twist as u64 * b[0] as u64) % *n as u64) as u32
                };
                out.push((a[0] + j) % n);
                out.push(a[1] ^ b[1]);
            }
            Carrier::ProjectiveLinear(q) => {
                let q = *q as u64;
                let (a0, a1, a2, a3) = (a[0] as u64, a[1] as u64, a[2] as u64, a[3] as u64);
                let (b0, b1, b2, b3) = (b[0] as u64, b[1] as u64, b[2] as u64, b[3] as u64);
                let m = [
                    (a0 * b0 + a1 * b2) % q,
                    (a0 * b1 + a1 * b3) % q,
                    (a2 * b0 + a3 * b2) % q,
                    (a2 * b1 + a3 * b3) % q,
                ];
                out.extend(normalize_projective(m, q));
            }
            Carrier::Product(fs) => {
                let mut off = 0;
                let mut tmp = Vec::new();
                for f in fs {
                    let l = f.key_len();
                    f.compose(&a[off..off + l], &b[off..off + l], &mut tmp);
                    out.extend_from_slice(&tmp);
                    off += l;
                }
            }
        }
    }

    pub fn invert(&self, a: &[u32]) -> Vec<u32> {
        match self {
            Carrier::Cyclic(n) => vec![(n - a[0]) % n],
            Carrier::Dihedral(n) => {
                if a[1] == 1 {
                    a.to_vec()
                } else {
                    vec![(n - a[0]) % n, 0]
                }
            }
            Carrier::Symmetric(_) | Carrier::Alternating(_) | Carrier::Permutation(_) => {
                perm_inverse(a)
            }
            Carrier::Signed(_) | Carrier::EvenSigned(_) => {
                let perm = &a[1..];
                let mut mask = 0;
                for (i, &img) in perm.iter().enumerate() {
                    if a[0] >> i & 1 == 1 {
                        mask |= 1 << img;
                    }
                }
                std::iter::once(mask).chain(perm_inverse(perm)).collect()
            }
            Carrier::Elementary { p, .. } => a.iter().map(|x| (p - x) % p).collect(),
            Carrier::Pauli => {
                let x = a[0] as usize;
                let y = (0..16).find(|&y| PAULI_TABLE[x][y] == 0).unwrap();
                vec![y as u32]
            }
            Carrier::Metacyclic { n, twist } => {
                if a[1] == 0 {
                    vec![(n - a[0]) % n, 0]
                } else {
                    let rt = ((a[0] as u64 * *twist as u64) % *n as u64) as u32;
                    vec![(n - rt) % n, 1]
                }
            }
            Carrier::ProjectiveLinear(q) => {
                let q64 = *q as u64;
                let m = [a[3] as u64, (q64 - a[1] as u64) % q64, (q64 - a[2] as u64) % q64, a[0] as u64];
                normalize_projective(m, q64).to_vec()
            }
            Carrier::Product(fs) => {
                let mut off = 0;
                let mut out = Vec::with_capacity(a.len());
                for f in fs {
                    let l = f.key_len();
                    out.extend(f.invert(&a[off..off + l]));
                    off += l;
                }
                out
            }
        }
    }

    pub fn label(&self, a: &[u32]) -> String {
        match self {
            Carrier::Cyclic(_) => a[0].to_string(),
            Carrier::Dihedral(_) => match (a[0], a[1]) {
                (0, 0) => "1".into(),
                (0, _) => "b".into(),
                (i, 0) => format!("a^{i}"),
                (i, _) => format!("a^{i} b"),
            },
            Carrier::Symmetric(_) | Carrier::Alternating(_) | Carrier::Permutation(_) => {
                cycle_notation(a)
            }
            Carrier::Signed(_) | Carrier::EvenSigned(_) => {
                let set: Vec<String> = (0..a.len() - 1)
                    .filter(|i| a[0] >> i & 1 == 1)
                    .map(|i| (i + 1).to_string())
                    .collect();
                format!("({{{}}}, {})", set.join(","), cycle_notation(&a[1..]))
            }
            Carrier::Elementary { .. } => {
                let parts: Vec<String> = a.iter().map(u32::to_string).collect();
                format!("({})", parts.join(","))
            }
            Carrier::Pauli => {
                let (k, x, z) = (a[0] / 4, (a[0] / 2) % 2, a[0] % 2);
                let (phase, name) = match (x, z) {
                    (0, 0) => (k, "I"),
                    (1, 0) => (k, "X"),
                    (0, 1) => (k, "Z"),
                    _ => ((k + 3) % 4, "Y"),
                };
                format!("{}{}", ["", "i", "-", "-i"][phase as usize], name)
            }
            Carrier::Metacyclic { .. } => match (a[0], a[1]) {
                (0, 0) => "1".into(),
                (0, _) => "y".into(),
                (r, 0) => format!("x^{r}"),
                (r, _) => format!("x^{r} y"),
            },
            Carrier::ProjectiveLinear(_) => format!("[{} {}; {} {}]", a[0], a[1], a[2], a[3]),
            Carrier::Product(fs) => {
                let mut off = 0;
                let mut parts = Vec::new();
                for f in fs {
                    let l = f.key_len();
                    parts.push(f.label(&a[off..off + l]));
                    off += l;
                }
                format!("({})", parts.join(", "))
            }
        }
    }

    /// The canonical generating set of a named carrier.
    pub fn canonical_generators(&self) -> Vec<Vec<u32>> {
        let transposition = |n: usize, i: usize, j: usize| {
            let mut p: Vec<u32> = (0..n as u32).collect();
            p.swap(i, j);
            p
        };
        match self {
            Carrier::Cyclic(n) if *n >= 2 => vec![vec![1]],
            Carrier::Dihedral(n) => {
                let mut g = vec![vec![0, 1]];
                if *n >= 2 {
                    g.push(vec![1, 0]);
                }
                g
            }
            Carrier::Symmetric(n) if *n >= 2 => {
                let mut g = vec![transposition(*n, 0, 1)];
                if *n >= 3 {
                    g.push((0..*n as u32).map(|i| (i + 1) % *n as u32).collect());
                }
                g
            }
            Carrier::Alternating(n) if *n >= 3 => (2..*n)
                .map(|k| {
                    let mut p: Vec<u32> = (0..*n as u32).collect();
                    p[0] = 1;
                    p[1] = k as u32;
                    p[k] = 0;
                    p
                })
                .collect(),
            Carrier::Signed(n) => {
                let mut g: Vec<Vec<u32>> = (0..n - 1)
                    .map(|i| std::iter::once(0).chain(transposition(*n, i, i + 1)).collect())
                    .collect();
                g.push(std::iter::once(1).chain(0..*n as u32).collect());
                g
            }
            Carrier::EvenSigned(n) => {
                let mut g: Vec<Vec<u32>> = (0..n - 1)
                    .map(|i| std::iter::once(0).chain(transposition(*n, i, i + 1)).collect())
                    .collect();
                g.push(std::iter::once(0b11).chain(transposition(*n, 0, 1)).collect());
                g
            }
            Carrier::Elementary { r, .. } => (0..*r)
                .map(|i| (0..*r).map(|j| (i == j) as u32).collect())
                .collect(),
            // X, Z and iI
            Carrier::Pauli => vec![vec![2], vec![1], vec![4]],
            Carrier::Metacyclic { .. } => vec![vec![1, 0], vec![0, 1]],
            Carrier::Product(fs) => {
                let ids: Vec<Vec<u32>> = fs.iter().map(Carrier::identity).collect();
                let mut out = Vec::new();
                for (i, f) in fs.iter().enumerate() {
                    for g in f.canonical_generators() {
                        let mut key = Vec::new();
                        for (j, id) in ids.iter().enumerate() {
                            key.extend(if i == j { &g } else { id });
                        }
                        out.push(key);
                    }
                }
                out
            }
            _ => Vec::new(),
        }
    }
}

fn normalize_projective(m: [u64; 4], q: u64) -> [u32; 4] {
    let lead = *m.iter().find(|&&x| x != 0).expect("singular matrix");
    let inv = mod_pow(lead, q - 2, q);
    m.map(|x| ((x * inv) % q) as u32)
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn signed_compose(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    let pi = &a[1..];
    let tau = &b[1..];
    // π^{-1}(B) = { i : π(i) ∈ B }
    let mut pre = 0u32;
    for (i, &img) in pi.iter().enumerate() {
        if b[0] >> img & 1 == 1 {
            pre |= 1 << i;
        }
    }
    out.push(a[0] ^ pre);
    out.extend(pi.iter().map(|&i| tau[i as usize]));
}

fn perm_inverse(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; p.len()];
    for (i, &img) in p.iter().enumerate() {
        inv[img as usize] = i as u32;
    }
    inv
}

/// Cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`; identity is `()`.
pub fn cycle_notation(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        s.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                s.push(' ');
            }
            first = false;
            let _ = write!(s, "{}", i + 1);
            i = p[i] as usize;
        }
        s.push(')');
    }
    if s.is_empty() {
        s.push_str("()");
    }
    s
}

/// Sign of a permutation: `true` when even.
pub fn perm_is_even(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

/// Element of `2^[n] x S_n` (the `B_n` carrier) as a standalone value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermElement {
    /// Bit `i` set when `i + 1` belongs to the subset.
    pub subset: u32,
    /// 0-based images of the permutation.
    pub perm: Vec<u32>,
}

impl SignedPermElement {
    pub fn identity(n: usize) -> Self {
        Self { subset: 0, perm: (0..n as u32).collect() }
    }

    /// `(A,π)(B,τ) = (A △ π^{-1}(B), πτ)`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        signed_compose(&self.to_key(), &other.to_key(), &mut out);
        Self::from_key(&out)
    }

    pub fn to_key(&self) -> Vec<u32> {
        std::iter::once(self.subset).chain(self.perm.iter().copied()).collect()
    }

    pub fn from_key(k: &[u32]) -> Self {
        Self { subset: k[0], perm: k[1..].to_vec() }
    }
}

/// A finite group with elements indexed `0..order`, identity at 0.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    carrier: Carrier,
    spec: String,
    keys: Vec<Box<[u32]>>,
    index: HashMap<Box<[u32]>, usize>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a named carrier from its canonical generators.
    pub fn from_carrier(carrier: Carrier, spec: &str) -> Result<Self> {
        if let Some(o) = carrier.expected_order() {
            if o > MAX_ORDER as u128 {
                return Err(Error::OutOfRange(format!("{spec}: order {o} exceeds {MAX_ORDER}")));
            }
        }
        let gens: Vec<(String, Vec<u32>)> = carrier
            .canonical_generators()
            .into_iter()
            .map(|g| (carrier.label(&g), g))
            .collect();
        let group = Self::bfs(carrier, spec, gens, false)?;
        if let Some(o) = group.carrier.expected_order() {
            assert_eq!(group.order() as u128, o, "{spec}: generated order mismatch");
        }
        Ok(group)
    }

    /// The subgroup generated by explicit generator keys. Element labels are
    /// breadth-first words in the generator labels (`e` for the identity).
    pub fn generated(carrier: Carrier, spec: &str, gens: Vec<(String, Vec<u32>)>) -> Result<Self> {
        Self::bfs(carrier, spec, gens, true)
    }

    fn bfs(
        carrier: Carrier,
        spec: &str,
        mut gens: Vec<(String, Vec<u32>)>,
        word_labels: bool,
    ) -> Result<Self> {
        let len = carrier.key_len();
        for (l, g) in &gens {
            if g.len() != len {
                return Err(Error::MalformedSpec(format!("generator {l} has wrong key length")));
            }
        }
        gens.sort_by(|a, b| a.0.cmp(&b.0));
        gens.dedup_by(|a, b| a.1 == b.1);
        let id: Box<[u32]> = carrier.identity().into();
        let mut keys = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut labels = word_labels.then(|| vec!["e".to_string()]);
        let mut queue = VecDeque::from([0usize]);
        let mut buf = Vec::with_capacity(len);
        while let Some(x) = queue.pop_front() {
            for (gl, g) in &gens {
                carrier.compose(&keys[x], g, &mut buf);
                if index.contains_key(buf.as_slice()) {
                    continue;
                }
                if keys.len() >= MAX_ORDER {
                    return Err(Error::OutOfRange(format!("{spec}: order exceeds {MAX_ORDER}")));
                }
                let k: Box<[u32]> = buf.as_slice().into();
                index.insert(k.clone(), keys.len());
                if let Some(ls) = labels.as_mut() {
                    let w = if x == 0 { gl.clone() } else { format!("{}{}", ls[x], gl) };
                    ls.push(w);
                }
                queue.push_back(keys.len());
                keys.push(k);
            }
        }
        let inverse = keys
            .iter()
            .map(|k| index[carrier.invert(k).as_slice()])
            .collect();
        let generators = gens.iter().map(|(_, g)| index[g.as_slice()]).collect();
        Ok(Self { carrier, spec: spec.to_string(), keys, index, inverse, generators, labels })
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    /// Generators used for the indexing search, sorted by label.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn key(&self, x: usize) -> &[u32] {
        &self.keys[x]
    }

    pub fn index_of(&self, key: &[u32]) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let mut buf = Vec::with_capacity(self.keys[x].len());
        self.carrier.compose(&self.keys[x], &self.keys[y], &mut buf);
        self.index[buf.as_slice()]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(ls) => ls[x].clone(),
            None => self.carrier.label(&self.keys[x]),
        }
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        (0..self.order()).find(|&x| self.label(x) == label)
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Direct product with `Z_2`, elements `(g, c)` indexed `g + c·|Γ|`.
    /// Used for the Cayley description of the Kronecker double cover.
    pub fn times_z2(&self) -> DirectZ2<'_> {
        DirectZ2 { base: self }
    }
}

/// `Γ x Z_2` with the explicit index `(g, c) -> g + c·|Γ|`.
pub struct DirectZ2<'a> {
    base: &'a FiniteGroup,
}

impl DirectZ2<'_> {
    pub fn order(&self) -> usize {
        2 * self.base.order()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let n = self.base.order();
        let g = self.base.mul(x % n, y % n);
        g + ((x / n + y / n) % 2) * n
    }

    /// Cayley graph with connection set `C x {1}`.
    pub fn cayley_graph(&self, conn: &ConnectionSet) -> Graph {
        let n = self.base.order();
        let mut b = GraphBuilder::new(self.order());
        for x in 0..self.order() {
            for &c in conn.members() {
                b.add_edge(x, self.mul(x, c + n));
            }
        }
        b.provenance(format!("cay({} x Z2, C x {{1}})", self.base.spec()));
        b.build_transitive()
    }
}

/// Parses a group spec string.
///
/// Grammar: `dihedral:n`, `symmetric:n`, `alternating:n`, `signed:n`,
/// `even-signed:n`, `cyclic:n`, `elementary:p^r`, `pauli`, `modular:n`,
/// `quasidihedral:n` (n a power of two, at least 16) and `product:(spec,spec,...)`.
pub fn parse_carrier(spec: &str) -> Result<Carrier> {
    let bad = || Error::MalformedSpec(spec.to_string());
    let spec = spec.trim();
    if spec == "pauli" {
        return Ok(Carrier::Pauli);
    }
    let (family, arg) = spec.split_once(':').ok_or_else(bad)?;
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    let range = |what: &str, v: u64, lo: u64, hi: u64| {
        if v < lo || v > hi {
            Err(Error::OutOfRange(format!("{what} parameter {v} not in {lo}..={hi}")))
        } else {
            Ok(v)
        }
    };
    Ok(match family {
        "cyclic" => Carrier::Cyclic(range("cyclic", num(arg)?, 1, MAX_ORDER as u64)? as u32),
        "dihedral" => {
            Carrier::Dihedral(range("dihedral", num(arg)?, 1, MAX_ORDER as u64 / 2)? as u32)
        }
        "symmetric" => Carrier::Symmetric(range("symmetric", num(arg)?, 1, 8)? as usize),
        "alternating" => Carrier::Alternating(range("alternating", num(arg)?, 1, 9)? as usize),
        "signed" => Carrier::Signed(range("signed", num(arg)?, 1, 6)? as usize),
        "even-signed" => Carrier::EvenSigned(range("even-signed", num(arg)?, 2, 6)? as usize),
        "elementary" => {
            let (p, r) = arg.split_once('^').ok_or_else(bad)?;
            let (p, r) = (num(p)?, num(r)?);
            if !is_prime(p) || r == 0 {
                return Err(bad());
            }
            match p.checked_pow(r as u32) {
                Some(o) if o <= MAX_ORDER as u64 => {}
                _ => return Err(Error::OutOfRange(format!("{spec}: order too large"))),
            }
            Carrier::Elementary { p: p as u32, r: r as usize }
        }
        "modular" | "quasidihedral" => {
            let order = num(arg)?;
            if !order.is_power_of_two() || order < 16 || order > MAX_ORDER as u64 {
                return Err(Error::OutOfRange(format!("{spec}: order must be 2^k, k >= 4")));
            }
            let n = (order / 2) as u32;
            let twist = if family == "modular" { 1 + n / 2 } else { n / 2 - 1 };
            Carrier::Metacyclic { n, twist }
        }
        "product" => {
            let inner = arg
                .trim()
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(bad)?;
            let mut parts = Vec::new();
            let mut depth = 0i32;
            let mut start = 0;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        parts.push(&inner[start..i]);
                        start = i + 1;
                    }
                    _ => {}
                }
            }
            parts.push(&inner[start..]);
            if parts.iter().any(|p| p.trim().is_empty()) {
                return Err(bad());
            }
            Carrier::Product(parts.into_iter().map(parse_carrier).collect::<Result<_>>()?)
        }
        _ => return Err(bad()),
    })
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Builds the group named by a spec string.
pub fn group_make(spec: &str) -> Result<FiniteGroup> {
    FiniteGroup::from_carrier(parse_carrier(spec)?, spec.trim())
}

/// Inverse-closed set of non-identity elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionSet {
    members: Vec<usize>,
}

impl ConnectionSet {
    pub fn new(group: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&x) = members.iter().find(|&&x| x >= group.order()) {
            return Err(Error::InvalidConnectionSet(format!("element {x} out of range")));
        }
        if members.contains(&group.identity()) {
            return Err(Error::InvalidConnectionSet("contains the identity".into()));
        }
        for &x in &members {
            if members.binary_search(&group.inv(x)).is_err() {
                return Err(Error::InvalidConnectionSet(format!(
                    "not closed under inverse: {} lacks {}",
                    group.label(x),
                    group.label(group.inv(x))
                )));
            }
        }
        Ok(Self { members })
    }

    /// Adds the inverse of every given element before validating.
    pub fn inverse_closure(group: &FiniteGroup, elems: impl IntoIterator<Item = usize>) -> Result<Self> {
        let elems: Vec<usize> = elems.into_iter().collect();
        let all = elems.iter().flat_map(|&x| [x, group.inv(x)]);
        Self::new(group, all.collect::<Vec<_>>())
    }

    pub fn from_labels(group: &FiniteGroup, labels: &[&str]) -> Result<Self> {
        let elems = labels
            .iter()
            .map(|l| {
                group
                    .find_label(l)
                    .ok_or_else(|| Error::InvalidConnectionSet(format!("unknown element {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, elems)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether the set generates the whole group.
    pub fn generates(&self, group: &FiniteGroup) -> bool {
        generated_size(group, &self.members) == group.order()
    }
}

pub(crate) fn generated_size(group: &FiniteGroup, gens: &[usize]) -> usize {
    let mut seen = vec![false; group.order()];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = group.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

/// `Cay(Γ, C)`: `{x, y}` is an edge iff `x^{-1} y ∈ C`.
pub fn cayley_graph(group: &FiniteGroup, conn: &ConnectionSet) -> Graph {
    let mut b = GraphBuilder::new(group.order());
    for x in 0..group.order() {
        for &c in conn.members() {
            b.add_edge(x, group.mul(x, c));
        }
    }
    let labels: Vec<String> = conn.members().iter().map(|&c| group.label(c)).collect();
    b.provenance(format!("cay({}; {})", group.spec(), labels.join(", ")));
    b.build_transitive()
}

/// Draws `size` distinct non-identity elements (each with its inverse) using a
/// seeded ChaCha stream.
pub fn random_connection_set(group: &FiniteGroup, size: usize, seed: u64) -> Result<ConnectionSet> {
    if size == 0 || size >= group.order() {
        return Err(Error::OutOfRange(format!(
            "connection set size {size} for group of order {}",
            group.order()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = vec![false; group.order()];
    for _ in 0..size {
        let free: Vec<usize> = (1..group.order()).filter(|&x| !chosen[x]).collect();
        let &x = free
            .choose(&mut rng)
            .ok_or_else(|| Error::OutOfRange(format!("cannot draw {size} elements")))?;
        chosen[x] = true;
        chosen[group.inv(x)] = true;
    }
    ConnectionSet::new(group, (0..group.order()).filter(|&x| chosen[x]))
}
