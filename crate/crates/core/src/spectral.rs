//! Adjacency spectra, `(n, d, λ)` summaries and the expander-mixing bound.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{generated_size, FiniteGroup};
use crate::group::ConnectionSet;

/// Largest graph the dense eigensolver accepts.
pub const MAX_SPECTRAL_N: usize = 3000;
const TRIVIAL_TOLERANCE: f64 = 1e-6;

/// Adjacency matrix with one diagonal unit per loop.
pub fn adjacency_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for v in 0..n {
        for &u in g.neighbors(v) {
            a[(v, u as usize)] = 1.0;
        }
        if g.has_loop(v) {
            a[(v, v)] = 1.0;
        }
    }
    a
}

/// Ascending eigenvalues of the adjacency matrix. The two extreme values are
/// refined and checked by inverse iteration (`‖Av − λv‖ ≤ 1e-6‖v‖`).
pub fn spectrum(g: &Graph) -> Result<Vec<f64>> {
    let n = g.n();
    if n > MAX_SPECTRAL_N {
        return Err(Error::OutOfRange(format!("spectrum of {n} > {MAX_SPECTRAL_N} vertices")));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let a = adjacency_matrix(g);
    let mut eig: Vec<f64> = a.clone().symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    for idx in [0, n - 1] {
        let r = residual(&a, eig[idx]);
        if r > 1e-6 {
            return Err(Error::Precondition(format!("eigenvalue {} has residual {r:e}", eig[idx])));
        }
    }
    Ok(eig)
}

// Relative residual of the eigenvector found by inverse iteration near `lambda`.
fn residual(a: &DMatrix<f64>, lambda: f64) -> f64 {
    let n = a.nrows();
    let shift = lambda + 1e-7 * (1.0 + lambda.abs());
    let mut m = a.clone();
    for i in 0..n {
        m[(i, i)] -= shift;
    }
    let lu = m.lu();
    // A random start avoids eigenvectors orthogonal to any patterned vector.
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let mut v = DVector::from_fn(n, |_, _| rng.random_range(0.5..1.5));
    for _ in 0..3 {
        match lu.solve(&v) {
            Some(w) => v = w.normalize(),
            None => return 0.0, // exactly singular: the shift is an eigenvalue
        }
    }
    (a * &v - &v * lambda).norm()
}

/// `(n, d, λ)` data of a connected regular graph.
#[derive(Clone, Debug)]
pub struct SpectralSummary {
    pub n: usize,
    pub d: usize,
    pub lambda: f64,
    pub bipartite: bool,
    pub eigenvalues: Vec<f64>,
}

impl fmt::Display for SpectralSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {:.9}", self.n, self.d, self.lambda)
    }
}

impl SpectralSummary {
    /// One eigenvalue per line, 12 significant digits.
    pub fn spectrum_text(&self) -> String {
        self.eigenvalues.iter().map(|x| format!("{x:.11e}\n")).collect()
    }
}

fn regular_degree_with_loops(g: &Graph) -> Option<usize> {
    let row = |v: usize| g.neighbors(v).len() + g.has_loop(v) as usize;
    let d = if g.n() == 0 { 0 } else { row(0) };
    (0..g.n()).all(|v| row(v) == d).then_some(d)
}

/// Removes one `d` (and one `−d` when bipartite) and takes the largest
/// remaining absolute value. Loops add one to the row sum.
pub fn ndl_summary(g: &Graph) -> Result<SpectralSummary> {
    let d = regular_degree_with_loops(g).ok_or_else(|| Error::Precondition("graph is not regular".into()))?;
    if !g.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    let eigenvalues = spectrum(g)?;
    let bipartite = g.is_bipartite() && g.loop_count() == 0;
    let mut rest = eigenvalues.clone();
    let top = rest.pop().expect("nonempty");
    if (top - d as f64).abs() > TRIVIAL_TOLERANCE {
        return Err(Error::Precondition(format!("top eigenvalue {top} differs from d = {d}")));
    }
    if bipartite && !rest.is_empty() {
        let bottom = rest.remove(0);
        if (bottom + d as f64).abs() > TRIVIAL_TOLERANCE {
            return Err(Error::Precondition(format!("bipartite graph without −d (got {bottom})")));
        }
    }
    let lambda = rest.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(SpectralSummary { n: g.n(), d, lambda, bipartite, eigenvalues })
}

/// `(d − λ)/2` for a base graph, a strict lower bound on `σ` of its Kronecker
/// double cover.
#[derive(Clone, Debug)]
pub struct MixingBound {
    pub d: usize,
    pub lambda: f64,
    pub bound: f64,
    /// Smallest integer strictly above `bound`.
    pub implied_sigma: usize,
    pub provenance: String,
}

impl fmt::Display for MixingBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.9} (σ ≥ {})", self.bound, self.implied_sigma)
    }
}

/// Requires a connected, regular, non-bipartite base so the cover is connected.
pub fn mixing_sensitivity_bound(base: &Graph) -> Result<MixingBound> {
    if base.is_bipartite() && base.loop_count() == 0 {
        return Err(Error::Precondition("bipartite base: the double cover is disconnected".into()));
    }
    let s = ndl_summary(base)?;
    let bound = (s.d as f64 - s.lambda) / 2.0;
    let implied_sigma = bound.floor() as usize + 1;
    Ok(MixingBound {
        d: s.d,
        lambda: s.lambda,
        bound,
        implied_sigma,
        provenance: format!("mixing bound of the double cover of {}", base.provenance()),
    })
}

/// `e(S, T)` against `(d − λ)|S||T|/n`; the inequality is guaranteed when
/// `T = V ∖ S`.
pub fn mixing_check(g: &Graph, summary: &SpectralSummary, s: &[usize], t: &[usize]) -> Result<(usize, f64, bool)> {
    let n = g.n();
    let mut in_t = vec![false; n];
    for &v in t {
        *in_t.get_mut(v).ok_or(Error::VertexOutOfRange { vertex: v, n })? = true;
    }
    let mut e = 0;
    for &u in s {
        if u >= n {
            return Err(Error::VertexOutOfRange { vertex: u, n });
        }
        e += g.neighbors(u).iter().filter(|&&w| in_t[w as usize]).count();
        if g.has_loop(u) && in_t[u] {
            e += 1;
        }
    }
    let bound = (summary.d as f64 - summary.lambda) * s.len() as f64 * t.len() as f64 / n as f64;
    Ok((e, bound, e as f64 >= bound - 1e-6))
}

/// Spectral and direct evidence on whether a generating set is minimal.
#[derive(Clone, Debug)]
pub struct MinimalityReport {
    pub d: usize,
    pub lambda: f64,
    /// `λ < d − 4`, which rules out a minimal generating set.
    pub spectral_not_minimal: bool,
    /// No generator can be dropped (with its inverse) keeping the group generated.
    pub minimal: bool,
    pub consistent: bool,
}

impl fmt::Display for MinimalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d = {}, λ = {:.6}, d − 4 = {}, {}; removal check: {}",
            self.d,
            self.lambda,
            self.d as i64 - 4,
            if self.spectral_not_minimal { "not a minimal Cayley graph" } else { "spectrum inconclusive" },
            if self.minimal { "minimal" } else { "not minimal" },
        )
    }
}

pub fn minimality_diagnostic(group: &FiniteGroup, conn: &ConnectionSet, g: &Graph) -> Result<MinimalityReport> {
    let s = ndl_summary(g)?;
    let members = conn.members();
    let minimal = members.iter().all(|&c| {
        let inv = group.inv(c);
        let rest: Vec<usize> = members.iter().copied().filter(|&x| x != c && x != inv).collect();
        generated_size(group, &rest) < group.order()
    });
    let spectral_not_minimal = s.lambda < s.d as f64 - 4.0 - 1e-9;
    Ok(MinimalityReport {
        d: s.d,
        lambda: s.lambda,
        spectral_not_minimal,
        minimal,
        consistent: !(spectral_not_minimal && minimal),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, petersen_graph};

    #[test]
    fn small_spectra() {
        let k2 = spectrum(&complete_graph(2)).unwrap();
        assert!((k2[0] + 1.0).abs() < 1e-9 && (k2[1] - 1.0).abs() < 1e-9);
        let p = spectrum(&petersen_graph()).unwrap();
        let expect = [-2.0, -2.0, -2.0, -2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 3.0];
        for (x, y) in p.iter().zip(expect) {
            assert!((x - y).abs() < 1e-8);
        }
        let c4 = ndl_summary(&cycle_graph(4)).unwrap();
        assert!(c4.lambda.abs() < 1e-9 && c4.bipartite);
        assert!(mixing_sensitivity_bound(&cycle_graph(4)).is_err());
    }

    #[test]
    fn mixing_on_petersen() {
        let g = petersen_graph();
        let s = ndl_summary(&g).unwrap();
        assert!((s.lambda - 2.0).abs() < 1e-8);
        let (a, b): (Vec<usize>, Vec<usize>) = (0..10).partition(|v| v % 3 == 0);
        assert!(mixing_check(&g, &s, &a, &b).unwrap().2);
    }
}
