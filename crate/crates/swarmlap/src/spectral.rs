//! Ground-truth spectral oracle: communication graphs from positions, exact
//! Laplacian spectra, Fiedler partitions, connectivity diagnostics and
//! Cheeger bounds.
//!
//! Everything here is dense and exact. Swarms in this crate stay well under
//! a thousand agents, so an O(n³) symmetric eigensolve is cheap and keeps
//! the oracle free of iterative-solver tolerances that could correlate with
//! the distributed estimator it is used to check.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Point;

/// Subset-enumeration cutoff for the exact Cheeger constant: 2^16 subsets.
pub const CHEEGER_EXACT_MAX_N: usize = 16;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("operation requires at least {needed} vertices, graph has {got}")]
    TooSmall { needed: usize, got: usize },
    #[error("operation requires a connected graph ({components} components found)")]
    Disconnected { components: usize },
}

/// Symmetric unweighted communication graph over agent positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommGraph {
    n: usize,
    adj: Vec<bool>,
}

impl CommGraph {
    pub fn new(n: usize) -> Self {
        CommGraph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = CommGraph::new(n);
        for &(i, j) in edges {
            g.add_edge(i, j);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Inserts the undirected edge (i, j). Self-loops are ignored.
    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.adj[i * self.n + j] = true;
        self.adj[j * self.n + i] = true;
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    pub fn degree(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.has_edge(i, j)).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    pub fn mean_degree(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        (0..self.n).map(|i| self.degree(i)).sum::<usize>() as f64 / self.n as f64
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.has_edge(i, j))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Edge-list text export: one "i j" pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (i, j) in self.edges() {
            s.push_str(&format!("{i} {j}\n"));
        }
        s
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges(),
        }
    }
}

/// JSON export form of a graph: {n, edges: [[i, j], ...]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<GraphJson> for CommGraph {
    fn from(j: GraphJson) -> Self {
        CommGraph::from_edges(j.n, &j.edges)
    }
}

/// Connects every pair of points within Euclidean distance `sigma`.
pub fn build_graph(points: &[Point], sigma: f64) -> CommGraph {
    let mut g = CommGraph::new(points.len());
    let sigma_sq = sigma * sigma;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i].distance_sq(&points[j]) <= sigma_sq {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Laplacian L = D − A as a dense symmetric matrix.
pub fn laplacian(g: &CommGraph) -> DMatrix<f64> {
    let n = g.n();
    let mut l = DMatrix::zeros(n, n);
    for i in 0..n {
        let mut deg = 0.0;
        for j in 0..n {
            if g.has_edge(i, j) {
                l[(i, j)] = -1.0;
                deg += 1.0;
            }
        }
        l[(i, i)] = deg;
    }
    l
}

/// Full eigendecomposition of the graph Laplacian.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    /// Eigenvalues in ascending order; the first is 0 up to round-off.
    pub eigenvalues: Vec<f64>,
    /// Second-smallest eigenvalue (algebraic connectivity).
    pub fiedler_value: f64,
    /// Unit-norm eigenvector paired with the Fiedler value, orthogonal to
    /// the all-ones vector.
    pub fiedler_vector: Vec<f64>,
}

impl SpectrumResult {
    /// Number of eigenvalues equal to zero within a scale-aware threshold,
    /// which equals the number of connected components.
    pub fn zero_multiplicity(&self, max_degree: usize) -> usize {
        let thresh = 1e-8 * (max_degree.max(1)) as f64;
        self.eigenvalues.iter().filter(|&&ev| ev < thresh).count()
    }
}

/// Computes eigenvalues and the Fiedler pair of the Laplacian of `g`.
pub fn spectrum(g: &CommGraph) -> Result<SpectrumResult, SpectralError> {
    let n = g.n();
    if n < 2 {
        return Err(SpectralError::TooSmall { needed: 2, got: n });
    }
    let l = laplacian(g);
    let eig = l.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();

    // Take the eigenvector of the second-smallest eigenvalue and project out
    // the constant component. When λ₂ > 0 this is a numerical no-op; when
    // the zero eigenvalue is degenerate it picks, inside the kernel, the
    // direction orthogonal to the all-ones vector.
    let mut fiedler_vector = Vec::new();
    for &col in order.iter().skip(1) {
        let v: DVector<f64> = eig.eigenvectors.column(col).into();
        let mean = v.sum() / n as f64;
        let centered = v.map(|x| x - mean);
        let norm = centered.norm();
        if norm > 1e-9 {
            fiedler_vector = (centered / norm).iter().copied().collect();
            break;
        }
    }
    if fiedler_vector.is_empty() {
        // Unreachable for n ≥ 2, kept as a hard failure rather than a panic.
        return Err(SpectralError::TooSmall { needed: 2, got: 1 });
    }

    Ok(SpectrumResult {
        fiedler_value: eigenvalues[1],
        eigenvalues,
        fiedler_vector,
    })
}

/// Labels connected components by breadth-first search.
/// Returns (component count, per-vertex component label).
pub fn connected_components(g: &CommGraph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = count;
        queue.push(start);
        while let Some(v) = queue.pop() {
            for w in g.neighbors(v) {
                if label[w] == usize::MAX {
                    label[w] = count;
                    queue.push(w);
                }
            }
        }
        count += 1;
    }
    (count, label)
}

/// Two-sided bound data for the algebraic connectivity:
/// h ≥ λ₂/2 ≥ h²/(2Δ).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CheegerBounds {
    /// The isoperimetric number h(G) = min |∂S|/|S| over subsets with
    /// |S| ≤ n/2 — exact (by enumeration) for n ≤ [`CHEEGER_EXACT_MAX_N`],
    /// otherwise the best Fiedler sweep cut, a valid upper bound on h(G).
    pub h_upper: f64,
    /// Whether `h_upper` is the exact isoperimetric number.
    pub exact: bool,
    /// Maximum vertex degree Δ(G).
    pub delta_max: usize,
}

/// Computes the isoperimetric number (exactly for small graphs, by Fiedler
/// sweep above [`CHEEGER_EXACT_MAX_N`] vertices) together with Δ(G).
///
/// Errors on disconnected graphs, where the constant is 0 and the bounds
/// degenerate.
pub fn cheeger_bounds(g: &CommGraph) -> Result<CheegerBounds, SpectralError> {
    let n = g.n();
    if n < 2 {
        return Err(SpectralError::TooSmall { needed: 2, got: n });
    }
    let (components, _) = connected_components(g);
    if components != 1 {
        return Err(SpectralError::Disconnected { components });
    }
    let delta_max = g.max_degree();

    if n <= CHEEGER_EXACT_MAX_N {
        let mut h = f64::INFINITY;
        // All non-empty subsets with at most half the vertices.
        for mask in 1u32..(1u32 << n) {
            let size = mask.count_ones() as usize;
            if size * 2 > n {
                continue;
            }
            let mut boundary = 0usize;
            for (i, j) in g.edges() {
                let in_i = mask >> i & 1 == 1;
                let in_j = mask >> j & 1 == 1;
                if in_i != in_j {
                    boundary += 1;
                }
            }
            h = h.min(boundary as f64 / size as f64);
        }
        Ok(CheegerBounds {
            h_upper: h,
            exact: true,
            delta_max,
        })
    } else {
        let spec = spectrum(g)?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| spec.fiedler_vector[a].total_cmp(&spec.fiedler_vector[b]));
        let mut in_set = vec![false; n];
        let mut boundary = 0isize;
        let mut h = f64::INFINITY;
        for (k, &v) in order.iter().enumerate().take(n - 1) {
            // Moving v across the cut flips the crossing state of its edges.
            for w in g.neighbors(v) {
                boundary += if in_set[w] { -1 } else { 1 };
            }
            in_set[v] = true;
            let size = (k + 1).min(n - k - 1);
            h = h.min(boundary as f64 / size as f64);
        }
        Ok(CheegerBounds {
            h_upper: h,
            exact: false,
            delta_max,
        })
    }
}

/// Splits vertices by the sign of the Fiedler vector; zero entries join the
/// non-negative side.
pub fn fiedler_partition(g: &CommGraph) -> Result<(Vec<usize>, Vec<usize>), SpectralError> {
    let (components, _) = connected_components(g);
    if components != 1 {
        return Err(SpectralError::Disconnected { components });
    }
    let spec = spectrum(g)?;
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, &x) in spec.fiedler_vector.iter().enumerate() {
        if x >= 0.0 {
            pos.push(i);
        } else {
            neg.push(i);
        }
    }
    Ok((pos, neg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_arena, sample_uniform, ShapeKind};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> CommGraph {
        CommGraph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    fn cycle(n: usize) -> CommGraph {
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        CommGraph::from_edges(n, &edges)
    }

    fn complete(n: usize) -> CommGraph {
        let mut g = CommGraph::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    #[test]
    fn build_graph_respects_range() {
        let two = [Point::new(0.0, 0.0), Point::new(50.0, 0.0)];
        assert_eq!(build_graph(&two, 85.0).edges(), vec![(0, 1)]);

        let far = [Point::new(0.0, 0.0), Point::new(90.0, 0.0)];
        assert!(build_graph(&far, 85.0).edges().is_empty());

        let collinear = [
            Point::new(0.0, 0.0),
            Point::new(80.0, 0.0),
            Point::new(160.0, 0.0),
        ];
        let g = build_graph(&collinear, 85.0);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn laplacian_small_cases() {
        let p2 = path(2);
        let l = laplacian(&p2);
        assert_eq!(l[(0, 0)], 1.0);
        assert_eq!(l[(0, 1)], -1.0);
        assert_eq!(l[(1, 0)], -1.0);
        assert_eq!(l[(1, 1)], 1.0);

        let k3 = complete(3);
        let l = laplacian(&k3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l[(i, j)], if i == j { 2.0 } else { -1.0 });
            }
        }

        let empty = CommGraph::new(3);
        assert_eq!(laplacian(&empty), DMatrix::zeros(3, 3));
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.random_range(2..30);
            let mut g = CommGraph::new(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.random_bool(0.3) {
                        g.add_edge(i, j);
                    }
                }
            }
            let l = laplacian(&g);
            for i in 0..n {
                assert!(l.row(i).sum().abs() == 0.0);
            }
        }
    }

    #[test]
    fn closed_form_spectra() {
        for n in 2..=50usize {
            let s = spectrum(&complete(n)).unwrap();
            assert!(
                (s.fiedler_value - n as f64).abs() < 1e-9,
                "K_{n}: {}",
                s.fiedler_value
            );

            let s = spectrum(&path(n)).unwrap();
            let expect = 2.0 * (1.0 - (std::f64::consts::PI / n as f64).cos());
            assert!(
                (s.fiedler_value - expect).abs() < 1e-9,
                "P_{n}: {} vs {expect}",
                s.fiedler_value
            );

            if n >= 3 {
                let s = spectrum(&cycle(n)).unwrap();
                let expect = 2.0 * (1.0 - (2.0 * std::f64::consts::PI / n as f64).cos());
                assert!(
                    (s.fiedler_value - expect).abs() < 1e-9,
                    "C_{n}: {} vs {expect}",
                    s.fiedler_value
                );
            }
        }
    }

    #[test]
    fn disconnected_graph_has_zero_fiedler_value() {
        let g = CommGraph::from_edges(4, &[(0, 1), (2, 3)]);
        let s = spectrum(&g).unwrap();
        assert!(s.fiedler_value.abs() < 1e-9);
        assert_eq!(s.zero_multiplicity(g.max_degree()), 2);
    }

    #[test]
    fn spectrum_invariants_on_random_geometric_graphs() {
        let arena = make_arena(ShapeKind::Disk, 70_000.0).unwrap();
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pts = sample_uniform(&arena, 30, &mut rng);
            let g = build_graph(&pts, 70.0);
            let s = spectrum(&g).unwrap();
            assert!(s.eigenvalues[0].abs() < 1e-9);
            assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1] + 1e-12));
            assert!(s.eigenvalues.iter().all(|&ev| ev > -1e-9));
            let (ncomp, _) = connected_components(&g);
            assert_eq!(s.zero_multiplicity(g.max_degree()), ncomp);
            // Fiedler vector: unit norm, orthogonal to the ones vector.
            let norm: f64 = s.fiedler_vector.iter().map(|x| x * x).sum::<f64>();
            assert!((norm - 1.0).abs() < 1e-9);
            let dot: f64 = s.fiedler_vector.iter().sum();
            assert!(dot.abs() < 1e-8);
        }
    }

    #[test]
    fn component_counting() {
        assert_eq!(connected_components(&path(3)).0, 1);
        let two_k2 = CommGraph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(connected_components(&two_k2).0, 2);
        assert_eq!(connected_components(&CommGraph::new(5)).0, 5);
    }

    #[test]
    fn cheeger_k2() {
        let b = cheeger_bounds(&path(2)).unwrap();
        assert_eq!(b.h_upper, 1.0);
        assert!(b.exact);
        assert_eq!(b.delta_max, 1);
        let lambda2 = spectrum(&path(2)).unwrap().fiedler_value;
        assert!(b.h_upper >= lambda2 / 2.0 - 1e-9);
        assert!(lambda2 / 2.0 >= b.h_upper * b.h_upper / (2.0 * b.delta_max as f64) - 1e-9);
    }

    #[test]
    fn cheeger_c4_brute_force() {
        let g = cycle(4);
        let b = cheeger_bounds(&g).unwrap();
        let lambda2 = spectrum(&g).unwrap().fiedler_value;
        assert!((lambda2 - 2.0).abs() < 1e-9);
        // Independent enumeration oracle over all subsets of ≤ 2 vertices.
        let mut h = f64::INFINITY;
        for mask in 1u32..16 {
            let size = mask.count_ones() as usize;
            if size > 2 {
                continue;
            }
            let mut boundary = 0;
            for (i, j) in g.edges() {
                if (mask >> i & 1) != (mask >> j & 1) {
                    boundary += 1;
                }
            }
            h = h.min(boundary as f64 / size as f64);
        }
        assert_eq!(b.h_upper, h);
        assert!(b.h_upper >= lambda2 / 2.0 - 1e-9);
        assert!(lambda2 / 2.0 >= b.h_upper * b.h_upper / (2.0 * b.delta_max as f64) - 1e-9);
    }

    #[test]
    fn cheeger_rejects_disconnected() {
        let g = CommGraph::from_edges(4, &[(0, 1), (2, 3)]);
        assert!(matches!(
            cheeger_bounds(&g),
            Err(SpectralError::Disconnected { components: 2 })
        ));
    }

    #[test]
    fn sweep_bound_is_valid_upper_bound() {
        // For n > CHEEGER_EXACT_MAX_N the sweep value must upper-bound the
        // exact constant computed here by enumeration on a shrunk copy of
        // the same construction; instead verify the inequality h ≥ λ₂/2
        // directly, which any valid upper bound must satisfy.
        let arena = make_arena(ShapeKind::Disk, 70_000.0).unwrap();
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
            let pts = sample_uniform(&arena, 40, &mut rng);
            let g = build_graph(&pts, 90.0);
            if connected_components(&g).0 != 1 {
                continue;
            }
            let b = cheeger_bounds(&g).unwrap();
            assert!(!b.exact);
            let lambda2 = spectrum(&g).unwrap().fiedler_value;
            assert!(b.h_upper >= lambda2 / 2.0 - 1e-9);
        }
    }

    #[test]
    fn fiedler_partition_small_graphs() {
        let (pos, neg) = fiedler_partition(&path(2)).unwrap();
        assert_eq!(pos.len(), 1);
        assert_eq!(neg.len(), 1);

        // Fiedler vector on a path is monotone: the split is {0,1} | {2,3}.
        let (pos, neg) = fiedler_partition(&path(4)).unwrap();
        let (mut a, mut b) = (pos, neg);
        a.sort_unstable();
        b.sort_unstable();
        if a.contains(&0) {
            assert_eq!(a, vec![0, 1]);
            assert_eq!(b, vec![2, 3]);
        } else {
            assert_eq!(a, vec![2, 3]);
            assert_eq!(b, vec![0, 1]);
        }

        // K4 has a degenerate Fiedler eigenspace; any split is acceptable
        // but both sides must be non-empty.
        let (pos, neg) = fiedler_partition(&complete(4)).unwrap();
        assert!(!pos.is_empty() && !neg.is_empty());
    }

    #[test]
    fn edge_addition_does_not_decrease_fiedler_value() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.random_range(3..12);
            let mut g = CommGraph::new(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.random_bool(0.4) {
                        g.add_edge(i, j);
                    }
                }
            }
            let before = spectrum(&g).unwrap().fiedler_value;
            // Add one absent edge, if any.
            let absent: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !g.has_edge(i, j))
                .collect();
            if absent.is_empty() {
                continue;
            }
            let (i, j) = absent[rng.random_range(0..absent.len())];
            g.add_edge(i, j);
            let after = spectrum(&g).unwrap().fiedler_value;
            assert!(
                after >= before - 1e-9,
                "λ₂ decreased from {before} to {after}"
            );
        }
    }

    #[test]
    fn partition_nonempty_when_gap_open() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let arena = make_arena(ShapeKind::Disk, 70_000.0).unwrap();
        for _ in 0..20 {
            let pts = sample_uniform(&arena, 20, &mut rng);
            let g = build_graph(&pts, 90.0);
            if connected_components(&g).0 != 1 {
                continue;
            }
            let s = spectrum(&g).unwrap();
            if s.eigenvalues[2] - s.eigenvalues[1] <= 1e-9 {
                continue;
            }
            let (pos, neg) = fiedler_partition(&g).unwrap();
            assert!(!pos.is_empty() && !neg.is_empty());
        }
    }

    #[test]
    fn exports_round_trip() {
        let g = CommGraph::from_edges(4, &[(0, 1), (1, 2), (0, 3)]);
        assert_eq!(g.to_edge_list(), "0 1\n0 3\n1 2\n");
        let json = serde_json::to_string(&g.to_json()).unwrap();
        let back: GraphJson = serde_json::from_str(&json).unwrap();
        assert_eq!(CommGraph::from(back), g);
    }
}
