//! Time-reversal classification of graph Hamiltonians.
//!
//! Structural verdicts follow from the support graph alone: forests (with or
//! without self-edges) admit a gauge that removes every edge phase, and
//! bipartite graphs admit a gauge mapping `H` to `-H`. Both imply probability
//! time symmetry `|U_ij|^2 = |U_ji|^2`. Numerical checks sample the actual
//! propagator.
//!
//! Gauge convention, used everywhere in the crate: a phase vector `lambda`
//! acts as `H -> Lambda^dagger H Lambda` with `Lambda = diag(e^{i lambda_k})`,
//! so an edge phase transforms as `alpha_ij -> alpha_ij + lambda_j - lambda_i`.

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fmt::{self, Write as _};

use rayon::prelude::*;

use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::graph::{Edge, GraphSkeleton, WalkHamiltonian};
use crate::propagator::Evolver;
use crate::C64;

/// Per-node phases of a diagonal unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugePhase(Vec<f64>);

impl GaugePhase {
    pub fn new(phases: Vec<f64>) -> Self {
        Self(phases)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn phases(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entrywise sum; the phase vector of the product of both gauges.
    pub fn compose(&self, other: &GaugePhase) -> GaugePhase {
        assert_eq!(self.len(), other.len(), "gauge lengths differ");
        GaugePhase(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `e^{i lambda_k}`.
    pub fn factor(&self, k: usize) -> C64 {
        C64::from_polar(1.0, self.0[k])
    }
}

impl fmt::Display for GaugePhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| format!("{p:.16e}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Reduces a phase to `(-pi, pi]`.
pub fn wrap_phase(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Outcome of a two-colouring attempt, with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    /// Colour (0 or 1) of every node; each edge joins different colours.
    Bipartite { coloring: Vec<u8> },
    /// Closed walk of odd length through existing edges, starting and ending
    /// at the same node. A self-edge gives `[k, k]`.
    OddCycle { cycle: Vec<usize> },
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite { .. })
    }

    /// Checks the witness against the skeleton it was computed from.
    pub fn verify(&self, s: &GraphSkeleton) -> bool {
        match self {
            Bipartiteness::Bipartite { coloring } => {
                coloring.len() == s.n_nodes()
                    && !s.has_self_edges()
                    && s.edges().iter().all(|&(a, b)| coloring[a] != coloring[b])
            }
            Bipartiteness::OddCycle { cycle } => {
                cycle.len() >= 2
                    && cycle.first() == cycle.last()
                    && (cycle.len() - 1) % 2 == 1
                    && cycle.windows(2).all(|w| s.has_edge(w[0], w[1]))
            }
        }
    }
}

/// Breadth-first two-colouring of a skeleton.
pub fn is_bipartite(s: &GraphSkeleton) -> Bipartiteness {
    if let Some(k) = s.self_edge_nodes().next() {
        return Bipartiteness::OddCycle { cycle: vec![k, k] };
    }
    let n = s.n_nodes();
    let mut color: Vec<Option<u8>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued nodes are coloured");
            for &v in s.neighbors(u) {
                match color[v] {
                    None => {
                        color[v] = Some(1 - cu);
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => {
                        return Bipartiteness::OddCycle {
                            cycle: odd_cycle(u, v, &parent, &depth),
                        }
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Bipartiteness::Bipartite {
        coloring: color.into_iter().map(|c| c.unwrap_or(0)).collect(),
    }
}

/// Cycle closed by the same-colour edge `(u, v)` through the BFS tree.
fn odd_cycle(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut up_a = vec![a];
    let mut up_b = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        up_a.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        up_b.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        up_a.push(a);
        up_b.push(b);
    }
    up_b.pop();
    let mut ring: Vec<usize> = up_a.into_iter().chain(up_b.into_iter().rev()).collect();
    // Canonical form: start at the smallest node, step to its smaller neighbour.
    let start = (0..ring.len()).min_by_key(|&k| ring[k]).unwrap_or(0);
    ring.rotate_left(start);
    if ring.len() > 2 && ring[ring.len() - 1] < ring[1] {
        ring[1..].reverse();
    }
    ring.push(ring[0]);
    ring
}

/// Table 1 geometry classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuralClass {
    /// Forest without self-edges (linear chains included).
    Tree,
    /// Forest whose diagonal is not uniform.
    TreeWithSelfEdges,
    /// Bipartite with at least one (necessarily even) cycle.
    BipartiteWithCycles,
    /// Contains an odd cycle, or a self-edge on a graph with cycles.
    NonBipartite,
}

impl StructuralClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StructuralClass::Tree => "tree",
            StructuralClass::TreeWithSelfEdges => "tree-with-self-edges",
            StructuralClass::BipartiteWithCycles => "bipartite-with-cycles",
            StructuralClass::NonBipartite => "non-bipartite",
        }
    }
}

impl fmt::Display for StructuralClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtsVerdict {
    /// Residual within tolerance at every sampled time. Not a proof for all `t`.
    SymmetricAtSampledTimes,
    Asymmetric,
}

impl PtsVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            PtsVerdict::SymmetricAtSampledTimes => "symmetric-at-sampled-times",
            PtsVerdict::Asymmetric => "asymmetric",
        }
    }
}

/// Result of a sampled probability time-symmetry test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtsCheck {
    /// `max ||U_ij|^2 - |U_ji|^2|` over samples and pairs.
    pub residual: f64,
    pub verdict: PtsVerdict,
    /// Sample time and pair `(i, j)` of the worst residual.
    pub worst: (f64, usize, usize),
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub n_nodes: usize,
    pub n_edges: usize,
    pub structural_class: StructuralClass,
    pub bipartiteness: Bipartiteness,
    pub is_forest: bool,
    pub phase_removal_gauge: Option<GaugePhase>,
    pub negation_gauge: Option<GaugePhase>,
    /// Probability time symmetric for every choice of edge phases.
    pub structural_pts: bool,
    /// Transition probabilities depend on the edge phases.
    pub phase_dependent: bool,
    pub numeric: PtsCheck,
    pub labels: Option<Vec<String>>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

fn join(nodes: &[usize]) -> String {
    nodes.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")
}

impl SymmetryReport {
    pub fn is_bipartite(&self) -> bool {
        self.bipartiteness.is_bipartite()
    }

    /// Flat `key=value` block, one entry per line.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: &dyn fmt::Display| {
            let _ = writeln!(out, "{k}={v}");
        };
        kv("n_nodes", &self.n_nodes);
        kv("n_edges", &self.n_edges);
        kv("structural_class", &self.structural_class);
        kv("structural_pts", &yes_no(self.structural_pts));
        kv("phase_dependent", &yes_no(self.phase_dependent));
        kv("is_forest", &yes_no(self.is_forest));
        kv("is_bipartite", &yes_no(self.is_bipartite()));
        match &self.bipartiteness {
            Bipartiteness::Bipartite { coloring } => {
                let c: Vec<usize> = coloring.iter().map(|&c| c as usize).collect();
                kv("coloring", &join(&c));
            }
            Bipartiteness::OddCycle { cycle } => kv("odd_cycle", &join(cycle)),
        }
        let none = "none".to_string();
        kv(
            "phase_removal_gauge",
            self.phase_removal_gauge.as_ref().map_or(&none as &dyn fmt::Display, |g| g as &dyn fmt::Display),
        );
        kv(
            "negation_gauge",
            self.negation_gauge.as_ref().map_or(&none as &dyn fmt::Display, |g| g as &dyn fmt::Display),
        );
        kv("numeric_pts_residual", &format!("{:.16e}", self.numeric.residual));
        kv("numeric_pts_verdict", &self.numeric.verdict.as_str());
        kv("numeric_pts_samples", &self.numeric.samples);
        let (t, i, j) = self.numeric.worst;
        kv("numeric_pts_worst", &format!("t={t:.16e} i={i} j={j}"));
        if let Some(labels) = &self.labels {
            let map: Vec<String> = labels.iter().enumerate().map(|(k, l)| format!("{k}:{l}")).collect();
            kv("labels", &map.join(" "));
        }
        out
    }

    pub const CSV_HEADER: &'static str = "graph,n_nodes,n_edges,structural_class,structural_pts,phase_dependent,is_forest,is_bipartite,witness,numeric_pts_residual,numeric_pts_verdict";

    /// One CSV row for batch output; `name` identifies the input graph.
    pub fn to_csv_row(&self, name: &str) -> String {
        let witness = match &self.bipartiteness {
            Bipartiteness::Bipartite { coloring } => {
                let c: Vec<usize> = coloring.iter().map(|&c| c as usize).collect();
                format!("coloring:{}", join(&c))
            }
            Bipartiteness::OddCycle { cycle } => format!("odd_cycle:{}", join(cycle)),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{:.16e},{}",
            name.replace(',', "_"),
            self.n_nodes,
            self.n_edges,
            self.structural_class,
            yes_no(self.structural_pts),
            yes_no(self.phase_dependent),
            yes_no(self.is_forest),
            yes_no(self.is_bipartite()),
            witness,
            self.numeric.residual,
            self.numeric.verdict.as_str()
        )
    }
}

pub fn classify(h: &WalkHamiltonian) -> SymmetryReport {
    classify_with(h, &NumericConfig::default())
}

/// Structural verdicts plus a sampled numerical residual.
pub fn classify_with(h: &WalkHamiltonian, cfg: &NumericConfig) -> SymmetryReport {
    let skeleton = h.skeleton_with(cfg);
    let bipartiteness = is_bipartite(&skeleton);
    let is_forest = skeleton.is_forest();
    let structural_class = match (is_forest, bipartiteness.is_bipartite()) {
        (true, _) if skeleton.has_self_edges() => StructuralClass::TreeWithSelfEdges,
        (true, _) => StructuralClass::Tree,
        (false, true) => StructuralClass::BipartiteWithCycles,
        (false, false) => StructuralClass::NonBipartite,
    };
    let phase_removal_gauge = is_forest.then(|| forest_gauge(h, &skeleton));
    let negation_gauge = match &bipartiteness {
        Bipartiteness::Bipartite { coloring } => Some(coloring_gauge(coloring)),
        Bipartiteness::OddCycle { .. } => None,
    };
    let numeric = pts_numeric_with(h, &default_pts_times(h, cfg), cfg.pts_tol);
    SymmetryReport {
        n_nodes: h.n_nodes(),
        n_edges: h.edges().len(),
        structural_class,
        structural_pts: is_forest || bipartiteness.is_bipartite(),
        phase_dependent: !is_forest,
        bipartiteness,
        is_forest,
        phase_removal_gauge,
        negation_gauge,
        numeric,
        labels: h.labels().map(|l| l.to_vec()),
    }
}

/// Gauge that zeroes every edge phase of a forest Hamiltonian.
///
/// Each component is rooted at its smallest node with `lambda = 0`; along a
/// tree edge from parent `p` to child `c` carrying phase `phi` (of `H_pc`)
/// the child gets `lambda_c = lambda_p - phi`.
pub fn tree_phase_removal(h: &WalkHamiltonian) -> Result<GaugePhase> {
    let skeleton = h.skeleton();
    if !skeleton.is_forest() {
        return Err(Error::NotForest);
    }
    Ok(forest_gauge(h, &skeleton))
}

fn forest_gauge(h: &WalkHamiltonian, skeleton: &GraphSkeleton) -> GaugePhase {
    let n = h.n_nodes();
    let mut lambda = vec![0.0; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(p) = queue.pop_front() {
            for &c in skeleton.neighbors(p) {
                if seen[c] {
                    continue;
                }
                seen[c] = true;
                let phi = h.edge(p, c).expect("skeleton edge").directed_phase(p);
                lambda[c] = lambda[p] - phi;
                queue.push_back(c);
            }
        }
    }
    GaugePhase(lambda)
}

fn coloring_gauge(coloring: &[u8]) -> GaugePhase {
    GaugePhase(coloring.iter().map(|&c| if c == 0 { 0.0 } else { PI }).collect())
}

/// Gauge with `Lambda^dagger H Lambda = -H` for a bipartite Hamiltonian with
/// uniform diagonal (the diagonal is measured from its common value).
pub fn bipartite_negation_gauge(h: &WalkHamiltonian) -> Result<GaugePhase> {
    let skeleton = h.skeleton();
    if skeleton.has_self_edges() {
        return Err(Error::UnequalSelfEnergies);
    }
    match is_bipartite(&skeleton) {
        Bipartiteness::Bipartite { coloring } => Ok(coloring_gauge(&coloring)),
        Bipartiteness::OddCycle { .. } => Err(Error::NotBipartite),
    }
}

/// `Lambda^dagger H Lambda`: edge phases become `alpha + lambda_j - lambda_i`,
/// the diagonal is unchanged.
pub fn apply_gauge(h: &WalkHamiltonian, gauge: &GaugePhase) -> Result<WalkHamiltonian> {
    if gauge.len() != h.n_nodes() {
        return Err(Error::DimensionMismatch {
            expected: h.n_nodes(),
            found: gauge.len(),
        });
    }
    let l = gauge.phases();
    Ok(h.map_edges(|e| Edge {
        alpha: e.alpha + l[e.j] - l[e.i],
        ..*e
    }))
}

/// Default sample times: `pts_samples` points uniformly in `(0, 2 pi / w]`
/// where `w` is the half-width of the spectrum (1 when the spectrum is flat).
pub fn default_pts_times(h: &WalkHamiltonian, cfg: &NumericConfig) -> Vec<f64> {
    let w = Evolver::new(h).spectrum().half_width();
    let scale = if w > 1e-12 { w } else { 1.0 };
    let span = 2.0 * PI / scale;
    let n = cfg.pts_samples.max(1);
    (1..=n).map(|k| span * k as f64 / n as f64).collect()
}

/// Sampled check of `|U_ij|^2 = |U_ji|^2` over `times` and all pairs.
pub fn pts_numeric(h: &WalkHamiltonian, times: &[f64], tol: f64) -> Result<PtsCheck> {
    if times.is_empty() {
        return Err(Error::EmptyGrid);
    }
    Ok(pts_numeric_with(h, times, tol))
}

fn pts_numeric_with(h: &WalkHamiltonian, times: &[f64], tol: f64) -> PtsCheck {
    let evolver = Evolver::new(h);
    let n = h.n_nodes();
    let per_time: Vec<(f64, usize, usize)> = times
        .par_iter()
        .map(|&t| {
            let u = evolver.propagator(t).into_matrix();
            let mut worst = (0.0, 0, 0);
            for i in 0..n {
                for j in i + 1..n {
                    let r = (u[(i, j)].norm_sqr() - u[(j, i)].norm_sqr()).abs();
                    if r > worst.0 {
                        worst = (r, i, j);
                    }
                }
            }
            worst
        })
        .collect();
    let (k, &(residual, i, j)) = per_time
        .iter()
        .enumerate()
        .fold((0, &per_time[0]), |b, c| if c.1 .0 > b.1 .0 { c } else { b });
    PtsCheck {
        residual,
        verdict: if residual <= tol {
            PtsVerdict::SymmetricAtSampledTimes
        } else {
            PtsVerdict::Asymmetric
        },
        worst: (times[k], i, j),
        samples: times.len(),
    }
}

/// `sinh(iHt)_ji cosh(iHt)_ij - sinh(iHt)_ij cosh(iHt)_ji`, from
/// `cosh(iHt) = (U^dagger + U) / 2` and `sinh(iHt) = (U^dagger - U) / 2`.
pub fn eq1_residual(h: &WalkHamiltonian, t: f64, i: usize, j: usize) -> Result<C64> {
    let n = h.n_nodes();
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n_nodes: n });
        }
    }
    let u = Evolver::new(h).propagator(t).into_matrix();
    Ok(parity_residual(u[(i, j)], u[(j, i)]))
}

/// Same quantity for every pair at one time, from a precomputed evolver.
pub fn eq1_residual_max(evolver: &Evolver, t: f64) -> f64 {
    let u = evolver.propagator(t).into_matrix();
    let n = u.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max(parity_residual(u[(i, j)], u[(j, i)]).norm());
        }
    }
    worst
}

fn parity_residual(u_ij: C64, u_ji: C64) -> C64 {
    let cosh_ij = (u_ji.conj() + u_ij) * 0.5;
    let cosh_ji = (u_ij.conj() + u_ji) * 0.5;
    let sinh_ij = (u_ji.conj() - u_ij) * 0.5;
    let sinh_ji = (u_ij.conj() - u_ji) * 0.5;
    sinh_ji * cosh_ij - sinh_ij * cosh_ji
}

/// Sum of directed edge phases along a closed walk, wrapped to `(-pi, pi]`.
/// Steps `k -> k` are allowed on self-edges and carry no phase.
pub fn cycle_flux(h: &WalkHamiltonian, cycle: &[usize]) -> Result<f64> {
    if cycle.len() < 2 || cycle.first() != cycle.last() {
        return Err(Error::NotClosedWalk);
    }
    let n = h.n_nodes();
    if let Some(&index) = cycle.iter().find(|&&k| k >= n) {
        return Err(Error::IndexOutOfRange { index, n_nodes: n });
    }
    let skeleton = h.skeleton();
    let mut flux = 0.0;
    for w in cycle.windows(2) {
        let (from, to) = (w[0], w[1]);
        if from == to {
            if !skeleton.has_self_edge(from) {
                return Err(Error::MissingEdge { from, to });
            }
            continue;
        }
        let edge = h.edge(from, to).ok_or(Error::MissingEdge { from, to })?;
        flux += edge.directed_phase(from);
    }
    Ok(wrap_phase(flux))
}
