//! Complex-weighted graph Hamiltonians and their support graphs.
//!
//! A [`WalkHamiltonian`] stores the upper triangle of a Hermitian matrix as an
//! edge list: every edge `(i, j, h, alpha)` has `i < j` and stands for
//! `H_ij = h e^{i alpha}` together with `H_ji = h e^{-i alpha}`. Diagonal
//! entries are real self-energies.
//!
//! # File format
//!
//! Line oriented, `#` starts a comment, tokens are whitespace separated:
//!
//! ```text
//! nodes 3
//! edge 0 1 1.0 0.0
//! edge 1 2 1.0 0.0
//! edge 2 0 1.0 0.0
//! self 0 0.5
//! ```
//!
//! `nodes <N>` must come first. Node tokens are indices in `0..N`, unless any
//! node token in the file is not an integer, in which case every node token is
//! read as a label and labels receive indices in order of first appearance.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::DMatrix;

use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::C64;

/// One stored coupling, `H_ij = h e^{i alpha}` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub h: f64,
    pub alpha: f64,
}

impl Edge {
    /// Phase of `H_from,to` when walking the edge from `from` to `to`.
    pub fn directed_phase(&self, from: usize) -> f64 {
        if from == self.i {
            self.alpha
        } else {
            -self.alpha
        }
    }

    pub fn weight(&self) -> C64 {
        C64::from_polar(self.h, self.alpha)
    }
}

/// Hermitian graph Hamiltonian over `n_nodes` basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkHamiltonian {
    n_nodes: usize,
    edges: Vec<Edge>,
    self_energies: Vec<f64>,
    index: BTreeMap<(usize, usize), usize>,
    labels: Option<Vec<String>>,
}

impl WalkHamiltonian {
    /// Empty Hamiltonian (no edges, zero diagonal).
    pub fn new(n_nodes: usize) -> Result<Self> {
        if n_nodes == 0 {
            return Err(Error::InvalidValue {
                what: "node count",
                value: 0.0,
            });
        }
        Ok(Self {
            n_nodes,
            edges: Vec::new(),
            self_energies: vec![0.0; n_nodes],
            index: BTreeMap::new(),
            labels: None,
        })
    }

    pub fn with_edge(mut self, i: usize, j: usize, h: f64, alpha: f64) -> Result<Self> {
        self.add_edge(i, j, h, alpha)?;
        Ok(self)
    }

    pub fn with_self_energy(mut self, i: usize, energy: f64) -> Result<Self> {
        self.set_self_energy(i, energy)?;
        Ok(self)
    }

    /// Adds the coupling `H_ij = h e^{i alpha}`. A declaration with `i > j` is
    /// stored as `(j, i, h, -alpha)`.
    pub fn add_edge(&mut self, i: usize, j: usize, h: f64, alpha: f64) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::SelfLoopEdge { i });
        }
        if !h.is_finite() || h < 0.0 {
            return Err(Error::InvalidValue {
                what: "edge magnitude",
                value: h,
            });
        }
        if h == 0.0 {
            return Err(Error::ZeroMagnitude { i, j });
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidValue {
                what: "edge phase",
                value: alpha,
            });
        }
        // `+ 0.0` folds a negated zero phase back to +0.
        let (i, j, alpha) = if i < j { (i, j, alpha) } else { (j, i, -alpha + 0.0) };
        if self.index.contains_key(&(i, j)) {
            return Err(Error::DuplicateEdge { i, j });
        }
        self.index.insert((i, j), self.edges.len());
        self.edges.push(Edge { i, j, h, alpha });
        Ok(())
    }

    pub fn set_self_energy(&mut self, i: usize, energy: f64) -> Result<()> {
        self.check_index(i)?;
        if !energy.is_finite() {
            return Err(Error::InvalidValue {
                what: "self-energy",
                value: energy,
            });
        }
        self.self_energies[i] = energy;
        Ok(())
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.n_nodes {
            Err(Error::IndexOutOfRange {
                index,
                n_nodes: self.n_nodes,
            })
        } else {
            Ok(())
        }
    }

    /// Ring `0 -> 1 -> ... -> n-1 -> 0` with `H_{k,k+1} = h e^{i alpha}` on every link.
    pub fn ring(n: usize, h: f64, alpha: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidValue {
                what: "ring size",
                value: n as f64,
            });
        }
        let mut ham = Self::new(n)?;
        for k in 0..n {
            ham.add_edge(k, (k + 1) % n, h, alpha)?;
        }
        Ok(ham)
    }

    /// Linear chain with `H_{k,k+1} = h e^{i phases[k]}`.
    pub fn chain(n: usize, h: f64, phases: &[f64]) -> Result<Self> {
        if phases.len() + 1 != n {
            return Err(Error::DimensionMismatch {
                expected: n.saturating_sub(1),
                found: phases.len(),
            });
        }
        let mut ham = Self::new(n)?;
        for (k, &alpha) in phases.iter().enumerate() {
            ham.add_edge(k, k + 1, h, alpha)?;
        }
        Ok(ham)
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn self_energies(&self) -> &[f64] {
        &self.self_energies
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of a node: its file label if one was given, else its index.
    pub fn label(&self, node: usize) -> String {
        match &self.labels {
            Some(labels) => labels[node].clone(),
            None => node.to_string(),
        }
    }

    pub fn edge(&self, a: usize, b: usize) -> Option<&Edge> {
        let key = (a.min(b), a.max(b));
        self.index.get(&key).map(|&k| &self.edges[k])
    }

    /// Matrix element `H_ab`.
    pub fn coupling(&self, a: usize, b: usize) -> C64 {
        if a == b {
            return C64::new(self.self_energies[a], 0.0);
        }
        match self.edge(a, b) {
            Some(e) if e.i == a => e.weight(),
            Some(e) => e.weight().conj(),
            None => C64::new(0.0, 0.0),
        }
    }

    /// Same graph with each stored edge replaced by `f(edge)`; `f` must keep
    /// the endpoints.
    pub(crate) fn map_edges(&self, mut f: impl FnMut(&Edge) -> Edge) -> Self {
        let mut out = self.clone();
        for e in &mut out.edges {
            let mapped = f(e);
            debug_assert_eq!((mapped.i, mapped.j), (e.i, e.j));
            *e = mapped;
        }
        out
    }

    /// Copy with every edge phase set to zero.
    pub fn phases_zeroed(&self) -> Self {
        self.map_edges(|e| Edge { alpha: 0.0, ..*e })
    }

    /// Copy with `shift` added to every self-energy.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut out = self.clone();
        out.self_energies.iter_mut().for_each(|e| *e += shift);
        out
    }

    /// Dense Hermitian matrix. Conjugate pairs are written from the same
    /// value, so the result is Hermitian bit for bit.
    pub fn to_dense(&self) -> DMatrix<C64> {
        let n = self.n_nodes;
        let mut m = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
        for (k, &e) in self.self_energies.iter().enumerate() {
            m[(k, k)] = C64::new(e, 0.0);
        }
        for e in &self.edges {
            let w = e.weight();
            m[(e.i, e.j)] = w;
            m[(e.j, e.i)] = w.conj();
        }
        m
    }

    pub fn skeleton(&self) -> GraphSkeleton {
        self.skeleton_with(&NumericConfig::default())
    }

    /// Support graph. Self-energies are measured from their minimum, and a
    /// node carries a self-edge iff its shifted energy exceeds
    /// `cfg.self_edge_tol`.
    pub fn skeleton_with(&self, cfg: &NumericConfig) -> GraphSkeleton {
        let min = self
            .self_energies
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let self_edges = self
            .self_energies
            .iter()
            .map(|&e| e - min > cfg.self_edge_tol)
            .collect();
        GraphSkeleton::new(
            self.n_nodes,
            self.edges.iter().map(|e| (e.i, e.j)),
            self_edges,
        )
    }

    /// True when every self-energy has the same value.
    pub fn uniform_diagonal(&self) -> bool {
        self.self_energies
            .iter()
            .all(|&e| e == self.self_energies[0])
    }

    /// Largest absolute entry of the dense matrix.
    pub fn max_abs_entry(&self) -> f64 {
        let off = self.edges.iter().map(|e| e.h).fold(0.0, f64::max);
        let diag = self
            .self_energies
            .iter()
            .map(|e| e.abs())
            .fold(0.0, f64::max);
        off.max(diag)
    }

    /// Renders the graph file format with 17 significant digits. Labels, when
    /// present, are listed in comments.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(labels) = &self.labels {
            for (k, l) in labels.iter().enumerate() {
                let _ = writeln!(out, "# node {k} = {l}");
            }
        }
        let _ = writeln!(out, "nodes {}", self.n_nodes);
        for e in &self.edges {
            let _ = writeln!(out, "edge {} {} {:.16e} {:.16e}", e.i, e.j, e.h, e.alpha);
        }
        for (k, &energy) in self.self_energies.iter().enumerate() {
            if energy != 0.0 || energy.is_sign_negative() {
                let _ = writeln!(out, "self {k} {energy:.16e}");
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_graph(text)
    }
}

impl std::str::FromStr for WalkHamiltonian {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

enum Record<'a> {
    Edge {
        line: usize,
        a: &'a str,
        b: &'a str,
        h: &'a str,
        alpha: &'a str,
    },
    SelfEnergy {
        line: usize,
        a: &'a str,
        energy: &'a str,
    },
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_real(line: usize, token: &str, what: &str) -> Result<f64> {
    let value: f64 = token
        .parse()
        .map_err(|_| syntax(line, format!("expected a real {what}, found `{token}`")))?;
    if !value.is_finite() {
        return Err(syntax(line, format!("{what} must be finite, found `{token}`")));
    }
    Ok(value)
}

fn looks_complex(token: &str) -> bool {
    let t = token.trim_end_matches(['i', 'j', 'I', 'J']);
    t.len() < token.len() && {
        let t = t.trim_end_matches(['*']);
        t.is_empty()
            || t == "+"
            || t == "-"
            || t.parse::<f64>().is_ok()
            || t.rfind(['+', '-'])
                .filter(|&p| p > 0)
                .is_some_and(|p| t[..p].parse::<f64>().is_ok() && t[p..].parse::<f64>().is_ok())
    }
}

/// Parses the graph file format into a validated Hamiltonian.
pub fn parse_graph(text: &str) -> Result<WalkHamiltonian> {
    let mut n_nodes = None;
    let mut records = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match (n_nodes, tokens[0]) {
            (None, "nodes") => {
                if tokens.len() != 2 {
                    return Err(syntax(line, "expected `nodes <N>`"));
                }
                let n: usize = tokens[1].parse().map_err(|_| {
                    syntax(line, format!("expected a node count, found `{}`", tokens[1]))
                })?;
                if n == 0 {
                    return Err(syntax(line, "node count must be positive"));
                }
                n_nodes = Some(n);
            }
            (None, _) => return Err(syntax(line, "first line must be `nodes <N>`")),
            (Some(_), "nodes") => return Err(syntax(line, "`nodes` declared twice")),
            (Some(_), "edge") => {
                let [_, a, b, h, alpha] = tokens[..] else {
                    return Err(syntax(line, "expected `edge <i> <j> <h> <alpha>`"));
                };
                records.push(Record::Edge {
                    line,
                    a,
                    b,
                    h,
                    alpha,
                });
            }
            (Some(_), "self") => {
                let [_, a, energy] = tokens[..] else {
                    return Err(syntax(line, "expected `self <i> <energy>`"));
                };
                records.push(Record::SelfEnergy { line, a, energy });
            }
            (Some(_), other) => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let n_nodes = n_nodes.ok_or_else(|| syntax(text.lines().count().max(1), "missing `nodes <N>`"))?;

    let node_tokens = records.iter().flat_map(|r| match r {
        Record::Edge { a, b, .. } => vec![*a, *b],
        Record::SelfEnergy { a, .. } => vec![*a],
    });
    let labelled = node_tokens.clone().any(|t| t.parse::<usize>().is_err());
    let mut labels: Vec<String> = Vec::new();
    let mut resolve = |line: usize, token: &str| -> Result<usize> {
        if !labelled {
            return Ok(token.parse::<usize>().expect("checked above"));
        }
        if let Some(k) = labels.iter().position(|l| l == token) {
            return Ok(k);
        }
        if labels.len() == n_nodes {
            return Err(Error::IndexOutOfRange {
                index: labels.len(),
                n_nodes,
            }
            .at_line(line));
        }
        labels.push(token.to_string());
        Ok(labels.len() - 1)
    };

    let mut ham = WalkHamiltonian::new(n_nodes)?;
    let mut seen_self = vec![false; n_nodes];
    for record in &records {
        match *record {
            Record::Edge {
                line,
                a,
                b,
                h,
                alpha,
            } => {
                let i = resolve(line, a)?;
                let j = resolve(line, b)?;
                let h = parse_real(line, h, "magnitude")?;
                let alpha = parse_real(line, alpha, "phase")?;
                ham.add_edge(i, j, h, alpha).map_err(|e| e.at_line(line))?;
            }
            Record::SelfEnergy { line, a, energy } => {
                let i = resolve(line, a)?;
                let value = match energy.parse::<f64>() {
                    Ok(v) => v,
                    Err(_) if looks_complex(energy) => {
                        return Err(Error::NonRealSelfEnergy {
                            token: energy.to_string(),
                        }
                        .at_line(line))
                    }
                    Err(_) => parse_real(line, energy, "self-energy")?,
                };
                if i < n_nodes && std::mem::replace(&mut seen_self[i], true) {
                    return Err(syntax(line, format!("self-energy of node {a} given twice")));
                }
                ham.set_self_energy(i, value).map_err(|e| e.at_line(line))?;
            }
        }
    }
    if labelled {
        for k in labels.len()..n_nodes {
            labels.push(k.to_string());
        }
        ham.labels = Some(labels);
    }
    Ok(ham)
}

/// Unweighted support graph: undirected edges plus self-edge markers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSkeleton {
    n_nodes: usize,
    edges: Vec<(usize, usize)>,
    self_edges: Vec<bool>,
    adjacency: Vec<Vec<usize>>,
}

impl GraphSkeleton {
    /// Builds a skeleton; edges are normalised to `i < j`, deduplicated and
    /// sorted. Pairs with `i == j` are recorded as self-edges.
    pub fn new(
        n_nodes: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        mut self_edges: Vec<bool>,
    ) -> Self {
        self_edges.resize(n_nodes, false);
        let mut list = Vec::new();
        for (a, b) in edges {
            assert!(a < n_nodes && b < n_nodes, "edge ({a}, {b}) out of range");
            if a == b {
                self_edges[a] = true;
            } else {
                list.push((a.min(b), a.max(b)));
            }
        }
        list.sort_unstable();
        list.dedup();
        let mut adjacency = vec![Vec::new(); n_nodes];
        for &(a, b) in &list {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        Self {
            n_nodes,
            edges: list,
            self_edges,
            adjacency,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_self_edge(&self, node: usize) -> bool {
        self.self_edges[node]
    }

    pub fn self_edge_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_nodes).filter(|&k| self.self_edges[k])
    }

    pub fn has_self_edges(&self) -> bool {
        self.self_edges.iter().any(|&s| s)
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a == b {
            return self.self_edges[a];
        }
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// True when the undirected edges (self-edges ignored) contain no cycle.
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n_nodes).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn parses_three_cycle() {
        let h = parse_graph("nodes 3\nedge 0 1 1.0 0.0\nedge 1 2 1.0 0.0\nedge 2 0 1.0 0.0\n").unwrap();
        assert_eq!(h.n_nodes(), 3);
        assert_eq!(h.edges().len(), 3);
        assert!(h.edges().iter().all(|e| e.alpha == 0.0 && e.h == 1.0 && e.i < e.j));
        assert_eq!(h.edges()[2], Edge { i: 0, j: 2, h: 1.0, alpha: 0.0 });
        assert!(h.edges()[2].alpha.is_sign_positive());
    }

    #[test]
    fn single_node_is_zero_matrix() {
        let h = parse_graph("nodes 1").unwrap();
        assert_eq!(h.to_dense(), DMatrix::from_element(1, 1, c(0.0, 0.0)));
    }

    #[test]
    fn reversed_declaration_is_conjugated() {
        let h = parse_graph("nodes 2\nedge 1 0 1.0 0.7").unwrap();
        assert_eq!(h.edges()[0], Edge { i: 0, j: 1, h: 1.0, alpha: -0.7 });
        let m = h.to_dense();
        assert_eq!(m[(0, 1)], C64::from_polar(1.0, -0.7));
        assert_eq!(m[(1, 0)], m[(0, 1)].conj());
    }

    #[test]
    fn dense_examples() {
        let h = WalkHamiltonian::new(2).unwrap().with_edge(0, 1, 1.0, PI / 2.0).unwrap();
        let m = h.to_dense();
        assert!((m[(0, 1)] - c(0.0, 1.0)).norm() < 1e-16);
        assert!((m[(1, 0)] - c(0.0, -1.0)).norm() < 1e-16);
        assert_eq!(m[(0, 0)], c(0.0, 0.0));

        let ring = WalkHamiltonian::ring(3, 1.0, 0.0).unwrap().to_dense();
        for a in 0..3 {
            for b in 0..3 {
                let want = if a == b { 0.0 } else { 1.0 };
                assert_eq!(ring[(a, b)], c(want, 0.0));
            }
        }

        let one = WalkHamiltonian::new(1).unwrap().with_self_energy(0, 2.5).unwrap();
        assert_eq!(one.to_dense()[(0, 0)], c(2.5, 0.0));
    }

    #[test]
    fn dense_is_exactly_hermitian() {
        let h = parse_graph("nodes 4\nedge 0 1 0.3 1.1\nedge 3 1 2.0 -0.4\nedge 2 0 1.5 3.0\nself 2 -0.25").unwrap();
        let m = h.to_dense();
        assert_eq!(m, m.adjoint());
    }

    #[test]
    fn parse_errors() {
        let cases: &[(&str, usize)] = &[
            ("edge 0 1 1 0", 1),
            ("nodes 2\nedge 0 1 1.0", 2),
            ("nodes 2\nedge 0 1 1 0\nedge 1 0 2 0", 3),
            ("nodes 2\nedge 0 5 1 0", 2),
            ("nodes 2\n\n# c\nedge 0 1 0.0 0", 4),
            ("nodes 2\nself 0 1+2i", 2),
            ("nodes 2\nedge 0 0 1 0", 2),
            ("nodes 2\nedge 0 1 -1 0", 2),
            ("nodes 2\nfoo 1", 2),
            ("nodes 2\nedge 0 1 nan 0", 2),
        ];
        for (text, line) in cases {
            let err = parse_graph(text).unwrap_err();
            assert_eq!(err.line(), Some(*line), "{text:?} -> {err}");
        }
        assert!(matches!(
            parse_graph("nodes 2\nedge 0 1 1 0\nedge 1 0 2 0"),
            Err(Error::AtLine { source, .. }) if *source == Error::DuplicateEdge { i: 0, j: 1 }
        ));
        assert!(matches!(
            parse_graph("nodes 2\nedge 0 1 0 0"),
            Err(Error::AtLine { source, .. }) if matches!(*source, Error::ZeroMagnitude { .. })
        ));
        assert!(matches!(
            parse_graph("nodes 2\nself 1 3j"),
            Err(Error::AtLine { source, .. }) if matches!(*source, Error::NonRealSelfEnergy { .. })
        ));
        assert!(matches!(
            parse_graph("nodes 2\nedge 0 2 1 0"),
            Err(Error::AtLine { source, .. }) if *source == Error::IndexOutOfRange { index: 2, n_nodes: 2 }
        ));
        assert!(matches!(parse_graph("nodes 0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_graph(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn string_labels_map_in_declaration_order() {
        let h = parse_graph("nodes 3\nedge b a 1 0.5\nedge a c 2 0\nself c 1.0").unwrap();
        assert_eq!(h.labels().unwrap(), &["b", "a", "c"]);
        assert_eq!(h.edges()[0], Edge { i: 0, j: 1, h: 1.0, alpha: 0.5 });
        assert_eq!(h.self_energies()[2], 1.0);
        assert!(parse_graph("nodes 2\nedge a b 1 0\nedge b c 1 0").is_err());
    }

    #[test]
    fn render_round_trip() {
        let h = parse_graph("nodes 4\nedge 0 1 0.1 0.2\nedge 3 2 1e-7 -3.0\nself 1 -0.0\nself 2 0.125").unwrap();
        let back = parse_graph(&h.render()).unwrap();
        assert_eq!(h, back);
    }

    #[test]
    fn skeleton_examples() {
        let s = WalkHamiltonian::ring(3, 1.0, 0.0).unwrap().skeleton();
        assert_eq!((s.n_nodes(), s.n_edges(), s.has_self_edges()), (3, 3, false));

        let path = WalkHamiltonian::chain(3, 1.0, &[0.0, 0.0])
            .unwrap()
            .with_self_energy(0, 1.0)
            .unwrap();
        let s = path.skeleton();
        assert_eq!(s.self_edge_nodes().collect::<Vec<_>>(), vec![0]);
        assert_eq!(s.edges(), &[(0, 1), (1, 2)]);

        let star = parse_graph("nodes 4\nedge 0 1 1 0\nedge 0 2 1 0\nedge 0 3 1 0").unwrap();
        assert!(star.skeleton().is_forest());
        assert!(!WalkHamiltonian::ring(4, 1.0, 0.0).unwrap().skeleton().is_forest());
    }

    #[test]
    fn skeleton_ignores_uniform_shift() {
        let h = parse_graph("nodes 3\nedge 0 1 1 0.3\nedge 1 2 1 0\nself 0 0.5\nself 2 -1").unwrap();
        for shift in [-3.0, 0.0, 1e3] {
            assert_eq!(h.shifted(shift).skeleton(), h.skeleton());
        }
        let uniform = h.shifted(0.0).with_self_energy(0, 2.0).unwrap().with_self_energy(1, 2.0).unwrap().with_self_energy(2, 2.0).unwrap();
        assert!(!uniform.skeleton().has_self_edges());
    }
}
