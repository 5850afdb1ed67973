//! Finite simple graphs with exact combinatorial parameters.
//!
//! Graphs are immutable after construction and sized for exact search
//! (at most 64 vertices, enforced at build time). Adjacency is kept as
//! per-vertex bitsets; all searches are deterministic.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on graph size. Exact-search operations are only practical well
/// below this; they are guarded by node budgets instead.
pub const MAX_VERTICES: usize = 1024;

/// Default node budget for backtracking searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 200_000_000;

/// A set of vertex indices backed by 64-bit blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1u64 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1u64 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words[v / 64] & (1u64 << (v % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn and(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("edge endpoint `{0}` does not name a vertex")]
    DanglingEndpoint(String),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("label `{0}` already present")]
    LabelCollision(String),
    #[error("graph has {0} vertices, limit is {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("search budget exceeded after {0} nodes")]
    BudgetExceeded(u64),
    #[error("vertex index {0} out of range")]
    BadVertex(usize),
    #[error("malformed input: {0}")]
    Parse(String),
}

/// A labeled finite simple graph. No loops, no multi-edges, symmetric
/// adjacency, unique labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph from labels and an edge list given by label pairs.
    pub fn build(labels: &[&str], edges: &[(&str, &str)]) -> Result<Graph, GraphError> {
        let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let owned_edges: Vec<(String, String)> = edges
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        Graph::build_owned(owned, &owned_edges)
    }

    pub fn build_owned(labels: Vec<String>, edges: &[(String, String)]) -> Result<Graph, GraphError> {
        if labels.len() > MAX_VERTICES {
            return Err(GraphError::TooLarge(labels.len()));
        }
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        let mut adj = vec![VertexSet::empty(n); n];
        for (a, b) in edges {
            let &i = index
                .get(a)
                .ok_or_else(|| GraphError::DanglingEndpoint(a.clone()))?;
            let &j = index
                .get(b)
                .ok_or_else(|| GraphError::DanglingEndpoint(b.clone()))?;
            if i == j {
                return Err(GraphError::SelfLoop(a.clone()));
            }
            adj[i].insert(j);
            adj[j].insert(i);
        }
        Ok(Graph { labels, adj })
    }

    /// Builds a graph from labels and 0-indexed edge pairs.
    pub fn from_index_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let n = labels.len();
        let named: Vec<(String, String)> = edges
            .iter()
            .map(|&(i, j)| {
                if i >= n || j >= n {
                    Err(GraphError::BadVertex(i.max(j)))
                } else {
                    Ok((labels[i].clone(), labels[j].clone()))
                }
            })
            .collect::<Result<_, _>>()?;
        Graph::build_owned(labels, &named)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter_ones()
    }

    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    /// Edges as sorted 0-indexed pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.are_adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count()).sum::<usize>() / 2
    }

    /// Complement on the same vertex set: edge iff non-edge, no loops.
    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let adj = (0..n)
            .map(|v| {
                let mut row = VertexSet::empty(n);
                for u in 0..n {
                    if u != v && !self.adj[v].contains(u) {
                        row.insert(u);
                    }
                }
                row
            })
            .collect();
        Graph {
            labels: self.labels.clone(),
            adj,
        }
    }

    /// Adds a vertex adjacent to every existing vertex.
    pub fn add_apex(&self, label: &str) -> Result<Graph, GraphError> {
        if self.index_of(label).is_some() {
            return Err(GraphError::LabelCollision(label.to_string()));
        }
        let n = self.vertex_count();
        if n + 1 > MAX_VERTICES {
            return Err(GraphError::TooLarge(n + 1));
        }
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        let mut adj: Vec<VertexSet> = self
            .adj
            .iter()
            .map(|row| {
                let mut r = VertexSet::empty(n + 1);
                for u in row.iter_ones() {
                    r.insert(u);
                }
                r.insert(n);
                r
            })
            .collect();
        let mut apex_row = VertexSet::empty(n + 1);
        for u in 0..n {
            apex_row.insert(u);
        }
        adj.push(apex_row);
        Ok(Graph { labels, adj })
    }

    /// Induced subgraph on the given vertices, keeping their labels.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let labels: Vec<String> = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let m = vertices.len();
        let mut adj = vec![VertexSet::empty(m); m];
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                if a != b && self.are_adjacent(u, v) {
                    adj[a].insert(b);
                }
            }
        }
        Graph { labels, adj }
    }

    /// True iff the graph has no odd cycle.
    pub fn is_bipartite(&self) -> bool {
        let n = self.vertex_count();
        let mut side = vec![None::<bool>; n];
        for start in 0..n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for u in self.neighbors(v) {
                    match side[u] {
                        None => {
                            side[u] = Some(!sv);
                            stack.push(u);
                        }
                        Some(su) if su == sv => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

/// A proper vertex coloring with colors `0..palette_size`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub palette_size: usize,
}

impl Coloring {
    /// Checks totality, palette range, and properness against the graph.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.colors.len() != g.vertex_count() {
            return false;
        }
        if self.colors.iter().any(|&c| c >= self.palette_size) {
            return false;
        }
        g.edges()
            .iter()
            .all(|&(u, v)| self.colors[u] != self.colors[v])
    }

    /// Color classes as vertex index sets.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.palette_size];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// A bijection on vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Permutation {
    pub image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        // (self . other)(v) = self(other(v))
        Permutation {
            image: other.image.iter().map(|&v| self.image[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (v, &w) in self.image.iter().enumerate() {
            image[w] = v;
        }
        Permutation { image }
    }

    /// True iff the permutation preserves adjacency both ways.
    pub fn is_automorphism(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        if self.image.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &w in &self.image {
            if w >= n || seen[w] {
                return false;
            }
            seen[w] = true;
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if g.are_adjacent(u, v) != g.are_adjacent(self.image[u], self.image[v]) {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Exact parameters
// ---------------------------------------------------------------------------

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: u32,
    best_set: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl<'a> CliqueSearch<'a> {
    fn run(g: &'a Graph, budget: u64) -> Result<(u32, Vec<usize>), GraphError> {
        let n = g.vertex_count();
        if n == 0 {
            return Ok((0, vec![]));
        }
        let mut s = CliqueSearch {
            g,
            best: 0,
            best_set: vec![],
            current: vec![],
            nodes: 0,
            budget,
        };
        s.expand(&VertexSet::full(n))?;
        Ok((s.best, s.best_set))
    }

    fn expand(&mut self, p: &VertexSet) -> Result<(), GraphError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(GraphError::BudgetExceeded(self.nodes));
        }
        if p.is_empty() {
            if self.current.len() as u32 > self.best {
                self.best = self.current.len() as u32;
                self.best_set = self.current.clone();
            }
            return Ok(());
        }
        // Greedy coloring of the candidate set; color numbers bound the
        // clique size reachable through each vertex.
        let mut order: Vec<(usize, u32)> = Vec::new();
        let mut uncolored = p.clone();
        let mut color = 0u32;
        while uncolored.first().is_some() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                uncolored.remove(v);
                for u in self.g.adj[v].iter_ones() {
                    avail.remove(u);
                }
                order.push((v, color));
            }
        }
        let mut p = p.clone();
        for &(v, c) in order.iter().rev() {
            if self.current.len() as u32 + c <= self.best {
                return Ok(());
            }
            self.current.push(v);
            self.expand(&p.and(&self.g.adj[v]))?;
            self.current.pop();
            p.remove(v);
        }
        Ok(())
    }
}

/// Maximum clique with witness, by branch and bound with a greedy coloring
/// bound.
pub fn clique_number(g: &Graph) -> Result<(usize, Vec<usize>), GraphError> {
    clique_number_budgeted(g, DEFAULT_SEARCH_BUDGET)
}

pub fn clique_number_budgeted(g: &Graph, budget: u64) -> Result<(usize, Vec<usize>), GraphError> {
    if g.vertex_count() == 0 {
        return Ok((0, vec![]));
    }
    let (size, mut set) = CliqueSearch::run(g, budget)?;
    set.sort_unstable();
    Ok((size as usize, set))
}

/// Maximum independent set with witness: a maximum clique of the complement.
pub fn independence_number(g: &Graph) -> Result<(usize, Vec<usize>), GraphError> {
    independence_number_budgeted(g, DEFAULT_SEARCH_BUDGET)
}

pub fn independence_number_budgeted(
    g: &Graph,
    budget: u64,
) -> Result<(usize, Vec<usize>), GraphError> {
    clique_number_budgeted(&g.complement(), budget)
}

struct ColorSearch<'a> {
    g: &'a Graph,
    c: usize,
    colors: Vec<Option<usize>>,
    nodes: u64,
    budget: u64,
}

impl<'a> ColorSearch<'a> {
    /// DSATUR-ordered backtracking. New colors are introduced at most once
    /// per level (the first unused color only), which removes color-name
    /// symmetry. Ties in saturation break toward the lowest vertex index.
    fn search(&mut self, colored: usize, max_used: usize) -> Result<bool, GraphError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(GraphError::BudgetExceeded(self.nodes));
        }
        let n = self.g.vertex_count();
        if colored == n {
            return Ok(true);
        }
        let mut pick = usize::MAX;
        let mut pick_sat = usize::MAX;
        for v in 0..n {
            if self.colors[v].is_some() {
                continue;
            }
            let mut seen = 0u64;
            for u in self.g.neighbors(v) {
                if let Some(cu) = self.colors[u] {
                    seen |= 1u64 << cu;
                }
            }
            let sat = seen.count_ones() as usize;
            // Maximize saturation; tie-break by vertex index (ascending).
            if pick == usize::MAX || sat > pick_sat {
                pick = v;
                pick_sat = sat;
            }
        }
        let v = pick;
        let mut forbidden = 0u64;
        for u in self.g.neighbors(v) {
            if let Some(cu) = self.colors[u] {
                forbidden |= 1u64 << cu;
            }
        }
        let limit = (max_used + 1).min(self.c);
        for col in 0..limit {
            if forbidden & (1u64 << col) != 0 {
                continue;
            }
            self.colors[v] = Some(col);
            let used = max_used.max(col + 1);
            if self.search(colored + 1, used)? {
                return Ok(true);
            }
            self.colors[v] = None;
        }
        Ok(false)
    }
}

/// Tries to properly color `g` with at most `c` colors. Exhaustive.
pub fn is_c_colorable(g: &Graph, c: usize) -> Result<Option<Coloring>, GraphError> {
    is_c_colorable_budgeted(g, c, DEFAULT_SEARCH_BUDGET)
}

pub fn is_c_colorable_budgeted(
    g: &Graph,
    c: usize,
    budget: u64,
) -> Result<Option<Coloring>, GraphError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Some(Coloring {
            colors: vec![],
            palette_size: c,
        }));
    }
    if c == 0 {
        return Ok(None);
    }
    if c > 64 {
        return Err(GraphError::TooLarge(c));
    }
    let mut s = ColorSearch {
        g,
        c,
        colors: vec![None; n],
        nodes: 0,
        budget,
    };
    if s.search(0, 0)? {
        let colors = s.colors.iter().map(|x| x.unwrap()).collect();
        Ok(Some(Coloring {
            colors,
            palette_size: c,
        }))
    } else {
        Ok(None)
    }
}

/// Certificate that the `c - 1` color search was exhausted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimalityCertificate {
    /// Number of colors shown infeasible by exhausted search (`chi - 1`).
    pub infeasible_colors: usize,
    /// Search nodes visited by the exhausted refutation.
    pub nodes_explored: u64,
}

/// Exact chromatic number with an optimal coloring and an exhausted-search
/// certificate for optimality.
pub fn chromatic_number(
    g: &Graph,
) -> Result<(usize, Coloring, OptimalityCertificate), GraphError> {
    chromatic_number_budgeted(g, DEFAULT_SEARCH_BUDGET)
}

pub fn chromatic_number_budgeted(
    g: &Graph,
    budget: u64,
) -> Result<(usize, Coloring, OptimalityCertificate), GraphError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok((
            0,
            Coloring {
                colors: vec![],
                palette_size: 0,
            },
            OptimalityCertificate {
                infeasible_colors: 0,
                nodes_explored: 0,
            },
        ));
    }
    let (lb, _) = clique_number_budgeted(g, budget)?;
    let start = lb.max(1);
    let mut refuted_nodes = 0u64;
    let mut c = start;
    loop {
        let mut s = ColorSearch {
            g,
            c,
            colors: vec![None; n],
            nodes: 0,
            budget,
        };
        if s.search(0, 0)? {
            let colors: Vec<usize> = s.colors.iter().map(|x| x.unwrap()).collect();
            return Ok((
                c,
                Coloring {
                    colors,
                    palette_size: c,
                },
                OptimalityCertificate {
                    // With c == omega the clique itself certifies optimality.
                    infeasible_colors: c - 1,
                    nodes_explored: refuted_nodes,
                },
            ));
        }
        refuted_nodes = s.nodes;
        c += 1;
    }
}

// ---------------------------------------------------------------------------
// Automorphisms
// ---------------------------------------------------------------------------

fn vertex_invariant(g: &Graph, v: usize) -> (usize, Vec<usize>) {
    let mut nd: Vec<usize> = g.neighbors(v).map(|u| g.degree(u)).collect();
    nd.sort_unstable();
    (g.degree(v), nd)
}

struct AutSearch<'a> {
    g: &'a Graph,
    candidates: Vec<Vec<usize>>,
    image: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Permutation>,
    nodes: u64,
    budget: u64,
}

impl<'a> AutSearch<'a> {
    fn go(&mut self, v: usize) -> Result<(), GraphError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(GraphError::BudgetExceeded(self.nodes));
        }
        let n = self.g.vertex_count();
        if v == n {
            self.found.push(Permutation {
                image: self.image.clone(),
            });
            return Ok(());
        }
        for i in 0..self.candidates[v].len() {
            let w = self.candidates[v][i];
            if self.used[w] {
                continue;
            }
            let mut consistent = true;
            for u in 0..v {
                if self.g.are_adjacent(u, v) != self.g.are_adjacent(self.image[u], w) {
                    consistent = false;
                    break;
                }
            }
            if consistent {
                self.image[v] = w;
                self.used[w] = true;
                self.go(v + 1)?;
                self.used[w] = false;
            }
        }
        Ok(())
    }
}

/// Full automorphism group as explicit permutations, by backtracking on
/// vertex images with degree and neighbor-degree-multiset pruning.
pub fn automorphisms(g: &Graph) -> Result<Vec<Permutation>, GraphError> {
    automorphisms_budgeted(g, DEFAULT_SEARCH_BUDGET)
}

pub fn automorphisms_budgeted(g: &Graph, budget: u64) -> Result<Vec<Permutation>, GraphError> {
    let n = g.vertex_count();
    let invs: Vec<_> = (0..n).map(|v| vertex_invariant(g, v)).collect();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&w| invs[w] == invs[v]).collect())
        .collect();
    let mut s = AutSearch {
        g,
        candidates,
        image: vec![0; n],
        used: vec![false; n],
        found: Vec::new(),
        nodes: 0,
        budget,
    };
    s.go(0)?;
    Ok(s.found)
}

// ---------------------------------------------------------------------------
// Parameter report
// ---------------------------------------------------------------------------

/// Exact parameters with certificates. Construction re-verifies every
/// certificate and the cross-parameter invariants.
#[derive(Debug, Clone)]
pub struct ParamReport {
    pub alpha: usize,
    pub independent_set: Vec<usize>,
    pub omega: usize,
    pub clique: Vec<usize>,
    pub chi: usize,
    pub coloring: Coloring,
    pub chi_certificate: OptimalityCertificate,
    pub chi_of_complement: usize,
    pub complement_coloring: Coloring,
}

pub fn params(g: &Graph) -> Result<ParamReport, GraphError> {
    params_budgeted(g, DEFAULT_SEARCH_BUDGET)
}

pub fn params_budgeted(g: &Graph, budget: u64) -> Result<ParamReport, GraphError> {
    let (alpha, independent_set) = independence_number_budgeted(g, budget)?;
    let (omega, clique) = clique_number_budgeted(g, budget)?;
    let (chi, coloring, chi_certificate) = chromatic_number_budgeted(g, budget)?;
    let comp = g.complement();
    let (chi_c, complement_coloring, _) = chromatic_number_budgeted(&comp, budget)?;

    // Certificates must witness the claimed values.
    for pair in independent_set.windows(2) {
        debug_assert!(!g.are_adjacent(pair[0], pair[1]));
    }
    assert!(
        independent_set
            .iter()
            .enumerate()
            .all(|(i, &u)| independent_set[i + 1..].iter().all(|&v| !g.are_adjacent(u, v))),
        "independence witness is not independent"
    );
    assert_eq!(independent_set.len(), alpha);
    assert!(
        clique
            .iter()
            .enumerate()
            .all(|(i, &u)| clique[i + 1..].iter().all(|&v| g.are_adjacent(u, v))),
        "clique witness is not a clique"
    );
    assert_eq!(clique.len(), omega);
    assert!(coloring.verify(g), "chromatic witness is not proper");
    assert!(omega <= chi, "omega must not exceed chi");
    assert!(complement_coloring.verify(&comp));

    Ok(ParamReport {
        alpha,
        independent_set,
        omega,
        clique,
        chi,
        coloring,
        chi_certificate,
        chi_of_complement: chi_c,
        complement_coloring,
    })
}

// ---------------------------------------------------------------------------
// Subgraph embedding
// ---------------------------------------------------------------------------

struct EmbedSearch<'a> {
    host: &'a Graph,
    pat: &'a Graph,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl<'a> EmbedSearch<'a> {
    fn go(&mut self, depth: usize) -> Result<bool, GraphError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(GraphError::BudgetExceeded(self.nodes));
        }
        if depth == self.order.len() {
            return Ok(true);
        }
        let p = self.order[depth];
        for w in 0..self.host.vertex_count() {
            if self.used[w] || self.host.degree(w) < self.pat.degree(p) {
                continue;
            }
            let mut ok = true;
            for &q in &self.order[..depth] {
                if self.pat.are_adjacent(p, q) && !self.host.are_adjacent(w, self.image[q]) {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.image[p] = w;
                self.used[w] = true;
                if self.go(depth + 1)? {
                    return Ok(true);
                }
                self.used[w] = false;
            }
        }
        Ok(false)
    }
}

/// Searches for an (not necessarily induced) embedding of `pattern` into
/// `host`. Returns the vertex map pattern index -> host index if found.
pub fn find_subgraph(
    host: &Graph,
    pattern: &Graph,
    budget: u64,
) -> Result<Option<Vec<usize>>, GraphError> {
    if pattern.vertex_count() > host.vertex_count() {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..pattern.vertex_count()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(pattern.degree(v)));
    let mut s = EmbedSearch {
        host,
        pat: pattern,
        order,
        image: vec![0; pattern.vertex_count()],
        used: vec![false; host.vertex_count()],
        nodes: 0,
        budget,
    };
    if s.go(0)? {
        Ok(Some(s.image))
    } else {
        Ok(None)
    }
}

// ---------------------------------------------------------------------------
// Named graphs
// ---------------------------------------------------------------------------

/// The thirteen representatives of the nonzero `{-1,0,1}` vectors in three
/// dimensions, up to sign, keyed by their conventional letters. `A`, `B`,
/// `C` are the standard basis vectors, `W` is the all-ones vector, and the
/// middle-alphabet letters carry exactly one zero entry.
pub const G13_VECTORS: [(&str, [i64; 3]); 13] = [
    ("A", [1, 0, 0]),
    ("B", [0, 1, 0]),
    ("C", [0, 0, 1]),
    ("L", [0, 1, 1]),
    ("M", [0, 1, -1]),
    ("N", [1, 0, 1]),
    ("P", [1, 0, -1]),
    ("Q", [1, 1, 0]),
    ("R", [1, -1, 0]),
    ("W", [1, 1, 1]),
    ("X", [1, -1, 1]),
    ("Y", [1, 1, -1]),
    ("Z", [-1, 1, 1]),
];

fn dot3(a: &[i64; 3], b: &[i64; 3]) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// The orthogonality graph of [`G13_VECTORS`]: two vertices are adjacent
/// exactly when their vectors have zero dot product.
pub fn g13() -> Graph {
    let labels: Vec<String> = G13_VECTORS.iter().map(|(l, _)| l.to_string()).collect();
    let mut edges = Vec::new();
    for (i, (_, u)) in G13_VECTORS.iter().enumerate() {
        for (j, (_, v)) in G13_VECTORS.iter().enumerate().skip(i + 1) {
            if dot3(u, v) == 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_index_edges(labels, &edges).expect("g13 construction is fixed")
}

/// `g13` plus an apex vertex labeled `Omega`.
pub fn g14() -> Graph {
    g13().add_apex("Omega").expect("fresh label")
}

/// The Petersen graph, realized as the induced subgraph of `g13` on the ten
/// vertices other than `A`, `B`, `C`.
pub fn petersen() -> Graph {
    let g = g13();
    let verts: Vec<usize> = (0..13)
        .filter(|&v| !matches!(g.label(v), "A" | "B" | "C"))
        .collect();
    g.induced(&verts)
}

// ---------------------------------------------------------------------------
// Formats
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GraphJson {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

/// JSON graph format: `{labels: [...], edges: [[i,j],...]}` with 0-indexed
/// sorted edges.
pub fn to_json(g: &Graph) -> String {
    let doc = GraphJson {
        labels: g.labels().to_vec(),
        edges: g.edges(),
    };
    serde_json::to_string(&doc).expect("graph serializes")
}

pub fn from_json(text: &str) -> Result<Graph, GraphError> {
    let doc: GraphJson =
        serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
    Graph::from_index_edges(doc.labels, &doc.edges)
}

/// DIMACS undirected graph format: `p edge n m` then `e u v` lines,
/// 1-indexed.
pub fn to_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    let edges = g.edges();
    let _ = writeln!(out, "p edge {} {}", g.vertex_count(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn from_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut n = None;
    let mut edges = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("p") => {
                let kind = parts.next().unwrap_or("");
                if kind != "edge" && kind != "col" {
                    return Err(GraphError::Parse(format!("unknown problem kind `{kind}`")));
                }
                let nv: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| GraphError::Parse("bad vertex count".into()))?;
                n = Some(nv);
            }
            Some("e") => {
                let u: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| GraphError::Parse("bad edge endpoint".into()))?;
                let v: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| GraphError::Parse("bad edge endpoint".into()))?;
                if u == 0 || v == 0 {
                    return Err(GraphError::Parse("DIMACS vertices are 1-indexed".into()));
                }
                edges.push((u - 1, v - 1));
            }
            _ => return Err(GraphError::Parse(format!("unrecognized line `{line}`"))),
        }
    }
    let n = n.ok_or_else(|| GraphError::Parse("missing p line".into()))?;
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    Graph::from_index_edges(labels, &edges)
}

/// Complete graph on `n` vertices labeled `1..=n`.
pub fn complete(n: usize) -> Graph {
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    Graph::from_index_edges(labels, &edges).expect("complete graph")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_index_edges(labels, &edges).expect("cycle graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_index_edges(labels, &edges).unwrap()
    }

    #[test]
    fn build_rejects_bad_input() {
        assert!(matches!(
            Graph::build(&["a", "a"], &[]),
            Err(GraphError::DuplicateLabel(_))
        ));
        assert!(matches!(
            Graph::build(&["a"], &[("a", "b")]),
            Err(GraphError::DanglingEndpoint(_))
        ));
        assert!(matches!(
            Graph::build(&["a"], &[("a", "a")]),
            Err(GraphError::SelfLoop(_))
        ));
    }

    #[test]
    fn build_small_graphs() {
        let k2 = Graph::build(&["A", "B"], &[("A", "B")]).unwrap();
        assert_eq!(k2.edge_count(), 1);
        let single = Graph::build(&["A"], &[]).unwrap();
        assert_eq!(single.vertex_count(), 1);
        assert_eq!(single.edge_count(), 0);
    }

    #[test]
    fn g13_has_expected_shape() {
        let g = g13();
        assert_eq!(g.vertex_count(), 13);
        assert_eq!(g.edge_count(), 24);
        // Brute-force pairwise dot products agree with adjacency.
        for (i, (_, u)) in G13_VECTORS.iter().enumerate() {
            for (j, (_, v)) in G13_VECTORS.iter().enumerate().skip(i + 1) {
                assert_eq!(g.are_adjacent(i, j), dot3(u, v) == 0);
            }
        }
    }

    #[test]
    fn g13_triangle_membership() {
        // Exactly A, B, C lie in two triangles each.
        let g = g13();
        let mut triangles_per_vertex = [0usize; 13];
        for i in 0..13 {
            for j in (i + 1)..13 {
                for k in (j + 1)..13 {
                    if g.are_adjacent(i, j) && g.are_adjacent(j, k) && g.are_adjacent(i, k) {
                        triangles_per_vertex[i] += 1;
                        triangles_per_vertex[j] += 1;
                        triangles_per_vertex[k] += 1;
                    }
                }
            }
        }
        for (v, &count) in triangles_per_vertex.iter().enumerate() {
            if matches!(g.label(v), "A" | "B" | "C") {
                assert_eq!(count, 2, "vertex {}", g.label(v));
            } else {
                assert!(count <= 1, "vertex {}", g.label(v));
            }
        }
    }

    #[test]
    fn g14_is_g13_plus_apex() {
        let g = g14();
        assert_eq!(g.vertex_count(), 14);
        assert_eq!(g.edge_count(), 37);
        let omega = g.index_of("Omega").unwrap();
        assert_eq!(g.degree(omega), 13);
    }

    #[test]
    fn petersen_is_three_regular() {
        let p = petersen();
        assert_eq!(p.vertex_count(), 10);
        assert_eq!(p.edge_count(), 15);
        for v in 0..10 {
            assert_eq!(p.degree(v), 3);
        }
        // Girth 5: no triangles, no 4-cycles.
        let (omega, _) = clique_number(&p).unwrap();
        assert_eq!(omega, 2);
    }

    #[test]
    fn complement_involution_and_counts() {
        let g = g13();
        assert_eq!(g.complement().complement(), g);
        let k3 = complete(3);
        assert_eq!(k3.complement().edge_count(), 0);
        assert_eq!(petersen().complement().edge_count(), 45 - 15);
    }

    #[test]
    fn apex_on_complete_graphs() {
        let k1 = complete(1);
        let k2 = k1.add_apex("apex").unwrap();
        assert_eq!(k2.edge_count(), 1);
        for n in 2..6 {
            let kn = complete(n);
            let kn1 = kn.add_apex("apex").unwrap();
            assert_eq!(kn1.edge_count(), n * (n + 1) / 2);
        }
        assert!(matches!(
            complete(2).add_apex("1"),
            Err(GraphError::LabelCollision(_))
        ));
    }

    #[test]
    fn small_parameters() {
        let (a, w) = independence_number(&complete(5)).unwrap();
        assert_eq!(a, 1);
        assert_eq!(w.len(), 1);
        let (o, _) = clique_number(&Graph::build(&["a", "b"], &[]).unwrap()).unwrap();
        assert_eq!(o, 1);
        let (chi, col, _) = chromatic_number(&complete(4)).unwrap();
        assert_eq!(chi, 4);
        assert!(col.verify(&complete(4)));
        let (chi5, _, _) = chromatic_number(&cycle(5)).unwrap();
        assert_eq!(chi5, 3);
    }

    #[test]
    fn petersen_parameters() {
        let p = petersen();
        let (alpha, _) = independence_number(&p).unwrap();
        assert_eq!(alpha, 4);
        let (omega, _) = clique_number(&p).unwrap();
        assert_eq!(omega, 2);
        let (chi, _, _) = chromatic_number(&p).unwrap();
        assert_eq!(chi, 3);
    }

    #[test]
    fn k2_two_coloring() {
        let k2 = complete(2);
        let col = is_c_colorable(&k2, 2).unwrap().unwrap();
        assert!(col.verify(&k2));
        assert_eq!(col.colors.len(), 2);
        assert_ne!(col.colors[0], col.colors[1]);
    }

    #[test]
    fn g13_known_four_coloring_is_valid() {
        let g = g13();
        let classes = [
            vec!["A", "W", "X", "Y", "Z"],
            vec!["B", "L", "R"],
            vec!["C", "M", "N"],
            vec!["P", "Q"],
        ];
        let mut colors = vec![usize::MAX; 13];
        for (c, class) in classes.iter().enumerate() {
            for l in class {
                colors[g.index_of(l).unwrap()] = c;
            }
        }
        let col = Coloring {
            colors,
            palette_size: 4,
        };
        assert!(col.verify(&g));
    }

    #[test]
    fn automorphism_group_sizes() {
        let k3 = complete(3);
        assert_eq!(automorphisms(&k3).unwrap().len(), 6);
        let c5 = cycle(5);
        assert_eq!(automorphisms(&c5).unwrap().len(), 10);
    }

    #[test]
    fn automorphisms_form_a_group() {
        let g = petersen();
        let auts = automorphisms(&g).unwrap();
        assert_eq!(auts.len(), 120);
        for a in auts.iter().take(12) {
            assert!(a.is_automorphism(&g));
            assert!(auts.contains(&a.inverse()));
        }
        let a = &auts[1];
        let b = &auts[2];
        assert!(auts.contains(&a.compose(b)));
        assert!(auts.iter().any(|p| p.image == Permutation::identity(10).image));
    }

    #[test]
    fn g13_automorphisms_act_transitively_on_zero_free_pairs() {
        let g = g13();
        let autos = automorphisms(&g).unwrap();
        assert_eq!(autos.len(), 24);
        let family: Vec<usize> = ["W", "X", "Y", "Z"]
            .iter()
            .map(|l| g.index_of(l).unwrap())
            .collect();
        let x = g.index_of("X").unwrap();
        let w = g.index_of("W").unwrap();
        for &p in &family {
            for &q in &family {
                if p != q {
                    assert!(
                        autos.iter().any(|s| s.apply(x) == p && s.apply(w) == q),
                        "no automorphism maps (X, W) to ({}, {})",
                        g.label(p),
                        g.label(q)
                    );
                }
            }
        }
    }

    #[test]
    fn chi_of_apex_increments_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..20 {
            let n = 3 + (trial % 6);
            let g = random_graph(&mut rng, n, 0.4);
            let (chi, _, _) = chromatic_number(&g).unwrap();
            let apexed = g.add_apex("apex").unwrap();
            let (chi2, _, _) = chromatic_number(&apexed).unwrap();
            assert_eq!(chi2, chi + 1);
        }
    }

    #[test]
    fn sandwich_invariants_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = random_graph(&mut rng, 8, 0.5);
            let (alpha, _) = independence_number(&g).unwrap();
            let (omega_c, _) = clique_number(&g.complement()).unwrap();
            assert_eq!(alpha, omega_c);
            let (omega, _) = clique_number(&g).unwrap();
            let (chi, _, _) = chromatic_number(&g).unwrap();
            assert!(omega <= chi);
            assert!(is_c_colorable(&g, chi).unwrap().is_some());
            if chi > 1 {
                assert!(is_c_colorable(&g, chi - 1).unwrap().is_none());
            }
        }
    }

    #[test]
    fn dimacs_round_trip() {
        let g = petersen();
        let text = to_dimacs(&g);
        let back = from_dimacs(&text).unwrap();
        assert_eq!(back.vertex_count(), g.vertex_count());
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn json_round_trip() {
        let g = g13();
        let text = to_json(&g);
        let back = from_json(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn find_subgraph_locates_g13_in_g14() {
        let host = g14();
        let pat = g13();
        let map = find_subgraph(&host, &pat, 10_000_000).unwrap().unwrap();
        for (u, v) in pat.edges() {
            assert!(host.are_adjacent(map[u], map[v]));
        }
        assert!(find_subgraph(&pat, &host, 10_000_000).unwrap().is_none());
    }
}
