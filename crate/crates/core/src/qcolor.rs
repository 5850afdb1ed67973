//! Quantum colorings in the projector formulation.
//!
//! A quantum `c`-coloring assigns to every vertex a family of `c`
//! projectors of a shared dimension `d` that sum to the identity, with
//! same-color projectors of adjacent vertices orthogonal. This module
//! holds the verifier, the lift of classical colorings, the two standard
//! constructions from orthogonal representations (Fourier frames for flat
//! representations, quaternion/octonion frames for real representations in
//! dimension four or eight), and certified bound reports.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexmat::{inner, CMatrix};
use crate::graph::{self, Coloring, Graph, GraphError};
use crate::ncpoly;
use crate::ortho::{is_flat, verify_orthorep, OrthoError, OrthogonalRepresentation};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum QColorError {
    #[error("operator for vertex {vertex} color {color} has {got} entries, expected {want}")]
    ShapeMismatch {
        vertex: usize,
        color: usize,
        got: usize,
        want: usize,
    },
    #[error("missing operators for vertex {0}")]
    MissingOperator(usize),
    #[error("coloring is not proper")]
    ImproperColoring,
    #[error("representation is not flat within tolerance")]
    NotFlat,
    #[error("representation has complex entries beyond tolerance")]
    NotReal,
    #[error("representation dimension {0} is not 4 or 8")]
    BadHypercomplexDimension(usize),
    #[error("input vector is not unit norm (|v| = {0})")]
    NotUnit(f64),
    #[error("representation failed verification")]
    InvalidRepresentation,
    #[error("orthogonal representation error: {0}")]
    Ortho(#[from] OrthoError),
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("malformed input: {0}")]
    Parse(String),
}

/// A candidate quantum coloring: `c` operators of dimension `d` per vertex.
#[derive(Debug, Clone)]
pub struct QuantumColoring {
    pub palette_size: usize,
    pub dimension: usize,
    /// `operators[v][i]` is the projector for vertex `v`, color `i`.
    pub operators: Vec<Vec<CMatrix>>,
}

/// Residual summary from the quantum-coloring verifier.
#[derive(Debug, Clone)]
pub struct QColorReport {
    pub pass: bool,
    pub max_hermiticity: f64,
    pub max_idempotency: f64,
    pub max_completeness: f64,
    pub max_edge_orthogonality: f64,
    /// Rank of each operator read off its trace, reported per vertex.
    /// Informational; the definition does not require equal ranks.
    pub ranks: Vec<Vec<usize>>,
    pub equal_rank: bool,
}

/// Checks the defining conditions of a quantum coloring: Hermiticity and
/// idempotency of every operator, completeness per vertex, and edge
/// orthogonality, all in Frobenius norm against `tol`.
pub fn verify_quantum_coloring(
    graph: &Graph,
    qc: &QuantumColoring,
    tol: f64,
) -> Result<QColorReport, QColorError> {
    let n = graph.vertex_count();
    if qc.operators.len() != n {
        return Err(QColorError::MissingOperator(qc.operators.len().min(n)));
    }
    let d = qc.dimension;
    for (v, ops) in qc.operators.iter().enumerate() {
        if ops.len() != qc.palette_size {
            return Err(QColorError::MissingOperator(v));
        }
        for (i, op) in ops.iter().enumerate() {
            if op.dim != d {
                return Err(QColorError::ShapeMismatch {
                    vertex: v,
                    color: i,
                    got: op.dim,
                    want: d,
                });
            }
        }
    }
    let mut max_herm = 0.0f64;
    let mut max_idem = 0.0f64;
    let mut max_comp = 0.0f64;
    let mut max_edge = 0.0f64;
    let mut ranks = Vec::with_capacity(n);
    for ops in &qc.operators {
        let mut sum = CMatrix::zeros(d);
        let mut vranks = Vec::with_capacity(ops.len());
        for op in ops {
            max_herm = max_herm.max(op.dagger().sub(op).frobenius_norm());
            max_idem = max_idem.max(op.mul(op).sub(op).frobenius_norm());
            sum = sum.add(op);
            vranks.push(op.trace().re.round().max(0.0) as usize);
        }
        max_comp = max_comp.max(sum.sub(&CMatrix::identity(d)).frobenius_norm());
        ranks.push(vranks);
    }
    for (u, v) in graph.edges() {
        for i in 0..qc.palette_size {
            let prod = qc.operators[u][i].mul(&qc.operators[v][i]);
            max_edge = max_edge.max(prod.frobenius_norm());
        }
    }
    let flat_ranks: Vec<usize> = ranks.iter().flatten().copied().collect();
    let equal_rank = flat_ranks.windows(2).all(|w| w[0] == w[1]);
    let pass = max_herm <= tol && max_idem <= tol && max_comp <= tol && max_edge <= tol;
    Ok(QColorReport {
        pass,
        max_hermiticity: max_herm,
        max_idempotency: max_idem,
        max_completeness: max_comp,
        max_edge_orthogonality: max_edge,
        ranks,
        equal_rank,
    })
}

/// Views a proper classical coloring as a 1-dimensional quantum coloring:
/// the scalar 1 on the assigned color, 0 elsewhere. Passes the verifier
/// exactly.
pub fn classical_to_quantum(
    graph: &Graph,
    coloring: &Coloring,
) -> Result<QuantumColoring, QColorError> {
    if !coloring.verify(graph) {
        return Err(QColorError::ImproperColoring);
    }
    let operators = coloring
        .colors
        .iter()
        .map(|&c| {
            (0..coloring.palette_size)
                .map(|i| {
                    let mut m = CMatrix::zeros(1);
                    if i == c {
                        m[(0, 0)] = Complex64::new(1.0, 0.0);
                    }
                    m
                })
                .collect()
        })
        .collect();
    Ok(QuantumColoring {
        palette_size: coloring.palette_size,
        dimension: 1,
        operators,
    })
}

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

/// An orthonormal basis of column vectors.
#[derive(Debug, Clone)]
pub struct OrthonormalFrame {
    pub dimension: usize,
    pub columns: Vec<Vec<Complex64>>,
}

impl OrthonormalFrame {
    /// Largest deviation of the Gram matrix from the identity.
    pub fn gram_residual(&self) -> f64 {
        let d = self.dimension;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let g = inner(&self.columns[i], &self.columns[j]);
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

/// Builds the orthonormal frame of a flat unit vector: column `i` is the
/// entrywise product of the vector with the `i`th Fourier character,
/// `r_i[k] = phi[k] * omega_d^{k i}`, the `i`th column of
/// `sqrt(d) diag(phi) F`.
pub fn fourier_frame(phi: &[Complex64], tol: f64) -> Result<OrthonormalFrame, QColorError> {
    let d = phi.len();
    if d == 0 {
        return Err(QColorError::NotFlat);
    }
    let target = 1.0 / (d as f64).sqrt();
    if phi.iter().any(|z| (z.norm() - target).abs() > tol) {
        return Err(QColorError::NotFlat);
    }
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / d as f64);
    let columns = (0..d)
        .map(|i| {
            (0..d)
                .map(|k| phi[k] * omega.powu((k * i) as u32))
                .collect()
        })
        .collect();
    Ok(OrthonormalFrame {
        dimension: d,
        columns,
    })
}

/// The flat-representation construction: with `c = d`, color `i` of vertex
/// `v` projects onto the `i`th Fourier frame column of `phi(v)`.
pub fn fourier_coloring(
    graph: &Graph,
    rep: &OrthogonalRepresentation,
    tol: f64,
) -> Result<QuantumColoring, QColorError> {
    let report = verify_orthorep(graph, rep, tol)?;
    if !report.pass {
        return Err(QColorError::InvalidRepresentation);
    }
    if !is_flat(rep, tol) {
        return Err(QColorError::NotFlat);
    }
    let d = rep.dimension;
    let operators = rep
        .vectors
        .iter()
        .map(|phi| {
            let frame = fourier_frame(phi, tol)?;
            Ok(frame
                .columns
                .iter()
                .map(|col| CMatrix::projector_onto(col))
                .collect())
        })
        .collect::<Result<_, QColorError>>()?;
    Ok(QuantumColoring {
        palette_size: d,
        dimension: d,
        operators,
    })
}

// ---------------------------------------------------------------------------
// Hypercomplex units
// ---------------------------------------------------------------------------

/// Sign/index multiplication table for hypercomplex units: `g_i g_j =
/// sign * g_k`. Built by Cayley-Dickson doubling, which reproduces the
/// quaternion convention `g1 g2 = g3` (cyclic) at order four.
#[derive(Debug, Clone)]
pub struct HypercomplexTable {
    pub order: usize,
    /// `table[i][j] = (sign, k)` meaning `g_i g_j = sign * g_k`.
    pub table: Vec<Vec<(i8, usize)>>,
}

impl HypercomplexTable {
    /// Doubling: units of order `2n` are pairs over order `n`, multiplying
    /// by `(a,b)(c,d) = (ac - conj(d) b, d a + b conj(c))`.
    pub fn new(order: usize) -> HypercomplexTable {
        assert!(order.is_power_of_two() && order >= 1);
        let mut table = vec![vec![(1i8, 0usize)]];
        let mut n = 1;
        while n < order {
            let conj = |i: usize| -> i8 { if i == 0 { 1 } else { -1 } };
            let mut next = vec![vec![(0i8, 0usize); 2 * n]; 2 * n];
            for i in 0..2 * n {
                for j in 0..2 * n {
                    next[i][j] = match (i < n, j < n) {
                        (true, true) => table[i][j],
                        (true, false) => {
                            // (a,0)(0,d) = (0, d a)
                            let (s, k) = table[j - n][i];
                            (s, k + n)
                        }
                        (false, true) => {
                            // (0,b)(c,0) = (0, b conj(c))
                            let (s, k) = table[i - n][j];
                            (s * conj(j), k + n)
                        }
                        (false, false) => {
                            // (0,b)(0,d) = (-conj(d) b, 0)
                            let (s, k) = table[j - n][i - n];
                            (-s * conj(j - n), k)
                        }
                    };
                }
            }
            table = next;
            n *= 2;
        }
        HypercomplexTable { order, table }
    }

    pub fn mul(&self, i: usize, j: usize) -> (i8, usize) {
        self.table[i][j]
    }
}

/// Builds the orthonormal frame of a real unit vector in dimension four or
/// eight: column `i` carries the coefficients of `g_i * q(r)`, so each
/// column is a signed permutation of the entries of `r`.
pub fn hypercomplex_frame(r: &[f64], order: usize) -> Result<OrthonormalFrame, QColorError> {
    if order != 4 && order != 8 {
        return Err(QColorError::BadHypercomplexDimension(order));
    }
    if r.len() != order {
        return Err(QColorError::BadHypercomplexDimension(r.len()));
    }
    let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(QColorError::NotUnit(norm));
    }
    let table = HypercomplexTable::new(order);
    let mut columns = vec![vec![Complex64::new(0.0, 0.0); order]; order];
    for (i, col) in columns.iter_mut().enumerate() {
        for (j, &rj) in r.iter().enumerate() {
            let (sign, k) = table.mul(i, j);
            col[k] += Complex64::new(sign as f64 * rj, 0.0);
        }
    }
    Ok(OrthonormalFrame {
        dimension: order,
        columns,
    })
}

/// The real-representation construction in dimension four or eight: color
/// `i` of vertex `v` projects onto the `i`th hypercomplex frame column of
/// `phi(v)`. Orthogonality on edges holds because the frame columns are
/// signed permutations of the input vectors.
pub fn hypercomplex_coloring(
    graph: &Graph,
    rep: &OrthogonalRepresentation,
    tol: f64,
) -> Result<QuantumColoring, QColorError> {
    if rep.dimension != 4 && rep.dimension != 8 {
        return Err(QColorError::BadHypercomplexDimension(rep.dimension));
    }
    if !rep.is_real(tol) {
        return Err(QColorError::NotReal);
    }
    let report = verify_orthorep(graph, rep, tol)?;
    if !report.pass {
        return Err(QColorError::InvalidRepresentation);
    }
    let d = rep.dimension;
    let operators = rep
        .vectors
        .iter()
        .map(|phi| {
            let real: Vec<f64> = phi.iter().map(|z| z.re).collect();
            let frame = hypercomplex_frame(&real, d)?;
            Ok(frame
                .columns
                .iter()
                .map(|col| CMatrix::projector_onto(col))
                .collect())
        })
        .collect::<Result<_, QColorError>>()?;
    Ok(QuantumColoring {
        palette_size: d,
        dimension: d,
        operators,
    })
}

/// A graph is quantum 2-colorable exactly when it is 2-colorable, i.e.
/// contains no odd cycle.
pub fn is_quantum_2_colorable(graph: &Graph) -> bool {
    graph.is_bipartite()
}

// ---------------------------------------------------------------------------
// Bound reports
// ---------------------------------------------------------------------------

/// Certificate for a lower bound on the quantum chromatic number.
#[derive(Debug, Clone)]
pub enum LowerCertificate {
    /// Graph has no vertices or no edges.
    Trivial,
    /// Any edge forces at least two colors.
    Edge(usize, usize),
    /// An explicit odd cycle rules out quantum 2-coloring.
    OddCycle(Vec<usize>),
    /// A clique of size `k` forces at least `k` colors.
    Clique(Vec<usize>),
    /// An embedding of the thirteen-vertex orthogonality graph, whose
    /// quantum chromatic number is four by the bundled proof script.
    G13Subgraph { embedding: Vec<usize> },
}

/// Certificate for an upper bound on the quantum chromatic number.
#[derive(Debug, Clone)]
pub enum UpperCertificate {
    /// Edgeless graph, one color suffices.
    Trivial,
    /// A proper classical coloring.
    Coloring(Coloring),
    /// A verified quantum coloring built from a flat representation.
    Fourier(QuantumColoring),
    /// A verified quantum coloring built from a real representation in
    /// dimension four or eight.
    Hypercomplex(QuantumColoring),
}

/// Certified lower/upper bounds on the quantum chromatic number. The value
/// itself is only determined when the bounds meet.
#[derive(Debug)]
pub struct ChiQBoundReport {
    pub lower: usize,
    pub lower_certificate: LowerCertificate,
    pub upper: usize,
    pub upper_certificate: UpperCertificate,
}

impl ChiQBoundReport {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

fn find_odd_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut info = vec![None::<(bool, usize)>; n];
    for start in 0..n {
        if info[start].is_some() {
            continue;
        }
        info[start] = Some((false, start));
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let (sv, _) = info[v].unwrap();
            for u in g.neighbors(v) {
                match info[u] {
                    None => {
                        info[u] = Some((!sv, v));
                        queue.push_back(u);
                    }
                    Some((su, _)) if su == sv => {
                        let path_to_root = |mut x: usize| {
                            let mut path = vec![x];
                            while info[x].unwrap().1 != x {
                                x = info[x].unwrap().1;
                                path.push(x);
                            }
                            path
                        };
                        let pu = path_to_root(u);
                        let pv = path_to_root(v);
                        // Cut both paths just below the deepest common
                        // ancestor; joining them yields an odd cycle.
                        let mut i = pu.len();
                        let mut j = pv.len();
                        while i > 1 && j > 1 && pu[i - 2] == pv[j - 2] {
                            i -= 1;
                            j -= 1;
                        }
                        let mut cycle: Vec<usize> = pu[..i].to_vec();
                        cycle.extend(pv[..j - 1].iter().rev());
                        return Some(cycle);
                    }
                    _ => {}
                }
            }
        }
    }
    None
}

/// Computes certified bounds on the quantum chromatic number.
///
/// The lower bound is the best of: 2 for any edge, 3 for any odd cycle,
/// the clique number, and 4 when the graph contains the thirteen-vertex
/// orthogonality graph as a subgraph (backed by the bundled impossibility
/// proof). The upper bound is the best of: the chromatic number, the
/// dimension of any supplied verified flat representation, and the
/// dimension of any supplied verified real representation in dimension
/// four or eight.
pub fn chi_q_bounds(
    g: &Graph,
    representations: &[OrthogonalRepresentation],
    budget: u64,
) -> Result<ChiQBoundReport, QColorError> {
    let tol = DEFAULT_TOL;
    let n = g.vertex_count();

    let mut lower = usize::from(n > 0);
    let mut lower_certificate = LowerCertificate::Trivial;
    if let Some(&(u, v)) = g.edges().first() {
        lower = 2;
        lower_certificate = LowerCertificate::Edge(u, v);
    }
    if lower < 3 {
        if let Some(cycle) = find_odd_cycle(g) {
            lower = 3;
            lower_certificate = LowerCertificate::OddCycle(cycle);
        }
    }
    let (omega, clique) = graph::clique_number_budgeted(g, budget)?;
    if omega > lower {
        lower = omega;
        lower_certificate = LowerCertificate::Clique(clique);
    }
    // Quantum colorability is preserved under subgraphs, so an embedded
    // copy of the thirteen-vertex graph pushes the bound to 4. Preferred
    // over an equal-valued clique certificate: it is the stronger fact.
    if lower <= 4 && ncpoly::g13_theorem_holds() {
        if let Some(embedding) = graph::find_subgraph(g, &graph::g13(), budget)? {
            lower = 4;
            lower_certificate = LowerCertificate::G13Subgraph { embedding };
        }
    }

    let (chi, coloring, _) = graph::chromatic_number_budgeted(g, budget)?;
    let mut upper = chi;
    let mut upper_certificate = if g.edge_count() == 0 {
        UpperCertificate::Trivial
    } else {
        UpperCertificate::Coloring(coloring)
    };
    for rep in representations {
        if rep.dimension >= upper {
            continue;
        }
        if is_flat(rep, tol) {
            if let Ok(qc) = fourier_coloring(g, rep, tol) {
                if verify_quantum_coloring(g, &qc, 1e-8)?.pass {
                    upper = rep.dimension;
                    upper_certificate = UpperCertificate::Fourier(qc);
                    continue;
                }
            }
        }
        if (rep.dimension == 4 || rep.dimension == 8) && rep.is_real(tol) {
            if let Ok(qc) = hypercomplex_coloring(g, rep, tol) {
                if verify_quantum_coloring(g, &qc, 1e-8)?.pass {
                    upper = rep.dimension;
                    upper_certificate = UpperCertificate::Hypercomplex(qc);
                }
            }
        }
    }
    assert!(lower <= upper, "bound certificates are inconsistent");
    Ok(ChiQBoundReport {
        lower,
        lower_certificate,
        upper,
        upper_certificate,
    })
}

/// Re-verifies every certificate in a bound report against the graph.
pub fn verify_bound_report(g: &Graph, report: &ChiQBoundReport) -> Result<bool, QColorError> {
    let lower_ok = match &report.lower_certificate {
        LowerCertificate::Trivial => report.lower <= 1,
        LowerCertificate::Edge(u, v) => report.lower <= 2 && g.are_adjacent(*u, *v),
        LowerCertificate::OddCycle(cycle) => {
            report.lower <= 3
                && cycle.len() % 2 == 1
                && cycle.len() >= 3
                && (0..cycle.len()).all(|i| g.are_adjacent(cycle[i], cycle[(i + 1) % cycle.len()]))
        }
        LowerCertificate::Clique(c) => {
            report.lower <= c.len()
                && c.iter()
                    .enumerate()
                    .all(|(i, &u)| c[i + 1..].iter().all(|&v| g.are_adjacent(u, v)))
        }
        LowerCertificate::G13Subgraph { embedding } => {
            let g13 = graph::g13();
            report.lower <= 4
                && embedding.len() == 13
                && {
                    let mut distinct = embedding.clone();
                    distinct.sort_unstable();
                    distinct.dedup();
                    distinct.len() == 13
                }
                && g13
                    .edges()
                    .iter()
                    .all(|&(u, v)| g.are_adjacent(embedding[u], embedding[v]))
                && ncpoly::g13_theorem_holds()
        }
    };
    let upper_ok = match &report.upper_certificate {
        UpperCertificate::Trivial => g.edge_count() == 0,
        UpperCertificate::Coloring(c) => c.verify(g) && c.palette_size <= report.upper,
        UpperCertificate::Fourier(qc) | UpperCertificate::Hypercomplex(qc) => {
            qc.palette_size <= report.upper && verify_quantum_coloring(g, qc, 1e-8)?.pass
        }
    };
    Ok(lower_ok && upper_ok)
}

// ---------------------------------------------------------------------------
// JSON format: {c, d, operators: {label: [matrix per color]}}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct QColorJson {
    c: usize,
    d: usize,
    operators: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
}

/// Serializes a quantum coloring; matrices are flat row-major `[re, im]`
/// lists.
pub fn qcolor_to_json(graph: &Graph, qc: &QuantumColoring) -> String {
    let mut operators = BTreeMap::new();
    for (v, ops) in qc.operators.iter().enumerate() {
        let mats: Vec<Vec<[f64; 2]>> = ops
            .iter()
            .map(|m| m.data.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        operators.insert(graph.label(v).to_string(), mats);
    }
    serde_json::to_string_pretty(&QColorJson {
        c: qc.palette_size,
        d: qc.dimension,
        operators,
    })
    .expect("quantum coloring serializes")
}

pub fn qcolor_from_json(graph: &Graph, text: &str) -> Result<QuantumColoring, QColorError> {
    let doc: QColorJson =
        serde_json::from_str(text).map_err(|e| QColorError::Parse(e.to_string()))?;
    let mut operators = Vec::with_capacity(graph.vertex_count());
    for v in 0..graph.vertex_count() {
        let mats = doc
            .operators
            .get(graph.label(v))
            .ok_or(QColorError::MissingOperator(v))?;
        if mats.len() != doc.c {
            return Err(QColorError::MissingOperator(v));
        }
        let mut ops = Vec::with_capacity(doc.c);
        for (i, flat) in mats.iter().enumerate() {
            if flat.len() != doc.d * doc.d {
                return Err(QColorError::ShapeMismatch {
                    vertex: v,
                    color: i,
                    got: flat.len(),
                    want: doc.d * doc.d,
                });
            }
            ops.push(CMatrix {
                dim: doc.d,
                data: flat
                    .iter()
                    .map(|&[re, im]| Complex64::new(re, im))
                    .collect(),
            });
        }
        operators.push(ops);
    }
    Ok(QuantumColoring {
        palette_size: doc.c,
        dimension: doc.d,
        operators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, g13, g14};
    use crate::ortho::{self, DEFAULT_TOL as OTOL};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-3 {
                return v.iter().map(|x| x / norm).collect();
            }
        }
    }

    #[test]
    fn classical_lift_passes_exactly() {
        let g = g13();
        let (_, coloring, _) = graph::chromatic_number(&g).unwrap();
        let qc = classical_to_quantum(&g, &coloring).unwrap();
        let report = verify_quantum_coloring(&g, &qc, 0.0).unwrap();
        assert!(report.pass);

        let c6 = cycle(6);
        let col = Coloring {
            colors: vec![0, 1, 2, 0, 1, 2],
            palette_size: 3,
        };
        let qc = classical_to_quantum(&c6, &col).unwrap();
        assert!(verify_quantum_coloring(&c6, &qc, 0.0).unwrap().pass);

        let improper = Coloring {
            colors: vec![0, 0, 1, 2, 1, 2],
            palette_size: 3,
        };
        assert!(matches!(
            classical_to_quantum(&c6, &improper),
            Err(QColorError::ImproperColoring)
        ));
    }

    #[test]
    fn shared_projector_on_edge_fails_orthogonality() {
        let k2 = complete(2);
        let e1 = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let e2 = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let ops = vec![CMatrix::projector_onto(&e1), CMatrix::projector_onto(&e2)];
        let qc = QuantumColoring {
            palette_size: 2,
            dimension: 2,
            operators: vec![ops.clone(), ops],
        };
        let report = verify_quantum_coloring(&k2, &qc, 1e-9).unwrap();
        assert!(!report.pass);
        assert!(report.max_edge_orthogonality > 0.5);
        assert!(report.max_completeness <= 1e-12);
    }

    #[test]
    fn fourier_frame_small_cases() {
        let f = fourier_frame(&[Complex64::new(1.0, 0.0)], 1e-9).unwrap();
        assert_eq!(f.columns, vec![vec![Complex64::new(1.0, 0.0)]]);
        // d = 2 with phi = (1,1)/sqrt(2): columns (1,1)/sqrt(2), (1,-1)/sqrt(2).
        let s = 1.0 / 2.0f64.sqrt();
        let phi = vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)];
        let f = fourier_frame(&phi, 1e-9).unwrap();
        assert!((f.columns[0][0].re - s).abs() < 1e-12);
        assert!((f.columns[0][1].re - s).abs() < 1e-12);
        assert!((f.columns[1][0].re - s).abs() < 1e-12);
        assert!((f.columns[1][1].re + s).abs() < 1e-12);
        let bad = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        assert!(matches!(fourier_frame(&bad, 1e-9), Err(QColorError::NotFlat)));
    }

    #[test]
    fn fourier_frames_are_orthonormal_for_random_flat_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let d = rng.gen_range(1..=6);
            let scale = 1.0 / (d as f64).sqrt();
            let phi: Vec<Complex64> = (0..d)
                .map(|_| Complex64::from_polar(scale, rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect();
            let frame = fourier_frame(&phi, 1e-9).unwrap();
            assert!(frame.gram_residual() <= 1e-10);
        }
    }

    #[test]
    fn fourier_coloring_small_cases() {
        // The columns of the 3-dimensional Fourier matrix are flat and
        // pairwise orthogonal, so they represent K3.
        let d = 3;
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / d as f64);
        let scale = 1.0 / (d as f64).sqrt();
        let cols: Vec<Vec<Complex64>> = (0..d)
            .map(|j| (0..d).map(|k| omega.powu((k * j) as u32) * scale).collect())
            .collect();
        let k3 = complete(3);
        let rep = OrthogonalRepresentation::new(3, cols, OTOL);
        let qc = fourier_coloring(&k3, &rep, 1e-9).unwrap();
        let report = verify_quantum_coloring(&k3, &qc, 1e-10).unwrap();
        assert!(report.pass, "report: {report:?}");

        let s = 1.0 / 2.0f64.sqrt();
        let rep2 = OrthogonalRepresentation::new(
            2,
            vec![
                vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
                vec![Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
            ],
            OTOL,
        );
        let k2 = complete(2);
        let qc = fourier_coloring(&k2, &rep2, 1e-9).unwrap();
        assert!(verify_quantum_coloring(&k2, &qc, 1e-10).unwrap().pass);

        let edgeless = Graph::build(&["a", "b"], &[]).unwrap();
        let rep3 = OrthogonalRepresentation::new(
            1,
            vec![
                vec![Complex64::new(1.0, 0.0)],
                vec![Complex64::new(-1.0, 0.0)],
            ],
            OTOL,
        );
        let qc = fourier_coloring(&edgeless, &rep3, 1e-9).unwrap();
        assert!(verify_quantum_coloring(&edgeless, &qc, 1e-10).unwrap().pass);
    }

    #[test]
    fn quaternion_table_matches_cyclic_convention() {
        let t = HypercomplexTable::new(4);
        assert_eq!(t.mul(1, 2), (1, 3));
        assert_eq!(t.mul(2, 3), (1, 1));
        assert_eq!(t.mul(3, 1), (1, 2));
        assert_eq!(t.mul(2, 1), (-1, 3));
        for i in 1..4 {
            assert_eq!(t.mul(i, i), (-1, 0));
            assert_eq!(t.mul(0, i), (1, i));
            assert_eq!(t.mul(i, 0), (1, i));
        }
    }

    #[test]
    fn octonion_table_is_alternative() {
        let t = HypercomplexTable::new(8);
        for i in 1..8 {
            assert_eq!(t.mul(i, i), (-1, 0));
        }
        for i in 1..8 {
            for j in 1..8 {
                if i != j {
                    let (s1, k1) = t.mul(i, j);
                    let (s2, k2) = t.mul(j, i);
                    assert_eq!(k1, k2);
                    assert_eq!(s1, -s2);
                    assert!(k1 >= 1, "product of distinct units is a unit");
                }
            }
        }
        // Alternativity: (g_i g_j) g_j = g_i (g_j g_j) and g_j (g_j g_i) =
        // (g_j g_j) g_i.
        for i in 0..8 {
            for j in 0..8 {
                let (s1, k1) = t.mul(i, j);
                let (s2, k2) = t.mul(k1, j);
                let (s3, k3) = t.mul(j, j);
                let (s4, k4) = t.mul(i, k3);
                assert_eq!((s1 * s2, k2), (s3 * s4, k4), "right alternative ({i},{j})");
                let (s5, k5) = t.mul(j, i);
                let (s6, k6) = t.mul(j, k5);
                let (s7, k7) = t.mul(k3, i);
                assert_eq!((s5 * s6, k6), (s3 * s7, k7), "left alternative ({i},{j})");
            }
        }
    }

    #[test]
    fn hypercomplex_frame_matches_displayed_matrix() {
        // r = e1: the frame is the standard basis.
        let f = hypercomplex_frame(&[1.0, 0.0, 0.0, 0.0], 4).unwrap();
        for (i, col) in f.columns.iter().enumerate() {
            for (k, z) in col.iter().enumerate() {
                let want = if i == k { 1.0 } else { 0.0 };
                assert!((z.re - want).abs() < 1e-12);
            }
        }
        // r = (0,1,0,0): columns read off the displayed matrix.
        let f = hypercomplex_frame(&[0.0, 1.0, 0.0, 0.0], 4).unwrap();
        let expect = [
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (k, want) in row.iter().enumerate() {
                assert!(
                    (f.columns[i][k].re - want).abs() < 1e-12,
                    "column {i} entry {k}"
                );
            }
        }
    }

    #[test]
    fn hypercomplex_frames_are_signed_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for &d in &[4usize, 8] {
            for _ in 0..100 {
                let r = random_unit(&mut rng, d);
                let f = hypercomplex_frame(&r, d).unwrap();
                assert!(f.gram_residual() <= 1e-12);
                let mut sorted_abs: Vec<u64> = r.iter().map(|x| x.abs().to_bits()).collect();
                sorted_abs.sort_unstable();
                for col in &f.columns {
                    let mut col_abs: Vec<u64> =
                        col.iter().map(|z| z.re.abs().to_bits()).collect();
                    col_abs.sort_unstable();
                    assert_eq!(col_abs, sorted_abs);
                }
            }
        }
    }

    #[test]
    fn hypercomplex_frame_rejects_bad_input() {
        assert!(matches!(
            hypercomplex_frame(&[1.0, 0.0, 0.0], 3),
            Err(QColorError::BadHypercomplexDimension(3))
        ));
        assert!(matches!(
            hypercomplex_frame(&[2.0, 0.0, 0.0, 0.0], 4),
            Err(QColorError::NotUnit(_))
        ));
    }

    #[test]
    fn g14_hypercomplex_coloring_verifies() {
        let g = g14();
        let rep = ortho::g14_representation();
        let qc = hypercomplex_coloring(&g, &rep, 1e-9).unwrap();
        assert_eq!(qc.palette_size, 4);
        let report = verify_quantum_coloring(&g, &qc, 1e-10).unwrap();
        assert!(report.pass, "report: {report:?}");
    }

    #[test]
    fn k4_standard_basis_hypercomplex_coloring() {
        let k4 = complete(4);
        let mut vectors = Vec::new();
        for i in 0..4 {
            let mut v = vec![Complex64::new(0.0, 0.0); 4];
            v[i] = Complex64::new(1.0, 0.0);
            vectors.push(v);
        }
        let rep = OrthogonalRepresentation::new(4, vectors, OTOL);
        let qc = hypercomplex_coloring(&k4, &rep, 1e-9).unwrap();
        assert!(verify_quantum_coloring(&k4, &qc, 1e-10).unwrap().pass);
    }

    #[test]
    fn k5_rejects_any_four_dimensional_input() {
        let k5 = complete(5);
        let mut vectors = Vec::new();
        for i in 0..4 {
            let mut v = vec![Complex64::new(0.0, 0.0); 4];
            v[i] = Complex64::new(1.0, 0.0);
            vectors.push(v);
        }
        vectors.push(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
        let rep = OrthogonalRepresentation::new(4, vectors, OTOL);
        assert!(matches!(
            hypercomplex_coloring(&k5, &rep, 1e-9),
            Err(QColorError::InvalidRepresentation)
        ));
    }

    #[test]
    fn quantum_two_colorability_is_bipartiteness() {
        assert!(!is_quantum_2_colorable(&cycle(5)));
        assert!(is_quantum_2_colorable(&cycle(4)));
        assert!(!is_quantum_2_colorable(&g13()));
    }

    #[test]
    fn chi_q_bounds_on_named_graphs() {
        let budget = 50_000_000;
        // The thirteen-vertex graph: the bundled theorem gives the lower
        // bound 4, the chromatic number gives the upper bound 4, and the
        // lower bound strictly exceeds the dimension-3 representation.
        let g = g13();
        let report = chi_q_bounds(&g, &[], budget).unwrap();
        assert_eq!((report.lower, report.upper), (4, 4));
        assert!(matches!(
            report.lower_certificate,
            LowerCertificate::G13Subgraph { .. }
        ));
        assert!(verify_bound_report(&g, &report).unwrap());
        let rep = ortho::g13_representation();
        assert!(report.lower > rep.dimension);

        // The apex graph stays at [4, 4]: the padded representation feeds
        // the quaternion construction while the subgraph keeps the lower
        // bound, reproducing the chromatic separation 4 < 5.
        let g14 = g14();
        let rep14 = ortho::g14_representation();
        let report = chi_q_bounds(&g14, &[rep14], budget).unwrap();
        assert_eq!((report.lower, report.upper), (4, 4));
        assert!(matches!(
            report.upper_certificate,
            UpperCertificate::Hypercomplex(_)
        ));
        assert!(verify_bound_report(&g14, &report).unwrap());
        let (chi14, _, _) = graph::chromatic_number(&g14).unwrap();
        assert_eq!(chi14, 5);

        // Complete graphs pin both bounds at n.
        for n in 1..=5 {
            let kn = complete(n);
            let report = chi_q_bounds(&kn, &[], budget).unwrap();
            assert_eq!((report.lower, report.upper), (n, n));
            assert!(verify_bound_report(&kn, &report).unwrap());
        }

        // An odd cycle without triangles still gets the lower bound 3.
        let c5 = cycle(5);
        let report = chi_q_bounds(&c5, &[], budget).unwrap();
        assert_eq!((report.lower, report.upper), (3, 3));
        assert!(matches!(
            report.lower_certificate,
            LowerCertificate::OddCycle(_)
        ));
        assert!(verify_bound_report(&c5, &report).unwrap());
    }

    #[test]
    fn qcolor_json_round_trip() {
        let g = g14();
        let rep = ortho::g14_representation();
        let qc = hypercomplex_coloring(&g, &rep, 1e-9).unwrap();
        let text = qcolor_to_json(&g, &qc);
        let back = qcolor_from_json(&g, &text).unwrap();
        assert!(verify_quantum_coloring(&g, &back, 1e-10).unwrap().pass);
    }
}
