//! Orthogonal representations: unit vectors on vertices where adjacent
//! vertices receive orthogonal vectors.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexmat::{inner, vec_norm};
use crate::graph::{Coloring, Graph, GraphError, G13_VECTORS};

/// Default tolerance for floating-point verification.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum OrthoError {
    #[error("vectors have mismatched dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("zero vector at position {0}")]
    ZeroVector(usize),
    #[error("no vector assigned to vertex `{0}`")]
    MissingVertex(String),
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("malformed representation file: {0}")]
    Parse(String),
}

/// A complex vector given as `[re, im]` entry pairs.
pub type ComplexVector = Vec<Complex64>;

/// An assignment of complex unit vectors to the vertices of a graph.
#[derive(Debug, Clone)]
pub struct OrthogonalRepresentation {
    pub dimension: usize,
    /// Vector per vertex, in the graph's vertex order.
    pub vectors: Vec<ComplexVector>,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Vertex whose vector norm differs from 1 by the stated residual.
    UnitNorm { vertex: usize, residual: f64 },
    /// Adjacent pair whose inner product magnitude is the stated residual.
    Orthogonality { u: usize, v: usize, residual: f64 },
}

/// Verification report for a representation against a graph.
#[derive(Debug, Clone)]
pub struct OrthoReport {
    pub pass: bool,
    pub violations: Vec<Violation>,
    pub max_unit_residual: f64,
    pub max_orthogonality_residual: f64,
    /// All imaginary parts within tolerance of zero.
    pub real: bool,
    /// Whether every pairwise check was done in exact integer arithmetic.
    pub exact: bool,
}

fn entries_integral(v: &[Complex64]) -> Option<Vec<i64>> {
    let mut out = Vec::with_capacity(v.len());
    for z in v {
        if z.im != 0.0 || z.re.fract() != 0.0 || z.re.abs() > 1e15 {
            return None;
        }
        out.push(z.re as i64);
    }
    Some(out)
}

impl OrthogonalRepresentation {
    pub fn new(dimension: usize, vectors: Vec<ComplexVector>, tolerance: f64) -> Self {
        OrthogonalRepresentation {
            dimension,
            vectors,
            tolerance,
        }
    }

    /// True iff all imaginary parts are within `tol` of zero.
    pub fn is_real(&self, tol: f64) -> bool {
        self.vectors
            .iter()
            .all(|v| v.iter().all(|z| z.im.abs() <= tol))
    }
}

/// Builds the orthogonality graph of a list of vectors: vertices are the
/// vectors, and two vertices are adjacent iff `|u† v| <= tol * |u| |v|`.
pub fn orthogonality_graph(
    vectors: &[ComplexVector],
    tol: f64,
) -> Result<Graph, OrthoError> {
    if vectors.is_empty() {
        return Ok(Graph::build(&[], &[]).expect("empty graph"));
    }
    let d = vectors[0].len();
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != d {
            return Err(OrthoError::DimensionMismatch(d, v.len()));
        }
        if vec_norm(v) == 0.0 {
            return Err(OrthoError::ZeroVector(i));
        }
    }
    // Use exact integer dot products whenever every entry is integral.
    let integral: Option<Vec<Vec<i64>>> = vectors.iter().map(|v| entries_integral(v)).collect();
    let labels: Vec<String> = (0..vectors.len()).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..vectors.len() {
        for j in (i + 1)..vectors.len() {
            let orthogonal = match &integral {
                Some(ints) => {
                    ints[i]
                        .iter()
                        .zip(ints[j].iter())
                        .map(|(a, b)| a * b)
                        .sum::<i64>()
                        == 0
                }
                None => {
                    let bound = tol * vec_norm(&vectors[i]) * vec_norm(&vectors[j]);
                    inner(&vectors[i], &vectors[j]).norm() <= bound
                }
            };
            if orthogonal {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_index_edges(labels, &edges)?)
}

/// Verifies unit norms and edge orthogonality of an assignment against a
/// graph. Integer-entry assignments get their orthogonality checked exactly.
pub fn verify_orthorep(
    graph: &Graph,
    rep: &OrthogonalRepresentation,
    tol: f64,
) -> Result<OrthoReport, OrthoError> {
    let n = graph.vertex_count();
    if rep.vectors.len() != n {
        return Err(OrthoError::MissingVertex(format!(
            "expected {n} vectors, got {}",
            rep.vectors.len()
        )));
    }
    for v in &rep.vectors {
        if v.len() != rep.dimension {
            return Err(OrthoError::DimensionMismatch(rep.dimension, v.len()));
        }
    }
    let integral: Option<Vec<Vec<i64>>> =
        rep.vectors.iter().map(|v| entries_integral(v)).collect();
    let mut violations = Vec::new();
    let mut max_unit = 0.0f64;
    let mut max_orth = 0.0f64;
    for v in 0..n {
        let residual = (vec_norm(&rep.vectors[v]) - 1.0).abs();
        max_unit = max_unit.max(residual);
        if residual > tol {
            violations.push(Violation::UnitNorm { vertex: v, residual });
        }
    }
    let mut exact = integral.is_some();
    for (u, v) in graph.edges() {
        let (residual, was_exact) = match &integral {
            Some(ints) => {
                let dot: i64 = ints[u]
                    .iter()
                    .zip(ints[v].iter())
                    .map(|(a, b)| a * b)
                    .sum();
                (dot.unsigned_abs() as f64, true)
            }
            None => (inner(&rep.vectors[u], &rep.vectors[v]).norm(), false),
        };
        exact &= was_exact;
        max_orth = max_orth.max(residual);
        let limit = if was_exact { 0.0 } else { tol };
        if residual > limit {
            violations.push(Violation::Orthogonality { u, v, residual });
        }
    }
    Ok(OrthoReport {
        pass: violations.is_empty(),
        violations,
        max_unit_residual: max_unit,
        max_orthogonality_residual: max_orth,
        real: rep.is_real(tol),
        exact,
    })
}

/// True iff every entry of every vector has modulus `1/sqrt(d)` within
/// `tol`.
pub fn is_flat(rep: &OrthogonalRepresentation, tol: f64) -> bool {
    if rep.dimension == 0 {
        return false;
    }
    let target = 1.0 / (rep.dimension as f64).sqrt();
    rep.vectors
        .iter()
        .all(|v| v.iter().all(|z| (z.norm() - target).abs() <= tol))
}

/// Lifts a proper coloring to an orthogonal representation by sending color
/// `i` to the standard basis vector `e_i`. The result passes verification
/// exactly.
pub fn coloring_to_orthorep(graph: &Graph, coloring: &Coloring) -> Result<OrthogonalRepresentation, OrthoError> {
    if !coloring.verify(graph) {
        return Err(OrthoError::Parse("coloring is not proper".into()));
    }
    let d = coloring.palette_size;
    let vectors = coloring
        .colors
        .iter()
        .map(|&c| {
            let mut v = vec![Complex64::new(0.0, 0.0); d];
            v[c] = Complex64::new(1.0, 0.0);
            v
        })
        .collect();
    Ok(OrthogonalRepresentation::new(d, vectors, 0.0))
}

/// The exact three-dimensional representation of `g13` given by its defining
/// vectors, normalized to unit length.
pub fn g13_representation() -> OrthogonalRepresentation {
    let vectors = G13_VECTORS
        .iter()
        .map(|(_, v)| {
            let norm = ((v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) as f64).sqrt();
            v.iter()
                .map(|&x| Complex64::new(x as f64 / norm, 0.0))
                .collect()
        })
        .collect();
    OrthogonalRepresentation::new(3, vectors, DEFAULT_TOL)
}

/// The four-dimensional representation of `g14`: the `g13` vectors padded
/// with a zero coordinate, plus `(0,0,0,1)` on the apex.
pub fn g14_representation() -> OrthogonalRepresentation {
    let mut vectors: Vec<ComplexVector> = g13_representation()
        .vectors
        .into_iter()
        .map(|mut v| {
            v.push(Complex64::new(0.0, 0.0));
            v
        })
        .collect();
    vectors.push(vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    ]);
    OrthogonalRepresentation::new(4, vectors, DEFAULT_TOL)
}

/// The unnormalized integer vectors of `g13`, in vertex order.
pub fn g13_integer_vectors() -> Vec<Vec<Complex64>> {
    G13_VECTORS
        .iter()
        .map(|(_, v)| v.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// JSON format: {dimension, vectors: {label: [[re,im],...]}}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RepJson {
    dimension: usize,
    vectors: BTreeMap<String, Vec<[f64; 2]>>,
}

pub fn rep_to_json(graph: &Graph, rep: &OrthogonalRepresentation) -> String {
    let mut vectors = BTreeMap::new();
    for (v, vec) in rep.vectors.iter().enumerate() {
        vectors.insert(
            graph.label(v).to_string(),
            vec.iter().map(|z| [z.re, z.im]).collect(),
        );
    }
    serde_json::to_string_pretty(&RepJson {
        dimension: rep.dimension,
        vectors,
    })
    .expect("representation serializes")
}

pub fn rep_from_json(
    graph: &Graph,
    text: &str,
) -> Result<OrthogonalRepresentation, OrthoError> {
    let doc: RepJson = serde_json::from_str(text).map_err(|e| OrthoError::Parse(e.to_string()))?;
    let mut vectors = Vec::with_capacity(graph.vertex_count());
    for v in 0..graph.vertex_count() {
        let raw = doc
            .vectors
            .get(graph.label(v))
            .ok_or_else(|| OrthoError::MissingVertex(graph.label(v).to_string()))?;
        if raw.len() != doc.dimension {
            return Err(OrthoError::DimensionMismatch(doc.dimension, raw.len()));
        }
        vectors.push(raw.iter().map(|&[re, im]| Complex64::new(re, im)).collect());
    }
    Ok(OrthogonalRepresentation::new(
        doc.dimension,
        vectors,
        DEFAULT_TOL,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(d: usize, i: usize) -> ComplexVector {
        let mut v = vec![Complex64::new(0.0, 0.0); d];
        v[i] = Complex64::new(1.0, 0.0);
        v
    }

    #[test]
    fn orthogonality_graph_of_basis_is_complete() {
        let vecs = vec![e(3, 0), e(3, 1), e(3, 2)];
        let g = orthogonality_graph(&vecs, DEFAULT_TOL).unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn repeated_vector_gives_no_edge() {
        let vecs = vec![e(3, 0), e(3, 0)];
        let g = orthogonality_graph(&vecs, DEFAULT_TOL).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn orthogonality_graph_errors() {
        let bad = vec![e(3, 0), e(2, 0)];
        assert!(matches!(
            orthogonality_graph(&bad, DEFAULT_TOL),
            Err(OrthoError::DimensionMismatch(_, _))
        ));
        let zero = vec![vec![Complex64::new(0.0, 0.0); 2]];
        assert!(matches!(
            orthogonality_graph(&zero, DEFAULT_TOL),
            Err(OrthoError::ZeroVector(0))
        ));
    }

    #[test]
    fn eq4_vectors_rebuild_g13() {
        let vecs = g13_integer_vectors();
        let g = orthogonality_graph(&vecs, DEFAULT_TOL).unwrap();
        // Same adjacency under the index-preserving label map.
        let g13 = graph::g13();
        assert_eq!(g.edges(), g13.edges());
        assert_eq!(g.edge_count(), 24);
    }

    #[test]
    fn g13_representation_verifies() {
        let g = graph::g13();
        let rep = g13_representation();
        let report = verify_orthorep(&g, &rep, DEFAULT_TOL).unwrap();
        assert!(report.pass, "violations: {:?}", report.violations);
        assert!(report.real);
    }

    #[test]
    fn g14_padded_representation_verifies() {
        let g = graph::g14();
        let rep = g14_representation();
        let report = verify_orthorep(&g, &rep, DEFAULT_TOL).unwrap();
        assert!(report.pass, "violations: {:?}", report.violations);
        assert!(report.real);
        assert!(!is_flat(&rep, DEFAULT_TOL));
    }

    #[test]
    fn equal_vectors_on_edge_fail_with_residual_one() {
        let k2 = graph::complete(2);
        let rep = OrthogonalRepresentation::new(2, vec![e(2, 0), e(2, 0)], DEFAULT_TOL);
        let report = verify_orthorep(&k2, &rep, DEFAULT_TOL).unwrap();
        assert!(!report.pass);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Orthogonality { residual, .. } if (*residual - 1.0).abs() < 1e-12)));
    }

    #[test]
    fn fourier_columns_are_flat() {
        // Columns of the 3-dimensional Fourier matrix.
        let d = 3;
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / d as f64);
        let scale = 1.0 / (d as f64).sqrt();
        let cols: Vec<ComplexVector> = (0..d)
            .map(|j| {
                (0..d)
                    .map(|k| omega.powu((k * j) as u32) * scale)
                    .collect()
            })
            .collect();
        let rep = OrthogonalRepresentation::new(d, cols, DEFAULT_TOL);
        assert!(is_flat(&rep, 1e-12));
        // The normalized g13 representation contains zeros, hence not flat.
        assert!(!is_flat(&g13_representation(), DEFAULT_TOL));
        // Any 1-dimensional unit assignment is flat.
        let one = OrthogonalRepresentation::new(1, vec![vec![Complex64::new(1.0, 0.0)]], 0.0);
        assert!(is_flat(&one, 1e-12));
    }

    #[test]
    fn coloring_lift_passes_exactly() {
        let g = graph::g13();
        let (_, coloring, _) = graph::chromatic_number(&g).unwrap();
        let rep = coloring_to_orthorep(&g, &coloring).unwrap();
        assert_eq!(rep.dimension, 4);
        let report = verify_orthorep(&g, &rep, 0.0).unwrap();
        assert!(report.pass);

        let k2 = graph::complete(2);
        let col = Coloring {
            colors: vec![0, 1],
            palette_size: 2,
        };
        let rep = coloring_to_orthorep(&k2, &col).unwrap();
        assert_eq!(rep.vectors[0][0], Complex64::new(1.0, 0.0));
        assert_eq!(rep.vectors[1][1], Complex64::new(1.0, 0.0));

        let edgeless = graph::Graph::build(&["a", "b"], &[]).unwrap();
        let col = Coloring {
            colors: vec![0, 0],
            palette_size: 1,
        };
        let rep = coloring_to_orthorep(&edgeless, &col).unwrap();
        assert!(verify_orthorep(&edgeless, &rep, 0.0).unwrap().pass);
    }

    #[test]
    fn lift_of_random_proper_colorings_verifies() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let n = 4 + rng.gen_range(0..5);
            let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.45) {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_index_edges(labels, &edges).unwrap();
            let (_, coloring, _) = graph::chromatic_number(&g).unwrap();
            let rep = coloring_to_orthorep(&g, &coloring).unwrap();
            assert!(verify_orthorep(&g, &rep, 0.0).unwrap().pass);
            // The orthogonality graph of the lifted vectors is a supergraph.
            let og = orthogonality_graph(&rep.vectors, DEFAULT_TOL).unwrap();
            for (u, v) in g.edges() {
                assert!(og.are_adjacent(u, v));
            }
        }
    }

    #[test]
    fn representation_json_round_trip() {
        let g = graph::g13();
        let rep = g13_representation();
        let text = rep_to_json(&g, &rep);
        let back = rep_from_json(&g, &text).unwrap();
        assert_eq!(back.dimension, 3);
        assert!(verify_orthorep(&g, &back, DEFAULT_TOL).unwrap().pass);
    }
}
