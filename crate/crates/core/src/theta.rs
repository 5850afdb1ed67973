//! Lovasz theta by semidefinite programming.
//!
//! Solves the primal formulation `max <J, X>` subject to `tr X = 1`,
//! `X_uv = 0` on edges, `X >= 0`, with a Dykstra-style operator-splitting
//! scheme that alternates projection onto the affine constraints with
//! projection onto the PSD cone, plus an over-relaxed dual correction.
//! The projection onto the affine set is entrywise (zero the edge slots,
//! shift the diagonal), and the PSD projection uses a cyclic Jacobi
//! eigendecomposition so the whole solve is deterministic.

use thiserror::Error;

use crate::graph::Graph;

/// Default constraint-residual tolerance.
pub const DEFAULT_EPS: f64 = 1e-6;
/// Iteration cap; exceeding it is an error, never a silent return.
pub const MAX_ITERATIONS: usize = 200_000;

#[derive(Debug, Error)]
pub enum ThetaError {
    #[error("solver did not converge within {0} iterations (residual {1:.3e})")]
    NonConvergence(usize, f64),
    #[error("graph too large for the dense solver ({0} vertices)")]
    TooLarge(usize),
}

/// Result of a theta computation: the value, the primal certificate, and
/// feasibility diagnostics.
#[derive(Debug, Clone)]
pub struct ThetaResult {
    pub value: f64,
    /// Row-major `n x n` primal matrix: trace 1 and zero on edges exactly,
    /// PSD within the reported eigenvalue bound.
    pub matrix: Vec<f64>,
    pub n: usize,
    /// `|trace(X) - 1|`, zero by construction of the final projection.
    pub trace_error: f64,
    /// Largest `|X_uv|` over edges, zero by construction.
    pub max_edge_violation: f64,
    /// Most negative eigenvalue of the reported matrix (0 if PSD).
    pub min_eigenvalue: f64,
    /// Final splitting residual (distance between the two projections).
    pub split_residual: f64,
    /// Estimate of the optimality gap from the two iterate values.
    pub gap_estimate: f64,
    pub iterations: usize,
}

// --- small dense symmetric linear algebra ---------------------------------

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns
/// eigenvalues and the orthogonal matrix of eigenvectors (columns).
fn jacobi_eigen(a_in: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut a = a_in.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    for _sweep in 0..64 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        if off.sqrt() <= 1e-13 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let eig = (0..n).map(|i| a[i * n + i]).collect();
    (eig, v)
}

/// Projection onto the PSD cone: clamp negative eigenvalues.
fn psd_project(a: &[f64], n: usize) -> Vec<f64> {
    let (eig, v) = jacobi_eigen(a, n);
    let mut out = vec![0.0; n * n];
    for (k, &lam) in eig.iter().enumerate() {
        if lam <= 0.0 {
            continue;
        }
        for i in 0..n {
            let viklam = v[i * n + k] * lam;
            for j in 0..n {
                out[i * n + j] += viklam * v[j * n + k];
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let m = 0.5 * (out[i * n + j] + out[j * n + i]);
            out[i * n + j] = m;
            out[j * n + i] = m;
        }
    }
    out
}

fn min_eigenvalue(a: &[f64], n: usize) -> f64 {
    let (eig, _) = jacobi_eigen(a, n);
    eig.into_iter().fold(f64::INFINITY, f64::min).min(0.0)
}

/// Computes the Lovasz theta number of a graph to the requested constraint
/// tolerance, with a feasible primal certificate.
pub fn lovasz_theta(g: &Graph, eps: f64) -> Result<ThetaResult, ThetaError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(ThetaResult {
            value: 0.0,
            matrix: vec![],
            n: 0,
            trace_error: 0.0,
            max_edge_violation: 0.0,
            min_eigenvalue: 0.0,
            split_residual: 0.0,
            gap_estimate: 0.0,
            iterations: 0,
        });
    }
    if n > 50 {
        return Err(ThetaError::TooLarge(n));
    }
    let edges = g.edges();
    let nf = n as f64;

    // Orthogonal projection onto {X symmetric: tr X = 1, X_uv = 0 on edges}.
    let affine_project = |m: &[f64]| -> Vec<f64> {
        let mut x = m.to_vec();
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (x[i * n + j] + x[j * n + i]);
                x[i * n + j] = avg;
                x[j * n + i] = avg;
            }
        }
        for &(u, v) in &edges {
            x[u * n + v] = 0.0;
            x[v * n + u] = 0.0;
        }
        let tr: f64 = (0..n).map(|i| x[i * n + i]).sum();
        let shift = (tr - 1.0) / nf;
        for i in 0..n {
            x[i * n + i] -= shift;
        }
        x
    };

    let alpha = 1.6;
    let mut rho = 1.0;
    let mut z: Vec<f64> = (0..n * n)
        .map(|k| if k % (n + 1) == 0 { 1.0 / nf } else { 0.0 })
        .collect();
    let mut u = vec![0.0; n * n];
    let mut split_residual = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    let mut gap_estimate = f64::INFINITY;

    while iterations < MAX_ITERATIONS {
        iterations += 1;
        // X-step: minimize <-J, X> + (rho/2)||X - Z + U||^2 over the affine
        // set, which is the projection of Z - U + J/rho.
        let mut target = vec![0.0; n * n];
        for k in 0..n * n {
            target[k] = z[k] - u[k] + 1.0 / rho;
        }
        let x = affine_project(&target);

        // Over-relaxed Z-step and dual update.
        let mut xr = vec![0.0; n * n];
        for k in 0..n * n {
            xr[k] = alpha * x[k] + (1.0 - alpha) * z[k];
        }
        let z_old = z.clone();
        let mut z_target = vec![0.0; n * n];
        for k in 0..n * n {
            z_target[k] = xr[k] + u[k];
        }
        z = psd_project(&z_target, n);
        for k in 0..n * n {
            u[k] += xr[k] - z[k];
        }

        if iterations % 10 == 0 || iterations < 10 {
            let primal: f64 = x
                .iter()
                .zip(z.iter())
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let dual: f64 = z
                .iter()
                .zip(z_old.iter())
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
                * rho;
            split_residual = primal;
            let vx: f64 = x.iter().sum();
            let vz: f64 = z.iter().sum();
            gap_estimate = (vx - vz).abs();
            if primal <= eps && dual <= eps {
                converged = true;
                break;
            }
            // Residual balancing keeps both residuals moving together.
            if iterations % 100 == 0 {
                if primal > 10.0 * dual && rho < 1e4 {
                    rho *= 2.0;
                    for uk in u.iter_mut() {
                        *uk *= 0.5;
                    }
                } else if dual > 10.0 * primal && rho > 1e-4 {
                    rho *= 0.5;
                    for uk in u.iter_mut() {
                        *uk *= 2.0;
                    }
                }
            }
        }
    }
    if !converged {
        return Err(ThetaError::NonConvergence(iterations, split_residual));
    }

    // Report the affine projection of the PSD iterate: trace and edge
    // constraints hold exactly; the PSD defect is bounded by the split
    // residual.
    let x_final = affine_project(&z);
    let value: f64 = x_final.iter().sum();
    let tr: f64 = (0..n).map(|i| x_final[i * n + i]).sum();
    let max_edge_violation = edges
        .iter()
        .map(|&(uu, vv)| x_final[uu * n + vv].abs())
        .fold(0.0, f64::max);
    let min_eig = min_eigenvalue(&x_final, n);
    Ok(ThetaResult {
        value,
        matrix: x_final,
        n,
        trace_error: (tr - 1.0).abs(),
        max_edge_violation,
        min_eigenvalue: min_eig,
        split_residual,
        gap_estimate,
        iterations,
    })
}

/// Lovasz theta of the complement graph.
pub fn theta_complement(g: &Graph, eps: f64) -> Result<ThetaResult, ThetaError> {
    lovasz_theta(&g.complement(), eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{self, complete, cycle, g13, petersen, Graph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn theta(g: &Graph) -> f64 {
        lovasz_theta(g, DEFAULT_EPS).unwrap().value
    }

    #[test]
    fn jacobi_diagonalizes() {
        let a = [2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0];
        let (eig, v) = jacobi_eigen(&a, 3);
        let mut recon = [0.0; 9];
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    recon[i * 3 + j] += eig[k] * v[i * 3 + k] * v[j * 3 + k];
                }
            }
        }
        for (x, y) in recon.iter().zip(a.iter()) {
            assert!((x - y).abs() < 1e-10);
        }
        let mut sorted = eig.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // Characteristic polynomial factors as (x-1)(x-2)(x-4).
        assert!((sorted[0] - 1.0).abs() < 1e-9);
        assert!((sorted[1] - 2.0).abs() < 1e-9);
        assert!((sorted[2] - 4.0).abs() < 1e-9);
    }

    #[test]
    fn theta_of_complete_graphs_is_one() {
        for n in 1..=6 {
            let r = lovasz_theta(&complete(n), 1e-7).unwrap();
            assert!((r.value - 1.0).abs() < 1e-6, "K{n}: {}", r.value);
            assert_eq!(r.max_edge_violation, 0.0);
            assert!(r.trace_error < 1e-12);
        }
    }

    #[test]
    fn theta_of_empty_graph_is_n() {
        for n in 1..=6 {
            let g =
                Graph::from_index_edges((0..n).map(|i| i.to_string()).collect(), &[]).unwrap();
            let r = lovasz_theta(&g, DEFAULT_EPS).unwrap();
            assert!((r.value - n as f64).abs() < 1e-4, "empty {n}: {}", r.value);
        }
    }

    #[test]
    fn theta_of_c5_is_sqrt5() {
        let r = lovasz_theta(&cycle(5), DEFAULT_EPS).unwrap();
        assert!((r.value - 5.0f64.sqrt()).abs() < 1e-4, "{}", r.value);
    }

    #[test]
    fn theta_of_petersen_and_complement() {
        let p = petersen();
        assert!((theta(&p) - 4.0).abs() < 1e-4);
        let rc = theta_complement(&p, DEFAULT_EPS).unwrap();
        assert!((rc.value - 2.5).abs() < 1e-4, "{}", rc.value);
    }

    #[test]
    fn theta_of_g13_and_complement() {
        let g = g13();
        assert!((theta(&g) - 5.0).abs() < 1e-4);
        let rc = theta_complement(&g, DEFAULT_EPS).unwrap();
        assert!((rc.value - 3.0).abs() < 1e-4, "{}", rc.value);
    }

    #[test]
    fn certificate_is_feasible() {
        let r = lovasz_theta(&petersen(), DEFAULT_EPS).unwrap();
        assert!(r.trace_error < 1e-12);
        assert_eq!(r.max_edge_violation, 0.0);
        assert!(r.min_eigenvalue > -1e-5, "min eig {}", r.min_eigenvalue);
        let v: f64 = r.matrix.iter().sum();
        assert!((v - r.value).abs() < 1e-12);
    }

    #[test]
    fn sandwich_alpha_theta_chibar() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..8 {
            let n = 5 + rng.gen_range(0..4);
            let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.5) {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_index_edges(labels, &edges).unwrap();
            let (alpha, _) = graph::independence_number(&g).unwrap();
            let (chibar, _, _) = graph::chromatic_number(&g.complement()).unwrap();
            let t = theta(&g);
            assert!(alpha as f64 - 1e-4 <= t, "alpha {alpha} > theta {t}");
            assert!(t <= chibar as f64 + 1e-4, "theta {t} > chibar {chibar}");
        }
    }

    #[test]
    fn adding_edges_does_not_increase_theta() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..5 {
            let n = 6;
            let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.35) {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_index_edges(labels.clone(), &edges).unwrap();
            let t1 = theta(&g);
            let mut non_edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if !g.are_adjacent(i, j) {
                        non_edges.push((i, j));
                    }
                }
            }
            if non_edges.is_empty() {
                continue;
            }
            let pick = non_edges[rng.gen_range(0..non_edges.len())];
            let mut edges2 = edges.clone();
            edges2.push(pick);
            let g2 = Graph::from_index_edges(labels, &edges2).unwrap();
            let t2 = theta(&g2);
            assert!(t2 <= t1 + 1e-4, "adding an edge raised theta: {t1} -> {t2}");
        }
    }

    #[test]
    fn theta_is_additive_on_disjoint_unions() {
        let a = cycle(5);
        let b = complete(3);
        let mut labels: Vec<String> = a.labels().iter().map(|l| format!("a{l}")).collect();
        labels.extend(b.labels().iter().map(|l| format!("b{l}")));
        let mut edges = a.edges();
        let offset = a.vertex_count();
        edges.extend(b.edges().iter().map(|&(u, v)| (u + offset, v + offset)));
        let un = Graph::from_index_edges(labels, &edges).unwrap();
        let tu = theta(&un);
        let ta = theta(&a);
        let tb = theta(&b);
        assert!((tu - ta - tb).abs() < 2e-4, "{tu} vs {ta} + {tb}");
    }
}
