//! Graph matrices and their eigenvalues.
//!
//! The four matrix kinds share one definition: with degree matrix `D` and
//! adjacency matrix `A`, the Laplacian is `D - A`, the signless Laplacian is
//! `D + A`, and `A_alpha = alpha D + (1 - alpha) A` interpolates between the
//! adjacency matrix (`alpha = 0`) and `D` (`alpha = 1`), with
//! `Q = 2 A_{1/2}`.
//!
//! Eigenvalues come from a cyclic Jacobi rotation sweep over the dense
//! symmetric matrix: simple, robust at order <= 64, and bit-reproducible for
//! identical input under the fixed sweep order, so no external numerical
//! library is needed.

use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};

/// Two objective values within this distance are treated as tied by the
/// extremal search.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Comparison tolerance against 4-decimal published table values; rounding of
/// the true value can move a printed figure by up to 5e-5.
pub const TABLE_TOLERANCE: f64 = 1e-4;

const MAX_SWEEPS: usize = 64;
const CONVERGENCE_FACTOR: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum SpectraError {
    #[error("alpha = {0} outside [0, 1]")]
    AlphaOutOfRange(f64),
    #[error("matrix order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("Jacobi sweep failed to converge within {MAX_SWEEPS} sweeps")]
    NoConvergence,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixKind {
    Laplacian,
    SignlessLaplacian,
    Adjacency,
    AAlpha(f64),
}

impl std::fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixKind::Laplacian => write!(f, "laplacian"),
            MatrixKind::SignlessLaplacian => write!(f, "signless"),
            MatrixKind::Adjacency => write!(f, "adjacency"),
            MatrixKind::AAlpha(alpha) => write!(f, "a-alpha({alpha})"),
        }
    }
}

/// Dense symmetric matrix, full storage, order <= 64.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zero(n: usize) -> Result<Self, SpectraError> {
        if n == 0 || n > MAX_ORDER {
            return Err(SpectraError::OrderTooLarge(n));
        }
        Ok(SymmetricMatrix {
            n,
            entries: vec![0.0; n * n],
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.n + j] = value;
        self.entries[j * self.n + i] = value;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Builds the requested matrix of `g`.
pub fn build_matrix(g: &Graph, kind: MatrixKind) -> Result<SymmetricMatrix, SpectraError> {
    let (diag_scale, off_value) = match kind {
        MatrixKind::Laplacian => (1.0, -1.0),
        MatrixKind::SignlessLaplacian => (1.0, 1.0),
        MatrixKind::Adjacency => (0.0, 1.0),
        MatrixKind::AAlpha(alpha) => {
            if !(0.0..=1.0).contains(&alpha) {
                return Err(SpectraError::AlphaOutOfRange(alpha));
            }
            (alpha, 1.0 - alpha)
        }
    };
    let mut m = SymmetricMatrix::zero(g.n())?;
    for v in 0..g.n() {
        m.set(v, v, diag_scale * g.degree(v) as f64);
    }
    for (u, v) in g.edges() {
        m.set(u, v, off_value);
    }
    Ok(m)
}

/// All eigenvalues of a symmetric matrix, ascending, via cyclic Jacobi
/// rotations. Converged when the off-diagonal Frobenius norm drops below
/// 1e-12 times the initial Frobenius norm; the sweep cap only flags kernel
/// pathology and is unreachable for graph matrices of this size.
///
/// The sweep works on the upper triangle of a flat copy, with the rotation
/// structure and small-element handling of Numerical Recipes' `jacobi`:
/// early sweeps skip rotations below a coarse threshold, and once the
/// iteration has settled, entries too small to move the diagonal are zeroed
/// outright. Both rules depend only on the current matrix values, so the
/// result stays bit-reproducible for identical input.
pub fn eigenvalues(m: &SymmetricMatrix) -> Result<Vec<f64>, SpectraError> {
    let n = m.order();
    let mut a = m.entries.clone();
    let mut diag: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
    // Accumulators for the diagonal updates (NR's b and z arrays); adding the
    // rotation increments in one batch per sweep limits rounding drift.
    let mut accumulated = diag.clone();
    let mut increment = vec![0.0; n];

    let threshold = CONVERGENCE_FACTOR * m.frobenius_norm();
    let mut sweeps = 0;
    while off_norm_upper(&a, n) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(SpectraError::NoConvergence);
        }
        let off_sum: f64 = {
            let mut sum = 0.0;
            for p in 0..n - 1 {
                for q in p + 1..n {
                    sum += a[p * n + q].abs();
                }
            }
            sum
        };
        // Coarse rotation threshold for the first three sweeps.
        let tresh = if sweeps < 3 {
            0.2 * off_sum / (n * n) as f64
        } else {
            0.0
        };
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let magnified = 100.0 * apq.abs();
                // Settled entries whose rotation cannot move the diagonal are
                // zeroed directly.
                if sweeps > 3
                    && diag[p].abs() + magnified == diag[p].abs()
                    && diag[q].abs() + magnified == diag[q].abs()
                {
                    a[p * n + q] = 0.0;
                    continue;
                }
                if apq.abs() <= tresh || apq == 0.0 {
                    continue;
                }
                let h = diag[q] - diag[p];
                let t = if h.abs() + magnified == h.abs() {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let delta = t * apq;
                increment[p] -= delta;
                increment[q] += delta;
                diag[p] -= delta;
                diag[q] += delta;
                a[p * n + q] = 0.0;
                // Upper-triangle updates in three index ranges.
                for j in 0..p {
                    let g = a[j * n + p];
                    let h = a[j * n + q];
                    a[j * n + p] = g - s * (h + g * tau);
                    a[j * n + q] = h + s * (g - h * tau);
                }
                for j in p + 1..q {
                    let g = a[p * n + j];
                    let h = a[j * n + q];
                    a[p * n + j] = g - s * (h + g * tau);
                    a[j * n + q] = h + s * (g - h * tau);
                }
                for j in q + 1..n {
                    let g = a[p * n + j];
                    let h = a[q * n + j];
                    a[p * n + j] = g - s * (h + g * tau);
                    a[q * n + j] = h + s * (g - h * tau);
                }
            }
        }
        for i in 0..n {
            accumulated[i] += increment[i];
            diag[i] = accumulated[i];
            increment[i] = 0.0;
        }
        sweeps += 1;
    }
    diag.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    Ok(diag)
}

fn off_norm_upper(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for p in 0..n.saturating_sub(1) {
        for q in p + 1..n {
            let x = a[p * n + q];
            sum += 2.0 * x * x;
        }
    }
    sum.sqrt()
}

/// Full ascending spectrum of one matrix kind of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    kind: MatrixKind,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn smallest(&self) -> f64 {
        self.values[0]
    }

    pub fn second_smallest(&self) -> f64 {
        self.values[1]
    }

    pub fn largest(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn second_largest(&self) -> f64 {
        self.values[self.values.len() - 2]
    }
}

/// Builds the matrix and computes its full spectrum.
pub fn spectrum(g: &Graph, kind: MatrixKind) -> Result<Spectrum, SpectraError> {
    let values = eigenvalues(&build_matrix(g, kind)?)?;
    Ok(Spectrum { values, kind })
}

/// Second-smallest Laplacian eigenvalue; positive iff the graph is connected.
///
/// Panics if `g` has fewer than two vertices.
pub fn algebraic_connectivity(g: &Graph) -> Result<f64, SpectraError> {
    assert!(g.n() >= 2, "algebraic connectivity needs n >= 2");
    Ok(spectrum(g, MatrixKind::Laplacian)?.second_smallest())
}

/// Largest eigenvalue of `A_alpha(g)`, the alpha-index.
pub fn alpha_index(g: &Graph, alpha: f64) -> Result<f64, SpectraError> {
    Ok(spectrum(g, MatrixKind::AAlpha(alpha))?.largest())
}

/// Second-largest eigenvalue of `A_alpha(g)`.
///
/// Panics if `g` has fewer than two vertices.
pub fn second_alpha_eigenvalue(g: &Graph, alpha: f64) -> Result<f64, SpectraError> {
    assert!(g.n() >= 2, "second eigenvalue needs n >= 2");
    Ok(spectrum(g, MatrixKind::AAlpha(alpha))?.second_largest())
}
