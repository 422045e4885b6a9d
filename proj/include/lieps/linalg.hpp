#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "lieps/cmatrix.hpp"
#include "lieps/kernels.hpp"

namespace lieps {

/// Iteration controls shared by the Jacobi SVD and the shifted QR iteration.
struct SolverOptions {
  /// Cap is `sweeps_per_dim * n` sweeps (SVD) or QR steps (Schur).
  std::size_t sweeps_per_dim = 100;
  /// Relative convergence threshold.
  double threshold = 1e-12;
};

// ---------------------------------------------------------------------------
// Singular values (one-sided Jacobi)

/// Singular values in descending order. Throws ConvergenceError when the
/// sweep cap is hit.
std::vector<double> singular_values(const CMatrix& a, const SolverOptions& opts = {},
                                    const kernels::Table& k = kernels::active());

/// Smallest singular value of A - zI.
double smin_shift(const CMatrix& a, cplx z, const SolverOptions& opts = {},
                  const kernels::Table& k = kernels::active());

/// Largest singular value (spectral norm).
double spectral_norm(const CMatrix& a);

// ---------------------------------------------------------------------------
// Complex Schur form

/// A = Q T Q^*, Q unitary, T upper triangular.
struct SchurForm {
  CMatrix q;
  CMatrix t;
};

/// Hessenberg reduction followed by single-shift QR with Wilkinson shifts.
SchurForm schur(const CMatrix& a, const SolverOptions& opts = {});

/// Swaps diagonal entries k and k+1 of an upper triangular Schur factor with a
/// Givens rotation, updating Q so that Q T Q^* is unchanged. Equal diagonal
/// entries are swapped by a permutation when t(k, k+1) = 0 and left in place
/// otherwise.
void schur_swap(SchurForm& s, std::size_t k);

struct SpectralData {
  std::vector<cplx> eigenvalues;
  /// max ||A v - lambda v|| / ||A||_F over unit eigenvectors from the Schur form.
  double residual = 0.0;
  /// Minimum pairwise eigenvalue distance (diagnostic for cluster counting).
  double min_gap = 0.0;
};

SpectralData eigenvalues(const CMatrix& a, const SolverOptions& opts = {});

// ---------------------------------------------------------------------------
// Structural predicates

/// ||AA^* - A^*A||_F / max(1, ||A||_F^2).
double normality_residual(const CMatrix& a);

/// True iff normality_residual(a) <= tol.
bool is_normal(const CMatrix& a, double tol = 1e-10);

/// Single-linkage clusters of eigenvalues at threshold tol * (1 + spread).
/// Returns the cluster index of each eigenvalue (clusters numbered by first
/// appearance).
std::vector<std::size_t> eigenvalue_clusters(const std::vector<cplx>& ev, double tol);

std::size_t distinct_eigenvalue_count(const SpectralData& s, double tol = 1e-8);

/// True iff every eigenvalue lies within tol * spread of the line through the
/// two most separated eigenvalues. Vacuously true with <= 2 distinct values.
bool eigenvalues_collinear(const SpectralData& s, double tol = 1e-8);

double eigenvalue_spread(const std::vector<cplx>& ev);

}  // namespace lieps
