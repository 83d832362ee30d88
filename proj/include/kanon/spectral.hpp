#ifndef KANON_SPECTRAL_HPP
#define KANON_SPECTRAL_HPP

#include "kanon/graph.hpp"

#include <vector>

namespace kanon {

/// Eigenvalues ascending; vectors[j*n .. j*n+n) is the unit eigenvector for
/// values[j] (empty unless requested).
struct EigenDecomposition {
    int n = 0;
    std::vector<double> values;
    std::vector<double> vectors;
};

std::vector<double> adjacency_matrix(const Graph& g);
std::vector<double> laplacian_matrix(const Graph& g);

/// Cyclic Jacobi sweeps on a dense symmetric matrix (row-major, consumed).
EigenDecomposition jacobi_eigen(std::vector<double> a, int n, bool want_vectors);

/// Largest adjacency eigenvalue by shifted power iteration (sparse matvec).
double power_lambda_max_adjacency(const Graph& g);

/// Second-smallest Laplacian eigenvalue by power iteration on c*I - L with
/// the all-ones eigenvector deflated.
double power_lambda2_laplacian(const Graph& g);

/// Dense-path threshold: up to this many vertices the eigen metrics use the
/// full Jacobi decomposition, beyond it the power iterations.
inline constexpr int kDenseEigenLimit = 2000;

} // namespace kanon

#endif
