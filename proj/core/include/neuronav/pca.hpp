#pragma once

#include <vector>

#include "neuronav/matrix.hpp"

namespace neuronav {

struct EigenDecomposition {
    std::vector<double> values;  // descending
    Matrix vectors;              // row i is the eigenvector for values[i]
    std::size_t sweeps = 0;
};

// Cyclic Jacobi rotations on a symmetric matrix until the off-diagonal
// Frobenius norm drops below 1e-12 (scaled by max(1, ||A||_F)) or 100 sweeps.
// Eigenvector signs are fixed so the largest-magnitude entry is positive.
EigenDecomposition jacobi_eigen(const Matrix& symmetric);

struct PcaResult {
    Matrix components;  // k x cols, orthonormal rows
    Matrix projected;   // rows x k, centered data in component coordinates
    std::vector<double> eigenvalues;  // top k, descending
    std::vector<double> all_eigenvalues;
    std::vector<double> mean;         // column means
};

// Throws ContractError unless 1 <= k <= min(rows, cols).
PcaResult pca(const Matrix& x, std::size_t k);

}  // namespace neuronav
