#pragma once

#include <span>

#include "neuronav/matrix.hpp"
#include "neuronav/rng.hpp"

namespace neuronav {

// (mean between-community distance - mean within-community distance) divided
// by the mean over all pairs, with Euclidean distances between rows.
// Requires >= 2 communities with >= 2 points each; identical points score 0.
double separation_score(const Matrix& points, std::span<const int> labels);

struct PermutationTest {
    double observed = 0.0;
    double percentile_95 = 0.0;
    double p_value = 0.0;  // fraction of shuffles scoring >= observed (with +1 correction)
    std::vector<double> null_scores;
};

// Shuffles labels `shuffles` times (Fisher-Yates with rng).
PermutationTest permutation_test(const Matrix& points, std::span<const int> labels, std::size_t shuffles,
                                 Rng& rng);

}  // namespace neuronav
