#include "neuronav/separation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "neuronav/error.hpp"

namespace neuronav {

namespace {

Matrix pairwise_distances(const Matrix& points) {
    const std::size_t n = points.rows();
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < points.cols(); ++c) {
                const double diff = points(i, c) - points(j, c);
                s += diff * diff;
            }
            d(i, j) = d(j, i) = std::sqrt(s);
        }
    }
    return d;
}

double score_from_distances(const Matrix& d, std::span<const int> labels) {
    const std::size_t n = d.rows();
    double within = 0.0, between = 0.0;
    std::size_t n_within = 0, n_between = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (labels[i] == labels[j]) {
                within += d(i, j);
                ++n_within;
            } else {
                between += d(i, j);
                ++n_between;
            }
        }
    }
    const double overall = (within + between) / static_cast<double>(n_within + n_between);
    if (overall == 0.0) return 0.0;
    return (between / static_cast<double>(n_between) - within / static_cast<double>(n_within)) / overall;
}

void check_labels(const Matrix& points, std::span<const int> labels) {
    if (labels.size() != points.rows()) throw ContractError("separation_score: one label per point required");
    std::map<int, std::size_t> sizes;
    for (int l : labels) ++sizes[l];
    if (sizes.size() < 2) throw ContractError("separation_score: need at least two communities");
    for (const auto& [_, count] : sizes)
        if (count < 2) throw ContractError("separation_score: each community needs at least two points");
}

}  // namespace

double separation_score(const Matrix& points, std::span<const int> labels) {
    check_labels(points, labels);
    return score_from_distances(pairwise_distances(points), labels);
}

PermutationTest permutation_test(const Matrix& points, std::span<const int> labels, std::size_t shuffles,
                                 Rng& rng) {
    check_labels(points, labels);
    const Matrix d = pairwise_distances(points);
    PermutationTest out;
    out.observed = score_from_distances(d, labels);
    std::vector<int> perm(labels.begin(), labels.end());
    std::size_t at_least = 0;
    out.null_scores.reserve(shuffles);
    for (std::size_t k = 0; k < shuffles; ++k) {
        for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_index(i + 1)]);
        const double s = score_from_distances(d, perm);
        out.null_scores.push_back(s);
        if (s >= out.observed) ++at_least;
    }
    if (!out.null_scores.empty()) {
        std::vector<double> sorted = out.null_scores;
        std::sort(sorted.begin(), sorted.end());
        const auto idx = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(sorted.size()))) - 1;
        out.percentile_95 = sorted[std::min(idx, sorted.size() - 1)];
    }
    out.p_value = static_cast<double>(at_least + 1) / static_cast<double>(shuffles + 1);
    return out;
}

}  // namespace neuronav
