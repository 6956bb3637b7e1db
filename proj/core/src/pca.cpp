#include "neuronav/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "neuronav/error.hpp"

namespace neuronav {

namespace {

constexpr double kOffDiagonalTol = 1e-12;
constexpr std::size_t kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition jacobi_eigen(const Matrix& symmetric) {
    const std::size_t n = symmetric.rows();
    if (symmetric.cols() != n) throw ContractError("jacobi_eigen: matrix is not square");
    Matrix a = symmetric;
    Matrix v = Matrix::identity(n);  // columns are eigenvectors

    double frob = 0.0;
    for (double x : a.data()) frob += x * x;
    const double tol = kOffDiagonalTol * std::max(1.0, std::sqrt(frob));

    EigenDecomposition out;
    while (out.sweeps < kMaxSweeps && off_diagonal_norm(a) >= tol) {
        ++out.sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t col = order[r];
        out.values[r] = a(col, col);
        std::size_t arg = 0;
        for (std::size_t k = 1; k < n; ++k)
            if (std::abs(v(k, col)) > std::abs(v(arg, col))) arg = k;
        const double sign = v(arg, col) < 0.0 ? -1.0 : 1.0;
        for (std::size_t k = 0; k < n; ++k) out.vectors(r, k) = sign * v(k, col);
    }
    return out;
}

PcaResult pca(const Matrix& x, std::size_t k) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    if (k == 0 || k > std::min(n, d)) throw ContractError("pca: k must be in [1, min(rows, cols)]");

    PcaResult out;
    out.mean.assign(d, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) out.mean[c] += x(r, c);
    for (auto& m : out.mean) m /= static_cast<double>(n);

    Matrix centered(n, d);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) centered(r, c) = x(r, c) - out.mean[c];

    Matrix cov(d, d);
    const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < n; ++r) s += centered(r, i) * centered(r, j);
            cov(i, j) = cov(j, i) = s / denom;
        }
    }

    const auto eig = jacobi_eigen(cov);
    out.all_eigenvalues = eig.values;
    out.eigenvalues.assign(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(k));
    out.components = Matrix(k, d);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < d; ++c) out.components(i, c) = eig.vectors(i, c);
    out.projected = centered * out.components.transpose();
    return out;
}

}  // namespace neuronav
