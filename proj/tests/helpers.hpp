#pragma once

#include <random>

#include "stabrad/system.hpp"

namespace testutil {

using stabrad::cd;
using stabrad::Matrix;

inline Matrix stephen1_A() { return Matrix(2, 2, {-1.0, 1.0, -1.0, -1.0}); }
inline Matrix stephen2_A() { return Matrix(2, 2, {4.5, -2.5, 12.5, -6.5}); }

inline stabrad::LtiSystem stephen1() {
    return stabrad::LtiSystem::unstructured(stephen1_A(), stabrad::NormSpec::l1());
}
inline stabrad::LtiSystem stephen2() {
    return stabrad::LtiSystem::unstructured(stephen2_A(), stabrad::NormSpec::l2());
}

inline Matrix basis_col(int n, int j) {
    Matrix v(n, 1);
    v(j, 0) = 1.0;
    return v;
}

inline Matrix random_matrix(int rows, int cols, std::mt19937& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = cd(g(rng), g(rng));
    return m;
}

// Random matrix with spectral abscissa pushed below -margin by a
// diagonal shift (keeps the test systems comfortably stable).
inline Matrix random_stable(int n, std::mt19937& rng, double margin = 0.5) {
    Matrix m = random_matrix(n, n, rng);
    double shift = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::abs(m(i, j));
        shift = std::max(shift, row);
    }
    for (int i = 0; i < n; ++i) m(i, i) = m(i, i) - cd(shift + margin);
    return m;
}

// Independent spectral-norm oracle: power iteration on M^H M.
inline double power_iteration_2norm(const Matrix& M, int iters = 2000) {
    Matrix G = M.adjoint() * M;
    int n = G.rows();
    std::vector<cd> x(n, cd(1.0, 0.37));
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        std::vector<cd> y(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) y[i] += G(i, j) * x[j];
        double norm = 0.0;
        for (cd v : y) norm += std::norm(v);
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        lambda = norm;
        for (int i = 0; i < n; ++i) x[i] = y[i] / norm;
    }
    return std::sqrt(lambda);
}

}  // namespace testutil
