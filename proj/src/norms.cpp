#include "stabrad/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "stabrad/eig.hpp"

namespace stabrad {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Top eigenvector of the Hermitian matrix G by inverse iteration at a
// slightly displaced copy of the largest eigenvalue.
Matrix top_eigvec_hermitian(const Matrix& G, double lambda_max) {
    const int n = G.rows();
    Matrix x(n, 1);
    for (int i = 0; i < n; ++i) x(i, 0) = cd(1.0 + 0.01 * i, 0.003 * i);
    double shift_bump = 1e-10 * std::max(lambda_max, 1.0);
    for (int attempt = 0; attempt < 4; ++attempt) {
        Matrix shifted = G - Matrix::identity(n) * cd(lambda_max + shift_bump);
        try {
            for (int it = 0; it < 3; ++it) {
                x = lu_solve(shifted, x);
                double nx = x.frob();
                if (nx == 0.0 || !x.all_finite()) throw numerical_error("inverse iteration blew up");
                x = x * cd(1.0 / nx);
            }
            return x;
        } catch (const numerical_error&) {
            shift_bump *= 100.0;
        }
    }
    return x;
}

Matrix normalize(const Matrix& x, double p) {
    double nx = vec_pnorm(x, p);
    if (nx == 0.0) throw numerical_error("cannot normalize zero vector");
    return x * cd(1.0 / nx);
}

// Ascent direction for f(x) = ||Mx||_q at x (Wirtinger gradient wrt conj x).
Matrix ascent_direction(const Matrix& M, const Matrix& x, double q) {
    Matrix y = M * x;
    const int k = y.rows();
    Matrix w(k, 1);
    if (q == kInf) {
        int imax = 0;
        double best = 0.0;
        for (int i = 0; i < k; ++i)
            if (std::abs(y(i, 0)) > best) { best = std::abs(y(i, 0)); imax = i; }
        w(imax, 0) = (best > 0.0) ? y(imax, 0) / best : cd(1.0);
    } else {
        for (int i = 0; i < k; ++i) {
            double a = std::abs(y(i, 0));
            if (a > 0.0) w(i, 0) = std::pow(a, q - 2.0) * y(i, 0);
        }
    }
    return M.adjoint() * w;
}

InducedNorm sphere_search(const Matrix& M, NormSpec domain, NormSpec codomain, unsigned seed) {
    const int m = M.cols();
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<Matrix> starts;
    for (int j = 0; j < m; ++j) {
        Matrix e(m, 1);
        e(j, 0) = 1.0;
        starts.push_back(e);
    }
    while (static_cast<int>(starts.size()) < std::max(16, m + 4)) {
        Matrix r(m, 1);
        for (int i = 0; i < m; ++i) r(i, 0) = cd(gauss(rng), gauss(rng));
        if (r.frob() == 0.0) continue;
        starts.push_back(normalize(r, domain.p));
    }

    InducedNorm best;
    best.exact = false;
    best.witness = starts.front();
    for (const Matrix& s0 : starts) {
        Matrix x = normalize(s0, domain.p);
        double f = vec_pnorm(M * x, codomain.p);
        double step = 0.5;
        for (int it = 0; it < 120 && step > 1e-12; ++it) {
            Matrix g = ascent_direction(M, x, codomain.p);
            double gn = g.frob();
            if (gn == 0.0) break;
            Matrix cand = normalize(x + g * cd(step / gn), domain.p);
            double fc = vec_pnorm(M * cand, codomain.p);
            if (fc > f) {
                x = cand;
                f = fc;
            } else {
                step *= 0.5;
            }
        }
        if (f > best.value) {
            best.value = f;
            best.witness = x;
        }
    }
    return best;
}

}  // namespace

std::string NormSpec::label() const {
    if (p == 1.0) return "l1";
    if (p == 2.0) return "l2";
    if (p == kInf) return "linf";
    return "lp(" + std::to_string(p) + ")";
}

InducedNorm induced_pnorm_full(const Matrix& M, NormSpec domain, NormSpec codomain,
                               unsigned seed) {
    if (M.empty()) throw std::invalid_argument("induced_pnorm: empty matrix");
    domain.validate();
    codomain.validate();

    InducedNorm r;
    if (domain.p == codomain.p && domain.p == 1.0) {
        int jmax = 0;
        for (int j = 0; j < M.cols(); ++j)
            if (vec_pnorm(M.column(j), 1.0) > vec_pnorm(M.column(jmax), 1.0)) jmax = j;
        r.value = M.colsum_norm();
        r.witness = Matrix(M.cols(), 1);
        r.witness(jmax, 0) = 1.0;
        return r;
    }
    if (domain.p == codomain.p && domain.p == kInf) {
        int imax = 0;
        double best = 0.0;
        for (int i = 0; i < M.rows(); ++i) {
            double s = 0.0;
            for (int j = 0; j < M.cols(); ++j) s += std::abs(M(i, j));
            if (s > best) { best = s; imax = i; }
        }
        r.value = best;
        // Phase-aligned unimodular witness attains the max row sum.
        r.witness = Matrix(M.cols(), 1);
        for (int j = 0; j < M.cols(); ++j) {
            cd a = M(imax, j);
            r.witness(j, 0) = (std::abs(a) > 0.0) ? std::conj(a) / std::abs(a) : cd(1.0);
        }
        return r;
    }
    if (domain.p == codomain.p && domain.p == 2.0) {
        Matrix g = M.adjoint() * M;
        double lmax = 0.0;
        for (cd l : eigenvalues(g)) lmax = std::max(lmax, l.real());
        lmax = std::max(lmax, 0.0);
        r.value = std::sqrt(lmax);
        r.witness = (r.value > 0.0) ? top_eigvec_hermitian(g, lmax) : Matrix(M.cols(), 1);
        if (r.value == 0.0) r.witness(0, 0) = 1.0;
        return r;
    }
    return sphere_search(M, domain, codomain, seed);
}

double induced_pnorm(const Matrix& M, NormSpec domain, NormSpec codomain) {
    return induced_pnorm_full(M, domain, codomain).value;
}

}  // namespace stabrad
