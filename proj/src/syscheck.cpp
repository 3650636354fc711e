#include "stabrad/syscheck.hpp"

#include <algorithm>
#include <cmath>

#include "stabrad/eig.hpp"
#include "stabrad/transfer.hpp"

namespace stabrad {

namespace {

// Horizontal concatenation [M | N].
Matrix hcat(const Matrix& M, const Matrix& N) {
    Matrix r(M.rows(), M.cols() + N.cols());
    for (int i = 0; i < M.rows(); ++i) {
        for (int j = 0; j < M.cols(); ++j) r(i, j) = M(i, j);
        for (int j = 0; j < N.cols(); ++j) r(i, M.cols() + j) = N(i, j);
    }
    return r;
}

Matrix vcat(const Matrix& M, const Matrix& N) {
    Matrix r(M.rows() + N.rows(), M.cols());
    for (int j = 0; j < M.cols(); ++j) {
        for (int i = 0; i < M.rows(); ++i) r(i, j) = M(i, j);
        for (int i = 0; i < N.rows(); ++i) r(M.rows() + i, j) = N(i, j);
    }
    return r;
}

bool full_row_rank(const Matrix& M, double scale) {
    return smallest_singular_value(M) > 1e-10 * std::max(scale, 1.0);
}

bool mode_reachable(const LtiSystem& sys, cd lambda) {
    Matrix shifted = sys.A - Matrix::identity(sys.n()) * lambda;
    return full_row_rank(hcat(shifted, sys.B), sys.A.max_abs());
}

bool mode_observable(const LtiSystem& sys, cd lambda) {
    Matrix shifted = sys.A - Matrix::identity(sys.n()) * lambda;
    Matrix stacked = vcat(shifted, sys.C);
    // rank of the stacked matrix = rank of its adjoint's rows.
    return smallest_singular_value(stacked) > 1e-10 * std::max(sys.A.max_abs(), 1.0);
}

}  // namespace

bool hautus_stabilizable(const LtiSystem& sys) {
    sys.validate();
    for (cd l : eigenvalues(sys.A))
        if (l.real() >= 0.0 && !mode_reachable(sys, l)) return false;
    return true;
}

bool hautus_detectable(const LtiSystem& sys) {
    sys.validate();
    for (cd l : eigenvalues(sys.A))
        if (l.real() >= 0.0 && !mode_observable(sys, l)) return false;
    return true;
}

StabilityVerdict internal_external_check(const LtiSystem& sys, double p) {
    sys.validate();
    (void)p;
    StabilityVerdict v;
    auto evs = eigenvalues(sys.A);
    double abscissa = -std::numeric_limits<double>::infinity();
    for (cd l : evs) abscissa = std::max(abscissa, l.real());
    v.internal = abscissa < 0.0;
    v.stabilizable = hautus_stabilizable(sys);
    v.detectable = hautus_detectable(sys);

    // At finite dimension boundedness of H on C_+ is decided spectrally:
    // a closed-right-half-plane pole that is both reachable and observable
    // forces an unbounded input-output map.
    bool bad_pole = false;
    for (cd l : evs)
        if (l.real() >= 0.0 && mode_reachable(sys, l) && mode_observable(sys, l))
            bad_pole = true;
    v.io_bounded = !bad_pole;

    bool rhp_clear = true;
    for (cd l : evs)
        if (l.real() >= -1e-12) rhp_clear = false;
    v.externally_bounded = rhp_clear && v.io_bounded;

    v.consistent = (v.internal == (v.stabilizable && v.detectable && v.io_bounded));
    return v;
}

}  // namespace stabrad
