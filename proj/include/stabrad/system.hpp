#pragma once

#include "stabrad/matrix.hpp"
#include "stabrad/norms.hpp"

namespace stabrad {

// Autonomous system x' = Ax + Bu, y = Cx with lp norms on the state,
// input, and output spaces.
struct LtiSystem {
    Matrix A;  // n x n
    Matrix B;  // n x m
    Matrix C;  // k x n
    NormSpec norm_X = NormSpec::l2();
    NormSpec norm_U = NormSpec::l2();
    NormSpec norm_Y = NormSpec::l2();

    void validate() const {
        if (!A.is_square()) throw std::invalid_argument("LtiSystem: A not square");
        if (B.rows() != A.rows()) throw std::invalid_argument("LtiSystem: B row mismatch");
        if (C.cols() != A.cols()) throw std::invalid_argument("LtiSystem: C column mismatch");
        if (!A.all_finite() || !B.all_finite() || !C.all_finite())
            throw std::invalid_argument("LtiSystem: non-finite entries");
        norm_X.validate();
        norm_U.validate();
        norm_Y.validate();
    }

    int n() const { return A.rows(); }
    int inputs() const { return B.cols(); }
    int outputs() const { return C.rows(); }

    // B = C = I with the given norms everywhere.
    static LtiSystem unstructured(const Matrix& A, NormSpec norm);
};

struct SpectralSummary {
    double abscissa = 0.0;          // s(A) = max Re(spectrum)
    bool exponentially_stable = false;  // s(A) < 0
    bool hyperbolic = false;        // no eigenvalue within `gap` of the imaginary axis
    double gap = 0.0;               // min |Re(lambda)| over the spectrum
    double growth_bound = 0.0;      // omega_0; equals s(A) at finite dimension
};

}  // namespace stabrad
