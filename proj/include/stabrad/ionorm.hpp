#pragma once

#include <string>
#include <vector>

#include "stabrad/system.hpp"
#include "stabrad/transfer.hpp"

namespace stabrad {

enum class IoNormMode { exact_l1, exact_l2, lower_bound_search };

struct IoNormEstimate {
    double p = 2.0;  // time-index exponent
    double value = 0.0;
    IoNormMode mode = IoNormMode::lower_bound_search;
    std::string witness;  // human-readable description of the attaining input
    bool one_sided() const { return mode == IoNormMode::lower_bound_search; }
};

// Gaussian-windowed trigonometric polynomial input profile in frequency.
struct TestFunction {
    double center = 0.0;
    double width = 1.0;  // Gaussian sigma, > 0
    std::vector<cd> comb;  // amplitudes on frequencies center + j*width, j centered
    Matrix direction;      // unit element of U
};

// ||L|| on L^1: sup over extreme inputs of the integral of ||C e^{tA} B u0||_Y.
// Exact (two-sided within quadrature tolerance) when the input space
// carries l1; otherwise downgraded to a sphere-search lower bound.
IoNormEstimate io_norm_l1(const LtiSystem& sys, double tol = 1e-9);

// ||L|| on L^2 with Hilbert U, Y: the imaginary-axis transfer supremum.
IoNormEstimate io_norm_l2_hilbert(const LtiSystem& sys, double tol = 1e-7);

// Lower bound on ||L|| for L^p by maximizing the Fourier-multiplier ratio
// over Gaussian-windowed trigonometric test inputs.
IoNormEstimate multiplier_lower_bound(const LtiSystem& sys, double p, int budget = 24,
                                      unsigned seed = 12345);

// Norm of the periodic multiplier (S_xi): exact lattice supremum for
// p = 2 Hilbert, trigonometric-polynomial lower bound otherwise.
IoNormEstimate periodic_multiplier_norm(const LtiSystem& sys, double xi, double p,
                                        int budget = 400);

// The multiplier ratio of one concrete test function; exposed for tests.
double multiplier_ratio(const LtiSystem& sys, double p, const TestFunction& tf);

// Integral over [0, inf) of ||C e^{tA} B u0||_Y, with kinks of the
// integrand registered automatically for l1 / linf output norms.
double state_response_integral(const LtiSystem& sys, const Matrix& u0, double tol = 1e-9);

}  // namespace stabrad
