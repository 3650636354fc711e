#pragma once

#include <optional>
#include <vector>

#include "stabrad/ionorm.hpp"
#include "stabrad/system.hpp"
#include "stabrad/transfer.hpp"

namespace stabrad {

struct RadiusReport {
    double lower = 0.0;  // 1 / ||L||
    double upper = 0.0;  // 1 / sup_s ||H(is)||
    std::optional<double> exact;  // set for bounded (finite-dimensional) generators
    bool gap_strict = false;
    // True when the io-norm side was only a lower-bound search, so the
    // reported "lower" over-estimates the true lower bound.
    bool lower_one_sided = false;
    double witness_frequency = 0.0;  // argmax of the transfer supremum
    double io_norm = 0.0;
    std::vector<std::pair<double, double>> xi_scan;  // (xi, pointwise upper) when scanned
};

struct Perturbation {
    Matrix delta;      // m x k, maps Y -> U
    double norm = 0.0;  // induced (norm_Y -> norm_U) norm; equals 1/||H(is*) u||
    double frequency = 0.0;
    Matrix u_bar;   // unit input witness
    Matrix y_star;  // norming functional (row covector)
};

// Stability-radius bound chain: lower = 1/||L||, upper = exact = the
// reciprocal imaginary-axis transfer supremum.
RadiusReport radius_bounds(const LtiSystem& sys, double p, double tol = 1e-6);

// Rank-one destabilizer at frequency s*: Delta with norm 1/||C(A-is*)^{-1}B||
// making A - is* + B Delta C singular.
Perturbation destabilizing_perturbation(const LtiSystem& sys, double s_star);

// (1/S_xi lower bound, 1/lattice-sup upper bound) for the pointwise
// radius at shift xi.
std::pair<double, double> pointwise_radius_bounds(const LtiSystem& sys, double xi, double p,
                                                  int budget = 400);

struct DichotomyRadius {
    double value = 0.0;
    double minimizing_xi = 0.0;
};

// inf over xi in [0,1] of the pointwise upper bound (uniform grid +
// golden-section refinement); requires a hyperbolic system.
DichotomyRadius dichotomy_radius(const LtiSystem& sys, double p, int xi_grid = 64);

struct GrowthScanEntry {
    double alpha = 0.0;
    bool finite = false;
};

struct GrowthScan {
    double omega0 = 0.0;
    std::vector<GrowthScanEntry> scan;
    bool consistent = true;  // finite flag agrees with alpha > omega0 everywhere
};

// Growth bound plus a per-alpha finiteness probe of the shifted system.
GrowthScan growth_bound_scan(const LtiSystem& sys, const std::vector<double>& alphas);

}  // namespace stabrad
