#pragma once

#include <limits>
#include <string>

#include "stabrad/matrix.hpp"

namespace stabrad {

// Which lp norm a space carries. p in [1, inf]; inf encoded as
// std::numeric_limits<double>::infinity().
struct NormSpec {
    double p = 2.0;

    static NormSpec l1() { return {1.0}; }
    static NormSpec l2() { return {2.0}; }
    static NormSpec linf() { return {std::numeric_limits<double>::infinity()}; }

    bool is_exact() const {
        return p == 1.0 || p == 2.0 || p == std::numeric_limits<double>::infinity();
    }
    void validate() const {
        if (!(p >= 1.0)) throw std::invalid_argument("NormSpec: p outside [1, inf]");
    }
    std::string label() const;
};

struct InducedNorm {
    double value = 0.0;
    // true when computed by a closed formula; false for the multi-start
    // ascent path, where value is a certified lower bound.
    bool exact = true;
    // A unit (domain-norm) vector x with ||Mx|| close to value.
    Matrix witness;
};

// ||M|| = sup { ||Mx||_codomain : ||x||_domain = 1 }.
// Exact when domain.p == codomain.p in {1, 2, inf}; otherwise multi-start
// projected ascent on the unit sphere (certified lower bound).
InducedNorm induced_pnorm_full(const Matrix& M, NormSpec domain, NormSpec codomain,
                               unsigned seed = 12345);

double induced_pnorm(const Matrix& M, NormSpec domain, NormSpec codomain);

// Convenience: ||M|| with the same p on both sides.
inline double induced_pnorm(const Matrix& M, double p) {
    return induced_pnorm(M, NormSpec{p}, NormSpec{p});
}

}  // namespace stabrad
