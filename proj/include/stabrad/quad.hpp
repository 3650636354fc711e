#pragma once

#include <functional>
#include <vector>

#include "stabrad/matrix.hpp"

namespace stabrad {

// Controls for the decaying-integrand quadrature on [0, inf).
struct Quadrature {
    double tolerance = 1e-10;
    // Interior points where the integrand is non-smooth; sorted ascending.
    std::vector<double> kinks;
    // Subdivision budget per kink-free panel.
    int max_subdivisions = 4000;
};

// Envelope |f(t)| <= amplitude * exp(-rate * t); picks the truncation
// horizon T with tail amplitude*exp(-rate*T)/rate <= tol/2.
struct DecayBound {
    double amplitude = 1.0;
    double rate = 1.0;
    double horizon(double tol) const;
};

// Adaptive Gauss-Kronrod (G7,K15) integral of f over [a, b].
double integrate_panel(const std::function<double(double)>& f, double a, double b, double tol,
                       int max_subdivisions = 4000);

// Integral of f over [0, inf) given the decay envelope; panels split at
// the registered kinks below the truncation horizon.
double integrate_decaying(const std::function<double(double)>& f, DecayBound decay,
                          const Quadrature& quad);

}  // namespace stabrad
