#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "stabrad/norms.hpp"
#include "stabrad/system.hpp"

namespace stabrad {

// Two-parameter propagator of x' = A(t)x, built from a second-order
// commutator-free exponential midpoint scheme on a uniform step lattice.
// U(t,tau) = U(t,s)U(s,tau) on lattice points within step-order tolerance.
class EvolutionFamily {
  public:
    using Generator = std::function<Matrix(double)>;

    EvolutionFamily(Generator generator, int dim, double step = 1e-3);

    int dim() const { return dim_; }
    double step() const { return h_; }
    Matrix generator_at(double t) const { return gen_(t); }

    // U(t, tau) for t >= tau >= 0.
    Matrix propagate(double t, double tau) const;

    // Constant-generator family (autonomous embedding).
    static EvolutionFamily constant(const Matrix& A, double step = 1e-3);
    // The rotating 2x2 family with frozen spectrum independent of t:
    //   A(t) = [[-1 + a cos^2 t, 1 - a sin t cos t],
    //           [-1 - a sin t cos t, -1 + a sin^2 t]].
    static EvolutionFamily hale(double a, double step = 1e-3);

  private:
    // Full lattice step k -> exp(h A((k + 1/2) h)), cached.
    const Matrix& lattice_step(long k) const;

    Generator gen_;
    int dim_;
    double h_;
    mutable std::unordered_map<long, Matrix> cache_;
};

struct TimeVaryingSystem {
    EvolutionFamily family;
    std::function<Matrix(double)> B;
    std::function<Matrix(double)> C;
    NormSpec norm_X = NormSpec::l2();
    NormSpec norm_U = NormSpec::l2();
    NormSpec norm_Y = NormSpec::l2();

    static TimeVaryingSystem unstructured(EvolutionFamily family, NormSpec norm);
};

enum class DatkoVerdict { stable, unstable, inconclusive };

struct DatkoResult {
    double sup_integral = 0.0;
    DatkoVerdict verdict = DatkoVerdict::inconclusive;
    double growth_exponent = 0.0;  // least-squares slope of log ||U(t,0)x|| for the worst probe
};

// Finite-horizon Datko probe: sup over initial times and unit states of
// the integral of ||U(t,tau)x||^p.
DatkoResult datko_test(const TimeVaryingSystem& sys, double p, double horizon,
                       unsigned seed = 7);

// Family generated by A(t) + B(t) Delta(t) C(t).
EvolutionFamily perturbed_family(const TimeVaryingSystem& sys,
                                 const std::function<Matrix(double)>& delta);

// Residual of the mild-solution identity for the perturbed family:
//   U1(t,0)x  vs  U(t,0)x + integral of U(t,s)B(s)Delta(s)C(s)U1(s,0)x ds.
double mild_solution_residual(const TimeVaryingSystem& sys,
                              const std::function<Matrix(double)>& delta,
                              const EvolutionFamily& perturbed, double t, const Matrix& x);

// Frequency response: integral over [0, t] of
// C(t) U(t,tau) B(tau) u0 e^{-i omega (t - tau)}.
Matrix nonaut_freq_response(const TimeVaryingSystem& sys, double omega, const Matrix& u0,
                            double t);

// Least-squares (M, omega) fit of log ||U(t,0)|| over [0, horizon].
std::pair<double, double> exponential_bound_fit(const EvolutionFamily& family, double horizon);

}  // namespace stabrad
