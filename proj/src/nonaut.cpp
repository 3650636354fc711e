#include "stabrad/nonaut.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "stabrad/expm.hpp"

namespace stabrad {

EvolutionFamily::EvolutionFamily(Generator generator, int dim, double step)
    : gen_(std::move(generator)), dim_(dim), h_(step) {
    if (dim < 1) throw std::invalid_argument("EvolutionFamily: bad dimension");
    if (!(step > 0.0)) throw std::invalid_argument("EvolutionFamily: bad step");
}

const Matrix& EvolutionFamily::lattice_step(long k) const {
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    Matrix a = gen_((static_cast<double>(k) + 0.5) * h_);
    if (!a.all_finite() || !a.is_square() || a.rows() != dim_)
        throw numerical_error("EvolutionFamily: generator sample invalid");
    return cache_.emplace(k, expm(a, h_)).first->second;
}

Matrix EvolutionFamily::propagate(double t, double tau) const {
    if (t < tau) throw std::invalid_argument("propagate: t < tau");
    if (tau < 0.0) throw std::invalid_argument("propagate: tau < 0");
    Matrix u = Matrix::identity(dim_);
    if (t == tau) return u;
    long k0 = static_cast<long>(std::ceil(tau / h_ - 1e-12));
    long k1 = static_cast<long>(std::floor(t / h_ + 1e-12));
    if (k1 < k0) {
        // Both endpoints inside one lattice cell.
        return expm(gen_(0.5 * (t + tau)), t - tau);
    }
    double t0 = k0 * h_;
    if (t0 > tau + 1e-15 * (1.0 + tau))
        u = expm(gen_(0.5 * (tau + t0)), t0 - tau);
    for (long k = k0; k < k1; ++k) u = lattice_step(k) * u;
    double t1 = k1 * h_;
    if (t > t1 + 1e-15 * (1.0 + t)) u = expm(gen_(0.5 * (t1 + t)), t - t1) * u;
    return u;
}

EvolutionFamily EvolutionFamily::constant(const Matrix& A, double step) {
    if (!A.is_square()) throw std::invalid_argument("constant family: A not square");
    Matrix a = A;
    return EvolutionFamily([a](double) { return a; }, A.rows(), step);
}

EvolutionFamily EvolutionFamily::hale(double a, double step) {
    return EvolutionFamily(
        [a](double t) {
            double c = std::cos(t), s = std::sin(t);
            return Matrix(2, 2,
                          {cd(-1.0 + a * c * c), cd(1.0 - a * s * c),
                           cd(-1.0 - a * s * c), cd(-1.0 + a * s * s)});
        },
        2, step);
}

TimeVaryingSystem TimeVaryingSystem::unstructured(EvolutionFamily family, NormSpec norm) {
    int n = family.dim();
    Matrix id = Matrix::identity(n);
    return TimeVaryingSystem{std::move(family), [id](double) { return id; },
                             [id](double) { return id; }, norm, norm, norm};
}

DatkoResult datko_test(const TimeVaryingSystem& sys, double p, double horizon, unsigned seed) {
    if (!(horizon > 0.0)) throw std::invalid_argument("datko_test: horizon must be positive");
    if (!(p >= 1.0) || p == std::numeric_limits<double>::infinity())
        throw std::invalid_argument("datko_test: p must be in [1, inf)");
    const int n = sys.family.dim();
    const double h = sys.family.step();

    std::vector<Matrix> probes;
    for (int j = 0; j < n; ++j) {
        Matrix e(n, 1);
        e(j, 0) = 1.0;
        probes.push_back(e);
    }
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int r = 0; r < 3; ++r) {
        Matrix v(n, 1);
        for (int i = 0; i < n; ++i) v(i, 0) = cd(gauss(rng), gauss(rng));
        double nv = vec_pnorm(v, sys.norm_X.p);
        if (nv > 0.0) probes.push_back(v * cd(1.0 / nv));
    }
    std::vector<double> taus = {0.0, horizon / 4.0, horizon / 2.0};

    DatkoResult res;
    bool any_unstable = false, all_saturate = true;
    // Integration step: coarse multiple of the propagation lattice.
    const long stride = std::max(1L, static_cast<long>(std::llround(0.01 / h)));
    const double dt = stride * h;
    const long nsteps = static_cast<long>(std::ceil(horizon / dt));

    for (double tau : taus) {
        for (const Matrix& x : probes) {
            // March U(t, tau)x along the lattice, accumulating the integral
            // (trapezoid) and quarter-horizon increments.
            Matrix v = x;
            double t = tau;
            double integral = 0.0;
            double quarter[4] = {0.0, 0.0, 0.0, 0.0};
            std::vector<double> log_norms;
            std::vector<double> times;
            double f_prev = std::pow(vec_pnorm(v, sys.norm_X.p), p);
            for (long i = 1; i <= nsteps; ++i) {
                double t_next = tau + std::min(i * dt, horizon);
                v = sys.family.propagate(t_next, t) * v;
                t = t_next;
                double nv = vec_pnorm(v, sys.norm_X.p);
                double f = std::pow(nv, p);
                double piece = 0.5 * (f_prev + f) * dt;
                integral += piece;
                int q = std::min(3, static_cast<int>(4.0 * (t - tau) / horizon));
                quarter[q] += piece;
                f_prev = f;
                if (nv > 0.0 && i % 16 == 0) {
                    log_norms.push_back(std::log(nv));
                    times.push_back(t - tau);
                }
            }
            res.sup_integral = std::max(res.sup_integral, integral);
            // Least-squares growth exponent for this probe.
            double slope = 0.0;
            if (times.size() > 4) {
                double mt = 0.0, ml = 0.0;
                for (size_t i = 0; i < times.size(); ++i) {
                    mt += times[i];
                    ml += log_norms[i];
                }
                mt /= times.size();
                ml /= times.size();
                double num = 0.0, den = 0.0;
                for (size_t i = 0; i < times.size(); ++i) {
                    num += (times[i] - mt) * (log_norms[i] - ml);
                    den += (times[i] - mt) * (times[i] - mt);
                }
                slope = (den > 0.0) ? num / den : 0.0;
            }
            if (slope > res.growth_exponent) res.growth_exponent = slope;
            bool saturated = quarter[3] < 1e-6 * std::max(integral, 1e-300);
            bool growing = quarter[3] > 2.0 * quarter[0] && quarter[3] > 1e-12;
            if (!saturated) all_saturate = false;
            if (growing) any_unstable = true;
        }
    }
    res.verdict = any_unstable ? DatkoVerdict::unstable
                               : (all_saturate ? DatkoVerdict::stable : DatkoVerdict::inconclusive);
    return res;
}

EvolutionFamily perturbed_family(const TimeVaryingSystem& sys,
                                 const std::function<Matrix(double)>& delta) {
    auto gen = [sys, delta](double t) {
        Matrix d = delta(t);
        if (!d.all_finite()) throw numerical_error("perturbed_family: unbounded Delta sample");
        return sys.family.generator_at(t) + sys.B(t) * d * sys.C(t);
    };
    return EvolutionFamily(gen, sys.family.dim(), sys.family.step());
}

double mild_solution_residual(const TimeVaryingSystem& sys,
                              const std::function<Matrix(double)>& delta,
                              const EvolutionFamily& perturbed, double t, const Matrix& x) {
    // Trapezoid on the step lattice; the defect inherits the step order.
    const double h = sys.family.step();
    const long n = std::max(2L, static_cast<long>(std::llround(t / std::max(h, t / 4000.0))));
    Matrix acc = Matrix::zeros(sys.family.dim(), 1);
    for (long i = 0; i <= n; ++i) {
        double s = t * i / n;
        Matrix term = sys.family.propagate(t, s) *
                      (sys.B(s) * (delta(s) * (sys.C(s) * (perturbed.propagate(s, 0.0) * x))));
        double w = (i == 0 || i == n) ? 0.5 : 1.0;
        acc = acc + term * cd(w * t / n);
    }
    Matrix lhs = perturbed.propagate(t, 0.0) * x;
    Matrix rhs = sys.family.propagate(t, 0.0) * x + acc;
    return (lhs - rhs).frob() / std::max(1.0, lhs.frob());
}

Matrix nonaut_freq_response(const TimeVaryingSystem& sys, double omega, const Matrix& u0,
                            double t) {
    if (t < 0.0) throw std::invalid_argument("nonaut_freq_response: t < 0");
    const int ny = sys.C(0.0).rows();
    if (t == 0.0) return Matrix::zeros(ny, 1);
    const double h = sys.family.step();
    const long n = std::max(2L, static_cast<long>(std::llround(t / h)));
    const double dt = t / n;
    // Backward accumulation of U(t, tau_j): one short step per node.
    Matrix p = Matrix::identity(sys.family.dim());  // U(t, tau_j), starting at tau = t
    Matrix acc = Matrix::zeros(ny, 1);
    for (long j = n; j >= 0; --j) {
        double tau = j * dt;
        cd phase = std::exp(cd(0.0, -omega * (t - tau)));
        Matrix term = sys.C(t) * (p * (sys.B(tau) * u0)) * phase;
        double w = (j == 0 || j == n) ? 0.5 : 1.0;
        acc = acc + term * cd(w * dt);
        if (j > 0) p = p * sys.family.propagate(tau, tau - dt);
    }
    return acc;
}

std::pair<double, double> exponential_bound_fit(const EvolutionFamily& family, double horizon) {
    const int samples = 64;
    std::vector<double> ts, ls;
    Matrix u = Matrix::identity(family.dim());
    double prev_t = 0.0;
    for (int i = 1; i <= samples; ++i) {
        double t = horizon * i / samples;
        u = family.propagate(t, prev_t) * u;
        prev_t = t;
        double nu = induced_pnorm(u, NormSpec::l2(), NormSpec::l2());
        if (nu > 0.0) {
            ts.push_back(t);
            ls.push_back(std::log(nu));
        }
    }
    double mt = 0.0, ml = 0.0;
    for (size_t i = 0; i < ts.size(); ++i) {
        mt += ts[i];
        ml += ls[i];
    }
    mt /= ts.size();
    ml /= ts.size();
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < ts.size(); ++i) {
        num += (ts[i] - mt) * (ls[i] - ml);
        den += (ts[i] - mt) * (ts[i] - mt);
    }
    double omega = (den > 0.0) ? num / den : 0.0;
    double logM = ml - omega * mt;
    // Inflate M so the bound covers every sampled value.
    double bump = 0.0;
    for (size_t i = 0; i < ts.size(); ++i)
        bump = std::max(bump, ls[i] - (logM + omega * ts[i]));
    return {std::exp(logM + bump), omega};
}

}  // namespace stabrad
