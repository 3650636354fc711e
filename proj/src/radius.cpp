#include "stabrad/radius.hpp"

#include <algorithm>
#include <cmath>

#include "stabrad/eig.hpp"
#include "stabrad/expm.hpp"
#include "stabrad/quad.hpp"

namespace stabrad {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Unit-norm dual element attaining <y*, h> = ||h||_Y.
Matrix norming_functional(const Matrix& h, NormSpec norm_y) {
    const int k = h.rows();
    Matrix y(1, k);
    double nh = vec_pnorm(h, norm_y.p);
    if (nh == 0.0) throw numerical_error("norming functional of zero vector");
    if (norm_y.p == 1.0) {
        // Sign-pattern functional in l_inf.
        for (int i = 0; i < k; ++i) {
            cd a = h(i, 0);
            y(0, i) = (std::abs(a) > 0.0) ? std::conj(a) / std::abs(a) : cd(0.0);
        }
        return y;
    }
    if (norm_y.p == kInf) {
        // Extreme-coordinate functional in l1.
        int imax = 0;
        for (int i = 1; i < k; ++i)
            if (std::abs(h(i, 0)) > std::abs(h(imax, 0))) imax = i;
        y(0, imax) = std::conj(h(imax, 0)) / std::abs(h(imax, 0));
        return y;
    }
    if (norm_y.p == 2.0) {
        for (int i = 0; i < k; ++i) y(0, i) = std::conj(h(i, 0)) / nh;
        return y;
    }
    // Dual-exponent power functional for general p.
    for (int i = 0; i < k; ++i) {
        double a = std::abs(h(i, 0));
        y(0, i) = (a > 0.0) ? std::conj(h(i, 0)) * std::pow(a, norm_y.p - 2.0) : cd(0.0);
    }
    return y * cd(1.0 / std::pow(nh, norm_y.p - 1.0));
}

}  // namespace

RadiusReport radius_bounds(const LtiSystem& sys, double p, double tol) {
    sys.validate();
    if (!spectral_summary(sys.A).exponentially_stable)
        throw std::invalid_argument("system is not exponentially stable");
    RadiusReport rep;
    IoNormEstimate io;
    if (p == 1.0) {
        io = io_norm_l1(sys);
    } else if (p == 2.0 && sys.norm_U.p == 2.0 && sys.norm_Y.p == 2.0) {
        io = io_norm_l2_hilbert(sys, tol);
    } else {
        io = multiplier_lower_bound(sys, p);
    }
    rep.io_norm = io.value;
    rep.lower_one_sided = io.one_sided();
    rep.lower = (io.value > 0.0) ? 1.0 / io.value : kInf;
    FrequencySupremum sup = sup_transfer_real_axis(sys, tol);
    rep.upper = (sup.value > 0.0) ? 1.0 / sup.value : kInf;
    rep.witness_frequency = sup.argmax;
    // Bounded generator: the upper bound is the exact constant radius.
    rep.exact = rep.upper;
    rep.gap_strict = rep.upper - rep.lower > 2.0 * tol + 1e-9;
    return rep;
}

Perturbation destabilizing_perturbation(const LtiSystem& sys, double s_star) {
    sys.validate();
    Matrix h_mat = transfer_eval(sys, cd(0.0, s_star));
    InducedNorm in = induced_pnorm_full(h_mat, sys.norm_U, sys.norm_Y);
    if (in.value <= 0.0) throw numerical_error("zero transfer at s*");
    Perturbation pert;
    pert.frequency = s_star;
    pert.u_bar = in.witness;
    Matrix h = h_mat * pert.u_bar;
    double nh = vec_pnorm(h, sys.norm_Y.p);
    pert.y_star = norming_functional(h, sys.norm_Y);
    // Delta y = -<y*, y> u_bar / ||h||.
    pert.delta = (pert.u_bar * pert.y_star) * cd(-1.0 / nh);
    pert.norm = 1.0 / nh;
    return pert;
}

std::pair<double, double> pointwise_radius_bounds(const LtiSystem& sys, double xi, double p,
                                                  int budget) {
    sys.validate();
    IoNormEstimate per = periodic_multiplier_norm(sys, xi, p, budget);
    FrequencySupremum lattice = sup_transfer_integers(sys, xi, 1e-9);
    double lower = (per.value > 0.0) ? 1.0 / per.value : kInf;
    double upper = (lattice.value > 0.0) ? 1.0 / lattice.value : kInf;
    return {lower, upper};
}

DichotomyRadius dichotomy_radius(const LtiSystem& sys, double p, int xi_grid) {
    sys.validate();
    (void)p;
    if (!spectral_summary(sys.A).hyperbolic)
        throw std::invalid_argument("dichotomy radius requires a hyperbolic system");
    auto upper_at = [&](double xi) {
        double v = sup_transfer_integers(sys, xi, 1e-9).value;
        return (v > 0.0) ? 1.0 / v : kInf;
    };
    // xi -> lattice sup is piecewise smooth with kinks where the argmax k
    // jumps; grid scan then golden refinement on the bracketing cell.
    double best = kInf, best_xi = 0.0;
    std::vector<double> vals(xi_grid + 1);
    for (int i = 0; i <= xi_grid; ++i) {
        double xi = static_cast<double>(i) / xi_grid;
        vals[i] = upper_at(xi);
        if (vals[i] < best) {
            best = vals[i];
            best_xi = xi;
        }
    }
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::max(0.0, best_xi - 1.0 / xi_grid);
    double b = std::min(1.0, best_xi + 1.0 / xi_grid);
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = upper_at(x1), f2 = upper_at(x2);
    while (b - a > 1e-10) {
        if (f1 > f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = upper_at(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = upper_at(x1);
        }
    }
    double xm = 0.5 * (a + b), fm = upper_at(xm);
    if (fm < best) {
        best = fm;
        best_xi = xm;
    }
    return {best, best_xi};
}

GrowthScan growth_bound_scan(const LtiSystem& sys, const std::vector<double>& alphas) {
    sys.validate();
    if (!std::is_sorted(alphas.begin(), alphas.end()))
        throw std::invalid_argument("growth_bound_scan: alpha list must be sorted ascending");
    GrowthScan gs;
    gs.omega0 = spectral_summary(sys.A).abscissa;
    for (double alpha : alphas) {
        Matrix a_shift = sys.A - Matrix::identity(sys.n()) * cd(alpha);
        // Probe 1: resolvent finite on a frequency grid.
        bool resolvent_ok = true;
        for (int i = -16; i <= 16; ++i) {
            double s = i * 0.5;
            try {
                (void)resolvent_apply(a_shift, cd(0.0, s), Matrix::identity(sys.n()));
            } catch (const numerical_error&) {
                resolvent_ok = false;
                break;
            }
        }
        // Probe 2: the transient integral saturates under horizon doubling.
        bool saturates = false;
        if (resolvent_ok) {
            auto f = [&](double t) {
                return induced_pnorm(expm(a_shift, t), NormSpec::l2(), NormSpec::l2());
            };
            auto segment = [&](double a, double b) {
                // Composite Simpson probe; precision is not the point here.
                const int steps = 64;
                double h = (b - a) / steps;
                double s = f(a) + f(b);
                for (int i = 1; i < steps; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
                return s * h / 3.0;
            };
            double T = 8.0;
            double total = segment(0.0, T);
            for (int d = 0; d < 9; ++d) {
                double inc = segment(T, 2.0 * T);
                T *= 2.0;
                if (inc < 1e-6 * std::max(total, 1e-12)) {
                    saturates = true;
                    break;
                }
                if (inc > 10.0 * total) break;  // clearly growing
                total += inc;
            }
        }
        bool finite = resolvent_ok && saturates;
        gs.scan.push_back({alpha, finite});
        bool expected = alpha > gs.omega0 + 1e-12;
        if (finite != expected) gs.consistent = false;
    }
    return gs;
}

}  // namespace stabrad
