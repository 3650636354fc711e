#include "stabrad/quad.hpp"

#include <algorithm>
#include <cmath>

namespace stabrad {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
const double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
const double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct GkResult {
    double kronrod;
    double err;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        double x = h * kXgk[j];
        double f1 = f(c - x);
        double f2 = f(c + x);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    return {resk * h, std::abs(resk - resg) * std::abs(h)};
}

double adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                int& budget) {
    GkResult r = gk15(f, a, b);
    if (r.err <= tol || budget <= 0) {
        --budget;
        return r.kronrod;
    }
    --budget;
    double m = 0.5 * (a + b);
    // Left panel first: deterministic accumulation order.
    double left = adaptive(f, a, m, 0.5 * tol, budget);
    double right = adaptive(f, m, b, 0.5 * tol, budget);
    return left + right;
}

}  // namespace

double DecayBound::horizon(double tol) const {
    if (rate <= 0.0) throw std::invalid_argument("DecayBound: decay rate must be positive");
    double t = std::log(std::max(2.0 * amplitude / (rate * tol), 2.0)) / rate;
    return std::max(t, 1.0);
}

double integrate_panel(const std::function<double(double)>& f, double a, double b, double tol,
                       int max_subdivisions) {
    if (!(b > a)) return 0.0;
    int budget = max_subdivisions;
    double v = adaptive(f, a, b, tol, budget);
    if (budget <= 0) throw numerical_error("integrate: tolerance not reached within budget");
    return v;
}

double integrate_decaying(const std::function<double(double)>& f, DecayBound decay,
                          const Quadrature& quad) {
    const double T = decay.horizon(quad.tolerance);
    std::vector<double> cuts = {0.0};
    for (double k : quad.kinks)
        if (k > 0.0 && k < T) cuts.push_back(k);
    cuts.push_back(T);
    std::sort(cuts.begin(), cuts.end());

    // When no kinks are supplied, break long panels so the adaptive rule
    // starts from a sane resolution.
    std::vector<double> panels;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / 4.0)));
        for (int j = 0; j < pieces; ++j) {
            panels.push_back(a + (b - a) * j / pieces);
        }
        panels.push_back(b);
    }
    panels.erase(std::unique(panels.begin(), panels.end()), panels.end());

    double sum = 0.0;
    double per_panel_tol = 0.5 * quad.tolerance / static_cast<double>(panels.size());
    for (size_t i = 0; i + 1 < panels.size(); ++i)
        sum += integrate_panel(f, panels[i], panels[i + 1], per_panel_tol,
                               quad.max_subdivisions);
    return sum;
}

}  // namespace stabrad
