#include "stabrad/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stabrad/matrix.hpp"

namespace stabrad {

namespace {

// Golden-section refinement of a bracketed maximum on [a, b].
LineMaximum golden(const std::function<double(double)>& g, double a, double b, double xtol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = g(x1);
        }
    }
    return (f1 > f2) ? LineMaximum{x1, f1} : LineMaximum{x2, f2};
}

}  // namespace

LineMaximum maximize_on_line(const std::function<double(double)>& g, double half_width,
                             const std::function<double(double)>& envelope, double lipschitz,
                             double tol) {
    if (!(half_width > 0.0)) throw std::invalid_argument("maximize_on_line: bad window");
    const double lips = std::max(lipschitz, 1e-6);

    // Seed grid, then Lipschitz branch-and-bound: a cell [a, b] can beat the
    // incumbent only if max(f(a), f(b)) + L (b - a) / 2 exceeds it, so cells
    // away from the maximum are discarded without further samples.
    struct Cell {
        double a, b, fa, fb;
    };
    const int n0 = 1024;
    std::vector<double> xs(n0 + 1), fs(n0 + 1);
    for (int i = 0; i <= n0; ++i) {
        xs[i] = -half_width + 2.0 * half_width * i / n0;
        fs[i] = g(xs[i]);
    }
    int imax = static_cast<int>(std::max_element(fs.begin(), fs.end()) - fs.begin());
    LineMaximum out{xs[imax], fs[imax]};
    if (envelope && envelope(half_width) > out.value)
        throw numerical_error("maximize_on_line: envelope never dominated, cannot truncate");

    // Bisect down to a moderate localization width; close to a smooth peak
    // the Lipschitz bound is far too pessimistic, so the last digits come
    // from the golden polish below rather than from ever-finer cells.
    const double min_width = std::max(tol / lips, 1e-4);
    std::vector<Cell> stack;
    stack.reserve(4 * n0);
    for (int i = 0; i < n0; ++i) stack.push_back({xs[i], xs[i + 1], fs[i], fs[i + 1]});
    while (!stack.empty()) {
        Cell c = stack.back();
        stack.pop_back();
        double w = c.b - c.a;
        double ub = std::max(c.fa, c.fb) + 0.5 * lips * w;
        if (ub <= out.value + 0.25 * tol) continue;
        if (w <= min_width) continue;
        double m = 0.5 * (c.a + c.b);
        double fm = g(m);
        if (fm > out.value) out = {m, fm};
        stack.push_back({c.a, m, c.fa, fm});
        stack.push_back({m, c.b, fm, c.fb});
    }
    // Polish around the winner; the scan above localized the maximizer to
    // within one cell width on either side.
    double d = std::max(min_width, 2.0 * half_width / n0);
    double a = std::max(-half_width, out.arg - d);
    double b = std::min(half_width, out.arg + d);
    LineMaximum r = golden(g, a, b, 1e-10 * std::max(1.0, half_width));
    if (r.value > out.value) out = r;
    return out;
}

}  // namespace stabrad
