#include "stabrad/eig.hpp"

#include <algorithm>
#include <cmath>

namespace stabrad {

namespace {

// In-place Householder reduction to upper Hessenberg form.
void hessenberg(Matrix& h) {
    const int n = h.rows();
    for (int k = 0; k < n - 2; ++k) {
        // Householder vector annihilating h(k+2..n-1, k).
        double scale = 0.0;
        for (int i = k + 1; i < n; ++i) scale += std::norm(h(i, k));
        scale = std::sqrt(scale);
        if (scale == 0.0) continue;
        cd x0 = h(k + 1, k);
        cd alpha = (std::abs(x0) > 0.0) ? -(x0 / std::abs(x0)) * scale : cd(-scale);
        std::vector<cd> v(n, 0.0);
        v[k + 1] = x0 - alpha;
        for (int i = k + 2; i < n; ++i) v[i] = h(i, k);
        double vn2 = 0.0;
        for (int i = k + 1; i < n; ++i) vn2 += std::norm(v[i]);
        if (vn2 == 0.0) continue;
        // H = I - 2 v v* / (v* v);  apply H from left and right.
        for (int j = 0; j < n; ++j) {
            cd s = 0.0;
            for (int i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
            s *= 2.0 / vn2;
            for (int i = k + 1; i < n; ++i) h(i, j) -= s * v[i];
        }
        for (int i = 0; i < n; ++i) {
            cd s = 0.0;
            for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j];
            s *= 2.0 / vn2;
            for (int j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
        }
        for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
        h(k + 1, k) = alpha;
    }
}

// Wilkinson shift from the trailing 2x2 block ending at index m.
cd wilkinson_shift(const Matrix& h, int m) {
    cd a = h(m - 1, m - 1), b = h(m - 1, m), c = h(m, m - 1), d = h(m, m);
    cd tr = a + d;
    cd disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
    cd l1 = (tr + disc) / 2.0, l2 = (tr - disc) / 2.0;
    return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

struct Givens {
    cd c;
    cd s;
};

// Rotation zeroing b in (a; b): [conj(c) conj(s); -s c]^* ... applied as
//   [ c        s ] [a]   [r]
//   [-conj(s)  c̄'] [b] = [0]
Givens make_givens(cd a, cd b) {
    double nb = std::abs(b);
    if (nb == 0.0) return {cd(1.0), cd(0.0)};
    double na = std::abs(a);
    double r = std::hypot(na, nb);
    cd s = (na == 0.0) ? std::conj(b) / nb : (a / na) * std::conj(b) / r;
    return {cd(na / r), s};
}

}  // namespace

std::vector<cd> eigenvalues(const Matrix& M) {
    if (!M.is_square()) throw std::invalid_argument("eigenvalues: non-square input");
    const int n = M.rows();
    if (n > kEigDimCap) throw std::invalid_argument("eigenvalues: dimension above cap");
    if (!M.all_finite()) throw std::invalid_argument("eigenvalues: non-finite entries");

    Matrix h = M;
    if (n == 1) return {h(0, 0)};
    hessenberg(h);

    std::vector<cd> evs;
    evs.reserve(n);
    const double anorm = std::max(M.max_abs(), 1e-300);
    int m = n - 1;  // active block is rows 0..m
    int total_iters = 0;
    const int iter_cap = 80 * n;
    while (m >= 0) {
        if (m == 0) {
            evs.push_back(h(0, 0));
            --m;
            continue;
        }
        // Deflation scan.
        int l = m;
        while (l > 0) {
            double off = std::abs(h(l, l - 1));
            double diag = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (off <= 1e-15 * std::max(diag, anorm)) {
                h(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == m) {
            evs.push_back(h(m, m));
            --m;
            continue;
        }
        if (++total_iters > iter_cap)
            throw numerical_error("eigenvalues: QR iteration did not converge");
        // Exceptional shift every 12 sweeps on the same block.
        cd mu;
        if (total_iters % 12 == 0)
            mu = h(m, m) + std::abs(h(m, m - 1));
        else
            mu = wilkinson_shift(h, m);
        // Implicit single-shift Francis sweep on block l..m.
        for (int k = l; k < m; ++k) {
            cd x = (k == l) ? h(l, l) - mu : h(k, k - 1);
            cd y = (k == l) ? h(l + 1, l) : h(k + 1, k - 1);
            Givens g = make_givens(x, y);
            // Left rotation on rows k, k+1; annihilates the bulge at (k+1, k-1).
            int jstart = std::max(l, k - 1);
            for (int j = jstart; j <= m; ++j) {
                cd t1 = h(k, j), t2 = h(k + 1, j);
                h(k, j) = g.c * t1 + g.s * t2;
                h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
            }
            if (k > l) h(k + 1, k - 1) = 0.0;
            // Right rotation on columns k, k+1; creates the bulge at (k+2, k).
            int iend = std::min(k + 2, m);
            for (int i = l; i <= iend; ++i) {
                cd t1 = h(i, k), t2 = h(i, k + 1);
                h(i, k) = t1 * std::conj(g.c) + t2 * std::conj(g.s);
                h(i, k + 1) = -t1 * g.s + t2 * g.c;
            }
        }
    }
    return evs;
}

double spectral_abscissa(const Matrix& M) {
    double s = -std::numeric_limits<double>::infinity();
    for (cd l : eigenvalues(M)) s = std::max(s, l.real());
    return s;
}

}  // namespace stabrad
