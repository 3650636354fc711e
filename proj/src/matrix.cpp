#include "stabrad/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "stabrad/eig.hpp"

namespace stabrad {

Matrix::Matrix(int rows, int cols, std::initializer_list<cd> entries) : Matrix(rows, cols) {
    if (static_cast<int>(entries.size()) != rows * cols)
        throw std::invalid_argument("Matrix: entry count mismatch");
    std::copy(entries.begin(), entries.end(), a_.begin());
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::zeros(int rows, int cols) { return Matrix(rows, cols); }

Matrix Matrix::col(std::initializer_list<cd> entries) {
    Matrix m(static_cast<int>(entries.size()), 1);
    int i = 0;
    for (cd e : entries) m(i++, 0) = e;
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in +");
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in -");
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch in *");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            cd aik = (*this)(i, k);
            if (aik == cd(0.0)) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

Matrix Matrix::operator*(cd s) const {
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
    return r;
}

Matrix Matrix::adjoint() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Matrix Matrix::conj() const {
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = std::conj(a_[k]);
    return r;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const cd& z : a_) m = std::max(m, std::abs(z));
    return m;
}

double Matrix::frob() const {
    double s = 0.0;
    for (const cd& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double Matrix::colsum_norm() const {
    double best = 0.0;
    for (int j = 0; j < cols_; ++j) {
        double s = 0.0;
        for (int i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

double Matrix::rowsum_norm() const {
    double best = 0.0;
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

bool Matrix::all_finite() const {
    for (const cd& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

Matrix Matrix::column(int j) const {
    Matrix c(rows_, 1);
    for (int i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
}

double vec_pnorm(const Matrix& v, double p) {
    if (v.cols() != 1 && v.rows() != 1) throw std::invalid_argument("vec_pnorm: not a vector");
    const double inf = std::numeric_limits<double>::infinity();
    if (p < 1.0) throw std::invalid_argument("vec_pnorm: p < 1");
    if (p == inf) return v.max_abs();
    if (p == 1.0) {
        double s = 0.0;
        for (const cd& z : v.data()) s += std::abs(z);
        return s;
    }
    if (p == 2.0) return v.frob();
    // Scaled general-p accumulation to avoid overflow.
    double m = v.max_abs();
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (const cd& z : v.data()) s += std::pow(std::abs(z) / m, p);
    return m * std::pow(s, 1.0 / p);
}

Matrix lu_solve(const Matrix& M, const Matrix& V, double* min_pivot) {
    if (!M.is_square()) throw std::invalid_argument("lu_solve: non-square");
    if (M.rows() != V.rows()) throw std::invalid_argument("lu_solve: shape mismatch");
    const int n = M.rows();
    Matrix lu = M;
    Matrix x = V;
    double minp = std::numeric_limits<double>::infinity();
    std::vector<int> piv(n);
    for (int k = 0; k < n; ++k) {
        int imax = k;
        double amax = std::abs(lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            double a = std::abs(lu(i, k));
            if (a > amax) { amax = a; imax = i; }
        }
        minp = std::min(minp, amax);
        piv[k] = imax;
        if (imax != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(imax, j));
            for (int j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(imax, j));
        }
        if (amax == 0.0) {
            if (min_pivot) *min_pivot = 0.0;
            throw numerical_error("lu_solve: exactly singular matrix");
        }
        for (int i = k + 1; i < n; ++i) {
            cd f = lu(i, k) / lu(k, k);
            lu(i, k) = f;
            for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            for (int j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
        }
    }
    // Back substitution.
    for (int j = 0; j < x.cols(); ++j)
        for (int i = n - 1; i >= 0; --i) {
            cd s = x(i, j);
            for (int k = i + 1; k < n; ++k) s -= lu(i, k) * x(k, j);
            x(i, j) = s / lu(i, i);
        }
    if (min_pivot) *min_pivot = minp;
    return x;
}

double smallest_singular_value(const Matrix& M) {
    // Eigenvalues of the Hermitian augmentation [[0, M], [M^*, 0]] are
    // +-sigma_i plus |rows - cols| structural zeros.  Working on the
    // augmentation instead of the Gram matrix keeps absolute accuracy at
    // eps * ||M|| rather than the sqrt(eps) * ||M|| floor of M^* M.
    const int r = M.rows(), c = M.cols();
    Matrix z(r + c, r + c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            z(i, r + j) = M(i, j);
            z(r + j, i) = std::conj(M(i, j));
        }
    std::vector<double> mags;
    mags.reserve(r + c);
    for (cd l : eigenvalues(z)) mags.push_back(std::abs(l));
    std::sort(mags.begin(), mags.end());
    return mags[std::abs(r - c)];
}

}  // namespace stabrad
