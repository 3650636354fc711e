#pragma once

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace stabrad {

using cd = std::complex<double>;

// Raised when a computation fails for numerical reasons (spectrum
// collisions, non-convergence, tolerance not reached), as opposed to
// malformed input.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense complex matrix, row-major. Small (desk-scale) sizes only.
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows < 1 || cols < 1) throw std::invalid_argument("Matrix: empty shape");
    }
    Matrix(int rows, int cols, std::initializer_list<cd> entries);

    static Matrix identity(int n);
    static Matrix zeros(int rows, int cols);
    // Column vector from entries.
    static Matrix col(std::initializer_list<cd> entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }
    bool is_square() const { return rows_ == cols_; }

    cd& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    cd operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<cd>& data() const { return a_; }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator*(cd s) const;
    Matrix operator-() const { return *this * cd(-1.0); }

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conj() const;

    // Max absolute entry.
    double max_abs() const;
    // Frobenius norm.
    double frob() const;
    // Max column absolute sum (induced l1 -> l1).
    double colsum_norm() const;
    // Max row absolute sum (induced linf -> linf).
    double rowsum_norm() const;

    bool all_finite() const;

    // Column j as an n x 1 matrix.
    Matrix column(int j) const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<cd> a_;
};

inline Matrix operator*(cd s, const Matrix& m) { return m * s; }

// Vector p-norm of a column (or row) matrix; p in [1, inf] with inf
// encoded as std::numeric_limits<double>::infinity().
double vec_pnorm(const Matrix& v, double p);

// LU factorization with partial pivoting. Solves M X = V.
// min_pivot receives the smallest pivot magnitude seen (singularity probe).
Matrix lu_solve(const Matrix& M, const Matrix& V, double* min_pivot = nullptr);

// Smallest singular value of M (via eigenvalues of M* M).
double smallest_singular_value(const Matrix& M);

}  // namespace stabrad
