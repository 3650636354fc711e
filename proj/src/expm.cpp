#include "stabrad/expm.hpp"

#include <cmath>

namespace stabrad {

Matrix expm(const Matrix& M, double t) {
    if (!M.is_square()) throw std::invalid_argument("expm: non-square input");
    const int n = M.rows();
    Matrix a = M * cd(t);

    // Higham's theta_13 for the degree-13 Pade approximant.
    const double theta13 = 5.371920351148152;
    double nrm = a.colsum_norm();
    int s = 0;
    if (nrm > theta13) {
        s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        a = a * cd(std::ldexp(1.0, -s));
    }

    static const double b[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};

    Matrix I = Matrix::identity(n);
    Matrix a2 = a * a;
    Matrix a4 = a2 * a2;
    Matrix a6 = a4 * a2;
    Matrix u = a * (a6 * (a6 * cd(b[13]) + a4 * cd(b[11]) + a2 * cd(b[9])) + a6 * cd(b[7]) +
                    a4 * cd(b[5]) + a2 * cd(b[3]) + I * cd(b[1]));
    Matrix v = a6 * (a6 * cd(b[12]) + a4 * cd(b[10]) + a2 * cd(b[8])) + a6 * cd(b[6]) +
               a4 * cd(b[4]) + a2 * cd(b[2]) + I * cd(b[0]);
    Matrix r = lu_solve(v - u, v + u);
    for (int k = 0; k < s; ++k) r = r * r;
    return r;
}

Matrix resolvent_apply(const Matrix& A, cd lambda, const Matrix& V) {
    if (!A.is_square()) throw std::invalid_argument("resolvent_apply: non-square input");
    const int n = A.rows();
    Matrix shifted = A - Matrix::identity(n) * lambda;
    double min_pivot = 0.0;
    Matrix x(1, 1);
    try {
        x = lu_solve(shifted, V, &min_pivot);
    } catch (const numerical_error&) {
        throw numerical_error("lambda in spectrum");
    }
    double scale = std::max(shifted.max_abs(), 1e-300);
    if (min_pivot <= 1e-14 * scale) throw numerical_error("lambda in spectrum");
    return x;
}

}  // namespace stabrad
