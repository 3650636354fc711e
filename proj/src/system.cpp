#include "stabrad/system.hpp"

namespace stabrad {

LtiSystem LtiSystem::unstructured(const Matrix& A, NormSpec norm) {
    LtiSystem s;
    s.A = A;
    s.B = Matrix::identity(A.rows());
    s.C = Matrix::identity(A.rows());
    s.norm_X = s.norm_U = s.norm_Y = norm;
    return s;
}

}  // namespace stabrad
