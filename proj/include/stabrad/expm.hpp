#pragma once

#include "stabrad/matrix.hpp"

namespace stabrad {

// e^{tM} by scaling-and-squaring with a degree-13 Pade approximant.
Matrix expm(const Matrix& M, double t = 1.0);

// X solving (A - lambda I) X = V. Throws numerical_error with message
// "lambda in spectrum" when A - lambda I is singular to tolerance.
Matrix resolvent_apply(const Matrix& A, cd lambda, const Matrix& V);

}  // namespace stabrad
