#pragma once

#include <vector>

#include "stabrad/matrix.hpp"

namespace stabrad {

// Dimension cap for the dense eigenvalue solver.
inline constexpr int kEigDimCap = 64;

// All eigenvalues (with multiplicity) of a square complex matrix, via
// Householder reduction to Hessenberg form followed by shifted QR
// iteration with Wilkinson shifts. Throws numerical_error if the QR
// sweep fails to deflate within the iteration cap.
std::vector<cd> eigenvalues(const Matrix& M);

// Max real part of the spectrum.
double spectral_abscissa(const Matrix& M);

}  // namespace stabrad
