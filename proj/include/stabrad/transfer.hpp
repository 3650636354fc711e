#pragma once

#include "stabrad/system.hpp"

namespace stabrad {

enum class SupKind { real_axis, integer_lattice };

struct FrequencySupremum {
    double value = 0.0;
    double argmax = 0.0;  // real frequency, or the integer k for the lattice
    SupKind kind = SupKind::real_axis;
    double shift_xi = 0.0;  // integer-lattice only
    double tolerance = 0.0;
};

// H evaluated as C (A - lambda)^{-1} B.
Matrix transfer_eval(const LtiSystem& sys, cd lambda);

// sup over s in R of ||C (A - is)^{-1} B|| in the (norm_U -> norm_Y)
// induced norm. Requires spectrum off the imaginary axis.
FrequencySupremum sup_transfer_real_axis(const LtiSystem& sys, double tol = 1e-6);

// max over integers k of ||C (A - i xi - ik)^{-1} B||, with resolvent-decay
// truncation of the lattice.
FrequencySupremum sup_transfer_integers(const LtiSystem& sys, double xi, double tol = 1e-6);

SpectralSummary spectral_summary(const Matrix& A);

}  // namespace stabrad
