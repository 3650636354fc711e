#pragma once

#include "stabrad/system.hpp"

namespace stabrad {

struct StabilityVerdict {
    bool internal = false;            // s(A) < 0
    bool stabilizable = false;        // Hautus rank test at unstable eigenvalues
    bool detectable = false;          // dual Hautus test
    bool externally_bounded = false;  // no closed-right-half-plane spectrum, finite axis sup
    bool io_bounded = false;          // finite ||L||
    bool consistent = false;          // internal <=> stabilizable & detectable & io bounded
};

// rank [A - lambda I | B] = n at every eigenvalue with Re >= 0.
bool hautus_stabilizable(const LtiSystem& sys);

// rank [A - lambda I ; C] = n at every eigenvalue with Re >= 0.
bool hautus_detectable(const LtiSystem& sys);

StabilityVerdict internal_external_check(const LtiSystem& sys, double p = 2.0);

}  // namespace stabrad
