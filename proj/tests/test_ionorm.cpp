#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stabrad/ionorm.hpp"
#include "stabrad/transfer.hpp"

#include "helpers.hpp"

using namespace stabrad;

TEST_CASE("io_norm_l1 golden value on the first example") {
    auto est = io_norm_l1(testutil::stephen1());
    CHECK(est.mode == IoNormMode::exact_l1);
    CHECK(std::abs(est.value - 1.262434309) < 1e-8);
    CHECK_FALSE(est.one_sided());
}

TEST_CASE("io_norm_l1 on A=-I is 1") {
    auto est = io_norm_l1(LtiSystem::unstructured(-Matrix::identity(2), NormSpec::l1()));
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("io_norm_l1 with l2 state norm reports a one-sided bound above the e1 witness") {
    auto est = io_norm_l1(testutil::stephen2());
    CHECK(est.mode == IoNormMode::lower_bound_search);
    CHECK(est.one_sided());
    CHECK(est.value >= 7.748310791 - 1e-7);
}

TEST_CASE("state_response_integral reproduces the e1 witness integral") {
    double v = state_response_integral(testutil::stephen2(), testutil::basis_col(2, 0));
    CHECK(std::abs(v - 7.748310791) < 1e-7);
}

TEST_CASE("io_norm_l1 rejects unstable systems") {
    CHECK_THROWS_AS(io_norm_l1(LtiSystem::unstructured(Matrix::identity(2), NormSpec::l1())),
                    std::invalid_argument);
}

TEST_CASE("io_norm_l1 scales linearly in B") {
    auto sys = testutil::stephen1();
    double base = io_norm_l1(sys).value;
    sys.B = sys.B * cd(3.0);
    CHECK(io_norm_l1(sys).value == doctest::Approx(3.0 * base).epsilon(1e-9));
}

TEST_CASE("io_norm_l2_hilbert equals the axis supremum") {
    auto est = io_norm_l2_hilbert(testutil::stephen2());
    CHECK(est.mode == IoNormMode::exact_l2);
    CHECK(est.value == doctest::Approx(7.5).epsilon(1e-7));  // cross-checked in test_transfer

    CHECK(io_norm_l2_hilbert(LtiSystem::unstructured(-Matrix::identity(2), NormSpec::l2())).value ==
          doctest::Approx(1.0).epsilon(1e-8));

    Matrix D(2, 2, {-1.0, 0.0, 0.0, -3.0});
    CHECK(io_norm_l2_hilbert(LtiSystem::unstructured(D, NormSpec::l2())).value ==
          doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("multiplier lower bound approaches the Hilbert value at p=2") {
    auto sys = testutil::stephen2();
    double exact = io_norm_l2_hilbert(sys).value;
    auto est = multiplier_lower_bound(sys, 2.0, 24, 99);
    CHECK(est.one_sided());
    CHECK(est.value >= exact * (1.0 - 0.02));
    CHECK(est.value <= exact * (1.0 + 0.01));  // quadrature slack
}

TEST_CASE("multiplier lower bound at p=1 stays below the exact L1 norm") {
    auto sys = testutil::stephen1();
    double exact = io_norm_l1(sys).value;
    auto est = multiplier_lower_bound(sys, 1.0, 24, 7);
    CHECK(est.value <= exact + 1e-6);
    CHECK(est.value >= 1.15);
}

TEST_CASE("multiplier lower bound vanishes when B = 0") {
    auto sys = testutil::stephen1();
    sys.B = Matrix::zeros(2, 2);
    CHECK(multiplier_lower_bound(sys, 2.0, 8, 1).value == doctest::Approx(0.0));
}

TEST_CASE("multiplier search value is non-decreasing in budget") {
    auto sys = testutil::stephen1();
    double small = multiplier_lower_bound(sys, 1.5, 6, 42).value;
    double large = multiplier_lower_bound(sys, 1.5, 24, 42).value;
    CHECK(large >= small - 1e-12);
}

TEST_CASE("narrow test functions realize pointwise transfer values") {
    auto sys = testutil::stephen2();
    auto sup = sup_transfer_real_axis(sys, 1e-8);
    // A narrow Gaussian at the argmax passes through the multiplier with
    // ratio close to ||H(i s*)||.
    TestFunction tf;
    tf.center = sup.argmax;
    tf.width = 0.02;
    tf.comb = {cd(1.0)};
    tf.direction = induced_pnorm_full(transfer_eval(sys, cd(0.0, sup.argmax)),
                                      NormSpec::l2(), NormSpec::l2())
                       .witness;
    double ratio = multiplier_ratio(sys, 2.0, tf);
    CHECK(ratio >= sup.value * 0.98);
    CHECK(ratio <= sup.value * 1.01);
}

TEST_CASE("periodic multiplier norm: lattice values at p=2") {
    // The first example carries the l1 space norm, so the Parseval shortcut
    // does not apply and the search reports a one-sided value that cannot
    // fall below the best single lattice frequency.
    auto est = periodic_multiplier_norm(testutil::stephen1(), 0.0, 2.0);
    CHECK(est.one_sided());
    CHECK(est.value >= (std::sqrt(2.0) + 1.0) / std::sqrt(5.0) - 1e-6);

    // Hilbert norms: the multiplier norm is exactly the lattice supremum.
    auto hil = periodic_multiplier_norm(testutil::stephen2(), 0.0, 2.0);
    CHECK(hil.mode == IoNormMode::exact_l2);
    CHECK(hil.value ==
          doctest::Approx(sup_transfer_integers(testutil::stephen2(), 0.0, 1e-9).value)
              .epsilon(1e-9));

    CHECK(periodic_multiplier_norm(LtiSystem::unstructured(-Matrix::identity(2), NormSpec::l2()),
                                   0.0, 2.0)
              .value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("periodic multiplier norm at p=1 is one-sided and at least the best lattice point") {
    auto sys = testutil::stephen1();
    auto est = periodic_multiplier_norm(sys, 0.0, 1.0);
    CHECK(est.one_sided());
    double lattice = (std::sqrt(2.0) + 1.0) / std::sqrt(5.0);
    // Single-frequency candidates realize lattice values, so the search
    // cannot fall below the best of them.
    CHECK(est.value >= lattice - 1e-6);
}
