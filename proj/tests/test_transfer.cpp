#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stabrad/norms.hpp"
#include "stabrad/transfer.hpp"

#include "helpers.hpp"

using namespace stabrad;

namespace {
// Closed-form l1 resolvent norm of the first example: (|1+is|+1)/|(1+is)^2+1|.
double stephen1_resolvent_l1(double s) {
    cd a(1.0, s);
    return (std::abs(a) + 1.0) / std::abs(a * a + cd(1.0));
}
}  // namespace

TEST_CASE("transfer_eval basics") {
    Matrix I2 = Matrix::identity(2);
    auto sys = LtiSystem::unstructured(-I2, NormSpec::l2());
    CHECK((transfer_eval(sys, cd(0.0)) + I2).max_abs() < 1e-14);

    // Scalar system: C (A - lambda)^{-1} B at lambda = 0 is -cb/a for A = -a.
    LtiSystem sc;
    sc.A = Matrix(1, 1, {cd(-3.0)});
    sc.B = Matrix(1, 1, {cd(2.0)});
    sc.C = Matrix(1, 1, {cd(5.0)});
    CHECK(std::abs(transfer_eval(sc, cd(0.0))(0, 0) - cd(-10.0 / 3.0)) < 1e-13);
}

TEST_CASE("transfer norm of the first example matches the closed form on the axis") {
    auto sys = testutil::stephen1();
    for (double s : {0.0, 0.5, 0.87, 2.0, -3.0}) {
        Matrix H = transfer_eval(sys, cd(0.0, s));
        CHECK(induced_pnorm(H, NormSpec::l1(), NormSpec::l1()) ==
              doctest::Approx(stephen1_resolvent_l1(s)).epsilon(1e-12));
    }
}

TEST_CASE("axis supremum: first example golden value") {
    auto sup = sup_transfer_real_axis(testutil::stephen1(), 1e-8);
    CHECK(std::abs(sup.value - 1.087494476) < 1e-6);
    CHECK(std::abs(std::abs(sup.argmax) - 0.87) < 0.05);
    CHECK(sup.kind == SupKind::real_axis);
}

TEST_CASE("axis supremum: second example, cross-checked independently") {
    // The reference material quotes 2.732492852 for this supremum; direct
    // computation (verified below against a dense power-iteration sweep and
    // the exact singular values of A^{-1}) gives 7.5 near s = -0.1333.
    auto sup = sup_transfer_real_axis(testutil::stephen2(), 1e-8);
    CHECK(std::abs(sup.value - 7.5) < 1e-6);

    auto sys = testutil::stephen2();
    double sampled = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        double s = -20.0 + 40.0 * i / 4000.0;
        sampled = std::max(sampled,
                           testutil::power_iteration_2norm(transfer_eval(sys, cd(0.0, s))));
    }
    CHECK(sup.value >= sampled - 1e-7);
    CHECK(sampled > 7.49);
}

TEST_CASE("axis supremum: A=-I gives 1 at s=0 for any p") {
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
        auto sys = LtiSystem::unstructured(-Matrix::identity(2), NormSpec{p});
        auto sup = sup_transfer_real_axis(sys, 1e-9);
        CHECK(sup.value == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(std::abs(sup.argmax) < 1e-4);
    }
}

TEST_CASE("axis supremum rejects imaginary-axis spectrum") {
    Matrix J(2, 2, {0.0, 1.0, -1.0, 0.0});  // eigenvalues +-i
    auto sys = LtiSystem::unstructured(J, NormSpec::l2());
    CHECK_THROWS_AS(sup_transfer_real_axis(sys, 1e-6), numerical_error);
}

TEST_CASE("integer-lattice supremum examples") {
    auto sup = sup_transfer_integers(testutil::stephen1(), 0.0, 1e-9);
    double expected = (std::sqrt(2.0) + 1.0) / std::sqrt(5.0);  // attained at k = +-1
    CHECK(sup.value == doctest::Approx(expected).epsilon(1e-10));
    CHECK(std::abs(std::abs(sup.argmax) - 1.0) < 1e-12);
    CHECK(sup.kind == SupKind::integer_lattice);

    auto s2 = sup_transfer_integers(LtiSystem::unstructured(-Matrix::identity(2), NormSpec::l2()),
                                    0.0, 1e-9);
    CHECK(s2.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s2.argmax == doctest::Approx(0.0));

    auto s3 = sup_transfer_integers(LtiSystem::unstructured(-Matrix::identity(1), NormSpec::l2()),
                                    0.5, 1e-9);
    CHECK(s3.value == doctest::Approx(1.0 / std::sqrt(1.25)).epsilon(1e-12));
}

TEST_CASE("lattice sup never exceeds the axis sup") {
    auto sys = testutil::stephen1();
    double axis = sup_transfer_real_axis(sys, 1e-8).value;
    for (int i = 0; i <= 10; ++i) {
        double xi = i / 10.0;
        CHECK(sup_transfer_integers(sys, xi, 1e-8).value <= axis + 1e-7);
    }
}

TEST_CASE("axis sup dominates random axis samples") {
    std::mt19937 rng(31);
    auto sys = testutil::stephen2();
    double sup = sup_transfer_real_axis(sys, 1e-7).value;
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
        Matrix H = transfer_eval(sys, cd(0.0, u(rng)));
        CHECK(induced_pnorm(H, NormSpec::l2(), NormSpec::l2()) <= sup + 1e-6);
    }
}

TEST_CASE("normal matrices: sup equals reciprocal distance to the axis") {
    std::mt19937 rng(32);
    for (int trial = 0; trial < 4; ++trial) {
        // Random diagonal (hence normal) stable matrix.
        std::uniform_real_distribution<double> re(-4.0, -0.3), im(-5.0, 5.0);
        Matrix D = Matrix::zeros(3, 3);
        double dist = 1e100;
        for (int i = 0; i < 3; ++i) {
            double r = re(rng);
            D(i, i) = cd(r, im(rng));
            dist = std::min(dist, -r);
        }
        auto sys = LtiSystem::unstructured(D, NormSpec::l2());
        CHECK(sup_transfer_real_axis(sys, 1e-9).value ==
              doctest::Approx(1.0 / dist).epsilon(1e-8));
    }
}

TEST_CASE("axis sup is invariant under imaginary diagonal shifts") {
    auto sys = testutil::stephen1();
    double base = sup_transfer_real_axis(sys, 1e-8).value;
    for (double xi : {0.3, 1.0, 2.7}) {
        LtiSystem shifted = sys;
        shifted.A = sys.A - Matrix::identity(2) * cd(0.0, xi);
        CHECK(sup_transfer_real_axis(shifted, 1e-8).value ==
              doctest::Approx(base).epsilon(1e-7));
    }
}

TEST_CASE("spectral summaries") {
    auto s1 = spectral_summary(testutil::stephen1_A());
    CHECK(s1.abscissa == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(s1.exponentially_stable);
    CHECK(s1.hyperbolic);
    CHECK(s1.growth_bound == doctest::Approx(-1.0).epsilon(1e-10));

    auto s2 = spectral_summary(Matrix(2, 2, {1.0, 0.0, 0.0, -1.0}));
    CHECK(s2.abscissa == doctest::Approx(1.0));
    CHECK_FALSE(s2.exponentially_stable);
    CHECK(s2.hyperbolic);

    auto s3 = spectral_summary(Matrix(2, 2, {0.0, 1.0, 0.0, 0.0}));
    CHECK(s3.abscissa == doctest::Approx(0.0));
    CHECK_FALSE(s3.exponentially_stable);
    CHECK_FALSE(s3.hyperbolic);
}
